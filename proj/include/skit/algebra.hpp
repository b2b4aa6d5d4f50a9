#ifndef SKIT_ALGEBRA_HPP
#define SKIT_ALGEBRA_HPP

#include "matrix.hpp"
#include "poly.hpp"
#include "rational.hpp"

#endif
