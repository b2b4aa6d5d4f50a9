#ifndef SKIT_CERTIFY_HPP
#define SKIT_CERTIFY_HPP

#include "solver.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace skit {

using Complex = std::complex<double>;
using NumericPoint = std::vector<Complex>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

struct SingularJacobian : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// (13 − 3√17)/4
inline double alpha_threshold() { return (13.0 - 3.0 * std::sqrt(17.0)) / 4.0; }

/// Double-precision copy of a system for repeated evaluation.
class NumericSystem {
public:
    explicit NumericSystem(const PolySystem& s) : nvars_(s.nvars())
    {
        for (auto& e : s.equations) {
            std::vector<Term> eq;
            for (auto& [m, c] : e.terms()) {
                Term t{c.get_d(), {}};
                for (std::size_t v = 0; v < m.size(); ++v)
                    if (m[v]) t.powers.push_back({v, m[v]});
                eq.push_back(std::move(t));
            }
            eqs_.push_back(std::move(eq));
        }
    }

    std::size_t nvars() const { return nvars_; }
    std::size_t nequations() const { return eqs_.size(); }
    bool is_square() const { return nvars_ == eqs_.size(); }

    CVec evaluate(const NumericPoint& x) const
    {
        check(x);
        CVec out(static_cast<Eigen::Index>(eqs_.size()));
        for (std::size_t i = 0; i < eqs_.size(); ++i) {
            Complex acc = 0;
            for (auto& t : eqs_[i]) {
                Complex m = t.c;
                for (auto [v, p] : t.powers) m *= std::pow(x[v], static_cast<int>(p));
                acc += m;
            }
            out(static_cast<Eigen::Index>(i)) = acc;
        }
        return out;
    }

    CMat jacobian(const NumericPoint& x) const
    {
        check(x);
        CMat J = CMat::Zero(static_cast<Eigen::Index>(eqs_.size()), static_cast<Eigen::Index>(nvars_));
        for (std::size_t i = 0; i < eqs_.size(); ++i)
            for (auto& t : eqs_[i])
                for (std::size_t d = 0; d < t.powers.size(); ++d) {
                    Complex m = t.c * static_cast<double>(t.powers[d].second);
                    for (std::size_t o = 0; o < t.powers.size(); ++o) {
                        auto [v, p] = t.powers[o];
                        m *= std::pow(x[v], static_cast<int>(o == d ? p - 1 : p));
                    }
                    J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t.powers[d].first)) += m;
                }
        return J;
    }

    unsigned degree() const
    {
        unsigned d = 0;
        for (auto& eq : eqs_)
            for (auto& t : eq) {
                unsigned td = 0;
                for (auto& pw : t.powers) td += pw.second;
                d = std::max(d, td);
            }
        return d;
    }

    /// Frobenius norm of the order-k derivative tensor at x (all equations, ordered index tuples).
    double derivative_norm(const NumericPoint& x, unsigned k) const
    {
        double total = 0;
        for (auto& eq : eqs_) {
            std::map<std::vector<unsigned>, Complex> parts; // multiset as exponent vector over term variables
            for (auto& t : eq) {
                std::vector<unsigned> take(t.powers.size(), 0);
                enumerate(t, x, k, 0, take, parts);
            }
            for (auto& [m, val] : parts) {
                // number of ordered tuples realizing the multiset
                double mult = 1;
                unsigned n = 0;
                for (std::size_t i = 1; i < m.size(); i += 2) {
                    for (unsigned j = 1; j <= m[i]; ++j) mult *= static_cast<double>(n + j) / j;
                    n += m[i];
                }
                total += mult * std::norm(val);
            }
        }
        return std::sqrt(total);
    }

private:
    struct Term {
        double c;
        std::vector<std::pair<std::size_t, unsigned>> powers;
    };

    void check(const NumericPoint& x) const
    {
        if (x.size() != nvars_) throw std::invalid_argument("point has the wrong number of coordinates");
    }

    static void enumerate(const Term& t, const NumericPoint& x, unsigned left, std::size_t pos, std::vector<unsigned>& take,
                          std::map<std::vector<unsigned>, Complex>& parts)
    {
        if (pos == t.powers.size()) {
            if (left) return;
            Complex val = t.c;
            std::vector<unsigned> key;
            for (std::size_t i = 0; i < t.powers.size(); ++i) {
                auto [v, p] = t.powers[i];
                for (unsigned f = 0; f < take[i]; ++f) val *= static_cast<double>(p - f);
                val *= std::pow(x[v], static_cast<int>(p - take[i]));
                if (take[i]) {
                    key.push_back(static_cast<unsigned>(v));
                    key.push_back(take[i]);
                }
            }
            parts[key] += val;
            return;
        }
        for (unsigned a = 0; a <= std::min(left, t.powers[pos].second); ++a) {
            take[pos] = a;
            enumerate(t, x, left - a, pos + 1, take, parts);
        }
        take[pos] = 0;
    }

    std::size_t nvars_;
    std::vector<std::vector<Term>> eqs_;
};

inline CMat jacobian(const PolySystem& s, const NumericPoint& x)
{
    NumericSystem ns(s);
    if (!ns.is_square()) throw std::invalid_argument("Jacobian requested for a non-square system");
    return ns.jacobian(x);
}

inline double norm(const NumericPoint& x)
{
    double t = 0;
    for (auto& c : x) t += std::norm(c);
    return std::sqrt(t);
}

namespace detail {

inline Eigen::FullPivLU<CMat> factor_jacobian(const CMat& J)
{
    Eigen::FullPivLU<CMat> lu(J);
    if (!lu.isInvertible()) throw SingularJacobian("Jacobian is singular");
    return lu;
}

inline NumericPoint newton_step(const NumericSystem& ns, const NumericPoint& x)
{
    auto lu = factor_jacobian(ns.jacobian(x));
    CVec dx = lu.solve(ns.evaluate(x));
    NumericPoint y = x;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= dx(static_cast<Eigen::Index>(i));
    return y;
}

} // namespace detail

struct NewtonTrace {
    std::vector<NumericPoint> points; // N_0 = x0, N_1, ...
    std::vector<double> residuals;    // ‖E(N_i)‖
};

inline NewtonTrace newton_iterate(const NumericSystem& ns, const NumericPoint& x0, int steps)
{
    if (!ns.is_square()) throw std::invalid_argument("Newton iteration needs a square system");
    NewtonTrace tr;
    tr.points.push_back(x0);
    tr.residuals.push_back(ns.evaluate(x0).norm());
    for (int i = 0; i < steps; ++i) {
        if (tr.residuals.back() == 0) {
            tr.points.push_back(tr.points.back());
            tr.residuals.push_back(0);
            continue;
        }
        tr.points.push_back(detail::newton_step(ns, tr.points.back()));
        tr.residuals.push_back(ns.evaluate(tr.points.back()).norm());
    }
    return tr;
}

inline NewtonTrace newton_iterate(const PolySystem& s, const NumericPoint& x0, int steps)
{
    return newton_iterate(NumericSystem(s), x0, steps);
}

/// Residuals at least double their number of digits until they reach the rounding floor.
inline bool residuals_quadratic(const std::vector<double>& r, double floor = 1e-12)
{
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        if (r[i] <= floor || r[i + 1] <= floor) break;
        if (r[i] >= 1) continue;
        if (std::log10(r[i + 1]) > 2 * std::log10(r[i]) + 1) return false;
    }
    return true;
}

struct CertifyReport {
    double alpha = 0, beta = 0, gamma = 0;
    bool certified = false;
    std::vector<double> iterations;
    bool quadratic = false;
};

inline nlohmann::ordered_json to_json(const CertifyReport& r)
{
    nlohmann::ordered_json j;
    j["alpha"] = r.alpha;
    j["beta"] = r.beta;
    j["gamma"] = r.gamma;
    j["certified"] = r.certified;
    j["iterations"] = r.iterations;
    j["quadratic"] = r.quadratic;
    return j;
}

/// Smale α-test. γ is bounded with Frobenius norms of the derivative tensors, which is exact
/// in structure (only k = 2) for bilinear systems and an upper bound otherwise.
inline CertifyReport alpha_number(const NumericSystem& ns, const NumericPoint& x, int newton_steps = 5)
{
    if (!ns.is_square()) throw std::invalid_argument("alpha test needs a square system");
    CMat J = ns.jacobian(x);
    auto lu = detail::factor_jacobian(J);
    CertifyReport r;
    r.beta = lu.solve(ns.evaluate(x)).norm();
    Eigen::JacobiSVD<CMat> svd(J);
    const double inv_norm = 1.0 / svd.singularValues().minCoeff();
    double kfact = 1;
    for (unsigned k = 2; k <= ns.degree(); ++k) {
        kfact *= k;
        double g = std::pow(inv_norm * ns.derivative_norm(x, k) / kfact, 1.0 / (k - 1));
        r.gamma = std::max(r.gamma, g);
    }
    r.alpha = r.beta * r.gamma;
    r.certified = r.alpha < alpha_threshold();
    try {
        r.iterations = newton_iterate(ns, x, newton_steps).residuals;
        r.quadratic = residuals_quadratic(r.iterations);
    } catch (const SingularJacobian&) {
        r.quadratic = false;
    }
    return r;
}

inline CertifyReport alpha_number(const PolySystem& s, const NumericPoint& x, int newton_steps = 5)
{
    return alpha_number(NumericSystem(s), x, newton_steps);
}

struct Classification {
    long real_count = 0;
    long distinct_count = 0;
};

/// Realness and distinctness of certified approximate solutions of a system with rational
/// coefficients. A point is real when its conjugate lies within 2β of it; two points are the
/// same solution when closer than 4·max β.
inline Classification classify(const NumericSystem& ns, const std::vector<NumericPoint>& points)
{
    std::vector<double> beta;
    for (auto& p : points) {
        auto r = alpha_number(ns, p, 0);
        if (!r.certified) throw std::invalid_argument("classify needs certified points");
        // rounding floor so that exact roots still get a positive radius
        beta.push_back(std::max(r.beta, 1e-12 * (1 + norm(p))));
    }
    Classification c;
    std::vector<bool> seen(points.size(), false);
    double max_beta = 0;
    for (double b : beta) max_beta = std::max(max_beta, b);
    for (std::size_t i = 0; i < points.size(); ++i) {
        double d = 0;
        for (auto& z : points[i]) d += std::norm(z - std::conj(z));
        bool real = std::sqrt(d) < 2 * beta[i];
        if (seen[i]) continue;
        ++c.distinct_count;
        c.real_count += real;
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            double s = 0;
            for (std::size_t v = 0; v < points[i].size(); ++v) s += std::norm(points[i][v] - points[j][v]);
            if (std::sqrt(s) <= 4 * max_beta) seen[j] = true;
        }
    }
    return c;
}

// ------------------------------------------------------------ seeding from the symbolic path

/// Complex roots of a univariate polynomial: companion eigenvalues polished by Newton.
inline std::vector<Complex> numeric_roots(const QUni& f)
{
    const int d = f.degree();
    if (d < 1) return {};
    std::vector<double> c(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) c[static_cast<std::size_t>(i)] = Rational(f.coefficient(static_cast<std::size_t>(i)) / f.leading()).get_d();
    CMat comp = CMat::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[static_cast<std::size_t>(i)];
    Eigen::ComplexEigenSolver<CMat> es(comp);
    std::vector<Complex> roots;
    for (int i = 0; i < d; ++i) {
        Complex z = es.eigenvalues()(i);
        for (int it = 0; it < 8; ++it) {
            Complex p = 0, dp = 0;
            for (int k = d; k >= 0; --k) {
                dp = dp * z + p;
                p = p * z + c[static_cast<std::size_t>(k)];
            }
            if (std::abs(dp) == 0) break;
            z -= p / dp;
        }
        roots.push_back(z);
    }
    return roots;
}

inline Complex evaluate(const QUni& f, Complex z)
{
    Complex r = 0;
    for (int i = f.degree(); i >= 0; --i) r = r * z + Rational(f.coefficient(static_cast<std::size_t>(i))).get_d();
    return r;
}

inline CMat to_complex(const GMat& m)
{
    CMat r(static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = {m(i, j).re.get_d(), m(i, j).im.get_d()};
    return r;
}

/// Approximate solutions of a determinantal system from its shape report, one per eliminant root.
inline std::vector<NumericPoint> numeric_solutions(const ShapeReport& shape)
{
    if (!shape.in_shape) throw NotInShape("numeric solutions need a shape report");
    std::vector<NumericPoint> out;
    for (Complex u : numeric_roots(square_free_part(shape.eliminant))) {
        NumericPoint x;
        for (auto& g : shape.coordinates) x.push_back(evaluate(g, u));
        out.push_back(std::move(x));
    }
    return out;
}

/// Row span of the primal chart at numeric coordinates.
inline CMat numeric_plane(const PolySystem& s, const NumericPoint& x)
{
    const auto& b = s.blocks.front();
    CMat M = CMat::Zero(static_cast<Eigen::Index>(b.pattern.rows), static_cast<Eigen::Index>(b.pattern.cols));
    for (std::size_t i = 0; i < b.pattern.rows; ++i)
        for (std::size_t j = 0; j < b.pattern.cols; ++j) {
            const auto& e = b.pattern.at(i, j);
            auto I = static_cast<Eigen::Index>(i), J = static_cast<Eigen::Index>(j);
            if (e.kind == CoordPattern::Kind::One) M(I, J) = 1;
            else if (e.kind == CoordPattern::Kind::Var) M(I, J) = x.at(b.first + static_cast<std::size_t>(e.var));
        }
    return M * to_complex(b.basis);
}

/// Floating-point counterpart of lift_to_chart.
inline NumericPoint lift_numeric(const PolySystem& s, const CMat& H)
{
    NumericPoint out(s.nvars());
    auto write = [&](const CoordPattern& p, const CMat& m, std::size_t first) {
        for (std::size_t i = 0; i < p.rows; ++i)
            for (std::size_t j = 0; j < p.cols; ++j) {
                const auto& e = p.at(i, j);
                if (e.kind == CoordPattern::Kind::Var)
                    out[first + static_cast<std::size_t>(e.var)] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
    };
    auto pivots = [](const CoordPattern& p, bool by_row) {
        std::vector<Eigen::Index> piv(by_row ? p.rows : p.cols);
        for (std::size_t i = 0; i < p.rows; ++i)
            for (std::size_t j = 0; j < p.cols; ++j)
                if (p.at(i, j).kind == CoordPattern::Kind::One)
                    piv[by_row ? i : j] = static_cast<Eigen::Index>(by_row ? j : i);
        return piv;
    };
    Eigen::FullPivLU<CMat> lu(H);
    const CMat L = lu.kernel();
    if (L.cols() != H.cols() - H.rows()) throw std::domain_error("plane is not of full rank");
    auto dual_coords = [&](const CoordPattern& p, const GMat& basis) {
        CMat m = to_complex(basis).fullPivLu().solve(L);
        auto piv = pivots(p, false);
        CMat r(p.cols, p.cols);
        for (std::size_t a = 0; a < p.cols; ++a) r.row(static_cast<Eigen::Index>(a)) = m.row(piv[a]);
        return CMat(m * r.inverse());
    };
    for (const auto& b : s.blocks) {
        if (b.kind == SystemBlock::Kind::Primal) {
            CMat A = to_complex(b.basis).transpose().fullPivLu().solve(H.transpose()).transpose();
            auto piv = pivots(b.pattern, true);
            CMat r(A.rows(), A.rows());
            for (Eigen::Index c = 0; c < A.rows(); ++c) r.col(c) = A.col(piv[static_cast<std::size_t>(c)]);
            write(b.pattern, r.inverse() * A, b.first);
        } else if (b.kind == SystemBlock::Kind::Dual) {
            write(b.pattern, dual_coords(b.pattern, b.basis), b.first);
        } else {
            CMat mt = dual_coords(b.pattern, b.basis), mc = dual_coords(b.pattern, b.basis_conj);
            const std::size_t half = b.count / 2;
            for (std::size_t i = 0; i < b.pattern.rows; ++i)
                for (std::size_t j = 0; j < b.pattern.cols; ++j) {
                    const auto& e = b.pattern.at(i, j);
                    if (e.kind != CoordPattern::Kind::Var) continue;
                    auto v = static_cast<std::size_t>(e.var);
                    auto I = static_cast<Eigen::Index>(i), J = static_cast<Eigen::Index>(j);
                    out[b.first + v] = (mt(I, J) + mc(I, J)) / 2.0;
                    out[b.first + half + v] = (mt(I, J) - mc(I, J)) / Complex(0, 2);
                }
        }
    }
    return out;
}

/// Approximate solutions of `target` (same instance, any formulation) from the symbolic solve.
inline std::vector<NumericPoint> seed_from_symbolic(const InstanceSpec& spec, const PolySystem& target,
                                                    const SolveOptions& opt = {})
{
    PolySystem det = determinantal_instance(spec, opt.chart);
    SolveResult r = solve_system(det, opt);
    std::vector<NumericPoint> out;
    for (auto& x : numeric_solutions(r.shape)) out.push_back(lift_numeric(target, numeric_plane(det, x)));
    return out;
}

inline nlohmann::ordered_json to_json(const NumericPoint& x)
{
    auto j = nlohmann::ordered_json::array();
    for (auto& c : x) j.push_back({c.real(), c.imag()});
    return j;
}

/// Accepts [re, im] pairs or bare reals.
inline NumericPoint point_from_json(const nlohmann::json& j)
{
    NumericPoint x;
    for (auto& e : j) {
        if (e.is_number()) x.emplace_back(e.get<double>(), 0.0);
        else if (e.is_array() && e.size() == 2) x.emplace_back(e[0].get<double>(), e[1].get<double>());
        else throw std::invalid_argument("point coordinates must be numbers or [re, im] pairs");
    }
    return x;
}

} // namespace skit

#endif
