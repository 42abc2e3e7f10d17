#ifndef HEUNQES_BIVARIATE_HPP
#define HEUNQES_BIVARIATE_HPP

#include "heunqes/errors.hpp"
#include "heunqes/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace heunqes {

/// Exact bivariate polynomial in (lambda, R): outer variable lambda, inner
/// coefficients in Rational[R].
using RPoly = Polynomial<Rational>;
using Bivariate = Polynomial<RPoly>;

inline Bivariate bivariate_constant(const Rational& c) { return Bivariate(RPoly(c)); }

/// lambda as a bivariate polynomial.
inline Bivariate bivariate_lambda() { return Bivariate::identity(); }

/// An element of Rational[R] lifted to a bivariate (lambda-degree 0).
inline Bivariate bivariate_of_r(const RPoly& p) { return Bivariate(p); }

inline int degree_lambda(const Bivariate& f) { return f.degree(); }

inline int degree_r(const Bivariate& f)
{
    int d = -1;
    for (const auto& c : f.coefficients()) d = std::max(d, c.degree());
    return d;
}

inline double eval_bivariate(const Bivariate& f, double lambda, double r)
{
    double acc = 0.0;
    for (std::size_t k = f.coefficients().size(); k-- > 0;) {
        const auto cd = f.coeff(k).map<double>([](const Rational& c) { return to_double(c); });
        acc = acc * lambda + cd(r);
    }
    return acc;
}

inline Rational eval_bivariate_exact(const Bivariate& f, const Rational& lambda, const Rational& r)
{
    Rational acc(0);
    for (std::size_t k = f.coefficients().size(); k-- > 0;) acc = acc * lambda + f.coeff(k)(r);
    return acc;
}

inline Bivariate d_dlambda(const Bivariate& f) { return f.derivative(); }

inline Bivariate d_dr(const Bivariate& f)
{
    std::vector<RPoly> out;
    out.reserve(f.coefficients().size());
    for (const auto& c : f.coefficients()) out.push_back(c.derivative());
    return Bivariate(std::move(out));
}

/// f(lambda, R0) as a univariate double polynomial in lambda.
inline Polynomial<double> at_fixed_r(const Bivariate& f, double r0)
{
    std::vector<double> out;
    out.reserve(f.coefficients().size());
    for (const auto& c : f.coefficients())
        out.push_back(c.map<double>([](const Rational& x) { return to_double(x); })(r0));
    return Polynomial<double>(std::move(out));
}

namespace detail {

/// Exact determinant by fraction-free Gaussian elimination over Q.
inline Rational rational_determinant(std::vector<std::vector<Rational>> m)
{
    const std::size_t n = m.size();
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            const Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

/// Exact Lagrange interpolation through (nodes[i], values[i]).
inline RPoly lagrange_interpolate(const std::vector<Rational>& nodes,
                                  const std::vector<Rational>& values)
{
    RPoly result;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        RPoly basis(Rational(1));
        Rational denom(1);
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (i == j) continue;
            basis *= RPoly{-nodes[j], Rational(1)};
            denom *= nodes[i] - nodes[j];
        }
        result += basis * (values[i] / denom);
    }
    return result;
}

} // namespace detail

/// Resultant of f and g with respect to lambda, an exact polynomial in R.
/// The Sylvester determinant is evaluated at enough rational sample values
/// of R and reconstructed by interpolation; sample points where a leading
/// lambda-coefficient vanishes are skipped (the determinant there belongs to
/// a lower-degree pencil).
inline RPoly resultant_in_lambda(const Bivariate& f, const Bivariate& g)
{
    const int df = degree_lambda(f);
    const int dg = degree_lambda(g);
    if (df < 0 || dg < 0) throw EliminationDegenerate("resultant of the zero polynomial");
    if (df == 0 && dg == 0) throw EliminationDegenerate("both polynomials are lambda-free");

    // Degree bound of Res_lambda(f,g) in R for the interpolation node count.
    const int bound = std::max(0, dg * std::max(0, degree_r(f)) + df * std::max(0, degree_r(g)));

    std::vector<Rational> nodes, values;
    nodes.reserve(static_cast<std::size_t>(bound) + 1);
    for (int step = 0; static_cast<int>(nodes.size()) <= bound; ++step) {
        // 0, 1, -1, 2, -2, ...
        const int k = (step + 1) / 2;
        const Rational r0 = (step % 2 == 1) ? Rational(-k) : Rational(k);

        // Leading coefficients must not vanish at the sample point, else the
        // Sylvester matrix there corresponds to deflated polynomials.
        if (df > 0 && f.coeff(static_cast<std::size_t>(df))(r0) == 0) continue;
        if (dg > 0 && g.coeff(static_cast<std::size_t>(dg))(r0) == 0) continue;

        const std::size_t dim = static_cast<std::size_t>(df + dg);
        std::vector<std::vector<Rational>> sylvester(dim, std::vector<Rational>(dim, Rational(0)));
        for (int row = 0; row < dg; ++row)
            for (int k2 = 0; k2 <= df; ++k2)
                sylvester[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + k2)] =
                    f.coeff(static_cast<std::size_t>(df - k2))(r0);
        for (int row = 0; row < df; ++row)
            for (int k2 = 0; k2 <= dg; ++k2)
                sylvester[static_cast<std::size_t>(dg + row)][static_cast<std::size_t>(row + k2)] =
                    g.coeff(static_cast<std::size_t>(dg - k2))(r0);

        nodes.push_back(r0);
        values.push_back(detail::rational_determinant(std::move(sylvester)));
        if (step > 8 * (bound + 2)) throw EliminationDegenerate("could not find admissible sample points");
    }
    return detail::lagrange_interpolate(nodes, values);
}

/// A simultaneous real solution of two compatibility polynomials.
struct JointRoot {
    double lambda;
    double r;
};

namespace detail {

inline double eval_scale(const Polynomial<double>& p, double x)
{
    double scale = 0.0, power = 1.0;
    for (const double c : p.coefficients()) {
        scale += std::abs(c) * power;
        power *= std::abs(x);
    }
    return std::max(1.0, scale);
}

/// One step of 2-variable Newton on (f, g); returns false when the Jacobian
/// is near singular (multiple root), in which case the iterate is kept.
inline bool newton_refine(const Bivariate& f, const Bivariate& g, double& lambda, double& r)
{
    const Bivariate fl = d_dlambda(f), fr = d_dr(f);
    const Bivariate gl = d_dlambda(g), gr = d_dr(g);
    for (int it = 0; it < 40; ++it) {
        const double fv = eval_bivariate(f, lambda, r);
        const double gv = eval_bivariate(g, lambda, r);
        const double a = eval_bivariate(fl, lambda, r), b = eval_bivariate(fr, lambda, r);
        const double c = eval_bivariate(gl, lambda, r), d = eval_bivariate(gr, lambda, r);
        const double det = a * d - b * c;
        const double norm = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d), 1.0});
        if (std::abs(det) < 1e-12 * norm * norm) return false;
        const double dl = (d * fv - b * gv) / det;
        const double dr2 = (-c * fv + a * gv) / det;
        lambda -= dl;
        r -= dr2;
        if (std::abs(dl) + std::abs(dr2) < 1e-15 * (1.0 + std::abs(lambda) + std::abs(r))) break;
    }
    return true;
}

} // namespace detail

/// Solves f(lambda, R) = g(lambda, R) = 0 over the reals: eliminates lambda
/// through the exact resultant in R, isolates the real R roots, back-solves
/// the two univariate polynomials in lambda at each R, keeps values whose
/// residuals vanish in both, refines by 2-variable Newton and deduplicates.
inline std::vector<JointRoot> joint_solve(const Bivariate& f, const Bivariate& g,
                                          double residual_tol = 1e-10, double dedupe_tol = 1e-9)
{
    if (f.is_zero() || g.is_zero())
        throw EliminationDegenerate("a compatibility polynomial vanishes identically");

    // Orient so the first polynomial carries positive lambda-degree.
    const bool f_has_lambda = degree_lambda(f) > 0;
    const Bivariate& a = f_has_lambda ? f : g;
    const Bivariate& b = f_has_lambda ? g : f;

    std::vector<double> r_candidates;
    if (degree_lambda(b) == 0) {
        // The second polynomial constrains R alone.
        r_candidates = real_roots(b.coeff(0));
    } else {
        const RPoly res = resultant_in_lambda(a, b);
        if (res.is_zero())
            throw EliminationDegenerate("resultant vanishes identically: shared component");
        r_candidates = real_roots(res);
    }

    std::vector<JointRoot> out;
    for (const double r0 : r_candidates) {
        const Polynomial<double> fa = at_fixed_r(a, r0);
        const Polynomial<double> fb = at_fixed_r(b, r0);
        std::vector<double> lambdas;
        if (fa.degree() >= 1)
            for (const double l : real_roots(fa)) lambdas.push_back(l);
        for (const double l : lambdas) {
            const double res_a = std::abs(fa(l));
            const double res_b = std::abs(fb(l));
            if (res_a > residual_tol * detail::eval_scale(fa, l)) continue;
            if (res_b > 1e-6 * detail::eval_scale(fb, l)) continue; // coarse gate before refinement
            double lam = l, r = r0;
            detail::newton_refine(a, b, lam, r);
            const Polynomial<double> fa2 = at_fixed_r(a, r);
            const Polynomial<double> fb2 = at_fixed_r(b, r);
            if (std::abs(fa2(lam)) > residual_tol * detail::eval_scale(fa2, lam)) continue;
            if (std::abs(fb2(lam)) > residual_tol * detail::eval_scale(fb2, lam)) continue;
            const bool duplicate = std::any_of(out.begin(), out.end(), [&](const JointRoot& jr) {
                return std::abs(jr.lambda - lam) <= dedupe_tol * (1.0 + std::abs(lam))
                    && std::abs(jr.r - r) <= dedupe_tol * (1.0 + std::abs(r));
            });
            if (!duplicate) out.push_back({lam, r});
        }
    }
    std::sort(out.begin(), out.end(), [](const JointRoot& x, const JointRoot& y) {
        return x.r != y.r ? x.r < y.r : x.lambda < y.lambda;
    });
    return out;
}

} // namespace heunqes

#endif // HEUNQES_BIVARIATE_HPP
