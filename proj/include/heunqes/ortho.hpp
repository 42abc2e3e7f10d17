#ifndef HEUNQES_ORTHO_HPP
#define HEUNQES_ORTHO_HPP

#include "heunqes/errors.hpp"
#include "heunqes/solution.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace heunqes {

// ---------------------------------------------------------------------------
// Sturm-Liouville weight
// ---------------------------------------------------------------------------

/// omega(z) = (z+1)^{gamma-1} (z-1)^{delta-1} e^{eps z / 2}; on (-1,1) the
/// (z-1) factor is evaluated through its absolute value so the weight stays
/// positive on both orthogonality intervals.
struct WeightFunction {
    double gamma = 1.0;
    double delta = 1.0;
    double epsilon = 0.0;

    double operator()(double z) const
    {
        if ((z == -1.0 && gamma < 1.0) || (z == 1.0 && delta < 1.0))
            throw SingularPoint("weight evaluated at a pole");
        return std::pow(std::abs(z + 1.0), gamma - 1.0) * std::pow(std::abs(z - 1.0), delta - 1.0)
             * std::exp(epsilon * z / 2.0);
    }
};

inline double weight_eval(const WeightFunction& w, double z) { return w(z); }

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod quadrature
// ---------------------------------------------------------------------------

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kGK15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GKResult {
    double value;
    double error;
};

template <class F>
GKResult gk15(const F& f, double a, double b)
{
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kronrod = 0.0, gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double offset = half * kGK15Nodes[i];
        const double fsum = i == 7 ? f(mid) : f(mid - offset) + f(mid + offset);
        kronrod += kGK15Weights[i] * fsum;
        // odd indices (and the center) are the embedded Gauss-7 nodes
        if (i % 2 == 1 || i == 7) gauss += kG7Weights[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    return {kronrod, std::abs(kronrod - gauss)};
}

template <class F>
double adaptive_gk(const F& f, double a, double b, double rel_tol, double abs_tol, int depth = 0)
{
    const GKResult r = gk15(f, a, b);
    if (depth >= 48 || r.error <= std::max(abs_tol, rel_tol * std::abs(r.value)))
        return r.value;
    const double mid = 0.5 * (a + b);
    return adaptive_gk(f, a, mid, rel_tol, abs_tol * 0.5, depth + 1)
         + adaptive_gk(f, mid, b, rel_tol, abs_tol * 0.5, depth + 1);
}

} // namespace detail

/// Adaptive Gauss-Kronrod integral of f over [a, b].
template <class F>
double integrate(const F& f, double a, double b, double rel_tol = 1e-10, double abs_tol = 1e-14)
{
    return detail::adaptive_gk(f, a, b, rel_tol, abs_tol);
}

// ---------------------------------------------------------------------------
// Double orthogonality of the polynomial eigenfunctions
// ---------------------------------------------------------------------------

enum class OrthoInterval { UnitInterval, RightRay };

/// Integral of uA * uB * omega over (-1,1) or (1,inf). Endpoint singularities
/// with exponents in (-1,0) are regularized by the substitutions
/// z = -1 + t^2 and z = 1 -+ t^2; the infinite tail is truncated where the
/// exponential factor falls below 1e-16 of its peak.
inline double double_orthogonality(const PolynomialSolution& sa, const PolynomialSolution& sb,
                                   const WeightFunction& w, OrthoInterval interval,
                                   double rel_tol = 1e-9)
{
    if (w.gamma <= 0.0 || w.delta <= 0.0)
        throw Divergent("weight exponents must exceed -1 for integrability");
    if (interval == OrthoInterval::RightRay && w.epsilon >= 0.0)
        throw Divergent("integral over (1,inf) requires eps < 0");

    const Polynomial<double> ua = sa.in_z();
    const Polynomial<double> ub = sb.in_z();
    const auto core = [&](double z) { return ua(z) * ub(z) * std::exp(w.epsilon * z / 2.0); };

    if (interval == OrthoInterval::UnitInterval) {
        const auto left = [&](double t) {
            const double z = -1.0 + t * t;
            return 2.0 * std::pow(t, 2.0 * w.gamma - 1.0)
                 * std::pow(std::abs(z - 1.0), w.delta - 1.0) * core(z);
        };
        const auto right = [&](double t) {
            const double z = 1.0 - t * t;
            return 2.0 * std::pow(t, 2.0 * w.delta - 1.0)
                 * std::pow(z + 1.0, w.gamma - 1.0) * core(z);
        };
        return integrate(left, 0.0, 1.0, rel_tol) + integrate(right, 0.0, 1.0, rel_tol);
    }

    const auto near = [&](double t) {
        const double z = 1.0 + t * t;
        return 2.0 * std::pow(t, 2.0 * w.delta - 1.0) * std::pow(z + 1.0, w.gamma - 1.0) * core(z);
    };
    double acc = integrate(near, 0.0, 1.0, rel_tol);
    const auto direct = [&](double z) {
        return std::pow(z - 1.0, w.delta - 1.0) * std::pow(z + 1.0, w.gamma - 1.0) * core(z);
    };
    double lo = 2.0;
    int quiet = 0; // two consecutive negligible panels, in case one straddles a sign change
    for (int panel = 0; panel < 60 && quiet < 2; ++panel) {
        const double hi = lo * 2.0;
        const double part = integrate(direct, lo, hi, rel_tol);
        acc += part;
        quiet = std::abs(part) <= 1e-16 * (std::abs(acc) + 1e-300) ? quiet + 1 : 0;
        lo = hi;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Weak orthogonality of the critical polynomials
// ---------------------------------------------------------------------------

/// Squared-norm analogues of the weakly orthogonal family {P_k}:
/// nu_k = prod_{j=1}^{k} j eps (n-j+1)(gamma+j-1), nu_0 = 1, for k = 0..n.
inline std::vector<double> nu_coefficients(const CriticalFamily& fam)
{
    std::vector<double> nus(static_cast<std::size_t>(fam.n) + 1);
    nus[0] = 1.0;
    for (int j = 1; j <= fam.n; ++j)
        nus[static_cast<std::size_t>(j)] = nus[static_cast<std::size_t>(j) - 1]
            * j * fam.epsilon * (fam.n - j + 1) * (fam.gamma + j - 1);
    return nus;
}

/// Discrete moment functional L(p) = sum_j p(q_j) Omega_j with the Stieltjes
/// weights Omega_j fixed by L(P_k) = delta_{k0} for k = 0..n.
struct MomentFunctional {
    SpectralRoots roots;
    std::vector<double> omegas; // Omega_1 .. Omega_{n+1}
    std::vector<double> nus;    // nu_0 .. nu_n

    double apply(const Polynomial<double>& p) const
    {
        double acc = 0.0;
        for (std::size_t j = 0; j < roots.size(); ++j) acc += p(roots.q[j]) * omegas[j];
        return acc;
    }
};

namespace detail {

/// Dense Gaussian elimination with partial pivoting.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> rhs)
{
    const std::size_t n = rhs.size();
    double scale = 0.0;
    for (const auto& row : a)
        for (const double v : row) scale = std::max(scale, std::abs(v));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) <= 1e-13 * std::max(1.0, scale))
            throw SingularSystem("moment system is numerically singular");
        std::swap(a[col], a[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t r = n; r-- > 0;) {
        double acc = rhs[r];
        for (std::size_t c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
        x[r] = acc / a[r][r];
    }
    return x;
}

} // namespace detail

/// Solves sum_j P_k(q_j) Omega_j = delta_{k0}, k = 0..n, for the Stieltjes
/// coefficients of the step measure Omega(q) = sum_j Omega_j theta(q - q_j).
inline MomentFunctional moment_functional(const CriticalFamily& fam, const SpectralRoots& roots)
{
    const std::size_t dim = roots.size();
    if (dim != static_cast<std::size_t>(fam.n) + 1)
        throw SingularSystem("root count does not match the family order");
    for (std::size_t j = 0; j + 1 < dim; ++j)
        if (!(roots.q[j] < roots.q[j + 1]))
            throw SingularSystem("spectral roots are not distinct");

    std::vector<std::vector<double>> a(dim, std::vector<double>(dim));
    std::vector<double> rhs(dim, 0.0);
    rhs[0] = 1.0;
    for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t j = 0; j < dim; ++j) a[k][j] = fam.p[k](roots.q[j]);
    auto omegas = detail::solve_dense(std::move(a), std::move(rhs));
    return MomentFunctional{roots, std::move(omegas), nu_coefficients(fam)};
}

/// Max deviation of L(P_k P_l) from nu_k delta_{kl} over 0 <= k, l <= n.
inline double weak_orthogonality_check(const MomentFunctional& mf, const CriticalFamily& fam)
{
    double worst = 0.0;
    for (int k = 0; k <= fam.n; ++k) {
        for (int l = 0; l <= fam.n; ++l) {
            double acc = 0.0;
            for (std::size_t j = 0; j < mf.roots.size(); ++j)
                acc += fam.p[static_cast<std::size_t>(k)](mf.roots.q[j])
                     * fam.p[static_cast<std::size_t>(l)](mf.roots.q[j]) * mf.omegas[j];
            const double expected = k == l ? mf.nus[static_cast<std::size_t>(k)] : 0.0;
            worst = std::max(worst, std::abs(acc - expected));
        }
    }
    return worst;
}

} // namespace heunqes

#endif // HEUNQES_ORTHO_HPP
