#ifndef HEUNQES_DENSITY_HPP
#define HEUNQES_DENSITY_HPP

#include "heunqes/twocenter.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace heunqes {

/// Cartesian sampling box: dim axes with (lo, hi, count) each.
struct GridSpec {
    struct Axis {
        double lo = -1.0;
        double hi = 1.0;
        int count = 32;
    };
    std::vector<Axis> axes;

    int dim() const { return static_cast<int>(axes.size()); }
    std::size_t total() const
    {
        std::size_t n = 1;
        for (const auto& a : axes) n *= static_cast<std::size_t>(a.count);
        return n;
    }
};

struct DensityGrid {
    GridSpec grid;
    double norm_squared = 0.0;      // N^2 = integral of |Psi|^2
    std::vector<double> rho;        // row-major over the axes, last axis fastest
    std::vector<std::array<double, 3>> points;
};

namespace detail {

/// Integral of |Psi|^2 in the hyperbolic-trigonometric parameterization
/// xi = cosh(mu), eta = cos(nu), where the integrands are smooth. The mu
/// range is extended panel by panel until the exponential tail is exhausted.
inline double norm_squared_spheroidal(const DemkovSolution& sol)
{
    const double a = sol.R / 2.0;
    const bool three_d = sol.config.dim == 3;
    const double rate = sol.pref_r.exp_lin; // eps_r / 4 < 0 for bound states
    if (rate >= 0.0) throw NotNormalizable("radial exponential rate is non-negative");

    const auto inner = [&](double mu) {
        const double xi = std::cosh(mu);
        const double fr = sol.pref_r.eval(xi) * sol.radial_monic()(xi);
        const auto angular_part = [&](double nu) {
            const double eta = std::cos(nu);
            const double g = sol.pref_a.eval(eta) * sol.angular_monic()(eta);
            const double jac = (xi * xi - eta * eta) * (three_d ? std::sinh(mu) * std::sin(nu) : 1.0);
            return fr * fr * g * g * jac;
        };
        return integrate(angular_part, 0.0, std::acos(-1.0), 1e-10, 1e-14);
    };

    // 3D: dV = a^3 (xi^2-eta^2) dxi deta dphi over (1,inf)x(-1,1)x(0,2pi).
    // 2D: dA = a^2 (xi^2-eta^2) dmu dnu with nu in (0,2pi); the integrand is
    //     nu -> 2pi-nu symmetric, so integrate (0,pi) and double.
    const double prefac = three_d ? 2.0 * std::acos(-1.0) * a * a * a : 2.0 * a * a;

    double acc = 0.0;
    double lo = 0.0, width = 1.0;
    for (int panel = 0; panel < 80; ++panel) {
        const double part = integrate(inner, lo, lo + width, 1e-10, 1e-14);
        acc += part;
        if (std::abs(part) <= 1e-14 * (std::abs(acc) + 1e-300) && panel > 1) break;
        lo += width;
    }
    return prefac * acc;
}

} // namespace detail

/// Normalization constant N^2 = integral over the whole plane/space of
/// |Psi|^2, with the monic-polynomial normalization of the factors.
inline double norm_squared(const DemkovSolution& sol) { return detail::norm_squared_spheroidal(sol); }

/// Samples rho = |Psi|^2 / N^2 on a Cartesian grid. The grid must have 2 or
/// 3 axes matching the configuration dimension; axis order is (x1, x2[, x3]).
inline DensityGrid density_grid(const DemkovSolution& sol, const GridSpec& grid)
{
    if (grid.dim() != sol.config.dim) throw Error("grid dimension does not match the configuration");
    for (const auto& ax : grid.axes) {
        if (!(ax.lo < ax.hi) || ax.count < 1 || !std::isfinite(ax.lo) || !std::isfinite(ax.hi))
            throw Error("grid axis bounds must be finite with lo < hi and count >= 1");
    }

    DensityGrid out;
    out.grid = grid;
    out.norm_squared = norm_squared(sol);
    out.rho.reserve(grid.total());
    out.points.reserve(grid.total());

    const auto coord = [&](const GridSpec::Axis& ax, int i) {
        return ax.count == 1 ? 0.5 * (ax.lo + ax.hi)
                             : ax.lo + (ax.hi - ax.lo) * i / (ax.count - 1);
    };

    const bool three_d = grid.dim() == 3;
    for (int i = 0; i < grid.axes[0].count; ++i) {
        const double x1 = coord(grid.axes[0], i);
        for (int j = 0; j < grid.axes[1].count; ++j) {
            const double x2 = coord(grid.axes[1], j);
            const int kmax = three_d ? grid.axes[2].count : 1;
            for (int k = 0; k < kmax; ++k) {
                const double x3 = three_d ? coord(grid.axes[2], k) : 0.0;
                const double psi = sol.psi_cartesian(x1, x2, x3);
                out.points.push_back({x1, x2, x3});
                out.rho.push_back(psi * psi / out.norm_squared);
            }
        }
    }
    return out;
}

} // namespace heunqes

#endif // HEUNQES_DENSITY_HPP
