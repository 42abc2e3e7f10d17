#ifndef HEUNQES_SPECTRAL_HPP
#define HEUNQES_SPECTRAL_HPP

#include "heunqes/errors.hpp"
#include "heunqes/family.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace heunqes {

/// The n+1 spectral values q_1 < q_2 < ... < q_{n+1}: the real roots of the
/// critical polynomial P_{n+1}.
struct SpectralRoots {
    std::vector<double> q;

    std::size_t size() const { return q.size(); }
    /// 1-based access mirroring the customary subscript q_j.
    double operator[](std::size_t j) const { return q.at(j - 1); }
};

/// Residual bound used to accept a polished root: 1e-12 relative to the
/// evaluation scale sum_k |c_k| |q|^k, which is the attainable backward
/// error in double precision.
inline double spectral_residual_bound(const Polynomial<double>& p, double root)
{
    double scale = 0.0;
    double power = 1.0;
    for (const double c : p.coefficients()) {
        scale += std::abs(c) * power;
        power *= std::abs(root);
    }
    return 1e-12 * std::max(1.0, scale);
}

/// Finds all n+1 real roots of P_{n+1} by Sturm bisection plus Newton polish.
/// Throws RootCountMismatch when fewer real roots exist; the Sturm-Liouville
/// hypotheses behind "n+1 simple real eigenvalues" do not hold for every
/// parameter combination, and no attempt is made to guess in that case.
inline SpectralRoots spectral_roots(const CriticalFamily& fam)
{
    const Polynomial<double>& critical = fam.critical();
    const int expected = fam.n + 1;
    std::vector<double> roots = real_roots(critical);
    if (static_cast<int>(roots.size()) != expected)
        throw RootCountMismatch("expected " + std::to_string(expected) + " real spectral roots, isolated "
                                + std::to_string(roots.size()));
    for (std::size_t i = 0; i + 1 < roots.size(); ++i)
        if (!(roots[i] < roots[i + 1]))
            throw RootCountMismatch("spectral roots are not strictly increasing");
    for (const double r : roots) {
        if (std::abs(critical(r)) > spectral_residual_bound(critical, r))
            throw RootCountMismatch("root residual exceeds tolerance");
    }
    return SpectralRoots{std::move(roots)};
}

} // namespace heunqes

#endif // HEUNQES_SPECTRAL_HPP
