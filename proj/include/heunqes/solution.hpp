#ifndef HEUNQES_SOLUTION_HPP
#define HEUNQES_SOLUTION_HPP

#include "heunqes/errors.hpp"
#include "heunqes/family.hpp"
#include "heunqes/spectral.hpp"

#include <cmath>
#include <cstddef>

namespace heunqes {

/// A degree-n polynomial eigenfunction u_{n,j} of the QES confluent Heun
/// equation, built from the truncated Frobenius series about z = -1:
///
///   u(z) = sum_{k=0}^{n} (-1)^k P_k(q_j) / (2^k k! (gamma)_k) (z+1)^k,
///
/// normalized so the constant term (the k=0 coefficient) equals one.
template <class T>
struct PolynomialSolutionT {
    int n = 0;
    int j = 0;          // 1-based root index when constructed from SpectralRoots
    T q_j{0};
    Polynomial<T> frobenius; // coefficients in powers of (z+1)
    T gamma{0};
    T delta{0};
    T epsilon{0};

    /// The same polynomial expanded in powers of z.
    Polynomial<T> in_z() const
    {
        const Polynomial<T> zp1{T(1), T(1)};
        Polynomial<T> acc;
        Polynomial<T> power(T(1));
        for (std::size_t k = 0; k < frobenius.coefficients().size(); ++k) {
            acc += frobenius.coeff(k) * power;
            power *= zp1;
        }
        return acc;
    }

    /// Monic-in-z view, matching the customary display of the solutions.
    Polynomial<T> monic_in_z() const
    {
        Polynomial<T> p = in_z();
        if (!p.is_zero()) p /= p.leading();
        return p;
    }
};

using PolynomialSolution = PolynomialSolutionT<double>;

/// Builds u_{n,j} for a spectral value q_j. The root residual |P_{n+1}(q_j)|
/// is checked against `tol` scaled by the coefficient size; pass an exact
/// root when T is Rational.
template <class T>
PolynomialSolutionT<T> build_solution(const CriticalFamilyT<T>& fam, const T& q_j, int j = 0,
                                      double tol = 1e-9)
{
    for (int k = 0; k < fam.n; ++k)
        if (fam.gamma + T(k) == T(0))
            throw Error("gamma is a non-positive integer; the Frobenius expansion at z=-1 breaks down");

    if constexpr (std::is_same_v<T, double>) {
        double scale = 1.0, power = 1.0;
        for (const double c : fam.critical().coefficients()) {
            scale += std::abs(c) * power;
            power *= std::abs(q_j);
        }
        if (std::abs(fam.critical()(q_j)) > tol * scale)
            throw NotARoot("q_j is not a root of the critical polynomial");
    } else {
        if (fam.critical()(q_j) != T(0)) throw NotARoot("q_j is not an exact root of the critical polynomial");
    }

    std::vector<T> coeffs(static_cast<std::size_t>(fam.n) + 1);
    T denom(1); // 2^k k! (gamma)_k, accumulated incrementally
    T sign(1);
    for (int k = 0; k <= fam.n; ++k) {
        if (k > 0) {
            denom *= T(2) * T(k) * (fam.gamma + T(k - 1));
            sign = -sign;
        }
        coeffs[static_cast<std::size_t>(k)] = sign * fam.p[static_cast<std::size_t>(k)](q_j) / denom;
    }
    return PolynomialSolutionT<T>{fam.n, j, q_j, Polynomial<T>(std::move(coeffs)),
                                  fam.gamma, fam.delta, fam.epsilon};
}

/// All n+1 solutions of a double-precision family, ordered by ascending root.
inline std::vector<PolynomialSolution> build_all_solutions(const CriticalFamily& fam)
{
    const SpectralRoots roots = spectral_roots(fam);
    std::vector<PolynomialSolution> out;
    out.reserve(roots.size());
    for (std::size_t j = 1; j <= roots.size(); ++j)
        out.push_back(build_solution(fam, roots[j], static_cast<int>(j)));
    return out;
}

/// Exact count of zeros of the solution polynomial in the open interval
/// (lo, hi); hi may be +infinity.
inline int count_zeros(const PolynomialSolution& sol, double lo, double hi)
{
    return count_real_roots_in(sol.in_z(), lo, hi);
}

} // namespace heunqes

#endif // HEUNQES_SOLUTION_HPP
