#ifndef HEUNQES_FAMILY_HPP
#define HEUNQES_FAMILY_HPP

#include "heunqes/cheq.hpp"
#include "heunqes/polynomial.hpp"

#include <vector>

namespace heunqes {

/// The critical polynomials P_0 .. P_{n+2} of a QES confluent Heun equation,
/// as monic polynomials in the spectral parameter q. Generated by
///
///   P_0 = 1,  P_1 = q,
///   P_{k+1}(q) = (q - k(M+k-1)) P_k(q) - k eps (n-k+1)(gamma+k-1) P_{k-1}(q),
///
/// with M = delta + gamma - epsilon. The roots of P_{n+1} are the spectral
/// values at which the Frobenius series truncates to a degree-n polynomial.
///
/// T is the coefficient ring: double or Rational for concrete parameters, or
/// Polynomial<Rational> when the parameters themselves depend on a distance
/// variable (as in the two-center application).
template <class T>
struct CriticalFamilyT {
    int n = 0;
    T gamma{0};
    T delta{0};
    T epsilon{0};
    std::vector<Polynomial<T>> p; // P_0 .. P_{n+2}

    T M() const { return delta + gamma - epsilon; }

    const Polynomial<T>& critical() const { return p[static_cast<std::size_t>(n) + 1]; }
};

using CriticalFamily = CriticalFamilyT<double>;

template <class T>
CriticalFamilyT<T> build_family(const T& gamma, const T& delta, const T& epsilon, int n)
{
    CriticalFamilyT<T> fam{n, gamma, delta, epsilon, {}};
    const T M = fam.M();
    const std::size_t count = static_cast<std::size_t>(n) + 3;
    fam.p.reserve(count);
    fam.p.push_back(Polynomial<T>(T(1)));
    fam.p.push_back(Polynomial<T>::identity());
    for (int k = 1; static_cast<std::size_t>(k) + 1 < count; ++k) {
        const Polynomial<T> shift{-T(k) * (M + T(k - 1)), T(1)}; // q - k(M+k-1)
        const T tail = T(k) * epsilon * T(n - k + 1) * (gamma + T(k - 1));
        fam.p.push_back(shift * fam.p[static_cast<std::size_t>(k)]
                        - tail * fam.p[static_cast<std::size_t>(k) - 1]);
    }
    return fam;
}

template <class T>
CriticalFamilyT<T> build_family(const QesCertificateT<T>& cert)
{
    return build_family(cert.gamma, cert.delta, cert.epsilon, cert.n);
}

/// Past the truncation index the recurrence loses its two-term tail:
/// P_{n+2}(q) = (q - (n+1)(M+n)) P_{n+1}(q) identically. Returns the
/// difference of the two sides (zero when the family is consistent).
template <class T>
Polynomial<T> truncation_defect(const CriticalFamilyT<T>& fam)
{
    const std::size_t n = static_cast<std::size_t>(fam.n);
    const Polynomial<T> shift{-T(fam.n + 1) * (fam.M() + T(fam.n)), T(1)};
    return fam.p[n + 2] - shift * fam.p[n + 1];
}

} // namespace heunqes

#endif // HEUNQES_FAMILY_HPP
