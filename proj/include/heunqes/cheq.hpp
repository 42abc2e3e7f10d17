#ifndef HEUNQES_CHEQ_HPP
#define HEUNQES_CHEQ_HPP

#include "heunqes/errors.hpp"
#include "heunqes/polynomial.hpp"

#include <cmath>
#include <optional>

namespace heunqes {

/// Parameters of the confluent Heun equation in the symmetric form with
/// regular singular points at z = -1 and z = +1:
///
///   (z^2-1) u'' + ( eps/2 (z^2-1) + gamma (z-1) + delta (z+1) ) u'
///                + ( alpha/2 (z+1) - q ) u = 0.
///
/// q doubles as the spectral parameter of the associated operator.
template <class T>
struct CheqParamsT {
    T alpha{0};
    T gamma{0};
    T delta{0};
    T epsilon{0};
    T q{0};

    /// M = delta + gamma - epsilon, the combination entering the recurrence.
    T M() const { return delta + gamma - epsilon; }
};

using CheqParams = CheqParamsT<double>;

inline bool all_finite(const CheqParams& p)
{
    return std::isfinite(p.alpha) && std::isfinite(p.gamma) && std::isfinite(p.delta)
        && std::isfinite(p.epsilon) && std::isfinite(p.q);
}

/// Degree of the polynomial sector if the equation is quasi-exactly solvable,
/// i.e. -alpha/epsilon is a non-negative integer within `tol` (relative).
/// For epsilon = 0 the condition degenerates: only alpha = 0 qualifies (n=0).
inline std::optional<int> qes_degree(const CheqParams& p, double tol = 1e-12)
{
    if (!all_finite(p) || tol < 0) return std::nullopt;
    if (p.epsilon == 0.0) {
        if (p.alpha == 0.0) return 0;
        return std::nullopt;
    }
    const double ratio = -p.alpha / p.epsilon;
    const double rounded = std::round(ratio);
    if (rounded < 0) return std::nullopt;
    if (std::abs(ratio - rounded) > tol * std::max(1.0, std::abs(ratio))) return std::nullopt;
    return static_cast<int>(rounded);
}

/// A certified QES instance: degree n with alpha pinned to -n*epsilon.
/// The spectral parameter q is left free.
template <class T>
struct QesCertificateT {
    int n = 0;
    T gamma{0};
    T delta{0};
    T epsilon{0};

    T alpha() const { return T(-n) * epsilon; }
    T M() const { return delta + gamma - epsilon; }

    CheqParamsT<T> params(T q = T(0)) const
    {
        return CheqParamsT<T>{alpha(), gamma, delta, epsilon, q};
    }
};

using QesCertificate = QesCertificateT<double>;

inline QesCertificate make_certificate(int n, double gamma, double delta, double epsilon)
{
    if (n < 0) throw NotQes("QES degree must be non-negative");
    return QesCertificate{n, gamma, delta, epsilon};
}

/// Certifies arbitrary parameters, or throws NotQes.
inline QesCertificate certify(const CheqParams& p, double tol = 1e-12)
{
    const auto n = qes_degree(p, tol);
    if (!n) throw NotQes("parameters do not satisfy alpha = -n*epsilon");
    return QesCertificate{*n, p.gamma, p.delta, p.epsilon};
}

/// Pochhammer symbol x (x+1) ... (x+k-1); empty product = 1.
template <class T>
T pochhammer(const T& x, unsigned k)
{
    T r(1);
    for (unsigned j = 0; j < k; ++j) r *= x + T(static_cast<int>(j));
    return r;
}

/// Left-hand side of the QES confluent Heun equation applied to a polynomial
/// u at the point z, with derivatives taken exactly:
///
///   (z^2-1) u'' + ( eps/2 (z^2-1) + gamma (z-1) + delta (z+1) ) u'
///              + ( -n eps/2 (z+1) - q ) u.
template <class T>
T cheq_residual(const QesCertificateT<T>& cert, const T& q, const Polynomial<T>& u, const T& z)
{
    const Polynomial<T> du = u.derivative();
    const Polynomial<T> ddu = du.derivative();
    const T z2m1 = z * z - T(1);
    const T half = T(1) / T(2);
    const T first = cert.epsilon * half * z2m1 + cert.gamma * (z - T(1)) + cert.delta * (z + T(1));
    const T zeroth = -T(cert.n) * cert.epsilon * half * (z + T(1)) - q;
    return z2m1 * ddu(z) + first * du(z) + zeroth * u(z);
}

} // namespace heunqes

#endif // HEUNQES_CHEQ_HPP
