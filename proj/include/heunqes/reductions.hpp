#ifndef HEUNQES_REDUCTIONS_HPP
#define HEUNQES_REDUCTIONS_HPP

#include "heunqes/cheq.hpp"
#include "heunqes/errors.hpp"
#include "heunqes/polynomial.hpp"

#include <array>
#include <cmath>
#include <set>
#include <string>
#include <vector>

namespace heunqes {

// ---------------------------------------------------------------------------
// Derived parameters of the self-adjoint forms
// ---------------------------------------------------------------------------

/// Parameters (A, B, C, a, b) of the transformed equations
///
///   d/dz[(z^2-1) v'] + ( A z^2 + B z + C + (a z + b)/(z^2-1) ) v = 0
///
/// and the algebraic Razavy/Whittaker-Hill form, expressed through the
/// original confluent Heun parameters.
struct DerivedParams {
    double A, B, C, a, b;
};

inline DerivedParams derived_params(const CheqParams& p)
{
    DerivedParams d{};
    d.A = -p.epsilon * p.epsilon / 16.0;
    d.B = p.alpha / 2.0 - p.epsilon / 4.0 * (p.gamma + p.delta);
    d.C = p.epsilon * p.epsilon / 16.0 + p.epsilon / 4.0 * (p.gamma - p.delta)
        - (p.gamma + p.delta) / 4.0 * (p.gamma + p.delta - 2.0) + p.alpha / 2.0 - p.q;
    d.a = p.delta * (1.0 - p.delta / 2.0) - p.gamma * (1.0 - p.gamma / 2.0);
    d.b = p.delta * (1.0 - p.delta / 2.0) + p.gamma * (1.0 - p.gamma / 2.0) - 1.0;
    return d;
}

// ---------------------------------------------------------------------------
// Classification of descendant equations
// ---------------------------------------------------------------------------

enum class ReductionKind {
    GSEqGammaEqDelta,        // gamma = delta
    GSEqGammaEq2MinusDelta,  // gamma = 2 - delta
    Spheroidal,              // a = B = 0
    AssociatedLegendre,      // spheroidal with eps = 0
    Legendre,                // associated Legendre with b = 0 (gamma = delta = 1)
    RazavyWH_case_a,         // gamma = delta = 1/2
    RazavyWH_case_b,         // gamma = delta = 3/2
    RazavyWH_case_c,         // gamma = 3/2, delta = 1/2
    RazavyWH_case_d,         // gamma = 1/2, delta = 3/2
    Mathieu,                 // Razavy/WH with B = 0
};

inline std::string describe(ReductionKind k)
{
    switch (k) {
        case ReductionKind::GSEqGammaEqDelta: return "generalized spheroidal (gamma = delta)";
        case ReductionKind::GSEqGammaEq2MinusDelta: return "generalized spheroidal (gamma = 2 - delta)";
        case ReductionKind::Spheroidal: return "spheroidal wave equation (a = B = 0)";
        case ReductionKind::AssociatedLegendre: return "associated Legendre equation (a = B = A = 0)";
        case ReductionKind::Legendre: return "Legendre equation (gamma = delta = 1, eps = alpha = 0)";
        case ReductionKind::RazavyWH_case_a: return "Razavy/Whittaker-Hill case a (gamma = delta = 1/2)";
        case ReductionKind::RazavyWH_case_b: return "Razavy/Whittaker-Hill case b (gamma = delta = 3/2)";
        case ReductionKind::RazavyWH_case_c: return "Razavy/Whittaker-Hill case c (gamma = 3/2, delta = 1/2)";
        case ReductionKind::RazavyWH_case_d: return "Razavy/Whittaker-Hill case d (gamma = 1/2, delta = 3/2)";
        case ReductionKind::Mathieu: return "algebraic Mathieu equation (Razavy/WH with B = 0)";
    }
    return "?";
}

/// All descendant-equation constraints satisfied by `p` within `tol`;
/// the tags are not mutually exclusive.
inline std::set<ReductionKind> classify_reductions(const CheqParams& p, double tol = 1e-12)
{
    std::set<ReductionKind> out;
    const auto near = [tol](double x, double y) { return std::abs(x - y) <= tol; };

    const bool g_eq_d = near(p.gamma, p.delta);
    const bool g_eq_2md = near(p.gamma, 2.0 - p.delta);
    if (g_eq_d) out.insert(ReductionKind::GSEqGammaEqDelta);
    if (g_eq_2md) out.insert(ReductionKind::GSEqGammaEq2MinusDelta);

    const bool spheroidal = (g_eq_d && near(p.alpha, p.epsilon * p.delta))
                         || (g_eq_2md && near(p.alpha, p.epsilon));
    if (spheroidal) out.insert(ReductionKind::Spheroidal);
    if (spheroidal && near(p.epsilon, 0.0)) out.insert(ReductionKind::AssociatedLegendre);
    if (spheroidal && near(p.epsilon, 0.0) && near(p.gamma, 1.0) && near(p.delta, 1.0))
        out.insert(ReductionKind::Legendre);

    const bool rwh_a = near(p.gamma, 0.5) && near(p.delta, 0.5);
    const bool rwh_b = near(p.gamma, 1.5) && near(p.delta, 1.5);
    const bool rwh_c = near(p.gamma, 1.5) && near(p.delta, 0.5);
    const bool rwh_d = near(p.gamma, 0.5) && near(p.delta, 1.5);
    if (rwh_a) out.insert(ReductionKind::RazavyWH_case_a);
    if (rwh_b) out.insert(ReductionKind::RazavyWH_case_b);
    if (rwh_c) out.insert(ReductionKind::RazavyWH_case_c);
    if (rwh_d) out.insert(ReductionKind::RazavyWH_case_d);
    if ((rwh_a || rwh_b || rwh_c || rwh_d) && near(derived_params(p).B, 0.0))
        out.insert(ReductionKind::Mathieu);

    return out;
}

// ---------------------------------------------------------------------------
// Gauge factors
// ---------------------------------------------------------------------------

/// A factor g(z) = (z+1)^{exp_plus} (z-1)^{exp_minus} e^{exp_lin z}.
/// On (-1,1) the (z-1) power is evaluated with its absolute value, the
/// customary convention for the weight on that interval.
struct GaugeFactor {
    double exp_plus = 0.0;
    double exp_minus = 0.0;
    double exp_lin = 0.0;

    double eval(double z) const
    {
        return std::pow(std::abs(z + 1.0), exp_plus) * std::pow(std::abs(z - 1.0), exp_minus)
             * std::exp(exp_lin * z);
    }

    /// g'(z)/g(z); poles at z = +-1 when the exponents are nonzero.
    double log_deriv(double z) const
    {
        return exp_plus / (z + 1.0) + exp_minus / (z - 1.0) + exp_lin;
    }

    /// (g'/g)' = -exp_plus/(z+1)^2 - exp_minus/(z-1)^2.
    double log_deriv_prime(double z) const
    {
        return -exp_plus / ((z + 1.0) * (z + 1.0)) - exp_minus / ((z - 1.0) * (z - 1.0));
    }

    double deriv(double z) const { return eval(z) * log_deriv(z); }
    double second_deriv(double z) const
    {
        const double l = log_deriv(z);
        return eval(z) * (l * l + log_deriv_prime(z));
    }

    GaugeFactor inverse() const { return {-exp_plus, -exp_minus, -exp_lin}; }
};

enum class GseqBranch { GammaEqDelta, GammaEq2MinusDelta };

/// Factor g with u = g * v carrying solutions of the generalized spheroidal
/// form back to the confluent Heun equation.
inline GaugeFactor gseq_gauge(const CheqParams& p, GseqBranch branch, double tol = 1e-12)
{
    if (branch == GseqBranch::GammaEqDelta) {
        if (std::abs(p.gamma - p.delta) > tol)
            throw ConstraintViolated("gseq_gauge: branch requires gamma = delta");
        return {(1.0 - p.delta) / 2.0, (1.0 - p.delta) / 2.0, -p.epsilon / 4.0};
    }
    if (std::abs(p.gamma - (2.0 - p.delta)) > tol)
        throw ConstraintViolated("gseq_gauge: branch requires gamma = 2 - delta");
    return {-(1.0 - p.delta) / 2.0, (1.0 - p.delta) / 2.0, -p.epsilon / 4.0};
}

/// Factor g with u = g * w for the algebraic Razavy/Whittaker-Hill form.
/// Defined for all parameters; the target is Razavy/WH proper only when
/// a = 0 and b = -1/4.
inline GaugeFactor rwh_gauge(const CheqParams& p)
{
    return {(1.0 - 2.0 * p.gamma) / 4.0, (1.0 - 2.0 * p.delta) / 4.0, -p.epsilon / 4.0};
}

// ---------------------------------------------------------------------------
// sl(2,R) structure
// ---------------------------------------------------------------------------

/// Coefficients of the quadratic combination
///
///   D = c_00 (J0)^2 + c_mm (Jm)^2 + c_pm (Jp Jm + Jm Jp)
///       + c_p Jp + c_0 J0 + c_m Jm
///
/// in the degree-n representation Jm = d/dz, J0 = z d/dz - n/2,
/// Jp = z^2 d/dz - n z.
struct Sl2Decomposition {
    int n = 0;
    double c_00 = 0, c_mm = 0, c_pm = 0;
    double c_p = 0, c_0 = 0, c_m = 0;
};

inline Sl2Decomposition sl2_decompose(const QesCertificate& cert)
{
    if (cert.n < 0) throw NotQes("invalid certificate");
    const double n = cert.n;
    const double gde = cert.gamma + cert.delta - cert.epsilon;
    Sl2Decomposition d;
    d.n = cert.n;
    d.c_00 = 2.0 * (n + gde) / (n + 2.0);
    d.c_mm = -1.0;
    d.c_pm = (2.0 - n - 2.0 * gde) / (2.0 * (n + 2.0));
    d.c_p = cert.epsilon / 2.0;
    d.c_0 = cert.gamma + cert.delta + n - 1.0;
    d.c_m = cert.delta - cert.gamma - cert.epsilon / 2.0;
    return d;
}

/// A linear differential operator sum_k p_k(z) d^k/dz^k with polynomial
/// coefficients; minimal support for composing the sl(2) generators.
struct DiffOp {
    std::vector<Polynomial<double>> coeff; // index = derivative order

    static DiffOp multiplication(Polynomial<double> p) { return {{std::move(p)}}; }

    static DiffOp first_order(Polynomial<double> p1, Polynomial<double> p0 = Polynomial<double>())
    {
        return {{std::move(p0), std::move(p1)}};
    }

    int order() const
    {
        for (int k = static_cast<int>(coeff.size()) - 1; k >= 0; --k)
            if (!coeff[static_cast<std::size_t>(k)].is_zero()) return k;
        return -1;
    }

    Polynomial<double> at(std::size_t k) const
    {
        return k < coeff.size() ? coeff[k] : Polynomial<double>();
    }

    friend DiffOp operator+(const DiffOp& a, const DiffOp& b)
    {
        DiffOp r;
        r.coeff.resize(std::max(a.coeff.size(), b.coeff.size()));
        for (std::size_t k = 0; k < r.coeff.size(); ++k) r.coeff[k] = a.at(k) + b.at(k);
        return r;
    }

    friend DiffOp operator*(double s, const DiffOp& op)
    {
        DiffOp r = op;
        for (auto& p : r.coeff) p *= s;
        return r;
    }

    /// Operator composition via the Leibniz rule:
    /// p d^i ( q d^j f ) = p sum_l C(i,l) q^{(l)} d^{i+j-l} f.
    friend DiffOp operator*(const DiffOp& lhs, const DiffOp& rhs)
    {
        DiffOp r;
        for (std::size_t i = 0; i < lhs.coeff.size(); ++i) {
            if (lhs.coeff[i].is_zero()) continue;
            for (std::size_t j = 0; j < rhs.coeff.size(); ++j) {
                if (rhs.coeff[j].is_zero()) continue;
                Polynomial<double> dq = rhs.coeff[j];
                double binom = 1.0;
                for (std::size_t l = 0; l <= i; ++l) {
                    const std::size_t ord = i + j - l;
                    if (r.coeff.size() <= ord) r.coeff.resize(ord + 1);
                    r.coeff[ord] += binom * (lhs.coeff[i] * dq);
                    dq = dq.derivative();
                    if (dq.is_zero()) break;
                    binom = binom * static_cast<double>(i - l) / static_cast<double>(l + 1);
                }
            }
        }
        return r;
    }
};

/// Expands the quadratic sl(2) combination into P2(z) d^2 + P1(z) d + P0(z).
inline std::array<Polynomial<double>, 3> sl2_expand(const Sl2Decomposition& d)
{
    const double n = d.n;
    const DiffOp Jm = DiffOp::first_order(Polynomial<double>(1.0));
    const DiffOp J0 = DiffOp::first_order(Polynomial<double>{0.0, 1.0}, Polynomial<double>(-n / 2.0));
    const DiffOp Jp = DiffOp::first_order(Polynomial<double>{0.0, 0.0, 1.0}, Polynomial<double>{0.0, -n});

    const DiffOp total = d.c_00 * (J0 * J0) + d.c_mm * (Jm * Jm)
                       + d.c_pm * (Jp * Jm + Jm * Jp)
                       + d.c_p * Jp + d.c_0 * J0 + d.c_m * Jm;
    if (total.order() > 2) throw Error("sl2_expand: unexpected operator order");
    return {total.at(0), total.at(1), total.at(2)};
}

/// Coefficient polynomials of the confluent Heun operator
/// D = (z^2-1) d^2 + (eps/2 (z^2-1) + gamma(z-1) + delta(z+1)) d + alpha/2 (z+1).
inline std::array<Polynomial<double>, 3> cheq_operator_coefficients(const QesCertificate& cert)
{
    const Polynomial<double> p2{-1.0, 0.0, 1.0};
    const Polynomial<double> p1{
        -cert.epsilon / 2.0 - cert.gamma + cert.delta,
        cert.gamma + cert.delta,
        cert.epsilon / 2.0};
    const Polynomial<double> p0{cert.alpha() / 2.0, cert.alpha() / 2.0};
    return {p0, p1, p2};
}

// ---------------------------------------------------------------------------
// Schroedinger form on the |z| > 1 branch
// ---------------------------------------------------------------------------

/// The gauge factor mu and hyperbolic potential V such that
/// psi(x) = mu(cosh x) u(cosh x) is a zero mode of -d^2/dx^2 + V(x)
/// whenever u solves the QES equation with spectral value q. The
/// eigenvalue constant C - 1/4 is kept inside V and exposed separately.
struct SchroedingerForm {
    GaugeFactor mu;
    DerivedParams params; // with the QES substitutions applied
    double A, B, C, a, b;

    double potential(double x) const
    {
        const double ch = std::cosh(x);
        const double sh = std::sinh(x);
        const double csch = 1.0 / sh;
        return -A * ch * ch - B * ch - a * (ch / sh) * csch - (b + 0.25) * csch * csch
             - C + 0.25;
    }

    /// The constant absorbed into V; moving it to the right-hand side reads
    /// the equation as an eigenvalue problem with eigenvalue C - 1/4.
    double eigenvalue_constant() const { return C - 0.25; }

    double x_of_z(double z) const { return std::acosh(z); }
    double z_of_x(double x) const { return std::cosh(x); }

    double psi(double x, const Polynomial<double>& u) const
    {
        const double z = std::cosh(x);
        return mu.eval(z) * u(z);
    }
};

inline SchroedingerForm schroedinger_form(const QesCertificate& cert, double q)
{
    SchroedingerForm s;
    s.mu = GaugeFactor{(2.0 * cert.gamma - 1.0) / 4.0, (2.0 * cert.delta - 1.0) / 4.0,
                       cert.epsilon / 4.0};
    s.params = derived_params(cert.params(q));
    s.A = s.params.A;
    s.B = s.params.B;
    s.C = s.params.C;
    s.a = s.params.a;
    s.b = s.params.b;
    return s;
}

} // namespace heunqes

#endif // HEUNQES_REDUCTIONS_HPP
