#ifndef HEUNQES_TWOCENTER_HPP
#define HEUNQES_TWOCENTER_HPP

#include "heunqes/bivariate.hpp"
#include "heunqes/errors.hpp"
#include "heunqes/ortho.hpp"
#include "heunqes/reductions.hpp"
#include "heunqes/solution.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace heunqes {

// ---------------------------------------------------------------------------
// Configuration and quantum numbers
// ---------------------------------------------------------------------------

/// Two fixed Coulomb centers with charges Z1 at x1 = +R/2 and Z2 at
/// x1 = -R/2, in dimension 2 or 3. Normalized so Z1 >= Z2 > 0; configs given
/// the other way round are swapped (a reflection of the x1 axis).
struct CenterConfig {
    Rational Z1;
    Rational Z2;
    int dim = 3;
    bool swapped = false;

    static CenterConfig make(Rational z1, Rational z2, int dim)
    {
        if (z1 <= 0 || z2 <= 0) throw Error("charges must be positive");
        if (dim != 2 && dim != 3) throw Error("dimension must be 2 or 3");
        bool swapped = false;
        if (z1 < z2) {
            std::swap(z1, z2);
            swapped = true;
        }
        return CenterConfig{std::move(z1), std::move(z2), dim, swapped};
    }

    Rational z_sum() const { return Z1 + Z2; }
    Rational z_diff() const { return Z1 - Z2; }
    bool degenerate() const { return Z1 == Z2; }
};

/// Hydrogenoid labels (n1 radial, n2 angular) tied by the compatibility
/// constraint (Z1+Z2)^2/n1^2 = (Z1-Z2)^2/n2^2; m is the 3D magnetic number.
struct QuantumNumbers {
    int n1 = 1;
    int n2 = 1;
    std::optional<int> m; // engaged in 3D only
};

/// All (n1, n2) with 1 <= n1, n2 <= n_max satisfying the constraint exactly,
/// expanded over admissible m >= 0 in 3D. Returns empty (the angular side
/// degenerates) when Z1 = Z2.
inline std::vector<QuantumNumbers> diophantine_enumerate(const CenterConfig& config, int n_max)
{
    std::vector<QuantumNumbers> out;
    if (config.degenerate()) return out;
    for (int n1 = 1; n1 <= n_max; ++n1) {
        for (int n2 = 1; n2 <= n_max; ++n2) {
            if (config.z_sum() * n2 != config.z_diff() * n1) continue;
            if (config.dim == 3) {
                for (int m = 0; m < std::min(n1, n2); ++m)
                    out.push_back({n1, n2, m});
            } else {
                out.push_back({n1, n2, std::nullopt});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Separated branches as confluent Heun instances
// ---------------------------------------------------------------------------

enum class BranchKind { Radial3D, Angular3D, Radial2D, Angular2D };

/// The four 2D parameter cases of the algebraic Razavy/Whittaker-Hill
/// reduction, labelled by (gamma, delta).
enum class Case2D { a, b, c, d }; // (1/2,1/2), (3/2,3/2), (3/2,1/2), (1/2,3/2)

inline char case_letter(Case2D c)
{
    switch (c) {
        case Case2D::a: return 'a';
        case Case2D::b: return 'b';
        case Case2D::c: return 'c';
        case Case2D::d: return 'd';
    }
    return '?';
}

inline Rational case_gamma(Case2D c)
{
    return (c == Case2D::b || c == Case2D::c) ? Rational(3, 2) : Rational(1, 2);
}

inline Rational case_delta(Case2D c)
{
    return (c == Case2D::b || c == Case2D::d) ? Rational(3, 2) : Rational(1, 2);
}

/// One separated factor (radial or angular) viewed as a QES confluent Heun
/// equation whose parameters depend on the separation constant lambda and
/// the intercenter distance R.
struct BranchSpec {
    BranchKind kind;
    std::optional<Case2D> case2d; // 2D kinds only
    QuantumNumbers qn;
    CenterConfig config;

    bool is_radial() const { return kind == BranchKind::Radial3D || kind == BranchKind::Radial2D; }
    bool is_3d() const { return kind == BranchKind::Radial3D || kind == BranchKind::Angular3D; }

    int abs_m() const { return qn.m ? std::abs(*qn.m) : 0; }

    /// Z1+Z2 for radial branches, Z2-Z1 for angular ones: the charge
    /// combination multiplying the linear term of the separated equation.
    Rational charge_factor() const
    {
        return is_radial() ? config.z_sum() : -config.z_diff();
    }

    int principal() const { return is_radial() ? qn.n1 : qn.n2; }

    Rational gamma() const
    {
        if (is_3d()) return Rational(abs_m() + 1);
        return case_gamma(*case2d);
    }

    Rational delta() const
    {
        if (is_3d()) return Rational(abs_m() + 1);
        return case_delta(*case2d);
    }

    /// Degree of the polynomial sector: n^r or n^a.
    int poly_degree() const
    {
        if (is_3d()) {
            const int n = principal() - abs_m() - 1;
            if (n < 0) throw InvalidCase("|m| exceeds the principal quantum number bound");
            return n;
        }
        const Rational gd = gamma() + delta();
        const Rational half_gap = Rational(Rational(principal()) - gd) / 2;
        if (denominator(half_gap) != 1)
            throw InvalidCase("case parity does not match the principal quantum number");
        const int n = static_cast<int>(numerator(half_gap).convert_to<long long>());
        if (n < 0) throw InvalidCase("principal quantum number too small for this case");
        return n;
    }

    /// eps = c_eps * R, exact in R.
    Rational eps_coefficient() const
    {
        if (is_3d()) return Rational(-2) * charge_factor() / principal();
        return Rational(-4) * charge_factor() / (Rational(2 * poly_degree()) + gamma() + delta());
    }

    RPoly epsilon_poly() const { return RPoly{Rational(0), eps_coefficient()}; }

    RPoly alpha_poly() const { return RPoly{Rational(0), Rational(-poly_degree()) * eps_coefficient()}; }

    /// E = -ZF^2/(2 n^2) in 3D, E = -2 ZF^2/(2n^x + gamma + delta)^2 in 2D.
    Rational energy() const
    {
        const Rational zf = charge_factor();
        if (is_3d()) return -zf * zf / (2 * Rational(principal()) * Rational(principal()));
        const Rational denom = Rational(2 * poly_degree()) + gamma() + delta();
        return Rational(-2) * zf * zf / (denom * denom);
    }

    /// The spectral parameter as an exact polynomial in (lambda, R).
    Bivariate q_map() const
    {
        const Rational e = eps_coefficient();
        RPoly r_part; // q + lambda, a polynomial in R
        if (is_3d()) {
            const int m = abs_m();
            r_part = RPoly{Rational(-m * (m + 1)),
                           charge_factor() * Rational(principal() - m - 1) / principal()};
        } else {
            const Rational g = gamma(), d = delta();
            const Rational c0 = -(g + d) / 4 * (g + d - 2) - Rational(1, 4);
            const Rational c1 = e * (g - d) / 4 + Rational(-poly_degree()) * e / 2;
            const Rational c2 = e * e / 16;
            r_part = RPoly{c0, c1, c2};
        }
        return Bivariate{r_part, RPoly(Rational(-1))}; // r_part - lambda
    }

    /// Concrete CHEq parameters at a given (lambda, R).
    CheqParams cheq_params(double lambda, double r) const
    {
        const double eps = to_double(eps_coefficient()) * r;
        return CheqParams{-poly_degree() * eps, to_double(gamma()), to_double(delta()), eps,
                          eval_bivariate(q_map(), lambda, r)};
    }

    /// Critical family with coefficients exact in R.
    CriticalFamilyT<RPoly> family_symbolic() const
    {
        return build_family(RPoly(gamma()), RPoly(delta()), epsilon_poly(), poly_degree());
    }

    CriticalFamily family_at(double r) const
    {
        return build_family(to_double(gamma()), to_double(delta()),
                            to_double(eps_coefficient()) * r, poly_degree());
    }

    /// Multiplier carrying the polynomial factor u to the physical factor
    /// F(xi) or G(eta): power prefactors and the exponential e^{eps z / 4}.
    GaugeFactor prefactor(double r) const
    {
        const double rate = to_double(eps_coefficient()) * r / 4.0;
        if (is_3d()) {
            const double half_m = abs_m() / 2.0;
            return GaugeFactor{half_m, half_m, rate};
        }
        return GaugeFactor{(2.0 * to_double(gamma()) - 1.0) / 4.0,
                           (2.0 * to_double(delta()) - 1.0) / 4.0, rate};
    }

    /// P_{n+1}(q(lambda, R)) expanded as an exact bivariate polynomial.
    Bivariate compatibility_polynomial() const
    {
        const auto fam = family_symbolic();
        return fam.critical().eval_in(q_map(), [](const RPoly& c) { return bivariate_of_r(c); });
    }
};

inline BranchSpec make_branch(BranchKind kind, const QuantumNumbers& qn, const CenterConfig& config,
                              std::optional<Case2D> case2d = std::nullopt)
{
    const bool needs_case = kind == BranchKind::Radial2D || kind == BranchKind::Angular2D;
    if (needs_case != case2d.has_value())
        throw InvalidCase("2D branches require a case tag, 3D branches do not take one");
    BranchSpec b{kind, case2d, qn, config};
    (void)b.poly_degree(); // validates the quantum-number bounds
    return b;
}

inline double hydrogenoid_energy(const BranchSpec& branch) { return to_double(branch.energy()); }

/// Compatibility pair (F_r, F_a) for a radial and an angular branch of one
/// configuration. Throws unless the two hydrogenoid energies agree exactly.
inline std::pair<Bivariate, Bivariate> compatibility_polynomials(const BranchSpec& radial,
                                                                 const BranchSpec& angular)
{
    if (!radial.is_radial() || angular.is_radial())
        throw InvalidCase("expected one radial and one angular branch");
    if (radial.energy() != angular.energy())
        throw InvalidCase("branch energies are incompatible (diophantine constraint violated)");
    return {radial.compatibility_polynomial(), angular.compatibility_polynomial()};
}

// ---------------------------------------------------------------------------
// Root pairing
// ---------------------------------------------------------------------------

/// Identifies which spectral root of the branch family at (lambda, R) the
/// common separation constant selects. Returns the 1-based index into the
/// ascending root list.
inline int select_root_index(const BranchSpec& branch, double lambda, double r)
{
    const double q_target = eval_bivariate(branch.q_map(), lambda, r);
    const CriticalFamily fam = branch.family_at(r);
    const SpectralRoots roots = spectral_roots(fam);
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j <= roots.size(); ++j) {
        const double d = std::abs(roots[j] - q_target);
        if (d < best_dist) {
            second = best_dist;
            best_dist = d;
            best = static_cast<int>(j);
        } else {
            second = std::min(second, d);
        }
    }
    const double scale = 1.0 + std::abs(q_target);
    if (best == 0 || best_dist > 1e-7 * scale)
        throw NoMatchingRoot("no spectral root matches the separation constant");
    if (second < 10.0 * best_dist && second - best_dist < 1e-9 * scale)
        throw AmbiguousRoot("two spectral roots are equally close to the separation constant");
    return best;
}

// ---------------------------------------------------------------------------
// Assembled solutions
// ---------------------------------------------------------------------------

/// An elementary two-center eigenfunction: hydrogenoid energy E, separation
/// constant lambda, and the special intercenter distance R at which the
/// radial and angular polynomial sectors share that separation constant.
struct DemkovSolution {
    CenterConfig config;
    QuantumNumbers qn;
    std::optional<Case2D> case_r;
    std::optional<Case2D> case_a;
    double E = 0;
    double lambda = 0;
    double R = 0;
    double q_r = 0, q_a = 0;
    int root_index_r = 0, root_index_a = 0;
    PolynomialSolution radial;  // polynomial factor in xi, monic display below
    PolynomialSolution angular; // polynomial factor in eta
    GaugeFactor pref_r; // multiplies the radial polynomial
    GaugeFactor pref_a; // multiplies the angular polynomial

    Polynomial<double> radial_monic() const { return radial.monic_in_z(); }
    Polynomial<double> angular_monic() const { return angular.monic_in_z(); }

    /// The (xi, eta) part of the wavefunction, with monic polynomial factors.
    /// In 3D with m != 0 the full wavefunction carries an extra e^{i m phi}.
    double psi(double xi, double eta) const
    {
        if (xi < 1.0) throw Error("xi must be >= 1");
        if (std::abs(eta) > 1.0) throw Error("|eta| must be <= 1");
        return pref_r.eval(xi) * radial_monic()(xi) * pref_a.eval(eta) * angular_monic()(eta);
    }

    /// Cartesian evaluation through xi = (r1+r2)/R, eta = (r2-r1)/R, with the
    /// Z1 center at x1 = +R/2 and the Z2 center at x1 = -R/2.
    double psi_cartesian(double x1, double x2, double x3 = 0.0) const
    {
        const double dx = x2 * x2 + x3 * x3;
        const double r1 = std::sqrt((x1 - R / 2) * (x1 - R / 2) + dx);
        const double r2 = std::sqrt((x1 + R / 2) * (x1 + R / 2) + dx);
        const double xi = std::max(1.0, (r1 + r2) / R);
        const double eta = std::clamp((r2 - r1) / R, -1.0, 1.0);
        return pref_r.eval(xi) * radial_monic()(xi) * pref_a.eval(eta) * angular_monic()(eta);
    }

    /// -Z1/r1 - Z2/r2, the potential the eigenfunction belongs to.
    double potential(double x1, double x2, double x3 = 0.0) const
    {
        const double dx = x2 * x2 + x3 * x3;
        const double r1 = std::sqrt((x1 - R / 2) * (x1 - R / 2) + dx);
        const double r2 = std::sqrt((x1 + R / 2) * (x1 + R / 2) + dx);
        return -to_double(config.Z1) / r1 - to_double(config.Z2) / r2;
    }
};

/// A candidate (lambda, R) pair that was rejected on physical grounds
/// (R = 0 or R < 0); kept for diagnostics since these do occur and carry
/// information about the algebraic system.
struct RejectedPair {
    QuantumNumbers qn;
    std::optional<Case2D> case_r;
    std::optional<Case2D> case_a;
    double lambda = 0;
    double R = 0;
    std::string reason;
};

struct DemkovSearchResult {
    std::vector<DemkovSolution> solutions;
    std::vector<RejectedPair> rejected;
    std::vector<std::string> notes;
};

namespace detail {

inline DemkovSolution assemble_solution(const BranchSpec& radial, const BranchSpec& angular,
                                        double lambda, double r)
{
    DemkovSolution sol;
    sol.config = radial.config;
    sol.qn = radial.qn;
    sol.case_r = radial.case2d;
    sol.case_a = angular.case2d;
    sol.E = to_double(radial.energy());
    sol.lambda = lambda;
    sol.R = r;
    sol.root_index_r = select_root_index(radial, lambda, r);
    sol.root_index_a = select_root_index(angular, lambda, r);

    const CriticalFamily fam_r = radial.family_at(r);
    const CriticalFamily fam_a = angular.family_at(r);
    const SpectralRoots roots_r = spectral_roots(fam_r);
    const SpectralRoots roots_a = spectral_roots(fam_a);
    sol.q_r = roots_r[static_cast<std::size_t>(sol.root_index_r)];
    sol.q_a = roots_a[static_cast<std::size_t>(sol.root_index_a)];
    sol.radial = build_solution(fam_r, sol.q_r, sol.root_index_r);
    sol.angular = build_solution(fam_a, sol.q_a, sol.root_index_a);
    sol.pref_r = radial.prefactor(r);
    sol.pref_a = angular.prefactor(r);
    return sol;
}

} // namespace detail

/// Full search pipeline: enumerate quantum numbers, build every admissible
/// branch pairing, solve the joint compatibility system, keep R > 0.
inline DemkovSearchResult demkov_search(const CenterConfig& config, int n_max)
{
    DemkovSearchResult result;
    if (config.degenerate()) {
        result.notes.push_back("Z1 = Z2 degenerate: the angular hydrogenoid ansatz has no "
                               "finite quantum number; search returns empty");
        return result;
    }

    struct Candidate {
        BranchSpec radial;
        BranchSpec angular;
    };
    std::vector<Candidate> candidates;

    for (const auto& qn : diophantine_enumerate(config, n_max)) {
        if (config.dim == 3) {
            candidates.push_back({make_branch(BranchKind::Radial3D, qn, config),
                                  make_branch(BranchKind::Angular3D, qn, config)});
            continue;
        }
        // 2D: the case parities must match n1 (radial) and n2 (angular).
        std::vector<Case2D> radial_cases, angular_cases;
        for (const Case2D c : {Case2D::a, Case2D::b, Case2D::c, Case2D::d}) {
            const int span = static_cast<int>(
                numerator(Rational(case_gamma(c) + case_delta(c))).convert_to<long long>());
            if ((qn.n1 - span) % 2 == 0 && qn.n1 >= span) radial_cases.push_back(c);
            if ((qn.n2 - span) % 2 == 0 && qn.n2 >= span) angular_cases.push_back(c);
        }
        for (const Case2D cr : radial_cases)
            for (const Case2D ca : angular_cases)
                candidates.push_back({make_branch(BranchKind::Radial2D, qn, config, cr),
                                      make_branch(BranchKind::Angular2D, qn, config, ca)});
    }

    const auto process = [&](const Candidate& cand) {
        DemkovSearchResult local;
        try {
            const auto [fr, fa] = compatibility_polynomials(cand.radial, cand.angular);
            for (const JointRoot& root : joint_solve(fr, fa)) {
                if (root.r > 1e-9) {
                    local.solutions.push_back(
                        detail::assemble_solution(cand.radial, cand.angular, root.lambda, root.r));
                } else {
                    local.rejected.push_back({cand.radial.qn, cand.radial.case2d, cand.angular.case2d,
                                              root.lambda, root.r,
                                              root.r > -1e-9 ? "R = 0" : "R < 0"});
                }
            }
        } catch (const EliminationDegenerate& e) {
            local.notes.push_back(std::string("elimination degenerate: ") + e.what());
        }
        return local;
    };

    int threads = 1;
    if (const char* env = std::getenv("HEUNQES_THREADS")) threads = std::max(1, std::atoi(env));

    std::vector<DemkovSearchResult> partials(candidates.size());
    if (threads > 1) {
        std::vector<std::future<DemkovSearchResult>> futures;
        futures.reserve(candidates.size());
        for (const auto& cand : candidates)
            futures.push_back(std::async(std::launch::async, process, cand));
        for (std::size_t i = 0; i < futures.size(); ++i) partials[i] = futures[i].get();
    } else {
        for (std::size_t i = 0; i < candidates.size(); ++i) partials[i] = process(candidates[i]);
    }

    for (auto& part : partials) {
        for (auto& s : part.solutions) result.solutions.push_back(std::move(s));
        for (auto& d : part.rejected) result.rejected.push_back(std::move(d));
        for (auto& n : part.notes) result.notes.push_back(std::move(n));
    }

    std::sort(result.solutions.begin(), result.solutions.end(),
              [](const DemkovSolution& a, const DemkovSolution& b) {
                  const auto key = [](const DemkovSolution& s) {
                      return std::tuple(s.qn.n1, s.qn.n2, s.qn.m.value_or(0),
                                        s.case_r ? static_cast<int>(*s.case_r) : -1,
                                        s.case_a ? static_cast<int>(*s.case_a) : -1, s.R);
                  };
                  return key(a) < key(b);
              });
    return result;
}

} // namespace heunqes

#endif // HEUNQES_TWOCENTER_HPP
