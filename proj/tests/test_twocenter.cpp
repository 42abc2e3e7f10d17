#include <catch2/catch_amalgamated.hpp>

#include "heunqes/density.hpp"
#include "heunqes/twocenter.hpp"
#include "support/oracles.hpp"

#include <random>

using namespace heunqes;
using Catch::Approx;

namespace {

const double kSqrt10 = std::sqrt(10.0);
const double kSqrt3 = std::sqrt(3.0);

CenterConfig cfg(int z1, int z2, int dim) { return CenterConfig::make(Rational(z1), Rational(z2), dim); }

bool contains_pair(const std::vector<QuantumNumbers>& v, int n1, int n2)
{
    return std::any_of(v.begin(), v.end(),
                       [&](const QuantumNumbers& q) { return q.n1 == n1 && q.n2 == n2; });
}

} // namespace

TEST_CASE("diophantine enumeration", "[twocenter]")
{
    CHECK(contains_pair(diophantine_enumerate(cfg(5, 1, 2), 4), 3, 2));
    CHECK(contains_pair(diophantine_enumerate(cfg(5, 3, 2), 4), 4, 1));
    const auto v31 = diophantine_enumerate(cfg(3, 1, 2), 4);
    CHECK(contains_pair(v31, 4, 2));
    CHECK(contains_pair(v31, 2, 1)); // the smaller admissible pair exists too
    CHECK(diophantine_enumerate(cfg(2, 2, 3), 6).empty());

    // 3D expansion over m respects |m| <= min(n1,n2) - 1
    const auto v513 = diophantine_enumerate(cfg(5, 1, 3), 3);
    REQUIRE(v513.size() == 2);
    CHECK(v513[0].m == 0);
    CHECK(v513[1].m == 1);

    // exact rational charges work as well
    const auto frac = diophantine_enumerate(
        CenterConfig::make(parse_rational("5/2"), parse_rational("1/2"), 2), 3);
    CHECK(contains_pair(frac, 3, 2));
}

TEST_CASE("3D branch parameter maps", "[twocenter]")
{
    const QuantumNumbers qn{3, 2, 0};
    const auto config = cfg(5, 1, 3);
    const auto radial = make_branch(BranchKind::Radial3D, qn, config);
    const auto angular = make_branch(BranchKind::Angular3D, qn, config);

    CHECK(radial.poly_degree() == 2);
    CHECK(angular.poly_degree() == 1);
    CHECK(to_double(radial.gamma()) == 1.0);
    CHECK(to_double(radial.delta()) == 1.0);

    // eps = -4R, alpha = 8R, q = 4R - lambda on the radial side
    CHECK(radial.eps_coefficient() == Rational(-4));
    CHECK(radial.alpha_poly().coeff(1) == Rational(8));
    const auto qmap_r = radial.q_map();
    CHECK(eval_bivariate(qmap_r, 0.0, 1.0) == Approx(4.0));
    CHECK(eval_bivariate(qmap_r, 1.0, 1.0) == Approx(3.0));

    // eps = +4R, alpha = -4R, q = -2R - lambda on the angular side
    CHECK(angular.eps_coefficient() == Rational(4));
    CHECK(angular.alpha_poly().coeff(1) == Rational(-4));
    CHECK(eval_bivariate(angular.q_map(), 0.0, 1.0) == Approx(-2.0));

    CHECK(hydrogenoid_energy(radial) == Approx(-2.0));
    CHECK(hydrogenoid_energy(angular) == Approx(-2.0));

    // m = 1 shifts gamma = delta = 2 and the q offset by -m(m+1)
    const QuantumNumbers qn_m1{3, 2, 1};
    const auto radial_m1 = make_branch(BranchKind::Radial3D, qn_m1, config);
    CHECK(to_double(radial_m1.gamma()) == 2.0);
    CHECK(radial_m1.poly_degree() == 1);
    CHECK(eval_bivariate(radial_m1.q_map(), 0.0, 1.0) == Approx(2.0 - 2.0));

    // |m| beyond the bound is rejected
    CHECK_THROWS_AS(make_branch(BranchKind::Angular3D, QuantumNumbers{3, 2, 2}, config), InvalidCase);
}

TEST_CASE("2D case energies and parameter maps", "[twocenter]")
{
    const auto config = cfg(5, 1, 2);
    SECTION("radial case energies by family")
    {
        // E = -2 (Z1+Z2)^2 / (2 n^r + gamma + delta)^2
        const QuantumNumbers odd{3, 2, std::nullopt};
        const auto b_a = make_branch(BranchKind::Radial2D, odd, config, Case2D::a);
        CHECK(b_a.poly_degree() == 1);
        CHECK(hydrogenoid_energy(b_a) == Approx(-8.0)); // -2*36/9
        const auto b_b = make_branch(BranchKind::Radial2D, odd, config, Case2D::b);
        CHECK(b_b.poly_degree() == 0);
        CHECK(hydrogenoid_energy(b_b) == Approx(-8.0));
        // parity mismatch is rejected
        CHECK_THROWS_AS(make_branch(BranchKind::Radial2D, odd, config, Case2D::c), InvalidCase);
    }
    SECTION("eps < 0 radial, eps > 0 angular for Z1 > Z2")
    {
        const QuantumNumbers odd{3, 2, std::nullopt};
        const auto br = make_branch(BranchKind::Radial2D, odd, config, Case2D::b);
        CHECK(br.eps_coefficient() == Rational(-8));
        const auto ba = make_branch(BranchKind::Angular2D, odd, config, Case2D::d);
        CHECK(ba.eps_coefficient() == Rational(8));
    }
}

TEST_CASE("compatibility polynomials reproduce the worked bivariate system", "[twocenter]")
{
    const QuantumNumbers qn{3, 2, 0};
    const auto config = cfg(5, 1, 3);
    const auto radial = make_branch(BranchKind::Radial3D, qn, config);
    const auto angular = make_branch(BranchKind::Angular3D, qn, config);
    const auto [fr, fa] = compatibility_polynomials(radial, angular);

    // F_r = -l^3 - 8 l^2 + l (16 R^2 - 12) + 64 R^2, exactly
    const Bivariate fr_expected{RPoly{Rational(0), Rational(0), Rational(64)},
                                RPoly{Rational(-12), Rational(0), Rational(16)},
                                RPoly(Rational(-8)), RPoly(Rational(-1))};
    CHECK(fr == fr_expected);

    // F_a = l^2 + 2 l - 4 R^2, exactly
    const Bivariate fa_expected{RPoly{Rational(0), Rational(0), Rational(-4)},
                                RPoly(Rational(2)), RPoly(Rational(1))};
    CHECK(fa == fa_expected);

    // degree-0 truncation gives a lambda-linear compatibility polynomial
    const auto angular_51 = make_branch(BranchKind::Angular3D, QuantumNumbers{4, 1, 0}, cfg(5, 3, 3));
    CHECK(degree_lambda(angular_51.compatibility_polynomial()) == 1);
}

TEST_CASE("root pairing at the physical separation constant", "[twocenter]")
{
    const QuantumNumbers qn{3, 2, 0};
    const auto config = cfg(5, 1, 3);
    const auto radial = make_branch(BranchKind::Radial3D, qn, config);
    const auto angular = make_branch(BranchKind::Angular3D, qn, config);
    const double R = kSqrt10 / 3.0, lambda = -10.0 / 3.0;

    // sorted root indices: the radial value (2/3)(5+2*sqrt(10)) is the middle
    // of three, the angular value (2/3)(5-sqrt(10)) is the upper of two
    const int jr = select_root_index(radial, lambda, R);
    const int ja = select_root_index(angular, lambda, R);
    CHECK(jr == 2);
    CHECK(ja == 2);
    const auto roots_r = spectral_roots(radial.family_at(R));
    const auto roots_a = spectral_roots(angular.family_at(R));
    CHECK(roots_r[2] == Approx(2.0 / 3.0 * (5 + 2 * kSqrt10)).epsilon(1e-12));
    CHECK(roots_a[2] == Approx(2.0 / 3.0 * (5 - kSqrt10)).epsilon(1e-12));

    CHECK_THROWS_AS(select_root_index(radial, 123.0, R), NoMatchingRoot);

    // n = 0 branches always pair with the single root
    const auto ang0 = make_branch(BranchKind::Angular3D, QuantumNumbers{4, 1, 0}, cfg(5, 3, 3));
    CHECK(select_root_index(ang0, 0.0, kSqrt10) == 1);
}

TEST_CASE("demkov search in three dimensions", "[twocenter][search]")
{
    SECTION("Z1=5, Z2=1")
    {
        const auto res = demkov_search(cfg(5, 1, 3), 3);
        REQUIRE(res.solutions.size() == 1);
        const auto& s = res.solutions[0];
        CHECK(s.E == Approx(-2.0).margin(1e-12));
        CHECK(s.lambda == Approx(-10.0 / 3.0).margin(1e-10));
        CHECK(s.R == Approx(kSqrt10 / 3.0).margin(1e-10));
        CHECK(s.qn.n1 == 3);
        CHECK(s.qn.n2 == 2);
        CHECK(s.qn.m == 0);
        // the m=1 candidate dies at R = 0 and is reported in diagnostics
        const bool m1_rejected = std::any_of(res.rejected.begin(), res.rejected.end(),
                                             [](const RejectedPair& d) {
                                                 return d.qn.m == 1 && std::abs(d.R) < 1e-9;
                                             });
        CHECK(m1_rejected);

        // displayed wavefunction: (xi^2 - 2 sqrt(2/5) xi - 7/5)(eta - sqrt(2/5)) e^{-sqrt(10)/3 (xi-eta)}
        const double sq = std::sqrt(0.4);
        for (const double xi : {1.0, 1.4, 2.2}) {
            for (const double eta : {-0.8, 0.0, 0.9}) {
                const double expected = (xi * xi - 2 * sq * xi - 1.4) * (eta - sq)
                                      * std::exp(-kSqrt10 / 3.0 * (xi - eta));
                CHECK(s.psi(xi, eta) == Approx(expected).margin(1e-10));
            }
        }
    }
    SECTION("Z1=5, Z2=3")
    {
        const auto res = demkov_search(cfg(5, 3, 3), 4);
        REQUIRE(res.solutions.size() == 1);
        const auto& s = res.solutions[0];
        CHECK(s.E == Approx(-2.0).margin(1e-12));
        CHECK(s.lambda == Approx(0.0).margin(1e-10));
        CHECK(s.R == Approx(kSqrt10).margin(1e-10));
        // radial cubic xi^3 - 3 sqrt(2/5) xi^2 - 3/5 xi + 13/5 sqrt(2/5)
        const auto u = s.radial_monic();
        const double sq = std::sqrt(0.4);
        CHECK(u.coeff(2) == Approx(-3 * sq).margin(1e-10));
        CHECK(u.coeff(1) == Approx(-0.6).margin(1e-10));
        CHECK(u.coeff(0) == Approx(2.6 * sq).margin(1e-10));
        CHECK(s.angular_monic().degree() == 0);
    }
    SECTION("Z1=3, Z2=1")
    {
        const auto res = demkov_search(cfg(3, 1, 3), 4);
        REQUIRE(res.solutions.size() == 1);
        const auto& s = res.solutions[0];
        CHECK(s.E == Approx(-0.5).margin(1e-12));
        CHECK(s.lambda == Approx(-3.0).margin(1e-10));
        CHECK(s.R == Approx(kSqrt3).margin(1e-10));
        CHECK(s.qn.n1 == 4);
        CHECK(s.qn.n2 == 2);
        // radial cubic xi^3 - 3 sqrt(3) xi^2 + 3 xi + 3 sqrt(3)
        const auto u = s.radial_monic();
        CHECK(u.coeff(2) == Approx(-3 * kSqrt3).margin(1e-9));
        CHECK(u.coeff(1) == Approx(3.0).margin(1e-9));
        CHECK(u.coeff(0) == Approx(3 * kSqrt3).margin(1e-9));
        // angular factor eta - 1/sqrt(3)
        CHECK(s.angular_monic().coeff(0) == Approx(-1.0 / kSqrt3).margin(1e-10));
    }
    SECTION("degenerate charges")
    {
        const auto res = demkov_search(cfg(2, 2, 3), 5);
        CHECK(res.solutions.empty());
        REQUIRE_FALSE(res.notes.empty());
    }
}

TEST_CASE("demkov search in two dimensions", "[twocenter][search]")
{
    SECTION("Z1=5, Z2=1: one solution from cases (b radial, d angular)")
    {
        const auto res = demkov_search(cfg(5, 1, 2), 3);
        REQUIRE(res.solutions.size() == 1);
        const auto& s = res.solutions[0];
        CHECK(s.E == Approx(-8.0).margin(1e-12));
        CHECK(s.lambda == Approx(-7.0 / 16.0).margin(1e-10));
        CHECK(s.R == Approx(3.0 / 8.0).margin(1e-10));
        REQUIRE(s.case_r.has_value());
        REQUIRE(s.case_a.has_value());
        CHECK(*s.case_r == Case2D::b);
        CHECK(*s.case_a == Case2D::d);
        // psi = sqrt(xi^2-1) sqrt(1-eta) e^{-3(xi-eta)/4}
        for (const double xi : {1.2, 1.9}) {
            for (const double eta : {-0.5, 0.4}) {
                const double expected = std::sqrt(xi * xi - 1) * std::sqrt(1 - eta)
                                      * std::exp(-0.75 * (xi - eta));
                CHECK(s.psi(xi, eta) == Approx(expected).margin(1e-10));
            }
        }
    }
    SECTION("Z1=5, Z2=3: two solutions")
    {
        const auto res = demkov_search(cfg(5, 3, 2), 4);
        REQUIRE(res.solutions.size() == 2);
        // sorted by case tags: (c, a) then (d, a)
        const auto& s1 = res.solutions[0];
        CHECK(*s1.case_r == Case2D::c);
        CHECK(*s1.case_a == Case2D::a);
        CHECK(s1.E == Approx(-8.0).margin(1e-12));
        CHECK(s1.lambda == Approx(3.0 / 16.0 * (7 + 4 * kSqrt3)).margin(1e-10));
        CHECK(s1.R == Approx((3 + 2 * kSqrt3) / 8.0).margin(1e-10));
        CHECK(s1.radial_monic().coeff(0) == Approx(4 - 3 * kSqrt3).margin(1e-9));

        const auto& s2 = res.solutions[1];
        CHECK(*s2.case_r == Case2D::d);
        CHECK(*s2.case_a == Case2D::a);
        CHECK(s2.E == Approx(-8.0).margin(1e-12));
        CHECK(s2.lambda == Approx(3.0 / 16.0 * (7 - 4 * kSqrt3)).margin(1e-10));
        CHECK(s2.R == Approx((-3 + 2 * kSqrt3) / 8.0).margin(1e-10));
        CHECK(s2.radial_monic().coeff(0) == Approx(-4 - 3 * kSqrt3).margin(1e-9));
    }
    SECTION("Z1=3, Z2=1: the documented solution plus the smaller-pair one")
    {
        // The (4,2) pair yields the displayed solution (E, lambda, R) =
        // (-2, -1/2, 1/2). The admissible smaller pair (2,1), cases (d, a),
        // carries a second valid elementary state psi = sqrt(xi-1) e^{-(xi-eta)/4}
        // at (E, lambda, R) = (-8, 1/16, 1/8); it satisfies both separated
        // equations and the full PDE, and is reported alongside.
        const auto res = demkov_search(cfg(3, 1, 2), 4);
        REQUIRE(res.solutions.size() == 2);

        const auto& extra = res.solutions[0]; // (2,1) sorts first
        CHECK(extra.qn.n1 == 2);
        CHECK(extra.qn.n2 == 1);
        CHECK(*extra.case_r == Case2D::d);
        CHECK(*extra.case_a == Case2D::a);
        CHECK(extra.E == Approx(-8.0).margin(1e-12));
        CHECK(extra.lambda == Approx(1.0 / 16.0).margin(1e-10));
        CHECK(extra.R == Approx(1.0 / 8.0).margin(1e-10));

        const auto& s = res.solutions[1];
        CHECK(s.qn.n1 == 4);
        CHECK(s.qn.n2 == 2);
        CHECK(*s.case_r == Case2D::c);
        CHECK(*s.case_a == Case2D::d);
        CHECK(s.E == Approx(-2.0).margin(1e-12));
        CHECK(s.lambda == Approx(-0.5).margin(1e-10));
        CHECK(s.R == Approx(0.5).margin(1e-10));
        // psi = sqrt(xi+1) sqrt(1-eta) (xi-2) e^{-(xi-eta)/2}
        for (const double xi : {1.0, 1.6}) {
            for (const double eta : {-0.7, 0.3}) {
                const double expected = std::sqrt(xi + 1) * std::sqrt(1 - eta) * (xi - 2)
                                      * std::exp(-0.5 * (xi - eta));
                CHECK(s.psi(xi, eta) == Approx(expected).margin(1e-10));
            }
        }
    }
}

TEST_CASE("separation consistency of returned solutions", "[twocenter][property]")
{
    for (const auto& [z1, z2, dim, nmax] :
         {std::tuple{5, 1, 3, 3}, {5, 3, 3, 4}, {3, 1, 3, 4}, {5, 1, 2, 3}, {5, 3, 2, 4}, {3, 1, 2, 4}}) {
        const auto config = cfg(z1, z2, dim);
        for (const auto& s : demkov_search(config, nmax).solutions) {
            QuantumNumbers qn = s.qn;
            BranchSpec radial = s.case_r
                ? make_branch(BranchKind::Radial2D, qn, config, s.case_r)
                : make_branch(BranchKind::Radial3D, qn, config);
            BranchSpec angular = s.case_a
                ? make_branch(BranchKind::Angular2D, qn, config, s.case_a)
                : make_branch(BranchKind::Angular3D, qn, config);
            for (const auto& branch : {radial, angular}) {
                const auto fam = branch.family_at(s.R);
                const double q = eval_bivariate(branch.q_map(), s.lambda, s.R);
                double scale = 1.0, power = 1.0;
                for (const double c : fam.critical().coefficients()) {
                    scale += std::abs(c) * power;
                    power *= std::abs(q);
                }
                CHECK(std::abs(fam.critical()(q)) < 1e-10 * scale);
            }
            // radial and angular hydrogenoid energies agree exactly
            CHECK(radial.energy() == angular.energy());
        }
    }
}

TEST_CASE("finite-difference PDE residual converges at second order", "[twocenter][pde]")
{
    std::mt19937 rng(101);
    for (const auto& [z1, z2, dim, nmax] :
         {std::tuple{5, 1, 3, 3}, {5, 3, 3, 4}, {3, 1, 3, 4}, {5, 1, 2, 3}, {5, 3, 2, 4}, {3, 1, 2, 4}}) {
        const auto res = demkov_search(cfg(z1, z2, dim), nmax);
        for (const auto& s : res.solutions) {
            // sample cloud away from the nuclei (and off the x1 axis in 2D,
            // where the elliptic-coordinate factors are not smooth)
            std::vector<std::array<double, 3>> pts;
            std::uniform_real_distribution<double> box(-2.0, 2.0);
            while (pts.size() < 60) {
                std::array<double, 3> p{box(rng), box(rng), dim == 3 ? box(rng) : 0.0};
                const double margin = 0.35;
                const double d1 = std::hypot(p[0] - s.R / 2, p[1], p[2]);
                const double d2 = std::hypot(p[0] + s.R / 2, p[1], p[2]);
                const double off_axis = dim == 3 ? 1.0 : std::abs(p[1]);
                if (d1 < margin || d2 < margin || off_axis < 0.15) continue;
                if (std::abs(s.psi_cartesian(p[0], p[1], p[2])) < 1e-6) continue;
                pts.push_back(p);
            }
            double prev = 0.0;
            int step = 0;
            for (const double h : {1e-2, 5e-3, 2.5e-3}) {
                std::vector<double> residual, values;
                for (const auto& p : pts) {
                    const double psi0 = s.psi_cartesian(p[0], p[1], p[2]);
                    double lap = 0.0;
                    for (int axis = 0; axis < dim; ++axis) {
                        auto q = p;
                        q[axis] += h;
                        const double plus = s.psi_cartesian(q[0], q[1], q[2]);
                        q[axis] -= 2 * h;
                        const double minus = s.psi_cartesian(q[0], q[1], q[2]);
                        lap += (plus - 2 * psi0 + minus) / (h * h);
                    }
                    const double h_psi = -0.5 * lap + s.potential(p[0], p[1], p[2]) * psi0;
                    residual.push_back(h_psi - s.E * psi0);
                    values.push_back(psi0);
                }
                const double rel = testsupport::rms(residual) / testsupport::rms(values);
                if (step > 0) CHECK(rel < prev / 3.0);
                prev = rel;
                ++step;
            }
            CHECK(prev < 1e-4);
        }
    }
}

TEST_CASE("density grids normalize and stay positive", "[twocenter][density]")
{
    SECTION("3D: Z1=5, Z2=1")
    {
        const auto res = demkov_search(cfg(5, 1, 3), 3);
        REQUIRE(res.solutions.size() == 1);
        const auto& s = res.solutions[0];

        GridSpec grid;
        grid.axes = {{-2.2, 2.2, 41}, {-1.8, 1.8, 31}, {-1.8, 1.8, 31}};
        const auto dg = density_grid(s, grid);
        CHECK(dg.norm_squared > 0.0);
        double max_rho = 0.0;
        for (const double r : dg.rho) {
            CHECK(r >= 0.0);
            max_rho = std::max(max_rho, r);
        }
        // the level set rho = 0.012 is nonempty
        CHECK(max_rho > 0.012);

        // independent check of the normalization: midpoint Riemann sum of
        // rho over a box capturing nearly all mass
        const double lim = 5.0;
        const int n = 64;
        const double hstep = 2 * lim / n;
        double sum = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const double x = -lim + (i + 0.5) * hstep;
                    const double y = -lim + (j + 0.5) * hstep;
                    const double z = -lim + (k + 0.5) * hstep;
                    const double psi = s.psi_cartesian(x, y, z);
                    sum += psi * psi;
                }
        sum *= hstep * hstep * hstep / dg.norm_squared;
        CHECK(sum == Approx(1.0).epsilon(2e-3));
    }
    SECTION("2D: Z1=3, Z2=1")
    {
        const auto res = demkov_search(cfg(3, 1, 2), 4);
        REQUIRE(res.solutions.size() == 2);
        const auto& s = res.solutions[1]; // the (4,2) solution
        GridSpec grid;
        grid.axes = {{-2.0, 2.5, 41}, {-2.0, 2.0, 41}};
        const auto dg = density_grid(s, grid);
        CHECK(dg.norm_squared > 0.0);

        const double lim = 9.0;
        const int n = 600;
        const double hstep = 2 * lim / n;
        double sum = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double x = -lim + (i + 0.5) * hstep;
                const double y = -lim + (j + 0.5) * hstep;
                const double psi = s.psi_cartesian(x, y);
                sum += psi * psi;
            }
        sum *= hstep * hstep / dg.norm_squared;
        CHECK(sum == Approx(1.0).epsilon(2e-3));
    }
    SECTION("grid validation")
    {
        const auto res = demkov_search(cfg(5, 1, 3), 3);
        GridSpec bad;
        bad.axes = {{0, 1, 4}, {0, 1, 4}};
        CHECK_THROWS_AS(density_grid(res.solutions[0], bad), Error);
    }
}

TEST_CASE("cardano closed forms for the radial cubic", "[twocenter]")
{
    // lambda roots of the radial compatibility cubic at fixed R match the
    // trigonometric closed forms.
    const auto radial = make_branch(BranchKind::Radial3D, QuantumNumbers{3, 2, 0}, cfg(5, 1, 3));
    const auto fr = radial.compatibility_polynomial();
    for (const double R : {0.5, 1.0, kSqrt10 / 3.0, 2.0}) {
        const auto cubic = at_fixed_r(fr, R);
        auto mine = real_roots(cubic);
        REQUIRE(mine.size() == 3);
        const double s = std::sqrt(12 * R * R + 7);
        const double theta = std::acos(2 * (18 * R * R - 5) / std::pow(12 * R * R + 7, 1.5));
        std::vector<double> reference = {
            4.0 / 3.0 * (s * std::cos(theta / 3) - 2),
            2.0 / 3.0 * (s * (-std::sqrt(3.0) * std::sin(theta / 3) - std::cos(theta / 3)) - 4),
            2.0 / 3.0 * (s * (std::sqrt(3.0) * std::sin(theta / 3) - std::cos(theta / 3)) - 4)};
        std::sort(reference.begin(), reference.end());
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(mine[i] == Approx(reference[i]).margin(1e-10));
    }
}
