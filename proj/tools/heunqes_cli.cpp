// Command-line front end: QES checks, critical-polynomial families and their
// polynomial eigenfunctions, two-center searches with optional density grids,
// and the hyperbolic Schroedinger potential. All numeric flags accept exact
// rational literals ("-7/16", "0.25") as well as plain decimals.

#include "heunqes/density.hpp"
#include "heunqes/ortho.hpp"
#include "heunqes/reductions.hpp"
#include "heunqes/twocenter.hpp"

#include "json_out.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace heunqes;
using heunqes::tools::Json;
using heunqes::tools::dump_json;
using heunqes::tools::format_double;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

Rational parse_flag(const std::string& text, const std::string& flag)
{
    auto r = try_parse_rational(text);
    if (!r) throw CLI::ValidationError(flag, "expected an integer, decimal or p/q rational");
    return *r;
}

Json coefficients_json(const Polynomial<double>& p)
{
    Json arr = Json::array();
    for (const double c : p.coefficients()) arr.push_back(c);
    return arr;
}

Json coefficients_exact_json(const Polynomial<Rational>& p)
{
    Json arr = Json::array();
    for (const auto& c : p.coefficients()) arr.push_back(to_string(c));
    return arr;
}

void emit(const Json& j) { std::cout << dump_json(j); }

int emit_error(const std::string& type, const std::string& message)
{
    emit(Json{{"error", Json{{"type", type}, {"message", message}}}});
    return kExitDomain;
}

// ---------------------------------------------------------------------------

int run_qes_check(const Rational& alpha, const Rational& gamma, const Rational& delta,
                  const Rational& epsilon, double tol)
{
    const CheqParams p{to_double(alpha), to_double(gamma), to_double(delta), to_double(epsilon), 0.0};
    const auto n = qes_degree(p, tol);
    Json out;
    out["command"] = "qes-check";
    out["input"] = Json{{"alpha", to_double(alpha)},
                        {"gamma", to_double(gamma)},
                        {"delta", to_double(delta)},
                        {"epsilon", to_double(epsilon)},
                        {"tol", tol}};
    out["qes"] = n.has_value();
    out["n"] = n ? Json(*n) : Json(nullptr);
    out["message"] = n ? "n = " + std::to_string(*n) : "not QES";
    emit(out);
    return n ? kExitOk : kExitDomain;
}

int run_poly(const Rational& gamma, const Rational& delta, const Rational& epsilon, int n)
{
    const auto exact_family = build_family(gamma, delta, epsilon, n);
    const auto family = build_family(to_double(gamma), to_double(delta), to_double(epsilon), n);
    const auto roots = spectral_roots(family);

    Json out;
    out["command"] = "poly";
    out["input"] = Json{{"gamma", to_double(gamma)},
                        {"delta", to_double(delta)},
                        {"epsilon", to_double(epsilon)},
                        {"n", n}};
    out["M"] = to_double(family.M());

    Json fam_json = Json::array();
    for (std::size_t k = 0; k < exact_family.p.size(); ++k) {
        Json entry;
        entry["k"] = k;
        entry["coefficients"] = coefficients_json(family.p[k]);
        entry["coefficients_exact"] = coefficients_exact_json(exact_family.p[k]);
        fam_json.push_back(std::move(entry));
    }
    out["family"] = std::move(fam_json);

    Json roots_json = Json::array();
    for (std::size_t j = 1; j <= roots.size(); ++j) {
        roots_json.push_back(Json{{"j", j},
                                  {"q", roots[j]},
                                  {"residual", family.critical()(roots[j])}});
    }
    out["roots"] = std::move(roots_json);

    const QesCertificate cert{n, to_double(gamma), to_double(delta), to_double(epsilon)};
    Json sols_json = Json::array();
    for (std::size_t j = 1; j <= roots.size(); ++j) {
        const auto sol = build_solution(family, roots[j], static_cast<int>(j));
        const auto u = sol.in_z();
        double max_res = 0.0;
        for (int i = 0; i <= 40; ++i) {
            const double z = -2.0 + 4.0 * i / 40.0;
            max_res = std::max(max_res, std::abs(cheq_residual(cert, sol.q_j, u, z)));
        }
        sols_json.push_back(Json{{"j", j},
                                 {"q", sol.q_j},
                                 {"frobenius_coefficients", coefficients_json(sol.frobenius)},
                                 {"monic_coefficients", coefficients_json(sol.monic_in_z())},
                                 {"max_equation_residual", max_res}});
    }
    out["solutions"] = std::move(sols_json);
    emit(out);
    return kExitOk;
}

std::optional<GridSpec> parse_grid(const std::string& text, int dim)
{
    GridSpec grid;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string axis = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        const auto c1 = axis.find(':');
        const auto c2 = axis.find(':', c1 == std::string::npos ? axis.size() : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) return std::nullopt;
        try {
            GridSpec::Axis a;
            a.lo = std::stod(axis.substr(0, c1));
            a.hi = std::stod(axis.substr(c1 + 1, c2 - c1 - 1));
            a.count = std::stoi(axis.substr(c2 + 1));
            grid.axes.push_back(a);
        } catch (const std::exception&) {
            return std::nullopt;
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (grid.dim() != dim) return std::nullopt;
    return grid;
}

Json solution_json(const DemkovSolution& s)
{
    Json j;
    j["n1"] = s.qn.n1;
    j["n2"] = s.qn.n2;
    j["m"] = s.qn.m ? Json(*s.qn.m) : Json(nullptr);
    j["case_radial"] = s.case_r ? Json(std::string(1, case_letter(*s.case_r))) : Json(nullptr);
    j["case_angular"] = s.case_a ? Json(std::string(1, case_letter(*s.case_a))) : Json(nullptr);
    j["E"] = s.E;
    j["lambda"] = s.lambda;
    j["R"] = s.R;
    j["q_radial"] = s.q_r;
    j["q_angular"] = s.q_a;
    j["root_index_radial"] = s.root_index_r;
    j["root_index_angular"] = s.root_index_a;
    j["radial_polynomial"] = Json{{"monic_coefficients", coefficients_json(s.radial_monic())},
                                  {"frobenius_coefficients", coefficients_json(s.radial.frobenius)}};
    j["angular_polynomial"] = Json{{"monic_coefficients", coefficients_json(s.angular_monic())},
                                   {"frobenius_coefficients", coefficients_json(s.angular.frobenius)}};
    j["prefactor_radial"] = Json{{"exp_plus", s.pref_r.exp_plus},
                                 {"exp_minus", s.pref_r.exp_minus},
                                 {"exp_rate", s.pref_r.exp_lin}};
    j["prefactor_angular"] = Json{{"exp_plus", s.pref_a.exp_plus},
                                  {"exp_minus", s.pref_a.exp_minus},
                                  {"exp_rate", s.pref_a.exp_lin}};
    return j;
}

int run_demkov(const Rational& z1, const Rational& z2, int dim, int n_max,
               const std::string& grid_text, const std::string& density_out, int density_index)
{
    const auto config = CenterConfig::make(z1, z2, dim);
    const auto result = demkov_search(config, n_max);

    Json out;
    out["command"] = "demkov";
    out["input"] = Json{{"z1", to_string(z1)},
                        {"z2", to_string(z2)},
                        {"dim", dim},
                        {"n_max", n_max}};

    Json sols = Json::array();
    for (const auto& s : result.solutions) sols.push_back(solution_json(s));
    out["solutions"] = std::move(sols);

    Json rejected = Json::array();
    for (const auto& d : result.rejected) {
        rejected.push_back(Json{
            {"n1", d.qn.n1},
            {"n2", d.qn.n2},
            {"m", d.qn.m ? Json(*d.qn.m) : Json(nullptr)},
            {"case_radial", d.case_r ? Json(std::string(1, case_letter(*d.case_r))) : Json(nullptr)},
            {"case_angular", d.case_a ? Json(std::string(1, case_letter(*d.case_a))) : Json(nullptr)},
            {"lambda", d.lambda},
            {"R", d.R},
            {"reason", d.reason}});
    }
    out["rejected"] = std::move(rejected);

    Json notes = Json::array();
    if (config.swapped) notes.push_back("charges swapped so that Z1 >= Z2 (x1 axis reflected)");
    for (const auto& note : result.notes) notes.push_back(note);
    out["notes"] = std::move(notes);

    if (!density_out.empty()) {
        if (result.solutions.empty()) return emit_error("NoSolution", "no solution to sample");
        if (density_index < 0 || density_index >= static_cast<int>(result.solutions.size()))
            return emit_error("BadIndex", "density solution index out of range");
        const auto grid = parse_grid(grid_text, dim);
        if (!grid) return emit_error("BadGrid", "grid must be lo:hi:count per axis, one per dimension");
        const auto dg = density_grid(result.solutions[static_cast<std::size_t>(density_index)], *grid);
        std::ofstream csv(density_out);
        if (!csv) return emit_error("Io", "cannot open density output file");
        csv << (dim == 3 ? "x1,x2,x3,rho\n" : "x1,x2,rho\n");
        for (std::size_t i = 0; i < dg.rho.size(); ++i) {
            csv << format_double(dg.points[i][0]) << ',' << format_double(dg.points[i][1]);
            if (dim == 3) csv << ',' << format_double(dg.points[i][2]);
            csv << ',' << format_double(dg.rho[i]) << '\n';
        }
        out["density"] = Json{{"file", density_out},
                              {"solution_index", density_index},
                              {"norm_squared", dg.norm_squared},
                              {"samples", dg.rho.size()}};
    }

    emit(out);
    return kExitOk;
}

int run_potential(const Rational& gamma, const Rational& delta, const Rational& epsilon, int n,
                  const Rational& q, double x_min, double x_max, int samples)
{
    const QesCertificate cert{n, to_double(gamma), to_double(delta), to_double(epsilon)};
    const auto sf = schroedinger_form(cert, to_double(q));
    if (x_min <= 0.0) {
        x_min = 1e-3;
        if (sf.a != 0.0 || sf.b + 0.25 != 0.0)
            std::cerr << "note: potential is singular as x -> 0+ (a = " << sf.a
                      << ", b + 1/4 = " << sf.b + 0.25 << "); starting at x = " << x_min << "\n";
    }
    std::cout << "x,V\n";
    for (int i = 0; i < samples; ++i) {
        const double x = samples == 1 ? x_min : x_min + (x_max - x_min) * i / (samples - 1);
        std::cout << format_double(x) << ',' << format_double(sf.potential(x)) << '\n';
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quasi-exactly solvable sector of the confluent Heun equation"};
    app.require_subcommand(1);

    std::string alpha_s, gamma_s = "1", delta_s = "1", epsilon_s, q_s = "0";
    double tol = 1e-12;

    auto* qes = app.add_subcommand("qes-check", "test the condition alpha = -n epsilon");
    qes->add_option("--alpha", alpha_s)->required();
    qes->add_option("--gamma", gamma_s);
    qes->add_option("--delta", delta_s);
    qes->add_option("--epsilon", epsilon_s)->required();
    qes->add_option("--tol", tol);

    int n = 0;
    auto* poly = app.add_subcommand("poly", "critical polynomials, spectral roots, eigenfunctions");
    poly->add_option("--gamma", gamma_s)->required();
    poly->add_option("--delta", delta_s)->required();
    poly->add_option("--epsilon", epsilon_s)->required();
    poly->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);

    std::string z1_s, z2_s, grid_text, density_out;
    int dim = 3, n_max = 4, density_index = 0;
    auto* demkov = app.add_subcommand("demkov", "search elementary two-center eigenfunctions");
    demkov->add_option("--z1", z1_s)->required();
    demkov->add_option("--z2", z2_s)->required();
    demkov->add_option("--dim", dim)->check(CLI::IsMember({2, 3}));
    demkov->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
    demkov->add_option("--grid", grid_text, "lo:hi:count per axis, comma separated");
    demkov->add_option("--density-out", density_out, "CSV file for the sampled density");
    demkov->add_option("--density-solution", density_index, "solution index to sample");

    double x_min = 0.0, x_max = 3.0;
    int samples = 61;
    auto* pot = app.add_subcommand("potential", "hyperbolic potential of the Schroedinger form");
    pot->add_option("--gamma", gamma_s)->required();
    pot->add_option("--delta", delta_s)->required();
    pot->add_option("--epsilon", epsilon_s)->required();
    pot->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);
    pot->add_option("--q", q_s)->required();
    pot->add_option("--x-min", x_min);
    pot->add_option("--x-max", x_max);
    pot->add_option("--samples", samples)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (qes->parsed())
            return run_qes_check(parse_flag(alpha_s, "--alpha"), parse_flag(gamma_s, "--gamma"),
                                 parse_flag(delta_s, "--delta"), parse_flag(epsilon_s, "--epsilon"),
                                 tol);
        if (poly->parsed())
            return run_poly(parse_flag(gamma_s, "--gamma"), parse_flag(delta_s, "--delta"),
                            parse_flag(epsilon_s, "--epsilon"), n);
        if (demkov->parsed())
            return run_demkov(parse_flag(z1_s, "--z1"), parse_flag(z2_s, "--z2"), dim, n_max,
                              grid_text, density_out, density_index);
        if (pot->parsed())
            return run_potential(parse_flag(gamma_s, "--gamma"), parse_flag(delta_s, "--delta"),
                                 parse_flag(epsilon_s, "--epsilon"), n, parse_flag(q_s, "--q"),
                                 x_min, x_max, samples);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const RootCountMismatch& e) {
        return emit_error("RootCountMismatch", e.what());
    } catch (const EliminationDegenerate& e) {
        return emit_error("EliminationDegenerate", e.what());
    } catch (const Error& e) {
        return emit_error("DomainError", e.what());
    } catch (const std::exception& e) {
        return emit_error("InternalError", e.what());
    }
    return kExitUsage;
}
