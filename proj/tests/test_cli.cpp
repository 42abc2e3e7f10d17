#include <catch2/catch_amalgamated.hpp>

// End-to-end tests of the command-line tool: golden values, determinism,
// exit codes, and schema conformance of the JSON outputs.

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using Json = nlohmann::json;
using Catch::Approx;

namespace {

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = {})
{
    const std::string cmd = env_prefix + std::string(HEUNQES_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

Json load_schema(const std::string& name)
{
    std::ifstream in(std::string(HEUNQES_SCHEMA_DIR) + "/" + name);
    REQUIRE(in.good());
    return Json::parse(in);
}

/// Minimal draft-07 subset validator: type / properties / required / items /
/// enum, with union types as arrays.
bool validate(const Json& schema, const Json& value, std::string& why)
{
    if (schema.contains("type")) {
        const auto matches = [&](const std::string& t) {
            if (t == "object") return value.is_object();
            if (t == "array") return value.is_array();
            if (t == "string") return value.is_string();
            if (t == "number") return value.is_number();
            if (t == "integer") return value.is_number_integer();
            if (t == "boolean") return value.is_boolean();
            if (t == "null") return value.is_null();
            return false;
        };
        bool ok = false;
        if (schema["type"].is_array()) {
            for (const auto& t : schema["type"]) ok = ok || matches(t.get<std::string>());
        } else {
            ok = matches(schema["type"].get<std::string>());
        }
        if (!ok) {
            why = "type mismatch at " + value.dump().substr(0, 60);
            return false;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& candidate : schema["enum"]) ok = ok || candidate == value;
        if (!ok) {
            why = "enum mismatch at " + value.dump().substr(0, 60);
            return false;
        }
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>())) {
                    why = "missing required key " + key.get<std::string>();
                    return false;
                }
        if (schema.contains("properties"))
            for (const auto& [key, sub] : schema["properties"].items())
                if (value.contains(key) && !validate(sub, value[key], why)) return false;
    }
    if (value.is_array() && schema.contains("items"))
        for (const auto& item : value)
            if (!validate(schema["items"], item, why)) return false;
    return true;
}

void check_schema(const std::string& schema_file, const Json& value)
{
    std::string why;
    const bool ok = validate(load_schema(schema_file), value, why);
    INFO(why);
    CHECK(ok);
}

} // namespace

TEST_CASE("qes-check golden runs", "[cli]")
{
    auto yes = run_cli("qes-check --alpha 8 --epsilon -4");
    CHECK(yes.exit_code == 0);
    auto j = Json::parse(yes.stdout_text);
    CHECK(j["qes"] == true);
    CHECK(j["n"] == 2);
    check_schema("qes_check.schema.json", j);

    auto zero = run_cli("qes-check --alpha 0 --epsilon 3");
    CHECK(zero.exit_code == 0);
    CHECK(Json::parse(zero.stdout_text)["n"] == 0);

    auto no = run_cli("qes-check --alpha 1 --epsilon 1");
    CHECK(no.exit_code == 1);
    j = Json::parse(no.stdout_text);
    CHECK(j["qes"] == false);
    CHECK(j["n"].is_null());
    check_schema("qes_check.schema.json", j);

    // rational literals are accepted
    auto frac = run_cli("qes-check --alpha 3/2 --epsilon -1/2");
    CHECK(frac.exit_code == 0);
    CHECK(Json::parse(frac.stdout_text)["n"] == 3);
}

TEST_CASE("usage errors exit with 2", "[cli]")
{
    CHECK(run_cli("qes-check --alpha 8").exit_code == 2);              // missing --epsilon
    CHECK(run_cli("qes-check --alpha abc --epsilon 1").exit_code == 2); // parse error
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("demkov --z1 5 --z2 1 --dim 7").exit_code == 2);
}

TEST_CASE("poly outputs the family, roots and eigenfunctions", "[cli]")
{
    auto res = run_cli("poly --gamma 1 --delta 1 --epsilon 0 --n 1");
    REQUIRE(res.exit_code == 0);
    auto j = Json::parse(res.stdout_text);
    check_schema("poly.schema.json", j);

    // roots {0, 2} for the eps = 0 family
    REQUIRE(j["roots"].size() == 2);
    CHECK(j["roots"][0]["q"].get<double>() == Approx(0.0).margin(1e-14));
    CHECK(j["roots"][1]["q"].get<double>() == Approx(2.0).epsilon(1e-14));
    // exact coefficients of P_2 = q^2 - 2q
    CHECK(j["family"][2]["coefficients_exact"] == Json::array({"0", "-2", "1"}));

    // n = 0 has the single root q = 0
    auto res0 = run_cli("poly --gamma 1 --delta 1 --epsilon -2 --n 0");
    auto j0 = Json::parse(res0.stdout_text);
    REQUIRE(j0["roots"].size() == 1);
    CHECK(j0["roots"][0]["q"].get<double>() == Approx(0.0).margin(1e-14));

    // decimal epsilon reproducing the worked radial family
    auto resR = run_cli("poly --gamma 1 --delta 1 --epsilon -4.2163702135578394 --n 2");
    auto jR = Json::parse(resR.stdout_text);
    REQUIRE(jR["roots"].size() == 3);
    CHECK(jR["roots"][1]["q"].get<double>()
          == Approx(2.0 / 3.0 * (5 + 2 * std::sqrt(10.0))).epsilon(1e-12));

    // root-count failures surface as structured errors with exit 1
    auto bad = run_cli("poly --gamma -1 --delta 2 --epsilon 1 --n 1");
    CHECK(bad.exit_code == 1);
    CHECK(Json::parse(bad.stdout_text)["error"]["type"] == "RootCountMismatch");
}

TEST_CASE("demkov searches through the CLI", "[cli]")
{
    auto res = run_cli("demkov --z1 5 --z2 1 --dim 3 --n-max 3");
    REQUIRE(res.exit_code == 0);
    auto j = Json::parse(res.stdout_text);
    check_schema("demkov.schema.json", j);
    REQUIRE(j["solutions"].size() == 1);
    CHECK(j["solutions"][0]["R"].get<double>() == Approx(std::sqrt(10.0) / 3.0).epsilon(1e-12));
    CHECK(j["solutions"][0]["lambda"].get<double>() == Approx(-10.0 / 3.0).epsilon(1e-12));

    auto res2d = run_cli("demkov --z1 3 --z2 1 --dim 2 --n-max 4");
    auto j2 = Json::parse(res2d.stdout_text);
    check_schema("demkov.schema.json", j2);
    bool found = false;
    for (const auto& s : j2["solutions"])
        found = found || (s["E"].get<double>() == Approx(-2.0).margin(1e-12)
                          && s["lambda"].get<double>() == Approx(-0.5).margin(1e-10)
                          && s["R"].get<double>() == Approx(0.5).margin(1e-10));
    CHECK(found);

    auto degen = run_cli("demkov --z1 2 --z2 2 --dim 3");
    CHECK(degen.exit_code == 0);
    auto jd = Json::parse(degen.stdout_text);
    CHECK(jd["solutions"].empty());
    bool has_note = false;
    for (const auto& note : jd["notes"])
        has_note = has_note || note.get<std::string>().find("degenerate") != std::string::npos;
    CHECK(has_note);
}

TEST_CASE("byte-identical reruns", "[cli]")
{
    const std::string cmd = "demkov --z1 5 --z2 3 --dim 2 --n-max 4";
    const auto first = run_cli(cmd);
    const auto second = run_cli(cmd);
    CHECK(first.exit_code == 0);
    CHECK(first.stdout_text == second.stdout_text);

    const auto p1 = run_cli("poly --gamma 3/2 --delta 1/2 --epsilon -2 --n 3");
    const auto p2 = run_cli("poly --gamma 3/2 --delta 1/2 --epsilon -2 --n 3");
    CHECK(p1.stdout_text == p2.stdout_text);

    // the parallel fan-out merges deterministically
    const auto threaded = run_cli("demkov --z1 5 --z2 3 --dim 2 --n-max 4", "HEUNQES_THREADS=4 ");
    CHECK(threaded.stdout_text == first.stdout_text);
}

TEST_CASE("density CSV export", "[cli]")
{
    const std::string csv_path = "/tmp/heunqes_cli_density_test.csv";
    std::remove(csv_path.c_str());
    auto res = run_cli("demkov --z1 3 --z2 1 --dim 2 --n-max 4 --density-solution 1 "
                       "--grid -1:1:5,-1:1:4 --density-out " + csv_path);
    REQUIRE(res.exit_code == 0);
    auto j = Json::parse(res.stdout_text);
    CHECK(j["density"]["samples"] == 20);

    std::ifstream csv(csv_path);
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "x1,x2,rho");
    int rows = 0;
    double rho_sum = 0.0;
    std::string line;
    while (std::getline(csv, line)) {
        ++rows;
        const auto last = line.rfind(',');
        rho_sum += std::stod(line.substr(last + 1));
    }
    CHECK(rows == 20);
    CHECK(rho_sum > 0.0);
    std::remove(csv_path.c_str());

    // malformed grid is a structured error
    auto bad = run_cli("demkov --z1 3 --z2 1 --dim 2 --n-max 4 --grid oops --density-out " + csv_path);
    CHECK(bad.exit_code == 1);
    CHECK(Json::parse(bad.stdout_text)["error"]["type"] == "BadGrid");
}

TEST_CASE("potential CSV", "[cli]")
{
    auto res = run_cli("potential --gamma 1 --delta 1 --epsilon -3 --n 2 --q 0.5 "
                       "--x-min 0.5 --x-max 2.5 --samples 3");
    REQUIRE(res.exit_code == 0);
    std::istringstream in(res.stdout_text);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,V");
    // validate each row against the closed-form potential; gamma = delta = 1
    // gives a = b = 0, so the angular-type term reduces to -csch^2/4
    const double A = -9.0 / 16.0, B = 0.75 * (2 * 2 + 1 + 1); // -eps/4 (2n+gamma+delta)
    const double gamma = 1, delta = 1, eps = -3, q = 0.5, nn = 2;
    const double C = eps * eps / 16 + eps / 4 * (gamma - delta)
                   - (gamma + delta) / 4 * (gamma + delta - 2) + (-nn * eps) / 2 - q;
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        const double x = std::stod(line.substr(0, comma));
        const double v = std::stod(line.substr(comma + 1));
        const double ch = std::cosh(x), sh = std::sinh(x);
        const double expected = -A * ch * ch - B * ch - 0.25 / (sh * sh) - C + 0.25;
        CHECK(v == Approx(expected).epsilon(1e-12));
        ++rows;
    }
    CHECK(rows == 3);
}
