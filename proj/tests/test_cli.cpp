#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using json = nlohmann::json;

#ifndef FRACSPECTRAL_CLI
#error "FRACSPECTRAL_CLI must point at the built binary"
#endif
#ifndef FRACSPECTRAL_SCHEMAS
#error "FRACSPECTRAL_SCHEMAS must point at the schema directory"
#endif

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(FRACSPECTRAL_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load_schema(const std::string& name) {
    return json::parse(slurp(std::string(FRACSPECTRAL_SCHEMAS) + "/" + name));
}

// Validator for the schema subset the artifact ships: type, required,
// properties, items.
bool validates(const json& value, const json& schema, std::string* why) {
    if (schema.contains("type")) {
        const std::string t = schema["type"];
        const bool ok = (t == "object" && value.is_object()) ||
                        (t == "array" && value.is_array()) ||
                        (t == "number" && value.is_number()) ||
                        (t == "integer" && value.is_number_integer()) ||
                        (t == "string" && value.is_string());
        if (!ok) {
            *why = "type mismatch: expected " + t + " got " + value.dump().substr(0, 40);
            return false;
        }
    }
    if (schema.contains("required"))
        for (const auto& key : schema["required"])
            if (!value.contains(key.get<std::string>())) {
                *why = "missing required key " + key.get<std::string>();
                return false;
            }
    if (schema.contains("properties") && value.is_object())
        for (const auto& [key, sub] : schema["properties"].items())
            if (value.contains(key) && !validates(value.at(key), sub, why)) return false;
    if (schema.contains("items") && value.is_array())
        for (const auto& item : value)
            if (!validates(item, schema["items"], why)) return false;
    return true;
}

void check_schema(const std::string& path, const std::string& schema_name) {
    std::string why;
    const bool ok = validates(json::parse(slurp(path)), load_schema(schema_name), &why);
    INFO(schema_name, ": ", why);
    CHECK(ok);
}

}  // namespace

TEST_CASE("kernel command") {
    CHECK(run("kernel --alpha 1.6 --r 0.2764 --format json -o /tmp/cli_kernel.json") == 0);
    check_schema("/tmp/cli_kernel.json", "kernel.schema.json");
    const auto doc = json::parse(slurp("/tmp/cli_kernel.json"));
    CHECK(doc["params"]["p"].get<double>() == doctest::Approx(-0.1).epsilon(2e-4));
    CHECK(doc["params"]["q"].get<double>() == doctest::Approx(-0.3).epsilon(2e-4));
    for (const auto& row : doc["table"])
        CHECK(std::abs(row["annihilation_residual"].get<double>()) < 1e-8);

    CHECK(run("kernel --alpha 1.6 --r 0.5 --format json -o /tmp/cli_kernel2.json") == 0);
    const auto doc2 = json::parse(slurp("/tmp/cli_kernel2.json"));
    CHECK(doc2["params"]["p"].get<double>() == doctest::Approx(-0.2));
    CHECK(doc2["params"]["q"].get<double>() == doctest::Approx(-0.2));

    CHECK(run("kernel --alpha 1.4 --r 1.5") == 2);
    CHECK(run("kernel --alpha 2.4 --r 0.5") == 2);
    CHECK(run("kernel") == 2);  // missing required options
}

TEST_CASE("solve command: spectral case 3 recovers the weight") {
    CHECK(run("solve --method spectral --case 3 --alpha 1.6 --r 0.5 --N 8 "
              "-o /tmp/cli_s3.json") == 0);
    check_schema("/tmp/cli_s3.json", "solve.schema.json");
    const auto doc = json::parse(slurp("/tmp/cli_s3.json"));
    const auto c = doc["coefficients"].get<std::vector<double>>();
    CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-10));
    for (size_t j = 1; j < c.size(); ++j) CHECK(std::abs(c[j]) <= 1e-10);
    CHECK(doc["errors"]["l2"].get<double>() < 1e-12);

    // conflicting --alpha for a fixed case
    CHECK(run("solve --method spectral --case 3 --alpha 1.7 --N 8") == 2);
}

TEST_CASE("solve command: fem case 1 table value") {
    CHECK(run("solve --method fem --case 1 --h 1/64 -o /tmp/cli_f1.json") == 0);
    check_schema("/tmp/cli_f1.json", "solve.schema.json");
    const auto doc = json::parse(slurp("/tmp/cli_f1.json"));
    CHECK(doc["errors"]["l2"].get<double>() == doctest::Approx(8.402e-4).epsilon(0.05));
    CHECK(doc["resolution"]["n_intervals"].get<int>() == 64);
    // homogeneous boundary samples
    CHECK(doc["samples"].front()[1].get<double>() == 0.0);
    CHECK(doc["samples"].back()[1].get<double>() == 0.0);
}

TEST_CASE("solve command: zero rhs gives zero coefficients") {
    CHECK(run("solve --method spectral --f zero --N 10 -o /tmp/cli_zero.json") == 0);
    const auto doc = json::parse(slurp("/tmp/cli_zero.json"));
    for (const auto& c : doc["coefficients"]) CHECK(c.get<double>() == 0.0);
}

TEST_CASE("study command: fem CSV layout and Pred row") {
    CHECK(run("study --method fem --case 1 --h-list 1/8,1/16,1/32 -o /tmp/cli_t1.csv") == 0);
    const std::string csv = slurp("/tmp/cli_t1.csv");
    CHECK(csv.rfind("h_or_N,err_seminorm,rate,err_l2,rate\r\n", 0) == 0);
    CHECK(csv.find("1/8,") != std::string::npos);
    CHECK(csv.find("1/32,") != std::string::npos);
    CHECK(csv.find("Pred.,,0.50,,1.00\r\n") != std::string::npos);

    CHECK(run("study --method fem --case 1 --h-list '' ") == 2);
    CHECK(run("study --method fem --case 1 --h-list 1/8,1/24") == 2);  // non-dyadic
    CHECK(run("study --method fem --case 1") == 2);                    // missing list

    CHECK(run("study --method fem --case 2 --h-list 1/8,1/16 --format json "
              "-o /tmp/cli_t2.json") == 0);
    check_schema("/tmp/cli_t2.json", "study.schema.json");
    const auto doc = json::parse(slurp("/tmp/cli_t2.json"));
    CHECK(doc["pred"]["seminorm_rate"].get<double>() == doctest::Approx(0.35).epsilon(1e-6));
}

TEST_CASE("study command: spectral columns and decay") {
    CHECK(run("study --method spectral --case 1 --N-list 4,8,16 -o /tmp/cli_sp.csv") == 0);
    const std::string csv = slurp("/tmp/cli_sp.csv");
    CHECK(csv.rfind("N,err_l2_omega_inv,err_l2\r\n", 0) == 0);
    // errors decrease down the column
    double prev = 1e300;
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) {
        if (line.size() < 3) continue;
        const auto c1 = line.find(','), c2 = line.rfind(',');
        const double el2 = std::stod(line.substr(c2 + 1));
        CHECK(el2 < prev);
        prev = el2;
        (void)c1;
    }
}

TEST_CASE("i/o failure exits with code 4") {
    CHECK(run("kernel --alpha 1.5 --r 0.5 -o /nonexistent-dir/out.csv") == 4);
}

TEST_CASE("determinism: identical configs give identical bytes") {
    CHECK(run("study --method fem --case 3 --h-list 1/8,1/16 -o /tmp/cli_d1.csv") == 0);
    CHECK(run("study --method fem --case 3 --h-list 1/8,1/16 -o /tmp/cli_d2.csv") == 0);
    CHECK(slurp("/tmp/cli_d1.csv") == slurp("/tmp/cli_d2.csv"));

    CHECK(run("solve --method spectral --case 1 --N 6 -o /tmp/cli_d3.json") == 0);
    CHECK(run("solve --method spectral --case 1 --N 6 -o /tmp/cli_d4.json") == 0);
    CHECK(slurp("/tmp/cli_d3.json") == slurp("/tmp/cli_d4.json"));
}

TEST_CASE("plot data series") {
    CHECK(run("solve --method fem --case 3 --h 1/16 --format csv -o /tmp/cli_p.csv "
              "--plot-data /tmp/cli_p_series.csv") == 0);
    const std::string series = slurp("/tmp/cli_p_series.csv");
    CHECK(series.rfind("x,u\r\n", 0) == 0);
}

TEST_CASE("worker count env var is honored") {
    setenv("FRACSPECTRAL_THREADS", "4", 1);
    CHECK(run("study --method spectral --case 3 --N-list 2,4,6,8 -o /tmp/cli_par.csv") == 0);
    setenv("FRACSPECTRAL_THREADS", "1", 1);
    CHECK(run("study --method spectral --case 3 --N-list 2,4,6,8 -o /tmp/cli_seq.csv") == 0);
    unsetenv("FRACSPECTRAL_THREADS");
    CHECK(slurp("/tmp/cli_par.csv") == slurp("/tmp/cli_seq.csv"));
}
