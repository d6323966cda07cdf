// Command-line front end: kernel queries, spectral/FEM solves, and
// convergence studies with CSV/JSON output.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fracspectral/fem.hpp"
#include "fracspectral/kernelspace.hpp"
#include "fracspectral/spectral.hpp"

using json = nlohmann::ordered_json;
using namespace fracspectral;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitAccuracy = 3;
constexpr int kExitIo = 4;

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.5e", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot open output file: " + path);
    out << text;
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

// "1/64" or "0.015625" -> number of intervals
int parse_h(const std::string& s) {
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const long num = std::stol(s.substr(0, slash));
        const long den = std::stol(s.substr(slash + 1));
        if (num != 1 || den < 2) throw DomainError("h must have the form 1/n");
        return static_cast<int>(den);
    }
    const double h = std::stod(s);
    if (!(h > 0.0 && h < 1.0)) throw DomainError("h must lie in (0, 1)");
    const int n = static_cast<int>(std::lround(1.0 / h));
    if (std::abs(n * h - 1.0) > 1e-9) throw DomainError("h must divide 1");
    return n;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= s.size()) {
        const size_t end = s.find(sep, start);
        if (end == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

unsigned worker_count() {
    if (const char* env = std::getenv("FRACSPECTRAL_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

// --- kernel ---------------------------------------------------------------

struct KernelConfig {
    double alpha = 1.5;
    double r = 0.5;
    int samples = 9;
    std::string output;
    std::string format = "csv";
};

int cmd_kernel(const KernelConfig& cfg) {
    const auto desc = kernelspace::describe(cfg.alpha, cfg.r);
    std::printf("alpha = %.6g, r = %.6g: beta = %.12g, p = %.12g, q = %.12g, K(1) = %.12g\n",
                desc.alpha, desc.r, desc.beta, desc.p, desc.q, desc.K_at_one);

    std::vector<double> xs(cfg.samples);
    for (int i = 0; i < cfg.samples; ++i) xs[i] = (i + 1.0) / (cfg.samples + 1.0);

    if (cfg.format == "json") {
        json doc;
        doc["params"] = {{"alpha", desc.alpha}, {"r", desc.r},   {"beta", desc.beta},
                         {"p", desc.p},         {"q", desc.q},   {"K_at_one", desc.K_at_one}};
        json table = json::array();
        for (double x : xs) {
            table.push_back({{"x", x},
                             {"k", kernelspace::kernel_k(cfg.alpha, cfg.r, x)},
                             {"K", kernelspace::kernel_K(cfg.alpha, cfg.r, x)},
                             {"annihilation_residual",
                              kernelspace::kernel_annihilation_residual(cfg.alpha, cfg.r, x)}});
        }
        doc["table"] = std::move(table);
        write_text(cfg.output, doc.dump(2) + "\n");
    } else {
        std::string csv = "x,k,K,annihilation_residual\r\n";
        for (double x : xs) {
            csv += sci(x) + "," + sci(kernelspace::kernel_k(cfg.alpha, cfg.r, x)) + "," +
                   sci(kernelspace::kernel_K(cfg.alpha, cfg.r, x)) + "," +
                   sci(kernelspace::kernel_annihilation_residual(cfg.alpha, cfg.r, x)) + "\r\n";
        }
        write_text(cfg.output, csv);
    }
    return kExitOk;
}

// --- solve ----------------------------------------------------------------

struct SolveConfig {
    std::string method = "spectral";
    int case_id = 0;  // 0: none, use --f
    std::string fspec;
    std::optional<double> alpha, r;
    int N = 8;
    std::string h;
    int samples = 101;
    std::string output;
    std::string format = "json";
    std::string plot_data;
    bool with_seminorm = false;
};

spectral::RhsFunction parse_fspec(const std::string& spec) {
    if (spec == "zero") return spectral::RhsFunction::constant(0.0);
    if (spec.rfind("const:", 0) == 0)
        return spectral::RhsFunction::constant(std::stod(spec.substr(6)));
    throw DomainError("unsupported --f spec (use zero or const:<value>)");
}

void check_case_params(const fem::ManufacturedCase& mc, const SolveConfig& cfg) {
    if (cfg.alpha && std::abs(*cfg.alpha - mc.alpha) > 1e-9)
        throw DomainError("--alpha conflicts with the selected case");
    if (cfg.r && std::abs(*cfg.r - mc.r) > 1e-4)
        throw DomainError("--r conflicts with the selected case");
}

void emit_samples_csv(const std::string& path, const std::vector<std::pair<double, double>>& xy) {
    std::string csv = "x,u\r\n";
    for (const auto& [x, y] : xy) csv += sci(x) + "," + sci(y) + "\r\n";
    write_text(path, csv);
}

int cmd_solve(const SolveConfig& cfg) {
    if (cfg.samples < 2) throw DomainError("--samples must be at least 2");
    json doc;
    std::vector<std::pair<double, double>> xy(cfg.samples);

    if (cfg.method == "spectral") {
        double alpha, r;
        std::optional<fem::ManufacturedCase> mc;
        spectral::RhsFunction rhs = spectral::RhsFunction::constant(0.0);
        if (cfg.case_id > 0) {
            mc = fem::manufactured_case(cfg.case_id);
            check_case_params(*mc, cfg);
            alpha = mc->alpha;
            r = mc->r;
            rhs = spectral::RhsFunction::power_sum(mc->f_terms);
        } else {
            alpha = cfg.alpha.value_or(1.5);
            r = cfg.r.value_or(0.5);
            rhs = parse_fspec(cfg.fspec.empty() ? "zero" : cfg.fspec);
        }
        const spectral::SpectralProblem problem{fracops::FractionalParams(alpha, r)};
        const auto sol = spectral::solve(problem, rhs, cfg.N);

        for (int i = 0; i < cfg.samples; ++i) {
            const double x = static_cast<double>(i) / (cfg.samples - 1);
            xy[i] = {x, spectral::eval_solution(sol, x)};
        }
        doc["params"] = {{"alpha", alpha}, {"r", r}, {"beta", problem.params.beta}};
        if (cfg.case_id > 0) doc["params"]["case"] = cfg.case_id;
        doc["method"] = "spectral";
        doc["resolution"] = {{"N", cfg.N}};
        doc["coefficients"] = std::vector<double>(sol.coeffs.data(),
                                                  sol.coeffs.data() + sol.coeffs.size());
        if (mc) {
            const spectral::ExactSolution exact{mc->u_exact, std::nullopt};
            doc["errors"] = {
                {"l2", spectral::weighted_error(problem, sol, exact, spectral::ErrorNorm::l2)},
                {"l2_omega",
                 spectral::weighted_error(problem, sol, exact, spectral::ErrorNorm::l2_omega)},
                {"l2_omega_inv", spectral::weighted_error(problem, sol, exact,
                                                          spectral::ErrorNorm::l2_omega_inv)}};
        }
    } else if (cfg.method == "fem") {
        if (cfg.case_id <= 0) throw DomainError("fem solve requires --case");
        const auto mc = fem::manufactured_case(cfg.case_id);
        check_case_params(mc, cfg);
        if (cfg.h.empty()) throw DomainError("fem solve requires --h");
        const int n = parse_h(cfg.h);
        const auto sys = fem::solve_fem(mc, fem::Mesh(n));
        for (int i = 0; i < cfg.samples; ++i) {
            const double x = static_cast<double>(i) / (cfg.samples - 1);
            xy[i] = {x, sys.eval(x)};
        }
        doc["params"] = {{"alpha", mc.alpha}, {"r", mc.r}, {"case", cfg.case_id}};
        doc["method"] = "fem";
        doc["resolution"] = {{"n_intervals", n}, {"h", 1.0 / n}};
        doc["errors"] = {{"l2", fem::l2_error(mc, sys)}};
        if (cfg.with_seminorm) doc["errors"]["seminorm"] = fem::slobodetskii_error(mc, sys);
    } else {
        throw DomainError("unknown --method (spectral|fem)");
    }

    json samples = json::array();
    for (const auto& [x, y] : xy) samples.push_back({x, y});
    doc["samples"] = std::move(samples);

    if (cfg.format == "json") {
        write_text(cfg.output, doc.dump(2) + "\n");
    } else {
        emit_samples_csv(cfg.output, xy);
    }
    if (!cfg.plot_data.empty()) emit_samples_csv(cfg.plot_data, xy);
    if (doc.contains("errors")) {
        for (const auto& [key, val] : doc["errors"].items())
            std::printf("%s = %s\n", key.c_str(), sci(val.get<double>()).c_str());
    }
    return kExitOk;
}

// --- study ----------------------------------------------------------------

struct StudyConfig {
    std::string method = "fem";
    int case_id = 1;
    std::string h_list;
    std::string N_list;
    bool with_seminorm = false;
    std::string output;
    std::string format = "csv";
    std::string plot_data;
};

int cmd_study(const StudyConfig& cfg) {
    const auto mc = fem::manufactured_case(cfg.case_id);

    if (cfg.method == "fem") {
        if (cfg.h_list.empty()) throw DomainError("fem study requires --h-list");
        std::vector<int> ns;
        for (const auto& tok : split(cfg.h_list, ',')) {
            if (tok.empty()) throw DomainError("empty entry in --h-list");
            ns.push_back(parse_h(tok));
        }
        const auto table = fem::convergence_study(mc, ns, cfg.with_seminorm);

        if (cfg.format == "json") {
            json doc;
            doc["params"] = {{"alpha", mc.alpha}, {"r", mc.r}, {"case", cfg.case_id}};
            doc["method"] = "fem";
            json rows = json::array();
            for (const auto& row : table.rows) {
                json jr = {{"n_intervals", row.n}, {"h", row.h}, {"err_l2", row.l2}};
                if (!std::isnan(row.l2_rate)) jr["l2_rate"] = row.l2_rate;
                if (!std::isnan(row.seminorm)) jr["err_seminorm"] = row.seminorm;
                if (!std::isnan(row.seminorm_rate)) jr["seminorm_rate"] = row.seminorm_rate;
                rows.push_back(jr);
            }
            doc["rows"] = std::move(rows);
            doc["pred"] = {{"seminorm_rate", table.pred_seminorm}, {"l2_rate", table.pred_l2}};
            write_text(cfg.output, doc.dump(2) + "\n");
        } else {
            std::string csv = "h_or_N,err_seminorm,rate,err_l2,rate\r\n";
            for (const auto& row : table.rows) {
                csv += "1/" + std::to_string(row.n) + ",";
                csv += (std::isnan(row.seminorm) ? "" : sci(row.seminorm)) + ",";
                char rb[16] = "";
                if (!std::isnan(row.seminorm_rate))
                    std::snprintf(rb, sizeof(rb), "%.2f", row.seminorm_rate);
                csv += std::string(rb) + "," + sci(row.l2) + ",";
                char lb[16] = "";
                if (!std::isnan(row.l2_rate)) std::snprintf(lb, sizeof(lb), "%.2f", row.l2_rate);
                csv += std::string(lb) + "\r\n";
            }
            char pred[64];
            std::snprintf(pred, sizeof(pred), "Pred.,,%.2f,,%.2f\r\n", table.pred_seminorm,
                          table.pred_l2);
            csv += pred;
            write_text(cfg.output, csv);
        }
        if (!cfg.plot_data.empty()) {
            std::string series = "h,err_l2\r\n";
            for (const auto& row : table.rows)
                series += sci(row.h) + "," + sci(row.l2) + "\r\n";
            write_text(cfg.plot_data, series);
        }
        return kExitOk;
    }

    if (cfg.method != "spectral") throw DomainError("unknown --method (spectral|fem)");
    if (cfg.N_list.empty()) throw DomainError("spectral study requires --N-list");
    std::vector<int> Ns;
    for (const auto& tok : split(cfg.N_list, ',')) {
        if (tok.empty()) throw DomainError("empty entry in --N-list");
        const auto dots = tok.find("..");
        if (dots != std::string::npos) {
            const int lo = std::stoi(tok.substr(0, dots));
            const int hi = std::stoi(tok.substr(dots + 2));
            if (lo < 0 || hi < lo) throw DomainError("bad N range");
            for (int N = lo; N <= hi; N += 2) Ns.push_back(N);
        } else {
            Ns.push_back(std::stoi(tok));
        }
    }
    if (Ns.empty()) throw DomainError("empty --N-list");

    const spectral::SpectralProblem problem{fracops::FractionalParams(mc.alpha, mc.r)};
    const auto rhs = spectral::RhsFunction::power_sum(mc.f_terms);
    const spectral::ExactSolution exact{mc.u_exact, std::nullopt};

    struct Row {
        int N;
        double e_wi, e_l2;
    };
    std::vector<Row> rows(Ns.size());
    const unsigned workers = std::min<unsigned>(worker_count(), Ns.size());
    std::atomic<size_t> next{0};
    const auto run = [&]() {
        while (true) {
            const size_t k = next.fetch_add(1);
            if (k >= Ns.size()) return;
            const auto sol = spectral::solve(problem, rhs, Ns[k]);
            rows[k] = {Ns[k],
                       spectral::weighted_error(problem, sol, exact,
                                                spectral::ErrorNorm::l2_omega_inv),
                       spectral::weighted_error(problem, sol, exact, spectral::ErrorNorm::l2)};
        }
    };
    std::vector<std::future<void>> pool;
    for (unsigned w = 1; w < workers; ++w) pool.push_back(std::async(std::launch::async, run));
    run();
    for (auto& f : pool) f.get();

    if (cfg.format == "json") {
        json doc;
        doc["params"] = {{"alpha", mc.alpha}, {"r", mc.r}, {"case", cfg.case_id}};
        doc["method"] = "spectral";
        json jrows = json::array();
        for (const auto& row : rows)
            jrows.push_back(
                {{"N", row.N}, {"err_l2_omega_inv", row.e_wi}, {"err_l2", row.e_l2}});
        doc["rows"] = std::move(jrows);
        write_text(cfg.output, doc.dump(2) + "\n");
    } else {
        std::string csv = "N,err_l2_omega_inv,err_l2\r\n";
        for (const auto& row : rows)
            csv += std::to_string(row.N) + "," + sci(row.e_wi) + "," + sci(row.e_l2) + "\r\n";
        write_text(cfg.output, csv);
    }
    if (!cfg.plot_data.empty()) {
        std::string series = "N,err_l2\r\n";
        for (const auto& row : rows)
            series += std::to_string(row.N) + "," + sci(row.e_l2) + "\r\n";
        write_text(cfg.plot_data, series);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver for the steady-state two-sided fractional diffusion equation on (0,1)"};
    app.require_subcommand(1);

    KernelConfig kc;
    auto* kernel = app.add_subcommand("kernel", "kernel exponents, K(x), annihilation residuals");
    kernel->add_option("--alpha", kc.alpha, "fractional order in (1,2)")->required();
    kernel->add_option("--r", kc.r, "left/right weight in (0,1)")->required();
    kernel->add_option("--samples", kc.samples, "number of interior sample points");
    kernel->add_option("--output,-o", kc.output, "output path (default stdout)");
    kernel->add_option("--format", kc.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    SolveConfig sc;
    auto* solve = app.add_subcommand("solve", "solve L_r^alpha u = f");
    solve->set_help_flag("--help", "print help");  // frees -h for the mesh width
    solve->add_option("--method", sc.method, "spectral|fem")->required();
    solve->add_option("--case", sc.case_id, "manufactured case 1..4");
    solve->add_option("--f", sc.fspec, "rhs spec for spectral solves: zero|const:<v>");
    solve->add_option("--alpha", sc.alpha, "fractional order");
    solve->add_option("--r", sc.r, "weight r");
    solve->add_option("--N", sc.N, "spectral degree");
    solve->add_option("--h", sc.h, "fem mesh width, e.g. 1/64");
    solve->add_option("--samples", sc.samples, "sample count for the solution trace");
    solve->add_flag("--seminorm", sc.with_seminorm, "include the Slobodetskii error (fem)");
    solve->add_option("--output,-o", sc.output, "output path (default stdout)");
    solve->add_option("--format", sc.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    solve->add_option("--plot-data", sc.plot_data, "write (x,u) series to this path");

    StudyConfig tc;
    auto* study = app.add_subcommand("study", "convergence study over resolutions");
    study->add_option("--method", tc.method, "spectral|fem")->required();
    study->add_option("--case", tc.case_id, "manufactured case 1..4")->required();
    study->add_option("--h-list", tc.h_list, "comma-separated fem widths, e.g. 1/64,1/128");
    study->add_option("--N-list", tc.N_list, "spectral degrees: 4,8,12 or 10..40");
    study->add_flag("--seminorm", tc.with_seminorm, "measure Slobodetskii seminorms (fem)");
    study->add_option("--output,-o", tc.output, "output path (default stdout)");
    study->add_option("--format", tc.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    study->add_option("--plot-data", tc.plot_data, "write (resolution, err_l2) series");

    try {
        app.parse(argc, argv);
        if (kernel->parsed()) return cmd_kernel(kc);
        if (solve->parsed()) return cmd_solve(sc);
        if (study->parsed()) return cmd_study(tc);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "parameter error: %s\n", e.what());
        return kExitUsage;
    } catch (const PoleError& e) {
        std::fprintf(stderr, "parameter error: %s\n", e.what());
        return kExitUsage;
    } catch (const AccuracyError& e) {
        std::fprintf(stderr, "accuracy error: %s\n", e.what());
        return kExitAccuracy;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return kExitAccuracy;
    } catch (const std::ios_base::failure& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return kExitIo;
    }
}
