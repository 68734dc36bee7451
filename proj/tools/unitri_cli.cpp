#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "unitri/degrees.hpp"
#include "unitri/genericity.hpp"
#include "unitri/io.hpp"
#include "unitri/tridiagonalizer.hpp"

using namespace unitri;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitUnsolved = 2;

struct Common {
    std::string input = "-";
    double tol = 1e-8;
    std::size_t sweep_samples = 720;
    std::size_t max_restarts = 8;
    std::uint64_t seed = 42;
    bool force = false;
    bool json = false;
    bool pretty = false;
};

std::string read_input(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw InvalidInput("cannot open " + path);
        buf << in.rdbuf();
    }
    return buf.str();
}

void emit(const Json& j, const Common& c) { std::cout << (c.pretty ? j.dump(2) : j.dump()) << '\n'; }

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

std::string gap_text(const Json& gap) {
    if (gap.is_null()) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", gap.get<double>());
    return buf;
}

void print_matrix(const char* label, const ComplexMatrix& m) {
    std::printf("%s\n", label);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) std::printf("  %+.6e%+.6ei", m(i, j).real(), m(i, j).imag());
        std::printf("\n");
    }
}

int run_tridiag(const Common& c, bool all_flags, bool verify_flag, bool perturb) {
    const ComplexMatrix a = parse_matrix(read_input(c.input));
    TridiagOptions opts;
    opts.tol = c.tol;
    opts.seed = c.seed;
    opts.max_restarts = c.max_restarts;
    opts.sweep.samples = c.sweep_samples;
    opts.sweep.seed = c.seed;
    opts.all_flags = all_flags;
    opts.force_perturbation = perturb;

    Json report;
    report["input"] = matrix_input_json(a);
    report["seed"] = c.seed;
    Json timings;
    std::optional<GenericityReport> screen;
    if (!c.force) {
        const auto t0 = std::chrono::steady_clock::now();
        screen = classify(a);
        timings["classify_ms"] = elapsed_ms(t0);
    }
    report["genericity"] = screen ? genericity_json(*screen) : Json(nullptr);

    int code = kExitOk;
    const auto t1 = std::chrono::steady_clock::now();
    try {
        const TridiagResult r = tridiagonalize(a, opts);
        timings["tridiagonalize_ms"] = elapsed_ms(t1);
        report["result"] = result_json(r);
        if (verify_flag) {
            const auto t2 = std::chrono::steady_clock::now();
            const VerifyReport v = verify(r, a);
            timings["verify_ms"] = elapsed_ms(t2);
            report["verify"] = verify_json(v);
            if (!(v.off_residual <= c.tol) || !v.consistent) code = kExitUnsolved;
        }
        if (!c.json) {
            std::printf("provenance: %s\n", to_string(r.provenance));
            std::printf("off_residual: %.3e\nunitarity_residual: %.3e\n", r.off_residual, r.unitarity_residual);
            if (r.perturbation > 0.0) std::printf("perturbation: %.1e\n", r.perturbation);
            if (all_flags) std::printf("section zeros: %zu\n", r.candidates.size());
            if (verify_flag) {
                const auto& v = report["verify"];
                std::printf("verify: off %.3e, unitarity %.3e, spectrum gap %s, consistent %s\n",
                            v["off_residual"].get<double>(), v["unitarity_residual"].get<double>(),
                            gap_text(v["spectrum_gap"]).c_str(),
                            v["consistent"].get<bool>() ? "yes" : "no");
            }
            print_matrix("U:", r.U);
            print_matrix("T = U A U*:", r.T);
        }
    } catch (const Unsolved& e) {
        timings["tridiagonalize_ms"] = elapsed_ms(t1);
        report["result"] = {{"status", "unsolved"}, {"diagnostics", e.what()}};
        if (!c.json) std::fprintf(stderr, "unsolved: %s\n", e.what());
        code = kExitUnsolved;
    }
    report["timings"] = timings;
    if (c.json) emit(report, c);
    return code;
}

int run_classify(const Common& c) {
    const ComplexMatrix a = parse_matrix(read_input(c.input));
    const GenericityReport g = classify(a, c.tol);
    Json j = genericity_json(g);
    j["n"] = a.rows();
    if (c.json) {
        emit(j, c);
    } else {
        std::printf("s1 (nonsingular): %s\n", g.nonsingular ? "true" : "false");
        std::printf("s2 (distinct eigenvalues): %s\n", g.distinct_eigenvalues ? "true" : "false");
        std::printf("s3 (pencil rank >= n-1): %s%s\n", g.pencil_rank_ok ? "true" : "false",
                    g.heuristic ? " (heuristic)" : "");
        std::printf("generic: %s\n", g.generic() ? "true" : "false");
        std::printf("common eigenvectors: %zu\n", g.common_eigenvectors.size());
        std::printf("%s\n", g.details.c_str());
    }
    return kExitOk;
}

int run_degrees(const Common& c, std::size_t trials) {
    const ComplexMatrix a = parse_matrix(read_input(c.input));
    if (a.rows() != 4) throw InvalidInput("degrees: a 4x4 matrix is required");
    DegreeOptions opts;
    opts.trials = trials;
    opts.seed = c.seed;
    opts.force = c.force;
    opts.sweep.samples = c.sweep_samples;
    opts.sweep.seed = c.seed;
    opts.exhaustive = exhaustive_sweep(c.seed);
    const DegreeReport d = run_degree_experiments(a, opts);
    if (c.json) {
        emit(degrees_json(d, c.seed), c);
    } else if (d.skipped) {
        std::printf("%s\n", d.notice.c_str());
    } else {
        std::printf("deg D: observed %zu, expected 4%s\n", d.deg_D_observed, d.deg_D_stable ? "" : " (unstable)");
        std::printf("deg C: observed %zu, expected 6 (agreement %.0f%%)\n", d.deg_C_observed, 100.0 * d.deg_C_agreement);
        std::printf("section zeros: observed %zu, at most 12\n", d.section_zero_count);
        if (!d.notice.empty()) std::printf("%s\n", d.notice.c_str());
    }
    return kExitOk;
}

int run_gen(const Common& c, std::size_t n, const std::string& kind) {
    const ComplexMatrix m = generate_matrix(parse_kind(kind), n, c.seed);
    emit(matrix_input_json(m), c);
    return kExitOk;
}

void add_common(CLI::App* sub, Common& c, bool with_input) {
    if (with_input) sub->add_option("input", c.input, "matrix file (JSON or text); '-' reads stdin");
    sub->add_option("--tol", c.tol, "residual tolerance relative to |A|_F")->capture_default_str();
    sub->add_option("--seed", c.seed, "seed for every random choice")->capture_default_str();
    sub->add_flag("--json", c.json, "emit a JSON report");
    sub->add_flag("--pretty", c.pretty, "indent JSON output (implies --json)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unitary tridiagonalization of small complex matrices"};
    app.require_subcommand(1);
    Common common;
    bool all_flags = false, verify_flag = false, perturb = false;
    std::size_t trials = 10, gen_n = 4;
    std::string kind = "gaussian";

    auto* tri = app.add_subcommand("tridiag", "find U with U A U* tridiagonal");
    add_common(tri, common, true);
    tri->add_option("--sweep-samples", common.sweep_samples, "base points in the curve sweep")->capture_default_str();
    tri->add_option("--max-restarts", common.max_restarts, "random lines tried for 3x3 input")->capture_default_str();
    tri->add_flag("--force", common.force, "skip the genericity screen");
    tri->add_flag("--all-flags", all_flags, "report every certified section zero");
    tri->add_flag("--verify", verify_flag, "recompute residuals and compare spectra");
    tri->add_flag("--perturb", perturb, "go straight to the perturbation path");

    auto* cls = app.add_subcommand("classify", "genericity checks");
    add_common(cls, common, true);

    auto* deg = app.add_subcommand("degrees", "count deg D, deg C and section zeros");
    add_common(deg, common, true);
    deg->add_option("--trials", trials, "random lines and hyperplanes")->capture_default_str();
    deg->add_option("--sweep-samples", common.sweep_samples, "base points for the hyperplane sweeps")->capture_default_str();
    deg->add_flag("--force", common.force, "run even if the genericity screen fails");

    auto* gen = app.add_subcommand("gen", "generate a matrix as JSON input");
    add_common(gen, common, false);
    gen->add_option("--n", gen_n, "size, 1 to 4")->capture_default_str();
    gen->add_option("--kind", kind, "gaussian, hermitian, tridiagonal or jordan")
        ->check(CLI::IsMember({"gaussian", "hermitian", "tridiagonal", "jordan"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }
    if (common.pretty) common.json = true;

    try {
        if (*tri) return run_tridiag(common, all_flags, verify_flag, perturb);
        if (*cls) return run_classify(common);
        if (*deg) return run_degrees(common, trials);
        if (*gen) return run_gen(common, gen_n, kind);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "parse error at line %zu, column %zu: %s\n", e.line(), e.column(), e.message().c_str());
        return kExitInput;
    } catch (const InvalidInput& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitInput;
    } catch (const Unsolved& e) {
        std::fprintf(stderr, "unsolved: %s\n", e.what());
        return kExitUnsolved;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUnsolved;
    }
    return kExitInput;
}
