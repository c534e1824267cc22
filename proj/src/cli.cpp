#include "spm/cli.hpp"

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spm/bench.hpp"

namespace spm {

namespace {

struct CliConfig {
    int example = 0;
    int case_id = 1;
    std::size_t n = 1000;
    std::size_t grid = 32;
    std::string method;
    std::size_t m = 0;
    std::size_t ij_gap = 0;
    double tol = 1e-6;
    std::size_t max_sweeps = 10000;
    std::string matrix_path;
    std::string history_path;
    std::string format;
    std::string reproduce;
    std::string output_path;
};

int usage_error(std::ostream& err, const std::string& message) {
    err << "error: " << message << "\n";
    return 1;
}

std::vector<MethodSpec> table_methods() {
    return {MethodSpec::gap2d(2),  MethodSpec::gap2d(500), MethodSpec::mdspm(2),
            MethodSpec::mdspm(3), MethodSpec::mdspm(4),   MethodSpec::mdspm(5)};
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"Benchmark harness for successive projection solvers (mD-SPM, gap-pair 2D, "
                 "1D-DSPM, Gauss-Seidel)"};
    app.name("spm-bench");

    auto* example_opt =
        app.add_option("--example", cfg.example, "Generated problem family (1, 2, or 3)")
            ->check(CLI::Range(1, 3));
    auto* case_opt = app.add_option("--case", cfg.case_id, "Example 3 coefficient case")
                         ->check(CLI::Range(1, 3));
    auto* n_opt = app.add_option("--n", cfg.n, "Dimension for examples 1-2 (default 1000)");
    auto* grid_opt =
        app.add_option("--grid", cfg.grid, "Interior grid size for example 3 (default 32)");
    auto* method_opt =
        app.add_option("--method", cfg.method, "Solver: mdspm, gap2d, 1ddspm, or gs")
            ->check(CLI::IsMember({"mdspm", "gap2d", "1ddspm", "gs"}));
    auto* m_opt = app.add_option("--m", cfg.m, "Subspace dimension for mdspm");
    auto* gap_opt = app.add_option("--ij-gap", cfg.ij_gap, "Index gap for gap2d / 1ddspm");
    app.add_option("--tol", cfg.tol, "Stopping tolerance on ||x_{k+1}-x_k||_inf")
        ->default_val(1e-6);
    app.add_option("--max-sweeps", cfg.max_sweeps, "Sweep cap")->default_val(10000);
    auto* matrix_opt = app.add_option("--matrix", cfg.matrix_path,
                                      "Matrix Market file instead of a generated problem");
    auto* history_opt =
        app.add_option("--history", cfg.history_path, "Write per-sweep history CSV here");
    auto* format_opt = app.add_option("--format", cfg.format, "Table format")
                           ->check(CLI::IsMember({"csv", "markdown"}));
    auto* reproduce_opt =
        app.add_option("--reproduce", cfg.reproduce, "Run a full published grid")
            ->check(CLI::IsMember({"table1", "table2", "table3"}));
    app.add_option("--output", cfg.output_path, "Write the table here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 1;
    }

    const bool has_reproduce = reproduce_opt->count() > 0;
    const bool has_matrix = matrix_opt->count() > 0;
    const bool has_example = example_opt->count() > 0;

    if (static_cast<int>(has_reproduce) + static_cast<int>(has_matrix) +
            static_cast<int>(has_example) !=
        1) {
        return usage_error(err, "choose exactly one of --reproduce, --example, --matrix");
    }
    if (!(cfg.tol > 0.0)) return usage_error(err, "--tol must be positive");
    if (cfg.max_sweeps == 0) return usage_error(err, "--max-sweeps must be at least 1");

    RunOptions options{cfg.tol, cfg.max_sweeps};
    std::vector<RunReport> reports;
    TableFormat format = TableFormat::csv;

    if (has_reproduce) {
        for (auto* opt : {method_opt, m_opt, gap_opt, case_opt, n_opt, grid_opt, history_opt}) {
            if (opt->count() > 0) {
                return usage_error(err, "--reproduce runs a fixed grid; " + opt->get_name() +
                                            " does not apply");
            }
        }
        format = TableFormat::markdown;

        std::vector<ProblemRef> problems;
        if (cfg.reproduce == "table1") {
            problems.push_back({ProblemRef::Kind::example1, 1000, 1, 32, ""});
        } else if (cfg.reproduce == "table2") {
            problems.push_back({ProblemRef::Kind::example2, 1000, 1, 32, ""});
        } else {
            for (int c = 1; c <= 3; ++c) {
                problems.push_back({ProblemRef::Kind::example3, 1000, c, 32, ""});
            }
        }
        for (const ProblemRef& ref : problems) {
            std::optional<ProblemSpec> spec;
            std::string build_error;
            try {
                spec.emplace(ref.build());
            } catch (const std::exception& e) {
                build_error = e.what();
            }
            for (const MethodSpec& method : table_methods()) {
                if (spec) {
                    reports.push_back(run_cell_on(*spec, method, options));
                } else {
                    BenchCell cell{ref, method};
                    reports.push_back(run_cell(cell, options));  // reruns the failing build
                }
            }
        }
    } else {
        if (method_opt->count() == 0) {
            return usage_error(err, "--method is required for a single run");
        }
        MethodSpec method;
        if (cfg.method == "mdspm") {
            if (m_opt->count() == 0) return usage_error(err, "--method mdspm requires --m");
            if (gap_opt->count() > 0) {
                return usage_error(err, "--ij-gap does not apply to --method mdspm");
            }
            if (cfg.m == 0) return usage_error(err, "--m must be at least 1");
            method = MethodSpec::mdspm(cfg.m);
        } else if (cfg.method == "gap2d" || cfg.method == "1ddspm") {
            if (gap_opt->count() == 0) {
                return usage_error(err, "--method " + cfg.method + " requires --ij-gap");
            }
            if (m_opt->count() > 0) {
                return usage_error(err, "--m does not apply to --method " + cfg.method);
            }
            if (cfg.ij_gap == 0) return usage_error(err, "--ij-gap must be at least 1");
            method = cfg.method == "gap2d" ? MethodSpec::gap2d(cfg.ij_gap)
                                           : MethodSpec::oned_dspm(cfg.ij_gap);
        } else {  // gs
            if (m_opt->count() > 0) return usage_error(err, "--m does not apply to --method gs");
            if (gap_opt->count() > 0) {
                return usage_error(err, "--ij-gap does not apply to --method gs");
            }
            method = MethodSpec::gauss_seidel();
        }

        ProblemRef ref;
        if (has_matrix) {
            for (auto* opt : {case_opt, n_opt, grid_opt}) {
                if (opt->count() > 0) {
                    return usage_error(err, opt->get_name() + " does not apply with --matrix");
                }
            }
            ref.kind = ProblemRef::Kind::matrix_file;
            ref.path = cfg.matrix_path;
        } else if (cfg.example == 3) {
            if (n_opt->count() > 0) {
                return usage_error(err, "--n does not apply to example 3; use --grid");
            }
            ref.kind = ProblemRef::Kind::example3;
            ref.case_id = cfg.case_id;
            ref.grid = cfg.grid;
        } else {
            if (case_opt->count() > 0 || grid_opt->count() > 0) {
                return usage_error(err, "--case/--grid only apply to example 3");
            }
            ref.kind = cfg.example == 1 ? ProblemRef::Kind::example1 : ProblemRef::Kind::example2;
            ref.n = cfg.n;
        }

        reports.push_back(run_cell(BenchCell{ref, method}, options));

        if (history_opt->count() > 0 && !reports.back().errored) {
            std::ofstream hist(cfg.history_path);
            if (!hist) return usage_error(err, "cannot open '" + cfg.history_path + "' for writing");
            write_history_csv(hist, reports.back());
        }
    }

    if (format_opt->count() > 0) {
        format = cfg.format == "csv" ? TableFormat::csv : TableFormat::markdown;
    }

    const std::string table = emit_table(reports, format);
    if (!cfg.output_path.empty()) {
        std::ofstream file(cfg.output_path);
        if (!file) return usage_error(err, "cannot open '" + cfg.output_path + "' for writing");
        file << table;
    } else {
        out << table;
    }

    for (const RunReport& r : reports) {
        if (r.errored) {
            err << "error: " << r.problem << " " << r.method << ": " << r.error_message << "\n";
        }
    }
    const bool any_error =
        std::any_of(reports.begin(), reports.end(), [](const RunReport& r) { return r.errored; });
    return any_error ? 2 : 0;
}

}  // namespace spm
