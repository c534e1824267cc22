#include "spm/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "spm/matrix_market.hpp"

namespace spm {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_ms(double v) {
    std::ostringstream oss;
    oss.setf(std::ios::fixed);
    oss.precision(3);
    oss << v;
    return oss.str();
}

std::size_t parse_param(const RunReport& r) {
    const auto pos = r.params.find('=');
    if (pos == std::string::npos) return 0;
    std::size_t value = 0;
    const char* begin = r.params.data() + pos + 1;
    std::from_chars(begin, r.params.data() + r.params.size(), value);
    return value;
}

// (rank, parameter) orders methods the way the published tables do: the gap
// columns first, then the greedy family by m.
std::pair<int, std::size_t> method_key(const RunReport& r) {
    if (r.method == "gap2d") return {0, parse_param(r)};
    if (r.method == "mdspm") return {1, parse_param(r)};
    if (r.method == "1ddspm") return {2, parse_param(r)};
    return {3, 0};
}

}  // namespace

std::string MethodSpec::label() const {
    switch (kind) {
        case Kind::mdspm: return "mdspm";
        case Kind::gap2d: return "gap2d";
        case Kind::oned_dspm: return "1ddspm";
        case Kind::gauss_seidel: return "gs";
    }
    return "?";
}

std::string MethodSpec::params() const {
    switch (kind) {
        case Kind::mdspm: return "m=" + std::to_string(m);
        case Kind::gap2d:
        case Kind::oned_dspm: return "ij_gap=" + std::to_string(ij_gap);
        case Kind::gauss_seidel: return "";
    }
    return "";
}

SelectionStrategy MethodSpec::strategy() const {
    switch (kind) {
        case Kind::mdspm: return SelectionStrategy::greedy(m);
        case Kind::gap2d:
        case Kind::oned_dspm: return SelectionStrategy::gap(ij_gap);
        case Kind::gauss_seidel: return SelectionStrategy::cyclic();
    }
    return SelectionStrategy::cyclic();
}

StepKernel MethodSpec::kernel() const {
    return kind == Kind::oned_dspm ? StepKernel::double_successive : StepKernel::projected;
}

ProblemSpec ProblemRef::build() const {
    switch (kind) {
        case Kind::example1: return build_example1(n);
        case Kind::example2: return build_example2(n);
        case Kind::example3: return build_example3(case_id, grid);
        case Kind::matrix_file: {
            std::shared_ptr<const SpdOperator> op = read_matrix_market(path);
            return make_problem("matrix(" + path + ")", std::move(op));
        }
    }
    throw std::logic_error("unreachable problem kind");
}

RunReport run_cell_on(const ProblemSpec& spec, const MethodSpec& method,
                      const RunOptions& options) {
    RunReport report;
    report.problem = spec.name;
    report.method = method.label();
    report.params = method.params();
    report.symmetrized = spec.symmetrized;

    const auto start = std::chrono::steady_clock::now();
    try {
        StoppingRule rule{options.tol, options.max_sweeps};
        SolveResult result =
            solve(*spec.op, spec.b, spec.x0, method.strategy(), rule, method.kernel());
        report.converged = result.summary.converged;
        report.sweeps = result.summary.sweeps;
        report.final_res2 = result.summary.final_res2;
        report.final_dx_inf = result.summary.final_dx_inf;
        report.history = std::move(result.state.history);
    } catch (const std::exception& e) {
        report.errored = true;
        report.error_message = e.what();
    }
    const auto stop = std::chrono::steady_clock::now();
    report.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return report;
}

RunReport run_cell(const BenchCell& cell, const RunOptions& options) {
    ProblemSpec spec;
    const auto start = std::chrono::steady_clock::now();
    try {
        spec = cell.problem.build();
    } catch (const std::exception& e) {
        RunReport report;
        report.method = cell.method.label();
        report.params = cell.method.params();
        report.errored = true;
        report.error_message = e.what();
        const auto stop = std::chrono::steady_clock::now();
        report.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        switch (cell.problem.kind) {
            case ProblemRef::Kind::example1:
                report.problem = "example1(n=" + std::to_string(cell.problem.n) + ")";
                break;
            case ProblemRef::Kind::example2:
                report.problem = "example2(n=" + std::to_string(cell.problem.n) + ")";
                break;
            case ProblemRef::Kind::example3:
                report.problem = "example3(case=" + std::to_string(cell.problem.case_id) +
                                 ",grid=" + std::to_string(cell.problem.grid) + ")";
                break;
            case ProblemRef::Kind::matrix_file:
                report.problem = "matrix(" + cell.problem.path + ")";
                break;
        }
        return report;
    }
    RunReport report = run_cell_on(spec, cell.method, options);
    // Fold the construction time into the cell's wall time.
    const auto stop = std::chrono::steady_clock::now();
    report.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return report;
}

namespace {

std::vector<const RunReport*> sorted_view(const std::vector<RunReport>& reports) {
    std::vector<const RunReport*> view;
    view.reserve(reports.size());
    for (const auto& r : reports) view.push_back(&r);
    std::stable_sort(view.begin(), view.end(), [](const RunReport* a, const RunReport* b) {
        if (a->problem != b->problem) return a->problem < b->problem;
        return method_key(*a) < method_key(*b);
    });
    return view;
}

std::string csv_table(const std::vector<const RunReport*>& view) {
    std::string out = "problem,method,params,sweeps,converged,final_res_2,final_dx_inf,wall_ms\n";
    for (const RunReport* r : view) {
        out += r->problem;
        out += ',';
        out += r->method;
        out += ',';
        out += r->params;
        out += ',';
        if (r->errored) {
            out += ",error,,,";
        } else {
            out += std::to_string(r->sweeps);
            out += ',';
            out += r->converged ? "true" : "false";
            out += ',';
            out += format_double(r->final_res2);
            out += ',';
            out += format_double(r->final_dx_inf);
            out += ',';
        }
        out += format_ms(r->wall_ms);
        out += '\n';
    }
    return out;
}

std::string markdown_table(const std::vector<const RunReport*>& view) {
    // Pivot: one row per problem, one column per (method, params).
    std::vector<std::string> problems;
    std::vector<std::pair<std::pair<int, std::size_t>, std::string>> columns;
    for (const RunReport* r : view) {
        if (std::find(problems.begin(), problems.end(), r->problem) == problems.end()) {
            problems.push_back(r->problem);
        }
        const std::string header = r->params.empty() ? r->method : r->method + " (" + r->params + ")";
        const auto key = std::make_pair(method_key(*r), header);
        if (std::find(columns.begin(), columns.end(), key) == columns.end()) {
            columns.push_back(key);
        }
    }
    std::sort(columns.begin(), columns.end());

    std::map<std::pair<std::string, std::string>, const RunReport*> cells;
    for (const RunReport* r : view) {
        const std::string header = r->params.empty() ? r->method : r->method + " (" + r->params + ")";
        cells.emplace(std::make_pair(r->problem, header), r);
    }

    std::string out = "| problem |";
    for (const auto& c : columns) out += " " + c.second + " |";
    out += "\n|---|";
    for (std::size_t i = 0; i < columns.size(); ++i) out += "---|";
    out += "\n";

    std::vector<std::string> notes;
    for (const std::string& p : problems) {
        out += "| " + p + " |";
        for (const auto& c : columns) {
            auto it = cells.find(std::make_pair(p, c.second));
            if (it == cells.end()) {
                out += "  |";
                continue;
            }
            const RunReport* r = it->second;
            if (r->errored) {
                out += " error |";
                notes.push_back(p + " / " + c.second + ": " + r->error_message);
            } else if (!r->converged) {
                out += " " + std::to_string(r->sweeps) + " (not converged) |";
            } else {
                out += " " + std::to_string(r->sweeps) + " |";
            }
        }
        out += "\n";
    }

    std::vector<std::string> flagged;
    for (const RunReport* r : view) {
        if (r->symmetrized &&
            std::find(flagged.begin(), flagged.end(), r->problem) == flagged.end()) {
            flagged.push_back(r->problem);
            notes.push_back(r->problem + ": nonsymmetric discretization symmetrized as (M + M^T)/2");
        }
    }
    for (const auto& note : notes) out += "\n> " + note + "\n";
    return out;
}

}  // namespace

std::string emit_table(const std::vector<RunReport>& reports, TableFormat format) {
    const auto view = sorted_view(reports);
    return format == TableFormat::csv ? csv_table(view) : markdown_table(view);
}

void write_history_csv(std::ostream& out, const RunReport& report) {
    out << "sweep,dx_inf,res_2\n";
    for (std::size_t k = 0; k < report.history.size(); ++k) {
        out << (k + 1) << "," << format_double(report.history[k].dx_inf) << ","
            << format_double(report.history[k].res2) << "\n";
    }
}

}  // namespace spm
