#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "spm/problems.hpp"
#include "spm/solver.hpp"

namespace spm {

/// A solver configuration a benchmark cell runs: which method and its
/// parameter.
struct MethodSpec {
    enum class Kind { mdspm, gap2d, oned_dspm, gauss_seidel };

    Kind kind = Kind::gauss_seidel;
    std::size_t m = 0;       // mdspm subspace dimension
    std::size_t ij_gap = 0;  // gap2d / 1ddspm pair offset

    static MethodSpec mdspm(std::size_t m) { return {Kind::mdspm, m, 0}; }
    static MethodSpec gap2d(std::size_t ij_gap) { return {Kind::gap2d, 0, ij_gap}; }
    static MethodSpec oned_dspm(std::size_t ij_gap) { return {Kind::oned_dspm, 0, ij_gap}; }
    static MethodSpec gauss_seidel() { return {Kind::gauss_seidel, 0, 0}; }

    std::string label() const;   // "mdspm", "gap2d", "1ddspm", "gs"
    std::string params() const;  // "m=3", "ij_gap=500", or ""

    SelectionStrategy strategy() const;
    StepKernel kernel() const;
};

/// How a cell names and constructs its problem.
struct ProblemRef {
    enum class Kind { example1, example2, example3, matrix_file };

    Kind kind = Kind::example1;
    std::size_t n = 1000;      // examples 1-2
    int case_id = 1;           // example 3
    std::size_t grid = 32;     // example 3
    std::string path;          // matrix_file

    ProblemSpec build() const;
};

struct BenchCell {
    ProblemRef problem;
    MethodSpec method;
};

struct RunOptions {
    double tol = 1e-6;
    std::size_t max_sweeps = 10000;
};

/// Everything one benchmark cell produced, including failure.
struct RunReport {
    std::string problem;
    std::string method;
    std::string params;
    bool errored = false;
    std::string error_message;
    bool converged = false;
    std::size_t sweeps = 0;
    double final_res2 = 0.0;
    double final_dx_inf = 0.0;
    double wall_ms = 0.0;
    std::vector<SweepRecord> history;
    bool symmetrized = false;
};

/// Builds the cell's problem and solves it; construction or solver errors
/// come back as an errored report, never an exception.
RunReport run_cell(const BenchCell& cell, const RunOptions& options);

/// Same, on an already-built problem (lets a grid share one construction).
RunReport run_cell_on(const ProblemSpec& spec, const MethodSpec& method,
                      const RunOptions& options);

enum class TableFormat { csv, markdown };

/**
 * Renders reports deterministically (problem-major, then method). CSV emits
 * one row per report under the fixed header
 * `problem,method,params,sweeps,converged,final_res_2,final_dx_inf,wall_ms`;
 * markdown pivots methods into columns, one row per problem, with footnotes
 * for errors and symmetrized constructions.
 */
std::string emit_table(const std::vector<RunReport>& reports, TableFormat format);

/// Per-sweep history CSV with header `sweep,dx_inf,res_2`.
void write_history_csv(std::ostream& out, const RunReport& report);

}  // namespace spm
