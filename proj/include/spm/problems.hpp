#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>

#include "spm/operators.hpp"
#include "spm/types.hpp"

namespace spm {

/**
 * @brief A ready-to-run benchmark instance: the operator, the right-hand
 * side b = A e (e the all-ones vector), and the initial guess
 * x0_i = 0.001 * i (1-based i).
 */
struct ProblemSpec {
    std::string name;
    std::shared_ptr<const SpdOperator> op;
    Vector b;
    Vector x0;
    /// True when the raw discretization was nonsymmetric and the operator
    /// is its symmetric part (M + M^T) / 2; surfaced in reports.
    bool symmetrized = false;

    std::size_t dim() const { return op->dim(); }
};

/// Coefficient functions of the model problem
/// -Laplace(u) + a u_x + b u_y + c u = f on the unit square.
struct PdeCoefficients {
    std::function<double(double, double)> a;
    std::function<double(double, double)> b;
    std::function<double(double, double)> c;
    std::function<double(double, double)> f;

    /// The three coefficient presets of the experiment family.
    static PdeCoefficients case_preset(int case_id);
};

/// Dense-background band matrix: diagonal 4n, first sub/super-diagonal n,
/// all remaining entries 0.5. Requires n >= 2.
ProblemSpec build_example1(std::size_t n);

/// Same matrix with the diagonal changed to 3n. Requires n >= 2.
ProblemSpec build_example2(std::size_t n);

/**
 * Five-point finite-difference discretization of the model problem on a
 * grid x grid interior mesh (h = 1/(grid+1), Dirichlet boundary, natural
 * row-major ordering, central differences for the first-order terms). The
 * raw matrix is symmetrized as (M + M^T)/2 and verified positive definite
 * by a dense Cholesky factorization (skipped above n = 1100); failure is a
 * construction error. Requires 1 <= case_id <= 3 and grid >= 2.
 */
ProblemSpec build_example3(int case_id, std::size_t grid);

/// Example-3 assembly with caller-supplied coefficients.
ProblemSpec build_convection_diffusion(const PdeCoefficients& coeffs, std::size_t grid,
                                       const std::string& name);

/// Wraps an operator loaded from elsewhere with the standard b and x0.
ProblemSpec make_problem(std::string name, std::shared_ptr<const SpdOperator> op,
                         bool symmetrized = false);

/// The known solution: the all-ones vector.
Vector reference_solution(const ProblemSpec& spec);

}  // namespace spm
