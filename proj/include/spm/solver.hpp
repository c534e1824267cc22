#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "spm/operators.hpp"
#include "spm/selection.hpp"
#include "spm/types.hpp"

namespace spm {

/// A Cholesky pivot came out non-positive: the matrix handed in was not
/// positive definite (a caller bug, or a non-SPD user matrix).
class NotPositiveDefiniteError : public std::runtime_error {
public:
    explicit NotPositiveDefiniteError(std::size_t pivot)
        : std::runtime_error("matrix is not positive definite (pivot " +
                             std::to_string(pivot) + ")"),
          pivot_(pivot) {}

    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

/// The two directions handed to the 2-D projection kernel are (numerically)
/// linearly dependent.
class DependentDirectionsError : public std::runtime_error {
public:
    DependentDirectionsError() : std::runtime_error("projection directions are linearly dependent") {}
};

/**
 * @brief The m x m projected system: the principal submatrix of A at the
 * index set (the Gram matrix of the selected identity columns in the
 * A-inner product) and the matching slice of the residual.
 */
struct ProjectedSystem {
    std::size_t m = 0;
    std::vector<double> gram;  // m*m, row-major, symmetric positive definite
    Vector rhs;                // residual components at the selected indices
};

/// gram_{jk} = A(S_j, S_k), rhs_j = r[S_j]. Reads m^2 entries and m residual
/// components; no O(n) work.
ProjectedSystem extract_projected(const SpdOperator& op, const IndexSet& S, const Vector& r);

/**
 * In-place Cholesky factorization of a symmetric positive definite matrix
 * (m x m row-major); the lower triangle is overwritten with the factor.
 * Throws NotPositiveDefiniteError on a non-positive pivot.
 */
void cholesky_factorize(std::vector<double>& a, std::size_t m);

/// Solves L L^T y = rhs in place given the factor from cholesky_factorize.
void cholesky_apply(const std::vector<double>& factor, std::size_t m, Vector& y);

/// Solves gram * y = rhs for a symmetric positive definite gram.
Vector cholesky_solve(const std::vector<double>& gram, std::size_t m, const Vector& rhs);

/// One per-sweep history record.
struct SweepRecord {
    double dx_inf = 0.0;        // max |x_after - x_before| over the sweep
    double res2 = 0.0;          // ||r||_2 after the sweep
    double decrease_sum = 0.0;  // sum of the exact A-norm-squared error drops
};

/**
 * @brief Iterate, residual, and convergence history of one solver run.
 * The residual is maintained incrementally from column updates and stays
 * consistent with b - A x up to accumulated roundoff.
 */
struct SolverState {
    Vector x;
    Vector r;
    std::size_t sweep = 0;
    std::vector<SweepRecord> history;
};

/// Initializes a run: x = x0 and r = b - A x0.
SolverState make_state(const SpdOperator& op, const Vector& b, const Vector& x0);

/**
 * One projection step onto span{e_i : i in S}: solves the projected system,
 * adds the correction to the m selected components of x, and downdates the
 * residual by the corresponding column combination. Returns the exact
 * decrease in the squared A-norm of the error, rhs^T y.
 */
double projection_step(const SpdOperator& op, const IndexSet& S, SolverState& state);

/**
 * Double successive projection: two 1-D projections onto v1 then v2,
 * applied through the closed-form coefficients
 *   alpha_1 = -p_1 / a,  beta_2 = (c p_1 - a p_2) / (a d),
 * with a = <v1,v1>_A, c = <v1,v2>_A, d = <v2,v2>_A and p_i = -<r, v_i>.
 */
void oned_dspm_step(const SpdOperator& op, const Vector& v1, const Vector& v2,
                    SolverState& state);

/**
 * Joint 2-D projection onto span{v1, v2}:
 *   alpha = (c p_2 - d p_1) / (a d - c^2),  beta = (c p_1 - a p_2) / (a d - c^2).
 * For v1 = e_i, v2 = e_j this agrees with projection_step on {i, j}.
 * Throws DependentDirectionsError when a d - c^2 is not safely positive.
 */
void twod_dspm_step(const SpdOperator& op, const Vector& v1, const Vector& v2,
                    SolverState& state);

/// Which kernel a pair-selecting sweep applies at each inner step.
enum class StepKernel {
    projected,          // the joint m-D projection step
    double_successive,  // two successive 1-D projections (first index, then second)
};

/**
 * One outer iteration: n inner projection steps. Greedy strategies reselect
 * from the current residual before every step; the gap strategy pairs the
 * running inner index with its gap partner; cyclic takes single indices in
 * order. Steps whose selected residual components are all zero are skipped
 * (they would be exact no-ops), and a greedy sweep exits early once the
 * residual is exactly zero.
 */
void sweep(const SpdOperator& op, const SelectionStrategy& strategy, SolverState& state,
           StepKernel kernel = StepKernel::projected);

/// Convergence test parameters: infinity norm of the change of x across one
/// full sweep, plus a safety cap on sweeps.
struct StoppingRule {
    double tol = 1e-6;
    std::size_t max_sweeps = 10000;
};

struct SolveSummary {
    bool converged = false;
    std::size_t sweeps = 0;
    double final_dx_inf = 0.0;
    double final_res2 = 0.0;
};

struct SolveResult {
    SolverState state;
    SolveSummary summary;
};

/**
 * Runs sweeps until ||x_{k+1} - x_k||_inf < tol, where the comparison is
 * between iterates one full sweep apart, or until max_sweeps. Hitting the
 * cap is reported (converged = false), not thrown. The sweep count is the
 * number of completed sweeps.
 */
SolveResult solve(const SpdOperator& op, const Vector& b, const Vector& x0,
                  const SelectionStrategy& strategy, const StoppingRule& rule,
                  StepKernel kernel = StepKernel::projected);

}  // namespace spm
