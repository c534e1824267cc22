#pragma once

#include <cstddef>

#include "spm/operators.hpp"
#include "spm/types.hpp"

namespace spm {

/// <v, v>_A = v^T A v.
double a_norm_sq(const SpdOperator& op, const Vector& v);

/**
 * Upper estimate of the largest eigenvalue: power iteration to @p rel_tol
 * relative change, inflated by 1e-6 so the result can serve as an upper
 * bound in the greedy decrease bound. Deterministic start vector. Meant for
 * test and report diagnostics, never for the solver path.
 */
double lambda_max_upper_bound(const SpdOperator& op, double rel_tol = 1e-8,
                              std::size_t max_iters = 200000);

/**
 * Checks the exact-decrease identity: the drop in the squared A-norm of the
 * error across one projection step equals the value the step returned,
 * within @p rel_tol relative.
 */
bool decrease_identity_check(const SpdOperator& op, const Vector& x_star,
                             const Vector& x_before, const Vector& x_after, double s_returned,
                             double rel_tol = 1e-9);

/**
 * Checks the greedy lower bound  s >= m / (n lambda_max) * ||r||_2^2  with a
 * 1e-12 absolute slack; @p lambda_max must dominate the true largest
 * eigenvalue.
 */
bool theorem3_bound_check(const SpdOperator& op, const Vector& r, std::size_t m,
                          double lambda_max, double s);

}  // namespace spm
