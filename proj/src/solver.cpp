#include "spm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

namespace spm {

namespace {

void check_set(const SpdOperator& op, std::span<const std::size_t> S) {
    if (S.empty() || S.back() >= op.dim()) {
        throw std::invalid_argument("index set invalid for operator dimension " +
                                    std::to_string(op.dim()));
    }
}

// Scratch buffers shared by the inner steps of a sweep.
struct StepScratch {
    std::vector<std::size_t> heap;
    std::vector<std::size_t> sel;
    std::vector<double> gram;
    Vector rhs;
    Vector y;
};

// The Algorithm-1 inner step on an ascending index set; returns S(r).
double projected_step(const SpdOperator& op, std::span<const std::size_t> S, SolverState& state,
                      StepScratch& ws) {
    const std::size_t m = S.size();
    ws.rhs.resize(m);
    bool all_zero = true;
    for (std::size_t j = 0; j < m; ++j) {
        ws.rhs[j] = state.r[S[j]];
        all_zero = all_zero && ws.rhs[j] == 0.0;
    }
    if (all_zero) return 0.0;  // V_m^T r = 0: an exact no-op

    ws.gram.resize(m * m);
    for (std::size_t j = 0; j < m; ++j) {
        ws.gram[j * m + j] = op.entry(S[j], S[j]);
        for (std::size_t k = j + 1; k < m; ++k) {
            const double v = op.entry(S[j], S[k]);
            ws.gram[j * m + k] = v;
            ws.gram[k * m + j] = v;
        }
    }
    cholesky_factorize(ws.gram, m);
    ws.y = ws.rhs;
    cholesky_apply(ws.gram, m, ws.y);

    double decrease = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        decrease += ws.rhs[j] * ws.y[j];
        state.x[S[j]] += ws.y[j];
    }
    for (std::size_t j = 0; j < m; ++j) {
        op.add_scaled_column(S[j], -ws.y[j], state.r);
    }
    return decrease;
}

}  // namespace

ProjectedSystem extract_projected(const SpdOperator& op, const IndexSet& S, const Vector& r) {
    check_set(op, S.indices());
    if (r.size() != op.dim()) throw std::invalid_argument("residual length mismatch");
    const std::size_t m = S.size();
    ProjectedSystem ps;
    ps.m = m;
    ps.gram.resize(m * m);
    ps.rhs.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        ps.rhs[j] = r[S[j]];
        ps.gram[j * m + j] = op.entry(S[j], S[j]);
        for (std::size_t k = j + 1; k < m; ++k) {
            const double v = op.entry(S[j], S[k]);
            ps.gram[j * m + k] = v;
            ps.gram[k * m + j] = v;
        }
    }
    return ps;
}

void cholesky_factorize(std::vector<double>& a, std::size_t m) {
    if (a.size() != m * m) throw std::invalid_argument("factorization size mismatch");
    for (std::size_t j = 0; j < m; ++j) {
        double diag = a[j * m + j];
        for (std::size_t k = 0; k < j; ++k) diag -= a[j * m + k] * a[j * m + k];
        if (!(diag > 0.0)) throw NotPositiveDefiniteError(j);
        const double ljj = std::sqrt(diag);
        a[j * m + j] = ljj;
        for (std::size_t i = j + 1; i < m; ++i) {
            double s = a[i * m + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * m + k] * a[j * m + k];
            a[i * m + j] = s / ljj;
        }
    }
}

void cholesky_apply(const std::vector<double>& factor, std::size_t m, Vector& y) {
    if (factor.size() != m * m || y.size() != m) {
        throw std::invalid_argument("triangular solve size mismatch");
    }
    for (std::size_t i = 0; i < m; ++i) {  // L z = y
        double s = y[i];
        for (std::size_t k = 0; k < i; ++k) s -= factor[i * m + k] * y[k];
        y[i] = s / factor[i * m + i];
    }
    for (std::size_t ii = m; ii-- > 0;) {  // L^T y = z
        double s = y[ii];
        for (std::size_t k = ii + 1; k < m; ++k) s -= factor[k * m + ii] * y[k];
        y[ii] = s / factor[ii * m + ii];
    }
}

Vector cholesky_solve(const std::vector<double>& gram, std::size_t m, const Vector& rhs) {
    std::vector<double> factor = gram;
    cholesky_factorize(factor, m);
    Vector y = rhs;
    cholesky_apply(factor, m, y);
    return y;
}

SolverState make_state(const SpdOperator& op, const Vector& b, const Vector& x0) {
    if (b.size() != op.dim() || x0.size() != op.dim()) {
        throw std::invalid_argument("right-hand side / initial guess length mismatch");
    }
    SolverState state;
    state.x = x0;
    op.matvec(x0, state.r);
    for (std::size_t i = 0; i < state.r.size(); ++i) state.r[i] = b[i] - state.r[i];
    return state;
}

double projection_step(const SpdOperator& op, const IndexSet& S, SolverState& state) {
    check_set(op, S.indices());
    StepScratch ws;
    return projected_step(op, S.indices(), state, ws);
}

void oned_dspm_step(const SpdOperator& op, const Vector& v1, const Vector& v2,
                    SolverState& state) {
    if (norm_inf(v1) == 0.0 || norm_inf(v2) == 0.0) {
        throw std::invalid_argument("direction vectors must be nonzero");
    }
    Vector av1 = op.matvec(v1);
    Vector av2 = op.matvec(v2);
    const double a = dot(av1, v1);
    const double c = dot(av1, v2);
    const double d = dot(av2, v2);
    if (!(a > 0.0)) throw NotPositiveDefiniteError(0);
    if (!(d > 0.0)) throw NotPositiveDefiniteError(1);
    const double p1 = -dot(state.r, v1);
    const double p2 = -dot(state.r, v2);
    const double alpha1 = -p1 / a;
    const double beta2 = (c * p1 - a * p2) / (a * d);
    for (std::size_t i = 0; i < state.x.size(); ++i) {
        state.x[i] += alpha1 * v1[i] + beta2 * v2[i];
        state.r[i] -= alpha1 * av1[i] + beta2 * av2[i];
    }
}

void twod_dspm_step(const SpdOperator& op, const Vector& v1, const Vector& v2,
                    SolverState& state) {
    if (norm_inf(v1) == 0.0 || norm_inf(v2) == 0.0) {
        throw std::invalid_argument("direction vectors must be nonzero");
    }
    Vector av1 = op.matvec(v1);
    Vector av2 = op.matvec(v2);
    const double a = dot(av1, v1);
    const double c = dot(av1, v2);
    const double d = dot(av2, v2);
    const double denom = a * d - c * c;
    // By Cauchy-Schwarz in the A-inner product, denom > 0 iff v1, v2 are
    // independent; guard against a numerically vanishing value.
    if (!(denom > 1e-14 * a * d)) throw DependentDirectionsError();
    const double p1 = -dot(state.r, v1);
    const double p2 = -dot(state.r, v2);
    const double alpha = (c * p2 - d * p1) / denom;
    const double beta = (c * p1 - a * p2) / denom;
    for (std::size_t i = 0; i < state.x.size(); ++i) {
        state.x[i] += alpha * v1[i] + beta * v2[i];
        state.r[i] -= alpha * av1[i] + beta * av2[i];
    }
}

namespace {

// Runs the n inner steps of one sweep, returning the accumulated S(r).
double sweep_inner(const SpdOperator& op, const SelectionStrategy& strategy, SolverState& state,
                   StepKernel kernel, StepScratch& ws) {
    const std::size_t n = op.dim();
    double total_decrease = 0.0;
    std::size_t pair[2];

    switch (strategy.kind) {
        case SelectionStrategy::Kind::greedy_top_m:
            if (strategy.m == 0 || strategy.m > n) {
                throw std::invalid_argument("greedy subspace dimension out of range");
            }
            break;
        case SelectionStrategy::Kind::gap_pair:
            if (strategy.ij_gap == 0 || strategy.ij_gap >= n) {
                throw std::invalid_argument("ij_gap out of range");
            }
            break;
        case SelectionStrategy::Kind::cyclic:
            break;
    }
    if (kernel == StepKernel::double_successive &&
        strategy.kind != SelectionStrategy::Kind::gap_pair) {
        throw std::invalid_argument("the double-successive kernel needs a pair strategy");
    }

    for (std::size_t i = 0; i < n; ++i) {
        switch (strategy.kind) {
            case SelectionStrategy::Kind::greedy_top_m: {
                if (norm_inf(state.r) == 0.0) return total_decrease;  // early exit
                detail::top_m_select(state.r.data(), n, strategy.m, ws.heap, ws.sel);
                total_decrease += projected_step(op, ws.sel, state, ws);
                break;
            }
            case SelectionStrategy::Kind::gap_pair: {
                const std::size_t j =
                    i >= strategy.ij_gap ? i - strategy.ij_gap : i + n - strategy.ij_gap;
                if (kernel == StepKernel::double_successive) {
                    // Two 1-D projections: current index first, partner second.
                    pair[0] = i;
                    total_decrease += projected_step(op, {pair, 1}, state, ws);
                    pair[0] = j;
                    total_decrease += projected_step(op, {pair, 1}, state, ws);
                } else {
                    pair[0] = std::min(i, j);
                    pair[1] = std::max(i, j);
                    total_decrease += projected_step(op, {pair, 2}, state, ws);
                }
                break;
            }
            case SelectionStrategy::Kind::cyclic: {
                pair[0] = i;
                total_decrease += projected_step(op, {pair, 1}, state, ws);
                break;
            }
        }
    }
    return total_decrease;
}

}  // namespace

void sweep(const SpdOperator& op, const SelectionStrategy& strategy, SolverState& state,
           StepKernel kernel) {
    if (state.x.size() != op.dim() || state.r.size() != op.dim()) {
        throw std::invalid_argument("state dimension mismatch");
    }
    StepScratch ws;
    sweep_inner(op, strategy, state, kernel, ws);
}

SolveResult solve(const SpdOperator& op, const Vector& b, const Vector& x0,
                  const SelectionStrategy& strategy, const StoppingRule& rule,
                  StepKernel kernel) {
    if (!(rule.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (rule.max_sweeps == 0) throw std::invalid_argument("max_sweeps must be at least 1");

    SolveResult result;
    result.state = make_state(op, b, x0);
    SolverState& state = result.state;

    StepScratch ws;
    Vector x_prev;
    while (state.sweep < rule.max_sweeps) {
        x_prev = state.x;
        const double decrease = sweep_inner(op, strategy, state, kernel, ws);

        double dx = 0.0;
        for (std::size_t i = 0; i < state.x.size(); ++i) {
            dx = std::max(dx, std::abs(state.x[i] - x_prev[i]));
        }
        state.history.push_back({dx, norm2(state.r), decrease});
        state.sweep += 1;

        if (dx < rule.tol) {
            result.summary.converged = true;
            break;
        }
    }

    result.summary.sweeps = state.sweep;
    if (!state.history.empty()) {
        result.summary.final_dx_inf = state.history.back().dx_inf;
        result.summary.final_res2 = state.history.back().res2;
    }
    return result;
}

}  // namespace spm
