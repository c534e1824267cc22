#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "spm/diagnostics.hpp"
#include "spm/problems.hpp"
#include "spm/solver.hpp"

using namespace spm;

namespace {

SolverState random_state(const SpdOperator& op, std::mt19937& rng) {
    const std::size_t n = op.dim();
    const Vector b = oracles::random_vector(n, rng, -2.0, 2.0);
    const Vector x0 = oracles::random_vector(n, rng, -1.0, 1.0);
    return make_state(op, b, x0);
}

Vector unit_vector(std::size_t n, std::size_t i) {
    Vector e(n, 0.0);
    e[i] = 1.0;
    return e;
}

}  // namespace

TEST_CASE("extract_projected: identity and structured examples") {
    const auto id = DenseSpd::identity(4);
    const auto ps = extract_projected(id, IndexSet({1, 3}), {9.0, 8.0, 7.0, 6.0});
    CHECK(ps.m == 2);
    CHECK(ps.gram == std::vector<double>{1.0, 0.0, 0.0, 1.0});
    CHECK(ps.rhs == Vector{8.0, 6.0});

    const BandPlusConstantSpd ex1(3, 12.0, 3.0, 0.5);
    const auto ps2 = extract_projected(ex1, IndexSet({0, 1}), {1.0, 2.0, 3.0});
    CHECK(ps2.gram == std::vector<double>{12.0, 3.0, 3.0, 12.0});

    const auto full = extract_projected(ex1, IndexSet({0, 1, 2}), {1.0, 2.0, 3.0});
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(full.gram[i * 3 + j] == ex1.entry(i, j));
        }
    }
}

TEST_CASE("cholesky_solve: closed-form 2x2 and identity") {
    // [[4, 1], [1, 3]] has determinant 11; inverse applied to (1, 2).
    const Vector y = cholesky_solve({4.0, 1.0, 1.0, 3.0}, 2, {1.0, 2.0});
    CHECK(y[0] == doctest::Approx(1.0 / 11.0).epsilon(1e-14));
    CHECK(y[1] == doctest::Approx(7.0 / 11.0).epsilon(1e-14));

    const Vector rhs{3.0, -4.0, 0.5};
    const Vector z = cholesky_solve({1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0}, 3, rhs);
    CHECK(z == rhs);
}

TEST_CASE("cholesky_solve rejects non-positive-definite input") {
    CHECK_THROWS_AS(cholesky_solve({-1.0}, 1, {1.0}), NotPositiveDefiniteError);
    // indefinite 2x2
    CHECK_THROWS_AS(cholesky_solve({1.0, 2.0, 2.0, 1.0}, 2, {1.0, 1.0}), NotPositiveDefiniteError);
}

TEST_CASE("cholesky_solve residual bound on random SPD systems") {
    std::mt19937 rng(17);
    for (std::size_t m : {1ul, 2ul, 5ul, 16ul}) {
        const auto a = oracles::random_spd(m, rng);
        const Vector rhs = oracles::random_vector(m, rng);
        const Vector y = cholesky_solve(a.data(), m, rhs);
        Vector residual = a.matvec(y);
        double err = 0.0;
        for (std::size_t i = 0; i < m; ++i) err = std::max(err, std::abs(residual[i] - rhs[i]));
        CHECK(err <= 1e-10 * norm_inf(rhs));
    }
}

TEST_CASE("projection_step: identity single index") {
    const auto id = DenseSpd::identity(2);
    SolverState state = make_state(id, {5.0, 0.0}, {0.0, 0.0});
    const double decrease = projection_step(id, IndexSet::single(0), state);
    CHECK(state.x == Vector{5.0, 0.0});
    CHECK(state.r == Vector{0.0, 0.0});
    CHECK(decrease == 25.0);
}

TEST_CASE("projection_step: m = 1 closed form matches a Gauss-Seidel component update") {
    std::mt19937 rng(23);
    const auto a = oracles::random_spd(7, rng);
    SolverState state = random_state(a, rng);
    const double ri = state.r[4];
    const double expected = ri / a.entry(4, 4);
    const double x_before = state.x[4];
    const double decrease = projection_step(a, IndexSet::single(4), state);
    CHECK(state.x[4] == doctest::Approx(x_before + expected).epsilon(1e-14));
    CHECK(decrease == doctest::Approx(ri * ri / a.entry(4, 4)).epsilon(1e-14));
}

TEST_CASE("projection_step: Petrov-Galerkin and the exact-decrease identity") {
    std::mt19937 rng(29);
    const auto a = oracles::random_spd(6, rng);
    const auto dense = oracles::dense_of(a);
    const Vector b = oracles::random_vector(6, rng);
    const Vector x0 = oracles::random_vector(6, rng);
    const Vector x_star = oracles::gauss_solve(dense, 6, b);

    SolverState state = make_state(a, b, x0);
    const double r_scale = norm_inf(state.r);
    const Vector x_before = state.x;
    const double decrease = projection_step(a, IndexSet({1, 3, 4}), state);

    for (const std::size_t i : {1, 3, 4}) {
        CHECK(std::abs(state.r[i]) <= 1e-12 * r_scale);
    }

    Vector d(6);
    for (std::size_t i = 0; i < 6; ++i) d[i] = x_star[i] - x_before[i];
    const double before = oracles::a_norm_sq_dense(dense, 6, d);
    for (std::size_t i = 0; i < 6; ++i) d[i] = x_star[i] - state.x[i];
    const double after = oracles::a_norm_sq_dense(dense, 6, d);
    CHECK(decrease == doctest::Approx(before - after).epsilon(1e-9));
    CHECK(decrease_identity_check(a, x_star, x_before, state.x, decrease));
}

TEST_CASE("projection_step: zero selected residual is an exact no-op") {
    const auto id = DenseSpd::identity(3);
    SolverState state = make_state(id, {0.0, 5.0, 0.0}, {0.0, 0.0, 0.0});
    const Vector x_before = state.x;
    const double decrease = projection_step(id, IndexSet({0, 2}), state);
    CHECK(decrease == 0.0);
    CHECK(state.x == x_before);
}

TEST_CASE("oned_dspm_step: orthonormal directions") {
    const auto id = DenseSpd::identity(3);
    SolverState state = make_state(id, {2.0, 3.0, 0.0}, {0.0, 0.0, 0.0});
    oned_dspm_step(id, unit_vector(3, 0), unit_vector(3, 1), state);
    CHECK(state.x[0] == doctest::Approx(2.0));
    CHECK(state.x[1] == doctest::Approx(3.0));
    CHECK(norm_inf(state.r) <= 1e-15);
}

TEST_CASE("oned_dspm_step equals two successive 1-D projection steps") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = oracles::random_spd(8, rng);
        SolverState closed = random_state(a, rng);
        SolverState successive = closed;

        const std::size_t i = trial % 8;
        const std::size_t j = (trial * 3 + 1) % 8;
        oned_dspm_step(a, unit_vector(8, i), unit_vector(8, j), closed);
        projection_step(a, IndexSet::single(i), successive);
        projection_step(a, IndexSet::single(j), successive);

        for (std::size_t k = 0; k < 8; ++k) {
            CHECK(closed.x[k] == doctest::Approx(successive.x[k]).epsilon(1e-12));
            CHECK(closed.r[k] == doctest::Approx(successive.r[k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("oned_dspm_step: repeated direction gets a zero second correction") {
    std::mt19937 rng(37);
    const auto a = oracles::random_spd(5, rng);
    SolverState repeated = random_state(a, rng);
    SolverState single = repeated;

    oned_dspm_step(a, unit_vector(5, 0), unit_vector(5, 0), repeated);
    projection_step(a, IndexSet::single(0), single);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(repeated.x[k] == doctest::Approx(single.x[k]).epsilon(1e-12));
    }
}

TEST_CASE("oned_dspm_step rejects zero directions") {
    const auto id = DenseSpd::identity(2);
    SolverState state = make_state(id, {1.0, 1.0}, {0.0, 0.0});
    CHECK_THROWS_AS(oned_dspm_step(id, Vector{0.0, 0.0}, unit_vector(2, 1), state),
                    std::invalid_argument);
    CHECK_THROWS_AS(oned_dspm_step(id, unit_vector(2, 0), Vector{0.0, 0.0}, state),
                    std::invalid_argument);
}

TEST_CASE("twod_dspm_step: orthonormal directions and basis-vector equivalence") {
    const auto id = DenseSpd::identity(2);
    SolverState state = make_state(id, {2.0, 3.0}, {0.0, 0.0});
    twod_dspm_step(id, unit_vector(2, 0), unit_vector(2, 1), state);
    CHECK(state.x[0] == doctest::Approx(2.0));
    CHECK(state.x[1] == doctest::Approx(3.0));

    std::mt19937 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = oracles::random_spd(8, rng);
        SolverState joint = random_state(a, rng);
        SolverState reference = joint;
        const std::size_t i = trial % 7;
        const std::size_t j = i + 1 + (trial % (7 - i));
        twod_dspm_step(a, unit_vector(8, i), unit_vector(8, j), joint);
        projection_step(a, IndexSet::pair_of(i, j), reference);
        for (std::size_t k = 0; k < 8; ++k) {
            CHECK(joint.x[k] == doctest::Approx(reference.x[k]).epsilon(1e-12));
            CHECK(joint.r[k] == doctest::Approx(reference.r[k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("twod_dspm_step rejects dependent directions") {
    std::mt19937 rng(43);
    const auto a = oracles::random_spd(4, rng);
    SolverState state = random_state(a, rng);
    CHECK_THROWS_AS(twod_dspm_step(a, unit_vector(4, 2), unit_vector(4, 2), state),
                    DependentDirectionsError);
    Vector v2 = unit_vector(4, 1);
    for (double& v : v2) v *= -3.0;
    CHECK_THROWS_AS(twod_dspm_step(a, unit_vector(4, 1), v2, state), DependentDirectionsError);
}

TEST_CASE("sweep: cyclic strategy reproduces a textbook Gauss-Seidel sweep") {
    std::mt19937 rng(47);
    const auto a = oracles::random_spd(10, rng);
    const auto dense = oracles::dense_of(a);
    const Vector b = oracles::random_vector(10, rng);
    const Vector x0 = oracles::random_vector(10, rng);

    SolverState state = make_state(a, b, x0);
    sweep(a, SelectionStrategy::cyclic(), state);

    Vector reference = x0;
    oracles::gauss_seidel_sweep(dense, 10, b, reference);
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(state.x[i] == doctest::Approx(reference[i]).epsilon(1e-12));
    }
}

TEST_CASE("sweep: full-space greedy solves in the first inner step") {
    std::mt19937 rng(53);
    const auto a = oracles::random_spd(12, rng);
    const auto dense = oracles::dense_of(a);
    const Vector b = oracles::random_vector(12, rng);
    const Vector x_star = oracles::gauss_solve(dense, 12, b);

    SolverState state = make_state(a, b, Vector(12, 0.0));
    sweep(a, SelectionStrategy::greedy(12), state);
    for (std::size_t i = 0; i < 12; ++i) {
        CHECK(state.x[i] == doctest::Approx(x_star[i]).epsilon(1e-10));
    }
    CHECK(norm2(state.r) <= 1e-10 * norm2(b));
}

TEST_CASE("sweep: zero initial residual is a fixed point") {
    const auto spec = build_example1(20);
    const Vector e = reference_solution(spec);
    SolverState state = make_state(*spec.op, spec.b, e);
    // b was formed as A e by the same matvec, so the residual is exactly zero
    REQUIRE(norm_inf(state.r) == 0.0);
    for (const auto strategy : {SelectionStrategy::greedy(3), SelectionStrategy::gap(7),
                                SelectionStrategy::cyclic()}) {
        SolverState copy = state;
        sweep(*spec.op, strategy, copy);
        CHECK(copy.x == e);
    }
}

TEST_CASE("sweep: double-successive kernel needs a pair strategy") {
    const auto id = DenseSpd::identity(4);
    SolverState state = make_state(id, {1.0, 1.0, 1.0, 1.0}, {0.0, 0.0, 0.0, 0.0});
    CHECK_THROWS_AS(sweep(id, SelectionStrategy::cyclic(), state, StepKernel::double_successive),
                    std::invalid_argument);
    CHECK_NOTHROW(sweep(id, SelectionStrategy::gap(2), state, StepKernel::double_successive));
}

TEST_CASE("solve: converges to the known solution at tight tolerance") {
    const auto spec = build_example1(50);
    const auto result =
        solve(*spec.op, spec.b, spec.x0, SelectionStrategy::greedy(3), {1e-10, 1000});
    REQUIRE(result.summary.converged);
    const Vector e = reference_solution(spec);
    double err = 0.0;
    for (std::size_t i = 0; i < 50; ++i) err = std::max(err, std::abs(result.state.x[i] - e[i]));
    CHECK(err <= 1e-8);
}

TEST_CASE("solve: sweep count and history semantics") {
    const auto spec = build_example2(40);
    const StoppingRule rule{1e-6, 500};
    const auto result = solve(*spec.op, spec.b, spec.x0, SelectionStrategy::greedy(2), rule);
    REQUIRE(result.summary.converged);
    CHECK(result.summary.sweeps == result.state.history.size());
    // every sweep but the last was above tolerance, the last below
    for (std::size_t k = 0; k + 1 < result.state.history.size(); ++k) {
        CHECK(result.state.history[k].dx_inf >= rule.tol);
    }
    CHECK(result.state.history.back().dx_inf < rule.tol);
    CHECK(result.summary.final_dx_inf == result.state.history.back().dx_inf);

    // the engine compares iterates one full sweep apart: manual sweeps agree
    SolverState manual = make_state(*spec.op, spec.b, spec.x0);
    for (std::size_t k = 0; k < result.summary.sweeps; ++k) {
        const Vector before = manual.x;
        sweep(*spec.op, SelectionStrategy::greedy(2), manual);
        double dx = 0.0;
        for (std::size_t i = 0; i < before.size(); ++i) {
            dx = std::max(dx, std::abs(manual.x[i] - before[i]));
        }
        CHECK(dx == result.state.history[k].dx_inf);
    }
}

TEST_CASE("solve: hitting the sweep cap reports rather than throws") {
    const auto spec = build_example2(60);
    const auto result = solve(*spec.op, spec.b, spec.x0, SelectionStrategy::cyclic(), {1e-14, 3});
    CHECK_FALSE(result.summary.converged);
    CHECK(result.summary.sweeps == 3);
    CHECK(result.state.history.size() == 3);
}

TEST_CASE("solve: maintained residual stays consistent with b - A x") {
    const auto spec = build_example1(200);
    const auto result =
        solve(*spec.op, spec.b, spec.x0, SelectionStrategy::greedy(4), {1e-8, 1000});
    const Vector recomputed_ax = spec.op->matvec(result.state.x);
    double drift = 0.0;
    for (std::size_t i = 0; i < 200; ++i) {
        drift = std::max(drift, std::abs(spec.b[i] - recomputed_ax[i] - result.state.r[i]));
    }
    CHECK(drift <= 1e-8 * norm_inf(spec.b));
}

TEST_CASE("monotone A-norm error and nesting across random steps") {
    std::mt19937 rng(59);
    for (int trial = 0; trial < 25; ++trial) {
        const auto a = oracles::random_spd(12, rng);
        const auto dense = oracles::dense_of(a);
        const Vector b = oracles::random_vector(12, rng);
        const Vector x0 = oracles::random_vector(12, rng);
        const Vector x_star = oracles::gauss_solve(dense, 12, b);

        SolverState state = make_state(a, b, x0);

        // a few random steps never increase the A-norm of the error
        std::uniform_int_distribution<std::size_t> pick(0, 11);
        Vector d(12);
        for (int step = 0; step < 4; ++step) {
            for (std::size_t i = 0; i < 12; ++i) d[i] = x_star[i] - state.x[i];
            const double before = oracles::a_norm_sq_dense(dense, 12, d);
            std::vector<std::size_t> idx{pick(rng)};
            while (idx.size() < 3) {
                const std::size_t c = pick(rng);
                if (std::find(idx.begin(), idx.end(), c) == idx.end()) idx.push_back(c);
            }
            std::sort(idx.begin(), idx.end());
            projection_step(a, IndexSet(idx), state);
            for (std::size_t i = 0; i < 12; ++i) d[i] = x_star[i] - state.x[i];
            const double after = oracles::a_norm_sq_dense(dense, 12, d);
            CHECK(after <= before * (1.0 + 1e-12) + 1e-12);
        }

        // nesting: a superset subspace decreases at least as much
        SolverState s1 = make_state(a, b, x0);
        SolverState s2 = s1;
        const double d1 = projection_step(a, IndexSet({2, 7}), s1);
        const double d2 = projection_step(a, IndexSet({2, 5, 7, 9}), s2);
        CHECK(d2 >= d1 - 1e-12);
    }
}

TEST_CASE("optimality: perturbations inside the subspace cannot beat the step") {
    std::mt19937 rng(61);
    const auto a = oracles::random_spd(9, rng);
    const auto dense = oracles::dense_of(a);
    const Vector b = oracles::random_vector(9, rng);
    const Vector x0 = oracles::random_vector(9, rng);
    const Vector x_star = oracles::gauss_solve(dense, 9, b);

    SolverState state = make_state(a, b, x0);
    const std::vector<std::size_t> sel{1, 4, 6};
    projection_step(a, IndexSet(sel), state);

    Vector d(9);
    for (std::size_t i = 0; i < 9; ++i) d[i] = x_star[i] - state.x[i];
    const double optimal = std::sqrt(oracles::a_norm_sq_dense(dense, 9, d));

    for (int trial = 0; trial < 20; ++trial) {
        Vector perturbed = state.x;
        for (const std::size_t i : sel) perturbed[i] += oracles::random_vector(1, rng)[0];
        for (std::size_t i = 0; i < 9; ++i) d[i] = x_star[i] - perturbed[i];
        const double worse = std::sqrt(oracles::a_norm_sq_dense(dense, 9, d));
        CHECK(worse >= optimal - 1e-10);
    }
}

TEST_CASE("decrease_identity_check: no-op and full-space edge cases") {
    std::mt19937 rng(67);
    const auto a = oracles::random_spd(8, rng);
    const auto dense = oracles::dense_of(a);
    const Vector b = oracles::random_vector(8, rng);
    const Vector x0 = oracles::random_vector(8, rng);
    const Vector x_star = oracles::gauss_solve(dense, 8, b);

    // full-space step: the decrease is the entire squared A-norm error
    SolverState state = make_state(a, b, x0);
    Vector d(8);
    for (std::size_t i = 0; i < 8; ++i) d[i] = x_star[i] - x0[i];
    const double total = oracles::a_norm_sq_dense(dense, 8, d);
    const double decrease =
        projection_step(a, IndexSet({0, 1, 2, 3, 4, 5, 6, 7}), state);
    CHECK(decrease == doctest::Approx(total).epsilon(1e-9));
    CHECK(decrease_identity_check(a, x_star, x0, state.x, decrease));

    // zero selected residual: zero decrease, iterate unchanged
    const auto id = DenseSpd::identity(3);
    SolverState fixed = make_state(id, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.0});
    const double zero_decrease = projection_step(id, IndexSet({0, 2}), fixed);
    CHECK(zero_decrease == 0.0);
    CHECK(decrease_identity_check(id, Vector{0.0, 1.0, 0.0}, fixed.x, fixed.x, zero_decrease));
}

TEST_CASE("lambda_max_upper_bound brackets the spectrum") {
    std::mt19937 rng(71);
    const auto a = oracles::random_spd(20, rng);
    const double lambda = lambda_max_upper_bound(a);
    double trace = 0.0;
    double rayleigh = 0.0;
    for (std::size_t i = 0; i < 20; ++i) trace += a.entry(i, i);
    for (int trial = 0; trial < 20; ++trial) {
        const Vector v = oracles::random_vector(20, rng);
        rayleigh = std::max(rayleigh, a_norm_sq(a, v) / dot(v, v));
    }
    CHECK(lambda >= rayleigh * (1.0 - 1e-7));
    CHECK(lambda <= trace * (1.0 + 1e-5));
}

TEST_CASE("theorem3_bound_check: greedy steps on the band example") {
    const auto spec = build_example1(50);
    const double lambda = lambda_max_upper_bound(*spec.op);
    SolverState state = make_state(*spec.op, spec.b, spec.x0);
    for (int step = 0; step < 150; ++step) {
        const Vector r_before = state.r;
        const auto sel = top_m_indices(state.r, 3);
        const double s = projection_step(*spec.op, sel, state);
        CHECK(theorem3_bound_check(*spec.op, r_before, 3, lambda, s));
    }
}

TEST_CASE("theorem3_bound_check: trivial cases") {
    const auto id = DenseSpd::identity(4);
    CHECK(theorem3_bound_check(id, Vector{0.0, 0.0, 0.0, 0.0}, 2, 1.0, 0.0));

    // m = 1 on the identity: s = max r_i^2 >= ||r||^2 / n
    std::mt19937 rng(73);
    const Vector r = oracles::random_vector(4, rng);
    SolverState state = make_state(id, r, Vector(4, 0.0));
    const auto sel = top_m_indices(r, 1);
    const double s = projection_step(id, sel, state);
    CHECK(theorem3_bound_check(id, r, 1, 1.0, s));
}
