#include "spm/problems.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spm/solver.hpp"

namespace spm {

namespace {

// n = 1024 (the published grid) densifies to 8 MB; anything near that is
// still cheap to factorize once at construction.
constexpr std::size_t kCholeskyCheckLimit = 1100;

ProblemSpec finish_problem(std::string name, std::shared_ptr<const SpdOperator> op,
                           bool symmetrized) {
    ProblemSpec spec;
    spec.name = std::move(name);
    spec.op = std::move(op);
    spec.symmetrized = symmetrized;
    const std::size_t n = spec.op->dim();
    Vector ones(n, 1.0);
    spec.b = spec.op->matvec(ones);
    spec.x0.resize(n);
    for (std::size_t i = 0; i < n; ++i) spec.x0[i] = 0.001 * static_cast<double>(i + 1);
    return spec;
}

ProblemSpec build_band_example(std::string name, std::size_t n, double diag) {
    if (n < 2) throw std::invalid_argument("dimension must be at least 2");
    auto op = std::make_shared<BandPlusConstantSpd>(n, diag, static_cast<double>(n), 0.5);
    if (!op->is_gershgorin_dominant()) {
        throw std::runtime_error(name + ": matrix is not diagonally dominant");
    }
    return finish_problem(std::move(name), std::move(op), false);
}

}  // namespace

PdeCoefficients PdeCoefficients::case_preset(int case_id) {
    switch (case_id) {
        case 1:
            return {[](double, double) { return 0.0; },
                    [](double x, double y) { return 10.0 * (x + y); },
                    [](double x, double y) { return 10.0 * (x - y); },
                    [](double, double) { return 0.0; }};
        case 2:
            return {[](double x, double y) { return -10.0 * (x + y); },
                    [](double x, double y) { return -10.0 * (x - y); },
                    [](double, double) { return 1.0; },
                    [](double, double) { return 0.0; }};
        case 3:
            return {[](double x, double y) { return 10.0 * std::exp(x * y); },
                    [](double x, double y) { return 10.0 * std::exp(-x * y); },
                    [](double, double) { return 0.0; },
                    [](double, double) { return 0.0; }};
        default:
            throw std::invalid_argument("case must be 1, 2, or 3");
    }
}

ProblemSpec build_example1(std::size_t n) {
    return build_band_example("example1(n=" + std::to_string(n) + ")", n,
                              4.0 * static_cast<double>(n));
}

ProblemSpec build_example2(std::size_t n) {
    return build_band_example("example2(n=" + std::to_string(n) + ")", n,
                              3.0 * static_cast<double>(n));
}

ProblemSpec build_convection_diffusion(const PdeCoefficients& coeffs, std::size_t grid,
                                       const std::string& name) {
    if (grid < 2) throw std::invalid_argument("grid must be at least 2");
    const std::size_t g = grid;
    const std::size_t n = g * g;
    const double h = 1.0 / static_cast<double>(g + 1);
    const double h2 = h * h;

    // Assemble (M + M^T)/2 directly: every stencil entry contributes half to
    // (i, j) and half to (j, i); from_triplets sums the pairs.
    std::vector<CscSpd::Triplet> triplets;
    triplets.reserve(10 * n);
    auto push = [&triplets](std::size_t i, std::size_t j, double v) {
        triplets.push_back({i, j, 0.5 * v});
        triplets.push_back({j, i, 0.5 * v});
    };

    double max_skew = 0.0;
    for (std::size_t iy = 1; iy <= g; ++iy) {
        for (std::size_t ix = 1; ix <= g; ++ix) {
            const std::size_t k = (iy - 1) * g + (ix - 1);
            const double x = static_cast<double>(ix) * h;
            const double y = static_cast<double>(iy) * h;
            const double a = coeffs.a(x, y);
            const double b = coeffs.b(x, y);
            const double c = coeffs.c(x, y);

            push(k, k, 4.0 / h2 + c);
            if (ix < g) push(k, k + 1, -1.0 / h2 + a / (2.0 * h));      // east
            if (ix > 1) push(k, k - 1, -1.0 / h2 - a / (2.0 * h));      // west
            if (iy < g) push(k, k + g, -1.0 / h2 + b / (2.0 * h));      // north
            if (iy > 1) push(k, k - g, -1.0 / h2 - b / (2.0 * h));      // south
            max_skew = std::max({max_skew, std::abs(a / h), std::abs(b / h)});
        }
    }

    auto op = std::make_shared<CscSpd>(CscSpd::from_triplets(n, std::move(triplets)));

    if (n <= kCholeskyCheckLimit) {
        std::vector<double> dense = densify(*op).data();
        try {
            cholesky_factorize(dense, n);
        } catch (const NotPositiveDefiniteError& e) {
            throw std::runtime_error(name + ": symmetrized matrix is not positive definite (" +
                                     e.what() + ")");
        }
    }

    const bool symmetrized = max_skew > 0.0;
    return finish_problem(name, std::move(op), symmetrized);
}

ProblemSpec build_example3(int case_id, std::size_t grid) {
    if (case_id < 1 || case_id > 3) throw std::invalid_argument("case must be 1, 2, or 3");
    return build_convection_diffusion(
        PdeCoefficients::case_preset(case_id), grid,
        "example3(case=" + std::to_string(case_id) + ",grid=" + std::to_string(grid) + ")");
}

ProblemSpec make_problem(std::string name, std::shared_ptr<const SpdOperator> op,
                         bool symmetrized) {
    return finish_problem(std::move(name), std::move(op), symmetrized);
}

Vector reference_solution(const ProblemSpec& spec) { return Vector(spec.dim(), 1.0); }

}  // namespace spm
