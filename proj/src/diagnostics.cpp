#include "spm/diagnostics.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace spm {

double a_norm_sq(const SpdOperator& op, const Vector& v) {
    Vector av = op.matvec(v);
    return dot(av, v);
}

double lambda_max_upper_bound(const SpdOperator& op, double rel_tol, std::size_t max_iters) {
    const std::size_t n = op.dim();
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> unif(0.5, 1.5);
    Vector v(n);
    for (double& vi : v) vi = unif(rng);

    double scale = norm2(v);
    for (double& vi : v) vi /= scale;

    Vector av;
    double lambda = 0.0;
    for (std::size_t it = 0; it < max_iters; ++it) {
        op.matvec(v, av);
        const double next = dot(av, v);  // Rayleigh quotient of the unit vector v
        const double nrm = norm2(av);
        if (nrm == 0.0) return 0.0;  // only possible for the zero operator
        for (std::size_t i = 0; i < n; ++i) v[i] = av[i] / nrm;
        if (it > 0 && std::abs(next - lambda) <= rel_tol * std::abs(next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return lambda * (1.0 + 1e-6);
}

bool decrease_identity_check(const SpdOperator& op, const Vector& x_star,
                             const Vector& x_before, const Vector& x_after, double s_returned,
                             double rel_tol) {
    const std::size_t n = op.dim();
    if (x_star.size() != n || x_before.size() != n || x_after.size() != n) {
        throw std::invalid_argument("iterate length mismatch");
    }
    Vector d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = x_star[i] - x_before[i];
    const double before = a_norm_sq(op, d);
    for (std::size_t i = 0; i < n; ++i) d[i] = x_star[i] - x_after[i];
    const double after = a_norm_sq(op, d);
    const double drop = before - after;
    // Roundoff in forming the drop scales with the error size itself.
    const double slack = rel_tol * std::max({std::abs(drop), std::abs(s_returned), before});
    return std::abs(drop - s_returned) <= slack;
}

bool theorem3_bound_check(const SpdOperator& op, const Vector& r, std::size_t m,
                          double lambda_max, double s) {
    const std::size_t n = op.dim();
    if (r.size() != n) throw std::invalid_argument("residual length mismatch");
    if (m == 0 || m > n) throw std::invalid_argument("subspace dimension out of range");
    if (!(lambda_max > 0.0)) throw std::invalid_argument("lambda_max must be positive");
    const double r2 = dot(r, r);
    const double bound = static_cast<double>(m) / (static_cast<double>(n) * lambda_max) * r2;
    return s >= bound - 1e-12;
}

}  // namespace spm
