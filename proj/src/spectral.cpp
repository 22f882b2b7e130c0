#include "opnorm/spectral.hpp"

#include <cmath>

#include "opnorm/rng.hpp"

namespace opnorm {

namespace {

void project_out_ones(Vec& x) {
    double mean = 0.0;
    for (double t : x) mean += t;
    mean /= static_cast<double>(x.size());
    for (double& t : x) t -= mean;
}

void project_out(Vec& x, const Vec& u) {  // u must be l2-normalized
    double c = dot(x, u);
    for (size_t i = 0; i < x.size(); ++i) x[i] -= c * u[i];
}

double l2_normalize(Vec& x) {
    double nx = std::sqrt(dot(x, x));
    if (nx > 0.0) {
        for (double& t : x) t /= nx;
    }
    return nx;
}

Vec seeded_start(int n, uint64_t stream) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = uniform01(0x5eedu, stream, i) - 0.5;
    return x;
}

}  // namespace

double lambda_big2(const SymMatrix& A, double tol, int max_iter) {
    const int n = A.n();
    if (n < 2) throw DomainError("lambda_big2: n must be >= 2");
    if (A.is_zero()) return 0.0;

    Vec x = seeded_start(n, 1);
    project_out_ones(x);
    if (l2_normalize(x) == 0.0) return 0.0;

    double lambda = 0.0;
    for (int k = 0; k < max_iter; ++k) {
        Vec y = matvec(A, x);
        Vec z = matvec(A, y);
        project_out_ones(z);
        double lambda_new = dot(x, z);  // Rayleigh quotient of P A^T A P
        if (l2_normalize(z) == 0.0) return 0.0;
        x = std::move(z);
        if (k > 0 && std::abs(lambda_new - lambda) <= tol * std::max(1.0, std::abs(lambda_new))) {
            lambda = lambda_new;
            break;
        }
        lambda = lambda_new;
    }
    return std::sqrt(std::max(lambda, 0.0));
}

std::pair<double, Vec> lambda2_B_with_vector(const SymMatrix& A, const NormParams& params,
                                             const Vec& v, double tol, int max_iter) {
    const int n = A.n();
    for (double t : v) {
        if (!(t > 0.0)) throw DomainError("lambda2_B: v must have positive entries");
    }
    Vec av = matvec(A, v);
    Vec w(n);
    for (int i = 0; i < n; ++i) w[i] = std::pow(std::abs(av[i]), params.p - 2.0);
    Vec dinv(n), d(n);
    for (int i = 0; i < n; ++i) {
        d[i] = std::pow(v[i], (params.r - 2.0) / 2.0);
        dinv[i] = 1.0 / d[i];
    }
    Vec u1(n);  // top eigenvector D v of C
    for (int i = 0; i < n; ++i) u1[i] = d[i] * v[i];
    l2_normalize(u1);

    auto apply_C = [&](const Vec& x) {
        Vec t(n);
        for (int i = 0; i < n; ++i) t[i] = dinv[i] * x[i];
        Vec y = matvec(A, t);
        for (int i = 0; i < n; ++i) y[i] *= w[i];
        Vec z = matvec(A, y);
        for (int i = 0; i < n; ++i) z[i] *= dinv[i];
        return z;
    };

    Vec x = seeded_start(n, 2);
    project_out(x, u1);
    if (l2_normalize(x) == 0.0) return {0.0, Vec(n, 0.0)};

    double lambda = 0.0;
    for (int k = 0; k < max_iter; ++k) {
        Vec z = apply_C(x);
        project_out(z, u1);
        double lambda_new = dot(x, z);
        if (l2_normalize(z) == 0.0) {
            lambda = 0.0;
            break;
        }
        x = std::move(z);
        if (k > 0 && std::abs(lambda_new - lambda) <= tol * std::max(1.0, std::abs(lambda_new))) {
            lambda = lambda_new;
            break;
        }
        lambda = lambda_new;
    }
    // back to B coordinates: eigenvectors of B are D^{-1} (eigenvectors of C)
    Vec b_vec(n);
    for (int i = 0; i < n; ++i) b_vec[i] = dinv[i] * x[i];
    return {std::max(lambda, 0.0), b_vec};
}

double lambda2_B(const SymMatrix& A, const NormParams& params, const Vec& v, double tol,
                 int max_iter) {
    return lambda2_B_with_vector(A, params, v, tol, max_iter).first;
}

SpectralReport check_bounds(const SymMatrix& A, const NormParams& params,
                            const PowerResult& result, double mu, double sigma2, double diag_mean,
                            double diag_var) {
    if (!(mu > 0.0)) throw DomainError("check_bounds: mu must be positive");
    const int n = A.n();
    SpectralReport rep;
    rep.lambda_big2 = lambda_big2(A);
    rep.lambda2_B = lambda2_B(A, params, result.v);
    rep.gamma_p = std::pow(result.gamma, params.p);
    rep.contraction_ratio = (params.p - 1.0) * rep.lambda2_B / ((params.r - 1.0) * rep.gamma_p);
    rep.gap_warning = rep.lambda2_B >= 0.99 * rep.gamma_p;

    double rhs =
        2.0 * std::pow(mu, params.p - 2.0) *
        std::pow(static_cast<double>(n), params.p * (params.r - 1.0) / params.r - 1.0) *
        rep.lambda_big2 * rep.lambda_big2;
    rep.lambda2_bound_ok = rep.lambda2_B <= rhs;

    double big2_rhs = 3.0 * std::sqrt(static_cast<double>(n)) * std::sqrt(sigma2) + mu;
    if (!A.zero_diagonal()) {
        big2_rhs += std::sqrt(2.0 * n * (diag_mean * diag_mean + diag_var));
    }
    rep.lambda_big2_bound_ok = rep.lambda_big2 <= big2_rhs;
    return rep;
}

}  // namespace opnorm
