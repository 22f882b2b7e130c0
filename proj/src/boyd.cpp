#include "opnorm/boyd.hpp"

#include <cmath>

#include "opnorm/diagnostics.hpp"

namespace opnorm {

Vec uniform_start(int n, double r) {
    return Vec(n, std::pow(static_cast<double>(n), -1.0 / r));
}

Vec apply_S(const SymMatrix& A, const NormParams& params, const Vec& x) {
    if (linf_norm(x) == 0.0) throw DomainError("apply_S: zero input vector");
    Vec y = matvec(A, x);
    for (double& t : y) t = psi(params.p, t);
    Vec s = matvec(A, y);
    for (double& t : s) t = psi(params.r_star, t);
    return s;
}

Vec apply_W(const SymMatrix& A, const NormParams& params, const Vec& x) {
    Vec s = apply_S(A, params, x);
    double ns = lq_norm(params.r, s);
    if (ns == 0.0) throw DegenerateError("apply_W: S x is the zero vector");
    for (double& t : s) t /= ns;
    return s;
}

double fixed_point_residual(const SymMatrix& A, const NormParams& params, const Vec& v) {
    Vec s = apply_S(A, params, v);
    double gamma = lq_norm(params.p, matvec(A, v));
    double factor = std::pow(gamma, params.p * (params.r_star - 1.0));
    double worst = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        worst = std::max(worst, std::abs(s[i] - factor * v[i]));
    }
    return worst;
}

PowerResult compute_norm(const SymMatrix& A, const NormParams& params, const PowerOptions& opts) {
    const int n = A.n();
    if (!(opts.tol > 0.0)) throw DomainError("compute_norm: tol must be positive");
    if (opts.max_iter < 1) throw DomainError("compute_norm: max_iter must be >= 1");
    if (A.is_zero()) throw DegenerateError("compute_norm: zero matrix (degenerate)");

    bool n2_positive_offdiag = (n == 2) && A(0, 1) > 0.0;
    if (!n2_positive_offdiag) {
        IrreducibilityReport rep = irreducible(A);
        if (!rep.irreducible) throw ReducibleError("compute_norm: " + rep.describe());
    }

    Vec v;
    if (opts.start) {
        if (opts.start->size() != static_cast<size_t>(n)) {
            throw DimensionError("compute_norm: start vector length mismatch");
        }
        for (double t : *opts.start) {
            if (!(t > 0.0)) throw DomainError("compute_norm: start vector must be positive");
        }
        v = *opts.start;
        double nv = lq_norm(params.r, v);
        for (double& t : v) t /= nv;
    } else {
        v = uniform_start(n, params.r);
    }

    const double fp_exponent = params.p * (params.r_star - 1.0);
    double gamma_prev = -1.0;
    double gamma = 0.0;
    double residual = 0.0;
    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        Vec y = matvec(A, v);
        gamma = lq_norm(params.p, y);
        if (gamma == 0.0) throw DegenerateError("compute_norm: zero iterate (degenerate)");
        for (double& t : y) t = psi(params.p, t);
        Vec s = matvec(A, y);
        for (double& t : s) t = psi(params.r_star, t);

        double factor = std::pow(gamma, fp_exponent);
        residual = 0.0;
        for (int i = 0; i < n; ++i) {
            residual = std::max(residual, std::abs(s[i] - factor * v[i]));
        }
        bool gamma_settled =
            gamma_prev >= 0.0 && std::abs(gamma - gamma_prev) <= opts.tol * std::max(1.0, gamma);
        if (residual <= opts.tol && gamma_settled) {
            return PowerResult{gamma, v, iter, residual};
        }
        gamma_prev = gamma;

        double ns = lq_norm(params.r, s);
        if (ns == 0.0) throw DegenerateError("compute_norm: zero iterate (degenerate)");
        for (double& t : s) t /= ns;
        v = std::move(s);
    }
    throw ConvergenceError("compute_norm: no_convergence after " + std::to_string(opts.max_iter) +
                           " iterations (residual " + std::to_string(residual) + ")");
}

Vec apply_B(const SymMatrix& A, const NormParams& params, const Vec& v, const Vec& x) {
    for (double t : v) {
        if (!(t > 0.0)) throw DomainError("apply_B: v must have positive entries");
    }
    Vec av = matvec(A, v);
    Vec ax = matvec(A, x);
    for (size_t j = 0; j < ax.size(); ++j) {
        ax[j] *= std::pow(std::abs(av[j]), params.p - 2.0);
    }
    Vec b = matvec(A, ax);
    for (size_t i = 0; i < b.size(); ++i) {
        b[i] *= std::pow(v[i], 2.0 - params.r);
    }
    return b;
}

double v_inner(double r, const Vec& v, const Vec& x, const Vec& y) {
    if (v.size() != x.size() || x.size() != y.size()) throw DimensionError("v_inner: size mismatch");
    double s = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        s += std::pow(std::abs(v[i]), r - 2.0) * x[i] * y[i];
    }
    return s;
}

}  // namespace opnorm
