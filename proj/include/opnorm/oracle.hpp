#pragma once

#include "opnorm/core.hpp"

namespace opnorm {

enum class OracleMethod { grid, multistart_gradient, analytic };

struct OracleResult {
    double value = 0.0;
    Vec argmax;
    OracleMethod method = OracleMethod::grid;
};

/// Exhaustive scan of the nonnegative part of the r-sphere (angle
/// parameterization, resolution points per axis), followed by one local
/// gradient polish. Restricting to the nonnegative orthant is valid because
/// the maximizer of a nonnegative matrix is nonnegative. n <= 3 only.
OracleResult maximize_grid(const SymMatrix& A, const NormParams& params, int resolution);

/// Projected gradient ascent of f(x) = ||Ax||_p / ||x||_r from `starts`
/// random positive start vectors; n <= 12, starts >= 20. For irreducible
/// nonnegative A the positive critical point is unique, so the best local
/// optimum is the norm.
OracleResult maximize_multistart(const SymMatrix& A, const NormParams& params, int starts,
                                 double tol);

/// Multistart projected gradient ascent of x^T A x over ||x||_r <= 1 (the
/// direct quadratic-form objective, independent of the power-iteration path).
OracleResult maximize_quadratic_form(const SymMatrix& A, double r, int starts, double tol);

enum class AnalyticKind { perm, mean_matrix };

struct AnalyticNorm {
    double value = 0.0;
    bool lower_bound = false;
};

/// perm: the n-cycle permutation-type matrix has norm n^{1/p-1/r}.
/// mean_matrix: mu (J_n - I_n) evaluated at the uniform vector,
/// mu (n-1) n^{1/p-1/r}; exact for r = p = 2, reported as a lower bound
/// otherwise.
AnalyticNorm analytic_norm(AnalyticKind kind, int n, double mu, const NormParams& params);

}  // namespace opnorm
