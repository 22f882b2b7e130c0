#pragma once

#include <optional>

#include "opnorm/core.hpp"

namespace opnorm {

struct PowerOptions {
    double tol = 1e-10;
    int max_iter = 10000;
    // Starting vector with positive entries; defaults to n^{-1/r} 1.
    std::optional<Vec> start;
};

struct PowerResult {
    double gamma = 0.0;   // the r->p norm
    Vec v;                // maximizer, ||v||_r = 1, all entries positive
    int iterations = 0;
    double residual = 0.0;  // linf fixed-point defect at v
};

Vec uniform_start(int n, double r);

/// S x = Psi_{r*}(A^T Psi_p(A x)); A is symmetric so A^T = A.
Vec apply_S(const SymMatrix& A, const NormParams& params, const Vec& x);

/// W x = S x / ||S x||_r.
Vec apply_W(const SymMatrix& A, const NormParams& params, const Vec& x);

/// linf distance between S v and gamma(v)^{p(r*-1)} v, where gamma(v) = ||A v||_p.
double fixed_point_residual(const SymMatrix& A, const NormParams& params, const Vec& v);

/// Nonlinear power iteration v <- W v from a positive start. Requires A^T A
/// irreducible (2x2 matrices with a positive off-diagonal entry are accepted
/// even though their support graph is bipartite: with n = 2 the iteration from
/// any positive start is easily seen to reach a global maximizer). Stops when
/// both the relative change of the gamma estimate and the fixed-point residual
/// fall below tol.
PowerResult compute_norm(const SymMatrix& A, const NormParams& params,
                         const PowerOptions& opts = {});

/// Linearization of S at the maximizer v, applied to x:
/// B x = |v|^{2-r} * A^T(|A v|^{p-2} * (A x)) (entrywise products).
Vec apply_B(const SymMatrix& A, const NormParams& params, const Vec& v, const Vec& x);

/// The inner product [x, y] = <|v|^{r-2} * x, y> that makes B self-adjoint.
double v_inner(double r, const Vec& v, const Vec& x, const Vec& y);

}  // namespace opnorm
