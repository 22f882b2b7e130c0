#pragma once

#include <cstdint>
#include <vector>

#include "opnorm/errors.hpp"

namespace opnorm {

using Vec = std::vector<double>;

/// Exponent pair (r, p) with 1 < p <= r < inf and the Holder conjugate
/// r_star = r/(r-1).
struct NormParams {
    double r;
    double p;
    double r_star;

    NormParams(double r_, double p_);
};

/// Dense symmetric matrix with nonnegative entries. Immutable after
/// construction; safe to share across threads.
class SymMatrix {
  public:
    // Row-major n*n entries; validates symmetry and nonnegativity.
    SymMatrix(int n, std::vector<double> entries);

    static SymMatrix zero(int n);
    static SymMatrix identity(int n);
    // mu * (J_n - I_n): off-diagonal entries mu, zero diagonal.
    static SymMatrix mean_matrix(int n, double mu);
    // Adjacency matrix from an edge list (0-based, undirected).
    static SymMatrix adjacency(int n, const std::vector<std::pair<int, int>>& edges);

    int n() const { return n_; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    bool zero_diagonal() const { return zero_diagonal_; }
    double row_sum(int i) const;
    double max_entry() const;
    bool is_zero() const;
    const std::vector<double>& data() const { return a_; }

    // Off-diagonal sample mean and variance (population), used by diagnostics.
    void offdiag_moments(double& mean, double& var) const;

  private:
    int n_;
    std::vector<double> a_;
    bool zero_diagonal_;
};

/// Symmetric matrix with entries of either sign (the centered matrix
/// A - mu*J + mu*I lives here).
struct CenteredMatrix {
    int n = 0;
    std::vector<double> a;  // row-major

    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
    double row_sum(int i) const;
};

/// psi_q(t) = |t|^(q-1) sgn(t), with sgn(0) = 0. Total on the reals; q = 1
/// yields sgn(t).
double psi(double q, double t);

Vec big_psi(double q, const Vec& x);

/// (sum |x_i|^q)^(1/q). The maximum entry is factored out before
/// exponentiation so large q does not overflow.
double lq_norm(double q, const Vec& x);

double linf_norm(const Vec& x);

double holder_conjugate(double r);

/// Weighted norm (sum v_i^(r-2) x_i^2)^(1/2); rejects nonpositive weights.
double v_norm(double r, const Vec& v, const Vec& x);

Vec matvec(const SymMatrix& A, const Vec& x);
Vec matvec(const CenteredMatrix& A, const Vec& x);

double dot(const Vec& x, const Vec& y);

}  // namespace opnorm
