#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "opnorm/core.hpp"

namespace opnorm {

struct IrreducibilityReport {
    enum class Reason { none, disconnected, bipartite };

    bool irreducible = false;
    Reason reason = Reason::none;
    // disconnected: part_a = one component, part_b = the rest;
    // bipartite: the two color classes.
    std::vector<int> part_a;
    std::vector<int> part_b;

    std::string describe() const;
};

struct RegularityReport {
    double eps_achieved = 0.0;
    double eps_target = 0.0;
    bool almost_regular = false;
    long wb_samples = 0;
    long wb_violations = 0;
    double K_hat = 1.0;
};

struct MaximizerReport {
    enum class Regime { p_lt_r, p_eq_r };

    double linf_dist = 0.0;
    double bound = 0.0;
    bool within_bound = false;
    Regime regime = Regime::p_lt_r;
};

/// Row sum of row i (d_n(i)), or the partial sum over an index set V.
double degree(const SymMatrix& A, int i);
double degree(const SymMatrix& A, int i, std::span<const int> V);

/// eps_achieved = max_i |d_n(i) - n mu| / (n mu); almost_regular compares it
/// against eps_target.
RegularityReport almost_regular(const SymMatrix& A, double mu, double eps_target);

/// For each tested subset V, collects the exception set
/// V_ex = { i not in V : |d(i,V) - mu |V|| > n mu eps } and counts a violation
/// when max_i d(i, V_ex) > n delta. Exhaustive over all subsets when n <= 15;
/// otherwise num_subsets random subsets plus the n degree-sorted prefixes.
RegularityReport well_balanced_sampled(const SymMatrix& A, double mu, double eps, double delta,
                                       int num_subsets, uint64_t seed);

/// The default exception-set budget delta_n = mu * delta_2n with
/// delta_1n = exp(-n eps^2 mu / (4.9 K)) and delta_2n = delta_1n log(n)/sqrt(mu).
double default_delta_n(int n, double mu, double eps, double K);

/// max(offdiag sample variance / sample mean, 1).
double estimate_K_hat(const SymMatrix& A);

/// A^T A is irreducible iff the support graph is connected and has an odd
/// closed walk (non-bipartite, where a positive diagonal entry counts as a
/// self-loop). Returns a witness partition when the check fails.
IrreducibilityReport irreducible(const SymMatrix& A);

/// linf distance of the maximizer to the uniform vector n^{-1/r} 1, compared
/// against sqrt(20K) p/(r-p) n^{-1/r} sqrt(log n/(n mu)) for p < r and
/// sqrt(80K) (4 + 1/(r-1)) n^{-1/r} sqrt(log n/(n mu)) for p = r.
MaximizerReport maximizer_bound(const SymMatrix& A, const NormParams& params, const Vec& maximizer,
                                double mu, double K);

}  // namespace opnorm
