#include "opnorm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "opnorm/rng.hpp"

namespace opnorm {

namespace {

std::string list_vertices(const std::vector<int>& v, size_t cap = 12) {
    std::ostringstream os;
    os << "{";
    for (size_t k = 0; k < v.size() && k < cap; ++k) {
        if (k) os << ",";
        os << v[k];
    }
    if (v.size() > cap) os << ",...";
    os << "}";
    return os.str();
}

}  // namespace

std::string IrreducibilityReport::describe() const {
    if (irreducible) return "irreducible";
    if (reason == Reason::disconnected) {
        return "disconnected: component " + list_vertices(part_a) + " has no edges to " +
               list_vertices(part_b);
    }
    return "bipartite: classes " + list_vertices(part_a) + " and " + list_vertices(part_b);
}

double degree(const SymMatrix& A, int i) {
    if (i < 0 || i >= A.n()) throw DimensionError("degree: index out of range");
    return A.row_sum(i);
}

double degree(const SymMatrix& A, int i, std::span<const int> V) {
    if (i < 0 || i >= A.n()) throw DimensionError("degree: index out of range");
    double s = 0.0;
    for (int j : V) {
        if (j < 0 || j >= A.n()) throw DimensionError("degree: set index out of range");
        s += A(i, j);
    }
    return s;
}

RegularityReport almost_regular(const SymMatrix& A, double mu, double eps_target) {
    if (!(mu > 0.0)) throw DomainError("almost_regular: mu must be positive");
    const int n = A.n();
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(A.row_sum(i) - n * mu));
    }
    RegularityReport rep;
    rep.eps_achieved = worst / (n * mu);
    rep.eps_target = eps_target;
    rep.almost_regular = rep.eps_achieved <= eps_target;
    return rep;
}

namespace {

// One well-balancedness probe; returns true when V witnesses a violation.
bool subset_violates(const SymMatrix& A, const std::vector<char>& in_V, long size_V, double mu,
                     double eps, double delta) {
    const int n = A.n();
    std::vector<int> exception;
    const double tol = n * mu * eps;
    for (int i = 0; i < n; ++i) {
        if (in_V[i]) continue;
        double d = 0.0;
        for (int j = 0; j < n; ++j) {
            if (in_V[j]) d += A(i, j);
        }
        if (std::abs(d - mu * static_cast<double>(size_V)) > tol) exception.push_back(i);
    }
    if (exception.empty()) return false;
    for (int i = 0; i < n; ++i) {
        double d = 0.0;
        for (int j : exception) d += A(i, j);
        if (d > n * delta) return true;
    }
    return false;
}

}  // namespace

RegularityReport well_balanced_sampled(const SymMatrix& A, double mu, double eps, double delta,
                                       int num_subsets, uint64_t seed) {
    if (!(mu > 0.0)) throw DomainError("well_balanced_sampled: mu must be positive");
    if (num_subsets < 1) throw DomainError("well_balanced_sampled: num_subsets must be >= 1");
    const int n = A.n();
    RegularityReport rep;
    rep.eps_target = eps;
    std::vector<char> in_V(n, 0);

    if (n <= 15) {
        const uint64_t total = 1ull << n;
        for (uint64_t mask = 0; mask < total; ++mask) {
            long size_V = 0;
            for (int i = 0; i < n; ++i) {
                in_V[i] = (mask >> i) & 1u;
                size_V += in_V[i];
            }
            ++rep.wb_samples;
            if (subset_violates(A, in_V, size_V, mu, eps, delta)) ++rep.wb_violations;
        }
        return rep;
    }

    // random subsets: uniform size, then a uniform subset of that size
    std::vector<int> perm(n);
    for (int s = 0; s < num_subsets; ++s) {
        std::iota(perm.begin(), perm.end(), 0);
        uint64_t ctr = 0;
        long size_V =
            1 + static_cast<long>(uniform01(seed, s, ctr++) * n);
        if (size_V > n) size_V = n;
        for (int i = 0; i < n - 1; ++i) {  // Fisher-Yates with keyed draws
            int j = i + static_cast<int>(uniform01(seed, s, ctr++) * (n - i));
            if (j >= n) j = n - 1;
            std::swap(perm[i], perm[j]);
        }
        std::fill(in_V.begin(), in_V.end(), 0);
        for (long k = 0; k < size_V; ++k) in_V[perm[k]] = 1;
        ++rep.wb_samples;
        if (subset_violates(A, in_V, size_V, mu, eps, delta)) ++rep.wb_violations;
    }

    // extremal candidates: prefixes of the degree-sorted vertex order
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> deg(n);
    for (int i = 0; i < n; ++i) deg[i] = A.row_sum(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return deg[a] > deg[b]; });
    std::fill(in_V.begin(), in_V.end(), 0);
    for (int k = 0; k < n; ++k) {
        in_V[order[k]] = 1;
        ++rep.wb_samples;
        if (subset_violates(A, in_V, k + 1, mu, eps, delta)) ++rep.wb_violations;
    }
    return rep;
}

double default_delta_n(int n, double mu, double eps, double K) {
    double d1 = std::exp(-n * eps * eps * mu / (4.9 * K));
    double d2 = d1 * std::log(static_cast<double>(n)) / std::sqrt(mu);
    return mu * d2;
}

double estimate_K_hat(const SymMatrix& A) {
    double mean = 0.0, var = 0.0;
    A.offdiag_moments(mean, var);
    if (!(mean > 0.0)) return 1.0;
    return std::max(var / mean, 1.0);
}

IrreducibilityReport irreducible(const SymMatrix& A) {
    const int n = A.n();
    IrreducibilityReport rep;

    // BFS 2-coloring of the support graph; a positive diagonal entry acts as
    // a self-loop and immediately defeats bipartiteness.
    std::vector<int> color(n, -1);
    std::queue<int> q;
    color[0] = 0;
    q.push(0);
    int visited = 1;
    bool odd_walk = A(0, 0) > 0.0;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w = 0; w < n; ++w) {
            if (A(u, w) <= 0.0) continue;
            if (w == u) {
                odd_walk = true;
                continue;
            }
            if (color[w] == -1) {
                color[w] = 1 - color[u];
                ++visited;
                if (A(w, w) > 0.0) odd_walk = true;
                q.push(w);
            } else if (color[w] == color[u]) {
                odd_walk = true;
            }
        }
    }

    if (visited < n) {
        rep.reason = IrreducibilityReport::Reason::disconnected;
        for (int i = 0; i < n; ++i) {
            (color[i] != -1 ? rep.part_a : rep.part_b).push_back(i);
        }
        return rep;
    }
    if (!odd_walk) {
        rep.reason = IrreducibilityReport::Reason::bipartite;
        for (int i = 0; i < n; ++i) {
            (color[i] == 0 ? rep.part_a : rep.part_b).push_back(i);
        }
        return rep;
    }
    rep.irreducible = true;
    return rep;
}

MaximizerReport maximizer_bound(const SymMatrix& A, const NormParams& params, const Vec& maximizer,
                                double mu, double K) {
    if (!(mu > 0.0)) throw DomainError("maximizer_bound: mu must be positive");
    const int n = A.n();
    if (maximizer.size() != static_cast<size_t>(n)) {
        throw DimensionError("maximizer_bound: vector length mismatch");
    }
    MaximizerReport rep;
    const double uniform = std::pow(static_cast<double>(n), -1.0 / params.r);
    double worst = 0.0;
    for (double vi : maximizer) worst = std::max(worst, std::abs(vi - uniform));
    rep.linf_dist = worst;

    const double tail = uniform * std::sqrt(std::log(static_cast<double>(n)) / (n * mu));
    if (params.p < params.r) {
        rep.regime = MaximizerReport::Regime::p_lt_r;
        rep.bound = std::sqrt(20.0 * K) * (params.p / (params.r - params.p)) * tail;
    } else {
        rep.regime = MaximizerReport::Regime::p_eq_r;
        rep.bound = std::sqrt(80.0 * K) * (4.0 + 1.0 / (params.r - 1.0)) * tail;
    }
    rep.within_bound = rep.linf_dist <= rep.bound;
    return rep;
}

}  // namespace opnorm
