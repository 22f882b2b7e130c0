#pragma once

// Test-side helpers. The Jacobi eigensolver is the independent oracle for the
// spectral checks: it never touches the power-iteration code paths.

#include <cmath>
#include <vector>

#include "opnorm/core.hpp"
#include "opnorm/rng.hpp"

namespace testsupport {

// Cyclic Jacobi on a dense symmetric matrix (row-major); returns eigenvalues
// sorted in descending order.
inline std::vector<double> jacobi_eigenvalues(int n, std::vector<double> a) {
    auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        }
        if (off < 1e-28) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = at(i, i);
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

inline opnorm::SymMatrix sym3(double a01, double a02, double a12) {
    return opnorm::SymMatrix(3, {0.0, a01, a02, a01, 0.0, a12, a02, a12, 0.0});
}

inline opnorm::SymMatrix perm2(double w = 1.0) {
    return opnorm::SymMatrix(2, {0.0, w, w, 0.0});
}

// Random symmetric matrix with strictly positive off-diagonal entries
// (complete support graph, hence irreducible for n >= 3).
inline opnorm::SymMatrix random_positive(int n, uint64_t seed, double lo = 0.05, double hi = 1.05) {
    std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double u = opnorm::uniform01(seed, 17, static_cast<uint64_t>(i) * n + j);
            a[static_cast<size_t>(i) * n + j] = a[static_cast<size_t>(j) * n + i] = lo + (hi - lo) * u;
        }
    }
    return opnorm::SymMatrix(n, std::move(a));
}

inline opnorm::Vec scale(const opnorm::Vec& x, double c) {
    opnorm::Vec y = x;
    for (double& t : y) t *= c;
    return y;
}

inline opnorm::SymMatrix scale(const opnorm::SymMatrix& A, double c) {
    std::vector<double> a = A.data();
    for (double& t : a) t *= c;
    return opnorm::SymMatrix(A.n(), std::move(a));
}

}  // namespace testsupport
