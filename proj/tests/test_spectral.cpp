#include <cmath>

#include "doctest.h"
#include "opnorm/boyd.hpp"
#include "opnorm/ensembles.hpp"
#include "opnorm/spectral.hpp"
#include "support.hpp"

using namespace opnorm;

TEST_CASE("lambda_big2: structured matrices") {
    // mu (J - I) acts as -mu on the complement of the ones vector
    CHECK(lambda_big2(SymMatrix::mean_matrix(3, 0.5)) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(lambda_big2(testsupport::perm2()) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(lambda_big2(SymMatrix::zero(4)) == 0.0);
}

TEST_CASE("lambda_big2: ER sample under the edge bound") {
    EnsembleSpec s;
    s.family = Family::er;
    s.n = 200;
    s.mu = 0.3;
    s.seed = 42;
    SymMatrix A = sample(s);
    double val = lambda_big2(A, 1e-10);
    double sigma = std::sqrt(0.21);
    CHECK(val <= 3.0 * std::sqrt(200.0) * sigma + 0.3);
    CHECK(val > 0.0);
}

TEST_CASE("lambda_big2: scales linearly") {
    SymMatrix A = testsupport::random_positive(12, 5);
    double base = lambda_big2(A, 1e-11);
    for (double c : {0.25, 3.0}) {
        CHECK(lambda_big2(testsupport::scale(A, c), 1e-11) ==
              doctest::Approx(c * base).epsilon(1e-10));
    }
}

TEST_CASE("lambda2_B: mean matrices have lambda2 = mu^2 at r = p = 2") {
    SymMatrix M3 = SymMatrix::mean_matrix(3, 0.5);
    Vec v3(3, std::pow(3.0, -0.5));
    CHECK(lambda2_B(M3, NormParams(2, 2), v3) == doctest::Approx(0.25).epsilon(1e-8));

    SymMatrix M5 = SymMatrix::mean_matrix(5, 0.2);
    Vec v5(5, std::pow(5.0, -0.5));
    CHECK(lambda2_B(M5, NormParams(2, 2), v5) == doctest::Approx(0.04).epsilon(1e-8));
}

TEST_CASE("lambda2_B: dense eigensolve oracle on the seed-42 3x3 sample") {
    EnsembleSpec s;
    s.family = Family::uniform;
    s.n = 3;
    s.mu = 0.5;
    s.sigma2 = 1.0 / 12.0;
    s.seed = 42;
    SymMatrix A = sample(s);
    NormParams params(2.5, 1.5);
    PowerResult res = compute_norm(A, params, {});

    // build C = D^{-1} A diag(|Av|^{p-2}) A D^{-1} densely and eigensolve it
    const int n = 3;
    Vec av = matvec(A, res.v);
    std::vector<double> C(9, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double sum = 0.0;
            for (int k = 0; k < n; ++k) {
                sum += A(i, k) * std::pow(std::abs(av[k]), params.p - 2.0) * A(k, j);
            }
            C[static_cast<size_t>(i) * n + j] = sum *
                std::pow(res.v[i], -(params.r - 2.0) / 2.0) *
                std::pow(res.v[j], -(params.r - 2.0) / 2.0);
        }
    }
    auto ev = testsupport::jacobi_eigenvalues(n, C);
    CHECK(ev[0] == doctest::Approx(std::pow(res.gamma, params.p)).epsilon(1e-9));
    double l2 = lambda2_B(A, params, res.v, 1e-12);
    CHECK(l2 == doctest::Approx(ev[1]).epsilon(1e-8));
}

TEST_CASE("lambda2_B: equals the squared second eigenvalue of A at r = p = 2") {
    SymMatrix A = testsupport::random_positive(8, 31);
    NormParams params(2, 2);
    PowerResult res = compute_norm(A, params, {});
    auto ev = testsupport::jacobi_eigenvalues(8, A.data());
    // B = A^2: its spectrum is the squared spectrum of A; drop the top
    std::vector<double> sq;
    for (double e : ev) sq.push_back(e * e);
    std::sort(sq.begin(), sq.end(), std::greater<double>());
    double l2 = lambda2_B(A, params, res.v, 1e-12);
    CHECK(l2 == doctest::Approx(sq[1]).epsilon(1e-8));
}

TEST_CASE("lambda2_B: below gamma^p, deflation v-orthogonal") {
    SymMatrix A = testsupport::random_positive(10, 8);
    NormParams params(3.0, 2.5);
    PowerResult res = compute_norm(A, params, {});
    auto [l2, x] = lambda2_B_with_vector(A, params, res.v, 1e-12);
    CHECK(l2 <= std::pow(res.gamma, params.p) + 1e-9);
    double cross = v_inner(params.r, res.v, x, res.v);
    double nx = std::sqrt(v_inner(params.r, res.v, x, x));
    double nv = std::sqrt(v_inner(params.r, res.v, res.v, res.v));
    CHECK(std::abs(cross) <= 1e-8 * nx * nv);
}

TEST_CASE("check_bounds: deterministic and random cases") {
    {
        SymMatrix A = SymMatrix::mean_matrix(5, 0.2);
        NormParams params(2, 2);
        PowerResult res = compute_norm(A, params, {});
        SpectralReport rep = check_bounds(A, params, res, 0.2, 0.0);
        CHECK(rep.lambda_big2 == doctest::Approx(0.2).epsilon(1e-7));
        CHECK(rep.lambda2_B == doctest::Approx(0.04).epsilon(1e-7));
        CHECK(rep.lambda2_bound_ok);  // 0.04 <= 2 * Lambda2^2 = 0.08
        CHECK_THROWS_AS(check_bounds(A, params, res, 0.0, 0.0), DomainError);
    }
    {
        EnsembleSpec s;
        s.family = Family::er;
        s.n = 200;
        s.mu = 0.3;
        s.seed = 42;
        SymMatrix A = sample(s);
        NormParams params(2, 2);
        PowerResult res = compute_norm(A, params, {});
        SpectralReport rep = check_bounds(A, params, res, s.mu, 0.21);
        CHECK(rep.lambda_big2_bound_ok);
        CHECK(rep.lambda2_bound_ok);
        CHECK_FALSE(rep.gap_warning);
        CHECK(rep.contraction_ratio > 0.0);
        CHECK(rep.contraction_ratio < 1.0);
    }
}

TEST_CASE("check_bounds: diagonal law selects the augmented bound") {
    EnsembleSpec s;
    s.family = Family::er;
    s.n = 100;
    s.mu = 0.4;
    s.seed = 77;
    DiagonalLaw d;
    d.family = Family::exponential;
    d.mean = 0.1;
    d.variance = 0.01;
    s.diagonal = d;
    SymMatrix A = sample(s);
    REQUIRE_FALSE(A.zero_diagonal());
    NormParams params(2, 2);
    PowerResult res = compute_norm(A, params, {});
    SpectralReport with_diag = check_bounds(A, params, res, s.mu, 0.24, d.mean, d.variance);
    CHECK(with_diag.lambda_big2_bound_ok);

    // same off-diagonals, zero diagonal: the plain bound applies and is smaller
    s.diagonal.reset();
    SymMatrix A0 = sample(s);
    PowerResult res0 = compute_norm(A0, params, {});
    SpectralReport no_diag = check_bounds(A0, params, res0, s.mu, 0.24);
    CHECK(no_diag.lambda_big2_bound_ok);
    double plain_rhs = 3.0 * std::sqrt(100.0) * std::sqrt(0.24) + s.mu;
    double aug_rhs = plain_rhs + std::sqrt(2.0 * 100 * (0.01 + 0.01));
    CHECK(with_diag.lambda_big2 <= aug_rhs);
    CHECK(aug_rhs > plain_rhs);
}
