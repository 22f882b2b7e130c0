#include <cmath>

#include "doctest.h"
#include "opnorm/boyd.hpp"
#include "opnorm/ensembles.hpp"
#include "opnorm/oracle.hpp"
#include "opnorm/rng.hpp"
#include "opnorm/spectral.hpp"
#include "opnorm/stats.hpp"
#include "support.hpp"

using namespace opnorm;

namespace {

// seed-42 3x3 sample with Uniform(0,1) off-diagonals; the grid/multistart
// oracle value below was computed and frozen before the iteration tests.
SymMatrix seed42_3x3() {
    EnsembleSpec s;
    s.family = Family::uniform;
    s.n = 3;
    s.mu = 0.5;
    s.sigma2 = 1.0 / 12.0;
    s.seed = 42;
    return sample(s);
}
constexpr double kSeed42Oracle25_15 = 1.3322603906315886;

}  // namespace

TEST_CASE("apply_S examples") {
    SymMatrix P = testsupport::perm2();
    Vec s = apply_S(P, NormParams(2, 2), {1, 1});
    CHECK(s[0] == doctest::Approx(1.0));
    CHECK(s[1] == doctest::Approx(1.0));

    SymMatrix P2 = testsupport::perm2(2.0);
    Vec s2 = apply_S(P2, NormParams(2, 2), {1, 0});
    CHECK(s2[0] == doctest::Approx(4.0));
    CHECK(s2[1] == doctest::Approx(0.0));

    Vec s3 = apply_S(P, NormParams(3, 2), {1, 1});
    CHECK(s3[0] == doctest::Approx(1.0));
    CHECK(s3[1] == doctest::Approx(1.0));

    CHECK_THROWS_AS(apply_S(P, NormParams(2, 2), Vec{0, 0}), DomainError);
}

TEST_CASE("apply_W examples") {
    SymMatrix P = testsupport::perm2();
    Vec w = apply_W(P, NormParams(2, 2), {1, 1});
    CHECK(w[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(w[1] == doctest::Approx(1.0 / std::sqrt(2.0)));

    Vec w2 = apply_W(testsupport::perm2(2.0), NormParams(2, 2), {1, 0});
    CHECK(w2[0] == doctest::Approx(1.0));
    CHECK(w2[1] == doctest::Approx(0.0));

    SymMatrix M = SymMatrix::mean_matrix(3, 0.5);
    Vec w3 = apply_W(M, NormParams(2, 2), {1, 1, 1});
    for (double t : w3) CHECK(t == doctest::Approx(std::pow(3.0, -0.5)));
}

TEST_CASE("compute_norm: permutation-type and mean matrices") {
    SymMatrix P = testsupport::perm2();
    PowerResult res = compute_norm(P, NormParams(3, 2), {});
    CHECK(res.gamma == doctest::Approx(std::pow(2.0, 1.0 / 6.0)).epsilon(1e-10));
    CHECK(res.v[0] == doctest::Approx(std::pow(2.0, -1.0 / 3.0)).epsilon(1e-10));
    CHECK(res.v[1] == doctest::Approx(std::pow(2.0, -1.0 / 3.0)).epsilon(1e-10));
    CHECK(std::abs(lq_norm(3.0, res.v) - 1.0) <= 1e-12);

    SymMatrix M = SymMatrix::mean_matrix(3, 0.5);
    PowerResult res2 = compute_norm(M, NormParams(2, 2), {});
    CHECK(res2.gamma == doctest::Approx(1.0).epsilon(1e-12));
    for (double t : res2.v) CHECK(t == doctest::Approx(std::pow(3.0, -0.5)).epsilon(1e-12));
    CHECK(res2.residual <= 1e-10);
}

TEST_CASE("compute_norm: frozen oracle value on the seed-42 3x3 sample") {
    SymMatrix A = seed42_3x3();
    NormParams params(2.5, 1.5);
    PowerResult res = compute_norm(A, params, {});
    CHECK(std::abs(res.gamma - kSeed42Oracle25_15) <= 1e-6);
    // and against the live grid oracle
    OracleResult grid = maximize_grid(A, params, 1500);
    CHECK(std::abs(res.gamma - grid.value) <= 1e-4);
    CHECK(fixed_point_residual(A, params, res.v) <= 1e-10);
}

TEST_CASE("fixed_point_residual: exact fixed points") {
    SymMatrix P = testsupport::perm2();
    Vec v = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    CHECK(fixed_point_residual(P, NormParams(2, 2), v) <= 1e-14);

    SymMatrix M = SymMatrix::mean_matrix(3, 0.5);
    Vec u(3, std::pow(3.0, -0.5));
    CHECK(fixed_point_residual(M, NormParams(2, 2), u) <= 1e-14);
}

TEST_CASE("compute_norm: error contracts") {
    SymMatrix path = SymMatrix::adjacency(3, {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(compute_norm(path, NormParams(2, 2), {}), ReducibleError);
    CHECK_THROWS_AS(compute_norm(SymMatrix::zero(3), NormParams(2, 2), {}), DegenerateError);

    SymMatrix tri = SymMatrix::adjacency(3, {{0, 1}, {1, 2}, {0, 2}});
    PowerOptions tight;
    tight.max_iter = 1;
    tight.tol = 1e-14;
    CHECK_THROWS_AS(compute_norm(tri, NormParams(2.5, 1.7), tight), ConvergenceError);

    PowerOptions bad;
    bad.start = Vec{1.0, -1.0, 1.0};
    CHECK_THROWS_AS(compute_norm(tri, NormParams(2, 2), bad), DomainError);
}

TEST_CASE("compute_norm: uniqueness across random positive starts") {
    SymMatrix A = testsupport::random_positive(5, 20250);
    NormParams params(2.5, 1.8);
    PowerResult ref = compute_norm(A, params, {});
    for (int s = 0; s < 10; ++s) {
        PowerOptions opts;
        Vec start(5);
        for (int i = 0; i < 5; ++i) start[i] = 0.05 + uniform01(600 + s, 0, i);
        opts.start = start;
        PowerResult res = compute_norm(A, params, opts);
        for (int i = 0; i < 5; ++i) CHECK(std::abs(res.v[i] - ref.v[i]) <= 1e-8);
        CHECK(res.residual <= 1e-10);
    }
}

TEST_CASE("compute_norm: scale equivariance") {
    SymMatrix A = testsupport::random_positive(6, 9);
    NormParams params(3.0, 2.0);
    PowerResult ref = compute_norm(A, params, {});
    for (double c : {0.5, 2.0, 10.0}) {
        PowerResult res = compute_norm(testsupport::scale(A, c), params, {});
        CHECK(res.gamma == doctest::Approx(c * ref.gamma).epsilon(1e-11));
        for (int i = 0; i < 6; ++i) CHECK(std::abs(res.v[i] - ref.v[i]) <= 1e-10);
    }
}

TEST_CASE("compute_norm: feasibility lower bound at the uniform vector") {
    for (uint64_t seed : {1u, 2u, 3u}) {
        SymMatrix A = testsupport::random_positive(7, seed);
        NormParams params(3.5, 2.2);
        PowerResult res = compute_norm(A, params, {});
        double lower = lq_norm(params.p, matvec(A, uniform_start(7, params.r)));
        CHECK(res.gamma >= lower - 1e-12);
    }
}

TEST_CASE("eta equals one W step from the uniform start, exactly") {
    SymMatrix A = testsupport::random_positive(6, 44);
    NormParams params(2.5, 1.5);
    Vec w = apply_W(A, params, uniform_start(6, params.r));
    CHECK(eta(A, params) == lq_norm(params.p, matvec(A, w)));
}

TEST_CASE("apply_B: eigen relations on structured matrices") {
    SymMatrix M = SymMatrix::mean_matrix(3, 0.5);
    NormParams params(2, 2);
    Vec v(3, std::pow(3.0, -0.5));
    Vec bv = apply_B(M, params, v, v);
    for (int i = 0; i < 3; ++i) CHECK(bv[i] == doctest::Approx(1.0 * v[i]));  // B v = gamma^p v

    Vec x = {1.0, -1.0, 0.0};
    Vec bx = apply_B(M, params, v, x);
    for (int i = 0; i < 3; ++i) CHECK(bx[i] == doctest::Approx(0.25 * x[i]));  // mu^2 on 1-perp

    SymMatrix P = testsupport::perm2();
    Vec vp(2, std::pow(2.0, -0.5));
    Vec bp = apply_B(P, params, vp, {1.0, -1.0});
    CHECK(bp[0] == doctest::Approx(1.0));
    CHECK(bp[1] == doctest::Approx(-1.0));

    CHECK_THROWS_AS(apply_B(M, params, Vec{1, 0, 1}, x), DomainError);
}

TEST_CASE("apply_B: self-adjoint in the v-inner product") {
    SymMatrix A = testsupport::random_positive(8, 77);
    NormParams params(3.0, 2.0);
    PowerResult res = compute_norm(A, params, {});
    for (int k = 0; k < 5; ++k) {
        Vec x(8), y(8);
        for (int i = 0; i < 8; ++i) {
            x[i] = uniform01(800 + k, 0, i) - 0.5;
            y[i] = uniform01(800 + k, 1, i) - 0.5;
        }
        double lhs = v_inner(params.r, res.v, apply_B(A, params, res.v, x), y);
        double rhs = v_inner(params.r, res.v, x, apply_B(A, params, res.v, y));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("compute_norm: result contract over a family of instances") {
    for (uint64_t seed = 400; seed < 410; ++seed) {
        int n = 3 + static_cast<int>(seed % 5);
        SymMatrix A = testsupport::random_positive(n, seed);
        double p = 1.3 + uniform01(seed, 60, 0);
        double r = p + 1.5 * uniform01(seed, 61, 0);
        NormParams params(r, p);
        PowerResult res = compute_norm(A, params, {});
        CHECK(std::abs(lq_norm(params.r, res.v) - 1.0) <= 1e-12);
        for (double vi : res.v) CHECK(vi > 0.0);
        CHECK(res.residual <= 1e-10);
        CHECK(res.gamma > 0.0);
        CHECK(res.iterations >= 1);
    }
}

TEST_CASE("iteration contracts at the rate set by lambda2 of B") {
    SymMatrix A = testsupport::random_positive(30, 3, 0.0, 1.0);
    for (auto [r, p] : {std::pair{3.0, 2.0}, std::pair{2.0, 2.0}, std::pair{2.5, 2.5}}) {
        NormParams params(r, p);
        PowerOptions tight;
        tight.tol = 1e-13;
        PowerResult res = compute_norm(A, params, tight);
        double l2 = lambda2_B(A, params, res.v, 1e-10);
        double rate = (p - 1.0) * l2 / ((r - 1.0) * std::pow(res.gamma, p));

        Vec x(30);
        for (int i = 0; i < 30; ++i) {
            x[i] = res.v[i] * (1.0 + 1e-3 * (uniform01(55, 0, i) - 0.5));
        }
        double nx = lq_norm(params.r, x);
        for (double& t : x) t /= nx;

        Vec diff(30);
        for (int i = 0; i < 30; ++i) diff[i] = x[i] - res.v[i];
        double err = v_norm(params.r, res.v, diff);
        for (int step = 0; step < 8 && err > 1e-11; ++step) {
            x = apply_W(A, params, x);
            for (int i = 0; i < 30; ++i) diff[i] = x[i] - res.v[i];
            double err_next = v_norm(params.r, res.v, diff);
            CHECK(err_next <= 1.1 * rate * err);
            err = err_next;
        }
    }
}
