#include <doctest.h>

#include <cmath>
#include <random>

#include "essnorm/operator.hpp"
#include "essnorm/oracle.hpp"
#include "essnorm/random.hpp"

using namespace essnorm;

namespace {

oracle::Dense dense_of(const MatrixOperator& a)
{
    return {a.dimension(), std::vector<double>(a.entries().begin(), a.entries().end())};
}

SpacePtr unit_atoms(std::size_t n)
{
    return build_space(std::vector<double>(n, 1.0));
}

} // namespace

TEST_CASE("mult_op examples")
{
    auto s = unit_atoms(2);
    const auto m = mult_op(StepFunction(s, {3.0, -5.0}));
    const auto y = m.apply(StepFunction(s, {1.0, 1.0}));
    CHECK(y[0] == 3.0);
    CHECK(y[1] == -5.0);
    CHECK(m.to_matrix() == MatrixOperator::diagonal(s, std::vector<double>{3.0, -5.0}));
    CHECK(mult_op(StepFunction::zero(s)).to_matrix() == MatrixOperator::zero(s));
    CHECK(mult_op(StepFunction::constant(s, 1.0)).to_matrix() == MatrixOperator::identity(s));
}

TEST_CASE("rank_one_diffuse examples")
{
    auto s0 = build_space({}, {}, Interval{0.0, 1.0}, 0);
    const auto k0 = rank_one_diffuse(StepFunction::constant(s0, 1.0), StepFunction::constant(s0, 1.0));
    CHECK(k0(0, 0) == 1.0);

    auto s1 = build_space({}, {}, Interval{0.0, 1.0}, 1);
    const auto k1 = rank_one_diffuse(StepFunction::constant(s1, 1.0), StepFunction::constant(s1, 1.0));
    for (double v : k1.entries()) CHECK(v == 0.5);

    CHECK(rank_one_diffuse(StepFunction::zero(s1), StepFunction::constant(s1, 1.0)) == MatrixOperator::zero(s1));
}

TEST_CASE("rank_one_diffuse applies (int eta f) g")
{
    auto s = build_space({0.5, 2.0}, {}, Interval{0.0, 1.0}, 2);
    const StepFunction eta(s, {1.0, -1.0, 2.0, 0.5, 0.0, 3.0});
    const StepFunction g(s, {0.25, 1.0, -2.0, 4.0, 1.0, 0.0});
    const StepFunction f(s, {2.0, 1.0, 1.0, -1.0, 5.0, 0.5});
    double pairing = 0.0;
    for (std::size_t j = 0; j < 6; ++j) pairing += eta[j] * f[j] * s->mass(j);
    const auto y = rank_one_diffuse(eta, g).apply(f);
    for (std::size_t i = 0; i < 6; ++i) CHECK(y[i] == doctest::Approx(pairing * g[i]));
}

TEST_CASE("rank_one_atomic_offdiag examples")
{
    auto s = unit_atoms(2);
    const auto k = rank_one_atomic_offdiag(0, StepFunction::constant(s, 1.0));
    CHECK(k == MatrixOperator(s, {0.0, 1.0, 0.0, 0.0}));

    auto s3 = build_space({1.0, 1.0, 2.0});
    const auto k3 = rank_one_atomic_offdiag(1, StepFunction::constant(s3, 1.0));
    CHECK(k3(1, 0) == 1.0);
    CHECK(k3(1, 1) == 0.0);
    CHECK(k3(1, 2) == 2.0);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(k3(0, j) == 0.0);
        CHECK(k3(2, j) == 0.0);
    }

    CHECK(rank_one_atomic_offdiag(1, StepFunction::zero(s3)) == MatrixOperator::zero(s3));

    auto mixed = build_space({1.0}, {}, Interval{0.0, 1.0}, 1);
    CHECK_THROWS(rank_one_atomic_offdiag(0, StepFunction::constant(mixed, 1.0)));
    CHECK_THROWS(rank_one_atomic_offdiag(5, StepFunction::constant(s3, 1.0)));
}

TEST_CASE("opnorm_p1 examples against the extreme-point oracle")
{
    auto s = unit_atoms(2);
    const MatrixOperator a(s, {1.0, -2.0, 3.0, 4.0});
    const double oracle_value = oracle::opnorm_p1_extreme_points(dense_of(a), s->masses());
    CHECK(oracle_value == 6.0);
    CHECK(opnorm_p1(a) == 6.0);

    auto w = build_space({0.1, 3.0, 0.7});
    CHECK(opnorm_p1(MatrixOperator::identity(w)) == 1.0);

    CHECK(opnorm_p1(mult_op(StepFunction(s, {3.0, -5.0})).to_matrix()) == 5.0);
}

TEST_CASE("opnorm_p1 agrees with the extreme-point oracle on random weighted operators")
{
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        auto s = build_space(random_masses(rng, 5));
        const auto a = random_matrix(rng, s);
        CHECK(opnorm_p1(a) == doctest::Approx(oracle::opnorm_p1_extreme_points(dense_of(a), s->masses()))
                                  .epsilon(1e-13));
    }
}

TEST_CASE("opnorm_estimate examples")
{
    auto s = unit_atoms(2);
    CHECK(opnorm_estimate(MatrixOperator::diagonal(s, std::vector<double>{3.0, -5.0}), 2.0) == 5.0);

    const MatrixOperator swap(s, {0.0, 1.0, 1.0, 0.0});
    const double grid = oracle::opnorm_2x2_sweep(dense_of(swap), s->masses(), 2.0, 3600);
    CHECK(grid == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(opnorm_estimate(swap, 2.0) == doctest::Approx(grid).epsilon(1e-12));

    Rng rng(23);
    auto w = build_space(random_masses(rng, 4));
    const auto a = random_matrix(rng, w);
    CHECK(opnorm_estimate(a, 1.0) == opnorm_p1(a));

    CHECK_THROWS(opnorm_estimate(a, 0.5));
}

TEST_CASE("opnorm_estimate is a sound lower bound on 2x2 and 3x3 instances")
{
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        auto s2 = build_space(random_masses(rng, 2));
        const auto a2 = random_matrix(rng, s2);
        for (double p : {1.5, 2.0, 3.0}) {
            const double truth = oracle::opnorm_2x2_sweep(dense_of(a2), s2->masses(), p, 2000);
            const double est = opnorm_estimate(a2, p);
            CHECK(est <= truth * (1.0 + 1e-9));
            CHECK(est >= truth * (1.0 - 1e-6));
        }
    }
    for (int trial = 0; trial < 15; ++trial) {
        auto s3 = build_space(random_masses(rng, 3));
        const auto a3 = random_matrix(rng, s3);
        for (double p : {1.5, 2.0, 3.0}) {
            const double truth = oracle::opnorm_3x3_sweep(dense_of(a3), s3->masses(), p, 120);
            const double est = opnorm_estimate(a3, p);
            CHECK(est <= truth * (1.0 + 1e-8));
            CHECK(est >= truth * (1.0 - 1e-5));
        }
    }
}

TEST_CASE("estimate at p = 2 matches the closed-form spectral norm")
{
    Rng rng(37);
    auto s = unit_atoms(2);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_matrix(rng, s);
        const double sigma = oracle::spectral_norm_2x2(dense_of(a));
        const double est = opnorm_estimate(a, 2.0);
        CHECK(est <= sigma * (1.0 + 1e-12));
        CHECK(est >= sigma * (1.0 - 1e-9));
    }
}

TEST_CASE("||M_u|| = max |u_i| for every p and any masses")
{
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        auto s = build_space(random_masses(rng, 6));
        std::vector<double> u(6);
        for (auto& v : u) v = 4.0 * rng.symmetric();
        const auto m = mult_op(StepFunction(s, u));
        const double expected = m.norm();
        CHECK(opnorm_p1(m.to_matrix()) == expected);
        for (double p : {1.5, 2.0, 3.0}) {
            const double est = opnorm_estimate(m.to_matrix(), p);
            CHECK(est >= expected);
            CHECK(est <= expected * (1.0 + 1e-14));
        }
    }
}

TEST_CASE("estimate witness is a unit vector attaining the value")
{
    Rng rng(43);
    auto s = build_space(random_masses(rng, 5));
    const auto a = random_matrix(rng, s);
    for (double p : {1.0, 1.5, 3.0}) {
        const auto e = estimate_opnorm(a, p);
        CHECK(norm_p(e.witness, p) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(norm_p(a.apply(e.witness), p) == doctest::Approx(e.value).epsilon(1e-12));
    }
}

TEST_CASE("pinch examples")
{
    auto s2 = unit_atoms(2);
    const MatrixOperator a(s2, {1.0, 2.0, 3.0, 4.0});
    CHECK(pinch(a, {{0}, {1}}) == MatrixOperator::diagonal(s2, std::vector<double>{1.0, 4.0}));
    CHECK(pinch(a, {{0, 1}}) == a);

    auto s3 = unit_atoms(3);
    MatrixOperator b(s3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
    const auto pb = pinch(b, {{0, 1}, {2}});
    CHECK(pb == MatrixOperator(s3, {1, 2, 0, 4, 5, 0, 0, 0, 9}));

    CHECK_THROWS(pinch(b, {{0, 1}, {1, 2}}));
    CHECK_THROWS(pinch(b, {{0, 1}, {3}}));
    CHECK_THROWS(pinch(b, {{0, 1}}));
}

TEST_CASE("pinching is contractive at p = 1 and block diagonal")
{
    Rng rng(47);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng.below(7);
        auto s = build_space(random_masses(rng, n));
        const auto a = random_matrix(rng, s);
        const auto blocks = random_two_blocks(rng, n);
        const auto pa = pinch(a, blocks);
        CHECK(opnorm_p1(pa) <= opnorm_p1(a));

        // f supported in block 0: pinched image agrees with A's image on block 0 and vanishes elsewhere
        std::vector<double> f(n, 0.0);
        for (auto i : blocks[0]) f[i] = rng.symmetric();
        const StepFunction fs(s, f);
        const auto y = a.apply(fs), py = pa.apply(fs);
        for (auto i : blocks[0]) CHECK(py[i] == doctest::Approx(y[i]).epsilon(1e-14));
        for (auto i : blocks[1]) CHECK(py[i] == 0.0);
    }
}

TEST_CASE("projections")
{
    auto s = unit_atoms(2);
    const auto full = projections(s, 2);
    CHECK(full.q.to_matrix() == MatrixOperator::zero(s));
    const auto none = projections(s, 0);
    CHECK(none.q.to_matrix() == MatrixOperator::identity(s));

    const auto one = projections(s, 1);
    const auto y = one.p[0].apply(StepFunction(s, {5.0, 7.0}));
    CHECK(y[0] == 5.0);
    CHECK(y[1] == 0.0);

    auto s5 = unit_atoms(5);
    for (std::size_t n = 0; n <= 5; ++n) {
        const auto fam = projections(s5, n);
        auto sum = fam.q.to_matrix();
        for (const auto& p : fam.p) sum += p.to_matrix();
        CHECK(sum == MatrixOperator::identity(s5));
    }
    CHECK_THROWS(projections(s, 3));
}

TEST_CASE("rank-one operators have vanishing 2x2 minors")
{
    Rng rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = build_space(random_masses(rng, 3), {}, Interval{0.0, 1.0}, 2);
        std::vector<double> e(s->dimension()), g(s->dimension());
        for (auto& v : e) v = rng.symmetric();
        for (auto& v : g) v = rng.symmetric();
        const auto k = rank_one_diffuse(StepFunction(s, e), StepFunction(s, g));
        const auto n = k.dimension();
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = 0; j + 1 < n; ++j) {
                const double minor = k(i, j) * k(i + 1, j + 1) - k(i, j + 1) * k(i + 1, j);
                CHECK(std::abs(minor) <= 1e-14);
            }
    }
}

TEST_CASE("low-rank operator matches its dense form")
{
    Rng rng(59);
    auto s = build_space({0.5}, {}, Interval{0.0, 2.0}, 3);
    LowRankOperator k(s);
    for (int r = 0; r < 3; ++r) {
        std::vector<double> e(s->dimension()), g(s->dimension());
        for (auto& v : e) v = rng.symmetric();
        for (auto& v : g) v = rng.symmetric();
        k.add_term(StepFunction(s, e), StepFunction(s, g));
    }
    const auto dense = k.to_matrix();
    std::vector<double> f(s->dimension());
    for (auto& v : f) v = rng.symmetric();
    const StepFunction fs(s, f);
    const auto a = k.apply(fs), b = dense.apply(fs);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-13));
    const auto d = k.diagonal_entries();
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(d[i] == doctest::Approx(dense(i, i)).epsilon(1e-14));
}

TEST_CASE("composition and algebra")
{
    auto s = unit_atoms(2);
    const MatrixOperator a(s, {1.0, 2.0, 3.0, 4.0});
    CHECK(a * MatrixOperator::identity(s) == a);
    CHECK(a * a == MatrixOperator(s, {7.0, 10.0, 15.0, 22.0}));
    CHECK(a - a == MatrixOperator::zero(s));
    CHECK(2.0 * a == a + a);
}
