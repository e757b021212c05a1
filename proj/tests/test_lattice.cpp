#include <doctest.h>

#include <cmath>

#include "essnorm/lattice.hpp"
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

double max_abs_diagonal(const MatrixOperator& a)
{
    double m = 0.0;
    for (double d : a.diagonal_entries()) m = std::max(m, std::abs(d));
    return m;
}

} // namespace

TEST_CASE("modulus examples")
{
    auto s = unit_atoms(2);
    const MatrixOperator a(s, {-1.0, 2.0, -3.0, 0.0});
    CHECK(modulus(a) == MatrixOperator(s, {1.0, 2.0, 3.0, 0.0}));

    const MatrixOperator pos(s, {0.5, 2.0, 0.0, 1.0});
    CHECK(modulus(pos) == pos);

    const std::vector<double> ones{1.0, 1.0};
    const auto grid = oracle::modulus_apply_grid(dense_of(a), ones, 20);
    CHECK(grid == std::vector<double>{3.0, 3.0});
    const auto direct = modulus(a).apply(StepFunction(s, ones));
    CHECK(direct[0] == 3.0);
    CHECK(direct[1] == 3.0);
}

TEST_CASE("join and meet examples")
{
    auto s = unit_atoms(2);
    const auto id = MatrixOperator::identity(s);
    const MatrixOperator t(s, {0.0, 2.0, 0.0, 0.0});
    const auto j = join(id, t);
    CHECK(j == MatrixOperator(s, {1.0, 2.0, 0.0, 1.0}));
    for (std::size_t col = 0; col < 2; ++col) {
        const auto oc = oracle::join_column(dense_of(id), dense_of(t), col, 10);
        for (std::size_t i = 0; i < 2; ++i) CHECK(oc[i] == j(i, col));
    }

    Rng rng(7);
    const auto a = random_matrix(rng, unit_atoms(4));
    CHECK(meet(a, a) == a);
    CHECK(join(a, a) == a);

    auto s4 = build_space({1.0, 0.5, 2.0, 1.5});
    std::vector<double> eta(4);
    for (auto& v : eta) v = rng.uniform(0.0, 3.0);
    for (std::size_t jj = 0; jj < 4; ++jj) {
        const auto k = rank_one_atomic_offdiag(jj, StepFunction(s4, eta));
        CHECK(meet(MatrixOperator::identity(s4), k) == MatrixOperator::zero(s4));
    }

    CHECK_THROWS(join(a, MatrixOperator::identity(unit_atoms(3))));
}

TEST_CASE("regular norm examples")
{
    auto s = unit_atoms(2);
    const MatrixOperator a(s, {1.0, -2.0, 3.0, 4.0});
    CHECK(regular_norm(a, 1.0) == 6.0);
    CHECK(regular_norm(a, 1.0) == opnorm_p1(a));

    const MatrixOperator pos(s, {0.5, 2.0, 0.25, 1.0});
    for (double p : {1.0, 1.5, 2.0, 3.0}) CHECK(regular_norm(pos, p) == opnorm_estimate(pos, p));

    const auto d = MatrixOperator::diagonal(s, std::vector<double>{-7.0, 2.0});
    for (double p : {1.0, 2.0, 3.0}) CHECK(regular_norm(d, p) == 7.0);
}

TEST_CASE("centre_project examples")
{
    auto s = unit_atoms(2);
    const MatrixOperator a(s, {1.0, 2.0, 3.0, 4.0});
    const auto dec = centre_project(a);
    CHECK(dec.centre_part.to_matrix() == MatrixOperator::diagonal(s, std::vector<double>{1.0, 4.0}));
    CHECK(dec.disjoint_part == MatrixOperator(s, {0.0, 2.0, 3.0, 0.0}));

    auto s3 = build_space({1.0, 2.0, 0.5});
    const auto k = rank_one_atomic_offdiag(2, StepFunction(s3, {1.0, 3.0, 2.0}));
    CHECK(centre_project(k).centre_part.norm() == 0.0);

    const auto m = mult_op(StepFunction(s3, {1.0, -2.0, 5.0}));
    const auto dm = centre_project(m.to_matrix());
    CHECK(dm.centre_part == m);
    CHECK(dm.disjoint_part == MatrixOperator::zero(s3));
}

TEST_CASE("centre decay under refinement: exact dyadic values")
{
    const auto unit = build_space({}, {}, Interval{0.0, 1.0}, 0);
    const std::vector<int> levels{0, 1, 2, 3, 4, 5, 10, 12, 20};
    const auto one = CellFunction::constant(1.0);
    const auto d = centre_decay_under_refinement(one, one, *unit, levels);
    for (std::size_t i = 0; i < levels.size(); ++i) CHECK(d[i] == std::ldexp(1.0, -levels[i]));

    const std::vector<int> three{3, 4, 5};
    CHECK(centre_decay_under_refinement(one, one, *unit, three) == std::vector<double>{0.125, 0.0625, 0.03125});

    const auto zero = centre_decay_under_refinement(CellFunction::constant(0.0), one, *unit, three);
    CHECK(zero == std::vector<double>{0.0, 0.0, 0.0});

    CHECK_THROWS(centre_decay_under_refinement(one, one, *build_space({1.0}), three));
}

TEST_CASE("centre decay agrees with projecting the dense rank-one operator")
{
    const auto unit = build_space({}, {}, Interval{-1.0, 2.0}, 0);
    const auto eta = CellFunction::affine(0.5, 1.0);
    const auto g = CellFunction::cosine_series({0.2, 1.0, -0.5});
    const std::vector<int> levels{0, 1, 2, 3, 4, 5, 6};
    const auto decay = centre_decay_under_refinement(eta, g, *unit, levels);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        auto s = build_space({}, {}, Interval{-1.0, 2.0}, levels[i]);
        const std::vector<double> none;
        const auto k = rank_one_diffuse(discretize(s, none, eta), discretize(s, none, g));
        CHECK(decay[i] == centre_project(k).centre_part.norm());
    }
    // |eta| <= 2.5 and |g| <= 1.7 on the interval, cells have mass 3 * 2^-L
    for (std::size_t i = 0; i < decay.size(); ++i) CHECK(decay[i] <= 2.5 * 1.7 * std::ldexp(3.0, -levels[i]));
}

TEST_CASE("band projection is contractive for the operator norm")
{
    Rng rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        auto s = build_space(random_masses(rng, 5));
        const auto a = random_matrix(rng, s);
        const double centre = centre_project(a).centre_part.norm();
        CHECK(centre == max_abs_diagonal(a));
        for (double p : {1.0, 1.5, 2.0, 3.0}) CHECK(centre <= opnorm_estimate(a, p));
    }
}

TEST_CASE("band projection is linear and idempotent")
{
    Rng rng(67);
    for (int trial = 0; trial < 50; ++trial) {
        auto s = build_space(random_masses(rng, 4));
        const auto a = random_matrix(rng, s);
        const auto b = random_matrix(rng, s);
        const double x = rng.symmetric(), y = rng.symmetric();

        const auto pa = centre_project(a).centre_part.to_matrix();
        CHECK(centre_project(pa).centre_part.to_matrix() == pa);
        CHECK(centre_project(pa).disjoint_part == MatrixOperator::zero(s));

        const auto lhs = centre_project(x * a + y * b).centre_part.to_matrix();
        const auto rhs = x * pa + y * centre_project(b).centre_part.to_matrix();
        for (std::size_t k = 0; k < lhs.entries().size(); ++k)
            CHECK(lhs.entries()[k] == doctest::Approx(rhs.entries()[k]).epsilon(1e-15));

        const auto dec = centre_project(a);
        CHECK(dec.centre_part.to_matrix() + dec.disjoint_part == a);
        for (double d : dec.disjoint_part.diagonal_entries()) CHECK(d == 0.0);
    }
}

TEST_CASE("operator norm is dominated by the regular norm")
{
    Rng rng(71);
    for (int trial = 0; trial < 60; ++trial) {
        auto s = build_space(random_masses(rng, 4));
        const auto a = random_matrix(rng, s);
        CHECK(opnorm_p1(a) == regular_norm(a, 1.0));
        for (double p : {1.5, 2.0, 3.0}) CHECK(opnorm_estimate(a, p) <= regular_norm(a, p) * (1.0 + 1e-9));
    }
}

TEST_CASE("disjoint from the centre iff zero diagonal")
{
    Rng rng(73);
    for (int trial = 0; trial < 50; ++trial) {
        auto s = build_space(random_masses(rng, 4));
        auto a = random_matrix(rng, s);
        CHECK_FALSE(disjoint_from_centre(a));
        for (std::size_t i = 0; i < 4; ++i) a(i, i) = 0.0;
        CHECK(disjoint_from_centre(a));
        a(rng.below(4), rng.below(4)) = 0.0;
        CHECK(disjoint_from_centre(a));
        const auto i = rng.below(4);
        a(i, i) = rng.symmetric();
        CHECK(disjoint_from_centre(a) == (a(i, i) == 0.0));
    }
}

TEST_CASE("||M_u + K|| >= ||u||_inf for zero-diagonal K at p = 1")
{
    Rng rng(79);
    for (int trial = 0; trial < 300; ++trial) {
        auto s = build_space(random_masses(rng, 6));
        std::vector<double> u(6);
        for (auto& v : u) v = 3.0 * rng.symmetric();
        auto k = random_matrix(rng, s);
        for (std::size_t i = 0; i < 6; ++i) k(i, i) = 0.0;
        const auto m = mult_op(StepFunction(s, u));
        CHECK(opnorm_p1(m + k) >= m.norm());
    }
}

TEST_CASE("lattice operations match the decomposition oracles")
{
    Rng rng(83);
    for (int trial = 0; trial < 100; ++trial) {
        auto s = unit_atoms(5);
        const auto a = random_matrix(rng, s);
        const auto b = random_matrix(rng, s);
        const auto j = join(a, b), m = meet(a, b);
        for (std::size_t col = 0; col < 5; ++col) {
            const auto oj = oracle::join_column(dense_of(a), dense_of(b), col, 50);
            const auto om = oracle::meet_column(dense_of(a), dense_of(b), col, 50);
            for (std::size_t i = 0; i < 5; ++i) {
                CHECK(std::abs(oj[i] - j(i, col)) <= 1e-9);
                CHECK(std::abs(om[i] - m(i, col)) <= 1e-9);
            }
        }
    }
}
