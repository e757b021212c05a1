#include "essnorm/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace essnorm {

namespace {

template <class Op>
MatrixOperator entrywise(const MatrixOperator& s, const MatrixOperator& t, Op op)
{
    if (s.dimension() != t.dimension()) throw std::invalid_argument("lattice operation: dimension mismatch");
    require_same_space(*s.space(), *t.space());
    MatrixOperator out(s.space());
    const auto n = s.dimension();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = op(s(i, j), t(i, j));
    return out;
}

} // namespace

MatrixOperator modulus(const MatrixOperator& s)
{
    MatrixOperator out = s;
    const auto n = s.dimension();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = std::abs(s(i, j));
    return out;
}

MatrixOperator join(const MatrixOperator& s, const MatrixOperator& t)
{
    return entrywise(s, t, [](double a, double b) { return std::max(a, b); });
}

MatrixOperator meet(const MatrixOperator& s, const MatrixOperator& t)
{
    return entrywise(s, t, [](double a, double b) { return std::min(a, b); });
}

double regular_norm(const MatrixOperator& s, double p)
{
    return opnorm_estimate(modulus(s), p);
}

RegularDecomposition centre_project(const MatrixOperator& s)
{
    auto d = s.diagonal_entries();
    MatrixOperator rest = s;
    for (std::size_t i = 0; i < s.dimension(); ++i) rest(i, i) = 0.0;
    return {MultiplicationOperator(StepFunction(s.space(), std::move(d))), std::move(rest)};
}

bool disjoint_from_centre(const MatrixOperator& s)
{
    const auto m = meet(modulus(s), MatrixOperator::identity(s.space()));
    return std::all_of(m.entries().begin(), m.entries().end(), [](double v) { return v == 0.0; });
}

std::vector<double> centre_decay_under_refinement(const CellFunction& eta, const CellFunction& g,
                                                  const MeasureSpace& diffuse_template, std::span<const int> levels)
{
    if (!diffuse_template.has_diffuse())
        throw std::invalid_argument("centre_decay_under_refinement: space has no diffuse part");
    std::vector<double> out;
    out.reserve(levels.size());
    for (int level : levels) {
        auto space = build_space({}, {}, diffuse_template.diffuse_interval(), level);
        const std::vector<double> none;
        const auto eta_l = discretize(space, none, eta);
        const auto g_l = discretize(space, none, g);
        LowRankOperator k(space);
        k.add_term(eta_l, g_l);
        double m = 0.0;
        for (double d : k.diagonal_entries()) m = std::max(m, std::abs(d));
        out.push_back(m);
    }
    return out;
}

} // namespace essnorm
