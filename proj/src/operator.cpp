#include "essnorm/operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace essnorm {

MatrixOperator::MatrixOperator(SpacePtr space) : space_(std::move(space))
{
    if (!space_) throw ConstructionError("operator needs a measure space");
    n_ = space_->dimension();
    a_.assign(n_ * n_, 0.0);
}

MatrixOperator::MatrixOperator(SpacePtr space, std::vector<double> row_major)
    : space_(std::move(space)), a_(std::move(row_major))
{
    if (!space_) throw ConstructionError("operator needs a measure space");
    n_ = space_->dimension();
    if (a_.size() != n_ * n_)
        throw ConstructionError("operator has " + std::to_string(a_.size()) + " entries, expected " +
                                std::to_string(n_ * n_));
}

MatrixOperator MatrixOperator::identity(SpacePtr space)
{
    MatrixOperator id(std::move(space));
    for (std::size_t i = 0; i < id.n_; ++i) id(i, i) = 1.0;
    return id;
}

MatrixOperator MatrixOperator::diagonal(SpacePtr space, std::span<const double> d)
{
    MatrixOperator m(std::move(space));
    if (d.size() != m.n_) throw std::invalid_argument("diagonal: length mismatch");
    for (std::size_t i = 0; i < m.n_; ++i) m(i, i) = d[i];
    return m;
}

StepFunction MatrixOperator::apply(const StepFunction& f) const
{
    require_same_space(*space_, f.measure());
    std::vector<double> out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * f[j];
        out[i] = s;
    }
    return {space_, std::move(out)};
}

std::vector<double> MatrixOperator::diagonal_entries() const
{
    std::vector<double> d(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
    return d;
}

MatrixOperator& MatrixOperator::operator+=(const MatrixOperator& o)
{
    require_same_space(*space_, *o.space_);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

MatrixOperator& MatrixOperator::operator-=(const MatrixOperator& o)
{
    require_same_space(*space_, *o.space_);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

MatrixOperator& MatrixOperator::operator*=(double s)
{
    for (auto& v : a_) v *= s;
    return *this;
}

bool MatrixOperator::operator==(const MatrixOperator& o) const
{
    return *space_ == *o.space_ && a_ == o.a_;
}

MatrixOperator operator+(MatrixOperator a, const MatrixOperator& b) { return a += b; }
MatrixOperator operator-(MatrixOperator a, const MatrixOperator& b) { return a -= b; }
MatrixOperator operator*(double s, MatrixOperator a) { return a *= s; }

MatrixOperator operator*(const MatrixOperator& a, const MatrixOperator& b)
{
    require_same_space(*a.space(), *b.space());
    const auto n = a.dimension();
    MatrixOperator c(a.space());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

StepFunction MultiplicationOperator::apply(const StepFunction& f) const
{
    require_same_space(u_.measure(), f.measure());
    StepFunction out = f;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = u_[i] * f[i];
    return out;
}

MatrixOperator MultiplicationOperator::to_matrix() const
{
    return MatrixOperator::diagonal(u_.space(), u_.coefficients());
}

double MultiplicationOperator::norm() const
{
    double m = 0.0;
    for (double v : u_.coefficients()) m = std::max(m, std::abs(v));
    return m;
}

MatrixOperator operator+(const MultiplicationOperator& m, const MatrixOperator& k)
{
    MatrixOperator out = k;
    require_same_space(*m.space(), *k.space());
    for (std::size_t i = 0; i < out.dimension(); ++i) out(i, i) = m.u_values()[i] + k(i, i);
    return out;
}

void LowRankOperator::add_term(StepFunction eta, StepFunction g)
{
    require_same_space(*space_, eta.measure());
    require_same_space(*space_, g.measure());
    terms_.emplace_back(std::move(eta), std::move(g));
}

StepFunction LowRankOperator::apply(const StepFunction& f) const
{
    require_same_space(*space_, f.measure());
    const auto& mu = space_->masses();
    std::vector<double> out(space_->dimension(), 0.0);
    for (const auto& [eta, g] : terms_) {
        double pairing = 0.0;
        for (std::size_t j = 0; j < f.size(); ++j) pairing += eta[j] * f[j] * mu[j];
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += pairing * g[i];
    }
    return {space_, std::move(out)};
}

std::vector<double> LowRankOperator::diagonal_entries() const
{
    const auto& mu = space_->masses();
    std::vector<double> d(space_->dimension(), 0.0);
    for (const auto& [eta, g] : terms_)
        for (std::size_t i = 0; i < d.size(); ++i) d[i] += g[i] * eta[i] * mu[i];
    return d;
}

MatrixOperator LowRankOperator::to_matrix() const
{
    MatrixOperator k(space_);
    for (const auto& [eta, g] : terms_) k += rank_one_diffuse(eta, g);
    return k;
}

MultiplicationOperator mult_op(StepFunction u)
{
    return MultiplicationOperator(std::move(u));
}

MatrixOperator rank_one_diffuse(const StepFunction& eta, const StepFunction& g)
{
    require_same_space(eta.measure(), g.measure());
    const auto& mu = eta.measure().masses();
    MatrixOperator k(eta.space());
    const auto n = k.dimension();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) k(i, j) = g[i] * eta[j] * mu[j];
    return k;
}

MatrixOperator rank_one_atomic_offdiag(std::size_t j, const StepFunction& eta)
{
    const auto& space = eta.measure();
    if (space.has_diffuse()) throw std::invalid_argument("rank_one_atomic_offdiag: space has diffuse coordinates");
    if (j >= space.dimension()) throw std::out_of_range("rank_one_atomic_offdiag: atom index out of range");
    const auto& mu = space.masses();
    MatrixOperator k(eta.space());
    for (std::size_t c = 0; c < k.dimension(); ++c)
        if (c != j) k(j, c) = eta[c] * mu[c];
    return k;
}

double opnorm_p1(const MatrixOperator& a)
{
    return kernels::parallel::opnorm_p1(a.view()).value;
}

OpnormEstimate estimate_opnorm(const MatrixOperator& a, double p, const kernels::EstimateOptions& options)
{
    auto est = kernels::parallel::opnorm_estimate(a.view(), p, options);
    if (est.witness.empty()) return {est.value, StepFunction::zero(a.space())};
    return {est.value, from_standard(est.witness, a.space(), p)};
}

double opnorm_estimate(const MatrixOperator& a, double p, const kernels::EstimateOptions& options)
{
    return kernels::parallel::opnorm_estimate(a.view(), p, options).value;
}

MatrixOperator pinch(const MatrixOperator& a, const Partition& blocks)
{
    const auto n = a.dimension();
    constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
    std::vector<std::size_t> label(n, unassigned);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (auto i : blocks[b]) {
            if (i >= n) throw std::out_of_range("pinch: index " + std::to_string(i) + " out of range");
            if (label[i] != unassigned) throw std::invalid_argument("pinch: blocks overlap at index " + std::to_string(i));
            label[i] = b;
        }
    if (std::find(label.begin(), label.end(), unassigned) != label.end())
        throw std::invalid_argument("pinch: blocks do not cover every coordinate");

    MatrixOperator out = a;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (label[i] != label[j]) out(i, j) = 0.0;
    return out;
}

CoordinateProjection::CoordinateProjection(SpacePtr space, std::vector<bool> mask)
    : space_(std::move(space)), mask_(std::move(mask))
{
    if (mask_.size() != space_->dimension()) throw std::invalid_argument("projection mask length mismatch");
}

StepFunction CoordinateProjection::apply(const StepFunction& f) const
{
    require_same_space(*space_, f.measure());
    StepFunction out = f;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!mask_[i]) out[i] = 0.0;
    return out;
}

MatrixOperator CoordinateProjection::to_matrix() const
{
    MatrixOperator m(space_);
    for (std::size_t i = 0; i < mask_.size(); ++i)
        if (mask_[i]) m(i, i) = 1.0;
    return m;
}

ProjectionFamily projections(SpacePtr space, std::size_t n)
{
    const auto dim = space->dimension();
    if (n > dim) throw std::invalid_argument("projections: n exceeds the dimension");
    std::vector<CoordinateProjection> ps;
    ps.reserve(n);
    std::vector<bool> rest(dim, true);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<bool> m(dim, false);
        m[j] = true;
        rest[j] = false;
        ps.emplace_back(space, std::move(m));
    }
    return {std::move(ps), CoordinateProjection(space, std::move(rest))};
}

} // namespace essnorm
