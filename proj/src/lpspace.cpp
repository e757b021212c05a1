#include "essnorm/lpspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace essnorm {

namespace {

void check_p(double p)
{
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::domain_error("p must be a finite real >= 1");
}

} // namespace

StepFunction::StepFunction(SpacePtr space, std::vector<double> coefficients)
    : space_(std::move(space)), coefficients_(std::move(coefficients))
{
    if (!space_) throw ConstructionError("step function needs a measure space");
    if (coefficients_.size() != space_->dimension())
        throw ConstructionError("step function has " + std::to_string(coefficients_.size()) +
                                " coefficients, space dimension is " + std::to_string(space_->dimension()));
}

StepFunction StepFunction::zero(SpacePtr space)
{
    const auto n = space->dimension();
    return {std::move(space), std::vector<double>(n, 0.0)};
}

StepFunction StepFunction::constant(SpacePtr space, double value)
{
    const auto n = space->dimension();
    return {std::move(space), std::vector<double>(n, value)};
}

void require_same_space(const MeasureSpace& a, const MeasureSpace& b)
{
    if (&a != &b && !(a == b)) throw std::invalid_argument("objects live on different measure spaces");
}

StepFunction& StepFunction::operator+=(const StepFunction& o)
{
    require_same_space(*space_, *o.space_);
    for (std::size_t i = 0; i < size(); ++i) coefficients_[i] += o.coefficients_[i];
    return *this;
}

StepFunction& StepFunction::operator-=(const StepFunction& o)
{
    require_same_space(*space_, *o.space_);
    for (std::size_t i = 0; i < size(); ++i) coefficients_[i] -= o.coefficients_[i];
    return *this;
}

StepFunction& StepFunction::operator*=(double s)
{
    for (auto& c : coefficients_) c *= s;
    return *this;
}

std::span<const double> StepFunction::diffuse_values() const
{
    return std::span<const double>(coefficients_).subspan(space_->atom_count());
}

std::span<const double> StepFunction::atom_values() const
{
    return std::span<const double>(coefficients_).first(space_->atom_count());
}

bool StepFunction::operator==(const StepFunction& o) const
{
    return *space_ == *o.space_ && coefficients_ == o.coefficients_;
}

StepFunction operator+(StepFunction a, const StepFunction& b) { return a += b; }
StepFunction operator-(StepFunction a, const StepFunction& b) { return a -= b; }
StepFunction operator*(double s, StepFunction a) { return a *= s; }

double norm_p(const StepFunction& f, double p)
{
    check_p(p);
    const auto& mu = f.measure().masses();
    double sum = 0.0;
    if (p == 1.0) {
        for (std::size_t i = 0; i < f.size(); ++i) sum += std::abs(f[i]) * mu[i];
        return sum;
    }
    for (std::size_t i = 0; i < f.size(); ++i) sum += std::pow(std::abs(f[i]), p) * mu[i];
    return std::pow(sum, 1.0 / p);
}

double integral(const StepFunction& f)
{
    const auto& mu = f.measure().masses();
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * mu[i];
    return sum;
}

StepFunction normalized_indicator(SpacePtr space, std::span<const std::size_t> index_set, double p)
{
    check_p(p);
    if (index_set.empty()) throw std::invalid_argument("normalized_indicator: empty index set");
    const auto n = space->dimension();
    std::vector<bool> seen(n, false);
    double m = 0.0;
    for (auto i : index_set) {
        if (i >= n) throw std::out_of_range("normalized_indicator: index out of range");
        if (seen[i]) throw std::invalid_argument("normalized_indicator: repeated index");
        seen[i] = true;
        m += space->mass(i);
    }
    const double height = (p == 1.0) ? 1.0 / m : std::pow(m, -1.0 / p);
    std::vector<double> c(n, 0.0);
    for (auto i : index_set) c[i] = height;
    return {std::move(space), std::move(c)};
}

std::vector<double> to_standard(const StepFunction& f, double p)
{
    check_p(p);
    const auto& mu = f.measure().masses();
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out[i] = f[i] * (p == 1.0 ? mu[i] : std::pow(mu[i], 1.0 / p));
    return out;
}

StepFunction from_standard(std::span<const double> c, SpacePtr space, double p)
{
    check_p(p);
    if (c.size() != space->dimension()) throw std::invalid_argument("from_standard: length mismatch");
    const auto& mu = space->masses();
    std::vector<double> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        out[i] = c[i] / (p == 1.0 ? mu[i] : std::pow(mu[i], 1.0 / p));
    return {std::move(space), std::move(out)};
}

double lp_norm(std::span<const double> x, double p)
{
    check_p(p);
    double sum = 0.0;
    if (p == 1.0) {
        for (double v : x) sum += std::abs(v);
        return sum;
    }
    // scaled so that a vector with one nonzero entry returns that entry exactly
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    for (double v : x) sum += std::pow(std::abs(v) / scale, p);
    return scale * std::pow(sum, 1.0 / p);
}

CellFunction CellFunction::constant(double c)
{
    return CellFunction([c](double, double) { return c; });
}

CellFunction CellFunction::affine(double intercept, double slope)
{
    return CellFunction([=](double lo, double hi) { return intercept + slope * (0.5 * (lo + hi)); });
}

CellFunction CellFunction::from_antiderivative(std::function<double(double)> antiderivative)
{
    return CellFunction([F = std::move(antiderivative)](double lo, double hi) { return (F(hi) - F(lo)) / (hi - lo); });
}

CellFunction CellFunction::cosine_series(std::vector<double> coeffs)
{
    return from_antiderivative([coeffs = std::move(coeffs)](double x) {
        double s = coeffs.empty() ? 0.0 : coeffs[0] * x;
        for (std::size_t k = 1; k < coeffs.size(); ++k) {
            const double w = static_cast<double>(k) * std::numbers::pi;
            s += coeffs[k] * std::sin(w * x) / w;
        }
        return s;
    });
}

StepFunction discretize(SpacePtr space, std::span<const double> atom_values, const CellFunction& diffuse)
{
    if (atom_values.size() != space->atom_count())
        throw std::invalid_argument("discretize: atom value count does not match the space");
    std::vector<double> c(atom_values.begin(), atom_values.end());
    c.reserve(space->dimension());
    for (std::size_t k = 0; k < space->cell_count(); ++k) {
        const auto cell = space->cell(k);
        c.push_back(diffuse.average(cell.a, cell.b));
    }
    return {std::move(space), std::move(c)};
}

} // namespace essnorm
