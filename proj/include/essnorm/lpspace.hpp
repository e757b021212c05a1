#pragma once

#include <functional>
#include <span>
#include <vector>

#include "essnorm/measure.hpp"

namespace essnorm {

/// A function constant on every atom and every diffuse cell; coefficient i is
/// its a.e.-value on coordinate i.
class StepFunction {
public:
    StepFunction(SpacePtr space, std::vector<double> coefficients);
    static StepFunction zero(SpacePtr space);
    static StepFunction constant(SpacePtr space, double value);

    const SpacePtr& space() const { return space_; }
    const MeasureSpace& measure() const { return *space_; }
    std::size_t size() const { return coefficients_.size(); }

    std::span<const double> coefficients() const { return coefficients_; }
    double operator[](std::size_t i) const { return coefficients_[i]; }
    double& operator[](std::size_t i) { return coefficients_[i]; }

    StepFunction& operator+=(const StepFunction& o);
    StepFunction& operator-=(const StepFunction& o);
    StepFunction& operator*=(double s);

    /// Values on the diffuse cells only.
    std::span<const double> diffuse_values() const;
    std::span<const double> atom_values() const;

    bool operator==(const StepFunction& o) const;

private:
    SpacePtr space_;
    std::vector<double> coefficients_;
};

StepFunction operator+(StepFunction a, const StepFunction& b);
StepFunction operator-(StepFunction a, const StepFunction& b);
StepFunction operator*(double s, StepFunction a);

void require_same_space(const MeasureSpace& a, const MeasureSpace& b);

/// (sum_i |f_i|^p mu_i)^(1/p). At p = 1 the sum runs left to right over the
/// coordinate order so results are reproducible bit for bit.
double norm_p(const StepFunction& f, double p);

/// Integral of f over Omega.
double integral(const StepFunction& f);

/// 1_A / mu(A)^(1/p); unit p-norm.
StepFunction normalized_indicator(SpacePtr space, std::span<const std::size_t> index_set, double p);

/// Isometry onto unweighted l_p: f_i -> f_i mu_i^(1/p).
std::vector<double> to_standard(const StepFunction& f, double p);
StepFunction from_standard(std::span<const double> c, SpacePtr space, double p);

/// Unweighted p-norm of a coordinate vector.
double lp_norm(std::span<const double> x, double p);

/// A function on the diffuse interval, known through its cell averages so that
/// one function-level object can be discretized at every refinement level.
class CellFunction {
public:
    using Average = std::function<double(double lo, double hi)>;

    explicit CellFunction(Average average) : average_(std::move(average)) {}

    static CellFunction constant(double c);
    static CellFunction affine(double intercept, double slope);
    /// Averages via an exact antiderivative F: (F(hi) - F(lo)) / (hi - lo).
    static CellFunction from_antiderivative(std::function<double(double)> antiderivative);
    /// sum_k coeffs[k] cos(k pi x), averaged exactly.
    static CellFunction cosine_series(std::vector<double> coeffs);

    double average(double lo, double hi) const { return average_(lo, hi); }

private:
    Average average_;
};

/// Step function whose atom values are taken from atom_values and whose cell
/// values are cell averages of diffuse.
StepFunction discretize(SpacePtr space, std::span<const double> atom_values, const CellFunction& diffuse);

} // namespace essnorm
