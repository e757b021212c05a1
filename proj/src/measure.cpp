#include "essnorm/measure.hpp"

#include <algorithm>
#include <cmath>

namespace essnorm {

std::string_view to_string(TailKind kind)
{
    switch (kind) {
    case TailKind::finitely_supported: return "finitely_supported";
    case TailKind::constant_limit: return "constant_limit";
    case TailKind::harmonic_limit: return "harmonic_limit";
    case TailKind::alternating: return "alternating";
    }
    return "?";
}

std::optional<TailKind> parse_tail_kind(std::string_view name)
{
    for (auto k : {TailKind::finitely_supported, TailKind::constant_limit, TailKind::harmonic_limit,
                   TailKind::alternating})
        if (to_string(k) == name) return k;
    return std::nullopt;
}

double TailDescriptor::value(std::size_t n) const
{
    switch (kind) {
    case TailKind::finitely_supported: return 0.0;
    case TailKind::constant_limit: return c;
    case TailKind::harmonic_limit: return c + alpha / static_cast<double>(n);
    case TailKind::alternating: return (n % 2 == 1) ? c : c2;
    }
    return 0.0;
}

double TailDescriptor::limsup_abs() const
{
    switch (kind) {
    case TailKind::finitely_supported: return 0.0;
    case TailKind::constant_limit:
    case TailKind::harmonic_limit: return std::abs(c);
    case TailKind::alternating: return std::max(std::abs(c), std::abs(c2));
    }
    return 0.0;
}

double TailDescriptor::sup_abs_beyond(std::size_t after) const
{
    switch (kind) {
    case TailKind::finitely_supported: return 0.0;
    case TailKind::constant_limit: return std::abs(c);
    case TailKind::harmonic_limit:
        // c + alpha/n is monotone in n, so the sup is at the first index or the limit.
        return std::max(std::abs(value(after + 1)), std::abs(c));
    case TailKind::alternating: return std::max(std::abs(c), std::abs(c2));
    }
    return 0.0;
}

MeasureSpace::MeasureSpace(std::vector<double> atom_masses, TailDescriptor atom_tail,
                           std::optional<Interval> diffuse_interval, int diffuse_level)
    : atom_masses_(std::move(atom_masses)), tail_(atom_tail), diffuse_(diffuse_interval), level_(diffuse_level)
{
    for (std::size_t i = 0; i < atom_masses_.size(); ++i) {
        const double m = atom_masses_[i];
        if (!(m > 0.0) || !std::isfinite(m))
            throw ConstructionError("atom " + std::to_string(i) + " has non-positive or non-finite mass");
    }
    if (level_ < 0) throw ConstructionError("diffuse level must be non-negative");
    if (diffuse_) {
        if (!std::isfinite(diffuse_->a) || !std::isfinite(diffuse_->b))
            throw ConstructionError("diffuse interval must be bounded");
        if (diffuse_->b < diffuse_->a) throw ConstructionError("diffuse interval has b < a");
        if (!(diffuse_->b > diffuse_->a)) throw ConstructionError("diffuse interval is empty");
        if (level_ > 30) throw ConstructionError("diffuse level above 30 is not supported");
    }
    else {
        level_ = 0;
    }

    masses_ = atom_masses_;
    const double cm = diffuse_ ? cell_mass() : 0.0;
    masses_.insert(masses_.end(), cell_count(), cm);
}

std::size_t MeasureSpace::cell_count() const
{
    return diffuse_ ? (std::size_t{1} << level_) : 0;
}

double MeasureSpace::cell_mass() const
{
    if (!diffuse_) return 0.0;
    return std::ldexp(diffuse_->length(), -level_);
}

double MeasureSpace::mass(std::size_t i) const
{
    return masses_.at(i);
}

Interval MeasureSpace::cell(std::size_t k) const
{
    if (!diffuse_ || k >= cell_count()) throw std::out_of_range("cell index out of range");
    const double h = cell_mass();
    return {diffuse_->a + static_cast<double>(k) * h, diffuse_->a + static_cast<double>(k + 1) * h};
}

double MeasureSpace::cell_midpoint(std::size_t k) const
{
    if (!diffuse_ || k >= cell_count()) throw std::out_of_range("cell index out of range");
    const double h = cell_mass();
    return diffuse_->a + (static_cast<double>(k) + 0.5) * h;
}

SpacePtr build_space(std::vector<double> atom_masses, TailDescriptor atom_tail,
                     std::optional<Interval> diffuse_interval, int diffuse_level)
{
    return std::make_shared<const MeasureSpace>(std::move(atom_masses), atom_tail, diffuse_interval, diffuse_level);
}

SpacePtr refine(const MeasureSpace& space)
{
    if (!space.has_diffuse()) throw ConstructionError("cannot refine a purely atomic space");
    return build_space(space.atom_masses(), space.atom_tail(), space.diffuse_interval(), space.diffuse_level() + 1);
}

double limsup_abs(const TailDescriptor& tail, std::span<const double> /*stored_values*/)
{
    return tail.limsup_abs();
}

} // namespace essnorm
