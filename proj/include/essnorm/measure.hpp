#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace essnorm {

/// Thrown when a domain object is built from inconsistent data.
class ConstructionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class TailKind { finitely_supported, constant_limit, harmonic_limit, alternating };

std::string_view to_string(TailKind kind);
std::optional<TailKind> parse_tail_kind(std::string_view name);

/// Closed-form rule for the values u(B_n) of the atoms past the stored prefix.
///
///   finitely_supported   u_n = 0
///   constant_limit       u_n = c
///   harmonic_limit       u_n = c + alpha / n
///   alternating          u_n = c (n odd), c2 (n even)
///
/// Indices n are 1-based, matching the atom numbering B_1, B_2, ...
struct TailDescriptor {
    TailKind kind = TailKind::finitely_supported;
    double c = 0.0;
    double alpha = 0.0;
    double c2 = 0.0;

    static TailDescriptor finitely_supported() { return {}; }
    static TailDescriptor constant_limit(double c) { return {TailKind::constant_limit, c, 0.0, 0.0}; }
    static TailDescriptor harmonic_limit(double c, double alpha) { return {TailKind::harmonic_limit, c, alpha, 0.0}; }
    static TailDescriptor alternating(double c1, double c2) { return {TailKind::alternating, c1, 0.0, c2}; }

    double value(std::size_t n) const;
    double limsup_abs() const;
    /// sup_{n > after} |u_n|, exact for every kind.
    double sup_abs_beyond(std::size_t after) const;

    bool operator==(const TailDescriptor&) const = default;
};

struct Interval {
    double a = 0.0;
    double b = 1.0;
    double length() const { return b - a; }
    bool operator==(const Interval&) const = default;
};

/// Omega = Omega_a u Omega_d: a finite list of atoms followed by 2^level equal
/// cells of one bounded interval. Coordinates are laid out atoms first.
class MeasureSpace {
public:
    MeasureSpace(std::vector<double> atom_masses, TailDescriptor atom_tail,
                 std::optional<Interval> diffuse_interval, int diffuse_level);

    std::size_t atom_count() const { return atom_masses_.size(); }
    std::size_t cell_count() const;
    std::size_t dimension() const { return atom_count() + cell_count(); }

    bool has_diffuse() const { return diffuse_.has_value(); }
    bool is_atom(std::size_t i) const { return i < atom_count(); }

    const std::vector<double>& atom_masses() const { return atom_masses_; }
    const TailDescriptor& atom_tail() const { return tail_; }
    const std::optional<Interval>& diffuse_interval() const { return diffuse_; }
    int diffuse_level() const { return level_; }

    double cell_mass() const;
    double mass(std::size_t i) const;
    const std::vector<double>& masses() const { return masses_; }

    /// Cell k (0-based, within the diffuse part) covers [left, right).
    Interval cell(std::size_t k) const;
    double cell_midpoint(std::size_t k) const;
    std::size_t cell_coordinate(std::size_t k) const { return atom_count() + k; }

    bool operator==(const MeasureSpace& o) const
    {
        return atom_masses_ == o.atom_masses_ && tail_ == o.tail_ && diffuse_ == o.diffuse_ && level_ == o.level_;
    }

private:
    std::vector<double> atom_masses_;
    TailDescriptor tail_;
    std::optional<Interval> diffuse_;
    int level_ = 0;
    std::vector<double> masses_;
};

using SpacePtr = std::shared_ptr<const MeasureSpace>;

SpacePtr build_space(std::vector<double> atom_masses, TailDescriptor atom_tail = {},
                     std::optional<Interval> diffuse_interval = std::nullopt, int diffuse_level = 0);

/// Splits every diffuse cell in two. Atoms are indivisible, so a purely atomic
/// space is rejected.
SpacePtr refine(const MeasureSpace& space);

/// limsup |u_n| of the full sequence. The stored prefix cannot change a limsup
/// and is accepted only so call sites read naturally.
double limsup_abs(const TailDescriptor& tail, std::span<const double> stored_values);

} // namespace essnorm
