#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Brute-force evaluations of the defining formulas. Nothing here calls into
// the lattice, operator or essential modules; these are the independent side
// of every check that compares against them.
namespace essnorm::oracle {

/// Row-major square matrix as plain data.
struct Dense {
    std::size_t n = 0;
    std::vector<double> a;
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// (|S| f)_i = sup { |(S g)_i| : |g| <= f }, g ranging over a grid with
/// `steps` intervals per coordinate on [-f_j, f_j].
std::vector<double> modulus_apply_grid(const Dense& s, std::span<const double> f, int steps);

/// ((S v T) e_j)_i = sup_{t in [0,1]} t S_ij + (1 - t) T_ij: the decomposition
/// g + h = e_j, g, h >= 0 is the one-parameter family g = t e_j.
std::vector<double> join_column(const Dense& s, const Dense& t, std::size_t j, int steps);
std::vector<double> meet_column(const Dense& s, const Dense& t, std::size_t j, int steps);

/// Weighted L1 norm of A by evaluating ||A f|| / ||f|| on the extreme points
/// +-1_{B_j} / mu_j of the unit ball.
double opnorm_p1_extreme_points(const Dense& a, std::span<const double> masses);

/// ||A||_{p->p} on weighted 2-dim L_p, by a dense sweep over the unit circle
/// followed by golden-section refinement around the best angle.
double opnorm_2x2_sweep(const Dense& a, std::span<const double> masses, double p, int steps);

/// ||A||_{p->p} on weighted 3-dim L_p by a sweep over the sphere.
double opnorm_3x3_sweep(const Dense& a, std::span<const double> masses, double p, int steps);

/// Largest singular value of an unweighted 2x2 matrix, closed form.
double spectral_norm_2x2(const Dense& a);

/// min over index sets S with |S| <= k of max_{i not in S} |u_i|, by enumeration.
double best_diagonal_enumerate(std::span<const double> u, std::size_t k);

} // namespace essnorm::oracle
