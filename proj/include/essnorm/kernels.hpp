#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace essnorm::kernels {

/// Row-major n x n matrix acting on indicator coefficients over a weighted
/// coordinate space with masses mu.
struct DenseView {
    std::span<const double> entries;
    std::size_t n = 0;
    std::span<const double> masses;

    double operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

struct ColumnMax {
    double value = 0.0;
    std::size_t column = 0;
};

struct EstimateOptions {
    int max_iterations = 100;
    double relative_tolerance = 1e-12;
};

struct Estimate {
    double value = 0.0;
    std::size_t seed = 0;        ///< 0..n-1: basis seed e_j, n: the all-ones seed
    std::vector<double> witness; ///< unit vector in unweighted l_p coordinates
};

/// Below this dimension the parallel variants run serially.
inline constexpr std::size_t parallel_threshold = 64;

// Serial reference implementations. Kept for testing the parallel ones and as
// the definition of the summation order.
namespace serial {

/// (sum_i |A_ij| mu_i) / mu_j for every column j; row sums run i = 0..n-1.
std::vector<double> column_quotients_p1(const DenseView& a);
/// Exact L1 operator norm: the max column quotient, first maximal column on ties.
ColumnMax opnorm_p1(const DenseView& a);
/// Same as opnorm_p1 restricted to rows i >= first_row (the norm of Q_n A).
ColumnMax opnorm_p1_tail_rows(const DenseView& a, std::size_t first_row);
/// p-norm power method, seeded with every basis vector and the all-ones vector.
Estimate opnorm_estimate(const DenseView& a, double p, const EstimateOptions& options = {});

} // namespace serial

namespace parallel {

std::vector<double> column_quotients_p1(const DenseView& a);
ColumnMax opnorm_p1(const DenseView& a);
ColumnMax opnorm_p1_tail_rows(const DenseView& a, std::size_t first_row);
Estimate opnorm_estimate(const DenseView& a, double p, const EstimateOptions& options = {});

} // namespace parallel

/// Number of worker threads parallel kernels will use.
int worker_count();
/// Reads ESSNORM_WORKERS (positive integer) and applies it; returns the count in effect.
int configure_workers_from_env();

} // namespace essnorm::kernels
