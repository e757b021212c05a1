#include "essnorm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "essnorm/lpspace.hpp"

namespace essnorm::kernels {

namespace {

// Column quotients sum_i |a_ij| (mu_i / mu_j) for columns [lo, hi), rows from
// first_row on. Rows are swept in order, so every column is still summed
// left to right over i; weighting term by term keeps the diagonal weight at 1.
void column_quotients(const DenseView& a, std::size_t first_row, std::size_t lo, std::size_t hi, double* q)
{
    for (std::size_t j = lo; j < hi; ++j) q[j] = 0.0;
    for (std::size_t i = first_row; i < a.n; ++i) {
        const double mi = a.masses[i];
        const double* row = a.entries.data() + i * a.n;
        for (std::size_t j = lo; j < hi; ++j) q[j] += std::abs(row[j]) * (mi / a.masses[j]);
    }
}

ColumnMax first_max(const std::vector<double>& q)
{
    ColumnMax best;
    for (std::size_t j = 0; j < q.size(); ++j)
        if (j == 0 || q[j] > best.value) best = {q[j], j};
    return best;
}

void check_view(const DenseView& a)
{
    if (a.entries.size() != a.n * a.n || a.masses.size() != a.n)
        throw std::invalid_argument("dense view has inconsistent sizes");
}

// B_ij = A_ij (mu_i / mu_j)^(1/p); the diagonal weight is exactly 1.
std::vector<double> standard_matrix(const DenseView& a, double p)
{
    const auto n = a.n;
    std::vector<double> b(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double w = (i == j) ? 1.0 : std::pow(a.masses[i] / a.masses[j], 1.0 / p);
            b[i * n + j] = a(i, j) * w;
        }
    return b;
}

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// One dual-ascent run. Every evaluated quotient ||Bx||/||x|| is a lower bound,
// so the best one seen is kept rather than the last.
Estimate run_seed(const std::vector<double>& b, std::size_t n, double p, std::size_t seed,
                  const EstimateOptions& options)
{
    const double q = p / (p - 1.0);
    std::vector<double> x(n, 0.0), y(n), yd(n), z(n);
    if (seed < n)
        x[seed] = 1.0;
    else
        std::fill(x.begin(), x.end(), std::pow(static_cast<double>(n), -1.0 / p));

    Estimate best{0.0, seed, x};
    double previous = -1.0;
    for (int it = 0; it < options.max_iterations; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += b[i * n + j] * x[j];
            y[i] = s;
        }
        const double xn = lp_norm(x, p);
        const double yn = lp_norm(y, p);
        if (xn == 0.0) break;
        const double value = yn / xn;
        if (value > best.value) {
            best.value = value;
            best.witness = x;
        }
        if (yn == 0.0) break;
        if (previous >= 0.0 && std::abs(value - previous) <= options.relative_tolerance * value) break;
        previous = value;

        for (std::size_t i = 0; i < n; ++i) yd[i] = sign(y[i]) * std::pow(std::abs(y[i]) / yn, p - 1.0);
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += b[i * n + j] * yd[i];
            z[j] = s;
        }
        const double zn = lp_norm(z, q);
        if (zn == 0.0) break;
        double zx = 0.0;
        for (std::size_t j = 0; j < n; ++j) zx += z[j] * x[j];
        // stationary point of the dual ascent
        if (zn <= zx * (1.0 + options.relative_tolerance) && it > 0) break;
        for (std::size_t j = 0; j < n; ++j) x[j] = sign(z[j]) * std::pow(std::abs(z[j]) / zn, q - 1.0);
    }
    return best;
}

Estimate reduce_seeds(std::vector<Estimate>& runs)
{
    std::size_t best = 0;
    for (std::size_t s = 1; s < runs.size(); ++s)
        if (runs[s].value > runs[best].value) best = s;
    return std::move(runs[best]);
}

void check_p(double p)
{
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::domain_error("p must be a finite real >= 1");
}

Estimate p1_estimate(const DenseView& a, const ColumnMax& m)
{
    std::vector<double> w(a.n, 0.0);
    if (a.n > 0) w[m.column] = 1.0;
    return {m.value, m.column, std::move(w)};
}

} // namespace

namespace serial {

std::vector<double> column_quotients_p1(const DenseView& a)
{
    check_view(a);
    std::vector<double> q(a.n);
    column_quotients(a, 0, 0, a.n, q.data());
    return q;
}

ColumnMax opnorm_p1(const DenseView& a)
{
    return first_max(column_quotients_p1(a));
}

ColumnMax opnorm_p1_tail_rows(const DenseView& a, std::size_t first_row)
{
    check_view(a);
    std::vector<double> q(a.n);
    column_quotients(a, first_row, 0, a.n, q.data());
    return first_max(q);
}

Estimate opnorm_estimate(const DenseView& a, double p, const EstimateOptions& options)
{
    check_p(p);
    check_view(a);
    if (p == 1.0) return p1_estimate(a, opnorm_p1(a));
    if (a.n == 0) return {};
    const auto b = standard_matrix(a, p);
    std::vector<Estimate> runs;
    runs.reserve(a.n + 1);
    for (std::size_t s = 0; s <= a.n; ++s) runs.push_back(run_seed(b, a.n, p, s, options));
    return reduce_seeds(runs);
}

} // namespace serial

namespace parallel {

namespace {

// Each thread owns a block of columns; no reduction across threads.
std::vector<double> blocked_quotients(const DenseView& a, std::size_t first_row)
{
    constexpr std::size_t block = 64;
    std::vector<double> q(a.n);
    const auto blocks = static_cast<std::ptrdiff_t>((a.n + block - 1) / block);
#pragma omp parallel for schedule(static) if (a.n >= parallel_threshold)
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
        const auto lo = static_cast<std::size_t>(b) * block;
        column_quotients(a, first_row, lo, std::min(a.n, lo + block), q.data());
    }
    return q;
}

} // namespace

std::vector<double> column_quotients_p1(const DenseView& a)
{
    check_view(a);
    return blocked_quotients(a, 0);
}

ColumnMax opnorm_p1(const DenseView& a)
{
    return first_max(column_quotients_p1(a));
}

ColumnMax opnorm_p1_tail_rows(const DenseView& a, std::size_t first_row)
{
    check_view(a);
    return first_max(blocked_quotients(a, first_row));
}

Estimate opnorm_estimate(const DenseView& a, double p, const EstimateOptions& options)
{
    check_p(p);
    check_view(a);
    if (p == 1.0) return p1_estimate(a, opnorm_p1(a));
    if (a.n == 0) return {};
    const auto b = standard_matrix(a, p);
    std::vector<Estimate> runs(a.n + 1);
    const auto seeds = static_cast<std::ptrdiff_t>(a.n + 1);
#pragma omp parallel for schedule(dynamic) if (a.n >= 8)
    for (std::ptrdiff_t s = 0; s < seeds; ++s)
        runs[static_cast<std::size_t>(s)] = run_seed(b, a.n, p, static_cast<std::size_t>(s), options);
    return reduce_seeds(runs);
}

} // namespace parallel

int worker_count()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

int configure_workers_from_env()
{
    if (const char* env = std::getenv("ESSNORM_WORKERS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1) throw std::invalid_argument(std::string("ESSNORM_WORKERS must be a positive integer, got '") + env + "'");
#ifdef _OPENMP
        omp_set_num_threads(static_cast<int>(v));
#endif
    }
    return worker_count();
}

} // namespace essnorm::kernels
