#include "essnorm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace essnorm::oracle {

namespace {

double weighted_norm(std::span<const double> x, std::span<const double> mu, double p)
{
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), p) * mu[i];
    return std::pow(s, 1.0 / p);
}

double ratio(const Dense& a, std::span<const double> mu, double p, std::span<const double> x)
{
    std::vector<double> y(a.n, 0.0);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j) y[i] += a.at(i, j) * x[j];
    const double xn = weighted_norm(x, mu, p);
    return xn == 0.0 ? 0.0 : weighted_norm(y, mu, p) / xn;
}

template <class F>
double golden_max(F f, double lo, double hi, int iterations)
{
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    double best = std::max(f1, f2);
    for (int it = 0; it < iterations; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
        else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        }
        best = std::max({best, f1, f2});
    }
    return best;
}

} // namespace

std::vector<double> modulus_apply_grid(const Dense& s, std::span<const double> f, int steps)
{
    const auto n = s.n;
    std::vector<double> best(n, 0.0);
    std::vector<int> idx(n, 0);
    std::vector<double> g(n);
    while (true) {
        for (std::size_t j = 0; j < n; ++j) g[j] = f[j] * (-1.0 + 2.0 * idx[j] / steps);
        for (std::size_t i = 0; i < n; ++i) {
            double v = 0.0;
            for (std::size_t j = 0; j < n; ++j) v += s.at(i, j) * g[j];
            best[i] = std::max(best[i], std::abs(v));
        }
        std::size_t d = 0;
        while (d < n && ++idx[d] > steps) idx[d++] = 0;
        if (d == n) break;
    }
    return best;
}

namespace {

template <class Better>
std::vector<double> column_extreme(const Dense& s, const Dense& t, std::size_t j, int steps, Better better)
{
    std::vector<double> out(s.n);
    for (std::size_t i = 0; i < s.n; ++i) {
        double v = s.at(i, j); // t = 1
        for (int k = 0; k <= steps; ++k) {
            const double tt = static_cast<double>(k) / steps;
            const double w = tt * s.at(i, j) + (1.0 - tt) * t.at(i, j);
            if (better(w, v)) v = w;
        }
        out[i] = v;
    }
    return out;
}

} // namespace

std::vector<double> join_column(const Dense& s, const Dense& t, std::size_t j, int steps)
{
    return column_extreme(s, t, j, steps, [](double a, double b) { return a > b; });
}

std::vector<double> meet_column(const Dense& s, const Dense& t, std::size_t j, int steps)
{
    return column_extreme(s, t, j, steps, [](double a, double b) { return a < b; });
}

double opnorm_p1_extreme_points(const Dense& a, std::span<const double> masses)
{
    double best = 0.0;
    std::vector<double> x(a.n);
    for (std::size_t j = 0; j < a.n; ++j)
        for (double sgn : {1.0, -1.0}) {
            std::fill(x.begin(), x.end(), 0.0);
            x[j] = sgn / masses[j];
            best = std::max(best, ratio(a, masses, 1.0, x));
        }
    return best;
}

double opnorm_2x2_sweep(const Dense& a, std::span<const double> masses, double p, int steps)
{
    if (a.n != 2) throw std::invalid_argument("opnorm_2x2_sweep: need a 2x2 matrix");
    auto f = [&](double th) {
        const double x[2] = {std::cos(th), std::sin(th)};
        return ratio(a, masses, p, x);
    };
    const double h = std::numbers::pi / steps;
    double best = 0.0, best_th = 0.0;
    for (int k = 0; k < steps; ++k) {
        const double v = f(k * h);
        if (v > best) best = v, best_th = k * h;
    }
    return std::max(best, golden_max(f, best_th - h, best_th + h, 200));
}

double opnorm_3x3_sweep(const Dense& a, std::span<const double> masses, double p, int steps)
{
    if (a.n != 3) throw std::invalid_argument("opnorm_3x3_sweep: need a 3x3 matrix");
    auto f = [&](double th, double ph) {
        const double x[3] = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
        return ratio(a, masses, p, x);
    };
    const double h = std::numbers::pi / steps;
    double best = 0.0, bt = 0.0, bp = 0.0;
    for (int i = 0; i <= steps; ++i)
        for (int k = 0; k < 2 * steps; ++k) {
            const double v = f(i * h, k * h);
            if (v > best) best = v, bt = i * h, bp = k * h;
        }
    // pattern search around the best grid point
    for (double step = h; step > 1e-10; step *= 0.5) {
        bool moved = true;
        while (moved) {
            moved = false;
            for (auto [dt, dp] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
                const double v = f(bt + dt * step, bp + dp * step);
                if (v > best) {
                    best = v;
                    bt += dt * step;
                    bp += dp * step;
                    moved = true;
                }
            }
        }
    }
    return best;
}

double spectral_norm_2x2(const Dense& a)
{
    if (a.n != 2) throw std::invalid_argument("spectral_norm_2x2: need a 2x2 matrix");
    // eigenvalues of A^T A
    const double p = a.at(0, 0) * a.at(0, 0) + a.at(1, 0) * a.at(1, 0);
    const double r = a.at(0, 1) * a.at(0, 1) + a.at(1, 1) * a.at(1, 1);
    const double q = a.at(0, 0) * a.at(0, 1) + a.at(1, 0) * a.at(1, 1);
    const double tr = p + r;
    const double disc = std::sqrt((p - r) * (p - r) + 4.0 * q * q);
    return std::sqrt(0.5 * (tr + disc));
}

double best_diagonal_enumerate(std::span<const double> u, std::size_t k)
{
    const auto n = u.size();
    if (n > 20) throw std::invalid_argument("best_diagonal_enumerate: too many coordinates to enumerate");
    double best = -1.0;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountl(mask)) > k) continue;
        // cancel u on the chosen support with d_i = -u_i; nothing better is possible there
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (!(mask & (1ul << i))) worst = std::max(worst, std::abs(u[i]));
        if (best < 0.0 || worst < best) best = worst;
    }
    return best;
}

} // namespace essnorm::oracle
