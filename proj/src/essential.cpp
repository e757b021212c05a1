#include "essnorm/essential.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace essnorm {

StepFunction EssNormProblem::u() const
{
    std::vector<double> c = u_atoms;
    c.insert(c.end(), u_diffuse.begin(), u_diffuse.end());
    return {space, std::move(c)};
}

EssNormProblem make_problem(SpacePtr space, std::vector<double> u_atoms, std::vector<double> u_diffuse)
{
    if (!space) throw ConstructionError("problem needs a measure space");
    if (u_atoms.size() != space->atom_count())
        throw ConstructionError("u has " + std::to_string(u_atoms.size()) + " atom values, space has " +
                                std::to_string(space->atom_count()) + " atoms");
    if (u_diffuse.size() != space->cell_count())
        throw ConstructionError("u has " + std::to_string(u_diffuse.size()) + " cell values, space has " +
                                std::to_string(space->cell_count()) + " cells");
    auto tail = space->atom_tail();
    return {std::move(space), std::move(u_atoms), tail, std::move(u_diffuse)};
}

double essential_norm(const EssNormProblem& problem)
{
    double diffuse_sup = 0.0;
    for (double v : problem.u_diffuse) diffuse_sup = std::max(diffuse_sup, std::abs(v));
    return std::max(diffuse_sup, limsup_abs(problem.u_tail, problem.u_atoms));
}

MultiplicationOperator diagonal_compactification(const MatrixOperator& k)
{
    return MultiplicationOperator(StepFunction(k.space(), k.diagonal_entries()));
}

std::string_view to_string(Construction c)
{
    return c == Construction::witness_pair ? "witness_pair" : "pinching_diagonal";
}

LowerBoundCertificate pinching_lower_bound(const StepFunction& u, const MatrixOperator& k, double p)
{
    if (p != 1.0) throw std::domain_error("pinching_lower_bound needs exact norms and is only defined at p = 1");
    const auto pinched = mult_op(u) + diagonal_compactification(k).to_matrix();
    const auto best = kernels::parallel::opnorm_p1(pinched.view());
    const std::size_t column[] = {best.column};
    return {best.value, normalized_indicator(k.space(), column, 1.0), Construction::pinching_diagonal, 1.0};
}

namespace {

template <class Kernel>
double ratio_impl(const StepFunction& u, const Kernel& k, const StepFunction& g, double p)
{
    auto image = k.apply(g);
    for (std::size_t i = 0; i < image.size(); ++i) image[i] += u[i] * g[i];
    const double gn = norm_p(g, p);
    if (gn == 0.0) throw std::invalid_argument("witness_ratio: zero witness");
    return norm_p(image, p) / gn;
}

template <class Kernel>
LowerBoundCertificate witness_impl(const EssNormProblem& problem, const Kernel& k, double eps, double p)
{
    const auto& space = problem.space;
    require_same_space(*space, *k.space());
    const auto sets = witness_sets(*space, problem.u_diffuse, eps);
    const auto u = problem.u();

    std::vector<StepFunction> f;
    f.reserve(sets.size());
    for (const auto& a : sets) f.push_back(normalized_indicator(space, a, p));

    // candidates in a fixed order: f_1..f_N, then f_n - f_m for n < m
    std::vector<std::pair<std::size_t, std::size_t>> cand;
    for (std::size_t n = 0; n < f.size(); ++n) cand.emplace_back(n, n);
    for (std::size_t n = 0; n < f.size(); ++n)
        for (std::size_t m = n + 1; m < f.size(); ++m) cand.emplace_back(n, m);

    auto witness_of = [&](std::size_t c) {
        const auto [n, m] = cand[c];
        return n == m ? f[n] : f[n] - f[m];
    };

    std::vector<double> ratios(cand.size());
    const auto count = static_cast<std::ptrdiff_t>(cand.size());
#pragma omp parallel for schedule(dynamic) if (space->dimension() >= kernels::parallel_threshold)
    for (std::ptrdiff_t c = 0; c < count; ++c) {
        const auto idx = static_cast<std::size_t>(c);
        ratios[idx] = ratio_impl(u, k, witness_of(idx), p);
    }

    std::size_t best = 0;
    for (std::size_t c = 1; c < ratios.size(); ++c)
        if (ratios[c] > ratios[best]) best = c;
    return {ratios[best], witness_of(best), Construction::witness_pair, p};
}

} // namespace

double witness_ratio(const StepFunction& u, const MatrixOperator& k, const StepFunction& g, double p)
{
    return ratio_impl(u, k, g, p);
}

double witness_ratio(const StepFunction& u, const LowRankOperator& k, const StepFunction& g, double p)
{
    return ratio_impl(u, k, g, p);
}

bool verify_certificate(const LowerBoundCertificate& cert, const StepFunction& u, const MatrixOperator& k,
                        double rel_tol)
{
    const double tol = rel_tol * std::max(1.0, std::abs(cert.bound));
    const double on_full = witness_ratio(u, k, cert.witness, cert.p);
    bool ok = true;
    if (cert.construction == Construction::witness_pair) {
        ok = std::abs(on_full - cert.bound) <= tol;
    }
    else {
        const auto dk = diagonal_compactification(k).to_matrix();
        const double on_pinched = witness_ratio(u, dk, cert.witness, cert.p);
        ok = std::abs(on_pinched - cert.bound) <= tol && on_full >= cert.bound - tol;
    }
    if (cert.p == 1.0) ok = ok && cert.bound <= opnorm_p1(mult_op(u) + k) + tol;
    return ok;
}

std::vector<std::vector<std::size_t>> witness_sets(const MeasureSpace& space, std::span<const double> u_diffuse,
                                                   double eps)
{
    if (!space.has_diffuse()) throw std::invalid_argument("witness_sets: space has no diffuse part");
    if (u_diffuse.size() != space.cell_count()) throw std::invalid_argument("witness_sets: cell count mismatch");
    double top = 0.0;
    for (double v : u_diffuse) top = std::max(top, std::abs(v));
    if (!(eps > 0.0) || !(eps < top))
        throw std::domain_error("witness_sets: need 0 < eps < max|u| on the diffuse part");

    const double threshold = top - eps;
    std::vector<std::size_t> level_set;
    for (std::size_t c = 0; c < u_diffuse.size(); ++c)
        if (std::abs(u_diffuse[c]) > threshold) level_set.push_back(space.cell_coordinate(c));
    if (level_set.empty()) throw std::logic_error("witness_sets: empty superlevel set");

    std::vector<std::vector<std::size_t>> sets{level_set};
    while (sets.back().size() > 1) {
        const auto& prev = sets.back();
        const auto keep = prev.size() / 2;
        sets.emplace_back(prev.end() - static_cast<std::ptrdiff_t>(keep), prev.end());
    }
    return sets;
}

LowerBoundCertificate witness_lower_bound(const EssNormProblem& problem, const MatrixOperator& k, double eps,
                                          double p)
{
    return witness_impl(problem, k, eps, p);
}

LowerBoundCertificate witness_lower_bound(const EssNormProblem& problem, const LowRankOperator& k, double eps,
                                          double p)
{
    return witness_impl(problem, k, eps, p);
}

std::vector<double> qn_decay_profile(const MatrixOperator& k, std::size_t n_max)
{
    if (n_max > k.dimension()) throw std::invalid_argument("qn_decay_profile: n_max exceeds the dimension");
    std::vector<double> out(n_max + 1);
    const auto view = k.view();
    for (std::size_t n = 0; n <= n_max; ++n) out[n] = kernels::parallel::opnorm_p1_tail_rows(view, n).value;
    return out;
}

double best_diagonal_rank_k(std::span<const double> u_values, std::size_t k)
{
    if (k >= u_values.size()) return 0.0;
    std::vector<double> a(u_values.size());
    std::transform(u_values.begin(), u_values.end(), a.begin(), [](double v) { return std::abs(v); });
    const auto kth = a.begin() + static_cast<std::ptrdiff_t>(k);
    std::nth_element(a.begin(), kth, a.end(), std::greater<>());
    return *kth;
}

MatrixOperator truncation_perturbation(const StepFunction& u, std::size_t n)
{
    if (n > u.size()) throw std::invalid_argument("truncation_perturbation: n exceeds the dimension");
    MatrixOperator k(u.space());
    for (std::size_t i = 0; i < n; ++i) k(i, i) = -u[i];
    return k;
}

double truncation_upper_bound(const EssNormProblem& problem, std::size_t n)
{
    if (n > problem.space->atom_count())
        throw std::invalid_argument("truncation_upper_bound: n exceeds the number of stored atoms");
    const auto u = problem.u();
    const double finite_part = opnorm_p1(mult_op(u) + truncation_perturbation(u, n));
    return std::max(finite_part, problem.u_tail.sup_abs_beyond(problem.space->atom_count()));
}

LowRankOperator FunctionKernel::discretize(const SpacePtr& space) const
{
    LowRankOperator k(space);
    const std::vector<double> zeros(space->atom_count(), 0.0);
    for (const auto& [eta, g] : terms) k.add_term(essnorm::discretize(space, zeros, eta), essnorm::discretize(space, zeros, g));
    return k;
}

} // namespace essnorm
