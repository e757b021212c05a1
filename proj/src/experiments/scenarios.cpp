#include <algorithm>
#include <cmath>
#include <sstream>

#include "essnorm/essential.hpp"
#include "essnorm/experiments.hpp"
#include "essnorm/lattice.hpp"
#include "essnorm/oracle.hpp"
#include "essnorm/random.hpp"

namespace essnorm::experiments {

namespace {

using FK = FunctionSpec::Kind;
using PK = PerturbationSpec::Kind;

FunctionSpec constant_spec(double v)
{
    FunctionSpec f;
    f.value = v;
    return f;
}

bool function_level(const FunctionSpec& f)
{
    return f.kind == FK::constant || f.kind == FK::affine;
}

CellFunction cell_function(const FunctionSpec& f)
{
    if (f.kind == FK::constant) return CellFunction::constant(f.value);
    return CellFunction::affine(f.intercept, f.slope);
}

/// sup |f| over [a, b] for a function-level spec.
double function_sup(const FunctionSpec& f, const Interval& iv)
{
    if (f.kind == FK::constant) return std::abs(f.value);
    return std::max(std::abs(f.intercept + f.slope * iv.a), std::abs(f.intercept + f.slope * iv.b));
}

double atom_value(const FunctionSpec& f, std::size_t n)
{
    switch (f.kind) {
    case FK::constant: return f.value;
    case FK::affine: return f.intercept + f.slope * static_cast<double>(n);
    case FK::geometric: return f.scale * std::pow(f.ratio, static_cast<double>(n));
    case FK::values: return f.values.at(n - 1);
    }
    return 0.0;
}

StepFunction materialize(const FunctionSpec& f, const SpacePtr& space)
{
    if (f.kind == FK::values) return {space, f.values};
    std::vector<double> atoms(space->atom_count());
    for (std::size_t n = 1; n <= atoms.size(); ++n) atoms[n - 1] = atom_value(f, n);
    if (!space->has_diffuse()) return {space, std::move(atoms)};
    return discretize(space, atoms, cell_function(f));
}

std::vector<double> u_atoms(const ExperimentConfig& c)
{
    if (c.u.atom_values) return *c.u.atom_values;
    std::vector<double> v(c.space.atom_masses.size());
    for (std::size_t n = 1; n <= v.size(); ++n) v[n - 1] = c.u.tail.value(n);
    return v;
}

SpacePtr space_at(const ExperimentConfig& c, int level)
{
    return build_space(c.space.atom_masses, c.u.tail, c.space.interval, level);
}

EssNormProblem problem_at(const ExperimentConfig& c, int level)
{
    auto space = space_at(c, level);
    std::vector<double> cells;
    if (space->has_diffuse()) {
        const auto u = discretize(space, std::vector<double>(space->atom_count(), 0.0),
                                  c.u.diffuse ? cell_function(*c.u.diffuse) : CellFunction::constant(0.0));
        cells.assign(u.diffuse_values().begin(), u.diffuse_values().end());
    }
    return make_problem(std::move(space), u_atoms(c), std::move(cells));
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

Row row(std::string quantity, double parameter, double computed, std::optional<double> bound,
        std::optional<double> formula)
{
    Row r{std::move(quantity), parameter, computed, bound, formula, std::nullopt};
    if (formula) r.residual = std::abs(computed - *formula);
    return r;
}

void require(bool ok, const std::string& path, const std::string& message)
{
    if (!ok) throw ConfigError(path, message);
}

void check_p_exact(const ExperimentConfig& c)
{
    require(c.p == 1.0, "p", std::string(to_string(c.scenario)) + " needs exact norms; p must be 1");
}

void check_levels(const ExperimentConfig& c, long max_level)
{
    require(c.space.interval.has_value(), "space.interval", "this scenario needs a diffuse interval");
    require(c.sweep.from >= 0 && c.sweep.from <= c.sweep.to, "sweep", "need 0 <= from <= to");
    require(c.sweep.to <= max_level, "sweep.to", "level must be at most " + std::to_string(max_level));
}

void check_function(const std::optional<FunctionSpec>& f, const std::string& path, bool need_function_level,
                    std::size_t dimension)
{
    if (!f) return;
    if (need_function_level)
        require(function_level(*f), path + ".kind", "must be constant or affine for a function-level object");
    if (f->kind == FK::values)
        require(f->values.size() == dimension, path + ".values",
                "needs one value per coordinate (" + std::to_string(dimension) + ")");
}

// ---------------------------------------------------------------------------

ScenarioResult run_atomic_limsup(const ExperimentConfig& c)
{
    const auto problem = problem_at(c, 0);
    const double formula = essential_norm(problem);
    ScenarioResult res{c.scenario, {}, {}};
    for (long k = c.sweep.from; k <= c.sweep.to; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        res.rows.push_back(row("best_diagonal_rank_k", static_cast<double>(k),
                               best_diagonal_rank_k(problem.u_atoms, kk), truncation_upper_bound(problem, kk),
                               formula));
    }

    bool monotone = true, bounded = true, sandwiched = true;
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
        const auto& r = res.rows[i];
        if (i > 0 && r.computed > res.rows[i - 1].computed) monotone = false;
        if (r.computed > *r.certified_bound) bounded = false;
        if (*r.certified_bound < formula) sandwiched = false;
    }
    res.assertions.push_back({"oracle non-increasing in k", monotone, ""});
    res.assertions.push_back({"oracle <= truncation upper bound", bounded, ""});
    res.assertions.push_back({"truncation upper bound >= essential norm", sandwiched, "formula " + fmt(formula)});

    if (c.perturbation.kind == PK::truncation) {
        const double ub = truncation_upper_bound(problem, c.perturbation.truncation_n);
        res.rows.push_back(row("truncation_upper_bound", static_cast<double>(c.perturbation.truncation_n), ub,
                               ub, formula));
        res.assertions.push_back({"truncation certificate >= essential norm", ub >= formula,
                                  "n = " + std::to_string(c.perturbation.truncation_n) + ", bound " + fmt(ub)});
    }
    return res;
}

ScenarioResult run_diffuse_witness(const ExperimentConfig& c)
{
    FunctionKernel kernel;
    if (c.perturbation.kind == PK::rank_one) {
        if (c.perturbation.eta || c.perturbation.g) {
            const auto one = constant_spec(1.0);
            kernel.terms.emplace_back(cell_function(c.perturbation.eta.value_or(one)),
                                      cell_function(c.perturbation.g.value_or(one)));
        }
        else {
            Rng rng(c.perturbation.seed);
            kernel = random_smooth_kernel(rng, c.perturbation.rank);
        }
    }

    // the essential norm of the function-level u, not of its discretization
    const double formula = std::max(c.u.tail.limsup_abs(), function_sup(*c.u.diffuse, *c.space.interval));

    ScenarioResult res{c.scenario, {}, {}};
    bool reproduced = true;
    for (long level = c.sweep.from; level <= c.sweep.to; ++level) {
        const auto problem = problem_at(c, static_cast<int>(level));
        const auto k = kernel.discretize(problem.space);
        const auto cert = witness_lower_bound(problem, k, c.epsilon, c.p);
        if (witness_ratio(problem.u(), k, cert.witness, c.p) != cert.bound) reproduced = false;
        res.rows.push_back(row("witness_lower_bound", static_cast<double>(level), cert.bound, cert.bound, formula));
    }

    bool nondecreasing = true;
    for (std::size_t i = 1; i < res.rows.size(); ++i)
        if (res.rows[i].computed < res.rows[i - 1].computed) nondecreasing = false;
    const double last = res.rows.back().computed;
    const double sup_u = c.u.diffuse ? function_sup(*c.u.diffuse, *c.space.interval) : 0.0;
    res.assertions.push_back({"certificates reproduced by their witnesses", reproduced, ""});
    res.assertions.push_back({"bound non-decreasing in level", nondecreasing, ""});
    res.assertions.push_back({"finest bound >= sup|u on diffuse part| - 2 eps", last >= sup_u - 2.0 * c.epsilon,
                              "bound " + fmt(last) + ", floor " + fmt(sup_u - 2.0 * c.epsilon)});
    return res;
}

ScenarioResult run_pinching_suite(const ExperimentConfig& c)
{
    const auto trials = static_cast<std::size_t>(c.trials);
    const auto n = c.dimension;
    struct Trial {
        double full = 0.0, diag_pinch = 0.0, block_pinch = 0.0, dk = 0.0;
        bool certified = false;
    };
    std::vector<Trial> out(trials);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(trials); ++t) {
        auto rng = Rng::for_trial(c.seed, static_cast<std::uint64_t>(t));
        auto space = build_space(random_masses(rng, n));
        std::vector<double> uv(n);
        for (auto& v : uv) v = rng.symmetric();
        const StepFunction u(space, uv);
        const auto k = c.perturbation.kind == PK::random_dense ? random_matrix(rng, space) : MatrixOperator(space);
        const auto a = mult_op(u) + k;

        Partition diag(n);
        for (std::size_t i = 0; i < n; ++i) diag[i] = {i};
        const auto blocks = random_two_blocks(rng, n);
        const auto cert = pinching_lower_bound(u, k);

        auto& r = out[static_cast<std::size_t>(t)];
        r.full = opnorm_p1(a);
        r.diag_pinch = opnorm_p1(pinch(a, diag));
        r.block_pinch = opnorm_p1(pinch(a, blocks));
        r.dk = cert.bound;
        r.certified = verify_certificate(cert, u, k);
    }

    ScenarioResult res{c.scenario, {}, {}};
    std::size_t v_diag = 0, v_block = 0, v_dk = 0, v_cert = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto& r = out[t];
        v_diag += r.diag_pinch > r.full;
        v_block += r.block_pinch > r.full;
        v_dk += r.dk > r.full;
        v_cert += !r.certified;
        res.rows.push_back(row("norm_vs_pinched", static_cast<double>(t), r.full, r.dk, std::nullopt));
    }
    res.assertions.push_back({"diagonal pinch contractive", v_diag == 0, std::to_string(v_diag) + " violations"});
    res.assertions.push_back({"two-block pinch contractive", v_block == 0, std::to_string(v_block) + " violations"});
    res.assertions.push_back({"||M_u + K|| >= ||M_u + D_K||", v_dk == 0, std::to_string(v_dk) + " violations"});
    res.assertions.push_back({"pinching certificates verified", v_cert == 0, std::to_string(v_cert) + " failures"});
    return res;
}

ScenarioResult run_centre_decay(const ExperimentConfig& c)
{
    const auto one = constant_spec(1.0);
    const auto eta = c.perturbation.eta.value_or(one);
    const auto g = c.perturbation.g.value_or(one);
    std::vector<int> levels;
    for (long l = c.sweep.from; l <= c.sweep.to; ++l) levels.push_back(static_cast<int>(l));
    const auto tmpl = space_at(c, 0);
    const auto decay = centre_decay_under_refinement(cell_function(eta), cell_function(g), *tmpl, levels);

    const bool closed_form = eta.kind == FK::constant && g.kind == FK::constant;
    ScenarioResult res{c.scenario, {}, {}};
    bool exact = true, decreasing = true;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        std::optional<double> formula;
        if (closed_form)
            formula = std::abs(eta.value * g.value) * std::ldexp(c.space.interval->length(), -levels[i]);
        if (formula && decay[i] != *formula) exact = false;
        if (i > 0 && !(decay[i] < decay[i - 1])) decreasing = false;
        res.rows.push_back(row("centre_component_norm", levels[i], decay[i], std::nullopt, formula));
    }
    res.assertions.push_back({"centre component strictly decreasing", decreasing, ""});
    if (closed_form) res.assertions.push_back({"matches |eta g| mu(cell) exactly", exact, ""});
    return res;
}

ScenarioResult run_qn_decay(const ExperimentConfig& c)
{
    const auto one = constant_spec(1.0);
    const auto eta_spec = c.perturbation.eta.value_or(one);
    const auto g_spec = c.perturbation.g.value_or(one);
    auto base = space_at(c, 0);
    auto eta = materialize(eta_spec, base);
    auto g = materialize(g_spec, base);

    const std::size_t stored = base->atom_count();
    const double m = c.space.atom_masses.back();
    if (c.perturbation.lump_tail) {
        // atoms past N collapsed into one extra coordinate carrying the tail's
        // L1 mass sum_{i>N} |g_i| m
        auto masses = c.space.atom_masses;
        masses.push_back(m);
        auto lumped = build_space(masses);
        auto ev = std::vector<double>(eta.coefficients().begin(), eta.coefficients().end());
        auto gv = std::vector<double>(g.coefficients().begin(), g.coefficients().end());
        ev.push_back(eta_spec.value);
        const double r = std::abs(g_spec.ratio);
        gv.push_back(std::abs(g_spec.scale) * std::pow(r, static_cast<double>(stored + 1)) / (1.0 - r));
        base = lumped;
        eta = StepFunction(lumped, std::move(ev));
        g = StepFunction(lumped, std::move(gv));
    }
    const auto k = rank_one_diffuse(eta, g);
    const auto profile = qn_decay_profile(k, static_cast<std::size_t>(c.sweep.to));

    // closed form for the infinite sequence: |eta| m |scale| |r|^(n+1) / (1 - |r|)
    const bool uniform = std::all_of(c.space.atom_masses.begin(), c.space.atom_masses.end(),
                                     [m](double x) { return x == m; });
    const bool closed_form = g_spec.kind == FK::geometric && eta_spec.kind == FK::constant && uniform &&
                             std::abs(g_spec.ratio) < 1.0;

    ScenarioResult res{c.scenario, {}, {}};
    bool exact = true, below = true;
    for (long n = c.sweep.from; n <= c.sweep.to; ++n) {
        const auto nn = static_cast<std::size_t>(n);
        std::optional<double> formula;
        if (closed_form && nn <= stored) {
            const double r = std::abs(g_spec.ratio);
            formula = std::abs(eta_spec.value) * m * std::abs(g_spec.scale) *
                      std::pow(r, static_cast<double>(n + 1)) / (1.0 - r);
            if (profile[nn] != *formula) exact = false;
            if (profile[nn] > *formula) below = false;
        }
        res.rows.push_back(row("qn_k_norm", static_cast<double>(n), profile[nn], std::nullopt, formula));
    }
    if (static_cast<std::size_t>(c.sweep.to) == base->dimension())
        res.assertions.push_back({"||Q_n K|| = 0 at n = dimension", profile.back() == 0.0, ""});
    if (closed_form) {
        if (c.perturbation.lump_tail)
            res.assertions.push_back({"matches the closed form exactly", exact, ""});
        else
            res.assertions.push_back({"truncated profile below the closed form", below, ""});
    }
    return res;
}

oracle::Dense dense_of(const MatrixOperator& a)
{
    return {a.dimension(), std::vector<double>(a.entries().begin(), a.entries().end())};
}

ScenarioResult run_lattice_oracle(const ExperimentConfig& c)
{
    const auto trials = static_cast<std::size_t>(c.trials);
    const auto n = c.dimension;
    std::vector<double> jm(trials), md(trials);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(trials); ++t) {
        auto rng = Rng::for_trial(c.seed, static_cast<std::uint64_t>(t));
        auto space = build_space(std::vector<double>(n, 1.0));
        const auto s = random_matrix(rng, space);
        const auto tt = random_matrix(rng, space);
        const auto j = join(s, tt), m = meet(s, tt);
        const auto ds = dense_of(s), dt = dense_of(tt);
        double dev = 0.0;
        for (std::size_t col = 0; col < n; ++col) {
            const auto oj = oracle::join_column(ds, dt, col, 100);
            const auto om = oracle::meet_column(ds, dt, col, 100);
            for (std::size_t i = 0; i < n; ++i)
                dev = std::max({dev, std::abs(oj[i] - j(i, col)), std::abs(om[i] - m(i, col))});
        }
        jm[static_cast<std::size_t>(t)] = dev;

        auto small = build_space({1.0, 1.0, 1.0});
        const auto s3 = random_matrix(rng, small);
        std::vector<double> f(3);
        for (auto& v : f) v = rng.uniform(0.0, 1.0);
        const auto grid = oracle::modulus_apply_grid(dense_of(s3), f, 10);
        const auto direct = modulus(s3).apply(StepFunction(small, f));
        double dm = 0.0;
        for (std::size_t i = 0; i < 3; ++i) dm = std::max(dm, std::abs(grid[i] - direct[i]));
        md[static_cast<std::size_t>(t)] = dm;
    }

    ScenarioResult res{c.scenario, {}, {}};
    double worst_jm = 0.0, worst_md = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        res.rows.push_back(row("join_meet_deviation", static_cast<double>(t), jm[t], std::nullopt, 0.0));
        worst_jm = std::max(worst_jm, jm[t]);
    }
    for (std::size_t t = 0; t < trials; ++t) {
        res.rows.push_back(row("modulus_deviation", static_cast<double>(t), md[t], std::nullopt, 0.0));
        worst_md = std::max(worst_md, md[t]);
    }
    res.assertions.push_back({"join/meet within 1e-9 of the decomposition oracle", worst_jm <= 1e-9,
                              "max deviation " + fmt(worst_jm)});
    res.assertions.push_back({"modulus within 1e-6 of the grid oracle", worst_md <= 1e-6,
                              "max deviation " + fmt(worst_md)});
    return res;
}

} // namespace

void validate(const ExperimentConfig& c)
{
    require(std::isfinite(c.p) && c.p >= 1.0, "p", "must be a finite real >= 1");
    for (std::size_t i = 0; i < c.space.atom_masses.size(); ++i)
        require(c.space.atom_masses[i] > 0.0 && std::isfinite(c.space.atom_masses[i]),
                "space.atom_masses[" + std::to_string(i) + "]", "atom masses must be positive and finite");
    if (c.space.interval) {
        require(std::isfinite(c.space.interval->a) && std::isfinite(c.space.interval->b), "space.interval",
                "must be bounded");
        require(c.space.interval->a < c.space.interval->b, "space.interval", "need a < b");
    }
    require(c.space.level >= 0 && c.space.level <= 30, "space.level", "must be in 0..30");
    if (c.u.atom_values)
        require(c.u.atom_values->size() == c.space.atom_masses.size(), "u.atom_values",
                "needs one value per atom (" + std::to_string(c.space.atom_masses.size()) + ")");
    require(c.sweep.from <= c.sweep.to, "sweep", "need from <= to");
    require(c.perturbation.rank >= 1 && c.perturbation.rank <= 16, "perturbation.rank", "must be in 1..16");

    const auto n_atoms = c.space.atom_masses.size();
    const auto& k = c.perturbation;
    switch (c.scenario) {
    case Scenario::atomic_limsup:
        check_p_exact(c);
        require(n_atoms > 0, "space.atom_masses", "atomic_limsup needs at least one atom");
        require(!c.space.interval, "space.interval", "atomic_limsup works on purely atomic spaces");
        require(c.sweep.from >= 0 && static_cast<std::size_t>(c.sweep.to) <= n_atoms, "sweep",
                "k must lie in 0..number of atoms");
        require(k.kind == PK::none || k.kind == PK::truncation, "perturbation.kind", "must be none or truncation");
        if (k.kind == PK::truncation)
            require(k.truncation_n <= n_atoms, "perturbation.truncation_n", "exceeds the number of atoms");
        break;

    case Scenario::diffuse_witness: {
        check_levels(c, 20);
        require(c.u.diffuse.has_value(), "u.diffuse", "diffuse_witness needs u on the diffuse part");
        check_function(c.u.diffuse, "u.diffuse", true, 0);
        require(k.kind == PK::none || k.kind == PK::rank_one, "perturbation.kind", "must be none or rank_one");
        check_function(k.eta, "perturbation.eta", true, 0);
        check_function(k.g, "perturbation.g", true, 0);
        require(c.epsilon > 0.0, "epsilon", "must be positive");
        // max |cell average| grows with the level for constant/affine u
        const auto coarse = build_space({}, {}, c.space.interval, static_cast<int>(c.sweep.from));
        const auto cells = discretize(coarse, {}, cell_function(*c.u.diffuse));
        double top = 0.0;
        for (double v : cells.coefficients()) top = std::max(top, std::abs(v));
        require(c.epsilon < top, "epsilon", "must be below max|u| on the cells of the coarsest level (" + fmt(top) + ")");
        break;
    }

    case Scenario::pinching_suite:
        check_p_exact(c);
        require(c.trials >= 1, "trials", "must be positive");
        require(c.dimension >= 2 && c.dimension <= 512, "dimension", "must be in 2..512");
        require(k.kind == PK::none || k.kind == PK::random_dense, "perturbation.kind",
                "must be none or random_dense");
        break;

    case Scenario::rankone_centre_decay:
        check_levels(c, 28);
        require(k.kind == PK::rank_one, "perturbation.kind", "rankone_centre_decay needs a rank_one perturbation");
        check_function(k.eta, "perturbation.eta", true, 0);
        check_function(k.g, "perturbation.g", true, 0);
        break;

    case Scenario::qn_decay: {
        check_p_exact(c);
        require(n_atoms > 0, "space.atom_masses", "qn_decay needs atoms");
        require(!c.space.interval, "space.interval", "qn_decay works on purely atomic spaces");
        require(k.kind == PK::rank_one, "perturbation.kind", "qn_decay needs a rank_one perturbation");
        const std::size_t dim = n_atoms + (k.lump_tail ? 1 : 0);
        check_function(k.eta, "perturbation.eta", false, n_atoms);
        check_function(k.g, "perturbation.g", false, n_atoms);
        if (k.lump_tail) {
            require(k.g && k.g->kind == FK::geometric && std::abs(k.g->ratio) < 1.0, "perturbation.g",
                    "lump_tail needs a geometric g with |ratio| < 1");
            require(!k.eta || k.eta->kind == FK::constant, "perturbation.eta", "lump_tail needs a constant eta");
            require(std::all_of(c.space.atom_masses.begin(), c.space.atom_masses.end(),
                                [&](double x) { return x == c.space.atom_masses.front(); }),
                    "space.atom_masses", "lump_tail needs uniform masses");
        }
        require(c.sweep.from >= 0 && static_cast<std::size_t>(c.sweep.to) <= dim, "sweep",
                "n must lie in 0..dimension (" + std::to_string(dim) + ")");
        break;
    }

    case Scenario::lattice_oracle:
        require(c.trials >= 1, "trials", "must be positive");
        require(c.dimension >= 1 && c.dimension <= 16, "dimension", "must be in 1..16");
        break;
    }
}

bool ScenarioResult::all_passed() const
{
    return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

ScenarioResult run_scenario(const ExperimentConfig& config)
{
    validate(config);
    switch (config.scenario) {
    case Scenario::atomic_limsup: return run_atomic_limsup(config);
    case Scenario::diffuse_witness: return run_diffuse_witness(config);
    case Scenario::pinching_suite: return run_pinching_suite(config);
    case Scenario::rankone_centre_decay: return run_centre_decay(config);
    case Scenario::qn_decay: return run_qn_decay(config);
    case Scenario::lattice_oracle: return run_lattice_oracle(config);
    }
    throw ConfigError("scenario", "unhandled scenario");
}

} // namespace essnorm::experiments
