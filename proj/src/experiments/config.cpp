#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "essnorm/experiments.hpp"

namespace essnorm::experiments {

using nlohmann::json;

namespace {

constexpr std::pair<Scenario, std::string_view> scenario_names[] = {
    {Scenario::atomic_limsup, "atomic_limsup"},
    {Scenario::diffuse_witness, "diffuse_witness"},
    {Scenario::pinching_suite, "pinching_suite"},
    {Scenario::rankone_centre_decay, "rankone_centre_decay"},
    {Scenario::qn_decay, "qn_decay"},
    {Scenario::lattice_oracle, "lattice_oracle"},
};

constexpr std::pair<FunctionSpec::Kind, std::string_view> function_kinds[] = {
    {FunctionSpec::Kind::constant, "constant"},
    {FunctionSpec::Kind::affine, "affine"},
    {FunctionSpec::Kind::geometric, "geometric"},
    {FunctionSpec::Kind::values, "values"},
};

constexpr std::pair<PerturbationSpec::Kind, std::string_view> perturbation_kinds[] = {
    {PerturbationSpec::Kind::none, "none"},
    {PerturbationSpec::Kind::random_dense, "random_dense"},
    {PerturbationSpec::Kind::rank_one, "rank_one"},
    {PerturbationSpec::Kind::truncation, "truncation"},
};

template <class E, std::size_t N>
std::string_view name_of(const std::pair<E, std::string_view> (&table)[N], E e)
{
    for (const auto& [k, n] : table)
        if (k == e) return n;
    return "?";
}

template <class E, std::size_t N>
std::optional<E> lookup(const std::pair<E, std::string_view> (&table)[N], std::string_view name)
{
    for (const auto& [k, n] : table)
        if (n == name) return k;
    return std::nullopt;
}

// Field access that reports the JSON path of whatever is wrong.
class Node {
public:
    Node(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    void only(std::initializer_list<std::string_view> keys) const
    {
        for (const auto& [k, v] : j_.items()) {
            bool known = false;
            for (auto key : keys) known = known || key == k;
            if (!known) throw ConfigError(at(k), "unknown field");
        }
    }

    bool has(std::string_view key) const { return j_.contains(key); }
    std::string at(std::string_view key) const { return path_.empty() ? std::string(key) : path_ + "." + std::string(key); }

    Node child(std::string_view key) const { return Node(j_.at(key), at(key)); }

    double number(std::string_view key) const
    {
        const auto& v = j_.at(key);
        if (!v.is_number()) throw ConfigError(at(key), "expected a number");
        return v.get<double>();
    }

    double number_or(std::string_view key, double fallback) const { return has(key) ? number(key) : fallback; }

    long integer(std::string_view key) const
    {
        const auto& v = j_.at(key);
        if (!v.is_number_integer()) throw ConfigError(at(key), "expected an integer");
        return v.get<long>();
    }

    std::uint64_t unsigned_integer(std::string_view key) const
    {
        const auto& v = j_.at(key);
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
        throw ConfigError(at(key), "expected a non-negative integer");
    }

    std::string string(std::string_view key) const
    {
        const auto& v = j_.at(key);
        if (!v.is_string()) throw ConfigError(at(key), "expected a string");
        return v.get<std::string>();
    }

    bool boolean(std::string_view key) const
    {
        const auto& v = j_.at(key);
        if (!v.is_boolean()) throw ConfigError(at(key), "expected true or false");
        return v.get<bool>();
    }

    std::vector<double> numbers(std::string_view key) const
    {
        const auto& v = j_.at(key);
        if (!v.is_array()) throw ConfigError(at(key), "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) throw ConfigError(at(key) + "[" + std::to_string(i) + "]", "expected a number");
            out.push_back(v[i].get<double>());
        }
        return out;
    }

private:
    const json& j_;
    std::string path_;
};

FunctionSpec parse_function(const Node& n)
{
    n.only({"kind", "value", "intercept", "slope", "scale", "ratio", "values"});
    FunctionSpec f;
    const auto kind = lookup(function_kinds, n.string("kind"));
    if (!kind) throw ConfigError(n.at("kind"), "unknown function kind (constant, affine, geometric, values)");
    f.kind = *kind;
    switch (f.kind) {
    case FunctionSpec::Kind::constant: f.value = n.number("value"); break;
    case FunctionSpec::Kind::affine:
        f.intercept = n.number_or("intercept", 0.0);
        f.slope = n.number_or("slope", 0.0);
        break;
    case FunctionSpec::Kind::geometric:
        f.scale = n.number_or("scale", 1.0);
        f.ratio = n.number("ratio");
        break;
    case FunctionSpec::Kind::values: f.values = n.numbers("values"); break;
    }
    return f;
}

json emit_function(const FunctionSpec& f)
{
    json j{{"kind", name_of(function_kinds, f.kind)}};
    switch (f.kind) {
    case FunctionSpec::Kind::constant: j["value"] = f.value; break;
    case FunctionSpec::Kind::affine:
        j["intercept"] = f.intercept;
        j["slope"] = f.slope;
        break;
    case FunctionSpec::Kind::geometric:
        j["scale"] = f.scale;
        j["ratio"] = f.ratio;
        break;
    case FunctionSpec::Kind::values: j["values"] = f.values; break;
    }
    return j;
}

TailDescriptor parse_tail(const Node& n)
{
    n.only({"kind", "c", "alpha", "c2"});
    const auto kind = parse_tail_kind(n.string("kind"));
    if (!kind)
        throw ConfigError(n.at("kind"),
                          "unknown tail kind (finitely_supported, constant_limit, harmonic_limit, alternating)");
    TailDescriptor t;
    t.kind = *kind;
    t.c = n.number_or("c", 0.0);
    t.alpha = n.number_or("alpha", 0.0);
    t.c2 = n.number_or("c2", 0.0);
    return t;
}

json emit_tail(const TailDescriptor& t)
{
    return json{{"kind", to_string(t.kind)}, {"c", t.c}, {"alpha", t.alpha}, {"c2", t.c2}};
}

SpaceSpec parse_space(const Node& n)
{
    n.only({"atom_masses", "atom_count", "atom_mass", "interval", "level"});
    SpaceSpec s;
    if (n.has("atom_masses")) {
        if (n.has("atom_count")) throw ConfigError(n.at("atom_count"), "give either atom_masses or atom_count");
        s.atom_masses = n.numbers("atom_masses");
    }
    else if (n.has("atom_count")) {
        const long count = n.integer("atom_count");
        if (count < 0) throw ConfigError(n.at("atom_count"), "must be non-negative");
        s.atom_masses.assign(static_cast<std::size_t>(count), n.number_or("atom_mass", 1.0));
    }
    if (n.has("interval")) {
        const auto iv = n.numbers("interval");
        if (iv.size() != 2) throw ConfigError(n.at("interval"), "expected [a, b]");
        s.interval = Interval{iv[0], iv[1]};
    }
    if (n.has("level")) s.level = static_cast<int>(n.integer("level"));
    return s;
}

} // namespace

std::string_view to_string(Scenario s)
{
    return name_of(scenario_names, s);
}

std::optional<Scenario> parse_scenario(std::string_view name)
{
    return lookup(scenario_names, name);
}

const std::vector<Scenario>& all_scenarios()
{
    static const std::vector<Scenario> all = [] {
        std::vector<Scenario> v;
        for (const auto& [s, n] : scenario_names) v.push_back(s);
        return v;
    }();
    return all;
}

std::string_view describe(Scenario s)
{
    switch (s) {
    case Scenario::atomic_limsup: return "rank-k diagonal oracle and truncation upper bound against limsup |u(B_n)|";
    case Scenario::diffuse_witness: return "witness-sequence lower bounds for ||M_u + K|| under refinement";
    case Scenario::pinching_suite: return "pinching contractivity and ||M_u + K|| >= ||M_u + D_K|| on random operators";
    case Scenario::rankone_centre_decay: return "centre component of a rank-one kernel under refinement";
    case Scenario::qn_decay: return "decay of ||Q_n K|| for a rank-one operator on atoms";
    case Scenario::lattice_oracle: return "entrywise lattice operations against their defining sup/inf";
    }
    return "";
}

ExperimentConfig parse_config(std::string_view json_text)
{
    json root;
    try {
        root = json::parse(json_text);
    }
    catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
    }
    const Node n(root, "");
    n.only({"scenario", "space", "u", "perturbation", "p", "sweep", "trials", "seed", "dimension", "epsilon"});

    ExperimentConfig c;
    if (!n.has("scenario")) throw ConfigError("scenario", "missing");
    const auto name = n.string("scenario");
    const auto scenario = parse_scenario(name);
    if (!scenario) throw ConfigError("scenario", "unknown scenario '" + name + "'");
    c.scenario = *scenario;

    if (n.has("space")) c.space = parse_space(n.child("space"));
    if (n.has("u")) {
        const auto u = n.child("u");
        u.only({"atom_values", "tail", "diffuse"});
        if (u.has("atom_values")) c.u.atom_values = u.numbers("atom_values");
        if (u.has("tail")) c.u.tail = parse_tail(u.child("tail"));
        if (u.has("diffuse")) c.u.diffuse = parse_function(u.child("diffuse"));
    }
    if (n.has("perturbation")) {
        const auto k = n.child("perturbation");
        k.only({"kind", "rank", "seed", "truncation_n", "eta", "g", "lump_tail"});
        const auto kind = lookup(perturbation_kinds, k.string("kind"));
        if (!kind) throw ConfigError(k.at("kind"), "unknown perturbation kind (none, random_dense, rank_one, truncation)");
        c.perturbation.kind = *kind;
        if (k.has("rank")) c.perturbation.rank = static_cast<int>(k.integer("rank"));
        if (k.has("seed")) c.perturbation.seed = k.unsigned_integer("seed");
        if (k.has("truncation_n")) c.perturbation.truncation_n = k.unsigned_integer("truncation_n");
        if (k.has("eta")) c.perturbation.eta = parse_function(k.child("eta"));
        if (k.has("g")) c.perturbation.g = parse_function(k.child("g"));
        if (k.has("lump_tail")) c.perturbation.lump_tail = k.boolean("lump_tail");
    }
    if (n.has("p")) c.p = n.number("p");
    if (n.has("sweep")) {
        const auto s = n.child("sweep");
        s.only({"from", "to"});
        c.sweep.from = s.integer("from");
        c.sweep.to = s.integer("to");
    }
    if (n.has("trials")) c.trials = static_cast<int>(n.integer("trials"));
    if (n.has("seed")) c.seed = n.unsigned_integer("seed");
    if (n.has("dimension")) c.dimension = n.unsigned_integer("dimension");
    if (n.has("epsilon")) c.epsilon = n.number("epsilon");
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string emit_config(const ExperimentConfig& c)
{
    json j;
    j["scenario"] = to_string(c.scenario);

    json space{{"atom_masses", c.space.atom_masses}, {"level", c.space.level}};
    if (c.space.interval) space["interval"] = {c.space.interval->a, c.space.interval->b};
    j["space"] = space;

    json u{{"tail", emit_tail(c.u.tail)}};
    if (c.u.atom_values) u["atom_values"] = *c.u.atom_values;
    if (c.u.diffuse) u["diffuse"] = emit_function(*c.u.diffuse);
    j["u"] = u;

    const auto& k = c.perturbation;
    json pert{{"kind", name_of(perturbation_kinds, k.kind)},
              {"rank", k.rank},
              {"seed", k.seed},
              {"truncation_n", k.truncation_n},
              {"lump_tail", k.lump_tail}};
    if (k.eta) pert["eta"] = emit_function(*k.eta);
    if (k.g) pert["g"] = emit_function(*k.g);
    j["perturbation"] = pert;

    j["p"] = c.p;
    j["sweep"] = {{"from", c.sweep.from}, {"to", c.sweep.to}};
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["dimension"] = c.dimension;
    j["epsilon"] = c.epsilon;
    return j.dump(2) + "\n";
}

} // namespace essnorm::experiments
