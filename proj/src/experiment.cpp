#include "ringcap/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ringcap/oracle.hpp"

namespace ringcap {

using nlohmann::json;

const char* to_string(StrategyChoice s) {
    switch (s) {
        case StrategyChoice::sp: return "sp";
        case StrategyChoice::oc: return "oc";
        case StrategyChoice::automatic: return "auto";
        case StrategyChoice::both: return "both";
    }
    return "?";
}

const char* to_string(Engine e) {
    switch (e) {
        case Engine::analytic: return "analytic";
        case Engine::simulate: return "simulate";
        case Engine::oracle: return "oracle";
    }
    return "?";
}

StrategyChoice parse_strategy_choice(std::string_view s) {
    if (s == "sp") return StrategyChoice::sp;
    if (s == "oc") return StrategyChoice::oc;
    if (s == "auto") return StrategyChoice::automatic;
    if (s == "both") return StrategyChoice::both;
    throw ConfigError("strategy", "expected sp, oc, auto or both, got '" + std::string(s) + "'");
}

Engine parse_engine(std::string_view s) {
    if (s == "analytic") return Engine::analytic;
    if (s == "simulate") return Engine::simulate;
    if (s == "oracle") return Engine::oracle;
    throw ConfigError("engine", "expected analytic, simulate or oracle, got '" + std::string(s) + "'");
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

Rational decimal_rational(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("decimal_rational: non-finite value");
    const std::string s = format_double(v);
    std::string digits;
    int exponent = 0;
    bool negative = false;
    bool after_point = false;
    std::size_t i = 0;
    if (s[i] == '-') {
        negative = true;
        ++i;
    }
    for (; i < s.size(); ++i) {
        const char ch = s[i];
        if (ch == '.') {
            after_point = true;
        } else if (ch == 'e' || ch == 'E') {
            exponent += std::stoi(s.substr(i + 1));
            break;
        } else {
            digits.push_back(ch);
            if (after_point) --exponent;
        }
    }
    mpz_class num(digits, 10);
    mpz_class den(1);
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(exponent)));
    if (exponent >= 0) {
        num *= ten_pow;
    } else {
        den = ten_pow;
    }
    Rational r(num, den);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

namespace {

// Removes accumulated binary noise such as 0.30000000000000004.
double tidy(double v) { return std::round(v * 1e12) / 1e12; }

[[noreturn]] void bad(const std::string& field, const std::string& msg) { throw ConfigError(field, msg); }

template <class T>
T get_as(const json& j, const std::string& field) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        bad(field, "wrong type (" + std::string(j.type_name()) + ")");
    }
}

std::vector<double> parse_range(const json& j, const std::string& field) {
    std::vector<double> out;
    if (j.is_number()) {
        out.push_back(j.get<double>());
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            out.push_back(get_as<double>(j[i], field + "[" + std::to_string(i) + "]"));
        }
    } else if (j.is_object()) {
        for (const char* k : {"from", "to", "step"}) {
            if (!j.contains(k)) bad(field + "." + k, "missing");
        }
        const double from = get_as<double>(j["from"], field + ".from");
        const double to = get_as<double>(j["to"], field + ".to");
        const double step = get_as<double>(j["step"], field + ".step");
        if (!(step > 0)) bad(field + ".step", "must be positive");
        if (to < from) bad(field + ".to", "must not be below from");
        const auto n = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
        if (n > 100000) bad(field, "range has too many points");
        for (long i = 0; i < n; ++i) out.push_back(tidy(from + double(i) * step));
    } else {
        bad(field, "expected a number, an array or {from, to, step}");
    }
    if (out.empty()) bad(field, "empty");
    return out;
}

FanoutSpec parse_fanout_spec(const json& j, const std::string& field) {
    FanoutSpec s;
    if (j.is_string()) {
        try {
            s.preset = parse_fanout_preset(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            bad(field, e.what());
        }
        return s;
    }
    if (!j.is_object() || j.size() != 1) {
        bad(field, "expected a preset name or one of {preset}, {point}, {upto}, {pmf}");
    }
    if (j.contains("preset")) return parse_fanout_spec(j["preset"], field + ".preset");
    if (j.contains("point")) {
        s.kind = FanoutSpec::Kind::point;
        s.value = get_as<int>(j["point"], field + ".point");
    } else if (j.contains("upto")) {
        s.kind = FanoutSpec::Kind::upto;
        s.value = get_as<int>(j["upto"], field + ".upto");
    } else if (j.contains("pmf")) {
        s.kind = FanoutSpec::Kind::table;
        const auto& t = j["pmf"];
        if (!t.is_object() || t.empty()) bad(field + ".pmf", "expected a non-empty {\"l\": p} object");
        for (const auto& [k, v] : t.items()) {
            int l = 0;
            auto res = std::from_chars(k.data(), k.data() + k.size(), l);
            if (res.ec != std::errc{} || res.ptr != k.data() + k.size()) {
                bad(field + ".pmf", "key '" + k + "' is not an integer fanout");
            }
            s.table[l] = get_as<double>(v, field + ".pmf." + k);
        }
    } else {
        bad(field, "unknown fanout form '" + j.begin().key() + "'");
    }
    return s;
}

FanoutSet parse_fanout_set(const json& f, const std::string& field) {
    FanoutSet out;
    if (f.is_object() && (f.contains("uniform") || f.contains("hotspot_dest") || f.contains("hotspot_src") ||
                          f.contains("default"))) {
        for (const auto& [k, v] : f.items()) {
            if (k != "uniform" && k != "hotspot_dest" && k != "hotspot_src" && k != "default") {
                bad(field + "." + k, "unknown class");
            }
        }
        auto one = [&](const char* key, FanoutSpec& spec) {
            if (f.contains(key)) {
                spec = parse_fanout_spec(f[key], field + "." + key);
            } else if (f.contains("default")) {
                spec = parse_fanout_spec(f["default"], field + ".default");
            } else {
                bad(field + "." + key, "missing (and no default)");
            }
        };
        one("uniform", out.uniform);
        one("hotspot_dest", out.hotspot_dest);
        one("hotspot_src", out.hotspot_src);
    } else {
        out.uniform = out.hotspot_dest = out.hotspot_src = parse_fanout_spec(f, field);
    }
    return out;
}

json fanout_to_json(const FanoutSpec& s) {
    switch (s.kind) {
        case FanoutSpec::Kind::preset: return to_string(s.preset);
        case FanoutSpec::Kind::point: return json{{"point", s.value}};
        case FanoutSpec::Kind::upto: return json{{"upto", s.value}};
        case FanoutSpec::Kind::table: {
            json t = json::object();
            for (const auto& [l, p] : s.table) t[std::to_string(l)] = p;
            return json{{"pmf", t}};
        }
    }
    return nullptr;
}

const std::vector<std::string> known_segments{"1_1", "L_L", "N_L", "max"};

}  // namespace

std::string FanoutSpec::label() const {
    switch (kind) {
        case Kind::preset: return to_string(preset);
        case Kind::point: return "point:" + std::to_string(value);
        case Kind::upto: return "upto:" + std::to_string(value);
        case Kind::table: return "table";
    }
    return "?";
}

template <class T>
FanoutPmf<T> FanoutSpec::expand(int n_nodes) const {
    switch (kind) {
        case Kind::preset: return make_fanout<T>(preset, n_nodes);
        case Kind::point: return point_fanout<T>(value, n_nodes);
        case Kind::upto: return uniform_fanout_upto<T>(value, n_nodes);
        case Kind::table: {
            FanoutPmf<T> pmf(n_nodes);
            for (const auto& [l, p] : table) {
                if constexpr (is_rational_v<T>) {
                    pmf.set(l, decimal_rational(p));
                } else {
                    pmf.set(l, static_cast<T>(p));
                }
            }
            return pmf;
        }
    }
    throw std::logic_error("unknown fanout kind");
}

template FanoutPmf<double> FanoutSpec::expand<double>(int) const;
template FanoutPmf<Rational> FanoutSpec::expand<Rational>(int) const;

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) bad("<root>", "configuration must be a JSON object");
    static const std::vector<std::string> allowed{"name",   "topology", "traffic", "fanout",    "strategy",
                                                  "engine", "segments", "seed",    "stop_rule", "output"};
    for (const auto& [k, v] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) bad(k, "unknown key");
    }
    ExperimentConfig c;
    if (j.contains("name")) c.name = get_as<std::string>(j["name"], "name");

    if (!j.contains("topology")) bad("topology", "missing");
    const auto& topo = j["topology"];
    if (!topo.is_object()) bad("topology", "expected an object");
    if (!topo.contains("nodes")) bad("topology.nodes", "missing");
    c.nodes.clear();
    for (double v : parse_range(topo["nodes"], "topology.nodes")) {
        if (v != std::floor(v) || v < 2) bad("topology.nodes", "node counts must be integers >= 2");
        c.nodes.push_back(static_cast<int>(v));
    }
    if (topo.contains("wavelengths")) c.wavelengths = get_as<int>(topo["wavelengths"], "topology.wavelengths");
    if (c.wavelengths < 1) bad("topology.wavelengths", "must be at least 1");
    for (int n : c.nodes) {
        if (n % c.wavelengths != 0) {
            bad("topology.nodes", std::to_string(n) + " is not a multiple of " + std::to_string(c.wavelengths) +
                                      " wavelengths");
        }
    }

    if (j.contains("traffic")) {
        const auto& t = j["traffic"];
        if (!t.is_object()) bad("traffic", "expected an object");
        for (const auto& [k, v] : t.items()) {
            if (k != "alpha" && k != "beta" && k != "gamma") bad("traffic." + k, "unknown key");
        }
        if (t.contains("alpha")) c.alpha = get_as<double>(t["alpha"], "traffic.alpha");
        if (t.contains("beta")) c.betas = parse_range(t["beta"], "traffic.beta");
        if (t.contains("gamma")) c.gammas = parse_range(t["gamma"], "traffic.gamma");
    }
    for (double b : c.betas) {
        if (b < 0 || b > 1) bad("traffic.beta", "values must be in [0, 1]");
        for (double g : c.gammas) {
            if (g < 0 || g > 1) bad("traffic.gamma", "values must be in [0, 1]");
            const double a = c.alpha ? *c.alpha : 1 - b - g;
            const std::string at = " (beta = " + format_double(b) + ", gamma = " + format_double(g) + ")";
            if (a < -1e-12) bad("traffic", "alpha = 1 - beta - gamma is negative" + at);
            if (c.alpha && std::abs(*c.alpha + b + g - 1) > 1e-9) {
                bad("traffic.alpha", "alpha + beta + gamma must be 1" + at);
            }
        }
    }

    if (!j.contains("fanout")) bad("fanout", "missing");
    const auto& f = j["fanout"];
    c.fanouts.clear();
    if (f.is_array()) {
        if (f.empty()) bad("fanout", "empty list");
        for (std::size_t i = 0; i < f.size(); ++i) {
            c.fanouts.push_back(parse_fanout_set(f[i], "fanout[" + std::to_string(i) + "]"));
        }
    } else {
        c.fanouts.push_back(parse_fanout_set(f, "fanout"));
    }

    if (j.contains("strategy")) c.strategy = parse_strategy_choice(get_as<std::string>(j["strategy"], "strategy"));
    if (j.contains("engine")) c.engine = parse_engine(get_as<std::string>(j["engine"], "engine"));
    if (j.contains("segments")) {
        c.segments = get_as<std::vector<std::string>>(j["segments"], "segments");
        if (c.segments.empty()) bad("segments", "empty");
        for (const auto& s : c.segments) {
            if (std::find(known_segments.begin(), known_segments.end(), s) == known_segments.end()) {
                bad("segments", "unknown segment '" + s + "' (expected 1_1, L_L, N_L or max)");
            }
        }
    }
    if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j["seed"], "seed");
    if (j.contains("stop_rule")) {
        const auto& s = j["stop_rule"];
        if (!s.is_object()) bad("stop_rule", "expected an object");
        for (const auto& [k, v] : s.items()) {
            const std::string field = "stop_rule." + k;
            if (k == "relative_halfwidth") {
                c.stop.relative_halfwidth = get_as<double>(v, field);
            } else if (k == "floor") {
                c.stop.floor = get_as<double>(v, field);
            } else if (k == "min_samples") {
                c.stop.min_samples = get_as<std::uint64_t>(v, field);
            } else if (k == "max_samples") {
                c.stop.max_samples = get_as<std::uint64_t>(v, field);
            } else if (k == "batch_size") {
                c.stop.batch_size = get_as<std::uint64_t>(v, field);
            } else if (k == "threads") {
                c.stop.threads = get_as<int>(v, field);
            } else if (k == "scope") {
                const auto scope = get_as<std::string>(v, field);
                if (scope == "all") {
                    c.stop.scope = StopScope::all_segments;
                } else if (scope == "critical") {
                    c.stop.scope = StopScope::critical_segments;
                } else {
                    bad(field, "expected all or critical");
                }
            } else {
                bad(field, "unknown key");
            }
        }
        try {
            c.stop.validate();
        } catch (const std::invalid_argument& e) {
            bad("stop_rule", e.what());
        }
    }
    if (j.contains("output")) c.output = get_as<std::string>(j["output"], "output");

    if (c.engine == Engine::oracle) {
        for (int n : c.nodes) {
            if (n > oracle_max_nodes || n / c.wavelengths > oracle_max_eta) {
                bad("engine", "oracle supports N <= " + std::to_string(oracle_max_nodes) + " and eta <= " +
                                  std::to_string(oracle_max_eta) + " (N = " + std::to_string(n) + ")");
            }
        }
    }
    // expand every point now so bad fanouts surface as config errors
    expand_scenarios(c);
    return c;
}

json to_json(const ExperimentConfig& c) {
    json j;
    j["name"] = c.name;
    j["topology"] = {{"nodes", c.nodes}, {"wavelengths", c.wavelengths}};
    json t;
    if (c.alpha) t["alpha"] = *c.alpha;
    t["beta"] = c.betas;
    t["gamma"] = c.gammas;
    j["traffic"] = t;
    j["fanout"] = json::array();
    for (const auto& f : c.fanouts) {
        j["fanout"].push_back({{"uniform", fanout_to_json(f.uniform)},
                               {"hotspot_dest", fanout_to_json(f.hotspot_dest)},
                               {"hotspot_src", fanout_to_json(f.hotspot_src)}});
    }
    j["strategy"] = to_string(c.strategy);
    j["engine"] = to_string(c.engine);
    j["segments"] = c.segments;
    j["seed"] = c.seed;
    j["stop_rule"] = {{"relative_halfwidth", c.stop.relative_halfwidth},
                      {"floor", c.stop.floor},
                      {"min_samples", c.stop.min_samples},
                      {"max_samples", c.stop.max_samples},
                      {"batch_size", c.stop.batch_size},
                      {"threads", c.stop.threads},
                      {"scope", c.stop.scope == StopScope::all_segments ? "all" : "critical"}};
    if (!c.output.empty()) j["output"] = c.output;
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
    try {
        return json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
    }
}

void apply_override(json& j, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError("--set", "expected key=value, got '" + std::string(assignment) + "'");
    }
    const std::string key(assignment.substr(0, eq));
    const std::string text(assignment.substr(eq + 1));
    json value;
    try {
        value = json::parse(text);
    } catch (const json::parse_error&) {
        value = text;
    }
    json* node = &j;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) throw ConfigError("--set", "empty path component in '" + key + "'");
        if (!node->is_object()) {
            if (!node->is_null()) throw ConfigError("--set", "'" + key + "' descends into a non-object");
            *node = json::object();
        }
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

TrafficModel Scenario::traffic() const {
    return {alpha,
            beta,
            gamma,
            fanout.uniform.expand<double>(n_nodes),
            fanout.hotspot_dest.expand<double>(n_nodes),
            fanout.hotspot_src.expand<double>(n_nodes)};
}

ExactTrafficModel Scenario::exact_traffic() const {
    const Rational b = decimal_rational(beta);
    const Rational g = decimal_rational(gamma);
    const Rational a = decimal_rational(alpha);
    return {a,
            b,
            g,
            fanout.uniform.expand<Rational>(n_nodes),
            fanout.hotspot_dest.expand<Rational>(n_nodes),
            fanout.hotspot_src.expand<Rational>(n_nodes)};
}

std::string FanoutSet::label() const {
    if (uniform == hotspot_dest && uniform == hotspot_src) return uniform.label();
    return "mu=" + uniform.label() + ";nu=" + hotspot_dest.label() + ";kappa=" + hotspot_src.label();
}

std::vector<Scenario> expand_scenarios(const ExperimentConfig& c) {
    std::vector<Scenario> out;
    for (int n : c.nodes) {
        for (double b : c.betas) {
            for (const auto& fan : c.fanouts) {
                for (double g : c.gammas) {
                    Scenario s;
                    s.n_nodes = n;
                    s.n_wavelengths = c.wavelengths;
                    s.beta = b;
                    s.gamma = g;
                    s.alpha = c.alpha ? *c.alpha : std::max(0.0, tidy(1 - b - g));
                    s.fanout = fan;
                    try {
                        s.ring();
                        s.traffic().validate(n);
                    } catch (const std::exception& e) {
                        bad("fanout", "N = " + std::to_string(n) + ", " + fan.label() + ": " + e.what());
                    }
                    out.push_back(std::move(s));
                }
            }
        }
    }
    return out;
}

namespace {

enum Col {
    kN, kLambda, kEta, kAlpha, kBeta, kGamma, kFanout, kStrategy, kDir, kIndex, kWavelength, kLower, kUpper,
    kApprox, kExact, kSim, kCi, kSamples, kCapacity, kTh1, kTh2, kRec, kSeed, kFlags, kColumns
};
static_assert(kColumns == std::size(csv_columns));

// Engine output for one (scenario, strategy).
struct Evaluation {
    RoutingStrategy strategy = RoutingStrategy::shortest_path;
    double capacity = 0;
    std::optional<SegmentId> argmax;
    std::optional<UtilizationMatrix> sim;
    std::optional<ExactUtilization<Rational>> exact;
    std::vector<std::string> flags;
};

Evaluation evaluate(const ExperimentConfig& c, const Scenario& sc, const CapacityReport& rep,
                    RoutingStrategy strategy) {
    const auto ring = sc.ring();
    Evaluation ev;
    ev.strategy = strategy;
    switch (c.engine) {
        case Engine::analytic:
            if (strategy == RoutingStrategy::shortest_path) {
                ev.capacity = rep.capacity;
                const auto it = std::max_element(rep.critical.begin(), rep.critical.end(),
                                                  [](const auto& a, const auto& b) { return a.approx < b.approx; });
                ev.argmax = it->segment;
            } else {
                ev.capacity = rep.oc_bound > 0 ? 1.0 / rep.oc_bound : std::numeric_limits<double>::infinity();
            }
            break;
        case Engine::simulate: {
            ev.sim = estimate_utilization(ring, sc.traffic(), strategy, c.seed, c.stop);
            if (!ev.sim->converged()) ev.flags.push_back("nonconverged");
            const auto cap = estimate_capacity(*ev.sim);
            ev.capacity = cap.capacity;
            ev.argmax = cap.argmax;
            break;
        }
        case Engine::oracle: {
            ev.exact = exact_utilization(ring, sc.exact_traffic(), strategy);
            Rational best{0};
            for (Direction d : {Direction::clockwise, Direction::counterclockwise}) {
                for (int wl = 1; wl <= ring.n_wavelengths(); ++wl) {
                    for (int n = 1; n <= ring.n_nodes(); ++n) {
                        const SegmentId s{d, n, wl};
                        if (ev.exact->at(s) > best) {
                            best = ev.exact->at(s);
                            ev.argmax = s;
                        }
                    }
                }
            }
            if (sgn(best) == 0) throw std::runtime_error("no utilization observed");
            ev.capacity = 1.0 / best.get_d();
            break;
        }
    }
    return ev;
}

std::vector<Evaluation> evaluate_point(const ExperimentConfig& c, const Scenario& sc, const CapacityReport& rep) {
    using RS = RoutingStrategy;
    switch (c.strategy) {
        case StrategyChoice::sp: return {evaluate(c, sc, rep, RS::shortest_path)};
        case StrategyChoice::oc: return {evaluate(c, sc, rep, RS::one_copy)};
        case StrategyChoice::both: return {evaluate(c, sc, rep, RS::shortest_path), evaluate(c, sc, rep, RS::one_copy)};
        case StrategyChoice::automatic: break;
    }
    Evaluation chosen;
    if (rep.recommendation == Recommendation::shortest_path) {
        chosen = evaluate(c, sc, rep, RS::shortest_path);
    } else if (rep.recommendation == Recommendation::one_copy) {
        chosen = evaluate(c, sc, rep, RS::one_copy);
    } else if (c.engine == Engine::analytic) {
        chosen = evaluate(c, sc, rep, rep.max_util_approx <= rep.oc_bound ? RS::shortest_path : RS::one_copy);
    } else {
        auto sp = evaluate(c, sc, rep, RS::shortest_path);
        auto oc = evaluate(c, sc, rep, RS::one_copy);
        chosen = oc.capacity > sp.capacity ? std::move(oc) : std::move(sp);
    }
    chosen.flags.push_back("auto");
    return {std::move(chosen)};
}

std::string join_flags(const std::vector<std::string>& flags) {
    std::string s;
    for (const auto& f : flags) {
        if (!s.empty()) s += ';';
        s += f;
    }
    return s;
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& c) {
    SweepResult result;
    for (const auto& sc : expand_scenarios(c)) {
        const auto ring = sc.ring();
        const auto traffic = sc.traffic();
        const auto rep = max_utilization_sp(ring, traffic);
        for (const auto& ev : evaluate_point(c, sc, rep)) {
            if (!ev.flags.empty() && std::find(ev.flags.begin(), ev.flags.end(), "nonconverged") != ev.flags.end()) {
                result.flagged = true;
            }
            const bool sp = ev.strategy == RoutingStrategy::shortest_path;
            for (const auto& which : c.segments) {
                CsvRow row;
                auto& f = row.fields;
                f.assign(kColumns, "");
                f[kN] = std::to_string(ring.n_nodes());
                f[kLambda] = std::to_string(ring.n_wavelengths());
                f[kEta] = std::to_string(ring.nodes_per_wavelength());
                f[kAlpha] = format_double(sc.alpha);
                f[kBeta] = format_double(sc.beta);
                f[kGamma] = format_double(sc.gamma);
                f[kFanout] = sc.fanout_label();
                f[kStrategy] = to_string(ev.strategy);
                f[kCapacity] = format_double(ev.capacity);
                f[kTh1] = to_string(rep.thresholds.gamma_th1);
                f[kTh2] = to_string(rep.thresholds.gamma_th2);
                f[kRec] = to_string(rep.recommendation);
                if (c.engine == Engine::simulate) f[kSeed] = std::to_string(c.seed);
                f[kFlags] = join_flags(ev.flags);

                std::optional<SegmentId> seg;
                if (which == "max") {
                    seg = ev.argmax;
                    f[kApprox] = format_double(sp ? rep.max_util_approx : rep.oc_bound);
                } else {
                    const std::size_t k = which == "1_1" ? 0 : which == "L_L" ? 1 : 2;
                    seg = rep.critical[k].segment;
                    if (sp) {
                        f[kLower] = format_double(rep.critical[k].lower);
                        f[kUpper] = format_double(rep.critical[k].upper);
                        f[kApprox] = format_double(rep.critical[k].approx);
                    }
                }
                if (seg) {
                    f[kDir] = to_string(seg->direction);
                    f[kIndex] = std::to_string(seg->index);
                    f[kWavelength] = std::to_string(seg->wavelength);
                    if (ev.sim) {
                        f[kSim] = format_double(ev.sim->estimate(*seg));
                        f[kCi] = format_double(ev.sim->ci_halfwidth(*seg));
                        f[kSamples] = std::to_string(ev.sim->samples());
                    }
                    if (ev.exact) f[kExact] = format_double(ev.exact->at(*seg).get_d());
                }
                result.rows.push_back(std::move(row));
            }
        }
    }
    return result;
}

void write_csv(std::ostream& os, const SweepResult& r) {
    auto field = [&](const std::string& s) {
        if (s.find_first_of(",\"\r\n") == std::string::npos) {
            os << s;
            return;
        }
        os << '"';
        for (char ch : s) {
            if (ch == '"') os << '"';
            os << ch;
        }
        os << '"';
    };
    for (std::size_t i = 0; i < std::size(csv_columns); ++i) os << (i ? "," : "") << csv_columns[i];
    os << "\r\n";
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.fields.size(); ++i) {
            if (i) os << ',';
            field(row.fields[i]);
        }
        os << "\r\n";
    }
}

std::string advise(const ExperimentConfig& c) {
    const auto scenarios = expand_scenarios(c);
    if (scenarios.size() != 1) {
        throw ConfigError("topology.nodes/traffic.gamma", "advise needs a single scenario, got " +
                                                             std::to_string(scenarios.size()) + " points");
    }
    const auto& sc = scenarios.front();
    const auto ring = sc.ring();
    const auto rep = max_utilization_sp(ring, sc.traffic());
    std::ostringstream os;
    auto num = [](double v) { return format_double(v); };
    os << "scenario: N=" << ring.n_nodes() << " Lambda=" << ring.n_wavelengths()
       << " eta=" << ring.nodes_per_wavelength() << " alpha=" << num(sc.alpha) << " beta=" << num(sc.beta)
       << " gamma=" << num(sc.gamma) << " fanout=" << sc.fanout_label() << "\n";
    os << "critical segments under shortest path (lower / approx / upper):\n";
    for (const auto& b : rep.critical) {
        os << "  " << to_string(b.segment) << "  " << num(b.lower) << " / " << num(b.approx) << " / "
           << num(b.upper) << "\n";
    }
    os << "max utilization (approx): " << num(rep.max_util_approx) << "  C_M(sp) = " << num(rep.capacity) << "\n";
    os << "gamma_th1 = " << to_string(rep.thresholds.gamma_th1) << "  gamma_th2 = " << to_string(rep.thresholds.gamma_th2)
       << "\n";
    os << "one-copy bound: " << num(rep.oc_bound) << "  C_M(oc) >= " << num(1.0 / rep.oc_bound) << "\n";
    os << "approximations vs 1/2: " << to_string(rep.coarse_recommendation) << "\n";
    if (c.engine != Engine::analytic) {
        for (auto strategy : {RoutingStrategy::shortest_path, RoutingStrategy::one_copy}) {
            const auto ev = evaluate(c, sc, rep, strategy);
            os << (c.engine == Engine::simulate ? "simulated" : "exact") << " C_M(" << to_string(strategy)
               << ") = " << num(ev.capacity);
            if (ev.argmax) os << "  at " << to_string(*ev.argmax);
            if (ev.sim) os << "  (" << ev.sim->samples() << " packets" << (ev.sim->converged() ? "" : ", not converged") << ")";
            os << "\n";
        }
    }
    os << "recommendation: " << to_string(rep.recommendation) << "\n";
    return os.str();
}

}  // namespace ringcap
