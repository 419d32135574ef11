#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ringcap/analytics.hpp"
#include "ringcap/simulator.hpp"
#include "ringcap/traffic.hpp"

namespace ringcap {

// Raised for invalid configuration; the message starts with the field path.
struct ConfigError : std::invalid_argument {
    ConfigError(const std::string& field, const std::string& msg)
        : std::invalid_argument(field + ": " + msg), field(field) {}
    std::string field;
};

// How one class's fanout pmf is built for a given N.
struct FanoutSpec {
    enum class Kind { preset, point, upto, table };
    Kind kind = Kind::preset;
    FanoutPreset preset = FanoutPreset::unicast;
    int value = 1;                 // point mass or upper bound
    std::map<int, double> table;   // explicit l -> probability

    std::string label() const;
    template <class T>
    FanoutPmf<T> expand(int n_nodes) const;

    friend bool operator==(const FanoutSpec&, const FanoutSpec&) = default;
};

// Fanout of the three classes (mu, nu, kappa).
struct FanoutSet {
    FanoutSpec uniform, hotspot_dest, hotspot_src;

    std::string label() const;
    friend bool operator==(const FanoutSet&, const FanoutSet&) = default;
};

enum class StrategyChoice { sp, oc, automatic, both };
enum class Engine { analytic, simulate, oracle };

const char* to_string(StrategyChoice s);
const char* to_string(Engine e);
StrategyChoice parse_strategy_choice(std::string_view s);
Engine parse_engine(std::string_view s);

struct ExperimentConfig {
    std::string name;
    std::vector<int> nodes{64};
    int wavelengths = 4;
    std::optional<double> alpha;  // default 1 - beta - gamma
    std::vector<double> betas{0};
    std::vector<double> gammas{0};
    std::vector<FanoutSet> fanouts{FanoutSet{}};
    StrategyChoice strategy = StrategyChoice::sp;
    Engine engine = Engine::analytic;
    std::vector<std::string> segments{"1_1", "L_L", "N_L", "max"};
    std::uint64_t seed = 1;
    StopRule stop;
    std::string output;  // empty: stdout

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);
nlohmann::json load_json_file(const std::string& path);

// Applies "a.b.c=value" to the JSON document; value is parsed as JSON when it
// is valid JSON, otherwise taken as a string.
void apply_override(nlohmann::json& j, std::string_view assignment);

// One sweep point with fully expanded traffic.
struct Scenario {
    int n_nodes = 0;
    int n_wavelengths = 0;
    double alpha = 0, beta = 0, gamma = 0;
    FanoutSet fanout;

    RingTopology ring() const { return {n_nodes, n_wavelengths}; }
    TrafficModel traffic() const;
    // Decimal inputs read as exact fractions, so 0.1 is 1/10.
    ExactTrafficModel exact_traffic() const;
    std::string fanout_label() const { return fanout.label(); }
};

// Sweep order: N, then beta, then fanout, then gamma.
std::vector<Scenario> expand_scenarios(const ExperimentConfig& c);

inline constexpr const char* csv_columns[] = {
    "N", "Lambda", "eta", "alpha", "beta", "gamma", "fanout_preset", "strategy", "segment_dir",
    "segment_index", "segment_wavelength", "util_lower", "util_upper", "util_approx", "util_exact",
    "util_sim", "ci_halfwidth", "samples", "capacity", "gamma_th1", "gamma_th2", "recommendation",
    "seed", "flags"};

struct CsvRow {
    std::vector<std::string> fields;  // aligned with csv_columns
};

struct SweepResult {
    std::vector<CsvRow> rows;
    bool flagged = false;  // some point did not converge
};

SweepResult run_sweep(const ExperimentConfig& c);
void write_csv(std::ostream& os, const SweepResult& r);
std::string format_double(double v);
Rational decimal_rational(double v);

// Human readable summary for a single scenario.
std::string advise(const ExperimentConfig& c);

}  // namespace ringcap
