#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uea/ensembles.hpp"
#include "uea/rate_regions.hpp"

namespace uea {

enum class Command { Region, Sweep, Covering, Permutation };
enum class ModelChoice { Interception, Passive, Both };

std::string to_string(Command c);
std::string to_string(ModelChoice m);

/// A fully validated run configuration. Text form is line-oriented key=value
/// with '#' comments; a top-level ';' also separates assignments.
struct RunConfig {
    Command command = Command::Region;

    // channel
    std::string channel = "amplitude_damping";
    std::optional<double> gamma;
    std::vector<double> gamma_grid;   // sweep only
    std::vector<Matrix> custom_kraus; // channel = custom

    // ensemble
    std::string ensemble = "paper_iv_c";
    std::optional<double> beta;     // single-point commands
    std::vector<double> beta_grid;  // region/sweep; default 1001 uniform points
    RealVector custom_p_x;
    Vector custom_phi;
    int custom_d_g1 = 0;
    int custom_d_g2 = 0;
    std::vector<Matrix> custom_encoders;

    // region analysis
    ModelChoice model = ModelChoice::Both;
    double r_floor = 0.01;
    int t_points = 101;

    // covering diagnostics
    int n = 3;
    double rate_r = 1.0 / 3.0;
    std::vector<double> rate_r0_grid{0.0, 0.5, 1.0, 1.5, 2.0};
    int seeds = 100;
    std::optional<uint64_t> seed; // required for stochastic commands
    int excess_n = 2;
    std::vector<int> x_n;                         // empty: drawn per seed
    std::vector<uint64_t> key_count_grid{1, 4, 16, 0}; // 0 means the full key space
    int excess_messages = 4;

    // permutation conversion
    double lambda = 0.05;
    int perm_n = 4;
    int fixtures = 20;
    std::string fixture_kind = "expurgation"; // or "spiky"
    std::string error_csv;                    // load instead of synthesizing
    int retry_budget = 100;
    int fixture_rows = 64;
    int fixture_cols = 64;

    // guards
    int max_n = 6;
    int max_codebook = 1 << 16;

    bool operator==(const RunConfig& other) const;
};

/// Parses and validates a configuration; reports every problem found in one
/// ConfigError rather than stopping at the first.
RunConfig parse_config(const std::string& text);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& cfg);

/// Channel and ensemble construction from a validated config.
WiretapChannel make_channel(const RunConfig& cfg, double gamma);
Ensemble make_ensemble(const RunConfig& cfg, double beta);

} // namespace uea
