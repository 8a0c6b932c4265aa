#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uea/ensembles.hpp"

namespace uea {

enum class Model { Interception, Passive };

std::string to_string(Model m);

/// The five single-letter informations entering both rate regions, in bits,
/// with the signed rate differences retained for disconnection diagnostics.
struct EntropicQuantities {
    double i_xb = 0.0;     // I(X;B)
    double i_xe = 0.0;     // I(X;E)
    double i_xeg2 = 0.0;   // I(X;EG2)
    double i_g2b_x = 0.0;  // I(G2;B|X)
    double i_g2e_x = 0.0;  // I(G2;E|X)
    double gamma = 0.0;
    double beta = 0.0;
    std::string ensemble_label;

    double si_guaranteed_signed() const { return i_xb - i_xeg2; }
    double si_excess_signed() const { return i_g2b_x - i_g2e_x; }
    double pe_guaranteed_signed() const { return i_xb - i_xe; }
};

struct RatePair {
    double r = 0.0;       // guaranteed rate, bits/use
    double r_prime = 0.0; // excess rate, bits/use
    Model model = Model::Interception;
};

/// Holevo information I(X;S) of a cq state: S(sum_x p rho^x_S) - sum_x p S(rho^x_S).
double holevo_information(const CqState& cq, const std::vector<Sub>& s);

/// I(S;T|X) = sum_x p(x) [S(rho^x_S) + S(rho^x_T) - S(rho^x_ST)], S and T disjoint.
double conditional_mutual_information(const CqState& cq, const std::vector<Sub>& s,
                                      const std::vector<Sub>& t);

/// All five quantities for one channel/ensemble pair.
EntropicQuantities compute_quantities(const WiretapChannel& chan, const Ensemble& ens,
                                      double gamma, double beta);

/// Interception-model corner: R = [I(X;B)-I(X;EG2)]_+, R' = [I(G2;B|X)-I(G2;E|X)]_+.
RatePair rsi_rates(const EntropicQuantities& eq);

/// Passive-model corner: R = [I(X;B)-I(X;E)]_+, R' = I(G2;B|X).
RatePair rpe_rates(const EntropicQuantities& eq);

struct RegionSample {
    double beta = 0.0;
    RatePair rates;
};

struct GapReport {
    double max_excess = 0.0;            // B0: max R' over all samples
    double max_excess_above_floor = 0.0; // B+: max R' over samples with R >= floor
    double gap = 0.0;                   // B0 - B+
    double r_floor = 0.0;
    bool floor_met = false;             // false if no sample reaches the floor
};

struct RegionBoundary {
    Model model = Model::Interception;
    std::vector<RegionSample> samples;
    std::vector<RatePair> frontier; // Pareto-maximal rectangle corners
    std::optional<GapReport> gap_report;
};

/// Pareto-maximal subset of rate pairs (non-dominated corners of the
/// rectangle union), ordered by increasing guaranteed rate.
std::vector<RatePair> pareto_frontier(const std::vector<RegionSample>& samples);

/// Sweeps an ensemble family over a parameter grid; the default family is the
/// worked qubit example (paper_ensemble).
std::vector<EntropicQuantities> sweep_quantities(
    const WiretapChannel& chan, double gamma, const std::vector<double>& beta_grid,
    const std::function<Ensemble(double)>& family = {});

/// Boundary for one model from swept quantities.
RegionBoundary region_boundary(const std::vector<EntropicQuantities>& quantities, Model model);

/// Convenience: sweep + boundary in one call.
RegionBoundary sweep_region(const WiretapChannel& chan, double gamma, Model model,
                            const std::vector<double>& beta_grid);

/// B0 = max R' overall; B+ = max R' restricted to samples with R >= r_floor;
/// gap = B0 - B+. With no sample above the floor, B+ = 0 and floor_met=false.
GapReport detect_disconnection(const RegionBoundary& boundary, double r_floor);

/// Time-division segment {(t r*, (1-t) r'*)} over the given mixing grid.
std::vector<RatePair> time_division_baseline(double r_star, double rp_star,
                                             const std::vector<double>& t_grid);

/// Uniform grid of n points covering [0,1].
std::vector<double> uniform_grid(int points);

} // namespace uea
