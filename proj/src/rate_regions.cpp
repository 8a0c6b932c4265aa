#include "uea/rate_regions.hpp"

#include <algorithm>
#include <cmath>

namespace uea {

std::string to_string(Model m) {
    return m == Model::Interception ? "interception" : "passive";
}

namespace {

double clip0(double x) { return std::max(x, 0.0); }

std::vector<Sub> join_subsets(std::vector<Sub> s, const std::vector<Sub>& t) {
    for (Sub x : t) s.push_back(x);
    return s;
}

} // namespace

double holevo_information(const CqState& cq, const std::vector<Sub>& s) {
    const CqState m = marginal(cq, s);
    double conditional = 0.0;
    for (const auto& b : m.blocks) conditional += b.weight * von_neumann_entropy(b.rho);
    return clip0(von_neumann_entropy(m.average()) - conditional);
}

double conditional_mutual_information(const CqState& cq, const std::vector<Sub>& s,
                                      const std::vector<Sub>& t) {
    if (s.empty() || t.empty())
        throw DimensionError("conditional_mutual_information: subsets must be nonempty");
    for (Sub a : s)
        for (Sub b : t)
            if (a == b) throw DimensionError("conditional_mutual_information: subsets must be disjoint");

    const CqState ms = marginal(cq, s);
    const CqState mt = marginal(cq, t);
    const CqState mst = marginal(cq, join_subsets(s, t));
    double value = 0.0;
    for (std::size_t i = 0; i < cq.blocks.size(); ++i) {
        const double w = cq.blocks[i].weight;
        value += w * (von_neumann_entropy(ms.blocks[i].rho) + von_neumann_entropy(mt.blocks[i].rho) -
                      von_neumann_entropy(mst.blocks[i].rho));
    }
    return clip0(value);
}

EntropicQuantities compute_quantities(const WiretapChannel& chan, const Ensemble& ens,
                                      double gamma, double beta) {
    const CqState cq = build_omega(chan, ens);
    EntropicQuantities eq;
    eq.i_xb = holevo_information(cq, {Sub::B});
    eq.i_xe = holevo_information(cq, {Sub::E});
    eq.i_xeg2 = holevo_information(cq, {Sub::G2, Sub::E});
    eq.i_g2b_x = conditional_mutual_information(cq, {Sub::G2}, {Sub::B});
    eq.i_g2e_x = conditional_mutual_information(cq, {Sub::G2}, {Sub::E});
    eq.gamma = gamma;
    eq.beta = beta;
    eq.ensemble_label = ens.label;
    return eq;
}

RatePair rsi_rates(const EntropicQuantities& eq) {
    return {clip0(eq.si_guaranteed_signed()), clip0(eq.si_excess_signed()), Model::Interception};
}

RatePair rpe_rates(const EntropicQuantities& eq) {
    return {clip0(eq.pe_guaranteed_signed()), clip0(eq.i_g2b_x), Model::Passive};
}

std::vector<RatePair> pareto_frontier(const std::vector<RegionSample>& samples) {
    std::vector<RatePair> corners;
    corners.reserve(samples.size());
    for (const auto& s : samples) corners.push_back(s.rates);

    std::vector<RatePair> keep;
    for (std::size_t i = 0; i < corners.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < corners.size() && !dominated; ++j) {
            if (i == j) continue;
            const bool geq = corners[j].r >= corners[i].r && corners[j].r_prime >= corners[i].r_prime;
            const bool strict = corners[j].r > corners[i].r || corners[j].r_prime > corners[i].r_prime;
            if (geq && strict) dominated = true;
            // exact duplicates: keep only the first occurrence
            if (!strict && geq && j < i) dominated = true;
        }
        if (!dominated) keep.push_back(corners[i]);
    }
    std::sort(keep.begin(), keep.end(), [](const RatePair& a, const RatePair& b) {
        return a.r < b.r || (a.r == b.r && a.r_prime < b.r_prime);
    });
    return keep;
}

std::vector<EntropicQuantities> sweep_quantities(const WiretapChannel& chan, double gamma,
                                                 const std::vector<double>& beta_grid,
                                                 const std::function<Ensemble(double)>& family) {
    if (beta_grid.empty()) throw ValidationError("sweep_quantities: beta grid must be nonempty");
    for (double b : beta_grid)
        if (!(b >= 0.0 && b <= 1.0))
            throw ValidationError("sweep_quantities: beta grid values must lie in [0,1]");
    const auto make = family ? family : [](double b) { return paper_ensemble(b); };
    std::vector<EntropicQuantities> out;
    out.reserve(beta_grid.size());
    for (double beta : beta_grid) out.push_back(compute_quantities(chan, make(beta), gamma, beta));
    return out;
}

RegionBoundary region_boundary(const std::vector<EntropicQuantities>& quantities, Model model) {
    RegionBoundary boundary;
    boundary.model = model;
    boundary.samples.reserve(quantities.size());
    for (const auto& eq : quantities) {
        const RatePair rp = model == Model::Interception ? rsi_rates(eq) : rpe_rates(eq);
        boundary.samples.push_back({eq.beta, rp});
    }
    boundary.frontier = pareto_frontier(boundary.samples);
    return boundary;
}

RegionBoundary sweep_region(const WiretapChannel& chan, double gamma, Model model,
                            const std::vector<double>& beta_grid) {
    return region_boundary(sweep_quantities(chan, gamma, beta_grid), model);
}

GapReport detect_disconnection(const RegionBoundary& boundary, double r_floor) {
    GapReport rep;
    rep.r_floor = r_floor;
    for (const auto& s : boundary.samples) {
        rep.max_excess = std::max(rep.max_excess, s.rates.r_prime);
        if (s.rates.r >= r_floor) {
            rep.max_excess_above_floor = std::max(rep.max_excess_above_floor, s.rates.r_prime);
            rep.floor_met = true;
        }
    }
    if (!rep.floor_met) rep.max_excess_above_floor = 0.0;
    rep.gap = rep.max_excess - rep.max_excess_above_floor;
    return rep;
}

std::vector<RatePair> time_division_baseline(double r_star, double rp_star,
                                             const std::vector<double>& t_grid) {
    if (r_star < 0.0 || rp_star < 0.0)
        throw ValidationError("time_division_baseline: endpoints must be nonnegative");
    std::vector<RatePair> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) out.push_back({t * r_star, (1.0 - t) * rp_star, Model::Passive});
    return out;
}

std::vector<double> uniform_grid(int points) {
    if (points < 1) throw ValidationError("uniform_grid: need at least one point");
    std::vector<double> g(static_cast<std::size_t>(points));
    if (points == 1) {
        g[0] = 0.0;
        return g;
    }
    for (int i = 0; i < points; ++i)
        g[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
    return g;
}

} // namespace uea
