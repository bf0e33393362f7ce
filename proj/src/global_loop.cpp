#include "panelize/global_loop.hpp"

#include <cmath>

#include "panelize/log.hpp"
#include "panelize/parallel.hpp"

namespace panelize {

std::map<int, PanelLoads> ConstantLoadsProvider::update(
    const std::vector<PanelProblem>& problems, const std::map<int, PanelDesign>&,
    const std::map<int, PanelLoads>&)
{
    std::map<int, PanelLoads> out;
    for (const auto& p : problems)
        out[p.panel_id] = p.loads;
    return out;
}

std::map<int, PanelLoads> StiffnessRedistributionProvider::update(
    const std::vector<PanelProblem>& problems, const std::map<int, PanelDesign>& designs,
    const std::map<int, PanelLoads>&)
{
    // Share of each conserved total is proportional to t_eff * E. Totals are
    // taken from the problem (initial) loads so they cannot drift.
    double total_nx = 0, total_ny = 0, total_nxy = 0, total_stiffness = 0;
    std::map<int, double> stiffness;
    for (const auto& p : problems) {
        const auto it = designs.find(p.panel_id);
        if (it == designs.end())
            throw AnalysisError("provider is missing a design for panel " +
                                std::to_string(p.panel_id));
        const PanelDesign& d = it->second;
        const double t_eff =
            d.t + p.geom.n_stiff * d.t_stiff * d.h_stiff / p.geom.b;
        const double k = t_eff * material_.E * modulus_scale_;
        stiffness[p.panel_id] = k;
        total_stiffness += k;
        total_nx += p.loads.nx;
        total_ny += p.loads.ny;
        total_nxy += p.loads.nxy;
    }
    if (total_stiffness <= 0)
        throw AnalysisError("total panel stiffness vanished during redistribution");
    std::map<int, PanelLoads> out;
    for (const auto& p : problems) {
        const double share = stiffness[p.panel_id] / total_stiffness;
        PanelLoads l;
        l.nx = total_nx * share;
        l.ny = total_ny * share;
        l.nxy = total_nxy * share;
        out[p.panel_id] = l;
    }
    return out;
}

void LoopConfig::validate() const
{
    if (threshold_pct <= 0)
        throw AnalysisError("loop threshold must be positive");
    if (max_iterations < 1)
        throw AnalysisError("loop needs at least one iteration");
}

std::string to_string(LoopStatus status)
{
    switch (status) {
    case LoopStatus::Converged: return "CONVERGED";
    case LoopStatus::MaxIterations: return "MAX_ITERATIONS";
    case LoopStatus::NotConvergedFeasibility: return "NOT_CONVERGED_FEASIBILITY";
    case LoopStatus::ProviderError: return "PROVIDER_ERROR";
    }
    return "UNKNOWN";
}

LoopResult run_global_local(const std::vector<PanelProblem>& problems,
                            const Material& material, const DesignBounds& bounds,
                            GlobalProvider& provider, const LoopConfig& config)
{
    config.validate();
    if (problems.empty())
        throw AnalysisError("global loop needs at least one panel");
    {
        std::map<int, int> seen;
        for (const auto& p : problems)
            if (++seen[p.panel_id] > 1)
                throw AnalysisError("duplicate panel id " + std::to_string(p.panel_id) +
                                    " in global loop");
    }

    LoopResult result;
    std::map<int, PanelLoads> loads;
    for (const auto& p : problems)
        loads[p.panel_id] = p.loads;

    bool converged = false;
    bool last_all_feasible = false;
    for (int iter = 1; iter <= config.max_iterations; ++iter) {
        // Loads are frozen for the whole iteration; panels are independent.
        std::vector<OptResult> panel_results(problems.size());
        parallel_for_each_index(problems.size(), config.worker_count, [&](std::size_t i) {
            const PanelProblem& p = problems[i];
            panel_results[i] =
                optimize_panel(material, loads.at(p.panel_id), p.geom, bounds,
                               mix_seed(config.seed, static_cast<std::uint64_t>(p.panel_id)));
        });

        IterationRecord record;
        record.iteration = iter;
        for (std::size_t i = 0; i < problems.size(); ++i) {
            const int id = problems[i].panel_id;
            result.designs[id] = panel_results[i].design;
            result.analyses[id] = panel_results[i].analysis;
            record.total_weight += panel_results[i].analysis.weight;
            if (panel_results[i].status != OptStatus::Feasible)
                record.infeasible_panels.push_back(id);
        }
        last_all_feasible = record.infeasible_panels.empty();

        if (!result.history.empty()) {
            const double prev = result.history.back().total_weight;
            record.delta_pct = prev > 0
                                   ? std::abs(record.total_weight - prev) / prev * 100.0
                                   : 0.0;
        }
        const auto feasibility = provider.global_feasibility();
        record.global_constraints =
            !feasibility ? "unverified" : (*feasibility ? "ok" : "violated");
        result.history.push_back(record);
        PANELIZE_LOG(info, "iteration " << iter << " weight " << record.total_weight
                                        << (record.delta_pct
                                                ? " delta " + std::to_string(*record.delta_pct)
                                                : std::string()));

        if (record.delta_pct && *record.delta_pct < config.threshold_pct) {
            converged = true;
            break;
        }
        if (iter == config.max_iterations)
            break;

        try {
            loads = provider.update(problems, result.designs, loads);
        } catch (const std::exception& e) {
            result.status = LoopStatus::ProviderError;
            result.provider_error = e.what();
            PANELIZE_LOG(error, "provider '" << provider.name() << "' failed: " << e.what());
            return result;
        }
        for (const auto& p : problems)
            if (!loads.count(p.panel_id))
                {
                    result.status = LoopStatus::ProviderError;
                    result.provider_error = "provider dropped panel " + std::to_string(p.panel_id);
                    return result;
                }
    }

    if (!last_all_feasible)
        result.status = LoopStatus::NotConvergedFeasibility;
    else if (converged)
        result.status = LoopStatus::Converged;
    else
        result.status = LoopStatus::MaxIterations;
    return result;
}

} // namespace panelize
