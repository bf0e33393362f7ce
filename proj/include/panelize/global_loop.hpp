#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "panelize/errors.hpp"
#include "panelize/panel_opt.hpp"

namespace panelize {

// One panel of the global sizing problem. Loads are the conservative
// starting values; providers may redistribute them between iterations.
struct PanelProblem {
    int panel_id = 0;
    PanelGeometry geom;
    PanelLoads loads;
};

// Supplies panel loads for the next iteration from the designs of the
// current one. update() is called serially between iterations; it must be
// deterministic in its inputs. global_feasibility() may report whether the
// redistributed state satisfies the provider's own global checks; nullopt
// means the provider makes no claim.
class GlobalProvider {
  public:
    virtual ~GlobalProvider() = default;
    virtual std::string name() const = 0;
    virtual std::map<int, PanelLoads> update(
        const std::vector<PanelProblem>& problems,
        const std::map<int, PanelDesign>& designs,
        const std::map<int, PanelLoads>& current) = 0;
    virtual std::optional<bool> global_feasibility() const { return std::nullopt; }
};

// Keeps the initial loads on every iteration. The loop then reproduces the
// same designs at iteration 2 and converges with a zero weight delta.
class ConstantLoadsProvider : public GlobalProvider {
  public:
    std::string name() const override { return "constant"; }
    std::map<int, PanelLoads> update(const std::vector<PanelProblem>& problems,
                                     const std::map<int, PanelDesign>& designs,
                                     const std::map<int, PanelLoads>& current) override;
    std::optional<bool> global_feasibility() const override { return true; }
};

// Redistributes each load component in proportion to extensional stiffness
// t_eff * E, conserving the component totals taken from the initial loads.
// Panels that stiffen up attract load; the totals never change, so starting
// every panel from the full conservative load keeps iterates on the safe
// side.
class StiffnessRedistributionProvider : public GlobalProvider {
  public:
    StiffnessRedistributionProvider(Material material, double modulus_scale = 1.0)
        : material_(material), modulus_scale_(modulus_scale) {}
    std::string name() const override { return "redistribution"; }
    std::map<int, PanelLoads> update(const std::vector<PanelProblem>& problems,
                                     const std::map<int, PanelDesign>& designs,
                                     const std::map<int, PanelLoads>& current) override;

  private:
    Material material_;
    double modulus_scale_;
};

struct LoopConfig {
    double threshold_pct = 0.5;  // convergence when delta_pct < threshold
    int max_iterations = 10;
    unsigned worker_count = 1;
    std::uint64_t seed = 0;
    void validate() const;
};

enum class LoopStatus {
    Converged,
    MaxIterations,
    NotConvergedFeasibility,
    ProviderError,
};

std::string to_string(LoopStatus status);

struct IterationRecord {
    int iteration = 0; // 1-based
    double total_weight = 0;
    std::optional<double> delta_pct; // absent on the first iteration
    std::vector<int> infeasible_panels;
    std::string global_constraints; // "ok", "violated", or "unverified"
};

struct LoopResult {
    LoopStatus status = LoopStatus::MaxIterations;
    std::vector<IterationRecord> history;
    std::map<int, PanelDesign> designs;
    std::map<int, AnalysisResult> analyses;
    std::string provider_error; // set when status == ProviderError
};

// Runs the distributed global/local sizing loop: each iteration freezes the
// panel loads, optimizes every panel concurrently, then asks the provider
// for the next loads. Per-panel RNG streams are derived from config.seed and
// the panel id, so results do not depend on worker count.
LoopResult run_global_local(const std::vector<PanelProblem>& problems,
                            const Material& material, const DesignBounds& bounds,
                            GlobalProvider& provider, const LoopConfig& config);

} // namespace panelize
