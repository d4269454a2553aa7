#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nonint/config.hpp"

namespace nonint {

/// Scan of the configured rectangle.
std::vector<SingularityCandidate> run_scan(const RunConfig& cfg);

struct OrderOutcome {
    Complex center;
    double radius = 0.0;
    /// Empty when the loop transport failed; see `error`.
    std::optional<BranchOrderResult> result;
    std::string error;
};

/// Branch order around `center`. The radius defaults to
/// default_loop_radius(center, others, cfg.order.radius_cap).
OrderOutcome order_at(const RunConfig& cfg, Complex center, std::span<const Complex> others,
                      std::optional<double> radius = std::nullopt);

/// Branch order of every candidate, each isolated from the rest. Fills
/// branch_order and return_residual of the candidates in place.
std::vector<OrderOutcome> attach_branch_orders(const RunConfig& cfg, std::vector<SingularityCandidate>& candidates);

struct ResolvedLoops {
    std::vector<LoopSpec> loops;
    /// Candidates behind automatic loops; empty for explicit ones.
    std::vector<SingularityCandidate> candidates;
    /// Points every loop must not wind around besides its own center.
    std::vector<Complex> known_singularities;
};

/// Explicit loops as given, or for "auto" one counterclockwise loop per
/// scanned candidate of finite branch order, with windings = order.
ResolvedLoops resolve_loops(const RunConfig& cfg);

/// Everything in `known` except the loop's own center.
std::vector<Complex> others_for(const LoopSpec& loop, std::span<const Complex> known);

} // namespace nonint
