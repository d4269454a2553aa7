#include "nonint/pipeline.hpp"

#include "nonint/parallel.hpp"

namespace nonint {

std::vector<SingularityCandidate> run_scan(const RunConfig& cfg)
{
    ScanOptions opts;
    opts.base = cfg.scan.base;
    return scan_region(cfg.make_system(), cfg.initial_state, cfg.scan.rect, cfg.scan.ray_count, cfg.integrator, opts);
}

OrderOutcome order_at(const RunConfig& cfg, Complex center, std::span<const Complex> others,
                      std::optional<double> radius)
{
    OrderOutcome out;
    out.center = center;
    out.radius = radius ? *radius : default_loop_radius(center, others, cfg.order.radius_cap);
    LoopSpec loop;
    loop.base = cfg.scan.base;
    loop.center = center;
    loop.radius = out.radius;
    try {
        out.result = branch_order(cfg.make_system(), cfg.initial_state, loop, cfg.integrator, cfg.order.k_max,
                                  cfg.order.residual_tol);
    } catch (const NumericalError& e) {
        out.error = e.what();
    } catch (const std::invalid_argument& e) {
        out.error = e.what();
    }
    return out;
}

std::vector<OrderOutcome> attach_branch_orders(const RunConfig& cfg, std::vector<SingularityCandidate>& candidates)
{
    std::vector<Complex> locations;
    for (const auto& c : candidates)
        locations.push_back(c.location);
    std::vector<OrderOutcome> out(candidates.size());
    parallel_for(candidates.size(), [&](std::size_t i) {
        std::vector<Complex> others;
        for (std::size_t j = 0; j < locations.size(); ++j)
            if (j != i)
                others.push_back(locations[j]);
        out[i] = order_at(cfg, locations[i], others);
    });
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!out[i].result)
            continue;
        candidates[i].branch_order = out[i].result->order;
        const auto& res = out[i].result->residuals;
        if (!res.empty())
            candidates[i].return_residual = res.back();
    }
    return out;
}

std::vector<Complex> others_for(const LoopSpec& loop, std::span<const Complex> known)
{
    std::vector<Complex> out;
    for (Complex z : known)
        if (std::abs(z - loop.center) > 1e-9)
            out.push_back(z);
    return out;
}

ResolvedLoops resolve_loops(const RunConfig& cfg)
{
    ResolvedLoops out;
    if (cfg.loops) {
        out.loops = *cfg.loops;
        for (const auto& l : out.loops)
            out.known_singularities.push_back(l.center);
        return out;
    }
    out.candidates = run_scan(cfg);
    auto orders = attach_branch_orders(cfg, out.candidates);
    for (const auto& c : out.candidates)
        out.known_singularities.push_back(c.location);
    for (std::size_t i = 0; i < out.candidates.size(); ++i) {
        if (!out.candidates[i].branch_order)
            continue;
        LoopSpec l;
        l.base = cfg.scan.base;
        l.center = out.candidates[i].location;
        l.radius = orders[i].radius;
        l.windings = *out.candidates[i].branch_order;
        out.loops.push_back(l);
    }
    return out;
}

} // namespace nonint
