#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"

#include "nonint/parallel.hpp"
#include "nonint/plot.hpp"
#include "nonint/report.hpp"

namespace nonint {

namespace {

struct Common {
    std::string config_path;
    double g = 0.0;
    std::string output_dir;
    std::string rect;
    int rays = 0;
    bool quiet = false;
};

struct LoopFlags {
    std::vector<std::string> singularities;
    double radius = 0.0;
    int windings = 0;
    std::string orientation = "ccw";
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("-c,--config", c.config_path, "RunConfig JSON file (defaults if omitted)");
    cmd->add_option("--g", c.g, "Override the gravity parameter");
    cmd->add_option("-o,--output-dir", c.output_dir, "Override the output directory");
    cmd->add_option("--rect", c.rect, "Scan rectangle reMin,reMax,imMin,imMax");
    cmd->add_option("--rays", c.rays, "Number of scan rays")->check(CLI::Range(4, 1 << 20));
    cmd->add_flag("-q,--quiet", c.quiet, "Do not echo results to stdout");
}

void add_loop_flags(CLI::App* cmd, LoopFlags& l)
{
    cmd->add_option("-s,--singularity", l.singularities, "Loop center re,im (repeatable)");
    cmd->add_option("--radius", l.radius, "Loop radius")->check(CLI::PositiveNumber);
    cmd->add_option("--windings", l.windings, "Windings per loop (default: detected branch order)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--orientation", l.orientation, "ccw or cw")->check(CLI::IsMember({"ccw", "cw"}));
}

Rect parse_rect(const std::string& text)
{
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ConfigError("--rect: '" + item + "' is not a number");
        }
    }
    if (v.size() != 4)
        throw ConfigError("--rect: expected reMin,reMax,imMin,imMax");
    Rect r{v[0], v[1], v[2], v[3]};
    try {
        r.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("--rect: ") + e.what());
    }
    return r;
}

Complex parse_flag_complex(const std::string& flag, const std::string& text)
{
    try {
        return parse_complex(text);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(flag + ": " + e.what());
    }
}

RunConfig resolve_config(const CLI::App* cmd, const Common& c)
{
    RunConfig cfg = c.config_path.empty() ? RunConfig::defaults() : load_run_config(c.config_path);
    if (cmd->count("--g")) {
        cfg.system.g = c.g;
        cfg.make_system();
    }
    if (cmd->count("--output-dir"))
        cfg.output_dir = c.output_dir;
    if (cmd->count("--rect"))
        cfg.scan.rect = parse_rect(c.rect);
    if (cmd->count("--rays"))
        cfg.scan.ray_count = c.rays;
    return cfg;
}

std::vector<Complex> flag_centers(const LoopFlags& l)
{
    std::vector<Complex> out;
    for (const auto& s : l.singularities)
        out.push_back(parse_flag_complex("--singularity", s));
    return out;
}

/// Loops from --singularity flags; missing windings are filled with the
/// detected branch order.
std::vector<LoopSpec> loops_from_flags(const CLI::App* cmd, const RunConfig& cfg, const LoopFlags& l)
{
    const std::vector<Complex> centers = flag_centers(l);
    std::vector<LoopSpec> loops(centers.size());
    std::vector<std::string> errors(centers.size());
    parallel_for(centers.size(), [&](std::size_t i) {
        std::vector<Complex> others;
        for (std::size_t j = 0; j < centers.size(); ++j)
            if (j != i)
                others.push_back(centers[j]);
        LoopSpec& loop = loops[i];
        loop.base = cfg.scan.base;
        loop.center = centers[i];
        loop.radius = cmd->count("--radius") ? l.radius : default_loop_radius(centers[i], others, cfg.order.radius_cap);
        loop.orientation = orientation_from_string(l.orientation);
        if (cmd->count("--windings")) {
            loop.windings = l.windings;
            return;
        }
        OrderOutcome o = order_at(cfg, loop.center, others, loop.radius);
        if (!o.result)
            errors[i] = o.error;
        else if (!o.result->order)
            errors[i] = "no branch order up to kMax = " + std::to_string(cfg.order.k_max) +
                        " around this center; pass --windings explicitly";
        else
            loop.windings = *o.result->order;
    });
    for (std::size_t i = 0; i < errors.size(); ++i)
        if (!errors[i].empty())
            throw NumericalError("loop around " + l.singularities[i] + ": " + errors[i]);
    for (const auto& loop : loops)
        try {
            expand_loop(loop);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("--singularity: ") + e.what());
        }
    return loops;
}

/// Loops from flags when given (recorded into cfg.loops so the emitted
/// config reproduces the run), otherwise from the config.
ResolvedLoops loops_for(const CLI::App* cmd, RunConfig& cfg, const LoopFlags& l)
{
    if (!l.singularities.empty())
        cfg.loops = loops_from_flags(cmd, cfg, l);
    return resolve_loops(cfg);
}

class Emitter {
public:
    Emitter(const RunConfig& cfg, bool quiet, std::ostream& out) : cfg_(cfg), quiet_(quiet), out_(out) {}

    void file(const std::string& name, const std::string& content, bool echo) const
    {
        std::filesystem::create_directories(cfg_.output_dir);
        const std::filesystem::path p = std::filesystem::path(cfg_.output_dir) / name;
        std::ofstream f(p, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot write '" + p.string() + "'");
        f << content;
        if (echo && !quiet_)
            out_ << content;
    }

    void document(const std::string& command, json result) const
    {
        file(command + ".json", dump(make_document(command, cfg_, std::move(result))), true);
    }

private:
    const RunConfig& cfg_;
    bool quiet_;
    std::ostream& out_;
};

json candidates_json(const std::vector<SingularityCandidate>& cs)
{
    json arr = json::array();
    for (const auto& c : cs)
        arr.push_back(to_json(c));
    return arr;
}

std::string candidates_csv(const std::vector<SingularityCandidate>& cs)
{
    std::ostringstream o;
    o.precision(17);
    o << "re,im,uncertainty,exponent,method\n";
    for (const auto& c : cs)
        o << c.location.real() << ',' << c.location.imag() << ',' << c.uncertainty << ',' << c.exponent << ','
          << to_string(c.method) << '\n';
    return o.str();
}

int run_scan_cmd(const CLI::App* cmd, const Common& c, bool csv, std::ostream& out)
{
    RunConfig cfg = resolve_config(cmd, c);
    std::vector<SingularityCandidate> cs = run_scan(cfg);
    Emitter emit(cfg, c.quiet, out);
    emit.document("scan", candidates_json(cs));
    if (csv)
        emit.file("scan.csv", candidates_csv(cs), false);
    return 0;
}

int run_order_cmd(const CLI::App* cmd, const Common& c, const LoopFlags& l, std::ostream& out)
{
    RunConfig cfg = resolve_config(cmd, c);
    std::vector<OrderOutcome> outcomes;
    if (!l.singularities.empty()) {
        const std::vector<Complex> centers = flag_centers(l);
        outcomes.resize(centers.size());
        parallel_for(centers.size(), [&](std::size_t i) {
            std::vector<Complex> others;
            for (std::size_t j = 0; j < centers.size(); ++j)
                if (j != i)
                    others.push_back(centers[j]);
            outcomes[i] = order_at(cfg, centers[i], others,
                                   cmd->count("--radius") ? std::optional<double>(l.radius) : std::nullopt);
        });
    } else {
        std::vector<SingularityCandidate> cs = run_scan(cfg);
        outcomes = attach_branch_orders(cfg, cs);
    }
    json arr = json::array();
    for (const auto& o : outcomes)
        arr.push_back(to_json(o));
    Emitter(cfg, c.quiet, out).document("order", std::move(arr));
    return 0;
}

int run_monodromy_cmd(const CLI::App* cmd, const Common& c, const LoopFlags& l, std::ostream& out)
{
    RunConfig cfg = resolve_config(cmd, c);
    ResolvedLoops rl = loops_for(cmd, cfg, l);
    if (rl.loops.empty())
        throw NumericalError("no loops: the scan found no singularity of finite branch order");
    const SystemDef sys = cfg.make_system();
    std::vector<MonodromyResult> results(rl.loops.size());
    parallel_for(rl.loops.size(), [&](std::size_t i) {
        MonodromyOptions opts;
        opts.sweep = true;
        opts.sweep_factor = cfg.certify.sweep_factor;
        opts.avoid = others_for(rl.loops[i], rl.known_singularities);
        results[i] = monodromy(sys, cfg.initial_state, rl.loops[i], cfg.integrator, opts);
    });
    json arr = json::array();
    for (const auto& m : results)
        arr.push_back(to_json(m));
    Emitter(cfg, c.quiet, out).document("monodromy", std::move(arr));
    return 0;
}

int run_certify_cmd(const CLI::App* cmd, const Common& c, const LoopFlags& l, std::ostream& out)
{
    RunConfig cfg = resolve_config(cmd, c);
    ResolvedLoops rl = loops_for(cmd, cfg, l);
    if (rl.loops.size() < 2)
        throw NumericalError("certify needs at least two loops, found " + std::to_string(rl.loops.size()) +
                             (cfg.loops ? "" : " singularities of finite branch order in the scan region"));
    CertifyOptions opts;
    opts.required_margin = cfg.certify.required_margin;
    opts.sweep_factor = cfg.certify.sweep_factor;
    opts.monodromy.avoid = rl.known_singularities;
    CertificateReport rep = certify(cfg.make_system(), cfg.initial_state, rl.loops, cfg.integrator, opts);
    json result = to_json(rep);
    if (!rl.candidates.empty())
        result["candidates"] = candidates_json(rl.candidates);
    Emitter(cfg, c.quiet, out).document("certify", std::move(result));
    return rep.verdict == Verdict::NonCommutingGenerators ? 0 : 2;
}

int run_trace_cmd(const CLI::App* cmd, const Common& c, const LoopFlags& l, const std::string& to, bool variational,
                  std::ostream& out, std::ostream& err)
{
    RunConfig cfg = resolve_config(cmd, c);
    PathSpec path;
    if (!to.empty()) {
        path.segments.push_back(LineSegment{cfg.scan.base, parse_flag_complex("--to", to)});
        path.validate();
    } else {
        ResolvedLoops rl = loops_for(cmd, cfg, l);
        if (rl.loops.empty())
            throw NumericalError("nothing to trace: pass --to or --singularity");
        path = expand_loop(rl.loops.front());
    }
    std::vector<StepRecord> steps;
    TransportResult r = transport(cfg.make_system(), cfg.initial_state, path, cfg.integrator, variational,
                                  [&](const StepRecord& s) { steps.push_back(s); });
    Emitter(cfg, c.quiet, out).file("trace.csv", trace_csv(steps), true);
    if (!r.completed())
        err << "trace: transport stopped (" << to_string(r.status) << ") on segment " << r.segment_index
            << " near t = " << r.time_estimate.real() << (r.time_estimate.imag() < 0 ? "" : "+")
            << r.time_estimate.imag() << "i\n";
    return 0;
}

int run_plot_cmd(const CLI::App* cmd, const Common& c, const LoopFlags& l, std::ostream& out)
{
    RunConfig cfg = resolve_config(cmd, c);
    ResolvedLoops rl = loops_for(cmd, cfg, l);
    PlotScene scene;
    scene.base = cfg.scan.base;
    scene.singularities = rl.known_singularities;
    std::vector<PathSpec> paths;
    for (std::size_t i = 0; i < rl.loops.size(); ++i) {
        LoopSpec one = rl.loops[i];
        one.windings = 1;
        paths.push_back(expand_loop(one));
        scene.path_labels.push_back("loop " + std::to_string(i + 1) + " (" + std::to_string(rl.loops[i].windings) +
                                    "x " + to_string(rl.loops[i].orientation) + ")");
    }
    scene.paths = paths;
    Emitter emit(cfg, c.quiet, out);
    emit.file("plot.svg", render_svg(scene), true);
    emit.file("plot.csv", path_csv(paths), false);
    return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Numerical monodromy and non-integrability certificates in complex time", "nonint"};
    app.require_subcommand(1);

    Common common;
    LoopFlags loops;
    bool csv = false;
    std::string to;
    bool variational = false;
    std::string init_path;

    auto* scan = app.add_subcommand("scan", "Locate complex-time singularities in a rectangle");
    add_common(scan, common);
    scan->add_flag("--csv", csv, "Also write scan.csv");

    auto* order = app.add_subcommand("order", "Branch order per singularity");
    add_common(order, common);
    add_loop_flags(order, loops);

    auto* mono = app.add_subcommand("monodromy", "Monodromy matrices of the variational equations");
    add_common(mono, common);
    add_loop_flags(mono, loops);

    auto* cert = app.add_subcommand("certify", "Commutator verdict over all loops");
    add_common(cert, common);
    add_loop_flags(cert, loops);

    auto* trace = app.add_subcommand("trace", "CSV step trace of one transport");
    add_common(trace, common);
    add_loop_flags(trace, loops);
    trace->add_option("--to", to, "Trace the straight ray from the base to re,im instead of a loop");
    trace->add_flag("--variational", variational, "Transport the variational equations too");

    auto* plot = app.add_subcommand("plot", "SVG of loops and singularities");
    add_common(plot, common);
    add_loop_flags(plot, loops);

    auto* config = app.add_subcommand("config", "Configuration helpers");
    config->require_subcommand(1);
    auto* init = config->add_subcommand("init", "Print the default configuration");
    init->add_option("-o,--output", init_path, "Also write it to this file");
    init->add_flag("-q,--quiet", common.quiet, "Do not echo to stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    try {
        if (*scan)
            return run_scan_cmd(scan, common, csv, out);
        if (*order)
            return run_order_cmd(order, common, loops, out);
        if (*mono)
            return run_monodromy_cmd(mono, common, loops, out);
        if (*cert)
            return run_certify_cmd(cert, common, loops, out);
        if (*trace)
            return run_trace_cmd(trace, common, loops, to, variational, out, err);
        if (*plot)
            return run_plot_cmd(plot, common, loops, out);
        if (*init) {
            std::string text = dump(to_json(RunConfig::defaults()));
            if (!init_path.empty()) {
                std::ofstream f(init_path, std::ios::binary);
                if (!f)
                    throw std::runtime_error("cannot write '" + init_path + "'");
                f << text;
            }
            if (!common.quiet)
                out << text;
            return 0;
        }
    } catch (const ConfigError& e) {
        err << "nonint: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        err << "nonint: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "nonint: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

} // namespace nonint
