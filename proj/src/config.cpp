#include "nonint/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace nonint {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw ConfigError("config error at " + (where.empty() ? std::string("/") : where) + ": " + what);
}

double number(const json& j, const std::string& where)
{
    if (!j.is_number())
        fail(where, "expected a number");
    return j.get<double>();
}

long integer(const json& j, const std::string& where)
{
    if (!j.is_number_integer())
        fail(where, "expected an integer");
    return j.get<long>();
}

std::string text(const json& j, const std::string& where)
{
    if (!j.is_string())
        fail(where, "expected a string");
    return j.get<std::string>();
}

/// Walks an object, remembering which keys were consumed so leftovers can
/// be reported.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string where) : j_(j), where_(std::move(where))
    {
        if (!j_.is_object())
            fail(where_, "expected an object");
    }

    const json* get(const std::string& key)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    std::string path(const std::string& key) const { return where_ + "/" + key; }

    void finish() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key()))
                fail(path(it.key()), "unknown key");
    }

private:
    const json& j_;
    std::string where_;
    std::set<std::string> seen_;
};

} // namespace

json to_json(Complex z)
{
    return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j, const std::string& where)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_string()) {
        try {
            return parse_complex(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            fail(where, e.what());
        }
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    fail(where, "expected a complex number as [re, im] or \"re,im\"");
}

json to_json(const CMatrix& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            row.push_back(to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const json& j, const std::string& where)
{
    if (!j.is_array() || j.empty() || !j[0].is_array())
        fail(where, "expected a matrix as nested arrays of complex numbers");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        std::string rw = where + "/" + std::to_string(i);
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            fail(rw, "ragged matrix row");
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], rw + "/" + std::to_string(k));
    }
    return m;
}

json to_json(const Eigen::MatrixXd& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const ComplexState& x)
{
    json arr = json::array();
    for (Eigen::Index i = 0; i < x.size(); ++i)
        arr.push_back(to_json(x[i]));
    return arr;
}

json to_json(const IntegratorConfig& c)
{
    return {{"rtol", c.rtol},   {"atol", c.atol},           {"hInit", c.h_init},
            {"hMin", c.h_min}, {"maxSteps", c.max_steps}, {"blowupNorm", c.blowup_norm}};
}

json to_json(const LoopSpec& l)
{
    return {{"base", to_json(l.base)},
            {"center", to_json(l.center)},
            {"radius", l.radius},
            {"windings", l.windings},
            {"orientation", to_string(l.orientation)}};
}

LoopSpec loop_from_json(const json& j, const std::string& where)
{
    ObjectReader r(j, where);
    LoopSpec l;
    if (auto* v = r.get("base"))
        l.base = complex_from_json(*v, r.path("base"));
    if (auto* v = r.get("center"))
        l.center = complex_from_json(*v, r.path("center"));
    else
        fail(r.path("center"), "missing required key");
    if (auto* v = r.get("radius"))
        l.radius = number(*v, r.path("radius"));
    if (auto* v = r.get("windings"))
        l.windings = static_cast<int>(integer(*v, r.path("windings")));
    if (auto* v = r.get("orientation")) {
        try {
            l.orientation = orientation_from_string(text(*v, r.path("orientation")));
        } catch (const std::invalid_argument& e) {
            fail(r.path("orientation"), e.what());
        }
    }
    r.finish();
    try {
        expand_loop(l);
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
    return l;
}

RunConfig RunConfig::defaults()
{
    RunConfig c;
    c.initial_state = ComplexState(4);
    c.initial_state << 0.1, -0.3, 0.2, 0.4;
    return c;
}

SystemDef RunConfig::make_system() const
{
    return nonint::make_system(system.name, system.g);
}

bool RunConfig::operator==(const RunConfig& o) const
{
    return system == o.system && initial_state.size() == o.initial_state.size() &&
           initial_state == o.initial_state && integrator == o.integrator && scan == o.scan && loops == o.loops &&
           order == o.order && certify == o.certify && output_dir == o.output_dir;
}

json to_json(const RunConfig& c)
{
    json j;
    j["schemaVersion"] = kSchemaVersion;
    j["system"] = {{"name", c.system.name}, {"g", c.system.g}};
    j["initialState"] = to_json(c.initial_state);
    j["integrator"] = to_json(c.integrator);
    j["scan"] = {{"rect", {c.scan.rect.re_min, c.scan.rect.re_max, c.scan.rect.im_min, c.scan.rect.im_max}},
                 {"rayCount", c.scan.ray_count},
                 {"base", to_json(c.scan.base)}};
    if (c.loops) {
        json loops = json::array();
        for (const auto& l : *c.loops)
            loops.push_back(to_json(l));
        j["loops"] = std::move(loops);
    } else {
        j["loops"] = "auto";
    }
    j["order"] = {{"kMax", c.order.k_max}, {"residualTol", c.order.residual_tol}, {"radiusCap", c.order.radius_cap}};
    j["certify"] = {{"requiredMargin", c.certify.required_margin}, {"sweepFactor", c.certify.sweep_factor}};
    j["outputDir"] = c.output_dir;
    return j;
}

RunConfig run_config_from_json(const json& j)
{
    RunConfig c = RunConfig::defaults();
    ObjectReader root(j, "");

    if (auto* v = root.get("schemaVersion")) {
        long version = integer(*v, "/schemaVersion");
        if (version != kSchemaVersion)
            fail("/schemaVersion", "unsupported schema version " + std::to_string(version));
    }
    if (auto* v = root.get("system")) {
        ObjectReader r(*v, "/system");
        if (auto* n = r.get("name"))
            c.system.name = text(*n, r.path("name"));
        if (auto* g = r.get("g"))
            c.system.g = number(*g, r.path("g"));
        r.finish();
    }
    SystemDef sys;
    try {
        sys = c.make_system();
    } catch (const std::invalid_argument& e) {
        fail("/system/name", e.what());
    }
    if (auto* v = root.get("initialState")) {
        if (!v->is_array() || v->empty())
            fail("/initialState", "expected a non-empty array of complex numbers");
        c.initial_state = ComplexState(static_cast<Eigen::Index>(v->size()));
        for (std::size_t i = 0; i < v->size(); ++i)
            c.initial_state[static_cast<Eigen::Index>(i)] =
                complex_from_json((*v)[i], "/initialState/" + std::to_string(i));
    }
    if (c.initial_state.size() != sys.dim)
        fail("/initialState", "system '" + sys.name + "' needs " + std::to_string(sys.dim) + " entries, got " +
                                  std::to_string(c.initial_state.size()));
    if (auto* v = root.get("integrator")) {
        ObjectReader r(*v, "/integrator");
        if (auto* x = r.get("rtol"))
            c.integrator.rtol = number(*x, r.path("rtol"));
        if (auto* x = r.get("atol"))
            c.integrator.atol = number(*x, r.path("atol"));
        if (auto* x = r.get("hInit"))
            c.integrator.h_init = number(*x, r.path("hInit"));
        if (auto* x = r.get("hMin"))
            c.integrator.h_min = number(*x, r.path("hMin"));
        if (auto* x = r.get("maxSteps"))
            c.integrator.max_steps = integer(*x, r.path("maxSteps"));
        if (auto* x = r.get("blowupNorm"))
            c.integrator.blowup_norm = number(*x, r.path("blowupNorm"));
        r.finish();
        try {
            c.integrator.validate();
        } catch (const std::invalid_argument& e) {
            fail("/integrator", e.what());
        }
    }
    if (auto* v = root.get("scan")) {
        ObjectReader r(*v, "/scan");
        if (auto* x = r.get("rect")) {
            if (!x->is_array() || x->size() != 4)
                fail(r.path("rect"), "expected [reMin, reMax, imMin, imMax]");
            c.scan.rect = Rect{number((*x)[0], r.path("rect") + "/0"), number((*x)[1], r.path("rect") + "/1"),
                               number((*x)[2], r.path("rect") + "/2"), number((*x)[3], r.path("rect") + "/3")};
            try {
                c.scan.rect.validate();
            } catch (const std::invalid_argument& e) {
                fail(r.path("rect"), e.what());
            }
        }
        if (auto* x = r.get("rayCount")) {
            c.scan.ray_count = static_cast<int>(integer(*x, r.path("rayCount")));
            if (c.scan.ray_count < 4)
                fail(r.path("rayCount"), "need at least 4 rays");
        }
        if (auto* x = r.get("base"))
            c.scan.base = complex_from_json(*x, r.path("base"));
        r.finish();
    }
    if (auto* v = root.get("loops")) {
        if (v->is_string()) {
            if (v->get<std::string>() != "auto")
                fail("/loops", "expected \"auto\" or an array of loops");
            c.loops.reset();
        } else if (v->is_array()) {
            std::vector<LoopSpec> loops;
            for (std::size_t i = 0; i < v->size(); ++i)
                loops.push_back(loop_from_json((*v)[i], "/loops/" + std::to_string(i)));
            c.loops = std::move(loops);
        } else {
            fail("/loops", "expected \"auto\" or an array of loops");
        }
    }
    if (auto* v = root.get("order")) {
        ObjectReader r(*v, "/order");
        if (auto* x = r.get("kMax"))
            c.order.k_max = static_cast<int>(integer(*x, r.path("kMax")));
        if (auto* x = r.get("residualTol"))
            c.order.residual_tol = number(*x, r.path("residualTol"));
        if (auto* x = r.get("radiusCap"))
            c.order.radius_cap = number(*x, r.path("radiusCap"));
        r.finish();
        if (c.order.k_max < 1)
            fail("/order/kMax", "must be positive");
        if (!(c.order.residual_tol > 0.0))
            fail("/order/residualTol", "must be positive");
        if (!(c.order.radius_cap > 0.0))
            fail("/order/radiusCap", "must be positive");
    }
    if (auto* v = root.get("certify")) {
        ObjectReader r(*v, "/certify");
        if (auto* x = r.get("requiredMargin"))
            c.certify.required_margin = number(*x, r.path("requiredMargin"));
        if (auto* x = r.get("sweepFactor"))
            c.certify.sweep_factor = number(*x, r.path("sweepFactor"));
        r.finish();
        if (!(c.certify.sweep_factor > 1.0))
            fail("/certify/sweepFactor", "must exceed 1");
    }
    if (auto* v = root.get("outputDir"))
        c.output_dir = text(*v, "/outputDir");
    root.finish();
    return c;
}

RunConfig load_run_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return run_config_from_json(j);
}

} // namespace nonint
