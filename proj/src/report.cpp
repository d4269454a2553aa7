#include "nonint/report.hpp"

namespace nonint {

json to_json(const SingularityCandidate& c)
{
    json j = {{"location", to_json(c.location)},
              {"uncertainty", c.uncertainty},
              {"exponent", c.exponent},
              {"method", to_string(c.method)}};
    if (c.branch_order) {
        j["branchOrder"] = *c.branch_order;
        j["returnResidual"] = c.return_residual;
    } else {
        j["branchOrder"] = nullptr;
    }
    return j;
}

json to_json(const OrderOutcome& o)
{
    json j = {{"center", to_json(o.center)}, {"radius", o.radius}};
    if (o.result) {
        if (o.result->order)
            j["order"] = *o.result->order;
        else
            j["order"] = "Unbounded";
        j["residuals"] = o.result->residuals;
    } else {
        j["order"] = nullptr;
        j["error"] = o.error;
    }
    return j;
}

json to_json(const MonodromyResult& m)
{
    json j = {{"matrix", to_json(m.matrix)},
              {"returnResidual", m.return_residual},
              {"errorEstimate", m.error_estimate},
              {"logDetResidual", m.log_det_residual},
              {"logDet", to_json(m.log_det)},
              {"steps", m.steps}};
    j["loop"] = m.loop ? to_json(*m.loop) : json(nullptr);
    json ev = json::array();
    for (Complex l : eigenvalues(m.matrix))
        ev.push_back(to_json(l));
    j["eigenvalues"] = std::move(ev);
    return j;
}

json to_json(const PowerCheck& p)
{
    return {{"baseMatrix", to_json(p.base_matrix)}, {"longMatrix", to_json(p.long_matrix)}, {"residual", p.residual}};
}

json to_json(const CertificateReport& r)
{
    json inputs = json::array();
    for (const auto& m : r.inputs)
        inputs.push_back(to_json(m));
    return {{"verdict", to_string(r.verdict)},
            {"commutatorNorm", r.commutator_norm},
            {"errorEstimate", r.error_estimate},
            {"marginFactor", r.margin_factor},
            {"requiredMargin", r.required_margin},
            {"worstPair", {r.worst_pair.first, r.worst_pair.second}},
            {"symplecticResiduals", r.symplectic_residuals},
            {"eigenPairingResiduals", r.eigen_pairing_residuals},
            {"inputs", std::move(inputs)}};
}

json make_document(const std::string& command, const RunConfig& cfg, json result)
{
    return {{"schemaVersion", kSchemaVersion}, {"command", command}, {"config", to_json(cfg)},
            {"result", std::move(result)}};
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

} // namespace nonint
