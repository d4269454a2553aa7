#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "nonint/singular.hpp"
#include "nonint/verdict.hpp"

namespace nonint {

using nlohmann::json;

/// Thrown for malformed configuration; the message starts with the JSON
/// pointer of the offending value.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

struct SystemConfig {
    std::string name = "double-pendulum";
    double g = 1.0;
    bool operator==(const SystemConfig&) const = default;
};

struct ScanConfig {
    Rect rect{0.0, 1.0, -1.5, 1.5};
    int ray_count = 32;
    Complex base{0.0, 0.0};
    bool operator==(const ScanConfig&) const = default;
};

struct OrderConfig {
    int k_max = 12;
    double residual_tol = 1e-6;
    double radius_cap = 0.3;
    bool operator==(const OrderConfig&) const = default;
};

struct CertifyConfig {
    double required_margin = 1e3;
    double sweep_factor = 100.0;
    bool operator==(const CertifyConfig&) const = default;
};

struct RunConfig {
    SystemConfig system;
    ComplexState initial_state;
    IntegratorConfig integrator;
    ScanConfig scan;
    /// nullopt means "auto": loops are derived from the scan and branch orders.
    std::optional<std::vector<LoopSpec>> loops;
    OrderConfig order;
    CertifyConfig certify;
    std::string output_dir = "nonint-out";

    /// Double pendulum from (0.1, -0.3, 0.2, 0.4) with g = 1, scan of
    /// [0, 1] x [-1.5, 1.5]i and automatic loops.
    static RunConfig defaults();

    SystemDef make_system() const;
    bool operator==(const RunConfig& other) const;
};

json to_json(Complex z);
/// Accepts [re, im], "re,im" or a bare number.
Complex complex_from_json(const json& j, const std::string& where);
json to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j, const std::string& where);
json to_json(const Eigen::MatrixXd& m);
json to_json(const ComplexState& x);

json to_json(const IntegratorConfig& c);
json to_json(const LoopSpec& l);
LoopSpec loop_from_json(const json& j, const std::string& where);

json to_json(const RunConfig& c);
/// Rejects unknown keys and wrong types with a location-bearing ConfigError.
RunConfig run_config_from_json(const json& j);
RunConfig load_run_config(const std::string& path);

} // namespace nonint
