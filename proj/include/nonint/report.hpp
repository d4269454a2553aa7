#pragma once

#include <string>

#include "nonint/config.hpp"
#include "nonint/pipeline.hpp"

namespace nonint {

json to_json(const SingularityCandidate& c);
json to_json(const OrderOutcome& o);
json to_json(const MonodromyResult& m);
json to_json(const PowerCheck& p);
json to_json(const CertificateReport& r);

/// {"schemaVersion", "command", "config", "result"}. No timestamps or host
/// data, so equal inputs give byte-identical documents.
json make_document(const std::string& command, const RunConfig& cfg, json result);

/// Pretty-printed with a trailing newline.
std::string dump(const json& j);

} // namespace nonint
