#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "cubekit/bool_fn.hpp"
#include "cubekit/gowers.hpp"
#include "cubekit/group_fourier.hpp"
#include "cubekit/influence.hpp"
#include "cubekit/pcp.hpp"
#include "cubekit/testing.hpp"

namespace cubekit::io {

using Json = nlohmann::ordered_json;

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json load_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// Serializes with insertion-ordered keys and floats at 17 significant digits.
std::string dump(const Json& j, int indent = 2);

/// {"n", "values"} or, for sign functions, {"n", "bits": hex} with bit m set iff f(m) = -1.
BoolFn bool_fn_from_json(const Json& j);
Json to_json(const BoolFn& f, bool compact = false);

/// {"d", "functions": {"": fn, "1": fn, "12": fn, ...}}.
FnCollection collection_from_json(const Json& j);
Json to_json(const FnCollection& c);

/// {"blocks": [[3],[2,2]], "values": [[re, im], ...]}.
GroupFn group_fn_from_json(const Json& j);
Json to_json(const GroupFn& f);

/// {"t", "edges"} with 1-based vertex labels.
Hypergraph hypergraph_from_json(const Json& j);
Json to_json(const Hypergraph& h);

/// {"sigma", "variables", "constraints": [{"vars", "perms"}]}, 0-based indices and letters.
UniqueGame unique_game_from_json(const Json& j);
Json to_json(const UniqueGame& g);

/// {"tables": [fn, ...]} in variable order.
PcpProof proof_from_json(const Json& j);
Json to_json(const PcpProof& p);

// Reports. Coordinates are shown 1-based.
Json to_json(const Spectrum& s);
Json to_json(const InfluenceReport& r);
Json to_json(const GowersResult& r);
Json to_json(const AcceptanceReport& r);
Json to_json(const GameValueReport& r);
Json to_json(const ComposedReport& r);

const char* method_name(Method m);

/// CSV view of a report: one row per element of "records" when present,
/// otherwise key,value rows of the flattened scalar fields.
std::string to_csv(const Json& report);

}  // namespace cubekit::io
