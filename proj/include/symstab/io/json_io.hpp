#pragma once

#include <string>

#include "json.hpp"
#include "symstab/exactlin/chain_complex.hpp"
#include "symstab/exactlin/group_action.hpp"

namespace symstab::io {

using Json = nlohmann::json;

/// Thrown for structurally malformed input documents.
struct MalformedInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path);

Json matrix_to_json(const QMatrix& m);
QMatrix matrix_from_json(const Json& j);

/// {"direction":"chain","lo":0,"dims":[..],"differentials":[{"degree":n,"rows":r,"cols":c,
///  "entries":[[i,j,"p/q"],..]}]}
Json complex_to_json(const ChainComplex& c);
ChainComplex complex_from_json(const Json& j);

/// {"letters":n,"generators":[[one-based images],..],"matrices":[[matrix per degree],..]}
Json action_to_json(const GroupAction& g);
GroupAction action_from_json(const Json& j);

Rational rational_from_json(const Json& j);

}  // namespace symstab::io
