#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "anosov/bounds.hpp"
#include "anosov/orbitspace.hpp"
#include "anosov/treeact.hpp"

namespace anosov {

using nlohmann::json;

// Throws ConfigInvalid when the file is missing or not valid JSON.
json read_json_file(const std::string& path);

// {"vertices": [..], "edges": [[a, b], ..], "side_sharing": [[e, f], ..], "marks": [..],
//  "vertex_identifications": [..], "edge_identifications": [..]}
ChainGraph chain_from_json(const json& j);
json chain_to_json(const ChainGraph& c);

// {"vertices": [..], "edges": [[a, b], ..], "base": v, "walk": [[edge, +1 | -1], ..]}
std::pair<FiniteGraph, TreeWalk> graph_walk_from_json(const json& j);
json walk_to_json(const TreeWalk& w);

// {"lengths": [..], "infinite": bool, "topology": "hyperbolic" | ..}
StringLengths string_lengths_from_json(const json& j);

// Overrides on top of `base`; unknown keys throw ConfigInvalid.
GrowthBoundParams params_from_json(const json& j, GrowthBoundParams base = {});
json params_to_json(const GrowthBoundParams& p);

json violation_to_json(const Violation& v);
json violation_to_json(const BoundViolation& v);

// Rejects keys outside `allowed` with ConfigInvalid naming `where`.
void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where);

} // namespace anosov
