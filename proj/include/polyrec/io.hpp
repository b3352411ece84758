#pragma once

// Serialization: the plain-text edge-list format, JSON mirrors of every
// artifact, and DOT exports for visual inspection.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyrec/orientation.hpp"
#include "polyrec/reconstruct.hpp"
#include "polyrec/walks.hpp"

namespace polyrec {

// Text format: first non-comment line "n m", then m lines "u v" with
// 0-indexed endpoints. '#' starts a comment anywhere on a line.
PolytopeGraph read_graph_text(std::istream& in);
void write_graph_text(std::ostream& out, const PolytopeGraph& g);

nlohmann::json graph_to_json(const PolytopeGraph& g);
PolytopeGraph graph_from_json(const nlohmann::json& j);

// Dispatch on extension: ".json" uses the JSON mirror, anything else text.
PolytopeGraph load_graph(const std::string& path);
void save_graph(const std::string& path, const PolytopeGraph& g);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);
void write_text_file(const std::string& path, const std::string& body);

nlohmann::json order_to_json(const VertexOrder& order);
VertexOrder order_from_json(const nlohmann::json& j, int n);

// One "t>h" token per edge in canonical edge order (tail first).
std::vector<std::string> orientation_to_strings(const PolytopeGraph& g, const Orientation& o);
Orientation orientation_from_strings(const PolytopeGraph& g, const std::vector<std::string>& s);

nlohmann::json facoidal_to_json(const FacoidalSystem& fs);
std::vector<std::vector<VertexId>> raw_walks_from_json(const nlohmann::json& j);

nlohmann::json incidence_to_json(const VertexFacetIncidence& vfi);
nlohmann::json lattice_to_json(const FaceLattice& lat);

std::string graph_to_dot(const PolytopeGraph& g);
std::string orientation_to_dot(const PolytopeGraph& g, const Orientation& o);
// One color per walk, assigned in system order.
std::string walks_to_dot(const PolytopeGraph& g, const FacoidalSystem& fs);

}  // namespace polyrec
