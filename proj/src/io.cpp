#include "polyrec/io.hpp"

#include <fstream>
#include <sstream>

namespace polyrec {

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool next_content_line(std::istream& in, std::string& out) {
  std::string line;
  while (std::getline(in, line)) {
    std::string body = strip_comment(line);
    std::istringstream probe(body);
    std::string token;
    if (probe >> token) {
      out = body;
      return true;
    }
  }
  return false;
}

}  // namespace

PolytopeGraph read_graph_text(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) fail(Err::ParseError, "missing header line");
  std::istringstream header(line);
  long long n = 0, m = 0;
  if (!(header >> n >> m)) fail(Err::ParseError, "header must read \"n m\"");
  std::string extra;
  if (header >> extra) fail(Err::ParseError, "unexpected token after header");
  if (n <= 0 || m < 0) fail(Err::ParseError, "header out of range");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line(in, line))
      fail(Err::ParseError, "expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    std::istringstream row(line);
    long long u = 0, v = 0;
    if (!(row >> u >> v)) fail(Err::ParseError, "edge line must read \"u v\"");
    if (row >> extra) fail(Err::ParseError, "unexpected token after edge");
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
  }
  if (next_content_line(in, line)) fail(Err::ParseError, "trailing content after edge list");
  return PolytopeGraph::validate(static_cast<int>(n), std::move(edges));
}

void write_graph_text(std::ostream& out, const PolytopeGraph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

nlohmann::json graph_to_json(const PolytopeGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.vertex_count()}, {"edges", edges}};
}

PolytopeGraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges") ||
      !j["n"].is_number_integer() || !j["edges"].is_array())
    fail(Err::ParseError, "graph JSON must be {\"n\": int, \"edges\": [[u,v],...]}");
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      fail(Err::ParseError, "each edge must be a pair of integers");
    edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return PolytopeGraph::validate(j["n"].get<int>(), std::move(edges));
}

namespace {

bool has_json_extension(const std::string& path) {
  return path.size() >= 5 && path.substr(path.size() - 5) == ".json";
}

}  // namespace

PolytopeGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::ParseError, "cannot open " + path);
  if (has_json_extension(path)) {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      fail(Err::ParseError, std::string("invalid JSON: ") + e.what());
    }
    return graph_from_json(j);
  }
  return read_graph_text(in);
}

void save_graph(const std::string& path, const PolytopeGraph& g) {
  std::ofstream out(path);
  if (!out) fail(Err::ParseError, "cannot open " + path + " for writing");
  if (has_json_extension(path))
    out << graph_to_json(g).dump(2) << '\n';
  else
    write_graph_text(out, g);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::ParseError, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(Err::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) fail(Err::ParseError, "cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) fail(Err::ParseError, "cannot open " + path + " for writing");
  out << body;
}

nlohmann::json order_to_json(const VertexOrder& order) {
  return nlohmann::json(order.by_rank);
}

VertexOrder order_from_json(const nlohmann::json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    fail(Err::ParseError, "vertex order must be an array of length " + std::to_string(n));
  std::vector<VertexId> seq;
  for (const auto& x : j) {
    if (!x.is_number_integer()) fail(Err::ParseError, "vertex order entries must be integers");
    seq.push_back(x.get<int>());
  }
  return VertexOrder::from_sequence(std::move(seq));
}

std::vector<std::string> orientation_to_strings(const PolytopeGraph& g, const Orientation& o) {
  std::vector<std::string> out;
  out.reserve(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e)
    out.push_back(std::to_string(o.tail(g, e)) + ">" + std::to_string(o.head(g, e)));
  return out;
}

Orientation orientation_from_strings(const PolytopeGraph& g, const std::vector<std::string>& s) {
  if (static_cast<int>(s.size()) != g.edge_count())
    fail(Err::ParseError, "orientation needs one entry per edge in canonical order");
  std::vector<uint8_t> bits(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    auto gt = s[e].find('>');
    if (gt == std::string::npos) fail(Err::ParseError, "orientation entries look like \"u>v\"");
    int a = 0, b = 0;
    try {
      a = std::stoi(s[e].substr(0, gt));
      b = std::stoi(s[e].substr(gt + 1));
    } catch (const std::exception&) {
      fail(Err::ParseError, "orientation endpoints must be integers");
    }
    const Edge& ed = g.edge(e);
    if (a == ed.u && b == ed.v)
      bits[e] = 1;
    else if (a == ed.v && b == ed.u)
      bits[e] = 0;
    else
      fail(Err::ParseError, "entry " + s[e] + " does not match edge " + std::to_string(ed.u) +
                                "-" + std::to_string(ed.v));
  }
  return Orientation::from_bits(g, std::move(bits));
}

nlohmann::json facoidal_to_json(const FacoidalSystem& fs) {
  nlohmann::json walks = nlohmann::json::array();
  for (const auto& w : fs.walks) walks.push_back(w.seq());
  return {{"walks", walks}};
}

std::vector<std::vector<VertexId>> raw_walks_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("walks") || !j["walks"].is_array())
    fail(Err::ParseError, "expected {\"walks\": [[v,...],...]}");
  std::vector<std::vector<VertexId>> raw;
  for (const auto& w : j["walks"]) {
    if (!w.is_array()) fail(Err::ParseError, "each walk must be an array of vertices");
    std::vector<VertexId> seq;
    for (const auto& x : w) {
      if (!x.is_number_integer()) fail(Err::ParseError, "walk entries must be integers");
      seq.push_back(x.get<int>());
    }
    raw.push_back(std::move(seq));
  }
  return raw;
}

nlohmann::json incidence_to_json(const VertexFacetIncidence& vfi) {
  nlohmann::json facets = nlohmann::json::array();
  for (const auto& f : vfi.facets) facets.push_back(f);
  return {{"facets", facets}};
}

nlohmann::json lattice_to_json(const FaceLattice& lat) {
  nlohmann::json faces = nlohmann::json::object();
  for (int k = 0; k <= lat.dim; ++k) {
    nlohmann::json level = nlohmann::json::array();
    for (const auto& f : lat.faces[k]) level.push_back(f);
    faces[std::to_string(k)] = level;
  }
  nlohmann::json hasse = nlohmann::json::array();
  for (auto [lo, hi] : lat.hasse) hasse.push_back({lo, hi});
  return {{"fvector", lat.fvector}, {"faces", faces}, {"hasse", hasse}};
}

namespace {

const char* kPalette[] = {
    "#e6194b", "#3cb44b", "#0082c8", "#f58231", "#911eb4", "#46b5a8",
    "#f032e6", "#808000", "#6a3d9a", "#008080", "#aa6e28", "#800000",
};
constexpr int kPaletteSize = 12;

}  // namespace

std::string graph_to_dot(const PolytopeGraph& g) {
  std::ostringstream out;
  out << "graph {\n  node [shape=circle];\n";
  for (const Edge& e : g.edges()) out << "  " << e.u << " -- " << e.v << ";\n";
  out << "}\n";
  return out.str();
}

std::string orientation_to_dot(const PolytopeGraph& g, const Orientation& o) {
  std::ostringstream out;
  out << "digraph {\n  node [shape=circle];\n";
  for (int e = 0; e < g.edge_count(); ++e)
    out << "  " << o.tail(g, e) << " -> " << o.head(g, e) << ";\n";
  out << "}\n";
  return out.str();
}

std::string walks_to_dot(const PolytopeGraph&, const FacoidalSystem& fs) {
  std::ostringstream out;
  out << "graph {\n  node [shape=circle];\n";
  for (size_t wi = 0; wi < fs.walks.size(); ++wi) {
    const auto& s = fs.walks[wi].seq();
    int l = static_cast<int>(s.size());
    out << "  // walk " << wi << "\n";
    for (int i = 0; i < l; ++i)
      out << "  " << s[i] << " -- " << s[(i + 1) % l] << " [color=\""
          << kPalette[wi % kPaletteSize] << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace polyrec
