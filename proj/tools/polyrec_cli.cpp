// Command line front end: generate standard graphs, reconstruct face
// structure with certificates, verify certificates, export DOT drawings.
//
// Exit codes: 0 success / certified, 1 invalid input or arguments,
// 2 uncertified (open gap or rejected certificate).

#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "polyrec/io.hpp"
#include "polyrec/solver.hpp"

namespace {

using namespace polyrec;

struct GenArgs {
  std::vector<std::string> spec;
  std::string out = "-";
  std::string format;
};

int run_gen(const GenArgs& a) {
  // "gen cube 3" and "gen cube(3)" are both accepted.
  std::string spec = a.spec[0];
  if (a.spec.size() == 2) spec += "(" + a.spec[1] + ")";
  PolytopeGraph g = generate(spec);
  std::string format = a.format;
  if (format.empty())
    format = a.out.size() >= 5 && a.out.substr(a.out.size() - 5) == ".json" ? "json" : "text";
  if (a.out == "-") {
    if (format == "json")
      std::cout << graph_to_json(g).dump(2) << "\n";
    else
      write_graph_text(std::cout, g);
    return 0;
  }
  if (format == "json")
    write_json_file(a.out, graph_to_json(g));
  else {
    std::ostringstream body;
    write_graph_text(body, g);
    write_text_file(a.out, body.str());
  }
  return 0;
}

struct ReconstructArgs {
  std::string graph;
  std::string out_dir = ".";
  std::string format = "text";
  SolveConfig cfg;
};

int run_reconstruct(const ReconstructArgs& a) {
  PolytopeGraph g = load_graph(a.graph);
  SolveResult r = solve(g, a.cfg);
  std::filesystem::create_directories(a.out_dir);
  auto path = [&](const char* name) { return (std::filesystem::path(a.out_dir) / name).string(); };

  if (!r.certificate) {
    write_json_file(path("gap.json"), gap_to_json(g, r.state, r.stats));
    if (a.format == "json") {
      nlohmann::json j{{"certified", false},
                       {"best_cardinality", r.state.primal_value},
                       {"best_h2sum", r.state.dual_value},
                       {"gap", r.state.gap()},
                       {"gap_file", path("gap.json")}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "uncertified: best walk count " << r.state.primal_value
                << ", best orientation value " << r.state.dual_value << " (gap "
                << r.state.gap() << ")\n"
                << "wrote " << path("gap.json") << "\n";
    }
    return 2;
  }

  const Certificate& cert = *r.certificate;
  TwoFaceSet tf = TwoFaceSet::from_system(g, cert.walks);
  VertexFacetIncidence vfi = facets_from_twofaces(g, tf);
  FaceLattice lat = face_lattice(g, vfi);

  write_json_file(path("certificate.json"), certificate_to_json(g, cert));
  write_json_file(path("twofaces.json"), facoidal_to_json(cert.walks));
  write_json_file(path("incidence.json"), incidence_to_json(vfi));
  write_json_file(path("lattice.json"), lattice_to_json(lat));

  if (a.format == "json") {
    nlohmann::json j{{"certified", true},
                     {"conditional", cert.conditional},
                     {"cardinality", cert.cardinality},
                     {"h2sum", cert.h2},
                     {"facets", vfi.facets.size()},
                     {"fvector", lat.fvector},
                     {"files",
                      {{"certificate", path("certificate.json")},
                       {"twofaces", path("twofaces.json")},
                       {"incidence", path("incidence.json")},
                       {"lattice", path("lattice.json")}}}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "certified: " << cert.cardinality << " walks = orientation value "
              << cert.h2 << " (conditional on polytopality)\n"
              << "facets " << vfi.facets.size() << ", f-vector";
    for (long long f : lat.fvector) std::cout << ' ' << f;
    std::cout << "\nwrote " << path("certificate.json") << ", " << path("twofaces.json") << ", "
              << path("incidence.json") << ", " << path("lattice.json") << "\n";
  }
  return 0;
}

struct VerifyArgs {
  std::string graph;
  std::string certificate;
  std::string format = "text";
};

int run_verify(const VerifyArgs& a) {
  PolytopeGraph g = load_graph(a.graph);
  Verdict v = verify_certificate(g, read_json_file(a.certificate));
  if (a.format == "json") {
    nlohmann::json j{{"accepted", v.accepted}, {"conditional", v.conditional}, {"reason", v.reason}};
    std::cout << j.dump(2) << "\n";
  } else if (v.accepted) {
    std::cout << "accepted: optimal pair; 2-face reading conditional on polytopality\n";
  } else {
    std::cout << "rejected: " << v.reason << "\n";
  }
  return v.accepted ? 0 : 2;
}

struct DotArgs {
  std::string graph;
  std::string walks;
  std::string orientation;
  std::string out = "-";
};

int run_export_dot(const DotArgs& a) {
  PolytopeGraph g = load_graph(a.graph);
  std::string body;
  if (!a.walks.empty()) {
    FacoidalSystem fs = validate_facoidal(g, raw_walks_from_json(read_json_file(a.walks)));
    body = walks_to_dot(g, fs);
  } else if (!a.orientation.empty()) {
    nlohmann::json j = read_json_file(a.orientation);
    Orientation o = orient_by_order(g, order_from_json(
                                           j.is_object() && j.contains("vertex_order")
                                               ? j["vertex_order"]
                                               : j,
                                           g.vertex_count()));
    body = orientation_to_dot(g, o);
  } else {
    body = graph_to_dot(g);
  }
  if (a.out == "-")
    std::cout << body;
  else
    write_text_file(a.out, body);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconstruct the face structure of a simple polytope from its graph"};
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a standard polytope graph");
  gen->add_option("spec", gen_args.spec,
                  "family spec: simplex(d), cube(d), polygon(m), prism(m), dodecahedron, "
                  "segment, product(a,b); a size may be given as a second argument")
      ->required()
      ->expected(1, 2);
  gen->add_option("-o,--out", gen_args.out, "output file, - for stdout");
  gen->add_option("--format", gen_args.format, "text or json (default: by extension)")
      ->check(CLI::IsMember({"text", "json"}));

  ReconstructArgs rec_args;
  auto* rec = app.add_subcommand("reconstruct", "Solve, certify and emit the face structure");
  rec->add_option("graph", rec_args.graph, "input graph file")->required();
  rec->add_option("--out-dir", rec_args.out_dir, "directory for result files");
  rec->add_option("--seed", rec_args.cfg.seed, "base random seed");
  rec->add_option("--restarts", rec_args.cfg.restarts, "number of search restarts");
  rec->add_option("--budget-iters", rec_args.cfg.budget_iters, "evaluations per restart");
  rec->add_option("--budget-secs", rec_args.cfg.budget_secs,
                  "wall clock limit in seconds, 0 disables");
  rec->add_flag("--exact", rec_args.cfg.exact, "run exhaustive fallbacks on a remaining gap");
  rec->add_option("--threads", rec_args.cfg.threads, "parallel restarts, merged by index");
  rec->add_option("--format", rec_args.format, "stdout summary format")
      ->check(CLI::IsMember({"text", "json"}));

  VerifyArgs ver_args;
  auto* ver = app.add_subcommand("verify", "Check a certificate against a graph");
  ver->add_option("graph", ver_args.graph, "input graph file")->required();
  ver->add_option("certificate", ver_args.certificate, "certificate JSON")->required();
  ver->add_option("--format", ver_args.format, "stdout format")
      ->check(CLI::IsMember({"text", "json"}));

  DotArgs dot_args;
  auto* dot = app.add_subcommand("export-dot", "Write a DOT drawing");
  dot->add_option("graph", dot_args.graph, "input graph file")->required();
  dot->add_option("--walks", dot_args.walks, "JSON with walks to color by cycle");
  dot->add_option("--orientation", dot_args.orientation,
                  "certificate JSON or bare vertex order to draw directed edges");
  dot->add_option("-o,--out", dot_args.out, "output file, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (rec->parsed()) return run_reconstruct(rec_args);
    if (ver->parsed()) return run_verify(ver_args);
    if (dot->parsed()) return run_export_dot(dot_args);
  } catch (const polyrec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == polyrec::Err::GapNotClosed ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
