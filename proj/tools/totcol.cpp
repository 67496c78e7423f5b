// totcol: command-line front end for the total coloring toolkit.
//
// Exit status: 0 success, 1 domain failure (bound missed, check failed),
// 2 bad input or usage.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "totcol/augment.hpp"
#include "totcol/coloring.hpp"
#include "totcol/discharging.hpp"
#include "totcol/embedding.hpp"
#include "totcol/error.hpp"
#include "totcol/gen.hpp"
#include "totcol/graph.hpp"
#include "totcol/reducibility.hpp"

using namespace totcol;
using nlohmann::json;

namespace {

struct Common {
  std::string json_path;
  std::string dot_path;
};

void write_json(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  return out;
}

struct LoadedEmbedding {
  SimpleGraph g;
  EmbeddedGraph gd;
};

LoadedEmbedding load_embedding(const std::string& emb_path, const std::string& graph_path,
                               const std::string& surface) {
  EmbeddingSpec spec = read_embedding_file(emb_path);
  if (!surface.empty()) spec.surface = parse_surface(surface);
  LoadedEmbedding l;
  l.g = graph_path.empty() ? underlying_graph(spec) : read_edge_list_file(graph_path);
  l.gd = build_associated(l.g, spec);
  return l;
}

std::string join(const std::vector<VertexId>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
  return s;
}

int cmd_faces(const std::string& emb, const std::string& graph, const std::string& surface, const Common& c) {
  auto l = load_embedding(emb, graph, surface);
  auto faces = trace_faces(l.gd);
  int chi = euler_characteristic(l.gd, static_cast<int>(faces.size()));
  auto bad = validate_surface(l.gd);
  std::cout << "surface: " << to_string(l.gd.surface()) << '\n'
            << "vertices " << l.gd.num_vertices() << " (crossing " << l.gd.crossing_vertices().size() << "), segments "
            << l.gd.num_segments() << ", faces " << faces.size() << '\n'
            << "V - E + F = " << chi << " (expected " << surface_characteristic(l.gd.surface()) << ")\n";
  json jf = json::array();
  for (std::size_t i = 0; i < faces.size(); ++i) {
    auto vs = face_vertices(l.gd, faces[i]);
    std::cout << "face " << i << " [" << faces[i].size() << "]: " << join(vs) << '\n';
    jf.push_back(json{{"size", faces[i].size()}, {"vertices", vs}, {"darts", faces[i].boundary}});
  }
  if (bad) std::cout << "surface mismatch: " << *bad << '\n';
  write_json(c.json_path, json{{"surface", to_string(l.gd.surface())}, {"euler", chi}, {"faces", jf}});
  if (!c.dot_path.empty()) {
    auto out = open_out(c.dot_path);
    write_dot(out, l.gd);
  }
  return bad ? 1 : 0;
}

json classification_json(const AugmentedGraph& a) {
  json arr = json::array();
  for (const auto& vc : a.classification())
    arr.push_back(json{{"vertex", vc.vertex},
                       {"kind", vc.kind == VertexKind::crossing ? "crossing" : "true"},
                       {"d1", vc.d1 ? json(*vc.d1) : json(nullptr)},
                       {"d2", vc.d2},
                       {"big", vc.big}});
  return arr;
}

std::set<DartId> new_segments(const AugmentedGraph& a) {
  std::set<DartId> out;
  for (DartId d = 0; d < a.gstar().num_darts(); ++d)
    if (a.is_new_edge(d)) out.insert(a.gstar().segment(d));
  return out;
}

int cmd_gstar(const std::string& emb, const std::string& graph, const std::string& surface, const std::string& out_path,
              bool skip_adjacent, const Common& c) {
  auto l = load_embedding(emb, graph, surface);
  AugmentOptions opts;
  if (skip_adjacent) opts.adjacent_pairs = AdjacentPairPolicy::skip;
  AugmentedGraph a = build_g_star(l.gd, l.g, opts);
  AugmentCheck chk = check_augmented(a, opts);
  json ins = json::array();
  std::cout << "insertions: " << a.insertions().size() << '\n';
  for (const auto& i : a.insertions()) {
    std::cout << "  step " << i.step << ": " << i.a << "-" << i.b << " in face [" << join(i.host_face) << "]\n";
    ins.push_back(json{{"step", i.step}, {"pair", {i.a, i.b}}, {"face", i.host_face}});
  }
  std::map<int, int> census;
  for (const auto& f : a.faces()) ++census[f.size()];
  std::cout << "faces by size:";
  json jc = json::object();
  for (auto [k, n] : census) {
    std::cout << ' ' << k << ":" << n;
    jc[std::to_string(k)] = n;
  }
  std::cout << "\nclassification (vertex kind d1 d2 big):\n";
  for (const auto& vc : a.classification())
    std::cout << "  " << vc.vertex << ' ' << (vc.kind == VertexKind::crossing ? "crossing" : "true") << ' '
              << (vc.d1 ? std::to_string(*vc.d1) : "-") << ' ' << vc.d2 << ' ' << (vc.big ? "big" : "small") << '\n';
  for (const auto& p : chk.problems) std::cout << "problem: " << p << '\n';
  write_json(c.json_path, json{{"insertions", ins},
                               {"face_census", jc},
                               {"classification", classification_json(a)},
                               {"ok", chk.ok()},
                               {"problems", chk.problems}});
  if (!c.dot_path.empty()) {
    auto out = open_out(c.dot_path);
    write_dot(out, a.gstar(), new_segments(a));
  }
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    write_embedding_spec(out, a.gstar().to_spec());
  }
  return chk.ok() ? 0 : 1;
}

int cmd_discharge(const std::string& emb, const std::string& graph, const std::string& surface,
                  const std::string& rules_path, std::optional<int> delta, bool no_guard, const Common& c) {
  auto l = load_embedding(emb, graph, surface);
  auto rules = rules_path.empty() ? default_rule_table() : read_rule_table_file(rules_path);
  AugmentedGraph a = build_g_star(l.gd, l.g);
  int d = delta.value_or(l.g.max_degree());
  RuleTableOptions opts;
  opts.claim4_guard = !no_guard;
  ChargeLedger ledger = run_discharging(a, d, rules, opts);
  DischargeReport r = final_report(ledger, a);
  std::cout << "delta: " << d << '\n';
  write_report_text(std::cout, r);
  json j = report_to_json(r, ledger);
  j["delta"] = d;
  write_json(c.json_path, j);
  if (!c.dot_path.empty()) {
    auto out = open_out(c.dot_path);
    write_dot(out, a.gstar(), new_segments(a));
  }
  return r.conserved ? 0 : 1;
}

int cmd_color(const std::string& graph, std::optional<int> kappa, std::uint64_t seed, int budget,
              const std::string& out_path, const Common& c) {
  SimpleGraph g = read_edge_list_file(graph);
  SolveOptions opts;
  opts.kappa = kappa;
  opts.seed = seed;
  opts.exact_budget = budget;
  SolveResult r = solve_tcc(g, opts);
  std::cout << "# kappa = " << r.kappa << ", colors used " << r.colors_used << ", "
            << (r.within_kappa ? "within kappa" : "KAPPA BOUND MISSED") << ", reductions P1 " << r.p1_reductions
            << " P3 " << r.p3_reductions << '\n';
  write_coloring(std::cout, r.coloring);
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    write_coloring(out, r.coloring);
  }
  write_json(c.json_path, json{{"kappa", r.kappa},
                               {"colors_used", r.colors_used},
                               {"within_kappa", r.within_kappa},
                               {"p1_reductions", r.p1_reductions},
                               {"p3_reductions", r.p3_reductions},
                               {"coloring", coloring_to_json(r.coloring)}});
  return r.within_kappa ? 0 : 1;
}

int cmd_exact(const std::string& graph, int budget, const Common& c) {
  SimpleGraph g = read_edge_list_file(graph);
  ExactResult r = exact_chi_tt(g, budget);
  std::cout << "chi'' = " << r.chi << " (max degree " << g.max_degree() << ")\n";
  write_coloring(std::cout, r.witness);
  write_json(c.json_path, json{{"chi", r.chi}, {"max_degree", g.max_degree()}, {"witness", coloring_to_json(r.witness)}});
  return 0;
}

int cmd_verify(const std::string& graph, const std::string& coloring, const Common& c) {
  SimpleGraph g = read_edge_list_file(graph);
  TotalColoring tc = read_coloring_file(coloring);
  VerifyResult r = verify(g, tc);
  if (r.ok) std::cout << "ok: proper total coloring with " << tc.colors_used() << " colors (kappa " << tc.kappa << ")\n";
  for (const auto& u : r.uncolored) std::cout << "uncolored: " << u << '\n';
  for (const auto& v : r.violations) std::cout << "violation: " << v << '\n';
  write_json(c.json_path, json{{"ok", r.ok}, {"uncolored", r.uncolored}, {"violations", r.violations}});
  return r.ok ? 0 : 1;
}

int cmd_audit(const std::string& graph, std::optional<int> kappa, const Common& c) {
  SimpleGraph g = read_edge_list_file(graph);
  MinimalityAudit a = audit_minimality(g, kappa.value_or(g.max_degree() + 2));
  std::cout << "kappa " << a.kappa << '\n';
  json items = json::array();
  for (const auto& it : a.results) {
    std::cout << it.property << ": " << to_string(it.status) << '\n';
    for (const auto& w : it.witnesses) std::cout << "  " << w << '\n';
    items.push_back(json{{"property", it.property}, {"status", to_string(it.status)}, {"witnesses", it.witnesses}});
  }
  bool ok = a.consistent_with_minimality();
  std::cout << (ok ? "consistent with minimality\n" : "not minimal\n");
  write_json(c.json_path, json{{"kappa", a.kappa}, {"results", items}, {"consistent", ok}});
  return ok ? 0 : 1;
}

int cmd_check_p(const std::string& graph, const Common& c) {
  SimpleGraph g = read_edge_list_file(graph);
  PropertyReport r = check_property_P(g);
  json vs = json::array();
  for (const auto& v : r.violations) {
    std::cout << "violation: " << v.describe() << '\n';
    vs.push_back(v.describe());
  }
  std::cout << (r.holds ? "property P holds\n" : "property P fails\n");
  write_json(c.json_path, json{{"holds", r.holds}, {"violations", vs}});
  return r.holds ? 0 : 1;
}

int cmd_gen(const std::string& spec_path, const std::string& family, const std::vector<std::string>& params,
            std::uint64_t seed, const std::string& out_dir, const Common& c) {
  std::vector<GenSpec> specs;
  if (!spec_path.empty()) {
    std::ifstream in(spec_path);
    if (!in) throw InputError("cannot open " + spec_path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw InputError(spec_path + ": " + e.what());
    }
    if (j.is_object() && j.contains("specs")) j = j["specs"];
    if (j.is_array())
      for (const auto& s : j) specs.push_back(parse_gen_spec(s));
    else
      specs.push_back(parse_gen_spec(j));
  } else {
    if (family.empty()) throw InputError("gen needs a spec file or --family");
    json s{{"family", family}, {"seed", seed}, {"params", json::object()}};
    for (const auto& p : params) {
      auto eq = p.find('=');
      if (eq == std::string::npos) throw InputError("--param expects key=value, got '" + p + "'");
      try {
        s["params"][p.substr(0, eq)] = std::stoll(p.substr(eq + 1));
      } catch (const std::exception&) {
        throw InputError("--param value must be an integer: '" + p + "'");
      }
    }
    specs.push_back(parse_gen_spec(s));
  }
  json manifest = write_corpus(specs, out_dir);
  for (const auto& e : manifest["instances"])
    std::cout << e["name"].get<std::string>() << ": " << e["files"]["edges"].get<std::string>() << " "
              << e["files"]["embedding"].get<std::string>() << '\n';
  write_json(c.json_path, manifest);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Total coloring toolkit for 1-toroidal graphs"};
  app.require_subcommand(1);
  int status = 0;

  std::string emb, graph, surface, rules, coloring, out, spec, family;
  std::optional<int> kappa, delta;
  std::uint64_t seed = 1;
  int budget = 32;
  bool skip_adjacent = false, no_guard = false;
  std::vector<std::string> params;
  Common common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--json,--report", common.json_path, "Write a JSON report to this path");
  };
  auto add_embedding = [&](CLI::App* sub) {
    sub->add_option("embedding", emb, "Embedding file")->required()->check(CLI::ExistingFile);
    sub->add_option("--graph", graph, "Edge list of G (default: recovered from the embedding)")
        ->check(CLI::ExistingFile);
    sub->add_option("--surface", surface, "Override the declared surface")
        ->check(CLI::IsMember({"plane", "torus"}));
    sub->add_option("--dot", common.dot_path, "Write a Graphviz drawing");
    add_common(sub);
  };
  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("graph", graph, "Edge list file")->required()->check(CLI::ExistingFile);
    add_common(sub);
  };

  auto* faces = app.add_subcommand("faces", "Trace the faces of G-dagger and check the surface");
  add_embedding(faces);
  auto* gstar = app.add_subcommand("gstar", "Build G* by inserting new edges into big faces");
  add_embedding(gstar);
  gstar->add_option("--out", out, "Write the G* embedding");
  gstar->add_flag("--skip-adjacent", skip_adjacent, "Never join a pair already adjacent in G");
  auto* discharge = app.add_subcommand("discharge", "Run the discharging rules and report final charges");
  add_embedding(discharge);
  discharge->add_option("--rules", rules, "Rule table JSON (default: shipped table)")->check(CLI::ExistingFile);
  discharge->add_option("--delta", delta, "Degree bound (default: max degree of G)");
  discharge->add_flag("--no-claim4-guard", no_guard, "Apply rule transfers the guard would suppress");
  auto* color = app.add_subcommand("color", "Total-color a graph, aiming at kappa colors");
  add_graph(color);
  color->add_option("--kappa", kappa, "Palette size (default: max degree + 2)");
  color->add_option("--seed", seed, "Seed for the local search");
  color->add_option("--budget", budget, "Exact solver element cap");
  color->add_option("--out", out, "Also write the coloring to this file");
  auto* exact = app.add_subcommand("exact", "Exact total chromatic number of a small graph");
  add_graph(exact);
  exact->add_option("--budget", budget, "Element cap (vertices + edges)");
  auto* ver = app.add_subcommand("verify", "Check a total coloring");
  add_graph(ver);
  ver->add_option("coloring", coloring, "Coloring file")->required()->check(CLI::ExistingFile);
  auto* audit = app.add_subcommand("audit", "Test the properties of deletion-minimal graphs");
  add_graph(audit);
  audit->add_option("--kappa", kappa, "kappa (default: max degree + 2)");
  auto* checkp = app.add_subcommand("check-p", "Check the K4 and diamond conditions");
  add_graph(checkp);
  auto* gen = app.add_subcommand("gen", "Generate instances and a checksummed manifest");
  gen->add_option("spec", spec, "JSON spec: one object, a list, or {\"specs\": [...]}")->check(CLI::ExistingFile);
  gen->add_option("--family", family, "Family when no spec file is given")
      ->check(CLI::IsMember({"grid", "planar_triangulation", "crossed_grid", "wheel_sum"}));
  gen->add_option("--param", params, "Family parameter key=value (repeatable)");
  gen->add_option("--seed", seed, "Seed");
  gen->add_option("--out", out, "Output directory")->required();
  add_common(gen);

  try {
    app.parse(argc, argv);
    if (*faces) status = cmd_faces(emb, graph, surface, common);
    else if (*gstar) status = cmd_gstar(emb, graph, surface, out, skip_adjacent, common);
    else if (*discharge) status = cmd_discharge(emb, graph, surface, rules, delta, no_guard, common);
    else if (*color) status = cmd_color(graph, kappa, seed, budget, out, common);
    else if (*exact) status = cmd_exact(graph, budget, common);
    else if (*ver) status = cmd_verify(graph, coloring, common);
    else if (*audit) status = cmd_audit(graph, kappa, common);
    else if (*checkp) status = cmd_check_p(graph, common);
    else if (*gen) status = cmd_gen(spec, family, params, seed, out, common);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return status;
}
