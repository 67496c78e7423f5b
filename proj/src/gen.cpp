#include "totcol/gen.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <openssl/evp.h>

#include "totcol/random.hpp"

namespace totcol {

using nlohmann::json;

Instance gen_toroidal_grid(int m, int n) {
  if (m < 3 || n < 3)
    throw InputError("toroidal grid needs m, n >= 3 (got " + std::to_string(m) + " x " + std::to_string(n) + ")");
  auto id = [&](int i, int j) { return ((i % m + m) % m) * n + ((j % n + n) % n); };
  std::vector<std::vector<VertexId>> faces;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) faces.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1), id(i + 1, j)});
  Instance out;
  out.embedding = from_face_cycles(Surface::torus, faces, {});
  out.graph = underlying_graph(out.embedding);
  return out;
}

Instance gen_planar_triangulation(int n, std::uint64_t seed) {
  if (n < 3) throw InputError("planar triangulation needs n >= 3 (got " + std::to_string(n) + ")");
  Rng rng(seed);
  std::vector<std::vector<VertexId>> faces{{0, 1, 2}, {0, 2, 1}};
  for (VertexId v = 3; v < n; ++v) {
    std::size_t k = draw_below(rng, faces.size());
    auto f = faces[k];
    faces[k] = {f[0], f[1], v};
    faces.push_back({f[1], f[2], v});
    faces.push_back({f[2], f[0], v});
  }
  Instance out;
  out.embedding = from_face_cycles(Surface::plane, faces, {});
  out.graph = underlying_graph(out.embedding);
  return out;
}

CapacityError::CapacityError(int req, int got)
    : InputError("only " + std::to_string(got) + " of " + std::to_string(req) +
                 " crossing pairs fit (no face of size >= 4 has room left)"),
      requested(req),
      achieved(got) {}

namespace {

// Tries to place one crossing in face f using the boundary positions in pos.
bool try_cross(EmbeddedGraph& e, const SimpleGraph& g, const Face& f, std::vector<std::size_t> pos, VertexId x) {
  std::sort(pos.begin(), pos.end());
  std::vector<DartId> corners;
  std::vector<VertexId> ends;
  for (std::size_t p : pos) {
    DartId d = f.boundary[p];
    if (e.is_crossing(e.owner(d))) return false;
    corners.push_back(d);
    ends.push_back(e.owner(d));
  }
  std::vector<VertexId> sorted = ends;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  Edge ac(ends[0], ends[2]), bd(ends[1], ends[3]);
  if (g.has_edge(ac) || g.has_edge(bd)) return false;
  e.add_vertex(x, VertexKind::crossing);
  e.add_star(x, corners, {ac, bd, ac, bd});
  return true;
}

}  // namespace

EmbeddedGraph gen_crossed(const EmbeddedGraph& base, int pairs, std::uint64_t seed) {
  if (pairs < 0) throw InputError("pairs must be non-negative");
  EmbeddedGraph e = base;
  Rng rng(seed);
  auto vs = e.vertices();
  VertexId next_id = vs.empty() ? 0 : vs.back() + 1;
  for (int placed = 0; placed < pairs; ++placed) {
    SimpleGraph g = underlying_graph(e);
    auto faces = trace_faces(e);
    std::vector<std::size_t> order(faces.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[draw_below(rng, i)]);
    bool done = false;
    for (std::size_t fi : order) {
      const Face& f = faces[fi];
      const std::size_t k = f.boundary.size();
      if (k < 4) continue;
      std::size_t shift = draw_below(rng, k);
      // One random spread of four corners, then every window of four.
      std::vector<std::size_t> pick(k);
      std::iota(pick.begin(), pick.end(), 0);
      for (std::size_t i = k; i > 1; --i) std::swap(pick[i - 1], pick[draw_below(rng, i)]);
      pick.resize(4);
      if (try_cross(e, g, f, pick, next_id)) {
        done = true;
        break;
      }
      for (std::size_t s = 0; s < k && !done; ++s) {
        std::size_t s0 = (s + shift) % k;
        done = try_cross(e, g, f, {s0, (s0 + 1) % k, (s0 + 2) % k, (s0 + 3) % k}, next_id);
      }
      if (done) break;
    }
    if (!done) throw CapacityError(pairs, placed);
    ++next_id;
  }
  return e;
}

EmbeddedGraph planar_embedding(const SimpleGraph& g) {
  using BG = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                   boost::property<boost::vertex_index_t, int>,
                                   boost::property<boost::edge_index_t, int>>;
  auto vs = g.vertices();
  std::map<VertexId, int> idx;
  for (std::size_t i = 0; i < vs.size(); ++i) idx[vs[i]] = static_cast<int>(i);
  BG bg(vs.size());
  auto edges = g.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    auto [ed, ok] = boost::add_edge(idx[edges[k].u], idx[edges[k].v], bg);
    boost::put(boost::edge_index, bg, ed, static_cast<int>(k));
  }
  using EdgeDesc = boost::graph_traits<BG>::edge_descriptor;
  std::vector<std::vector<EdgeDesc>> emb(vs.size());
  if (!boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                                           boost::boyer_myrvold_params::embedding = emb.data()))
    throw InputError("graph is not planar");
  // Dart 2k sits at the smaller endpoint of edge k, 2k + 1 at the larger.
  std::vector<std::pair<VertexId, std::vector<DartId>>> rotation;
  std::vector<std::pair<DartId, DartId>> twins;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::vector<DartId> ds;
    for (const EdgeDesc& ed : emb[i]) {
      int k = boost::get(boost::edge_index, bg, ed);
      ds.push_back(2 * k + (vs[i] == edges[k].u ? 0 : 1));
    }
    rotation.emplace_back(vs[i], ds);
  }
  for (std::size_t k = 0; k < edges.size(); ++k)
    twins.emplace_back(static_cast<DartId>(2 * k), static_cast<DartId>(2 * k + 1));
  EmbeddedGraph e = EmbeddedGraph::from_rotation(Surface::plane, rotation, twins, {});
  for (std::size_t k = 0; k < edges.size(); ++k) e.set_origin(static_cast<DartId>(2 * k), edges[k]);
  return e;
}

bool has_adjacent_triangles(const SimpleGraph& g) {
  for (const Edge& e : g.edges())
    if (edge_triangle_count(g, e) >= 2) return true;
  return false;
}

Instance gen_high_degree_P(int delta, int size, std::uint64_t seed) {
  if (delta < 11) throw InputError("wheel_sum needs delta >= 11 (got " + std::to_string(delta) + ")");
  if (size < delta + 1)
    throw InputError("wheel_sum needs size >= delta + 1 = " + std::to_string(delta + 1) + " (got " +
                     std::to_string(size) + ")");
  Rng rng(seed);
  const int hubs = size / (delta + 1);
  int spare = size - hubs * (delta + 1);
  SimpleGraph g;
  VertexId next = 0;
  VertexId prev_link = -1;
  for (int h = 0; h < hubs; ++h) {
    VertexId hub = next++;
    std::vector<VertexId> rim(delta);
    for (auto& r : rim) r = next++;
    g.add_vertex(hub);
    for (VertexId r : rim) g.add_edge(hub, r);
    // Rim gap i joins rim[i] and rim[i + 1]: a triangle edge (never two in a
    // row, so triangles at the hub share no spoke), a path through a fresh
    // vertex while spare vertices last, or nothing.
    std::vector<bool> tri(delta, false);
    for (int i = 0; i < delta; ++i) {
      bool blocked = (i > 0 && tri[i - 1]) || (i == delta - 1 && tri[0]);
      int roll = static_cast<int>(draw_below(rng, 3));
      VertexId a = rim[i], b = rim[(i + 1) % delta];
      if (roll == 0 && !blocked) {
        tri[i] = true;
        g.add_edge(a, b);
      } else if (roll == 1 && spare > 0) {
        VertexId p = next++;
        --spare;
        g.add_edge(a, p);
        g.add_edge(p, b);
      }
    }
    // Chain to the previous hub through two roughly opposite rim vertices.
    std::size_t in = draw_below(rng, delta);
    if (prev_link >= 0) g.add_edge(prev_link, rim[in]);
    prev_link = rim[(in + delta / 2) % delta];
  }
  if (g.max_degree() != delta || has_adjacent_triangles(g))
    throw std::logic_error("wheel_sum construction broke its invariants");
  Instance out;
  out.graph = g;
  out.embedding = planar_embedding(g);
  return out;
}

GenSpec parse_gen_spec(const json& j) {
  if (!j.is_object()) throw InputError("gen spec must be a JSON object");
  GenSpec s;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key == "family") {
      if (!it->is_string()) throw InputError("gen spec: family must be a string");
      s.family = it->get<std::string>();
    } else if (key == "seed") {
      if (!it->is_number_unsigned() && !it->is_number_integer()) throw InputError("gen spec: seed must be an integer");
      s.seed = it->get<std::uint64_t>();
    } else if (key == "params") {
      if (!it->is_object()) throw InputError("gen spec: params must be an object");
      for (auto p = it->begin(); p != it->end(); ++p) {
        if (!p->is_number_integer()) throw InputError("gen spec: parameter " + p.key() + " must be an integer");
        s.params[p.key()] = p->get<std::int64_t>();
      }
    } else {
      throw InputError("gen spec: unknown field " + key);
    }
  }
  static const std::set<std::string> families{"grid", "planar_triangulation", "crossed_grid", "wheel_sum", "custom"};
  if (!families.count(s.family)) throw InputError("gen spec: unknown family '" + s.family + "'");
  return s;
}

json to_json(const GenSpec& s) {
  json p = json::object();
  for (const auto& [k, v] : s.params) p[k] = v;
  return json{{"family", s.family}, {"params", p}, {"seed", s.seed}};
}

namespace {

int param(const GenSpec& s, const std::string& key) {
  auto it = s.params.find(key);
  if (it == s.params.end()) throw InputError("gen spec for " + s.family + " needs parameter " + key);
  if (it->second < 0 || it->second > 1000000) throw InputError("gen spec: parameter " + key + " out of range");
  return static_cast<int>(it->second);
}

}  // namespace

Instance generate(const GenSpec& s) {
  if (s.family == "grid") return gen_toroidal_grid(param(s, "m"), param(s, "n"));
  if (s.family == "planar_triangulation") return gen_planar_triangulation(param(s, "n"), s.seed);
  if (s.family == "crossed_grid") {
    Instance base = gen_toroidal_grid(param(s, "m"), param(s, "n"));
    Instance out;
    out.embedding = gen_crossed(base.embedding, param(s, "pairs"), s.seed);
    out.graph = underlying_graph(out.embedding);
    return out;
  }
  if (s.family == "wheel_sum") return gen_high_degree_P(param(s, "delta"), param(s, "size"), s.seed);
  if (s.family == "custom") throw InputError("custom instances are supplied as files, not generated");
  throw InputError("unknown family '" + s.family + "'");
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

json write_corpus(const std::vector<GenSpec>& specs, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  json entries = json::array();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    Instance inst = generate(specs[i]);
    std::ostringstream name;
    name << specs[i].family << "_" << std::setw(3) << std::setfill('0') << i;
    std::ostringstream el, emb;
    write_edge_list(el, inst.graph);
    write_embedding_spec(emb, inst.embedding.to_spec());
    json files = json::object(), sums = json::object();
    for (const auto& [kind, text] : {std::pair<std::string, std::string>{"edges", el.str()}, {"embedding", emb.str()}}) {
      std::string file = name.str() + (kind == "edges" ? ".el" : ".emb");
      std::ofstream out(fs::path(dir) / file, std::ios::binary);
      if (!out) throw InputError("cannot write " + (fs::path(dir) / file).string());
      out << text;
      files[kind] = file;
      sums[kind] = sha256_hex(text);
    }
    entries.push_back(json{{"name", name.str()}, {"spec", to_json(specs[i])}, {"files", files}, {"sha256", sums}});
  }
  json manifest{{"instances", entries}};
  std::ofstream(fs::path(dir) / "manifest.json") << manifest.dump(2) << "\n";
  return manifest;
}

}  // namespace totcol
