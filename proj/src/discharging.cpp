#include "totcol/discharging.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "totcol_default_rules.hpp"

namespace totcol {

using nlohmann::json;

std::string to_string(const Element& e) {
  switch (e.kind) {
    case Element::Kind::vertex: return "vertex " + std::to_string(e.id);
    case Element::Kind::face: return "face " + std::to_string(e.id);
    case Element::Kind::pool: return "pool";
  }
  return "?";
}

Rational& ChargeLedger::charge(const Element& e) {
  switch (e.kind) {
    case Element::Kind::vertex: {
      auto it = vertex_charge.find(e.id);
      if (it == vertex_charge.end()) throw PreconditionError("no charge for " + to_string(e));
      return it->second;
    }
    case Element::Kind::face:
      if (e.id < 0 || e.id >= static_cast<int>(face_charge.size()))
        throw PreconditionError("no charge for " + to_string(e));
      return face_charge[e.id];
    case Element::Kind::pool: return pool;
  }
  return pool;
}

Rational ChargeLedger::charge(const Element& e) const { return const_cast<ChargeLedger*>(this)->charge(e); }

void ChargeLedger::transfer(const Element& from, const Element& to, const Rational& amount,
                            const std::string& rule) {
  if (amount <= 0) throw PreconditionError("transfer amount must be positive (rule " + rule + ")");
  charge(from) -= amount;
  charge(to) += amount;
  log.push_back({from, to, amount, rule});
}

Rational ChargeLedger::total() const {
  Rational t = pool;
  for (const auto& [v, c] : vertex_charge) t += c;
  for (const auto& c : face_charge) t += c;
  return t;
}

ChargeLedger initial_charges(const AugmentedGraph& a) {
  ChargeLedger l;
  for (const VertexClass& c : a.classification()) l.vertex_charge[c.vertex] = c.d2 - 6;
  for (const Face& f : a.faces()) l.face_charge.push_back(2 * f.size() - 6);
  return l;
}

Rational initial_total(const AugmentedGraph& a) {
  const auto& e = a.gstar();
  int chi = static_cast<int>(e.num_vertices()) - e.num_segments() + static_cast<int>(a.faces().size());
  return Rational(-6 * chi);
}

namespace {

bool is_three_vertex(const VertexClass& c) { return c.kind == VertexKind::true_vertex && c.d1 == 3; }

std::vector<VertexId> distinct_neighbors(const EmbeddedGraph& e, VertexId v) {
  std::vector<VertexId> out;
  for (DartId d : e.rotation(v)) out.push_back(e.head(d));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

ChargeLedger apply_r1(ChargeLedger l, const AugmentedGraph& a, int delta) {
  const auto& e = a.gstar();
  std::vector<VertexId> receivers;
  for (const VertexClass& c : a.classification())
    if (is_three_vertex(c)) receivers.push_back(c.vertex);
  if (receivers.empty()) return l;
  for (const VertexClass& c : a.classification()) {
    if (c.kind != VertexKind::true_vertex || c.d2 != delta) continue;
    bool qualifies = false;
    for (VertexId w : distinct_neighbors(e, c.vertex)) qualifies |= is_three_vertex(a.vertex_class(w));
    if (qualifies) l.transfer(Element::vertex(c.vertex), Element::pool(), Rational(1, 2), "R1");
  }
  for (VertexId v : receivers) l.transfer(Element::pool(), Element::vertex(v), Rational(1), "R1");
  return l;
}

ChargeLedger apply_r2(ChargeLedger l, const AugmentedGraph& a) {
  const auto& e = a.gstar();
  for (int fi = 0; fi < static_cast<int>(a.faces().size()); ++fi) {
    const Face& f = a.faces()[fi];
    if (f.size() < 4) continue;
    Rational c = l.face_charge[fi];
    if (c <= 0) continue;
    std::vector<VertexId> small;
    for (DartId d : f.boundary)
      if (a.is_small(e.owner(d))) small.push_back(e.owner(d));
    if (small.empty()) continue;
    Rational share = c / static_cast<int>(small.size());
    for (VertexId v : small) l.transfer(Element::face(fi), Element::vertex(v), share, "R2");
  }
  return l;
}

ChargeLedger apply_r3(ChargeLedger l, const AugmentedGraph& a) {
  const auto& e = a.gstar();
  for (const VertexClass& c : a.classification()) {
    if (c.kind != VertexKind::true_vertex || c.d1 != 5 || c.d2 != 5) continue;
    bool all_triangles = true;
    for (DartId d : e.rotation(c.vertex)) all_triangles &= a.faces()[a.face_of(d)].size() == 3;
    if (!all_triangles) continue;
    for (VertexId w : distinct_neighbors(e, c.vertex))
      if (!e.is_crossing(w)) l.transfer(Element::vertex(w), Element::vertex(c.vertex), Rational(1, 3), "R3");
  }
  return l;
}

// ---- face tokens and patterns ----------------------------------------------

FaceToken parse_face_token(const std::string& s) {
  FaceToken t;
  t.text = s;
  auto fail = [&](const std::string& why) { throw InputError("face token '" + s + "': " + why); };
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '|')) {
    FaceToken::Alt alt;
    std::size_t i = 0;
    auto read_int = [&]() {
      std::size_t j = i;
      while (j < part.size() && std::isdigit(static_cast<unsigned char>(part[j]))) ++j;
      if (j == i) fail("expected a number");
      int v = std::stoi(part.substr(i, j - i));
      i = j;
      return v;
    };
    if (i < part.size() && part[i] == '*') {
      ++i;
    } else {
      alt.size = read_int();
      if (alt.size < 3) fail("faces have size at least 3");
      if (i < part.size() && part[i] == '+') {
        alt.size_at_least = true;
        ++i;
      }
    }
    if (i < part.size() && part[i] == '#') {
      ++i;
      alt.big = read_int();
      if (i < part.size() && part[i] == '+') {
        alt.big_at_least = true;
        ++i;
      }
    }
    if (i < part.size() && part[i] == '/') {
      std::string side = part.substr(i + 1);
      if (side == "new") alt.side = FaceToken::Alt::Side::fresh;
      else if (side == "orig") alt.side = FaceToken::Alt::Side::orig;
      else fail("side must be new or orig");
      if (alt.size != 3 || alt.size_at_least) fail("a side applies to 3-faces only");
      i = part.size();
    }
    if (i != part.size()) fail("unexpected '" + part.substr(i) + "'");
    t.alts.push_back(alt);
  }
  if (t.alts.empty()) fail("empty");
  return t;
}

namespace {

// Per-angle context around a receiver: the face between darts i and i+1.
struct AngleInfo {
  int size = 0;
  int big = 0;
  std::optional<bool> opposite_new;  // 3-faces: the side away from the receiver
};

bool token_matches(const FaceToken& t, const AngleInfo& f) {
  if (t.alts.empty()) return true;
  for (const auto& alt : t.alts) {
    if (alt.size != 0 && (alt.size_at_least ? f.size < alt.size : f.size != alt.size)) continue;
    if (alt.big && (alt.big_at_least ? f.big < *alt.big : f.big != *alt.big)) continue;
    if (alt.side != FaceToken::Alt::Side::any) {
      if (!f.opposite_new) continue;
      if (*f.opposite_new != (alt.side == FaceToken::Alt::Side::fresh)) continue;
    }
    return true;
  }
  return false;
}

struct Neighborhood {
  std::vector<DartId> darts;
  std::vector<AngleInfo> angles;  // angles[i]: between darts[i] and darts[i+1]
};

Neighborhood neighborhood(const AugmentedGraph& a, VertexId v) {
  const auto& e = a.gstar();
  Neighborhood n;
  n.darts = e.rotation(v);
  const int k = static_cast<int>(n.darts.size());
  for (int i = 0; i < k; ++i) {
    DartId nxt = n.darts[(i + 1) % k];
    int fi = a.face_of(nxt);
    AngleInfo info;
    info.size = a.faces()[fi].size();
    info.big = a.big_occurrences(fi);
    if (info.size == 3) info.opposite_new = a.is_new_edge(e.face_next(nxt));
    n.angles.push_back(info);
  }
  return n;
}

// Perfect matching of tokens to faces, by backtracking (degrees are small).
bool faces_match(const std::vector<FaceToken>& tokens, const std::vector<AngleInfo>& faces) {
  if (tokens.empty()) return true;
  if (tokens.size() != faces.size()) return false;
  std::vector<bool> used(faces.size(), false);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == tokens.size()) return true;
    for (std::size_t j = 0; j < faces.size(); ++j) {
      if (used[j] || !token_matches(tokens[i], faces[j])) continue;
      used[j] = true;
      if (go(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return go(0);
}

bool vertex_matches(const VertexPattern& p, const AugmentedGraph& a, VertexId v, int delta,
                    std::optional<bool> via_new) {
  const VertexClass& c = a.vertex_class(v);
  if (p.kind && *p.kind != c.kind) return false;
  if (!p.d1.empty() && (!c.d1 || std::find(p.d1.begin(), p.d1.end(), *c.d1) == p.d1.end())) return false;
  if (!p.d2.empty() && std::find(p.d2.begin(), p.d2.end(), c.d2) == p.d2.end()) return false;
  if (p.min_degree) {
    int bound = p.min_degree_relative ? delta + *p.min_degree : *p.min_degree;
    if (c.d2 < bound) return false;
  }
  if (p.big && *p.big != c.big) return false;
  if (p.via_new_edge && via_new && *p.via_new_edge != *via_new) return false;
  if (!p.incident_faces.empty() && !faces_match(p.incident_faces, neighborhood(a, v).angles)) return false;
  return true;
}

bool slot_matches(const NeighborSlot& s, const AugmentedGraph& a, DartId d, const AngleInfo& angle) {
  const auto& e = a.gstar();
  const VertexClass& c = a.vertex_class(e.head(d));
  if (s.kind && *s.kind != c.kind) return false;
  if (s.big && *s.big != c.big) return false;
  if (s.d1_max && (!c.d1 || *c.d1 > *s.d1_max)) return false;
  if (s.new_edge && *s.new_edge != a.is_new_edge(d)) return false;
  return token_matches(s.face, angle);
}

std::optional<VertexKind> parse_kind(const json& j, const std::string& key) {
  if (!j.contains(key)) return std::nullopt;
  std::string k = j.at(key).get<std::string>();
  if (k == "true") return VertexKind::true_vertex;
  if (k == "crossing") return VertexKind::crossing;
  if (k == "any" || k == "*") return std::nullopt;
  throw InputError("unknown vertex kind '" + k + "'");
}

std::vector<int> parse_int_set(const json& j) {
  if (j.is_number_integer()) return {j.get<int>()};
  if (j.is_array()) return j.get<std::vector<int>>();
  throw InputError("expected an integer or a list of integers");
}

VertexPattern parse_pattern(const json& j) {
  static const std::set<std::string> known = {"kind", "d1", "d2", "min_degree", "big", "incident_face_sizes",
                                              "via_new_edge"};
  VertexPattern p;
  if (!j.is_object()) throw InputError("vertex pattern must be an object");
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw InputError("unknown pattern field '" + k + "'");
  p.kind = parse_kind(j, "kind");
  if (j.contains("d1")) p.d1 = parse_int_set(j.at("d1"));
  if (j.contains("d2")) p.d2 = parse_int_set(j.at("d2"));
  if (j.contains("min_degree")) {
    const json& m = j.at("min_degree");
    if (m.is_number_integer()) {
      p.min_degree = m.get<int>();
    } else {
      std::string s = m.get<std::string>();
      if (s.rfind("delta", 0) != 0) throw InputError("min_degree '" + s + "' must be an integer or delta-k");
      std::string rest = s.substr(5);
      p.min_degree_relative = true;
      p.min_degree = rest.empty() ? 0 : std::stoi(rest);
    }
  }
  if (j.contains("big")) p.big = j.at("big").get<bool>();
  if (j.contains("incident_face_sizes"))
    for (const auto& t : j.at("incident_face_sizes")) {
      p.incident_faces.push_back(parse_face_token(t.is_number_integer() ? std::to_string(t.get<int>())
                                                                        : t.get<std::string>()));
    }
  if (j.contains("via_new_edge")) p.via_new_edge = j.at("via_new_edge").get<bool>();
  return p;
}

NeighborSlot parse_slot(const json& j) {
  static const std::set<std::string> known = {"nbr", "big", "d1_max", "edge", "face", "send"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw InputError("unknown slot field '" + k + "'");
  NeighborSlot s;
  s.kind = parse_kind(j, "nbr");
  if (j.contains("big")) s.big = j.at("big").get<bool>();
  if (j.contains("d1_max")) s.d1_max = j.at("d1_max").get<int>();
  if (j.contains("edge")) {
    std::string e = j.at("edge").get<std::string>();
    if (e == "new") s.new_edge = true;
    else if (e == "orig") s.new_edge = false;
    else if (e != "any" && e != "*") throw InputError("edge must be new, orig or any");
  }
  s.face = parse_face_token(j.value("face", std::string("*")));
  s.send = j.value("send", false);
  return s;
}

const std::vector<Rational>& amount_menu() {
  static const std::vector<Rational> menu = {Rational(1, 6), Rational(1, 3), Rational(1, 2), Rational(2, 3)};
  return menu;
}

}  // namespace

std::vector<LocalRule> parse_rule_table(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("rule table is not valid JSON: ") + e.what());
  }
  const json& list = doc.is_object() ? doc.at("rules") : doc;
  if (!list.is_array()) throw InputError("rule table must be a list of rules");
  std::vector<LocalRule> rules;
  std::set<std::string> ids;
  for (const json& r : list) {
    try {
      LocalRule rule;
      rule.id = r.at("id").get<std::string>();
      if (!ids.insert(rule.id).second) throw InputError("duplicate rule id");
      rule.amount = parse_rational(r.at("amount").get<std::string>());
      const auto& menu = amount_menu();
      if (std::find(menu.begin(), menu.end(), rule.amount) == menu.end())
        throw InputError("amount " + format_rational(rule.amount) + " is not one of 1/6, 1/3, 1/2, 2/3");
      rule.sender = parse_pattern(r.value("sender", json::object()));
      rule.receiver = parse_pattern(r.value("receiver", json::object()));
      if (r.contains("around"))
        for (const json& s : r.at("around")) rule.around.push_back(parse_slot(s));
      rule.mirror = r.value("mirror", true);
      if (!rule.around.empty() &&
          std::none_of(rule.around.begin(), rule.around.end(), [](const NeighborSlot& s) { return s.send; }))
        throw InputError("'around' has no sending slot");
      rules.push_back(std::move(rule));
    } catch (const json::exception& e) {
      throw InputError("rule " + r.value("id", std::string("?")) + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError("rule " + r.value("id", std::string("?")) + ": " + e.what());
    }
  }
  return rules;
}

std::vector<LocalRule> read_rule_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_rule_table(ss.str());
}

const std::string& default_rule_table_json() {
  static const std::string text = kDefaultRuleTable;
  return text;
}

const std::vector<LocalRule>& default_rule_table() {
  static const std::vector<LocalRule> rules = parse_rule_table(default_rule_table_json());
  return rules;
}

namespace {

// Ordered pairs (w2, w) covered by the Claim 4 exclusion.
std::set<std::pair<VertexId, VertexId>> claim4_pairs(const AugmentedGraph& a) {
  std::set<std::pair<VertexId, VertexId>> out;
  const auto& e = a.gstar();
  for (VertexId w : e.crossing_vertices()) {
    Neighborhood n = neighborhood(a, w);
    const int k = static_cast<int>(n.darts.size());
    for (int i = 0; i < k; ++i) {
      VertexId w1 = e.head(n.darts[i]);
      if (!a.is_small(w1)) continue;
      const AngleInfo& after = n.angles[i];
      const AngleInfo& before = n.angles[(i + k - 1) % k];
      if (after.size == 3 && before.size >= 4) out.emplace(e.head(n.darts[(i + 1) % k]), w);
      if (before.size == 3 && after.size >= 4) out.emplace(e.head(n.darts[(i + k - 1) % k]), w);
    }
  }
  return out;
}

}  // namespace

RuleConflictError::RuleConflictError(std::vector<RuleConflict> c)
    : InputError([&] {
        std::string msg = "rule-table conflict:";
        for (const auto& x : c) {
          msg += " " + std::to_string(x.sender) + "->" + std::to_string(x.receiver) + " by";
          for (const auto& r : x.rules) msg += " " + r;
          msg += ";";
        }
        return msg;
      }()),
      conflicts_(std::move(c)) {}

RuleMatch match_rules(const AugmentedGraph& a, const std::vector<LocalRule>& rules, int delta,
                      RuleTableOptions opts) {
  const auto& e = a.gstar();
  RuleMatch m;
  std::map<std::pair<VertexId, VertexId>, std::vector<std::string>> by_pair;
  std::vector<PlannedTransfer> planned;
  for (const LocalRule& rule : rules) {
    std::set<std::pair<VertexId, VertexId>> pairs;  // (receiver, sender)
    for (VertexId r : e.vertices()) {
      if (!vertex_matches(rule.receiver, a, r, delta, std::nullopt)) continue;
      Neighborhood n = neighborhood(a, r);
      const int k = static_cast<int>(n.darts.size());
      auto consider = [&](DartId d) {
        VertexId s = e.head(d);
        if (s == r) return;
        bool via_new = a.is_new_edge(d);
        if (rule.receiver.via_new_edge && *rule.receiver.via_new_edge != via_new) return;
        if (vertex_matches(rule.sender, a, s, delta, via_new)) pairs.emplace(r, s);
      };
      if (rule.around.empty()) {
        for (DartId d : n.darts) consider(d);
        continue;
      }
      if (static_cast<int>(rule.around.size()) != k) continue;
      for (int mirror = 0; mirror <= (rule.mirror ? 1 : 0); ++mirror) {
        for (int t = 0; t < k; ++t) {
          auto dart_at = [&](int j) { return mirror ? (t - j + 2 * k) % k : (t + j) % k; };
          auto angle_at = [&](int j) { return mirror ? (t - j - 1 + 2 * k) % k : (t + j) % k; };
          bool ok = true;
          for (int j = 0; j < k && ok; ++j)
            ok = slot_matches(rule.around[j], a, n.darts[dart_at(j)], n.angles[angle_at(j)]);
          if (!ok) continue;
          for (int j = 0; j < k; ++j)
            if (rule.around[j].send) consider(n.darts[dart_at(j)]);
        }
      }
    }
    for (auto [r, s] : pairs) {
      planned.push_back({s, r, rule.amount, rule.id});
      by_pair[{s, r}].push_back(rule.id);
    }
  }
  for (const auto& [pair, ids] : by_pair)
    if (ids.size() > 1) m.conflicts.push_back({pair.first, pair.second, ids});
  std::set<std::pair<VertexId, VertexId>> blocked;
  if (opts.claim4_guard) blocked = claim4_pairs(a);
  for (auto& p : planned) {
    if (blocked.count({p.sender, p.receiver})) m.suppressed.push_back(std::move(p));
    else m.transfers.push_back(std::move(p));
  }
  return m;
}

ChargeLedger apply_rule_table(ChargeLedger l, const AugmentedGraph& a, const std::vector<LocalRule>& rules,
                              int delta, RuleTableOptions opts) {
  RuleMatch m = match_rules(a, rules, delta, opts);
  if (!m.conflicts.empty()) throw RuleConflictError(m.conflicts);
  for (const auto& t : m.transfers)
    l.transfer(Element::vertex(t.sender), Element::vertex(t.receiver), t.amount, t.rule);
  return l;
}

ChargeLedger run_discharging(const AugmentedGraph& a, int delta, const std::vector<LocalRule>& rules,
                             RuleTableOptions opts) {
  ChargeLedger l = initial_charges(a);
  l = apply_r1(std::move(l), a, delta);
  l = apply_r2(std::move(l), a);
  l = apply_r3(std::move(l), a);
  return apply_rule_table(std::move(l), a, rules, delta, opts);
}

DischargeReport final_report(const ChargeLedger& l, const AugmentedGraph& a) {
  DischargeReport r;
  for (const auto& [v, c] : l.vertex_charge) r.charges.emplace_back(Element::vertex(v), c);
  for (int i = 0; i < static_cast<int>(l.face_charge.size()); ++i)
    r.charges.emplace_back(Element::face(i), l.face_charge[i]);
  for (const auto& entry : r.charges)
    if (entry.second < 0) r.negative.push_back(entry);
  r.pool = l.pool;
  r.initial_total = initial_total(a);
  r.final_total = l.total();
  r.conserved = r.initial_total == r.final_total;
  return r;
}

void write_report_text(std::ostream& out, const DischargeReport& r) {
  out << "negative elements: " << r.negative.size() << '\n';
  for (const auto& [el, c] : r.negative) out << "  " << to_string(el) << "  " << format_rational(c) << '\n';
  out << "initial total: " << format_rational(r.initial_total) << '\n';
  out << "total = " << format_rational(r.final_total) << (r.conserved ? "  (conserved)" : "  (NOT conserved)") << '\n';
  out << "pool residual: " << format_rational(r.pool) << (r.pool < 0 ? "  (negative)" : "") << '\n';
  out << "charges:\n";
  for (const auto& [el, c] : r.charges) out << "  " << to_string(el) << "  " << format_rational(c) << '\n';
}

nlohmann::json report_to_json(const DischargeReport& r, const ChargeLedger& l) {
  using nlohmann::json;
  auto charges = [](const std::vector<std::pair<Element, Rational>>& xs) {
    json arr = json::array();
    for (const auto& [el, c] : xs) arr.push_back(json{{"element", to_string(el)}, {"charge", format_rational(c)}});
    return arr;
  };
  json log = json::array();
  for (const auto& t : l.log)
    log.push_back(json{{"from", to_string(t.from)}, {"to", to_string(t.to)}, {"amount", format_rational(t.amount)},
                       {"rule", t.rule}});
  return json{{"negative", charges(r.negative)},   {"initial_total", format_rational(r.initial_total)},
              {"total", format_rational(r.final_total)}, {"conserved", r.conserved},
              {"pool", format_rational(r.pool)},     {"charges", charges(r.charges)},
              {"transfers", log}};
}

std::vector<SemiFan> semi_fans(const AugmentedGraph& a, const ChargeLedger& l, VertexId center, int delta) {
  const auto& e = a.gstar();
  if (!e.has_vertex(center)) throw PreconditionError("unknown vertex " + std::to_string(center));
  if (e.degree(center) < delta - 2)
    throw PreconditionError("semi-fan center " + std::to_string(center) + " has degree " +
                            std::to_string(e.degree(center)) + " < delta - 2");
  std::map<VertexId, Rational> sent;
  for (const auto& t : l.log)
    if (t.from == Element::vertex(center) && t.to.kind == Element::Kind::vertex) sent[t.to.id] += t.amount;
  std::vector<DartId> rot = e.rotation(center);
  const int n = static_cast<int>(rot.size());
  std::vector<Rational> out(n, 0);
  std::set<VertexId> seen;
  for (int i = 0; i < n; ++i) {
    VertexId h = e.head(rot[i]);
    if (seen.insert(h).second && sent.count(h)) out[i] = sent[h];
  }
  std::vector<SemiFan> fans;
  int positives = static_cast<int>(std::count_if(out.begin(), out.end(), [](const Rational& x) { return x > 0; }));
  if (positives == 0 || positives == n) {
    SemiFan f;
    f.center = center;
    f.ribs = rot;
    f.outflow = out;
    f.degenerate = positives == 0;
    f.cyclic = positives == n && n > 0;
    f.faces = f.degenerate ? 0 : n;
    Rational sum = 0;
    for (const auto& x : out) sum += x;
    f.average = f.faces ? sum / f.faces : Rational(0);
    fans.push_back(std::move(f));
    return fans;
  }
  // Start each run right after a zero rib so runs never wrap past the start.
  int start = 0;
  while (out[start] > 0) ++start;
  for (int step = 0; step < n; ++step) {
    int i = (start + step) % n;
    int next = (i + 1) % n;
    if (out[i] > 0 || out[next] <= 0) continue;
    SemiFan f;
    f.center = center;
    f.ribs.push_back(rot[i]);
    f.outflow.push_back(0);
    Rational sum = 0;
    int j = next;
    while (out[j] > 0) {
      f.ribs.push_back(rot[j]);
      f.outflow.push_back(out[j]);
      sum += out[j];
      j = (j + 1) % n;
    }
    f.ribs.push_back(rot[j]);
    f.outflow.push_back(0);
    f.faces = static_cast<int>(f.ribs.size()) - 1;
    f.average = sum / f.faces;
    fans.push_back(std::move(f));
  }
  return fans;
}

namespace {

ClaimInstance failed(std::string claim, std::string where) {
  ClaimInstance c;
  c.claim = std::move(claim);
  c.where = std::move(where);
  c.pass = false;
  return c;
}

}  // namespace

ClaimsReport check_claims(const AugmentedGraph& a, const SimpleGraph& g, const ChargeLedger* l) {
  ClaimsReport rep;
  const auto& e = a.gstar();

  auto k4s = find_k4s(g);
  rep.checked["claim1"] = 1;
  for (const Quad& q : k4s) {
    ClaimInstance c = failed("claim1", "K4 {" + std::to_string(q[0]) + "," + std::to_string(q[1]) + "," +
                                  std::to_string(q[2]) + "," + std::to_string(q[3]) + "}");
    rep.failures.push_back(c);
  }

  // Claim 2 on the walk starting at position p and moving in direction dir.
  auto claim2 = [&](const Face& f, int p, int dir, bool record) -> std::optional<bool> {
    const int k = f.size();
    auto at = [&](int i) { return e.owner(f.boundary[((i % k) + k) % k]); };
    VertexId u = at(p);
    if (e.is_crossing(u) || g.degree(u) > 5) return std::nullopt;
    DartId seg = dir > 0 ? f.boundary[p] : f.boundary[((p - 1) % k + k) % k];
    if (a.is_new_edge(seg)) return std::nullopt;
    VertexId v = at(p + dir), w = at(p + 2 * dir);
    bool ok = a.is_big(v) || a.is_big(w);
    if (record) {
      ++rep.checked["claim2"];
      if (!ok)
        rep.failures.push_back(failed("claim2",
                                "face at dart " + std::to_string(f.boundary[0]) + " walk " + std::to_string(u) + "," +
                                    std::to_string(v) + "," + std::to_string(w)));
    }
    return ok;
  };

  for (const Face& f : a.faces()) {
    if (f.size() < 4) continue;
    const int k = f.size();
    int small = 0;
    for (DartId d : f.boundary) small += a.is_small(e.owner(d));
    for (int p = 0; p < k; ++p) {
      claim2(f, p, +1, true);
      claim2(f, p, -1, true);
    }
    for (int p = 0; p < k; ++p) {
      VertexId v = e.owner(f.boundary[p]);
      if (e.is_crossing(v) || g.degree(v) > 5 || a.is_big(v)) continue;
      DartId in = f.boundary[(p + k - 1) % k], outd = f.boundary[p];
      if (a.is_new_edge(in) || a.is_new_edge(outd)) continue;
      VertexId u = e.owner(in), w = e.head(outd);
      ClaimInstance c;
      c.claim = "claim3";
      c.where = "vertex " + std::to_string(v) + " on face at dart " + std::to_string(f.boundary[0]);
      c.share = Rational(2 * k - 6, small);
      if (k == 4) c.bound = (e.is_crossing(u) && e.is_crossing(w)) ? Rational(2, 3) : Rational(1);
      else c.bound = Rational(4, 3);
      c.pass = *c.share >= *c.bound;
      c.premise = claim2(f, p, +1, false).value_or(false) && claim2(f, p, -1, false).value_or(false);
      ++rep.checked["claim3"];
      rep.claim3.push_back(c);
      if (!c.pass) rep.failures.push_back(c);
    }
  }

  if (l) {
    std::set<std::pair<VertexId, VertexId>> sent;
    for (const auto& t : l->log)
      if (t.from.kind == Element::Kind::vertex && t.to.kind == Element::Kind::vertex) sent.emplace(t.from.id, t.to.id);
    for (const auto& pr : claim4_pairs(a)) {
      ++rep.checked["claim4"];
      if (sent.count(pr))
        rep.failures.push_back(failed("claim4",
                                "vertex " + std::to_string(pr.first) + " sends to crossing " + std::to_string(pr.second)));
    }
  }
  return rep;
}

}  // namespace totcol
