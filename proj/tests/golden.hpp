#pragma once

// Hand-built G* neighbourhoods around one receiver vertex, used to pin the
// final charges of the rule table. Each configuration is a disc: the receiver
// v, its neighbours s_0..s_{k-1} in rotation order and, for every angle, the
// extra boundary vertices of that face. One outer face closes the disc, and
// pendant spokes in the outer face bring vertices to their target degree.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "totcol/augment.hpp"
#include "totcol/embedding.hpp"
#include "totcol/rational.hpp"

namespace golden {

using totcol::Edge;
using totcol::Rational;
using totcol::VertexId;

// Vertex kinds: 't' small true, 'B' big true, 'x' crossing.
struct Slot {
  char kind = 't';
  bool new_edge = false;  // segment v - s_i has no origin
  int degree = 0;         // G* degree target for true vertices; 0 keeps the disc degree (big: 10)
};

struct Angle {
  std::vector<char> extras;  // face size = 3 + extras.size()
  bool new_rim = false;      // 3-face whose far side s_i - s_{i+1} is a new edge
};

struct Config {
  std::string name;
  std::string worked;  // the arithmetic being reproduced
  char receiver = 't';
  std::vector<Slot> slots;
  std::vector<Angle> angles;
  std::multiset<std::string> rules;  // rule ids expected to pay v
};

struct Built {
  totcol::EmbeddedGraph gstar;
  VertexId receiver = 0;
  std::map<VertexId, char> kinds;  // requested kind of every disc vertex
};

inline Built build(const Config& c) {
  const int k = static_cast<int>(c.slots.size());
  if (static_cast<int>(c.angles.size()) != k) throw std::logic_error(c.name + ": one angle per slot");
  Built b;
  b.receiver = 0;
  b.kinds[0] = c.receiver;
  VertexId next = 1;
  std::vector<VertexId> s(k);
  for (int i = 0; i < k; ++i) {
    s[i] = next++;
    b.kinds[s[i]] = c.slots[i].kind;
  }
  std::vector<std::vector<VertexId>> extra(k);
  for (int i = 0; i < k; ++i)
    for (char kind : c.angles[i].extras) {
      extra[i].push_back(next);
      b.kinds[next++] = kind;
    }

  std::vector<std::vector<VertexId>> faces;
  std::map<VertexId, std::set<VertexId>> nbr;
  auto link = [&](VertexId a, VertexId z) {
    nbr[a].insert(z);
    nbr[z].insert(a);
  };
  std::set<Edge> fresh;
  for (int i = 0; i < k; ++i) {
    std::vector<VertexId> f{0, s[i]};
    f.insert(f.end(), extra[i].begin(), extra[i].end());
    f.push_back(s[(i + 1) % k]);
    for (std::size_t j = 0; j < f.size(); ++j) link(f[j], f[(j + 1) % f.size()]);
    faces.push_back(f);
    if (c.slots[i].new_edge) fresh.insert(Edge(0, s[i]));
    if (c.angles[i].new_rim) {
      if (!extra[i].empty()) throw std::logic_error(c.name + ": new rim edge needs a 3-face");
      fresh.insert(Edge(s[i], s[(i + 1) % k]));
    }
  }

  // Rim in outer-face order with the pendant spokes of each rim vertex.
  std::vector<VertexId> rim;
  for (int i = k - 1; i >= 0; --i) {
    rim.push_back(s[(i + 1) % k]);
    for (auto it = extra[i].rbegin(); it != extra[i].rend(); ++it) rim.push_back(*it);
  }
  std::map<VertexId, int> target;
  for (int i = 0; i < k; ++i)
    if (c.slots[i].degree) target[s[i]] = c.slots[i].degree;
  std::vector<VertexId> outer;
  std::set<VertexId> crossings;
  if (c.receiver == 'x') crossings.insert(0);
  for (VertexId r : rim) {
    outer.push_back(r);
    char kind = b.kinds[r];
    int want = static_cast<int>(nbr[r].size());
    if (kind == 'x') {
      crossings.insert(r);
      want = 4;
    } else if (target.count(r)) {
      want = target[r];
    } else if (kind == 'B') {
      want = 10;
    }
    for (int d = static_cast<int>(nbr[r].size()); d < want; ++d) {
      VertexId p = next++;
      link(r, p);
      outer.push_back(p);
      outer.push_back(r);
    }
  }
  faces.push_back(outer);
  b.gstar = totcol::from_face_cycles(totcol::Surface::plane, faces, crossings, fresh);

  // Each G edge is one original segment or the two halves through a
  // crossing; fewer G edges than that means the disc created a duplicate.
  std::size_t plain = 0;
  for (totcol::DartId d = 0; d < b.gstar.num_darts(); ++d) {
    if (d > b.gstar.twin(d) || !b.gstar.origin(d)) continue;
    if (!b.gstar.is_crossing(b.gstar.owner(d)) && !b.gstar.is_crossing(b.gstar.head(d))) ++plain;
  }
  if (totcol::underlying_graph(b.gstar).num_edges() != plain + 2 * crossings.size())
    throw std::logic_error(c.name + ": configuration repeats an edge of G");
  return b;
}

inline Slot T(int degree = 0) { return {'t', false, degree}; }
inline Slot Tn(int degree = 0) { return {'t', true, degree}; }
inline Slot B() { return {'B', false, 0}; }
inline Slot X() { return {'x', false, 0}; }
inline Angle F3() { return {}; }
inline Angle F3new() { return {{}, true}; }
inline Angle F(std::vector<char> extras) { return {std::move(extras), false}; }

// The worked final-charge cases. Big vertices get G* degree 10, which is at
// least delta - 2 for delta = 11.
inline std::vector<Config> configurations() {
  return {
      {"33-three-4faces", "3 - 6 + 1 + 3 x 2/3 = 0", 't', {T(), T(), T()}, {F({'B'}), F({'B'}), F({'B'})}, {}},
      {"33-5face-4face", "3 - 6 + 1 + 4/3 + 2/3 = 0", 't', {T(), T(), T()}, {F3(), F({'B', 'B'}), F({'B'})}, {}},
      {"33-rule-a", "3 - 6 + 1 + 1 + 2/3 + 1/3 = 0", 't', {B(), X(), X()}, {F3(), F({'B'}), F({'B'})}, {"a"}},
      {"33-rule-b", "3 - 6 + 1 + 4/3 + 2/3 = 0", 't', {B(), X(), X()}, {F3(), F({'B', 'B'}), F3()}, {"b"}},
      {"34-rule-c", "4 - 6 + 1 + 2/3 + 1/3 = 0", 't', {B(), X(), Tn(), X()}, {F3(), F({'B'}), F3(), F3()}, {"c"}},
      {"34-rule-d", "4 - 6 + 1 + 2/3 + 1/3 = 0", 't', {B(), X(), X(), Tn()}, {F3(), F({'B'}), F3(), F3()}, {"d"}},
      {"44-rule-e", "4 - 6 + 1 + 2/3 + 2 x 1/6 = 0", 't', {B(), B(), X(), X()}, {F({'x'}), F3(), F({'B'}), F3()},
       {"e", "e"}},
      {"44-rule-f", "4 - 6 + 3 x 2/3 = 0", 't', {B(), X(), X(), X()}, {F3(), F({'B'}), F({'B'}), F3()}, {"f"}},
      {"44-rule-g", "4 - 6 + 1 + 2/3 + 1/3 = 0", 't', {B(), B(), X(), X()}, {F3(), F({'B'}), F({'B'}), F3()}, {"g"}},
      {"44-rule-h", "4 - 6 + 3 x 2/3 = 0", 't', {X(), B(), B(), X()}, {F3(), F3(), F3(), F({'B'})}, {"h", "h"}},
      {"44-rule-i", "4 - 6 + 1 + 2/3 + 1/3 = 0", 't', {B(), X(), B(), X()}, {F3(), F3(), F3(), F({'B'})},
       {"i-far", "i-near"}},
      {"x-rule-j", "4 - 6 + 3 x 2/3 = 0", 'x', {B(), B(), T(), B()}, {F3(), F({'t'}), F({'t'}), F3()}, {"j"}},
      {"x-rule-l", "4 - 6 + 2 x 2/3 + 2 x 1/3 = 0", 'x', {T(), B(), B(), T()}, {F({'t'}), F3(), F({'x'}), F3new()},
       {"l", "l"}},
      {"x-rule-m", "4 - 6 + 1 + 2/3 + 1/3 = 0", 'x', {B(), B(), B(), T()}, {F({'t'}), F3(), F({'t'}), F3()}, {"m"}},
      {"x-rule-n", "4 - 6 + 1 + 2 x 1/2 = 0", 'x', {B(), T(), T(), B()}, {F3(), F3new(), F3(), F({'t'})},
       {"n", "n"}},
      {"x-rule-o", "4 - 6 + 1 + 2/3 + 1/3 = 0", 'x', {T(), T(), B(), B()}, {F3new(), F3(), F3(), F({'B'})},
       {"o-far", "o-near"}},
      {"x-rule-p", "4 - 6 + 3 x 2/3 = 0", 'x', {T(), T(), B(), B()}, {F3new(), F3(), F3(), F({'x'})}, {"p", "p"}},
      {"x-rule-q", "4 - 6 + 1 + 3 x 1/3 = 0", 'x', {B(), T(), B(), B()}, {F3(), F3(), F3(), F({'t'})},
       {"q", "q", "q"}},
      {"55-rule-r", "5 - 6 + 2/3 + 2 x 1/6 = 0", 't', {T(), B(), X(), X(), B()}, {F3(), F3(), F({'B'}), F3(), F3()},
       {"r", "r"}},
      {"45-rule-s", "5 - 6 + 2/3 + 1/3 = 0", 't', {T(), Tn(), X(), X(), B()}, {F3(), F3(), F({'B'}), F3(), F3()},
       {"s"}},
      {"45-rule-w", "5 - 6 + 2 x 1/2 = 0", 't', {Tn(), X(), B(), B(), X()}, {F3(), F3(), F3(), F3(), F3()},
       {"w", "w"}},
      {"45-rule-x", "5 - 6 + 2 x 1/2 = 0", 't', {Tn(), B(), X(), B(), X()}, {F3(), F3(), F3(), F3(), F3()},
       {"x", "x"}},
      {"55-R3", "5 - 6 + 3 x 1/3 = 0", 't', {T(), X(), T(), X(), T()}, {F3(), F3(), F3(), F3(), F3()}, {}},
  };
}

}  // namespace golden
