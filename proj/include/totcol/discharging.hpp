#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "totcol/augment.hpp"
#include "totcol/error.hpp"
#include "totcol/rational.hpp"

namespace totcol {

// A charge holder: a vertex, a face (index into AugmentedGraph::faces()) or
// the pool that stands in for the special vertex of R1.
struct Element {
  enum class Kind { vertex, face, pool };
  Kind kind = Kind::pool;
  int id = 0;

  static Element vertex(VertexId v) { return {Kind::vertex, v}; }
  static Element face(int f) { return {Kind::face, f}; }
  static Element pool() { return {Kind::pool, 0}; }
  auto operator<=>(const Element&) const = default;
};

std::string to_string(const Element& e);

struct TransferRecord {
  Element from;
  Element to;
  Rational amount;
  std::string rule;
};

class ChargeLedger {
 public:
  std::map<VertexId, Rational> vertex_charge;
  std::vector<Rational> face_charge;
  Rational pool = 0;
  std::vector<TransferRecord> log;

  Rational& charge(const Element& e);
  Rational charge(const Element& e) const;
  // Moves a positive amount and logs it.
  void transfer(const Element& from, const Element& to, const Rational& amount, const std::string& rule);
  Rational total() const;
};

ChargeLedger initial_charges(const AugmentedGraph& a);
// Expected total of the initial charges: -6 (V - E + F).
Rational initial_total(const AugmentedGraph& a);

ChargeLedger apply_r1(ChargeLedger l, const AugmentedGraph& a, int delta);
ChargeLedger apply_r2(ChargeLedger l, const AugmentedGraph& a);
ChargeLedger apply_r3(ChargeLedger l, const AugmentedGraph& a);

// ---- local rule tables ----------------------------------------------------

// Face descriptor used in rule patterns, e.g. "3", "4#1", "5+", "3/new",
// "4#2+|5+" (alternatives), "*".
struct FaceToken {
  struct Alt {
    int size = 0;  // 0 = any
    bool size_at_least = false;
    std::optional<int> big;
    bool big_at_least = false;
    enum class Side { any, orig, fresh } side = Side::any;  // 3-faces only
  };
  std::vector<Alt> alts;
  std::string text;
};

FaceToken parse_face_token(const std::string& s);

struct VertexPattern {
  std::optional<VertexKind> kind;
  std::vector<int> d1;  // allowed values; empty = any
  std::vector<int> d2;
  std::optional<int> min_degree;  // compared against d2
  bool min_degree_relative = false;  // min_degree is an offset from delta
  std::optional<bool> big;
  std::vector<FaceToken> incident_faces;  // multiset; empty = any
  std::optional<bool> via_new_edge;  // segment joining sender and receiver
};

struct NeighborSlot {
  std::optional<VertexKind> kind;
  std::optional<bool> big;
  std::optional<int> d1_max;
  std::optional<bool> new_edge;
  FaceToken face;  // face between this neighbor and the next slot
  bool send = false;
};

// A transfer of `amount` from sender to receiver. When `around` is empty the
// senders are all G*-neighbors matching `sender`; otherwise `around` is the
// cyclic neighborhood of the receiver, matched under every rotation and, if
// `mirror`, under reflection, and the senders are the slots marked send.
struct LocalRule {
  std::string id;
  VertexPattern sender;
  VertexPattern receiver;
  std::vector<NeighborSlot> around;
  bool mirror = true;
  Rational amount;
};

struct RuleTableOptions {
  // Suppresses transfers from w2 to a crossing vertex w whenever w has a small
  // neighbor w1 with a 3-face at angle w1 w w2 and a big face on segment w w1.
  bool claim4_guard = true;
};

std::vector<LocalRule> parse_rule_table(const std::string& json_text);
std::vector<LocalRule> read_rule_table_file(const std::string& path);
const std::vector<LocalRule>& default_rule_table();
const std::string& default_rule_table_json();

struct PlannedTransfer {
  VertexId sender = 0;
  VertexId receiver = 0;
  Rational amount;
  std::string rule;
};

struct RuleConflict {
  VertexId sender = 0;
  VertexId receiver = 0;
  std::vector<std::string> rules;
};

struct RuleMatch {
  std::vector<PlannedTransfer> transfers;  // by rule order, receiver, sender
  std::vector<PlannedTransfer> suppressed;  // blocked by the Claim 4 guard
  std::vector<RuleConflict> conflicts;
};

RuleMatch match_rules(const AugmentedGraph& a, const std::vector<LocalRule>& rules, int delta,
                      RuleTableOptions opts = {});

class RuleConflictError : public InputError {
 public:
  explicit RuleConflictError(std::vector<RuleConflict> c);
  const std::vector<RuleConflict>& conflicts() const { return conflicts_; }

 private:
  std::vector<RuleConflict> conflicts_;
};

// Throws RuleConflictError (and changes nothing) on overlapping rules.
ChargeLedger apply_rule_table(ChargeLedger l, const AugmentedGraph& a, const std::vector<LocalRule>& rules,
                              int delta, RuleTableOptions opts = {});

// Default pipeline: R1, R2, R3, then the rule table.
ChargeLedger run_discharging(const AugmentedGraph& a, int delta, const std::vector<LocalRule>& rules,
                             RuleTableOptions opts = {});

// ---- reports ----------------------------------------------------------------

struct DischargeReport {
  std::vector<std::pair<Element, Rational>> charges;  // every element
  std::vector<std::pair<Element, Rational>> negative;
  Rational initial_total;
  Rational final_total;
  Rational pool;
  bool conserved = false;
};

DischargeReport final_report(const ChargeLedger& l, const AugmentedGraph& a);
void write_report_text(std::ostream& out, const DischargeReport& r);
nlohmann::json report_to_json(const DischargeReport& r, const ChargeLedger& l);

struct SemiFan {
  VertexId center = 0;
  std::vector<DartId> ribs;      // e_0 .. e_k, consecutive ccw at the center
  std::vector<Rational> outflow; // per rib
  int faces = 0;                 // k
  Rational average;
  bool degenerate = false;  // center sends nothing
  bool cyclic = false;      // every rib positive
  bool within_bound() const { return average <= Rational(2, 5); }
};

// Throws PreconditionError when deg_G*(center) < delta - 2.
std::vector<SemiFan> semi_fans(const AugmentedGraph& a, const ChargeLedger& l, VertexId center, int delta);

// ---- claims -------------------------------------------------------------

struct ClaimInstance {
  std::string claim;
  std::string where;
  bool pass = true;
  bool premise = true;  // for Claim 3: Claim 2 holds on both sides
  std::optional<Rational> share;
  std::optional<Rational> bound;
};

struct ClaimsReport {
  std::map<std::string, int> checked;
  std::vector<ClaimInstance> failures;
  std::vector<ClaimInstance> claim3;  // every Claim 3 instance
  bool all_pass() const { return failures.empty(); }
};

// Claims 1 to 3 need only the graphs; Claim 4 also inspects the ledger log.
ClaimsReport check_claims(const AugmentedGraph& a, const SimpleGraph& g, const ChargeLedger* l = nullptr);

}  // namespace totcol
