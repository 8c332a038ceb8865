#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "ltlpsi/quad_label.hpp"

namespace ltlpsi {

struct BuchiEdge {
  int from = 0;
  int to = 0;
  QuadLabel label;

  bool is_self() const { return from == to; }
  auto operator<=>(const BuchiEdge&) const = default;
};

/* Nondeterministic Buchi automaton over QuadLabel conjuncts. States carry
 * stable names; states inserted by the refinement step are marked
 * intermediate and are never accepting.
 */
struct BuchiAutomaton {
  std::vector<std::string> state_names;
  std::vector<bool> accepting;
  std::vector<bool> intermediate;
  int initial = 0;
  std::vector<BuchiEdge> edges;  // kept sorted

  int add_state(const std::string& name, bool accept, bool inter = false);
  int state_index(const std::string& name) const;  // -1 when absent
  void add_edge(int from, int to, QuadLabel label);
  bool has_edge(const BuchiEdge& e) const;
  void remove_edge(const BuchiEdge& e);
  void sort_edges();

  std::size_t num_states() const { return state_names.size(); }
  std::vector<const BuchiEdge*> edges_from(int state) const;
  std::vector<const BuchiEdge*> self_loops(int state) const;
  QuadPropSet atom_pairs() const;

  // States without a self-transition (intermediate states excluded); the
  // waiting assumption requires this to be empty for synthesis input.
  std::vector<int> states_missing_self_loop() const;

  void check() const;  // internal consistency
};

/* Ultimately periodic word over pair-class valuations. */
struct LassoWord {
  std::vector<Valuation> stem;
  std::vector<Valuation> loop;  // non-empty
};

/* Reusable acceptance checker; indexes the automaton once. */
class LassoAcceptance {
public:
  explicit LassoAcceptance(const BuchiAutomaton& b);
  bool accepts(const LassoWord& w) const;

private:
  const BuchiAutomaton& b_;
  std::vector<std::vector<std::pair<int, const QuadLabel*>>> out_;  // per state
};

bool accepts(const BuchiAutomaton& b, const LassoWord& w);

/* Boolean guard over quantified literals, used when importing automata
 * whose transitions are not yet split into conjuncts.
 */
struct GuardExpr {
  enum class Kind { True, False, Lit, Not, And, Or };
  Kind kind = Kind::True;
  QuadLiteral literal;           // Kind::Lit
  std::vector<GuardExpr> kids;

  static GuardExpr constant(bool v);
  static GuardExpr lit(QuadLiteral l);
  static GuardExpr negation(GuardExpr e);
  static GuardExpr conj(GuardExpr a, GuardExpr b);
  static GuardExpr disj(GuardExpr a, GuardExpr b);
};

/* DNF expansion of a guard into consistent conjunct labels; contradictory
 * conjuncts are dropped.
 */
std::vector<QuadLabel> split_dnf(const GuardExpr& guard);

struct GuardedEdge {
  int from = 0, to = 0;
  GuardExpr guard;
};

/* Materialize guarded edges as one edge per DNF conjunct. */
std::vector<BuchiEdge> split_dnf(const std::vector<GuardedEdge>& edges);

/* Translate a rewritten task (atoms carry bindings and quantifiers) into a
 * Buchi automaton accepting exactly the words that satisfy it. Tableau
 * expansion to a generalized automaton, then counter degeneralization;
 * unreachable states are removed and nothing else is minimized.
 */
BuchiAutomaton translate(const TaskFormula& rewritten);

std::string export_dot(const BuchiAutomaton& b);

}  // namespace ltlpsi
