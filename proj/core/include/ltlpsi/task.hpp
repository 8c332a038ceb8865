#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ltlpsi/bindings.hpp"

namespace ltlpsi {

enum class Quantifier { ForAll, Exists };

/* AST of a task. Before rewriting, binding annotations sit on Annotated
 * nodes whose subtree is plain LTL (Atom/Not/And/Or/Until/Always/Eventually
 * with no further annotations). rewrite_bindings() removes Annotated and
 * Not nodes; afterwards every Atom carries exactly one binding proposition,
 * a quantifier and a polarity.
 */
struct TaskFormula {
  enum class Kind { True, False, Atom, Not, And, Or, Until, Always, Eventually, Annotated };

  Kind kind = Kind::True;
  std::string prop;                          // Atom: action proposition name
  int binding = -1;                          // Atom after rewriting
  Quantifier quantifier = Quantifier::ForAll;// Atom after rewriting / Annotated
  bool polarity = true;                      // Atom after rewriting
  std::optional<BindingFormula> annotation;  // Annotated
  std::vector<TaskFormula> kids;

  static TaskFormula boolean(bool v);
  static TaskFormula atom(std::string prop);
  static TaskFormula atom(std::string prop, int binding, Quantifier q, bool polarity);
  static TaskFormula negation(TaskFormula f);
  static TaskFormula conj(TaskFormula a, TaskFormula b);
  static TaskFormula disj(TaskFormula a, TaskFormula b);
  static TaskFormula until(TaskFormula a, TaskFormula b);
  static TaskFormula always(TaskFormula f);
  static TaskFormula eventually(TaskFormula f);
  static TaskFormula annotated(TaskFormula ltl, BindingFormula psi,
                               Quantifier q = Quantifier::ForAll);

  bool operator==(const TaskFormula& o) const;

  bool is_rewritten() const;   // no Annotated/Not nodes, all atoms bound
  BindingSet bindings() const; // every binding proposition mentioned
  std::vector<std::string> props() const;  // sorted unique action propositions
  std::string to_string() const;
};

struct SyntaxError : std::runtime_error {
  int line, column;
  SyntaxError(const std::string& msg, int line, int column)
      : std::runtime_error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line(line), column(column) {}
};

/* Parse a task from source text. '#' starts a line comment. Throws
 * SyntaxError with position information; in particular for use of the
 * next operator (X), for negation inside a binding formula, and for
 * negation applied to anything other than a binding-annotated block.
 */
TaskFormula parse_task(const std::string& text);

/* Rewrite so that binding annotations sit on individual atoms:
 * annotation disjunctions/conjunctions are distributed into formula
 * connectives, negation of an annotated block flips the block to the
 * there-exists reading, and the single remaining binding proposition is
 * pushed through the block's LTL (in negation normal form) onto atoms.
 */
TaskFormula rewrite_bindings(const TaskFormula& f);

std::string dump_ast_json(const TaskFormula& f);

}  // namespace ltlpsi
