#pragma once

#include <string>

#include "ltlpsi/buchi.hpp"

namespace ltlpsi {

/* HOA v1 interchange, state-based Buchi acceptance only.
 *
 * Atom names encode quantified pairs:
 *   A_<prop>_r<binding>  positive: prop true for all robots with the
 *                        binding; negated: false for at least one.
 *   E_<prop>_r<binding>  positive: prop true for at least one robot with
 *                        the binding; negated: false for all.
 *
 * Transition guards are split into DNF conjuncts on import. State names
 * containing '*' are read back as intermediate states.
 */
BuchiAutomaton import_hoa(const std::string& text);
std::string export_hoa(const BuchiAutomaton& b);

struct HoaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ltlpsi
