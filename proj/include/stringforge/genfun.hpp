#pragma once

#include <string>

#include "stringforge/solver.hpp"

namespace stringforge {

// Cumulant of the z-series: ztilde_0 = log(z/x); for g >= 1 the N^(-2g)
// coefficient of the formal log, e.g. ztilde_2 = z2/z - z1^2/(2 z^2).
LogCombo cumulant(int g, const GenusTable& table);

// d_x^2 F^(g) assembled with Bernoulli weights:
// sum_{m=0}^{g} (1-2m) B_{2m} / (2m)! d_x^{2m} ztilde_{g-m}.
// Pure rational part for g >= 1; for g = 0 it is ztilde_0 itself.
LogCombo free_energy_relation(int g, const GenusTable& table);

// Exact test d_x^2(candidate) == free_energy_relation(g, table).
bool verify_closed_form(int g, const LogCombo& candidate, const GenusTable& table);

std::string verification_report_json(int g, const LogCombo& candidate,
                                     const GenusTable& table);

// Closed forms carried as fixtures.
LogCombo f1_closed_form();            // (1/24) log D - (1/12) log(z/x)
LogCombo f1_closed_form_symmetric();  // (1/12) log z' - (1/12) log(z/x)
// 1/(240 x^2) + bracket / (5760 z^2 D^4); 58 numerator terms.
LogCombo f2_closed_form();

}  // namespace stringforge
