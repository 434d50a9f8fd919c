#pragma once

// Brute-force model of the two-string annular algebras for p = 2, built from
// scratch: inline wall data, inline idempotents, and representations taken as
// left ideals A*i of the algebra itself. Only exact arithmetic is shared with
// the library.

#include <string>
#include <vector>

namespace tube2 {

// Wall names: "T", "L", "R", "F0", "X1", "F1".
const std::vector<std::string>& walls();

struct Defect {
  std::string lower;
  std::string upper;
  std::vector<int> params;
};

// The primitive idempotents on (lower, upper).
std::vector<Defect> defects(const std::string& lower, const std::string& upper);

struct Term {
  Defect defect;
  int multiplicity = 0;
};

// Decomposition of the vertical stack of below (on M|N) and above (on N|P).
std::vector<Term> vertical(const Defect& below, const Defect& above);

// dim of the irrep of d at its own source object and rank of i_d there.
struct SelfCheck {
  int grade_dim = 0;
  int rank = 0;
};
SelfCheck self_check(const Defect& d);

}  // namespace tube2
