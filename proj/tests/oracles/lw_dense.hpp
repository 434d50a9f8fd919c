#pragma once

// Plain Z/p string-net model on a honeycomb patch: edge labels with flux
// conservation at every vertex, face terms adding a loop. Ground space by dense
// floating point diagonalization of sum_f (1 - P_f).

#include <utility>
#include <vector>

namespace lwdense {

struct Result {
  std::size_t configurations = 0;  // closed-string labelings
  std::size_t ground_dim = 0;
};

// faces: (col, row); free_boundary leaves dangling edges unconstrained;
// skip lists faces whose term is dropped. Dense step only when the number of
// configurations is at most dense_limit (ground_dim is then 0).
Result solve(int p, const std::vector<std::pair<int, int>>& faces, bool free_boundary,
             const std::vector<int>& skip = {}, std::size_t dense_limit = 2500);

}  // namespace lwdense
