#pragma once
// Classification of norm -2 shells as orthogonal sums of simply laced root
// systems. A component is identified by (rank, root count) alone, which
// separates every family that can occur at rank <= 8; the rank-3 coincidence
// is reported as A3 and the disconnected rank-2 one never reaches us.

#include "bll/enumerate.hpp"

namespace bll {

struct RootComponent {
  char family = 'A';  // 'A', 'D' or 'E'
  int rank = 0;
  Int roots = 0;  // vectors in this component

  bool operator==(const RootComponent& o) const = default;
};

struct RootSystemType {
  // canonical order: family alphabetical, then rank ascending
  std::vector<RootComponent> components;
  Int total_roots = 0;
  int total_rank = 0;
};

// A_N -> N(N+1), D_N -> 2N(N-1), E6 -> 72, E7 -> 126, E8 -> 240
Int family_root_count(char family, int rank);

Int expected_root_count(const RootSystemType& t);

// "A1+A2+D5"; the empty type renders "none"
std::string type_string(const RootSystemType& t);

// Vectors are integral coordinates in `ambient`, each of norm -2. Components
// are the transitive closure of non-orthogonality; an unidentifiable
// component raises internal_error since norm -2 shells of even lattices
// cannot produce one.
RootSystemType classify(const Lattice& ambient, const std::vector<QVec>& roots);

// convenience over a materialized shell (shift must be zero)
RootSystemType classify(const NormShell& shell);

}  // namespace bll
