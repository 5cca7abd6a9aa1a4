#include "bll/rootsys.hpp"

#include <algorithm>
#include <numeric>

namespace bll {

Int family_root_count(char family, int rank) {
  switch (family) {
    case 'A':
      if (rank >= 1) return Int(rank) * (rank + 1);
      break;
    case 'D':
      if (rank >= 2) return Int(2) * rank * (rank - 1);
      break;
    case 'E':
      if (rank == 6) return 72;
      if (rank == 7) return 126;
      if (rank == 8) return 240;
      break;
  }
  throw invalid_input("no simply laced family " + std::string(1, family) +
                      std::to_string(rank));
}

Int expected_root_count(const RootSystemType& t) {
  Int total = 0;
  for (const auto& c : t.components) total += family_root_count(c.family, c.rank);
  return total;
}

std::string type_string(const RootSystemType& t) {
  if (t.components.empty()) return "none";
  std::string out;
  for (const auto& c : t.components) {
    if (!out.empty()) out += "+";
    out += c.family;
    out += std::to_string(c.rank);
  }
  return out;
}

namespace {

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

RootSystemType classify(const Lattice& ambient,
                        const std::vector<QVec>& roots) {
  const int m = int(roots.size());
  std::vector<IVec> vs(m);
  for (int i = 0; i < m; ++i) {
    if (int(roots[i].size()) != ambient.rank())
      throw invalid_input("root length does not match ambient rank");
    IVec v(ambient.rank());
    for (int j = 0; j < ambient.rank(); ++j) {
      if (!is_integral(roots[i][j]))
        throw invalid_input("roots must be lattice vectors");
      v[j] = num(roots[i][j]);
    }
    if (inner(ambient, v, v) != -2)
      throw invalid_input("classify requires vectors of norm -2");
    vs[i] = std::move(v);
  }

  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (inner(ambient, vs[i], vs[j]) != 0) {
        int a = find_root(parent, i), b = find_root(parent, j);
        if (a != b) parent[a] = b;
      }

  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < m; ++i) groups[find_root(parent, i)].push_back(i);

  RootSystemType t;
  for (const auto& [rep, idx] : groups) {
    IMat span(ambient.rank(), int(idx.size()));
    for (size_t c = 0; c < idx.size(); ++c)
      for (int r = 0; r < ambient.rank(); ++r)
        span.at(r, int(c)) = vs[idx[c]][r];
    HnfResult h = hnf_columns(span);
    int rank = 0;
    for (int c = 0; c < h.h.cols; ++c) {
      bool nonzero = false;
      for (int r = 0; r < h.h.rows; ++r)
        if (h.h.at(r, c) != 0) {
          nonzero = true;
          break;
        }
      if (nonzero) ++rank;
    }
    const Int count = Int(idx.size());

    RootComponent comp;
    comp.rank = rank;
    comp.roots = count;
    if (rank >= 1 && count == Int(rank) * (rank + 1))
      comp.family = 'A';
    else if (rank >= 4 && count == Int(2) * rank * (rank - 1))
      comp.family = 'D';
    else if ((rank == 6 && count == 72) || (rank == 7 && count == 126) ||
             (rank == 8 && count == 240))
      comp.family = 'E';
    else
      throw internal_error("component of rank " + std::to_string(rank) +
                           " with " + int_str(count) +
                           " vectors matches no simply laced family");
    t.components.push_back(comp);
  }

  std::sort(t.components.begin(), t.components.end(),
            [](const RootComponent& a, const RootComponent& b) {
              if (a.family != b.family) return a.family < b.family;
              return a.rank < b.rank;
            });
  t.total_rank = 0;
  t.total_roots = 0;
  for (const auto& c : t.components) {
    t.total_rank += c.rank;
    t.total_roots += c.roots;
  }
  return t;
}

RootSystemType classify(const NormShell& shell) {
  if (!is_zero_vec(shell.shift))
    throw invalid_input("classify expects an unshifted shell");
  return classify(shell.lattice, shell.vectors);
}

}  // namespace bll
