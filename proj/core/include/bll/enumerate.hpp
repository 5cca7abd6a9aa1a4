#pragma once
// Short-vector enumeration in definite lattices and their dual cosets.
// The kernel is a branch-and-bound walk over a fraction-free triangular
// decomposition of the Gram form: all budgets, bounds and partial sums are
// integers, so a vector lies on a shell iff an integer equality holds. A
// 64-bit specialization runs whenever a priori bounds prove it overflow-free
// (always, for the lattices this library targets); otherwise the same walk
// runs on arbitrary-precision integers.

#include "bll/lattice.hpp"

#include <functional>
#include <mutex>
#include <optional>

namespace bll {

struct EnumLimits {
  // nodes visited across one enumeration call; exceeding raises
  // budget_exceeded. 0 means unlimited.
  long long node_cap = 256'000'000;
};

struct NormShell {
  Lattice lattice;
  Rat target_norm;
  QVec shift;                 // canonicalized into [0,1)^rank
  std::vector<QVec> vectors;  // lexicographically ascending
  Int count;                  // == vectors.size()
};

// Streaming enumeration of { v in L + shift : (v, v) = target }, v = y/denom
// with y integral in basis coordinates. The sink sees y in lexicographic
// order; the reference is only valid during the call. Policy: target 0 yields
// nothing (the zero vector never counts as a shell member).
void for_each_of_norm(const Lattice& L, const Rat& target, const QVec& shift,
                      const EnumLimits& lim,
                      const std::function<void(const IVec& y, const Int& denom)>& sink);

NormShell vectors_of_norm(const Lattice& L, const Rat& target,
                          const QVec& shift = {}, const EnumLimits& lim = {});

// counting-only path; consults the process-wide shell cache
Int count_of_norm(const Lattice& L, const Rat& target, const QVec& shift = {},
                  const EnumLimits& lim = {});

// One tree walk collecting counts of every nonzero value out to the bound:
// for a negative definite lattice, keys are norms in [bound, 0). A fractional
// bound is floored to the nearest representable scaled value.
std::map<Rat, Int> norm_histogram(const Lattice& L, const Rat& bound,
                                  const QVec& shift = {},
                                  const EnumLimits& lim = {});

// Independent verification oracle: exhaustive scan of the coordinate box
// bounded by the diagonal of the inverse form. Shares no code path with the
// branch-and-bound kernel. Throws budget_exceeded when the box exceeds the
// cap.
Int brute_force_oracle(const Lattice& L, const Rat& target,
                       const QVec& shift = {},
                       const Int& box_cap = Int(2'000'000));

// shared count cache; keys are exact (gram, target, canonical shift) tuples
class ShellCache {
 public:
  std::optional<Int> get(const std::string& key) const;
  void put(const std::string& key, const Int& value);
  void load_file(const std::string& path);  // merge; missing file is fine
  void save_file(const std::string& path) const;
  size_t size() const;
  void clear();

 private:
  mutable std::mutex mu_;
  std::map<std::string, Int> m_;
};

ShellCache& global_shell_cache();
std::string shell_cache_key(const Lattice& L, const Rat& target,
                            const QVec& canonical_shift);

// Randomized agreement check between the kernel and the box oracle over
// definite forms of rank <= 5 with entries in [-6,6], targets {-2,-4,-6},
// zero and random dual shifts. Deterministic for a fixed seed.
struct OracleSuiteResult {
  int lattices = 0;
  int comparisons = 0;
  int failures = 0;
};
OracleSuiteResult oracle_equivalence_suite(int lattice_count, unsigned seed);

}  // namespace bll
