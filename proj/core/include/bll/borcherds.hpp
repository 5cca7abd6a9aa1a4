#pragma once
// The genus pipeline: orthogonal complements of primitive vectors in the
// rank-8 chain lattice, their root counts and weights, discriminant-coset
// multiplicity ledgers, orbit counts of norm -2 vectors in the polarized K3
// lattice, and a search over all vector choices of a given norm. A built-in
// catalog supplies one reference vector per genus 2..22; catalog entries for
// genera originally given by fundamental-root chains carry a flag saying the
// chart form was reconstructed from the chain.

#include "bll/qseries.hpp"
#include "bll/rootsys.hpp"

#include "json.hpp"

namespace bll {

// 2U + 2E8 + <2-2g>; signature (2,19), cyclic discriminant of order 2g-2
Lattice polarized_k3_lattice(int g);

struct QuasiPullbackReport {
  int g = 0;
  QVec v_chart;              // even-coordinate model, 8 entries
  IVec v_basis;              // chain-basis coordinates
  EmbeddedSublattice K;      // complement of v in the rank-8 chain lattice
  Int r;                     // norm -2 vectors in K
  Int k;                     // 12 + r/2
  Int n;                     // k - 19
  RootSystemType root_type;
  bool is_cusp = false;      // r > 0
  Int disc_order;            // |K^vee / K|
  bool crosscheck_passed = false;  // theta/delta constant term == 2k
  std::optional<int> dim_vg;       // stored annotation, genera 3..10 only
};

// v given in chart coordinates; validation order: chart membership, nonzero,
// norm (sum of squares = 2g-2), primitivity. Each failure names its test.
QuasiPullbackReport quasi_pullback(int g, const QVec& v_chart,
                                   const EnumLimits& lim = {});

struct ReferenceVector {
  int g = 0;
  QVec v_chart;
  bool reconstructed = false;  // chart form chosen here, not quoted
};

const std::vector<ReferenceVector>& reference_vectors();  // g = 2..22
const ReferenceVector& reference_vector(int g);

// stored dimension annotation for genera 3..10
std::optional<int> dim_vg(int g);

// all 21 reports; when threads > 1 the genera fan out across workers and the
// results are merged back in genus order
std::vector<QuasiPullbackReport> reference_table(const EnumLimits& lim = {},
                                                 int threads = 1);

// the values the pipeline must reproduce for the catalog vectors
struct KnownRow {
  int g = 0;
  Int r;
  Int n;
  std::string root_type;
};
const std::vector<KnownRow>& known_rows();

struct HeegnerEntry {
  IVec lambda;       // discriminant tuple, the lex-smaller of (l, -l)
  Rat q_lambda;      // in [0, 1)
  Rat x;             // in (-1, 0), x == q_lambda - 1
  Int multiplicity;  // coset count at norm 2(-1-x); entries with 0 are omitted
};

struct FDivisorEntry {
  IVec lambda;
  Rat x;
  Int multiplicity;
};

struct HeegnerLedger {
  int g = 0;
  QVec v_chart;
  std::vector<HeegnerEntry> entries;
  // divisor-side rendering: the distinguished (0, -1) component with
  // multiplicity 1, then the same entries
  std::vector<FDivisorEntry> f_divisor_entries;
};

HeegnerLedger heegner_ledger(int g, const QVec& v_chart,
                             const EnumLimits& lim = {});

struct OrbitCount {
  int g = 0;
  std::vector<Int> divisibilities;  // subset of {1, 2}
  Int count;                        // == divisibilities.size()
};

// norm -2 orbit classes of the polarized K3 lattice: divisibility 1 always
// exists; divisibility 2 exists iff the discriminant form has an order-2
// element with q = 3/4
OrbitCount eichler_minus2_orbits(int g);

enum class SearchObjective { minimize_roots, maximize_roots };

struct SearchCandidate {
  QVec v_chart;   // canonical class representative
  IVec v_basis;
  Int r;
  RootSystemType root_type;
  Int members;    // primitive shell vectors (up to sign) sharing (r, type)
};

struct SearchResult {
  int g = 0;
  SearchObjective objective = SearchObjective::minimize_roots;
  Int shell_count;  // primitive vectors of the target norm
  Int candidates;   // shell_count / 2
  std::vector<SearchCandidate> classes;  // deduped by (r, type), ranked
};

// Enumerates every primitive chart-norm 2g-2 vector up to sign, groups by
// the signed-permutation class (an isometry class, so r and type are
// constant on it), evaluates one representative per class, and dedupes by
// (r, root_type). Ranked by r per the objective, then by type string.
SearchResult search_v(int g, SearchObjective objective,
                      const EnumLimits& lim = {});

// machine renderings; key order is part of the golden-output contract
nlohmann::ordered_json report_json(const QuasiPullbackReport& rep);
nlohmann::ordered_json ledger_json(const HeegnerLedger& led);
nlohmann::ordered_json orbits_json(const OrbitCount& oc);
nlohmann::ordered_json search_json(const SearchResult& sr);

}  // namespace bll
