#include "bll/borcherds.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <numeric>
#include <thread>

namespace bll {

namespace {

// catalog of reference vectors, doubled chart coordinates
struct CatalogRow {
  int g;
  std::array<int, 8> doubled;
  bool reconstructed;
};

constexpr CatalogRow kCatalog[] = {
    {2, {0, 0, 0, 0, 0, 0, 2, 2}, true},
    {3, {0, 0, 0, 0, 0, 0, 0, 4}, true},
    {4, {0, 0, 0, 0, 0, 2, 2, 4}, true},
    {5, {1, 1, 1, 1, 1, 1, 1, 5}, true},
    {6, {6, 2, 0, 0, 0, 0, 0, 0}, false},
    {7, {0, 0, 0, 0, 2, 2, 2, 6}, true},
    {8, {1, -1, -1, -1, -1, -1, -1, -7}, true},
    {9, {6, 2, 2, 2, 2, 2, 2, 2}, false},
    {10, {8, 2, 2, 0, 0, 0, 0, 0}, false},
    {11, {0, 0, 0, 2, 2, 2, 2, 8}, true},
    {12, {8, 2, 2, 2, 2, 2, 2, 0}, false},
    {13, {8, 4, 2, 2, 2, 2, 0, 0}, false},
    {14, {6, 6, 4, 2, 2, 2, 2, 0}, false},
    {15, {10, 2, 2, 2, 0, 0, 0, 0}, false},
    {16, {0, 0, 2, 2, 2, 2, 2, 10}, true},
    {17, {10, 4, 2, 2, 2, 0, 0, 0}, false},
    {18, {10, 4, 2, 2, 2, 2, 2, 0}, false},
    {19, {10, 4, 4, 2, 2, 2, 0, 0}, false},
    {20, {10, 4, 4, 4, 2, 0, 0, 0}, false},
    {21, {12, 2, 2, 2, 2, 0, 0, 0}, false},
    {22, {12, 4, 2, 2, 0, 0, 0, 0}, false},
};

QVec chart_from_doubled(const std::array<int, 8>& doubled) {
  QVec v(8);
  for (int i = 0; i < 8; ++i) v[i] = Rat(doubled[i], 2);
  return v;
}

void require_genus(int g) {
  if (g < 2) throw invalid_input("genus must be at least 2");
}

// shared front half of the pipeline: validate v, build the complement,
// count its roots
struct ComplementCore {
  IVec v_basis;
  EmbeddedSublattice K;
  Lattice KL;
  NormShell roots;  // norm -2 shell of KL
};

ComplementCore complement_core(int g, const QVec& v_chart,
                               const EnumLimits& lim) {
  require_genus(g);
  const std::string reason = e8_chart_reject_reason(v_chart);
  if (!reason.empty()) throw invalid_input(reason);
  if (is_zero_vec(v_chart)) throw invalid_input("v must be a nonzero vector");
  Rat sumsq = 0;
  for (const Rat& c : v_chart) sumsq += c * c;
  if (sumsq != Rat(2 * g - 2)) {
    throw invalid_input("norm test failed: sum of squares is " +
                        rat_str(sumsq) + ", expected " +
                        int_str(Int(2 * g - 2)));
  }
  ComplementCore core;
  core.v_basis = e8_chart_to_basis(v_chart);
  Int d = 0;
  for (const Int& c : core.v_basis) d = boost::multiprecision::gcd(d, c);
  if (d < 0) d = -d;
  if (d != 1) {
    throw invalid_input("primitivity test failed: coordinate gcd is " +
                        int_str(d));
  }
  const Lattice E8 = make_E8();
  core.K = orthogonal_complement(E8, {core.v_basis});
  if (core.K.degenerate || core.K.rank() != 7) {
    throw internal_error("complement of a norm-negative vector must be a rank-7 form");
  }
  core.KL = core.K.as_lattice("K");
  core.roots = vectors_of_norm(core.KL, Rat(-2), {}, lim);
  if (core.roots.count % 2 != 0) {
    throw internal_error("root shell is not closed under negation");
  }
  return core;
}

std::string objective_name(SearchObjective o) {
  return o == SearchObjective::minimize_roots ? "minimize" : "maximize";
}

nlohmann::ordered_json chart_json(const QVec& v) {
  auto arr = nlohmann::ordered_json::array();
  for (const Rat& c : v) arr.push_back(rat_str(c));
  return arr;
}

nlohmann::ordered_json ivec_json(const IVec& v) {
  auto arr = nlohmann::ordered_json::array();
  for (const Int& c : v) arr.push_back(to_int64(c));
  return arr;
}

nlohmann::ordered_json imat_json(const IMat& m) {
  auto rows = nlohmann::ordered_json::array();
  for (int i = 0; i < m.rows; ++i) {
    auto row = nlohmann::ordered_json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(to_int64(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Lattice polarized_k3_lattice(int g) {
  require_genus(g);
  Lattice L = direct_sum({make_U(), make_U(), make_E8(), make_E8(),
                          make_rank1(Int(2 - 2 * g))});
  return L;
}

const std::vector<ReferenceVector>& reference_vectors() {
  static const std::vector<ReferenceVector> table = [] {
    std::vector<ReferenceVector> t;
    for (const CatalogRow& row : kCatalog) {
      t.push_back({row.g, chart_from_doubled(row.doubled), row.reconstructed});
    }
    return t;
  }();
  return table;
}

const ReferenceVector& reference_vector(int g) {
  for (const ReferenceVector& rv : reference_vectors()) {
    if (rv.g == g) return rv;
  }
  throw invalid_input("no reference vector for genus " + std::to_string(g) +
                      "; the catalog covers 2..22");
}

const std::vector<KnownRow>& known_rows() {
  static const std::vector<KnownRow> rows = {
      {2, 126, 56, "E7"},       {3, 84, 35, "D7"},
      {4, 74, 30, "A1+E6"},     {5, 56, 21, "A7"},
      {6, 60, 23, "D6"},        {7, 46, 16, "A2+D5"},
      {8, 44, 15, "A1+A6"},     {9, 42, 14, "A6"},
      {10, 42, 14, "A1+D5"},    {11, 32, 9, "A3+A4"},
      {12, 42, 14, "A6"},       {13, 32, 9, "A1+A5"},
      {14, 32, 9, "A1+A5"},     {15, 30, 8, "A2+D4"},
      {16, 28, 7, "A1+A2+A4"},  {17, 26, 6, "A2+A4"},
      {18, 30, 8, "A5"},        {19, 24, 5, "A1+A1+A4"},
      {20, 26, 6, "A2+A4"},     {21, 24, 5, "A3+A3"},
      {22, 26, 6, "A1+D4"},
  };
  return rows;
}

std::optional<int> dim_vg(int g) {
  static const std::map<int, int> dims = {{3, 35}, {4, 30}, {5, 21}, {6, 23},
                                          {7, 16}, {8, 15}, {9, 14}, {10, 14}};
  auto it = dims.find(g);
  if (it == dims.end()) return std::nullopt;
  return it->second;
}

QuasiPullbackReport quasi_pullback(int g, const QVec& v_chart,
                                   const EnumLimits& lim) {
  ComplementCore core = complement_core(g, v_chart, lim);
  QuasiPullbackReport rep;
  rep.g = g;
  rep.v_chart = v_chart;
  rep.v_basis = core.v_basis;
  rep.K = core.K;
  rep.r = core.roots.count;
  rep.k = 12 + rep.r / 2;
  rep.n = rep.k - 19;
  rep.root_type = classify(core.KL, core.roots.vectors);
  if (expected_root_count(rep.root_type) != rep.r) {
    throw internal_error("classified type disagrees with the root count");
  }
  rep.is_cusp = rep.r > 0;
  rep.disc_order = core.KL.det() < 0 ? -core.KL.det() : core.KL.det();
  rep.crosscheck_passed =
      theta_over_delta_constant_term(core.KL) == Rat(2) * Rat(rep.k);
  rep.dim_vg = dim_vg(g);
  return rep;
}

std::vector<QuasiPullbackReport> reference_table(const EnumLimits& lim,
                                                 int threads) {
  const std::vector<ReferenceVector>& refs = reference_vectors();
  std::vector<QuasiPullbackReport> out(refs.size());
  if (threads <= 1) {
    for (size_t i = 0; i < refs.size(); ++i) {
      out[i] = quasi_pullback(refs[i].g, refs[i].v_chart, lim);
    }
    return out;
  }
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> errors(refs.size());
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= refs.size()) return;
      try {
        out[i] = quasi_pullback(refs[i].g, refs[i].v_chart, lim);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min<int>(threads, static_cast<int>(refs.size()));
  pool.reserve(n);
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

HeegnerLedger heegner_ledger(int g, const QVec& v_chart,
                             const EnumLimits& lim) {
  ComplementCore core = complement_core(g, v_chart, lim);
  HeegnerLedger led;
  led.g = g;
  led.v_chart = v_chart;
  const DiscriminantData disc = discriminant(core.KL);
  // c_0(-1) is the root count; the shell was already enumerated
  if (count_of_norm(core.KL, Rat(-2), {}, lim) != core.roots.count) {
    throw internal_error("zero-coset count at norm -2 disagrees with the root shell");
  }
  for (const IVec& elem : disc.elements()) {
    bool zero = std::all_of(elem.begin(), elem.end(),
                            [](const Int& a) { return a == 0; });
    if (zero) continue;
    const IVec neg = disc.negate(elem);
    if (lex_less(neg, elem)) continue;  // keep the lex-smaller of each +/- pair
    const Rat q = disc.q_of(elem);
    if (q == 0) continue;  // x = q - 1 must land in the open interval (-1, 0)
    const Rat x = q - 1;
    const Rat target = Rat(2) * (Rat(-1) - x);  // equals -2q
    const Int mult = count_of_norm(core.KL, target, disc.lift(elem), lim);
    if (mult == 0) continue;
    led.entries.push_back({elem, q, x, mult});
  }
  led.f_divisor_entries.push_back(
      {IVec(disc.invariant_factors.size(), Int(0)), Rat(-1), Int(1)});
  for (const HeegnerEntry& e : led.entries) {
    led.f_divisor_entries.push_back({e.lambda, e.x, e.multiplicity});
  }
  return led;
}

OrbitCount eichler_minus2_orbits(int g) {
  require_genus(g);
  const Lattice L = polarized_k3_lattice(g);
  const DiscriminantData disc = discriminant(L);
  if (disc.q_values.empty() && disc.order > 1) {
    throw budget_exceeded("discriminant group of order " + int_str(disc.order) +
                          " is too large to scan");
  }
  OrbitCount oc;
  oc.g = g;
  oc.divisibilities.push_back(1);
  bool has_div2 = false;
  for (const IVec& elem : disc.elements()) {
    if (disc.order_of(elem) != 2) continue;
    if (disc.q_of(elem) == Rat(3, 4)) {
      has_div2 = true;
      break;
    }
  }
  if (has_div2) oc.divisibilities.push_back(2);
  oc.count = Int(oc.divisibilities.size());
  return oc;
}

SearchResult search_v(int g, SearchObjective objective,
                      const EnumLimits& lim) {
  require_genus(g);
  SearchResult sr;
  sr.g = g;
  sr.objective = objective;

  // doubled chart coordinates of the chain basis, as machine ints
  const IMat& C2 = e8_chart_doubled();
  long long c2[8][8];
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) c2[i][j] = to_int64(C2.at(i, j));

  // key: |doubled coords| sorted descending, then a parity bit that records
  // whether an odd number of negative signs is forced (no zero coordinate to
  // absorb one). Equal keys lie in one signed-permutation isometry class.
  std::map<std::array<long long, 9>, long long> klass;
  Int shell_count = 0;
  const Lattice E8 = make_E8();
  for_each_of_norm(E8, Rat(-(2 * g - 2)), {}, lim,
                   [&](const IVec& y, const Int& denom) {
                     if (denom != 1) throw internal_error("integral shell expected");
                     long long b[8];
                     long long acc = 0;
                     for (int i = 0; i < 8; ++i) {
                       b[i] = to_int64(y[i]);
                       acc = std::gcd(acc, b[i]);
                     }
                     if (acc != 1) return;  // imprimitive
                     ++shell_count;
                     std::array<long long, 9> key{};
                     int negatives = 0;
                     bool has_zero = false;
                     for (int i = 0; i < 8; ++i) {
                       long long w = 0;
                       for (int j = 0; j < 8; ++j) w += c2[i][j] * b[j];
                       if (w < 0) {
                         ++negatives;
                         w = -w;
                       }
                       if (w == 0) has_zero = true;
                       key[i] = w;
                     }
                     std::sort(key.begin(), key.begin() + 8,
                               std::greater<long long>());
                     key[8] = (!has_zero && (negatives % 2 != 0)) ? 1 : 0;
                     ++klass[key];
                   });
  sr.shell_count = shell_count;
  sr.candidates = shell_count / 2;

  struct Bucket {
    QVec rep_chart;
    IVec rep_basis;
    Int r;
    RootSystemType type;
    Int members;
  };
  std::map<std::pair<std::string, std::string>, Bucket> buckets;  // (r, type)
  for (const auto& [key, size] : klass) {
    QVec rep(8);
    for (int i = 0; i < 8; ++i) rep[i] = Rat(key[i], 2);
    if (key[8] == 1) rep[7] = -rep[7];
    QuasiPullbackReport qp = quasi_pullback(g, rep, lim);
    std::pair<std::string, std::string> bk{int_str(qp.r),
                                           type_string(qp.root_type)};
    auto it = buckets.find(bk);
    if (it == buckets.end()) {
      buckets.emplace(bk, Bucket{rep, qp.v_basis, qp.r, qp.root_type,
                                 Int(size / 2)});
    } else {
      it->second.members += Int(size / 2);
      if (lex_less(rep, it->second.rep_chart)) {
        it->second.rep_chart = rep;
        it->second.rep_basis = qp.v_basis;
      }
    }
  }
  for (auto& [bk, b] : buckets) {
    sr.classes.push_back({b.rep_chart, b.rep_basis, b.r, b.type, b.members});
  }
  const bool maximize = objective == SearchObjective::maximize_roots;
  std::sort(sr.classes.begin(), sr.classes.end(),
            [&](const SearchCandidate& a, const SearchCandidate& b) {
              if (a.r != b.r) return maximize ? a.r > b.r : a.r < b.r;
              const std::string ta = type_string(a.root_type);
              const std::string tb = type_string(b.root_type);
              if (ta != tb) return ta < tb;
              return lex_less(a.v_chart, b.v_chart);
            });
  return sr;
}

nlohmann::ordered_json report_json(const QuasiPullbackReport& rep) {
  nlohmann::ordered_json j;
  j["g"] = rep.g;
  j["v_chart"] = chart_json(rep.v_chart);
  j["v_basis"] = ivec_json(rep.v_basis);
  j["gram_K"] = imat_json(rep.K.gram);
  j["r"] = to_int64(rep.r);
  j["k"] = to_int64(rep.k);
  j["n"] = to_int64(rep.n);
  j["root_type"] = type_string(rep.root_type);
  j["is_cusp"] = rep.is_cusp;
  j["disc_order"] = to_int64(rep.disc_order);
  j["crosscheck"] = rep.crosscheck_passed;
  return j;
}

nlohmann::ordered_json ledger_json(const HeegnerLedger& led) {
  nlohmann::ordered_json j;
  j["g"] = led.g;
  j["v_chart"] = chart_json(led.v_chart);
  auto entries = nlohmann::ordered_json::array();
  for (const HeegnerEntry& e : led.entries) {
    nlohmann::ordered_json je;
    je["lambda"] = ivec_json(e.lambda);
    je["q_lambda"] = rat_str(e.q_lambda);
    je["x"] = rat_str(e.x);
    je["multiplicity"] = to_int64(e.multiplicity);
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  auto fdiv = nlohmann::ordered_json::array();
  for (const FDivisorEntry& e : led.f_divisor_entries) {
    nlohmann::ordered_json je;
    je["lambda"] = ivec_json(e.lambda);
    je["x"] = rat_str(e.x);
    je["multiplicity"] = to_int64(e.multiplicity);
    fdiv.push_back(std::move(je));
  }
  j["f_divisor_entries"] = std::move(fdiv);
  return j;
}

nlohmann::ordered_json orbits_json(const OrbitCount& oc) {
  nlohmann::ordered_json j;
  j["g"] = oc.g;
  auto divs = nlohmann::ordered_json::array();
  for (const Int& d : oc.divisibilities) divs.push_back(to_int64(d));
  j["divisibilities"] = std::move(divs);
  j["count"] = to_int64(oc.count);
  return j;
}

nlohmann::ordered_json search_json(const SearchResult& sr) {
  nlohmann::ordered_json j;
  j["g"] = sr.g;
  j["objective"] = objective_name(sr.objective);
  j["shell_count"] = to_int64(sr.shell_count);
  j["candidates"] = to_int64(sr.candidates);
  auto classes = nlohmann::ordered_json::array();
  for (const SearchCandidate& c : sr.classes) {
    nlohmann::ordered_json jc;
    jc["v_chart"] = chart_json(c.v_chart);
    jc["v_basis"] = ivec_json(c.v_basis);
    jc["r"] = to_int64(c.r);
    jc["root_type"] = type_string(c.root_type);
    jc["members"] = to_int64(c.members);
    classes.push_back(std::move(jc));
  }
  j["classes"] = std::move(classes);
  return j;
}

}  // namespace bll
