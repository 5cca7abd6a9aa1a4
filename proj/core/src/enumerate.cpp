#include "bll/enumerate.hpp"

#include "json.hpp"

#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <fstream>
#include <random>
#include <type_traits>

namespace bll {

namespace {

// exact floor(sqrt(v)) by integer Newton; no floating point anywhere
long long isqrt64(long long v) {
  if (v < 0) throw internal_error("isqrt of negative value");
  if (v == 0) return 0;
  unsigned long long n = (unsigned long long)v;
  unsigned long long x = 1ULL << ((std::bit_width(n) + 1) / 2);  // x >= sqrt
  for (;;) {
    unsigned long long y = (x + n / x) / 2;
    if (y >= x) break;
    x = y;
  }
  return (long long)x;
}

constexpr long long kI64Safe = (1LL << 62);

// Problem after validation and scaling: enumerate y in Z^n with
// y = rho (mod d) and y^T P y = S, P positive definite. Coordinates are
// pre-reversed so the DFS emits lexicographic order on the original ones.
struct Prepared {
  bool trivial = false;  // provably empty shell
  bool negdef = false;
  int n = 0;
  Int d = 1, S = 0;
  IMat P;      // positivized gram, original order
  IVec rho;    // entries in [0, d)
  QVec shift_can;
};

// floor_target: treat |target| as an upper bound on the scaled value rather
// than an exact value, so a fractional bound floors instead of emptying
Prepared prepare(const Lattice& L, const Rat& target, const QVec& shift_in,
                 bool floor_target = false) {
  Prepared pr;
  const int n = L.rank();
  pr.n = n;

  Signature sig = n == 0 ? Signature{} : signature_of(L.gram());
  if (sig.zero != 0 || (n > 0 && sig.pos != n && sig.neg != n))
    throw invalid_input("lattice is not definite");
  const bool negdef = n > 0 && sig.neg == n;
  pr.negdef = negdef;

  QVec shift = shift_in;
  if (shift.empty()) shift.assign(n, Rat(0));
  if (int(shift.size()) != n)
    throw invalid_input("shift length does not match lattice rank");
  // dual membership: pairing with every basis vector must be integral
  for (int j = 0; j < n; ++j) {
    Rat s = 0;
    for (int i = 0; i < n; ++i) s += Rat(L.gram().at(i, j)) * shift[i];
    if (!is_integral(s))
      throw invalid_input("shift is not in the dual lattice");
  }
  pr.shift_can.resize(n);
  for (int i = 0; i < n; ++i) pr.shift_can[i] = mod1(shift[i]);

  if (n == 0) {
    pr.trivial = true;
    return pr;
  }
  if (negdef ? target > 0 : target < 0)
    throw invalid_input(negdef
                            ? "norm target must be <= 0 for a negative definite lattice"
                            : "norm target must be >= 0 for a positive definite lattice");
  Rat T = negdef ? Rat(-target) : target;
  if (T == 0) {
    pr.trivial = true;  // zero vector excluded by policy
    return pr;
  }

  Int d = 1;
  for (const auto& c : pr.shift_can)
    d = boost::multiprecision::lcm(d, den(c));
  pr.d = d;
  pr.rho.resize(n);
  for (int i = 0; i < n; ++i) pr.rho[i] = num(pr.shift_can[i] * d);

  Rat S_rat = T * d * d;
  if (!is_integral(S_rat)) {
    if (!floor_target) {
      pr.trivial = true;  // integral form can never take this value
      return pr;
    }
    pr.S = floor_rat(S_rat);
    if (pr.S <= 0) {
      pr.trivial = true;
      return pr;
    }
  } else {
    pr.S = num(S_rat);
  }

  pr.P = IMat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      pr.P.at(i, j) = negdef ? Int(-L.gram().at(i, j)) : L.gram().at(i, j);
  return pr;
}

// fraction-free triangular data, index-reversed; all entries are minors of P
struct Decomp {
  int n = 0;
  std::vector<IVec> b;  // b[j][i] for i >= j; b[j][j] = p[j] > 0
  IVec p, e;
  Int B_total;   // S * (prod p)^2
  IVec rho;      // reversed
  Int d;
  bool fits_i64 = false;
};

Decomp decompose(const Prepared& pr) {
  const int n = pr.n;
  Decomp dc;
  dc.n = n;
  dc.d = pr.d;
  dc.rho.resize(n);
  IMat P(n, n);
  for (int i = 0; i < n; ++i) {
    dc.rho[i] = pr.rho[n - 1 - i];
    for (int j = 0; j < n; ++j) P.at(i, j) = pr.P.at(n - 1 - i, n - 1 - j);
  }

  IMat M = P;
  dc.b.assign(n, IVec());
  dc.p.resize(n);
  Int prev = 1;
  for (int k = 0; k < n; ++k) {
    dc.b[k].resize(n);
    for (int j = 0; j < n; ++j) dc.b[k][j] = M.at(k, j);
    dc.p[k] = M.at(k, k);
    if (dc.p[k] <= 0)
      throw internal_error("nonpositive pivot in definite decomposition");
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        M.at(i, j) = (M.at(k, k) * M.at(i, j) - M.at(i, k) * M.at(k, j)) / prev;
    prev = dc.p[k];
  }
  Int W = 1;
  for (int k = 0; k < n; ++k) W *= dc.p[k];
  Int W2 = W * W;
  dc.e.resize(n);
  for (int k = 0; k < n; ++k)
    dc.e[k] = W2 / (dc.p[k] * (k == 0 ? Int(1) : dc.p[k - 1]));
  dc.B_total = pr.S * W2;

  // 64-bit feasibility: every quantity the walk touches is bounded by one of
  // these, so a pass here makes the fast kernel provably overflow-free
  Int maxb = 0;
  for (int k = 0; k < n; ++k)
    for (int j = k; j < n; ++j) {
      Int a = dc.b[k][j] < 0 ? Int(-dc.b[k][j]) : dc.b[k][j];
      if (a > maxb) maxb = a;
    }
  QMat inv = qmat_inverse(P);
  Int ybound = 1;
  for (int j = 0; j < n; ++j) {
    Rat bj = Rat(pr.S) * inv.at(j, j);
    Int yb = isqrt_floor(floor_rat(bj)) + 1;
    if (yb > ybound) ybound = yb;
  }
  dc.fits_i64 = dc.B_total < kI64Safe && W2 < kI64Safe &&
                Int(2) * Int(n + 1) * maxb * ybound < kI64Safe &&
                pr.d * (ybound + 1) < kI64Safe;
  return dc;
}

template <class I>
struct Kernel {
  int n = 0;
  I d = 1;
  std::vector<std::vector<I>> b;
  std::vector<I> p, e, rho;
  I B_total{};
  long long node_cap = 0;
  long long nodes = 0;

  std::vector<I> z;
  IVec out;
  Int d_out;
  const std::function<void(const IVec&, const Int&)>* sink = nullptr;
  std::map<Int, Int>* hist = nullptr;  // histogram mode: scaled value -> count
  I W2{};

  static I fdiv(const I& a, const I& pb) {  // floor(a/pb), pb > 0
    if constexpr (std::is_same_v<I, long long>) {
      I q = a / pb, r = a % pb;
      return r < 0 ? q - 1 : q;
    } else {
      return floor_div(a, pb);
    }
  }
  static I isq(const I& v) {
    if constexpr (std::is_same_v<I, long long>)
      return isqrt64(v);
    else
      return isqrt_floor(v);
  }

  void bump() {
    ++nodes;
    if (node_cap > 0 && nodes > node_cap)
      throw budget_exceeded("enumeration node budget exceeded (" +
                            std::to_string(node_cap) + " nodes)");
  }

  void emit() {
    for (int i = 0; i < n; ++i) out[i] = z[n - 1 - i];
    (*sink)(out, d_out);
  }

  void dfs(int j, const I& budget) {
    I r = 0;
    for (int i = j + 1; i < n; ++i) r += b[j][i] * z[i];
    if (j == 0 && hist) {
      // collect every admissible value <= the bound in one walk
      I M = isq(budget / e[0]);
      I lo = -fdiv(M + r, p[0]);
      I hi = fdiv(M - r, p[0]);
      I m = (rho[0] - lo) % d;
      if (m < 0) m += d;
      for (I t = lo + m; t <= hi; t += d) {
        bump();
        I A = p[0] * t + r;
        I U = (B_total - budget) + e[0] * (A * A);
        if (U == 0) continue;  // the zero vector stays excluded
        if (U % W2 != 0)
          throw internal_error("scaled value not divisible by the weight square");
        if constexpr (std::is_same_v<I, long long>)
          (*hist)[Int(U / W2)] += 1;
        else
          (*hist)[U / W2] += 1;
      }
      return;
    }
    if (j == 0) {
      if (budget % e[0] != 0) return;
      I R = budget / e[0];
      I s = isq(R);
      if (s * s != R) return;
      for (int t = 0; t < 2; ++t) {
        if (t == 1 && s == 0) break;
        bump();
        I A = t == 0 ? I(-s) : s;
        I num = A - r;
        if (num % p[0] != 0) continue;
        I zz = num / p[0];
        if ((zz - rho[0]) % d != 0) continue;
        z[0] = zz;
        emit();
      }
      return;
    }
    I M = isq(budget / e[j]);
    I lo = -fdiv(M + r, p[j]);  // ceil((-M - r)/p)
    I hi = fdiv(M - r, p[j]);
    I m = (rho[j] - lo) % d;
    if (m < 0) m += d;
    for (I t = lo + m; t <= hi; t += d) {
      bump();
      z[j] = t;
      I A = p[j] * t + r;
      dfs(j - 1, budget - e[j] * (A * A));
    }
  }

  void run() {
    z.assign(n, I(0));
    out.assign(n, Int(0));
    dfs(n - 1, B_total);
  }
};

template <class I>
void run_kernel(const Decomp& dc, const EnumLimits& lim,
                const std::function<void(const IVec&, const Int&)>* sink,
                std::map<Int, Int>* hist) {
  Kernel<I> k;
  k.n = dc.n;
  k.node_cap = lim.node_cap;
  k.sink = sink;
  k.hist = hist;
  k.d_out = dc.d;
  auto conv = [](const Int& x) -> I {
    if constexpr (std::is_same_v<I, long long>)
      return x.convert_to<long long>();
    else
      return x;
  };
  k.d = conv(dc.d);
  k.B_total = conv(dc.B_total);
  k.b.resize(dc.n);
  k.p.resize(dc.n);
  k.e.resize(dc.n);
  k.rho.resize(dc.n);
  for (int j = 0; j < dc.n; ++j) {
    k.p[j] = conv(dc.p[j]);
    k.e[j] = conv(dc.e[j]);
    k.rho[j] = conv(dc.rho[j]);
    k.b[j].resize(dc.n);
    for (int i = 0; i < dc.n; ++i) k.b[j][i] = conv(dc.b[j][i]);
  }
  k.W2 = k.e[0] * k.p[0];
  k.run();
}

}  // namespace

void for_each_of_norm(const Lattice& L, const Rat& target, const QVec& shift,
                      const EnumLimits& lim,
                      const std::function<void(const IVec&, const Int&)>& sink) {
  Prepared pr = prepare(L, target, shift);
  if (pr.trivial) return;
  Decomp dc = decompose(pr);
  if (dc.fits_i64)
    run_kernel<long long>(dc, lim, &sink, nullptr);
  else
    run_kernel<Int>(dc, lim, &sink, nullptr);
}

NormShell vectors_of_norm(const Lattice& L, const Rat& target,
                          const QVec& shift, const EnumLimits& lim) {
  NormShell shell;
  shell.lattice = L;
  shell.target_norm = target;
  Prepared pr = prepare(L, target, shift);
  shell.shift = pr.shift_can;
  if (!pr.trivial) {
    Decomp dc = decompose(pr);
    const std::function<void(const IVec&, const Int&)> sink =
        [&](const IVec& y, const Int& d) {
          QVec v(y.size());
          for (size_t i = 0; i < y.size(); ++i) v[i] = Rat(y[i], d);
          shell.vectors.push_back(std::move(v));
        };
    if (dc.fits_i64)
      run_kernel<long long>(dc, lim, &sink, nullptr);
    else
      run_kernel<Int>(dc, lim, &sink, nullptr);
  }
  shell.count = Int(shell.vectors.size());
  return shell;
}

Int count_of_norm(const Lattice& L, const Rat& target, const QVec& shift,
                  const EnumLimits& lim) {
  Prepared pr = prepare(L, target, shift);
  if (pr.trivial) return 0;
  const std::string key = shell_cache_key(L, target, pr.shift_can);
  if (auto hit = global_shell_cache().get(key)) return *hit;
  Int count = 0;
  Decomp dc = decompose(pr);
  const std::function<void(const IVec&, const Int&)> sink =
      [&](const IVec&, const Int&) { ++count; };
  if (dc.fits_i64)
    run_kernel<long long>(dc, lim, &sink, nullptr);
  else
    run_kernel<Int>(dc, lim, &sink, nullptr);
  global_shell_cache().put(key, count);
  return count;
}

std::map<Rat, Int> norm_histogram(const Lattice& L, const Rat& bound,
                                  const QVec& shift, const EnumLimits& lim) {
  Prepared pr = prepare(L, bound, shift, /*floor_target=*/true);
  std::map<Rat, Int> out;
  if (pr.trivial) return out;

  // with an integral shift every representable value is an integer, so the
  // histogram and the per-target cache speak the same key language
  const bool cacheable = pr.d == 1;
  auto norm_at = [&](const Int& q) {
    return pr.negdef ? Rat(-q) : Rat(q);
  };
  if (cacheable) {
    bool all_hit = true;
    std::map<Rat, Int> cached;
    for (Int q = 1; q <= pr.S && all_hit; ++q) {
      const Rat t = norm_at(q);
      auto hit = global_shell_cache().get(shell_cache_key(L, t, pr.shift_can));
      if (!hit)
        all_hit = false;
      else if (*hit != 0)
        cached[t] = *hit;
    }
    if (all_hit) return cached;
  }

  Decomp dc = decompose(pr);
  std::map<Int, Int> scaled;
  if (dc.fits_i64)
    run_kernel<long long>(dc, lim, nullptr, &scaled);
  else
    run_kernel<Int>(dc, lim, nullptr, &scaled);
  const Int d2 = pr.d * pr.d;
  for (const auto& [q, c] : scaled) {
    Rat norm = Rat(q, d2);
    if (pr.negdef) norm = -norm;
    out[norm] = c;
  }
  if (cacheable) {
    for (Int q = 1; q <= pr.S; ++q) {
      const Rat t = norm_at(q);
      auto it = out.find(t);
      const Int count = it == out.end() ? Int(0) : it->second;
      global_shell_cache().put(shell_cache_key(L, t, pr.shift_can), count);
    }
  }
  return out;
}

Int brute_force_oracle(const Lattice& L, const Rat& target, const QVec& shift,
                       const Int& box_cap) {
  Prepared pr = prepare(L, target, shift);
  if (pr.trivial) return 0;
  const int n = pr.n;
  QMat inv = qmat_inverse(pr.P);
  IVec lo(n), hi(n);
  Int box = 1;
  for (int i = 0; i < n; ++i) {
    // |y_i| <= sqrt(S * (P^-1)_ii) and y_i is an integer
    Int Mi = isqrt_floor(floor_rat(Rat(pr.S) * inv.at(i, i)));
    lo[i] = ceil_div(-Mi - pr.rho[i], pr.d);
    hi[i] = floor_div(Mi - pr.rho[i], pr.d);
    Int w = hi[i] - lo[i] + 1;
    if (w <= 0) return 0;
    box *= w;
    if (box > box_cap)
      throw budget_exceeded("oracle box exceeds the cap of " +
                            int_str(box_cap) + " points");
  }

  // direct scan; evaluate in 64-bit when a crude bound allows it
  Int maxy = 0;
  for (int i = 0; i < n; ++i) {
    Int a = pr.d * (lo[i] < 0 ? -lo[i] : lo[i]) + pr.d;
    Int b2 = pr.d * (hi[i] < 0 ? -hi[i] : hi[i]) + pr.d;
    Int m = a > b2 ? a : b2;
    if (m > maxy) maxy = m;
  }
  Int maxp = 0;
  for (const auto& v : pr.P.a) {
    Int a = v < 0 ? Int(-v) : v;
    if (a > maxp) maxp = a;
  }
  const bool small = Int(n) * Int(n) * maxp * maxy * maxy < kI64Safe;

  std::vector<long long> p64, rho64, x64, lo64, hi64;
  long long d64 = 0, S64 = 0;
  if (small) {
    p64.resize(size_t(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        p64[size_t(i) * n + j] = pr.P.at(i, j).convert_to<long long>();
    rho64.resize(n);
    lo64.resize(n);
    hi64.resize(n);
    for (int i = 0; i < n; ++i) {
      rho64[i] = pr.rho[i].convert_to<long long>();
      lo64[i] = lo[i].convert_to<long long>();
      hi64[i] = hi[i].convert_to<long long>();
    }
    d64 = pr.d.convert_to<long long>();
    S64 = pr.S < kI64Safe ? pr.S.convert_to<long long>() : -1;
  }

  Int count = 0;
  if (small && S64 >= 0) {
    std::vector<long long> y(n);
    x64 = lo64;
    for (;;) {
      bool zero = true;
      for (int i = 0; i < n; ++i) {
        y[i] = d64 * x64[i] + rho64[i];
        if (y[i] != 0) zero = false;
      }
      if (!zero) {
        long long acc = 0;
        for (int i = 0; i < n; ++i) {
          if (y[i] == 0) continue;
          long long row = 0;
          for (int j = 0; j < n; ++j) row += p64[size_t(i) * n + j] * y[j];
          acc += y[i] * row;
        }
        if (acc == S64) ++count;
      }
      int i = n - 1;
      while (i >= 0) {
        ++x64[i];
        if (x64[i] <= hi64[i]) break;
        x64[i] = lo64[i];
        --i;
      }
      if (i < 0) break;
    }
    return count;
  }

  IVec x = lo;
  for (;;) {
    IVec y(n);
    bool zero = true;
    for (int i = 0; i < n; ++i) {
      y[i] = pr.d * x[i] + pr.rho[i];
      if (y[i] != 0) zero = false;
    }
    if (!zero) {
      Int acc = 0;
      for (int i = 0; i < n; ++i) {
        if (y[i] == 0) continue;
        Int row = 0;
        for (int j = 0; j < n; ++j) row += pr.P.at(i, j) * y[j];
        acc += y[i] * row;
      }
      if (acc == pr.S) ++count;
    }
    int i = n - 1;
    while (i >= 0) {
      ++x[i];
      if (x[i] <= hi[i]) break;
      x[i] = lo[i];
      --i;
    }
    if (i < 0) break;
  }
  return count;
}

std::optional<Int> ShellCache::get(const std::string& key) const {
  std::lock_guard<std::mutex> g(mu_);
  auto it = m_.find(key);
  if (it == m_.end()) return std::nullopt;
  return it->second;
}

void ShellCache::put(const std::string& key, const Int& value) {
  std::lock_guard<std::mutex> g(mu_);
  m_[key] = value;
}

void ShellCache::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    return;  // unreadable cache is ignored, never fatal
  }
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_object())
    return;
  std::lock_guard<std::mutex> g(mu_);
  for (auto& [k, v] : j["entries"].items())
    if (v.is_string()) m_[k] = Int(v.get<std::string>());
}

void ShellCache::save_file(const std::string& path) const {
  nlohmann::ordered_json j;
  j["version"] = 1;
  nlohmann::ordered_json entries = nlohmann::ordered_json::object();
  {
    std::lock_guard<std::mutex> g(mu_);
    for (const auto& [k, v] : m_) entries[k] = int_str(v);
  }
  j["entries"] = std::move(entries);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << j.dump(2) << "\n";
  }
  std::rename(tmp.c_str(), path.c_str());
}

size_t ShellCache::size() const {
  std::lock_guard<std::mutex> g(mu_);
  return m_.size();
}

void ShellCache::clear() {
  std::lock_guard<std::mutex> g(mu_);
  m_.clear();
}

ShellCache& global_shell_cache() {
  static ShellCache cache;
  return cache;
}

std::string shell_cache_key(const Lattice& L, const Rat& target,
                            const QVec& canonical_shift) {
  std::string key = "g=";
  for (int i = 0; i < L.rank(); ++i)
    for (int j = 0; j < L.rank(); ++j) {
      key += int_str(L.gram().at(i, j));
      key += (j + 1 == L.rank()) ? ';' : ',';
    }
  key += "|t=" + rat_str(target) + "|s=";
  for (size_t i = 0; i < canonical_shift.size(); ++i) {
    if (i) key += ',';
    key += rat_str(canonical_shift[i]);
  }
  return key;
}

OracleSuiteResult oracle_equivalence_suite(int lattice_count, unsigned seed) {
  std::mt19937 rng(seed);
  // modulo draws keep the sequence identical across platforms
  auto draw = [&](int lo, int hi) {
    return lo + int(rng() % (unsigned)(hi - lo + 1));
  };
  OracleSuiteResult res;
  while (res.lattices < lattice_count) {
    const int rank = draw(1, 5);
    IMat g(rank, rank);
    for (int i = 0; i < rank; ++i)
      for (int j = i; j < rank; ++j) {
        int v = draw(-6, 6);
        g.at(i, j) = v;
        g.at(j, i) = v;
      }
    Signature sig = signature_of(g);
    if (sig.neg != rank) continue;  // want negative definite
    Lattice lat(g);

    DiscriminantData dd = discriminant(lat);
    QVec zero_shift(rank, Rat(0));
    IVec elem(dd.invariant_factors.size());
    for (size_t i = 0; i < elem.size(); ++i)
      elem[i] = draw(0, int(dd.invariant_factors[i].convert_to<long long>()) - 1);
    QVec random_shift = dd.lift(elem);

    int comparisons = 0, failures = 0;
    bool skipped = false;
    for (int t : {-2, -4, -6}) {
      for (const QVec* s : {&zero_shift, &random_shift}) {
        try {
          Int fast = count_of_norm(lat, Rat(t), *s);
          Int slow = brute_force_oracle(lat, Rat(t), *s);
          ++comparisons;
          if (fast != slow) ++failures;
        } catch (const budget_exceeded&) {
          skipped = true;  // box too large for the oracle; resample
          break;
        }
      }
      if (skipped) break;
    }
    if (skipped) continue;
    ++res.lattices;
    res.comparisons += comparisons;
    res.failures += failures;
  }
  return res;
}

}  // namespace bll
