#include "bll/lattice.hpp"

#include "json.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace bll {

Lattice::Lattice(IMat gram, std::string label)
    : gram_(std::move(gram)), label_(std::move(label)) {
  if (gram_.rows != gram_.cols)
    throw invalid_input("gram matrix must be square");
  if (!bll::is_symmetric(gram_))
    throw invalid_input("gram matrix must be symmetric");
  det_ = det_bareiss(gram_);
  for (int i = 0; i < gram_.rows; ++i)
    if (gram_.at(i, i) % 2 != 0) {
      even_ = false;
      break;
    }
}

Lattice make_U() {
  IMat g(2, 2);
  g.at(0, 1) = 1;
  g.at(1, 0) = 1;
  return Lattice(std::move(g), "U");
}

namespace {

// negated Cartan matrix of a simply laced diagram: diagonal -2, +1 per edge
IMat negated_cartan(int n, const std::vector<std::pair<int, int>>& edges) {
  IMat g(n, n);
  for (int i = 0; i < n; ++i) g.at(i, i) = -2;
  for (auto [a, b] : edges) {
    g.at(a, b) = 1;
    g.at(b, a) = 1;
  }
  return g;
}

}  // namespace

Lattice make_A(int n) {
  if (n < 1) throw invalid_input("A-series rank must be >= 1");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Lattice(negated_cartan(n, e), "A" + std::to_string(n));
}

Lattice make_D(int n) {
  if (n < 2) throw invalid_input("D-series rank must be >= 2");
  // chain on the first n-1 nodes, last node attached to node n-3
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 2 < n; ++i) e.push_back({i, i + 1});
  if (n >= 3) e.push_back({n - 3, n - 1});
  return Lattice(negated_cartan(n, e), "D" + std::to_string(n));
}

Lattice make_E6() {
  return Lattice(negated_cartan(6, {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 3}}),
                 "E6");
}

Lattice make_E7() {
  return Lattice(
      negated_cartan(7, {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 3}}),
      "E7");
}

Lattice make_E8() {
  // chain 1-2-3-4-5-6-7 with node 8 attached to node 5; this numbering is the
  // one the chart columns below realize
  return Lattice(
      negated_cartan(
          8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}}),
      "E8");
}

Lattice make_rank1(const Int& m) {
  if (m == 0) throw invalid_input("rank-1 form parameter must be nonzero");
  IMat g(1, 1);
  g.at(0, 0) = m;
  return Lattice(std::move(g), "<" + int_str(m) + ">");
}

Lattice make_named(const std::string& name) {
  if (name == "U") return make_U();
  if (name == "E6") return make_E6();
  if (name == "E7") return make_E7();
  if (name == "E8") return make_E8();
  try {
    if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'D')) {
      size_t used = 0;
      int n = std::stoi(name.substr(1), &used);
      if (used == name.size() - 1)
        return name[0] == 'A' ? make_A(n) : make_D(n);
    }
    if (name.rfind("rank1(", 0) == 0 && name.back() == ')')
      return make_rank1(Int(name.substr(6, name.size() - 7)));
  } catch (const invalid_input&) {
    throw;
  } catch (const std::exception&) {
    // fall through to the unknown-name error
  }
  throw invalid_input("unknown lattice name '" + name + "'");
}

Lattice direct_sum(const std::vector<Lattice>& parts) {
  int n = 0;
  for (const auto& p : parts) n += p.rank();
  IMat g(n, n);
  int off = 0;
  std::string label;
  bool all_labeled = !parts.empty();
  for (const auto& p : parts) {
    for (int i = 0; i < p.rank(); ++i)
      for (int j = 0; j < p.rank(); ++j)
        g.at(off + i, off + j) = p.gram().at(i, j);
    off += p.rank();
    if (p.label().empty())
      all_labeled = false;
    else
      label += (label.empty() ? "" : " + ") + p.label();
  }
  return Lattice(std::move(g), all_labeled ? label : "");
}

Int inner(const Lattice& L, const IVec& u, const IVec& v) {
  if (int(u.size()) != L.rank() || int(v.size()) != L.rank())
    throw invalid_input("inner product dimension mismatch");
  Int s = 0;
  for (int i = 0; i < L.rank(); ++i) {
    if (u[i] == 0) continue;
    Int row = 0;
    for (int j = 0; j < L.rank(); ++j) row += L.gram().at(i, j) * v[j];
    s += u[i] * row;
  }
  return s;
}

Rat inner(const Lattice& L, const QVec& u, const QVec& v) {
  if (int(u.size()) != L.rank() || int(v.size()) != L.rank())
    throw invalid_input("inner product dimension mismatch");
  Rat s = 0;
  for (int i = 0; i < L.rank(); ++i) {
    if (u[i] == 0) continue;
    Rat row = 0;
    for (int j = 0; j < L.rank(); ++j) row += Rat(L.gram().at(i, j)) * v[j];
    s += u[i] * row;
  }
  return s;
}

bool is_primitive(const Lattice& L, const IVec& v) {
  if (int(v.size()) != L.rank())
    throw invalid_input("vector length does not match lattice rank");
  if (is_zero_vec(v))
    throw invalid_input("primitivity of the zero vector is undefined");
  Int g = 0;
  for (const auto& c : v) g = boost::multiprecision::gcd(g, c);
  return g == 1;
}

Lattice EmbeddedSublattice::as_lattice(std::string label) const {
  if (degenerate)
    throw invalid_input("degenerate sublattice has no nondegenerate form");
  return Lattice(gram, std::move(label));
}

EmbeddedSublattice orthogonal_complement(const Lattice& L,
                                         const std::vector<IVec>& vs) {
  const int n = L.rank();
  IMat M(int(vs.size()), n);
  for (size_t t = 0; t < vs.size(); ++t) {
    if (int(vs[t].size()) != n)
      throw invalid_input("vector length does not match lattice rank");
    for (int j = 0; j < n; ++j) {
      Int s = 0;
      for (int i = 0; i < n; ++i) s += vs[t][i] * L.gram().at(i, j);
      M.at(int(t), j) = s;  // row t = v_t^T * gram
    }
  }
  IMat K = kernel_basis(M);
  IMat gram(K.cols, K.cols);
  for (int a = 0; a < K.cols; ++a)
    for (int b = 0; b < K.cols; ++b) {
      Int s = 0;
      for (int i = 0; i < n; ++i) {
        if (K.at(i, a) == 0) continue;
        Int row = 0;
        for (int j = 0; j < n; ++j) row += L.gram().at(i, j) * K.at(j, b);
        s += K.at(i, a) * row;
      }
      gram.at(a, b) = s;
    }
  EmbeddedSublattice sub;
  sub.ambient = L;
  sub.basis = std::move(K);
  sub.degenerate = det_bareiss(gram) == 0;
  sub.gram = std::move(gram);
  return sub;
}

QVec DiscriminantData::lift(const IVec& elem) const {
  if (elem.size() != invariant_factors.size())
    throw invalid_input("element tuple length does not match group rank");
  const int n = rank;
  QVec v(n);
  for (size_t i = 0; i < elem.size(); ++i) {
    Int a = elem[i] % invariant_factors[i];
    if (a < 0) a += invariant_factors[i];
    if (a == 0) continue;
    for (int j = 0; j < n; ++j) v[j] += Rat(a) * generators[i][j];
  }
  return v;
}

Rat DiscriminantData::q_of(const IVec& elem) const {
  IVec key(elem.size());
  for (size_t i = 0; i < elem.size(); ++i) {
    key[i] = elem[i] % invariant_factors[i];
    if (key[i] < 0) key[i] += invariant_factors[i];
  }
  auto it = q_values.find(key);
  if (it == q_values.end())
    throw internal_error("q value not materialized for element");
  return it->second;
}

Int DiscriminantData::order_of(const IVec& elem) const {
  Int ord = 1;
  for (size_t i = 0; i < elem.size(); ++i) {
    Int a = elem[i] % invariant_factors[i];
    if (a < 0) a += invariant_factors[i];
    Int d = invariant_factors[i] / boost::multiprecision::gcd(
                                       invariant_factors[i], a);
    ord = ord / boost::multiprecision::gcd(ord, d) * d;
  }
  return ord;
}

IVec DiscriminantData::negate(const IVec& elem) const {
  IVec out(elem.size());
  for (size_t i = 0; i < elem.size(); ++i) {
    Int a = elem[i] % invariant_factors[i];
    if (a < 0) a += invariant_factors[i];
    out[i] = a == 0 ? Int(0) : invariant_factors[i] - a;
  }
  return out;
}

std::vector<IVec> DiscriminantData::elements() const {
  std::vector<IVec> out;
  IVec cur(invariant_factors.size(), Int(0));
  for (;;) {
    out.push_back(cur);
    int i = int(cur.size()) - 1;
    while (i >= 0) {
      ++cur[i];
      if (cur[i] < invariant_factors[i]) break;
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

DiscriminantData discriminant(const Lattice& L) {
  if (!L.nondegenerate())
    throw invalid_input("discriminant of a degenerate form");
  SnfResult s = snf(L.gram());
  DiscriminantData d;
  d.rank = L.rank();
  d.order = L.det() < 0 ? Int(-L.det()) : L.det();
  for (int i = 0; i < L.rank(); ++i) {
    const Int& di = s.d.at(i, i);
    if (di > 1) {
      d.invariant_factors.push_back(di);
      QVec gen(L.rank());
      for (int j = 0; j < L.rank(); ++j) gen[j] = Rat(s.v.at(j, i), di);
      d.generators.push_back(std::move(gen));
    }
  }
  Int check = 1;
  for (const auto& f : d.invariant_factors) check *= f;
  if (check != d.order)
    throw internal_error("invariant factors do not multiply to |det|");
  if (d.order <= (Int(1) << 20)) {
    for (const auto& e : d.elements()) {
      QVec v = d.lift(e);
      d.q_values[e] = mod1(inner(L, v, v) / 2);
    }
  }
  return d;
}

Signature signature(const Lattice& L) {
  if (!L.nondegenerate())
    throw invalid_input("signature of a degenerate form");
  return signature_of(L.gram());
}

namespace {

// columns: the chain basis written in doubled even-coordinate model
// coordinates; the induced form reproduces make_E8 exactly
const IMat& chart_doubled_matrix() {
  static const IMat C2 = [] {
    static const int rows[8][8] = {
        {0, 0, 0, 0, 0, -2, 1, 2},   {0, 0, 0, 0, -2, 2, -1, 2},
        {0, 0, 0, -2, 2, 0, -1, 0},  {0, 0, -2, 2, 0, 0, -1, 0},
        {0, -2, 2, 0, 0, 0, -1, 0},  {-2, 2, 0, 0, 0, 0, -1, 0},
        {2, 0, 0, 0, 0, 0, -1, 0},   {0, 0, 0, 0, 0, 0, 1, 0},
    };
    IMat m(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) m.at(i, j) = rows[i][j];
    return m;
  }();
  return C2;
}

const QMat& chart_doubled_inverse() {
  static const QMat inv = qmat_inverse(chart_doubled_matrix());
  return inv;
}

}  // namespace

const IMat& e8_chart_doubled() { return chart_doubled_matrix(); }

std::string e8_chart_reject_reason(const QVec& x) {
  if (x.size() != 8) return "chart vector must have 8 coordinates";
  bool any_half = false, any_int = false;
  Rat sum = 0;
  for (const auto& c : x) {
    const Int d = den(c);
    if (d == 1)
      any_int = true;
    else if (d == 2)
      any_half = true;
    else
      return "coordinates must be integers or half-integers";
    sum += c;
  }
  if (any_half && any_int)
    return "coordinates must be all integral or all half-integral";
  if (den(sum) != 1 || num(sum) % 2 != 0)
    return "coordinate sum must be an even integer";
  return "";
}

IVec e8_chart_to_basis(const QVec& x) {
  std::string reason = e8_chart_reject_reason(x);
  if (!reason.empty()) throw invalid_input(reason);
  QVec doubled(8);
  for (int i = 0; i < 8; ++i) doubled[i] = x[i] * 2;
  QVec b = qmat_apply(chart_doubled_inverse(), doubled);
  IVec out(8);
  for (int i = 0; i < 8; ++i) {
    if (!is_integral(b[i]))
      throw internal_error("chart point failed basis conversion");
    out[i] = num(b[i]);
  }
  return out;
}

QVec e8_basis_to_chart(const IVec& b) {
  if (b.size() != 8) throw invalid_input("basis vector must have 8 coordinates");
  const IMat& C2 = chart_doubled_matrix();
  QVec x(8);
  for (int i = 0; i < 8; ++i) {
    Int s = 0;
    for (int j = 0; j < 8; ++j) s += C2.at(i, j) * b[j];
    x[i] = Rat(s, 2);
  }
  return x;
}

std::string lattice_json(const Lattice& L) {
  nlohmann::ordered_json j;
  j["rank"] = L.rank();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < L.rank(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int k = 0; k < L.rank(); ++k) row.push_back(to_int64(L.gram().at(i, k)));
    rows.push_back(std::move(row));
  }
  j["gram"] = std::move(rows);
  j["label"] = L.label();
  return j.dump();
}

}  // namespace bll
