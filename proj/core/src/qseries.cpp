#include "bll/qseries.hpp"

namespace bll {

Rat QSeries::at(long long exponent) const {
  if (exponent < lead) return 0;
  const long long i = exponent - lead;
  if (i >= (long long)c.size())
    throw invalid_input("coefficient beyond retained precision");
  return c[size_t(i)];
}

QSeries delta_series(int prec) {
  if (prec < 1) throw invalid_input("series precision must be >= 1");
  // eta^24 expansion: multiply out (1 - q^n)^24 to relative degree prec-1
  std::vector<Rat> poly(prec, Rat(0));
  poly[0] = 1;
  for (int n = 1; n < prec; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (int i = prec - 1; i >= n; --i) poly[i] -= poly[i - n];
  QSeries s;
  s.lead = 1;
  s.c = std::move(poly);
  return s;
}

QSeries theta_series(const Lattice& L, int prec) {
  if (prec < 1) throw invalid_input("series precision must be >= 1");
  Signature sig = L.rank() == 0 ? Signature{} : signature_of(L.gram());
  if (sig.zero != 0 || (L.rank() > 0 && sig.pos != L.rank() && sig.neg != L.rank()))
    throw invalid_input("theta series needs a definite lattice");
  const bool negdef = L.rank() > 0 && sig.neg == L.rank();
  QSeries s;
  s.lead = 0;
  s.c.assign(prec, Rat(0));
  s.c[0] = 1;
  if (prec > 1) {
    const Rat bound = negdef ? Rat(-2 * (prec - 1)) : Rat(2 * (prec - 1));
    const auto hist = norm_histogram(L, bound);
    for (int m = 1; m < prec; ++m) {
      auto it = hist.find(negdef ? Rat(-2 * m) : Rat(2 * m));
      if (it != hist.end()) s.c[m] = Rat(it->second);
    }
  }
  return s;
}

QSeries multiply(const QSeries& a, const QSeries& b, int prec) {
  if (prec < 1) throw invalid_input("series precision must be >= 1");
  if (a.precision() < prec || b.precision() < prec)
    throw invalid_input("operands do not carry the requested precision");
  QSeries s;
  s.lead = a.lead + b.lead;
  s.c.assign(prec, Rat(0));
  for (int i = 0; i < prec; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; i + j < prec; ++j) s.c[i + j] += a.c[i] * b.c[j];
  }
  return s;
}

QSeries divide(const QSeries& a, const QSeries& b, int prec) {
  if (prec < 1) throw invalid_input("series precision must be >= 1");
  // normalize the divisor to a nonzero leading coefficient
  size_t off = 0;
  while (off < b.c.size() && b.c[off] == 0) ++off;
  if (off == b.c.size()) throw invalid_input("division by the zero series");
  const long long b_lead = b.lead + (long long)off;
  const int b_prec = int(b.c.size() - off);
  if (a.precision() < prec || b_prec < prec)
    throw invalid_input("operands do not carry the requested precision");
  QSeries s;
  s.lead = a.lead - b_lead;
  s.c.assign(prec, Rat(0));
  for (int i = 0; i < prec; ++i) {
    Rat acc = a.c[i];
    for (int j = 0; j < i; ++j) acc -= s.c[j] * b.c[off + size_t(i - j)];
    s.c[i] = acc / b.c[off];
  }
  return s;
}

Rat theta_over_delta_constant_term(const Lattice& L, int prec) {
  QSeries q = divide(theta_series(L, prec), delta_series(prec), prec);
  return q.at(0);
}

}  // namespace bll
