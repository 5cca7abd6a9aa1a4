#pragma once
// Exact Laurent series in q. Coefficients are rationals so quotients stay
// closed; every operation states the precision it retains and refuses to
// fabricate terms it cannot support.

#include "bll/enumerate.hpp"

namespace bll {

struct QSeries {
  long long lead = 0;   // exponent of c[0]
  std::vector<Rat> c;   // c[i] is the q^(lead+i) coefficient

  int precision() const { return int(c.size()); }
  // exact coefficient: zero below the window, error above it
  Rat at(long long exponent) const;
};

// q * prod_{n>=1} (1 - q^n)^24, retaining prec terms: q - 24q^2 + 252q^3 ...
QSeries delta_series(int prec);

// coefficient of q^m counts vectors of norm -2m (negative definite) or 2m
// (positive definite); the constant term is 1 for the zero vector
QSeries theta_series(const Lattice& L, int prec);

QSeries multiply(const QSeries& a, const QSeries& b, int prec);

// Laurent long division; b's leading nonzero coefficient must divide exactly
// (any nonzero rational does)
QSeries divide(const QSeries& a, const QSeries& b, int prec);

// constant term of theta(L)/delta, the weight cross-check quantity
Rat theta_over_delta_constant_term(const Lattice& L, int prec = 16);

}  // namespace bll
