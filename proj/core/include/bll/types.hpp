#pragma once
// Exact arithmetic substrate and the error taxonomy shared by all modules.
// No floating point appears anywhere in this library: integers are
// arbitrary-precision, fractions are exact rationals.

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace bll {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

// Error taxonomy. The CLI maps these to exit codes:
//   invalid_input -> 2, budget_exceeded -> 3, internal_error -> 4.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct invalid_input : error {
  using error::error;
};
struct budget_exceeded : error {
  using error::error;
};
// Raised when a computation contradicts an invariant the library itself
// guarantees (e.g. a root component matching no ADE family).
struct internal_error : error {
  using error::error;
};

inline Int num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int den(const Rat& x) { return boost::multiprecision::denominator(x); }

// floor(a/b), b != 0; works for negative operands
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}
inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

inline Int floor_rat(const Rat& x) { return floor_div(num(x), den(x)); }
inline Int ceil_rat(const Rat& x) { return ceil_div(num(x), den(x)); }

// fractional reduction into [0, 1)
inline Rat mod1(const Rat& x) {
  Rat f = x - Rat(floor_rat(x));
  return f;
}

// floor(sqrt(n)) for n >= 0
inline Int isqrt_floor(const Int& n) {
  if (n < 0) throw internal_error("isqrt of negative value");
  return boost::multiprecision::sqrt(n);
}

inline std::string int_str(const Int& x) { return x.str(); }

// serialization helper; every quantity we emit fits comfortably
inline long long to_int64(const Int& x) {
  if (x < std::numeric_limits<long long>::min() ||
      x > std::numeric_limits<long long>::max())
    throw internal_error("integer out of 64-bit range for serialization");
  return x.convert_to<long long>();
}

// "3", "-1/2": lowest-terms rendering used in JSON and reports
inline std::string rat_str(const Rat& x) {
  if (den(x) == 1) return num(x).str();
  return num(x).str() + "/" + den(x).str();
}

// parses "p", "p/q" (q > 0 after normalization); throws invalid_input
Rat parse_rat(const std::string& s);

// comma-separated rationals, e.g. "3,1,0,0,0,0,0,0" or "1/2,..."
QVec parse_rat_csv(const std::string& s);

inline bool is_integral(const Rat& x) { return den(x) == 1; }

inline bool is_zero_vec(const QVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}
inline bool is_zero_vec(const IVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// lexicographic compare, used for the deterministic shell ordering
inline bool lex_less(const QVec& a, const QVec& b) {
  const size_t n = a.size() < b.size() ? a.size() : b.size();
  for (size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

inline bool lex_less(const IVec& a, const IVec& b) {
  const size_t n = a.size() < b.size() ? a.size() : b.size();
  for (size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

}  // namespace bll
