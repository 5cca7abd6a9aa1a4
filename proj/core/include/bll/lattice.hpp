#pragma once
// Integral lattices: a basis-free Gram representation plus the constructions
// everything downstream needs. Sign convention: ADE constructors are negative
// definite, so roots have norm -2. The rank-8 chain constructor additionally
// carries a rational coordinate chart onto the standard even-coordinate model
// of R^8 (all entries integral or all half-integral, coordinate sum even);
// half-integers are handled by doubling internally.

#include "bll/intmat.hpp"

#include <map>
#include <optional>
#include <string>

namespace bll {

class Lattice {
 public:
  Lattice() = default;  // rank 0, det 1
  // validates symmetry; degeneracy is allowed here and rejected by the
  // operations that need an invertible form
  explicit Lattice(IMat gram, std::string label = "");

  int rank() const { return gram_.rows; }
  const IMat& gram() const { return gram_; }
  const std::string& label() const { return label_; }
  const Int& det() const { return det_; }
  bool nondegenerate() const { return det_ != 0; }
  bool is_even() const { return even_; }

 private:
  IMat gram_;
  std::string label_;
  Int det_ = 1;
  bool even_ = true;
};

// standard constructors; A needs n >= 1, D needs n >= 2, rank1 needs m != 0
Lattice make_U();
Lattice make_A(int n);
Lattice make_D(int n);
Lattice make_E6();
Lattice make_E7();
Lattice make_E8();
Lattice make_rank1(const Int& m);
// names: "U", "A<n>", "D<n>", "E6", "E7", "E8", "rank1(<m>)"
Lattice make_named(const std::string& name);

Lattice direct_sum(const std::vector<Lattice>& parts);

Int inner(const Lattice& L, const IVec& u, const IVec& v);
Rat inner(const Lattice& L, const QVec& u, const QVec& v);

// gcd of basis coordinates is 1; basis-independent. Throws on the zero vector.
bool is_primitive(const Lattice& L, const IVec& v);

// A sublattice given by basis columns in ambient coordinates, with the
// induced form. Kernel-based constructions are primitive in the ambient
// lattice automatically.
struct EmbeddedSublattice {
  Lattice ambient;
  IMat basis;  // ambient.rank x sub.rank
  IMat gram;   // basis^T * ambient.gram * basis
  bool degenerate = false;

  int rank() const { return basis.cols; }
  Lattice as_lattice(std::string label = "") const;  // rejects degenerate
};

// {x in L : (x, v) = 0 for all v}; may be degenerate or rank 0
EmbeddedSublattice orthogonal_complement(const Lattice& L,
                                         const std::vector<IVec>& vs);

// L^\vee / L with its fractional quadratic form. Generators are dual vectors
// in basis coordinates; group elements are tuples (a_1..a_k) taken modulo the
// invariant factors. q values live in [0, 1) and halve the convention of the
// standard references: q(lambda) = (lambda, lambda)/2 mod 1.
struct DiscriminantData {
  int rank = 0;                        // ambient lattice rank
  std::vector<Int> invariant_factors;  // d_1 | d_2 | ..., all > 1
  std::vector<QVec> generators;        // generators[i] has order d_i
  Int order;                           // product of factors = |det|
  std::map<IVec, Rat> q_values;        // element tuple -> q in [0,1)

  QVec lift(const IVec& elem) const;               // representative in L^vee
  Rat q_of(const IVec& elem) const;                // (lift, lift)/2 mod 1
  Int order_of(const IVec& elem) const;            // element order in the group
  IVec negate(const IVec& elem) const;             // -elem mod factors
  std::vector<IVec> elements() const;              // all tuples, lex order
};

// requires nondegenerate; q_values materialized when the group order is small
DiscriminantData discriminant(const Lattice& L);

// exact symmetric diagonalization; requires nondegenerate
Signature signature(const Lattice& L);

// Chart of the rank-8 chain lattice: columns are the chain basis written in
// even-coordinate model coordinates, doubled to stay integral.
const IMat& e8_chart_doubled();

// structure test: all integral or all half-integral, coordinate sum even;
// returns an empty string when x is a chart point, else the failed test
std::string e8_chart_reject_reason(const QVec& x);

IVec e8_chart_to_basis(const QVec& x);  // throws invalid_input with the reason
QVec e8_basis_to_chart(const IVec& b);

// canonical serialization used by the CLI and the cache: {rank, gram, label}
std::string lattice_json(const Lattice& L);

}  // namespace bll
