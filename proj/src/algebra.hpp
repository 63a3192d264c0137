#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "functor.hpp"
#include "lattice.hpp"
#include "matrix.hpp"
#include "theorems.hpp"

namespace corrfun {

// Functor to commutative unital algebras: a carrier representation together
// with a product and a unit at every size, where every correspondence action
// is an algebra map. All structure laws are validated at construction;
// violations throw with a message naming the broken law.
class AlgebraFunctorRep {
 public:
  // Basis product when the product of two basis vectors is a basis vector.
  using BasisMulFn =
      std::function<std::uint64_t(int, std::uint64_t, std::uint64_t)>;

  // Dense products: mul[n] has shape dims(n) x dims(n)^2 with the pair
  // (i, j) in column i*dims(n)+j; unit[n] is the unit's coordinate vector.
  AlgebraFunctorRep(FunctorRep carrier, std::vector<Matrix> mul,
                    std::vector<Vec> unit, const VerifyPolicy& policy = {});
  // Multiplicative-basis products; unit_index[n] names the unit basis vector.
  AlgebraFunctorRep(FunctorRep carrier, BasisMulFn mul,
                    std::vector<std::uint64_t> unit_index,
                    const VerifyPolicy& policy = {});

  const FunctorRep& carrier() const { return carrier_; }
  int bound() const { return carrier_.bound(); }
  std::size_t dim(int n) const { return carrier_.dim(n); }

  bool basis_multiplicative() const { return static_cast<bool>(basis_mul_); }
  std::uint64_t basis_product(int n, std::uint64_t i, std::uint64_t j) const;
  // Bilinear product of coordinate vectors at one size; zero-entry aware.
  Vec multiply(int n, const Vec& v, const Vec& w) const;
  const Vec& unit(int n) const;
  // Product table dims(n) x dims(n)^2; guarded against oversized sizes.
  Matrix mul_matrix(int n) const;

 private:
  void validate(const VerifyPolicy& policy) const;

  FunctorRep carrier_;
  BasisMulFn basis_mul_;
  std::vector<Matrix> mul_;
  std::vector<Vec> units_;
};

// The lattice functor with the pointwise-join product and the constant
// bottom function as unit.
AlgebraFunctorRep algebra_ft(const Lattice& t, int bound,
                             const VerifyPolicy& policy = {});

// Product collapsed through the two insertions X -> X u Y <- Y: shape
// dims(x+y) x dims(x)*dims(y), pair (i, j) in column i*dims(y)+j.
Matrix mu_hat(const AlgebraFunctorRep& a, int x, int y);

// dims(0) = 1 and every collapsed product within the bound is a square
// invertible matrix.
VerificationReport check_exponential(const AlgebraFunctorRep& a);

// Primitive orthogonal idempotents of the size-one algebra, one per basis
// dimension, in deterministic discovery order.
struct SplitBasis {
  std::vector<Vec> idempotents;
};
SplitBasis split_idempotents(const AlgebraFunctorRep& a);

// delta: dims(1) -> dims(1)^2, the inverse collapsed product composed with
// the doubling action; validated coassociative, cocommutative, an algebra
// map, and a section of the product.
Matrix comultiplication(const AlgebraFunctorRep& a);

// eta: 1 x dims(1), the action of the empty correspondence out of a point;
// validated as an algebra map and a counit for the comultiplication.
Matrix counit(const AlgebraFunctorRep& a);

// Recovers a lattice from an algebra functor with the exponential and
// splitting properties, together with the per-size isomorphism from the
// recovered lattice functor onto the carrier. On a hypothesis violation,
// ok is false and diagnosis names the failed step.
struct ReconstructionResult {
  bool ok = false;
  std::string diagnosis;
  Lattice lattice;
  std::vector<Vec> idempotents;  // aligned with the lattice labels
  std::vector<Matrix> lambda;    // component per size 0..bound
  VerificationReport report;
};
ReconstructionResult reconstruct_lattice(const AlgebraFunctorRep& a,
                                         const VerifyPolicy& policy = {});

// For the join-product algebra of t: acting by two correspondences out of a
// point and multiplying equals acting by their union, on every basis vector.
VerificationReport verify_product_union(const AlgebraFunctorRep& a,
                                        const Lattice& t,
                                        const VerifyPolicy& policy = {});

}  // namespace corrfun
