#pragma once

#include <vector>

#include "functor.hpp"
#include "matrix.hpp"

namespace corrfun {

// Basis of the space of natural transformations between two truncated
// functors: all solutions of the linear system
//   target-action(u) psi_x = psi_y source-action(u)
// over every correspondence u within the common bound. `exact` marks the
// cases where the truncated computation provably equals the full Hom
// space; otherwise the result is an upper bound at the truncation.
struct HomBasis {
  FunctorRep source, target;
  std::vector<Morphism> basis;
  bool exact = false;

  std::size_t dim() const { return basis.size(); }
};

HomBasis hom_solver(const FunctorRep& m, const FunctorRep& mp);

// Bilinear pairing left(X) x right(Y) -> target(X u Y): one matrix per size
// pair (x,y) with x+y <= bound, of shape
//   dims_target(x+y) x (dims_left(x) * dims_right(y)).
struct Pairing {
  FunctorRep left, right, target;
  int bound = -1;
  std::vector<Matrix> components;  // slot (x,y) at x*(bound+1)+y

  const Matrix& at(int x, int y) const;
  Matrix& at(int x, int y);
};

Pairing zero_pairing(const FunctorRep& left, const FunctorRep& right,
                     const FunctorRep& target);

// Restriction of a morphism out of tensor(left,right) along the two
// canonical insertions X -> X u Y <- Y.
Pairing pairing_from_morphism(const Morphism& psi, const FunctorRep& left,
                              const FunctorRep& right);

// Diagonal collapse: component at X = target-action(concat(id,id)) o
// eta_{X,X}; defined for sizes with 2x <= bound.
Morphism morphism_from_pairing(const Pairing& eta);

// Binaturality: for u in C(X',X), v in C(Y',Y),
//   eta_{x',y'} o (left(u) (x) right(v)) = target(block_diag(u,v)) o eta_{x,y}.
SweepResult binaturality_sweep(const Pairing& eta, const SweepPolicy& policy);

// Basis of all bilinear pairings: solutions of the full binaturality system.
std::vector<Pairing> pairing_solver(const FunctorRep& left,
                                    const FunctorRep& right,
                                    const FunctorRep& target);

// The functor E -> Hom(m, shift(n, |E|)), with action by post-composition
// with shift morphisms, expressed in the per-evaluation solver bases.
// Throws Errc::bound when the truncation is too small to express an action
// unambiguously.
FunctorRep internal_hom(const FunctorRep& m, const FunctorRep& n,
                        int out_bound);

}  // namespace corrfun
