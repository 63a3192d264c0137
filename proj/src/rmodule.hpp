#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "functor.hpp"
#include "matrix.hpp"
#include "relations.hpp"

namespace corrfun {

// Module over the algebra of relations on a fixed ground set E: a finite
// dimensional space with a multiplicative, identity preserving action of
// every relation in C(E,E). Handles are cheap shared views; actions are
// memoized.
class RModule {
 public:
  using ActionFn = std::function<Matrix(const Correspondence&)>;

  RModule() = default;
  RModule(std::size_t ground, std::size_t dim, ActionFn action);

  std::size_t ground() const;
  std::size_t dim() const;

  // r must lie in C(E,E).
  const Matrix& action(const Correspondence& r) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// Left multiplication on the basis C(E,E) of the relation algebra itself.
RModule regular_module(std::size_t e);

// action(identity) = id and action(r o s) = action(r) action(s).
SweepResult module_sweep(const RModule& w, const SweepPolicy& policy);

// Ambient basis of the induction of W from E to F: pairs (a, w) with
// a in C(F,E) and w a basis index of W, at position a.index()*dim(W)+w.
std::size_t induced_ambient_dim(const RModule& w, std::size_t f);

// Relators spanning the induction identifications:
//   (a o r, w) - sum_v action_W(r)[v][w] (a, v)
// over a in C(F,E), r in C(E,E), w in basis(W), in that lexicographic order.
std::vector<Vec> induced_relators(const RModule& w, std::size_t f);

// Induction ambient / relators with the descended action of C(F,F) by left
// composition on the first coordinate.
struct InducedModule {
  RModule module;
  QuotientPresentation presentation;
  std::size_t ambient_dim = 0;
};
InducedModule induced_module(const RModule& w, std::size_t f);

// Left composition on the ambient induction basis: (a, w) to (u o a, w).
// u runs C(X,E)-indexed ambient spaces into C(Y,E)-indexed ones.
Matrix induced_ambient_action(const RModule& w, const Correspondence& u);

// The functor X -> W induced to X, with per-size presentations retained so
// callers can move between ambient and quotient coordinates.
struct LFunctorData {
  FunctorRep rep;
  std::vector<QuotientPresentation> presentations;
  std::vector<std::size_t> ambient_dims;
};
LFunctorData l_functor(std::size_t e, const RModule& w, int bound);

}  // namespace corrfun
