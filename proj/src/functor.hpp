#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "matrix.hpp"
#include "relations.hpp"
#include "rng.hpp"

namespace corrfun {

// Truncated representation of a correspondence functor: dimensions, basis
// labels and the action of every correspondence between sets of size at
// most the bound. Values are cheap shared handles; the action cache is
// shared and internally synchronized.
class FunctorRep {
 public:
  // action(u) has shape dims(|target|) x dims(|source|).
  using ActionFn = std::function<Matrix(const Correspondence&)>;
  // Basis-to-basis image when every action is a basis map.
  using BasisFn =
      std::function<std::uint64_t(const Correspondence&, std::uint64_t)>;

  FunctorRep() = default;
  FunctorRep(int bound, std::vector<std::size_t> dims,
             std::vector<std::vector<std::string>> labels, ActionFn action,
             BasisFn basis_action = nullptr,
             std::optional<int> exactness_degree = std::nullopt);

  int bound() const;
  std::size_t dim(int n) const;
  const std::string& label(int n, std::size_t i) const;

  // Memoized action matrix; both sides of u must be within the bound.
  const Matrix& action(const Correspondence& u) const;

  bool basis_functional() const;
  std::uint64_t basis_image(const Correspondence& u, std::uint64_t i) const;

  // Hom computations out of this rep are exact at truncation bounds >= this
  // degree (set for representable-like reps, absent otherwise).
  std::optional<int> exactness_degree() const;

  // View of the same functor at a smaller bound (shares the action).
  FunctorRep truncated(int bound) const;

  bool same_dims(const FunctorRep& o) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

FunctorRep constant_functor(int bound);
FunctorRep zero_functor(int bound);

// k-linear span of correspondences into a fixed set of size e, with the
// post-composition action; basis ordered by correspondence index.
FunctorRep representable(std::size_t e, int bound);

// F_T: functions X -> T with (u phi)(y) = join of phi(x) over (y,x) in u,
// empty join = bottom. Basis = functions in lexicographic order.
FunctorRep lattice_functor(const Lattice& t, int bound);

FunctorRep tensor(const FunctorRep& m, const FunctorRep& mp);

// M_E: X maps to M(X disjoint-union E); bound drops by |e|.
FunctorRep shift(const FunctorRep& m, std::size_t e);

// Natural transformation candidate; components per size 0..bound.
struct Morphism {
  FunctorRep source, target;
  std::vector<Matrix> components;

  int bound() const { return static_cast<int>(components.size()) - 1; }
  const Matrix& at(int n) const { return components[n]; }
};

Morphism identity_morphism(const FunctorRep& m);
Morphism compose(const Morphism& g, const Morphism& f);

// M_V: shift(M,E) -> shift(M,F) for v in C(F,E), truncated to the common
// usable bound.
Morphism shift_morphism(const FunctorRep& m, const Correspondence& v);

// F_f: F_S -> F_T on basis, phi maps to f o phi.
Morphism lattice_functor_morphism(const JoinMorphism& f, int bound);

// Sweep policy shared by the exhaustive/randomized verifiers: enumerate
// everything when each correspondence has at most 2^exhaustive_bits
// choices, otherwise draw the given number of samples.
struct SweepPolicy {
  int exhaustive_bits = 6;
  int samples = 200;
  std::uint64_t seed = 0;
};

struct SweepResult {
  std::uint64_t exhaustive = 0, sampled = 0;
  std::optional<std::string> witness;

  bool ok() const { return !witness.has_value(); }
  void merge(const SweepResult& o);
};

Correspondence random_correspondence(Rng& rng, std::size_t target,
                                     std::size_t source);

// action(identity) = identity and action(v o u) = action(v) action(u)
// over all size triples within the bound.
SweepResult functoriality_sweep(const FunctorRep& m, const SweepPolicy& policy);

// target-action(u) psi_x = psi_y source-action(u) over sizes within bound.
SweepResult naturality_sweep(const Morphism& psi, const SweepPolicy& policy);

}  // namespace corrfun
