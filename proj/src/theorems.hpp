#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "functor.hpp"
#include "hom.hpp"
#include "lattice.hpp"
#include "rmodule.hpp"

namespace corrfun {

// Outcome of one machine-checked isomorphism or law suite. Failures always
// carry a replayable witness.
struct VerificationReport {
  std::string id;
  std::string parameters;
  std::uint64_t cases_exhaustive = 0;
  std::uint64_t cases_random = 0;
  bool pass = false;
  std::string witness;

  std::uint64_t cases() const { return cases_exhaustive + cases_random; }
  std::string line() const;  // THEOREM <id> PASS|FAIL cases=<n> [witness=..]
  std::string json() const;  // one object, stable key order
};

// Per-verifier sweep policy: exhaustive enumeration whenever both sets have
// size <= exhaustive_size, otherwise `samples` seeded draws.
struct VerifyPolicy {
  int exhaustive_size = 2;
  int samples = 500;
  std::uint64_t seed = 0;
};

// Comparison morphism tensor(F_T, F_T') -> F_{T x T'} sending a pair of
// functions to the componentwise pair function. A per-size basis bijection.
Morphism tau_morphism(const Lattice& t, const Lattice& tp, int bound);

// tau is a natural basis bijection.
VerificationReport verify_tau(const Lattice& t, const Lattice& tp, int bound,
                              const VerifyPolicy& policy = {});

// tensor of representables vs the representable of the disjoint union:
// dims identity, tau on the powerset lattices, and the pair-of-
// correspondences basis identification.
VerificationReport verify_representable_tensor(std::size_t e, std::size_t ep,
                                               int bound,
                                               const VerifyPolicy& policy = {});

// Induced-module tensor identity: explicit inverse morphisms between the
// tensor of the two induction functors and the induction functor of the
// tensor of the induced modules over the disjoint union, with the diagonal
// module structure; checks both composites are identities plus naturality.
VerificationReport verify_induced_tensor(std::size_t e, const RModule& v,
                                         std::size_t f, const RModule& w,
                                         int bound,
                                         const VerifyPolicy& policy = {});

// Tensor-hom adjunction, dimension form: dim Hom(tensor(mp,m), mpp) equals
// dim Hom(m, internal_hom(mp,mpp)); also maps a basis through the
// curried-morphism construction and checks the images are independent
// natural solutions.
VerificationReport verify_adjunction_dims(const FunctorRep& m,
                                          const FunctorRep& mp,
                                          const FunctorRep& mpp,
                                          const VerifyPolicy& policy = {});

// Internal hom identities: (i) from a representable it is the shift,
// (ii) from the constant functor it is the target itself, (iii) into the
// constant functor it is constant with the dual dimension of n(0).
VerificationReport verify_internal_hom_identities(const FunctorRep& n,
                                                  std::size_t e,
                                                  const VerifyPolicy& policy =
                                                      {});

// Morphism/pairing equivalence round trips on random elements over the
// pool {constant, lattice functor of the two element chain, representable(1)}.
VerificationReport verify_pairing_roundtrips(int bound, int count,
                                             const VerifyPolicy& policy = {});

// Category and functor foundations: relation composition laws, identity
// laws, functoriality of the standard constructions, tensor unit and
// commutativity and associativity identifications.
VerificationReport verify_foundations(int bound,
                                      const VerifyPolicy& policy = {});

}  // namespace corrfun
