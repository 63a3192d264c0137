#include <doctest.h>

#include <vector>

#include "functor.hpp"
#include "hom.hpp"
#include "lattice.hpp"
#include "matrix.hpp"
#include "relations.hpp"
#include "rng.hpp"

using namespace corrfun;

namespace {

// Random rational combination of a hom basis.
Morphism random_combination(const HomBasis& hb, Rng& rng) {
  Morphism out{hb.source, hb.target, {}};
  for (int n = 0; n <= hb.source.bound(); ++n) {
    out.components.push_back(Matrix(hb.target.dim(n), hb.source.dim(n)));
  }
  for (const Morphism& basis : hb.basis) {
    const Scalar c = scalar(static_cast<long>(rng.below(7)) - 3,
                            static_cast<long>(rng.below(2)) + 1);
    for (int n = 0; n <= hb.source.bound(); ++n) {
      out.components[n] = out.components[n] + basis.at(n).scaled(c);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("hom") {

TEST_CASE("hom between constants is one dimensional") {
  const HomBasis hb = hom_solver(constant_functor(3), constant_functor(3));
  CHECK(hb.dim() == 1);
  CHECK(hb.exact);
  for (int n = 0; n <= 3; ++n) {
    CHECK(hb.basis[0].at(n).rows() == 1);
    CHECK(hb.basis[0].at(n).cols() == 1);
  }
  // Canonical scaling: the first nonzero coordinate is 1.
  CHECK(hb.basis[0].at(0).at(0, 0) == scalar(1));
}

TEST_CASE("hom into the zero functor vanishes") {
  CHECK(hom_solver(lattice_functor(named_lattice("chain1"), 2),
                   zero_functor(2))
            .dim() == 0);
  CHECK(hom_solver(zero_functor(2), constant_functor(2)).dim() == 0);
}

TEST_CASE("hom from a representable has the evaluation dimension") {
  const FunctorRep f = lattice_functor(named_lattice("chain2"), 3);
  // Morphisms from the functor represented by a one point set correspond
  // to elements of the evaluation at one point.
  const HomBasis hb1 = hom_solver(representable(1, 3), f);
  CHECK(hb1.dim() == f.dim(1));
  CHECK(hb1.exact);
  for (const Morphism& psi : hb1.basis) {
    CHECK(naturality_sweep(psi, SweepPolicy{8, 25, 3}).ok());
  }

  const FunctorRep g = lattice_functor(named_lattice("m3"), 2);
  const HomBasis hb2 = hom_solver(representable(2, 2), g);
  CHECK(hb2.dim() == g.dim(2));
  CHECK(hb2.exact);

  const HomBasis hb0 = hom_solver(representable(0, 2), g);
  CHECK(hb0.dim() == g.dim(0));
}

TEST_CASE("hom from the constant functor picks invariant vectors") {
  const HomBasis hb =
      hom_solver(constant_functor(3),
                 lattice_functor(named_lattice("chain1"), 3));
  CHECK(hb.dim() == 1);
  CHECK(hb.exact);
  CHECK(naturality_sweep(hb.basis[0], SweepPolicy{8, 20, 1}).ok());
}

TEST_CASE("solver output is deterministic") {
  const FunctorRep f = lattice_functor(named_lattice("chain1"), 2);
  const HomBasis a = hom_solver(f, f);
  const HomBasis b = hom_solver(f, f);
  REQUIRE(a.dim() == b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (int n = 0; n <= 2; ++n) {
      CHECK(a.basis[i].at(n) == b.basis[i].at(n));
    }
  }
}

TEST_CASE("tensor source agrees with the product lattice source") {
  const FunctorRep f1 = lattice_functor(named_lattice("chain1"), 3);
  const FunctorRep prod = lattice_functor(named_lattice("diamond"), 3);
  const HomBasis via_tensor = hom_solver(tensor(f1, f1), f1);
  const HomBasis via_product = hom_solver(prod, f1);
  CHECK(via_tensor.exact);
  CHECK(via_product.exact);
  CHECK(via_tensor.dim() == via_product.dim());
}

TEST_CASE("pairing of the identity morphism restricts along insertions") {
  const FunctorRep k = constant_functor(2);
  const Morphism id = identity_morphism(tensor(k, k));
  const Pairing eta = pairing_from_morphism(id, k, k);
  for (int x = 0; x <= 2; ++x) {
    for (int y = 0; x + y <= 2; ++y) {
      CHECK(eta.at(x, y).rows() == 1);
      CHECK(eta.at(x, y).cols() == 1);
      CHECK(eta.at(x, y).at(0, 0) == scalar(1));
    }
  }
  CHECK(binaturality_sweep(eta, SweepPolicy{}).ok());
}

TEST_CASE("pairings from morphisms are binatural") {
  const FunctorRep left = lattice_functor(named_lattice("chain1"), 2);
  const FunctorRep right = constant_functor(2);
  const HomBasis hb = hom_solver(tensor(left, right), left);
  REQUIRE(hb.dim() >= 1);
  Rng rng(23);
  for (int trial = 0; trial < 3; ++trial) {
    const Morphism psi = random_combination(hb, rng);
    const Pairing eta = pairing_from_morphism(psi, left, right);
    CHECK(binaturality_sweep(eta, SweepPolicy{8, 0, 0}).ok());
  }
}

TEST_CASE("round trip morphism to pairing to morphism") {
  const FunctorRep left = lattice_functor(named_lattice("chain1"), 3);
  const FunctorRep right = constant_functor(3);
  const HomBasis hb = hom_solver(tensor(left, right), left);
  Rng rng(41);
  for (int trial = 0; trial < 3; ++trial) {
    const Morphism psi = random_combination(hb, rng);
    const Morphism back =
        morphism_from_pairing(pairing_from_morphism(psi, left, right));
    for (int n = 0; n <= 1; ++n) {
      CHECK(back.at(n) == psi.at(n));
    }
  }
}

TEST_CASE("round trip pairing to morphism to pairing") {
  const FunctorRep k = constant_functor(2);
  const FunctorRep target = lattice_functor(named_lattice("chain1"), 2);
  const std::vector<Pairing> basis = pairing_solver(k, k, target);
  CHECK(basis.size() == 1);
  for (const Pairing& eta : basis) {
    REQUIRE(binaturality_sweep(eta, SweepPolicy{}).ok());
    const Morphism collapsed = morphism_from_pairing(eta);
    const Pairing back = pairing_from_morphism(collapsed, k, k);
    for (int x = 0; x <= back.bound; ++x) {
      for (int y = 0; x + y <= back.bound; ++y) {
        CHECK(back.at(x, y) == eta.at(x, y));
      }
    }
  }
}

TEST_CASE("zero pairing collapses to the zero morphism") {
  const FunctorRep k = constant_functor(2);
  const Pairing zero = zero_pairing(k, k, k);
  CHECK(binaturality_sweep(zero, SweepPolicy{}).ok());
  const Morphism m = morphism_from_pairing(zero);
  for (int n = 0; n <= m.bound(); ++n) CHECK(m.at(n).is_zero());
}

TEST_CASE("binaturality sweep reports violations") {
  const FunctorRep k = constant_functor(1);
  Pairing eta = zero_pairing(k, k, k);
  eta.at(0, 0).at(0, 0) = scalar(1);
  // Leaving the (0,1) component zero breaks the square against the empty
  // correspondence into the one point set.
  const SweepResult sweep = binaturality_sweep(eta, SweepPolicy{});
  CHECK(!sweep.ok());
}

TEST_CASE("internal hom from the constant functor has the target dims") {
  const FunctorRep f = lattice_functor(named_lattice("chain1"), 3);
  const FunctorRep h = internal_hom(constant_functor(3), f, 3);
  for (int e = 0; e <= 3; ++e) CHECK(h.dim(e) == f.dim(e));
  CHECK(functoriality_sweep(h, SweepPolicy{8, 6, 2}).ok());
}

TEST_CASE("internal hom from a representable has shift dims") {
  const FunctorRep f = lattice_functor(named_lattice("chain1"), 3);
  const FunctorRep h = internal_hom(representable(1, 3), f, 2);
  const FunctorRep s = shift(f, 1);
  for (int e = 0; e <= 2; ++e) CHECK(h.dim(e) == s.dim(e));
  CHECK(functoriality_sweep(h, SweepPolicy{8, 6, 4}).ok());
}

TEST_CASE("internal hom into the constant functor is constant") {
  const FunctorRep f = lattice_functor(named_lattice("chain1"), 3);
  const FunctorRep h = internal_hom(f, constant_functor(3), 3);
  for (int e = 0; e <= 3; ++e) CHECK(h.dim(e) == f.dim(0));
  CorrespondenceRange range(2, 3);
  while (!range.done()) {
    CHECK(h.action(range.next()).is_identity());
  }
}

}  // TEST_SUITE
