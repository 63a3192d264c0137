#include <doctest.h>

#include <cstdint>
#include <string>

#include "error.hpp"
#include "functor.hpp"
#include "hom.hpp"
#include "lattice.hpp"
#include "rmodule.hpp"
#include "theorems.hpp"

using namespace corrfun;

namespace {

std::uint64_t pow_u(std::uint64_t b, int e) {
  std::uint64_t out = 1;
  while (e-- > 0) out *= b;
  return out;
}

}  // namespace

TEST_SUITE("theorems") {

TEST_CASE("pair map verifier passes on the two chain lattices") {
  const Lattice t = named_lattice("chain1");
  const VerificationReport rep = verify_tau(t, t, 3);
  CHECK(rep.pass);
  CHECK(rep.witness.empty());
  // exhaustive part enumerates every correspondence between sets of size <= 2
  CHECK(rep.cases_exhaustive == 31);
  CHECK(rep.cases_random == 7 * 500);
  CHECK(rep.line() == "THEOREM tau PASS cases=" + std::to_string(rep.cases()));
}

TEST_CASE("pair map dimensions match the diamond lattice functor") {
  const Lattice t = named_lattice("chain1");
  const FunctorRep tens = tensor(lattice_functor(t, 3), lattice_functor(t, 3));
  const FunctorRep diamond = lattice_functor(named_lattice("diamond"), 3);
  for (int n = 0; n <= 3; ++n) {
    CHECK(tens.dim(n) == pow_u(4, n));
    CHECK(tens.dim(n) == diamond.dim(n));
  }
  const Morphism tau = tau_morphism(t, t, 3);
  for (int n = 0; n <= 3; ++n) {
    CHECK(tau.at(n).rows() == tau.at(n).cols());
    CHECK(rank(tau.at(n)) == tens.dim(n));
  }
}

TEST_CASE("pair map with a one point lattice is the identity permutation") {
  const Lattice t = named_lattice("chain2");
  const Lattice unit = named_lattice("chain0");
  const Morphism tau = tau_morphism(t, unit, 3);
  for (int n = 0; n <= 3; ++n) CHECK(tau.at(n).is_identity());
  const VerificationReport rep = verify_tau(t, unit, 3);
  CHECK(rep.pass);
}

TEST_CASE("pair map verifier passes on every small corpus pair") {
  const char* names[] = {"chain0", "chain1", "chain2", "chain3",
                         "chain4", "diamond"};
  for (const char* a : names) {
    for (const char* b : names) {
      const Lattice ta = named_lattice(a);
      const Lattice tb = named_lattice(b);
      if (ta.size() * tb.size() > 9) continue;
      const VerifyPolicy quick{2, 40, 0};
      const VerificationReport rep = verify_tau(ta, tb, 3, quick);
      CHECK_MESSAGE(rep.pass, rep.line());
    }
  }
}

TEST_CASE("representable tensor verifier passes for singleton ground sets") {
  const VerificationReport rep = verify_representable_tensor(1, 1, 3);
  CHECK_MESSAGE(rep.pass, rep.line());
  const FunctorRep pair = tensor(representable(1, 3), representable(1, 3));
  const FunctorRep whole = representable(2, 3);
  for (int n = 0; n <= 3; ++n) {
    CHECK(pair.dim(n) == pow_u(4, n));
    CHECK(pair.dim(n) == whole.dim(n));
  }
}

TEST_CASE("representable tensor verifier handles an empty factor") {
  const VerifyPolicy quick{2, 60, 0};
  const VerificationReport rep = verify_representable_tensor(0, 2, 3, quick);
  CHECK_MESSAGE(rep.pass, rep.line());
  CHECK_THROWS_AS((void)verify_representable_tensor(2, 2, 3), Error);
}

TEST_CASE("induced tensor verifier passes for regular modules on singletons") {
  const VerifyPolicy quick{2, 24, 0};
  const VerificationReport rep = verify_induced_tensor(
      1, regular_module(1), 1, regular_module(1), 3, quick);
  CHECK_MESSAGE(rep.pass, rep.line());
}

TEST_CASE("induced tensor verifier handles an empty ground set as a unit") {
  const VerifyPolicy quick{2, 24, 0};
  // the rank one module over the empty set tensors as a unit
  const RModule unit(0, 1, [](const Correspondence&) {
    Matrix m(1, 1);
    m.at(0, 0) = 1;
    return m;
  });
  const VerificationReport rep =
      verify_induced_tensor(0, unit, 1, regular_module(1), 3, quick);
  CHECK_MESSAGE(rep.pass, rep.line());
  const LFunctorData plain = l_functor(1, regular_module(1), 3);
  const FunctorRep tens = tensor(l_functor(0, unit, 3).rep, plain.rep);
  for (int n = 0; n <= 3; ++n) CHECK(tens.dim(n) == plain.rep.dim(n));
}

TEST_CASE("induced tensor verifier accepts a zero module") {
  const VerifyPolicy quick{2, 8, 0};
  const RModule zero(1, 0, [](const Correspondence&) { return Matrix(0, 0); });
  const VerificationReport rep =
      verify_induced_tensor(1, zero, 1, regular_module(1), 3, quick);
  CHECK_MESSAGE(rep.pass, rep.line());
}

TEST_CASE("adjunction verifier reports equal dimensions") {
  const FunctorRep fm = lattice_functor(named_lattice("chain1"), 3);
  const VerificationReport rep =
      verify_adjunction_dims(fm, representable(1, 3), fm);
  CHECK_MESSAGE(rep.pass, rep.line());
}

TEST_CASE("adjunction verifier rejects an unusable bound") {
  const FunctorRep r2 = representable(2, 3);
  CHECK_THROWS_AS((void)verify_adjunction_dims(r2, r2, r2), Error);
}

TEST_CASE("internal hom identities hold against a chain lattice functor") {
  const FunctorRep fm = lattice_functor(named_lattice("chain1"), 3);
  const VerificationReport rep = verify_internal_hom_identities(fm, 1);
  CHECK_MESSAGE(rep.pass, rep.line());
  // hom out of a singleton representable doubles the shift dimension
  const FunctorRep h = internal_hom(representable(1, 3), fm, 2);
  for (int n = 0; n <= 2; ++n) CHECK(h.dim(n) == pow_u(2, n + 1));
}

TEST_CASE("internal hom into the constant functor is trivial") {
  const FunctorRep c = constant_functor(3);
  const VerificationReport rep = verify_internal_hom_identities(c, 1);
  CHECK_MESSAGE(rep.pass, rep.line());
}

TEST_CASE("pairing round trips hold for randomly drawn data") {
  const VerificationReport rep = verify_pairing_roundtrips(3, 20);
  CHECK_MESSAGE(rep.pass, rep.line());
  CHECK(rep.cases() > 0);
}

TEST_CASE("foundation laws pass") {
  const VerifyPolicy quick{2, 24, 0};
  const VerificationReport rep = verify_foundations(3, quick);
  CHECK_MESSAGE(rep.pass, rep.line());
  CHECK(rep.cases_exhaustive > 8507);
}

TEST_CASE("a failing verification carries a witness") {
  // the two element antichain with a bottom and top breaks the powerset
  // dimension identity used by the representable tensor check, so force a
  // failure through the pair map on mismatched data instead: compare a chain
  // against itself under a tampered report to keep the checker honest
  VerificationReport rep;
  rep.id = "tau";
  rep.pass = false;
  rep.witness = "demo";
  rep.cases_exhaustive = 3;
  CHECK(rep.line() == "THEOREM tau FAIL cases=3 witness=demo");
  const std::string j = rep.json();
  CHECK(j.find("\"status\":\"fail\"") != std::string::npos);
  CHECK(j.find("\"witness\":\"demo\"") != std::string::npos);
}

TEST_CASE("report json carries stable keys") {
  const Lattice unit = named_lattice("chain0");
  const VerifyPolicy quick{2, 5, 0};
  const VerificationReport rep = verify_tau(unit, unit, 2, quick);
  CHECK(rep.pass);
  const std::string j = rep.json();
  CHECK(j.find("\"theorem\":\"tau\"") == 1);
  CHECK(j.find("\"status\":\"pass\"") != std::string::npos);
  CHECK(j.find("witness") == std::string::npos);
}

}  // TEST_SUITE
