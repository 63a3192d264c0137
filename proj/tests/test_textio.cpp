#include <doctest.h>

#include <string>

#include "algebra.hpp"
#include "error.hpp"
#include "lattice.hpp"
#include "matrix.hpp"
#include "relations.hpp"
#include "textio.hpp"

using namespace corrfun;

namespace {

Errc code_of(const std::function<void()>& run) {
  try {
    run();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::internal;
}

// Function algebra of the two-element chain written out longhand. The
// listed actions generate every correspondence between sets of size <= 2:
// the two empty-set maps, an insertion, a projection, the fold, the
// doubling map, the swap and one staircase.
const char* kChainAlgebra = R"(algebra
dims 1 2 4
unit 0
1
unit 1
1 0
unit 2
1 0 0 0
mul 0
1
mul 1
1 0 0 0
0 1 1 1
mul 2
1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 1 0 0 1 1 0 0 0 0 0 0 0 0 0 0
0 0 1 0 0 0 0 0 1 0 1 0 0 0 0 0
0 0 0 1 0 0 1 1 0 1 0 1 1 1 1 1

# collapse to the empty set
action
corr 0 1
1 1

# expand from the empty set
action
corr 1 0

1
0

# insertion of the point as element 0
action
corr 2 1
1
0
1 0
0 0
0 1
0 0

# projection onto element 0
action
corr 1 2
10
1 1 0 0
0 0 1 1

# fold both elements onto the point
action
corr 1 2
11
1 0 0 0
0 1 1 1

# doubling map
action
corr 2 1
1
1
1 0
0 0
0 0
0 1

# swap
action
corr 2 2
01
10
1 0 0 0
0 0 1 0
0 1 0 0
0 0 0 1

# staircase
action
corr 2 2
11
10
1 0 0 0
0 0 0 0
0 1 0 0
0 0 1 1
)";

}  // namespace

TEST_SUITE("textio") {

TEST_CASE("correspondence text round trips") {
  Correspondence u(2, 3);
  u.set(0, 1);
  u.set(1, 0);
  u.set(1, 2);
  CHECK(parse_correspondence_text(u.to_text()) == u);
  CHECK(parse_correspondence_text("corr 0 0\n") == Correspondence(0, 0));
  CHECK(parse_correspondence_text("corr 2 0\n\n\n") == Correspondence(2, 0));
}

TEST_CASE("correspondence parse errors carry line numbers") {
  try {
    parse_correspondence_text("corr 2 2\n10\n1\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK(code_of([] { parse_correspondence_text("corr 1 1\n2\n"); }) ==
        Errc::parse);
  CHECK(code_of([] { parse_correspondence_text("grid 1 1\n1\n"); }) ==
        Errc::parse);
  CHECK(code_of([] {
          parse_correspondence_text("corr 1 1\n1\nleftover\n");
        }) == Errc::parse);
}

TEST_CASE("lattice text round trips through covers") {
  for (const std::string& name : lattice_corpus_names()) {
    const Lattice t = named_lattice(name);
    CHECK(parse_lattice_text(t.to_text()) == t);
  }
}

TEST_CASE("lattice parse rejects bad input") {
  CHECK(code_of([] { parse_lattice_text("lattice\n"); }) == Errc::parse);
  CHECK(code_of([] { parse_lattice_text("lattice 2\ncover 0 5\n"); }) ==
        Errc::parse);
  CHECK(code_of([] { parse_lattice_text("lattice 2\nedge 0 1\n"); }) ==
        Errc::parse);
  // two maximal elements: a poset that is not a lattice
  CHECK(code_of([] {
          parse_lattice_text("lattice 3\ncover 0 1\ncover 0 2\n");
        }) == Errc::not_a_lattice);
}

TEST_CASE("algebra file matches the built in function algebra") {
  const AlgebraFunctorRep parsed = parse_algebra_text(kChainAlgebra);
  const AlgebraFunctorRep built = algebra_ft(named_lattice("chain1"), 2);
  for (int n = 0; n <= 2; ++n) {
    CHECK(parsed.dim(n) == built.dim(n));
    CHECK(parsed.unit(n) == built.unit(n));
    CHECK(parsed.mul_matrix(n) == built.mul_matrix(n));
  }
  CorrespondenceRange range(2, 2);
  while (!range.done()) {
    const Correspondence u = range.next();
    CHECK(parsed.carrier().action(u) == built.carrier().action(u));
  }
  CHECK(check_exponential(parsed).pass);
  const ReconstructionResult res = reconstruct_lattice(parsed);
  CHECK(res.ok);
  CHECK(res.lattice == named_lattice("chain1"));
}

TEST_CASE("algebra files that do not generate all actions are rejected") {
  // drop every action block: identities alone generate nothing new
  std::string text(kChainAlgebra);
  text = text.substr(0, text.find("# collapse"));
  CHECK(code_of([&] { parse_algebra_text(text); }) == Errc::parse);
}

TEST_CASE("inconsistent generated actions are rejected") {
  // swap acting as identity contradicts the collapse action
  std::string text(kChainAlgebra);
  const std::string swap_block =
      "action\ncorr 2 2\n01\n10\n"
      "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n";
  CHECK(code_of([&] { parse_algebra_text(text + swap_block); }) ==
        Errc::parse);
}

TEST_CASE("named and file inputs resolve") {
  CHECK(resolve_lattice_input("diamond") == named_lattice("diamond"));
  CHECK(code_of([] { resolve_lattice_input("/nonexistent/lat"); }) ==
        Errc::io);
  const AlgebraFunctorRep a = resolve_algebra_input("ft:chain2", 2);
  CHECK(a.dim(2) == 9);
  CHECK(code_of([] { resolve_algebra_input("/nonexistent/alg", 2); }) ==
        Errc::io);
}

}  // TEST_SUITE
