#include <doctest.h>

#include <algorithm>
#include <vector>

#include "matrix.hpp"
#include "relations.hpp"
#include "rmodule.hpp"
#include "rng.hpp"

using namespace corrfun;

TEST_SUITE("rmodule") {

TEST_CASE("regular module acts by left composition") {
  const RModule r1 = regular_module(1);
  CHECK(r1.ground() == 1);
  CHECK(r1.dim() == 2);
  CHECK(module_sweep(r1, SweepPolicy{}).ok());

  const RModule r2 = regular_module(2);
  CHECK(r2.dim() == 16);
  CHECK(module_sweep(r2, SweepPolicy{8, 0, 0}).ok());

  // Left multiplication by the empty relation collapses onto the basis
  // vector of the empty relation.
  const Matrix& zero_action = r1.action(Correspondence(1, 1));
  CHECK(zero_action.at(0, 0) == scalar(1));
  CHECK(zero_action.at(0, 1) == scalar(1));
  CHECK(zero_action.at(1, 0) == scalar(0));
  CHECK(zero_action.at(1, 1) == scalar(0));
}

TEST_CASE("module rejects relations on the wrong ground set") {
  const RModule r1 = regular_module(1);
  CHECK_THROWS_AS((void)r1.action(Correspondence::identity(2)), Error);
}

TEST_CASE("induction to the same ground set keeps the dimension") {
  for (std::size_t e : {std::size_t{0}, std::size_t{1}, std::size_t{2}}) {
    const RModule w = regular_module(e);
    const InducedModule ind = induced_module(w, e);
    CHECK(ind.module.dim() == w.dim());
    CHECK(ind.module.ground() == e);
  }
}

TEST_CASE("induced dimension is independent of relator order") {
  const RModule w = regular_module(1);
  for (std::size_t f : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
    const std::size_t ambient = induced_ambient_dim(w, f);
    std::vector<Vec> relators = induced_relators(w, f);
    const QuotientPresentation base =
        quotient_presentation(ambient, relators);
    Rng rng(17 + f);
    for (int trial = 0; trial < 3; ++trial) {
      for (std::size_t i = relators.size(); i > 1; --i) {
        std::swap(relators[i - 1], relators[rng.below(i)]);
      }
      const QuotientPresentation shuffled =
          quotient_presentation(ambient, relators);
      CHECK(shuffled.dim() == base.dim());
      // The relator span has a unique reduced basis, so the whole
      // presentation is order independent.
      CHECK(shuffled.projection == base.projection);
      CHECK(shuffled.section == base.section);
    }
  }
}

TEST_CASE("descended induced action is a module action") {
  const RModule w = regular_module(1);
  const InducedModule ind = induced_module(w, 2);
  CHECK(module_sweep(ind.module, SweepPolicy{8, 0, 0}).ok());
}

TEST_CASE("ambient induction action is functorial") {
  const RModule w = regular_module(1);
  Rng rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t z = rng.below(3) + 1;
    const std::size_t y = rng.below(3) + 1;
    const std::size_t x = rng.below(3) + 1;
    const Correspondence v = random_correspondence(rng, z, y);
    const Correspondence u = random_correspondence(rng, y, x);
    CHECK(induced_ambient_action(w, compose(v, u)) ==
          induced_ambient_action(w, v) * induced_ambient_action(w, u));
  }
}

TEST_CASE("inducing the regular module gives representable dimensions") {
  const LFunctorData data = l_functor(1, regular_module(1), 3);
  CHECK(data.rep.dim(0) == 1);
  CHECK(data.rep.dim(1) == 2);
  CHECK(data.rep.dim(2) == 4);
  CHECK(data.rep.dim(3) == 8);
  CHECK(functoriality_sweep(data.rep, SweepPolicy{8, 25, 9}).ok());
}

TEST_CASE("inducing the trivial module from the empty set gives constants") {
  const LFunctorData data = l_functor(0, regular_module(0), 3);
  CHECK(data.rep.same_dims(constant_functor(3)));
  CorrespondenceRange range(2, 3);
  while (!range.done()) {
    const Matrix& a = data.rep.action(range.next());
    CHECK(a.rows() == 1);
    CHECK(a.at(0, 0) == scalar(1));
  }
}

TEST_CASE("presentations compose to the identity on the quotient") {
  const LFunctorData data = l_functor(1, regular_module(1), 3);
  for (int n = 0; n <= 3; ++n) {
    const QuotientPresentation& p = data.presentations[n];
    CHECK((p.projection * p.section).is_identity());
  }
}

}  // TEST_SUITE
