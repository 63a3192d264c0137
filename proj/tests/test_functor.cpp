#include <doctest.h>

#include <string>
#include <vector>

#include "functor.hpp"
#include "lattice.hpp"
#include "matrix.hpp"
#include "relations.hpp"

using namespace corrfun;

namespace {

// Matrix-action clone of a rep, dropping the basis fast path so tests can
// exercise both code paths.
FunctorRep matrix_path(const FunctorRep& m) {
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> labels;
  for (int n = 0; n <= m.bound(); ++n) {
    dims.push_back(m.dim(n));
    std::vector<std::string> row;
    for (std::size_t i = 0; i < m.dim(n); ++i) row.push_back(m.label(n, i));
    labels.push_back(std::move(row));
  }
  return FunctorRep(m.bound(), dims, labels,
                    [m](const Correspondence& u) { return m.action(u); });
}

}  // namespace

TEST_SUITE("functor") {

TEST_CASE("lattice functor dimensions are |T|^n") {
  const FunctorRep diamond = lattice_functor(named_lattice("diamond"), 2);
  CHECK(diamond.dim(0) == 1);
  CHECK(diamond.dim(1) == 4);
  CHECK(diamond.dim(2) == 16);

  const FunctorRep chain2 = lattice_functor(named_lattice("chain2"), 3);
  CHECK(chain2.dim(0) == 1);
  CHECK(chain2.dim(1) == 3);
  CHECK(chain2.dim(2) == 9);
  CHECK(chain2.dim(3) == 27);
}

TEST_CASE("constant functor is one dimensional with identity actions") {
  const FunctorRep k = constant_functor(3);
  for (int n = 0; n <= 3; ++n) CHECK(k.dim(n) == 1);
  CorrespondenceRange range(2, 3);
  while (!range.done()) {
    const Matrix& a = k.action(range.next());
    CHECK(a.rows() == 1);
    CHECK(a.cols() == 1);
    CHECK(a.at(0, 0) == scalar(1));
  }
  const SweepResult sweep = functoriality_sweep(k, SweepPolicy{});
  CHECK(sweep.ok());
}

TEST_CASE("zero functor has empty evaluations") {
  const FunctorRep z = zero_functor(3);
  for (int n = 0; n <= 3; ++n) CHECK(z.dim(n) == 0);
  CHECK(z.action(Correspondence::full(2, 2)).rows() == 0);
  CHECK(functoriality_sweep(z, SweepPolicy{}).ok());
}

TEST_CASE("representable functor dimensions and composition action") {
  const FunctorRep rep1 = representable(1, 3);
  CHECK(rep1.dim(0) == 1);
  CHECK(rep1.dim(1) == 2);
  CHECK(rep1.dim(2) == 4);
  CHECK(rep1.dim(3) == 8);

  // Column of basis element a is the basis vector at index of u o a.
  CorrespondenceRange us(2, 2);
  while (!us.done()) {
    const Correspondence u = us.next();
    const Matrix& m = rep1.action(u);
    CorrespondenceRange as(2, 1);
    while (!as.done()) {
      const Correspondence a = as.next();
      const std::uint64_t j = a.index();
      const std::uint64_t i = compose(u, a).index();
      for (std::size_t r = 0; r < m.rows(); ++r) {
        CHECK(m.at(r, j) == (r == i ? scalar(1) : scalar(0)));
      }
    }
  }
}

TEST_CASE("representable equals the powerset lattice functor basis for basis") {
  for (std::size_t e : {std::size_t{1}, std::size_t{2}}) {
    const int bound = e == 1 ? 3 : 2;
    const FunctorRep rep = representable(e, bound);
    const FunctorRep pow = lattice_functor(
        named_lattice("powerset" + std::to_string(e)), bound);
    REQUIRE(rep.same_dims(pow));
    for (int y = 0; y <= bound; ++y) {
      for (int x = 0; x <= bound; ++x) {
        if (x * y > 6) continue;
        CorrespondenceRange range(static_cast<std::size_t>(y),
                                  static_cast<std::size_t>(x));
        while (!range.done()) {
          const Correspondence u = range.next();
          CHECK(rep.action(u) == pow.action(u));
        }
      }
    }
  }
}

TEST_CASE("empty correspondence sends every function to constant bottom") {
  const FunctorRep f = lattice_functor(named_lattice("chain2"), 3);
  const Correspondence empty(2, 3);
  // Constant bottom at two points has digits (0,0), index 0.
  for (std::uint64_t i = 0; i < f.dim(3); ++i) {
    CHECK(f.basis_image(empty, i) == 0);
  }
}

TEST_CASE("full correspondence action joins all values") {
  const FunctorRep f = lattice_functor(named_lattice("chain1"), 2);
  const Correspondence u = Correspondence::full(1, 2);
  // Digits (phi(0), phi(1)) base 2; image is the single digit max(phi).
  CHECK(f.basis_image(u, 0) == 0);
  CHECK(f.basis_image(u, 1) == 1);
  CHECK(f.basis_image(u, 2) == 1);
  CHECK(f.basis_image(u, 3) == 1);
}

TEST_CASE("lattice functor actions are functorial") {
  const SweepPolicy policy{8, 40, 7};
  CHECK(functoriality_sweep(lattice_functor(named_lattice("chain1"), 3), policy)
            .ok());
  CHECK(functoriality_sweep(lattice_functor(named_lattice("m3"), 2), policy)
            .ok());
  CHECK(functoriality_sweep(lattice_functor(named_lattice("n5"), 2), policy)
            .ok());
  CHECK(functoriality_sweep(representable(2, 2), policy).ok());
}

TEST_CASE("tensor dimensions multiply and actions are kronecker products") {
  const FunctorRep f = lattice_functor(named_lattice("chain1"), 3);
  const FunctorRep t = tensor(f, f);
  for (int n = 0; n <= 3; ++n) {
    CHECK(t.dim(n) == f.dim(n) * f.dim(n));
  }
  CHECK(t.dim(3) == 64);

  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t y = rng.below(4);
    const std::size_t x = rng.below(4);
    const Correspondence u = random_correspondence(rng, y, x);
    CHECK(t.action(u) == Matrix::kronecker(f.action(u), f.action(u)));
  }
}

TEST_CASE("tensor matrix path agrees with the basis path") {
  const FunctorRep f = lattice_functor(named_lattice("chain1"), 2);
  const FunctorRep rep = representable(1, 2);
  const FunctorRep fast = tensor(f, rep);
  const FunctorRep slow = tensor(matrix_path(f), rep);
  CHECK(fast.basis_functional());
  CHECK(!slow.basis_functional());
  for (int y = 0; y <= 2; ++y) {
    for (int x = 0; x <= 2; ++x) {
      CorrespondenceRange range(static_cast<std::size_t>(y),
                                static_cast<std::size_t>(x));
      while (!range.done()) {
        const Correspondence u = range.next();
        CHECK(fast.action(u) == slow.action(u));
      }
    }
  }
}

TEST_CASE("shift by the empty set is the identity construction") {
  const FunctorRep f = lattice_functor(named_lattice("chain2"), 2);
  const FunctorRep s = shift(f, 0);
  CHECK(s.same_dims(f));
  CorrespondenceRange range(2, 2);
  while (!range.done()) {
    const Correspondence u = range.next();
    CHECK(s.action(u) == f.action(u));
  }
}

TEST_CASE("shift evaluates on the disjoint union") {
  const FunctorRep rep = representable(1, 3);
  const FunctorRep s = shift(rep, 1);
  CHECK(s.bound() == 2);
  CHECK(s.dim(0) == 2);
  CHECK(s.dim(1) == 4);
  CHECK(s.dim(2) == 8);
  CorrespondenceRange range(2, 2);
  while (!range.done()) {
    const Correspondence u = range.next();
    CHECK(s.action(u) ==
          rep.action(block_diag(u, Correspondence::identity(1))));
  }
  CHECK(functoriality_sweep(s, SweepPolicy{8, 30, 1}).ok());
}

TEST_CASE("shift of the constant functor stays constant") {
  const FunctorRep k = shift(constant_functor(3), 2);
  CHECK(k.bound() == 1);
  CHECK(k.dim(0) == 1);
  CHECK(k.dim(1) == 1);
  CHECK(k.action(Correspondence::full(1, 1)).at(0, 0) == scalar(1));
}

TEST_CASE("shift morphism at the identity is the identity") {
  const FunctorRep f = lattice_functor(named_lattice("chain1"), 3);
  const Morphism m = shift_morphism(f, Correspondence::identity(1));
  CHECK(m.bound() == 2);
  for (int n = 0; n <= 2; ++n) CHECK(m.at(n).is_identity());
}

TEST_CASE("shift morphisms compose like the underlying correspondences") {
  const FunctorRep f = lattice_functor(named_lattice("chain1"), 3);
  CorrespondenceRange vs(1, 1);
  while (!vs.done()) {
    const Correspondence v = vs.next();
    CorrespondenceRange ws(1, 1);
    while (!ws.done()) {
      const Correspondence w = ws.next();
      const Morphism mv = shift_morphism(f, v);
      const Morphism mw = shift_morphism(f, w);
      const Morphism mvw = shift_morphism(f, compose(v, w));
      for (int n = 0; n <= 2; ++n) {
        CHECK(mvw.at(n) == mv.at(n) * mw.at(n));
      }
    }
  }
}

TEST_CASE("shift morphisms are natural") {
  const FunctorRep f = lattice_functor(named_lattice("chain1"), 3);
  const SweepPolicy policy{8, 25, 2};
  CorrespondenceRange vs(1, 2);
  while (!vs.done()) {
    CHECK(naturality_sweep(shift_morphism(f, vs.next()), policy).ok());
  }
  CorrespondenceRange ws(2, 1);
  while (!ws.done()) {
    CHECK(naturality_sweep(shift_morphism(f, ws.next()), policy).ok());
  }
}

TEST_CASE("join morphisms induce natural transformations") {
  const Lattice chain1 = named_lattice("chain1");
  const Lattice diamond = named_lattice("diamond");
  const SweepPolicy policy{8, 30, 4};

  const Morphism id = lattice_functor_morphism(
      JoinMorphism(chain1, chain1, {0, 1}), 2);
  for (int n = 0; n <= 2; ++n) CHECK(id.at(n).is_identity());

  const Morphism embed = lattice_functor_morphism(
      JoinMorphism(chain1, diamond, {0, 3}), 2);
  CHECK(naturality_sweep(embed, policy).ok());

  const Morphism collapse = lattice_functor_morphism(
      JoinMorphism(diamond, chain1, {0, 1, 1, 1}), 2);
  CHECK(naturality_sweep(collapse, policy).ok());
}

TEST_CASE("unit morphism into a lattice functor is natural") {
  // chain0 is the one point lattice, so its functor is the constant one.
  const Lattice point = named_lattice("chain0");
  const Lattice m3 = named_lattice("m3");
  const Morphism unit = lattice_functor_morphism(
      JoinMorphism(point, m3, {m3.bottom()}), 2);
  CHECK(unit.source.same_dims(constant_functor(2)));
  CHECK(naturality_sweep(unit, SweepPolicy{8, 20, 5}).ok());
}

TEST_CASE("naturality sweep reports a witness for a broken morphism") {
  const FunctorRep f = lattice_functor(named_lattice("chain1"), 2);
  std::vector<Matrix> comps;
  for (int n = 0; n <= 2; ++n) comps.push_back(Matrix::identity(f.dim(n)));
  // Swapping two basis vectors at size one breaks naturality.
  comps[1].at(0, 0) = scalar(0);
  comps[1].at(1, 0) = scalar(1);
  comps[1].at(1, 1) = scalar(0);
  comps[1].at(0, 1) = scalar(1);
  const Morphism bad{f, f, comps};
  const SweepResult sweep = naturality_sweep(bad, SweepPolicy{});
  CHECK(!sweep.ok());
  CHECK(sweep.witness->find("naturality") != std::string::npos);
}

TEST_CASE("truncation preserves dimensions and actions") {
  const FunctorRep f = lattice_functor(named_lattice("chain2"), 3);
  const FunctorRep t = f.truncated(2);
  CHECK(t.bound() == 2);
  for (int n = 0; n <= 2; ++n) CHECK(t.dim(n) == f.dim(n));
  CorrespondenceRange range(2, 2);
  while (!range.done()) {
    const Correspondence u = range.next();
    CHECK(t.action(u) == f.action(u));
  }
  CHECK_THROWS_AS((void)t.dim(3), Error);
}

TEST_CASE("exactness degree tracks representable-like constructions") {
  CHECK(constant_functor(2).exactness_degree() == 0);
  CHECK(representable(2, 2).exactness_degree() == 2);
  CHECK(lattice_functor(named_lattice("powerset2"), 2).exactness_degree() ==
        2);
  CHECK(lattice_functor(named_lattice("chain1"), 2).exactness_degree() == 1);
  CHECK(!lattice_functor(named_lattice("chain2"), 2)
             .exactness_degree()
             .has_value());
  CHECK(!lattice_functor(named_lattice("m3"), 2).exactness_degree().has_value());
  const FunctorRep t = tensor(representable(1, 2), representable(1, 2));
  CHECK(t.exactness_degree() == 2);
  CHECK(shift(t, 1).exactness_degree() == 2);
}

TEST_CASE("random correspondences are deterministic per seed") {
  Rng a(11), b(11);
  for (int i = 0; i < 10; ++i) {
    CHECK(random_correspondence(a, 3, 2) == random_correspondence(b, 3, 2));
  }
}

}  // TEST_SUITE
