#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"
#include "functor.hpp"
#include "lattice.hpp"
#include "matrix.hpp"
#include "relations.hpp"
#include "theorems.hpp"

using namespace corrfun;

namespace {

Vec unit_vec(std::size_t dim, std::size_t at) {
  Vec v(dim);
  v[at] = 1;
  return v;
}

Vec apply_to(const Matrix& m, const Vec& v) {
  Vec out(m.rows());
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out[i] += m.at(i, j) * v[j];
  return out;
}

// f-basis vector for t in standard coordinates of the size-one value.
Vec f_vector(const Lattice& t, std::size_t at) {
  const IdempotentBasis basis = idempotent_basis(t);
  Vec v(t.size());
  for (std::size_t s = 0; s < t.size(); ++s) v[s] = basis.f_from_g.at(at, s);
  return v;
}

// All-identity carrier with the same dimension at every size.
FunctorRep flat_carrier(int bound, std::size_t dim) {
  std::vector<std::size_t> dims(static_cast<std::size_t>(bound) + 1, dim);
  std::vector<std::vector<std::string>> labels(dims.size());
  for (auto& at : labels)
    for (std::size_t i = 0; i < dim; ++i) at.push_back(std::to_string(i));
  return FunctorRep(bound, dims, labels, [dim](const Correspondence&) {
    return Matrix::identity(dim);
  });
}

const VerifyPolicy quick{2, 20, 0};

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("one point lattice gives the trivial algebra") {
  const Lattice one = Lattice::from_leq(1, {1});
  const AlgebraFunctorRep a = algebra_ft(one, 2, quick);
  for (int n = 0; n <= 2; ++n) {
    CHECK(a.dim(n) == 1);
    CHECK(a.unit(n) == Vec{1});
  }
  CHECK(comultiplication(a) == Matrix::identity(1));
  CHECK(counit(a).at(0, 0) == 1);
  const ReconstructionResult res = reconstruct_lattice(a, quick);
  CHECK(res.ok);
  CHECK(res.lattice.size() == 1);
  for (const Matrix& lam : res.lambda) CHECK(lam == Matrix::identity(1));
}

TEST_CASE("function algebra multiplies pointwise by joins") {
  const Lattice chain = named_lattice("chain1");
  const AlgebraFunctorRep a = algebra_ft(chain, 3, quick);
  CHECK(a.basis_multiplicative());
  CHECK(a.basis_product(1, 0, 1) == 1);
  CHECK(a.basis_product(1, 1, 1) == 1);
  CHECK(a.basis_product(2, 1, 2) == 3);
  CHECK(a.unit(2) == unit_vec(4, 0));
  CHECK(a.multiply(1, Vec{1, 2}, Vec{3, 4}) == Vec{3, 18});
}

TEST_CASE("collapsing map glues digits") {
  const Lattice chain = named_lattice("chain1");
  const AlgebraFunctorRep a = algebra_ft(chain, 2, quick);
  CHECK(mu_hat(a, 0, 0) == Matrix::identity(1));
  CHECK(mu_hat(a, 1, 1) == Matrix::identity(4));
  CHECK_THROWS_AS(mu_hat(a, 1, 2), Error);

  // composing with the fold correspondence recovers the product
  Correspondence fold(1, 2);
  fold.set(0, 0);
  fold.set(0, 1);
  CHECK(a.carrier().action(fold) * mu_hat(a, 1, 1) == a.mul_matrix(1));
}

TEST_CASE("exponential check passes for function algebras") {
  CHECK(check_exponential(algebra_ft(named_lattice("chain1"), 3, quick)).pass);
  CHECK(check_exponential(algebra_ft(named_lattice("chain2"), 2, quick)).pass);
  CHECK(
      check_exponential(algebra_ft(named_lattice("diamond"), 2, quick)).pass);
}

TEST_CASE("exponential check rejects a padded value at the empty set") {
  std::vector<Matrix> mul;
  std::vector<Vec> units;
  for (int n = 0; n <= 1; ++n) {
    Matrix table(2, 4);
    table.at(0, 0) = 1;
    table.at(1, 3) = 1;
    mul.push_back(table);
    units.push_back(Vec{1, 1});
  }
  const AlgebraFunctorRep a(flat_carrier(1, 2), mul, units, quick);
  const VerificationReport rep = check_exponential(a);
  CHECK_FALSE(rep.pass);
  CHECK(rep.witness.find("empty set") != std::string::npos);
}

TEST_CASE("split idempotents match the mobius basis") {
  for (const char* name : {"chain2", "diamond", "m3"}) {
    const Lattice t = named_lattice(name);
    const AlgebraFunctorRep a = algebra_ft(t, 2, quick);
    std::vector<Vec> got = split_idempotents(a).idempotents;
    std::vector<Vec> want;
    for (std::size_t tt = 0; tt < t.size(); ++tt)
      want.push_back(f_vector(t, tt));
    auto order = [](const Vec& x, const Vec& y) {
      return std::lexicographical_compare(x.begin(), x.end(), y.begin(),
                                          y.end());
    };
    std::sort(got.begin(), got.end(), order);
    std::sort(want.begin(), want.end(), order);
    CHECK(got == want);
  }
}

TEST_CASE("splitting a one dimensional algebra returns the unit") {
  const Lattice one = Lattice::from_leq(1, {1});
  const AlgebraFunctorRep a = algebra_ft(one, 2, quick);
  const SplitBasis split = split_idempotents(a);
  REQUIRE(split.idempotents.size() == 1);
  CHECK(split.idempotents[0] == a.unit(1));
}

TEST_CASE("a nilpotent direction is reported as not split") {
  Matrix dual(2, 4);
  dual.at(0, 0) = 1;
  dual.at(1, 1) = 1;
  dual.at(1, 2) = 1;
  std::vector<Matrix> mul{dual, dual};
  std::vector<Vec> units{Vec{1, 0}, Vec{1, 0}};
  const AlgebraFunctorRep a(flat_carrier(1, 2), mul, units, quick);
  try {
    split_idempotents(a);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_split);
  }
}

TEST_CASE("a noncommutative product is rejected at construction") {
  Matrix table(3, 9);
  // unit e0; e1 e2 = e1 but e2 e1 = e2
  table.at(0, 0) = 1;
  table.at(1, 1) = 1;
  table.at(2, 2) = 1;
  table.at(1, 3) = 1;
  table.at(1, 4) = 1;
  table.at(1, 5) = 1;
  table.at(2, 6) = 1;
  table.at(2, 7) = 1;
  table.at(2, 8) = 1;
  std::vector<Matrix> mul{table, table};
  std::vector<Vec> units{Vec{1, 0, 0}, Vec{1, 0, 0}};
  try {
    AlgebraFunctorRep a(flat_carrier(1, 3), mul, units, quick);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_commutative);
  }
}

TEST_CASE("comultiplication doubles basis functions") {
  const Lattice t = named_lattice("diamond");
  const AlgebraFunctorRep a = algebra_ft(t, 2, quick);
  const Matrix delta = comultiplication(a);
  const std::size_t d = t.size();
  for (std::size_t tt = 0; tt < d; ++tt)
    CHECK(delta.column(tt) == unit_vec(d * d, tt * d + tt));
}

TEST_CASE("comultiplication spreads idempotents over meet pairs") {
  const Lattice t = named_lattice("n5");
  const AlgebraFunctorRep a = algebra_ft(t, 2, quick);
  const Matrix delta = comultiplication(a);
  const std::size_t d = t.size();
  for (std::size_t tt = 0; tt < d; ++tt) {
    const Vec image = apply_to(delta, f_vector(t, tt));
    Vec want(d * d);
    for (std::size_t x = 0; x < d; ++x) {
      for (std::size_t y = 0; y < d; ++y) {
        if (static_cast<std::size_t>(t.meet(x, y)) != tt) continue;
        const Vec fx = f_vector(t, x);
        const Vec fy = f_vector(t, y);
        for (std::size_t p = 0; p < d; ++p)
          for (std::size_t q = 0; q < d; ++q)
            want[p * d + q] += fx[p] * fy[q];
      }
    }
    CHECK(image == want);
  }
}

TEST_CASE("counit is the constant one on basis functions") {
  const Lattice t = named_lattice("m3");
  const AlgebraFunctorRep a = algebra_ft(t, 2, quick);
  const Matrix eta = counit(a);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(eta.at(0, i) == 1);
  for (std::size_t tt = 0; tt < t.size(); ++tt) {
    Scalar value = 0;
    const Vec f = f_vector(t, tt);
    for (std::size_t r = 0; r < t.size(); ++r) value += eta.at(0, r) * f[r];
    CHECK(value == (tt == static_cast<std::size_t>(t.top()) ? 1 : 0));
  }
}

TEST_CASE("reconstruction recovers every catalog lattice") {
  for (const std::string& name : lattice_corpus_names()) {
    const Lattice t = named_lattice(name);
    if (t.size() > 6) continue;  // larger ones run in the acceptance suite
    const AlgebraFunctorRep a = algebra_ft(t, 2, quick);
    const ReconstructionResult res = reconstruct_lattice(a, quick);
    INFO(name << ": " << res.diagnosis);
    REQUIRE(res.ok);
    CHECK(res.report.pass);
    REQUIRE(res.lattice.size() == t.size());

    // the recovered idempotents are the canonical ones, possibly renumbered
    std::vector<std::size_t> perm(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      bool found = false;
      for (std::size_t j = 0; j < t.size(); ++j) {
        if (res.idempotents[i] == f_vector(t, j)) {
          perm[i] = j;
          found = true;
          break;
        }
      }
      REQUIRE(found);
    }
    for (std::size_t x = 0; x < t.size(); ++x)
      for (std::size_t y = 0; y < t.size(); ++y)
        CHECK(perm[static_cast<std::size_t>(res.lattice.meet(x, y))] ==
              static_cast<std::size_t>(
                  t.meet(static_cast<int>(perm[x]), static_cast<int>(perm[y]))));
  }
}

TEST_CASE("reconstruction reports a diagnosis instead of throwing") {
  Matrix dual(2, 4);
  dual.at(0, 0) = 1;
  dual.at(1, 1) = 1;
  dual.at(1, 2) = 1;
  std::vector<Matrix> mul;
  std::vector<Vec> units;
  for (int n = 0; n <= 2; ++n) {
    mul.push_back(dual);
    units.push_back(Vec{1, 0});
  }
  const AlgebraFunctorRep a(flat_carrier(2, 2), mul, units, quick);
  const ReconstructionResult res = reconstruct_lattice(a, quick);
  CHECK_FALSE(res.ok);
  CHECK_FALSE(res.report.pass);
  CHECK_FALSE(res.diagnosis.empty());
  CHECK(res.report.line().find("FAIL") != std::string::npos);
}

TEST_CASE("actions turn unions into products") {
  const Lattice chain = named_lattice("chain1");
  const AlgebraFunctorRep a = algebra_ft(chain, 3, quick);
  const VerificationReport rep = verify_product_union(a, chain, quick);
  CHECK(rep.pass);
  CHECK(rep.cases_exhaustive == 170);
  CHECK(rep.cases_random == 0);
  CHECK(rep.line() ==
        "THEOREM product-union PASS cases=170");

  const Lattice diamond = named_lattice("diamond");
  CHECK_THROWS_AS(verify_product_union(a, diamond, quick), Error);
}

}  // TEST_SUITE
