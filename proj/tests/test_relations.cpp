#include <doctest.h>

#include "relations.hpp"
#include "rng.hpp"

using namespace corrfun;

namespace {

Correspondence random_corr(Rng& rng, std::size_t target, std::size_t source) {
  Correspondence c(target, source);
  for (std::size_t y = 0; y < target; ++y)
    for (std::size_t x = 0; x < source; ++x)
      if (rng.below(2)) c.set(y, x);
  return c;
}

}  // namespace

TEST_SUITE_BEGIN("relations");

TEST_CASE("identity composes as a unit") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t y = rng.below(4), x = rng.below(4);
    Correspondence u = random_corr(rng, y, x);
    CHECK(compose(Correspondence::identity(y), u) == u);
    CHECK(compose(u, Correspondence::identity(x)) == u);
  }
}

TEST_CASE("singleton composition follows the witness definition") {
  // v = {(0,0)} on 1x1, u = {(0,1)} on 1x2: composite is {(0,1)}.
  Correspondence v(1, 1), u(1, 2);
  v.set(0, 0);
  u.set(0, 1);
  Correspondence expect(1, 2);
  expect.set(0, 1);
  CHECK(compose(v, u) == expect);
}

TEST_CASE("full relations compose to full when the middle is nonempty") {
  Correspondence v = Correspondence::full(3, 2), u = Correspondence::full(2, 2);
  CHECK(compose(v, u) == Correspondence::full(3, 2));
}

TEST_CASE("composition is associative, exhaustive at size 2") {
  std::size_t n = 2;
  CorrespondenceRange ws(n, n);
  while (!ws.done()) {
    Correspondence w = ws.next();
    CorrespondenceRange vs(n, n);
    while (!vs.done()) {
      Correspondence v = vs.next();
      CorrespondenceRange us(n, n);
      while (!us.done()) {
        Correspondence u = us.next();
        CHECK(compose(w, compose(v, u)) == compose(compose(w, v), u));
      }
    }
  }
}

TEST_CASE("composition is associative on random size-3 triples") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    Correspondence w = random_corr(rng, 3, 3), v = random_corr(rng, 3, 3),
                   u = random_corr(rng, 3, 3);
    CHECK(compose(w, compose(v, u)) == compose(compose(w, v), u));
  }
}

TEST_CASE("identity on the empty set and on a 2-set") {
  CHECK(Correspondence::identity(0).target_size() == 0);
  Correspondence d = Correspondence::identity(2);
  CHECK(d.contains(0, 0));
  CHECK(d.contains(1, 1));
  CHECK_FALSE(d.contains(0, 1));
  CHECK_FALSE(d.contains(1, 0));
  CHECK(compose(d, d) == d);
}

TEST_CASE("enumeration counts and order") {
  CHECK(correspondence_count(1, 1) == 2);
  CHECK(correspondence_count(2, 1) == 4);
  CHECK(correspondence_count(2, 2) == 16);
  CHECK_THROWS_AS(correspondence_count(6, 5), Error);

  CorrespondenceRange range(2, 2);
  std::uint64_t expected = 0;
  while (!range.done()) {
    Correspondence c = range.next();
    CHECK(c.index() == expected);
    CHECK(Correspondence::from_index(2, 2, expected) == c);
    ++expected;
  }
  CHECK(expected == 16);
}

TEST_CASE("block_diag laws") {
  Rng rng(13);
  CHECK(block_diag(Correspondence::identity(2), Correspondence::identity(1)) ==
        Correspondence::identity(3));
  Correspondence u = random_corr(rng, 2, 2);
  CHECK(block_diag(u, Correspondence(0, 0)) == u);

  // Bifunctor law, exhaustively at size 1 blocks and randomly at size 2.
  for (int trial = 0; trial < 100; ++trial) {
    Correspondence a = random_corr(rng, 2, 2), ap = random_corr(rng, 2, 2);
    Correspondence b = random_corr(rng, 2, 2), bp = random_corr(rng, 2, 2);
    CHECK(compose(block_diag(a, b), block_diag(ap, bp)) ==
          block_diag(compose(a, ap), compose(b, bp)));
  }
}

TEST_CASE("stack and concat block identities") {
  Rng rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t x = 1 + rng.below(3), y = 1 + rng.below(3);
    Correspondence u = random_corr(rng, y, x), v = random_corr(rng, y, y);
    Correspondence ins_x = stack(Correspondence::identity(x), Correspondence(y, x));

    // block(U,V) . stack(Delta,0) = stack(U,0)
    CHECK(compose(block_diag(u, v), ins_x) == stack(u, Correspondence(y, x)));

    // (Delta,Delta) . stack(Delta,0) = Delta
    Correspondence diag = concat(Correspondence::identity(x), Correspondence::identity(x));
    Correspondence ins_left = stack(Correspondence::identity(x), Correspondence(x, x));
    Correspondence ins_right = stack(Correspondence(x, x), Correspondence::identity(x));
    CHECK(compose(diag, ins_left) == Correspondence::identity(x));
    CHECK(compose(diag, ins_right) == Correspondence::identity(x));
  }

  CHECK(stack(Correspondence(0, 2), Correspondence(0, 2)) == Correspondence(0, 2));
  CHECK(concat(Correspondence(2, 0), Correspondence(2, 0)) == Correspondence(2, 0));
  CHECK(stack(Correspondence(1, 2), Correspondence(2, 2)).target_size() == 3);
}

TEST_CASE("composition distributes over concat") {
  Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t z = 1 + rng.below(2), x = 1 + rng.below(2);
    std::size_t xp = rng.below(3), xpp = rng.below(3);
    Correspondence u = random_corr(rng, z, x);
    Correspondence a = random_corr(rng, x, xp), b = random_corr(rng, x, xpp);
    CHECK(compose(u, concat(a, b)) == concat(compose(u, a), compose(u, b)));
  }
}

TEST_CASE("transpose is an involution and reverses composition") {
  Rng rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    Correspondence u = random_corr(rng, 3, 2), v = random_corr(rng, 2, 3);
    CHECK(u.transposed().transposed() == u);
    CHECK(compose(v, u).transposed() ==
          compose(u.transposed(), v.transposed()));
  }
}

TEST_CASE("relation algebra unit and basis products") {
  Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    Correspondence r = random_corr(rng, 2, 2), s = random_corr(rng, 2, 2);
    RelAlgElement a = RelAlgElement::basis(r), b = RelAlgElement::basis(s);
    CHECK(RelAlgElement::unit(2) * a == a);
    CHECK(a * RelAlgElement::unit(2) == a);
    CHECK(a * b == RelAlgElement::basis(compose(r, s)));
  }
}

TEST_CASE("relation algebra expands (unit + u)^2 with a strictly upper u") {
  Correspondence u(2, 2);
  u.set(0, 1);
  RelAlgElement e = RelAlgElement::unit(2) + RelAlgElement::basis(u);
  RelAlgElement sq = e * e;
  // Delta + 2u + u^2, where u^2 is the empty relation as a basis element.
  RelAlgElement expect = RelAlgElement::unit(2) +
                         RelAlgElement::basis(u).scaled(2) +
                         RelAlgElement::basis(compose(u, u));
  CHECK(compose(u, u) == Correspondence(2, 2));
  CHECK(sq == expect);
}

TEST_CASE("relation algebra is associative on random three-term products") {
  Rng rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    RelAlgElement a(2), b(2), c(2);
    for (int k = 0; k < 3; ++k) {
      a.add_term(random_corr(rng, 2, 2), scalar(static_cast<long>(rng.below(5)) - 2));
      b.add_term(random_corr(rng, 2, 2), scalar(static_cast<long>(rng.below(5)) - 2));
      c.add_term(random_corr(rng, 2, 2), scalar(static_cast<long>(rng.below(5)) - 2));
    }
    CHECK((a * b) * c == a * (b * c));
    CHECK((a + b) * c == a * c + b * c);
  }
}

TEST_CASE("correspondence text round trip") {
  Correspondence u(2, 3);
  u.set(0, 1);
  u.set(1, 0);
  u.set(1, 2);
  CHECK(u.to_text() == "corr 2 3\n010\n101\n");
}

TEST_SUITE_END();
