#include "lattice.hpp"

#include <algorithm>
#include <sstream>

namespace corrfun {

namespace {

std::string pair_text(std::size_t a, std::size_t b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

Lattice Lattice::from_leq(std::size_t size, std::vector<std::uint8_t> leq) {
  require(size > 0, Errc::not_a_lattice, "a lattice cannot be empty");
  require(leq.size() == size * size, Errc::invalid_argument,
          "order table has wrong size");
  Lattice l;
  l.size_ = size;
  l.leq_ = std::move(leq);
  for (std::size_t t = 0; t < size; ++t)
    require(l.leq(t, t), Errc::not_a_lattice,
            "order not reflexive at " + std::to_string(t));
  for (std::size_t t = 0; t < size; ++t)
    for (std::size_t s = 0; s < size; ++s) {
      if (t != s && l.leq(t, s) && l.leq(s, t))
        fail(Errc::not_a_lattice, "order not antisymmetric at " + pair_text(t, s));
      for (std::size_t r = 0; r < size; ++r)
        if (l.leq(t, s) && l.leq(s, r) && !l.leq(t, r))
          fail(Errc::not_a_lattice, "order not transitive at " + pair_text(t, r));
    }

  l.join_.assign(size * size, 0);
  l.meet_.assign(size * size, 0);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b) {
      std::vector<std::size_t> ub, lb;
      for (std::size_t c = 0; c < size; ++c) {
        if (l.leq(a, c) && l.leq(b, c)) ub.push_back(c);
        if (l.leq(c, a) && l.leq(c, b)) lb.push_back(c);
      }
      auto least = [&](const std::vector<std::size_t>& set) -> std::size_t {
        for (std::size_t u : set) {
          bool ok = true;
          for (std::size_t v : set) ok = ok && l.leq(u, v);
          if (ok) return u;
        }
        fail(Errc::not_a_lattice, "no join for " + pair_text(a, b));
      };
      auto greatest = [&](const std::vector<std::size_t>& set) -> std::size_t {
        for (std::size_t u : set) {
          bool ok = true;
          for (std::size_t v : set) ok = ok && l.leq(v, u);
          if (ok) return u;
        }
        fail(Errc::not_a_lattice, "no meet for " + pair_text(a, b));
      };
      if (ub.empty()) fail(Errc::not_a_lattice, "no join for " + pair_text(a, b));
      if (lb.empty()) fail(Errc::not_a_lattice, "no meet for " + pair_text(a, b));
      l.join_[a * size + b] = least(ub);
      l.meet_[a * size + b] = greatest(lb);
    }

  std::size_t bot = 0, top = 0;
  for (std::size_t c = 0; c < size; ++c) {
    bot = l.meet(bot, c);
    top = l.join(top, c);
  }
  l.bottom_ = bot;
  l.top_ = top;
  return l;
}

Lattice Lattice::from_covers(
    std::size_t size,
    const std::vector<std::pair<std::size_t, std::size_t>>& covers) {
  require(size > 0, Errc::not_a_lattice, "a lattice cannot be empty");
  std::vector<std::uint8_t> leq(size * size, 0);
  for (std::size_t t = 0; t < size; ++t) leq[t * size + t] = 1;
  for (auto [a, b] : covers) {
    require(a < size && b < size, Errc::parse, "cover edge out of range");
    require(a != b, Errc::not_a_lattice, "cover edge cannot be a loop");
    leq[a * size + b] = 1;
  }
  // Floyd-Warshall style closure of the strict edges.
  for (std::size_t k = 0; k < size; ++k)
    for (std::size_t i = 0; i < size; ++i)
      if (leq[i * size + k])
        for (std::size_t j = 0; j < size; ++j)
          if (leq[k * size + j]) leq[i * size + j] = 1;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j)
      if (leq[i * size + j] && leq[j * size + i])
        fail(Errc::not_a_lattice, "cycle detected through " + pair_text(i, j));
  return from_leq(size, std::move(leq));
}

std::size_t Lattice::join_of(const std::vector<std::size_t>& elems) const {
  std::size_t acc = bottom_;
  for (std::size_t e : elems) acc = join(acc, e);
  return acc;
}

std::size_t Lattice::meet_of(const std::vector<std::size_t>& elems) const {
  std::size_t acc = top_;
  for (std::size_t e : elems) acc = meet(acc, e);
  return acc;
}

std::vector<std::pair<std::size_t, std::size_t>> Lattice::cover_edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < size_; ++a)
    for (std::size_t b = 0; b < size_; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool covering = true;
      for (std::size_t c = 0; c < size_ && covering; ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) covering = false;
      if (covering) out.emplace_back(a, b);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Lattice::to_text() const {
  std::ostringstream os;
  os << "lattice " << size_ << '\n';
  for (auto [a, b] : cover_edges()) os << "cover " << a << ' ' << b << '\n';
  return os.str();
}

Lattice lattice_product(const Lattice& a, const Lattice& b) {
  std::size_t n = a.size() * b.size();
  std::vector<std::uint8_t> leq(n * n, 0);
  for (std::size_t t1 = 0; t1 < a.size(); ++t1)
    for (std::size_t t2 = 0; t2 < b.size(); ++t2)
      for (std::size_t s1 = 0; s1 < a.size(); ++s1)
        for (std::size_t s2 = 0; s2 < b.size(); ++s2) {
          std::size_t t = t1 * b.size() + t2, s = s1 * b.size() + s2;
          leq[t * n + s] = a.leq(t1, s1) && b.leq(t2, s2);
        }
  return Lattice::from_leq(n, std::move(leq));
}

long long mobius(const Lattice& t, std::size_t a, std::size_t b) {
  if (!t.leq(a, b)) return 0;
  if (a == b) return 1;
  long long sum = 0;
  for (std::size_t r = 0; r < t.size(); ++r)
    if (t.leq(a, r) && t.leq(r, b) && r != b) sum += mobius(t, a, r);
  return -sum;
}

IdempotentBasis idempotent_basis(const Lattice& t) {
  std::size_t n = t.size();
  IdempotentBasis out{Matrix(n, n), Matrix(n, n)};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!t.leq(a, b)) continue;
      out.f_from_g.at(a, b) = scalar(mobius(t, a, b));
      out.g_from_f.at(a, b) = 1;
    }
  return out;
}

JoinMorphism::JoinMorphism(Lattice source, Lattice target,
                           std::vector<std::size_t> image)
    : source_(std::move(source)), target_(std::move(target)),
      image_(std::move(image)) {
  require(image_.size() == source_.size(), Errc::invalid_argument,
          "image table has wrong size");
  for (std::size_t v : image_)
    require(v < target_.size(), Errc::invalid_argument, "image out of range");
  require(image_[source_.bottom()] == target_.bottom(), Errc::not_a_lattice,
          "join morphism must send bottom to bottom");
  for (std::size_t a = 0; a < source_.size(); ++a)
    for (std::size_t b = 0; b < source_.size(); ++b)
      if (image_[source_.join(a, b)] != target_.join(image_[a], image_[b]))
        fail(Errc::not_a_lattice,
             "binary join not preserved at " + pair_text(a, b));
}

JoinMorphism morphism_product(const JoinMorphism& f, const JoinMorphism& g) {
  Lattice source = lattice_product(f.source(), g.source());
  Lattice target = lattice_product(f.target(), g.target());
  std::vector<std::size_t> image(source.size());
  for (std::size_t a = 0; a < f.source().size(); ++a)
    for (std::size_t b = 0; b < g.source().size(); ++b)
      image[a * g.source().size() + b] =
          f.apply(a) * g.target().size() + g.apply(b);
  return JoinMorphism(std::move(source), std::move(target), std::move(image));
}

namespace {

Lattice chain(std::size_t top) {
  std::size_t n = top + 1;
  std::vector<std::uint8_t> leq(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) leq[a * n + b] = 1;
  return Lattice::from_leq(n, std::move(leq));
}

Lattice powerset(std::size_t ground) {
  std::size_t n = std::size_t{1} << ground;
  std::vector<std::uint8_t> leq(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) leq[a * n + b] = (a & ~b) == 0;
  return Lattice::from_leq(n, std::move(leq));
}

}  // namespace

const std::vector<std::string>& lattice_corpus_names() {
  static const std::vector<std::string> names = {
      "chain0", "chain1", "chain2", "chain3",    "chain4", "powerset1",
      "powerset2", "powerset3", "diamond", "m3", "n5"};
  return names;
}

Lattice named_lattice(const std::string& name) {
  if (name == "chain0") return chain(0);
  if (name == "chain1") return chain(1);
  if (name == "chain2") return chain(2);
  if (name == "chain3") return chain(3);
  if (name == "chain4") return chain(4);
  if (name == "powerset1") return powerset(1);
  if (name == "powerset2" || name == "diamond") return powerset(2);
  if (name == "powerset3") return powerset(3);
  if (name == "m3")
    return Lattice::from_covers(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
  if (name == "n5")
    return Lattice::from_covers(5, {{0, 1}, {1, 2}, {0, 3}, {2, 4}, {3, 4}});
  fail(Errc::unknown_name, "unknown lattice: " + name);
}

}  // namespace corrfun
