#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"

namespace corrfun {

// Finite lattice on {0..size-1}: order relation plus join and meet tables,
// all validated at construction. Every pair must have a least upper bound
// and a greatest lower bound; failures carry a witness pair.
class Lattice {
 public:
  // leq is a dense row-major table: leq[t*size+s] nonzero iff t <= s.
  static Lattice from_leq(std::size_t size, std::vector<std::uint8_t> leq);

  // Hasse-style input: edges a < b. Reflexive-transitive closure is taken;
  // cycles are rejected.
  static Lattice from_covers(std::size_t size,
                             const std::vector<std::pair<std::size_t, std::size_t>>& covers);

  std::size_t size() const { return size_; }
  bool leq(std::size_t t, std::size_t s) const { return leq_[t * size_ + s]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a * size_ + b]; }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * size_ + b]; }
  std::size_t bottom() const { return bottom_; }
  std::size_t top() const { return top_; }

  std::size_t join_of(const std::vector<std::size_t>& elems) const;  // empty -> bottom
  std::size_t meet_of(const std::vector<std::size_t>& elems) const;  // empty -> top

  // Cover edges a < b with nothing strictly between, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> cover_edges() const;

  std::string to_text() const;  // "lattice n" + "cover a b" lines

  bool operator==(const Lattice& o) const = default;

 private:
  std::size_t size_ = 0, bottom_ = 0, top_ = 0;
  std::vector<std::uint8_t> leq_;
  std::vector<std::size_t> join_, meet_;
};

// Componentwise order on pairs (t, t'), indexed t * |b| + t'.
Lattice lattice_product(const Lattice& a, const Lattice& b);

// chi(t,t) = 1; chi(t,s) = -sum of chi(t,r) over t <= r < s; 0 unless t <= s.
long long mobius(const Lattice& t, std::size_t a, std::size_t b);

// Change of basis between the relation basis g and the idempotent basis f
// of the direct product algebra attached to the lattice:
//   f_t = sum over s >= t of chi(t,s) g_s,   g_t = sum over s >= t of f_s.
// Rows are indexed by t, columns by s; the two matrices are inverse.
struct IdempotentBasis {
  Matrix f_from_g;
  Matrix g_from_f;
};
IdempotentBasis idempotent_basis(const Lattice& t);

// Map preserving all joins, including the empty one (bottom to bottom).
// Preservation of binary joins plus bottom is verified at construction.
class JoinMorphism {
 public:
  JoinMorphism(Lattice source, Lattice target, std::vector<std::size_t> image);

  const Lattice& source() const { return source_; }
  const Lattice& target() const { return target_; }
  std::size_t apply(std::size_t t) const { return image_[t]; }

 private:
  Lattice source_, target_;
  std::vector<std::size_t> image_;
};

JoinMorphism morphism_product(const JoinMorphism& f, const JoinMorphism& g);

// Built-in lattices: chain0..chain4, powerset1..powerset3, diamond, m3, n5.
const std::vector<std::string>& lattice_corpus_names();
Lattice named_lattice(const std::string& name);

}  // namespace corrfun
