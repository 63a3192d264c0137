#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "error.hpp"
#include "scalar.hpp"

namespace corrfun {

// Correspondence from a source set {0..source-1} to a target set
// {0..target-1}: a subset of target x source, stored as one bitmask per
// target row (bit x = source element x). Either side may be empty.
class Correspondence {
 public:
  Correspondence(std::size_t target_size, std::size_t source_size)
      : target_(target_size), source_(source_size), rows_(target_size, 0) {
    require(source_ <= 63, Errc::invalid_argument, "source set too large");
  }

  static Correspondence identity(std::size_t n);
  static Correspondence full(std::size_t target, std::size_t source);

  std::size_t target_size() const { return target_; }
  std::size_t source_size() const { return source_; }

  bool contains(std::size_t y, std::size_t x) const {
    return (rows_[y] >> x) & 1;
  }
  void set(std::size_t y, std::size_t x, bool present = true) {
    if (present)
      rows_[y] |= std::uint64_t{1} << x;
    else
      rows_[y] &= ~(std::uint64_t{1} << x);
  }
  std::uint64_t row(std::size_t y) const { return rows_[y]; }
  void set_row(std::size_t y, std::uint64_t bits) { rows_[y] = bits; }

  std::size_t pair_count() const;

  // Canonical basis position: rows read as digits base 2^source, row 0 most
  // significant. Requires target*source <= 63 bits.
  std::uint64_t index() const;
  static Correspondence from_index(std::size_t target, std::size_t source,
                                   std::uint64_t k);

  Correspondence transposed() const;
  Correspondence united(const Correspondence& o) const;

  std::strong_ordering operator<=>(const Correspondence& o) const;
  bool operator==(const Correspondence& o) const = default;

  std::string to_text() const;

 private:
  std::size_t target_, source_;
  std::vector<std::uint64_t> rows_;
};

// v after u: pairs (z, x) admitting a witness y with (z,y) in v, (y,x) in u.
Correspondence compose(const Correspondence& v, const Correspondence& u);

// Rows of a above rows of b; both consume the same source set.
Correspondence stack(const Correspondence& a, const Correspondence& b);

// Columns of a then columns of b; both feed the same target set.
Correspondence concat(const Correspondence& a, const Correspondence& b);

Correspondence block_diag(const Correspondence& a, const Correspondence& b);

// Number of correspondences target x source; guarded to 2^25 enumeration.
std::uint64_t correspondence_count(std::size_t target, std::size_t source);

// All correspondences of a signature in ascending index order.
class CorrespondenceRange {
 public:
  CorrespondenceRange(std::size_t target, std::size_t source);
  bool done() const { return next_ == count_; }
  Correspondence next();

 private:
  std::size_t target_, source_;
  std::uint64_t next_ = 0, count_;
};

// Finitely supported rational combination of relations on one ground set,
// multiplied by convolution over relation composition.
class RelAlgElement {
 public:
  explicit RelAlgElement(std::size_t ground) : ground_(ground) {}

  static RelAlgElement unit(std::size_t ground);
  static RelAlgElement basis(const Correspondence& r);

  std::size_t ground() const { return ground_; }
  const std::map<Correspondence, Scalar>& terms() const { return terms_; }

  RelAlgElement operator+(const RelAlgElement& o) const;
  RelAlgElement operator-(const RelAlgElement& o) const;
  RelAlgElement operator*(const RelAlgElement& o) const;
  RelAlgElement scaled(const Scalar& c) const;
  bool operator==(const RelAlgElement& o) const = default;

  void add_term(const Correspondence& r, const Scalar& c);

 private:
  std::size_t ground_;
  std::map<Correspondence, Scalar> terms_;  // no zero coefficients
};

}  // namespace corrfun
