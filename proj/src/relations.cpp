#include "relations.hpp"

#include <bit>
#include <sstream>

namespace corrfun {

Correspondence Correspondence::identity(std::size_t n) {
  Correspondence c(n, n);
  for (std::size_t i = 0; i < n; ++i) c.set(i, i);
  return c;
}

Correspondence Correspondence::full(std::size_t target, std::size_t source) {
  Correspondence c(target, source);
  std::uint64_t row = source ? (std::uint64_t{1} << source) - 1 : 0;
  for (std::size_t y = 0; y < target; ++y) c.set_row(y, row);
  return c;
}

std::size_t Correspondence::pair_count() const {
  std::size_t n = 0;
  for (std::uint64_t r : rows_) n += std::popcount(r);
  return n;
}

std::uint64_t Correspondence::index() const {
  require(target_ * source_ <= 63, Errc::invalid_argument,
          "correspondence too large to index");
  std::uint64_t k = 0;
  for (std::size_t y = 0; y < target_; ++y) k = (k << source_) | rows_[y];
  return k;
}

Correspondence Correspondence::from_index(std::size_t target,
                                          std::size_t source,
                                          std::uint64_t k) {
  require(target * source <= 63, Errc::invalid_argument,
          "correspondence too large to index");
  Correspondence c(target, source);
  std::uint64_t mask = source ? (std::uint64_t{1} << source) - 1 : 0;
  for (std::size_t y = target; y-- > 0;) {
    c.set_row(y, k & mask);
    k >>= source;
  }
  return c;
}

Correspondence Correspondence::transposed() const {
  Correspondence out(source_, target_);
  for (std::size_t y = 0; y < target_; ++y)
    for (std::size_t x = 0; x < source_; ++x)
      if (contains(y, x)) out.set(x, y);
  return out;
}

Correspondence Correspondence::united(const Correspondence& o) const {
  require(target_ == o.target_ && source_ == o.source_, Errc::dimension,
          "union of mismatched correspondences");
  Correspondence out(target_, source_);
  for (std::size_t y = 0; y < target_; ++y)
    out.set_row(y, rows_[y] | o.rows_[y]);
  return out;
}

std::strong_ordering Correspondence::operator<=>(
    const Correspondence& o) const {
  if (auto c = target_ <=> o.target_; c != 0) return c;
  if (auto c = source_ <=> o.source_; c != 0) return c;
  for (std::size_t y = 0; y < target_; ++y)
    if (auto c = rows_[y] <=> o.rows_[y]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::string Correspondence::to_text() const {
  std::ostringstream os;
  os << "corr " << target_ << ' ' << source_ << '\n';
  for (std::size_t y = 0; y < target_; ++y) {
    for (std::size_t x = 0; x < source_; ++x) os << (contains(y, x) ? '1' : '0');
    os << '\n';
  }
  return os.str();
}

Correspondence compose(const Correspondence& v, const Correspondence& u) {
  require(v.source_size() == u.target_size(), Errc::dimension,
          "composition through mismatched middle set");
  Correspondence out(v.target_size(), u.source_size());
  for (std::size_t z = 0; z < v.target_size(); ++z) {
    std::uint64_t acc = 0;
    std::uint64_t mid = v.row(z);
    while (mid) {
      std::size_t y = std::countr_zero(mid);
      mid &= mid - 1;
      acc |= u.row(y);
    }
    out.set_row(z, acc);
  }
  return out;
}

Correspondence stack(const Correspondence& a, const Correspondence& b) {
  require(a.source_size() == b.source_size(), Errc::dimension,
          "stack requires a common source");
  Correspondence out(a.target_size() + b.target_size(), a.source_size());
  for (std::size_t y = 0; y < a.target_size(); ++y) out.set_row(y, a.row(y));
  for (std::size_t y = 0; y < b.target_size(); ++y)
    out.set_row(a.target_size() + y, b.row(y));
  return out;
}

Correspondence concat(const Correspondence& a, const Correspondence& b) {
  require(a.target_size() == b.target_size(), Errc::dimension,
          "concat requires a common target");
  Correspondence out(a.target_size(), a.source_size() + b.source_size());
  for (std::size_t y = 0; y < a.target_size(); ++y)
    out.set_row(y, a.row(y) | (b.row(y) << a.source_size()));
  return out;
}

Correspondence block_diag(const Correspondence& a, const Correspondence& b) {
  return stack(concat(a, Correspondence(a.target_size(), b.source_size())),
               concat(Correspondence(b.target_size(), a.source_size()), b));
}

std::uint64_t correspondence_count(std::size_t target, std::size_t source) {
  require(target * source <= 25, Errc::bound,
          "correspondence enumeration limited to 2^25");
  return std::uint64_t{1} << (target * source);
}

CorrespondenceRange::CorrespondenceRange(std::size_t target,
                                         std::size_t source)
    : target_(target), source_(source),
      count_(correspondence_count(target, source)) {}

Correspondence CorrespondenceRange::next() {
  require(!done(), Errc::internal, "correspondence range exhausted");
  return Correspondence::from_index(target_, source_, next_++);
}

RelAlgElement RelAlgElement::unit(std::size_t ground) {
  return basis(Correspondence::identity(ground));
}

RelAlgElement RelAlgElement::basis(const Correspondence& r) {
  require(r.target_size() == r.source_size(), Errc::invalid_argument,
          "relation algebra elements live on a single ground set");
  RelAlgElement e(r.target_size());
  e.terms_.emplace(r, 1);
  return e;
}

void RelAlgElement::add_term(const Correspondence& r, const Scalar& c) {
  require(r.target_size() == ground_ && r.source_size() == ground_,
          Errc::dimension, "term on a different ground set");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(r, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

RelAlgElement RelAlgElement::operator+(const RelAlgElement& o) const {
  require(ground_ == o.ground_, Errc::dimension, "sum across ground sets");
  RelAlgElement out = *this;
  for (const auto& [r, c] : o.terms_) out.add_term(r, c);
  return out;
}

RelAlgElement RelAlgElement::operator-(const RelAlgElement& o) const {
  return *this + o.scaled(-1);
}

RelAlgElement RelAlgElement::operator*(const RelAlgElement& o) const {
  require(ground_ == o.ground_, Errc::dimension, "product across ground sets");
  RelAlgElement out(ground_);
  for (const auto& [r, c] : terms_)
    for (const auto& [s, d] : o.terms_) out.add_term(compose(r, s), c * d);
  return out;
}

RelAlgElement RelAlgElement::scaled(const Scalar& c) const {
  RelAlgElement out(ground_);
  if (c == 0) return out;
  for (const auto& [r, x] : terms_) out.terms_.emplace(r, x * c);
  return out;
}

}  // namespace corrfun
