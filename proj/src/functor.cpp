#include "functor.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <utility>

#include "error.hpp"

namespace corrfun {

struct FunctorRep::Impl {
  int bound = -1;
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> labels;
  ActionFn action_fn;
  BasisFn basis_fn;
  std::optional<int> exactness_degree;
  mutable std::mutex mutex;
  mutable std::map<Correspondence, Matrix> cache;
};

FunctorRep::FunctorRep(int bound, std::vector<std::size_t> dims,
                       std::vector<std::vector<std::string>> labels,
                       ActionFn action, BasisFn basis_action,
                       std::optional<int> exactness_degree) {
  require(bound >= 0, Errc::invalid_argument, "functor bound must be >= 0");
  require(dims.size() == static_cast<std::size_t>(bound) + 1,
          Errc::invalid_argument, "functor dims must cover sizes 0..bound");
  require(labels.size() == dims.size(), Errc::invalid_argument,
          "functor labels must cover sizes 0..bound");
  for (std::size_t n = 0; n < dims.size(); ++n) {
    require(labels[n].size() == dims[n], Errc::invalid_argument,
            "label count must match dimension");
  }
  impl_ = std::make_shared<Impl>();
  impl_->bound = bound;
  impl_->dims = std::move(dims);
  impl_->labels = std::move(labels);
  impl_->action_fn = std::move(action);
  impl_->basis_fn = std::move(basis_action);
  impl_->exactness_degree = exactness_degree;
}

int FunctorRep::bound() const {
  require(impl_ != nullptr, Errc::invalid_argument, "empty functor handle");
  return impl_->bound;
}

std::size_t FunctorRep::dim(int n) const {
  require(impl_ != nullptr, Errc::invalid_argument, "empty functor handle");
  require(n >= 0 && n <= impl_->bound, Errc::bound,
          "size " + std::to_string(n) + " outside functor bound " +
              std::to_string(impl_->bound));
  return impl_->dims[static_cast<std::size_t>(n)];
}

const std::string& FunctorRep::label(int n, std::size_t i) const {
  require(i < dim(n), Errc::invalid_argument, "basis label out of range");
  return impl_->labels[static_cast<std::size_t>(n)][i];
}

const Matrix& FunctorRep::action(const Correspondence& u) const {
  require(impl_ != nullptr, Errc::invalid_argument, "empty functor handle");
  const int x = static_cast<int>(u.source_size());
  const int y = static_cast<int>(u.target_size());
  require(x <= impl_->bound && y <= impl_->bound, Errc::bound,
          "correspondence endpoints exceed functor bound");
  std::lock_guard<std::mutex> lock(impl_->mutex);
  auto it = impl_->cache.find(u);
  if (it != impl_->cache.end()) return it->second;
  Matrix m(0, 0);
  const std::size_t rows = impl_->dims[static_cast<std::size_t>(y)];
  const std::size_t cols = impl_->dims[static_cast<std::size_t>(x)];
  if (impl_->basis_fn) {
    m = Matrix(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
      const std::uint64_t image = impl_->basis_fn(u, j);
      require(image < rows, Errc::internal, "basis image out of range");
      m.at(image, j) = scalar(1);
    }
  } else {
    require(impl_->action_fn != nullptr, Errc::internal,
            "functor has no action");
    m = impl_->action_fn(u);
    require(m.rows() == rows && m.cols() == cols, Errc::internal,
            "action matrix has wrong shape");
  }
  auto [pos, inserted] = impl_->cache.emplace(u, std::move(m));
  (void)inserted;
  return pos->second;
}

bool FunctorRep::basis_functional() const {
  require(impl_ != nullptr, Errc::invalid_argument, "empty functor handle");
  return impl_->basis_fn != nullptr;
}

std::uint64_t FunctorRep::basis_image(const Correspondence& u,
                                      std::uint64_t i) const {
  require(basis_functional(), Errc::invalid_argument,
          "functor action is not basis functional");
  require(static_cast<int>(u.source_size()) <= impl_->bound &&
              static_cast<int>(u.target_size()) <= impl_->bound,
          Errc::bound, "correspondence endpoints exceed functor bound");
  require(i < impl_->dims[u.source_size()], Errc::invalid_argument,
          "basis index out of range");
  return impl_->basis_fn(u, i);
}

std::optional<int> FunctorRep::exactness_degree() const {
  require(impl_ != nullptr, Errc::invalid_argument, "empty functor handle");
  return impl_->exactness_degree;
}

FunctorRep FunctorRep::truncated(int bound) const {
  require(impl_ != nullptr, Errc::invalid_argument, "empty functor handle");
  require(bound >= 0 && bound <= impl_->bound, Errc::bound,
          "truncation bound exceeds functor bound");
  if (bound == impl_->bound) return *this;
  const std::size_t count = static_cast<std::size_t>(bound) + 1;
  std::vector<std::size_t> dims(impl_->dims.begin(),
                                impl_->dims.begin() + count);
  std::vector<std::vector<std::string>> labels(
      impl_->labels.begin(), impl_->labels.begin() + count);
  FunctorRep parent = *this;
  ActionFn act = [parent](const Correspondence& u) {
    return parent.action(u);
  };
  FunctorRep::BasisFn basis = nullptr;
  if (impl_->basis_fn) {
    basis = [parent](const Correspondence& u, std::uint64_t i) {
      return parent.basis_image(u, i);
    };
  }
  return FunctorRep(bound, std::move(dims), std::move(labels), std::move(act),
                    std::move(basis), impl_->exactness_degree);
}

bool FunctorRep::same_dims(const FunctorRep& o) const {
  if (bound() != o.bound()) return false;
  for (int n = 0; n <= bound(); ++n) {
    if (dim(n) != o.dim(n)) return false;
  }
  return true;
}

namespace {

std::size_t pow_size(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    require(base == 0 || r <= SIZE_MAX / (base == 0 ? 1 : base),
            Errc::bound, "functor dimension overflow");
    r *= base;
  }
  return r;
}

// Functions X -> T in lexicographic order: index digits are the values
// phi(0), phi(1), ... with phi(0) most significant, base |T|.
std::vector<std::size_t> decode_function(std::uint64_t index, std::size_t n,
                                         std::size_t t) {
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t x = n; x-- > 0;) {
    digits[x] = static_cast<std::size_t>(index % t);
    index /= t;
  }
  return digits;
}

std::uint64_t encode_function(const std::vector<std::size_t>& digits,
                              std::size_t t) {
  std::uint64_t index = 0;
  for (std::size_t d : digits) index = index * t + d;
  return index;
}

std::string function_label(const std::vector<std::size_t>& digits) {
  std::string s = "(";
  for (std::size_t x = 0; x < digits.size(); ++x) {
    if (x > 0) s += ",";
    s += std::to_string(digits[x]);
  }
  s += ")";
  return s;
}

bool is_powerset_order(const Lattice& t, std::size_t* out_exponent) {
  std::size_t size = t.size();
  std::size_t exponent = 0;
  while ((std::size_t{1} << exponent) < size) ++exponent;
  if ((std::size_t{1} << exponent) != size) return false;
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) {
      if (t.leq(a, b) != ((a & ~b) == 0)) return false;
    }
  }
  *out_exponent = exponent;
  return true;
}

std::string correspondence_inline(const Correspondence& u) {
  std::string s = std::to_string(u.target_size()) + "x" + std::to_string(u.source_size()) + ":";
  for (std::size_t y = 0; y < u.target_size(); ++y) {
    if (y > 0) s += "|";
    for (std::size_t x = 0; x < u.source_size(); ++x) {
      s += u.contains(y, x) ? '1' : '0';
    }
  }
  return s;
}

}  // namespace

FunctorRep constant_functor(int bound) {
  std::vector<std::size_t> dims(static_cast<std::size_t>(bound) + 1, 1);
  std::vector<std::vector<std::string>> labels(dims.size(), {"1"});
  auto basis = [](const Correspondence&, std::uint64_t) -> std::uint64_t {
    return 0;
  };
  return FunctorRep(bound, std::move(dims), std::move(labels), nullptr,
                    basis, 0);
}

FunctorRep zero_functor(int bound) {
  std::vector<std::size_t> dims(static_cast<std::size_t>(bound) + 1, 0);
  std::vector<std::vector<std::string>> labels(dims.size(),
                                               std::vector<std::string>{});
  auto action = [](const Correspondence&) { return Matrix(0, 0); };
  return FunctorRep(bound, std::move(dims), std::move(labels), action, nullptr,
                    std::nullopt);
}

FunctorRep representable(std::size_t e, int bound) {
  require(e <= 25, Errc::bound, "representing set too large");
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> labels;
  for (int n = 0; n <= bound; ++n) {
    require(static_cast<std::size_t>(n) * e <= 25, Errc::bound,
            "representable functor dimension too large at this bound");
    const std::size_t d = pow_size(2, static_cast<std::size_t>(n) * e);
    dims.push_back(d);
    std::vector<std::string> row;
    row.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
      row.push_back(correspondence_inline(
          Correspondence::from_index(static_cast<std::size_t>(n), e, i)));
    }
    labels.push_back(std::move(row));
  }
  auto basis = [e](const Correspondence& u, std::uint64_t i) -> std::uint64_t {
    const Correspondence a = Correspondence::from_index(u.source_size(), e, i);
    return compose(u, a).index();
  };
  return FunctorRep(bound, std::move(dims), std::move(labels), nullptr, basis,
                    static_cast<int>(e));
}

FunctorRep lattice_functor(const Lattice& t, int bound) {
  const std::size_t size = t.size();
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> labels;
  for (int n = 0; n <= bound; ++n) {
    const std::size_t d = pow_size(size, static_cast<std::size_t>(n));
    require(d <= (std::uint64_t{1} << 22), Errc::bound,
            "lattice functor dimension too large at this bound");
    dims.push_back(d);
    std::vector<std::string> row;
    row.reserve(d);
    for (std::uint64_t i = 0; i < d; ++i) {
      row.push_back(function_label(
          decode_function(i, static_cast<std::size_t>(n), size)));
    }
    labels.push_back(std::move(row));
  }
  Lattice lat = t;
  auto basis = [lat, size](const Correspondence& u,
                           std::uint64_t i) -> std::uint64_t {
    const std::vector<std::size_t> phi =
        decode_function(i, u.source_size(), size);
    std::vector<std::size_t> image(u.target_size(), 0);
    for (std::size_t y = 0; y < u.target_size(); ++y) {
      std::vector<std::size_t> values;
      std::uint64_t row = u.row(y);
      while (row != 0) {
        const int x = std::countr_zero(row);
        row &= row - 1;
        values.push_back(phi[static_cast<std::size_t>(x)]);
      }
      image[y] = lat.join_of(values);
    }
    return encode_function(image, size);
  };
  std::optional<int> degree;
  std::size_t exponent = 0;
  if (is_powerset_order(t, &exponent)) degree = static_cast<int>(exponent);
  return FunctorRep(bound, std::move(dims), std::move(labels), nullptr, basis,
                    degree);
}

FunctorRep tensor(const FunctorRep& m, const FunctorRep& mp) {
  const int bound = std::min(m.bound(), mp.bound());
  const FunctorRep left = m.truncated(bound);
  const FunctorRep right = mp.truncated(bound);
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> labels;
  for (int n = 0; n <= bound; ++n) {
    const std::size_t dl = left.dim(n);
    const std::size_t dr = right.dim(n);
    require(dr == 0 || dl <= SIZE_MAX / (dr == 0 ? 1 : dr), Errc::bound,
            "tensor dimension overflow");
    dims.push_back(dl * dr);
    std::vector<std::string> row;
    row.reserve(dl * dr);
    for (std::size_t i = 0; i < dl; ++i) {
      for (std::size_t j = 0; j < dr; ++j) {
        row.push_back(left.label(n, i) + "*" + right.label(n, j));
      }
    }
    labels.push_back(std::move(row));
  }
  std::optional<int> degree;
  if (left.exactness_degree() && right.exactness_degree()) {
    degree = *left.exactness_degree() + *right.exactness_degree();
  }
  FunctorRep::BasisFn basis = nullptr;
  FunctorRep::ActionFn action = nullptr;
  if (left.basis_functional() && right.basis_functional()) {
    basis = [left, right](const Correspondence& u,
                          std::uint64_t i) -> std::uint64_t {
      const std::uint64_t dr_src = right.dim(static_cast<int>(u.source_size()));
      const std::uint64_t dr_dst = right.dim(static_cast<int>(u.target_size()));
      const std::uint64_t il = i / dr_src;
      const std::uint64_t ir = i % dr_src;
      return left.basis_image(u, il) * dr_dst + right.basis_image(u, ir);
    };
  } else {
    action = [left, right](const Correspondence& u) {
      return Matrix::kronecker(left.action(u), right.action(u));
    };
  }
  return FunctorRep(bound, std::move(dims), std::move(labels),
                    std::move(action), std::move(basis), degree);
}

FunctorRep shift(const FunctorRep& m, std::size_t e) {
  require(m.bound() >= static_cast<int>(e), Errc::bound,
          "shift amount exceeds functor bound");
  const int bound = m.bound() - static_cast<int>(e);
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> labels;
  for (int n = 0; n <= bound; ++n) {
    const int parent = n + static_cast<int>(e);
    dims.push_back(m.dim(parent));
    std::vector<std::string> row;
    row.reserve(m.dim(parent));
    for (std::size_t i = 0; i < m.dim(parent); ++i) {
      row.push_back(m.label(parent, i));
    }
    labels.push_back(std::move(row));
  }
  const Correspondence pad = Correspondence::identity(e);
  FunctorRep parent = m;
  FunctorRep::BasisFn basis = nullptr;
  FunctorRep::ActionFn action = nullptr;
  if (m.basis_functional()) {
    basis = [parent, pad](const Correspondence& u, std::uint64_t i) {
      return parent.basis_image(block_diag(u, pad), i);
    };
  } else {
    action = [parent, pad](const Correspondence& u) {
      return parent.action(block_diag(u, pad));
    };
  }
  return FunctorRep(bound, std::move(dims), std::move(labels),
                    std::move(action), std::move(basis),
                    m.exactness_degree());
}

Morphism identity_morphism(const FunctorRep& m) {
  std::vector<Matrix> comps;
  for (int n = 0; n <= m.bound(); ++n) {
    comps.push_back(Matrix::identity(m.dim(n)));
  }
  return Morphism{m, m, std::move(comps)};
}

Morphism compose(const Morphism& g, const Morphism& f) {
  require(g.source.same_dims(f.target), Errc::dimension,
          "morphism composition endpoint mismatch");
  const int bound = std::min(g.bound(), f.bound());
  std::vector<Matrix> comps;
  for (int n = 0; n <= bound; ++n) {
    comps.push_back(g.at(n) * f.at(n));
  }
  return Morphism{f.source.truncated(bound), g.target.truncated(bound),
                  std::move(comps)};
}

Morphism shift_morphism(const FunctorRep& m, const Correspondence& v) {
  const std::size_t e = v.source_size();
  const std::size_t f = v.target_size();
  require(m.bound() >= static_cast<int>(std::max(e, f)), Errc::bound,
          "shift endpoints exceed functor bound");
  const int bound = m.bound() - static_cast<int>(std::max(e, f));
  const FunctorRep source = shift(m, e).truncated(bound);
  const FunctorRep target = shift(m, f).truncated(bound);
  std::vector<Matrix> comps;
  for (int n = 0; n <= bound; ++n) {
    comps.push_back(
        m.action(block_diag(Correspondence::identity(
                                static_cast<std::size_t>(n)),
                            v)));
  }
  return Morphism{source, target, std::move(comps)};
}

Morphism lattice_functor_morphism(const JoinMorphism& f, int bound) {
  const FunctorRep source = lattice_functor(f.source(), bound);
  const FunctorRep target = lattice_functor(f.target(), bound);
  const std::size_t s = f.source().size();
  const std::size_t t = f.target().size();
  std::vector<Matrix> comps;
  for (int n = 0; n <= bound; ++n) {
    Matrix c(target.dim(n), source.dim(n));
    for (std::size_t i = 0; i < source.dim(n); ++i) {
      std::vector<std::size_t> digits =
          decode_function(i, static_cast<std::size_t>(n), s);
      for (std::size_t& d : digits) d = f.apply(d);
      c.at(encode_function(digits, t), i) = scalar(1);
    }
    comps.push_back(std::move(c));
  }
  return Morphism{source, target, std::move(comps)};
}

void SweepResult::merge(const SweepResult& o) {
  exhaustive += o.exhaustive;
  sampled += o.sampled;
  if (!witness && o.witness) witness = o.witness;
}

Correspondence random_correspondence(Rng& rng, std::size_t target,
                                     std::size_t source) {
  Correspondence u(target, source);
  for (std::size_t y = 0; y < target; ++y) {
    for (std::size_t x = 0; x < source; ++x) {
      if (rng.below(2) == 1) u.set(y, x);
    }
  }
  return u;
}

SweepResult functoriality_sweep(const FunctorRep& m,
                                const SweepPolicy& policy) {
  SweepResult result;
  for (int n = 0; n <= m.bound(); ++n) {
    result.exhaustive += 1;
    if (!m.action(Correspondence::identity(static_cast<std::size_t>(n)))
             .is_identity()) {
      result.witness = "action(identity_" + std::to_string(n) +
                       ") is not the identity matrix";
      return result;
    }
  }
  Rng rng(policy.seed);
  for (int z = 0; z <= m.bound(); ++z) {
    for (int y = 0; y <= m.bound(); ++y) {
      for (int x = 0; x <= m.bound(); ++x) {
        const int bits = z * y + y * x;
        auto check = [&](const Correspondence& v, const Correspondence& u) {
          const Matrix lhs = m.action(compose(v, u));
          const Matrix rhs = m.action(v) * m.action(u);
          if (lhs == rhs) return true;
          result.witness = "action(v o u) != action(v) action(u) for v=" +
                           correspondence_inline(v) +
                           " u=" + correspondence_inline(u);
          return false;
        };
        if (bits <= policy.exhaustive_bits) {
          CorrespondenceRange vs(static_cast<std::size_t>(z),
                                 static_cast<std::size_t>(y));
          while (!vs.done()) {
            const Correspondence v = vs.next();
            CorrespondenceRange us(static_cast<std::size_t>(y),
                                   static_cast<std::size_t>(x));
            while (!us.done()) {
              const Correspondence u = us.next();
              result.exhaustive += 1;
              if (!check(v, u)) return result;
            }
          }
        } else {
          for (int s = 0; s < policy.samples; ++s) {
            const Correspondence v = random_correspondence(
                rng, static_cast<std::size_t>(z), static_cast<std::size_t>(y));
            const Correspondence u = random_correspondence(
                rng, static_cast<std::size_t>(y), static_cast<std::size_t>(x));
            result.sampled += 1;
            if (!check(v, u)) return result;
          }
        }
      }
    }
  }
  return result;
}

SweepResult naturality_sweep(const Morphism& psi, const SweepPolicy& policy) {
  SweepResult result;
  const int bound = psi.bound();
  require(bound >= 0, Errc::invalid_argument,
          "morphism has no components");
  Rng rng(policy.seed);
  for (int y = 0; y <= bound; ++y) {
    for (int x = 0; x <= bound; ++x) {
      auto check = [&](const Correspondence& u) {
        const Matrix lhs = psi.target.action(u) * psi.at(x);
        const Matrix rhs = psi.at(y) * psi.source.action(u);
        if (lhs == rhs) return true;
        result.witness =
            "naturality square fails for u=" + correspondence_inline(u);
        return false;
      };
      const int bits = y * x;
      if (bits <= policy.exhaustive_bits) {
        CorrespondenceRange us(static_cast<std::size_t>(y),
                               static_cast<std::size_t>(x));
        while (!us.done()) {
          result.exhaustive += 1;
          if (!check(us.next())) return result;
        }
      } else {
        for (int s = 0; s < policy.samples; ++s) {
          result.sampled += 1;
          if (!check(random_correspondence(rng, static_cast<std::size_t>(y),
                                           static_cast<std::size_t>(x)))) {
            return result;
          }
        }
      }
    }
  }
  return result;
}

}  // namespace corrfun
