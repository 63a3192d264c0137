#include "rmodule.hpp"

#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "error.hpp"

namespace corrfun {

struct RModule::Impl {
  std::size_t ground = 0;
  std::size_t dim = 0;
  ActionFn action_fn;
  mutable std::mutex mutex;
  mutable std::map<Correspondence, Matrix> cache;
};

RModule::RModule(std::size_t ground, std::size_t dim, ActionFn action) {
  require(action != nullptr, Errc::invalid_argument, "module needs an action");
  impl_ = std::make_shared<Impl>();
  impl_->ground = ground;
  impl_->dim = dim;
  impl_->action_fn = std::move(action);
}

std::size_t RModule::ground() const {
  require(impl_ != nullptr, Errc::invalid_argument, "empty module handle");
  return impl_->ground;
}

std::size_t RModule::dim() const {
  require(impl_ != nullptr, Errc::invalid_argument, "empty module handle");
  return impl_->dim;
}

const Matrix& RModule::action(const Correspondence& r) const {
  require(impl_ != nullptr, Errc::invalid_argument, "empty module handle");
  require(r.source_size() == impl_->ground && r.target_size() == impl_->ground,
          Errc::invalid_argument, "relation is not on the module ground set");
  std::lock_guard<std::mutex> lock(impl_->mutex);
  auto it = impl_->cache.find(r);
  if (it != impl_->cache.end()) return it->second;
  Matrix m = impl_->action_fn(r);
  require(m.rows() == impl_->dim && m.cols() == impl_->dim, Errc::internal,
          "module action has wrong shape");
  auto [pos, inserted] = impl_->cache.emplace(r, std::move(m));
  (void)inserted;
  return pos->second;
}

RModule regular_module(std::size_t e) {
  require(e * e <= 25, Errc::bound, "ground set too large for regular module");
  const std::size_t dim = correspondence_count(e, e);
  auto action = [e, dim](const Correspondence& r) {
    Matrix m(dim, dim);
    CorrespondenceRange range(e, e);
    while (!range.done()) {
      const Correspondence s = range.next();
      m.at(compose(r, s).index(), s.index()) = scalar(1);
    }
    return m;
  };
  return RModule(e, dim, action);
}

SweepResult module_sweep(const RModule& w, const SweepPolicy& policy) {
  SweepResult result;
  const std::size_t e = w.ground();
  result.exhaustive += 1;
  if (!w.action(Correspondence::identity(e)).is_identity()) {
    result.witness = "module action at the identity relation is not identity";
    return result;
  }
  auto check = [&](const Correspondence& r, const Correspondence& s) {
    if (w.action(compose(r, s)) == w.action(r) * w.action(s)) return true;
    result.witness = "module action is not multiplicative";
    return false;
  };
  if (2 * e * e <= static_cast<std::size_t>(policy.exhaustive_bits)) {
    CorrespondenceRange rs(e, e);
    while (!rs.done()) {
      const Correspondence r = rs.next();
      CorrespondenceRange ss(e, e);
      while (!ss.done()) {
        result.exhaustive += 1;
        if (!check(r, ss.next())) return result;
      }
    }
  } else {
    Rng rng(policy.seed);
    for (int i = 0; i < policy.samples; ++i) {
      result.sampled += 1;
      if (!check(random_correspondence(rng, e, e),
                 random_correspondence(rng, e, e))) {
        return result;
      }
    }
  }
  return result;
}

std::size_t induced_ambient_dim(const RModule& w, std::size_t f) {
  return correspondence_count(f, w.ground()) * w.dim();
}

std::vector<Vec> induced_relators(const RModule& w, std::size_t f) {
  const std::size_t e = w.ground();
  const std::size_t dim_w = w.dim();
  const std::size_t ambient = induced_ambient_dim(w, f);
  std::vector<Vec> relators;
  CorrespondenceRange as(f, e);
  while (!as.done()) {
    const Correspondence a = as.next();
    CorrespondenceRange rs(e, e);
    while (!rs.done()) {
      const Correspondence r = rs.next();
      const std::uint64_t moved = compose(a, r).index();
      const Matrix& act = w.action(r);
      for (std::size_t col = 0; col < dim_w; ++col) {
        Vec rel(ambient, scalar(0));
        rel[moved * dim_w + col] += scalar(1);
        for (std::size_t v = 0; v < dim_w; ++v) {
          if (act.at(v, col) == scalar(0)) continue;
          rel[a.index() * dim_w + v] -= act.at(v, col);
        }
        bool zero = true;
        for (const Scalar& c : rel) {
          if (c != 0) {
            zero = false;
            break;
          }
        }
        if (!zero) relators.push_back(std::move(rel));
      }
    }
  }
  return relators;
}

Matrix induced_ambient_action(const RModule& w, const Correspondence& u) {
  const std::size_t e = w.ground();
  const std::size_t dim_w = w.dim();
  const std::size_t rows = correspondence_count(u.target_size(), e) * dim_w;
  const std::size_t cols = correspondence_count(u.source_size(), e) * dim_w;
  Matrix m(rows, cols);
  CorrespondenceRange as(u.source_size(), e);
  while (!as.done()) {
    const Correspondence a = as.next();
    const std::uint64_t moved = compose(u, a).index();
    for (std::size_t v = 0; v < dim_w; ++v) {
      m.at(moved * dim_w + v, a.index() * dim_w + v) = scalar(1);
    }
  }
  return m;
}

InducedModule induced_module(const RModule& w, std::size_t f) {
  InducedModule out;
  out.ambient_dim = induced_ambient_dim(w, f);
  out.presentation = quotient_presentation(out.ambient_dim,
                                           induced_relators(w, f));
  const QuotientPresentation pres = out.presentation;
  RModule parent = w;
  auto action = [parent, pres](const Correspondence& v) {
    return pres.projection *
           (induced_ambient_action(parent, v) * pres.section);
  };
  out.module = RModule(f, pres.dim(), action);
  return out;
}

LFunctorData l_functor(std::size_t e, const RModule& w, int bound) {
  require(w.ground() == e, Errc::invalid_argument,
          "module ground set mismatch");
  LFunctorData data;
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> labels;
  for (int n = 0; n <= bound; ++n) {
    const std::size_t size = static_cast<std::size_t>(n);
    data.ambient_dims.push_back(induced_ambient_dim(w, size));
    data.presentations.push_back(
        quotient_presentation(data.ambient_dims.back(),
                              induced_relators(w, size)));
    dims.push_back(data.presentations.back().dim());
    std::vector<std::string> row;
    for (std::size_t i = 0; i < dims.back(); ++i) {
      row.push_back("q" + std::to_string(n) + "." + std::to_string(i));
    }
    labels.push_back(std::move(row));
  }
  std::vector<QuotientPresentation> pres = data.presentations;
  RModule parent = w;
  auto action = [parent, pres](const Correspondence& u) {
    const QuotientPresentation& py = pres[u.target_size()];
    const QuotientPresentation& px = pres[u.source_size()];
    return py.projection * (induced_ambient_action(parent, u) * px.section);
  };
  data.rep = FunctorRep(bound, std::move(dims), std::move(labels), action);
  return data;
}

}  // namespace corrfun
