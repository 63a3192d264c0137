#include "hom.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>

#include "error.hpp"

namespace corrfun {

namespace {

using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;

// Shrinking solution space: starts as the full coordinate space and
// intersects with the kernel of each constraint row. The surviving space
// is exactly the kernel of the stacked constraint matrix once every row
// has been offered and none shrinks it further.
class SolutionSpace {
 public:
  explicit SolutionSpace(std::size_t dim) : dim_(dim) {
    cols_.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      Vec v(dim, scalar(0));
      v[i] = scalar(1);
      cols_.push_back(std::move(v));
    }
  }

  std::size_t count() const { return cols_.size(); }

  bool add_constraint(const SparseRow& row) {
    if (cols_.empty()) return false;
    const std::size_t s = cols_.size();
    Vec t(s, scalar(0));
    std::size_t pivot = s;
    for (std::size_t j = 0; j < s; ++j) {
      Scalar acc(0);
      for (const auto& [i, c] : row) {
        if (cols_[j][i] != 0) acc += c * cols_[j][i];
      }
      if (acc != 0 && pivot == s) pivot = j;
      t[j] = std::move(acc);
    }
    if (pivot == s) return false;
    for (std::size_t j = 0; j < s; ++j) {
      if (j == pivot || t[j] == 0) continue;
      const Scalar f = t[j] / t[pivot];
      Vec& cj = cols_[j];
      const Vec& cp = cols_[pivot];
      for (std::size_t i = 0; i < dim_; ++i) {
        if (cp[i] != 0) cj[i] -= f * cp[i];
      }
    }
    cols_.erase(cols_.begin() + static_cast<std::ptrdiff_t>(pivot));
    return true;
  }

  // Unique reduced basis of the space, as columns, independent of the
  // order the constraints arrived in.
  Matrix canonical_basis() const {
    Matrix rows(cols_.size(), dim_);
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      for (std::size_t i = 0; i < dim_; ++i) rows.at(j, i) = cols_[j][i];
    }
    rref_in_place(rows);
    Matrix out(dim_, cols_.size());
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      for (std::size_t i = 0; i < dim_; ++i) out.at(i, j) = rows.at(j, i);
    }
    return out;
  }

 private:
  std::size_t dim_;
  std::vector<Vec> cols_;
};

// Size pairs ordered so constraints between small sets arrive first and
// each largest size is pinned by smaller ones before its own block runs.
// Intersection with constraint kernels is monotone, so one pass over all
// constraints computes the exact kernel of the stacked system; the order
// only affects speed.
std::vector<std::pair<int, int>> ordered_size_pairs(int bound) {
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x <= bound; ++x) {
    for (int y = 0; y <= bound; ++y) pairs.emplace_back(x, y);
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    const int ma = std::max(a.first, a.second);
    const int mb = std::max(b.first, b.second);
    if (ma != mb) return ma < mb;
    const int sa = a.first + a.second;
    const int sb = b.first + b.second;
    if (sa != sb) return sa < sb;
    return a < b;
  });
  return pairs;
}

}  // namespace

HomBasis hom_solver(const FunctorRep& m, const FunctorRep& mp) {
  require(m.bound() == mp.bound(), Errc::bound,
          "hom solver needs equal bounds");
  const int bound = m.bound();
  std::vector<std::size_t> offset(static_cast<std::size_t>(bound) + 2, 0);
  for (int n = 0; n <= bound; ++n) {
    offset[n + 1] = offset[n] + mp.dim(n) * m.dim(n);
  }
  const std::size_t total = offset.back();
  SolutionSpace space(total);

  // Unknown psi_n has shape mp.dim(n) x m.dim(n); entry (r,c) sits at
  // offset[n] + r*m.dim(n) + c.
  auto constrain = [&](const Correspondence& u) {
    const int x = static_cast<int>(u.source_size());
    const int y = static_cast<int>(u.target_size());
    const Matrix& a = m.action(u);
    const Matrix& ap = mp.action(u);
    const std::size_t dx = m.dim(x);
    const std::size_t dy = m.dim(y);
    const std::size_t dpx = mp.dim(x);
    const std::size_t dpy = mp.dim(y);
    bool shrank = false;
    SparseRow row;
    for (std::size_t r = 0; r < dpy; ++r) {
      for (std::size_t c = 0; c < dx; ++c) {
        row.clear();
        for (std::size_t k = 0; k < dpx; ++k) {
          if (ap.at(r, k) != 0) {
            row.emplace_back(offset[x] + k * dx + c, ap.at(r, k));
          }
        }
        for (std::size_t l = 0; l < dy; ++l) {
          if (a.at(l, c) != 0) {
            row.emplace_back(offset[y] + r * dy + l, -a.at(l, c));
          }
        }
        if (!row.empty() && space.add_constraint(row)) shrank = true;
      }
    }
    return shrank;
  };

  for (const auto& [x, y] : ordered_size_pairs(bound)) {
    CorrespondenceRange range(static_cast<std::size_t>(y),
                              static_cast<std::size_t>(x));
    while (!range.done()) constrain(range.next());
  }

  HomBasis out;
  out.source = m;
  out.target = mp;
  const Matrix basis = space.canonical_basis();
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    std::vector<Matrix> comps;
    for (int n = 0; n <= bound; ++n) {
      Matrix c(mp.dim(n), m.dim(n));
      for (std::size_t r = 0; r < mp.dim(n); ++r) {
        for (std::size_t cc = 0; cc < m.dim(n); ++cc) {
          c.at(r, cc) = basis.at(offset[n] + r * m.dim(n) + cc, j);
        }
      }
      comps.push_back(std::move(c));
    }
    out.basis.push_back(Morphism{m, mp, std::move(comps)});
  }
  out.exact = m.exactness_degree().has_value() &&
              bound >= *m.exactness_degree();
  return out;
}

const Matrix& Pairing::at(int x, int y) const {
  require(x >= 0 && y >= 0 && x + y <= bound, Errc::bound,
          "pairing component outside bound");
  return components[static_cast<std::size_t>(x) *
                        (static_cast<std::size_t>(bound) + 1) +
                    static_cast<std::size_t>(y)];
}

Matrix& Pairing::at(int x, int y) {
  require(x >= 0 && y >= 0 && x + y <= bound, Errc::bound,
          "pairing component outside bound");
  return components[static_cast<std::size_t>(x) *
                        (static_cast<std::size_t>(bound) + 1) +
                    static_cast<std::size_t>(y)];
}

Pairing zero_pairing(const FunctorRep& left, const FunctorRep& right,
                     const FunctorRep& target) {
  const int bound =
      std::min(std::min(left.bound(), right.bound()), target.bound());
  Pairing eta;
  eta.left = left.truncated(bound);
  eta.right = right.truncated(bound);
  eta.target = target.truncated(bound);
  eta.bound = bound;
  eta.components.assign((static_cast<std::size_t>(bound) + 1) *
                            (static_cast<std::size_t>(bound) + 1),
                        Matrix());
  for (int x = 0; x <= bound; ++x) {
    for (int y = 0; x + y <= bound; ++y) {
      eta.at(x, y) =
          Matrix(target.dim(x + y), left.dim(x) * right.dim(y));
    }
  }
  return eta;
}

Pairing pairing_from_morphism(const Morphism& psi, const FunctorRep& left,
                              const FunctorRep& right) {
  require(psi.source.same_dims(tensor(left, right).truncated(psi.bound())),
          Errc::dimension, "morphism source is not the given tensor");
  Pairing eta = zero_pairing(left.truncated(psi.bound()),
                             right.truncated(psi.bound()),
                             psi.target.truncated(psi.bound()));
  for (int x = 0; x <= eta.bound; ++x) {
    for (int y = 0; x + y <= eta.bound; ++y) {
      const auto sx = static_cast<std::size_t>(x);
      const auto sy = static_cast<std::size_t>(y);
      const Correspondence into_left =
          stack(Correspondence::identity(sx), Correspondence(sy, sx));
      const Correspondence into_right =
          stack(Correspondence(sx, sy), Correspondence::identity(sy));
      eta.at(x, y) = psi.at(x + y) * Matrix::kronecker(left.action(into_left),
                                                       right.action(into_right));
    }
  }
  return eta;
}

Morphism morphism_from_pairing(const Pairing& eta) {
  const int bound = eta.bound / 2;
  std::vector<Matrix> comps;
  for (int x = 0; x <= bound; ++x) {
    const auto sx = static_cast<std::size_t>(x);
    const Correspondence fold =
        concat(Correspondence::identity(sx), Correspondence::identity(sx));
    comps.push_back(eta.target.action(fold) * eta.at(x, x));
  }
  return Morphism{tensor(eta.left, eta.right).truncated(bound),
                  eta.target.truncated(bound), std::move(comps)};
}

SweepResult binaturality_sweep(const Pairing& eta, const SweepPolicy& policy) {
  SweepResult result;
  Rng rng(policy.seed);
  for (int x = 0; x <= eta.bound; ++x) {
    for (int y = 0; x + y <= eta.bound; ++y) {
      for (int xp = 0; xp <= eta.bound; ++xp) {
        for (int yp = 0; xp + yp <= eta.bound; ++yp) {
          auto check = [&](const Correspondence& u, const Correspondence& v) {
            const Matrix lhs =
                eta.at(xp, yp) * Matrix::kronecker(eta.left.action(u),
                                                   eta.right.action(v));
            const Matrix rhs =
                eta.target.action(block_diag(u, v)) * eta.at(x, y);
            if (lhs == rhs) return true;
            result.witness = "binaturality fails at sizes (" +
                             std::to_string(x) + "," + std::to_string(y) +
                             ")->(" + std::to_string(xp) + "," +
                             std::to_string(yp) + ")";
            return false;
          };
          const int bits = xp * x + yp * y;
          if (bits <= policy.exhaustive_bits) {
            CorrespondenceRange us(static_cast<std::size_t>(xp),
                                   static_cast<std::size_t>(x));
            while (!us.done()) {
              const Correspondence u = us.next();
              CorrespondenceRange vs(static_cast<std::size_t>(yp),
                                     static_cast<std::size_t>(y));
              while (!vs.done()) {
                result.exhaustive += 1;
                if (!check(u, vs.next())) return result;
              }
            }
          } else {
            for (int i = 0; i < policy.samples; ++i) {
              result.sampled += 1;
              if (!check(random_correspondence(rng,
                                               static_cast<std::size_t>(xp),
                                               static_cast<std::size_t>(x)),
                         random_correspondence(rng,
                                               static_cast<std::size_t>(yp),
                                               static_cast<std::size_t>(y)))) {
                return result;
              }
            }
          }
        }
      }
    }
  }
  return result;
}

std::vector<Pairing> pairing_solver(const FunctorRep& left,
                                    const FunctorRep& right,
                                    const FunctorRep& target) {
  const int bound =
      std::min(std::min(left.bound(), right.bound()), target.bound());
  const FunctorRep l = left.truncated(bound);
  const FunctorRep r = right.truncated(bound);
  const FunctorRep t = target.truncated(bound);

  // Valid component slots (x,y) with x+y <= bound, with flat offsets.
  std::vector<std::pair<int, int>> slots;
  std::map<std::pair<int, int>, std::size_t> offset;
  std::size_t total = 0;
  for (int x = 0; x <= bound; ++x) {
    for (int y = 0; x + y <= bound; ++y) {
      slots.emplace_back(x, y);
      offset[{x, y}] = total;
      total += t.dim(x + y) * l.dim(x) * r.dim(y);
    }
  }
  SolutionSpace space(total);

  // Entry (row, cl, cr) of component (x,y) sits at
  // offset + row*(dl(x)*dr(y)) + cl*dr(y) + cr.
  auto constrain = [&](int x, int y, int xp, int yp, const Correspondence& u,
                       const Correspondence& v) {
    const Matrix& au = l.action(u);
    const Matrix& av = r.action(v);
    const Matrix& at = t.action(block_diag(u, v));
    const std::size_t dlx = l.dim(x), dry = r.dim(y);
    const std::size_t dlxp = l.dim(xp), dryp = r.dim(yp);
    const std::size_t rows_out = t.dim(xp + yp);
    const std::size_t off_src = offset.at({x, y});
    const std::size_t off_dst = offset.at({xp, yp});
    bool shrank = false;
    SparseRow row;
    for (std::size_t rr = 0; rr < rows_out; ++rr) {
      for (std::size_t cl = 0; cl < dlx; ++cl) {
        for (std::size_t cr = 0; cr < dry; ++cr) {
          row.clear();
          for (std::size_t kl = 0; kl < dlxp; ++kl) {
            if (au.at(kl, cl) == 0) continue;
            for (std::size_t kr = 0; kr < dryp; ++kr) {
              if (av.at(kr, cr) == 0) continue;
              row.emplace_back(off_dst + rr * (dlxp * dryp) + kl * dryp + kr,
                               au.at(kl, cl) * av.at(kr, cr));
            }
          }
          for (std::size_t ll = 0; ll < t.dim(x + y); ++ll) {
            if (at.at(rr, ll) == 0) continue;
            row.emplace_back(off_src + ll * (dlx * dry) + cl * dry + cr,
                             -at.at(rr, ll));
          }
          if (!row.empty() && space.add_constraint(row)) shrank = true;
        }
      }
    }
    return shrank;
  };

  // Constraint groups ordered by enumeration cost; one pass suffices since
  // kernel intersection is monotone.
  struct Group {
    int x, y, xp, yp;
  };
  std::vector<Group> groups;
  for (const auto& [x, y] : slots) {
    for (const auto& [xp, yp] : slots) groups.push_back({x, y, xp, yp});
  }
  std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) {
    const int ba = a.xp * a.x + a.yp * a.y;
    const int bb = b.xp * b.x + b.yp * b.y;
    if (ba != bb) return ba < bb;
    return std::tie(a.x, a.y, a.xp, a.yp) < std::tie(b.x, b.y, b.xp, b.yp);
  });
  for (const Group& g : groups) {
    CorrespondenceRange us(static_cast<std::size_t>(g.xp),
                           static_cast<std::size_t>(g.x));
    while (!us.done()) {
      const Correspondence u = us.next();
      CorrespondenceRange vs(static_cast<std::size_t>(g.yp),
                             static_cast<std::size_t>(g.y));
      while (!vs.done()) constrain(g.x, g.y, g.xp, g.yp, u, vs.next());
    }
  }

  std::vector<Pairing> out;
  const Matrix basis = space.canonical_basis();
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    Pairing eta = zero_pairing(l, r, t);
    for (const auto& [x, y] : slots) {
      Matrix& comp = eta.at(x, y);
      const std::size_t off = offset.at({x, y});
      for (std::size_t rr = 0; rr < comp.rows(); ++rr) {
        for (std::size_t cc = 0; cc < comp.cols(); ++cc) {
          comp.at(rr, cc) = basis.at(off + rr * comp.cols() + cc, j);
        }
      }
    }
    out.push_back(std::move(eta));
  }
  return out;
}

namespace {

// Stacked coordinates of a morphism's components at sizes 0..limit.
Vec flatten_components(const std::vector<Matrix>& comps, int limit) {
  Vec out;
  for (int n = 0; n <= limit; ++n) {
    const Matrix& c = comps[static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < c.rows(); ++i) {
      for (std::size_t j = 0; j < c.cols(); ++j) out.push_back(c.at(i, j));
    }
  }
  return out;
}

}  // namespace

FunctorRep internal_hom(const FunctorRep& m, const FunctorRep& n,
                        int out_bound) {
  require(out_bound >= 0, Errc::invalid_argument,
          "internal hom needs a nonnegative output bound");
  require(n.bound() >= out_bound, Errc::bound,
          "target bound too small for the requested output bound");

  struct Evaluation {
    HomBasis hom;
    int eff = 0;
  };
  auto evals = std::make_shared<std::vector<Evaluation>>();
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> labels;
  for (int e = 0; e <= out_bound; ++e) {
    Evaluation ev;
    ev.eff = std::min(m.bound(), n.bound() - e);
    ev.hom = hom_solver(m.truncated(ev.eff),
                        shift(n, static_cast<std::size_t>(e)).truncated(ev.eff));
    dims.push_back(ev.hom.dim());
    std::vector<std::string> row;
    for (std::size_t i = 0; i < dims.back(); ++i) {
      row.push_back("h" + std::to_string(e) + "." + std::to_string(i));
    }
    labels.push_back(std::move(row));
    evals->push_back(std::move(ev));
  }

  FunctorRep source = m;
  FunctorRep target = n;
  auto action = [evals, source, target](const Correspondence& v) {
    const int e = static_cast<int>(v.source_size());
    const int f = static_cast<int>(v.target_size());
    const Evaluation& src = (*evals)[static_cast<std::size_t>(e)];
    const Evaluation& dst = (*evals)[static_cast<std::size_t>(f)];
    // Composites are defined at sizes up to the smaller usable range.
    const int limit = std::min(src.eff,
                               std::min(target.bound() - std::max(e, f),
                                        dst.eff));
    // Express each composite in the destination solver basis restricted
    // to the common range.
    std::size_t rows = 0;
    for (int k = 0; k <= limit; ++k) {
      rows += target.dim(k + f) * source.dim(k);
    }
    Matrix basis(rows, dst.hom.dim());
    for (std::size_t j = 0; j < dst.hom.dim(); ++j) {
      const Vec flat = flatten_components(dst.hom.basis[j].components, limit);
      basis.set_column(j, flat);
    }
    require(rank(basis) == dst.hom.dim(), Errc::bound,
            "truncation too small to express the internal hom action");
    const Morphism shifter = shift_morphism(target, v);
    Matrix out(dst.hom.dim(), src.hom.dim());
    for (std::size_t j = 0; j < src.hom.dim(); ++j) {
      std::vector<Matrix> comps;
      for (int k = 0; k <= limit; ++k) {
        comps.push_back(shifter.at(k) * src.hom.basis[j].at(k));
      }
      const auto sol = solve_linear(basis, flatten_components(comps, limit));
      require(sol.has_value(), Errc::bound,
              "internal hom action does not land in the solver basis span");
      out.set_column(j, *sol);
    }
    return out;
  };
  return FunctorRep(out_bound, std::move(dims), std::move(labels), action);
}

}  // namespace corrfun
