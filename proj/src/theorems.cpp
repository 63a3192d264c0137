#include "theorems.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>

#include "error.hpp"
#include "matrix.hpp"
#include "relations.hpp"
#include "rng.hpp"
#include "verify_util.hpp"

namespace corrfun {

using detail::Checker;
using detail::corr_text;
using detail::sweep_composable_pairs;
using detail::sweep_correspondences;

std::string VerificationReport::line() const {
  std::ostringstream out;
  out << "THEOREM " << id << ' ' << (pass ? "PASS" : "FAIL")
      << " cases=" << cases();
  if (!witness.empty()) out << " witness=" << witness;
  return out.str();
}

std::string VerificationReport::json() const {
  nlohmann::ordered_json j;
  j["theorem"] = id;
  j["parameters"] = parameters;
  j["status"] = pass ? "pass" : "fail";
  j["cases"] = cases();
  j["cases_exhaustive"] = cases_exhaustive;
  j["cases_random"] = cases_random;
  if (!witness.empty()) j["witness"] = witness;
  return j.dump();
}

namespace {

std::uint64_t pow_u64(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    require(base == 0 || out <= (std::uint64_t{1} << 62) / std::max<std::uint64_t>(base, 1),
            Errc::bound, "index space too large");
    out *= base;
  }
  return out;
}

// Index table of the pair-of-functions bijection at one size: the tensor
// basis (phi, phi') maps to the function x -> (phi(x), phi'(x)) into the
// product lattice, digit by digit.
std::vector<std::uint64_t> pair_function_table(std::size_t st, std::size_t stp,
                                               std::size_t n) {
  const std::uint64_t dl = pow_u64(st, n);
  const std::uint64_t dr = pow_u64(stp, n);
  std::vector<std::uint64_t> table(static_cast<std::size_t>(dl * dr));
  std::vector<std::size_t> da(n), db(n);
  for (std::uint64_t a = 0; a < dl; ++a) {
    std::uint64_t rest = a;
    for (std::size_t k = n; k-- > 0;) {
      da[k] = static_cast<std::size_t>(rest % st);
      rest /= st;
    }
    for (std::uint64_t b = 0; b < dr; ++b) {
      rest = b;
      for (std::size_t k = n; k-- > 0;) {
        db[k] = static_cast<std::size_t>(rest % stp);
        rest /= stp;
      }
      std::uint64_t out = 0;
      for (std::size_t k = 0; k < n; ++k) {
        out = out * (st * stp) + (da[k] * stp + db[k]);
      }
      table[static_cast<std::size_t>(a * dr + b)] = out;
    }
  }
  return table;
}

// Checks that a per-size index bijection between two basis-functional
// representations is natural, comparing basis images directly.
void check_index_naturality(const FunctorRep& src, const FunctorRep& dst,
                            const std::vector<std::vector<std::uint64_t>>& table,
                            int bound, const VerifyPolicy& policy, Checker& c,
                            const std::string& label) {
  sweep_correspondences(bound, policy, c,
                        [&](const Correspondence& u) -> std::string {
    const std::size_t x = u.source_size();
    const std::size_t y = u.target_size();
    for (std::uint64_t i = 0; i < src.dim(static_cast<int>(x)); ++i) {
      if (table[y][src.basis_image(u, i)] != dst.basis_image(u, table[x][i])) {
        return label + " naturality fails for U=" + corr_text(u) +
               " at basis " + std::to_string(i);
      }
    }
    return {};
  });
}

Lattice powerset_lattice(std::size_t e) {
  const std::size_t size = std::size_t{1} << e;
  std::vector<std::uint8_t> leq(size * size, 0);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b)
      leq[a * size + b] = (a & ~b) == 0 ? 1 : 0;
  return Lattice::from_leq(size, std::move(leq));
}

// Permutation correspondence moving an a-then-b block order to b-then-a.
Correspondence swap_blocks(std::size_t a, std::size_t b) {
  Correspondence v(b + a, a + b);
  for (std::size_t j = 0; j < b; ++j) v.set(j, a + j);
  for (std::size_t i = 0; i < a; ++i) v.set(b + i, i);
  return v;
}

std::string dims_text(const FunctorRep& m) {
  std::ostringstream out;
  out << '[';
  for (int n = 0; n <= m.bound(); ++n) {
    if (n) out << ' ';
    out << m.dim(n);
  }
  out << ']';
  return out.str();
}

}  // namespace

Morphism tau_morphism(const Lattice& t, const Lattice& tp, int bound) {
  const FunctorRep tens = tensor(lattice_functor(t, bound),
                                 lattice_functor(tp, bound));
  const FunctorRep prod = lattice_functor(lattice_product(t, tp), bound);
  std::vector<Matrix> comps;
  for (int n = 0; n <= bound; ++n) {
    const auto table = pair_function_table(t.size(), tp.size(),
                                           static_cast<std::size_t>(n));
    Matrix m(prod.dim(n), tens.dim(n));
    for (std::size_t i = 0; i < table.size(); ++i) {
      m.at(static_cast<std::size_t>(table[i]), i) = 1;
    }
    comps.push_back(std::move(m));
  }
  return Morphism{tens, prod, std::move(comps)};
}

VerificationReport verify_tau(const Lattice& t, const Lattice& tp, int bound,
                              const VerifyPolicy& policy) {
  Checker c("tau", "|T|=" + std::to_string(t.size()) +
                       " |T'|=" + std::to_string(tp.size()) +
                       " bound=" + std::to_string(bound));
  const FunctorRep tens = tensor(lattice_functor(t, bound),
                                 lattice_functor(tp, bound));
  const FunctorRep prod = lattice_functor(lattice_product(t, tp), bound);

  std::vector<std::vector<std::uint64_t>> table(
      static_cast<std::size_t>(bound) + 1);
  for (int n = 0; n <= bound; ++n) {
    if (tens.dim(n) != prod.dim(n)) {
      c.fail("dimension mismatch at size " + std::to_string(n));
      return c.rep;
    }
    table[static_cast<std::size_t>(n)] =
        pair_function_table(t.size(), tp.size(), static_cast<std::size_t>(n));
    std::vector<bool> seen(prod.dim(n), false);
    for (std::uint64_t image : table[static_cast<std::size_t>(n)]) {
      if (seen[static_cast<std::size_t>(image)]) {
        c.fail("pair map is not a bijection at size " + std::to_string(n));
        return c.rep;
      }
      seen[static_cast<std::size_t>(image)] = true;
    }
  }

  check_index_naturality(tens, prod, table, bound, policy, c, "pair map");
  return c.rep;
}

VerificationReport verify_representable_tensor(std::size_t e, std::size_t ep,
                                               int bound,
                                               const VerifyPolicy& policy) {
  require(e + ep <= 3, Errc::invalid_argument,
          "representable tensor verifier needs |E|+|E'| <= 3");
  Checker c("representable-tensor",
            "|E|=" + std::to_string(e) + " |E'|=" + std::to_string(ep) +
                " bound=" + std::to_string(bound));

  const FunctorRep left = representable(e, bound);
  const FunctorRep right = representable(ep, bound);
  const FunctorRep combined = representable(e + ep, bound);
  for (int n = 0; n <= bound; ++n) {
    c.check(left.dim(n) * right.dim(n) == combined.dim(n), true,
            "dimension identity fails at size " + std::to_string(n));
  }
  if (!c.passing()) return c.rep;

  // the pair-of-functions bijection on the powerset lattices
  const Lattice pe = powerset_lattice(e);
  const Lattice pep = powerset_lattice(ep);
  c.merge(verify_tau(pe, pep, bound, policy), "pair map: ");
  if (!c.passing()) return c.rep;

  // product-of-powersets to powerset-of-union lattice isomorphism, with the
  // second block of ground elements shifted above the first
  const Lattice prod = lattice_product(pe, pep);
  std::vector<std::size_t> image(prod.size());
  for (std::size_t a = 0; a < pe.size(); ++a)
    for (std::size_t b = 0; b < pep.size(); ++b)
      image[a * pep.size() + b] = a | (b << e);
  const JoinMorphism iso(prod, powerset_lattice(e + ep), image);
  const FunctorRep fprod = lattice_functor(prod, bound);
  const FunctorRep funion = lattice_functor(powerset_lattice(e + ep), bound);
  std::vector<std::vector<std::uint64_t>> union_table(
      static_cast<std::size_t>(bound) + 1);
  for (int n = 0; n <= bound; ++n) {
    std::vector<std::uint64_t>& tab = union_table[static_cast<std::size_t>(n)];
    tab.resize(fprod.dim(n));
    for (std::uint64_t i = 0; i < fprod.dim(n); ++i) {
      std::uint64_t rest = i;
      std::uint64_t out = 0;
      std::vector<std::size_t> digits(static_cast<std::size_t>(n));
      for (std::size_t k = static_cast<std::size_t>(n); k-- > 0;) {
        digits[k] = static_cast<std::size_t>(rest % prod.size());
        rest /= prod.size();
      }
      for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
        out = out * funion.dim(1) + iso.apply(digits[k]);
      }
      tab[static_cast<std::size_t>(i)] = out;
    }
  }
  check_index_naturality(fprod, funion, union_table, bound, policy, c,
                         "ground union map");
  if (!c.passing()) return c.rep;

  // basis identification: the composite sends a pair of correspondences to
  // their column concatenation
  for (int n = 0; n <= bound && c.passing(); ++n) {
    const std::size_t sn = static_cast<std::size_t>(n);
    const auto pair_table = pair_function_table(pe.size(), pep.size(), sn);
    for (std::uint64_t ia = 0; ia < left.dim(n); ++ia) {
      const Correspondence a = Correspondence::from_index(sn, e, ia);
      for (std::uint64_t ib = 0; ib < right.dim(n); ++ib) {
        const Correspondence b = Correspondence::from_index(sn, ep, ib);
        const std::uint64_t pair_index = ia * right.dim(n) + ib;
        const std::uint64_t through =
            union_table[sn][pair_table[static_cast<std::size_t>(pair_index)]];
        c.check(through == concat(a, b).index(), true,
                "pair basis identification fails at size " +
                    std::to_string(n) + " pair (" + corr_text(a) + "," +
                    corr_text(b) + ")");
        if (!c.passing()) return c.rep;
      }
    }
  }
  return c.rep;
}

VerificationReport verify_induced_tensor(std::size_t e, const RModule& v,
                                         std::size_t f, const RModule& w,
                                         int bound,
                                         const VerifyPolicy& policy) {
  require(v.ground() == e && w.ground() == f, Errc::invalid_argument,
          "module ground sets must match the given sets");
  require(e + f <= 2, Errc::invalid_argument,
          "induced tensor verifier needs |E|+|F| <= 2");
  const std::size_t g = e + f;
  Checker c("induced-tensor",
            "|E|=" + std::to_string(e) + " dimV=" + std::to_string(v.dim()) +
                " |F|=" + std::to_string(f) +
                " dimW=" + std::to_string(w.dim()) +
                " bound=" + std::to_string(bound));

  const LFunctorData le = l_functor(e, v, bound);
  const LFunctorData lf = l_functor(f, w, bound);
  const FunctorRep lef = tensor(le.rep, lf.rep);

  const InducedModule vg = induced_module(v, g);
  const InducedModule wg = induced_module(w, g);
  const std::size_t dv = vg.module.dim();
  const std::size_t dw = wg.module.dim();
  RModule vm = vg.module;
  RModule wm = wg.module;
  const RModule vw(g, dv * dw, [vm, wm](const Correspondence& u) {
    return Matrix::kronecker(vm.action(u), wm.action(u));
  });
  const LFunctorData lg = l_functor(g, vw, bound);

  for (int n = 0; n <= bound; ++n) {
    c.check(lef.dim(n) == lg.rep.dim(n), true,
            "side dimensions differ at size " + std::to_string(n) + ": " +
                std::to_string(lef.dim(n)) + " vs " +
                std::to_string(lg.rep.dim(n)));
  }
  if (!c.passing()) return c.rep;

  // ground-set insertions into the disjoint union, in induced coordinates
  const Correspondence insert_e =
      stack(Correspondence::identity(e), Correspondence(f, e));
  const Correspondence insert_f =
      stack(Correspondence(e, f), Correspondence::identity(f));
  std::vector<Vec> ue, uf;
  for (std::size_t vc = 0; vc < v.dim(); ++vc)
    ue.push_back(vg.presentation.projection.column(
        static_cast<std::size_t>(insert_e.index()) * v.dim() + vc));
  for (std::size_t wc = 0; wc < w.dim(); ++wc)
    uf.push_back(wg.presentation.projection.column(
        static_cast<std::size_t>(insert_f.index()) * w.dim() + wc));

  const std::size_t count_ge = correspondence_count(g, e);
  const std::size_t count_gf = correspondence_count(g, f);

  std::vector<Matrix> phi(static_cast<std::size_t>(bound) + 1);
  std::vector<Matrix> psi(static_cast<std::size_t>(bound) + 1);
  for (int n = 0; n <= bound && c.passing(); ++n) {
    const std::size_t sn = static_cast<std::size_t>(n);
    const std::size_t amb_g = lg.ambient_dims[sn];
    const std::size_t amb_e = le.ambient_dims[sn];
    const std::size_t amb_f = lf.ambient_dims[sn];
    const std::size_t count_xg = correspondence_count(sn, g);
    const std::size_t count_xe = correspondence_count(sn, e);
    const std::size_t count_xf = correspondence_count(sn, f);

    // forward map on the ambient level: a generator over the union ground
    // set splits through the two insertions, with induced coordinates lifted
    // by the module sections
    Matrix mid_phi(amb_e * amb_f, amb_g);
    for (std::size_t ci = 0; ci < count_xg; ++ci) {
      const Correspondence cc = Correspondence::from_index(sn, g, ci);
      std::vector<std::uint64_t> comp_e(count_ge), comp_f(count_gf);
      for (std::size_t ai = 0; ai < count_ge; ++ai)
        comp_e[ai] = compose(cc, Correspondence::from_index(g, e, ai)).index();
      for (std::size_t bi = 0; bi < count_gf; ++bi)
        comp_f[bi] = compose(cc, Correspondence::from_index(g, f, bi)).index();
      for (std::size_t tv = 0; tv < dv; ++tv) {
        // lift of the first induced coordinate along this generator
        Vec vec_e(amb_e);
        for (std::size_t r = 0; r < count_ge * v.dim(); ++r) {
          const Scalar& s = vg.presentation.section.at(r, tv);
          if (s == 0) continue;
          const std::size_t ai = r / v.dim();
          const std::size_t vc = r % v.dim();
          vec_e[static_cast<std::size_t>(comp_e[ai]) * v.dim() + vc] += s;
        }
        for (std::size_t tw = 0; tw < dw; ++tw) {
          Vec vec_f(amb_f);
          for (std::size_t r = 0; r < count_gf * w.dim(); ++r) {
            const Scalar& s = wg.presentation.section.at(r, tw);
            if (s == 0) continue;
            const std::size_t bi = r / w.dim();
            const std::size_t wc = r % w.dim();
            vec_f[static_cast<std::size_t>(comp_f[bi]) * w.dim() + wc] += s;
          }
          const std::size_t col = ci * (dv * dw) + tv * dw + tw;
          for (std::size_t ie = 0; ie < amb_e; ++ie) {
            if (vec_e[ie] == 0) continue;
            for (std::size_t jf = 0; jf < amb_f; ++jf) {
              if (vec_f[jf] == 0) continue;
              mid_phi.at(ie * amb_f + jf, col) = vec_e[ie] * vec_f[jf];
            }
          }
        }
      }
    }
    phi[sn] = Matrix::kronecker(le.presentations[sn].projection,
                                lf.presentations[sn].projection) *
              (mid_phi * lg.presentations[sn].section);

    // backward map on the ambient level: a pair of generators concatenates,
    // with the insertion images of the module coordinates tensored
    Matrix mid_psi(amb_g, amb_e * amb_f);
    for (std::size_t pi = 0; pi < count_xe; ++pi) {
      const Correspondence p = Correspondence::from_index(sn, e, pi);
      for (std::size_t vc = 0; vc < v.dim(); ++vc) {
        const std::size_t ia = pi * v.dim() + vc;
        for (std::size_t qi = 0; qi < count_xf; ++qi) {
          const Correspondence q = Correspondence::from_index(sn, f, qi);
          const std::uint64_t pq = concat(p, q).index();
          for (std::size_t wc = 0; wc < w.dim(); ++wc) {
            const std::size_t ib = qi * w.dim() + wc;
            const std::size_t col = ia * amb_f + ib;
            for (std::size_t tv = 0; tv < dv; ++tv) {
              if (ue[vc][tv] == 0) continue;
              for (std::size_t tw = 0; tw < dw; ++tw) {
                if (uf[wc][tw] == 0) continue;
                mid_psi.at(static_cast<std::size_t>(pq) * (dv * dw) + tv * dw +
                               tw,
                           col) = ue[vc][tv] * uf[wc][tw];
              }
            }
          }
        }
      }
    }
    psi[sn] = lg.presentations[sn].projection *
              (mid_psi * Matrix::kronecker(le.presentations[sn].section,
                                           lf.presentations[sn].section));

    c.check((phi[sn] * psi[sn]).is_identity(), true,
            "forward after backward is not the identity at size " +
                std::to_string(n));
    c.check((psi[sn] * phi[sn]).is_identity(), true,
            "backward after forward is not the identity at size " +
                std::to_string(n));
  }
  if (!c.passing()) return c.rep;

  // naturality of both maps, with the functor actions rebuilt through the
  // presentations so sampled cases stay out of the memo caches
  auto ambient_shift = [](const Matrix& section, std::size_t ground,
                          std::size_t dim, const Correspondence& u,
                          std::size_t out_rows) {
    Matrix out(out_rows, section.cols());
    CorrespondenceRange as(u.source_size(), ground);
    while (!as.done()) {
      const Correspondence a = as.next();
      const std::size_t moved =
          static_cast<std::size_t>(compose(u, a).index());
      const std::size_t src = static_cast<std::size_t>(a.index()) * dim;
      for (std::size_t t = 0; t < dim; ++t) {
        for (std::size_t j = 0; j < section.cols(); ++j) {
          const Scalar& s = section.at(src + t, j);
          if (s != 0) out.at(moved * dim + t, j) += s;
        }
      }
    }
    return out;
  };
  auto functor_action = [&](const LFunctorData& data, std::size_t ground,
                            std::size_t dim, const Correspondence& u) {
    const std::size_t y = u.target_size();
    const std::size_t x = u.source_size();
    return data.presentations[y].projection *
           ambient_shift(data.presentations[x].section, ground, dim, u,
                         data.ambient_dims[y]);
  };

  VerifyPolicy nat_policy = policy;
  nat_policy.samples = std::min(policy.samples, 64);
  sweep_correspondences(
      bound, nat_policy, c, [&](const Correspondence& u) -> std::string {
        const std::size_t x = u.source_size();
        const std::size_t y = u.target_size();
        const Matrix ag = functor_action(lg, g, dv * dw, u);
        const Matrix alef =
            Matrix::kronecker(functor_action(le, e, v.dim(), u),
                              functor_action(lf, f, w.dim(), u));
        if (!(phi[y] * ag == alef * phi[x]))
          return "forward map naturality fails for U=" + corr_text(u);
        if (!(psi[y] * alef == ag * psi[x]))
          return "backward map naturality fails for U=" + corr_text(u);
        return {};
      });
  return c.rep;
}

VerificationReport verify_adjunction_dims(const FunctorRep& m,
                                          const FunctorRep& mp,
                                          const FunctorRep& mpp,
                                          const VerifyPolicy& policy) {
  require(m.bound() == mp.bound() && m.bound() == mpp.bound(), Errc::bound,
          "adjunction verifier needs a shared bound");
  const int bound = m.bound();
  require(m.exactness_degree().has_value() &&
              mp.exactness_degree().has_value(),
          Errc::hypothesis,
          "adjunction verifier needs sources with known exactness degrees");
  const int dm = *m.exactness_degree();
  const int dmp = *mp.exactness_degree();
  require(dm + dmp <= bound, Errc::hypothesis,
          "bound too small for an exact tensor source");
  const int out_bound = bound - dmp;
  require(dm <= out_bound, Errc::hypothesis,
          "bound too small for an exact outer source");

  Checker c("adjunction", "dims M=" + dims_text(m) + " M'=" + dims_text(mp) +
                              " M''=" + dims_text(mpp) +
                              " bound=" + std::to_string(bound));

  const HomBasis side_a = hom_solver(tensor(mp, m), mpp);
  const FunctorRep hom_rep = internal_hom(mp, mpp, out_bound);
  const FunctorRep m_cut = m.truncated(out_bound);
  const HomBasis side_b = hom_solver(m_cut, hom_rep);
  c.check(side_a.dim() == side_b.dim(), true,
          "solution space dimensions differ: " + std::to_string(side_a.dim()) +
              " vs " + std::to_string(side_b.dim()));
  if (!c.passing()) return c.rep;

  // per-evaluation solver bases, flattened, for expressing curried images
  struct Evaluation {
    HomBasis hom;
    Matrix flat;
    int eff = 0;
  };
  std::vector<Evaluation> evals;
  for (int y = 0; y <= out_bound; ++y) {
    Evaluation ev;
    ev.eff = std::min(mp.bound(), bound - y);
    ev.hom = hom_solver(mp.truncated(ev.eff),
                        shift(mpp, static_cast<std::size_t>(y)).truncated(
                            ev.eff));
    std::size_t rows = 0;
    for (int k = 0; k <= ev.eff; ++k)
      rows += mpp.dim(k + y) * mp.dim(k);
    ev.flat = Matrix(rows, ev.hom.dim());
    for (std::size_t j = 0; j < ev.hom.dim(); ++j) {
      Vec col;
      col.reserve(rows);
      for (int k = 0; k <= ev.eff; ++k) {
        const Matrix& comp = ev.hom.basis[j].at(k);
        for (std::size_t r = 0; r < comp.rows(); ++r)
          for (std::size_t jc = 0; jc < comp.cols(); ++jc)
            col.push_back(comp.at(r, jc));
      }
      ev.flat.set_column(j, col);
    }
    c.check(ev.hom.dim() == hom_rep.dim(y), true,
            "internal hom dimension drifts at size " + std::to_string(y));
    evals.push_back(std::move(ev));
  }
  if (!c.passing()) return c.rep;

  // map every basis morphism through the curried construction
  std::vector<Vec> curried_flat;
  for (std::size_t i = 0; i < side_a.dim() && c.passing(); ++i) {
    const Pairing eta = pairing_from_morphism(side_a.basis[i], mp, m);
    std::vector<Matrix> comps;
    for (int y = 0; y <= out_bound && c.passing(); ++y) {
      const Evaluation& ev = evals[static_cast<std::size_t>(y)];
      Matrix comp(ev.hom.dim(), m.dim(y));
      for (std::size_t cc = 0; cc < m.dim(y); ++cc) {
        Vec flat;
        for (int k = 0; k <= ev.eff; ++k) {
          const Matrix& slot = eta.at(k, y);
          for (std::size_t r = 0; r < mpp.dim(k + y); ++r)
            for (std::size_t jl = 0; jl < mp.dim(k); ++jl)
              flat.push_back(slot.at(r, jl * m.dim(y) + cc));
        }
        const auto sol = solve_linear(ev.flat, flat);
        if (!sol.has_value()) {
          c.record(true, "curried image of basis morphism " +
                             std::to_string(i) +
                             " escapes the solution space at size " +
                             std::to_string(y));
          break;
        }
        comp.set_column(cc, *sol);
        c.record(true, "");
      }
      comps.push_back(std::move(comp));
    }
    if (!c.passing()) break;

    // the curried morphism must be natural
    const std::size_t index = i;
    sweep_correspondences(
        out_bound, policy, c, [&](const Correspondence& u) -> std::string {
          const int x = static_cast<int>(u.source_size());
          const int y = static_cast<int>(u.target_size());
          if (comps[static_cast<std::size_t>(y)] * m_cut.action(u) ==
              hom_rep.action(u) * comps[static_cast<std::size_t>(x)]) {
            return {};
          }
          return "curried morphism " + std::to_string(index) +
                 " is not natural at U=" + corr_text(u);
        });

    Vec flat_all;
    for (const Matrix& comp : comps)
      for (std::size_t r = 0; r < comp.rows(); ++r)
        for (std::size_t jc = 0; jc < comp.cols(); ++jc)
          flat_all.push_back(comp.at(r, jc));
    curried_flat.push_back(std::move(flat_all));
  }
  if (!c.passing()) return c.rep;

  if (!curried_flat.empty()) {
    Matrix images(curried_flat.front().size(), curried_flat.size());
    for (std::size_t j = 0; j < curried_flat.size(); ++j)
      images.set_column(j, curried_flat[j]);
    c.check(rank(images) == side_a.dim(), true,
            "curried images are linearly dependent");
  } else {
    c.check(true, true, "");
  }
  return c.rep;
}

VerificationReport verify_internal_hom_identities(const FunctorRep& n,
                                                  std::size_t e,
                                                  const VerifyPolicy& policy) {
  require(n.bound() >= static_cast<int>(e), Errc::bound,
          "bound too small for the shift");
  Checker c("internal-hom",
            "target dims=" + dims_text(n) + " |E|=" + std::to_string(e));

  // hom out of a representable (or the constant functor for an empty set)
  // matches the shifted target under evaluation at the identity generator
  auto eval_identification = [&](std::size_t ee, const std::string& label) {
    const int out_bound = n.bound() - static_cast<int>(ee);
    const FunctorRep src = ee == 0 ? constant_functor(n.bound())
                                   : representable(ee, n.bound());
    const FunctorRep h = internal_hom(src, n, out_bound);
    const FunctorRep shifted = shift(n, ee).truncated(out_bound);
    const std::uint64_t delta_index = Correspondence::identity(ee).index();

    std::vector<Matrix> iota(static_cast<std::size_t>(out_bound) + 1);
    for (int x = 0; x <= out_bound && c.passing(); ++x) {
      c.check(h.dim(x) == shifted.dim(x), true,
              label + ": dimension mismatch at size " + std::to_string(x) +
                  ": " + std::to_string(h.dim(x)) + " vs " +
                  std::to_string(shifted.dim(x)));
      if (!c.passing()) return;
      const int eff = n.bound() - x;
      const HomBasis hb = hom_solver(
          src.truncated(eff),
          shift(n, static_cast<std::size_t>(x)).truncated(eff));
      Matrix io(n.dim(static_cast<int>(ee) + x), hb.dim());
      for (std::size_t j = 0; j < hb.dim(); ++j) {
        io.set_column(j, hb.basis[j].at(static_cast<int>(ee))
                            .column(static_cast<std::size_t>(delta_index)));
      }
      iota[static_cast<std::size_t>(x)] =
          n.action(swap_blocks(ee, static_cast<std::size_t>(x))) * io;
      c.check(rank(iota[static_cast<std::size_t>(x)]) == h.dim(x), true,
              label + ": identification not invertible at size " +
                  std::to_string(x));
    }
    if (!c.passing()) return;

    sweep_correspondences(
        out_bound, policy, c, [&](const Correspondence& u) -> std::string {
          const std::size_t x = u.source_size();
          const std::size_t y = u.target_size();
          if (iota[y] * h.action(u) == shifted.action(u) * iota[x]) return {};
          return label + ": identification not natural at U=" + corr_text(u);
        });
  };

  eval_identification(e, "shift identity");
  if (c.passing() && e != 0) eval_identification(0, "unit identity");
  if (!c.passing()) return c.rep;

  // hom into the constant functor is constant with every action the identity
  const FunctorRep dual = internal_hom(n, constant_functor(n.bound()),
                                       n.bound());
  for (int x = 0; x <= n.bound(); ++x) {
    c.check(dual.dim(x) == n.dim(0), true,
            "dual identity: dimension at size " + std::to_string(x) +
                " is " + std::to_string(dual.dim(x)) + ", expected " +
                std::to_string(n.dim(0)));
  }
  if (!c.passing()) return c.rep;
  sweep_correspondences(n.bound(), policy, c,
                        [&](const Correspondence& u) -> std::string {
    if (dual.action(u).is_identity()) return {};
    return "dual identity: action is not the identity at U=" + corr_text(u);
  });
  return c.rep;
}

VerificationReport verify_pairing_roundtrips(int bound, int count,
                                             const VerifyPolicy& policy) {
  Checker c("pairing",
            "bound=" + std::to_string(bound) + " count=" +
                std::to_string(count) + " seed=" + std::to_string(policy.seed));
  std::vector<FunctorRep> pool = {
      constant_functor(bound),
      lattice_functor(named_lattice("chain1"), bound),
      representable(1, bound),
  };
  const std::vector<std::string> names = {"constant", "chain lattice functor",
                                          "representable(1)"};
  Rng rng(policy.seed * 0x9e3779b97f4a7c15ull + 5);
  std::map<std::tuple<int, int, int>, HomBasis> hom_cache;
  std::map<std::tuple<int, int, int>, std::vector<Pairing>> pairing_cache;

  auto coefficient = [&rng]() {
    return scalar(static_cast<long>(rng.below(7)) - 3,
                  static_cast<long>(rng.below(2)) + 1);
  };

  for (int iter = 0; iter < count && c.passing(); ++iter) {
    const int ip = static_cast<int>(rng.below(3));
    const int im = static_cast<int>(rng.below(3));
    const int it = static_cast<int>(rng.below(3));
    const FunctorRep& left = pool[static_cast<std::size_t>(ip)];
    const FunctorRep& right = pool[static_cast<std::size_t>(im)];
    const FunctorRep& target = pool[static_cast<std::size_t>(it)];
    const std::string what = "(" + names[static_cast<std::size_t>(ip)] + "," +
                             names[static_cast<std::size_t>(im)] + ")->" +
                             names[static_cast<std::size_t>(it)] +
                             " draw " + std::to_string(iter);

    // random morphism from the tensor, pushed to a pairing and back
    auto hit = hom_cache.find({ip, im, it});
    if (hit == hom_cache.end()) {
      hit = hom_cache.emplace(std::make_tuple(ip, im, it),
                              hom_solver(tensor(left, right), target)).first;
    }
    const HomBasis& hb = hit->second;
    std::vector<Matrix> comps;
    for (int nn = 0; nn <= bound; ++nn)
      comps.push_back(Matrix(target.dim(nn), hb.source.dim(nn)));
    for (const Morphism& basis : hb.basis) {
      const Scalar coeff = coefficient();
      for (int nn = 0; nn <= bound; ++nn)
        comps[static_cast<std::size_t>(nn)] =
            comps[static_cast<std::size_t>(nn)] + basis.at(nn).scaled(coeff);
    }
    const Morphism psi{hb.source, target, std::move(comps)};
    const Pairing eta = pairing_from_morphism(psi, left, right);
    const Morphism back = morphism_from_pairing(eta);
    for (int nn = 0; nn <= back.bound(); ++nn) {
      c.record(false, back.at(nn) == psi.at(nn)
                          ? std::string()
                          : "morphism round trip drifts at size " +
                                std::to_string(nn) + " for " + what);
    }

    // random pairing, folded to a morphism and back
    auto pit = pairing_cache.find({ip, im, it});
    if (pit == pairing_cache.end()) {
      pit = pairing_cache
                .emplace(std::make_tuple(ip, im, it),
                         pairing_solver(left, right, target))
                .first;
    }
    Pairing eta2 = zero_pairing(left, right, target);
    for (const Pairing& basis : pit->second) {
      const Scalar coeff = coefficient();
      for (int x = 0; x <= eta2.bound; ++x)
        for (int y = 0; x + y <= eta2.bound; ++y)
          eta2.at(x, y) = eta2.at(x, y) + basis.at(x, y).scaled(coeff);
    }
    const Morphism tilde = morphism_from_pairing(eta2);
    const Pairing eta3 = pairing_from_morphism(tilde, left, right);
    for (int x = 0; x <= eta3.bound; ++x) {
      for (int y = 0; x + y <= eta3.bound; ++y) {
        c.record(false, eta3.at(x, y) == eta2.at(x, y)
                            ? std::string()
                            : "pairing round trip drifts at slot (" +
                                  std::to_string(x) + "," + std::to_string(y) +
                                  ") for " + what);
      }
    }
  }
  return c.rep;
}

VerificationReport verify_foundations(int bound, const VerifyPolicy& policy) {
  Checker c("foundations", "bound=" + std::to_string(bound) +
                               " seed=" + std::to_string(policy.seed));

  // identity laws
  sweep_correspondences(bound, policy, c,
                        [&](const Correspondence& u) -> std::string {
    const Correspondence left = compose(
        Correspondence::identity(u.target_size()), u);
    const Correspondence right = compose(
        u, Correspondence::identity(u.source_size()));
    if (left == u && right == u) return {};
    return "identity law fails for U=" + corr_text(u);
  });
  if (!c.passing()) return c.rep;

  // associativity over all size signatures
  {
    Rng rng(policy.seed * 0x9e3779b97f4a7c15ull + 307);
    for (int w = 0; w <= bound && c.passing(); ++w) {
      for (int z = 0; z <= bound && c.passing(); ++z) {
        for (int y = 0; y <= bound && c.passing(); ++y) {
          for (int x = 0; x <= bound && c.passing(); ++x) {
            const bool exhaustive =
                std::max(std::max(w, z), std::max(y, x)) <=
                policy.exhaustive_size;
            auto case_check = [&](const Correspondence& vv,
                                  const Correspondence& uu,
                                  const Correspondence& tt) -> std::string {
              if (compose(compose(vv, uu), tt) == compose(vv, compose(uu, tt)))
                return {};
              return "associativity fails for V=" + corr_text(vv) +
                     " U=" + corr_text(uu) + " T=" + corr_text(tt);
            };
            if (exhaustive) {
              CorrespondenceRange vs(static_cast<std::size_t>(w),
                                     static_cast<std::size_t>(z));
              while (!vs.done() && c.passing()) {
                const Correspondence vv = vs.next();
                CorrespondenceRange us(static_cast<std::size_t>(z),
                                       static_cast<std::size_t>(y));
                while (!us.done() && c.passing()) {
                  const Correspondence uu = us.next();
                  CorrespondenceRange ts(static_cast<std::size_t>(y),
                                         static_cast<std::size_t>(x));
                  while (!ts.done() && c.passing()) {
                    c.record(true, case_check(vv, uu, ts.next()));
                  }
                }
              }
            } else {
              for (int s = 0; s < policy.samples && c.passing(); ++s) {
                c.record(false,
                         case_check(random_correspondence(
                                        rng, static_cast<std::size_t>(w),
                                        static_cast<std::size_t>(z)),
                                    random_correspondence(
                                        rng, static_cast<std::size_t>(z),
                                        static_cast<std::size_t>(y)),
                                    random_correspondence(
                                        rng, static_cast<std::size_t>(y),
                                        static_cast<std::size_t>(x))));
              }
            }
          }
        }
      }
    }
  }
  if (!c.passing()) return c.rep;

  // functoriality of every representation constructor
  const Lattice chain1 = named_lattice("chain1");
  std::vector<std::pair<std::string, FunctorRep>> reps;
  reps.emplace_back("constant", constant_functor(bound));
  reps.emplace_back("zero", zero_functor(bound));
  reps.emplace_back("representable(0)", representable(0, bound));
  reps.emplace_back("representable(1)", representable(1, bound));
  reps.emplace_back("representable(2)", representable(2, bound));
  for (const std::string& name :
       {std::string("chain1"), std::string("chain2"), std::string("diamond"),
        std::string("m3"), std::string("n5")}) {
    reps.emplace_back("lattice functor " + name,
                      lattice_functor(named_lattice(name), bound));
  }
  reps.emplace_back("tensor",
                    tensor(lattice_functor(chain1, bound),
                           representable(1, bound)));
  reps.emplace_back("shift",
                    shift(lattice_functor(chain1, bound), 1));
  reps.emplace_back("induction",
                    l_functor(1, regular_module(1), bound).rep);
  reps.emplace_back("internal hom",
                    internal_hom(lattice_functor(chain1, bound),
                                 lattice_functor(chain1, bound),
                                 std::max(0, bound - 1)));

  const int functor_samples = std::min(policy.samples, 200);
  for (const auto& [name, rep] : reps) {
    if (!c.passing()) break;
    for (int nn = 0; nn <= rep.bound(); ++nn) {
      const Correspondence delta =
          Correspondence::identity(static_cast<std::size_t>(nn));
      bool ok = true;
      if (rep.basis_functional()) {
        for (std::uint64_t i = 0; i < rep.dim(nn); ++i)
          if (rep.basis_image(delta, i) != i) ok = false;
      } else {
        ok = rep.action(delta).is_identity();
      }
      c.check(ok, true, name + ": identity action fails at size " +
                            std::to_string(nn));
    }
    sweep_composable_pairs(
        rep.bound(), policy, functor_samples, c,
        [&](const Correspondence& v, const Correspondence& u) -> std::string {
          const Correspondence vu = compose(v, u);
          if (rep.basis_functional()) {
            for (std::uint64_t i = 0; i < rep.dim(
                     static_cast<int>(u.source_size())); ++i) {
              if (rep.basis_image(vu, i) !=
                  rep.basis_image(v, rep.basis_image(u, i))) {
                return name + ": composition fails for V=" + corr_text(v) +
                       " U=" + corr_text(u);
              }
            }
            return {};
          }
          if (rep.action(vu) == rep.action(v) * rep.action(u)) return {};
          return name + ": composition fails for V=" + corr_text(v) +
                 " U=" + corr_text(u);
        });
  }
  if (!c.passing()) return c.rep;

  // tensor unit, commutativity, and associativity identifications
  const FunctorRep fm = lattice_functor(chain1, bound);
  const FunctorRep fr = representable(1, bound);
  const FunctorRep unit_side = tensor(constant_functor(bound), fm);
  sweep_correspondences(bound, policy, c,
                        [&](const Correspondence& u) -> std::string {
    const std::size_t x = u.source_size();
    for (std::uint64_t i = 0; i < fm.dim(static_cast<int>(x)); ++i) {
      if (unit_side.basis_image(u, i) != fm.basis_image(u, i))
        return "tensor unit identification fails for U=" + corr_text(u);
    }
    return {};
  });
  if (!c.passing()) return c.rep;

  const FunctorRep ab = tensor(fm, fr);
  const FunctorRep ba = tensor(fr, fm);
  sweep_correspondences(bound, policy, c,
                        [&](const Correspondence& u) -> std::string {
    const std::size_t x = u.source_size();
    const std::size_t y = u.target_size();
    const std::uint64_t dax = fm.dim(static_cast<int>(x));
    const std::uint64_t dbx = fr.dim(static_cast<int>(x));
    const std::uint64_t day = fm.dim(static_cast<int>(y));
    const std::uint64_t dby = fr.dim(static_cast<int>(y));
    for (std::uint64_t i = 0; i < dax * dbx; ++i) {
      const std::uint64_t ia = i / dbx;
      const std::uint64_t ib = i % dbx;
      const std::uint64_t forward = ab.basis_image(u, i);
      const std::uint64_t swapped = ba.basis_image(u, ib * dax + ia);
      if (swapped != (forward % dby) * day + forward / dby)
        return "tensor commutativity identification fails for U=" +
               corr_text(u);
    }
    return {};
  });
  if (!c.passing()) return c.rep;

  const FunctorRep fl = lattice_functor(named_lattice("chain2"), bound);
  const FunctorRep left_assoc = tensor(tensor(fm, fr), fl);
  const FunctorRep right_assoc = tensor(fm, tensor(fr, fl));
  sweep_correspondences(bound, policy, c,
                        [&](const Correspondence& u) -> std::string {
    const std::size_t x = u.source_size();
    for (std::uint64_t i = 0; i < left_assoc.dim(static_cast<int>(x)); ++i) {
      if (left_assoc.basis_image(u, i) != right_assoc.basis_image(u, i))
        return "tensor associativity identification fails for U=" +
               corr_text(u);
    }
    return {};
  });
  return c.rep;
}

}  // namespace corrfun
