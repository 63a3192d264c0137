#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>

#include "functor.hpp"
#include "relations.hpp"
#include "rng.hpp"
#include "theorems.hpp"

namespace corrfun::detail {

inline std::string corr_text(const Correspondence& u) {
  std::ostringstream out;
  out << u.target_size() << 'x' << u.source_size() << ':';
  for (std::size_t y = 0; y < u.target_size(); ++y) {
    if (y) out << '|';
    for (std::size_t x = 0; x < u.source_size(); ++x)
      out << (u.contains(y, x) ? '1' : '0');
  }
  return out.str();
}

// Counts checked cases and records the first failing witness.
struct Checker {
  VerificationReport rep;

  Checker(std::string id, std::string parameters) {
    rep.id = std::move(id);
    rep.parameters = std::move(parameters);
    rep.pass = true;
  }
  bool passing() const { return rep.pass; }
  void fail(std::string witness) {
    if (rep.pass) {
      rep.pass = false;
      rep.witness = std::move(witness);
    }
  }
  // witness empty means the case passed
  void record(bool exhaustive, std::string witness) {
    if (exhaustive) {
      ++rep.cases_exhaustive;
    } else {
      ++rep.cases_random;
    }
    if (!witness.empty()) fail(std::move(witness));
  }
  void check(bool ok, bool exhaustive, const std::string& what) {
    record(exhaustive, ok ? std::string() : what);
  }
  void merge(const VerificationReport& inner, const std::string& prefix) {
    rep.cases_exhaustive += inner.cases_exhaustive;
    rep.cases_random += inner.cases_random;
    if (!inner.pass) fail(prefix + inner.witness);
  }
};

// One correspondence per case: exhaustive whenever both sizes are at most
// policy.exhaustive_size, otherwise policy-many seeded samples per signature.
template <typename CheckFn>
void sweep_correspondences(int bound, const VerifyPolicy& policy, Checker& c,
                           CheckFn&& check) {
  Rng rng(policy.seed * 0x9e3779b97f4a7c15ull + 101);
  for (int y = 0; y <= bound; ++y) {
    for (int x = 0; x <= bound; ++x) {
      if (std::max(x, y) <= policy.exhaustive_size) {
        CorrespondenceRange range(static_cast<std::size_t>(y),
                                  static_cast<std::size_t>(x));
        while (!range.done()) {
          if (!c.passing()) return;
          c.record(true, check(range.next()));
        }
      } else {
        for (int s = 0; s < policy.samples; ++s) {
          if (!c.passing()) return;
          c.record(false, check(random_correspondence(
                              rng, static_cast<std::size_t>(y),
                              static_cast<std::size_t>(x))));
        }
      }
    }
  }
}

// Composable pairs (v after u) per signature, same exhaustive/random split.
template <typename CheckFn>
void sweep_composable_pairs(int bound, const VerifyPolicy& policy, int samples,
                            Checker& c, CheckFn&& check) {
  Rng rng(policy.seed * 0x9e3779b97f4a7c15ull + 211);
  for (int z = 0; z <= bound; ++z) {
    for (int y = 0; y <= bound; ++y) {
      for (int x = 0; x <= bound; ++x) {
        if (std::max(z, std::max(y, x)) <= policy.exhaustive_size) {
          CorrespondenceRange vs(static_cast<std::size_t>(z),
                                 static_cast<std::size_t>(y));
          while (!vs.done()) {
            const Correspondence v = vs.next();
            CorrespondenceRange us(static_cast<std::size_t>(y),
                                   static_cast<std::size_t>(x));
            while (!us.done()) {
              if (!c.passing()) return;
              c.record(true, check(v, us.next()));
            }
          }
        } else {
          for (int s = 0; s < samples; ++s) {
            if (!c.passing()) return;
            c.record(false,
                     check(random_correspondence(rng,
                                                 static_cast<std::size_t>(z),
                                                 static_cast<std::size_t>(y)),
                           random_correspondence(rng,
                                                 static_cast<std::size_t>(y),
                                                 static_cast<std::size_t>(x))));
          }
        }
      }
    }
  }
}

}  // namespace corrfun::detail
