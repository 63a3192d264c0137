#include <corrfun/corrfun.h>

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"
#include "functor.hpp"
#include "hom.hpp"
#include "lattice.hpp"
#include "relations.hpp"
#include "rmodule.hpp"
#include "textio.hpp"
#include "theorems.hpp"

using namespace corrfun;

extern "C" {
struct corrfun_corr {
  Correspondence value;
};
struct corrfun_lattice {
  Lattice value;
};
struct corrfun_algebra {
  AlgebraFunctorRep value;
};
struct corrfun_report {
  VerificationReport value;
};
struct corrfun_reports {
  std::vector<corrfun_report> items;
};
}

namespace {

thread_local std::string g_last_error = "no error";

corrfun_status status_of(Errc code) {
  switch (code) {
    case Errc::invalid_argument:
      return CORRFUN_INVALID_ARGUMENT;
    case Errc::parse:
      return CORRFUN_PARSE;
    case Errc::not_a_lattice:
      return CORRFUN_NOT_A_LATTICE;
    case Errc::dimension:
      return CORRFUN_DIMENSION;
    case Errc::singular:
      return CORRFUN_SINGULAR;
    case Errc::bound:
      return CORRFUN_BOUND;
    case Errc::not_commutative:
      return CORRFUN_NOT_COMMUTATIVE;
    case Errc::not_split:
      return CORRFUN_NOT_SPLIT;
    case Errc::hypothesis:
      return CORRFUN_HYPOTHESIS;
    case Errc::verification:
      return CORRFUN_VERIFICATION;
    case Errc::unknown_name:
      return CORRFUN_UNKNOWN_NAME;
    case Errc::io:
      return CORRFUN_IO;
    case Errc::internal:
      return CORRFUN_INTERNAL;
  }
  return CORRFUN_INTERNAL;
}

template <typename Fn>
corrfun_status guarded(Fn&& fn) {
  try {
    fn();
    return CORRFUN_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CORRFUN_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CORRFUN_INTERNAL;
  }
}

char* heap_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  require(out != nullptr, Errc::internal, "out of memory");
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

VerifyPolicy policy_of(const corrfun_policy* p) {
  if (p == nullptr) return {};
  VerifyPolicy out;
  out.exhaustive_size = p->exhaustive_size;
  out.samples = p->samples;
  out.seed = p->seed;
  return out;
}

void need(const void* p, const char* what) {
  require(p != nullptr, Errc::invalid_argument,
          std::string(what) + " must not be null");
}

std::string table_text(const Lattice& t) {
  std::ostringstream out;
  auto print = [&](const char* name, auto op) {
    out << name;
    for (std::size_t b = 0; b < t.size(); ++b) out << ' ' << b;
    out << '\n';
    for (std::size_t a = 0; a < t.size(); ++a) {
      out << a;
      for (std::size_t b = 0; b < t.size(); ++b) out << ' ' << op(a, b);
      out << '\n';
    }
  };
  print("join", [&](std::size_t a, std::size_t b) { return t.join(a, b); });
  print("meet", [&](std::size_t a, std::size_t b) { return t.meet(a, b); });
  return out.str();
}

// One verifier run list per command id; deterministic order.
std::vector<VerificationReport> run_named(
    const std::string& id, const char* lattice_a, const char* lattice_b,
    const char* algebra, int bound, const VerifyPolicy& policy) {
  require(bound >= 0 && bound <= 6, Errc::bound,
          "bound must be between 0 and 6");
  auto lattice_or = [](const char* spec, const char* fallback) {
    return resolve_lattice_input(spec == nullptr ? fallback : spec);
  };
  auto algebra_in = [&](void) {
    require(algebra != nullptr, Errc::invalid_argument,
            "this verifier needs an algebra input");
    return resolve_algebra_input(algebra, bound, policy);
  };
  auto product_union_lattice = [&](void) {
    if (algebra != nullptr && std::string(algebra).rfind("ft:", 0) == 0)
      return resolve_lattice_input(std::string(algebra).substr(3));
    require(lattice_a != nullptr, Errc::invalid_argument,
            "product-union over a file algebra needs a lattice input");
    return resolve_lattice_input(lattice_a);
  };

  std::vector<VerificationReport> out;
  if (id == "tau") {
    out.push_back(verify_tau(lattice_or(lattice_a, "chain1"),
                             lattice_or(lattice_b, "chain1"), bound, policy));
  } else if (id == "representable-tensor") {
    out.push_back(verify_representable_tensor(1, 1, bound, policy));
  } else if (id == "induced-tensor") {
    out.push_back(verify_induced_tensor(1, regular_module(1), 1,
                                        regular_module(1), bound, policy));
  } else if (id == "adjunction") {
    const std::vector<FunctorRep> pool = {
        constant_functor(bound), representable(1, bound),
        lattice_functor(named_lattice("chain1"), bound)};
    for (const FunctorRep& m : pool)
      for (const FunctorRep& mp : pool)
        for (const FunctorRep& mpp : pool)
          out.push_back(verify_adjunction_dims(m, mp, mpp, policy));
  } else if (id == "internal-hom") {
    const std::vector<FunctorRep> sources = {
        constant_functor(bound),
        lattice_functor(named_lattice("chain1"), bound)};
    for (const FunctorRep& n : sources)
      for (std::size_t e = 0; e <= 1; ++e)
        out.push_back(verify_internal_hom_identities(n, e, policy));
  } else if (id == "pairing") {
    out.push_back(verify_pairing_roundtrips(bound, 20, policy));
  } else if (id == "foundations") {
    out.push_back(verify_foundations(bound, policy));
  } else if (id == "exponential") {
    out.push_back(check_exponential(algebra_in()));
  } else if (id == "product-union") {
    const Lattice t = product_union_lattice();
    out.push_back(verify_product_union(algebra_in(), t, policy));
  } else if (id == "reconstruction") {
    out.push_back(reconstruct_lattice(algebra_in(), policy).report);
  } else if (id == "all") {
    out.push_back(verify_foundations(bound, policy));
    const std::vector<std::string>& names = lattice_corpus_names();
    for (const std::string& a : names) {
      const Lattice t = named_lattice(a);
      for (const std::string& b : names) {
        const Lattice tp = named_lattice(b);
        if (t.size() * tp.size() <= 12)
          out.push_back(verify_tau(t, tp, bound, policy));
      }
    }
    for (std::size_t e = 0; e <= 2; ++e)
      for (std::size_t f = 0; e + f <= 2; ++f)
        out.push_back(verify_representable_tensor(e, f, bound, policy));
    out.push_back(verify_induced_tensor(1, regular_module(1), 1,
                                        regular_module(1), bound, policy));
    for (const VerificationReport& r :
         run_named("adjunction", nullptr, nullptr, nullptr, bound, policy))
      out.push_back(r);
    for (const VerificationReport& r :
         run_named("internal-hom", nullptr, nullptr, nullptr, bound, policy))
      out.push_back(r);
    out.push_back(verify_pairing_roundtrips(bound, 20, policy));
    for (const std::string& name : names) {
      const AlgebraFunctorRep a =
          algebra_ft(named_lattice(name), bound, policy);
      out.push_back(check_exponential(a));
      out.push_back(verify_product_union(a, named_lattice(name), policy));
      out.push_back(reconstruct_lattice(a, policy).report);
    }
  } else {
    fail(Errc::unknown_name, "unknown verifier id: " + id);
  }
  return out;
}

}  // namespace

extern "C" {

const char* corrfun_last_error(void) { return g_last_error.c_str(); }

void corrfun_string_free(char* s) { std::free(s); }

corrfun_status corrfun_corr_parse(const char* text, corrfun_corr** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new corrfun_corr{parse_correspondence_text(text)};
  });
}

corrfun_status corrfun_corr_compose(const corrfun_corr* after,
                                    const corrfun_corr* first,
                                    corrfun_corr** out) {
  return guarded([&] {
    need(after, "after");
    need(first, "first");
    need(out, "out");
    *out = new corrfun_corr{compose(after->value, first->value)};
  });
}

corrfun_status corrfun_corr_to_text(const corrfun_corr* c, char** out) {
  return guarded([&] {
    need(c, "correspondence");
    need(out, "out");
    *out = heap_string(c->value.to_text());
  });
}

void corrfun_corr_free(corrfun_corr* c) { delete c; }

corrfun_status corrfun_lattice_names(char** out) {
  return guarded([&] {
    need(out, "out");
    std::string text;
    for (const std::string& name : lattice_corpus_names()) {
      text += name;
      text += '\n';
    }
    *out = heap_string(text);
  });
}

corrfun_status corrfun_lattice_resolve(const char* name_or_path,
                                       corrfun_lattice** out) {
  return guarded([&] {
    need(name_or_path, "input");
    need(out, "out");
    *out = new corrfun_lattice{resolve_lattice_input(name_or_path)};
  });
}

corrfun_status corrfun_lattice_size(const corrfun_lattice* t, uint64_t* out) {
  return guarded([&] {
    need(t, "lattice");
    need(out, "out");
    *out = t->value.size();
  });
}

corrfun_status corrfun_lattice_to_text(const corrfun_lattice* t, char** out) {
  return guarded([&] {
    need(t, "lattice");
    need(out, "out");
    *out = heap_string(t->value.to_text());
  });
}

corrfun_status corrfun_lattice_tables(const corrfun_lattice* t, char** out) {
  return guarded([&] {
    need(t, "lattice");
    need(out, "out");
    *out = heap_string(table_text(t->value));
  });
}

void corrfun_lattice_free(corrfun_lattice* t) { delete t; }

corrfun_status corrfun_ft_dims(const corrfun_lattice* t, int bound,
                               uint64_t* dims) {
  return guarded([&] {
    need(t, "lattice");
    need(dims, "dims");
    const FunctorRep f = lattice_functor(t->value, bound);
    for (int n = 0; n <= bound; ++n) dims[n] = f.dim(n);
  });
}

corrfun_status corrfun_tensor_dims(const corrfun_lattice* t,
                                   const corrfun_lattice* tp, int bound,
                                   uint64_t* dims) {
  return guarded([&] {
    need(t, "lattice");
    need(tp, "lattice");
    need(dims, "dims");
    const FunctorRep f = tensor(lattice_functor(t->value, bound),
                                lattice_functor(tp->value, bound));
    for (int n = 0; n <= bound; ++n) dims[n] = f.dim(n);
  });
}

corrfun_status corrfun_hom_dims(const corrfun_lattice* t,
                                const corrfun_lattice* tp, int bound,
                                uint64_t* dims) {
  return guarded([&] {
    need(t, "lattice");
    need(tp, "lattice");
    need(dims, "dims");
    const FunctorRep f = internal_hom(lattice_functor(t->value, bound),
                                      lattice_functor(tp->value, bound),
                                      bound);
    for (int n = 0; n <= bound; ++n) dims[n] = f.dim(n);
  });
}

corrfun_status corrfun_algebra_resolve(const char* spec, int bound,
                                       const corrfun_policy* policy,
                                       corrfun_algebra** out) {
  return guarded([&] {
    need(spec, "input");
    need(out, "out");
    *out = new corrfun_algebra{
        resolve_algebra_input(spec, bound, policy_of(policy))};
  });
}

corrfun_status corrfun_algebra_bound(const corrfun_algebra* a, int* out) {
  return guarded([&] {
    need(a, "algebra");
    need(out, "out");
    *out = a->value.bound();
  });
}

corrfun_status corrfun_algebra_dims(const corrfun_algebra* a,
                                    uint64_t* dims) {
  return guarded([&] {
    need(a, "algebra");
    need(dims, "dims");
    for (int n = 0; n <= a->value.bound(); ++n) dims[n] = a->value.dim(n);
  });
}

void corrfun_algebra_free(corrfun_algebra* a) { delete a; }

int corrfun_report_passed(const corrfun_report* r) {
  return r != nullptr && r->value.pass ? 1 : 0;
}

corrfun_status corrfun_report_line(const corrfun_report* r, char** out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    *out = heap_string(r->value.line());
  });
}

corrfun_status corrfun_report_json(const corrfun_report* r, char** out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    *out = heap_string(r->value.json());
  });
}

void corrfun_report_free(corrfun_report* r) { delete r; }

size_t corrfun_reports_count(const corrfun_reports* list) {
  return list == nullptr ? 0 : list->items.size();
}

const corrfun_report* corrfun_reports_at(const corrfun_reports* list,
                                         size_t i) {
  if (list == nullptr || i >= list->items.size()) return nullptr;
  return &list->items[i];
}

void corrfun_reports_free(corrfun_reports* list) { delete list; }

corrfun_status corrfun_verify_tau(const corrfun_lattice* t,
                                  const corrfun_lattice* tp, int bound,
                                  const corrfun_policy* policy,
                                  corrfun_report** out) {
  return guarded([&] {
    need(t, "lattice");
    need(tp, "lattice");
    need(out, "out");
    *out = new corrfun_report{
        verify_tau(t->value, tp->value, bound, policy_of(policy))};
  });
}

corrfun_status corrfun_verify_representable_tensor(
    uint64_t e, uint64_t ep, int bound, const corrfun_policy* policy,
    corrfun_report** out) {
  return guarded([&] {
    need(out, "out");
    *out = new corrfun_report{verify_representable_tensor(
        static_cast<std::size_t>(e), static_cast<std::size_t>(ep), bound,
        policy_of(policy))};
  });
}

corrfun_status corrfun_verify(const char* id, const char* lattice_a,
                              const char* lattice_b, const char* algebra,
                              int bound, const corrfun_policy* policy,
                              corrfun_reports** out) {
  return guarded([&] {
    need(id, "id");
    need(out, "out");
    std::vector<VerificationReport> reports = run_named(
        id, lattice_a, lattice_b, algebra, bound, policy_of(policy));
    auto* list = new corrfun_reports;
    for (VerificationReport& r : reports)
      list->items.push_back(corrfun_report{std::move(r)});
    *out = list;
  });
}

corrfun_status corrfun_reconstruct(const char* algebra, int bound,
                                   const corrfun_policy* policy,
                                   corrfun_report** report,
                                   char** lattice_text) {
  return guarded([&] {
    need(algebra, "algebra");
    need(report, "report");
    need(lattice_text, "lattice_text");
    const VerifyPolicy pol = policy_of(policy);
    const AlgebraFunctorRep a = resolve_algebra_input(algebra, bound, pol);
    ReconstructionResult res = reconstruct_lattice(a, pol);
    *lattice_text = res.ok ? heap_string(res.lattice.to_text()) : nullptr;
    *report = new corrfun_report{std::move(res.report)};
  });
}

}  // extern "C"
