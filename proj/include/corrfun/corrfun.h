/* C interface to the correspondence-functor workbench.
 *
 * Conventions:
 *   - every fallible function returns a corrfun_status; 0 means success
 *   - on failure corrfun_last_error() describes the problem (thread local)
 *   - char** results are heap strings released with corrfun_string_free
 *   - objects are opaque handles released with their matching _free call
 */
#ifndef CORRFUN_H
#define CORRFUN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum corrfun_status {
  CORRFUN_OK = 0,
  CORRFUN_INVALID_ARGUMENT = 1,
  CORRFUN_PARSE = 2,
  CORRFUN_NOT_A_LATTICE = 3,
  CORRFUN_DIMENSION = 4,
  CORRFUN_SINGULAR = 5,
  CORRFUN_BOUND = 6,
  CORRFUN_NOT_COMMUTATIVE = 7,
  CORRFUN_NOT_SPLIT = 8,
  CORRFUN_HYPOTHESIS = 9,
  CORRFUN_VERIFICATION = 10,
  CORRFUN_UNKNOWN_NAME = 11,
  CORRFUN_IO = 12,
  CORRFUN_INTERNAL = 13
} corrfun_status;

/* Message for the most recent failure on this thread; never NULL. */
const char* corrfun_last_error(void);

void corrfun_string_free(char* s);

/* Sweep policy for the verifiers: enumerate exhaustively whenever both sets
 * have at most exhaustive_size elements, otherwise draw `samples` seeded
 * cases. Pass NULL anywhere a policy is expected to use the defaults
 * (exhaustive_size 2, samples 500, seed 0). */
typedef struct corrfun_policy {
  int exhaustive_size;
  int samples;
  uint64_t seed;
} corrfun_policy;

/* ---- correspondences ------------------------------------------------- */

typedef struct corrfun_corr corrfun_corr;

/* Text format: "corr <target> <source>" then target rows of 0/1. */
corrfun_status corrfun_corr_parse(const char* text, corrfun_corr** out);
corrfun_status corrfun_corr_compose(const corrfun_corr* after,
                                    const corrfun_corr* first,
                                    corrfun_corr** out);
corrfun_status corrfun_corr_to_text(const corrfun_corr* c, char** out);
void corrfun_corr_free(corrfun_corr* c);

/* ---- lattices --------------------------------------------------------- */

typedef struct corrfun_lattice corrfun_lattice;

/* Newline-separated list of built-in lattice names. */
corrfun_status corrfun_lattice_names(char** out);

/* Accepts a built-in name or a path to a "lattice <n>" + "cover a b" file. */
corrfun_status corrfun_lattice_resolve(const char* name_or_path,
                                       corrfun_lattice** out);
corrfun_status corrfun_lattice_size(const corrfun_lattice* t, uint64_t* out);
corrfun_status corrfun_lattice_to_text(const corrfun_lattice* t, char** out);
/* Human-readable join and meet tables. */
corrfun_status corrfun_lattice_tables(const corrfun_lattice* t, char** out);
void corrfun_lattice_free(corrfun_lattice* t);

/* ---- dimension tables -------------------------------------------------- */

/* Each writes bound+1 entries into dims: the value at sets of size 0..bound.
 * ft: the functor of T-valued functions. tensor: the tensor product of the
 * two function functors. hom: the internal hom from the first to the second
 * (fails with CORRFUN_BOUND when the truncation cannot determine it). */
corrfun_status corrfun_ft_dims(const corrfun_lattice* t, int bound,
                               uint64_t* dims);
corrfun_status corrfun_tensor_dims(const corrfun_lattice* t,
                                   const corrfun_lattice* tp, int bound,
                                   uint64_t* dims);
corrfun_status corrfun_hom_dims(const corrfun_lattice* t,
                                const corrfun_lattice* tp, int bound,
                                uint64_t* dims);

/* ---- algebra functors --------------------------------------------------- */

typedef struct corrfun_algebra corrfun_algebra;

/* Accepts "ft:<lattice name or path>" (built at the given bound) or a path
 * to an algebra file (bound fixed at 2 by the format). Validation of the
 * algebra laws happens on load. */
corrfun_status corrfun_algebra_resolve(const char* spec, int bound,
                                       const corrfun_policy* policy,
                                       corrfun_algebra** out);
corrfun_status corrfun_algebra_bound(const corrfun_algebra* a, int* out);
corrfun_status corrfun_algebra_dims(const corrfun_algebra* a, uint64_t* dims);
void corrfun_algebra_free(corrfun_algebra* a);

/* ---- verification reports ---------------------------------------------- */

typedef struct corrfun_report corrfun_report;
typedef struct corrfun_reports corrfun_reports;

int corrfun_report_passed(const corrfun_report* r);
/* "THEOREM <id> PASS|FAIL cases=<n> [witness=<desc>]" */
corrfun_status corrfun_report_line(const corrfun_report* r, char** out);
/* One JSON object with stable key order. */
corrfun_status corrfun_report_json(const corrfun_report* r, char** out);
void corrfun_report_free(corrfun_report* r);

size_t corrfun_reports_count(const corrfun_reports* list);
const corrfun_report* corrfun_reports_at(const corrfun_reports* list,
                                         size_t i);
void corrfun_reports_free(corrfun_reports* list);

/* ---- verifiers ---------------------------------------------------------- */

/* Natural basis bijection between the tensor of two function functors and
 * the function functor of the product lattice. */
corrfun_status corrfun_verify_tau(const corrfun_lattice* t,
                                  const corrfun_lattice* tp, int bound,
                                  const corrfun_policy* policy,
                                  corrfun_report** out);

/* Tensor of representable functors against the representable of the
 * disjoint union. */
corrfun_status corrfun_verify_representable_tensor(
    uint64_t e, uint64_t ep, int bound, const corrfun_policy* policy,
    corrfun_report** out);

/* Named verifier suites; the id is one of:
 *   tau, representable-tensor, induced-tensor, adjunction, internal-hom,
 *   pairing, foundations, exponential, product-union, reconstruction, all.
 * lattice_a/lattice_b choose lattices where the suite needs them (NULL picks
 * the documented defaults); algebra names an algebra input for the last
 * three ids. Returns one report per run in deterministic order. */
corrfun_status corrfun_verify(const char* id, const char* lattice_a,
                              const char* lattice_b, const char* algebra,
                              int bound, const corrfun_policy* policy,
                              corrfun_reports** out);

/* Recover a lattice from an algebra input. On success *lattice_text holds
 * the recovered lattice in cover-list form; on a failed reconstruction the
 * report carries the diagnosis and *lattice_text is NULL. */
corrfun_status corrfun_reconstruct(const char* algebra, int bound,
                                   const corrfun_policy* policy,
                                   corrfun_report** report,
                                   char** lattice_text);

#ifdef __cplusplus
}
#endif

#endif /* CORRFUN_H */
