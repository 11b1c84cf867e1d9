#ifndef CORPUSCOPE_H
#define CORPUSCOPE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CsAmbiguityRule {
  CS_AMBIGUITY_RULE_UNANIMOUS = 0,
  CS_AMBIGUITY_RULE_STRICT_MAJORITY = 1,
} CsAmbiguityRule;

typedef enum CsStatus {
  CS_STATUS_OK = 0,
  CS_STATUS_NULL_POINTER = 1,
  CS_STATUS_INVALID_UTF8 = 2,
  CS_STATUS_IO = 3,
  CS_STATUS_PARSE = 4,
  CS_STATUS_INVALID_INPUT = 5,
  CS_STATUS_INTERNAL = 6,
} CsStatus;

// Loaded corpus.
typedef struct CsCorpus CsCorpus;

// Token frequency spectrum of a corpus.
typedef struct CsSpectrum CsSpectrum;

typedef struct CsLexicalProfile {
  size_t tokens;
  size_t types;
  double ttr;
  double hapax_ratio;
  double dis_ratio;
  double tris_ratio;
  size_t mid_count;
  double mid_density;
} CsLexicalProfile;

typedef struct CsDivergences {
  double kl_ab;
  double kl_ba;
  double cross_entropy_ab;
  double js;
} CsDivergences;

typedef struct CsTTest {
  double t;
  size_t df;
  double p_two_tailed;
  double mean_a;
  double mean_b;
  double sd_a;
  double sd_b;
} CsTTest;

typedef struct CsWeightedPrf {
  double precision;
  double recall;
  double f1;
} CsWeightedPrf;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or NULL. The pointer stays
// valid until the next failing call on the same thread.
const char *cs_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *cs_version(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void cs_string_free(char *s);

// Loads a JSONL corpus; `name` may be NULL to use the file stem.
//
// # Safety
// `path` and `name` must be NULL or NUL-terminated; `out` must be writable.
enum CsStatus cs_corpus_load(const char *path, const char *name, struct CsCorpus **out);

// New corpus holding the posts on which annotators agree under `rule`, a
// [`CsAmbiguityRule`] value.
//
// # Safety
// `corpus` must be a live handle; `out` must be writable.
enum CsStatus cs_corpus_filter(const struct CsCorpus *corpus, int rule, struct CsCorpus **out);

// Number of posts; 0 for NULL.
//
// # Safety
// `corpus` must be NULL or a live handle.
size_t cs_corpus_len(const struct CsCorpus *corpus);

// # Safety
// `corpus` must be NULL or a handle not yet freed.
void cs_corpus_free(struct CsCorpus *corpus);

// # Safety
// `corpus` must be a live handle; `out` must be writable.
enum CsStatus cs_spectrum_from_corpus(const struct CsCorpus *corpus, struct CsSpectrum **out);

// Token count N; 0 for NULL.
//
// # Safety
// `spectrum` must be NULL or a live handle.
size_t cs_spectrum_tokens(const struct CsSpectrum *spectrum);

// Type count V; 0 for NULL.
//
// # Safety
// `spectrum` must be NULL or a live handle.
size_t cs_spectrum_types(const struct CsSpectrum *spectrum);

// V(m, N): number of types occurring exactly `m` times; 0 for NULL.
//
// # Safety
// `spectrum` must be NULL or a live handle.
size_t cs_spectrum_types_with_frequency(const struct CsSpectrum *spectrum, size_t m);

// # Safety
// `spectrum` must be NULL or a handle not yet freed.
void cs_spectrum_free(struct CsSpectrum *spectrum);

// Lexical profile of a spectrum. `stopwords_path` may be NULL for the
// built-in English list.
//
// # Safety
// `spectrum` must be a live handle, `stopwords_path` NULL or NUL-terminated,
// `out` writable.
enum CsStatus cs_lexical_profile(const struct CsSpectrum *spectrum,
                                 const char *stopwords_path,
                                 size_t mid_threshold,
                                 struct CsLexicalProfile *out);

// # Safety
// `a` and `b` must be live handles; `out` writable.
enum CsStatus cs_divergences(const struct CsSpectrum *a,
                             const struct CsSpectrum *b,
                             struct CsDivergences *out);

// Pooled-variance two-tailed t-test of `xs[0..nx]` against `ys[0..ny]`.
//
// # Safety
// `xs`/`ys` must point to `nx`/`ny` readable doubles; `out` writable.
enum CsStatus cs_t_test(const double *xs,
                        size_t nx,
                        const double *ys,
                        size_t ny,
                        struct CsTTest *out);

// Student's t cumulative distribution.
//
// # Safety
// `out` must be writable.
enum CsStatus cs_t_cdf(double t, double df, double *out);

// Support-weighted precision, recall and F of a row-major `k` x `k`
// confusion matrix (rows gold, columns predicted).
//
// # Safety
// `counts` must point to `k * k` readable values; `out` writable.
enum CsStatus cs_weighted_prf(const uint64_t *counts, size_t k, struct CsWeightedPrf *out);

// Runs the two-corpus protocol and returns the full report as JSON.
//
// `config_json` may be NULL; otherwise an object with optional keys
// `features` (array of "bow", "lexicon", "selected"), `classifiers`,
// `lexicons` (file paths), `folds` and `seed`. Both corpora must be
// labeled (see [`cs_corpus_filter`]). Free the result with
// [`cs_string_free`].
//
// # Safety
// `a` and `b` must be live handles, `config_json` NULL or NUL-terminated,
// `out` writable.
enum CsStatus cs_protocol_run(const struct CsCorpus *a,
                              const struct CsCorpus *b,
                              const char *config_json,
                              char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CORPUSCOPE_H */
