/* affiq — numerical convex geometry toolkit, C interface.
 *
 * All functions return AFFIQ_OK (0) on success or a nonzero status; the
 * message for the most recent failure on the calling thread is available via
 * affiq_last_error(). Strings returned through char** out parameters are
 * heap-allocated and must be released with affiq_string_free(); bodies with
 * affiq_body_free().
 */
#ifndef AFFIQ_H
#define AFFIQ_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct affiq_body affiq_body; /* opaque convex body handle */

enum {
    AFFIQ_OK = 0,
    AFFIQ_ERR_USAGE = 2,   /* invalid arguments, unknown names, parse errors */
    AFFIQ_ERR_NUMERIC = 3, /* numerical failure (degenerate hull, LP trouble) */
};

const char* affiq_version(void);
const char* affiq_last_error(void);
void affiq_string_free(char* s);
void affiq_body_free(affiq_body* b);

/* kind: cube | box | simplex | cross-polytope | random-poly | ball-polytope |
 * ellipsoid | ball. params_json (optional, may be NULL): {"m": int,
 * "radius": x, "sides": [..], "center": [..], "shape": [[..],..],
 * "diag": [..]}. Random kinds are deterministic in `seed`. */
int affiq_body_generate(const char* kind, int n, const char* params_json, uint64_t seed,
                        affiq_body** out);

int affiq_body_parse(const char* json_text, affiq_body** out);
int affiq_body_dump(const affiq_body* b, char** out_json);

/* kind, dim, vertex/row counts, volume, inscribed-radius estimate */
int affiq_body_info(const affiq_body* b, size_t budget, uint64_t seed, char** out_json);

/* Q_{k,p} (p_is_log selects the geometric mean p = 0), plus I_{k,p} and, when
 * p = -n, the affine quermassintegral. threads <= 0 picks the default. */
int affiq_quermass(const affiq_body* b, int k, double p, int p_is_log, size_t budget,
                   uint64_t seed, int threads, char** out_json);

/* Fiberwise shadow-system body K_u(t); t = 0 is the Steiner symmetral.
 * u must have length n; n_extra <= 0 picks the dimension default. */
int affiq_symmetrize(const affiq_body* b, const double* u, int u_len, double t, int n_extra,
                     uint64_t seed, affiq_body** out);

/* Blaschke-Petkantschin f-invariance battery (5 test functions). */
int affiq_bp_check(int n, int k, size_t budget, uint64_t seed, int threads, char** out_json);

/* Rolodex measure identity: mu estimate vs plain |P_F K|^{-n} mean across a
 * body battery; the ratio must be body-independent. */
int affiq_rolodex_check(int n, int k, size_t budget, uint64_t seed, int threads,
                        char** out_json);

int affiq_suite_list(char** out_json);

/* config_json: {"dims":[3], "k":[..], "budget":.., "seed":.., "threads":..,
 * "directions":.., "t_grid":[..], "p_grid":[..], "n_extra":..,
 * "slab_directions":.., "chord_probes":.., "catalog":"<json text>",
 * "bodies":[..], "explore":bool}. All fields optional except seed.
 * out_pass reports the suite verdict (1 pass / 0 fail). */
int affiq_verify(const char* suite, const char* config_json, char** out_report_json,
                 char** out_report_csv, int* out_pass);

#ifdef __cplusplus
}
#endif

#endif /* AFFIQ_H */
