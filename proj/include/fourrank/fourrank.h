/* SPDX-License-Identifier: Apache-2.0 */
/*
 * C interface to the fourrank library.
 *
 * Every call returns an fr_status; on failure fr_last_error() describes the
 * problem (per thread). Strings handed out through char** are owned by the
 * caller and released with fr_string_free.
 *
 * Polynomials are comma-separated coefficient lists over F_q in ascending
 * order ("1,0,1" is x^2 + 1). Point lists are ';'-separated polynomials,
 * with "inf" for the point at infinity.
 */
#ifndef FOURRANK_H
#define FOURRANK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FR_API __declspec(dllexport)
#else
#define FR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fr_status {
    FR_OK = 0,
    FR_INVALID_ARGUMENT = 1,
    FR_PARSE = 2,
    FR_NOT_SQUAREFREE = 3,
    FR_NOT_IRREDUCIBLE = 4,
    FR_NO_ODD_BRANCH_POINT = 5,
    FR_RAMIFIED_POINT = 6,
    FR_BUDGET_EXCEEDED = 7,
    FR_INVARIANT_VIOLATION = 8,
    FR_INFEASIBLE = 9,
    FR_INTERNAL = 100
} fr_status;

FR_API const char* fr_version(void);
FR_API const char* fr_status_name(fr_status s);
FR_API const char* fr_last_error(void);
FR_API void fr_string_free(char* s);

/* Curves y^2 = f(x) with f monic squarefree. */
typedef struct fr_curve fr_curve;

/* base_point may be NULL to use the default base point. */
FR_API fr_status fr_curve_new(uint32_t q, const char* f, const char* base_point, fr_curve** out);
FR_API void fr_curve_free(fr_curve* c);
FR_API fr_status fr_curve_four_rank(const fr_curve* c, size_t* out);
FR_API fr_status fr_curve_two_rank(const fr_curve* c, size_t* out);
/* {"q","degrees","p0","C_rank","nullity","four_rank"} */
FR_API fr_status fr_curve_header_json(const fr_curve* c, char** out);
/* Redei matrix as newline-terminated rows of '0'/'1'. */
FR_API fr_status fr_curve_matrix(const fr_curve* c, char** out);
/* 4-rank from the enumerated Jacobian; even-degree f goes through the
 * substituted odd model and needs a rational root. */
FR_API fr_status fr_curve_direct_four_rank(const fr_curve* c, uint64_t budget, size_t* out);

/* Quadratic residue symbol (f/h) in {-1, 0, 1}; h monic irreducible. */
FR_API fr_status fr_qr_symbol(uint32_t q, const char* f, const char* h, int* out);

/* Limiting 4-rank laws: mu_S if symmetric != 0, else mu_CL. */
FR_API fr_status fr_mu(uint32_t ell, unsigned r, int symmetric, double* out);

typedef struct fr_experiment_config {
    uint32_t q;
    int branch_set;   /* 0: random monic squarefree f of degree `degree` */
    unsigned degree;  /* deg f, or 2g + 2 when branch_set != 0 */
    uint64_t trials;
    uint64_t seed;
    const char* ramified;  /* point lists, NULL for none */
    const char* split;
    const char* inert;
    const char* unramified;  /* kept out of the branch set, no class condition */
    unsigned threads;
    unsigned matched_draws;
    double gamma;
    double epsilon;
} fr_experiment_config;

FR_API void fr_experiment_config_init(fr_experiment_config* cfg);

typedef struct fr_report fr_report;

FR_API fr_status fr_run_experiment(const fr_experiment_config* cfg, fr_report** out);
FR_API void fr_report_free(fr_report* r);
FR_API fr_status fr_report_json(const fr_report* r, int with_runtime, char** out);
FR_API fr_status fr_report_csv(const fr_report* r, char** out);
FR_API fr_status fr_report_outcomes(const fr_report* r, uint64_t* accepted, uint64_t* no_odd_branch_point,
                                    uint64_t* local_rejected);
FR_API fr_status fr_report_acceptance_rate(const fr_report* r, double* out);
/* Copies up to cap entries; *len receives the full length. */
FR_API fr_status fr_report_pmf(const fr_report* r, double* out, size_t cap, size_t* len);
FR_API fr_status fr_report_matched_pmf(const fr_report* r, double* out, size_t cap, size_t* len);
FR_API fr_status fr_report_reference(const fr_report* r, double* out, size_t cap, size_t* len);

/* Self-checks; *passed is 1 when every check holds. */
FR_API fr_status fr_oracle_sweep(uint32_t q, unsigned dmax, uint64_t random_samples, uint64_t seed, int even_degrees,
                                 int* passed, char** json);
FR_API fr_status fr_matstat_validate(uint64_t seed, uint64_t samples, int* passed, char** json);
FR_API fr_status fr_degree_stats(uint32_t q, unsigned degree, uint64_t trials, uint64_t seed, double gamma,
                                 double epsilon, int* passed, char** json);

#ifdef __cplusplus
}
#endif

#endif
