/*
 * asylecon — time-varying asylum/GDP analysis library.
 *
 * C interface to the shared library: opaque handles, integer status codes,
 * and UTF-8 strings. Every function that can fail returns asylecon_status;
 * on failure asylecon_last_error() describes the most recent error in the
 * calling thread. Strings returned through char** are heap-allocated and
 * must be released with asylecon_string_free(). Strings returned as
 * const char* stay owned by the handle they came from and are valid until
 * that handle is freed.
 */

#ifndef ASYLECON_H
#define ASYLECON_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct asylecon_panel asylecon_panel;
typedef struct asylecon_config asylecon_config;
typedef struct asylecon_study asylecon_study;

typedef enum asylecon_status {
    ASYLECON_OK = 0,
    ASYLECON_E_IO = 1,       /* missing files, unwritable outputs */
    ASYLECON_E_PARSE = 2,    /* malformed CSV or configuration */
    ASYLECON_E_INVALID = 3,  /* bad arguments: unknown country, null handle */
    ASYLECON_E_COMPUTE = 4,  /* numerical failure in an estimator */
    ASYLECON_E_NOMEM = 5,
    ASYLECON_E_INTERNAL = 6,
} asylecon_status;

/* Library version as "major.minor.patch". */
const char* asylecon_version(void);

/* Message for the calling thread's most recent failure; empty if none. */
const char* asylecon_last_error(void);

/* ---- data panel ------------------------------------------------------- */

/* Loads asylum.csv, population.csv and gdp_pps.csv from `dir`. Countries
 * with irreparable gaps are dropped and listed with a reason rather than
 * failing the load. */
asylecon_status asylecon_panel_load(const char* dir, asylecon_panel** out);
void asylecon_panel_free(asylecon_panel* panel);

int asylecon_panel_country_count(const asylecon_panel* panel);
/* Country code at `index` in sorted order, or NULL if out of range. */
const char* asylecon_panel_country_code(const asylecon_panel* panel, int index);

int asylecon_panel_excluded_count(const asylecon_panel* panel);
asylecon_status asylecon_panel_excluded_reason(const asylecon_panel* panel, int index,
                                               const char** code, const char** reason);

/* ---- configuration ---------------------------------------------------- */

/* A configuration with every knob at its reference default. */
asylecon_status asylecon_config_create(asylecon_config** out);
/* Defaults overlaid with a flat "key = value" file ('#' comments). */
asylecon_status asylecon_config_load(const char* path, asylecon_config** out);
/* Sets one key; rejects unknown keys and unparsable values. */
asylecon_status asylecon_config_set(asylecon_config* config, const char* key,
                                    const char* value);
void asylecon_config_free(asylecon_config* config);

/* ---- running the study ------------------------------------------------ */

/* Runs the full analysis. `countries` may be NULL with n_countries 0 to run
 * every country; a subset is automatically extended with the baseline
 * country, which the relative comparisons require. Per-country numerical
 * failures do not fail the run; they are recorded in the report. */
asylecon_status asylecon_study_run(const asylecon_panel* panel,
                                   const asylecon_config* config,
                                   const char* const* countries, int n_countries,
                                   asylecon_study** out);

/* Writes the report into `out_dir`. The study.json bundle is always
 * written; `formats` is a comma-separated subset of "csv,json" and the CSV
 * tables are added when it contains "csv". NULL or empty selects the full
 * output. */
asylecon_status asylecon_study_emit(const asylecon_study* study, const char* out_dir,
                                    const char* formats);

/* The study.json document as a fresh string (caller frees). */
asylecon_status asylecon_study_json(const asylecon_study* study, char** out_text);

int asylecon_study_country_count(const asylecon_study* study);
/* Total number of per-country stage failures recorded in the report. */
int asylecon_study_error_count(const asylecon_study* study);
void asylecon_study_free(asylecon_study* study);

/* ---- single fits and verification ------------------------------------ */

/* Fits one model ("ratio", "elasticity" or "loglog") for one country and
 * returns its JSON (caller frees). */
asylecon_status asylecon_fit_json(const asylecon_panel* panel,
                                  const asylecon_config* config, const char* country,
                                  const char* model, char** out_text);

/* Runs the seeded Monte Carlo self-verification. `out_report` (optional)
 * receives a human-readable multi-line summary (caller frees);
 * `all_passed` (optional) receives 1 when every suite passed. */
asylecon_status asylecon_selftest(uint64_t seed, char** out_report, int* all_passed);

/* Frees any char* returned through a char** out-parameter. */
void asylecon_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ASYLECON_H */
