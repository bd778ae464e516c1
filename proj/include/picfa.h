/*
 * picfa - coupled neutronics / thermal-feedback Picard iteration
 * mini-simulator with a closed-form Fourier convergence predictor.
 *
 * C interface of the shared library. All state lives behind opaque
 * handles; every call returns a status code and the last error message is
 * available per thread via picfa_last_error().
 */
#ifndef PICFA_H
#define PICFA_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct picfa_problem picfa_problem;
typedef struct picfa_report picfa_report;

typedef enum picfa_status {
  PICFA_OK = 0,
  PICFA_ERR_CONFIG = 1,   /* bad config file / arguments */
  PICFA_ERR_DIVERGED = 2, /* run finished but did not converge */
  PICFA_ERR_RUNTIME = 3,  /* numerical or I/O failure */
  PICFA_ERR_ARGUMENT = 4  /* null handle or out-of-range parameter */
} picfa_status;

const char* picfa_version(void);

/* Message describing the most recent failure on this thread. */
const char* picfa_last_error(void);

/* --- problem construction ---------------------------------------------- */

/* Parses and validates a flat `key = value` config file. */
picfa_status picfa_problem_from_file(const char* path, picfa_problem** out);
picfa_status picfa_problem_from_string(const char* text, picfa_problem** out);
void picfa_problem_free(picfa_problem* problem);

/* Resolved numeric config value (after defaulting). Returns PICFA_ERR_ARGUMENT
 * for unknown keys. */
picfa_status picfa_problem_get(const picfa_problem* problem, const char* key,
                               double* out);

/* --- runs ---------------------------------------------------------------
 * Each run writes report.csv and history.csv (plus modes.csv for the
 * Fourier report) under out_dir and returns a queryable report handle.
 * A completed-but-not-converged coupled run reports PICFA_ERR_DIVERGED;
 * the report handle is still produced. */

picfa_status picfa_run(const picfa_problem* problem, const char* out_dir,
                       picfa_report** out);

picfa_status picfa_fig1(const picfa_problem* problem, const double* taus,
                        int n_taus, const char* out_dir, picfa_report** out);

picfa_status picfa_tau_scan(const picfa_problem* problem, double tau_lo,
                            double tau_hi, int iters, const char* out_dir,
                            picfa_report** out);

picfa_status picfa_fourier_report(const picfa_problem* problem,
                                  const char* out_dir, picfa_report** out);

/* --- report queries ------------------------------------------------------ */

void picfa_report_free(picfa_report* report);

int picfa_report_has(const picfa_report* report, const char* key);

/* Numeric report entry; PICFA_ERR_ARGUMENT when missing or non-numeric. */
picfa_status picfa_report_number(const picfa_report* report, const char* key,
                                 double* out);

/* String report entry copied into buf (truncated if needed). */
picfa_status picfa_report_string(const picfa_report* report, const char* key,
                                 char* buf, int buf_size);

/* Number of key/value entries, and entry access by index. */
int picfa_report_size(const picfa_report* report);
picfa_status picfa_report_entry(const picfa_report* report, int index,
                                char* key_buf, int key_size, char* value_buf,
                                int value_size);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PICFA_H */
