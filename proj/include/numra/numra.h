#ifndef NUMRA_NUMRA_H_
#define NUMRA_NUMRA_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Error codes returned by every fallible call. */
enum {
  NUMRA_OK = 0,
  NUMRA_E_N_NON_POSITIVE = 1,
  NUMRA_E_R_NOT_ODD = 2,
  NUMRA_E_R_OUT_OF_RANGE = 3,
  NUMRA_E_NOT_COPRIME = 4,
  NUMRA_E_GRID_MISMATCH = 5,
  NUMRA_E_STEP_NOT_ALIGNED = 6,
  NUMRA_E_UNALIGNED_QUERY = 7,
  NUMRA_E_WRONG_CHANNEL_COUNT = 8,
  NUMRA_E_NOT_NORMALIZED = 9,
  NUMRA_E_LOWER_BOUND_ZERO = 10,
  NUMRA_E_ZERO_SIGNAL = 11,
  NUMRA_E_DEGENERATE_TAIL = 12,
  NUMRA_E_IO = 13,
  NUMRA_E_BAD_ARGUMENT = 14,
  NUMRA_E_INTERNAL = 15
};

/* Stable name for an error code ("Ok", "RNotOdd", ...). */
const char* numra_error_name(int code);

/* Message of the most recent failure on the calling thread. */
const char* numra_last_error_message(void);

typedef struct numra_spectrum numra_spectrum;
typedef struct numra_bank numra_bank;
typedef struct numra_report numra_report;

/* Validates (N, r) and creates a handle; *out is NULL on failure. */
int numra_spectrum_create(long N, long r, numra_spectrum** out);
void numra_spectrum_destroy(numra_spectrum* s);

/* Loads a filter bank from a JSON file. */
int numra_bank_load(const char* path, numra_bank** out);
/* Builtin band-selection (Shannon) bank for the spectrum. */
int numra_bank_shannon(const numra_spectrum* s, numra_bank** out);
void numra_bank_destroy(numra_bank* b);

typedef struct {
  double omega;       /* half band width; 0 -> 8 */
  double step;        /* grid step; 0 -> 1/(4N*64), must divide 1/(4N) */
  long nmax;          /* periodization window; 0 -> ceil((omega+2)/2) */
  int jlo, jhi;       /* level range; both 0 -> [-2, 4] */
  long lwindow;       /* translation window; 0 -> 16 */
  uint64_t seed;      /* 0 -> 1 */
} numra_certify_options;

/* Fills an options struct with the documented defaults. */
void numra_certify_options_default(numra_certify_options* opts);

/* Runs the certification pipeline. A negative certification still returns
 * NUMRA_OK; inspect numra_report_pass. bank NULL certifies the builtin
 * band-selection system for the spectrum. */
int numra_certify(const numra_spectrum* s, const numra_bank* bank,
                  const numra_certify_options* opts, numra_report** out);

/* Report JSON as a malloc'd NUL-terminated string; free with
 * numra_string_free. */
int numra_report_json(const numra_report* r, char** out);
int numra_report_pass(const numra_report* r); /* 1 pass, 0 fail */
void numra_report_destroy(numra_report* r);
void numra_string_free(char* s);

/* CSV export; what is one of "periodization", "scaling", "wavelets",
 * "coefficients". bank NULL exports the builtin system. */
int numra_export(const numra_spectrum* s, const numra_bank* bank,
                 const numra_certify_options* opts, const char* what,
                 const char* out_path);

#ifdef __cplusplus
}
#endif

#endif
