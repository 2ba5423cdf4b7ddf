////////////////////////////////////////////////////////////////////////////////
//                                                                            //
//  This file is part of jpk (Jacobi-Poisson kernel toolkit)                  //
//                                                                            //
//  Copyright 2026 jpk developers                                             //
//                                                                            //
//  Licensed under the Apache License, Version 2.0 (the "License");           //
//  you may not use this file except in compliance with the License.          //
//  You may obtain a copy of the License at                                   //
//                                                                            //
//      http://www.apache.org/licenses/LICENSE-2.0                            //
//                                                                            //
//  Unless required by applicable law or agreed to in writing, software       //
//  distributed under the License is distributed on an "AS IS" BASIS,         //
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.  //
//  See the License for the specific language governing permissions and       //
//  limitations under the License.                                            //
//                                                                            //
////////////////////////////////////////////////////////////////////////////////

#ifndef JPK_H
#define JPK_H

/* C interface to the Jacobi-Poisson kernel library.
 *
 * Every function returns a jpk_status; on failure the message is available
 * from jpk_last_error() on the calling thread until the next call. Handles
 * are opaque and owned by the caller; strings returned through char** are
 * released with jpk_string_free. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#  define JPK_API __declspec(dllexport)
#else
#  define JPK_API __attribute__((visibility("default")))
#endif

typedef enum {
  JPK_OK = 0,
  JPK_ERR_INVALID_ARGUMENT = 1,
  JPK_ERR_DOMAIN = 2,
  JPK_ERR_INDEX = 3,
  JPK_ERR_UNSUPPORTED_ORDER = 4,
  JPK_ERR_CONVERGENCE = 5,
  JPK_ERR_IO = 6,
  JPK_ERR_PARSE = 7,
  JPK_ERR_NULL_POINTER = 8,
  JPK_ERR_INTERNAL = 9
} jpk_status;

typedef enum {
  JPK_METHOD_SERIES = 0,
  JPK_METHOD_F4 = 1,
  JPK_METHOD_INTEGRAL = 2,
  JPK_METHOD_GENERAL = 3,
  JPK_METHOD_AUTO = 4
} jpk_method;

typedef enum { JPK_KERNEL_H = 0, JPK_KERNEL_HSCRIPT = 1 } jpk_kernel_kind;

typedef struct jpk_params jpk_params;
typedef struct jpk_expansion jpk_expansion;
typedef struct jpk_report jpk_report;

JPK_API const char* jpk_last_error(void);
JPK_API const char* jpk_version(void);
JPK_API void jpk_string_free(char* s);

/* ---- parameters ---- */
JPK_API int jpk_params_create(double alpha, double beta, jpk_params** out);
JPK_API void jpk_params_destroy(jpk_params* p);
JPK_API int jpk_params_info(const jpk_params* p, double* lambda, double* mu_total, double* c_ab);

/* ---- kernel ---- */
JPK_API int jpk_kernel_eval(const jpk_params* p, double t, double theta, double phi, jpk_method method,
                            int d_t, int d_theta, int d_phi, double* out);
JPK_API int jpk_closed_form_chebyshev(double t, double theta, double phi, double* out);
JPK_API int jpk_trig_poly_values(const jpk_params* p, int n_max, double theta, int order, double* out);
JPK_API int jpk_comparator(const jpk_params* p, double t, double theta, double phi, jpk_kernel_kind kind,
                           double* out);

/* ---- reports ----
 * Cross-method comparison and estimate scans. Summary fields may be NULL.
 * jpk_sharp_scan uses the default grids for nt == 0 or nangles == 0. */
JPK_API int jpk_compare(const jpk_params* p, const double* t, size_t nt, const double* theta, size_t ntheta,
                        const double* phi, size_t nphi, double tol, double near_tol, jpk_report** out);
JPK_API int jpk_sharp_scan(const jpk_params* p, const double* t, size_t nt, const double* angles,
                           size_t nangles, jpk_kernel_kind kind, double cap, jpk_report** out);
/* scan: "growth", "gradient" or "smoothness"; kernel as named by the scans
 * ("maximal", "riesz1", "g10", "laplace", ...). grid_n sets the
 * off-diagonal grid, n_triples/seed the smoothness sample. */
JPK_API int jpk_cz_scan(const jpk_params* p, const char* scan, const char* kernel, int grid_n, int n_triples,
                        unsigned seed, double cap, jpk_report** out);
JPK_API void jpk_report_destroy(jpk_report* r);
JPK_API int jpk_report_summary(const jpk_report* r, double* min, double* max, double* cap, int* pass,
                               size_t* rows);
JPK_API int jpk_report_csv(const jpk_report* r, char** out);
JPK_API int jpk_report_json(const jpk_report* r, int include_rows, char** out);

/* ---- expansions ---- */
/* im may be NULL for a real expansion; n_coeffs = n_max + 1. */
JPK_API int jpk_expansion_create(const jpk_params* p, const double* re, const double* im, size_t n_coeffs,
                                 jpk_expansion** out);
JPK_API int jpk_expansion_from_json(const char* text, jpk_expansion** out);
JPK_API int jpk_expansion_to_json(const jpk_expansion* e, char** out);
/* Coefficients of the piecewise-linear interpolant of (theta_i, f_i). */
JPK_API int jpk_expansion_analyze(const jpk_params* p, const double* theta, const double* f, size_t n,
                                  int n_max, jpk_expansion** out);
JPK_API void jpk_expansion_destroy(jpk_expansion* e);
JPK_API int jpk_expansion_size(const jpk_expansion* e, int* n_max, int* is_complex);
/* re and im hold n_max + 1 entries each; im may be NULL. */
JPK_API int jpk_expansion_coeffs(const jpk_expansion* e, double* re, double* im);
JPK_API int jpk_synthesize(const jpk_expansion* e, double theta, int order, double* re, double* im);

/* ---- operators ---- */
JPK_API int jpk_semigroup_apply(const jpk_expansion* e, double t, jpk_expansion** out);
/* Values of R_N f at n points; im may be NULL. */
JPK_API int jpk_riesz_eval(const jpk_expansion* e, int N, const double* theta, size_t n, double* re,
                           double* im);
JPK_API int jpk_g_function(const jpk_expansion* e, int M, int N, const double* theta, size_t n, double* out);
/* Laplace type with a constant profile c = c_re + i c_im. */
JPK_API int jpk_multiplier_laplace_const(const jpk_expansion* e, double c_re, double c_im,
                                         jpk_expansion** out, int* dropped_zero_mode);
/* Laplace type with profile t^(-i gamma) / Gamma(1 - i gamma). */
JPK_API int jpk_multiplier_imaginary_power(const jpk_expansion* e, double gamma, jpk_expansion** out,
                                           int* dropped_zero_mode);
JPK_API int jpk_multiplier_stieltjes(const jpk_expansion* e, const double* t, const double* w, size_t n,
                                     jpk_expansion** out);

#ifdef __cplusplus
}
#endif

#endif
