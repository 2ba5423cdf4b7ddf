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

#include "jpk/jpk.h"
#include "jpk/compare.hpp"
#include "jpk/cz_kernels.hpp"
#include "jpk/errors.hpp"
#include "jpk/sharp_bounds.hpp"
#include "jpk/spectral_operators.hpp"
#include <cstdlib>
#include <cstring>
#include <new>
#include <algorithm>
#include <limits>
#include <string>
#include <variant>

struct jpk_params {
  jpk::JacobiParams p;
};

struct jpk_expansion {
  jpk::Expansion e;
};

struct jpk_report {
  std::variant<jpk::EstimateReport,std::pair<jpk::CompareReport,jpk::CompareOptions>> r;
};

namespace {

  thread_local std::string g_last_error;

  int status_of( jpk::ErrorKind k )
  {
    switch ( k ) {
    case jpk::ErrorKind::InvalidArgument: return JPK_ERR_INVALID_ARGUMENT;
    case jpk::ErrorKind::Domain: return JPK_ERR_DOMAIN;
    case jpk::ErrorKind::Index: return JPK_ERR_INDEX;
    case jpk::ErrorKind::UnsupportedOrder: return JPK_ERR_UNSUPPORTED_ORDER;
    case jpk::ErrorKind::Convergence: return JPK_ERR_CONVERGENCE;
    case jpk::ErrorKind::Io: return JPK_ERR_IO;
    case jpk::ErrorKind::Parse: return JPK_ERR_PARSE;
    }
    return JPK_ERR_INTERNAL;
  }

  struct NullArg {};

  template<class... P>
  void need( const P*... ptrs )
  {
    if ( ((ptrs == nullptr) || ...) )
      throw NullArg{};
  }

  // Runs f, mapping exceptions onto a status and the thread's last error.
  template<class F>
  int call( F&& f )
  {
    g_last_error.clear();
    try {
      f();
      return JPK_OK;
    } catch ( NullArg ) {
      g_last_error = "null pointer argument";
      return JPK_ERR_NULL_POINTER;
    } catch ( const jpk::Error& e ) {
      g_last_error = e.what();
      return status_of(e.kind());
    } catch ( const std::bad_alloc& ) {
      g_last_error = "out of memory";
    } catch ( const std::exception& e ) {
      g_last_error = e.what();
    } catch ( ... ) {
      g_last_error = "unknown error";
    }
    return JPK_ERR_INTERNAL;
  }

  char* dup( const std::string& s )
  {
    char* out = static_cast<char*>(std::malloc(s.size()+1));
    if ( !out )
      throw std::bad_alloc();
    std::memcpy(out,s.c_str(),s.size()+1);
    return out;
  }

  std::vector<double> span( const double* p, std::size_t n )
  {
    if ( n > 0 )
      need(p);
    return std::vector<double>(p,p+n);
  }

  jpk::Method method_of( jpk_method m )
  {
    switch ( m ) {
    case JPK_METHOD_SERIES: return jpk::Method::Series;
    case JPK_METHOD_F4: return jpk::Method::F4;
    case JPK_METHOD_INTEGRAL: return jpk::Method::Integral;
    case JPK_METHOD_GENERAL: return jpk::Method::General;
    case JPK_METHOD_AUTO: return jpk::Method::Auto;
    }
    throw jpk::InvalidArgument("unknown method");
  }

  jpk::KernelKind kind_of( jpk_kernel_kind k )
  {
    if ( k != JPK_KERNEL_H && k != JPK_KERNEL_HSCRIPT )
      throw jpk::InvalidArgument("unknown kernel kind");
    return k == JPK_KERNEL_H ? jpk::KernelKind::H : jpk::KernelKind::HScript;
  }

  void store( jpk::Expansion e, jpk_expansion** out ) { *out = new jpk_expansion{std::move(e)}; }

}

extern "C" {

const char* jpk_last_error( void ) { return g_last_error.c_str(); }

const char* jpk_version( void ) { return "1.0.0"; }

void jpk_string_free( char* s ) { std::free(s); }

int jpk_params_create( double alpha, double beta, jpk_params** out )
{
  return call([&] {
    need(out);
    *out = new jpk_params{jpk::JacobiParams(alpha,beta)};
  });
}

void jpk_params_destroy( jpk_params* p ) { delete p; }

int jpk_params_info( const jpk_params* p, double* lambda, double* mu_total, double* c_ab )
{
  return call([&] {
    need(p);
    if ( lambda )
      *lambda = p->p.lambda();
    if ( mu_total )
      *mu_total = p->p.mu_total();
    if ( c_ab )
      *c_ab = p->p.c_ab();
  });
}

int jpk_kernel_eval( const jpk_params* p, double t, double theta, double phi, jpk_method method, int d_t,
                     int d_theta, int d_phi, double* out )
{
  return call([&] {
    need(p,out);
    *out = jpk::kernel_eval(p->p,{t,theta,phi,{d_t,d_theta,d_phi},method_of(method)});
  });
}

int jpk_closed_form_chebyshev( double t, double theta, double phi, double* out )
{
  return call([&] {
    need(out);
    *out = jpk::closed_form_chebyshev(t,theta,phi);
  });
}

int jpk_trig_poly_values( const jpk_params* p, int n_max, double theta, int order, double* out )
{
  return call([&] {
    need(p,out);
    const auto v = jpk::trig_poly_values(p->p,n_max,theta,order);
    std::copy(v.begin(),v.end(),out);
  });
}

int jpk_comparator( const jpk_params* p, double t, double theta, double phi, jpk_kernel_kind kind, double* out )
{
  return call([&] {
    need(p,out);
    *out = jpk::comparator(p->p,t,theta,phi,kind_of(kind));
  });
}

int jpk_compare( const jpk_params* p, const double* t, size_t nt, const double* theta, size_t ntheta,
                 const double* phi, size_t nphi, double tol, double near_tol, jpk_report** out )
{
  return call([&] {
    need(p,out);
    jpk::CompareOptions o;
    o.tol = tol;
    o.near_tol = near_tol;
    auto r = jpk::compare_methods(p->p,span(t,nt),span(theta,ntheta),span(phi,nphi),o);
    *out = new jpk_report{std::pair{std::move(r),o}};
  });
}

int jpk_sharp_scan( const jpk_params* p, const double* t, size_t nt, const double* angles, size_t nangles,
                    jpk_kernel_kind kind, double cap, jpk_report** out )
{
  return call([&] {
    need(p,out);
    const auto ts = nt ? span(t,nt) : jpk::default_sharp_t_grid();
    const auto a = nangles ? span(angles,nangles) : jpk::default_sharp_angle_grid();
    auto r = jpk::ratio_scan(p->p,ts,a,a,kind_of(kind),cap);
    *out = new jpk_report{std::move(r)};
  });
}

int jpk_cz_scan( const jpk_params* p, const char* scan, const char* kernel, int grid_n, int n_triples,
                 unsigned seed, double cap, jpk_report** out )
{
  return call([&] {
    need(p,scan,kernel,out);
    const jpk::KernelId k = jpk::KernelId::parse(kernel);
    const std::string s = scan;
    jpk::EstimateReport r;
    if ( s == "growth" )
      r = jpk::growth_check(p->p,k,jpk::off_diagonal_grid(grid_n),cap);
    else if ( s == "gradient" )
      r = jpk::gradient_check(p->p,k,jpk::off_diagonal_grid(grid_n),cap);
    else if ( s == "smoothness" )
      r = jpk::smoothness_check(p->p,k,jpk::random_triples(n_triples,seed),cap);
    else
      throw jpk::InvalidArgument("unknown scan '" + s + "' (growth, gradient, smoothness)");
    *out = new jpk_report{std::move(r)};
  });
}

void jpk_report_destroy( jpk_report* r ) { delete r; }

int jpk_report_summary( const jpk_report* r, double* min, double* max, double* cap, int* pass, size_t* rows )
{
  return call([&] {
    need(r);
    double lo, hi, c;
    bool ok;
    std::size_t n;
    if ( const auto* e = std::get_if<jpk::EstimateReport>(&r->r) ) {
      lo = e->summary.min;
      hi = e->summary.max;
      c = e->summary.cap;
      ok = e->summary.pass;
      n = e->rows.size();
    } else {
      const auto& [cr,o] = std::get<1>(r->r);
      lo = std::numeric_limits<double>::infinity();
      for ( const auto& row : cr.rows )
        lo = std::min(lo,row.max_rel_diff);
      hi = cr.max_rel_diff;
      c = o.tol;
      ok = cr.pass;
      n = cr.rows.size();
    }
    if ( min )
      *min = lo;
    if ( max )
      *max = hi;
    if ( cap )
      *cap = c;
    if ( pass )
      *pass = ok ? 1 : 0;
    if ( rows )
      *rows = n;
  });
}

int jpk_report_csv( const jpk_report* r, char** out )
{
  return call([&] {
    need(r,out);
    if ( const auto* e = std::get_if<jpk::EstimateReport>(&r->r) )
      *out = dup(jpk::report_csv(*e));
    else
      *out = dup(jpk::compare_csv(std::get<1>(r->r).first));
  });
}

int jpk_report_json( const jpk_report* r, int include_rows, char** out )
{
  return call([&] {
    need(r,out);
    if ( const auto* e = std::get_if<jpk::EstimateReport>(&r->r) )
      *out = dup(jpk::report_json(*e,include_rows != 0));
    else
      *out = dup(jpk::compare_json(std::get<1>(r->r).first,std::get<1>(r->r).second));
  });
}

int jpk_expansion_create( const jpk_params* p, const double* re, const double* im, size_t n_coeffs,
                          jpk_expansion** out )
{
  return call([&] {
    need(p,out);
    store(jpk::Expansion(p->p,span(re,n_coeffs),im ? span(im,n_coeffs) : std::vector<double>{}),out);
  });
}

int jpk_expansion_from_json( const char* text, jpk_expansion** out )
{
  return call([&] {
    need(text,out);
    store(jpk::expansion_from_json(text),out);
  });
}

int jpk_expansion_to_json( const jpk_expansion* e, char** out )
{
  return call([&] {
    need(e,out);
    *out = dup(jpk::expansion_to_json(e->e));
  });
}

int jpk_expansion_analyze( const jpk_params* p, const double* theta, const double* f, size_t n, int n_max,
                           jpk_expansion** out )
{
  return call([&] {
    need(p,out);
    store(jpk::analyze(p->p,jpk::piecewise_linear(span(theta,n),span(f,n)),n_max),out);
  });
}

void jpk_expansion_destroy( jpk_expansion* e ) { delete e; }

int jpk_expansion_size( const jpk_expansion* e, int* n_max, int* is_complex )
{
  return call([&] {
    need(e);
    if ( n_max )
      *n_max = e->e.n_max();
    if ( is_complex )
      *is_complex = e->e.is_complex() ? 1 : 0;
  });
}

int jpk_expansion_coeffs( const jpk_expansion* e, double* re, double* im )
{
  return call([&] {
    need(e,re);
    for ( int n = 0; n <= e->e.n_max(); ++n ) {
      const auto c = e->e.coeff(n);
      re[n] = c.real();
      if ( im )
        im[n] = c.imag();
    }
  });
}

int jpk_synthesize( const jpk_expansion* e, double theta, int order, double* re, double* im )
{
  return call([&] {
    need(e,re);
    const auto v = jpk::synthesize(e->e,theta,order);
    *re = v.real();
    if ( im )
      *im = v.imag();
  });
}

int jpk_semigroup_apply( const jpk_expansion* e, double t, jpk_expansion** out )
{
  return call([&] {
    need(e,out);
    store(jpk::semigroup_apply(e->e,t),out);
  });
}

int jpk_riesz_eval( const jpk_expansion* e, int N, const double* theta, size_t n, double* re, double* im )
{
  return call([&] {
    need(e,re);
    const auto th = span(theta,n);
    const auto r = jpk::riesz_apply(e->e,N);
    for ( std::size_t i = 0; i < n; ++i ) {
      const auto v = r(th[i]);
      re[i] = v.real();
      if ( im )
        im[i] = v.imag();
    }
  });
}

int jpk_g_function( const jpk_expansion* e, int M, int N, const double* theta, size_t n, double* out )
{
  return call([&] {
    need(e,out);
    const auto g = jpk::g_function(e->e,M,N,span(theta,n));
    std::copy(g.begin(),g.end(),out);
  });
}

namespace {

  void apply_spec( const jpk_expansion* e, const jpk::MultiplierSpec& s, jpk_expansion** out, int* dropped )
  {
    need(e,out);
    auto r = jpk::multiplier_apply(e->e,s);
    if ( dropped )
      *dropped = r.dropped_zero_mode ? 1 : 0;
    store(std::move(r.expansion),out);
  }

}

int jpk_multiplier_laplace_const( const jpk_expansion* e, double c_re, double c_im, jpk_expansion** out,
                                  int* dropped_zero_mode )
{
  return call([&] {
    const auto s = jpk::MultiplierSpec::laplace(jpk::LaplaceProfile::make_constant({c_re,c_im}));
    apply_spec(e,s,out,dropped_zero_mode);
  });
}

int jpk_multiplier_imaginary_power( const jpk_expansion* e, double gamma, jpk_expansion** out,
                                    int* dropped_zero_mode )
{
  return call([&] {
    const auto s = jpk::MultiplierSpec::laplace(jpk::LaplaceProfile::imaginary_power(gamma));
    apply_spec(e,s,out,dropped_zero_mode);
  });
}

int jpk_multiplier_stieltjes( const jpk_expansion* e, const double* t, const double* w, size_t n,
                              jpk_expansion** out )
{
  return call([&] {
    const auto ts = span(t,n), ws = span(w,n);
    std::vector<jpk::StieltjesAtom> atoms;
    for ( std::size_t i = 0; i < n; ++i )
      atoms.push_back({ts[i],ws[i]});
    apply_spec(e,jpk::MultiplierSpec::stieltjes(std::move(atoms)),out,nullptr);
  });
}

}
