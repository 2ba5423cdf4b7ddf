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

// Acceptance run: one PASS/FAIL line per criterion, indented details below.
// Exit status is the number of failed criteria.

#include "jpk/compare.hpp"
#include "jpk/cz_kernels.hpp"
#include "jpk/errors.hpp"
#include "jpk/poisson_kernel.hpp"
#include "jpk/sharp_bounds.hpp"
#include "jpk/spectral_operators.hpp"
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace jpk;
using std::numbers::pi;

namespace {

  const std::vector<std::pair<double,double>> kParams{
    {0.5,0.5}, {-0.75,0.5}, {0.5,-0.75}, {-0.75,-0.75}, {0.0,0.0}, {2.0,-0.25}};

  struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void note( const char* fmt, auto... args )
    {
      char buf[512];
      std::snprintf(buf,sizeof buf,fmt,args...);
      details.emplace_back(buf);
    }
  };

  double rel( double a, double b )
  {
    const double s = std::max(std::fabs(a),std::fabs(b));
    return s == 0.0 ? 0.0 : std::fabs(a-b)/s;
  }

  int failures = 0;

  void run( int id, const char* title, const std::function<Outcome()>& body )
  {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch ( const std::exception& e ) {
      o.pass = false;
      o.note("exception: %s",e.what());
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now()-t0).count();
    std::printf("%s  criterion %2d  %s  (%.1f s)\n",o.pass ? "PASS" : "FAIL",id,title,sec);
    for ( const auto& d : o.details )
      std::printf("      %s\n",d.c_str());
    std::fflush(stdout);
    if ( !o.pass )
      ++failures;
  }

  // ---------------------------------------------------------------------------

  Outcome cross_method()
  {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> ang{0.01,pi/4,pi/2,3*pi/4,pi-0.01};
    for ( auto [a,b] : kParams ) {
      const CompareReport r = compare_methods(JacobiParams(a,b),{0.1,0.5,1.0},ang,ang);
      double far = 0.0, near = 0.0;
      for ( const auto& row : r.rows )
        (row.tol > 1e-6 ? near : far) = std::max(row.tol > 1e-6 ? near : far,row.max_rel_diff);
      o.note("(%g,%g): max rel diff %.2e (bound 1e-6), near-diagonal t=0.1 %.2e (bound 1e-4), %d method failures",
             a,b,far,near,r.failures);
      o.pass = o.pass && r.pass;
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now()-t0).count();
    o.note("runtime %.1f s (limit 120 s)",sec);
    o.pass = o.pass && sec <= 120.0;
    return o;
  }

  Outcome closed_form()
  {
    Outcome o;
    const JacobiParams cheb(-0.5,-0.5);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ang(0.0,pi), logt(std::log(0.1),std::log(20.0));
    double worst = 0.0;
    for ( int i = 0; i < 100; ++i ) {
      const double th = ang(rng), ph = ang(rng), t = std::exp(logt(rng));
      worst = std::max(worst,rel(kernel_eval(cheb,{t,th,ph}),closed_form_chebyshev(t,th,ph)));
    }
    o.note("100 random (t,theta,phi), t log-uniform in [0.1,20]: max rel error %.2e (bound 1e-10)",worst);
    o.pass = worst <= 1e-10;
    return o;
  }

  Outcome mass()
  {
    Outcome o;
    double worst = 0.0;
    for ( auto [a,b] : kParams ) {
      const JacobiParams p(a,b);
      const auto rule = theta_quad_rule(p,300);
      for ( double t : {0.5,1.0,5.0} )
        for ( double th : {0.4,2.0} ) {
          double m = 0.0;
          for ( std::size_t i = 0; i < rule.size(); ++i )
            m += rule.weights[i]*kernel_eval(p,{t,th,rule.nodes[i]});
          worst = std::max(worst,std::fabs(m - std::exp(-0.5*t*std::fabs(p.lambda()))));
        }
    }
    o.note("all parameter sets, t in {0.5,1,5}, theta in {0.4,2}: max abs error %.2e (bound 1e-8)",worst);
    o.pass = worst <= 1e-8;
    return o;
  }

  Outcome semigroup()
  {
    Outcome o;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ang(0.05,pi-0.05);
    double worst = 0.0;
    for ( auto [a,b] : kParams ) {
      const JacobiParams p(a,b);
      const auto rule = theta_quad_rule(p,400);
      for ( auto [s,t] : {std::pair{0.3,0.7},std::pair{1.0,1.0}} )
        for ( int k = 0; k < 10; ++k ) {
          const double x = ang(rng), y = ang(rng);
          double acc = 0.0;
          for ( std::size_t i = 0; i < rule.size(); ++i )
            acc += rule.weights[i]*kernel_eval(p,{s,x,rule.nodes[i]})*kernel_eval(p,{t,rule.nodes[i],y});
          worst = std::max(worst,rel(acc,kernel_eval(p,{s+t,x,y})));
        }
    }
    o.note("all parameter sets, (s,t) in {(0.3,0.7),(1,1)}, 10 random pairs each: max rel error %.2e (bound 1e-6)",
           worst);
    o.pass = worst <= 1e-6;
    return o;
  }

  Outcome orthonormality()
  {
    Outcome o;
    double worst = 0.0;
    for ( auto [a,b] : kParams ) {
      const JacobiParams p(a,b);
      const auto r = theta_quad_rule(p,64);
      std::vector<std::vector<double>> v;
      for ( double th : r.nodes )
        v.push_back(trig_poly_values(p,30,th));
      for ( int n = 0; n <= 30; ++n )
        for ( int m = 0; m <= n; ++m ) {
          double g = 0.0;
          for ( std::size_t i = 0; i < r.size(); ++i )
            g += r.weights[i]*v[i][n]*v[i][m];
          worst = std::max(worst,std::fabs(g - (n == m ? 1.0 : 0.0)));
        }
    }
    o.note("n,m <= 30, 64-node rule: max Gram deviation %.2e (bound 1e-9)",worst);
    o.pass = worst <= 1e-9;
    return o;
  }

  Outcome sharp()
  {
    Outcome o;
    for ( auto [a,b] : kParams ) {
      const JacobiParams p(a,b);
      const EstimateReport r = ratio_scan(p,default_sharp_t_grid(),default_sharp_angle_grid(),
                                          default_sharp_angle_grid(),KernelKind::H,50.0);
      o.note("(%g,%g): ratio in [%.4g, %.4g], max/min %.3g (cap 50)",a,b,r.summary.min,r.summary.max,r.spread());
      o.pass = o.pass && r.summary.pass;
      for ( auto [th,ph] : {std::pair{1.0,2.0},std::pair{0.3,2.8}} ) {
        const LongTimeFit f = long_time_fit(p,th,ph);
        o.note("(%g,%g) long time at (%g,%g): decay rate %.4g, required %.4g within 20%%",a,b,th,ph,-f.slope,
               f.required_rate);
        o.pass = o.pass && f.pass;
      }
    }
    return o;
  }

  Outcome standard()
  {
    Outcome o;
    const auto kernels = standard_kernel_set();
    const auto grid = off_diagonal_grid(15);
    const auto triples = random_triples(100,4242);
    for ( auto [a,b] : kParams ) {
      const JacobiParams p(a,b);
      auto reps = standard_estimates(p,kernels,grid,1e3);
      const auto sm = smoothness_estimates(p,kernels,triples,1e3);
      reps.insert(reps.end(),sm.begin(),sm.end());
      double worst = 0.0;
      std::string worst_name;
      std::string failed;
      for ( const auto& r : reps ) {
        if ( r.summary.max > worst || !std::isfinite(r.summary.max) ) {
          worst = r.summary.max;
          worst_name = r.name;
        }
        if ( !r.summary.pass )
          failed += " " + r.name;
      }
      o.note("(%g,%g): %zu reports, largest ratio %.4g (%s), cap 1e3%s%s",a,b,reps.size(),worst,worst_name.c_str(),
             failed.empty() ? "" : "; failing:",failed.c_str());
      o.pass = o.pass && failed.empty();
    }
    return o;
  }

  Outcome riesz()
  {
    Outcome o;
    const std::vector<double> thetas{0.3,0.9,1.5,2.2,2.9};
    for ( auto [a,b] : kParams ) {
      const JacobiParams p(a,b);
      std::vector<Expansion> es;
      for ( int n = 1; n <= 6; ++n )
        es.push_back(Expansion::unit(p,6,n));
      double worst = 0.0;
      for ( double th : thetas ) {
        const auto k = kernel_route_riesz(es,{1,2},th);
        for ( int N = 1; N <= 2; ++N )
          for ( int n = 0; n < 6; ++n ) {
            const auto s = riesz_apply(es[n],N)(th);
            worst = std::max(worst,std::abs(k[N-1][n] - s)/std::abs(s));
          }
      }
      o.note("(%g,%g): N in {1,2}, n = 1..6, 5 thetas: max rel diff %.2e (bound 1e-5)",a,b,worst);
      o.pass = o.pass && worst <= 1e-5;
    }
    return o;
  }

  Outcome gfun()
  {
    Outcome o;
    std::vector<double> th;
    for ( int i = 0; i < 20; ++i )
      th.push_back((i + 0.5)*pi/20);
    double worst = 0.0;
    bool zero_ok = true;
    for ( auto [a,b] : kParams ) {
      const JacobiParams p(a,b);
      for ( int n = 0; n <= 5; ++n ) {
        const auto g = g_function(Expansion::unit(p,5,n),1,0,th);
        for ( std::size_t i = 0; i < th.size(); ++i ) {
          const double want = (n == 0 && p.lambda() == 0.0) ? 0.0 : 0.5*std::fabs(trig_poly_values(p,5,th[i])[n]);
          worst = std::max(worst,std::fabs(g[i] - want));
          if ( n == 0 && p.lambda() == 0.0 && g[i] != 0.0 )
            zero_ok = false;
        }
      }
    }
    o.note("g_{1,0}(P_n) vs |P_n|/2, n = 0..5, 20 thetas, all sets: max abs error %.2e (bound 1e-8)",worst);
    o.note("lambda = 0, n = 0 gives exactly 0: %s",zero_ok ? "yes" : "no");
    o.pass = worst <= 1e-8 && zero_ok;
    return o;
  }

  Outcome multipliers()
  {
    Outcome o;
    double id_err = 0.0, norm_err = 0.0;
    bool exact = true, flags = true;
    for ( auto [a,b] : kParams ) {
      const JacobiParams p(a,b);
      const Expansion e(p,{0.3,-0.2,0.5,0.1,0.7,-0.05,0.4,0.0,0.25});
      const bool drop = p.lambda() == 0.0;

      const auto id = multiplier_apply(e,MultiplierSpec::laplace(LaplaceProfile::make_constant(1.0)));
      flags = flags && id.dropped_zero_mode == drop;
      for ( int n = drop ? 1 : 0; n <= e.n_max(); ++n )
        id_err = std::max(id_err,std::abs(id.expansion.coeff(n) - e.coeff(n)));

      for ( double t0 : {0.05,0.8,3.0} ) {
        const auto st = multiplier_apply(e,MultiplierSpec::stieltjes({{t0,1.0}})).expansion;
        exact = exact && st.re() == semigroup_apply(e,t0).re() && !st.is_complex();
      }

      const auto ip = multiplier_apply(e,MultiplierSpec::laplace(LaplaceProfile::imaginary_power(1.0)));
      double want = 0.0;
      for ( int n = drop ? 1 : 0; n <= e.n_max(); ++n )
        want += e.re()[n]*e.re()[n];
      norm_err = std::max(norm_err,std::fabs(ip.expansion.l2_norm() - std::sqrt(want)));
    }
    o.note("Laplace phi = 1: max coefficient error %.2e (bound 1e-10); zero-mode flag set iff lambda = 0: %s",id_err,
           flags ? "yes" : "no");
    o.note("Stieltjes delta_t0, t0 in {0.05,0.8,3}: identical to semigroup_apply: %s",exact ? "yes" : "no");
    o.note("imaginary power gamma = 1: l2 norm error %.2e (bound 1e-12; lambda = 0 sets exclude the n = 0 mode)",
           norm_err);
    o.pass = id_err <= 1e-10 && flags && exact && norm_err <= 1e-12;
    return o;
  }

}

int main()
{
  run(1,"cross-method kernel agreement",cross_method);
  run(2,"closed-form oracle (alpha = beta = -1/2)",closed_form);
  run(3,"mass identity",mass);
  run(4,"semigroup identity",semigroup);
  run(5,"orthonormality",orthonormality);
  run(6,"sharp-estimate scan and long-time fit",sharp);
  run(7,"standard-estimate scans",standard);
  run(8,"Riesz kernel/spectral agreement",riesz);
  run(9,"g-function closed form",gfun);
  run(10,"multiplier identities",multipliers);
  std::printf("%d of 10 criteria failed\n",failures);
  return failures;
}
