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

#include "doctest.h"
#include "jpk/compare.hpp"
#include "jpk/errors.hpp"
#include "jpk/poisson_kernel.hpp"
#include "test_support.hpp"
#include <cmath>
#include <numbers>
#include <random>

using namespace jpk;
using std::numbers::pi;
using testsupport::rel_diff;

TEST_CASE("q and its partial derivatives")
{
  CHECK(q_eval({0.7,0.7,1.0,1.0}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::fabs(q_eval({0.7,0.7,1.0,1.0})) <= 1e-15);
  CHECK(q_eval({0.0,pi,0.3,-0.8}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q_eval({pi/2,pi/2,0.0,0.0}) == 1.0);
  CHECK(q_eval({1.0,2.0,0.3,0.4},1,1) == 0.0);
  CHECK(q_eval({1.0,2.0,0.3,0.4},2,0) == 0.0);
  CHECK_THROWS_AS(q_eval({1.0,2.0,0.3,0.4},0,0,3,0), UnsupportedOrder);

  // partials against central differences
  const QArgs a{1.1,2.3,0.35,-0.6};
  const double h = 1e-5;
  auto q = [](double th, double ph, double u, double v) { return q_eval({th,ph,u,v}); };
  CHECK(q_eval(a,1,0) == doctest::Approx((q(a.theta,a.phi,a.u+h,a.v)-q(a.theta,a.phi,a.u-h,a.v))/(2*h)).epsilon(1e-9));
  CHECK(q_eval(a,0,0,1,0) == doctest::Approx((q(a.theta+h,a.phi,a.u,a.v)-q(a.theta-h,a.phi,a.u,a.v))/(2*h)).epsilon(1e-9));
  CHECK(q_eval(a,0,0,2,1) == doctest::Approx(
          (q_eval({a.theta,a.phi+h,a.u,a.v},0,0,2,0)-q_eval({a.theta,a.phi-h,a.u,a.v},0,0,2,0))/(2*h)).epsilon(1e-8));
  CHECK(q_eval(a,0,1,1,1) == doctest::Approx(
          (q_eval({a.theta+h,a.phi,a.u,a.v},0,1,0,1)-q_eval({a.theta-h,a.phi,a.u,a.v},0,1,0,1))/(2*h)).epsilon(1e-8));
}

TEST_CASE("Psi and its derivatives")
{
  const JacobiParams cheb(-0.5,-0.5);
  // theta = phi = pi/2, u = v = 0.7 gives q = 0.3
  const double expect = std::sinh(0.5)/(std::cosh(0.5)-0.7)/pi;
  CHECK(psi_eval(cheb,1.0,{pi/2,pi/2,0.7,0.7}) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(psi_eval(cheb,1.0,{0.0,1.3,0.2,0.5},{1,0}) == 0.0);

  const JacobiParams p(0.5,0.0);
  const QArgs a{1.0,2.0,0.3,-0.2};
  const double h = 1e-5;
  const double fd = (psi_eval(p,0.4+h,a) - psi_eval(p,0.4-h,a))/(2*h);
  CHECK(rel_diff(psi_eval(p,0.4,a,{0,0,1,0,0}),fd) <= 1e-6);

  // every order combination against a difference of the next lower order
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-0.9,0.9), T(0.3,2.8);
  for ( const auto& [al,be] : testsupport::acceptance_params() ) {
    const JacobiParams q(al,be);
    for ( int K = 0; K <= 1; ++K )
      for ( int R = 0; R <= 1; ++R )
        for ( int mt = 0; mt <= 3; ++mt )
          for ( int nt = 0; mt+nt <= 3; ++nt )
            for ( int lt = 0; mt+nt+lt <= 3; ++lt ) {
              if ( mt+nt+lt == 0 )
                continue;
              const QArgs b{T(rng),T(rng),U(rng),U(rng)};
              const double t = 0.3+0.5*T(rng);
              const double got = psi_eval(q,t,b,{K,R,mt,nt,lt});
              double fdv;
              if ( mt > 0 )
                fdv = (psi_eval(q,t+h,b,{K,R,mt-1,nt,lt}) - psi_eval(q,t-h,b,{K,R,mt-1,nt,lt}))/(2*h);
              else if ( nt > 0 )
                fdv = (psi_eval(q,t,{b.theta+h,b.phi,b.u,b.v},{K,R,0,nt-1,lt})
                       - psi_eval(q,t,{b.theta-h,b.phi,b.u,b.v},{K,R,0,nt-1,lt}))/(2*h);
              else
                fdv = (psi_eval(q,t,{b.theta,b.phi+h,b.u,b.v},{K,R,0,0,lt-1})
                       - psi_eval(q,t,{b.theta,b.phi-h,b.u,b.v},{K,R,0,0,lt-1}))/(2*h);
              CHECK(std::fabs(got-fdv) <= 1e-6*std::max(1.0,std::fabs(fdv)));
            }
    // u- and v-derivatives
    const QArgs b{1.2,0.8,0.4,0.1};
    const double du = (psi_eval(q,0.7,{b.theta,b.phi,b.u+h,b.v}) - psi_eval(q,0.7,{b.theta,b.phi,b.u-h,b.v}))/(2*h);
    const double dv = (psi_eval(q,0.7,{b.theta,b.phi,b.u,b.v+h}) - psi_eval(q,0.7,{b.theta,b.phi,b.u,b.v-h}))/(2*h);
    CHECK(rel_diff(psi_eval(q,0.7,b,{1,0}),du) <= 1e-7);
    CHECK(rel_diff(psi_eval(q,0.7,b,{0,1}),dv) <= 1e-7);
  }
  CHECK_THROWS_AS(psi_eval(p,0.4,a,{2,0}), UnsupportedOrder);
  CHECK_THROWS_AS(psi_eval(p,0.4,a,{0,0,2,1,1}), UnsupportedOrder);
}

TEST_CASE("Chebyshev closed form")
{
  CHECK(closed_form_chebyshev(60.0,1.0,2.0) == doctest::Approx(1.0/pi).epsilon(1e-15));
  for ( double t : {0.1, 1.0, 3.0} ) {
    const double r = std::exp(-t);
    CHECK(closed_form_chebyshev(t,0.0,pi) == doctest::Approx((1-r)/(1+r)/pi).epsilon(1e-13));
  }
  const JacobiParams cheb(-0.5,-0.5);
  CHECK(rel_diff(kernel_series(cheb,1.0,pi/2,pi/2),closed_form_chebyshev(1.0,pi/2,pi/2)) <= 1e-12);
  CHECK(rel_diff(kernel_eval(cheb,{0.7,2.0,2.2}),closed_form_chebyshev(0.7,2.0,2.2)) <= 1e-10);
}

TEST_CASE("series route")
{
  // int H_t(theta,.) dmu = exp(-t|lambda|/2)
  for ( const auto& [a,b] : testsupport::acceptance_params() ) {
    const JacobiParams p(a,b);
    const auto rule = theta_quad_rule(p,300);
    for ( double t : {0.5, 1.0, 5.0} ) {
      const SeriesSampler s(p,0.9,0.9,t,0,0,0);
      double m = 0.0;
      for ( std::size_t i = 0; i < rule.size(); ++i )
        m += rule.weights[i]*kernel_series(p,t,0.9,rule.nodes[i]);
      CHECK(std::fabs(m - std::exp(-0.5*t*std::fabs(p.lambda()))) <= 1e-8);
    }
  }
  // e^{t|lambda|/2} H_t -> 2^lambda c_ab = 1/mu_total
  const JacobiParams leg(0.0,0.0);
  CHECK(std::exp(40*0.5)*kernel_series(leg,40.0,0.3,2.5) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(kernel_series(leg,1e-5,0.3,0.4), ConvergenceError);
  CHECK(series_truncation(leg,1.0,{}) < series_truncation(leg,0.5,{}));
  CHECK(series_truncation(leg,1.0,{}) < series_truncation(leg,1.0,{1,1,1}));

  // derivatives against central differences in each variable
  const JacobiParams p(0.3,-0.6);
  const double h = 1e-5;
  for ( int which = 0; which < 3; ++which ) {
    DerivOrder d{which==0, which==1, which==2};
    const double t = 0.6, th = 1.1, ph = 2.0;
    const double fd = which == 0 ? (kernel_series(p,t+h,th,ph)-kernel_series(p,t-h,th,ph))/(2*h)
                    : which == 1 ? (kernel_series(p,t,th+h,ph)-kernel_series(p,t,th-h,ph))/(2*h)
                                 : (kernel_series(p,t,th,ph+h)-kernel_series(p,t,th,ph-h))/(2*h);
    CHECK(rel_diff(kernel_series(p,t,th,ph,d),fd) <= 1e-7);
  }
}

TEST_CASE("F4 route")
{
  for ( const auto& [a,b] : testsupport::acceptance_params() ) {
    const JacobiParams p(a,b);
    for ( double t : {0.3, 2.0} ) {
      const double expect = p.c_ab()*std::sinh(t/2)/std::pow(std::cosh(t/2),a+b+2);
      CHECK(rel_diff(h_script_f4(p,t,0.0,pi),expect) <= 1e-14);
    }
  }
  const JacobiParams cheb(-0.5,-0.5);
  CHECK(rel_diff(h_script_f4(cheb,1.0,pi/3,2*pi/3) + jph_correction(cheb,1.0),
                 kernel_series(cheb,1.0,pi/3,2*pi/3)) <= 1e-9);
  const JacobiParams p(-0.75,-0.8);
  const double f4 = h_script_f4(p,0.5,pi/2,pi/2);
  CHECK(f4 > 0.0);
  CHECK(rel_diff(f4,h_script_integral(p,0.5,pi/2,pi/2)) <= 1e-7);
  CHECK_THROWS_AS(h_script_f4(p,1e-3,1.0,1.0), ConvergenceError);
}

TEST_CASE("integral routes")
{
  const JacobiParams p1(0.5,0.5), p2(-0.75,0.5);
  CHECK(rel_diff(h_script_integral(p1,1.0,1.0,2.0),kernel_series(p1,1.0,1.0,2.0)) <= 1e-8);
  CHECK(rel_diff(h_script_integral(p2,1.0,1.0,2.0),kernel_series(p2,1.0,1.0,2.0)) <= 1e-7);

  const JacobiParams p4(-0.75,-0.75);
  const auto r = h_script_integral_terms(p4,0.5,pi/2,pi/2);
  CHECK(r.value > 0.0);
  CHECK(r.terms.size() == 4);
  for ( const auto& term : r.terms )
    CHECK(term.value >= 0.0);
  // case sizes: one, two, two and four double integrals
  CHECK(h_script_integral_terms(p1,0.5,1.0,2.0).terms.size() == 1);
  CHECK(h_script_integral_terms(p2,0.5,1.0,2.0).terms.size() == 2);
  CHECK(h_script_integral_terms(JacobiParams(0.5,-0.75),0.5,1.0,2.0).terms.size() == 2);

  CHECK(rel_diff(h_script_general(p1,1.0,1.0,2.0),h_script_integral(p1,1.0,1.0,2.0)) <= 1e-8);
  const JacobiParams p5(-0.9,-0.6);
  CHECK(rel_diff(h_script_general(p5,1.0,0.5,2.5),h_script_integral(p5,1.0,0.5,2.5)) <= 1e-6);
  for ( const auto& [a,b] : testsupport::acceptance_params() ) {
    const JacobiParams p(a,b);
    CHECK(rel_diff(h_script_general(p,0.8,0.0,pi),h_script_f4(p,0.8,0.0,pi)) <= 1e-12);
  }

  // derivatives under the integral sign agree with the series
  for ( const auto& [a,b] : testsupport::acceptance_params() ) {
    const JacobiParams p(a,b);
    for ( int mt = 0; mt <= 3; ++mt )
      for ( int nt = 0; mt+nt <= 3; ++nt )
        for ( int lt = 0; mt+nt+lt <= 3; ++lt ) {
          const DerivOrder d{mt,nt,lt};
          const double s = kernel_series(p,0.5,0.9,2.1,d);
          const double i = h_script_integral(p,0.5,0.9,2.1,d)
                           + (nt == 0 && lt == 0 ? jph_correction(p,0.5,mt) : 0.0);
          CHECK(std::fabs(s-i) <= 1e-8*std::max(1.0,std::fabs(s)));
        }
  }
  const auto bundle = h_script_integral_bundle(p2,0.3,1.0,1.7,{{0,0,0},{1,0,0},{0,1,1}});
  CHECK(bundle[0] == doctest::Approx(h_script_integral(p2,0.3,1.0,1.7)).epsilon(1e-12));
  CHECK(bundle[2] == doctest::Approx(h_script_integral(p2,0.3,1.0,1.7,{0,1,1})).epsilon(1e-12));
  CHECK_THROWS_AS(h_script_integral(p1,0.5,1.0,2.0,{2,1,1}), UnsupportedOrder);
}

TEST_CASE("kernel_eval dispatch and the additive correction")
{
  const JacobiParams p(0.5,-0.75);
  CHECK(jph_correction(p,1.3) == 0.0);
  CHECK(kernel_eval(p,{0.1,1.0,2.5,{},Method::F4}) == h_script_f4(p,0.1,1.0,2.5));

  const JacobiParams q(-0.75,-0.75);
  CHECK(rel_diff(kernel_series(q,2.0,1.0,1.0),
                 h_script_integral(q,2.0,1.0,1.0) + jph_correction(q,2.0)) <= 1e-7);
  // t-derivative of the correction
  const double h = 1e-5;
  CHECK(rel_diff(jph_correction(q,2.0,1),(jph_correction(q,2.0+h)-jph_correction(q,2.0-h))/(2*h)) <= 1e-8);

  CHECK(auto_method(q,{0.5,1.0,2.0}) == Method::Series);
  CHECK(auto_method(q,{0.1,0.2,2.9}) == Method::F4);
  CHECK(auto_method(q,{0.1,1.0,1.1}) == Method::Integral);
  CHECK(auto_method(q,{0.1,0.2,2.9,{1,0,0}}) == Method::Integral);

  CHECK_THROWS_AS(kernel_eval(q,{0.5,1.0,2.0,{1,0,0},Method::F4}), InvalidArgument);
  CHECK_THROWS_AS(kernel_eval(q,{-0.5,1.0,2.0}), DomainError);
  CHECK_THROWS_AS(kernel_eval(q,{0.5,1.0,4.0}), DomainError);
  CHECK_THROWS_AS(kernel_eval(q,{0.5,1.0,2.0,{2,2,0}}), UnsupportedOrder);
}

TEST_CASE("symmetry and positivity")
{
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> th(0.0,pi), tt(0.05,3.0);
  for ( const auto& [a,b] : testsupport::acceptance_params() ) {
    const JacobiParams p(a,b);
    for ( int i = 0; i < 20; ++i ) {
      const double t = tt(rng), x = th(rng), y = th(rng);
      const double h1 = kernel_eval(p,{t,x,y}), h2 = kernel_eval(p,{t,y,x});
      CHECK(rel_diff(h1,h2) <= 1e-12);
      CHECK(h1 > 0.0);
      CHECK(h_script_integral(p,t,x,y) > 0.0);
    }
  }
}

TEST_CASE("semigroup property")
{
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> th(0.05,pi-0.05);
  for ( const auto& [a,b] : testsupport::acceptance_params() ) {
    const JacobiParams p(a,b);
    const auto rule = theta_quad_rule(p,400);
    for ( auto [s,t] : {std::pair{0.3,0.7}, std::pair{1.0,1.0}} ) {
      const double x = th(rng), y = th(rng);
      const SeriesSampler sx(p,x,x,s,0,0,0);
      double acc = 0.0;
      for ( std::size_t i = 0; i < rule.size(); ++i )
        acc += rule.weights[i]*kernel_series(p,s,x,rule.nodes[i])*kernel_series(p,t,rule.nodes[i],y);
      CHECK(rel_diff(acc,kernel_series(p,s+t,x,y)) <= 1e-6);
    }
  }
}

TEST_CASE("square-root bound on the theta-derivative of q")
{
  // |d_theta q| <= C sqrt(q) on a 40^3 (theta,phi,u) grid at several v-slices
  double worst = 0.0;
  for ( double v : {-1.0, -0.3, 0.5, 1.0} )
    for ( int i = 0; i < 40; ++i )
      for ( int j = 0; j < 40; ++j )
        for ( int k = 0; k < 40; ++k ) {
          const QArgs a{(i+0.5)*pi/40,(j+0.5)*pi/40,-1.0+(k+0.5)/20.0,v};
          const double q = q_eval(a);
          worst = std::max(worst,std::fabs(q_eval(a,0,0,1,0))/std::sqrt(q));
        }
  MESSAGE("empirical constant in |d_theta q| <= C sqrt(q): " << worst);
  CHECK(worst < 2.0);
}

TEST_CASE("cross-method comparison harness")
{
  const JacobiParams p(0.5,0.5);
  const CompareReport r = compare_methods(p,{0.1,0.5},{1.0,1.02},{1.0});
  REQUIRE(r.rows.size() == 4);
  CHECK(r.rows[1].t == 0.5);
  CHECK(r.rows[2].theta == 1.02);
  CHECK(r.rows[0].tol == 1e-4);   // t = 0.1 on the diagonal
  CHECK(r.rows[1].tol == 1e-6);
  CHECK(r.pass);
  CHECK(r.failures == 0);
  CHECK(r.max_rel_diff <= 1e-8);

  // the series cannot reach t = 1e-5 and the symmetrised integral cancels
  // on the diagonal; both are reported rather than returned
  const CompareReport bad = compare_methods(p,{1e-5},{1.0},{1.0});
  CHECK(bad.failures == 1);
  CHECK_FALSE(bad.pass);
  CHECK(std::isnan(bad.rows[0].value[0]));
  CHECK(bad.rows[0].failure.rfind("series:",0) == 0);
  CHECK_THROWS_AS(kernel_eval(p,{1e-5,1.0,1.0,{},Method::General}),ConvergenceError);

  const std::string csv = compare_csv(r);
  CHECK(csv.substr(0,csv.find('\n')) == "t,theta,phi,series,f4,integral,general,max_rel_diff");
  CHECK_THROWS_AS(compare_methods(p,{},{1.0},{1.0}),InvalidArgument);
}
