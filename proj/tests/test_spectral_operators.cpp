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
#include "jpk/errors.hpp"
#include "jpk/spectral_operators.hpp"
#include "test_support.hpp"
#include <cmath>
#include <numbers>

using namespace jpk;
using std::numbers::pi;
using testsupport::rel_diff;

TEST_CASE("analysis of simple functions")
{
  const JacobiParams p(0.5,-0.75);
  const Expansion e = analyze(p,[&]( double t ) { return trig_poly_values(p,3,t)[3]; },6);
  for ( int n = 0; n <= 6; ++n )
    CHECK(std::fabs(e.re()[n] - (n == 3 ? 1.0 : 0.0)) <= 1e-12);

  const Expansion one = analyze(p,[]( double ) { return 1.0; },4);
  CHECK(rel_diff(one.re()[0],std::sqrt(p.mu_total())) <= 1e-12);
  CHECK(std::fabs(one.re()[2]) <= 1e-12);
  CHECK(rel_diff(one.l2_norm(),std::sqrt(p.mu_total())) <= 1e-12);

  const JacobiParams cheb(-0.5,-0.5);
  const Expansion c2 = analyze(cheb,[]( double t ) { return std::cos(2*t); },4);
  CHECK(rel_diff(std::fabs(c2.re()[2]),std::sqrt(pi/2)) <= 1e-12);
  CHECK(std::fabs(c2.re()[1]) <= 1e-13);

  // synthesis inverts analysis on polynomials
  const Expansion g(p,{0.2,-0.4,1.1});
  const Expansion back = analyze(p,[&]( double t ) { return synthesize(g,t).real(); },2);
  for ( int n = 0; n <= 2; ++n )
    CHECK(std::fabs(back.re()[n] - g.re()[n]) <= 1e-12);

  const auto lin = piecewise_linear({0.0,1.0,pi},{0.0,2.0,2.0});
  CHECK(lin(0.5) == doctest::Approx(1.0));
  CHECK(lin(3.0) == 2.0);
  CHECK_THROWS_AS(piecewise_linear({1.0,0.5},{0.0,1.0}),InvalidArgument);
  CHECK_THROWS_AS(analyze(p,[]( double ) { return std::nan(""); },2),DomainError);
}

TEST_CASE("expansion validation")
{
  const JacobiParams p(0.0,0.0);
  CHECK_THROWS_AS(Expansion(p,{}),InvalidArgument);
  CHECK_THROWS_AS(Expansion(p,{1.0,2.0},{1.0}),InvalidArgument);
  CHECK_THROWS_AS(Expansion::unit(p,3,4),IndexError);
  const Expansion e(p,{1.0,2.0},{0.0,-1.0});
  CHECK(e.is_complex());
  CHECK(e.coeff(1) == std::complex<double>(2.0,-1.0));
  CHECK_THROWS_AS(e.coeff(2),IndexError);
}

TEST_CASE("semigroup")
{
  const JacobiParams p(2.0,-0.25);
  const Expansion e(p,{0.3,-0.2,0.5,0.1},{0.0,0.4,0.0,-0.1});
  const Expansion a = semigroup_apply(semigroup_apply(e,0.3),0.7);
  const Expansion b = semigroup_apply(e,1.0);
  for ( int n = 0; n <= 3; ++n )
    CHECK(std::abs(a.coeff(n) - b.coeff(n)) <= 1e-15);
  CHECK(semigroup_apply(e,0.0).coeff(2) == e.coeff(2));
  CHECK_THROWS_AS(semigroup_apply(e,-1.0),DomainError);

  const JacobiParams cheb(-0.5,-0.5);
  const Expansion c(cheb,{0.3,-0.2,0.5,0.1},{0.0,0.4,0.0,-0.1});
  for ( double t : {0.005,0.3,2.0} ) {
    const auto want = synthesize(semigroup_apply(c,t),1.1);
    CHECK(std::abs(kernel_route_semigroup(c,t,1.1) - want) <= 1e-9*std::abs(want));
  }
}

TEST_CASE("Riesz transforms")
{
  const JacobiParams cheb(-0.5,-0.5);
  CHECK(riesz_apply(Expansion::unit(cheb,3,0),1)(1.0) == 0.0);
  const RieszFunction r = riesz_apply(Expansion::unit(cheb,3,1),1);
  for ( double t : {0.2,1.0,2.5} )
    CHECK(std::fabs(r(t).real() + std::sqrt(2/pi)*std::sin(t)) <= 1e-14);
  // order two: -cos(n theta) up to normalisation
  const RieszFunction r2 = riesz_apply(Expansion::unit(cheb,3,2),2);
  CHECK(std::fabs(r2(0.7).real() + std::sqrt(2/pi)*std::cos(1.4)) <= 1e-14);
  CHECK_THROWS_AS(riesz_apply(Expansion::unit(cheb,3,2),3),InvalidArgument);

  std::vector<Expansion> es;
  for ( int n = 1; n <= 3; ++n )
    es.push_back(Expansion::unit(cheb,3,n));
  const auto k = kernel_route_riesz(es,{1,2},0.9);
  for ( int N = 1; N <= 2; ++N )
    for ( int n = 0; n < 3; ++n ) {
      const auto s = riesz_apply(es[n],N)(0.9);
      CHECK(std::abs(k[N-1][n] - s) <= 1e-7*std::abs(s));
    }
}

TEST_CASE("Riesz kernel route away from Chebyshev")
{
  const JacobiParams p(2.0,-0.25);
  const Expansion e(p,{0.0,0.4,-0.3,0.2});
  for ( int N = 1; N <= 2; ++N ) {
    const auto s = riesz_apply(e,N)(1.7);
    CHECK(std::abs(kernel_route_riesz(e,N,1.7) - s) <= 1e-7*std::abs(s));
  }
}

TEST_CASE("g-functions")
{
  for ( auto [a,b] : testsupport::acceptance_params() ) {
    const JacobiParams p(a,b);
    std::vector<double> th;
    for ( int i = 0; i < 7; ++i )
      th.push_back(0.1 + i*0.45);
    for ( int n = 0; n <= 3; ++n ) {
      const auto g = g_function(Expansion::unit(p,3,n),1,0,th);
      const auto P = [&]( double t ) { return trig_poly_values(p,3,t)[n]; };
      for ( std::size_t i = 0; i < th.size(); ++i )
        CHECK(std::fabs(g[i] - 0.5*std::fabs(P(th[i]))) <= 1e-12);
    }
  }

  // cross term of e_1 + e_2 against a log-trapezoid in t
  const JacobiParams p(0.5,-0.75);
  const Expansion e(p,{0.0,1.0,1.0});
  const double th = 1.3;
  const auto D = trig_poly_values(p,2,th,1);
  const double a1 = 1 + 0.5*p.lambda(), a2 = 2 + 0.5*p.lambda();
  double s = 0.0;
  const double x0 = std::log(1e-9), x1 = std::log(80.0);
  const int n = 200000;
  const double h = (x1-x0)/n;
  for ( int i = 0; i <= n; ++i ) {
    const double t = std::exp(x0 + i*h);
    const double v = D[1]*std::exp(-t*a1) + D[2]*std::exp(-t*a2);
    s += (i == 0 || i == n ? 0.5 : 1.0)*h*v*v*t*t;
  }
  CHECK(rel_diff(g_function(e,0,1,{th})[0],std::sqrt(s)) <= 1e-8);
  CHECK_THROWS_AS(g_function(e,0,0,{th}),InvalidArgument);
  CHECK_THROWS_AS(g_function(e,2,1,{th}),InvalidArgument);

  const JacobiParams cheb(-0.5,-0.5);
  const Expansion c(cheb,{0.3,-0.2,0.5,0.1},{0.0,0.4,0.0,-0.1});
  for ( auto [M,N] : {std::pair{1,0},{0,1},{1,1},{0,2},{2,0}} ) {
    const double want = g_function(c,M,N,{1.1})[0];
    CHECK(rel_diff(kernel_route_g(c,M,N,1.1),want) <= 1e-8);
  }
}

TEST_CASE("multiplier identities")
{
  for ( auto [a,b] : testsupport::acceptance_params() ) {
    const JacobiParams p(a,b);
    const Expansion e(p,{0.3,-0.2,0.5,0.1,0.7});
    const auto id = multiplier_apply(e,MultiplierSpec::laplace(LaplaceProfile::make_constant(1.0)));
    CHECK(id.dropped_zero_mode == (p.lambda() == 0.0));
    for ( int n = 0; n <= 4; ++n ) {
      const double want = (n == 0 && id.dropped_zero_mode) ? 0.0 : e.re()[n];
      CHECK(std::abs(id.expansion.coeff(n) - want) <= 1e-10);
    }

    const Expansion st = multiplier_apply(e,MultiplierSpec::stieltjes({{0.8,1.0}})).expansion;
    const Expansion sg = semigroup_apply(e,0.8);
    CHECK_FALSE(st.is_complex());
    CHECK(st.re() == sg.re());

    const Expansion ip = multiplier_apply(e,MultiplierSpec::laplace(LaplaceProfile::imaginary_power(1.0))).expansion;
    const double norm = p.lambda() == 0.0 ? std::sqrt(e.l2_norm()*e.l2_norm() - 0.09) : e.l2_norm();
    CHECK(std::fabs(ip.l2_norm() - norm) <= 1e-12);
  }

  // z^(i gamma) for the imaginary-power profile
  const auto m = multiplier_value(MultiplierSpec::laplace(LaplaceProfile::imaginary_power(0.5)),3.0);
  CHECK(std::abs(m - std::exp(std::complex<double>(0.0,0.5*std::log(3.0)))) <= 1e-12);
  CHECK(multiplier_value(MultiplierSpec::laplace(LaplaceProfile::make_constant(2.0)),0.0) == 0.0);
  CHECK_THROWS_AS(multiplier_value(MultiplierSpec::stieltjes({}),1.0),InvalidArgument);
}

TEST_CASE("multiplier kernel route")
{
  const JacobiParams cheb(-0.5,-0.5);
  const Expansion c(cheb,{0.3,-0.2,0.5,0.1},{0.0,0.4,0.0,-0.1});
  const std::vector<MultiplierSpec> specs{
    MultiplierSpec::laplace(LaplaceProfile::imaginary_power(1.0)),
    MultiplierSpec::laplace(LaplaceProfile::make_constant({0.5,0.2})),
    MultiplierSpec::laplace(LaplaceProfile::make_custom([]( double t ) { return std::complex<double>(std::cos(t),0.0); },1.0)),
    MultiplierSpec::stieltjes({{0.25,1.0},{1.0,-0.5},{0.01,0.3}})};
  for ( const auto& sp : specs ) {
    const auto want = synthesize(multiplier_apply(c,sp).expansion,1.1);
    CHECK(std::abs(kernel_route_multiplier(c,sp,1.1) - want) <= 1e-8*std::abs(want));
  }
}

TEST_CASE("json round trip")
{
  const JacobiParams p(0.5,-0.75);
  const Expansion e(p,{0.1,1.0/3.0,-2.5},{0.0,1e-17,4.0});
  const Expansion b = expansion_from_json(expansion_to_json(e));
  CHECK(b.params() == p);
  CHECK(b.re() == e.re());
  CHECK(b.im() == e.im());
  CHECK_FALSE(expansion_from_json(expansion_to_json(Expansion(p,{1.0}))).is_complex());

  CHECK_THROWS_AS(expansion_from_json("{not json"),ParseError);
  CHECK_THROWS_AS(expansion_from_json(R"({"alpha":0.5,"beta":0,"coeffs":[1]})"),ParseError);
  CHECK_THROWS_AS(expansion_from_json(R"({"alpha":0.5,"beta":0,"n_max":2,"coeffs":[1]})"),InvalidArgument);
  CHECK_THROWS_AS(expansion_from_json(R"({"alpha":-1,"beta":0,"n_max":0,"coeffs":[1]})"),InvalidArgument);
  CHECK_THROWS_AS(expansion_from_json(R"({"alpha":0,"beta":0,"n_max":0,"coeffs":["x"]})"),ParseError);
}
