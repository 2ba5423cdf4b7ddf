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
#include "json.hpp"
#include "jpk/poisson_kernel.hpp"
#include "jpk/sharp_bounds.hpp"
#include "test_support.hpp"
#include <cmath>
#include <numbers>
#include <string>

using namespace jpk;
using std::numbers::pi;
using testsupport::rel_diff;

TEST_CASE("comparator values")
{
  const JacobiParams p(0.5,0.25);
  const double a = 1.0 + pi*pi/2;
  CHECK(rel_diff(comparator(p,1.0,pi/2,pi/2,KernelKind::H),std::pow(a,-1.0)*std::pow(a,-0.75)) <= 1e-14);

  const ComparatorValue c = comparator_values(p,5.0,1.0,2.0);
  CHECK(c.z_long_H == c.z_long_script);
  CHECK(comparator(p,5.0,1.0,2.0,KernelKind::H) == doctest::Approx(std::exp(-5.0*p.lambda()/2)).epsilon(1e-15));

  const JacobiParams q(-0.75,-0.75);
  CHECK(comparator(q,10.0,1.0,2.0,KernelKind::H) == doctest::Approx(std::exp(-2.5)).epsilon(1e-15));
  CHECK(comparator(q,10.0,1.0,2.0,KernelKind::HScript) == doctest::Approx(std::exp(2.5)).epsilon(1e-15));
  const ComparatorValue cq = comparator_values(q,3.0,0.2,0.4);
  CHECK(cq.z_long_H < cq.z_long_script);
  CHECK(cq.z_short > 0.0);
}

TEST_CASE("single-point ratio scan")
{
  const JacobiParams p(0.5,-0.75);
  const auto r = ratio_scan(p,{0.5},{0.0},{pi},KernelKind::H);
  REQUIRE(r.rows.size() == 1);
  const double expect = kernel_eval(p,{0.5,0.0,pi})/comparator(p,0.5,0.0,pi,KernelKind::H);
  CHECK(rel_diff(r.rows[0].ratio,expect) <= 1e-9);
  CHECK(r.rows[0].ratio > 0.0);
  CHECK(r.summary.pass);
  CHECK(r.spread() == 1.0);
}

TEST_CASE("Chebyshev scan against the closed form")
{
  const JacobiParams cheb(-0.5,-0.5);
  const std::vector<double> ts{0.05,0.3,1.0};
  const std::vector<double> ang{0.0,pi/3,2*pi/3,pi};
  const auto r = ratio_scan(cheb,ts,ang,ang,KernelKind::H);
  REQUIRE(r.rows.size() == ts.size()*ang.size()*ang.size());
  for ( const auto& row : r.rows ) {
    const double z = comparator(cheb,row.t,row.theta,row.phi,KernelKind::H);
    CHECK(rel_diff(row.ratio,closed_form_chebyshev(row.t,row.theta,row.phi)/z) <= 1e-9);
  }
  CHECK(r.summary.pass);
  CHECK(std::isfinite(r.spread()));
  // rows run with t fastest
  CHECK(r.rows[0].t == 0.05);
  CHECK(r.rows[1].t == 0.3);
  CHECK(r.rows[3].phi == ang[1]);
}

TEST_CASE("long-time behaviour")
{
  // lambda = 0: the ratio tends to 1/mu_total = 1/pi
  const JacobiParams cheb(-0.5,-0.5);
  const auto r = ratio_scan(cheb,{5.0,10.0,20.0},{1.0},{2.0},KernelKind::H);
  CHECK(std::fabs(r.rows.back().ratio - 1.0/pi) <= 1e-8);
  CHECK(std::fabs(r.rows.back().ratio - 1.0/pi) < std::fabs(r.rows.front().ratio - 1.0/pi));

  for ( auto [a,b] : testsupport::acceptance_params() ) {
    const LongTimeFit f = long_time_fit(JacobiParams(a,b),1.0,2.0);
    CAPTURE(a);
    CAPTURE(b);
    CHECK(f.pass);
    CHECK(f.required_rate == doctest::Approx(std::min(a+b+2.0,1.0)/2));
    CHECK(f.t.size() == 16);
  }
}

TEST_CASE("report summary and serialisation")
{
  EstimateReport r;
  r.name = "demo";
  r.has_t = true;
  r.rows = {{0.1,0.0,1.0,2.0,4.0,0.5},{0.2,0.5,1.5,3.0,1.5,2.0}};
  r.notes = {{"k",1.25}};
  finalize_report(r,5.0,PassRule::Spread);
  CHECK(r.summary.min == 0.5);
  CHECK(r.summary.max == 2.0);
  CHECK(r.summary.pass);
  finalize_report(r,3.0,PassRule::Spread);
  CHECK_FALSE(r.summary.pass);
  finalize_report(r,3.0,PassRule::MaxRatio);
  CHECK(r.summary.pass);

  CHECK(report_csv(r) == "t,theta,phi,norm,bound,ratio\n0.1,0,1,2,4,0.5\n0.2,0.5,1.5,3,1.5,2\n");
  r.has_t = false;
  CHECK(report_csv(r).substr(0,26) == "theta,phi,norm,bound,ratio");

  const auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["name"] == "demo");
  CHECK(j["summary"]["max"] == 2.0);
  CHECK(j["summary"]["cap"] == 3.0);
  CHECK(j["summary"]["pass"] == true);
  CHECK(j["summary"]["rule"] == "max");
  CHECK(j["summary"]["count"] == 2);
  CHECK(j["notes"]["k"] == 1.25);
  CHECK(j["rows"].size() == 2);
  CHECK_FALSE(nlohmann::json::parse(report_json(r,false)).contains("rows"));

  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0/3.0) == "0.3333333333333333");
  CHECK(std::stod(format_double(pi)) == pi);
  CHECK(format_double(std::nan("")) == "nan");

  EstimateReport bad;
  bad.rows = {{0.1,0.0,1.0,2.0,4.0,std::nan("")}};
  finalize_report(bad,1e9,PassRule::MaxRatio);
  CHECK_FALSE(bad.summary.pass);
  CHECK(nlohmann::json::parse(report_json(bad))["rows"][0]["ratio"].is_null());

  EstimateReport empty;
  finalize_report(empty,1e9,PassRule::MaxRatio);
  CHECK_FALSE(empty.summary.pass);
}
