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

#include "jpk/sharp_bounds.hpp"
#include "jpk/errors.hpp"
#include "jpk/parallel.hpp"
#include "jpk/poisson_kernel.hpp"
#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace jpk {

  namespace {

    constexpr double pi = std::numbers::pi;
    constexpr double series_floor = 0.02;

    void require_grid( const std::vector<double>& g, const char* what )
    {
      if ( g.empty() )
        throw InvalidArgument(std::string(what) + " grid is empty");
    }

  }

  ComparatorValue comparator_values( const JacobiParams& p, double t, double theta, double phi )
  {
    if ( !(t > 0.0) )
      throw DomainError("comparator: t must be positive");
    const double t2 = t*t;
    const double a = t2 + theta*theta + phi*phi;
    const double b = t2 + (pi-theta)*(pi-theta) + (pi-phi)*(pi-phi);
    ComparatorValue z;
    z.z_short = std::pow(a,-p.alpha()-0.5)*std::pow(b,-p.beta()-0.5)
                * t/(t2 + (theta-phi)*(theta-phi));
    z.z_long_H = std::exp(-0.5*t*std::fabs(p.lambda()));
    z.z_long_script = std::exp(-0.5*t*p.lambda());
    return z;
  }

  double comparator( const JacobiParams& p, double t, double theta, double phi, KernelKind which )
  {
    const ComparatorValue z = comparator_values(p,t,theta,phi);
    if ( t <= 1.0 )
      return z.z_short;
    return which == KernelKind::H ? z.z_long_H : z.z_long_script;
  }

  double scan_kernel_value( const JacobiParams& p, double t, double theta, double phi, KernelKind which )
  {
    const double h = t >= series_floor ? kernel_series(p,t,theta,phi) : kernel_eval(p,{t,theta,phi});
    return which == KernelKind::H ? h : h - jph_correction(p,t);
  }

  EstimateReport ratio_scan( const JacobiParams& p, const std::vector<double>& t_grid,
                             const std::vector<double>& theta_grid,
                             const std::vector<double>& phi_grid, KernelKind which, double cap )
  {
    require_grid(t_grid,"t");
    require_grid(theta_grid,"theta");
    require_grid(phi_grid,"phi");
    for ( double t : t_grid )
      if ( !(t > 0.0) )
        throw DomainError("ratio_scan: t values must be positive");

    double t_series = 0.0;
    for ( double t : t_grid )
      if ( t >= series_floor )
        t_series = t_series == 0.0 ? t : std::min(t_series,t);

    EstimateReport rep;
    rep.name = which == KernelKind::H ? "sharp:H" : "sharp:Hscript";
    rep.has_t = true;
    const std::size_t nt = t_grid.size(), nph = phi_grid.size();
    rep.rows.resize(theta_grid.size()*nph*nt);
    parallel_for(theta_grid.size()*nph,[&]( std::size_t ij ) {
      const double th = theta_grid[ij/nph], ph = phi_grid[ij%nph];
      std::optional<SeriesSampler> ss;
      if ( t_series > 0.0 )
        ss.emplace(p,th,ph,t_series,0,0,0);
      for ( std::size_t k = 0; k < nt; ++k ) {
        const double t = t_grid[k];
        double h = t >= series_floor ? ss->eval(t,{}) : kernel_eval(p,{t,th,ph});
        if ( which == KernelKind::HScript )
          h -= jph_correction(p,t);
        const double z = comparator(p,t,th,ph,which);
        rep.rows[ij*nt+k] = {t,th,ph,h,z,h/z};
      }
    });
    finalize_report(rep,cap,PassRule::Spread);

    // both regimes at t = 1
    if ( std::find(t_grid.begin(),t_grid.end(),1.0) != t_grid.end() ) {
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      for ( const auto& row : rep.rows )
        if ( row.t == 1.0 ) {
          const ComparatorValue z = comparator_values(p,1.0,row.theta,row.phi);
          const double zl = which == KernelKind::H ? z.z_long_H : z.z_long_script;
          lo = std::min(lo,zl/z.z_short);
          hi = std::max(hi,zl/z.z_short);
        }
      rep.notes.push_back({"t1_long_over_short_min",lo});
      rep.notes.push_back({"t1_long_over_short_max",hi});
    }
    rep.notes.push_back({"ratio_min",rep.summary.min});
    rep.notes.push_back({"ratio_max",rep.summary.max});
    rep.notes.push_back({"spread",rep.spread()});
    return rep;
  }

  std::vector<double> default_sharp_t_grid()
  {
    std::vector<double> g(20);
    for ( int k = 0; k < 20; ++k )
      g[k] = 0.05*std::pow(20.0,k/19.0);
    g.back() = 1.0;
    return g;
  }

  std::vector<double> default_sharp_angle_grid()
  {
    std::vector<double> g(25);
    for ( int i = 0; i <= 24; ++i )
      g[i] = i*pi/24.0;
    g.back() = pi;
    return g;
  }

  LongTimeFit long_time_fit( const JacobiParams& p, double theta, double phi, double t_lo,
                             double t_hi, int n, double tolerance )
  {
    if ( n < 2 || !(t_hi > t_lo) || !(t_lo > 0.0) )
      throw InvalidArgument("long_time_fit: need n >= 2 and 0 < t_lo < t_hi");
    LongTimeFit f;
    f.theta = theta;
    f.phi = phi;
    f.tolerance = tolerance;
    f.required_rate = 0.5*std::min(p.alpha()+p.beta()+2.0,1.0);
    const double limit = 1.0/p.mu_total();  // 2^lambda c_ab
    const SeriesSampler ss(p,theta,phi,t_lo,0,0,0);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for ( int k = 0; k < n; ++k ) {
      const double t = t_lo + (t_hi-t_lo)*k/(n-1);
      const double r = std::fabs(std::exp(0.5*t*std::fabs(p.lambda()))*ss.eval(t,{}) - limit);
      f.t.push_back(t);
      f.residual.push_back(r);
      const double y = std::log(r);
      sx += t; sy += y; sxx += t*t; sxy += t*y;
    }
    f.slope = (n*sxy - sx*sy)/(n*sxx - sx*sx);
    f.intercept = (sy - f.slope*sx)/n;
    f.pass = std::isfinite(f.slope) && -f.slope >= (1.0-tolerance)*f.required_rate;
    return f;
  }

}
