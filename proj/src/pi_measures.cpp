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

#include "jpk/pi_measures.hpp"
#include "jpk/errors.hpp"
#include "jpk/quadrature.hpp"
#include "jpk/special.hpp"
#include <cmath>
#include <numbers>

namespace jpk {

  namespace {

    void require_alpha( double alpha )
    {
      if ( !(alpha > -1.0) || !std::isfinite(alpha) )
        throw InvalidArgument("alpha must exceed -1");
    }

    // Pi_alpha(u) for u in (0,1), given s = 1-u^2 computed by the caller.
    // Above u^2 = 1/2 the integral is taken from the top:
    //   int_u^1 (1-w^2)^(a-1/2) dw = (1/2) B_s(a+1/2, 1/2),
    // continued analytically in a when a < -1/2.
    double pi_cdf_positive( double alpha, double u, double s )
    {
      const double C = pi_prefactor(alpha);
      if ( u*u <= 0.5 )
        return C*u*special::hyp2f1_series(0.5,0.5-alpha,1.5,u*u);
      const double b = alpha + 0.5;
      return 0.5 - (C/(2.0*b)) * std::pow(s,b) * special::hyp2f1_series(b,0.5,b+1.0,s);
    }

    // |Pi_alpha(u)| for alpha < -1/2 and u in (0,1), with c = 1-u.
    double profile_value( double alpha, double u, double c )
    {
      return std::fabs(pi_cdf_positive(alpha,u,c*(1.0+u)));
    }

    void push( FoldedRule& r, double u, double c, double w )
    {
      r.u.push_back(u);
      r.c.push_back(c);
      r.w.push_back(w);
    }

    void check_breaks( const std::vector<double>& breaks )
    {
      if ( breaks.size() < 2 || breaks.front() != 0.0 || breaks.back() != 1.0 )
        throw InvalidArgument("panel breakpoints must run from 0 to 1");
      for ( std::size_t i = 1; i < breaks.size(); ++i )
        if ( !(breaks[i] > breaks[i-1]) )
          throw InvalidArgument("panel breakpoints must increase");
    }

    // Gauss-Jacobi nodes for int_lo^1 g(u) (1-u)^e du; returns weights already
    // scaled by ((1-lo)/2)^(e+1), with c = 1-u exact.
    template<class Fn>
    void endpoint_panel( double lo, double e, int n, Fn&& add )
    {
      const GaussRule& gj = cached_gauss_jacobi(n,e,0.0);
      const double half = 0.5*(1.0-lo);
      const double scale = std::pow(half,e+1.0);
      for ( std::size_t i = 0; i < gj.size(); ++i ) {
        const double c = half*(1.0-gj.x[i]);
        add(1.0-c, c, gj.w[i]*scale);
      }
    }

  }

  double pi_prefactor( double alpha )
  {
    require_alpha(alpha);
    if ( alpha == -0.5 )
      throw DomainError("Pi_alpha has a pole at alpha = -1/2");
    const double sgn = (alpha < -0.5) ? -1.0 : 1.0;
    return sgn*std::exp(special::log_gamma(alpha+1.0) - 0.5*std::log(std::numbers::pi)
                        - special::log_gamma(alpha+0.5));
  }

  double pi_cdf( double alpha, double u )
  {
    require_alpha(alpha);
    if ( alpha == -0.5 )
      throw DomainError("Pi_alpha has a pole at alpha = -1/2");
    if ( !(std::fabs(u) < 1.0) )
      throw DomainError("pi_cdf: u must lie in (-1,1)");
    if ( u == 0.0 )
      return 0.0;
    const double au = std::fabs(u);
    const double v = pi_cdf_positive(alpha,au,(1.0-au)*(1.0+au));
    return u < 0.0 ? -v : v;
  }

  double pi_density( double alpha, double u )
  {
    const double C = pi_prefactor(alpha);
    return C*std::pow((1.0-u)*(1.0+u),alpha-0.5);
  }

  std::vector<double> graded_breakpoints( double width )
  {
    std::vector<double> b{0.0, 0.5};
    double gap = 0.5;
    while ( gap > 0.5*width && gap > 1e-14 ) {
      gap *= 0.25;
      b.push_back(1.0-gap);
    }
    b.push_back(1.0);
    return b;
  }

  FoldedRule folded_measure_rule( double alpha, PiKind kind, const std::vector<double>& breaks,
                                  int nodes_per_panel )
  {
    require_alpha(alpha);
    FoldedRule r;
    if ( kind == PiKind::Atomic ) {
      if ( alpha != -0.5 )
        throw InvalidArgument("atomic measure requires alpha = -1/2");
      push(r,1.0,0.0,0.5);
      return r;
    }
    if ( kind == PiKind::Density && !(alpha > -0.5) )
      throw InvalidArgument("density measure requires alpha > -1/2");
    if ( kind == PiKind::Profile && !(alpha < -0.5) )
      throw DomainError("profile measure requires alpha < -1/2");
    check_breaks(breaks);
    if ( nodes_per_panel < 1 )
      throw InvalidArgument("nodes_per_panel must be positive");

    const std::size_t last = breaks.size()-2;
    if ( kind == PiKind::Profile && breaks[last] < 0.5 )
      throw InvalidArgument("profile rule needs the last panel to start at or beyond 1/2");

    const double C = pi_prefactor(alpha);
    const double a = alpha - 0.5;
    for ( std::size_t k = 0; k < last; ++k ) {
      const GaussRule g = mapped_legendre(nodes_per_panel,breaks[k],breaks[k+1]);
      for ( std::size_t i = 0; i < g.size(); ++i ) {
        const double u = g.x[i], c = 1.0-u;
        const double wt = (kind == PiKind::Density) ? C*std::pow(c*(1.0+u),a)
                                                    : profile_value(alpha,u,c);
        push(r,u,c,g.w[i]*wt);
      }
    }

    const double lo = breaks[last];
    if ( kind == PiKind::Density ) {
      endpoint_panel(lo,a,nodes_per_panel,[&](double u, double c, double w) {
        push(r,u,c,w*C*std::pow(1.0+u,a));
      });
    } else {
      // |Pi_alpha(u)| = K s^b F(b,1/2;b+1;s) - 1/2 with s = (1-u)(1+u), K = C/(2b) > 0.
      const double b = alpha + 0.5;
      const double K = C/(2.0*b);
      endpoint_panel(lo,b,nodes_per_panel,[&](double u, double c, double w) {
        const double s = c*(1.0+u);
        push(r,u,c,w*K*std::pow(1.0+u,b)*special::hyp2f1_series(b,0.5,b+1.0,s));
      });
      const GaussRule g = mapped_legendre(nodes_per_panel,lo,1.0);
      for ( std::size_t i = 0; i < g.size(); ++i )
        push(r,g.x[i],1.0-g.x[i],-0.5*g.w[i]);
    }
    return r;
  }

  FoldedRule vanishing_rule( double alpha, const std::vector<double>& breaks, int nodes_per_panel )
  {
    require_alpha(alpha);
    FoldedRule r;
    if ( alpha == -0.5 )
      return r;
    check_breaks(breaks);
    const double C = pi_prefactor(alpha);
    const double a = alpha - 0.5;
    const std::size_t last = breaks.size()-2;
    for ( std::size_t k = 0; k < last; ++k ) {
      const GaussRule g = mapped_legendre(nodes_per_panel,breaks[k],breaks[k+1]);
      for ( std::size_t i = 0; i < g.size(); ++i ) {
        const double u = g.x[i], c = 1.0-u;
        push(r,u,c,g.w[i]*C*std::pow(c*(1.0+u),a));
      }
    }
    // g(u) (1-u)^a = [g(u)/(1-u)] (1-u)^(a+1)
    endpoint_panel(breaks[last],a+1.0,nodes_per_panel,[&](double u, double c, double w) {
      push(r,u,c,w*C*std::pow(1.0+u,a)/c);
    });
    return r;
  }

  PiMeasure::PiMeasure( double alpha, int n_nodes )
    : m_alpha(alpha)
  {
    require_alpha(alpha);
    if ( n_nodes < 1 )
      throw InvalidArgument("PiMeasure: node count must be positive");
    if ( alpha == -0.5 ) {
      m_kind = PiKind::Atomic;
      m_nodes = {-1.0, 1.0};
      m_weights = {0.5, 0.5};
    } else if ( alpha > -0.5 ) {
      m_kind = PiKind::Density;
      const double C = pi_prefactor(alpha);
      const GaussRule& gj = cached_gauss_jacobi(n_nodes,alpha-0.5,alpha-0.5);
      m_nodes = gj.x;
      m_weights.resize(gj.size());
      for ( std::size_t i = 0; i < gj.size(); ++i )
        m_weights[i] = C*gj.w[i];
    } else {
      m_kind = PiKind::Profile;
      const FoldedRule f = folded_measure_rule(alpha,PiKind::Profile,{0.0,0.5,1.0},n_nodes);
      for ( std::size_t i = 0; i < f.size(); ++i ) {
        m_nodes.push_back(-f.u[i]);
        m_weights.push_back(f.w[i]);
        m_nodes.push_back(f.u[i]);
        m_weights.push_back(f.w[i]);
      }
    }
  }

  double pi_integrate( const PiMeasure& m, const std::function<double(double)>& f )
  {
    if ( m.kind() == PiKind::Profile )
      throw InvalidArgument("pi_integrate: profile measures are integrated with pi_profile_integrate");
    double s = 0.0;
    for ( std::size_t i = 0; i < m.nodes().size(); ++i )
      s += m.weights()[i]*f(m.nodes()[i]);
    return s;
  }

  double pi_profile_integrate( double alpha, const std::function<double(double)>& f )
  {
    require_alpha(alpha);
    if ( !(alpha < -0.5) )
      throw DomainError("pi_profile_integrate: alpha must lie in (-1,-1/2)");
    auto eval = [&]( int n ) {
      const FoldedRule r = folded_measure_rule(alpha,PiKind::Profile,{0.0,0.5,1.0},n);
      double s = 0.0;
      for ( std::size_t i = 0; i < r.size(); ++i )
        s += r.w[i]*(f(r.u[i]) + f(-r.u[i]));
      return s;
    };
    double prev = eval(64);
    for ( int n = 128; n <= 1024; n *= 2 ) {
      const double cur = eval(n);
      if ( std::fabs(cur-prev) <= 1e-10*std::max(std::fabs(cur),1e-300) || cur == prev )
        return cur;
      prev = cur;
    }
    throw ConvergenceError("pi_profile_integrate: no agreement to 1e-10 up to 1024 nodes per panel");
  }

}
