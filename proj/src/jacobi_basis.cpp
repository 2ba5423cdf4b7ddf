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

#include "jpk/jacobi_basis.hpp"
#include "jpk/errors.hpp"
#include "jpk/quadrature.hpp"
#include "jpk/special.hpp"
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace jpk {

  namespace {
    constexpr double pi = std::numbers::pi;

    // sin^{(j)}(x)
    double sin_deriv( int j, double s, double c )
    {
      switch ( j % 4 ) {
      case 0: return s;
      case 1: return c;
      case 2: return -s;
      default: return -c;
      }
    }

    double binomial( int n, int k )
    {
      double r = 1.0;
      for ( int i = 1; i <= k; ++i )
        r = r * (n-k+i) / i;
      return r;
    }
  }

  JacobiParams::JacobiParams( double alpha, double beta )
    : m_alpha(alpha), m_beta(beta)
  {
    if ( !(alpha > -1.0) || !std::isfinite(alpha) )
      throw InvalidArgument("alpha must exceed -1");
    if ( !(beta > -1.0) || !std::isfinite(beta) )
      throw InvalidArgument("beta must exceed -1");
    const double lg = special::log_gamma(alpha+1.0) + special::log_gamma(beta+1.0)
                      - special::log_gamma(alpha+beta+2.0);
    m_mu_total = std::exp(lg);
    m_c_ab = std::exp(-lg - (alpha+beta+1.0)*std::log(2.0));
  }

  double classical_jacobi_eval( const JacobiParams& p, int n, double x )
  {
    if ( n < 0 )
      throw InvalidArgument("classical_jacobi_eval: negative degree");
    if ( !(std::fabs(x) <= 1.0) )
      throw DomainError("classical_jacobi_eval: |x| must not exceed 1");
    const double a = p.alpha(), b = p.beta();
    double pm1 = 1.0;
    if ( n == 0 )
      return pm1;
    double pk = 0.5*((a-b) + (a+b+2.0)*x);
    for ( int k = 2; k <= n; ++k ) {
      const double s = 2.0*k + a + b;
      const double A = 2.0*k*(k+a+b)*(s-2.0);
      const double B = (s-1.0)*(s*(s-2.0)*x + a*a - b*b);
      const double C = 2.0*(k+a-1.0)*(k+b-1.0)*s;
      const double next = (B*pk - C*pm1)/A;
      pm1 = pk;
      pk = next;
    }
    return pk;
  }

  double log_norm_constant( const JacobiParams& p, int n )
  {
    if ( n == 0 )
      return 0.5*std::log(p.mu_total());
    const double a = p.alpha(), b = p.beta(), lam = p.lambda();
    return 0.5*( special::log_gamma(n+a+1.0) + special::log_gamma(n+b+1.0)
                 - std::log(2.0*n+lam) - special::log_gamma(n+lam) - special::log_gamma(n+1.0) );
  }

  std::vector<double> trig_poly_values( const JacobiParams& p, int nmax, double theta, int order )
  {
    if ( order < 0 || order > max_trig_deriv_order )
      throw UnsupportedOrder("trig_poly_values: derivative order must be in 0..4");
    if ( order > 0 )
      return trig_poly_derivatives(p,nmax,theta,order)[order];
    if ( nmax < 0 )
      return {};
    const double a = p.alpha(), b = p.beta();
    const double x = std::cos(theta);
    std::vector<double> v(nmax+1);
    v[0] = 1.0/std::sqrt(p.mu_total());
    if ( nmax == 0 )
      return v;
    double bk = jacobi_matrix_offdiag(1,a,b);
    v[1] = (x - jacobi_matrix_diag(0,a,b))*v[0]/bk;
    for ( int k = 1; k < nmax; ++k ) {
      const double bnext = jacobi_matrix_offdiag(k+1,a,b);
      v[k+1] = ((x - jacobi_matrix_diag(k,a,b))*v[k] - bk*v[k-1])/bnext;
      bk = bnext;
    }
    return v;
  }

  std::vector<std::vector<double>> trig_poly_derivatives( const JacobiParams& p, int nmax,
                                                          double theta, int max_order )
  {
    if ( max_order < 0 || max_order > max_trig_deriv_order )
      throw UnsupportedOrder("trig_poly_derivatives: derivative order must be in 0..4");
    std::vector<std::vector<double>> d(max_order+1);
    d[0] = trig_poly_values(p,nmax,theta,0);
    if ( max_order == 0 )
      return d;
    for ( int k = 1; k <= max_order; ++k )
      d[k].assign(std::max(nmax+1,0),0.0);
    if ( nmax < 1 )
      return d;
    const auto sub = trig_poly_derivatives(p.shifted(1),nmax-1,theta,max_order-1);
    const double s = std::sin(theta), c = std::cos(theta);
    const double lam = p.lambda();
    for ( int n = 1; n <= nmax; ++n ) {
      const double f = -0.5*std::sqrt(n*(n+lam));
      for ( int k = 1; k <= max_order; ++k ) {
        double acc = 0.0;
        for ( int j = 0; j <= k-1; ++j )
          acc += binomial(k-1,j) * sin_deriv(j,s,c) * sub[k-1-j][n-1];
        d[k][n] = f*acc;
      }
    }
    return d;
  }

  OrthonormalBasis::OrthonormalBasis( const JacobiParams& p, int n_max )
    : m_params(p), m_n_max(n_max)
  {
    if ( n_max < 0 )
      throw InvalidArgument("OrthonormalBasis: n_max must be non-negative");
    m_h.resize(n_max+1);
    for ( int n = 0; n <= n_max; ++n )
      m_h[n] = std::exp(log_norm_constant(p,n));
  }

  double OrthonormalBasis::eval( int n, double theta ) const
  {
    if ( n < 0 || n > m_n_max )
      throw IndexError("trig_poly_eval: index " + std::to_string(n) + " exceeds n_max "
                       + std::to_string(m_n_max));
    return classical_jacobi_eval(m_params,n,std::cos(theta)) / m_h[n];
  }

  double OrthonormalBasis::deriv( int n, double theta, int order ) const
  {
    if ( order < 0 || order > max_trig_deriv_order )
      throw UnsupportedOrder("trig_poly_deriv: order " + std::to_string(order) + " not supported (max 4)");
    if ( n < 0 || n > m_n_max )
      throw IndexError("trig_poly_deriv: index " + std::to_string(n) + " exceeds n_max "
                       + std::to_string(m_n_max));
    if ( order == 0 )
      return eval(n,theta);
    return trig_poly_derivatives(m_params,n,theta,order)[order][n];
  }

  double mu_density( const JacobiParams& p, double theta )
  {
    return std::pow(std::sin(0.5*theta),2.0*p.alpha()+1.0)
         * std::pow(std::cos(0.5*theta),2.0*p.beta()+1.0);
  }

  double mu_total( const JacobiParams& p )
  {
    return p.mu_total();
  }

  double mu_cumulative( const JacobiParams& p, double theta )
  {
    if ( theta <= 0.0 )
      return 0.0;
    if ( theta >= pi )
      return p.mu_total();
    const double a = p.alpha()+1.0, b = p.beta()+1.0;
    if ( theta <= 0.5*pi ) {
      const double s = std::sin(0.5*theta);
      return special::inc_beta(a,b,s*s);
    }
    const double c = std::cos(0.5*theta);
    return p.mu_total() - special::inc_beta(b,a,c*c);
  }

  double ball_surrogate( const JacobiParams& p, double theta, double phi )
  {
    return std::fabs(theta-phi) * std::pow(theta+phi,2.0*p.alpha()+1.0)
         * std::pow(2.0*pi-theta-phi,2.0*p.beta()+1.0);
  }

  BallMeasure mu_ball( const JacobiParams& p, double theta, double r )
  {
    if ( !(r >= 0.0) )
      throw InvalidArgument("mu_ball: radius must be non-negative");
    BallMeasure bm;
    if ( r == 0.0 ) {
      bm.exact = 0.0;
      bm.surrogate = 0.0;
      return bm;
    }
    const double lo = std::max(0.0,theta-r), hi = std::min(pi,theta+r);
    // The difference of two cumulative values loses digits for tiny balls,
    // so small intervals are integrated directly with Gauss-Legendre.
    if ( hi - lo < 1e-3 && lo > 0.0 && hi < pi ) {
      const GaussRule g = mapped_legendre(8,lo,hi);
      double s = 0.0;
      for ( std::size_t i = 0; i < g.size(); ++i )
        s += g.w[i]*mu_density(p,g.x[i]);
      bm.exact = s;
    } else {
      bm.exact = mu_cumulative(p,hi) - mu_cumulative(p,lo);
    }
    const double phi = ( theta + r <= pi ) ? theta + r : theta - r;
    bm.surrogate = ball_surrogate(p,theta,phi);
    return bm;
  }

  ThetaQuadRule theta_quad_rule( const JacobiParams& p, int n_nodes )
  {
    if ( n_nodes < 1 )
      throw InvalidArgument("theta_quad_rule: need at least one node");
    const GaussRule& gj = cached_gauss_jacobi(n_nodes,p.alpha(),p.beta());
    const double scale = std::pow(2.0,-p.lambda());
    ThetaQuadRule r;
    r.nodes.resize(n_nodes);
    r.weights.resize(n_nodes);
    r.degree = 2*n_nodes-1;
    for ( int i = 0; i < n_nodes; ++i ) {
      // x ascending -> theta descending; reverse.
      const int j = n_nodes-1-i;
      const double x = gj.x[j];
      // acos loses relative accuracy near x=1; use the half-angle form there.
      r.nodes[i] = ( x > 0.0 ) ? 2.0*std::asin(std::sqrt(0.5*(1.0-x))) : std::acos(x);
      r.weights[i] = gj.w[j]*scale;
    }
    return r;
  }

  ThetaQuadRule graded_theta_rule( const JacobiParams& p, double center, double scale,
                                   int nodes_per_panel )
  {
    if ( !(scale > 0.0) || nodes_per_panel < 2 )
      throw InvalidArgument("graded_theta_rule: scale must be positive");
    std::vector<double> br = {0.0, pi};
    if ( center > 0.0 && center < pi )
      br.push_back(center);
    for ( double d = scale; d < 2.0*pi; d *= 3.0 ) {
      if ( center - d > 0.0 && center - d < pi ) br.push_back(center-d);
      if ( center + d > 0.0 && center + d < pi ) br.push_back(center+d);
    }
    std::sort(br.begin(),br.end());
    std::vector<double> pts;
    for ( double b : br )
      if ( pts.empty() || b - pts.back() > 1e-13 )
        pts.push_back(b);
    if ( pts.back() < pi )
      pts.back() = pi;
    if ( pts.size() == 2 )
      pts.insert(pts.begin()+1,0.5*pi);

    ThetaQuadRule r;
    const int n = nodes_per_panel;
    const double ca = 2.0*p.alpha()+1.0, cb = 2.0*p.beta()+1.0;
    const std::size_t npanels = pts.size()-1;
    for ( std::size_t k = 0; k < npanels; ++k ) {
      const double lo = pts[k], hi = pts[k+1];
      if ( k == 0 ) {
        // theta^{ca} singular factor at 0
        const GaussRule e = endpoint_rule(n,ca);
        const double len = hi;
        for ( int i = 0; i < n; ++i ) {
          const double th = len*e.x[i];
          const double smooth = std::pow(std::sin(0.5*th)/th,ca) * std::pow(std::cos(0.5*th),cb);
          r.nodes.push_back(th);
          r.weights.push_back(e.w[i]*std::pow(len,ca+1.0)*smooth);
        }
      } else if ( k == npanels-1 ) {
        const GaussRule e = endpoint_rule(n,cb);
        const double len = pi - lo;
        for ( int i = n-1; i >= 0; --i ) {
          const double d = len*e.x[i];
          const double th = pi - d;
          const double smooth = std::pow(std::sin(0.5*d)/d,cb) * std::pow(std::cos(0.5*d),ca);
          r.nodes.push_back(th);
          r.weights.push_back(e.w[i]*std::pow(len,cb+1.0)*smooth);
        }
      } else {
        const GaussRule g = mapped_legendre(n,lo,hi);
        for ( int i = 0; i < n; ++i ) {
          r.nodes.push_back(g.x[i]);
          r.weights.push_back(g.w[i]*mu_density(p,g.x[i]));
        }
      }
    }
    r.degree = -1;
    return r;
  }

}
