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

#include "jpk/quadrature.hpp"
#include "jpk/errors.hpp"
#include "jpk/special.hpp"
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

namespace jpk {

  namespace {

    // Returns P_n(x) and P_{n-1}(x) of the classical Jacobi family.
    std::pair<double,double> jacobi_pair( int n, double a, double b, double x )
    {
      double pm1 = 1.0;
      if ( n == 0 )
        return {pm1,0.0};
      double p = 0.5*((a-b) + (a+b+2.0)*x);
      for ( int k = 2; k <= n; ++k ) {
        const double s = 2.0*k + a + b;
        const double A = 2.0*k*(k+a+b)*(s-2.0);
        const double B = (s-1.0)*(s*(s-2.0)*x + a*a - b*b);
        const double C = 2.0*(k+a-1.0)*(k+b-1.0)*s;
        const double pn = (B*p - C*pm1)/A;
        pm1 = p;
        p = pn;
      }
      return {p,pm1};
    }

    // P_n'(x) from P_n and P_{n-1}.
    double jacobi_derivative( int n, double a, double b, double x, double pn, double pnm1 )
    {
      const double s = 2.0*n + a + b;
      return ( n*((a-b) - s*x)*pn + 2.0*(n+a)*(n+b)*pnm1 ) / ( s*(1.0-x*x) );
    }

    // P_n^{(a,b)}(1-y) up to the factor (a+1)_n/n!, together with its
    // y-derivative, from the terminating series in y/2. Accurate in relative
    // terms for small y, where x = 1-y itself cannot resolve the node.
    std::pair<double,double> jacobi_series_near_one( int n, double a, double b, double y )
    {
      double c = 1.0, yk = 1.0;
      double val = 1.0, der = 0.0;
      for ( int k = 0; k < n; ++k ) {
        c *= 0.5*(k-n)*(k+n+a+b+1.0)/((k+a+1.0)*(k+1.0));
        der += (k+1.0)*c*yk;
        yk *= y;
        const double term = c*yk;
        val += term;
        if ( std::fabs(term) < 1e-18*std::fabs(val) && std::fabs((k+1.0)*c*yk/y) < 1e-18*std::fabs(der) )
          break;
      }
      return {val,der};
    }

    // Newton on y = 1-x for a node close to x = 1. Returns y and log|dP_n/dx|.
    bool polish_near_one( int n, double a, double b, double& y, double& log_abs_dp )
    {
      for ( int it = 0; it < 30; ++it ) {
        auto [v,d] = jacobi_series_near_one(n,a,b,y);
        const double dy = v/d;
        y -= dy;
        if ( !(y > 0.0) )
          return false;
        if ( std::fabs(dy) <= 4e-16*y ) {
          d = jacobi_series_near_one(n,a,b,y).second;
          log_abs_dp = special::log_gamma(n+a+1.0) - special::log_gamma(a+1.0)
                       - special::log_gamma(n+1.0) + std::log(std::fabs(d));
          return true;
        }
      }
      return false;
    }

  }

  double jacobi_matrix_diag( int k, double a, double b )
  {
    if ( k == 0 )
      return (b-a)/(a+b+2.0);
    const double s = 2.0*k + a + b;
    return (b*b - a*a)/(s*(s+2.0));
  }

  double jacobi_matrix_offdiag( int k, double a, double b )
  {
    if ( k == 1 )
      return std::sqrt(4.0*(1.0+a)*(1.0+b)/((2.0+a+b)*(2.0+a+b)*(3.0+a+b)));
    const double s = 2.0*k + a + b;
    return std::sqrt(4.0*k*(k+a)*(k+b)*(k+a+b)/(s*s*(s+1.0)*(s-1.0)));
  }

  GaussRule gauss_jacobi( int n, double a, double b )
  {
    if ( n < 1 )
      throw InvalidArgument("gauss_jacobi: need at least one node");
    if ( !(a > -1.0) || !(b > -1.0) )
      throw DomainError("gauss_jacobi: weight exponents must exceed -1");

    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n-1,1));
    for ( int k = 0; k < n; ++k ) {
      diag(k) = jacobi_matrix_diag(k,a,b);
      if ( k > 0 )
        sub(k-1) = jacobi_matrix_offdiag(k,a,b);
    }

    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    if ( n == 1 ) {
      rule.x[0] = diag(0);
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
      es.computeFromTridiagonal(diag, sub.head(n-1), Eigen::EigenvaluesOnly);
      for ( int i = 0; i < n; ++i )
        rule.x[i] = std::clamp(es.eigenvalues()(i), -1.0 + 1e-300, 1.0 - 1e-300);
    }

    const double log_norm = (a+b+1.0)*std::log(2.0)
      + special::log_gamma(n+a+1.0) + special::log_gamma(n+b+1.0)
      - special::log_gamma(n+a+b+1.0) - special::log_gamma(n+1.0);

    for ( int i = 0; i < n; ++i ) {
      double x = rule.x[i];
      // Nodes hugging an endpoint are polished in the distance to it.
      const double yend = 1.0 - std::fabs(x);
      if ( n > 1 && yend*n*n <= 16.0 ) {
        const bool top = x > 0.0;
        double y = yend, log_dp = 0.0;
        if ( polish_near_one(n, top ? a : b, top ? b : a, y, log_dp) ) {
          rule.x[i] = top ? 1.0-y : y-1.0;
          rule.w[i] = std::exp(log_norm - std::log(y*(2.0-y)) - 2.0*log_dp);
          continue;
        }
      }
      bool settled = false;
      double dx = 0.0;
      for ( int it = 0; it < 12; ++it ) {
        auto [pn,pm] = jacobi_pair(n,a,b,x);
        const double dp = jacobi_derivative(n,a,b,x,pn,pm);
        dx = pn/dp;
        x -= dx;
        if ( std::fabs(dx) <= 4e-16 * std::max(1e-3,std::fabs(x)) ) {
          settled = true;
          break;
        }
      }
      // nodes near 0 stall at roundoff level rather than the relative target
      if ( !settled && std::fabs(dx) <= 1e-14 )
        settled = true;
      if ( !settled || !(std::fabs(x) < 1.0) )
        throw ConvergenceError("gauss_jacobi: Newton polish failed at node index "
                               + std::to_string(i) + " (n=" + std::to_string(n) + ")");
      auto [pn,pm] = jacobi_pair(n,a,b,x);
      const double dp = jacobi_derivative(n,a,b,x,pn,pm);
      rule.x[i] = x;
      rule.w[i] = std::exp(log_norm - std::log((1.0-x)*(1.0+x)) - 2.0*std::log(std::fabs(dp)));
    }
    return rule;
  }

  const GaussRule& cached_gauss_jacobi( int n, double a, double b )
  {
    static std::mutex mtx;
    static std::map<std::tuple<int,double,double>,std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[{n,a,b}];
    if ( !slot )
      slot = std::make_unique<GaussRule>(gauss_jacobi(n,a,b));
    return *slot;
  }

  GaussRule endpoint_rule( int n, double c )
  {
    // int_0^1 g(s) s^c ds with s=(1+x)/2: weight (1+x)^c on [-1,1].
    const GaussRule& gj = cached_gauss_jacobi(n,0.0,c);
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    const double scale = std::pow(2.0,-c-1.0);
    for ( int i = 0; i < n; ++i ) {
      r.x[i] = 0.5*(1.0+gj.x[i]);
      r.w[i] = gj.w[i]*scale;
    }
    return r;
  }

  GaussRule mapped_legendre( int n, double lo, double hi )
  {
    const GaussRule& gl = cached_gauss_legendre(n);
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    const double half = 0.5*(hi-lo);
    const double mid = 0.5*(hi+lo);
    for ( int i = 0; i < n; ++i ) {
      r.x[i] = mid + half*gl.x[i];
      r.w[i] = half*gl.w[i];
    }
    return r;
  }

}
