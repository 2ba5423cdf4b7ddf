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

#ifndef JPK_SRC_CHEBYSHEV_T_HPP
#define JPK_SRC_CHEBYSHEV_T_HPP

// Chebyshev interpolation of t-profiles on [0, t_s] and their exact moments.
// Internal to the library.

#include "jpk/cz_kernels.hpp"
#include "jpk/quadrature.hpp"
#include "jpk/special.hpp"
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace jpk::detail {

  // First-kind Chebyshev nodes mapped to (0,1): s_j = (1 + cos((2j+1)pi/2n))/2.
  inline std::vector<double> chebyshev_nodes01( int n )
  {
    std::vector<double> s(n);
    for ( int j = 0; j < n; ++j )
      s[j] = 0.5*(1.0 + std::cos((2*j+1)*std::numbers::pi/(2*n)));
    return s;
  }

  // Interpolant of node values on [0, t_s], kept both as a Chebyshev series
  // (for evaluation) and as monomial coefficients in s = t/t_s (for moments).
  class ChebyshevProfile {
  public:
    ChebyshevProfile() = default;
    ChebyshevProfile( double ts, const std::vector<double>& f ) : m_ts(ts)
    {
      const int n = static_cast<int>(f.size());
      m_cheb.assign(n,0.0);
      for ( int i = 0; i < n; ++i ) {
        double s = 0.0;
        for ( int j = 0; j < n; ++j )
          s += f[j]*std::cos(i*(2*j+1)*std::numbers::pi/(2*n));
        m_cheb[i] = (i == 0 ? 1.0 : 2.0)*s/n;
      }
      // shifted Chebyshev polynomials T_i(2s-1) in monomial form
      std::vector<std::vector<double>> T(n);
      T[0] = {1.0};
      if ( n > 1 )
        T[1] = {-1.0,2.0};
      for ( int i = 2; i < n; ++i ) {
        T[i].assign(i+1,0.0);
        for ( int j = 0; j < i; ++j ) {
          T[i][j] -= 2.0*T[i-1][j];
          T[i][j+1] += 4.0*T[i-1][j];
        }
        for ( int j = 0; j < i-1; ++j )
          T[i][j] -= T[i-2][j];
      }
      m_mono.assign(n,0.0);
      for ( int i = 0; i < n; ++i )
        for ( std::size_t j = 0; j < T[i].size(); ++j )
          m_mono[j] += m_cheb[i]*T[i][j];
    }

    double t_split() const { return m_ts; }
    const std::vector<double>& mono() const { return m_mono; }

    double operator()( double t ) const
    {
      const double x = 2.0*t/m_ts - 1.0;
      double b1 = 0.0, b2 = 0.0;
      for ( int i = static_cast<int>(m_cheb.size())-1; i >= 1; --i ) {
        const double b0 = 2.0*x*b1 - b2 + m_cheb[i];
        b2 = b1;
        b1 = b0;
      }
      return x*b1 - b2 + m_cheb[0];
    }

  private:
    double m_ts = 0.0;
    std::vector<double> m_cheb, m_mono;
  };

  // int_0^ts p(t) t^k dt for p given by monomial coefficients in t/ts.
  inline double power_moment( const std::vector<double>& m, double ts, double k )
  {
    double s = 0.0;
    for ( std::size_t j = 0; j < m.size(); ++j )
      s += m[j]/(j+k+1.0);
    return s*std::pow(ts,k+1.0);
  }

  // int_0^ts p(t)^2 t^k dt.
  inline double square_moment( const std::vector<double>& m, double ts, double k )
  {
    std::vector<double> q(2*m.size()-1,0.0);
    for ( std::size_t i = 0; i < m.size(); ++i )
      for ( std::size_t j = 0; j < m.size(); ++j )
        q[i+j] += m[i]*m[j];
    return power_moment(q,ts,k);
  }

  // int_0^ts phi(t) p(t) dt; closed forms for the constant and
  // imaginary-power profiles, geometric panels towards 0 otherwise.
  template<class P>
  std::complex<double> profile_moment( const std::vector<double>& m, double ts,
                                       const LaplaceProfile& prof, P&& p )
  {
    using cplx = std::complex<double>;
    cplx s = 0.0;
    switch ( prof.kind ) {
    case LaplaceProfile::Kind::Constant:
      return prof.constant*power_moment(m,ts,0.0);
    case LaplaceProfile::Kind::ImaginaryPower: {
      const cplx z(1.0,-prof.gamma);
      for ( std::size_t j = 0; j < m.size(); ++j )
        s += m[j]/(static_cast<double>(j)+z);
      return s*std::exp(z*std::log(ts))/special::gamma(z);
    }
    case LaplaceProfile::Kind::Custom: {
      const GaussRule& gl = cached_gauss_legendre(12);
      double hi = ts;
      for ( int i = 0; i < 60; ++i ) {
        const double lo = 0.5*hi, c = 0.5*(lo+hi), h = 0.5*(hi-lo);
        for ( std::size_t k = 0; k < gl.size(); ++k ) {
          const double t = c + h*gl.x[k];
          s += h*gl.w[k]*prof(t)*p(t);
        }
        hi = lo;
      }
      return s;
    }
    }
    return s;
  }

  [[noreturn]] void throw_quadrature_stall();

  // Geometric panel edges t_s 2^i covering [t_s, T] with rate*T - power*log T >= decay.
  std::vector<double> tail_panels( double ts, double rate, double power, double decay );

  // Integrates g over consecutive panels with npp = 8, 16, ... until two
  // passes agree to 1%.
  template<class V, class G>
  V doubling_integral( const std::vector<double>& edges, G&& g )
  {
    auto pass = [&]( int npp ) {
      const GaussRule& gl = cached_gauss_legendre(npp);
      V s{};
      for ( std::size_t i = 0; i+1 < edges.size(); ++i ) {
        const double c = 0.5*(edges[i]+edges[i+1]), h = 0.5*(edges[i+1]-edges[i]);
        for ( std::size_t k = 0; k < gl.size(); ++k )
          s += h*gl.w[k]*g(c + h*gl.x[k]);
      }
      return s;
    };
    V prev = pass(8);
    for ( int npp = 16; npp <= 128; npp *= 2 ) {
      const V cur = pass(npp);
      if ( std::abs(cur-prev) <= 0.01*std::abs(cur) || cur == prev )
        return cur;
      prev = cur;
    }
    throw_quadrature_stall();
  }

}

#endif
