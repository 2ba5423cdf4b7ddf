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

#ifndef JPK_SPECTRAL_OPERATORS_HPP
#define JPK_SPECTRAL_OPERATORS_HPP

// Finite Fourier-Jacobi expansions f = sum_n c_n P_n and the operators
//
//   Poisson semigroup      c_n -> exp(-t a_n) c_n
//   Riesz transforms       R_N f = sum_{n>=1} a_n^(-N) c_n d^N P_n
//   square functions       g_{M,N} f(theta) = || d_theta^N d_t^M (semigroup f)(theta) ||_{L^2(t^(2M+2N-1) dt)}
//   multipliers            c_n -> m(a_n) c_n
//
// with a_n = |n + lambda/2|. Each operator also has a kernel route that
// integrates the corresponding kernel against f in phi; the two routes are
// compared in the tests.

#include "jpk/cz_kernels.hpp"
#include "jpk/jacobi_basis.hpp"
#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace jpk {

  class Expansion {
  public:
    // `im` is either empty (real expansion) or the same length as `re`.
    Expansion( const JacobiParams&, std::vector<double> re, std::vector<double> im = {} );

    static Expansion unit( const JacobiParams&, int n_max, int n );

    const JacobiParams& params() const noexcept { return m_params; }
    int n_max() const noexcept { return static_cast<int>(m_re.size())-1; }
    bool is_complex() const noexcept { return !m_im.empty(); }
    const std::vector<double>& re() const noexcept { return m_re; }
    const std::vector<double>& im() const noexcept { return m_im; }
    std::complex<double> coeff( int n ) const;
    // (sum |c_n|^2)^(1/2)
    double l2_norm() const;

  private:
    JacobiParams m_params;
    std::vector<double> m_re, m_im;
  };

  // c_n = int f P_n dmu by theta_quad_rule with n_nodes nodes
  // (default max(2 n_max + 2, 64)).
  Expansion analyze( const JacobiParams&, const std::function<double(double)>& f, int n_max,
                     int n_nodes = 0 );

  // Piecewise-linear interpolant through (theta_i, value_i), constant beyond
  // the end points. Thetas must be strictly increasing and in [0,pi].
  std::function<double(double)> piecewise_linear( std::vector<double> theta, std::vector<double> values );

  // sum_n c_n d^order P_n(theta)
  std::complex<double> synthesize( const Expansion&, double theta, int order = 0 );

  Expansion semigroup_apply( const Expansion&, double t );

  // R_N f as a function of theta: a derivative of a rescaled expansion.
  class RieszFunction {
  public:
    RieszFunction( const Expansion& scaled, int order ) : m_scaled(scaled), m_order(order) {}
    std::complex<double> operator()( double theta ) const { return synthesize(m_scaled,theta,m_order); }
    const Expansion& scaled() const noexcept { return m_scaled; }
    int order() const noexcept { return m_order; }

  private:
    Expansion m_scaled;
    int m_order;
  };

  RieszFunction riesz_apply( const Expansion&, int N );

  // Exact: the t-integral of each cross term c_n conj(c_m) e^{-t(a_n+a_m)} t^k
  // is Gamma(k+1)/(a_n+a_m)^(k+1).
  std::vector<double> g_function( const Expansion&, int M, int N, const std::vector<double>& thetas );

  // m(z) = z int_0^inf e^{-tz} phi(t) dt with m(0) = 0 (Laplace type), or
  // sum_j w_j e^{-t_j z} (Stieltjes type).
  std::complex<double> multiplier_value( const MultiplierSpec&, double z );

  struct MultiplierResult {
    Expansion expansion;
    // lambda = 0 and a Laplace-type multiplier: the n = 0 mode (eigenvalue 0) is set to zero
    bool dropped_zero_mode = false;
  };

  MultiplierResult multiplier_apply( const Expansion&, const MultiplierSpec& );

  // ---------------------------------------------------------------------------
  // Kernel routes: int K(theta,phi) f(phi) dmu(phi) with the t-structure of
  // each kernel kept outside the phi-integral. For t >= t_split the phi
  // integral uses a Gauss rule fine enough to resolve every mode the series
  // keeps; below t_split it uses a rule graded towards theta with kernel
  // values from the integral representation, interpolated in t.

  struct KernelRouteOptions {
    double t_split = 0.02;
    int small_t_nodes = 4;        // Chebyshev nodes in t on [0, t_split]
    int phi_nodes_per_panel = 16; // graded phi rule below t_split
  };

  std::complex<double> kernel_route_semigroup( const Expansion&, double t, double theta,
                                               const KernelRouteOptions& = {} );
  std::complex<double> kernel_route_riesz( const Expansion&, int N, double theta,
                                           const KernelRouteOptions& = {} );
  // Several expansions and orders at once, sharing the kernel samples:
  // result[i][j] for Ns[i] and expansions[j] (all with the same parameters).
  std::vector<std::vector<std::complex<double>>> kernel_route_riesz( const std::vector<Expansion>&,
                                                                     const std::vector<int>& Ns,
                                                                     double theta,
                                                                     const KernelRouteOptions& = {} );
  double kernel_route_g( const Expansion&, int M, int N, double theta, const KernelRouteOptions& = {} );
  std::complex<double> kernel_route_multiplier( const Expansion&, const MultiplierSpec&, double theta,
                                                const KernelRouteOptions& = {} );

  // ---------------------------------------------------------------------------
  // Serialisation: {"alpha","beta","n_max","coeffs":[..]} plus "coeffs_im" when complex.

  std::string expansion_to_json( const Expansion& );
  // ParseError on malformed input, InvalidArgument on inconsistent fields.
  Expansion expansion_from_json( const std::string& );

}

#endif
