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

#ifndef JPK_CZ_KERNELS_HPP
#define JPK_CZ_KERNELS_HPP

// Kernels of the Jacobi-Poisson maximal operator, Riesz-Jacobi transforms,
// mixed square functions and Laplace / Laplace-Stieltjes type multipliers,
// with scans of the growth, gradient and smoothness estimates
//
//   |K(theta,phi)|                     <~ 1/mu(B(theta,|theta-phi|))
//   |d_theta K| + |d_phi K|            <~ 1/(|theta-phi| mu(B(theta,|theta-phi|)))
//   |K(theta,phi) - K(theta',phi)|     <~ |theta-theta'|/|theta-phi| * 1/mu(B(theta,|theta-phi|))
//
// where | | is the norm of the kernel's values (sup over t, L^2(t^k dt), or
// absolute value).
//
// Off the diagonal every kernel is a t-integral (or sup) of derivatives of
// H_t. For t below t_s = |theta-phi|/32, H_t is analytic in t on a disc of
// radius about |theta-phi|, so it is replaced by a Chebyshev interpolant
// built from the integral representation; above t_s the series is used.

#include "jpk/jacobi_basis.hpp"
#include "jpk/poisson_kernel.hpp"
#include "jpk/report.hpp"
#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace jpk {

  // Bounded profile phi(t) of a Laplace transform type multiplier
  // m(z) = z int_0^inf e^{-tz} phi(t) dt.
  struct LaplaceProfile {
    enum class Kind { Constant, ImaginaryPower, Custom };
    Kind kind = Kind::Constant;
    std::complex<double> constant{1.0,0.0};
    double gamma = 0.0;                                   // t^{-i gamma}/Gamma(1 - i gamma)
    std::function<std::complex<double>(double)> custom;   // user profile
    double sup_norm = 1.0;                                // declared bound for Custom

    std::complex<double> operator()( double t ) const;

    static LaplaceProfile make_constant( std::complex<double> c );
    static LaplaceProfile imaginary_power( double gamma );
    static LaplaceProfile make_custom( std::function<std::complex<double>(double)> f, double sup_norm );
  };

  struct StieltjesAtom {
    double t = 1.0;       // position, > 0
    double weight = 1.0;
  };

  struct MultiplierSpec {
    enum class Kind { Laplace, Stieltjes };
    Kind kind = Kind::Laplace;
    LaplaceProfile profile;
    std::vector<StieltjesAtom> atoms;

    static MultiplierSpec laplace( LaplaceProfile );
    static MultiplierSpec stieltjes( std::vector<StieltjesAtom> );
    // Throws InvalidArgument for non-positive atom positions or an empty
    // atom list, or a Custom profile without a callable.
    void validate() const;
  };

  // Kernel selector for the scans.
  struct KernelId {
    enum class Kind { Maximal, Riesz, Square, Laplace, Stieltjes };
    Kind kind = Kind::Maximal;
    int N = 0;   // Riesz order / theta-order of the square function
    int M = 0;   // t-order of the square function
    MultiplierSpec spec;

    // "maximal", "riesz1", "riesz2", "g10", "g01", "g20", "g11", "g02",
    // "laplace" (imaginary power gamma = 1), "laplace-const" (phi = 1),
    // "stieltjes" (atoms 1 at t=0.25, -0.5 at t=1, 0.25 at t=4).
    static KernelId parse( const std::string& );
    std::string name() const;
  };

  // Kernels exercised by the acceptance scans.
  std::vector<KernelId> standard_kernel_set();

  // ---------------------------------------------------------------------------
  // Single-point kernels (theta != phi).

  struct MaximalValue {
    double grid_max = 0.0;     // over t = 1e-4 10^(k/64) up to 50
    double refined_max = 0.0;  // after golden-section refinement around the grid argmax
    double t_argmax = 0.0;
  };

  MaximalValue maximal_kernel_norm( const JacobiParams&, double theta, double phi );

  // R_N(theta,phi) = 1/Gamma(N) int_0^inf d_theta^N H_t(theta,phi) t^(N-1) dt, N in {1,2}.
  double riesz_kernel( const JacobiParams&, int N, double theta, double phi );

  // (int_0^inf |d_theta^N d_t^M H_t|^2 t^(2M+2N-1) dt)^(1/2), M+N in {1,2}.
  double square_fn_kernel_norm( const JacobiParams&, int M, int N, double theta, double phi );

  // -int_0^inf phi(t) d_t H_t(theta,phi) dt.
  std::complex<double> laplace_multiplier_kernel( const JacobiParams&, const LaplaceProfile&,
                                                  double theta, double phi );

  // sum_j w_j H_{t_j}(theta,phi), each term by kernel_eval.
  double stieltjes_multiplier_kernel( const JacobiParams&, const std::vector<StieltjesAtom>&,
                                      double theta, double phi );

  // Norm of the kernel and the sum of the norms of its theta- and phi-derivatives.
  struct KernelNorms {
    double norm = 0.0;
    double grad = 0.0;
  };

  KernelNorms kernel_norms( const JacobiParams&, const KernelId&, double theta, double phi );

  // ---------------------------------------------------------------------------
  // Scans

  struct AnglePair {
    double theta = 0.0, phi = 0.0;
  };

  // All pairs (theta_i, theta_j), i != j, with theta_i = (i + 1/2) pi / n.
  std::vector<AnglePair> off_diagonal_grid( int n );

  // norm * mu(B(theta,|theta-phi|)); pass iff max <= cap.
  EstimateReport growth_check( const JacobiParams&, const KernelId&, const std::vector<AnglePair>&,
                               double cap = 1e3 );

  // (|d_theta K| + |d_phi K|) |theta-phi| mu(B(theta,|theta-phi|)); pass iff max <= cap.
  EstimateReport gradient_check( const JacobiParams&, const KernelId&, const std::vector<AnglePair>&,
                                 double cap = 1e3 );

  // Growth and gradient reports for several kernels from one pass over the
  // grid (the per-point t samples are shared). Result: [growth, gradient] per kernel.
  std::vector<EstimateReport> standard_estimates( const JacobiParams&, const std::vector<KernelId>&,
                                                  const std::vector<AnglePair>&, double cap = 1e3 );

  struct SmoothTriple {
    double theta = 0.0, theta2 = 0.0, phi = 0.0;
  };

  // Random triples with |theta-phi| > 2|theta-theta2| and |theta-phi| >= min_sep,
  // angles in [0.05, pi-0.05].
  std::vector<SmoothTriple> random_triples( int count, unsigned seed, double min_sep = 0.15 );

  // |K(theta,phi) - K(theta2,phi)| mu(B(theta,|theta-phi|)) |theta-phi| / |theta-theta2|.
  // Rows store (theta, phi) and use `bound` for 1/(...) as in the other scans.
  EstimateReport smoothness_check( const JacobiParams&, const KernelId&,
                                   const std::vector<SmoothTriple>&, double cap = 1e3 );

  // Smoothness reports for several kernels, sharing the per-triple samples.
  std::vector<EstimateReport> smoothness_estimates( const JacobiParams&, const std::vector<KernelId>&,
                                                    const std::vector<SmoothTriple>&, double cap = 1e3 );

}

#endif
