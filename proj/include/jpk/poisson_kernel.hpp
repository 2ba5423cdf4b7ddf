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

#ifndef JPK_POISSON_KERNEL_HPP
#define JPK_POISSON_KERNEL_HPP

// The Jacobi-Poisson kernel
//
//   H_t(theta,phi) = sum_n exp(-t |n + lambda/2|) P_n(theta) P_n(phi),
//
// the auxiliary kernel Hs_t with exponent -t (n + lambda/2), and their
// derivatives, by four routes: the spectral series, the Appell F4 closed
// form, the (u,v) integral representation split by the signs of alpha+1/2
// and beta+1/2, and the symmetrised representation valid for all alpha,beta.
// They are related by
//
//   H_t = Hs_t + [alpha+beta < -1] 2^(lambda+1) c_ab sinh(lambda t / 2).

#include "jpk/jacobi_basis.hpp"
#include <vector>

namespace jpk {

  enum class Method { Series, F4, Integral, General, Auto };

  const char* method_name( Method ) noexcept;

  // Orders of differentiation in (t, theta, phi).
  struct DerivOrder {
    int t = 0, theta = 0, phi = 0;
    int total() const noexcept { return t + theta + phi; }
    bool operator==( const DerivOrder& ) const = default;
  };

  inline constexpr int max_kernel_deriv_total = 3;

  struct KernelQuery {
    double t = 1.0;
    double theta = 0.0;
    double phi = 0.0;
    DerivOrder deriv{};
    Method method = Method::Auto;
  };

  // ---------------------------------------------------------------------------
  // q(theta,phi,u,v) = 1 - u sin(theta/2) sin(phi/2) - v cos(theta/2) cos(phi/2)

  struct QArgs {
    double theta = 0.0, phi = 0.0, u = 0.0, v = 0.0;
  };

  // Partial derivative of q; each order in 0..2 (UnsupportedOrder otherwise).
  double q_eval( const QArgs&, int du = 0, int dv = 0, int dtheta = 0, int dphi = 0 );

  // Psi = c_ab sinh(t/2) / (cosh(t/2) - 1 + q)^(alpha+beta+2)
  struct PsiOrder {
    int u = 0, v = 0;              // each 0 or 1
    int t = 0, theta = 0, phi = 0; // t+theta+phi <= 3
  };

  // Exact partial derivative of Psi at (t, args).
  double psi_eval( const JacobiParams&, double t, const QArgs&, PsiOrder = {} );

  // Evaluates d_u^K d_v^R d^{order} Psi for a fixed (t,theta,phi) and a list
  // of (t,theta,phi)-orders at many (u,v) nodes. Nodes are passed with their
  // complements 1-u, 1-v so the corner u=v=1 keeps full relative accuracy.
  class PsiEvaluator {
  public:
    PsiEvaluator( const JacobiParams&, double t, double theta, double phi, int K, int R,
                  std::vector<DerivOrder> orders );
    std::size_t outputs() const noexcept { return m_orders.size(); }
    void eval( double u, double cu, double v, double cv, double* out ) const;

  private:
    struct Term { double coef; int gamma; };
    struct Partition { int blocks; std::vector<int> idx; };
    std::vector<DerivOrder> m_orders;
    double m_P = 0.0;
    double m_base = 0.0;              // D at u=v=1
    double m_A = 0.0, m_B = 0.0;      // sin*sin, cos*cos half angles
    std::vector<double> m_fall;       // falling factorials of -P
    double m_Dc[64] = {}, m_Du[64] = {}, m_Dv[64] = {};
    std::vector<std::vector<Term>> m_terms;         // per output
    std::vector<std::vector<Partition>> m_parts;    // per gamma index (64)
    std::vector<int> m_gammas;                      // gamma indices in use
    int m_kmax = 0;
  };

  // ---------------------------------------------------------------------------
  // Series route (computes H, with the signed exponent).

  // Truncation index N*: smallest n past the peak of
  // n^(2(alpha+beta+2) + 3(N+L) + M + 1) exp(-t n) with the bound below tol.
  // ConvergenceError if N* exceeds `cap`.
  int series_truncation( const JacobiParams&, double t, DerivOrder, double tol = 1e-17,
                         int cap = 100000 );

  // Precomputes basis derivatives at a fixed (theta,phi) so many t values and
  // orders can be summed cheaply.
  class SeriesSampler {
  public:
    SeriesSampler( const JacobiParams&, double theta, double phi, double t_min,
                   int max_theta_order, int max_phi_order, int max_t_order );
    double eval( double t, DerivOrder ) const;
    // Several orders at one t, sharing the exponentials.
    void eval_orders( double t, const std::vector<DerivOrder>&, double* out ) const;
    int n_max() const noexcept { return m_nmax; }
    double t_min() const noexcept { return m_tmin; }
    // |n + lambda/2| and the precomputed basis derivatives, for callers that
    // integrate the series term by term.
    const std::vector<double>& eigenvalues() const noexcept { return m_eig; }
    const std::vector<double>& theta_derivs( int k ) const { return m_dth.at(k); }
    const std::vector<double>& phi_derivs( int k ) const { return m_dph.at(k); }

  private:
    JacobiParams m_params;
    double m_tmin;
    int m_nmax;
    DerivOrder m_max;
    std::vector<double> m_eig;                  // |n + lambda/2|
    std::vector<std::vector<double>> m_dth, m_dph;
  };

  double kernel_series( const JacobiParams&, double t, double theta, double phi, DerivOrder = {} );

  // ---------------------------------------------------------------------------
  // Appell F4 route (computes Hs, values only).

  // cos((theta-phi)/2) / cosh(t/2): sqrt(x)+sqrt(y) of the F4 arguments.
  double f4_convergence_ratio( double t, double theta, double phi );
  // ConvergenceError when the ratio exceeds 1 - 1e-4.
  double h_script_f4( const JacobiParams&, double t, double theta, double phi );

  // ---------------------------------------------------------------------------
  // Integral routes (compute Hs).

  struct IntegralOptions {
    int nodes_per_panel = 16;
    bool verify = true;        // repeat with 8 more nodes per panel and compare
    double tol = 1e-10;        // relative to the L1 size of the integrand
  };

  struct IntegralTerm {
    int K = 0, R = 0;          // orders of -d_u and -d_v under the integral
    double value = 0.0;
  };

  struct IntegralResult {
    double value = 0.0;
    std::vector<IntegralTerm> terms;
  };

  // Sum over the allowed (K,R): for alpha >= -1/2 only K=0 against dPi_alpha;
  // for alpha < -1/2, K=1 against Pi_alpha(u) du and K=0 against the
  // half-atoms (same for beta and R). Derivatives in (t,theta,phi) are taken
  // under the integral sign; total order <= 3.
  IntegralResult h_script_integral_terms( const JacobiParams&, double t, double theta, double phi,
                                          DerivOrder = {}, const IntegralOptions& = {} );
  double h_script_integral( const JacobiParams&, double t, double theta, double phi,
                            DerivOrder = {}, const IntegralOptions& = {} );

  // Several orders at once, sharing nodes (one value per order).
  std::vector<double> h_script_integral_bundle( const JacobiParams&, double t, double theta,
                                                double phi, const std::vector<DerivOrder>&,
                                                const IntegralOptions& = {} );

  // Symmetrised representation over (0,1]^2, values only.
  double h_script_general( const JacobiParams&, double t, double theta, double phi,
                           const IntegralOptions& = {} );

  // ---------------------------------------------------------------------------

  // d^M/dt^M of the additive term 2^(lambda+1) c_ab sinh(lambda t/2) when
  // alpha+beta < -1, else 0.
  double jph_correction( const JacobiParams&, double t, int M = 0 );

  // Auto: series for t >= 0.2; below that F4 for plain values with
  // convergence ratio <= 0.9, otherwise the integral route.
  Method auto_method( const JacobiParams&, const KernelQuery& );

  // H_t or a derivative by the requested method (correction added for the
  // Hs routes). Validates the query.
  double kernel_eval( const JacobiParams&, const KernelQuery& );

  // H_t for alpha = beta = -1/2 from the geometric series:
  // (1/pi)[1 + S(theta-phi) + S(theta+phi)], S(x) = (r cos x - r^2)/(1 - 2 r cos x + r^2), r = e^-t.
  double closed_form_chebyshev( double t, double theta, double phi );

}

#endif
