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

#ifndef JPK_JACOBI_BASIS_HPP
#define JPK_JACOBI_BASIS_HPP

// Jacobi trigonometric polynomials on [0,pi], orthonormal in L^2(dmu), where
//
//   dmu(theta) = sin(theta/2)^(2 alpha+1) cos(theta/2)^(2 beta+1) dtheta,
//
// together with the measure itself, ball measures and Gauss-Jacobi rules
// under x = cos(theta).

#include <span>
#include <vector>

namespace jpk {

  class JacobiParams {
  public:
    // Throws InvalidArgument unless alpha > -1 and beta > -1.
    JacobiParams( double alpha, double beta );

    double alpha() const noexcept { return m_alpha; }
    double beta() const noexcept { return m_beta; }
    // alpha + beta + 1
    double lambda() const noexcept { return m_alpha + m_beta + 1.0; }
    // Gamma(a+b+2) / (2^(a+b+1) Gamma(a+1) Gamma(b+1))
    double c_ab() const noexcept { return m_c_ab; }
    // mu([0,pi]) = Gamma(a+1) Gamma(b+1) / Gamma(a+b+2)
    double mu_total() const noexcept { return m_mu_total; }

    JacobiParams shifted( int k ) const { return JacobiParams(m_alpha+k, m_beta+k); }

    bool operator==( const JacobiParams& o ) const noexcept
    { return m_alpha == o.m_alpha && m_beta == o.m_beta; }

  private:
    double m_alpha, m_beta, m_c_ab, m_mu_total;
  };

  // Classical (unnormalised) Jacobi polynomial P_n^{(a,b)}(x) by forward
  // recurrence. DomainError if |x| > 1.
  double classical_jacobi_eval( const JacobiParams&, int n, double x );

  // log of the L^2(dmu) norm h_n of P_n^{(a,b)}(cos theta).
  double log_norm_constant( const JacobiParams&, int n );

  // Values (order 0) or theta-derivatives of the orthonormal trigonometric
  // polynomials P_0..P_nmax at theta, via the orthonormal recurrence and the
  // identity  d/dtheta P_n^{a,b} = -1/2 sqrt(n(n+a+b+1)) sin(theta) P_{n-1}^{a+1,b+1}.
  // No upper bound on nmax; order <= 4.
  std::vector<double> trig_poly_values( const JacobiParams&, int nmax, double theta, int order = 0 );

  // All derivative orders 0..max_order at once: result[k][n].
  std::vector<std::vector<double>> trig_poly_derivatives( const JacobiParams&, int nmax,
                                                          double theta, int max_order );

  inline constexpr int max_trig_deriv_order = 4;

  class OrthonormalBasis {
  public:
    OrthonormalBasis( const JacobiParams& p, int n_max );

    const JacobiParams& params() const noexcept { return m_params; }
    int n_max() const noexcept { return m_n_max; }
    std::span<const double> norm_constants() const noexcept { return m_h; }

    // P_n(theta) = classical_jacobi_eval(n, cos theta) / h_n.  IndexError if n > n_max.
    double eval( int n, double theta ) const;
    // d^order/dtheta^order P_n(theta). UnsupportedOrder if order > 4.
    double deriv( int n, double theta, int order ) const;

  private:
    JacobiParams m_params;
    int m_n_max;
    std::vector<double> m_h;
  };

  inline double trig_poly_eval( const OrthonormalBasis& b, int n, double theta ) { return b.eval(n,theta); }
  inline double trig_poly_deriv( const OrthonormalBasis& b, int n, double theta, int order )
  { return b.deriv(n,theta,order); }

  // Density of mu at theta; +inf at an endpoint where the exponent is negative.
  double mu_density( const JacobiParams&, double theta );
  double mu_total( const JacobiParams& );
  // mu([0,theta]) through the incomplete Beta function.
  double mu_cumulative( const JacobiParams&, double theta );

  // |theta-phi| (theta+phi)^(2a+1) (2pi-theta-phi)^(2b+1)
  double ball_surrogate( const JacobiParams&, double theta, double phi );

  struct BallMeasure {
    double exact;      // mu((theta-r, theta+r) cap [0,pi])
    double surrogate;  // ball_surrogate at phi = theta+r (or theta-r when theta+r > pi)
  };
  BallMeasure mu_ball( const JacobiParams&, double theta, double r );

  struct ThetaQuadRule {
    std::vector<double> nodes;    // theta values in (0,pi), increasing
    std::vector<double> weights;  // positive, integrate against dmu
    int degree = 0;               // exact for polynomials in cos theta up to this degree
    std::size_t size() const { return nodes.size(); }
  };

  ThetaQuadRule theta_quad_rule( const JacobiParams&, int n_nodes );

  // Composite rule on [0,pi] against dmu, graded geometrically towards
  // `center` down to panels of width `scale`, with endpoint-weighted panels
  // at 0 and pi. Used where the integrand is sharply peaked (small t).
  ThetaQuadRule graded_theta_rule( const JacobiParams&, double center, double scale,
                                   int nodes_per_panel = 16 );

}

#endif
