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

#ifndef JPK_PI_MEASURES_HPP
#define JPK_PI_MEASURES_HPP

// The one-parameter family of measures dPi_alpha on [-1,1]:
//
//   alpha > -1/2   density C (1-u^2)^(alpha-1/2) du, a probability measure,
//   alpha = -1/2   half-atoms at u = -1 and u = +1,
//   alpha < -1/2   only the even profile |Pi_alpha(u)| du is used,
//
// with C = Gamma(alpha+1)/(sqrt(pi) Gamma(alpha+1/2)).
//
// Rules are stored folded onto (0,1]: an integral over [-1,1] is
// sum_i w_i (f(u_i) + f(-u_i)). Every measure here is even, so the folded
// form carries no loss; the kernel module also needs the odd folding
// f(u_i) - f(-u_i) for the signed measure Pi_alpha(u) du.

#include <functional>
#include <vector>

namespace jpk {

  enum class PiKind { Density, Atomic, Profile };

  // Prefactor Gamma(alpha+1)/(sqrt(pi) Gamma(alpha+1/2)); negative for alpha < -1/2.
  double pi_prefactor( double alpha );

  // Pi_alpha(u) = C int_0^u (1-w^2)^(alpha-1/2) dw, alpha != -1/2, |u| < 1.
  // DomainError at the pole alpha = -1/2 or for |u| >= 1.
  double pi_cdf( double alpha, double u );

  // C (1-u^2)^(alpha-1/2), the signed density for alpha != -1/2.
  double pi_density( double alpha, double u );

  struct FoldedRule {
    std::vector<double> u;   // nodes in (0,1]
    std::vector<double> c;   // 1-u, kept separately so it stays accurate near 1
    std::vector<double> w;   // weights (negative allowed for vanishing rules)
    std::size_t size() const { return u.size(); }
  };

  // Panel breakpoints on [0,1] graded geometrically towards u = 1 until the
  // last panel is no wider than `width`. The last panel always starts at or
  // beyond 1/2 (the profile closed form switches there).
  std::vector<double> graded_breakpoints( double width );

  // Composite folded rule for:
  //   Density  : int f dPi_alpha                        (alpha > -1/2)
  //   Atomic   : (f(1)+f(-1))/2                          (alpha = -1/2; breakpoints unused)
  //   Profile  : int_{-1}^{1} f |Pi_alpha| du            (alpha < -1/2)
  // Interior panels use Gauss-Legendre against the pointwise weight; the
  // panel touching u = 1 uses a Gauss-Jacobi rule absorbing the endpoint
  // behaviour.
  FoldedRule folded_measure_rule( double alpha, PiKind kind, const std::vector<double>& breaks,
                                  int nodes_per_panel );

  // Folded rule for int_{(0,1]} g(u) dPi_alpha(u) where g(1) = 0, valid for
  // every alpha > -1 (alpha < -1/2 included, where dPi_alpha has a
  // non-integrable negative density). The rule integrates g exactly when
  // g(u)/(1-u) is a polynomial of degree < 2*nodes on the last panel. For
  // alpha = -1/2 the rule is empty.
  FoldedRule vanishing_rule( double alpha, const std::vector<double>& breaks, int nodes_per_panel );

  class PiMeasure {
  public:
    // Kind follows from alpha. n_nodes is the starting count per panel for
    // adaptive doubling.
    explicit PiMeasure( double alpha, int n_nodes = 64 );

    double alpha() const noexcept { return m_alpha; }
    PiKind kind() const noexcept { return m_kind; }
    // Full-interval view of the base rule: nodes in (-1,1) or the atoms +-1.
    const std::vector<double>& nodes() const noexcept { return m_nodes; }
    const std::vector<double>& weights() const noexcept { return m_weights; }

  private:
    double m_alpha;
    PiKind m_kind;
    std::vector<double> m_nodes, m_weights;
  };

  // int f dPi_alpha for Density/Atomic measures. InvalidArgument for Profile.
  double pi_integrate( const PiMeasure&, const std::function<double(double)>& f );

  // int_{-1}^{1} f(u) |Pi_alpha(u)| du for alpha in (-1,-1/2). Node count is
  // doubled from 64 until two results differ by < 1e-10 relatively.
  double pi_profile_integrate( double alpha, const std::function<double(double)>& f );

}

#endif
