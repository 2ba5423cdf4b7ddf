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

#ifndef JPK_SPECIAL_HPP
#define JPK_SPECIAL_HPP

// Single home for the special functions used across the library (Gamma,
// Beta, log-Gamma, incomplete Beta, Gauss hypergeometric series). Nothing
// else in jpk calls std::tgamma/std::lgamma or Boost directly.

#include <complex>

namespace jpk::special {

  double log_gamma( double x );
  double gamma( double x );
  double log_beta( double a, double b );
  double beta( double a, double b );

  // Non-normalised lower incomplete Beta B_x(a,b) = int_0^x s^{a-1}(1-s)^{b-1} ds,
  // a,b > 0, x in [0,1].
  double inc_beta( double a, double b, double x );

  std::complex<double> log_gamma( std::complex<double> z );
  std::complex<double> gamma( std::complex<double> z );

  // Power series of 2F1(a,b;c;z). Intended for |z| <= 3/4; throws
  // ConvergenceError if 5000 terms are not enough.
  double hyp2f1_series( double a, double b, double c, double z );

}

#endif
