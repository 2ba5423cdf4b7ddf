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

#include "jpk/special.hpp"
#include "jpk/errors.hpp"
#include <boost/math/special_functions/beta.hpp>
#include <array>
#include <cmath>
#include <numbers>

namespace jpk::special {

  double log_gamma( double x )
  {
    int sign;
    return ::lgamma_r(x,&sign);
  }

  double gamma( double x )
  {
    return std::tgamma(x);
  }

  double log_beta( double a, double b )
  {
    return log_gamma(a) + log_gamma(b) - log_gamma(a+b);
  }

  double beta( double a, double b )
  {
    if ( a + b < 150.0 )
      return std::tgamma(a) * std::tgamma(b) / std::tgamma(a+b);
    return std::exp(log_beta(a,b));
  }

  double inc_beta( double a, double b, double x )
  {
    if ( !(a > 0.0) || !(b > 0.0) )
      throw DomainError("inc_beta: parameters must be positive");
    if ( x <= 0.0 )
      return 0.0;
    if ( x >= 1.0 )
      return beta(a,b);
    return boost::math::beta(a,b,x);
  }

  namespace {
    // Lanczos approximation, g=7, n=9 (Godfrey's coefficients).
    constexpr double lanczos_g = 7.0;
    constexpr std::array<double,9> lanczos_c = {
      0.99999999999980993, 676.5203681218851, -1259.1392167224028,
      771.32342877765313, -176.61502916214059, 12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7 };
  }

  std::complex<double> log_gamma( std::complex<double> z )
  {
    using cd = std::complex<double>;
    constexpr double pi = std::numbers::pi;
    if ( z.real() < 0.5 ) {
      // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
      return std::log(pi) - std::log(std::sin(pi*z)) - log_gamma(1.0-z);
    }
    cd zz = z - 1.0;
    cd x = lanczos_c[0];
    for ( std::size_t i = 1; i < lanczos_c.size(); ++i )
      x += lanczos_c[i] / (zz + double(i));
    cd tt = zz + lanczos_g + 0.5;
    return 0.5*std::log(2*pi) + (zz+0.5)*std::log(tt) - tt + std::log(x);
  }

  std::complex<double> gamma( std::complex<double> z )
  {
    return std::exp(log_gamma(z));
  }

  double hyp2f1_series( double a, double b, double c, double z )
  {
    double term = 1.0;
    double sum = 1.0;
    for ( int k = 0; k < 5000; ++k ) {
      term *= (a+k)*(b+k)/((c+k)*(k+1.0)) * z;
      sum += term;
      if ( std::fabs(term) <= 1e-17 * std::fabs(sum) && k > 2 )
        return sum;
    }
    throw ConvergenceError("hyp2f1_series: no convergence");
  }

}
