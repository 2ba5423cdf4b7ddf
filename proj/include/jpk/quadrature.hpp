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

#ifndef JPK_QUADRATURE_HPP
#define JPK_QUADRATURE_HPP

// Gauss rules on [-1,1] and a few mapped/composite helpers shared by the
// measure, kernel and operator modules.

#include <vector>

namespace jpk {

  struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
    std::size_t size() const { return x.size(); }
  };

  // Entries of the symmetric Jacobi matrix of the weight (1-x)^a (1+x)^b:
  // x p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1} for the orthonormal family.
  double jacobi_matrix_diag( int k, double a, double b );     // a_k, k >= 0
  double jacobi_matrix_offdiag( int k, double a, double b );  // b_k, k >= 1

  // Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b on [-1,1], a,b > -1.
  // Nodes come from the Golub-Welsch eigenproblem and are polished with
  // Newton steps on the three-term recurrence; weights use the closed form
  // in terms of P_n'. Throws ConvergenceError naming the node index if a
  // Newton polish fails to settle.
  GaussRule gauss_jacobi( int n, double a, double b );
  inline GaussRule gauss_legendre( int n ) { return gauss_jacobi(n,0.0,0.0); }

  // Same rules, memoised (thread-safe). The returned reference stays valid
  // for the lifetime of the process.
  const GaussRule& cached_gauss_jacobi( int n, double a, double b );
  inline const GaussRule& cached_gauss_legendre( int n ) { return cached_gauss_jacobi(n,0.0,0.0); }

  // Rule for int_0^1 g(s) s^c ds (c > -1), i.e. singular weight at s=0.
  GaussRule endpoint_rule( int n, double c );

  // Gauss-Legendre nodes/weights mapped to [lo,hi].
  GaussRule mapped_legendre( int n, double lo, double hi );

}

#endif
