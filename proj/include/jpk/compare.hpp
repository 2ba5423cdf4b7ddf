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

#ifndef JPK_COMPARE_HPP
#define JPK_COMPARE_HPP

// Cross-method agreement of the kernel over a (t, theta, phi) grid.

#include "jpk/poisson_kernel.hpp"
#include <array>
#include <string>
#include <vector>

namespace jpk {

  struct CompareOptions {
    double tol = 1e-6;
    // looser bound for small t near the diagonal, where the integral
    // routes lose digits to the singularity
    double near_tol = 1e-4;
    double near_t = 0.1;
    double near_gap = 0.05;
  };

  inline constexpr std::array<Method,4> compared_methods{Method::Series,Method::F4,Method::Integral,
                                                         Method::General};

  struct CompareRow {
    double t = 0.0, theta = 0.0, phi = 0.0;
    std::array<double,4> value{};  // in compared_methods order; NaN on failure
    double max_rel_diff = 0.0;     // largest |a-b|/max(|a|,|b|) over method pairs
    double tol = 0.0;
    std::string failure;           // "<method>: <message>" for the first failing method
    bool pass() const { return failure.empty() && max_rel_diff <= tol; }
  };

  struct CompareReport {
    std::vector<CompareRow> rows;  // t fastest, then phi, then theta
    double max_rel_diff = 0.0;
    int failures = 0;
    bool pass = false;
  };

  CompareReport compare_methods( const JacobiParams&, const std::vector<double>& t_grid,
                                 const std::vector<double>& theta_grid, const std::vector<double>& phi_grid,
                                 const CompareOptions& = {} );

  // Header "t,theta,phi,series,f4,integral,general,max_rel_diff".
  std::string compare_csv( const CompareReport& );
  // {"summary":{"max_rel_diff","tol","near_tol","failures","pass","count"},"failures":[..]}
  std::string compare_json( const CompareReport&, const CompareOptions& );

}

#endif
