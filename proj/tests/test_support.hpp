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

#ifndef JPK_TEST_SUPPORT_HPP
#define JPK_TEST_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace testsupport {

  inline double rel_diff( double a, double b )
  {
    const double s = std::max(std::fabs(a),std::fabs(b));
    return s == 0.0 ? 0.0 : std::fabs(a-b)/s;
  }

  // Parameter sets covering all four sign cases of (alpha+1/2, beta+1/2).
  inline std::vector<std::pair<double,double>> acceptance_params()
  {
    return { {0.5,0.5}, {-0.75,0.5}, {0.5,-0.75}, {-0.75,-0.75}, {0.0,0.0}, {2.0,-0.25} };
  }

}

#endif
