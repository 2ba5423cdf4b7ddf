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

#ifndef JPK_SHARP_BOUNDS_HPP
#define JPK_SHARP_BOUNDS_HPP

// Two-sided comparators for the Jacobi-Poisson kernels and the ratio scans
// that measure the implied constants.
//
// For 0 < t <= 1:
//   Z = (t^2+theta^2+phi^2)^(-alpha-1/2) (t^2+(pi-theta)^2+(pi-phi)^2)^(-beta-1/2) t/(t^2+(theta-phi)^2)
// for t >= 1:
//   H_t ~ exp(-t|lambda|/2),   Hs_t ~ exp(-t lambda/2).

#include "jpk/jacobi_basis.hpp"
#include "jpk/report.hpp"
#include <vector>

namespace jpk {

  enum class KernelKind { H, HScript };

  struct ComparatorValue {
    double z_short = 0.0;
    double z_long_H = 0.0;
    double z_long_script = 0.0;
  };

  ComparatorValue comparator_values( const JacobiParams&, double t, double theta, double phi );

  // z_short for t <= 1, the long-time comparator of `which` for t > 1.
  double comparator( const JacobiParams&, double t, double theta, double phi, KernelKind which );

  // Value of H_t or Hs_t as used by the scans: series for t >= 0.02,
  // kernel_eval's automatic choice below.
  double scan_kernel_value( const JacobiParams&, double t, double theta, double phi, KernelKind );

  // Per-point ratio kernel/comparator. Pass iff max/min <= cap. Rows are in
  // grid order (t fastest, then phi, then theta). When the t grid contains
  // 1, the two regimes are compared there and the extremes of
  // z_long/z_short are stored in the notes.
  EstimateReport ratio_scan( const JacobiParams&, const std::vector<double>& t_grid,
                             const std::vector<double>& theta_grid,
                             const std::vector<double>& phi_grid, KernelKind which,
                             double cap = 50.0 );

  // Default grids: 20 log-spaced t in [0.05,1] and theta_i = i pi/24, i = 0..24.
  std::vector<double> default_sharp_t_grid();
  std::vector<double> default_sharp_angle_grid();

  struct LongTimeFit {
    double theta = 0.0, phi = 0.0;
    double slope = 0.0;          // of log|e^{t|lambda|/2} H_t - 2^lambda c_ab| against t
    double intercept = 0.0;
    double required_rate = 0.0;  // min(alpha+beta+2, 1)/2
    double tolerance = 0.2;
    bool pass = false;           // -slope >= (1 - tolerance) required_rate
    std::vector<double> t, residual;
  };

  // Least-squares fit over n equispaced t in [t_lo, t_hi].
  LongTimeFit long_time_fit( const JacobiParams&, double theta, double phi, double t_lo = 5.0,
                             double t_hi = 20.0, int n = 16, double tolerance = 0.2 );

}

#endif
