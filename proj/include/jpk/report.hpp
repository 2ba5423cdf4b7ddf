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

#ifndef JPK_REPORT_HPP
#define JPK_REPORT_HPP

// Grid-scan results shared by the sharp-bound and standard-estimate scans,
// with CSV and JSON serialisation.

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace jpk {

  struct ReportRow {
    double t = std::numeric_limits<double>::quiet_NaN();  // NaN when the scan has no t axis
    double theta = 0.0;
    double phi = 0.0;
    double norm = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
  };

  // MaxRatio: pass iff max ratio <= cap. Spread: pass iff max/min <= cap.
  enum class PassRule { MaxRatio, Spread };

  struct ReportSummary {
    double min = 0.0;
    double max = 0.0;
    double cap = 0.0;
    bool pass = false;
    PassRule rule = PassRule::MaxRatio;
  };

  struct EstimateReport {
    std::string name;
    bool has_t = false;
    std::vector<ReportRow> rows;
    ReportSummary summary;
    std::vector<std::pair<std::string,double>> notes;  // recorded constants

    double spread() const { return summary.max/summary.min; }
  };

  // Fills the summary from the rows. A report with a non-finite or
  // non-positive ratio (or no rows) never passes.
  void finalize_report( EstimateReport&, double cap, PassRule );

  // Shortest decimal string that reads back to the same double.
  std::string format_double( double );

  // Header "t,theta,phi,norm,bound,ratio" (t only when has_t), LF endings.
  std::string report_csv( const EstimateReport& );

  // {"name":..,"summary":{"min","max","cap","pass","rule"},"notes":{..},"rows":[..]}
  std::string report_json( const EstimateReport&, bool include_rows = true );

}

#endif
