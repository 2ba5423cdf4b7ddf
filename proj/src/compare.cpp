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

#include "jpk/compare.hpp"
#include "json.hpp"
#include "jpk/errors.hpp"
#include "jpk/parallel.hpp"
#include "jpk/report.hpp"
#include <algorithm>
#include <cmath>
#include <limits>

namespace jpk {

  CompareReport compare_methods( const JacobiParams& p, const std::vector<double>& ts,
                                 const std::vector<double>& thetas, const std::vector<double>& phis,
                                 const CompareOptions& opt )
  {
    if ( ts.empty() || thetas.empty() || phis.empty() )
      throw InvalidArgument("compare: grids must be non-empty");
    if ( !(opt.tol > 0.0) || !(opt.near_tol > 0.0) )
      throw InvalidArgument("compare: tolerances must be positive");
    CompareReport r;
    r.rows.resize(ts.size()*thetas.size()*phis.size());
    std::size_t k = 0;
    for ( double th : thetas )
      for ( double ph : phis )
        for ( double t : ts ) {
          auto& row = r.rows[k++];
          row.t = t;
          row.theta = th;
          row.phi = ph;
          const bool near = t <= opt.near_t && std::fabs(th-ph) < opt.near_gap;
          row.tol = near ? opt.near_tol : opt.tol;
        }

    parallel_for(r.rows.size(),[&]( std::size_t i ) {
      auto& row = r.rows[i];
      for ( std::size_t m = 0; m < compared_methods.size(); ++m ) {
        try {
          row.value[m] = kernel_eval(p,{row.t,row.theta,row.phi,{},compared_methods[m]});
        } catch ( const Error& e ) {
          row.value[m] = std::numeric_limits<double>::quiet_NaN();
          if ( row.failure.empty() )
            row.failure = std::string(method_name(compared_methods[m])) + ": " + e.what();
        }
      }
      for ( std::size_t a = 0; a < 4; ++a )
        for ( std::size_t b = a+1; b < 4; ++b ) {
          const double va = row.value[a], vb = row.value[b];
          if ( std::isnan(va) || std::isnan(vb) )
            continue;
          const double s = std::max(std::fabs(va),std::fabs(vb));
          if ( s > 0.0 )
            row.max_rel_diff = std::max(row.max_rel_diff,std::fabs(va-vb)/s);
        }
    });

    r.pass = true;
    for ( const auto& row : r.rows ) {
      r.max_rel_diff = std::max(r.max_rel_diff,row.max_rel_diff);
      if ( !row.failure.empty() )
        ++r.failures;
      r.pass = r.pass && row.pass();
    }
    return r;
  }

  std::string compare_csv( const CompareReport& r )
  {
    std::string out = "t,theta,phi,series,f4,integral,general,max_rel_diff\n";
    for ( const auto& row : r.rows ) {
      out += format_double(row.t) + "," + format_double(row.theta) + "," + format_double(row.phi);
      for ( double v : row.value )
        out += "," + format_double(v);
      out += "," + format_double(row.max_rel_diff) + "\n";
    }
    return out;
  }

  std::string compare_json( const CompareReport& r, const CompareOptions& opt )
  {
    nlohmann::ordered_json j;
    j["summary"] = {
      {"max_rel_diff", r.max_rel_diff},
      {"tol", opt.tol},
      {"near_tol", opt.near_tol},
      {"failures", r.failures},
      {"pass", r.pass},
      {"count", r.rows.size()}
    };
    j["failures"] = nlohmann::ordered_json::array();
    for ( const auto& row : r.rows )
      if ( !row.failure.empty() )
        j["failures"].push_back({{"t",row.t},{"theta",row.theta},{"phi",row.phi},{"error",row.failure}});
    return j.dump();
  }

}
