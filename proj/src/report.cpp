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

#include "jpk/report.hpp"
#include "json.hpp"
#include <algorithm>
#include <charconv>
#include <cmath>

namespace jpk {

  void finalize_report( EstimateReport& r, double cap, PassRule rule )
  {
    ReportSummary s;
    s.cap = cap;
    s.rule = rule;
    bool sane = !r.rows.empty();
    s.min = std::numeric_limits<double>::infinity();
    s.max = -std::numeric_limits<double>::infinity();
    for ( const auto& row : r.rows ) {
      if ( !std::isfinite(row.ratio) || !(row.ratio >= 0.0) )
        sane = false;
      s.min = std::min(s.min,row.ratio);
      s.max = std::max(s.max,row.ratio);
    }
    if ( r.rows.empty() )
      s.min = s.max = std::numeric_limits<double>::quiet_NaN();
    if ( rule == PassRule::Spread )
      s.pass = sane && s.min > 0.0 && s.max/s.min <= cap;
    else
      s.pass = sane && s.max <= cap;
    r.summary = s;
  }

  std::string format_double( double v )
  {
    if ( std::isnan(v) )
      return "nan";
    if ( std::isinf(v) )
      return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf,buf+sizeof buf,v);
    return std::string(buf,res.ptr);
  }

  std::string report_csv( const EstimateReport& r )
  {
    std::string out = r.has_t ? "t,theta,phi,norm,bound,ratio\n" : "theta,phi,norm,bound,ratio\n";
    for ( const auto& row : r.rows ) {
      if ( r.has_t )
        out += format_double(row.t) + ",";
      out += format_double(row.theta) + "," + format_double(row.phi) + "," + format_double(row.norm)
             + "," + format_double(row.bound) + "," + format_double(row.ratio) + "\n";
    }
    return out;
  }

  namespace {

    // JSON has no inf/nan; those become null.
    nlohmann::ordered_json num( double v )
    {
      if ( !std::isfinite(v) )
        return nullptr;
      return v;
    }

  }

  std::string report_json( const EstimateReport& r, bool include_rows )
  {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["summary"] = {
      {"min", num(r.summary.min)},
      {"max", num(r.summary.max)},
      {"cap", num(r.summary.cap)},
      {"pass", r.summary.pass},
      {"rule", r.summary.rule == PassRule::Spread ? "max/min" : "max"},
      {"count", r.rows.size()}
    };
    nlohmann::ordered_json notes = nlohmann::ordered_json::object();
    for ( const auto& [k,v] : r.notes )
      notes[k] = num(v);
    j["notes"] = notes;
    if ( include_rows ) {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for ( const auto& row : r.rows ) {
        nlohmann::ordered_json o;
        if ( r.has_t )
          o["t"] = num(row.t);
        o["theta"] = num(row.theta);
        o["phi"] = num(row.phi);
        o["norm"] = num(row.norm);
        o["bound"] = num(row.bound);
        o["ratio"] = num(row.ratio);
        rows.push_back(std::move(o));
      }
      j["rows"] = rows;
    }
    return j.dump();
  }

}
