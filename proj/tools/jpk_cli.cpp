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

// jpk: command-line front end to the Jacobi-Poisson kernel library.
//
//   jpk kernel  --alpha A --beta B --t T --theta X --phi Y [--method M] [--deriv M,N,L]
//   jpk compare --alpha A --beta B --t LIST --theta LIST --phi LIST [--tol E]
//   jpk scan    --scan sharp|growth|gradient|smoothness [--kernel K] ...
//   jpk apply   --op semigroup|riesz|gfun|multiplier --in FILE ...
//   jpk coeffs  --alpha A --beta B --in SAMPLES.csv --n-max N
//
// Exit codes: 0 success, 2 usage or input error, 3 numeric failure,
// 4 estimate cap or tolerance violated. Options may also come from a JSON
// object given by --config; command-line flags take precedence.

#include "jpk/jpk.h"
#include "CLI11.hpp"
#include "json.hpp"
#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

  enum Exit { ExitOk = 0, ExitUsage = 2, ExitNumeric = 3, ExitCap = 4 };

  struct Failure {
    int code;
    std::string message;
  };

  [[noreturn]] void fail( int code, const std::string& msg ) { throw Failure{code,msg}; }

  // Library status -> exit code; convergence and internal trouble are numeric.
  void check( int status, const std::string& context )
  {
    if ( status == JPK_OK )
      return;
    const int code = (status == JPK_ERR_CONVERGENCE || status == JPK_ERR_INTERNAL) ? ExitNumeric : ExitUsage;
    std::string msg = jpk_last_error();
    fail(code,context.empty() ? msg : context + ": " + msg);
  }

  std::string fmt( double v )
  {
    if ( v != v )
      return "nan";
    char buf[64];
    const auto r = std::to_chars(buf,buf+sizeof buf,v);
    return std::string(buf,r.ptr);
  }

  std::vector<double> parse_list( const std::string& s, const std::string& what )
  {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while ( std::getline(ss,item,',') ) {
      const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
      if ( b == std::string::npos )
        continue;
      item = item.substr(b,e-b+1);
      try {
        std::size_t used = 0;
        out.push_back(std::stod(item,&used));
        if ( used != item.size() )
          throw std::invalid_argument(item);
      } catch ( const std::exception& ) {
        fail(ExitUsage,what + ": not a number: '" + item + "'");
      }
    }
    return out;
  }

  std::vector<double> nonempty_list( const std::string& s, const std::string& what )
  {
    auto v = parse_list(s,what);
    if ( v.empty() )
      fail(ExitUsage,what + ": grid must not be empty");
    return v;
  }

  std::string read_file( const std::string& path )
  {
    std::ifstream in(path,std::ios::binary);
    if ( !in )
      fail(ExitUsage,"cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void emit( const std::string& text, const std::string& path )
  {
    if ( path.empty() || path == "-" ) {
      std::cout << text;
      return;
    }
    std::ofstream out(path,std::ios::binary);
    if ( !out || !(out << text) )
      fail(ExitUsage,"cannot write '" + path + "'");
  }

  struct ParamsDeleter { void operator()( jpk_params* p ) const { jpk_params_destroy(p); } };
  struct ExpansionDeleter { void operator()( jpk_expansion* e ) const { jpk_expansion_destroy(e); } };
  struct ReportDeleter { void operator()( jpk_report* r ) const { jpk_report_destroy(r); } };
  using Params = std::unique_ptr<jpk_params,ParamsDeleter>;
  using ExpansionPtr = std::unique_ptr<jpk_expansion,ExpansionDeleter>;
  using Report = std::unique_ptr<jpk_report,ReportDeleter>;

  std::string take( char* s )
  {
    std::string out(s);
    jpk_string_free(s);
    return out;
  }

  Params make_params( double alpha, double beta )
  {
    jpk_params* p = nullptr;
    check(jpk_params_create(alpha,beta,&p),"");
    return Params(p);
  }

  ExpansionPtr load_expansion( const std::string& path )
  {
    jpk_expansion* e = nullptr;
    check(jpk_expansion_from_json(read_file(path).c_str(),&e),"expansion file '" + path + "'");
    return ExpansionPtr(e);
  }

  std::string expansion_json( const jpk_expansion* e )
  {
    char* s = nullptr;
    check(jpk_expansion_to_json(e,&s),"");
    return take(s) + "\n";
  }

  // ---------------------------------------------------------------------------

  struct Options {
    double alpha = 0.0, beta = 0.0;
    std::string out;
    std::string format = "csv";

    // kernel
    double t = 1.0, theta = 0.0, phi = 0.0;
    std::string method = "auto";
    std::string deriv = "0,0,0";

    // compare
    std::string t_list = "0.1,0.5,1";
    std::string theta_list = "0.01,0.7853981633974483,1.5707963267948966,2.356194490192345,3.131592653589793";
    std::string phi_list;
    double tol = 1e-6, near_tol = 1e-4;

    // scan
    std::string scan;
    std::string kernel = "maximal";
    std::string kind = "H";
    std::string angles;
    std::string scan_t;
    int grid = 15;
    int triples = 100;
    unsigned seed = 12345;
    double cap = -1.0;
    bool rows = true;
    bool t_given = false, angles_given = false;

    // apply / coeffs
    std::string op;
    std::string in;
    int N = 1, M = 1;
    std::string eval_at;
    std::string profile;
    std::string atoms;
    int n_max = 16;
  };

  int cmd_kernel( const Options& o )
  {
    const Params p = make_params(o.alpha,o.beta);
    const auto d = parse_list(o.deriv,"--deriv");
    if ( d.size() != 3 )
      fail(ExitUsage,"--deriv expects three integers M,N,L");
    const auto m = o.method == "series" ? JPK_METHOD_SERIES
                 : o.method == "f4" ? JPK_METHOD_F4
                 : o.method == "integral" ? JPK_METHOD_INTEGRAL
                 : o.method == "general" ? JPK_METHOD_GENERAL
                 : JPK_METHOD_AUTO;
    double v = 0.0;
    check(jpk_kernel_eval(p.get(),o.t,o.theta,o.phi,m,static_cast<int>(d[0]),static_cast<int>(d[1]),
                          static_cast<int>(d[2]),&v),
          "kernel (" + o.method + " method)");
    char buf[64];
    std::snprintf(buf,sizeof buf,"%.15g\n",v);
    emit(buf,o.out);
    return ExitOk;
  }

  int cmd_compare( const Options& o )
  {
    const Params p = make_params(o.alpha,o.beta);
    const auto ts = nonempty_list(o.t_list,"--t");
    const auto th = nonempty_list(o.theta_list,"--theta");
    const auto ph = o.phi_list.empty() ? th : nonempty_list(o.phi_list,"--phi");
    jpk_report* r = nullptr;
    check(jpk_compare(p.get(),ts.data(),ts.size(),th.data(),th.size(),ph.data(),ph.size(),o.tol,o.near_tol,&r),
          "compare");
    const Report rep(r);
    char* s = nullptr;
    check(jpk_report_csv(r,&s),"");
    emit(take(s),o.out);
    check(jpk_report_json(r,0,&s),"");
    const std::string summary = take(s);
    std::cerr << summary << "\n";
    int pass = 0;
    check(jpk_report_summary(r,nullptr,nullptr,nullptr,&pass,nullptr),"");
    if ( pass )
      return ExitOk;
    return nlohmann::json::parse(summary)["summary"]["failures"].get<int>() > 0 ? ExitNumeric : ExitCap;
  }

  int cmd_scan( const Options& o )
  {
    const Params p = make_params(o.alpha,o.beta);
    jpk_report* r = nullptr;
    if ( o.scan == "sharp" ) {
      const auto ts = o.t_given ? nonempty_list(o.scan_t,"--t") : std::vector<double>{};
      const auto a = o.angles_given ? nonempty_list(o.angles,"--angles") : std::vector<double>{};
      const auto kind = o.kind == "Hs" ? JPK_KERNEL_HSCRIPT : JPK_KERNEL_H;
      check(jpk_sharp_scan(p.get(),ts.data(),ts.size(),a.data(),a.size(),kind,o.cap > 0 ? o.cap : 50.0,&r),
            "sharp scan");
    } else {
      if ( o.grid < 2 && o.scan != "smoothness" )
        fail(ExitUsage,"--grid: grid must have at least two angles");
      if ( o.triples < 1 && o.scan == "smoothness" )
        fail(ExitUsage,"--triples: grid must not be empty");
      check(jpk_cz_scan(p.get(),o.scan.c_str(),o.kernel.c_str(),o.grid,o.triples,o.seed,o.cap > 0 ? o.cap : 1e3,
                        &r),
            o.scan + " scan");
    }
    const Report rep(r);
    char* s = nullptr;
    if ( o.format == "json" )
      check(jpk_report_json(r,o.rows ? 1 : 0,&s),"");
    else
      check(jpk_report_csv(r,&s),"");
    std::string text = take(s);
    if ( o.format == "json" )
      text += "\n";
    emit(text,o.out);
    int pass = 0;
    check(jpk_report_summary(r,nullptr,nullptr,nullptr,&pass,nullptr),"");
    return pass ? ExitOk : ExitCap;
  }

  // "const1", "const:RE[,IM]" or "imag:GAMMA"
  ExpansionPtr apply_laplace( const jpk_expansion* e, const std::string& prof )
  {
    jpk_expansion* out = nullptr;
    int dropped = 0;
    if ( prof == "const1" ) {
      check(jpk_multiplier_laplace_const(e,1.0,0.0,&out,&dropped),"multiplier");
    } else if ( prof.rfind("const:",0) == 0 ) {
      const auto c = parse_list(prof.substr(6),"--laplace-profile");
      if ( c.empty() || c.size() > 2 )
        fail(ExitUsage,"--laplace-profile const:RE[,IM]");
      check(jpk_multiplier_laplace_const(e,c[0],c.size() > 1 ? c[1] : 0.0,&out,&dropped),"multiplier");
    } else if ( prof.rfind("imag:",0) == 0 ) {
      const auto g = parse_list(prof.substr(5),"--laplace-profile");
      if ( g.size() != 1 )
        fail(ExitUsage,"--laplace-profile imag:GAMMA");
      check(jpk_multiplier_imaginary_power(e,g[0],&out,&dropped),"multiplier");
    } else {
      fail(ExitUsage,"--laplace-profile must be const1, const:RE[,IM] or imag:GAMMA");
    }
    if ( dropped )
      std::cerr << "note: lambda = 0, the n = 0 mode was dropped\n";
    return ExpansionPtr(out);
  }

  int cmd_apply( const Options& o )
  {
    if ( o.in.empty() )
      fail(ExitUsage,"--in is required");
    const ExpansionPtr e = load_expansion(o.in);
    const auto at = o.eval_at.empty() ? std::vector<double>{} : nonempty_list(o.eval_at,"--eval-at");
    ExpansionPtr res;
    if ( o.op == "semigroup" ) {
      jpk_expansion* out = nullptr;
      check(jpk_semigroup_apply(e.get(),o.t,&out),"semigroup");
      res.reset(out);
    } else if ( o.op == "multiplier" ) {
      if ( !o.atoms.empty() ) {
        std::vector<double> ts, ws;
        for ( const auto& pair : CLI::detail::split(o.atoms,',') ) {
          const auto c = pair.find(':');
          if ( c == std::string::npos )
            fail(ExitUsage,"--stieltjes expects T:W pairs");
          ts.push_back(parse_list(pair.substr(0,c),"--stieltjes").at(0));
          ws.push_back(parse_list(pair.substr(c+1),"--stieltjes").at(0));
        }
        jpk_expansion* out = nullptr;
        check(jpk_multiplier_stieltjes(e.get(),ts.data(),ws.data(),ts.size(),&out),"multiplier");
        res.reset(out);
      } else {
        res = apply_laplace(e.get(),o.profile.empty() ? "const1" : o.profile);
      }
    } else if ( o.op == "riesz" || o.op == "gfun" ) {
      if ( at.empty() )
        fail(ExitUsage,"--op " + o.op + " needs --eval-at");
      std::string csv;
      if ( o.op == "riesz" ) {
        std::vector<double> re(at.size()), im(at.size());
        check(jpk_riesz_eval(e.get(),o.N,at.data(),at.size(),re.data(),im.data()),"riesz");
        csv = "theta,re,im\n";
        for ( std::size_t i = 0; i < at.size(); ++i )
          csv += fmt(at[i]) + "," + fmt(re[i]) + "," + fmt(im[i]) + "\n";
      } else {
        std::vector<double> g(at.size());
        check(jpk_g_function(e.get(),o.M,o.N,at.data(),at.size(),g.data()),"gfun");
        csv = "theta,g\n";
        for ( std::size_t i = 0; i < at.size(); ++i )
          csv += fmt(at[i]) + "," + fmt(g[i]) + "\n";
      }
      emit(csv,o.out);
      return ExitOk;
    } else {
      fail(ExitUsage,"--op must be semigroup, riesz, gfun or multiplier");
    }

    if ( at.empty() ) {
      emit(expansion_json(res.get()),o.out);
      return ExitOk;
    }
    std::string csv = "theta,re,im\n";
    for ( double th : at ) {
      double re = 0.0, im = 0.0;
      check(jpk_synthesize(res.get(),th,0,&re,&im),"synthesis");
      csv += fmt(th) + "," + fmt(re) + "," + fmt(im) + "\n";
    }
    emit(csv,o.out);
    return ExitOk;
  }

  // Samples "theta,f" per line; a non-numeric first line is a header.
  int cmd_coeffs( const Options& o )
  {
    if ( o.in.empty() )
      fail(ExitUsage,"--in is required");
    const Params p = make_params(o.alpha,o.beta);
    std::stringstream ss(read_file(o.in));
    std::string line;
    std::vector<double> th, f;
    int lineno = 0;
    while ( std::getline(ss,line) ) {
      ++lineno;
      if ( !line.empty() && line.back() == '\r' )
        line.pop_back();
      if ( line.find_first_not_of(" \t") == std::string::npos )
        continue;
      if ( lineno == 1 && line.find_first_of("0123456789") > line.find_first_of("abcdefghijklmnopqrstuvwxyz") )
        continue;
      std::vector<double> v;
      try {
        v = parse_list(line,"samples");
      } catch ( const Failure& ) {
        fail(ExitUsage,o.in + ":" + std::to_string(lineno) + ": expected 'theta,f'");
      }
      if ( v.size() != 2 )
        fail(ExitUsage,o.in + ":" + std::to_string(lineno) + ": expected 'theta,f'");
      th.push_back(v[0]);
      f.push_back(v[1]);
    }
    if ( th.empty() )
      fail(ExitUsage,o.in + ": no samples");
    jpk_expansion* e = nullptr;
    check(jpk_expansion_analyze(p.get(),th.data(),f.data(),th.size(),o.n_max,&e),"coeffs");
    const ExpansionPtr ep(e);
    emit(expansion_json(e),o.out);
    return ExitOk;
  }

  // Turns a JSON config object into "--key value" arguments placed before the
  // user's own flags, so the latter win (every option keeps its last value).
  std::vector<std::string> config_args( const std::string& path, const CLI::App& sub )
  {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(path));
    } catch ( const nlohmann::json::exception& e ) {
      fail(ExitUsage,"config '" + path + "': " + e.what());
    }
    if ( !j.is_object() )
      fail(ExitUsage,"config '" + path + "': expected a JSON object");
    std::vector<std::string> args;
    for ( const auto& [key,val] : j.items() ) {
      const std::string flag = "--" + key;
      if ( !sub.get_option_no_throw(flag) )
        fail(ExitUsage,"config '" + path + "': unknown option '" + key + "' for " + sub.get_name());
      std::string text;
      if ( val.is_array() ) {
        for ( const auto& x : val ) {
          if ( !text.empty() )
            text += ",";
          text += x.is_string() ? x.get<std::string>() : x.dump();
        }
      } else if ( val.is_string() ) {
        text = val.get<std::string>();
      } else if ( val.is_boolean() ) {
        text = val.get<bool>() ? "true" : "false";
      } else {
        text = val.dump();
      }
      args.push_back(flag + "=" + text);
    }
    return args;
  }

}

int main( int argc, char** argv )
{
  Options o;
  CLI::App app{"Jacobi-Poisson kernel toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config;
  app.add_option("--config",config,"JSON file with option values (flags take precedence)");

  auto common = [&]( CLI::App* s ) {
    s->add_option("--alpha",o.alpha,"alpha > -1");
    s->add_option("--beta",o.beta,"beta > -1");
    s->add_option("--out",o.out,"output file (default stdout)");
  };

  CLI::App* kernel = app.add_subcommand("kernel","evaluate the kernel or a derivative");
  common(kernel);
  kernel->add_option("--t",o.t);
  kernel->add_option("--theta",o.theta);
  kernel->add_option("--phi",o.phi);
  kernel->add_option("--method",o.method)->check(CLI::IsMember({"series","f4","integral","general","auto"}));
  kernel->add_option("--deriv",o.deriv,"orders M,N,L in t, theta, phi");

  CLI::App* compare = app.add_subcommand("compare","cross-method agreement on a grid");
  common(compare);
  compare->add_option("--t",o.t_list,"comma-separated t values");
  compare->add_option("--theta",o.theta_list,"comma-separated theta values");
  compare->add_option("--phi",o.phi_list,"comma-separated phi values (default: the theta grid)");
  compare->add_option("--tol",o.tol)->check(CLI::PositiveNumber);
  compare->add_option("--near-tol",o.near_tol)->check(CLI::PositiveNumber);

  CLI::App* scan = app.add_subcommand("scan","sharp-bound and standard-estimate scans");
  common(scan);
  scan->add_option("--scan",o.scan)->required()->check(CLI::IsMember({"sharp","growth","gradient","smoothness"}));
  scan->add_option("--kernel",o.kernel,"kernel for the growth/gradient/smoothness scans");
  scan->add_option("--kind",o.kind,"H or Hs for the sharp scan")->check(CLI::IsMember({"H","Hs"}));
  CLI::Option* scan_t = scan->add_option("--t",o.scan_t,"t grid for the sharp scan");
  CLI::Option* scan_angles = scan->add_option("--angles",o.angles,"angle grid for the sharp scan");
  scan->add_option("--grid",o.grid,"off-diagonal grid size");
  scan->add_option("--triples",o.triples,"random triples for the smoothness scan");
  scan->add_option("--seed",o.seed);
  scan->add_option("--cap",o.cap,"ratio cap (default 50 sharp, 1000 otherwise)")->check(CLI::Range(1.0,1e300));
  scan->add_option("--format",o.format)->check(CLI::IsMember({"csv","json"}));
  scan->add_flag("!--no-rows",o.rows,"JSON summary only");

  CLI::App* apply = app.add_subcommand("apply","apply an operator to an expansion");
  apply->add_option("--in",o.in,"expansion JSON");
  apply->add_option("--out",o.out);
  apply->add_option("--op",o.op)->required()->check(CLI::IsMember({"semigroup","riesz","gfun","multiplier"}));
  apply->add_option("--t",o.t,"semigroup time");
  apply->add_option("--N",o.N,"Riesz order / theta order of the g-function");
  apply->add_option("--M",o.M,"t order of the g-function");
  apply->add_option("--eval-at",o.eval_at,"comma-separated thetas");
  apply->add_option("--laplace-profile",o.profile,"const1, const:RE[,IM] or imag:GAMMA");
  apply->add_option("--stieltjes",o.atoms,"atoms T:W,T:W,...");

  CLI::App* coeffs = app.add_subcommand("coeffs","expansion coefficients of sampled data");
  common(coeffs);
  coeffs->add_option("--in",o.in,"CSV of theta,f samples");
  coeffs->add_option("--n-max",o.n_max)->check(CLI::NonNegativeNumber);

  try {
    // Find the subcommand and config path first, then parse again with
    // the config values in front.
    std::vector<std::string> args(argv+1,argv+argc);
    std::string cfg;
    const CLI::App* chosen = nullptr;
    for ( std::size_t i = 0; i < args.size(); ++i ) {
      if ( args[i] == "--config" && i+1 < args.size() )
        cfg = args[i+1];
      else if ( args[i].rfind("--config=",0) == 0 )
        cfg = args[i].substr(9);
      else if ( !chosen && args[i].rfind("-",0) != 0 )
        chosen = app.get_subcommand_no_throw(args[i]);
    }
    if ( !cfg.empty() && chosen ) {
      auto extra = config_args(cfg,*chosen);
      auto pos = std::find(args.begin(),args.end(),chosen->get_name());
      args.insert(pos+1,extra.begin(),extra.end());
    }
    std::reverse(args.begin(),args.end());
    app.parse(args);

    if ( kernel->parsed() )
      return cmd_kernel(o);
    if ( compare->parsed() )
      return cmd_compare(o);
    if ( scan->parsed() ) {
      o.t_given = scan_t->count() > 0;
      o.angles_given = scan_angles->count() > 0;
      return cmd_scan(o);
    }
    if ( apply->parsed() )
      return cmd_apply(o);
    return cmd_coeffs(o);
  } catch ( const CLI::CallForHelp& e ) {
    return app.exit(e);
  } catch ( const CLI::CallForAllHelp& e ) {
    return app.exit(e);
  } catch ( const CLI::ParseError& e ) {
    app.exit(e);
    return ExitUsage;
  } catch ( const Failure& f ) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch ( const std::exception& e ) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitNumeric;
  }
}
