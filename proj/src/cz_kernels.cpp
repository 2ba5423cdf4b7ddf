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

#include "jpk/cz_kernels.hpp"
#include "chebyshev_t.hpp"
#include "jpk/errors.hpp"
#include "jpk/parallel.hpp"
#include "jpk/quadrature.hpp"
#include "jpk/special.hpp"
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>

namespace jpk {

  using cplx = std::complex<double>;

  // ---------------------------------------------------------------------------
  // Profiles and specs

  cplx LaplaceProfile::operator()( double t ) const
  {
    switch ( kind ) {
    case Kind::Constant:
      return constant;
    case Kind::ImaginaryPower:
      return std::exp(cplx(0.0,-gamma*std::log(t))) / special::gamma(cplx(1.0,-gamma));
    case Kind::Custom:
      return custom(t);
    }
    return 0.0;
  }

  LaplaceProfile LaplaceProfile::make_constant( cplx c )
  {
    LaplaceProfile p;
    p.kind = Kind::Constant;
    p.constant = c;
    p.sup_norm = std::abs(c);
    return p;
  }

  LaplaceProfile LaplaceProfile::imaginary_power( double gamma )
  {
    LaplaceProfile p;
    p.kind = Kind::ImaginaryPower;
    p.gamma = gamma;
    p.sup_norm = 1.0/std::abs(special::gamma(cplx(1.0,-gamma)));
    return p;
  }

  LaplaceProfile LaplaceProfile::make_custom( std::function<cplx(double)> f, double sup_norm )
  {
    LaplaceProfile p;
    p.kind = Kind::Custom;
    p.custom = std::move(f);
    p.sup_norm = sup_norm;
    return p;
  }

  MultiplierSpec MultiplierSpec::laplace( LaplaceProfile prof )
  {
    MultiplierSpec s;
    s.kind = Kind::Laplace;
    s.profile = std::move(prof);
    return s;
  }

  MultiplierSpec MultiplierSpec::stieltjes( std::vector<StieltjesAtom> atoms )
  {
    MultiplierSpec s;
    s.kind = Kind::Stieltjes;
    s.atoms = std::move(atoms);
    return s;
  }

  void MultiplierSpec::validate() const
  {
    if ( kind == Kind::Stieltjes ) {
      if ( atoms.empty() )
        throw InvalidArgument("Stieltjes multiplier needs at least one atom");
      for ( const auto& a : atoms )
        if ( !(a.t > 0.0) || !std::isfinite(a.t) || !std::isfinite(a.weight) )
          throw InvalidArgument("Stieltjes atoms need finite weights and positions t > 0");
    } else {
      if ( profile.kind == LaplaceProfile::Kind::Custom && !profile.custom )
        throw InvalidArgument("custom Laplace profile has no function");
      if ( !(profile.sup_norm >= 0.0) || !std::isfinite(profile.sup_norm) )
        throw InvalidArgument("Laplace profile must be bounded");
    }
  }

  KernelId KernelId::parse( const std::string& s )
  {
    KernelId k;
    if ( s == "maximal" ) {
      k.kind = Kind::Maximal;
    } else if ( s == "riesz1" || s == "riesz2" ) {
      k.kind = Kind::Riesz;
      k.N = s.back() - '0';
    } else if ( s.size() == 3 && s[0] == 'g' && std::isdigit(s[1]) && std::isdigit(s[2]) ) {
      k.kind = Kind::Square;
      k.M = s[1] - '0';
      k.N = s[2] - '0';
      if ( k.M + k.N < 1 || k.M + k.N > 2 )
        throw InvalidArgument("square function kernel needs M+N in {1,2}: " + s);
    } else if ( s == "laplace" ) {
      k.kind = Kind::Laplace;
      k.spec = MultiplierSpec::laplace(LaplaceProfile::imaginary_power(1.0));
    } else if ( s == "laplace-const" ) {
      k.kind = Kind::Laplace;
      k.spec = MultiplierSpec::laplace(LaplaceProfile::make_constant(1.0));
    } else if ( s == "stieltjes" ) {
      k.kind = Kind::Stieltjes;
      k.spec = MultiplierSpec::stieltjes({{0.25,1.0},{1.0,-0.5},{4.0,0.25}});
    } else {
      throw InvalidArgument("unknown kernel '" + s + "'");
    }
    return k;
  }

  std::string KernelId::name() const
  {
    switch ( kind ) {
    case Kind::Maximal: return "maximal";
    case Kind::Riesz: return "riesz" + std::to_string(N);
    case Kind::Square: return "g" + std::to_string(M) + std::to_string(N);
    case Kind::Laplace:
      return spec.profile.kind == LaplaceProfile::Kind::Constant ? "laplace-const" : "laplace";
    case Kind::Stieltjes: return "stieltjes";
    }
    return "?";
  }

  std::vector<KernelId> standard_kernel_set()
  {
    std::vector<KernelId> v;
    for ( const char* s : {"maximal","riesz1","riesz2","g10","g01","g20","g11","g02","laplace","stieltjes"} )
      v.push_back(KernelId::parse(s));
    return v;
  }

  namespace detail {

    std::vector<double> tail_panels( double ts, double rate, double power, double decay )
    {
      if ( !(rate > 0.0) )
        throw ConvergenceError("t-integral does not converge: a zero eigenvalue survives the derivatives");
      std::vector<double> e{ts};
      double t = ts;
      while ( t < 1.0 || rate*t - power*std::log(t) < decay ) {
        t *= 2.0;
        e.push_back(t);
        if ( e.size() > 200 )
          throw ConvergenceError("t-integral tail did not close");
      }
      return e;
    }

    void throw_quadrature_stall()
    {
      throw ConvergenceError("t-quadrature did not stabilise to 1% at 128 nodes per panel");
    }

  }

  // ---------------------------------------------------------------------------

  namespace {

    using detail::doubling_integral;
    using detail::tail_panels;

    constexpr double pi = std::numbers::pi;
    constexpr double split_ratio = 1.0/32.0;
    constexpr int cheb_nodes = 8;

    DerivOrder swapped( DerivOrder d ) { return {d.t,d.phi,d.theta}; }
    int order_key( DerivOrder d ) { return d.t*16 + d.theta*4 + d.phi; }
    DerivOrder plus( DerivOrder a, DerivOrder b ) { return {a.t+b.t,a.theta+b.theta,a.phi+b.phi}; }

    // H_t and derivatives at a fixed (theta,phi): Chebyshev interpolant of
    // the integral representation on [0,t_s], series above.
    class PointSampler {
    public:
      PointSampler( const JacobiParams& p, double theta, double phi, double ts,
                    const std::vector<DerivOrder>& orders )
        : m_ts(ts), m_orders(orders)
      {
        if ( theta == phi )
          throw DomainError("kernel evaluation needs theta != phi");
        DerivOrder top{};
        for ( std::size_t k = 0; k < orders.size(); ++k ) {
          m_index[order_key(orders[k])] = k;
          top = {std::max(top.t,orders[k].t),std::max(top.theta,orders[k].theta),
                 std::max(top.phi,orders[k].phi)};
        }
        const auto s = detail::chebyshev_nodes01(cheb_nodes);
        std::vector<std::vector<double>> f(orders.size(),std::vector<double>(cheb_nodes));
        for ( int j = 0; j < cheb_nodes; ++j ) {
          const double t = ts*s[j];
          IntegralOptions opt;
          if ( j > 0 ) {
            // the first node certifies the rule; the rest reuse its refinement
            opt.verify = false;
            opt.nodes_per_panel = 24;
          }
          const auto v = h_script_integral_bundle(p,t,theta,phi,orders,opt);
          for ( std::size_t k = 0; k < orders.size(); ++k ) {
            f[k][j] = v[k];
            if ( orders[k].theta == 0 && orders[k].phi == 0 )
              f[k][j] += jph_correction(p,t,orders[k].t);
          }
        }
        for ( const auto& fk : f )
          m_head.emplace_back(ts,fk);
        m_series.emplace(p,theta,phi,ts,top.theta,top.phi,top.t);
      }

      double t_split() const { return m_ts; }
      std::size_t index( DerivOrder d ) const
      {
        const auto it = m_index.find(order_key(d));
        if ( it == m_index.end() )
          throw UnsupportedOrder("kernel sampler: order not prepared");
        return it->second;
      }
      const std::vector<double>& mono( std::size_t k ) const { return m_head[k].mono(); }
      const SeriesSampler& series() const { return *m_series; }

      double value( double t, std::size_t k ) const
      {
        return t < m_ts ? m_head[k](t) : m_series->eval(t,m_orders[k]);
      }

    private:
      double m_ts;
      std::vector<DerivOrder> m_orders;
      std::map<int,std::size_t> m_index;
      std::vector<detail::ChebyshevProfile> m_head;
      std::optional<SeriesSampler> m_series;
    };

    // A signed combination of sampled kernels sharing t_s; `swap` reads a
    // sampler built at (phi,theta) through the symmetry of H_t.
    struct Term {
      double w;
      const PointSampler* s;
      bool swap;
    };
    using Combo = std::vector<Term>;

    std::size_t lookup( const Term& c, DerivOrder d ) { return c.s->index(c.swap ? swapped(d) : d); }

    double combo_value( const Combo& C, DerivOrder d, double t )
    {
      double v = 0.0;
      for ( const auto& c : C )
        v += c.w*c.s->value(t,lookup(c,d));
      return v;
    }

    std::vector<double> combo_mono( const Combo& C, DerivOrder d )
    {
      std::vector<double> m(cheb_nodes,0.0);
      for ( const auto& c : C ) {
        const auto& cm = c.s->mono(lookup(c,d));
        for ( std::size_t j = 0; j < cm.size(); ++j )
          m[j] += c.w*cm[j];
      }
      return m;
    }

    // Mode coefficient F_n of the series for order d:
    //   d^d H_t = sum_n F_n exp(-t a_n).
    template<class Fn>
    void for_each_mode( const Combo& C, DerivOrder d, Fn&& fn )
    {
      for ( const auto& c : C ) {
        const DerivOrder dd = c.swap ? swapped(d) : d;
        const SeriesSampler& ss = c.s->series();
        const auto& eig = ss.eigenvalues();
        const auto& a = ss.theta_derivs(dd.theta);
        const auto& b = ss.phi_derivs(dd.phi);
        for ( int n = 0; n <= ss.n_max(); ++n ) {
          double f = c.w*a[n]*b[n];
          for ( int k = 0; k < dd.t; ++k )
            f *= -eig[n];
          if ( f != 0.0 )
            fn(eig[n],f);
        }
      }
    }

    double slowest_rate( const Combo& C, DerivOrder d )
    {
      double amin = std::numeric_limits<double>::infinity();
      for_each_mode(C,d,[&]( double a, double ) { amin = std::min(amin,a); });
      return amin;
    }

    std::vector<double> maximal_grid()
    {
      std::vector<double> g;
      for ( int k = 0;; ++k ) {
        const double t = 1e-4*std::pow(10.0,k/64.0);
        if ( t >= 50.0 )
          break;
        g.push_back(t);
      }
      g.push_back(50.0);
      return g;
    }

    struct SupResult { double grid, refined, t_arg; };

    SupResult sup_abs( const Combo& C, DerivOrder d )
    {
      static const std::vector<double> grid = maximal_grid();
      std::size_t arg = 0;
      double best = -1.0;
      for ( std::size_t k = 0; k < grid.size(); ++k ) {
        const double v = std::fabs(combo_value(C,d,grid[k]));
        if ( v > best ) {
          best = v;
          arg = k;
        }
      }
      SupResult r{best,best,grid[arg]};
      // golden section in log t on the neighbouring grid cells
      double lo = std::log(grid[arg == 0 ? 0 : arg-1]);
      double hi = std::log(grid[std::min(arg+1,grid.size()-1)]);
      auto f = [&]( double x ) { return std::fabs(combo_value(C,d,std::exp(x))); };
      const double gr = 0.5*(std::sqrt(5.0)-1.0);
      double x1 = hi - gr*(hi-lo), x2 = lo + gr*(hi-lo);
      double f1 = f(x1), f2 = f(x2);
      for ( int it = 0; it < 60 && hi-lo > 1e-10; ++it ) {
        if ( f1 > f2 ) {
          hi = x2; x2 = x1; f2 = f1;
          x1 = hi - gr*(hi-lo); f1 = f(x1);
        } else {
          lo = x1; x1 = x2; f1 = f2;
          x2 = lo + gr*(hi-lo); f2 = f(x2);
        }
      }
      const double fx = std::max(f1,f2);
      if ( fx > r.refined ) {
        r.refined = fx;
        r.t_arg = std::exp(f1 > f2 ? x1 : x2);
      }
      return r;
    }

    // 1/Gamma(N) int_0^inf f(t) t^(N-1) dt, N in {1,2}.
    double riesz_integral( const Combo& C, DerivOrder d, int N )
    {
      const double ts = C.front().s->t_split();
      const double head = detail::power_moment(combo_mono(C,d),ts,N-1);
      double tail = 0.0;
      for_each_mode(C,d,[&]( double a, double f ) {
        if ( a == 0.0 )
          throw ConvergenceError("Riesz kernel: zero eigenvalue survives the derivatives");
        const double x = a*ts;
        const double q = N == 1 ? std::exp(-x) : std::exp(-x)*(1.0+x);
        tail += f*q/std::pow(a,N);
      });
      return head + tail;  // Gamma(1) = Gamma(2) = 1
    }

    // (int_0^inf f(t)^2 t^k dt)^(1/2)
    double l2_integral( const Combo& C, DerivOrder d, int k )
    {
      const double ts = C.front().s->t_split();
      const double head = detail::square_moment(combo_mono(C,d),ts,k);
      const auto edges = tail_panels(ts,2.0*slowest_rate(C,d),k,46.0);
      const double tail = doubling_integral<double>(edges,[&]( double t ) {
        const double v = combo_value(C,d,t);
        return v*v*std::pow(t,k);
      });
      return std::sqrt(std::max(0.0,head+tail));
    }

    cplx laplace_integral( const Combo& C, DerivOrder d, const LaplaceProfile& prof )
    {
      const double ts = C.front().s->t_split();
      const cplx head = detail::profile_moment(combo_mono(C,d),ts,prof,[&]( double t ) {
        return combo_value(C,d,t);
      });
      const auto edges = tail_panels(ts,slowest_rate(C,d),0.0,40.0);
      const cplx tail = doubling_integral<cplx>(edges,[&]( double t ) {
        return prof(t)*combo_value(C,d,t);
      });
      return -(head + tail);
    }

    double stieltjes_sum( const Combo& C, DerivOrder d, const std::vector<StieltjesAtom>& atoms )
    {
      double s = 0.0;
      for ( const auto& a : atoms )
        s += a.weight*combo_value(C,d,a.t);
      return s;
    }

    void validate_kernel( const KernelId& id )
    {
      switch ( id.kind ) {
      case KernelId::Kind::Riesz:
        if ( id.N < 1 || id.N > 2 )
          throw InvalidArgument("Riesz kernel order must be 1 or 2");
        break;
      case KernelId::Kind::Square:
        if ( id.M < 0 || id.N < 0 || id.M+id.N < 1 || id.M+id.N > 2 )
          throw InvalidArgument("square function kernel needs M,N >= 0 and M+N in {1,2}");
        break;
      case KernelId::Kind::Laplace:
      case KernelId::Kind::Stieltjes:
        id.spec.validate();
        if ( (id.kind == KernelId::Kind::Laplace) != (id.spec.kind == MultiplierSpec::Kind::Laplace) )
          throw InvalidArgument("kernel kind and multiplier spec disagree");
        break;
      default:
        break;
      }
    }

    DerivOrder base_order( const KernelId& id )
    {
      switch ( id.kind ) {
      case KernelId::Kind::Riesz: return {0,id.N,0};
      case KernelId::Kind::Square: return {id.M,id.N,0};
      case KernelId::Kind::Laplace: return {1,0,0};
      default: return {0,0,0};
      }
    }

    std::vector<DerivOrder> orders_for( const KernelId& id, bool grad )
    {
      const DerivOrder b = base_order(id);
      std::vector<DerivOrder> v{b};
      if ( grad ) {
        v.push_back(plus(b,{0,1,0}));
        v.push_back(plus(b,{0,0,1}));
      }
      return v;
    }

    // Norm of the kernel with `extra` derivatives applied.
    double functional( const KernelId& id, const Combo& C, DerivOrder extra )
    {
      const DerivOrder d = plus(base_order(id),extra);
      switch ( id.kind ) {
      case KernelId::Kind::Maximal:
        return sup_abs(C,d).refined;
      case KernelId::Kind::Riesz:
        return std::fabs(riesz_integral(C,d,id.N));
      case KernelId::Kind::Square:
        return l2_integral(C,d,2*id.M+2*id.N-1);
      case KernelId::Kind::Laplace:
        return std::abs(laplace_integral(C,d,id.spec.profile));
      case KernelId::Kind::Stieltjes:
        return std::fabs(stieltjes_sum(C,d,id.spec.atoms));
      }
      return 0.0;
    }

    KernelNorms norms_of( const KernelId& id, const Combo& C, bool grad )
    {
      KernelNorms k;
      k.norm = functional(id,C,{});
      if ( grad )
        k.grad = functional(id,C,{0,1,0}) + functional(id,C,{0,0,1});
      return k;
    }

    void check_angles( double theta, double phi )
    {
      if ( !(theta >= 0.0 && theta <= pi && phi >= 0.0 && phi <= pi) )
        throw DomainError("angles must lie in [0,pi]");
      if ( theta == phi )
        throw DomainError("kernel evaluation needs theta != phi");
    }

    double split_for( double theta, double phi ) { return std::fabs(theta-phi)*split_ratio; }

    double ball( const JacobiParams& p, double theta, double phi )
    {
      return mu_ball(p,theta,std::fabs(theta-phi)).exact;
    }

  }

  // ---------------------------------------------------------------------------

  MaximalValue maximal_kernel_norm( const JacobiParams& p, double theta, double phi )
  {
    check_angles(theta,phi);
    const PointSampler s(p,theta,phi,split_for(theta,phi),{{0,0,0}});
    const SupResult r = sup_abs({{1.0,&s,false}},{0,0,0});
    return {r.grid,r.refined,r.t_arg};
  }

  double riesz_kernel( const JacobiParams& p, int N, double theta, double phi )
  {
    check_angles(theta,phi);
    if ( N < 1 || N > 2 )
      throw InvalidArgument("Riesz kernel order must be 1 or 2");
    const PointSampler s(p,theta,phi,split_for(theta,phi),{{0,N,0}});
    return riesz_integral({{1.0,&s,false}},{0,N,0},N);
  }

  double square_fn_kernel_norm( const JacobiParams& p, int M, int N, double theta, double phi )
  {
    check_angles(theta,phi);
    KernelId id;
    id.kind = KernelId::Kind::Square;
    id.M = M;
    id.N = N;
    validate_kernel(id);
    const PointSampler s(p,theta,phi,split_for(theta,phi),{{M,N,0}});
    return l2_integral({{1.0,&s,false}},{M,N,0},2*M+2*N-1);
  }

  cplx laplace_multiplier_kernel( const JacobiParams& p, const LaplaceProfile& prof, double theta,
                                  double phi )
  {
    check_angles(theta,phi);
    MultiplierSpec::laplace(prof).validate();
    const PointSampler s(p,theta,phi,split_for(theta,phi),{{1,0,0}});
    return laplace_integral({{1.0,&s,false}},{1,0,0},prof);
  }

  double stieltjes_multiplier_kernel( const JacobiParams& p, const std::vector<StieltjesAtom>& atoms,
                                      double theta, double phi )
  {
    check_angles(theta,phi);
    MultiplierSpec::stieltjes(atoms).validate();
    double s = 0.0;
    for ( const auto& a : atoms )
      s += a.weight*kernel_eval(p,{a.t,theta,phi});
    return s;
  }

  KernelNorms kernel_norms( const JacobiParams& p, const KernelId& id, double theta, double phi )
  {
    check_angles(theta,phi);
    validate_kernel(id);
    const PointSampler s(p,theta,phi,split_for(theta,phi),orders_for(id,true));
    return norms_of(id,{{1.0,&s,false}},true);
  }

  // ---------------------------------------------------------------------------

  std::vector<AnglePair> off_diagonal_grid( int n )
  {
    if ( n < 2 )
      throw InvalidArgument("off-diagonal grid needs n >= 2");
    std::vector<AnglePair> g;
    for ( int i = 0; i < n; ++i )
      for ( int j = 0; j < n; ++j )
        if ( i != j )
          g.push_back({(i+0.5)*pi/n,(j+0.5)*pi/n});
    return g;
  }

  std::vector<EstimateReport> standard_estimates( const JacobiParams& p, const std::vector<KernelId>& ks,
                                                  const std::vector<AnglePair>& grid, double cap )
  {
    if ( grid.empty() )
      throw InvalidArgument("scan grid is empty");
    if ( ks.empty() )
      throw InvalidArgument("no kernels requested");
    for ( const auto& k : ks )
      validate_kernel(k);
    for ( const auto& g : grid )
      check_angles(g.theta,g.phi);

    // orders closed under theta <-> phi, so each unordered pair is sampled once
    std::set<int> keys;
    std::vector<DerivOrder> orders;
    for ( const auto& k : ks )
      for ( const auto& d : orders_for(k,true) )
        for ( const auto& dd : {d,swapped(d)} )
          if ( keys.insert(order_key(dd)).second )
            orders.push_back(dd);

    std::map<std::pair<double,double>,std::size_t> uid;
    std::vector<std::pair<double,double>> pairs;
    std::vector<std::size_t> point_pair(grid.size());
    for ( std::size_t i = 0; i < grid.size(); ++i ) {
      const auto key = std::minmax(grid[i].theta,grid[i].phi);
      auto [it,fresh] = uid.emplace(key,pairs.size());
      if ( fresh )
        pairs.push_back(key);
      point_pair[i] = it->second;
    }

    // results[pair][kernel][orientation]
    std::vector<std::vector<std::array<KernelNorms,2>>> res(pairs.size(),
        std::vector<std::array<KernelNorms,2>>(ks.size()));
    std::vector<std::array<bool,2>> wanted(pairs.size(),{false,false});
    for ( std::size_t i = 0; i < grid.size(); ++i )
      wanted[point_pair[i]][grid[i].theta > grid[i].phi ? 1 : 0] = true;

    parallel_for(pairs.size(),[&]( std::size_t u ) {
      const auto [x,y] = pairs[u];
      const PointSampler s(p,x,y,split_for(x,y),orders);
      for ( int o = 0; o < 2; ++o ) {
        if ( !wanted[u][o] )
          continue;
        const Combo C{{1.0,&s,o == 1}};
        for ( std::size_t k = 0; k < ks.size(); ++k )
          res[u][k][o] = norms_of(ks[k],C,true);
      }
    });

    std::vector<EstimateReport> out;
    for ( std::size_t k = 0; k < ks.size(); ++k ) {
      EstimateReport gr, gd;
      gr.name = "growth:" + ks[k].name();
      gd.name = "gradient:" + ks[k].name();
      for ( std::size_t i = 0; i < grid.size(); ++i ) {
        const double th = grid[i].theta, ph = grid[i].phi;
        const KernelNorms& kn = res[point_pair[i]][k][th > ph ? 1 : 0];
        const double mb = ball(p,th,ph), d = std::fabs(th-ph);
        gr.rows.push_back({std::numeric_limits<double>::quiet_NaN(),th,ph,kn.norm,1.0/mb,kn.norm*mb});
        gd.rows.push_back({std::numeric_limits<double>::quiet_NaN(),th,ph,kn.grad,1.0/(d*mb),kn.grad*d*mb});
      }
      finalize_report(gr,cap,PassRule::MaxRatio);
      finalize_report(gd,cap,PassRule::MaxRatio);
      out.push_back(std::move(gr));
      out.push_back(std::move(gd));
    }
    return out;
  }

  EstimateReport growth_check( const JacobiParams& p, const KernelId& id,
                               const std::vector<AnglePair>& grid, double cap )
  {
    return standard_estimates(p,{id},grid,cap)[0];
  }

  EstimateReport gradient_check( const JacobiParams& p, const KernelId& id,
                                 const std::vector<AnglePair>& grid, double cap )
  {
    return standard_estimates(p,{id},grid,cap)[1];
  }

  std::vector<SmoothTriple> random_triples( int count, unsigned seed, double min_sep )
  {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ang(0.05,pi-0.05), frac(-0.999,0.999);
    std::vector<SmoothTriple> v;
    while ( static_cast<int>(v.size()) < count ) {
      const double th = ang(rng), ph = ang(rng);
      const double d = std::fabs(th-ph);
      if ( d < min_sep )
        continue;
      const double th2 = th + 0.5*d*frac(rng);
      if ( th2 < 0.05 || th2 > pi-0.05 || th2 == th )
        continue;
      v.push_back({th,th2,ph});
    }
    return v;
  }

  std::vector<EstimateReport> smoothness_estimates( const JacobiParams& p, const std::vector<KernelId>& ks,
                                                    const std::vector<SmoothTriple>& triples, double cap )
  {
    if ( triples.empty() )
      throw InvalidArgument("smoothness scan needs at least one triple");
    if ( ks.empty() )
      throw InvalidArgument("no kernels requested");
    for ( const auto& k : ks )
      validate_kernel(k);
    for ( const auto& tr : triples ) {
      check_angles(tr.theta,tr.phi);
      check_angles(tr.theta2,tr.phi);
      if ( !(std::fabs(tr.theta-tr.phi) > 2.0*std::fabs(tr.theta-tr.theta2)) || tr.theta == tr.theta2 )
        throw InvalidArgument("smoothness triples need 0 < 2|theta-theta2| < |theta-phi|");
    }
    std::set<int> keys;
    std::vector<DerivOrder> orders;
    for ( const auto& k : ks )
      for ( const auto& d : orders_for(k,false) )
        if ( keys.insert(order_key(d)).second )
          orders.push_back(d);

    std::vector<EstimateReport> out(ks.size());
    for ( std::size_t k = 0; k < ks.size(); ++k ) {
      out[k].name = "smoothness:" + ks[k].name();
      out[k].rows.resize(triples.size());
    }
    parallel_for(triples.size(),[&]( std::size_t i ) {
      const auto& tr = triples[i];
      const double ts = std::min(split_for(tr.theta,tr.phi),split_for(tr.theta2,tr.phi));
      const PointSampler a(p,tr.theta,tr.phi,ts,orders), b(p,tr.theta2,tr.phi,ts,orders);
      const Combo C{{1.0,&a,false},{-1.0,&b,false}};
      const double d = std::fabs(tr.theta-tr.phi);
      const double bound = std::fabs(tr.theta-tr.theta2)/(d*ball(p,tr.theta,tr.phi));
      for ( std::size_t k = 0; k < ks.size(); ++k ) {
        const double diff = functional(ks[k],C,{});
        out[k].rows[i] = {std::numeric_limits<double>::quiet_NaN(),tr.theta,tr.phi,diff,bound,diff/bound};
      }
    });
    for ( auto& r : out )
      finalize_report(r,cap,PassRule::MaxRatio);
    return out;
  }

  EstimateReport smoothness_check( const JacobiParams& p, const KernelId& id,
                                   const std::vector<SmoothTriple>& triples, double cap )
  {
    return smoothness_estimates(p,{id},triples,cap)[0];
  }

}
