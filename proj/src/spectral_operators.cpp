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

#include "jpk/spectral_operators.hpp"
#include "chebyshev_t.hpp"
#include "json.hpp"
#include "jpk/errors.hpp"
#include "jpk/parallel.hpp"
#include "jpk/poisson_kernel.hpp"
#include <algorithm>
#include <cmath>
#include <numbers>

namespace jpk {

  using cplx = std::complex<double>;

  namespace {

    double eigenvalue( const JacobiParams& p, int n ) { return std::fabs(n + 0.5*p.lambda()); }

  }

  // ---------------------------------------------------------------------------

  Expansion::Expansion( const JacobiParams& p, std::vector<double> re, std::vector<double> im )
    : m_params(p), m_re(std::move(re)), m_im(std::move(im))
  {
    if ( m_re.empty() )
      throw InvalidArgument("expansion needs at least one coefficient");
    if ( !m_im.empty() && m_im.size() != m_re.size() )
      throw InvalidArgument("imaginary coefficients must match the real ones in length");
    for ( double c : m_re )
      if ( !std::isfinite(c) )
        throw InvalidArgument("expansion coefficients must be finite");
    for ( double c : m_im )
      if ( !std::isfinite(c) )
        throw InvalidArgument("expansion coefficients must be finite");
  }

  Expansion Expansion::unit( const JacobiParams& p, int n_max, int n )
  {
    if ( n_max < 0 || n < 0 || n > n_max )
      throw IndexError("unit expansion: need 0 <= n <= n_max");
    std::vector<double> c(n_max+1,0.0);
    c[n] = 1.0;
    return Expansion(p,std::move(c));
  }

  cplx Expansion::coeff( int n ) const
  {
    if ( n < 0 || n > n_max() )
      throw IndexError("expansion index out of range");
    return {m_re[n],m_im.empty() ? 0.0 : m_im[n]};
  }

  double Expansion::l2_norm() const
  {
    double s = 0.0;
    for ( double c : m_re )
      s += c*c;
    for ( double c : m_im )
      s += c*c;
    return std::sqrt(s);
  }

  Expansion analyze( const JacobiParams& p, const std::function<double(double)>& f, int n_max,
                     int n_nodes )
  {
    if ( n_max < 0 )
      throw InvalidArgument("analyze: n_max must be non-negative");
    if ( n_nodes == 0 )
      n_nodes = std::max(2*n_max+2,64);
    if ( 2*n_nodes-1 < 2*n_max )
      throw InvalidArgument("analyze: the rule must be exact to degree 2 n_max");
    const ThetaQuadRule rule = theta_quad_rule(p,n_nodes);
    std::vector<double> c(n_max+1,0.0);
    for ( std::size_t i = 0; i < rule.size(); ++i ) {
      const double fi = f(rule.nodes[i]);
      if ( !std::isfinite(fi) )
        throw DomainError("analyze: f is not finite at theta = " + std::to_string(rule.nodes[i]));
      const auto P = trig_poly_values(p,n_max,rule.nodes[i]);
      for ( int n = 0; n <= n_max; ++n )
        c[n] += rule.weights[i]*fi*P[n];
    }
    return Expansion(p,std::move(c));
  }

  std::function<double(double)> piecewise_linear( std::vector<double> x, std::vector<double> y )
  {
    if ( x.empty() || x.size() != y.size() )
      throw InvalidArgument("piecewise_linear: need equally many (non-zero) abscissae and values");
    for ( std::size_t i = 0; i < x.size(); ++i ) {
      if ( !(x[i] >= 0.0 && x[i] <= std::numbers::pi) || !std::isfinite(y[i]) )
        throw InvalidArgument("piecewise_linear: samples need theta in [0,pi] and finite values");
      if ( i > 0 && !(x[i] > x[i-1]) )
        throw InvalidArgument("piecewise_linear: thetas must be strictly increasing");
    }
    return [x = std::move(x), y = std::move(y)]( double t ) {
      if ( t <= x.front() )
        return y.front();
      if ( t >= x.back() )
        return y.back();
      const auto k = static_cast<std::size_t>(std::upper_bound(x.begin(),x.end(),t) - x.begin());
      const double s = (t - x[k-1])/(x[k] - x[k-1]);
      return y[k-1] + s*(y[k] - y[k-1]);
    };
  }

  cplx synthesize( const Expansion& e, double theta, int order )
  {
    if ( !(theta >= 0.0 && theta <= std::numbers::pi) )
      throw DomainError("synthesize: theta must lie in [0,pi]");
    const auto P = trig_poly_values(e.params(),e.n_max(),theta,order);
    double re = 0.0, im = 0.0;
    for ( int n = 0; n <= e.n_max(); ++n ) {
      re += e.re()[n]*P[n];
      if ( e.is_complex() )
        im += e.im()[n]*P[n];
    }
    return {re,im};
  }

  Expansion semigroup_apply( const Expansion& e, double t )
  {
    if ( !(t >= 0.0) || !std::isfinite(t) )
      throw DomainError("semigroup: t must be finite and non-negative");
    auto re = e.re();
    auto im = e.im();
    for ( int n = 0; n <= e.n_max(); ++n ) {
      const double f = std::exp(-t*eigenvalue(e.params(),n));
      re[n] *= f;
      if ( !im.empty() )
        im[n] *= f;
    }
    return Expansion(e.params(),std::move(re),std::move(im));
  }

  RieszFunction riesz_apply( const Expansion& e, int N )
  {
    if ( N < 1 || N > 2 )
      throw InvalidArgument("Riesz transform order must be 1 or 2");
    auto re = e.re();
    auto im = e.im();
    re[0] = 0.0;
    if ( !im.empty() )
      im[0] = 0.0;
    for ( int n = 1; n <= e.n_max(); ++n ) {
      const double f = std::pow(eigenvalue(e.params(),n),-N);
      re[n] *= f;
      if ( !im.empty() )
        im[n] *= f;
    }
    return RieszFunction(Expansion(e.params(),std::move(re),std::move(im)),N);
  }

  namespace {

    void check_square_orders( int M, int N )
    {
      if ( M < 0 || N < 0 || M+N < 1 || M+N > 2 )
        throw InvalidArgument("square function needs M,N >= 0 and M+N in {1,2}");
    }

  }

  std::vector<double> g_function( const Expansion& e, int M, int N, const std::vector<double>& thetas )
  {
    check_square_orders(M,N);
    const JacobiParams& p = e.params();
    const int nm = e.n_max();
    const int k = 2*M + 2*N - 1;
    const double gk = std::tgamma(k+1.0);
    std::vector<double> a(nm+1);
    for ( int n = 0; n <= nm; ++n )
      a[n] = eigenvalue(p,n);
    std::vector<double> out(thetas.size());
    parallel_for(thetas.size(),[&]( std::size_t i ) {
      if ( !(thetas[i] >= 0.0 && thetas[i] <= std::numbers::pi) )
        throw DomainError("g_function: theta must lie in [0,pi]");
      const auto D = trig_poly_values(p,nm,thetas[i],N);
      std::vector<cplx> v(nm+1);
      for ( int n = 0; n <= nm; ++n )
        v[n] = e.coeff(n)*std::pow(-a[n],M)*D[n];
      double s = 0.0;
      for ( int n = 0; n <= nm; ++n ) {
        if ( v[n] == 0.0 )
          continue;
        for ( int m = 0; m <= nm; ++m ) {
          if ( v[m] == 0.0 )
            continue;
          s += (v[n]*std::conj(v[m])).real()*gk/std::pow(a[n]+a[m],k+1.0);
        }
      }
      out[i] = std::sqrt(std::max(0.0,s));
    });
    return out;
  }

  cplx multiplier_value( const MultiplierSpec& spec, double z )
  {
    spec.validate();
    if ( !(z >= 0.0) || !std::isfinite(z) )
      throw DomainError("multiplier: argument must be finite and non-negative");
    if ( spec.kind == MultiplierSpec::Kind::Stieltjes ) {
      double s = 0.0;
      for ( const auto& a : spec.atoms )
        s += a.weight*std::exp(-a.t*z);
      return s;
    }
    if ( z == 0.0 )
      return 0.0;
    // z int e^{-tz} phi(t) dt = int_0^inf e^{-s} phi(s/z) ds, trapezoid in x = log s
    constexpr double h = 0.05, x0 = -40.0, x1 = 4.0;
    const int n = static_cast<int>(std::lround((x1-x0)/h));
    cplx s = 0.0;
    for ( int i = 0; i <= n; ++i ) {
      const double sv = std::exp(x0 + i*h);
      const double w = (i == 0 || i == n) ? 0.5 : 1.0;
      s += w*sv*std::exp(-sv)*spec.profile(sv/z);
    }
    s *= h;
    if ( !std::isfinite(s.real()) || !std::isfinite(s.imag()) )
      throw ConvergenceError("Laplace multiplier: profile quadrature is not finite at z = "
                             + std::to_string(z));
    return s;
  }

  MultiplierResult multiplier_apply( const Expansion& e, const MultiplierSpec& spec )
  {
    spec.validate();
    const int nm = e.n_max();
    std::vector<cplx> m(nm+1);
    bool dropped = false, complex_out = e.is_complex();
    for ( int n = 0; n <= nm; ++n ) {
      const double z = eigenvalue(e.params(),n);
      if ( spec.kind == MultiplierSpec::Kind::Laplace && z == 0.0 ) {
        m[n] = 0.0;
        dropped = true;
        continue;
      }
      m[n] = multiplier_value(spec,z);
      if ( m[n].imag() != 0.0 )
        complex_out = true;
    }
    std::vector<double> re(nm+1), im;
    if ( complex_out )
      im.resize(nm+1);
    for ( int n = 0; n <= nm; ++n ) {
      if ( !complex_out ) {
        re[n] = e.re()[n]*m[n].real();
      } else {
        const cplx c = e.coeff(n)*m[n];
        re[n] = c.real();
        im[n] = c.imag();
      }
    }
    return {Expansion(e.params(),std::move(re),std::move(im)),dropped};
  }

  // ---------------------------------------------------------------------------
  // Kernel routes

  namespace {

    // I_{k,j}(t) = int d^{order_k} H_t(theta,phi) f_j(phi) dmu(phi) for real
    // coefficient vectors f_j.
    class KernelRoute {
    public:
      KernelRoute( const JacobiParams& p, std::vector<DerivOrder> orders,
                   std::vector<std::vector<double>> fs, const KernelRouteOptions& opt )
        : m_p(p), m_orders(std::move(orders)), m_fs(std::move(fs)), m_opt(opt)
      {
        if ( !(opt.t_split > 0.0) || opt.small_t_nodes < 2 || opt.small_t_nodes > 16
             || opt.phi_nodes_per_panel < 2 )
          throw InvalidArgument("kernel route: t_split > 0, 2..16 small-t nodes and >= 2 phi nodes per panel");
        int nf = 0;
        for ( const auto& f : m_fs )
          nf = std::max(nf,static_cast<int>(f.size())-1);
        m_mmax = 0;
        for ( const auto& d : m_orders ) {
          m_mmax = std::max(m_mmax,series_truncation(p,opt.t_split,d));
          m_maxN = std::max(m_maxN,d.theta);
          if ( d.phi != 0 )
            throw UnsupportedOrder("kernel route: phi-derivatives fall on f and are not supported");
        }
        m_a.resize(m_mmax+1);
        for ( int m = 0; m <= m_mmax; ++m )
          m_a[m] = eigenvalue(p,m);

        // The phi-rule integrates P_m f exactly up to degree 2q-1, beyond
        // every mode with exp(-t_split a_m) above e^-60.
        const int q = static_cast<int>(std::ceil(30.0/opt.t_split)) + nf + 1;
        const ThetaQuadRule rule = theta_quad_rule(p,q);
        m_G.assign(m_fs.size(),std::vector<double>(m_mmax+1,0.0));
        for ( std::size_t i = 0; i < rule.size(); ++i ) {
          const auto P = trig_poly_values(p,m_mmax,rule.nodes[i]);
          for ( std::size_t j = 0; j < m_fs.size(); ++j ) {
            double fv = 0.0;
            for ( std::size_t n = 0; n < m_fs[j].size(); ++n )
              fv += m_fs[j][n]*P[n];
            const double w = rule.weights[i]*fv;
            auto& G = m_G[j];
            for ( int m = 0; m <= m_mmax; ++m )
              G[m] += w*P[m];
          }
        }
      }

      struct Point {
        double theta;
        std::vector<std::vector<double>> dP;                   // [N][m]
        std::vector<std::vector<detail::ChebyshevProfile>> head;  // [order][f]
      };

      Point at( double theta ) const
      {
        if ( !(theta > 0.0 && theta < std::numbers::pi) )
          throw DomainError("kernel route: theta must lie in (0,pi)");
        Point pt;
        pt.theta = theta;
        pt.dP = trig_poly_derivatives(m_p,m_mmax,theta,m_maxN);
        const auto s = detail::chebyshev_nodes01(m_opt.small_t_nodes);
        std::vector<std::vector<std::vector<double>>> v(m_orders.size(),
            std::vector<std::vector<double>>(m_fs.size(),std::vector<double>(s.size())));
        for ( std::size_t j = 0; j < s.size(); ++j ) {
          const auto I = small(theta,m_opt.t_split*s[j]);
          for ( std::size_t k = 0; k < m_orders.size(); ++k )
            for ( std::size_t f = 0; f < m_fs.size(); ++f )
              v[k][f][j] = I[k][f];
        }
        pt.head.resize(m_orders.size());
        for ( std::size_t k = 0; k < m_orders.size(); ++k )
          for ( std::size_t f = 0; f < m_fs.size(); ++f )
            pt.head[k].emplace_back(m_opt.t_split,v[k][f]);
        return pt;
      }

      double t_split() const { return m_opt.t_split; }

      // Mode weights F_m with I(t) = sum_m F_m exp(-t a_m) for t >= t_split.
      template<class Fn>
      void for_each_mode( const Point& pt, std::size_t k, std::size_t f, double t, Fn&& fn ) const
      {
        const DerivOrder d = m_orders[k];
        const int n_use = std::min(m_mmax,series_truncation(m_p,t,d));
        const auto& D = pt.dP[d.theta];
        const auto& G = m_G[f];
        for ( int m = 0; m <= n_use; ++m ) {
          double w = G[m]*D[m];
          for ( int i = 0; i < d.t; ++i )
            w *= -m_a[m];
          if ( w != 0.0 )
            fn(m_a[m],w);
        }
      }

      double large( const Point& pt, std::size_t k, std::size_t f, double t ) const
      {
        double s = 0.0;
        for_each_mode(pt,k,f,t,[&]( double a, double w ) { s += w*std::exp(-t*a); });
        return s;
      }

      // Slowest decay among the modes that survive the derivatives.
      double slowest_rate( const Point& pt, std::size_t k, std::size_t f ) const
      {
        double r = std::numeric_limits<double>::infinity();
        double big = 0.0;
        for_each_mode(pt,k,f,m_opt.t_split,[&]( double, double w ) { big = std::max(big,std::fabs(w)); });
        for_each_mode(pt,k,f,m_opt.t_split,[&]( double a, double w ) {
          if ( std::fabs(w) > 1e-14*big )
            r = std::min(r,a);
        });
        return r;
      }

      double value( const Point& pt, std::size_t k, std::size_t f, double t ) const
      {
        return t < m_opt.t_split ? pt.head[k][f](t) : large(pt,k,f,t);
      }

      // Direct phi-quadrature with kernel values from the integral
      // representation; result[order][f].
      std::vector<std::vector<double>> small( double theta, double t ) const
      {
        const ThetaQuadRule rule = graded_theta_rule(m_p,theta,0.25*t,m_opt.phi_nodes_per_panel);
        IntegralOptions io;
        io.verify = false;
        io.nodes_per_panel = 16;
        std::vector<std::vector<double>> I(m_orders.size(),std::vector<double>(m_fs.size(),0.0));
        std::vector<double> corr(m_orders.size(),0.0);
        for ( std::size_t k = 0; k < m_orders.size(); ++k )
          if ( m_orders[k].theta == 0 )
            corr[k] = jph_correction(m_p,t,m_orders[k].t);
        int nf = 0;
        for ( const auto& fc : m_fs )
          nf = std::max(nf,static_cast<int>(fc.size())-1);
        std::vector<std::vector<double>> kv(rule.size());
        parallel_for(rule.size(),[&]( std::size_t i ) {
          kv[i] = h_script_integral_bundle(m_p,t,theta,rule.nodes[i],m_orders,io);
        });
        for ( std::size_t i = 0; i < rule.size(); ++i ) {
          const auto P = trig_poly_values(m_p,nf,rule.nodes[i]);
          for ( std::size_t f = 0; f < m_fs.size(); ++f ) {
            double fv = 0.0;
            for ( std::size_t n = 0; n < m_fs[f].size(); ++n )
              fv += m_fs[f][n]*P[n];
            for ( std::size_t k = 0; k < m_orders.size(); ++k )
              I[k][f] += rule.weights[i]*(kv[i][k] + corr[k])*fv;
          }
        }
        return I;
      }

    private:
      JacobiParams m_p;
      std::vector<DerivOrder> m_orders;
      std::vector<std::vector<double>> m_fs;
      KernelRouteOptions m_opt;
      int m_mmax = 0, m_maxN = 0;
      std::vector<double> m_a;
      std::vector<std::vector<double>> m_G;  // [f][m]
    };

    // Real and imaginary coefficient vectors of the expansions, in order.
    std::vector<std::vector<double>> split_parts( const std::vector<Expansion>& es )
    {
      std::vector<std::vector<double>> fs;
      for ( const auto& e : es ) {
        if ( !(e.params() == es.front().params()) )
          throw InvalidArgument("kernel route: expansions must share the parameters");
        fs.push_back(e.re());
        fs.push_back(e.is_complex() ? e.im() : std::vector<double>(e.re().size(),0.0));
      }
      return fs;
    }

    double riesz_part( const KernelRoute& kr, const KernelRoute::Point& pt, std::size_t k, std::size_t f,
                       int N )
    {
      const double ts = kr.t_split();
      double s = detail::power_moment(pt.head[k][f].mono(),ts,N-1);
      kr.for_each_mode(pt,k,f,ts,[&]( double a, double w ) {
        if ( a == 0.0 )
          throw ConvergenceError("Riesz kernel route: zero eigenvalue survives the derivatives");
        const double x = a*ts;
        s += w*(N == 1 ? std::exp(-x) : std::exp(-x)*(1.0+x))/std::pow(a,N);
      });
      return s;  // Gamma(1) = Gamma(2) = 1
    }

  }

  cplx kernel_route_semigroup( const Expansion& e, double t, double theta, const KernelRouteOptions& opt )
  {
    if ( !(t > 0.0) )
      throw DomainError("kernel route: t must be positive");
    const KernelRoute kr(e.params(),{{0,0,0}},split_parts({e}),opt);
    if ( t < kr.t_split() ) {
      const auto I = kr.small(theta,t);
      return {I[0][0],I[0][1]};
    }
    KernelRoute::Point pt;
    pt.theta = theta;
    pt.dP = trig_poly_derivatives(e.params(),series_truncation(e.params(),opt.t_split,{}),theta,0);
    return {kr.large(pt,0,0,t),kr.large(pt,0,1,t)};
  }

  std::vector<std::vector<cplx>> kernel_route_riesz( const std::vector<Expansion>& es,
                                                     const std::vector<int>& Ns, double theta,
                                                     const KernelRouteOptions& opt )
  {
    if ( es.empty() || Ns.empty() )
      throw InvalidArgument("kernel route: nothing to evaluate");
    std::vector<DerivOrder> orders;
    for ( int N : Ns ) {
      if ( N < 1 || N > 2 )
        throw InvalidArgument("Riesz transform order must be 1 or 2");
      orders.push_back({0,N,0});
    }
    const KernelRoute kr(es.front().params(),orders,split_parts(es),opt);
    const auto pt = kr.at(theta);
    std::vector<std::vector<cplx>> out(Ns.size(),std::vector<cplx>(es.size()));
    for ( std::size_t i = 0; i < Ns.size(); ++i )
      for ( std::size_t j = 0; j < es.size(); ++j )
        out[i][j] = {riesz_part(kr,pt,i,2*j,Ns[i]),riesz_part(kr,pt,i,2*j+1,Ns[i])};
    return out;
  }

  cplx kernel_route_riesz( const Expansion& e, int N, double theta, const KernelRouteOptions& opt )
  {
    return kernel_route_riesz(std::vector<Expansion>{e},{N},theta,opt)[0][0];
  }

  double kernel_route_g( const Expansion& e, int M, int N, double theta, const KernelRouteOptions& opt )
  {
    check_square_orders(M,N);
    const KernelRoute kr(e.params(),{{M,N,0}},split_parts({e}),opt);
    const auto pt = kr.at(theta);
    const int k = 2*M + 2*N - 1;
    const double ts = kr.t_split();
    double head = 0.0;
    for ( std::size_t f = 0; f < 2; ++f )
      head += detail::square_moment(pt.head[0][f].mono(),ts,k);
    const double rate = std::min(kr.slowest_rate(pt,0,0),kr.slowest_rate(pt,0,1));
    if ( !std::isfinite(rate) )
      return std::sqrt(std::max(0.0,head));
    const auto edges = detail::tail_panels(ts,2.0*rate,k,46.0);
    const double tail = detail::doubling_integral<double>(edges,[&]( double t ) {
      const double a = kr.large(pt,0,0,t), b = kr.large(pt,0,1,t);
      return (a*a + b*b)*std::pow(t,k);
    });
    return std::sqrt(std::max(0.0,head+tail));
  }

  cplx kernel_route_multiplier( const Expansion& e, const MultiplierSpec& spec, double theta,
                                const KernelRouteOptions& opt )
  {
    spec.validate();
    const cplx I(0.0,1.0);
    if ( spec.kind == MultiplierSpec::Kind::Stieltjes ) {
      cplx s = 0.0;
      for ( const auto& a : spec.atoms )
        s += a.weight*kernel_route_semigroup(e,a.t,theta,opt);
      return s;
    }
    // -int phi(t) d_t (H_t f)(theta) dt
    const KernelRoute kr(e.params(),{{1,0,0}},split_parts({e}),opt);
    const auto pt = kr.at(theta);
    const double ts = kr.t_split();
    cplx s = 0.0;
    for ( std::size_t f = 0; f < 2; ++f ) {
      const auto& head = pt.head[0][f];
      cplx part = detail::profile_moment(head.mono(),ts,spec.profile,[&]( double t ) { return head(t); });
      const double rate = kr.slowest_rate(pt,0,f);
      if ( std::isfinite(rate) ) {
        const auto edges = detail::tail_panels(ts,rate,0.0,40.0);
        part += detail::doubling_integral<cplx>(edges,[&]( double t ) {
          return spec.profile(t)*kr.large(pt,0,f,t);
        });
      }
      s += (f == 0 ? cplx(1.0) : I)*part;
    }
    return -s;
  }

  // ---------------------------------------------------------------------------

  std::string expansion_to_json( const Expansion& e )
  {
    nlohmann::ordered_json j;
    j["alpha"] = e.params().alpha();
    j["beta"] = e.params().beta();
    j["n_max"] = e.n_max();
    j["coeffs"] = e.re();
    if ( e.is_complex() )
      j["coeffs_im"] = e.im();
    return j.dump();
  }

  Expansion expansion_from_json( const std::string& text )
  {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch ( const nlohmann::json::exception& ex ) {
      throw ParseError(std::string("expansion file: ") + ex.what());
    }
    auto number = [&]( const char* key ) {
      if ( !j.is_object() || !j.contains(key) || !j[key].is_number() )
        throw ParseError(std::string("expansion file: missing numeric field '") + key + "'");
      return j[key].get<double>();
    };
    auto vec = [&]( const char* key ) {
      const auto& a = j[key];
      if ( !a.is_array() )
        throw ParseError(std::string("expansion file: '") + key + "' must be an array");
      std::vector<double> v;
      for ( const auto& x : a ) {
        if ( !x.is_number() )
          throw ParseError(std::string("expansion file: '") + key + "' must hold numbers");
        v.push_back(x.get<double>());
      }
      return v;
    };
    const double alpha = number("alpha"), beta = number("beta");
    if ( !j.contains("n_max") || !j["n_max"].is_number_integer() )
      throw ParseError("expansion file: missing integer field 'n_max'");
    const long n_max = j["n_max"].get<long>();
    if ( !j.contains("coeffs") )
      throw ParseError("expansion file: missing field 'coeffs'");
    auto re = vec("coeffs");
    std::vector<double> im;
    if ( j.contains("coeffs_im") )
      im = vec("coeffs_im");
    if ( n_max < 0 || static_cast<long>(re.size()) != n_max+1 )
      throw InvalidArgument("expansion file: 'coeffs' must hold n_max+1 entries");
    return Expansion(JacobiParams(alpha,beta),std::move(re),std::move(im));
  }

}
