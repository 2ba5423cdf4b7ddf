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

#include "jpk/poisson_kernel.hpp"
#include "jpk/errors.hpp"
#include "jpk/pi_measures.hpp"
#include "jpk/special.hpp"
#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

namespace jpk {

  namespace {

    constexpr double pi = std::numbers::pi;

    double sin_deriv( int j, double x )
    {
      switch ( j & 3 ) {
      case 0: return std::sin(x);
      case 1: return std::cos(x);
      case 2: return -std::sin(x);
      default: return -std::cos(x);
      }
    }

    // d^j/dtheta^j of sin(theta/2) and cos(theta/2)
    double hs( int j, double th ) { return std::ldexp(sin_deriv(j,0.5*th),-j); }
    double hc( int j, double th ) { return std::ldexp(sin_deriv(j+1,0.5*th),-j); }

    double binom( int n, int k )
    {
      double r = 1.0;
      for ( int i = 1; i <= k; ++i )
        r = r*(n-k+i)/i;
      return r;
    }

    constexpr int midx( int m, int n, int l ) { return m*16 + n*4 + l; }

    // d^n/dtheta^n of sin(theta/2)^K cos(theta/2)^R, K,R in {0,1}
    double half_trig_product( int K, int R, int n, double th )
    {
      if ( K && R ) {
        double s = 0.0;
        for ( int j = 0; j <= n; ++j )
          s += binom(n,j)*hs(j,th)*hc(n-j,th);
        return s;
      }
      if ( K )
        return hs(n,th);
      if ( R )
        return hc(n,th);
      return n == 0 ? 1.0 : 0.0;
    }

    void check_order( const DerivOrder& d )
    {
      if ( d.t < 0 || d.theta < 0 || d.phi < 0 )
        throw UnsupportedOrder("derivative orders must be non-negative");
      if ( d.total() > max_kernel_deriv_total )
        throw UnsupportedOrder("total derivative order " + std::to_string(d.total())
                               + " exceeds " + std::to_string(max_kernel_deriv_total));
    }

    // Set partitions of a multiset of variables (0=t, 1=theta, 2=phi); each
    // block is reported as the packed multi-index of its variables.
    void enumerate_partitions( const std::vector<int>& vars,
                               const std::function<void(const std::vector<int>&)>& emit )
    {
      const int k = static_cast<int>(vars.size());
      std::vector<int> label(k,0);
      std::function<void(int,int)> rec = [&]( int pos, int nblocks ) {
        if ( pos == k ) {
          std::vector<std::array<int,3>> cnt(nblocks,{0,0,0});
          for ( int i = 0; i < k; ++i )
            ++cnt[label[i]][vars[i]];
          std::vector<int> idx;
          for ( const auto& c : cnt )
            idx.push_back(midx(c[0],c[1],c[2]));
          emit(idx);
          return;
        }
        for ( int b = 0; b <= nblocks; ++b ) {
          label[pos] = b;
          rec(pos+1, std::max(nblocks,b+1));
        }
      };
      if ( k == 0 ) {
        emit({});
        return;
      }
      rec(0,0);
    }

    std::string fmt_point( double t, double theta, double phi )
    {
      std::ostringstream os;
      os.precision(6);
      os << "t=" << t << ", theta=" << theta << ", phi=" << phi;
      return os.str();
    }

    void check_point( double t, double theta, double phi )
    {
      if ( !(t > 0.0) || !std::isfinite(t) )
        throw DomainError("t must be positive and finite");
      if ( !(theta >= 0.0 && theta <= pi) )
        throw DomainError("theta must lie in [0,pi]");
      if ( !(phi >= 0.0 && phi <= pi) )
        throw DomainError("phi must lie in [0,pi]");
    }

    // D at u = v = 1: cosh(t/2) - cos((theta-phi)/2), without cancellation.
    double corner_gap( double t, double theta, double phi )
    {
      const double a = std::sinh(0.25*t), b = std::sin(0.25*(theta-phi));
      return 2.0*a*a + 2.0*b*b;
    }

  }

  const char* method_name( Method m ) noexcept
  {
    switch ( m ) {
    case Method::Series: return "series";
    case Method::F4: return "f4";
    case Method::Integral: return "integral";
    case Method::General: return "general";
    default: return "auto";
    }
  }

  double q_eval( const QArgs& a, int du, int dv, int dtheta, int dphi )
  {
    for ( int o : {du,dv,dtheta,dphi} )
      if ( o < 0 || o > 2 )
        throw UnsupportedOrder("q_eval: orders must lie in 0..2");
    if ( du + dv >= 2 )
      return 0.0;
    if ( du == 1 )
      return -hs(dtheta,a.theta)*hs(dphi,a.phi);
    if ( dv == 1 )
      return -hc(dtheta,a.theta)*hc(dphi,a.phi);
    if ( dtheta == 0 && dphi == 0 )
      return 1.0 - a.u*hs(0,a.theta)*hs(0,a.phi) - a.v*hc(0,a.theta)*hc(0,a.phi);
    return -a.u*hs(dtheta,a.theta)*hs(dphi,a.phi) - a.v*hc(dtheta,a.theta)*hc(dphi,a.phi);
  }

  PsiEvaluator::PsiEvaluator( const JacobiParams& p, double t, double theta, double phi,
                              int K, int R, std::vector<DerivOrder> orders )
    : m_orders(std::move(orders)), m_parts(64)
  {
    if ( K < 0 || K > 1 || R < 0 || R > 1 )
      throw UnsupportedOrder("Psi: u- and v-orders must be 0 or 1");
    const double pw = p.alpha() + p.beta() + 2.0;
    m_P = pw + K + R;
    double pref = p.c_ab();
    for ( int i = 0; i < K+R; ++i )
      pref *= pw + i;

    m_A = hs(0,theta)*hs(0,phi);
    m_B = hc(0,theta)*hc(0,phi);
    m_base = corner_gap(t,theta,phi);

    const double sh = std::sinh(0.5*t), ch = std::cosh(0.5*t);
    double Sd[4];
    for ( int m = 0; m < 4; ++m )
      Sd[m] = std::ldexp((m % 2 == 0) ? sh : ch, -m);
    double ft[4], fp[4];
    for ( int n = 0; n < 4; ++n ) {
      ft[n] = half_trig_product(K,R,n,theta);
      fp[n] = half_trig_product(K,R,n,phi);
    }

    for ( int m = 0; m < 4; ++m )
      for ( int n = 0; n < 4; ++n )
        for ( int l = 0; l < 4; ++l ) {
          if ( m+n+l == 0 || m+n+l > 3 )
            continue;
          const int id = midx(m,n,l);
          if ( n == 0 && l == 0 ) {
            m_Dc[id] = std::ldexp((m % 2 == 1) ? sh : ch, -m);
          } else if ( m == 0 ) {
            m_Du[id] = -hs(n,theta)*hs(l,phi);
            m_Dv[id] = -hc(n,theta)*hc(l,phi);
          }
        }

    bool used[64] = {};
    m_terms.resize(m_orders.size());
    for ( std::size_t o = 0; o < m_orders.size(); ++o ) {
      const DerivOrder& d = m_orders[o];
      check_order(d);
      for ( int bt = 0; bt <= d.t; ++bt )
        for ( int bn = 0; bn <= d.theta; ++bn )
          for ( int bl = 0; bl <= d.phi; ++bl ) {
            const double c = binom(d.t,bt)*binom(d.theta,bn)*binom(d.phi,bl)
                             * Sd[bt]*ft[bn]*fp[bl]*pref;
            if ( c == 0.0 )
              continue;
            const int g = midx(d.t-bt,d.theta-bn,d.phi-bl);
            m_terms[o].push_back({c,g});
            used[g] = true;
          }
    }

    for ( int g = 0; g < 64; ++g ) {
      if ( !used[g] )
        continue;
      m_gammas.push_back(g);
      const int m = g/16, n = (g/4)%4, l = g%4;
      std::vector<int> vars;
      vars.insert(vars.end(),m,0);
      vars.insert(vars.end(),n,1);
      vars.insert(vars.end(),l,2);
      m_kmax = std::max(m_kmax,m+n+l);
      enumerate_partitions(vars,[&](const std::vector<int>& idx) {
        m_parts[g].push_back({static_cast<int>(idx.size()),idx});
      });
    }
    m_fall.assign(m_kmax+1,1.0);
    for ( int k = 1; k <= m_kmax; ++k )
      m_fall[k] = m_fall[k-1]*(-m_P-(k-1));
  }

  void PsiEvaluator::eval( double u, double cu, double v, double cv, double* out ) const
  {
    const double D = m_base + cu*m_A + cv*m_B;
    double Dpow[8];
    Dpow[0] = std::pow(D,-m_P);
    for ( int k = 1; k <= m_kmax; ++k )
      Dpow[k] = Dpow[k-1]/D;
    double g[64];
    for ( int gi : m_gammas ) {
      double s = 0.0;
      for ( const auto& part : m_parts[gi] ) {
        double prod = m_fall[part.blocks]*Dpow[part.blocks];
        for ( int id : part.idx )
          prod *= m_Dc[id] + u*m_Du[id] + v*m_Dv[id];
        s += prod;
      }
      g[gi] = s;
    }
    for ( std::size_t o = 0; o < m_terms.size(); ++o ) {
      double s = 0.0;
      for ( const auto& tm : m_terms[o] )
        s += tm.coef*g[tm.gamma];
      out[o] = s;
    }
  }

  double psi_eval( const JacobiParams& p, double t, const QArgs& a, PsiOrder o )
  {
    if ( !(t > 0.0) )
      throw DomainError("psi_eval: t must be positive");
    if ( !(std::fabs(a.u) <= 1.0) || !(std::fabs(a.v) <= 1.0) )
      throw DomainError("psi_eval: u and v must lie in [-1,1]");
    PsiEvaluator ev(p,t,a.theta,a.phi,o.u,o.v,{DerivOrder{o.t,o.theta,o.phi}});
    double out = 0.0;
    ev.eval(a.u,1.0-a.u,a.v,1.0-a.v,&out);
    return out;
  }

  // ---------------------------------------------------------------------------

  namespace {

    int truncation_index( const JacobiParams& p, double t, DerivOrder d, double tol, int cap );

  }

  int series_truncation( const JacobiParams& p, double t, DerivOrder d, double tol, int cap )
  {
    check_order(d);
    return truncation_index(p,t,d,tol,cap);
  }

  namespace {

  int truncation_index( const JacobiParams& p, double t, DerivOrder d, double tol, int cap )
  {
    if ( !(t > 0.0) )
      throw DomainError("series: t must be positive");
    const double e = 2.0*(p.alpha()+p.beta()+2.0) + 3.0*(d.theta+d.phi) + d.t + 1.0;
    const double ltol = std::log(tol);
    auto h = [&]( double n ) { return e*std::log(n) - t*n - ltol; };
    double lo = std::max(1.0,e/t);
    double hi = lo;
    while ( h(hi) > 0.0 ) {
      lo = hi;
      hi *= 2.0;
      if ( hi > 4.0*cap )
        break;
    }
    for ( int it = 0; it < 100 && hi-lo > 0.5; ++it ) {
      const double mid = 0.5*(lo+hi);
      (h(mid) > 0.0 ? lo : hi) = mid;
    }
    const double nstar = std::max(10.0,std::ceil(hi)+2.0);
    if ( nstar > cap )
      throw ConvergenceError("series truncation: N* = " + std::to_string(static_cast<long>(nstar))
                             + " exceeds the cap " + std::to_string(cap) + " at t = "
                             + std::to_string(t));
    return static_cast<int>(nstar);
  }

  }

  SeriesSampler::SeriesSampler( const JacobiParams& p, double theta, double phi, double t_min,
                                int max_theta_order, int max_phi_order, int max_t_order )
    : m_params(p), m_tmin(t_min), m_max{max_t_order,max_theta_order,max_phi_order}
  {
    // each requested order obeys the total cap; the component maxima need not
    if ( m_max.t < 0 || m_max.theta < 0 || m_max.phi < 0 || m_max.t > max_kernel_deriv_total
         || m_max.theta > max_kernel_deriv_total || m_max.phi > max_kernel_deriv_total )
      throw UnsupportedOrder("series sampler: component orders must lie in [0," 
                             + std::to_string(max_kernel_deriv_total) + "]");
    m_nmax = truncation_index(p,t_min,m_max,1e-17,100000);
    m_eig.resize(m_nmax+1);
    for ( int n = 0; n <= m_nmax; ++n )
      m_eig[n] = std::fabs(n + 0.5*p.lambda());
    m_dth = trig_poly_derivatives(p,m_nmax,theta,max_theta_order);
    m_dph = trig_poly_derivatives(p,m_nmax,phi,max_phi_order);
  }

  double SeriesSampler::eval( double t, DerivOrder d ) const
  {
    if ( !(t >= m_tmin*(1.0-1e-12)) )
      throw InvalidArgument("series sampler: t below the precomputed minimum");
    if ( d.t > m_max.t || d.theta > m_max.theta || d.phi > m_max.phi || d.t < 0 || d.theta < 0 || d.phi < 0 )
      throw UnsupportedOrder("series sampler: order outside the precomputed range");
    const int n_use = std::min(m_nmax,series_truncation(m_params,t,d));
    const auto& a = m_dth[d.theta];
    const auto& b = m_dph[d.phi];
    double s = 0.0;
    for ( int n = n_use; n >= 0; --n ) {
      const double lam = m_eig[n];
      double f = std::exp(-t*lam);
      for ( int k = 0; k < d.t; ++k )
        f *= -lam;
      s += f*a[n]*b[n];
    }
    return s;
  }

  void SeriesSampler::eval_orders( double t, const std::vector<DerivOrder>& ds, double* out ) const
  {
    if ( !(t >= m_tmin*(1.0-1e-12)) )
      throw InvalidArgument("series sampler: t below the precomputed minimum");
    int n_use = 0;
    for ( const auto& d : ds ) {
      if ( d.t > m_max.t || d.theta > m_max.theta || d.phi > m_max.phi || d.t < 0 || d.theta < 0 || d.phi < 0 )
        throw UnsupportedOrder("series sampler: order outside the precomputed range");
      n_use = std::max(n_use,std::min(m_nmax,series_truncation(m_params,t,d)));
    }
    std::fill(out,out+ds.size(),0.0);
    for ( int n = n_use; n >= 0; --n ) {
      const double lam = m_eig[n];
      const double e = std::exp(-t*lam);
      for ( std::size_t k = 0; k < ds.size(); ++k ) {
        double f = e;
        for ( int j = 0; j < ds[k].t; ++j )
          f *= -lam;
        out[k] += f*m_dth[ds[k].theta][n]*m_dph[ds[k].phi][n];
      }
    }
  }

  double kernel_series( const JacobiParams& p, double t, double theta, double phi, DerivOrder d )
  {
    check_point(t,theta,phi);
    check_order(d);
    return SeriesSampler(p,theta,phi,t,d.theta,d.phi,d.t).eval(t,d);
  }

  // ---------------------------------------------------------------------------

  double f4_convergence_ratio( double t, double theta, double phi )
  {
    return std::cos(0.5*(theta-phi))/std::cosh(0.5*t);
  }

  namespace {

    // F4(a1,a2;b1,b2;x,y) for x,y >= 0 with sqrt(x)+sqrt(y) < 1. Each row m is
    // summed outward from its largest term (located from the quadratic whose
    // sign decides whether the n-ratio exceeds one), so rows whose leading
    // terms underflow are still summed correctly.
    double appell_f4( double a1, double a2, double b1, double b2, double x, double y )
    {
      const double lx = x > 0.0 ? std::log(x) : 0.0;
      const double ly = y > 0.0 ? std::log(y) : 0.0;
      const double lg_a1 = special::log_gamma(a1), lg_a2 = special::log_gamma(a2);
      const double lg_b1 = special::log_gamma(b1), lg_b2 = special::log_gamma(b2);
      auto logT = [&]( long m, long n ) {
        return special::log_gamma(a1+m+n) - lg_a1 + special::log_gamma(a2+m+n) - lg_a2
             - special::log_gamma(b1+m) + lg_b1 - special::log_gamma(b2+n) + lg_b2
             - special::log_gamma(m+1.0) - special::log_gamma(n+1.0)
             + (m ? m*lx : 0.0) + (n ? n*ly : 0.0);
      };
      long evaluated = 0;
      const long term_cap = 400000000L;
      constexpr double small = 1e-18;

      auto row_sum = [&]( long m ) -> double {
        if ( y == 0.0 )
          return std::exp(logT(m,0));
        auto r = [&]( long n ) { return (a1+m+n)*(a2+m+n)*y/((b2+n)*(n+1.0)); };
        // g(n) < 0  <=>  T(m,n+1) > T(m,n)
        const double qa = 1.0-y;
        const double qb = b2+1.0 - y*(2.0*m+a1+a2);
        const double qc = b2 - y*(m+a1)*(m+a2);
        const double disc = qb*qb - 4.0*qa*qc;
        double n1 = -1.0, n2 = -1.0;
        if ( disc > 0.0 ) {
          const double sq = std::sqrt(disc);
          n1 = (-qb - sq)/(2.0*qa);
          n2 = (-qb + sq)/(2.0*qa);
        }
        const long peak = n2 > 0.0 ? static_cast<long>(std::ceil(n2)) : 0;
        const double lp = logT(m,peak);
        double s = 1.0, term = 1.0;
        for ( long n = peak; ; ++n ) {
          term *= r(n);
          s += term;
          ++evaluated;
          if ( term < small*s )
            break;
        }
        long nlow = peak;
        term = 1.0;
        for ( long n = peak-1; n >= 0; --n ) {
          term /= r(n);
          s += term;
          ++evaluated;
          nlow = n;
          if ( term < small*s )
            break;
        }
        // a second local maximum at n = 0 when 0 < n1 < n2
        if ( nlow > 0 && n1 > 0.0 && qc > 0.0 ) {
          double t0 = std::exp(logT(m,0) - lp);
          if ( t0*(n1+1.0) >= small*s ) {
            for ( long n = 0; n < nlow; ++n ) {
              s += t0;
              ++evaluated;
              t0 *= r(n);
              if ( t0 < small*s && r(n) < 1.0 )
                break;
            }
          }
        }
        if ( evaluated > term_cap )
          throw ConvergenceError("F4 series: term cap exceeded");
        return std::exp(lp)*s;
      };

      double total = 0.0, prev = 0.0;
      for ( long m = 0; ; ++m ) {
        if ( x == 0.0 && m > 0 )
          break;
        const double row = row_sum(m);
        total += row;
        if ( m >= 1 && row < 1e-17*total && row <= prev )
          break;
        prev = row;
      }
      return total;
    }

  }

  double h_script_f4( const JacobiParams& p, double t, double theta, double phi )
  {
    check_point(t,theta,phi);
    const double ratio = f4_convergence_ratio(t,theta,phi);
    if ( ratio > 1.0 - 1e-4 )
      throw ConvergenceError("F4 series converges too slowly (ratio " + std::to_string(ratio)
                             + ") at " + fmt_point(t,theta,phi));
    const double ch = std::cosh(0.5*t);
    const double x = std::pow(hs(0,theta)*hs(0,phi)/ch,2);
    const double y = std::pow(hc(0,theta)*hc(0,phi)/ch,2);
    const double pw = p.alpha() + p.beta() + 2.0;
    const double F = appell_f4(0.5*pw,0.5*(pw+1.0),p.alpha()+1.0,p.beta()+1.0,x,y);
    return p.c_ab()*std::sinh(0.5*t)*std::pow(ch,-pw)*F;
  }

  // ---------------------------------------------------------------------------

  namespace {

    struct DimRule {
      FoldedRule rule;
      double odd_sign;  // factor for the reflected node -u
      int order;        // 0 or 1 derivatives in this variable
    };

    std::vector<DimRule> dimension_rules( double a, double width, int npp )
    {
      const std::vector<double> br = graded_breakpoints(width);
      std::vector<DimRule> out;
      if ( a > -0.5 ) {
        out.push_back({folded_measure_rule(a,PiKind::Density,br,npp),1.0,0});
      } else if ( a == -0.5 ) {
        out.push_back({folded_measure_rule(a,PiKind::Atomic,br,npp),1.0,0});
      } else {
        out.push_back({folded_measure_rule(a,PiKind::Profile,br,npp),-1.0,1});
        out.push_back({folded_measure_rule(-0.5,PiKind::Atomic,br,npp),1.0,0});
      }
      return out;
    }

    double panel_width( double gap, double scale )
    {
      return scale > 0.0 ? gap/scale : 1.0;
    }

    struct TermSums {
      int K, R;
      std::vector<double> value, l1;
    };

    std::vector<TermSums> integral_pass( const JacobiParams& p, double t, double theta, double phi,
                                         const std::vector<DerivOrder>& orders, int npp )
    {
      const double gap = corner_gap(t,theta,phi);
      const double A = hs(0,theta)*hs(0,phi), B = hc(0,theta)*hc(0,phi);
      const auto ud = dimension_rules(p.alpha(),panel_width(gap,A),npp);
      const auto vd = dimension_rules(p.beta(),panel_width(gap,B),npp);
      const std::size_t no = orders.size();
      std::vector<TermSums> res;
      std::vector<double> out(no);
      for ( const auto& du : ud )
        for ( const auto& dv : vd ) {
          TermSums ts{du.order,dv.order,std::vector<double>(no,0.0),std::vector<double>(no,0.0)};
          const PsiEvaluator ev(p,t,theta,phi,du.order,dv.order,orders);
          const FoldedRule& ru = du.rule;
          const FoldedRule& rv = dv.rule;
          for ( std::size_t i = 0; i < ru.size(); ++i )
            for ( int su = 0; su < 2; ++su ) {
              const double uu = su ? -ru.u[i] : ru.u[i];
              const double cu = su ? 1.0+ru.u[i] : ru.c[i];
              const double wu = ru.w[i]*(su ? du.odd_sign : 1.0);
              for ( std::size_t j = 0; j < rv.size(); ++j )
                for ( int sv = 0; sv < 2; ++sv ) {
                  const double vv = sv ? -rv.u[j] : rv.u[j];
                  const double cv = sv ? 1.0+rv.u[j] : rv.c[j];
                  const double w = wu*rv.w[j]*(sv ? dv.odd_sign : 1.0);
                  ev.eval(uu,cu,vv,cv,out.data());
                  for ( std::size_t k = 0; k < no; ++k ) {
                    const double c = w*out[k];
                    ts.value[k] += c;
                    ts.l1[k] += std::fabs(c);
                  }
                }
            }
          res.push_back(std::move(ts));
        }
      return res;
    }

    bool passes_agree( const std::vector<TermSums>& a, const std::vector<TermSums>& b, double tol,
                       std::string* culprit )
    {
      for ( std::size_t i = 0; i < a.size(); ++i )
        for ( std::size_t k = 0; k < a[i].value.size(); ++k ) {
          const double scale = std::max(b[i].l1[k],DBL_MIN);
          if ( !(std::fabs(a[i].value[k]-b[i].value[k]) <= tol*scale) ) {
            if ( culprit )
              *culprit = "(K,R)=(" + std::to_string(a[i].K) + "," + std::to_string(a[i].R)
                         + ") double integral";
            return false;
          }
        }
      return true;
    }

    std::vector<TermSums> integral_verified( const JacobiParams& p, double t, double theta, double phi,
                                             const std::vector<DerivOrder>& orders,
                                             const IntegralOptions& opt )
    {
      check_point(t,theta,phi);
      for ( const auto& d : orders )
        check_order(d);
      auto a = integral_pass(p,t,theta,phi,orders,opt.nodes_per_panel);
      if ( !opt.verify )
        return a;
      std::string culprit;
      for ( int extra = 8; extra <= 16; extra += 8 ) {
        auto b = integral_pass(p,t,theta,phi,orders,opt.nodes_per_panel+extra);
        if ( passes_agree(a,b,opt.tol,&culprit) )
          return b;
        a = std::move(b);
      }
      throw ConvergenceError("integral method: " + culprit + " did not converge at "
                             + fmt_point(t,theta,phi));
    }

  }

  IntegralResult h_script_integral_terms( const JacobiParams& p, double t, double theta, double phi,
                                          DerivOrder d, const IntegralOptions& opt )
  {
    const auto sums = integral_verified(p,t,theta,phi,{d},opt);
    IntegralResult r;
    for ( const auto& s : sums ) {
      r.terms.push_back({s.K,s.R,s.value[0]});
      r.value += s.value[0];
    }
    return r;
  }

  double h_script_integral( const JacobiParams& p, double t, double theta, double phi,
                            DerivOrder d, const IntegralOptions& opt )
  {
    return h_script_integral_terms(p,t,theta,phi,d,opt).value;
  }

  std::vector<double> h_script_integral_bundle( const JacobiParams& p, double t, double theta,
                                                double phi, const std::vector<DerivOrder>& orders,
                                                const IntegralOptions& opt )
  {
    const auto sums = integral_verified(p,t,theta,phi,orders,opt);
    std::vector<double> v(orders.size(),0.0);
    for ( const auto& s : sums )
      for ( std::size_t k = 0; k < v.size(); ++k )
        v[k] += s.value[k];
    return v;
  }

  namespace {

    struct GeneralSums { double value, l1; };

    GeneralSums general_pass( const JacobiParams& p, double t, double theta, double phi, int npp )
    {
      const double gap = corner_gap(t,theta,phi);
      const double A = hs(0,theta)*hs(0,phi), B = hc(0,theta)*hc(0,phi);
      const FoldedRule ru = vanishing_rule(p.alpha(),graded_breakpoints(panel_width(gap,A)),npp);
      const FoldedRule rv = vanishing_rule(p.beta(),graded_breakpoints(panel_width(gap,B)),npp);
      const PsiEvaluator ev(p,t,theta,phi,0,0,{DerivOrder{}});
      auto psiE = [&]( double u, double cu, double v, double cv ) {
        double a, b, c, d;
        ev.eval(u,cu,v,cv,&a);
        ev.eval(-u,1.0+u,v,cv,&b);
        ev.eval(u,cu,-v,1.0+v,&c);
        ev.eval(-u,1.0+u,-v,1.0+v,&d);
        return 0.25*(a+b+c+d);
      };
      const double e11 = psiE(1.0,0.0,1.0,0.0);
      std::vector<double> eu(ru.size()), ev1(rv.size());
      for ( std::size_t i = 0; i < ru.size(); ++i )
        eu[i] = psiE(ru.u[i],ru.c[i],1.0,0.0);
      for ( std::size_t j = 0; j < rv.size(); ++j )
        ev1[j] = psiE(1.0,0.0,rv.u[j],rv.c[j]);
      double s = e11, l1 = std::fabs(e11);
      for ( std::size_t i = 0; i < ru.size(); ++i ) {
        const double c = 2.0*ru.w[i]*(eu[i]-e11);
        s += c;
        l1 += std::fabs(c);
        for ( std::size_t j = 0; j < rv.size(); ++j ) {
          const double cc = 4.0*ru.w[i]*rv.w[j]
                            *(psiE(ru.u[i],ru.c[i],rv.u[j],rv.c[j]) - eu[i] - ev1[j] + e11);
          s += cc;
          l1 += std::fabs(cc);
        }
      }
      for ( std::size_t j = 0; j < rv.size(); ++j ) {
        const double c = 2.0*rv.w[j]*(ev1[j]-e11);
        s += c;
        l1 += std::fabs(c);
      }
      return {s,l1};
    }

  }

  double h_script_general( const JacobiParams& p, double t, double theta, double phi,
                           const IntegralOptions& opt )
  {
    check_point(t,theta,phi);
    GeneralSums a = general_pass(p,t,theta,phi,opt.nodes_per_panel);
    if ( !opt.verify )
      return a.value;
    for ( int extra = 8; extra <= 16; extra += 8 ) {
      const GeneralSums b = general_pass(p,t,theta,phi,opt.nodes_per_panel+extra);
      if ( std::fabs(a.value-b.value) <= opt.tol*std::max(b.l1,DBL_MIN) ) {
        // rounding in the sum alone costs about eps * l1; beyond this
        // ratio fewer than five digits survive
        if ( b.l1 > 1e11*std::fabs(b.value) )
          throw ConvergenceError("general method: cancellation in the symmetrised integral at "
                                 + fmt_point(t,theta,phi));
        return b.value;
      }
      a = b;
    }
    throw ConvergenceError("general method: symmetrised double integral did not converge at "
                           + fmt_point(t,theta,phi));
  }

  // ---------------------------------------------------------------------------

  double jph_correction( const JacobiParams& p, double t, int M )
  {
    if ( !(p.alpha() + p.beta() < -1.0) )
      return 0.0;
    const double lam = p.lambda();
    const double h = 0.5*lam;
    const double core = (M % 2 == 0) ? std::sinh(h*t) : std::cosh(h*t);
    return std::pow(2.0,lam+1.0)*p.c_ab()*std::pow(h,M)*core;
  }

  Method auto_method( const JacobiParams&, const KernelQuery& q )
  {
    if ( q.t >= 0.2 )
      return Method::Series;
    if ( q.deriv.total() == 0 && f4_convergence_ratio(q.t,q.theta,q.phi) <= 0.9 )
      return Method::F4;
    return Method::Integral;
  }

  double kernel_eval( const JacobiParams& p, const KernelQuery& q )
  {
    check_point(q.t,q.theta,q.phi);
    check_order(q.deriv);
    Method m = q.method;
    if ( m == Method::Auto )
      m = auto_method(p,q);
    if ( (m == Method::F4 || m == Method::General) && q.deriv.total() != 0 )
      throw InvalidArgument(std::string(method_name(m)) + " method evaluates values only (no derivatives)");
    const double corr = (q.deriv.theta == 0 && q.deriv.phi == 0) ? jph_correction(p,q.t,q.deriv.t) : 0.0;
    switch ( m ) {
    case Method::Series:
      return kernel_series(p,q.t,q.theta,q.phi,q.deriv);
    case Method::F4:
      return h_script_f4(p,q.t,q.theta,q.phi) + corr;
    case Method::Integral:
      return h_script_integral(p,q.t,q.theta,q.phi,q.deriv) + corr;
    case Method::General:
      return h_script_general(p,q.t,q.theta,q.phi) + corr;
    default:
      throw InvalidArgument("unknown method");
    }
  }

  double closed_form_chebyshev( double t, double theta, double phi )
  {
    if ( !(t > 0.0) )
      throw DomainError("closed_form_chebyshev: t must be positive");
    const double r = std::exp(-t);
    const double omr = -std::expm1(-t);
    auto S = [&]( double x ) {
      const double s = std::sin(0.5*x);
      const double den = omr*omr + 4.0*r*s*s;
      return (r*std::cos(x) - r*r)/den;
    };
    return (1.0 + S(theta-phi) + S(theta+phi))/pi;
  }

}
