#include <orbitforge/asymptotics.hpp>
#include <orbitforge/spectrum.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace orbitforge
{

long double entropy( long double x )
{
  if ( !( x >= 0.0L && x <= 1.0L ) )
  {
    throw std::domain_error( "entropy: argument must lie in [0, 1]" );
  }
  if ( x == 0.0L || x == 1.0L )
  {
    return 0.0L;
  }
  return -x * std::log2( x ) - ( 1.0L - x ) * std::log2( 1.0L - x );
}

binomial_bound binomial_bounds( unsigned long m, unsigned long k )
{
  if ( k > m )
  {
    throw std::invalid_argument( "binomial_bounds: need k <= m" );
  }
  binomial_bound b;
  b.log2_upper = m == 0 ? 0.0L : static_cast<long double>( m ) * entropy( static_cast<long double>( k ) / m );
  b.log2_lower = b.log2_upper - std::log2( static_cast<long double>( m + 1 ) );
  return b;
}

namespace
{

big_int ipow( unsigned long base, unsigned long e )
{
  big_int out;
  mpz_ui_pow_ui( out.get_mpz_t(), base, e );
  return out;
}

} // namespace

bool binomial_sandwich_holds( unsigned long m, unsigned long k )
{
  if ( k > m )
  {
    throw std::invalid_argument( "binomial_sandwich_holds: need k <= m" );
  }
  // 0^0 = 1, which mpz_ui_pow_ui also returns
  big_int const scaled = binomial( m, k ) * ipow( k, k ) * ipow( m - k, m - k );
  auto const top = ipow( m, m );
  return scaled <= top && ( m + 1 ) * scaled >= top;
}

bool half_binomial_inequality_holds( unsigned long m, unsigned long k )
{
  if ( m % 2 != 0 || k % 2 != 0 || k > m )
  {
    throw std::invalid_argument( "half_binomial_inequality_holds: need even k <= even m" );
  }
  auto const half = binomial( m / 2, k / 2 );
  big_int const factor = m / 2 + 1;
  return binomial( m, k ) <= factor * factor * half * half;
}

template<typename Scalar>
Scalar h_value( saddle_params<Scalar> const& s, Scalar u, Scalar v )
{
  using std::log;
  Scalar const m = u + 1 + 2 * v * v, t = u + ( 1 + v ) * ( 1 + v ), w = 1 + 2 * v;
  Scalar out = s.a * log( m ) + s.b * log( t ) + 2 * s.c * log( w ) - s.p / 2 * log( u );
  if ( s.q != 0 )
  {
    out -= s.q * log( v );
  }
  return out;
}

template<typename Scalar>
Eigen::Matrix<Scalar, 2, 1> h_gradient( saddle_params<Scalar> const& s, Scalar u, Scalar v )
{
  Scalar const m = u + 1 + 2 * v * v, t = u + ( 1 + v ) * ( 1 + v ), w = 1 + 2 * v;
  Eigen::Matrix<Scalar, 2, 1> g;
  g( 0 ) = s.a / m + s.b / t - s.p / ( 2 * u );
  g( 1 ) = 4 * s.a * v / m + 2 * s.b * ( 1 + v ) / t + 4 * s.c / w - s.q / v;
  return g;
}

template<typename Scalar>
Eigen::Matrix<Scalar, 2, 2> hessian_h( saddle_params<Scalar> const& s, Scalar u, Scalar v )
{
  Scalar const m = u + 1 + 2 * v * v, t = u + ( 1 + v ) * ( 1 + v ), w = 1 + 2 * v;
  Eigen::Matrix<Scalar, 2, 2> h;
  h( 0, 0 ) = -s.a / ( m * m ) - s.b / ( t * t ) + s.p / 2 / ( u * u );
  h( 0, 1 ) = -4 * s.a * v / ( m * m ) - 2 * s.b * ( 1 + v ) / ( t * t );
  h( 1, 0 ) = h( 0, 1 );
  h( 1, 1 ) = s.a * ( 4 / m - 16 * v * v / ( m * m ) ) + s.b * ( 2 / t - 4 * ( 1 + v ) * ( 1 + v ) / ( t * t ) ) -
              8 * s.c / ( w * w ) + s.q / ( v * v );
  return h;
}

template<typename Scalar>
Scalar r4_cubic_root( saddle_params<Scalar> const& s )
{
  Scalar const a3 = 4 * s.r, a2 = 4 * s.a - 2 * s.p - 2 * s.q, a1 = 4 * s.c - 2 * s.q, a0 = -s.q;
  auto f = [&]( Scalar x ) { return ( ( a3 * x + a2 ) * x + a1 ) * x + a0; };
  auto df = [&]( Scalar x ) { return ( 3 * a3 * x + 2 * a2 ) * x + a1; };
  if ( s.q == 0 )
  {
    return Scalar( 0 );
  }
  if ( !( a3 > 0 ) )
  {
    throw std::domain_error( "r4_cubic_root: needs r > 0" );
  }
  Scalar lo = 0, hi = 1;
  for ( int i = 0; f( hi ) < 0; ++i )
  {
    if ( i > 200 )
    {
      throw std::domain_error( "r4_cubic_root: could not bracket the root" );
    }
    lo = hi;
    hi *= 2;
  }
  while ( hi - lo > Scalar( 1e-12 ) * std::max( Scalar( 1 ), hi ) )
  {
    auto const mid = ( lo + hi ) / 2;
    ( f( mid ) < 0 ? lo : hi ) = mid;
  }
  Scalar x = ( lo + hi ) / 2;
  for ( int i = 0; i < 2; ++i )
  {
    if ( auto const d = df( x ); d != 0 )
    {
      x -= f( x ) / d;
    }
  }
  return x;
}

namespace
{

template<typename Scalar>
Scalar residual_of( saddle_params<Scalar> const& s, Scalar u, Scalar v )
{
  using std::abs;
  auto const g = h_gradient( s, u, v );
  return ( abs( u * g( 0 ) ) + ( s.q == 0 ? Scalar( 0 ) : abs( v * g( 1 ) ) ) ) / s.n();
}

} // namespace

template<typename Scalar>
saddle_point<Scalar> critical_point( saddle_family family, saddle_params<Scalar> const& s )
{
  using std::sqrt;
  if ( s.p <= 0 || s.q <= 0 || s.r < 0 || s.a < 0 || s.b < 0 || s.c < 0 )
  {
    throw std::domain_error( "critical_point: needs p > 0, q > 0 and non-negative parameters" );
  }
  saddle_point<Scalar> sp;
  sp.family = family;
  sp.params = s;
  switch ( family )
  {
  case saddle_family::r1:
  {
    Scalar u = 16, v = 2;
    for ( int i = 0; i < 50 && residual_of( s, u, v ) > Scalar( 1e-15 ); ++i )
    {
      Eigen::Matrix<Scalar, 2, 1> const step = hessian_h( s, u, v ).inverse() * h_gradient( s, u, v );
      Scalar damp = 1;
      while ( ( u - damp * step( 0 ) <= 0 || v - damp * step( 1 ) <= 0 ) && damp > Scalar( 1e-6 ) )
      {
        damp /= 2;
      }
      u -= damp * step( 0 );
      v -= damp * step( 1 );
    }
    sp.u0 = u;
    sp.v0 = v;
    break;
  }
  case saddle_family::r3:
  {
    if ( s.a != 0 || !( s.r > 0 ) || !( 2 * s.b > s.p ) )
    {
      throw std::domain_error( "critical_point: region-3 family needs A = 0, r > 0 and 2B > p" );
    }
    auto const beta = 4 * s.c + ( 2 * s.b - s.p ) - 3 * s.q;
    sp.v0 = ( -beta + sqrt( beta * beta + 8 * s.r * s.q ) ) / ( 4 * s.r );
    sp.u0 = s.p * ( sp.v0 + 1 ) * ( sp.v0 + 1 ) / ( 2 * s.b - s.p );
    break;
  }
  case saddle_family::r4:
  {
    if ( s.b != 0 || !( 2 * s.a > s.p ) )
    {
      throw std::domain_error( "critical_point: region-4 family needs B = 0 and 2A > p" );
    }
    sp.v0 = r4_cubic_root( s );
    sp.u0 = s.p * ( 2 * sp.v0 * sp.v0 + 1 ) / ( 2 * s.a - s.p );
    break;
  }
  }
  using std::log;
  Scalar const m = sp.u0 + 1 + 2 * sp.v0 * sp.v0, t = sp.u0 + ( 1 + sp.v0 ) * ( 1 + sp.v0 ), w = 1 + 2 * sp.v0;
  sp.log_f = s.a * log( m ) + s.b * log( t ) + 2 * s.c * log( w );
  sp.hessian = hessian_h( s, sp.u0, sp.v0 );
  sp.hessian_det = sp.hessian.determinant();
  sp.residual = residual_of( s, sp.u0, sp.v0 );
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, 2, 2>> eig( sp.hessian, Eigen::EigenvaluesOnly );
  if ( eig.info() != Eigen::Success || !( eig.eigenvalues().minCoeff() > 0 ) )
  {
    throw std::domain_error( "critical_point: Hessian is not positive definite" );
  }
  return sp;
}

template<typename Scalar>
Scalar saddle_log2_estimate( saddle_point<Scalar> const& sp )
{
  using std::log;
  if ( !( sp.hessian_det > 0 ) )
  {
    throw std::domain_error( "saddle_log2_estimate: Hessian determinant must be positive" );
  }
  auto const k = sp.params.p / 2;
  Scalar const two_pi = 2 * std::numbers::pi_v<Scalar>;
  auto const ln_est = sp.log_f - log( two_pi ) - ( k + 1 ) * log( sp.u0 ) - ( sp.params.q + 1 ) * log( sp.v0 ) -
                      log( sp.hessian_det ) / 2;
  return ln_est / std::numbers::ln2_v<Scalar>;
}

saddle_check saddle_estimate( saddle_family family, long a, long b, long c, long p, long q, long r )
{
  if ( 2 * a + 2 * b + 2 * c != p + q + r )
  {
    throw std::invalid_argument( "saddle_estimate: 2A + 2B + 2C must equal p + q + r" );
  }
  saddle_params<long double> s{ static_cast<long double>( a ), static_cast<long double>( b ),
                                static_cast<long double>( c ), static_cast<long double>( p ),
                                static_cast<long double>( q ), static_cast<long double>( r ) };
  saddle_check out;
  out.point = critical_point( family, s );
  out.log2_estimate = saddle_log2_estimate( out.point );
  composition comp;
  comp[block_kind::matching] = a;
  comp[block_kind::two_imp] = b;
  comp[block_kind::nand] = 2 * c;
  auto const exact = coeff_fast( comp, { static_cast<int>( p ), static_cast<int>( q ), static_cast<int>( r ) } );
  if ( sgn( exact ) == 0 )
  {
    throw std::domain_error( "saddle_estimate: exact coefficient is zero" );
  }
  out.log2_exact = log2_big( exact );
  out.relative_error = std::fabs( std::exp2( out.log2_estimate - out.log2_exact ) - 1.0L );
  return out;
}

namespace
{

template<typename Scalar>
Scalar xlog2x( Scalar x )
{
  return x <= 0 ? Scalar( 0 ) : x * std::log2( x );
}

} // namespace

template<typename Scalar>
Scalar objective_t3( objective_params<Scalar> const& o )
{
  using std::log2;
  using std::sqrt;
  auto const p = o.p_hat, r = o.r_hat, q = o.q_hat(), b = o.block, c = o.c_hat;
  if ( !( r > 0 ) || !( 2 * b > p ) || q < 0 )
  {
    throw std::domain_error( "objective_t3: needs r > 0, q >= 0 and 2B > p" );
  }
  auto const beta = 4 * c + ( 2 * b - p ) - 3 * q;
  auto const v = ( -beta + sqrt( beta * beta + 8 * r * q ) ) / ( 4 * r );
  Scalar t = -xlog2x( p ) - xlog2x( q ) - xlog2x( r ) + q;
  if ( q > 0 )
  {
    t += q * log2( v );
  }
  t += -2 * c * log2( 2 * v + 1 ) - ( 2 * b - p ) * log2( v + 1 ) + xlog2x( 2 * b - p ) / 2 + xlog2x( p ) / 2 -
       b * log2( 2 * b );
  return t;
}

template<typename Scalar>
Scalar objective_t4( objective_params<Scalar> const& o )
{
  using std::log2;
  auto const p = o.p_hat, r = o.r_hat, q = o.q_hat(), a = o.block, c = o.c_hat;
  if ( !( 2 * a > p ) || q < 0 || !( p > 0 ) )
  {
    throw std::domain_error( "objective_t4: needs p > 0, q >= 0 and 2A > p" );
  }
  saddle_params<Scalar> s;
  s.a = a;
  s.c = c;
  s.p = p;
  s.q = q;
  s.r = r;
  auto const v = r4_cubic_root( s );
  auto const u = p * ( 2 * v * v + 1 ) / ( 2 * a - p );
  Scalar t = -xlog2x( p ) - xlog2x( q ) - xlog2x( r ) + q - 2 * c * log2( 2 * v + 1 ) - a * log2( u + 2 * v * v + 1 ) +
             p / 2 * log2( u );
  if ( q > 0 )
  {
    t += q * log2( v );
  }
  return t;
}

bool objective_feasible( int region, long double p, long double r )
{
  // tiny slack so grid points on the boundary lines are not lost to rounding
  constexpr long double eps = 1e-12L;
  if ( p < 0.25L - eps || p > 0.64L + eps || r < -eps || p + r > 1.0L + eps )
  {
    return false;
  }
  if ( region == 3 )
  {
    return r > 0 && 1.25L - 25.0L / 32 * p - 6.25L * r <= eps;
  }
  if ( region == 4 )
  {
    return r >= 0.05L - eps && -1.25L + 25.0L / 16 * p + 6.25L * r <= eps;
  }
  throw std::invalid_argument( "objective region must be 3 or 4" );
}

std::pair<long double, long double> objective_T( int region, long double p_hat, long double r_hat )
{
  if ( !objective_feasible( region, p_hat, r_hat ) )
  {
    throw std::domain_error( "objective_T: (p_hat, r_hat) outside the region " + std::to_string( region ) +
                             " constraints" );
  }
  auto const q_hat = std::max( 0.0L, 1.0L - p_hat - r_hat );
  r_hat = 1.0L - p_hat - q_hat;
  if ( region == 3 )
  {
    return { objective_t3<long double>( { p_hat, r_hat, 0.34L, 0.16L } ),
             objective_t3<long double>( { p_hat, r_hat, 0.465L, 0.035L } ) };
  }
  return { objective_t4<long double>( { p_hat, r_hat, 0.34L, 0.16L } ),
           objective_t4<long double>( { p_hat, r_hat, 0.355L, 0.145L } ) };
}

optimize_result maximize_min_T( int region, long double grid_step, int refine_iters )
{
  if ( !( grid_step > 0 ) )
  {
    throw std::invalid_argument( "maximize_min_T: grid step must be positive" );
  }
  if ( region != 3 && region != 4 )
  {
    throw std::invalid_argument( "maximize_min_T: region must be 3 or 4" );
  }
  optimize_result res;
  res.region = region;
  res.grid_step = grid_step;
  res.bound = region == 3 ? 0.841L : 0.845L;
  res.observed_max = -INFINITY;
  auto value = [&]( long double p, long double r ) {
    ++res.evaluations;
    auto const [t1, t2] = objective_T( region, p, r );
    return std::min( t1, t2 );
  };
  auto const steps = static_cast<long>( std::llround( 1.0L / grid_step ) );
  for ( long i = 0; i <= steps; ++i )
  {
    auto const p = i * grid_step;
    if ( p < 0.25L - 1e-12L || p > 0.64L + 1e-12L )
    {
      continue;
    }
    for ( long j = 0; j <= steps; ++j )
    {
      auto const r = j * grid_step;
      if ( !objective_feasible( region, p, r ) )
      {
        continue;
      }
      auto const v = value( p, r );
      if ( v > res.observed_max )
      {
        res.observed_max = v;
        res.p_hat = p;
        res.r_hat = r;
      }
    }
  }
  // coordinate search around the grid maximum with a shrinking step
  auto h = grid_step;
  for ( int it = 0; it < refine_iters; ++it )
  {
    bool moved = false;
    for ( auto [dp, dr] : { std::pair{ 1, 0 }, std::pair{ -1, 0 }, std::pair{ 0, 1 }, std::pair{ 0, -1 } } )
    {
      auto const p = res.p_hat + dp * h, r = res.r_hat + dr * h;
      if ( !objective_feasible( region, p, r ) )
      {
        continue;
      }
      if ( auto const v = value( p, r ); v > res.observed_max )
      {
        res.observed_max = v;
        res.p_hat = p;
        res.r_hat = r;
        moved = true;
      }
    }
    if ( !moved )
    {
      h /= 2;
    }
  }
  return res;
}

namespace
{
constexpr long double region5_a = 0.355L;
}

long double region5_g( long double y )
{
  if ( !( y > 0 && y <= 0.64L ) )
  {
    throw std::domain_error( "region5_g: y must lie in (0, 0.64]" );
  }
  return entropy( y ) + entropy( 0.05L ) / 20 + region5_a - y / 2 - region5_a * entropy( y / ( 2 * region5_a ) );
}

long double region5_g_prime( long double y )
{
  if ( !( y > 0 && y <= 0.64L ) )
  {
    throw std::domain_error( "region5_g_prime: y must lie in (0, 0.64]" );
  }
  return std::log2( ( 1 - y ) / std::sqrt( 2 * y * ( 2 * region5_a - y ) ) );
}

region5_report region5_check( std::size_t grid_points )
{
  region5_report rep;
  rep.grid_points = grid_points;
  rep.g_at_end = region5_g( 0.64L );
  rep.min_derivative = INFINITY;
  for ( std::size_t i = 1; i <= grid_points; ++i )
  {
    auto const y = 0.64L * static_cast<long double>( i ) / static_cast<long double>( grid_points );
    rep.min_derivative = std::min( rep.min_derivative, region5_g_prime( y ) );
  }
  big_rational const a( 355, 1000 );
  big_rational const lin = 4 * a + 2;
  rep.discriminant = lin * lin - 12;
  rep.discriminant.canonicalize();
  rep.passed = rep.g_at_end <= 0.828L && rep.min_derivative > 0 && sgn( rep.discriminant ) < 0;
  return rep;
}

region6_report region6_bound( unsigned long n, unsigned long p )
{
  if ( n == 0 || 4 * p > n )
  {
    throw std::domain_error( "region6_bound: needs n > 0 and p <= n/4" );
  }
  region6_report rep;
  rep.exponent = log2_big( binomial( n, p ) ) / static_cast<long double>( n );
  rep.entropy_quarter = entropy( 0.25L );
  rep.passed = rep.exponent <= rep.entropy_quarter;
  return rep;
}

template double h_value( saddle_params<double> const&, double, double );
template long double h_value( saddle_params<long double> const&, long double, long double );
template Eigen::Matrix<double, 2, 1> h_gradient( saddle_params<double> const&, double, double );
template Eigen::Matrix<long double, 2, 1> h_gradient( saddle_params<long double> const&, long double, long double );
template Eigen::Matrix<double, 2, 2> hessian_h( saddle_params<double> const&, double, double );
template Eigen::Matrix<long double, 2, 2> hessian_h( saddle_params<long double> const&, long double, long double );
template double r4_cubic_root( saddle_params<double> const& );
template long double r4_cubic_root( saddle_params<long double> const& );
template saddle_point<double> critical_point( saddle_family, saddle_params<double> const& );
template saddle_point<long double> critical_point( saddle_family, saddle_params<long double> const& );
template double saddle_log2_estimate( saddle_point<double> const& );
template long double saddle_log2_estimate( saddle_point<long double> const& );
template double objective_t3( objective_params<double> const& );
template long double objective_t3( objective_params<long double> const& );
template double objective_t4( objective_params<double> const& );
template long double objective_t4( objective_params<long double> const& );

} // namespace orbitforge
