#include <orbitforge/spectrum.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitforge
{

spectrum spectrum::unit()
{
  spectrum s( 0 );
  s.add( 0, 0, 1 );
  return s;
}

void spectrum::add( int p, int q, big_int const& c )
{
  if ( p < 0 || q < 0 || p + q > degree_ )
  {
    throw std::invalid_argument( "spectrum::add: key outside degree " + std::to_string( degree_ ) );
  }
  if ( sgn( c ) == 0 )
  {
    return;
  }
  auto& slot = terms_[{ p, q }];
  slot += c;
  if ( sgn( slot ) == 0 )
  {
    terms_.erase( { p, q } );
  }
}

big_int spectrum::coeff( orbit_key const& k ) const
{
  if ( k.n() != degree_ )
  {
    throw std::invalid_argument( "spectrum::coeff: key has n = " + std::to_string( k.n() ) + " but degree is " +
                                 std::to_string( degree_ ) );
  }
  auto const it = terms_.find( { k.p, k.q } );
  return it == terms_.end() ? big_int( 0 ) : it->second;
}

big_int spectrum::total_mass() const
{
  big_int total = 0;
  for ( auto const& [key, c] : terms_ )
  {
    total += c;
  }
  return total;
}

spectrum block_spectrum( block_kind k )
{
  spectrum s( block_arity( k ) );
  switch ( k )
  {
  case block_kind::id2:
    s.add( 1, 0, 1 );
    break;
  case block_kind::id1:
    s.add( 0, 1, 2 );
    break;
  case block_kind::id0:
    s.add( 0, 0, 1 );
    break;
  case block_kind::nand:
    s.add( 0, 1, 2 );
    s.add( 0, 0, 1 );
    break;
  case block_kind::matching:
    s.add( 2, 0, 1 );
    s.add( 0, 2, 2 );
    s.add( 0, 0, 1 );
    break;
  case block_kind::two_imp:
    s.add( 2, 0, 1 );
    s.add( 0, 2, 1 );
    s.add( 0, 1, 2 );
    s.add( 0, 0, 1 );
    break;
  }
  return s;
}

spectrum mul( spectrum const& a, spectrum const& b )
{
  spectrum out( a.degree() + b.degree() );
  for ( auto const& [ka, ca] : a.terms() )
  {
    for ( auto const& [kb, cb] : b.terms() )
    {
      out.add( ka.first + kb.first, ka.second + kb.second, ca * cb );
    }
  }
  return out;
}

spectrum power( spectrum const& s, long e )
{
  if ( e < 0 )
  {
    throw std::invalid_argument( "power: negative exponent" );
  }
  auto result = spectrum::unit();
  auto base = s;
  while ( e > 0 )
  {
    if ( e & 1 )
    {
      result = mul( result, base );
    }
    e >>= 1;
    if ( e > 0 )
    {
      base = mul( base, base );
    }
  }
  return result;
}

spectrum composition_spectrum( composition const& c )
{
  auto result = spectrum::unit();
  for ( auto k : all_block_kinds )
  {
    if ( c[k] < 0 )
    {
      throw std::invalid_argument( "composition_spectrum: negative block count" );
    }
    if ( c[k] > 0 )
    {
      result = mul( result, power( block_spectrum( k ), c[k] ) );
    }
  }
  return result;
}

spectrum from_census( orbit_census const& census, int degree )
{
  spectrum s( degree );
  for ( auto const& [k, c] : census )
  {
    if ( k.n() != degree )
    {
      throw std::invalid_argument( "from_census: key of wrong degree" );
    }
    s.add( k.p, k.q, c );
  }
  return s;
}

namespace
{

using series = std::vector<big_int>;

// g *= (1 + 2v^2), truncated to g.size()
void times_one_plus_two_v2( series& g )
{
  for ( auto m = g.size(); m-- > 2; )
  {
    mpz_addmul_ui( g[m].get_mpz_t(), g[m - 2].get_mpz_t(), 2 );
  }
}

// g *= (1 + v)
void times_one_plus_v( series& g )
{
  for ( auto m = g.size(); m-- > 1; )
  {
    g[m] += g[m - 1];
  }
}

// g *= (1 + 2v)
void times_one_plus_two_v( series& g )
{
  for ( auto m = g.size(); m-- > 1; )
  {
    mpz_addmul_ui( g[m].get_mpz_t(), g[m - 1].get_mpz_t(), 2 );
  }
}

// g /= (1 + v)^2, exact as power series
void div_one_plus_v_sq( series& g )
{
  for ( std::size_t m = 1; m < g.size(); ++m )
  {
    mpz_submul_ui( g[m].get_mpz_t(), g[m - 1].get_mpz_t(), 2 );
    if ( m >= 2 )
    {
      g[m] -= g[m - 2];
    }
  }
}

/* [u^k v^q] (u + 1 + 2v^2)^A (u + (1+v)^2)^B (1 + 2v)^N */
big_int core_coefficient( long a, long b, long nand, long k, long q )
{
  auto const j_lo = std::max( 0L, k - a );
  auto const j_hi = std::min( b, k );
  if ( j_lo > j_hi )
  {
    return 0;
  }
  series g( static_cast<std::size_t>( q + 1 ), big_int( 0 ) );
  g[0] = 1;
  for ( long i = 0; i < a - k + j_lo; ++i )
  {
    times_one_plus_two_v2( g );
  }
  for ( long i = 0; i < 2 * ( b - j_lo ); ++i )
  {
    times_one_plus_v( g );
  }
  for ( long i = 0; i < nand; ++i )
  {
    times_one_plus_two_v( g );
  }
  big_int total = 0;
  for ( auto j = j_lo;; ++j )
  {
    total += binomial( b, j ) * binomial( a, k - j ) * g[q];
    if ( j == j_hi )
    {
      break;
    }
    times_one_plus_two_v2( g );
    div_one_plus_v_sq( g );
  }
  return total;
}

} // namespace

big_int coeff_fast( composition const& c, orbit_key const& k )
{
  for ( auto kind : all_block_kinds )
  {
    if ( c[kind] < 0 )
    {
      throw std::invalid_argument( "coeff_fast: negative block count" );
    }
  }
  if ( k.p < 0 || k.q < 0 || k.r < 0 )
  {
    throw std::invalid_argument( "coeff_fast: invalid orbit key" );
  }
  if ( c.n_coords() != k.n() )
  {
    throw std::invalid_argument( "coeff_fast: composition covers " + std::to_string( c.n_coords() ) +
                                 " coordinates but key has n = " + std::to_string( k.n() ) );
  }
  long const p = k.p - c[block_kind::id2];
  long const q = k.q - c[block_kind::id1];
  long const r = k.r - c[block_kind::id0];
  if ( p < 0 || q < 0 || r < 0 || p % 2 != 0 )
  {
    return 0;
  }
  auto const core = core_coefficient( c[block_kind::matching], c[block_kind::two_imp], c[block_kind::nand], p / 2, q );
  return core * pow2( static_cast<unsigned long>( c[block_kind::id1] ) );
}

big_int coeff_fast( spectrum_family family, long a, long b, long c_half, orbit_key const& k )
{
  if ( ( family == spectrum_family::two_imp_nand && a != 0 ) || ( family == spectrum_family::matching_nand && b != 0 ) )
  {
    throw std::invalid_argument( "coeff_fast: parameters outside the requested family" );
  }
  composition c;
  c[block_kind::matching] = a;
  c[block_kind::two_imp] = b;
  c[block_kind::nand] = 2 * c_half;
  return coeff_fast( c, k );
}

} // namespace orbitforge
