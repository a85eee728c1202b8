#include <orbitforge/boolfn.hpp>

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace orbitforge
{

namespace
{

constexpr std::uint64_t even_bits = 0x5555555555555555ull;

std::uint64_t coordinate_mask( int n )
{
  return n >= 32 ? ~0ull : ( ( 1ull << ( 2 * n ) ) - 1 );
}

} // namespace

assignment::assignment( int n, std::uint64_t word ) : n_( n ), word_( word )
{
  if ( n < 1 || n > max_packed_coords )
  {
    throw std::invalid_argument( "assignment: n must be in [1, 32], got " + std::to_string( n ) );
  }
  if ( ( word & ~coordinate_mask( n ) ) != 0 )
  {
    throw std::invalid_argument( "assignment: word has bits beyond 2n" );
  }
}

assignment assignment::from_strings( std::string_view x, std::string_view y )
{
  if ( x.size() != y.size() || x.empty() )
  {
    throw std::invalid_argument( "assignment: x and y must be non-empty and of equal length" );
  }
  std::uint64_t word = 0;
  for ( std::size_t i = 0; i < x.size(); ++i )
  {
    for ( auto [c, bit] : { std::pair{ x[i], 0 }, std::pair{ y[i], 1 } } )
    {
      if ( c != '0' && c != '1' )
      {
        throw std::invalid_argument( "assignment: bit strings may only hold 0 and 1" );
      }
      if ( c == '1' )
      {
        word |= 1ull << ( 2 * i + bit );
      }
    }
  }
  return assignment( static_cast<int>( x.size() ), word );
}

automorphism automorphism::identity( int n )
{
  automorphism g;
  g.coord_perm.resize( n );
  std::iota( g.coord_perm.begin(), g.coord_perm.end(), 0 );
  g.swap_bits.assign( n, false );
  return g;
}

int ip_parity_of_word( std::uint64_t word )
{
  return std::popcount( word & ( word >> 1 ) & even_bits ) & 1;
}

int ip_eval( assignment const& a, int complement )
{
  return ip_parity_of_word( a.word() ) ^ ( complement & 1 );
}

orbit_key key_of_word( std::uint64_t word, int n )
{
  auto const xs = word & even_bits;
  auto const ys = ( word >> 1 ) & even_bits;
  orbit_key k;
  k.p = std::popcount( xs & ys );
  k.q = std::popcount( xs ^ ys );
  k.r = n - k.p - k.q;
  return k;
}

orbit_key key_of( assignment const& a )
{
  return key_of_word( a.word(), a.n() );
}

big_int orbit_size( orbit_key const& k )
{
  if ( k.p < 0 || k.q < 0 || k.r < 0 )
  {
    throw std::invalid_argument( "orbit_size: negative orbit coordinate" );
  }
  auto const n = static_cast<unsigned long>( k.n() );
  return binomial( n, k.p ) * binomial( n - k.p, k.r ) * pow2( k.q );
}

std::vector<orbit_key> enumerate_orbits( int n )
{
  if ( n < 1 )
  {
    throw std::invalid_argument( "enumerate_orbits: n must be positive" );
  }
  std::vector<orbit_key> keys;
  keys.reserve( static_cast<std::size_t>( n + 1 ) * ( n + 2 ) / 2 );
  for ( int p = 0; p <= n; ++p )
  {
    for ( int q = 0; p + q <= n; ++q )
    {
      keys.push_back( { p, q, n - p - q } );
    }
  }
  return keys;
}

assignment canonical_representative( orbit_key const& k )
{
  std::uint64_t word = 0;
  int i = k.r;
  for ( int j = 0; j < k.q; ++j, ++i )
  {
    word |= 1ull << ( 2 * i + 1 );
  }
  for ( int j = 0; j < k.p; ++j, ++i )
  {
    word |= 3ull << ( 2 * i );
  }
  return assignment( k.n(), word );
}

std::vector<assignment> orbit_members( orbit_key const& k )
{
  auto const n = k.n();
  // coordinate states: 0 = (0,0), 1 = (1,0), 2 = (0,1), 3 = (1,1)
  std::vector<assignment> out;
  std::vector<int> state( n, 0 );
  auto rec = [&]( auto&& self, int i, int p, int q, int r, std::uint64_t word ) -> void {
    if ( i == n )
    {
      out.emplace_back( n, word );
      return;
    }
    if ( r > 0 )
    {
      self( self, i + 1, p, q, r - 1, word );
    }
    if ( q > 0 )
    {
      self( self, i + 1, p, q - 1, r, word | ( 1ull << ( 2 * i ) ) );
      self( self, i + 1, p, q - 1, r, word | ( 2ull << ( 2 * i ) ) );
    }
    if ( p > 0 )
    {
      self( self, i + 1, p - 1, q, r, word | ( 3ull << ( 2 * i ) ) );
    }
  };
  rec( rec, 0, k.p, k.q, k.r, 0 );
  std::sort( out.begin(), out.end(), []( auto const& a, auto const& b ) { return a.word() < b.word(); } );
  return out;
}

assignment apply( automorphism const& g, assignment const& a )
{
  if ( g.n() != a.n() )
  {
    throw std::invalid_argument( "apply: automorphism and assignment differ in n" );
  }
  std::uint64_t word = 0;
  for ( int i = 0; i < a.n(); ++i )
  {
    std::uint64_t pair = ( a.word() >> ( 2 * i ) ) & 3u;
    if ( g.swap_bits[i] )
    {
      pair = ( ( pair & 1u ) << 1 ) | ( pair >> 1 );
    }
    word |= pair << ( 2 * g.coord_perm[i] );
  }
  return assignment( a.n(), word );
}

automorphism sample_automorphism( int n, std::mt19937_64& rng )
{
  if ( n < 1 )
  {
    throw std::invalid_argument( "sample_automorphism: n must be positive" );
  }
  auto g = automorphism::identity( n );
  for ( int i = n - 1; i > 0; --i )
  {
    std::uniform_int_distribution<int> pick( 0, i );
    std::swap( g.coord_perm[i], g.coord_perm[pick( rng )] );
  }
  for ( int i = 0; i < n; ++i )
  {
    g.swap_bits[i] = ( rng() >> 63 ) != 0;
  }
  return g;
}

automorphism sample_automorphism( int n, std::uint64_t seed )
{
  std::mt19937_64 rng( seed );
  return sample_automorphism( n, rng );
}

std::optional<automorphism> find_automorphism( assignment const& a, assignment const& b )
{
  if ( a.n() != b.n() || key_of( a ) != key_of( b ) )
  {
    return std::nullopt;
  }
  auto const n = a.n();
  // bucket b's coordinates by type: (0,0), differing, (1,1)
  std::vector<int> buckets[3];
  auto type_of = []( std::uint64_t pair ) { return pair == 0 ? 0 : ( pair == 3 ? 2 : 1 ); };
  for ( int i = 0; i < n; ++i )
  {
    buckets[type_of( ( b.word() >> ( 2 * i ) ) & 3u )].push_back( i );
  }
  std::size_t next[3] = { 0, 0, 0 };
  auto g = automorphism::identity( n );
  for ( int i = 0; i < n; ++i )
  {
    auto const pa = ( a.word() >> ( 2 * i ) ) & 3u;
    auto const t = type_of( pa );
    auto const j = buckets[t][next[t]++];
    g.coord_perm[i] = j;
    g.swap_bits[i] = t == 1 && pa != ( ( b.word() >> ( 2 * j ) ) & 3u );
  }
  return g;
}

membership_estimate membership_prob( assignment const& a, assignment_set const& t, std::uint64_t trials,
                                     std::uint64_t seed, int enumeration_cap )
{
  if ( a.n() > enumeration_cap )
  {
    throw std::out_of_range( "membership_prob: n = " + std::to_string( a.n() ) + " exceeds the enumeration cap " +
                             std::to_string( enumeration_cap ) );
  }
  for ( auto const& member : t )
  {
    if ( member.n() != a.n() )
    {
      throw std::invalid_argument( "membership_prob: T mixes coordinate counts" );
    }
  }

  membership_estimate est;
  auto const orbit = orbit_members( key_of( a ) );
  std::size_t inside = 0;
  for ( auto const& b : orbit )
  {
    inside += t.count( b );
  }
  est.exact = big_rational( big_int( static_cast<unsigned long>( inside ) ), big_int( static_cast<unsigned long>( orbit.size() ) ) );
  est.exact.canonicalize();

  // a in g*T  <=>  some y in T with g*y = a
  std::mt19937_64 rng( seed );
  std::uint64_t hits = 0;
  for ( std::uint64_t i = 0; i < trials; ++i )
  {
    auto const g = sample_automorphism( a.n(), rng );
    bool hit = false;
    for ( auto const& y : t )
    {
      if ( apply( g, y ) == a )
      {
        hit = true;
        break;
      }
    }
    hits += hit;
  }
  est.trials = trials;
  est.empirical = trials == 0 ? 0.0 : static_cast<double>( hits ) / static_cast<double>( trials );
  return est;
}

} // namespace orbitforge
