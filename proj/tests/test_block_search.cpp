#include <doctest.h>

#include <orbitforge/block_search.hpp>

#include <cmath>
#include <random>

using namespace orbitforge;

namespace
{

spectrum poly( int degree, std::initializer_list<std::tuple<int, int, int>> terms )
{
  spectrum s( degree );
  for ( auto const& [p, q, c] : terms )
  {
    s.add( p, q, c );
  }
  return s;
}

bool dominates( spectrum const& a, spectrum const& b )
{
  for ( auto const& [key, v] : b.terms() )
  {
    auto const it = a.terms().find( key );
    if ( it == a.terms().end() || it->second < v )
    {
      return false;
    }
  }
  return true;
}

} // namespace

TEST_CASE( "median closure examples" )
{
  CHECK( median_closure( { 0b000, 0b111 } ) == std::set<std::uint64_t>{ 0b000, 0b111 } );
  CHECK( median_closure( { 0b110, 0b101, 0b011 } ).count( 0b111 ) == 1 );
  CHECK( maj( 0b110, 0b101, 0b011 ) == 0b111 );
  for ( auto k : all_block_kinds )
  {
    auto const sol = solutions( block_cnf( k ) );
    CHECK( is_median_closed( sol ) );
    CHECK( median_closure( { sol.begin(), sol.end() } ) == std::set<std::uint64_t>( sol.begin(), sol.end() ) );
  }
  CHECK_FALSE( is_median_closed( { 0b110, 0b101, 0b011 } ) );
}

TEST_CASE( "median closure is idempotent" )
{
  std::mt19937_64 rng( 19 );
  for ( int i = 0; i < 500; ++i )
  {
    std::set<std::uint64_t> m;
    auto const size = 1 + rng() % 6;
    while ( m.size() < size )
    {
      m.insert( rng() & 0xff );
    }
    auto const once = median_closure( m );
    REQUIRE( median_closure( once ) == once );
    REQUIRE( std::includes( once.begin(), once.end(), m.begin(), m.end() ) );
    REQUIRE( is_median_closed( { once.begin(), once.end() } ) );
  }
}

TEST_CASE( "implied 2-CNF has the closed set as its solutions" )
{
  std::mt19937_64 rng( 21 );
  for ( int i = 0; i < 200; ++i )
  {
    std::set<std::uint64_t> m;
    auto const size = 1 + rng() % 5;
    while ( m.size() < size )
    {
      m.insert( rng() & 0xff );
    }
    auto const closed = median_closure( m );
    std::vector<std::uint64_t> const sorted( closed.begin(), closed.end() );
    REQUIRE( solutions( implied_two_cnf( sorted, 4 ) ) == sorted );
  }
}

TEST_CASE( "pareto blocks" )
{
  auto const one0 = pareto_blocks( 1, 0 );
  REQUIRE( one0.size() == 1 );
  CHECK( one0[0].spec == block_spectrum( block_kind::nand ) );

  auto const one1 = pareto_blocks( 1, 1 );
  REQUIRE( one1.size() == 1 );
  CHECK( one1[0].spec == block_spectrum( block_kind::id2 ) );

  auto const two0 = pareto_blocks( 2, 0 );
  std::vector<spectrum> expect{ block_spectrum( block_kind::matching ), block_spectrum( block_kind::two_imp ),
                                mul( block_spectrum( block_kind::nand ), block_spectrum( block_kind::nand ) ) };
  REQUIRE( two0.size() == 3 );
  for ( auto const& e : expect )
  {
    CHECK( std::count_if( two0.begin(), two0.end(), [&]( auto const& p ) { return p.spec == e; } ) == 1 );
  }
  CHECK( expect[2] == poly( 2, { { 0, 2, 4 }, { 0, 1, 4 }, { 0, 0, 1 } } ) );

  for ( int nc : { 1, 2 } )
  {
    for ( int b : { 0, 1 } )
    {
      auto const set = pareto_blocks( nc, b );
      for ( std::size_t i = 0; i < set.size(); ++i )
      {
        CHECK( is_consistent( set[i].witness, b ) );
        CHECK( from_census( count_solutions_by_orbit( set[i].witness ), nc ) == set[i].spec );
        for ( std::size_t j = 0; j < set.size(); ++j )
        {
          if ( i != j )
          {
            CHECK_FALSE( dominates( set[i].spec, set[j].spec ) );
          }
        }
      }
    }
  }
  CHECK_THROWS( pareto_blocks( 3, 0 ) );
}

TEST_CASE( "exact mu" )
{
  CHECK( exact_mu( 1, { 0, 1, 0 }, 0 ) == 2 );
  CHECK( exact_mu( 2, { 2, 0, 0 }, 0 ) == 1 );
  CHECK( exact_mu( 2, { 1, 1, 0 }, 0 ) == 0 );
  CHECK_THROWS_AS( exact_mu( 3, { 1, 1, 1 }, 0 ), std::out_of_range );

  // the oracle dominates every composition
  for ( int n = 1; n <= 2; ++n )
  {
    for ( auto const& k : enumerate_orbits( n ) )
    {
      auto const mu = exact_mu( n, k, k.parity() );
      CHECK( mu <= orbit_size( k ) );
      CHECK( mu > 0 );
      for ( long a = 0; 2 * a <= n; ++a )
      {
        for ( long b = 0; 2 * a + 2 * b <= n; ++b )
        {
          for ( long c = 0; 2 * a + 2 * b + c <= n; ++c )
          {
            for ( long i2 = 0; 2 * a + 2 * b + c + i2 <= n; ++i2 )
            {
              for ( long i1 = 0; 2 * a + 2 * b + c + i2 + i1 <= n; ++i1 )
              {
                composition comp;
                comp[block_kind::matching] = a;
                comp[block_kind::two_imp] = b;
                comp[block_kind::nand] = c;
                comp[block_kind::id2] = i2;
                comp[block_kind::id1] = i1;
                comp[block_kind::id0] = n - 2 * a - 2 * b - c - i2 - i1;
                if ( comp.parity() == k.parity() )
                {
                  CHECK( coeff_fast( comp, k ) <= mu );
                }
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE( "composition search against the oracle at n = 2" )
{
  auto const res = compose_search( 2 );
  auto const rho = exact_rho_star( 2, 0 );
  auto const oracle_c = log2_big( rho ) / 2;
  CHECK( res.c >= oracle_c - 1e-12L );
  CHECK( res.c >= 0 );
  for ( auto const& row : res.orbits )
  {
    CHECK( row.key.parity() == 0 );
    CHECK( row.captured > 0 );
    CHECK( row.captured <= exact_mu( 2, row.key, 0 ) );
  }
}

TEST_CASE( "composition search picks the best composition at small n" )
{
  for ( int n = 1; n <= 8; ++n )
  {
    for ( int parity : { 0, 1 } )
    {
      auto const res = compose_search( n, { all_block_kinds.begin(), all_block_kinds.end() }, parity );
      for ( auto const& row : res.orbits )
      {
        REQUIRE( row.comp.n_coords() == n );
        REQUIRE( row.comp.parity() == parity );
        REQUIRE( row.captured == coeff_fast( row.comp, row.key ) );
        // brute force over every composition of the right parity
        big_int best = 0;
        for ( long a = 0; 2 * a <= n; ++a )
        {
          for ( long b = 0; 2 * a + 2 * b <= n; ++b )
          {
            for ( long c = 0; 2 * a + 2 * b + c <= n; ++c )
            {
              for ( long i2 = 0; 2 * a + 2 * b + c + i2 <= n; ++i2 )
              {
                for ( long i1 = 0; 2 * a + 2 * b + c + i2 + i1 <= n; ++i1 )
                {
                  composition comp;
                  comp[block_kind::matching] = a;
                  comp[block_kind::two_imp] = b;
                  comp[block_kind::nand] = c;
                  comp[block_kind::id2] = i2;
                  comp[block_kind::id1] = i1;
                  comp[block_kind::id0] = n - 2 * a - 2 * b - c - i2 - i1;
                  if ( comp.parity() == parity )
                  {
                    best = std::max( best, coeff_fast( comp, row.key ) );
                  }
                }
              }
            }
          }
        }
        REQUIRE( row.captured == best );
      }
    }
  }
}

TEST_CASE( "restricted block set tends to the trivial exponent" )
{
  long double prev = 0;
  for ( int n : { 10, 20, 40 } )
  {
    auto const res = compose_search( n, { block_kind::id2, block_kind::nand } );
    long double expect = 0;
    for ( int p = 0; p <= n; p += 2 )
    {
      expect = std::max( expect, log2_big( binomial( n, p ) ) / n );
    }
    CHECK( std::fabs( res.c - expect ) < 1e-9L );
    CHECK( res.c > prev );
    CHECK( res.c < 1 );
    prev = res.c;
  }
  CHECK_THROWS( compose_search( 201 ) );
}
