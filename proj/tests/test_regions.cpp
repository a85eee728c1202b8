#include <doctest.h>

#include <orbitforge/regions.hpp>
#include <orbitforge/spectrum.hpp>

#include <algorithm>
#include <random>

using namespace orbitforge;

namespace
{

composition comp( std::initializer_list<std::pair<block_kind, long>> items )
{
  composition c;
  for ( auto const& [k, v] : items )
  {
    c[k] = v;
  }
  return c;
}

bool has( std::vector<int> const& v, int x )
{
  return std::find( v.begin(), v.end(), x ) != v.end();
}

} // namespace

TEST_CASE( "classify examples" )
{
  CHECK( has( classify( { 34, 8, 8 } ), 2 ) );
  CHECK( has( classify( { 16, 12, 4 } ), 1 ) );
  for ( int q = 0; q <= 24; ++q )
  {
    CHECK( has( classify( { 8, q, 24 - q } ), 6 ) );
  }
  CHECK_THROWS( in_region( 7, { 1, 1, 1 } ) );
}

TEST_CASE( "regions cover every orbit up to n = 400" )
{
  for ( int n = 1; n <= 400; ++n )
  {
    for ( int p = 0; p <= n; ++p )
    {
      for ( int q = 0; p + q <= n; ++q )
      {
        orbit_key const k{ p, q, n - p - q };
        bool any = false;
        for ( int rid = 1; rid <= 6 && !any; ++rid )
        {
          any = in_region( rid, k );
        }
        if ( !any )
        {
          FAIL( "uncovered orbit (" << p << "," << q << "," << n - p - q << ")" );
        }
      }
    }
  }
}

TEST_CASE( "region_composition examples" )
{
  auto const r1 = region_composition( 1, { 160, 128, 32 } );
  REQUIRE( r1.size() == 1 );
  CHECK( r1[0] == comp( { { block_kind::matching, 75 }, { block_kind::two_imp, 50 }, { block_kind::nand, 70 } } ) );
  CHECK( region_composition( 2, { 2, 2, 0 } ).at( 0 ) == comp( { { block_kind::matching, 2 } } ) );
  CHECK( region_composition( 6, { 8, 10, 14 } ).at( 0 ) ==
         comp( { { block_kind::matching, 4 }, { block_kind::nand, 24 } } ) );
  CHECK( region_composition( 3, { 0, 0, 7 } ).at( 0 ) == comp( { { block_kind::id0, 7 } } ) );

  auto const r3 = region_composition( 3, { 600, 1000, 400 } );
  REQUIRE( r3.size() == 2 );
  CHECK( r3[0] == comp( { { block_kind::two_imp, 680 }, { block_kind::nand, 640 } } ) );
  CHECK( r3[1] == comp( { { block_kind::two_imp, 930 }, { block_kind::nand, 140 } } ) );
  auto const r4 = region_composition( 4, { 800, 1080, 120 } );
  CHECK( r4[1] == comp( { { block_kind::matching, 710 }, { block_kind::nand, 580 } } ) );
  CHECK( region_composition( 5, { 600, 1380, 20 } ).at( 0 ) ==
         comp( { { block_kind::matching, 710 }, { block_kind::nand, 580 } } ) );

  for ( int rid = 1; rid <= 6; ++rid )
  {
    for ( auto const& c : region_composition( rid, { 640, 960, 400 }, {}, recipe_mode::rounded ) )
    {
      CHECK( c.n_coords() == 2000 );
      CHECK( c.parity() == 0 );
    }
  }
}

TEST_CASE( "strict recipes reject non-integral parameters" )
{
  CHECK_THROWS_AS( region_composition( 3, { 30, 50, 20 } ), std::domain_error );
  CHECK_THROWS_AS( region_composition( 2, { 3, 1, 0 } ), std::domain_error );
  CHECK_THROWS_AS( region_composition( 6, { 1, 3, 0 } ), std::domain_error );
  CHECK_THROWS_AS( region_composition( 1, { 17, 10, 5 } ), std::domain_error );
  CHECK_NOTHROW( region_composition( 3, { 30, 50, 20 }, {}, recipe_mode::rounded ) );
}

TEST_CASE( "rounded recipes agree with strict ones on the lattice" )
{
  for ( int rid = 1; rid <= 6; ++rid )
  {
    for ( orbit_key const k : { orbit_key{ 600, 1000, 400 }, orbit_key{ 800, 1080, 120 }, orbit_key{ 160, 128, 32 } } )
    {
      std::vector<composition> strict;
      try
      {
        strict = region_composition( rid, k );
      }
      catch ( std::domain_error const& )
      {
        continue;
      }
      CHECK( strict == region_composition( rid, k, {}, recipe_mode::rounded ) );
    }
  }
}

TEST_CASE( "pad_construction" )
{
  auto const pad = pad_construction( { 17, 20, 13 }, 4 );
  CHECK( pad.core == orbit_key{ 16, 20, 12 } );
  CHECK( pad.ids == comp( { { block_kind::id2, 1 }, { block_kind::id0, 1 } } ) );
  auto const none = pad_construction( { 0, 0, 12 }, 4 );
  CHECK( none.core == orbit_key{ 0, 0, 12 } );
  CHECK( none.ids.n_coords() == 0 );
  CHECK_THROWS( pad_construction( { 1, 1, 1 }, 0 ) );

  // an odd Id2 count flips the consistent parity
  auto const odd = region_candidates( 6, { 3, 2, 3 } ).at( 0 );
  CHECK( odd.parity() == 1 );
  CHECK( is_consistent( compose( odd ), 1 ) );
}

TEST_CASE( "padding law by brute force" )
{
  std::mt19937_64 rng( 41 );
  for ( int i = 0; i < 100; ++i )
  {
    int const n = 2 + static_cast<int>( rng() % 5 );
    int const p = static_cast<int>( rng() % ( n + 1 ) );
    int const q = static_cast<int>( rng() % ( n - p + 1 ) );
    orbit_key const k{ p, q, n - p - q };
    auto const pad = pad_construction( k, 1 + static_cast<long>( rng() % 3 ) );
    composition core;
    // random core of the padded degree from Matching / TwoImp / Nand
    long left = pad.core.n();
    while ( left > 0 )
    {
      auto const pick = rng() % 3;
      if ( pick == 0 && left >= 2 )
      {
        ++core[block_kind::matching];
        left -= 2;
      }
      else if ( pick == 1 && left >= 2 )
      {
        ++core[block_kind::two_imp];
        left -= 2;
      }
      else
      {
        ++core[block_kind::nand];
        --left;
      }
    }
    auto full = core;
    for ( auto kind : { block_kind::id2, block_kind::id1, block_kind::id0 } )
    {
      full[kind] = pad.ids[kind];
    }
    auto const census_full = count_solutions_by_orbit( compose( full, n ) );
    big_int const got = census_full.count( k ) ? census_full.at( k ) : big_int( 0 );
    big_int core_count = 0;
    if ( pad.core.n() == 0 )
    {
      core_count = 1;
    }
    else
    {
      auto const census_core = count_solutions_by_orbit( compose( core ) );
      core_count = census_core.count( pad.core ) ? census_core.at( pad.core ) : big_int( 0 );
    }
    REQUIRE( got == pow2( static_cast<unsigned long>( pad.ids[block_kind::id1] ) ) * core_count );
  }
}

TEST_CASE( "ratio examples" )
{
  for ( int q = 0; q <= 6; ++q )
  {
    auto const rep = ratio( comp( { { block_kind::matching, 1 }, { block_kind::nand, 6 } } ), { 2, q, 6 - q } );
    CHECK( rep.ratio == 28 );
  }
  // brute-force census for the same n = 8 instance
  auto const census = count_solutions_by_orbit( compose( comp( { { block_kind::matching, 1 }, { block_kind::nand, 6 } } ) ) );
  CHECK( orbit_size( { 2, 3, 3 } ) / census.at( { 2, 3, 3 } ) == 28 );

  auto const m2 = ratio( comp( { { block_kind::matching, 2 } } ), { 2, 2, 0 } );
  CHECK( m2.ratio == 6 );
  CHECK( m2.captured == 4 );
  CHECK( m2.orbit_size == 24 );

  orbit_key const k{ 3, 4, 2 };
  auto const triv = ratio( trivial_composition( k ), k );
  big_rational expect( orbit_size( k ), 16 );
  expect.canonicalize();
  CHECK( triv.ratio == expect );

  auto const zero = ratio( comp( { { block_kind::matching, 1 } } ), { 1, 1, 0 } );
  CHECK( zero.infinite );
}

TEST_CASE( "R6 and R2 identities up to n = 24" )
{
  for ( int n = 1; n <= 24; ++n )
  {
    for ( auto const& k : enumerate_orbits( n ) )
    {
      if ( in_region( 6, k ) && k.p % 2 == 0 )
      {
        auto const rep = ratio( region_composition( 6, k ), k );
        REQUIRE( rep.ratio == binomial( n, k.p ) );
      }
      if ( in_region( 2, k ) && k.p % 2 == 0 && k.q % 2 == 0 && n % 2 == 0 )
      {
        auto const rep = ratio( region_composition( 2, k ), k );
        REQUIRE( rep.captured == binomial( n / 2, k.p / 2 ) * binomial( ( n - k.p ) / 2, k.q / 2 ) * pow2( k.q / 2 ) );
      }
    }
  }
}

TEST_CASE( "best_construction" )
{
  // single assignment orbit
  auto const top = best_construction( { 10, 0, 0 } );
  CHECK( top.ratio == 1 );
  CHECK( top.comp == comp( { { block_kind::matching, 5 } } ) );
  // odd p goes through Id2 padding
  auto const odd = best_construction( { 5, 3, 2 } );
  CHECK( odd.comp.parity() == 1 );
  CHECK_FALSE( odd.infinite );
}

TEST_CASE( "certify small n exhaustively" )
{
  auto const res = certify( 4 );
  CHECK( res.reports.size() == 15 );
  for ( auto const& rep : res.reports )
  {
    CHECK_FALSE( rep.infinite );
    CHECK( rep.captured <= rep.orbit_size );
    CHECK( rep.exponent <= 1.0L );
  }
  auto const mid = certify( 60 );
  CHECK( mid.reports.size() == 61 * 62 / 2 );
  for ( auto const& rep : mid.reports )
  {
    REQUIRE_FALSE( rep.infinite );
  }
  CHECK_THROWS( certify( 1 ) );
}

TEST_CASE( "certify samples every region above the exhaustive limit" )
{
  certify_policy pol;
  pol.per_region = 3;
  auto const res = certify( 400, pol );
  CHECK( res.reports.size() == 18 );
  for ( int rid = 1; rid <= 6; ++rid )
  {
    CHECK( std::count( res.sampled_from.begin(), res.sampled_from.end(), rid ) == 3 );
  }
  for ( std::size_t i = 0; i < res.reports.size(); ++i )
  {
    CHECK( in_region( res.sampled_from[i], res.reports[i].key ) );
  }
  CHECK( std::is_sorted( res.reports.begin(), res.reports.end(),
                         []( auto const& a, auto const& b ) { return a.key < b.key; } ) );
  // same seed, same sample
  auto const again = certify( 400, pol );
  for ( std::size_t i = 0; i < res.reports.size(); ++i )
  {
    CHECK( again.reports[i].key == res.reports[i].key );
    CHECK( again.reports[i].captured == res.reports[i].captured );
  }
}
