#include <doctest.h>

#include <orbitforge/cover.hpp>
#include <orbitforge/regions.hpp>

#include <cmath>
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

} // namespace

TEST_CASE( "cover target formula" )
{
  CHECK( cover_target( 24, 4 ) == 39 );
  CHECK( cover_target( 1, 1 ) == 1 );
  CHECK( cover_target( 12, 12 ) == static_cast<std::uint64_t>( std::ceil( 2 * std::log( 12.0L ) ) ) );
  CHECK_THROWS_AS( cover_target( 5, 0 ), std::invalid_argument );
}

TEST_CASE( "cover_orbit on the matching example" )
{
  auto const f = compose( comp( { { block_kind::matching, 2 } } ) );
  auto const rep = cover_orbit( f, { 2, 2, 0 }, 7 );
  CHECK( rep.orbit_size == 24 );
  CHECK( rep.captured == 4 );
  CHECK( rep.t_target == 39 );
  CHECK( rep.covered );
  CHECK( rep.perms.size() == 39 );
  CHECK( rep.round_seeds.size() == static_cast<std::size_t>( rep.rounds_used ) );

  // coverage checked independently
  for ( auto const& a : orbit_members( { 2, 2, 0 } ) )
  {
    bool hit = false;
    for ( auto const& g : rep.perms )
    {
      hit = hit || permute( f, g ).eval( a );
    }
    REQUIRE( hit );
  }

  auto const again = cover_orbit( f, { 2, 2, 0 }, 7 );
  CHECK( again.round_seeds == rep.round_seeds );
  CHECK( again.perms == rep.perms );

  CHECK_THROWS_AS( cover_orbit( f, { 1, 1, 2 }, 1 ), std::invalid_argument );
  CHECK_THROWS_AS( cover_orbit( f, { 1, 2, 0 }, 1 ), std::invalid_argument );
}

TEST_CASE( "orbit fully inside the solutions is covered at once" )
{
  auto const f = compose( comp( { { block_kind::id2, 3 } } ) );
  auto const rep = cover_orbit( f, { 3, 0, 0 }, 1 );
  CHECK( rep.covered );
  CHECK( rep.rounds_used == 1 );
  CHECK( rep.t_target == 1 );
}

TEST_CASE( "hit rate of random automorphisms matches the captured fraction" )
{
  auto const f = compose( comp( { { block_kind::matching, 1 }, { block_kind::nand, 2 } } ) );
  orbit_key const k{ 2, 1, 1 };
  auto const members = orbit_members( k );
  compiled_cnf const base( f );
  double const frac = static_cast<double>(
                          std::count_if( members.begin(), members.end(), [&]( auto const& a ) { return base.eval( a.word() ); } ) ) /
                      members.size();
  REQUIRE( frac > 0 );
  std::mt19937_64 rng( 3 );
  int const trials = 10000;
  int hits = 0;
  auto const target = members.front();
  for ( int i = 0; i < trials; ++i )
  {
    hits += permute( f, sample_automorphism( 4, rng ) ).eval( target );
  }
  double const rate = static_cast<double>( hits ) / trials;
  CHECK( std::fabs( rate - frac ) < 3 * std::sqrt( frac * ( 1 - frac ) / trials ) );
}

TEST_CASE( "circuit_eval" )
{
  sigma3_circuit empty{ 2, {} };
  for ( std::uint64_t w = 0; w < 16; ++w )
  {
    CHECK_FALSE( circuit_eval( empty, assignment( 2, w ) ) );
  }
  auto const f = block_cnf( block_kind::matching );
  sigma3_circuit single{ 2, { { f, { 0, 2, 0 }, 0 } } };
  for ( std::uint64_t w = 0; w < 16; ++w )
  {
    CHECK( circuit_eval( single, assignment( 2, w ) ) == f.eval( w ) );
  }
  CHECK_THROWS_AS( circuit_eval( single, assignment( 3, 0 ) ), std::invalid_argument );
}

TEST_CASE( "assembled circuits compute the function exactly" )
{
  for ( int n : { 1, 2, 3, 4, 5, 6 } )
  {
    for ( auto strategy : { cover_strategy::regions, cover_strategy::search } )
    {
      auto const rep = assemble_circuit( n, strategy, 11 );
      auto const v = verify_circuit( rep.circuit );
      REQUIRE( v.ok() );
      CHECK( v.checked == ( 1ull << ( 2 * n ) ) );
      CHECK( rep.circuit.members.size() <= rep.total_t );

      std::uint64_t t_sum = 0;
      for ( auto const& cov : rep.covers )
      {
        CHECK( cov.key.parity() == 1 );
        CHECK( cov.covered );
        CHECK( cov.t_target == cover_target( cov.orbit_size, cov.captured ) );
        t_sum += cov.t_target;
      }
      CHECK( t_sum == rep.total_t );

      // soundness of every member: never fires on an even-p input
      for ( auto const& m : rep.circuit.members )
      {
        REQUIRE( is_consistent( m.cnf, 1 ) );
      }
    }
  }
}

TEST_CASE( "assembled n = 4 circuit" )
{
  auto const rep = assemble_circuit( 4 );
  CHECK( circuit_eval( rep.circuit, assignment::from_strings( "1000", "1000" ) ) );
  CHECK_FALSE( circuit_eval( rep.circuit, assignment::from_strings( "1100", "1100" ) ) );
  auto const v = verify_circuit( rep.circuit );
  CHECK( v.checked == 256 );
  CHECK( v.agreed == 256 );

  // same seed, same circuit
  auto const again = assemble_circuit( 4 );
  REQUIRE( again.circuit.members.size() == rep.circuit.members.size() );
  for ( std::size_t i = 0; i < rep.circuit.members.size(); ++i )
  {
    CHECK( again.circuit.members[i].cnf == rep.circuit.members[i].cnf );
  }
  CHECK_THROWS( assemble_circuit( 11 ) );
}

TEST_CASE( "verify_circuit reports disagreements" )
{
  sigma3_circuit bad{ 2, { { two_cnf( 2 ), { 0, 0, 2 }, 0 } } };
  auto const v = verify_circuit( bad );
  CHECK_FALSE( v.ok() );
  CHECK( v.false_positives == 10 );
  CHECK( v.false_negatives == 0 );
  sigma3_circuit empty{ 2, {} };
  CHECK( verify_circuit( empty ).false_negatives == 6 );
}
