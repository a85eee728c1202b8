#include <doctest.h>

#include <orbitforge/cnf.hpp>
#include <orbitforge/spectrum.hpp>

#include <random>

using namespace orbitforge;

namespace
{

orbit_census census_of( std::initializer_list<std::pair<orbit_key, int>> items )
{
  orbit_census c;
  for ( auto const& [k, v] : items )
  {
    c[k] = v;
  }
  return c;
}

composition comp( std::initializer_list<std::pair<block_kind, long>> items )
{
  composition c;
  for ( auto const& [k, v] : items )
  {
    c[k] = v;
  }
  return c;
}

composition random_composition( std::mt19937_64& rng, int max_n )
{
  for ( ;; )
  {
    composition c;
    for ( auto k : all_block_kinds )
    {
      c[k] = std::uniform_int_distribution<long>( 0, 3 )( rng );
    }
    if ( c.n_coords() >= 1 && c.n_coords() <= max_n )
    {
      return c;
    }
  }
}

two_cnf random_cnf( std::mt19937_64& rng, int n )
{
  two_cnf f( n );
  auto const m = std::uniform_int_distribution<int>( 0, 3 * n )( rng );
  std::uniform_int_distribution<int> var( 0, 2 * n - 1 );
  for ( int i = 0; i < m; ++i )
  {
    literal const a{ var( rng ), ( rng() & 1 ) != 0 };
    if ( rng() & 1 )
    {
      f.add_clause( { a } );
      continue;
    }
    literal b{ var( rng ), ( rng() & 1 ) != 0 };
    if ( b == a )
    {
      b.negated = !b.negated;
    }
    f.add_clause( { a, b } );
  }
  return f;
}

} // namespace

TEST_CASE( "block solution counts" )
{
  CHECK( solutions( block_cnf( block_kind::id2 ) ) == std::vector<std::uint64_t>{ 0b11 } );
  CHECK( solutions( block_cnf( block_kind::nand ) ).size() == 3 );
  CHECK( solutions( block_cnf( block_kind::matching ) ).size() == 4 );
  CHECK( solutions( block_cnf( block_kind::two_imp ) ).size() == 5 );
  CHECK( solutions( block_cnf( block_kind::id1 ) ).size() == 2 );
  CHECK( solutions( block_cnf( block_kind::id0 ) ) == std::vector<std::uint64_t>{ 0 } );
}

TEST_CASE( "block spectra by brute force" )
{
  CHECK( count_solutions_by_orbit( block_cnf( block_kind::matching ) ) ==
         census_of( { { { 2, 0, 0 }, 1 }, { { 0, 2, 0 }, 2 }, { { 0, 0, 2 }, 1 } } ) );
  CHECK( count_solutions_by_orbit( block_cnf( block_kind::two_imp ) ) ==
         census_of( { { { 2, 0, 0 }, 1 }, { { 0, 2, 0 }, 1 }, { { 0, 1, 1 }, 2 }, { { 0, 0, 2 }, 1 } } ) );
  CHECK( count_solutions_by_orbit( block_cnf( block_kind::nand ) ) ==
         census_of( { { { 0, 1, 0 }, 2 }, { { 0, 0, 1 }, 1 } } ) );
  CHECK( count_solutions_by_orbit( block_cnf( block_kind::id2 ) ) == census_of( { { { 1, 0, 0 }, 1 } } ) );
  CHECK( count_solutions_by_orbit( block_cnf( block_kind::id1 ) ) == census_of( { { { 0, 1, 0 }, 2 } } ) );
  CHECK( count_solutions_by_orbit( block_cnf( block_kind::id0 ) ) == census_of( { { { 0, 0, 1 }, 1 } } ) );
  for ( auto k : all_block_kinds )
  {
    CHECK( from_census( count_solutions_by_orbit( block_cnf( k ) ), block_arity( k ) ) == block_spectrum( k ) );
    CHECK( is_consistent( block_cnf( k ), block_parity( k ) ) );
  }
}

TEST_CASE( "disjoint_and" )
{
  auto const f = disjoint_and( block_cnf( block_kind::id2 ), block_cnf( block_kind::id0 ) );
  CHECK( f.n_coords() == 2 );
  CHECK( solutions( f ) == std::vector<std::uint64_t>{ assignment::from_strings( "10", "10" ).word() } );
  CHECK( solutions( disjoint_and( two_cnf( 1 ), block_cnf( block_kind::id1 ) ) ).size() == 8 );
  CHECK( solutions( disjoint_and( block_cnf( block_kind::matching ), block_cnf( block_kind::matching ) ) ).size() == 16 );

  std::mt19937_64 rng( 3 );
  for ( int i = 0; i < 100; ++i )
  {
    auto const a = random_cnf( rng, 1 + static_cast<int>( rng() % 3 ) );
    auto const b = random_cnf( rng, 1 + static_cast<int>( rng() % 3 ) );
    CHECK( solutions( disjoint_and( a, b ) ).size() == solutions( a ).size() * solutions( b ).size() );
  }
}

TEST_CASE( "compose" )
{
  CHECK( solutions( compose( comp( { { block_kind::matching, 2 } } ), 4 ) ).size() == 16 );
  auto const id = compose( comp( { { block_kind::id2, 3 } } ), 3 );
  CHECK( count_solutions_by_orbit( id ) == census_of( { { { 3, 0, 0 }, 1 } } ) );
  CHECK( is_consistent( compose( comp( { { block_kind::matching, 1 }, { block_kind::nand, 6 } } ), 8 ), 0 ) );
  CHECK_THROWS_AS( compose( comp( { { block_kind::matching, 1 } } ), 3 ), std::invalid_argument );
  // canonical order: Matching first, then Nand
  auto const f = compose( comp( { { block_kind::nand, 1 }, { block_kind::matching, 1 } } ), 3 );
  CHECK( f.clauses().front() == block_cnf( block_kind::matching ).clauses().front() );
  CHECK( f.clauses().back().lits == std::vector<literal>{ { 4, true }, { 5, true } } );
}

TEST_CASE( "is_consistent examples" )
{
  CHECK( is_consistent( block_cnf( block_kind::matching ), 0 ) );
  CHECK_FALSE( is_consistent( block_cnf( block_kind::id2 ), 0 ) );
  CHECK( is_consistent( compose( comp( { { block_kind::two_imp, 1 }, { block_kind::id2, 1 } } ) ), 1 ) );
  CHECK_THROWS_AS( is_consistent( two_cnf( 13 ), 0 ), std::out_of_range );
}

TEST_CASE( "compositions are consistent with their parity" )
{
  std::mt19937_64 rng( 17 );
  for ( int i = 0; i < 200; ++i )
  {
    auto const c = random_composition( rng, 6 );
    REQUIRE( is_consistent( compose( c ), c.parity() ) );
  }
}

TEST_CASE( "census of composed matchings" )
{
  auto const cs = count_solutions_by_orbit( compose( comp( { { block_kind::matching, 2 } } ) ) );
  CHECK( cs.at( { 2, 2, 0 } ) == 4 );
}

TEST_CASE( "permuting keeps consistency and the census" )
{
  std::mt19937_64 rng( 23 );
  for ( int i = 0; i < 100; ++i )
  {
    auto const c = random_composition( rng, 6 );
    auto const f = compose( c );
    auto const g = sample_automorphism( f.n_coords(), rng );
    auto const h = permute( f, g );
    REQUIRE( is_consistent( h, c.parity() ) );
    REQUIRE( count_solutions_by_orbit( h ) == count_solutions_by_orbit( f ) );
    // sol(F^g) = g * sol(F)
    std::vector<std::uint64_t> moved;
    for ( auto w : solutions( f ) )
    {
      moved.push_back( apply( g, assignment( f.n_coords(), w ) ).word() );
    }
    std::sort( moved.begin(), moved.end() );
    REQUIRE( moved == solutions( h ) );
  }
}

TEST_CASE( "dimacs" )
{
  CHECK( to_dimacs( block_cnf( block_kind::matching ) ) == "p cnf 4 4\n-1 3 0\n1 -3 0\n-2 4 0\n2 -4 0\n" );
  CHECK( to_dimacs( two_cnf( 1 ) ) == "p cnf 2 0\n" );

  std::mt19937_64 rng( 5 );
  for ( int i = 0; i < 100; ++i )
  {
    auto const f = random_cnf( rng, 1 + static_cast<int>( rng() % 6 ) );
    REQUIRE( parse_dimacs( to_dimacs( f ) ) == f );
  }

  CHECK( parse_dimacs( "c comment\np cnf 2 1\n1\n-2 0\n" ).clauses().size() == 1 );
  CHECK_THROWS_AS( parse_dimacs( "p cnf 4 1\n1 2 3 0\n" ), std::invalid_argument );
  CHECK_THROWS_AS( parse_dimacs( "p cnf 3 0\n" ), std::invalid_argument );
  CHECK_THROWS_AS( parse_dimacs( "1 2 0\n" ), std::invalid_argument );
  CHECK_THROWS_AS( parse_dimacs( "p cnf 2 2\n1 0\n" ), std::invalid_argument );
  CHECK_THROWS_AS( parse_dimacs( "p cnf 2 1\n1 5 0\n" ), std::invalid_argument );
  CHECK_THROWS_AS( parse_dimacs( "p cnf 2 1\n1 -2\n" ), std::invalid_argument );
}

TEST_CASE( "composition text" )
{
  auto const c = parse_composition( "Matching:75, TwoImp:50 Nand:70" );
  CHECK( c.to_string() == "Matching:75 TwoImp:50 Nand:70" );
  CHECK( c.n_coords() == 320 );
  CHECK( parse_composition( "2imp:1" )[block_kind::two_imp] == 1 );
  CHECK_THROWS( parse_composition( "Foo:1" ) );
  CHECK_THROWS( parse_composition( "Nand" ) );
  CHECK_THROWS( parse_composition( "Nand:-1" ) );
  CHECK_THROWS( parse_composition( "Nand:x" ) );
}
