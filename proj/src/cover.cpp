#include <orbitforge/block_search.hpp>
#include <orbitforge/cover.hpp>
#include <orbitforge/parallel.hpp>
#include <orbitforge/regions.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace orbitforge
{

std::uint64_t derive_seed( std::uint64_t root, std::uint64_t index )
{
  std::uint64_t z = root + 0x9e3779b97f4a7c15ull * ( index + 1 );
  z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebull;
  return z ^ ( z >> 31 );
}

std::uint64_t cover_target( big_int const& orbit_size, big_int const& captured )
{
  if ( sgn( captured ) <= 0 )
  {
    throw std::invalid_argument( "cover_target: captured count must be positive" );
  }
  auto const size = orbit_size.get_d();
  auto const t = std::ceil( 2.0L * size * std::log( static_cast<long double>( size ) ) / captured.get_d() );
  return std::max<std::uint64_t>( 1, static_cast<std::uint64_t>( t ) );
}

cover_report cover_orbit( two_cnf const& f, orbit_key const& k, std::uint64_t seed, int max_rounds, int enumeration_cap )
{
  if ( k.n() != f.n_coords() )
  {
    throw std::invalid_argument( "cover_orbit: orbit and CNF differ in n" );
  }
  if ( k.n() > enumeration_cap )
  {
    throw std::out_of_range( "cover_orbit: n = " + std::to_string( k.n() ) + " exceeds the enumeration cap " +
                             std::to_string( enumeration_cap ) );
  }
  cover_report rep;
  rep.key = k;
  auto const members = orbit_members( k );
  rep.orbit_size = static_cast<unsigned long>( members.size() );
  compiled_cnf const base( f );
  rep.captured = static_cast<unsigned long>(
      std::count_if( members.begin(), members.end(), [&]( assignment const& a ) { return base.eval( a.word() ); } ) );
  if ( sgn( rep.captured ) == 0 )
  {
    throw std::invalid_argument( "cover_orbit: the CNF accepts nothing in orbit (" + std::to_string( k.p ) + "," +
                                 std::to_string( k.q ) + "," + std::to_string( k.r ) + ")" );
  }
  rep.t_target = cover_target( rep.orbit_size, rep.captured );

  for ( int round = 0; round < max_rounds && !rep.covered; ++round )
  {
    auto const round_seed = derive_seed( seed, static_cast<std::uint64_t>( round ) );
    rep.round_seeds.push_back( round_seed );
    rep.rounds_used = round + 1;
    std::mt19937_64 rng( round_seed );
    rep.perms.clear();
    std::vector<compiled_cnf> copies;
    copies.reserve( rep.t_target );
    for ( std::uint64_t i = 0; i < rep.t_target; ++i )
    {
      rep.perms.push_back( sample_automorphism( k.n(), rng ) );
      copies.emplace_back( permute( f, rep.perms.back() ) );
    }
    rep.covered = std::all_of( members.begin(), members.end(), [&]( assignment const& a ) {
      return std::any_of( copies.begin(), copies.end(), [&]( compiled_cnf const& c ) { return c.eval( a.word() ); } );
    } );
  }
  return rep;
}

bool circuit_eval( sigma3_circuit const& c, assignment const& a )
{
  if ( a.n() != c.n )
  {
    throw std::invalid_argument( "circuit_eval: assignment and circuit differ in n" );
  }
  return std::any_of( c.members.begin(), c.members.end(), [&]( circuit_member const& m ) { return m.cnf.eval( a ); } );
}

namespace
{

std::vector<clause> sorted_clauses( two_cnf const& f )
{
  auto cl = f.clauses();
  for ( auto& c : cl )
  {
    std::sort( c.lits.begin(), c.lits.end() );
  }
  std::sort( cl.begin(), cl.end() );
  return cl;
}

} // namespace

assembly_report assemble_circuit( int n, cover_strategy strategy, std::uint64_t seed )
{
  if ( n < 1 || n > 10 )
  {
    throw std::out_of_range( "assemble_circuit: n must be in 1..10, got " + std::to_string( n ) );
  }
  std::vector<orbit_key> targets;
  for ( auto const& k : enumerate_orbits( n ) )
  {
    if ( k.parity() == 1 )
    {
      targets.push_back( k );
    }
  }

  std::vector<composition> bases( targets.size() );
  if ( strategy == cover_strategy::search )
  {
    auto const found = compose_search( n, { all_block_kinds.begin(), all_block_kinds.end() }, 1 );
    std::map<orbit_key, composition> by_key;
    for ( auto const& row : found.orbits )
    {
      by_key[row.key] = row.comp;
    }
    for ( std::size_t i = 0; i < targets.size(); ++i )
    {
      bases[i] = by_key.at( targets[i] );
    }
  }
  else
  {
    for ( std::size_t i = 0; i < targets.size(); ++i )
    {
      bases[i] = best_construction( targets[i] ).comp;
    }
  }

  assembly_report rep;
  rep.circuit.n = n;
  rep.covers.resize( targets.size() );
  parallel_for( 0, targets.size(), [&]( std::size_t i ) {
    rep.covers[i] = cover_orbit( compose( bases[i], n ), targets[i], derive_seed( seed, i ) );
  } );

  std::set<std::vector<clause>> seen;
  rep.max_ratio = 0;
  for ( std::size_t i = 0; i < targets.size(); ++i )
  {
    auto const& cov = rep.covers[i];
    if ( !cov.covered )
    {
      throw std::runtime_error( "assemble_circuit: orbit cover failed after " + std::to_string( cov.rounds_used ) +
                                " rounds" );
    }
    rep.total_t += cov.t_target;
    big_rational r( cov.orbit_size, cov.captured );
    r.canonicalize();
    rep.max_ratio = std::max( rep.max_ratio, r );
    auto const base = compose( bases[i], n );
    for ( auto const& g : cov.perms )
    {
      auto copy = permute( base, g );
      if ( seen.insert( sorted_clauses( copy ) ).second )
      {
        rep.circuit.members.push_back( { std::move( copy ), cov.key, cov.round_seeds.back() } );
      }
    }
  }
  rep.size_form = big_rational( n * static_cast<long>( enumerate_orbits( n ).size() ) ) * rep.max_ratio;
  return rep;
}

verify_report verify_circuit( sigma3_circuit const& c )
{
  if ( c.n < 1 || c.n > 12 )
  {
    throw std::out_of_range( "verify_circuit: n must be in 1..12" );
  }
  std::vector<compiled_cnf> compiled;
  compiled.reserve( c.members.size() );
  for ( auto const& m : c.members )
  {
    compiled.emplace_back( m.cnf );
  }
  auto const total = 1ull << ( 2 * c.n );
  auto const chunks = std::min<std::uint64_t>( total, 256 );
  std::vector<verify_report> parts( chunks );
  parallel_for( 0, chunks, [&]( std::size_t ch ) {
    auto& part = parts[ch];
    for ( std::uint64_t w = ch * total / chunks; w < ( ch + 1 ) * total / chunks; ++w )
    {
      bool const fired =
          std::any_of( compiled.begin(), compiled.end(), [&]( compiled_cnf const& m ) { return m.eval( w ); } );
      bool const want = ip_parity_of_word( w ) == 1;
      ++part.checked;
      if ( fired == want )
      {
        ++part.agreed;
      }
      else if ( fired )
      {
        ++part.false_positives;
      }
      else
      {
        ++part.false_negatives;
      }
    }
  } );
  verify_report out;
  for ( auto const& p : parts )
  {
    out.checked += p.checked;
    out.agreed += p.agreed;
    out.false_positives += p.false_positives;
    out.false_negatives += p.false_negatives;
  }
  return out;
}

} // namespace orbitforge
