#include <orbitforge/cnf.hpp>

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace orbitforge
{

two_cnf::two_cnf( int n_coords, std::vector<clause> clauses ) : n_coords_( n_coords )
{
  for ( auto& c : clauses )
  {
    add_clause( std::move( c.lits ) );
  }
}

void two_cnf::add_clause( std::vector<literal> lits )
{
  if ( lits.empty() || lits.size() > 2 )
  {
    throw std::invalid_argument( "two_cnf: clause width must be 1 or 2" );
  }
  for ( auto const& l : lits )
  {
    if ( l.var < 0 || l.var >= num_vars() )
    {
      throw std::invalid_argument( "two_cnf: variable " + std::to_string( l.var ) + " out of range" );
    }
  }
  if ( lits.size() == 2 && lits[0] == lits[1] )
  {
    throw std::invalid_argument( "two_cnf: duplicate literal in clause" );
  }
  clauses_.push_back( { std::move( lits ) } );
}

bool two_cnf::eval( std::uint64_t word ) const
{
  for ( auto const& c : clauses_ )
  {
    bool sat = false;
    for ( auto const& l : c.lits )
    {
      sat |= ( ( ( word >> l.var ) & 1u ) != 0 ) != l.negated;
    }
    if ( !sat )
    {
      return false;
    }
  }
  return true;
}

compiled_cnf::compiled_cnf( two_cnf const& f )
{
  if ( f.n_coords() > max_packed_coords )
  {
    throw std::invalid_argument( "compiled_cnf: at most 32 coordinates" );
  }
  masks_.reserve( f.clauses().size() );
  for ( auto const& c : f.clauses() )
  {
    std::uint64_t pos = 0, neg = 0;
    for ( auto const& l : c.lits )
    {
      ( l.negated ? neg : pos ) |= 1ull << l.var;
    }
    masks_.emplace_back( pos, neg );
  }
}

int block_arity( block_kind k )
{
  return k == block_kind::matching || k == block_kind::two_imp ? 2 : 1;
}

int block_parity( block_kind k )
{
  return k == block_kind::id2 ? 1 : 0;
}

std::string_view block_name( block_kind k )
{
  switch ( k )
  {
  case block_kind::matching:
    return "Matching";
  case block_kind::two_imp:
    return "TwoImp";
  case block_kind::nand:
    return "Nand";
  case block_kind::id2:
    return "Id2";
  case block_kind::id1:
    return "Id1";
  case block_kind::id0:
    return "Id0";
  }
  return "?";
}

block_kind parse_block_kind( std::string_view name )
{
  std::string lower;
  for ( auto ch : name )
  {
    lower.push_back( static_cast<char>( std::tolower( static_cast<unsigned char>( ch ) ) ) );
  }
  for ( auto k : all_block_kinds )
  {
    std::string canonical;
    for ( auto ch : block_name( k ) )
    {
      canonical.push_back( static_cast<char>( std::tolower( static_cast<unsigned char>( ch ) ) ) );
    }
    if ( lower == canonical )
    {
      return k;
    }
  }
  if ( lower == "2imp" )
  {
    return block_kind::two_imp;
  }
  throw std::invalid_argument( "unknown block '" + std::string( name ) +
                               "' (expected Matching, TwoImp, Nand, Id2, Id1 or Id0)" );
}

long composition::n_coords() const
{
  long total = 0;
  for ( auto k : all_block_kinds )
  {
    total += ( *this )[k] * block_arity( k );
  }
  return total;
}

std::string composition::to_string() const
{
  std::string out;
  for ( auto k : all_block_kinds )
  {
    if ( ( *this )[k] == 0 )
    {
      continue;
    }
    if ( !out.empty() )
    {
      out += ' ';
    }
    out += std::string( block_name( k ) ) + ":" + std::to_string( ( *this )[k] );
  }
  return out.empty() ? "empty" : out;
}

composition parse_composition( std::string_view text )
{
  composition c;
  std::string item;
  auto flush = [&] {
    if ( item.empty() )
    {
      return;
    }
    auto const colon = item.find( ':' );
    if ( colon == std::string::npos )
    {
      throw std::invalid_argument( "composition item '" + item + "' must look like Name:count" );
    }
    long count = 0;
    try
    {
      std::size_t used = 0;
      count = std::stol( item.substr( colon + 1 ), &used );
      if ( used != item.size() - colon - 1 )
      {
        throw std::invalid_argument( "" );
      }
    }
    catch ( std::exception const& )
    {
      throw std::invalid_argument( "composition item '" + item + "' has a bad count" );
    }
    if ( count < 0 )
    {
      throw std::invalid_argument( "composition counts must be non-negative" );
    }
    c[parse_block_kind( item.substr( 0, colon ) )] += count;
    item.clear();
  };
  for ( auto ch : text )
  {
    if ( ch == ',' || std::isspace( static_cast<unsigned char>( ch ) ) )
    {
      flush();
    }
    else
    {
      item.push_back( ch );
    }
  }
  flush();
  return c;
}

two_cnf block_cnf( block_kind k )
{
  // x1 = 0, y1 = 1, x2 = 2, y2 = 3
  auto pos = []( int v ) { return literal{ v, false }; };
  auto neg = []( int v ) { return literal{ v, true }; };
  two_cnf f( block_arity( k ) );
  switch ( k )
  {
  case block_kind::id2:
    f.add_clause( { pos( 0 ) } );
    f.add_clause( { pos( 1 ) } );
    break;
  case block_kind::id1:
    f.add_clause( { pos( 0 ), pos( 1 ) } );
    f.add_clause( { neg( 0 ), neg( 1 ) } );
    break;
  case block_kind::id0:
    f.add_clause( { neg( 0 ) } );
    f.add_clause( { neg( 1 ) } );
    break;
  case block_kind::nand:
    f.add_clause( { neg( 0 ), neg( 1 ) } );
    break;
  case block_kind::matching:
    f.add_clause( { neg( 0 ), pos( 2 ) } );
    f.add_clause( { pos( 0 ), neg( 2 ) } );
    f.add_clause( { neg( 1 ), pos( 3 ) } );
    f.add_clause( { pos( 1 ), neg( 3 ) } );
    break;
  case block_kind::two_imp:
    f.add_clause( { neg( 0 ), pos( 2 ) } );
    f.add_clause( { pos( 0 ), neg( 2 ) } );
    f.add_clause( { neg( 0 ), pos( 1 ) } );
    f.add_clause( { neg( 2 ), pos( 3 ) } );
    break;
  }
  return f;
}

namespace
{

void append_shifted( std::vector<clause>& out, two_cnf const& f, int offset )
{
  for ( auto c : f.clauses() )
  {
    for ( auto& l : c.lits )
    {
      l.var += offset;
    }
    out.push_back( std::move( c ) );
  }
}

} // namespace

two_cnf disjoint_and( two_cnf const& f1, two_cnf const& f2 )
{
  std::vector<clause> all;
  all.reserve( f1.clauses().size() + f2.clauses().size() );
  append_shifted( all, f1, 0 );
  append_shifted( all, f2, f1.num_vars() );
  return two_cnf( f1.n_coords() + f2.n_coords(), std::move( all ) );
}

two_cnf compose( composition const& c, long n )
{
  if ( c.n_coords() != n )
  {
    throw std::invalid_argument( "compose: composition covers " + std::to_string( c.n_coords() ) +
                                 " coordinates, expected " + std::to_string( n ) );
  }
  return compose( c );
}

two_cnf compose( composition const& c )
{
  for ( auto k : all_block_kinds )
  {
    if ( c[k] < 0 )
    {
      throw std::invalid_argument( "compose: negative block count" );
    }
  }
  std::vector<clause> all;
  int offset = 0;
  for ( auto k : all_block_kinds )
  {
    auto const block = block_cnf( k );
    for ( long i = 0; i < c[k]; ++i )
    {
      append_shifted( all, block, offset );
      offset += block.num_vars();
    }
  }
  return two_cnf( offset / 2, std::move( all ) );
}

two_cnf permute( two_cnf const& f, automorphism const& g )
{
  if ( g.n() != f.n_coords() )
  {
    throw std::invalid_argument( "permute: automorphism and CNF differ in n" );
  }
  std::vector<clause> renamed = f.clauses();
  for ( auto& c : renamed )
  {
    for ( auto& l : c.lits )
    {
      auto const i = l.var / 2;
      auto const b = l.var % 2;
      l.var = 2 * g.coord_perm[i] + ( b ^ static_cast<int>( g.swap_bits[i] ) );
    }
  }
  return two_cnf( f.n_coords(), std::move( renamed ) );
}

namespace
{

void check_cap( two_cnf const& f, int cap, char const* who )
{
  if ( f.n_coords() > cap || f.n_coords() > max_packed_coords )
  {
    throw std::out_of_range( std::string( who ) + ": n = " + std::to_string( f.n_coords() ) +
                             " exceeds the enumeration cap " + std::to_string( cap ) );
  }
}

/* Depth-first walk over coordinates; a clause is checked as soon as its
   highest coordinate is assigned. `visit` returns false to stop early. */
void for_each_solution( two_cnf const& f, std::function<bool( std::uint64_t )> const& visit )
{
  auto const n = f.n_coords();
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> by_coord( n );
  for ( auto const& c : f.clauses() )
  {
    std::uint64_t pos = 0, neg = 0;
    int top = 0;
    for ( auto const& l : c.lits )
    {
      ( l.negated ? neg : pos ) |= 1ull << l.var;
      top = std::max( top, l.var / 2 );
    }
    by_coord[top].emplace_back( pos, neg );
  }
  bool stop = false;
  auto rec = [&]( auto&& self, int i, std::uint64_t word ) -> void {
    if ( i == n )
    {
      stop = !visit( word );
      return;
    }
    for ( std::uint64_t pair = 0; pair < 4 && !stop; ++pair )
    {
      auto const w = word | ( pair << ( 2 * i ) );
      bool ok = true;
      for ( auto const& [pos, neg] : by_coord[i] )
      {
        if ( ( ( w & pos ) | ( ~w & neg ) ) == 0 )
        {
          ok = false;
          break;
        }
      }
      if ( ok )
      {
        self( self, i + 1, w );
      }
    }
  };
  if ( n == 0 )
  {
    visit( 0 );
    return;
  }
  rec( rec, 0, 0 );
}

} // namespace

bool is_consistent( two_cnf const& f, int b, int enumeration_cap )
{
  check_cap( f, enumeration_cap, "is_consistent" );
  bool consistent = true;
  for_each_solution( f, [&]( std::uint64_t w ) {
    if ( ip_parity_of_word( w ) != ( b & 1 ) )
    {
      consistent = false;
    }
    return consistent;
  } );
  return consistent;
}

orbit_census count_solutions_by_orbit( two_cnf const& f, int enumeration_cap )
{
  check_cap( f, enumeration_cap, "count_solutions_by_orbit" );
  auto const n = f.n_coords();
  std::vector<std::uint64_t> tally( static_cast<std::size_t>( n + 1 ) * ( n + 1 ), 0 );
  for_each_solution( f, [&]( std::uint64_t w ) {
    auto const k = key_of_word( w, n );
    ++tally[static_cast<std::size_t>( k.p ) * ( n + 1 ) + k.q];
    return true;
  } );
  orbit_census out;
  for ( int p = 0; p <= n; ++p )
  {
    for ( int q = 0; p + q <= n; ++q )
    {
      if ( auto const c = tally[static_cast<std::size_t>( p ) * ( n + 1 ) + q]; c > 0 )
      {
        out[{ p, q, n - p - q }] = big_int( static_cast<unsigned long>( c ) );
      }
    }
  }
  return out;
}

std::vector<std::uint64_t> solutions( two_cnf const& f, int enumeration_cap )
{
  check_cap( f, enumeration_cap, "solutions" );
  std::vector<std::uint64_t> out;
  for_each_solution( f, [&]( std::uint64_t w ) {
    out.push_back( w );
    return true;
  } );
  std::sort( out.begin(), out.end() );
  return out;
}

std::string to_dimacs( two_cnf const& f )
{
  std::ostringstream os;
  os << "p cnf " << f.num_vars() << ' ' << f.clauses().size() << '\n';
  for ( auto const& c : f.clauses() )
  {
    for ( auto const& l : c.lits )
    {
      os << ( l.negated ? -( l.var + 1 ) : l.var + 1 ) << ' ';
    }
    os << "0\n";
  }
  return os.str();
}

two_cnf parse_dimacs( std::string_view text )
{
  std::istringstream is{ std::string( text ) };
  std::string line;
  long vars = -1, declared = -1;
  two_cnf f;
  std::vector<literal> pending;
  long seen = 0;
  while ( std::getline( is, line ) )
  {
    auto const first = line.find_first_not_of( " \t\r" );
    if ( first == std::string::npos || line[first] == 'c' || line[first] == '%' )
    {
      continue;
    }
    std::istringstream ls( line );
    if ( line[first] == 'p' )
    {
      std::string p, fmt;
      if ( vars >= 0 || !( ls >> p >> fmt >> vars >> declared ) || fmt != "cnf" || vars < 0 || declared < 0 )
      {
        throw std::invalid_argument( "parse_dimacs: bad or repeated header line" );
      }
      if ( vars % 2 != 0 )
      {
        throw std::invalid_argument( "parse_dimacs: variable count must be even (x/y pairs)" );
      }
      f = two_cnf( static_cast<int>( vars / 2 ) );
      continue;
    }
    if ( vars < 0 )
    {
      throw std::invalid_argument( "parse_dimacs: clause before header" );
    }
    long v = 0;
    while ( ls >> v )
    {
      if ( v == 0 )
      {
        f.add_clause( pending );
        pending.clear();
        ++seen;
        continue;
      }
      if ( std::labs( v ) > vars )
      {
        throw std::invalid_argument( "parse_dimacs: literal " + std::to_string( v ) + " out of range" );
      }
      pending.push_back( { static_cast<int>( std::labs( v ) - 1 ), v < 0 } );
      if ( pending.size() > 2 )
      {
        throw std::invalid_argument( "parse_dimacs: clause wider than 2" );
      }
    }
    if ( !ls.eof() )
    {
      throw std::invalid_argument( "parse_dimacs: non-numeric token" );
    }
  }
  if ( vars < 0 )
  {
    throw std::invalid_argument( "parse_dimacs: missing header" );
  }
  if ( !pending.empty() )
  {
    throw std::invalid_argument( "parse_dimacs: unterminated clause" );
  }
  if ( seen != declared )
  {
    throw std::invalid_argument( "parse_dimacs: header declares " + std::to_string( declared ) + " clauses, found " +
                                 std::to_string( seen ) );
  }
  return f;
}

} // namespace orbitforge
