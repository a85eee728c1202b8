#include <orbitforge/block_search.hpp>
#include <orbitforge/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace orbitforge
{

std::set<std::uint64_t> median_closure( std::set<std::uint64_t> const& m )
{
  std::set<std::uint64_t> closed = m;
  std::vector<std::uint64_t> items( closed.begin(), closed.end() );
  for ( bool grew = true; grew; )
  {
    grew = false;
    std::vector<std::uint64_t> fresh;
    for ( std::size_t i = 0; i < items.size(); ++i )
    {
      for ( std::size_t j = i + 1; j < items.size(); ++j )
      {
        for ( std::size_t k = j + 1; k < items.size(); ++k )
        {
          auto const w = maj( items[i], items[j], items[k] );
          if ( closed.insert( w ).second )
          {
            fresh.push_back( w );
          }
        }
      }
    }
    if ( !fresh.empty() )
    {
      grew = true;
      items.assign( closed.begin(), closed.end() );
    }
  }
  return closed;
}

bool is_median_closed( std::vector<std::uint64_t> const& m )
{
  std::set<std::uint64_t> const members( m.begin(), m.end() );
  for ( std::size_t i = 0; i < m.size(); ++i )
  {
    for ( std::size_t j = i + 1; j < m.size(); ++j )
    {
      for ( std::size_t k = j + 1; k < m.size(); ++k )
      {
        if ( !members.count( maj( m[i], m[j], m[k] ) ) )
        {
          return false;
        }
      }
    }
  }
  return true;
}

two_cnf implied_two_cnf( std::vector<std::uint64_t> const& m, int n_coords )
{
  two_cnf f( n_coords );
  auto const vars = 2 * n_coords;
  auto holds = [&]( std::vector<literal> const& lits ) {
    return std::all_of( m.begin(), m.end(), [&]( std::uint64_t w ) {
      return std::any_of( lits.begin(), lits.end(),
                          [&]( literal const& l ) { return ( ( ( w >> l.var ) & 1u ) != 0 ) != l.negated; } );
    } );
  };
  std::vector<literal> units;
  for ( int v = 0; v < vars; ++v )
  {
    for ( bool neg : { false, true } )
    {
      if ( holds( { { v, neg } } ) )
      {
        f.add_clause( { { v, neg } } );
        units.push_back( { v, neg } );
      }
    }
  }
  auto subsumed = [&]( literal const& l ) { return std::find( units.begin(), units.end(), l ) != units.end(); };
  for ( int v = 0; v < vars; ++v )
  {
    for ( int w = v + 1; w < vars; ++w )
    {
      for ( bool nv : { false, true } )
      {
        for ( bool nw : { false, true } )
        {
          literal const a{ v, nv }, b{ w, nw };
          if ( !subsumed( a ) && !subsumed( b ) && holds( { a, b } ) )
          {
            f.add_clause( { a, b } );
          }
        }
      }
    }
  }
  return f;
}

namespace
{

std::vector<std::uint64_t> accepting_words( int n, int b )
{
  std::vector<std::uint64_t> out;
  for ( std::uint64_t w = 0; w < ( 1ull << ( 2 * n ) ); ++w )
  {
    if ( ip_parity_of_word( w ) == b )
    {
      out.push_back( w );
    }
  }
  return out;
}

/* Calls fn(subset) for every median-closed subset of `base`. */
template<typename Fn>
void for_each_closed_subset( std::vector<std::uint64_t> const& base, Fn&& fn )
{
  std::vector<std::uint64_t> subset;
  for ( std::uint64_t mask = 0; mask < ( 1ull << base.size() ); ++mask )
  {
    subset.clear();
    for ( std::size_t i = 0; i < base.size(); ++i )
    {
      if ( ( mask >> i ) & 1u )
      {
        subset.push_back( base[i] );
      }
    }
    if ( is_median_closed( subset ) )
    {
      fn( subset );
    }
  }
}

bool dominates( spectrum const& a, spectrum const& b )
{
  for ( auto const& [key, c] : b.terms() )
  {
    auto const it = a.terms().find( key );
    if ( it == a.terms().end() || it->second < c )
    {
      return false;
    }
  }
  return true;
}

void check_small( int n, char const* who )
{
  if ( n < 1 || n > 2 )
  {
    throw std::out_of_range( std::string( who ) + ": only 1 or 2 coordinates are supported, got " + std::to_string( n ) );
  }
}

} // namespace

std::vector<pareto_entry> pareto_blocks( int n_coords, int b )
{
  check_small( n_coords, "pareto_blocks" );
  b &= 1;
  std::vector<pareto_entry> all;
  for_each_closed_subset( accepting_words( n_coords, b ), [&]( std::vector<std::uint64_t> const& subset ) {
    if ( subset.empty() )
    {
      return;
    }
    spectrum s( n_coords );
    for ( auto w : subset )
    {
      auto const k = key_of_word( w, n_coords );
      s.add( k.p, k.q, 1 );
    }
    all.push_back( { std::move( s ), implied_two_cnf( subset, n_coords ), b } );
  } );

  std::vector<pareto_entry> front;
  for ( std::size_t i = 0; i < all.size(); ++i )
  {
    bool keep = true;
    for ( std::size_t j = 0; j < all.size() && keep; ++j )
    {
      if ( i == j )
      {
        continue;
      }
      bool const same = all[i].spec == all[j].spec;
      // strict domination removes i; among equal spectra only the first survives
      if ( ( !same && dominates( all[j].spec, all[i].spec ) ) || ( same && j < i ) )
      {
        keep = false;
      }
    }
    if ( keep )
    {
      front.push_back( all[i] );
    }
  }
  std::sort( front.begin(), front.end(),
             []( auto const& x, auto const& y ) { return x.spec.terms() < y.spec.terms(); } );
  return front;
}

big_int exact_mu( int n, orbit_key const& k, int b )
{
  check_small( n, "exact_mu" );
  if ( k.n() != n )
  {
    throw std::invalid_argument( "exact_mu: orbit key does not match n" );
  }
  long best = 0;
  for_each_closed_subset( accepting_words( n, b & 1 ), [&]( std::vector<std::uint64_t> const& subset ) {
    long const inside = std::count_if( subset.begin(), subset.end(),
                                       [&]( std::uint64_t w ) { return key_of_word( w, n ) == k; } );
    best = std::max( best, inside );
  } );
  return best;
}

big_rational exact_rho_star( int n, int b )
{
  big_rational best = 0;
  for ( auto const& k : enumerate_orbits( n ) )
  {
    if ( k.parity() != ( b & 1 ) )
    {
      continue;
    }
    big_rational r( orbit_size( k ), exact_mu( n, k, b ) );
    r.canonicalize();
    best = std::max( best, r );
  }
  return best;
}

namespace
{

/* Dense polynomial in (p, q) with r implied; index p * (n + 1) + q. */
struct dense
{
  int n;
  std::vector<long double> v;

  explicit dense( int n_ ) : n( n_ ), v( static_cast<std::size_t>( n_ + 1 ) * ( n_ + 1 ), 0.0L ) {}
  long double& at( int p, int q ) { return v[static_cast<std::size_t>( p ) * ( n + 1 ) + q]; }
  long double at( int p, int q ) const { return v[static_cast<std::size_t>( p ) * ( n + 1 ) + q]; }
};

/* Multiplies `poly` (degree d) by a block spectrum given as (dp, dq, coeff) terms. */
void times_block( dense& poly, int d, std::vector<std::tuple<int, int, long double>> const& block, int arity )
{
  auto const top = std::min( poly.n, d + arity );
  dense out( poly.n );
  for ( int p = 0; p <= d; ++p )
  {
    for ( int q = 0; p + q <= d; ++q )
    {
      auto const c = poly.at( p, q );
      if ( c == 0 )
      {
        continue;
      }
      for ( auto const& [dp, dq, bc] : block )
      {
        if ( p + dp + q + dq <= top )
        {
          out.at( p + dp, q + dq ) += c * bc;
        }
      }
    }
  }
  poly = std::move( out );
}

std::vector<std::tuple<int, int, long double>> dense_terms( block_kind k )
{
  std::vector<std::tuple<int, int, long double>> out;
  auto const spec = block_spectrum( k );
  for ( auto const& [key, c] : spec.terms() )
  {
    out.emplace_back( key.first, key.second, static_cast<long double>( c.get_d() ) );
  }
  return out;
}

/* Back-pointer: core (a, b) with c implied by the degree, or an Id step. */
struct step
{
  enum kind_t : std::uint8_t
  {
    none,
    core,
    pad_id2,
    pad_id1,
    pad_id0
  } kind{ none };
  std::uint16_t a{ 0 }, b{ 0 };
};

} // namespace

search_result compose_search( int n, std::vector<block_kind> const& blocks, int parity, int cap )
{
  if ( n < 1 )
  {
    throw std::invalid_argument( "compose_search: n must be positive" );
  }
  if ( n > cap )
  {
    throw std::out_of_range( "compose_search: n = " + std::to_string( n ) + " exceeds the composition cap " +
                             std::to_string( cap ) );
  }
  auto const has = [&]( block_kind k ) { return std::find( blocks.begin(), blocks.end(), k ) != blocks.end(); };
  parity &= 1;

  auto const stride = static_cast<std::size_t>( n + 1 ) * ( n + 1 );
  auto index = [&]( int d, int p, int q ) { return static_cast<std::size_t>( d ) * stride + static_cast<std::size_t>( p ) * ( n + 1 ) + q; };
  std::vector<long double> best( static_cast<std::size_t>( n + 1 ) * stride, 0.0L );
  std::vector<step> from( best.size() );

  auto const m_terms = dense_terms( block_kind::matching );
  auto const t_terms = dense_terms( block_kind::two_imp );
  auto const n_terms = dense_terms( block_kind::nand );
  int const a_max = has( block_kind::matching ) ? n / 2 : 0;

  dense ma( n );
  ma.at( 0, 0 ) = 1;
  for ( int a = 0; a <= a_max; ++a )
  {
    int const b_max = has( block_kind::two_imp ) ? ( n - 2 * a ) / 2 : 0;
    dense mt = ma;
    for ( int b = 0; b <= b_max; ++b )
    {
      int const c_max = has( block_kind::nand ) ? n - 2 * a - 2 * b : 0;
      dense poly = mt;
      for ( int c = 0; c <= c_max; ++c )
      {
        int const d = 2 * a + 2 * b + c;
        for ( int p = 0; p <= d; ++p )
        {
          for ( int q = 0; p + q <= d; ++q )
          {
            auto const v = poly.at( p, q );
            auto const i = index( d, p, q );
            if ( v > best[i] )
            {
              best[i] = v;
              from[i] = { step::core, static_cast<std::uint16_t>( a ), static_cast<std::uint16_t>( b ) };
            }
          }
        }
        if ( c < c_max )
        {
          times_block( poly, d, n_terms, 1 );
        }
      }
      if ( b < b_max )
      {
        times_block( mt, 2 * a + 2 * b, t_terms, 2 );
      }
    }
    if ( a < a_max )
    {
      times_block( ma, 2 * a, m_terms, 2 );
    }
  }

  // Id padding: degree d from degree d - 1
  for ( int d = 1; d <= n; ++d )
  {
    for ( int p = 0; p <= d; ++p )
    {
      for ( int q = 0; p + q <= d; ++q )
      {
        auto const i = index( d, p, q );
        auto consider = [&]( bool allowed, int pp, int qq, long double factor, step::kind_t kind ) {
          if ( !allowed || pp < 0 || qq < 0 || pp + qq > d - 1 )
          {
            return;
          }
          auto const v = best[index( d - 1, pp, qq )] * factor;
          if ( v > best[i] )
          {
            best[i] = v;
            from[i] = { kind, 0, 0 };
          }
        };
        consider( has( block_kind::id2 ), p - 1, q, 1.0L, step::pad_id2 );
        consider( has( block_kind::id1 ), p, q - 1, 2.0L, step::pad_id1 );
        consider( has( block_kind::id0 ), p, q, 1.0L, step::pad_id0 );
      }
    }
  }

  search_result res;
  res.n = n;
  res.parity = parity;
  for ( auto const& k : enumerate_orbits( n ) )
  {
    if ( k.parity() == parity )
    {
      res.orbits.push_back( { k, {}, 0, 0, 0 } );
    }
  }

  parallel_for( 0, res.orbits.size(), [&]( std::size_t o ) {
    auto& row = res.orbits[o];
    composition c;
    int d = n, p = row.key.p, q = row.key.q;
    while ( d > 0 )
    {
      auto const s = from[index( d, p, q )];
      if ( s.kind == step::core )
      {
        c[block_kind::matching] += s.a;
        c[block_kind::two_imp] += s.b;
        c[block_kind::nand] += d - 2 * s.a - 2 * s.b;
        break;
      }
      if ( s.kind == step::none )
      {
        break;
      }
      if ( s.kind == step::pad_id2 )
      {
        ++c[block_kind::id2];
        --p;
      }
      else if ( s.kind == step::pad_id1 )
      {
        ++c[block_kind::id1];
        --q;
      }
      else
      {
        ++c[block_kind::id0];
      }
      --d;
    }
    row.orbit_size = orbit_size( row.key );
    if ( c.n_coords() != n )
    {
      row.captured = 0;
      row.exponent = INFINITY;
      return;
    }
    row.comp = c;
    row.captured = coeff_fast( c, row.key );
    row.exponent = sgn( row.captured ) == 0
                       ? INFINITY
                       : ( log2_big( row.orbit_size ) - log2_big( row.captured ) ) / static_cast<long double>( n );
  } );

  res.c = -INFINITY;
  for ( auto const& row : res.orbits )
  {
    if ( row.exponent > res.c )
    {
      res.c = row.exponent;
      res.worst = row.key;
    }
  }
  return res;
}

} // namespace orbitforge
