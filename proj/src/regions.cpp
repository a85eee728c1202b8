#include <orbitforge/regions.hpp>
#include <orbitforge/parallel.hpp>
#include <orbitforge/spectrum.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace orbitforge
{

bool in_region( int rid, orbit_key const& k )
{
  // every constraint scaled by 32 to stay in integers
  long const n = k.n(), p = k.p, r = k.r;
  long const c_half = 16 * n - 25 * p;            // 32 (n/2 - 25p/32)
  long const a_lin = 40 * n - 25 * p - 200 * r;   // 32 (5n/4 - 25p/32 - 25r/4)
  long const b_lin = -40 * n + 50 * p + 200 * r;  // 32 (-5n/4 + 25p/16 + 25r/4)
  switch ( rid )
  {
  case 1:
    return c_half >= 0 && a_lin >= 0 && b_lin >= 0;
  case 2:
    return c_half <= 0;
  case 3:
    return c_half >= 0 && a_lin <= 0 && n - 4 * p <= 0;
  case 4:
    return c_half >= 0 && b_lin <= 0 && 20 * r - n >= 0 && n - 4 * p <= 0;
  case 5:
    return c_half >= 0 && 20 * r - n <= 0;
  case 6:
    return n - 4 * p >= 0;
  default:
    throw std::invalid_argument( "region id must be in 1..6, got " + std::to_string( rid ) );
  }
}

std::vector<int> classify( orbit_key const& k )
{
  if ( k.p < 0 || k.q < 0 || k.r < 0 )
  {
    throw std::invalid_argument( "classify: invalid orbit key" );
  }
  std::vector<int> out;
  for ( int rid = 1; rid <= 6; ++rid )
  {
    if ( in_region( rid, k ) )
    {
      out.push_back( rid );
    }
  }
  return out;
}

namespace
{

struct share
{
  block_kind kind;
  big_rational value; /* in half-units: Nand gets twice this count */
};

long to_count( big_rational const& v, char const* what )
{
  if ( v.get_den() != 1 )
  {
    throw std::domain_error( std::string( "recipe parameter " ) + what + " = " + v.get_str() +
                             " is not an integer; pad the orbit first" );
  }
  if ( sgn( v ) < 0 )
  {
    throw std::domain_error( std::string( "recipe parameter " ) + what + " is negative at this orbit" );
  }
  return v.get_num().get_si();
}

/* Rounds non-negative shares to integers summing to `total`. */
std::vector<long> round_to_total( std::vector<big_rational> values, long total )
{
  std::vector<long> out( values.size() );
  std::vector<big_rational> frac( values.size() );
  long sum = 0;
  for ( std::size_t i = 0; i < values.size(); ++i )
  {
    if ( sgn( values[i] ) < 0 )
    {
      values[i] = 0;
    }
    big_int fl;
    mpz_fdiv_q( fl.get_mpz_t(), values[i].get_num_mpz_t(), values[i].get_den_mpz_t() );
    out[i] = fl.get_si();
    frac[i] = values[i] - big_rational( fl );
    sum += out[i];
  }
  std::vector<std::size_t> order( values.size() );
  std::iota( order.begin(), order.end(), 0 );
  std::stable_sort( order.begin(), order.end(), [&]( auto a, auto b ) { return frac[a] > frac[b]; } );
  for ( std::size_t i = 0; sum < total; ++i )
  {
    ++out[order[i % order.size()]];
    ++sum;
  }
  while ( sum > total )
  {
    auto const it = std::max_element( out.begin(), out.end() );
    --*it;
    --sum;
  }
  return out;
}

composition realize( std::vector<share> const& shares, long n, recipe_mode mode )
{
  composition c;
  if ( mode == recipe_mode::strict )
  {
    for ( auto const& s : shares )
    {
      c[s.kind] += to_count( s.value, block_name( s.kind ).data() ) * ( s.kind == block_kind::nand ? 2 : 1 );
    }
  }
  else
  {
    if ( n % 2 != 0 )
    {
      throw std::domain_error( "rounded recipe needs an even coordinate count; pad the orbit first" );
    }
    std::vector<big_rational> values;
    for ( auto const& s : shares )
    {
      values.push_back( s.value );
    }
    auto const counts = round_to_total( values, n / 2 );
    for ( std::size_t i = 0; i < shares.size(); ++i )
    {
      c[shares[i].kind] += counts[i] * ( shares[i].kind == block_kind::nand ? 2 : 1 );
    }
  }
  if ( c.n_coords() != n )
  {
    throw std::domain_error( "recipe does not cover the orbit's coordinates" );
  }
  return c;
}

} // namespace

std::vector<composition> region_composition( int rid, orbit_key const& k, region_config const& cfg, recipe_mode mode )
{
  if ( k.p < 0 || k.q < 0 || k.r < 0 )
  {
    throw std::invalid_argument( "region_composition: invalid orbit key" );
  }
  big_rational const n( k.n() ), p( k.p ), r( k.r );
  std::vector<composition> out;
  switch ( rid )
  {
  case 1:
    out.push_back( realize( { { block_kind::matching, big_rational( 5, 4 ) * n - big_rational( 25, 32 ) * p - big_rational( 25, 4 ) * r },
                              { block_kind::two_imp, big_rational( -5, 4 ) * n + big_rational( 25, 16 ) * p + big_rational( 25, 4 ) * r },
                              { block_kind::nand, n / 2 - big_rational( 25, 32 ) * p } },
                            k.n(), mode ) );
    break;
  case 2:
    if ( k.p % 2 != 0 || k.q % 2 != 0 || k.r % 2 != 0 )
    {
      throw std::domain_error( "region 2 recipe needs even p, q and r; pad the orbit first" );
    }
    {
      composition c;
      c[block_kind::matching] = k.n() / 2;
      out.push_back( c );
    }
    break;
  case 3:
    if ( k.r == k.n() )
    {
      composition c;
      c[block_kind::id0] = k.n();
      out.push_back( c );
      break;
    }
    for ( auto const& [b, c] : cfg.r3 )
    {
      out.push_back( realize( { { block_kind::two_imp, b * n }, { block_kind::nand, c * n } }, k.n(), mode ) );
    }
    break;
  case 4:
    for ( auto const& [a, c] : cfg.r4 )
    {
      out.push_back( realize( { { block_kind::matching, a * n }, { block_kind::nand, c * n } }, k.n(), mode ) );
    }
    break;
  case 5:
    out.push_back( realize( { { block_kind::matching, cfg.r5.first * n }, { block_kind::nand, cfg.r5.second * n } },
                            k.n(), mode ) );
    break;
  case 6:
    if ( k.p % 2 != 0 )
    {
      throw std::domain_error( "region 6 recipe needs even p; pad the orbit first" );
    }
    {
      composition c;
      c[block_kind::matching] = k.p / 2;
      c[block_kind::nand] = k.n() - k.p;
      out.push_back( c );
    }
    break;
  default:
    throw std::invalid_argument( "region id must be in 1..6, got " + std::to_string( rid ) );
  }
  return out;
}

padding pad_construction( orbit_key const& k, long m )
{
  if ( m < 1 )
  {
    throw std::invalid_argument( "pad_construction: modulus must be positive" );
  }
  padding out;
  out.core = { static_cast<int>( k.p - k.p % m ), static_cast<int>( k.q - k.q % m ), static_cast<int>( k.r - k.r % m ) };
  out.ids[block_kind::id2] = k.p - out.core.p;
  out.ids[block_kind::id1] = k.q - out.core.q;
  out.ids[block_kind::id0] = k.r - out.core.r;
  return out;
}

std::vector<composition> region_candidates( int rid, orbit_key const& k, region_config const& cfg, recipe_mode mode )
{
  padding pad;
  if ( mode == recipe_mode::strict )
  {
    pad = pad_construction( k, cfg.moduli.at( rid - 1 ) );
  }
  else if ( rid == 6 )
  {
    pad.core = { k.p - k.p % 2, k.q, k.r };
    pad.ids[block_kind::id2] = k.p % 2;
  }
  else
  {
    pad = pad_construction( k, 2 );
  }
  auto candidates = region_composition( rid, pad.core, cfg, mode );
  for ( auto& c : candidates )
  {
    for ( auto kind : { block_kind::id2, block_kind::id1, block_kind::id0 } )
    {
      c[kind] += pad.ids[kind];
    }
  }
  return candidates;
}

composition trivial_composition( orbit_key const& k )
{
  composition c;
  c[block_kind::id2] = k.p;
  c[block_kind::id1] = k.q;
  c[block_kind::id0] = k.r;
  return c;
}

ratio_report ratio( std::vector<composition> const& candidates, orbit_key const& k )
{
  if ( candidates.empty() )
  {
    throw std::invalid_argument( "ratio: no candidate compositions" );
  }
  ratio_report rep;
  rep.key = k;
  rep.orbit_size = orbit_size( k );
  bool first = true;
  for ( auto const& c : candidates )
  {
    auto captured = coeff_fast( c, k );
    if ( first || captured > rep.captured )
    {
      rep.captured = std::move( captured );
      rep.comp = c;
      first = false;
    }
  }
  if ( rep.captured > rep.orbit_size )
  {
    throw std::logic_error( "ratio: captured count exceeds the orbit size" );
  }
  if ( sgn( rep.captured ) == 0 )
  {
    rep.infinite = true;
    rep.exponent = INFINITY;
    return rep;
  }
  rep.ratio = big_rational( rep.orbit_size, rep.captured );
  rep.ratio.canonicalize();
  rep.exponent = ( log2_big( rep.orbit_size ) - log2_big( rep.captured ) ) / k.n();
  return rep;
}

ratio_report ratio( composition const& c, orbit_key const& k )
{
  return ratio( std::vector<composition>{ c }, k );
}

ratio_report best_construction( orbit_key const& k, region_config const& cfg, recipe_mode mode )
{
  std::optional<ratio_report> best;
  for ( auto rid : classify( k ) )
  {
    std::vector<composition> candidates;
    try
    {
      candidates = region_candidates( rid, k, cfg, mode );
    }
    catch ( std::domain_error const& )
    {
      continue;
    }
    auto rep = ratio( candidates, k );
    if ( rep.infinite )
    {
      continue;
    }
    rep.region = rid;
    if ( !best || rep.captured > best->captured )
    {
      best = std::move( rep );
    }
  }
  if ( !best )
  {
    best = ratio( trivial_composition( k ), k );
  }
  return *best;
}

certify_result certify( int n, certify_policy const& policy )
{
  if ( n < 2 )
  {
    throw std::invalid_argument( "certify: n must be at least 2" );
  }
  certify_result res;
  res.n = n;
  std::vector<orbit_key> keys;
  std::vector<int> from;
  if ( n <= policy.exhaustive_limit )
  {
    keys = enumerate_orbits( n );
    from.assign( keys.size(), 0 );
  }
  else
  {
    std::mt19937_64 rng( policy.seed );
    std::set<orbit_key> taken;
    std::vector<std::pair<orbit_key, int>> picked;
    auto const all = enumerate_orbits( n );
    for ( int rid = 1; rid <= 6; ++rid )
    {
      std::vector<orbit_key> pool;
      for ( auto const& k : all )
      {
        if ( in_region( rid, k ) && !taken.count( k ) )
        {
          pool.push_back( k );
        }
      }
      std::vector<orbit_key> chosen;
      std::sample( pool.begin(), pool.end(), std::back_inserter( chosen ), policy.per_region, rng );
      for ( auto const& k : chosen )
      {
        taken.insert( k );
        picked.emplace_back( k, rid );
      }
    }
    std::sort( picked.begin(), picked.end() );
    for ( auto const& [k, rid] : picked )
    {
      keys.push_back( k );
      from.push_back( rid );
    }
  }

  res.reports.resize( keys.size() );
  parallel_for( 0, keys.size(),
                [&]( std::size_t i ) { res.reports[i] = best_construction( keys[i], policy.config, policy.mode ); } );
  res.sampled_from = std::move( from );

  res.max_exponent = -INFINITY;
  for ( auto const& rep : res.reports )
  {
    if ( rep.exponent > res.max_exponent )
    {
      res.max_exponent = rep.exponent;
      res.worst = rep.key;
    }
  }
  res.passed = res.max_exponent <= policy.bound;
  return res;
}

} // namespace orbitforge
