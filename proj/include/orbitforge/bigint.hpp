#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>

namespace orbitforge
{

using big_int = mpz_class;
using big_rational = mpq_class;

inline big_int binomial( unsigned long n, unsigned long k )
{
  big_int out;
  if ( k > n )
  {
    return out;
  }
  mpz_bin_uiui( out.get_mpz_t(), n, k );
  return out;
}

inline big_int pow2( unsigned long k )
{
  big_int out = 1;
  mpz_mul_2exp( out.get_mpz_t(), out.get_mpz_t(), k );
  return out;
}

/*! \brief log2 of a positive integer, accurate to long double precision. */
inline long double log2_big( big_int const& v )
{
  if ( sgn( v ) <= 0 )
  {
    return -INFINITY;
  }
  // top 64 bits keep the full long double mantissa
  auto const bits = mpz_sizeinbase( v.get_mpz_t(), 2 );
  if ( bits <= 64 )
  {
    return std::log2( static_cast<long double>( v.get_ui() ) );
  }
  auto const shift = bits - 64;
  big_int top = v >> shift;
  return std::log2( static_cast<long double>( top.get_ui() ) ) + static_cast<long double>( shift );
}

inline long double log2_big( big_rational const& v )
{
  return log2_big( big_int( v.get_num() ) ) - log2_big( big_int( v.get_den() ) );
}

inline std::string to_decimal( big_int const& v )
{
  return v.get_str( 10 );
}

} // namespace orbitforge
