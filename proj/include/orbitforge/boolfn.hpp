#pragma once

#include "bigint.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace orbitforge
{

/*! \brief Largest coordinate count handled by exhaustive enumeration unless a caller overrides it. */
inline constexpr int default_enumeration_cap = 12;

/*! \brief Largest coordinate count an `assignment` can hold (2n bits in one word). */
inline constexpr int max_packed_coords = 32;

/*! \brief An input (x, y) of IP_n packed into one word.
 *
 * Variables are interleaved: bit 2i holds x_i and bit 2i+1 holds y_i
 * (coordinates are 0-indexed). The same layout is used for CNF variables
 * and DIMACS export.
 */
class assignment
{
public:
  assignment() = default;
  assignment( int n, std::uint64_t word );

  /*! \brief Builds from bit strings, `x[0]` being coordinate 0. */
  static assignment from_strings( std::string_view x, std::string_view y );

  int n() const { return n_; }
  std::uint64_t word() const { return word_; }
  bool x( int i ) const { return ( word_ >> ( 2 * i ) ) & 1u; }
  bool y( int i ) const { return ( word_ >> ( 2 * i + 1 ) ) & 1u; }

  auto operator<=>( assignment const& ) const = default;

private:
  int n_{ 1 };
  std::uint64_t word_{ 0 };
};

struct assignment_hash
{
  std::size_t operator()( assignment const& a ) const noexcept
  {
    return std::hash<std::uint64_t>{}( a.word() ) ^ static_cast<std::size_t>( a.n() );
  }
};

using assignment_set = std::unordered_set<assignment, assignment_hash>;

/*! \brief Orbit of IP_n: counts of coordinates that are (1,1), differing, and (0,0). */
struct orbit_key
{
  int p{ 0 };
  int q{ 0 };
  int r{ 0 };

  int n() const { return p + q + r; }
  /*! \brief Value of IP_n on every member of the orbit. */
  int parity() const { return p & 1; }

  auto operator<=>( orbit_key const& ) const = default;
};

/*! \brief Element of the automorphism group of IP_n (order n! * 2^n).
 *
 * Coordinate i is moved to coordinate `coord_perm[i]`; if `swap_bits[i]`
 * is set, x_i and y_i trade places on the way.
 */
struct automorphism
{
  std::vector<int> coord_perm;
  std::vector<bool> swap_bits;

  int n() const { return static_cast<int>( coord_perm.size() ); }
  static automorphism identity( int n );
  bool operator==( automorphism const& ) const = default;
};

/*! \brief IP_n(x, y) = XOR of x_i y_i, complemented when `complement` is set. */
int ip_eval( assignment const& a, int complement = 0 );

/*! \brief IP_n value (p mod 2) of a packed interleaved word. */
int ip_parity_of_word( std::uint64_t word );

orbit_key key_of( assignment const& a );
orbit_key key_of_word( std::uint64_t word, int n );

big_int orbit_size( orbit_key const& k );

/*! \brief All (p, q, r) with p + q + r = n, ordered by p then q. */
std::vector<orbit_key> enumerate_orbits( int n );

/*! \brief Lexicographically smallest member: (0,0)^r (0,1)^q (1,1)^p over x then y. */
assignment canonical_representative( orbit_key const& k );

/*! \brief Every member of the orbit, in increasing word order. */
std::vector<assignment> orbit_members( orbit_key const& k );

assignment apply( automorphism const& g, assignment const& a );

/*! \brief Uniform group element: Fisher-Yates coordinate permutation plus n fair swap bits. */
automorphism sample_automorphism( int n, std::mt19937_64& rng );
automorphism sample_automorphism( int n, std::uint64_t seed );

/*! \brief Some g with g * a = b, when a and b share an orbit. */
std::optional<automorphism> find_automorphism( assignment const& a, assignment const& b );

struct membership_estimate
{
  double empirical{ 0.0 };
  std::uint64_t trials{ 0 };
  big_rational exact;
};

/*! \brief Pr_g[a in g * T] by Monte Carlo, together with |G a cap T| / |G a| by enumeration.
 *
 * Throws std::out_of_range when n exceeds `enumeration_cap`.
 */
membership_estimate membership_prob( assignment const& a, assignment_set const& t, std::uint64_t trials,
                                     std::uint64_t seed, int enumeration_cap = default_enumeration_cap );

} // namespace orbitforge
