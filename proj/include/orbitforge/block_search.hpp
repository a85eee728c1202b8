#pragma once

#include "bigint.hpp"
#include "boolfn.hpp"
#include "cnf.hpp"
#include "regions.hpp"
#include "spectrum.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace orbitforge
{

/*! \brief Coordinate-wise majority of three words. */
constexpr std::uint64_t maj( std::uint64_t a, std::uint64_t b, std::uint64_t c )
{
  return ( a & b ) | ( a & c ) | ( b & c );
}

/*! \brief Smallest superset of `m` closed under `maj`. */
std::set<std::uint64_t> median_closure( std::set<std::uint64_t> const& m );

bool is_median_closed( std::vector<std::uint64_t> const& m );

/*! \brief Every clause of width <= 2 over `num_vars` variables that all words in `m` satisfy.
 *
 * For a median-closed `m` the result has exactly `m` as its solution set.
 */
two_cnf implied_two_cnf( std::vector<std::uint64_t> const& m, int n_coords );

struct pareto_entry
{
  spectrum spec;
  two_cnf witness;
  int parity{ 0 };
};

/*! \brief Non-dominated spectra of 2-CNFs on `n_coords` (1 or 2) coordinates consistent with parity `b`. */
std::vector<pareto_entry> pareto_blocks( int n_coords, int b );

/*! \brief max |M cap S| over median-closed M whose members all have IP value `b`; n <= 2. */
big_int exact_mu( int n, orbit_key const& k, int b );

/*! \brief max over orbits of parity `b` of |S| / mu. */
big_rational exact_rho_star( int n, int b );

struct orbit_best
{
  orbit_key key;
  composition comp;
  big_int captured;
  big_int orbit_size;
  long double exponent{ 0 };
};

struct search_result
{
  int n{ 0 };
  int parity{ 0 };
  /*! \brief One row per orbit of the target parity, in key order. */
  std::vector<orbit_best> orbits;
  long double c{ 0 };
  orbit_key worst;
};

inline constexpr int default_composition_cap = 200;

/*! \brief Best composition of the allowed blocks for every orbit of parity `parity`.
 *
 * The maximisation runs in long double; each winner is recomputed exactly.
 * Throws std::out_of_range above `cap`.
 */
search_result compose_search( int n, std::vector<block_kind> const& blocks = { all_block_kinds.begin(), all_block_kinds.end() },
                              int parity = 0, int cap = default_composition_cap );

} // namespace orbitforge
