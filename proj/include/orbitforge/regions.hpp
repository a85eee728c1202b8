#pragma once

#include "bigint.hpp"
#include "boolfn.hpp"
#include "cnf.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace orbitforge
{

/*! \brief log2(9/5), the target exponent. */
inline constexpr long double target_exponent = 0.84799690655495001631L;

/*! \brief Exact membership of `k` in region `rid` (1..6); regions overlap. */
bool in_region( int rid, orbit_key const& k );

/*! \brief Regions containing `k`, ascending. Never empty. */
std::vector<int> classify( orbit_key const& k );

/*! \brief How recipe parameters that are fractions of n become block counts.
 *
 * `strict` requires every parameter to be an integer and throws otherwise.
 * `rounded` rounds them while keeping the coordinate total; on keys where the
 * strict recipe is integral both modes agree.
 */
enum class recipe_mode
{
  strict,
  rounded
};

struct region_config
{
  /*! \brief Padding moduli m_1..m_6 used by the strict mode. */
  std::array<long, 6> moduli{ 32, 4, 2000, 2000, 2000, 2000 };
  /*! \brief Region 3 candidates (B, C) as fractions of n. */
  std::vector<std::pair<big_rational, big_rational>> r3{ { big_rational( 17, 50 ), big_rational( 4, 25 ) },
                                                          { big_rational( 93, 200 ), big_rational( 7, 200 ) } };
  /*! \brief Region 4 candidates (A, C) as fractions of n. */
  std::vector<std::pair<big_rational, big_rational>> r4{ { big_rational( 17, 50 ), big_rational( 4, 25 ) },
                                                          { big_rational( 71, 200 ), big_rational( 29, 200 ) } };
  /*! \brief Region 5 (A, C) as fractions of n. */
  std::pair<big_rational, big_rational> r5{ big_rational( 71, 200 ), big_rational( 29, 200 ) };
};

/*! \brief Recipe compositions for region `rid` at key `k` (no padding added).
 *
 * Every composition covers k.n() coordinates and has parity 0. Regions 3 and 4
 * give two candidates. Throws std::domain_error when the strict recipe is not
 * integral or a count would be negative.
 */
std::vector<composition> region_composition( int rid, orbit_key const& k, region_config const& cfg = {},
                                             recipe_mode mode = recipe_mode::strict );

struct padding
{
  orbit_key core;
  /*! \brief Id2/Id1/Id0 counts making up the difference. */
  composition ids;
};

/*! \brief Rounds p, q, r down to multiples of `m`. */
padding pad_construction( orbit_key const& k, long m );

/*! \brief Full compositions (recipe on the padded core plus Id padding) for `k` in region `rid`. */
std::vector<composition> region_candidates( int rid, orbit_key const& k, region_config const& cfg = {},
                                            recipe_mode mode = recipe_mode::rounded );

struct ratio_report
{
  orbit_key key;
  /*! \brief Region whose recipe won, 0 for the trivial construction or a bare composition. */
  int region{ 0 };
  composition comp;
  big_int captured;
  big_int orbit_size;
  /*! \brief orbit_size / captured; meaningless when `infinite`. */
  big_rational ratio;
  bool infinite{ false };
  /*! \brief log2(ratio) / n, +inf when nothing is captured. */
  long double exponent{ 0 };
};

/*! \brief Best of the candidates at `k` (largest captured, first wins ties). */
ratio_report ratio( std::vector<composition> const& candidates, orbit_key const& k );
ratio_report ratio( composition const& c, orbit_key const& k );

/*! \brief {Id2:p, Id1:q, Id0:r}: one point of the orbit times 2^q. */
composition trivial_composition( orbit_key const& k );

/*! \brief Minimum-ratio construction over all regions containing `k`; ties go to the lower region. */
ratio_report best_construction( orbit_key const& k, region_config const& cfg = {},
                                recipe_mode mode = recipe_mode::rounded );

struct certify_policy
{
  recipe_mode mode{ recipe_mode::rounded };
  region_config config{};
  /*! \brief All orbits are certified up to this n; above it orbits are sampled per region. */
  int exhaustive_limit{ 200 };
  int per_region{ 10 };
  std::uint64_t seed{ 0x5eed };
  long double bound{ target_exponent + 0.01L };
};

struct certify_result
{
  int n{ 0 };
  /*! \brief Sorted by orbit key. */
  std::vector<ratio_report> reports;
  /*! \brief For sampled runs, the region each orbit was drawn for (0 when exhaustive). */
  std::vector<int> sampled_from;
  long double max_exponent{ 0 };
  orbit_key worst;
  bool passed{ false };
};

certify_result certify( int n, certify_policy const& policy = {} );

} // namespace orbitforge
