#pragma once

#include "bigint.hpp"
#include "boolfn.hpp"
#include "cnf.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace orbitforge
{

/*! \brief splitmix64 step, used to derive per-round and per-orbit seeds. */
std::uint64_t derive_seed( std::uint64_t root, std::uint64_t index );

/*! \brief t = max(1, ceil(2 |S| ln|S| / captured)) with the natural log. */
std::uint64_t cover_target( big_int const& orbit_size, big_int const& captured );

struct cover_report
{
  orbit_key key;
  big_int captured;
  big_int orbit_size;
  std::uint64_t t_target{ 0 };
  int rounds_used{ 0 };
  bool covered{ false };
  /*! \brief Seed of every round tried; the last one produced `perms`. */
  std::vector<std::uint64_t> round_seeds;
  std::vector<automorphism> perms;
};

/*! \brief Covers orbit `k` with t randomly permuted copies of `f`.
 *
 * The whole batch is redrawn with a fresh seed when some orbit member stays
 * uncovered, up to `max_rounds` times. Throws std::invalid_argument when `f`
 * captures nothing in the orbit and std::out_of_range above `enumeration_cap`.
 */
cover_report cover_orbit( two_cnf const& f, orbit_key const& k, std::uint64_t seed, int max_rounds = 10,
                          int enumeration_cap = default_enumeration_cap );

struct circuit_member
{
  two_cnf cnf;
  orbit_key orbit;
  /*! \brief Round seed that drew the permutation. */
  std::uint64_t seed{ 0 };
};

/*! \brief OR of 2-CNFs. */
struct sigma3_circuit
{
  int n{ 0 };
  std::vector<circuit_member> members;
};

bool circuit_eval( sigma3_circuit const& c, assignment const& a );

enum class cover_strategy
{
  regions,
  search
};

struct assembly_report
{
  sigma3_circuit circuit;
  std::vector<cover_report> covers;
  /*! \brief Sum of t over the orbits, before duplicate copies are merged. */
  std::uint64_t total_t{ 0 };
  /*! \brief Largest orbit_size / captured seen. */
  big_rational max_ratio;
  /*! \brief n * |orbits| * max_ratio. */
  big_rational size_form;
};

/*! \brief Circuit for IP_n: one permuted cover per orbit with IP = 1. Requires n <= 10. */
assembly_report assemble_circuit( int n, cover_strategy strategy = cover_strategy::regions, std::uint64_t seed = 0x5eed );

struct verify_report
{
  std::uint64_t checked{ 0 };
  std::uint64_t agreed{ 0 };
  /*! \brief Inputs where the circuit fires but IP is 0. */
  std::uint64_t false_positives{ 0 };
  /*! \brief Inputs where IP is 1 but no member fires. */
  std::uint64_t false_negatives{ 0 };

  bool ok() const { return checked == agreed; }
};

/*! \brief Compares the circuit with IP_n on all 4^n inputs. */
verify_report verify_circuit( sigma3_circuit const& c );

} // namespace orbitforge
