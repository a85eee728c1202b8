#pragma once

#include "bigint.hpp"
#include "boolfn.hpp"
#include "cnf.hpp"

#include <map>
#include <utility>

namespace orbitforge
{

/*! \brief Homogeneous polynomial sum C_{p,q,r} x^p y^q z^r with positive integer coefficients.
 *
 * Terms are keyed by (p, q); r = degree - p - q.
 */
class spectrum
{
public:
  using term_map = std::map<std::pair<int, int>, big_int>;

  spectrum() = default;
  explicit spectrum( int degree ) : degree_( degree ) {}

  /*! \brief The constant polynomial 1. */
  static spectrum unit();

  int degree() const { return degree_; }
  term_map const& terms() const { return terms_; }

  /*! \brief Adds `c` to the coefficient at (p, q, degree-p-q); zero is ignored. */
  void add( int p, int q, big_int const& c );

  /*! \brief Coefficient at `k`, 0 when absent; throws if k.n() differs from the degree. */
  big_int coeff( orbit_key const& k ) const;

  big_int total_mass() const;

  bool operator==( spectrum const& ) const = default;

private:
  int degree_{ 0 };
  term_map terms_;
};

spectrum block_spectrum( block_kind k );

spectrum mul( spectrum const& a, spectrum const& b );

/*! \brief s^e by binary exponentiation. */
spectrum power( spectrum const& s, long e );

spectrum composition_spectrum( composition const& c );

/*! \brief Census produced by `count_solutions_by_orbit` as a spectrum of the given degree. */
spectrum from_census( orbit_census const& census, int degree );

/*! \brief The three product families used by the region recipes. */
enum class spectrum_family
{
  matching_two_imp_nand,
  two_imp_nand,
  matching_nand
};

/*! \brief Coefficient of any block composition at `k` without expanding the product.
 *
 * Id blocks factor out as a monomial; the remaining
 * Matching^A TwoImp^B Nand^N core is read off as a single convolution sum,
 * O((A + B + N) * q) big-integer operations.
 */
big_int coeff_fast( composition const& c, orbit_key const& k );

/*! \brief Family form: Matching^a TwoImp^b Nand^(2 c_half). Throws if a count outside the family is nonzero. */
big_int coeff_fast( spectrum_family family, long a, long b, long c_half, orbit_key const& k );

} // namespace orbitforge
