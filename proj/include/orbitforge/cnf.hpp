#pragma once

#include "bigint.hpp"
#include "boolfn.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace orbitforge
{

/*! \brief A literal over variable `var` (x_i = 2i, y_i = 2i+1). */
struct literal
{
  int var{ 0 };
  bool negated{ false };

  auto operator<=>( literal const& ) const = default;
};

/*! \brief A clause of width 1 or 2. */
struct clause
{
  std::vector<literal> lits;

  auto operator<=>( clause const& ) const = default;
};

class two_cnf
{
public:
  two_cnf() = default;
  explicit two_cnf( int n_coords ) : n_coords_( n_coords ) {}
  two_cnf( int n_coords, std::vector<clause> clauses );

  int n_coords() const { return n_coords_; }
  int num_vars() const { return 2 * n_coords_; }
  std::vector<clause> const& clauses() const { return clauses_; }

  /*! \brief Appends a clause; throws on width > 2, repeated literal, or out-of-range variable. */
  void add_clause( std::vector<literal> lits );

  /*! \brief Value on an interleaved word (requires n_coords <= 32). */
  bool eval( std::uint64_t word ) const;
  bool eval( assignment const& a ) const { return eval( a.word() ); }

  bool operator==( two_cnf const& ) const = default;

private:
  int n_coords_{ 0 };
  std::vector<clause> clauses_;
};

/*! \brief Clause list compiled to bit masks for fast evaluation on packed words. */
class compiled_cnf
{
public:
  explicit compiled_cnf( two_cnf const& f );

  bool eval( std::uint64_t word ) const
  {
    for ( auto const& [pos, neg] : masks_ )
    {
      if ( ( ( word & pos ) | ( ~word & neg ) ) == 0 )
      {
        return false;
      }
    }
    return true;
  }

private:
  std::vector<std::pair<std::uint64_t, std::uint64_t>> masks_;
};

/*! \brief Building blocks in canonical composition order. */
enum class block_kind
{
  matching,
  two_imp,
  nand,
  id2,
  id1,
  id0
};

inline constexpr std::array<block_kind, 6> all_block_kinds = { block_kind::matching, block_kind::two_imp,
                                                                block_kind::nand,     block_kind::id2,
                                                                block_kind::id1,      block_kind::id0 };

int block_arity( block_kind k );
int block_parity( block_kind k );
std::string_view block_name( block_kind k );
/*! \brief Accepts the canonical names (Matching, TwoImp, Nand, Id2, Id1, Id0), case-insensitive. */
block_kind parse_block_kind( std::string_view name );

/*! \brief Multiset of building blocks, counts indexed by `block_kind`. */
struct composition
{
  std::array<long, 6> counts{};

  long& operator[]( block_kind k ) { return counts[static_cast<int>( k )]; }
  long operator[]( block_kind k ) const { return counts[static_cast<int>( k )]; }

  long n_coords() const;
  int parity() const { return static_cast<int>( ( *this )[block_kind::id2] & 1 ); }
  /*! \brief e.g. "Matching:75 TwoImp:50 Nand:70", zero counts omitted. */
  std::string to_string() const;

  auto operator<=>( composition const& ) const = default;
};

/*! \brief Parses "Matching:2,Nand:6" (comma or space separated). */
composition parse_composition( std::string_view text );

two_cnf block_cnf( block_kind k );

/*! \brief Variables of `f2` are shifted past those of `f1`. */
two_cnf disjoint_and( two_cnf const& f1, two_cnf const& f2 );

/*! \brief Disjoint conjunction in canonical block order; throws if the total is not `n`. */
two_cnf compose( composition const& c, long n );
two_cnf compose( composition const& c );

/*! \brief Renames variable (i, b) to (perm[i], b ^ swap[i]), so sol(F^g) = g * sol(F). */
two_cnf permute( two_cnf const& f, automorphism const& g );

/*! \brief True iff every accepted input has IP value `b` (p mod 2 == b).
 *
 * Throws std::out_of_range above `enumeration_cap` coordinates.
 */
bool is_consistent( two_cnf const& f, int b, int enumeration_cap = default_enumeration_cap );

using orbit_census = std::map<orbit_key, big_int>;

/*! \brief Satisfying assignments counted per orbit by exhaustive search. */
orbit_census count_solutions_by_orbit( two_cnf const& f, int enumeration_cap = default_enumeration_cap );

/*! \brief Every satisfying word, in increasing order. */
std::vector<std::uint64_t> solutions( two_cnf const& f, int enumeration_cap = default_enumeration_cap );

/*! \brief DIMACS text; variable i is written as i+1. */
std::string to_dimacs( two_cnf const& f );

/*! \brief Inverse of `to_dimacs`; throws std::invalid_argument on malformed input or width > 2. */
two_cnf parse_dimacs( std::string_view text );

} // namespace orbitforge
