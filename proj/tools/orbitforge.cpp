#include <orbitforge/asymptotics.hpp>
#include <orbitforge/block_search.hpp>
#include <orbitforge/boolfn.hpp>
#include <orbitforge/cnf.hpp>
#include <orbitforge/cover.hpp>
#include <orbitforge/parallel.hpp>
#include <orbitforge/regions.hpp>
#include <orbitforge/spectrum.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace orbitforge;
using nlohmann::ordered_json;

namespace
{

/*! \brief Exit statuses of the tool */
enum exit_status : int
{
  exit_ok = 0,
  exit_verification = 1,
  exit_usage = 2
};

struct usage_error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct verification_failure : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/*! \brief Integers beyond 2^53 become decimal strings */
ordered_json big( big_int const& v )
{
  static big_int const limit = pow2( 53 );
  if ( abs( v ) <= limit )
  {
    return v.get_si();
  }
  return to_decimal( v );
}

ordered_json big( big_rational const& v )
{
  big_rational c = v;
  c.canonicalize();
  if ( c.get_den() == 1 )
  {
    return big( big_int( c.get_num() ) );
  }
  return c.get_str( 10 );
}

ordered_json real( long double v )
{
  return static_cast<double>( v );
}

/*! \brief Tabular report rendered as json, csv or text */
struct report
{
  std::string command;
  ordered_json summary = ordered_json::object();
  std::vector<std::string> columns;
  std::vector<ordered_json> rows;
  std::vector<std::string> lines;
};

std::string cell( ordered_json const& v )
{
  if ( v.is_string() )
  {
    return v.get<std::string>();
  }
  if ( v.is_number_float() )
  {
    std::ostringstream os;
    os << std::setprecision( 10 ) << v.get<double>();
    return os.str();
  }
  return v.dump();
}

std::string csv_cell( ordered_json const& v )
{
  auto s = cell( v );
  if ( s.find_first_of( ",\"\n" ) != std::string::npos )
  {
    std::string q = "\"";
    for ( char c : s )
    {
      q += c == '"' ? std::string( "\"\"" ) : std::string( 1, c );
    }
    return q + "\"";
  }
  return s;
}

void render( report const& r, std::string const& format, std::ostream& os )
{
  if ( format == "json" )
  {
    ordered_json out = ordered_json::object();
    out["command"] = r.command;
    for ( auto const& [k, v] : r.summary.items() )
    {
      out[k] = v;
    }
    if ( !r.columns.empty() )
    {
      out["rows"] = r.rows;
    }
    os << out.dump( 2 ) << "\n";
    return;
  }
  if ( format == "csv" )
  {
    auto cols = r.columns;
    auto rows = r.rows;
    if ( cols.empty() )
    {
      for ( auto const& [k, v] : r.summary.items() )
      {
        cols.push_back( k );
      }
      rows = { r.summary };
    }
    for ( std::size_t i = 0; i < cols.size(); ++i )
    {
      os << ( i ? "," : "" ) << cols[i];
    }
    os << "\n";
    for ( auto const& row : rows )
    {
      for ( std::size_t i = 0; i < cols.size(); ++i )
      {
        os << ( i ? "," : "" ) << csv_cell( row.contains( cols[i] ) ? row[cols[i]] : ordered_json() );
      }
      os << "\n";
    }
    return;
  }
  for ( auto const& [k, v] : r.summary.items() )
  {
    os << k << ": " << ( v.is_structured() ? v.dump() : cell( v ) ) << "\n";
  }
  if ( !r.columns.empty() )
  {
    std::vector<std::size_t> width;
    for ( auto const& c : r.columns )
    {
      width.push_back( c.size() );
    }
    for ( auto const& row : r.rows )
    {
      for ( std::size_t i = 0; i < r.columns.size(); ++i )
      {
        width[i] = std::max( width[i], cell( row[r.columns[i]] ).size() );
      }
    }
    for ( std::size_t i = 0; i < r.columns.size(); ++i )
    {
      os << ( i ? "  " : "" ) << std::left << std::setw( static_cast<int>( width[i] ) ) << r.columns[i];
    }
    os << "\n";
    for ( auto const& row : r.rows )
    {
      for ( std::size_t i = 0; i < r.columns.size(); ++i )
      {
        os << ( i ? "  " : "" ) << std::left << std::setw( static_cast<int>( width[i] ) ) << cell( row[r.columns[i]] );
      }
      os << "\n";
    }
  }
  for ( auto const& l : r.lines )
  {
    os << l << "\n";
  }
}

ordered_json key_json( orbit_key const& k )
{
  return ordered_json::array( { k.p, k.q, k.r } );
}

std::string key_text( orbit_key const& k )
{
  return "(" + std::to_string( k.p ) + "," + std::to_string( k.q ) + "," + std::to_string( k.r ) + ")";
}

ordered_json ratio_row( ratio_report const& rep )
{
  ordered_json row;
  row["p"] = rep.key.p;
  row["q"] = rep.key.q;
  row["r"] = rep.key.r;
  row["region"] = rep.region;
  row["composition"] = rep.comp.to_string();
  row["captured"] = big( rep.captured );
  row["orbit_size"] = big( rep.orbit_size );
  row["ratio"] = rep.infinite ? ordered_json( "inf" ) : big( rep.ratio );
  row["exponent"] = rep.infinite ? ordered_json( "inf" ) : real( rep.exponent );
  return row;
}

std::vector<std::string> const ratio_columns{ "p", "q", "r", "region", "composition", "captured", "orbit_size", "ratio", "exponent" };

/*! \brief Orbit given by --n and --p/--q/--r */
struct orbit_args
{
  int n{ 0 };
  int p{ -1 }, q{ -1 }, r{ -1 };

  void add( CLI::App* app, bool need_key = true )
  {
    app->add_option( "--n", n, "Number of coordinates" )->required()->check( CLI::PositiveNumber );
    auto* po = app->add_option( "--p", p, "Coordinates with x = y = 1" )->check( CLI::NonNegativeNumber );
    auto* qo = app->add_option( "--q", q, "Coordinates with x != y" )->check( CLI::NonNegativeNumber );
    auto* ro = app->add_option( "--r", r, "Coordinates with x = y = 0" )->check( CLI::NonNegativeNumber );
    if ( need_key )
    {
      po->required();
      qo->required();
      ro->required();
    }
  }

  bool has_key() const { return p >= 0 && q >= 0 && r >= 0; }

  orbit_key key() const
  {
    if ( p + q + r != n )
    {
      throw usage_error( "p + q + r must equal n (" + std::to_string( p ) + " + " + std::to_string( q ) + " + " +
                         std::to_string( r ) + " != " + std::to_string( n ) + ")" );
    }
    return { p, q, r };
  }
};

report cmd_orbits( int n )
{
  report r{ "orbits" };
  r.summary["n"] = n;
  r.columns = { "p", "q", "r", "size", "value" };
  big_int total = 0;
  for ( auto const& k : enumerate_orbits( n ) )
  {
    auto const size = orbit_size( k );
    total += size;
    r.rows.push_back( { { "p", k.p }, { "q", k.q }, { "r", k.r }, { "size", big( size ) }, { "value", k.parity() } } );
  }
  r.summary["orbits"] = r.rows.size();
  r.summary["total"] = big( total );
  return r;
}

report cmd_spectrum( std::string const& comp_text, orbit_args const& o )
{
  auto const c = parse_composition( comp_text );
  report r{ "spectrum" };
  r.summary["composition"] = c.to_string();
  r.summary["n"] = c.n_coords();
  r.summary["parity"] = c.parity();
  if ( o.has_key() )
  {
    orbit_key const k{ o.p, o.q, o.r };
    if ( k.n() != c.n_coords() )
    {
      throw usage_error( "orbit has n = " + std::to_string( k.n() ) + " but the composition has " +
                         std::to_string( c.n_coords() ) + " coordinates" );
    }
    r.summary["key"] = key_json( k );
    r.summary["coefficient"] = big( coeff_fast( c, k ) );
    return r;
  }
  auto const s = composition_spectrum( c );
  r.columns = { "p", "q", "r", "coefficient" };
  for ( auto const& [key, v] : s.terms() )
  {
    r.rows.push_back( { { "p", key.first },
                        { "q", key.second },
                        { "r", s.degree() - key.first - key.second },
                        { "coefficient", big( v ) } } );
  }
  r.summary["total_mass"] = big( s.total_mass() );
  return r;
}

report cmd_classify( orbit_args const& o )
{
  auto const k = o.key();
  report r{ "classify" };
  r.summary["key"] = key_json( k );
  r.summary["regions"] = classify( k );
  return r;
}

report cmd_construct( orbit_args const& o, int region, bool strict )
{
  auto const k = o.key();
  report r{ "construct" };
  r.summary["key"] = key_json( k );
  r.columns = ratio_columns;
  if ( region == 0 && !strict )
  {
    auto const best = best_construction( k );
    r.summary["best_region"] = best.region;
    r.summary["best_composition"] = best.comp.to_string();
    r.summary["best_exponent"] = real( best.exponent );
  }
  auto const regions = region == 0 ? classify( k ) : std::vector<int>{ region };
  for ( int rid : regions )
  {
    if ( !in_region( rid, k ) )
    {
      throw usage_error( key_text( k ) + " is not in region " + std::to_string( rid ) );
    }
    auto const cands = strict ? region_composition( rid, k ) : region_candidates( rid, k );
    for ( auto const& c : cands )
    {
      auto rep = ratio( c, k );
      rep.region = rid;
      r.rows.push_back( ratio_row( rep ) );
    }
  }
  return r;
}

report cmd_certify( int n, certify_policy const& pol )
{
  std::cerr << "certify: n = " << n << "\n";
  auto const res = certify( n, pol );
  report r{ "certify" };
  r.summary["n"] = n;
  r.summary["orbits"] = res.reports.size();
  r.summary["bound"] = real( pol.bound );
  r.summary["max_exponent"] = real( res.max_exponent );
  r.summary["worst"] = key_json( res.worst );
  r.summary["passed"] = res.passed;
  r.columns = ratio_columns;
  r.columns.insert( r.columns.begin() + 3, "sampled_from" );
  for ( std::size_t i = 0; i < res.reports.size(); ++i )
  {
    auto row = ratio_row( res.reports[i] );
    row["sampled_from"] = res.sampled_from.empty() ? ordered_json() : ordered_json( res.sampled_from[i] );
    r.rows.push_back( row );
  }
  if ( !res.passed )
  {
    render( r, "text", std::cerr );
    throw verification_failure( "certify: exponent above the bound at " + key_text( res.worst ) );
  }
  return r;
}

std::string spectrum_text( spectrum const& s )
{
  std::string out;
  for ( auto const& [key, v] : s.terms() )
  {
    if ( !out.empty() )
    {
      out += " + ";
    }
    out += to_decimal( v ) + "*x^" + std::to_string( key.first ) + "y^" + std::to_string( key.second ) + "z^" +
           std::to_string( s.degree() - key.first - key.second );
  }
  return out;
}

report cmd_search_blocks( int coords, int parity )
{
  report r{ "search blocks" };
  r.summary["coords"] = coords;
  r.summary["parity"] = parity;
  r.columns = { "spectrum", "solutions", "clauses", "witness" };
  for ( auto const& e : pareto_blocks( coords, parity ) )
  {
    std::string dimacs = to_dimacs( e.witness );
    std::replace( dimacs.begin(), dimacs.end(), '\n', ';' );
    r.rows.push_back( { { "spectrum", spectrum_text( e.spec ) },
                        { "solutions", big( e.spec.total_mass() ) },
                        { "clauses", e.witness.clauses().size() },
                        { "witness", dimacs } } );
  }
  r.summary["pareto"] = r.rows.size();
  return r;
}

report cmd_search_compose( int n, int parity, std::string const& blocks_text )
{
  std::vector<block_kind> blocks;
  if ( blocks_text.empty() )
  {
    blocks.assign( all_block_kinds.begin(), all_block_kinds.end() );
  }
  else
  {
    std::stringstream ss( blocks_text );
    std::string item;
    while ( std::getline( ss, item, ',' ) )
    {
      blocks.push_back( parse_block_kind( item ) );
    }
  }
  std::cerr << "search compose: n = " << n << "\n";
  auto const res = compose_search( n, blocks, parity );
  report r{ "search compose" };
  r.summary["n"] = n;
  r.summary["parity"] = parity;
  r.summary["c"] = real( res.c );
  r.summary["worst"] = key_json( res.worst );
  r.columns = { "p", "q", "r", "composition", "captured", "orbit_size", "exponent" };
  for ( auto const& row : res.orbits )
  {
    r.rows.push_back( { { "p", row.key.p },
                        { "q", row.key.q },
                        { "r", row.key.r },
                        { "composition", row.comp.to_string() },
                        { "captured", big( row.captured ) },
                        { "orbit_size", big( row.orbit_size ) },
                        { "exponent", real( row.exponent ) } } );
  }
  return r;
}

report cmd_optimize( int region, long double step )
{
  std::cerr << "optimize: region " << region << ", step " << static_cast<double>( step ) << "\n";
  auto const res = maximize_min_T( region, step );
  report r{ "optimize" };
  r.summary["region"] = res.region;
  r.summary["grid_step"] = real( res.grid_step );
  r.summary["observed_max"] = real( res.observed_max );
  r.summary["argmax"] = { { "p_hat", real( res.p_hat ) }, { "r_hat", real( res.r_hat ) } };
  r.summary["reference_bound"] = real( res.bound );
  r.summary["evaluations"] = res.evaluations;
  return r;
}

report cmd_estimate( std::string const& family, std::string const& comp_text, orbit_args const& o )
{
  auto const k = o.key();
  auto const c = parse_composition( comp_text );
  if ( c[block_kind::nand] % 2 != 0 || c[block_kind::id2] + c[block_kind::id1] + c[block_kind::id0] != 0 )
  {
    throw usage_error( "saddle estimates need an even Nand count and no Id blocks" );
  }
  saddle_family fam;
  if ( family == "r1" )
  {
    fam = saddle_family::r1;
  }
  else if ( family == "r3" )
  {
    fam = saddle_family::r3;
  }
  else
  {
    fam = saddle_family::r4;
  }
  auto const chk = saddle_estimate( fam, c[block_kind::matching], c[block_kind::two_imp], c[block_kind::nand] / 2, k.p,
                                    k.q, k.r );
  report r{ "estimate saddle" };
  r.summary["family"] = family;
  r.summary["composition"] = c.to_string();
  r.summary["key"] = key_json( k );
  r.summary["u0"] = real( chk.point.u0 );
  r.summary["v0"] = real( chk.point.v0 );
  r.summary["hessian_det"] = real( chk.point.hessian_det );
  r.summary["residual"] = real( chk.point.residual );
  r.summary["log2_estimate"] = real( chk.log2_estimate );
  r.summary["log2_exact"] = real( chk.log2_exact );
  r.summary["relative_error"] = real( chk.relative_error );
  return r;
}

report cmd_cover( std::string const& comp_text, orbit_args const& o, std::uint64_t seed, int max_rounds )
{
  auto const k = o.key();
  auto const c = comp_text.empty() ? best_construction( k ).comp : parse_composition( comp_text );
  auto const rep = cover_orbit( compose( c, k.n() ), k, seed, max_rounds );
  report r{ "cover" };
  r.summary["key"] = key_json( k );
  r.summary["composition"] = c.to_string();
  r.summary["captured"] = big( rep.captured );
  r.summary["orbit_size"] = big( rep.orbit_size );
  r.summary["t"] = rep.t_target;
  r.summary["rounds"] = rep.rounds_used;
  r.summary["covered"] = rep.covered;
  r.summary["round_seeds"] = rep.round_seeds;
  if ( !rep.covered )
  {
    render( r, "text", std::cerr );
    throw verification_failure( "cover: orbit not covered after " + std::to_string( rep.rounds_used ) + " rounds" );
  }
  return r;
}

report cmd_assemble( int n, std::string const& strategy, std::uint64_t seed, bool verify )
{
  std::cerr << "assemble: n = " << n << ", strategy " << strategy << "\n";
  auto const rep = assemble_circuit( n, strategy == "search" ? cover_strategy::search : cover_strategy::regions, seed );
  report r{ "assemble" };
  r.summary["n"] = n;
  r.summary["strategy"] = strategy;
  r.summary["seed"] = seed;
  r.summary["members"] = rep.circuit.members.size();
  r.summary["total_t"] = rep.total_t;
  r.summary["max_ratio"] = big( rep.max_ratio );
  r.summary["size_form"] = big( rep.size_form );
  r.columns = { "p", "q", "r", "captured", "orbit_size", "t", "rounds" };
  for ( auto const& cov : rep.covers )
  {
    r.rows.push_back( { { "p", cov.key.p },
                        { "q", cov.key.q },
                        { "r", cov.key.r },
                        { "captured", big( cov.captured ) },
                        { "orbit_size", big( cov.orbit_size ) },
                        { "t", cov.t_target },
                        { "rounds", cov.rounds_used } } );
  }
  if ( verify )
  {
    auto const v = verify_circuit( rep.circuit );
    r.summary["checked"] = v.checked;
    r.summary["agreed"] = v.agreed;
    r.summary["false_positives"] = v.false_positives;
    r.summary["false_negatives"] = v.false_negatives;
    r.lines.push_back( "verified " + std::to_string( v.agreed ) + "/" + std::to_string( v.checked ) );
    if ( !v.ok() )
    {
      render( r, "text", std::cerr );
      throw verification_failure( "assemble: circuit disagrees on " + std::to_string( v.checked - v.agreed ) +
                                  " inputs" );
    }
  }
  return r;
}

std::string cmd_export( std::string const& comp_text, int circuit_n, std::uint64_t seed )
{
  if ( circuit_n > 0 )
  {
    auto const rep = assemble_circuit( circuit_n, cover_strategy::regions, seed );
    std::string out = "c circuit n " + std::to_string( circuit_n ) + " members " +
                      std::to_string( rep.circuit.members.size() ) + "\n";
    for ( std::size_t i = 0; i < rep.circuit.members.size(); ++i )
    {
      auto const& m = rep.circuit.members[i];
      out += "c member " + std::to_string( i ) + " orbit " + key_text( m.orbit ) + "\n" + to_dimacs( m.cnf );
    }
    return out;
  }
  if ( comp_text.empty() )
  {
    throw usage_error( "export dimacs needs --comp or --circuit" );
  }
  return to_dimacs( compose( parse_composition( comp_text ) ) );
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "orbitforge: depth-3 circuits for inner product via orbit covers" };
  app.require_subcommand( 1 );
  app.fallthrough();

  std::string format = "text";
  std::string output;
  unsigned threads = 0;
  std::uint64_t seed = 0x5eed;
  app.add_option( "--format", format, "Output format" )->check( CLI::IsMember( { "json", "csv", "text" } ) );
  app.add_option( "--output,-o", output, "Write data to this file instead of stdout" );
  app.add_option( "--threads", threads, "Worker threads (default: ORBITFORGE_THREADS or all cores)" );
  app.add_option( "--seed", seed, "Root seed" );

  orbit_args o_orbits, o_spectrum, o_classify, o_construct, o_estimate, o_cover;

  auto* orbits = app.add_subcommand( "orbits", "Enumerate orbits and their sizes" );
  orbits->add_option( "--n", o_orbits.n, "Number of coordinates" )->required()->check( CLI::Range( 1, 100000 ) );

  std::string spectrum_comp;
  auto* spec = app.add_subcommand( "spectrum", "Orbit spectrum of a composition, or one coefficient" );
  spec->add_option( "--comp", spectrum_comp, "Composition, e.g. Matching:2,Nand:6" )->required();
  spec->add_option( "--p", o_spectrum.p )->check( CLI::NonNegativeNumber );
  spec->add_option( "--q", o_spectrum.q )->check( CLI::NonNegativeNumber );
  spec->add_option( "--r", o_spectrum.r )->check( CLI::NonNegativeNumber );

  auto* cls = app.add_subcommand( "classify", "Regions containing an orbit" );
  o_classify.add( cls );

  int construct_region = 0;
  bool strict = false;
  auto* cons = app.add_subcommand( "construct", "Region recipes and ratios for an orbit" );
  o_construct.add( cons );
  cons->add_option( "--region", construct_region, "Only this region" )->check( CLI::Range( 1, 6 ) );
  cons->add_flag( "--strict", strict, "Exact recipes without padding or rounding" );

  int certify_n = 0;
  certify_policy pol;
  auto* cert = app.add_subcommand( "certify", "Per-orbit exponents over all or a sample of orbits" );
  cert->add_option( "--n", certify_n, "Number of coordinates" )->required()->check( CLI::Range( 2, 100000 ) );
  cert->add_option( "--per-region", pol.per_region, "Sampled orbits per region" )->check( CLI::PositiveNumber );
  cert->add_option( "--exhaustive-limit", pol.exhaustive_limit, "Check every orbit up to this n" );
  cert->add_option( "--bound", pol.bound, "Exponent bound" );

  auto* search = app.add_subcommand( "search", "Block and composition searches" );
  search->require_subcommand( 1 );
  int block_coords = 2, block_parity = 0;
  auto* blocks = search->add_subcommand( "blocks", "Pareto-optimal building blocks" );
  blocks->add_option( "--coords", block_coords, "Coordinates per block" )->check( CLI::Range( 1, 2 ) );
  blocks->add_option( "--parity", block_parity, "Parity of accepted inputs" )->check( CLI::Range( 0, 1 ) );
  int compose_n = 0, compose_parity = 0;
  std::string compose_blocks;
  auto* comp = search->add_subcommand( "compose", "Best composition per orbit and the exponent c(n)" );
  comp->add_option( "--n", compose_n, "Number of coordinates" )->required()->check( CLI::Range( 1, default_composition_cap ) );
  comp->add_option( "--parity", compose_parity, "Parity of target orbits" )->check( CLI::Range( 0, 1 ) );
  comp->add_option( "--blocks", compose_blocks, "Comma-separated block names" );

  int opt_region = 0;
  double opt_step = 1e-3;
  auto* opt = app.add_subcommand( "optimize", "Grid maximization of min(T1, T2)" );
  opt->add_option( "--region", opt_region, "Region 3 or 4" )->required()->check( CLI::IsMember( { 3, 4 } ) );
  opt->add_option( "--step", opt_step, "Grid step" )->check( CLI::PositiveNumber );

  auto* est = app.add_subcommand( "estimate", "Analytic estimates" );
  est->require_subcommand( 1 );
  std::string est_family = "r1", est_comp;
  auto* saddle = est->add_subcommand( "saddle", "Saddle-point estimate against the exact coefficient" );
  saddle->add_option( "--family", est_family, "r1, r3 or r4" )->check( CLI::IsMember( { "r1", "r3", "r4" } ) );
  saddle->add_option( "--comp", est_comp, "Composition" )->required();
  o_estimate.add( saddle );

  std::string cover_comp;
  int max_rounds = 10;
  auto* cov = app.add_subcommand( "cover", "Cover one orbit with permuted copies" );
  cov->add_option( "--comp", cover_comp, "Composition (default: best construction)" );
  cov->add_option( "--max-rounds", max_rounds, "Resampling rounds" )->check( CLI::PositiveNumber );
  o_cover.add( cov );

  int assemble_n = 0;
  std::string strategy = "regions";
  bool verify = false;
  auto* asmb = app.add_subcommand( "assemble", "Assemble the full circuit" );
  asmb->add_option( "--n", assemble_n, "Number of coordinates" )->required()->check( CLI::Range( 1, 10 ) );
  asmb->add_option( "--strategy", strategy, "Base CNFs from regions or search" )
      ->check( CLI::IsMember( { "regions", "search" } ) );
  asmb->add_flag( "--verify", verify, "Check all 4^n inputs" );

  auto* exp = app.add_subcommand( "export", "Export formulas" );
  exp->require_subcommand( 1 );
  std::string export_comp;
  int export_circuit = 0;
  auto* dimacs = exp->add_subcommand( "dimacs", "DIMACS text of a composition or an assembled circuit" );
  dimacs->add_option( "--comp", export_comp, "Composition" );
  dimacs->add_option( "--circuit", export_circuit, "Assemble a circuit for this n" )->check( CLI::Range( 1, 10 ) );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    auto const code = app.exit( e );
    return code == 0 ? exit_ok : exit_usage;
  }

  if ( threads > 0 )
  {
    set_thread_count( threads );
  }
  pol.seed = seed;

  try
  {
    report r;
    std::string raw;
    bool is_raw = false;
    if ( orbits->parsed() )
    {
      r = cmd_orbits( o_orbits.n );
    }
    else if ( spec->parsed() )
    {
      r = cmd_spectrum( spectrum_comp, o_spectrum );
    }
    else if ( cls->parsed() )
    {
      r = cmd_classify( o_classify );
    }
    else if ( cons->parsed() )
    {
      r = cmd_construct( o_construct, construct_region, strict );
    }
    else if ( cert->parsed() )
    {
      r = cmd_certify( certify_n, pol );
    }
    else if ( blocks->parsed() )
    {
      r = cmd_search_blocks( block_coords, block_parity );
    }
    else if ( comp->parsed() )
    {
      r = cmd_search_compose( compose_n, compose_parity, compose_blocks );
    }
    else if ( opt->parsed() )
    {
      r = cmd_optimize( opt_region, opt_step );
    }
    else if ( saddle->parsed() )
    {
      r = cmd_estimate( est_family, est_comp, o_estimate );
    }
    else if ( cov->parsed() )
    {
      r = cmd_cover( cover_comp, o_cover, seed, max_rounds );
    }
    else if ( asmb->parsed() )
    {
      r = cmd_assemble( assemble_n, strategy, seed, verify );
    }
    else if ( dimacs->parsed() )
    {
      raw = cmd_export( export_comp, export_circuit, seed );
      is_raw = true;
    }

    std::ofstream file;
    if ( !output.empty() )
    {
      file.open( output );
      if ( !file )
      {
        throw usage_error( "cannot open " + output + " for writing" );
      }
    }
    std::ostream& os = output.empty() ? std::cout : file;
    if ( is_raw )
    {
      os << raw;
    }
    else
    {
      render( r, format, os );
    }
    return exit_ok;
  }
  catch ( verification_failure const& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return exit_verification;
  }
  catch ( std::runtime_error const& e )
  {
    // usage_error and assembly failures
    std::cerr << "error: " << e.what() << "\n";
    return dynamic_cast<usage_error const*>( &e ) ? exit_usage : exit_verification;
  }
  catch ( std::logic_error const& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
}
