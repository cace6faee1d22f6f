#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <mvap/benchmark.hpp>
#include <mvap/io/json.hpp>

namespace
{

using namespace mvap;

struct common_options
{
  std::uint32_t radix_value = 3u;
  std::string function = "adder";
  std::string mode = "nonblocked";
};

function_spec load_function( common_options const& o )
{
  if ( o.function == "adder" )
  {
    return make_adder_spec( radix( o.radix_value ) );
  }
  std::ifstream is( o.function );
  if ( !is )
  {
    throw error( "cannot open truth table '" + o.function + "'" );
  }
  auto spec = load_spec( is );
  if ( spec.base().value() != o.radix_value )
  {
    std::cerr << "note: using radix " << spec.base().value() << " from " << o.function << "\n";
  }
  return spec;
}

lut_mode parse_mode( std::string const& m ) { return m == "blocked" ? lut_mode::blocked : lut_mode::nonblocked; }

/* writes to `path`, or stdout when it is empty or "-" */
void emit( std::string const& path, std::string const& text )
{
  if ( path.empty() || path == "-" )
  {
    std::cout << text;
    return;
  }
  std::ofstream os( path );
  if ( !os )
  {
    throw error( "cannot write '" + path + "'" );
  }
  os << text;
}

cost_params load_params( std::string const& path )
{
  if ( path.empty() )
  {
    return {};
  }
  std::ifstream is( path );
  if ( !is )
  {
    throw error( "cannot open cost parameters '" + path + "'" );
  }
  return io::load_cost_params( is );
}

void report_compilation( compilation const& c )
{
  auto const& lut = c.lut;
  std::cerr << "mode " << to_string( lut.mode ) << ": " << lut.pass_count() << " passes, " << lut.block_count()
            << " blocks, " << lut.no_action_inputs.size() << " noAction inputs\n";
  for ( auto const& b : c.diagram.breaks )
  {
    std::cerr << "cycle break: " << to_string( c.diagram.nodes[b.source].vector ) << " -> "
              << to_string( c.diagram.nodes[b.new_target].vector ) << " (was "
              << to_string( c.diagram.nodes[b.original_target].vector ) << ", writeDim " << b.write_dim << ")\n";
  }
  if ( lut.pass_count() == 0u )
  {
    std::cerr << "warning: every input is a noAction state; the program is empty\n";
  }
}

void print_violations( validation_result const& r )
{
  for ( auto const& v : r.violations )
  {
    std::cerr << "violation: " << describe( v ) << "\n";
  }
}

int cmd_compile( common_options const& o, std::string const& out )
{
  auto const spec = load_function( o );
  try
  {
    auto const c = compile( spec, parse_mode( o.mode ) );
    report_compilation( c );
    emit( out, io::to_json( c.lut ).dump( 2 ) + "\n" );
    return 0;
  }
  catch ( invalid_program const& e )
  {
    print_violations( e.result() );
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_validate( common_options const& o, std::string const& lut_path, std::optional<std::string> const& swap )
{
  auto const spec = load_function( o );
  lut_program lut;
  if ( lut_path.empty() )
  {
    auto d = prepare_diagram( spec );
    lut = parse_mode( o.mode ) == lut_mode::blocked ? compile_blocked( d ) : compile_nonblocked( d );
  }
  else
  {
    std::ifstream is( lut_path );
    if ( !is )
    {
      throw error( "cannot open LUT '" + lut_path + "'" );
    }
    lut = io::load_lut( is );
  }
  if ( swap )
  {
    auto const comma = swap->find( ',' );
    if ( comma == std::string::npos )
    {
      throw error( "--swap takes two pass numbers, e.g. 1,2" );
    }
    lut = swap_passes( lut, std::stoul( swap->substr( 0u, comma ) ), std::stoul( swap->substr( comma + 1u ) ) );
  }
  auto const r = validate_lut( spec, lut );
  std::cout << io::to_json( r ).dump( 2 ) << "\n";
  print_violations( r );
  std::cerr << ( r.ok() ? "ok" : "invalid" ) << ": " << r.violations.size() << " violations\n";
  return r.ok() ? 0 : 1;
}

struct simulate_options
{
  std::size_t digits = 20u;
  std::size_t rows = 10000u;
  std::uint64_t seed = 1u;
  bool exhaustive = false;
  std::string params;
  std::string lut;
  std::string csv;
  std::string trace;
  std::string matrix;
};

int cmd_simulate( common_options const& o, simulate_options const& s )
{
  auto const params = load_params( s.params );
  lut_program lut;
  if ( s.lut.empty() )
  {
    lut = compile( make_adder_spec( radix( o.radix_value ) ), parse_mode( o.mode ) ).lut;
  }
  else
  {
    std::ifstream is( s.lut );
    if ( !is )
    {
      throw error( "cannot open LUT '" + s.lut + "'" );
    }
    lut = io::load_lut( is );
  }
  auto const n = lut.base();
  auto const ops = s.exhaustive ? exhaustive_operands( n, s.digits ) : random_operands( n, s.digits, s.rows, s.seed );
  auto const res = simulate_additions( lut, s.digits, ops, params );

  std::ostringstream csv;
  write_report_csv( res.report, csv );
  emit( s.csv, csv.str() );
  if ( !s.trace.empty() )
  {
    std::ofstream ts( s.trace );
    io::write_trace( res.trace, ts );
  }
  if ( !s.matrix.empty() )
  {
    /* one row per addition: B digits then the carry, most significant first */
    std::ostringstream m;
    for ( auto const& sum : res.sums )
    {
      for ( auto it = sum.rbegin(); it != sum.rend(); ++it )
      {
        m << to_char( digit( *it ) );
      }
      m << '\n';
    }
    emit( s.matrix, m.str() );
  }

  std::cerr << ops.size() << " additions, " << res.mismatches << " mismatches\n";
  for ( auto const& f : res.failures )
  {
    auto const digits = []( std::vector<std::uint8_t> const& v ) {
      std::string t;
      for ( auto it = v.rbegin(); it != v.rend(); ++it )
      {
        t += to_char( digit( *it ) );
      }
      return t;
    };
    std::cerr << "row " << f.row << ": " << digits( f.operands.a ) << " + " << digits( f.operands.b ) << " expected "
              << digits( f.expected ) << " got " << digits( f.observed ) << "\n";
  }
  return res.mismatches == 0u ? 0 : 1;
}

struct bench_options
{
  std::size_t rows = 10000u;
  std::uint64_t seed = 1u;
  std::string params;
  std::string csv;
  std::string series_dir;
  std::size_t max_rows = 512u;
};

/* x-y series over the row count for 32b binary and 20t ternary */
void write_series( std::vector<bench_row> const& rows, cost_params const& params, bench_options const& b )
{
  bench_row const* bin = nullptr;
  bench_row const* ter = nullptr;
  for ( auto const& r : rows )
  {
    if ( r.size.radix_value == 2u && r.size.digits == 32u )
    {
      bin = &r;
    }
    if ( r.size.radix_value == 3u && r.size.digits == 20u )
    {
      ter = &r;
    }
  }
  if ( !bin || !ter )
  {
    return;
  }
  std::filesystem::create_directories( b.series_dir );
  std::ofstream delay( std::filesystem::path( b.series_dir ) / "delay_vs_rows.csv" );
  std::ofstream energy( std::filesystem::path( b.series_dir ) / "energy_vs_rows.csv" );
  delay << "rows,ternary_nonblocked,ternary_blocked,binary";
  energy << "rows,ternary,binary";
  for ( auto const& [name, base] : params.baselines )
  {
    delay << ',' << name;
    energy << ',' << name;
  }
  delay << '\n';
  energy << '\n';
  for ( std::size_t r = 1; r <= b.max_rows; ++r )
  {
    auto const x = static_cast<double>( r );
    /* rows run in parallel, so the array delay does not grow with them */
    delay << r << ',' << detail::fixed( ter->delay_nonblocked, 1 ) << ',' << detail::fixed( ter->delay_blocked, 1 ) << ','
          << detail::fixed( bin->delay_nonblocked, 1 );
    energy << r << ',' << detail::fixed( x * ter->report.total_energy_per_add_nj ) << ','
           << detail::fixed( x * bin->report.total_energy_per_add_nj );
    for ( auto const& [name, base] : params.baselines )
    {
      delay << ',' << detail::fixed( x * base.delay_cycles, 1 );
      energy << ',' << detail::fixed( x * base.energy_nj );
    }
    delay << '\n';
    energy << '\n';
  }
}

int cmd_bench( bench_options const& b )
{
  auto const params = load_params( b.params );
  auto const rows = run_bench( b.rows, b.seed, params );
  std::ostringstream csv;
  write_bench_csv( rows, params, csv );
  emit( b.csv, csv.str() );
  if ( !b.series_dir.empty() )
  {
    write_series( rows, params, b );
  }
  std::uint64_t mismatches = 0u;
  for ( auto const& r : rows )
  {
    mismatches += r.mismatches;
  }
  std::cerr << rows.size() << " size points, " << mismatches << " mismatches\n";
  return mismatches == 0u ? 0 : 1;
}

int cmd_export_diagram( common_options const& o, std::string const& out, std::string const& grplvl )
{
  auto const spec = load_function( o );
  auto const d = prepare_diagram( spec );
  emit( out, io::to_json( d ).dump( 2 ) + "\n" );
  if ( !grplvl.empty() )
  {
    blocked_compiler bc( d );
    bc.run();
    emit( grplvl, io::to_json( bc.trace(), bc.diagram() ).dump( 2 ) + "\n" );
  }
  return 0;
}

void add_common( CLI::App* cmd, common_options& o, bool with_mode = true )
{
  cmd->add_option( "--radix,-n", o.radix_value, "Radix of the built-in adder" )->check( CLI::Range( 2u, 16u ) );
  cmd->add_option( "--function,-f", o.function, "'adder' or a truth-table file" );
  if ( with_mode )
  {
    cmd->add_option( "--mode,-m", o.mode, "Program mode" )->check( CLI::IsMember( { "nonblocked", "blocked" } ) );
  }
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Multi-valued associative processor simulator and LUT compiler" };
  app.require_subcommand( 1 );

  common_options common;
  std::string out, lut_path, grplvl;
  std::optional<std::string> swap;
  simulate_options sim;
  bench_options bench;

  auto* compile_cmd = app.add_subcommand( "compile", "Compile a function into a LUT document" );
  add_common( compile_cmd, common );
  compile_cmd->add_option( "--out,-o", out, "Output file (default stdout)" );

  auto* validate_cmd = app.add_subcommand( "validate", "Check a LUT exhaustively against a function" );
  add_common( validate_cmd, common );
  validate_cmd->add_option( "--lut", lut_path, "LUT document (default: compile on the fly)" );
  validate_cmd->add_option( "--swap", swap, "Exchange two passes first, e.g. 1,2" );

  auto* simulate_cmd = app.add_subcommand( "simulate", "Run in-place additions and check them" );
  add_common( simulate_cmd, common );
  simulate_cmd->add_option( "--digits,-p", sim.digits, "Digits per operand" )->check( CLI::PositiveNumber );
  simulate_cmd->add_option( "--rows,-r", sim.rows, "Random additions" );
  simulate_cmd->add_option( "--seed,-s", sim.seed, "Operand seed" );
  simulate_cmd->add_flag( "--exhaustive", sim.exhaustive, "Every operand pair instead of random rows" );
  simulate_cmd->add_option( "--params", sim.params, "Cost parameter JSON" );
  simulate_cmd->add_option( "--lut", sim.lut, "LUT document (default: compile the adder)" );
  simulate_cmd->add_option( "--csv", sim.csv, "Cost report CSV (default stdout)" );
  simulate_cmd->add_option( "--trace", sim.trace, "Event trace, JSON lines" );
  simulate_cmd->add_option( "--matrix", sim.matrix, "Result digits, one row per addition" );

  auto* bench_cmd = app.add_subcommand( "bench", "Energy, area and delay over the paired size sweep" );
  bench_cmd->add_option( "--rows,-r", bench.rows, "Random additions per size" );
  bench_cmd->add_option( "--seed,-s", bench.seed, "Operand seed" );
  bench_cmd->add_option( "--params", bench.params, "Cost parameter JSON" );
  bench_cmd->add_option( "--csv", bench.csv, "Summary CSV (default stdout)" );
  bench_cmd->add_option( "--series-dir", bench.series_dir, "Directory for delay/energy vs rows series" );
  bench_cmd->add_option( "--max-rows", bench.max_rows, "Last row count in the series" )->check( CLI::PositiveNumber );

  auto* export_cmd = app.add_subcommand( "export-diagram", "Write the state diagram and grpLvl trace" );
  add_common( export_cmd, common, false );
  export_cmd->add_option( "--out,-o", out, "Diagram JSON (default stdout)" );
  export_cmd->add_option( "--grplvl", grplvl, "grpLvl snapshots JSON" );

  CLI11_PARSE( app, argc, argv );

  try
  {
    if ( *compile_cmd )
    {
      return cmd_compile( common, out );
    }
    if ( *validate_cmd )
    {
      return cmd_validate( common, lut_path, swap );
    }
    if ( *simulate_cmd )
    {
      return cmd_simulate( common, sim );
    }
    if ( *bench_cmd )
    {
      return cmd_bench( bench );
    }
    return cmd_export_diagram( common, out, grplvl );
  }
  catch ( no_valid_redirect const& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  catch ( std::exception const& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
