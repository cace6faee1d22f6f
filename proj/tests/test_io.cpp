#include <sstream>

#include <catch_amalgamated.hpp>

#include <mvap/benchmark.hpp>
#include <mvap/io/json.hpp>

#include "helpers.hpp"

using namespace mvap;

TEST_CASE( "LUT documents round trip", "[io]" )
{
  for ( std::uint32_t n : { 2u, 3u } )
  {
    for ( auto mode : { lut_mode::nonblocked, lut_mode::blocked } )
    {
      auto const lut = compile( make_adder_spec( radix( n ) ), mode ).lut;
      std::istringstream is( io::to_json( lut ).dump( 2 ) );
      CHECK( io::load_lut( is ) == lut );
    }
  }
}

TEST_CASE( "LUT document errors", "[io]" )
{
  auto j = io::to_json( compile( make_adder_spec( radix( 3u ) ), lut_mode::blocked ).lut );
  SECTION( "wrong format" )
  {
    j["format"] = "other";
    CHECK_THROWS_AS( io::lut_from_json( j ), error );
  }
  SECTION( "missing block id" )
  {
    j["passes"][0]["block"] = nullptr;
    CHECK_THROWS_AS( io::lut_from_json( j ), error );
  }
  SECTION( "digit out of radix" )
  {
    j["passes"][0]["input"] = "131";
    CHECK_THROWS_AS( io::lut_from_json( j ), error );
  }
  SECTION( "not JSON" )
  {
    std::istringstream is( "{ passes" );
    CHECK_THROWS_AS( io::load_lut( is ), error );
  }
}

TEST_CASE( "cost parameter documents", "[io]" )
{
  std::istringstream is( R"({ "e_set_nj": 2.0, "e_compare_pj": { "fm": 0.5, "2mm": 1.5 },
                             "cycles_write": 2, "baselines": { "CLA": { "energy_nj": 10, "delay_cycles": 40 } } })" );
  auto const p = io::load_cost_params( is );
  CHECK( p.e_set_nj == 2.0 );
  CHECK( p.e_reset_nj == 1.0 );
  CHECK( p.e_compare_pj == std::vector<double>{ 0.5, 0.0, 1.5 } );
  CHECK( p.cycles_write == 2u );
  CHECK( p.baselines.at( "CLA" ).delay_cycles == 40.0 );

  CHECK_THROWS_AS( io::cost_params_from_json( io::json{ { "e_compare_pj", { { "xmm", 1.0 } } } } ), error );
  CHECK_THROWS_AS( io::cost_params_from_json( io::json{ { "cycles_write", 0 } } ), error );
  CHECK_THROWS_AS( io::cost_params_from_json( io::json{ { "e_set_nj", "one" } } ), error );
}

TEST_CASE( "execution trace lines keep compare/write order", "[io]" )
{
  radix const t( 3u );
  auto const lut = compile( make_adder_spec( t ), lut_mode::blocked ).lut;
  auto const res = simulate_additions( lut, 1u, random_operands( t, 1u, 20u, 1u ) );
  std::ostringstream os;
  io::write_trace( res.trace, os );
  std::istringstream is( os.str() );
  std::string line;
  std::vector<std::string> events;
  while ( std::getline( is, line ) )
  {
    events.push_back( io::json::parse( line ).at( "event" ).get<std::string>() );
  }
  REQUIRE( events.size() == 1u + 21u + 9u + 1u );
  CHECK( events.front() == "run" );
  CHECK( events.back() == "totals" );
  /* first block is a single pass: compare then write */
  CHECK( events[1] == "compare" );
  CHECK( events[2] == "write" );
  /* second block holds four passes */
  CHECK( events[3] == "compare" );
  CHECK( events[6] == "compare" );
  CHECK( events[7] == "write" );
}

TEST_CASE( "diagram and grpLvl documents", "[io]" )
{
  auto const d = prepare_diagram( make_adder_spec( radix( 3u ) ) );
  auto const jd = io::to_json( d );
  CHECK( jd.at( "nodes" ).size() == 27u );
  CHECK( jd.at( "cycles" ).empty() );
  CHECK( jd.at( "cycle_breaks" ).at( 0 ).at( "new_target" ) == "020" );

  blocked_compiler bc( d );
  bc.run();
  auto const jt = io::to_json( bc.trace(), bc.diagram() );
  CHECK( jt.size() == 10u );
  CHECK( jt.at( 1 ).at( "group" ) == 19u );
  CHECK( jt.at( 1 ).at( "members" ) == io::json::array( { "101" } ) );
}
