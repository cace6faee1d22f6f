#include <catch_amalgamated.hpp>

#include <mvap/benchmark.hpp>

#include "helpers.hpp"

using namespace mvap;

namespace
{

lut_program adder( std::uint32_t n, lut_mode mode ) { return compile( make_adder_spec( radix( n ) ), mode ).lut; }

} // namespace

TEST_CASE( "standard delays", "[cost]" )
{
  CHECK( delay_cycles( adder( 3u, lut_mode::nonblocked ), 1u ) == 42.0 );
  CHECK( delay_cycles( adder( 3u, lut_mode::blocked ), 1u ) == 30.0 );
  CHECK( delay_cycles( adder( 2u, lut_mode::nonblocked ), 32u ) == 256.0 );
  CHECK( delay_cycles( adder( 3u, lut_mode::blocked ), 20u ) == 600.0 );
  CHECK( delay_cycles( adder( 3u, lut_mode::nonblocked ), 20u ) == 840.0 );
}

TEST_CASE( "delays scale with cycle costs", "[cost]" )
{
  cost_params p;
  p.cycles_write = 3u;
  CHECK( delay_cycles( adder( 3u, lut_mode::nonblocked ), 1u, p ) == 21.0 * 4.0 );
  CHECK( delay_cycles( adder( 3u, lut_mode::blocked ), 1u, p ) == 21.0 + 9.0 * 3.0 );
}

TEST_CASE( "precharge-embedded delays", "[cost]" )
{
  auto const nb = delay_cycles( adder( 3u, lut_mode::nonblocked ), 1u, {}, delay_mode::precharge_embedded );
  auto const bl = delay_cycles( adder( 3u, lut_mode::blocked ), 1u, {}, delay_mode::precharge_embedded );
  CHECK( nb == 31.5 );
  CHECK( bl == 25.5 );
}

TEST_CASE( "normalized area", "[cost]" )
{
  CHECK( normalized_area( radix( 2u ), 32u ) == 64.0 );
  CHECK( normalized_area( radix( 3u ), 20u ) == 60.0 );
  CHECK( normalized_area( radix( 3u ), 5u ) == 15.0 );
  cost_params p;
  p.cell_area_factor = 2.0;
  CHECK( normalized_area( radix( 3u ), 5u, p ) == 20.0 );
  CHECK_THROWS_AS( normalized_area( radix( 3u ), 0u ), error );
}

TEST_CASE( "energy from a trace", "[cost]" )
{
  radix const t( 3u );
  auto const lut = adder( 3u, lut_mode::nonblocked );
  auto const ops = random_operands( t, 5u, 1000u, 3u );
  cost_params p;
  p.e_set_nj = 2.0;
  p.e_reset_nj = 0.5;
  p.e_compare_pj = { 1.0, 0.0, 0.0, 0.0 };
  auto const res = simulate_additions( lut, 5u, ops, p );
  auto const& r = res.report;
  CHECK( r.set_count == r.reset_count );
  CHECK( r.write_energy_nj == Catch::Approx( 2.0 * r.set_count + 0.5 * r.reset_count ) );

  /* full-match energy counts one per matched row and compare */
  std::uint64_t matched = 0u;
  for ( auto const& c : res.trace.compares )
  {
    matched += c.matched;
  }
  CHECK( r.compare_energy_pj == Catch::Approx( static_cast<double>( matched ) ) );
  CHECK( r.total_energy_nj == Catch::Approx( r.write_energy_nj + r.compare_energy_pj * 1e-3 ) );
  CHECK( r.total_energy_per_add_nj == Catch::Approx( r.total_energy_nj / 1000.0 ) );
}

TEST_CASE( "invalid cost parameters", "[cost]" )
{
  cost_params p;
  p.cycles_compare = 0u;
  CHECK_THROWS_AS( p.check(), error );
  cost_params q;
  q.e_set_nj = -1.0;
  CHECK_THROWS_AS( q.check(), error );
  cost_params a;
  a.cell_area_factor = 0.0;
  CHECK_THROWS_AS( a.check(), error );
}

TEST_CASE( "comparison summary", "[cost]" )
{
  cost_report a, b;
  a.avg_sets = a.avg_resets = 10.0;
  b.avg_sets = b.avg_resets = 9.0;
  a.total_energy_per_add_nj = 20.0;
  b.total_energy_per_add_nj = 18.0;
  a.normalized_area = 16.0;
  b.normalized_area = 15.0;
  std::vector<cost_report> const x{ a }, y{ b };
  auto const s = comparison_summary( x, y );
  CHECK( s.mean_set_reset_reduction_pct == Catch::Approx( 10.0 ) );
  CHECK( s.mean_total_energy_reduction_pct == Catch::Approx( 10.0 ) );
  CHECK( s.mean_area_reduction_pct == Catch::Approx( 6.25 ) );
  CHECK_THROWS_AS( comparison_summary( x, std::vector<cost_report>{} ), error );
}

TEST_CASE( "size point labels", "[cost]" )
{
  CHECK( size_point{ 2u, 51u }.label() == "51b" );
  CHECK( size_point{ 3u, 80u }.label() == "80t" );
  CHECK( paired_sweep().size() == 6u );
}
