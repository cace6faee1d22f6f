#include <random>

#include <catch_amalgamated.hpp>

#include <mvap/compile.hpp>

#include "helpers.hpp"

using namespace mvap;

namespace
{

std::vector<violation> of_kind( validation_result const& r, violation_kind k )
{
  std::vector<violation> out;
  for ( auto const& v : r.violations )
  {
    if ( v.kind == k )
    {
      out.push_back( v );
    }
  }
  return out;
}

/* binary adder passes in the historical order 110, 100, 001, 011 */
lut_program historical_binary( lut_program const& generated )
{
  std::vector<std::size_t> order;
  for ( auto in : { "110", "100", "001", "011" } )
  {
    order.push_back( test::pass_of( generated, in ) );
  }
  return reorder_passes( generated, order );
}

} // namespace

TEST_CASE( "oracle addition", "[verify]" )
{
  radix const t( 3u );
  /* 12 + 21 in base 3, digits least significant first */
  CHECK( oracle_add( std::vector<std::uint8_t>{ 2, 1 }, std::vector<std::uint8_t>{ 1, 2 }, t ) ==
         std::vector<std::uint8_t>{ 0, 1, 1 } );
  CHECK( oracle_add( std::vector<std::uint8_t>{ 1, 2 }, std::vector<std::uint8_t>{ 0, 0 }, t ) ==
         std::vector<std::uint8_t>{ 1, 2, 0 } );
  CHECK( oracle_add( std::vector<std::uint8_t>{ 1, 1, 1, 1 }, std::vector<std::uint8_t>{ 1, 0, 0, 0 }, radix( 2u ) ) ==
         std::vector<std::uint8_t>{ 0, 0, 0, 0, 1 } );
  CHECK_THROWS_AS( oracle_add( std::vector<std::uint8_t>{ 1 }, std::vector<std::uint8_t>{ 1, 0 }, t ), error );
}

TEST_CASE( "historical binary order validates", "[verify]" )
{
  auto const spec = make_adder_spec( radix( 2u ) );
  auto const lut = historical_binary( compile( spec, lut_mode::nonblocked ).lut );
  CHECK( validate_lut( spec, lut ).ok() );
}

TEST_CASE( "swapping the first two historical passes causes a domino rewrite", "[verify]" )
{
  auto const spec = make_adder_spec( radix( 2u ) );
  auto const lut = swap_passes( historical_binary( compile( spec, lut_mode::nonblocked ).lut ), 1u, 2u );
  auto const r = validate_lut( spec, lut );
  CHECK_FALSE( r.ok() );
  auto const domino = of_kind( r, violation_kind::domino_rewrite );
  REQUIRE( domino.size() == 1u );
  CHECK( to_string( domino[0].initial ) == "100" );
  REQUIRE( domino[0].trajectory.size() == 3u );
  CHECK( to_string( domino[0].trajectory[1] ) == "110" );
  CHECK( to_string( domino[0].trajectory[2] ) == "101" );
  CHECK( describe( domino[0] ).find( "100 -> 110 -> 101" ) != std::string::npos );
  CHECK_FALSE( of_kind( r, violation_kind::ordering_breach ).empty() );
}

TEST_CASE( "swapping the first two generated passes causes a domino rewrite", "[verify]" )
{
  auto const spec = make_adder_spec( radix( 2u ) );
  auto const lut = swap_passes( compile( spec, lut_mode::nonblocked ).lut, 1u, 2u );
  auto const domino = of_kind( validate_lut( spec, lut ), violation_kind::domino_rewrite );
  REQUIRE( domino.size() == 1u );
  CHECK( to_string( domino[0].initial ) == "011" );
}

TEST_CASE( "missing and wrong passes are reported", "[verify]" )
{
  auto const spec = make_adder_spec( radix( 3u ) );
  auto lut = compile( spec, lut_mode::nonblocked ).lut;

  SECTION( "dropped pass" )
  {
    auto cut = lut;
    cut.passes.erase( cut.passes.begin() );
    for ( auto& p : cut.passes )
    {
      --p.number;
    }
    cut.blocks.clear();
    for ( std::size_t i = 0; i < cut.passes.size(); ++i )
    {
      cut.blocks.push_back( { i + 1u, cut.passes[i].write_mask, cut.passes[i].write_key, { i } } );
    }
    CHECK_FALSE( of_kind( validate_lut( spec, cut ), violation_kind::wrong_final_state ).empty() );
  }
  SECTION( "wrong write key" )
  {
    auto& p = lut.passes[3];
    p.write_key[0] = static_cast<std::uint8_t>( ( p.write_key[0] + 1u ) % 3u );
    lut.blocks[3].write_key = p.write_key;
    CHECK_FALSE( validate_lut( spec, lut ).ok() );
  }
}

TEST_CASE( "empty program on the identity spec is valid", "[verify]" )
{
  auto const spec = make_identity_spec( radix( 3u ), 3u, { 2u } );
  auto const lut = compile( spec, lut_mode::nonblocked ).lut;
  CHECK( validate_lut( spec, lut ).ok() );
}

TEST_CASE( "compilers validate on adders and random specs", "[verify]" )
{
  for ( std::uint32_t n : { 2u, 3u, 4u } )
  {
    auto const spec = make_adder_spec( radix( n ) );
    for ( auto mode : { lut_mode::nonblocked, lut_mode::blocked } )
    {
      CHECK( validate_lut( spec, compile( spec, mode ).lut ).ok() );
    }
  }

  std::mt19937_64 rng( 2024u );
  radix const t( 3u );
  int compiled = 0;
  for ( int trial = 0; trial < 100; ++trial )
  {
    std::vector<std::size_t> write;
    while ( write.empty() )
    {
      for ( std::size_t p = 0; p < 3u; ++p )
      {
        if ( rng() % 2u )
        {
          write.push_back( p );
        }
      }
    }
    std::vector<state_vector> outputs;
    for ( std::uint64_t i = 0; i < 27u; ++i )
    {
      auto v = from_index( i, t, 3u );
      for ( auto p : write )
      {
        v[p] = static_cast<std::uint8_t>( rng() % 3u );
      }
      outputs.push_back( v );
    }
    function_spec const spec( t, 3u, write, outputs );
    for ( auto mode : { lut_mode::nonblocked, lut_mode::blocked } )
    {
      try
      {
        auto const c = compile( spec, mode );
        CHECK( validate_lut( spec, c.lut ).ok() );
        ++compiled;
      }
      catch ( no_valid_redirect const& )
      {
        CHECK( build_diagram( spec ).cycles.size() > 0u );
      }
    }
  }
  CHECK( compiled > 0 );
}
