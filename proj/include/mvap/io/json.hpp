#pragma once

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "../cost_model.hpp"
#include "../executor.hpp"
#include "../lut.hpp"
#include "../lut_blocked.hpp"
#include "../state_diagram.hpp"
#include "../verify.hpp"

namespace mvap::io
{

using json = nlohmann::ordered_json;

/*
 * LUT document
 *
 *   { "format": "mvap-lut", "version": 1, "radix": 3, "arity": 3,
 *     "write_positions": [1, 2], "mode": "blocked",
 *     "passes": [ { "pass": 1, "input": "101", "output": "020",
 *                   "write_mask": [0, 1, 2], "block": 1 }, ... ],
 *     "no_action": [ "000", ... ] }
 *
 * `block` is null for non-blocked programs.  Blocks are rebuilt from the
 * pass order on load.
 */
inline json to_json( lut_program const& lut )
{
  json passes = json::array();
  for ( auto const& p : lut.passes )
  {
    passes.push_back( { { "pass", p.number },
                        { "input", to_string( p.input ) },
                        { "output", to_string( p.output() ) },
                        { "write_mask", p.write_mask },
                        { "block", p.block_id ? json( *p.block_id ) : json( nullptr ) } } );
  }
  json no_action = json::array();
  for ( auto const& v : lut.no_action_inputs )
  {
    no_action.push_back( to_string( v ) );
  }
  return { { "format", "mvap-lut" },
           { "version", 1 },
           { "radix", lut.radix_value },
           { "arity", lut.arity },
           { "write_positions", lut.write_positions },
           { "mode", to_string( lut.mode ) },
           { "passes", passes },
           { "no_action", no_action } };
}

inline lut_program lut_from_json( json const& j )
{
  try
  {
    if ( j.at( "format" ).get<std::string>() != "mvap-lut" || j.at( "version" ).get<int>() != 1 )
    {
      throw error( "not a version 1 mvap-lut document" );
    }
    lut_program lut;
    lut.radix_value = radix( j.at( "radix" ).get<std::uint32_t>() ).value();
    lut.arity = j.at( "arity" ).get<std::size_t>();
    lut.write_positions = j.at( "write_positions" ).get<std::vector<std::size_t>>();
    auto const mode = j.at( "mode" ).get<std::string>();
    if ( mode != "blocked" && mode != "nonblocked" )
    {
      throw error( "unknown mode '" + mode + "'" );
    }
    lut.mode = mode == "blocked" ? lut_mode::blocked : lut_mode::nonblocked;
    auto const n = lut.base();

    for ( auto const& jp : j.at( "passes" ) )
    {
      pass p;
      p.number = jp.at( "pass" ).get<std::size_t>();
      p.input = parse_state( jp.at( "input" ).get<std::string>(), n );
      auto const out = parse_state( jp.at( "output" ).get<std::string>(), n );
      p.write_mask = jp.at( "write_mask" ).get<std::vector<std::size_t>>();
      if ( out.size() != p.input.size() )
      {
        throw error( "pass " + std::to_string( p.number ) + ": output width differs from input" );
      }
      for ( auto pos : p.write_mask )
      {
        if ( pos >= out.size() )
        {
          throw error( "pass " + std::to_string( p.number ) + ": write position out of range" );
        }
        p.write_key.push_back( out[pos] );
      }
      if ( auto const& b = jp.at( "block" ); !b.is_null() )
      {
        p.block_id = b.get<std::size_t>();
      }
      if ( lut.mode == lut_mode::blocked && !p.block_id )
      {
        throw error( "pass " + std::to_string( p.number ) + ": blocked program pass without block" );
      }
      lut.passes.push_back( std::move( p ) );
    }
    for ( std::size_t i = 0; i < lut.passes.size(); ++i )
    {
      auto const& p = lut.passes[i];
      auto const id = lut.mode == lut_mode::blocked ? *p.block_id : i + 1u;
      if ( lut.blocks.empty() || lut.blocks.back().id != id )
      {
        lut.blocks.push_back( { id, p.write_mask, p.write_key, {} } );
      }
      lut.blocks.back().passes.push_back( i );
    }
    for ( auto const& v : j.at( "no_action" ) )
    {
      lut.no_action_inputs.push_back( parse_state( v.get<std::string>(), n ) );
    }
    check_program( lut );
    return lut;
  }
  catch ( json::exception const& e )
  {
    throw error( std::string( "malformed LUT document: " ) + e.what() );
  }
}

inline lut_program load_lut( std::istream& is )
{
  json j;
  try
  {
    is >> j;
  }
  catch ( json::exception const& e )
  {
    throw error( std::string( "malformed LUT document: " ) + e.what() );
  }
  return lut_from_json( j );
}

/* graph document for debugging and figures */
inline json to_json( state_diagram const& d )
{
  json nodes = json::array();
  for ( auto const& n : d.nodes )
  {
    json out_val = json::object();
    for ( auto const& [dim, v] : n.out_val )
    {
      out_val[std::to_string( dim )] = v;
    }
    nodes.push_back( { { "vector", to_string( n.vector ) },
                       { "parent", to_string( d.nodes[n.parent].vector ) },
                       { "level", n.level ? json( *n.level ) : json( nullptr ) },
                       { "no_action", n.no_action },
                       { "write_dim", n.write_dim },
                       { "out_val", out_val } } );
  }
  json cycles = json::array();
  for ( auto const& c : d.cycles )
  {
    json members = json::array();
    for ( auto v : c )
    {
      members.push_back( to_string( d.nodes[v].vector ) );
    }
    cycles.push_back( members );
  }
  json breaks = json::array();
  for ( auto const& b : d.breaks )
  {
    breaks.push_back( { { "source", to_string( d.nodes[b.source].vector ) },
                        { "original_target", to_string( d.nodes[b.original_target].vector ) },
                        { "new_target", to_string( d.nodes[b.new_target].vector ) },
                        { "write_dim", b.write_dim } } );
  }
  return { { "format", "mvap-diagram" },
           { "radix", d.base().value() },
           { "arity", d.spec.arity() },
           { "write_positions", d.spec.write_positions() },
           { "nodes", nodes },
           { "cycles", cycles },
           { "cycle_breaks", breaks } };
}

inline json to_json( grp_lvl_table const& t )
{
  json entries = json::array();
  for ( std::size_t l = 0; l <= t.max_level(); ++l )
  {
    for ( std::uint64_t g = 0; g <= t.max_group(); ++g )
    {
      if ( auto const c = t.count( l, g ); c != 0 )
      {
        entries.push_back( { { "level", l }, { "group", g }, { "count", c } } );
      }
    }
  }
  return { { "max_group", t.max_group() }, { "max_level", t.max_level() }, { "entries", entries } };
}

/* one snapshot per blocked-compiler iteration */
inline json to_json( std::vector<grp_lvl_snapshot> const& trace, state_diagram const& d )
{
  json out = json::array();
  for ( auto const& s : trace )
  {
    json members = json::array();
    for ( auto m : s.members )
    {
      members.push_back( to_string( d.nodes[m].vector ) );
    }
    json entry = { { "iteration", s.iteration } };
    if ( s.selection )
    {
      entry["group"] = s.selection->group;
      entry["split"] = s.selection->split;
      entry["new_group"] = s.selection->new_group ? json( *s.selection->new_group ) : json( nullptr );
    }
    entry["members"] = members;
    entry["table"] = to_json( s.table );
    out.push_back( entry );
  }
  return out;
}

/* execution trace as JSON lines, one record per event */
inline void write_trace( execution_trace const& t, std::ostream& os )
{
  os << json{ { "event", "run" }, { "rows", t.rows }, { "digits", t.digits }, { "mode", to_string( t.mode ) } }.dump() << '\n';
  std::size_t c = 0u, w = 0u;
  while ( c < t.compares.size() || w < t.writes.size() )
  {
    if ( w == t.writes.size() || ( c < t.compares.size() && t.compares[c].seq < t.writes[w].seq ) )
    {
      auto const& e = t.compares[c++];
      os << json{ { "event", "compare" },
                  { "digit", e.digit_index },
                  { "pass", e.pass_number },
                  { "block", e.block_id ? json( *e.block_id ) : json( nullptr ) },
                  { "census", e.census },
                  { "matched", e.matched } }
                .dump()
         << '\n';
    }
    else
    {
      auto const& e = t.writes[w++];
      os << json{ { "event", "write" },
                  { "digit", e.digit_index },
                  { "block", e.block_id },
                  { "sets", e.counts.sets },
                  { "resets", e.counts.resets },
                  { "rows_written", e.rows_written } }
                .dump()
         << '\n';
    }
  }
  os << json{ { "event", "totals" },
              { "compare_cycles", t.compare_cycles },
              { "write_cycles", t.write_cycles },
              { "sets", t.totals().sets },
              { "resets", t.totals().resets } }
            .dump()
     << '\n';
}

/*
 * Cost parameter document, every key optional:
 *
 *   { "e_set_nj": 1.0, "e_reset_nj": 1.0,
 *     "e_compare_pj": { "fm": 0.0, "1mm": 0.0, "2mm": 0.0, "3mm": 0.0 },
 *     "cycles_compare": 1, "cycles_write": 1, "cell_area_factor": 1.5,
 *     "baselines": { "CLA": { "energy_nj": 88.8, "delay_cycles": 40 } } }
 */
inline cost_params cost_params_from_json( json const& j )
{
  cost_params p;
  try
  {
    p.e_set_nj = j.value( "e_set_nj", p.e_set_nj );
    p.e_reset_nj = j.value( "e_reset_nj", p.e_reset_nj );
    if ( j.contains( "e_compare_pj" ) )
    {
      for ( auto const& [key, value] : j.at( "e_compare_pj" ).items() )
      {
        std::size_t cls = 0u;
        if ( key != "fm" )
        {
          if ( key.size() < 3u || key.substr( key.size() - 2u ) != "mm" )
          {
            throw error( "compare energy class must be 'fm' or '<k>mm', got '" + key + "'" );
          }
          auto const digits = key.substr( 0u, key.size() - 2u );
          if ( digits.find_first_not_of( "0123456789" ) != std::string::npos || digits.size() > 2u )
          {
            throw error( "compare energy class must be 'fm' or '<k>mm', got '" + key + "'" );
          }
          cls = std::stoul( digits );
        }
        if ( p.e_compare_pj.size() <= cls )
        {
          p.e_compare_pj.resize( cls + 1u, 0.0 );
        }
        p.e_compare_pj[cls] = value.get<double>();
      }
    }
    p.cycles_compare = j.value( "cycles_compare", p.cycles_compare );
    p.cycles_write = j.value( "cycles_write", p.cycles_write );
    if ( j.contains( "cell_area_factor" ) )
    {
      p.cell_area_factor = j.at( "cell_area_factor" ).get<double>();
    }
    if ( j.contains( "baselines" ) )
    {
      for ( auto const& [name, b] : j.at( "baselines" ).items() )
      {
        p.baselines[name] = { b.value( "energy_nj", 0.0 ), b.value( "delay_cycles", 0.0 ) };
      }
    }
  }
  catch ( json::exception const& e )
  {
    throw error( std::string( "malformed cost parameters: " ) + e.what() );
  }
  p.check();
  return p;
}

inline cost_params load_cost_params( std::istream& is )
{
  json j;
  try
  {
    is >> j;
  }
  catch ( json::exception const& e )
  {
    throw error( std::string( "malformed cost parameters: " ) + e.what() );
  }
  return cost_params_from_json( j );
}

inline json to_json( cost_report const& c )
{
  return { { "radix", c.radix_value },
           { "digits", c.digits },
           { "rows", c.rows },
           { "set_count", c.set_count },
           { "reset_count", c.reset_count },
           { "avg_sets", c.avg_sets },
           { "avg_resets", c.avg_resets },
           { "write_energy_nj", c.write_energy_nj },
           { "compare_energy_pj", c.compare_energy_pj },
           { "total_energy_nj", c.total_energy_nj },
           { "write_energy_per_add_nj", c.write_energy_per_add_nj },
           { "compare_energy_per_add_pj", c.compare_energy_per_add_pj },
           { "total_energy_per_add_nj", c.total_energy_per_add_nj },
           { "delay_cycles", c.delay_cycles },
           { "normalized_area", c.normalized_area } };
}

inline json to_json( validation_result const& r )
{
  json v = json::array();
  for ( auto const& x : r.violations )
  {
    json traj = json::array();
    for ( auto const& s : x.trajectory )
    {
      traj.push_back( to_string( s ) );
    }
    v.push_back( { { "kind", to_string( x.kind ) },
                   { "initial", to_string( x.initial ) },
                   { "trajectory", traj },
                   { "expected", to_string( x.expected ) },
                   { "detail", x.detail } } );
  }
  return { { "ok", r.ok() }, { "violations", v } };
}

} // namespace mvap::io
