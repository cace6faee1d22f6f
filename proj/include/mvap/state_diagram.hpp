#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "digit.hpp"
#include "function_spec.hpp"

namespace mvap
{

/*! \brief One input vector of the truth table viewed as a state. */
struct state_node
{
  state_vector vector;
  std::uint64_t index = 0u;
  bool no_action = false;

  /* output state; `parent == index` for noAction roots */
  std::uint64_t parent = 0u;
  std::vector<std::uint64_t> children;

  /* distance to the root; empty while the node lies on or leads into a cycle */
  std::optional<std::uint32_t> level;

  std::uint64_t grp_num = 0u;
  std::optional<std::size_t> pass_num;

  /* digit positions written when this node is processed as an input */
  std::size_t write_dim = 0u;

  /* base-n value of this node's digits under the dimension-d write mask */
  std::map<std::size_t, std::uint64_t> out_val;
};

/*! \brief Record of one redirected cycle edge. */
struct cycle_break
{
  std::vector<std::uint64_t> cycle;
  std::uint64_t source;
  std::uint64_t original_target;
  std::uint64_t new_target;
  std::size_t write_dim;
};

class no_valid_redirect : public error
{
public:
  no_valid_redirect( std::vector<std::uint64_t> cycle, std::string const& what )
      : error( what ), cycle_( std::move( cycle ) )
  {
  }

  std::vector<std::uint64_t> const& cycle() const noexcept { return cycle_; }

private:
  std::vector<std::uint64_t> cycle_;
};

/*! \brief Directed state diagram of a function spec.
 *
 * Node i is the input vector with base-n value i; its edge points at its
 * (effective) output.  Cycles of length two or more are listed in
 * `cycles` until `break_cycles` removes them.
 */
struct state_diagram
{
  function_spec spec;
  std::vector<state_node> nodes;
  std::vector<std::vector<std::uint64_t>> cycles;
  std::vector<cycle_break> breaks;

  radix base() const noexcept { return spec.base(); }

  std::vector<std::uint64_t> roots() const
  {
    std::vector<std::uint64_t> r;
    for ( auto const& n : nodes )
    {
      if ( n.no_action )
      {
        r.push_back( n.index );
      }
    }
    return r;
  }

  std::size_t action_count() const
  {
    return static_cast<std::size_t>(
        std::count_if( nodes.begin(), nodes.end(), []( auto const& n ) { return !n.no_action; } ) );
  }

  state_vector const& effective_output( std::uint64_t i ) const { return nodes.at( nodes.at( i ).parent ).vector; }

  /*! \brief Positions overwritten by a write of dimension `d`.
   *
   * Dimension |W| is the standard write set.  Each extra dimension adds the
   * next kept position counting from the last one, so for the adder (write
   * B C, keep A) dimension 3 covers A B C.  Returned in ascending order.
   */
  std::vector<std::size_t> write_mask( std::size_t d ) const
  {
    auto const& w = spec.write_positions();
    auto const& k = spec.kept_positions();
    if ( d < w.size() || d > spec.arity() )
    {
      throw error( "write dimension " + std::to_string( d ) + " out of range" );
    }
    std::vector<std::size_t> mask = w;
    for ( std::size_t extra = 0; extra < d - w.size(); ++extra )
    {
      mask.push_back( k[k.size() - 1u - extra] );
    }
    std::sort( mask.begin(), mask.end() );
    return mask;
  }

  std::uint64_t masked_value( state_vector const& v, std::size_t d ) const
  {
    std::uint64_t value = 0u;
    for ( auto p : write_mask( d ) )
    {
      value = value * base().value() + v[p];
    }
    return value;
  }

  bool is_forest() const { return cycles.empty() && std::all_of( nodes.begin(), nodes.end(), []( auto const& n ) { return n.level.has_value(); } ); }
};

namespace detail
{

inline void link_children( state_diagram& d )
{
  for ( auto& n : d.nodes )
  {
    n.children.clear();
  }
  for ( auto const& n : d.nodes )
  {
    if ( n.parent != n.index )
    {
      d.nodes[n.parent].children.push_back( n.index );
    }
  }
  /* children are pushed in ascending index order already */
}

/* functional-graph cycle search; every node has out-degree one */
inline std::vector<std::vector<std::uint64_t>> find_cycles( std::vector<state_node> const& nodes )
{
  enum : std::uint8_t { unvisited, active, finished };
  std::vector<std::uint8_t> color( nodes.size(), unvisited );
  std::vector<std::vector<std::uint64_t>> cycles;

  for ( std::uint64_t start = 0; start < nodes.size(); ++start )
  {
    if ( color[start] != unvisited )
    {
      continue;
    }
    std::vector<std::uint64_t> path;
    auto v = start;
    while ( color[v] == unvisited )
    {
      color[v] = active;
      path.push_back( v );
      v = nodes[v].parent;
    }
    if ( color[v] == active && nodes[v].parent != v )
    {
      auto it = std::find( path.begin(), path.end(), v );
      std::vector<std::uint64_t> cycle( it, path.end() );
      std::sort( cycle.begin(), cycle.end() );
      cycles.push_back( std::move( cycle ) );
    }
    for ( auto p : path )
    {
      color[p] = finished;
    }
  }
  std::sort( cycles.begin(), cycles.end() );
  return cycles;
}

inline void compute_levels( state_diagram& d )
{
  for ( auto& n : d.nodes )
  {
    n.level.reset();
  }
  /* walk id per node, so each walk detects its own repeats in O(1) */
  std::vector<std::uint64_t> seen( d.nodes.size(), 0u );
  std::uint64_t walk = 0u;
  std::vector<std::uint64_t> path;
  for ( auto& start : d.nodes )
  {
    if ( start.level )
    {
      continue;
    }
    ++walk;
    path.clear();
    auto v = start.index;
    std::optional<std::uint32_t> base;
    while ( true )
    {
      auto& n = d.nodes[v];
      if ( n.level )
      {
        base = n.level;
        break;
      }
      if ( n.parent == n.index )
      {
        n.level = 0u;
        base = 0u;
        break;
      }
      if ( seen[v] == walk || seen[v] == ~std::uint64_t{ 0 } )
      {
        break;
      }
      seen[v] = walk;
      path.push_back( v );
      v = n.parent;
    }
    if ( !base )
    {
      /* on a cycle or feeding one */
      for ( auto p : path )
      {
        seen[p] = ~std::uint64_t{ 0 };
      }
      continue;
    }
    for ( auto it = path.rbegin(); it != path.rend(); ++it )
    {
      d.nodes[*it].level = ++*base;
    }
  }
}

} // namespace detail

/*! \brief Builds the state diagram of `spec`.
 *
 * Cycles are detected and listed but not removed; nodes on a cycle or
 * leading into one have no level until `break_cycles` runs.
 */
inline state_diagram build_diagram( function_spec const& spec )
{
  state_diagram d{ spec, {}, {}, {} };
  d.nodes.resize( spec.size() );
  for ( std::uint64_t i = 0; i < spec.size(); ++i )
  {
    auto& n = d.nodes[i];
    n.vector = spec.input( i );
    n.index = i;
    n.parent = to_index( spec.output( i ), spec.base() );
    n.no_action = n.parent == i;
    n.write_dim = spec.write_positions().size();
  }
  detail::link_children( d );
  d.cycles = detail::find_cycles( d.nodes );
  detail::compute_levels( d );
  return d;
}

/*! \brief Removes every cycle by redirecting one edge per cycle.
 *
 * Cycle members are tried in ascending order as the edge source x with
 * target y.  Replacement targets y' keep y's written digits and vary the
 * kept digits of the smallest extended write mask that admits a solution.
 * Roots are preferred, then any target whose parent chain does not return
 * to x.
 */
inline state_diagram break_cycles( state_diagram d )
{
  auto const n = d.base();
  auto const w = d.spec.write_positions().size();
  auto const m = d.spec.arity();

  auto const leads_back_to = [&]( std::uint64_t from, std::uint64_t target ) {
    auto v = from;
    for ( std::size_t steps = 0; steps <= d.nodes.size(); ++steps )
    {
      if ( v == target )
      {
        return true;
      }
      if ( d.nodes[v].parent == v )
      {
        return false;
      }
      v = d.nodes[v].parent;
    }
    /* entered some other cycle without meeting the target */
    return false;
  };

  auto const try_redirect = [&]( std::vector<std::uint64_t> const& cycle, std::uint64_t src ) -> bool {
    auto const y = d.nodes[src].parent;
    auto const& y_vec = d.nodes[y].vector;
    for ( auto dim = w + 1u; dim <= m; ++dim )
    {
      auto const mask = d.write_mask( dim );
      std::vector<std::size_t> free_pos;
      for ( auto p : mask )
      {
        if ( !std::binary_search( d.spec.write_positions().begin(), d.spec.write_positions().end(), p ) )
        {
          free_pos.push_back( p );
        }
      }
      std::vector<std::uint64_t> candidates;
      auto const combos = checked_pow( n, free_pos.size() );
      for ( std::uint64_t c = 0; c < combos; ++c )
      {
        auto cand = y_vec;
        auto const assignment = from_index( c, n, free_pos.size() );
        for ( std::size_t i = 0; i < free_pos.size(); ++i )
        {
          cand[free_pos[i]] = assignment[i];
        }
        auto const idx = to_index( cand, n );
        if ( idx != y )
        {
          candidates.push_back( idx );
        }
      }
      std::sort( candidates.begin(), candidates.end() );

      std::optional<std::uint64_t> chosen;
      for ( auto c : candidates )
      {
        if ( d.nodes[c].no_action && c != src )
        {
          chosen = c;
          break;
        }
      }
      if ( !chosen )
      {
        for ( auto c : candidates )
        {
          if ( !leads_back_to( c, src ) )
          {
            chosen = c;
            break;
          }
        }
      }
      if ( chosen )
      {
        d.nodes[src].parent = *chosen;
        d.nodes[src].write_dim = dim;
        d.breaks.push_back( { cycle, src, y, *chosen, dim } );
        return true;
      }
    }
    return false;
  };

  for ( auto const& cycle : d.cycles )
  {
    bool fixed = false;
    for ( auto src : cycle )
    {
      if ( try_redirect( cycle, src ) )
      {
        fixed = true;
        break;
      }
    }
    if ( !fixed )
    {
      std::string members;
      for ( auto v : cycle )
      {
        members += ( members.empty() ? "" : " " ) + to_string( d.nodes[v].vector );
      }
      throw no_valid_redirect( cycle, "no valid redirect breaks the cycle {" + members + "}" );
    }
  }

  detail::link_children( d );
  d.cycles = detail::find_cycles( d.nodes );
  detail::compute_levels( d );
  if ( !d.is_forest() )
  {
    throw error( "cycle breaking left a cycle behind" );
  }
  return d;
}

/*! \brief Populates `out_val` on every node that is the target of an action edge. */
inline state_diagram compute_out_vals( state_diagram d )
{
  for ( auto& n : d.nodes )
  {
    n.out_val.clear();
  }
  for ( auto const& n : d.nodes )
  {
    if ( n.no_action )
    {
      continue;
    }
    auto& parent = d.nodes[n.parent];
    parent.out_val[n.write_dim] = d.masked_value( parent.vector, n.write_dim );
  }
  return d;
}

/*! \brief Build, break cycles and compute outVal in one step. */
inline state_diagram prepare_diagram( function_spec const& spec )
{
  return compute_out_vals( break_cycles( build_diagram( spec ) ) );
}

/* number of action nodes per level, index = level */
inline std::vector<std::size_t> level_census( state_diagram const& d )
{
  std::vector<std::size_t> census;
  for ( auto const& n : d.nodes )
  {
    if ( n.no_action || !n.level )
    {
      continue;
    }
    if ( census.size() <= *n.level )
    {
      census.resize( *n.level + 1u, 0u );
    }
    ++census[*n.level];
  }
  return census;
}

} // namespace mvap
