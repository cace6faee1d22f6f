#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lut.hpp"
#include "state_diagram.hpp"

namespace mvap
{

namespace detail
{

inline pass make_pass( state_diagram const& d, state_node const& n, std::size_t number )
{
  pass p;
  p.number = number;
  p.input = n.vector;
  p.write_mask = d.write_mask( n.write_dim );
  auto const& out = d.nodes[n.parent].vector;
  for ( auto pos : p.write_mask )
  {
    p.write_key.push_back( out[pos] );
  }
  return p;
}

inline lut_program empty_program( state_diagram const& d, lut_mode mode )
{
  lut_program lut;
  lut.radix_value = d.base().value();
  lut.arity = d.spec.arity();
  lut.write_positions = d.spec.write_positions();
  lut.mode = mode;
  for ( auto r : d.roots() )
  {
    lut.no_action_inputs.push_back( d.nodes[r].vector );
  }
  return lut;
}

} // namespace detail

/*! \brief Orders passes by a pre-order depth-first walk of every tree.
 *
 * Trees are visited by ascending root value and children by ascending
 * vector value.  Roots get no pass.  Every node is numbered before all of
 * its descendants, so no pass can match a row that an earlier pass wrote.
 */
inline lut_program compile_nonblocked( state_diagram const& d )
{
  if ( !d.is_forest() )
  {
    throw error( "state diagram contains a cycle; break cycles before compiling" );
  }
  auto lut = detail::empty_program( d, lut_mode::nonblocked );

  std::vector<std::uint64_t> stack;
  for ( auto root : d.roots() )
  {
    stack.push_back( root );
    while ( !stack.empty() )
    {
      auto const v = stack.back();
      stack.pop_back();
      auto const& n = d.nodes[v];
      if ( !n.no_action )
      {
        lut.passes.push_back( detail::make_pass( d, n, lut.passes.size() + 1u ) );
        auto const& p = lut.passes.back();
        lut.blocks.push_back( { lut.passes.size(), p.write_mask, p.write_key, { lut.passes.size() - 1u } } );
      }
      for ( auto it = n.children.rbegin(); it != n.children.rend(); ++it )
      {
        stack.push_back( *it );
      }
    }
  }
  return lut;
}

/*! \brief Same passes in a new order, renumbered from 1.
 *
 * `order[i]` is the current 1-based number of the pass that becomes pass
 * i + 1.  No validity check is made; pair with `validate_lut`.
 */
inline lut_program reorder_passes( lut_program const& lut, std::vector<std::size_t> const& order )
{
  if ( lut.mode != lut_mode::nonblocked )
  {
    throw error( "only non-blocked programs can be reordered pass by pass" );
  }
  std::vector<bool> seen( lut.passes.size(), false );
  if ( order.size() != lut.passes.size() )
  {
    throw error( "pass order must name every pass once" );
  }
  auto out = lut;
  out.passes.clear();
  out.blocks.clear();
  for ( auto number : order )
  {
    if ( number == 0u || number > lut.passes.size() || seen[number - 1u] )
    {
      throw error( "pass order must name every pass once" );
    }
    seen[number - 1u] = true;
    auto p = lut.passes[number - 1u];
    p.number = out.passes.size() + 1u;
    out.passes.push_back( p );
    out.blocks.push_back( { p.number, p.write_mask, p.write_key, { out.passes.size() - 1u } } );
  }
  return out;
}

/* passes i and j (1-based) exchanged */
inline lut_program swap_passes( lut_program const& lut, std::size_t i, std::size_t j )
{
  std::vector<std::size_t> order( lut.passes.size() );
  for ( std::size_t k = 0; k < order.size(); ++k )
  {
    order[k] = k + 1u;
  }
  if ( i == 0u || j == 0u || i > order.size() || j > order.size() )
  {
    throw error( "pass number out of range" );
  }
  std::swap( order[i - 1u], order[j - 1u] );
  return reorder_passes( lut, order );
}

} // namespace mvap
