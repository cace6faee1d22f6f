#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "lut.hpp"
#include "lut_nonblocked.hpp"
#include "state_diagram.hpp"

namespace mvap
{

/*! \brief Level x group census of unprocessed action nodes.
 *
 * Entry (l, g) counts the action nodes at level l whose write action is
 * group g.  Level 0 exists only so that promotions from level 1 have a
 * place to land; it stays empty in a consistent table.
 */
class grp_lvl_table
{
public:
  std::int64_t count( std::size_t level, std::uint64_t group ) const
  {
    if ( level >= counts_.size() || group >= counts_[level].size() )
    {
      return 0;
    }
    return counts_[level][group];
  }

  void add( std::size_t level, std::uint64_t group, std::int64_t delta )
  {
    if ( level >= counts_.size() )
    {
      counts_.resize( level + 1u );
    }
    auto& row = counts_[level];
    if ( group >= row.size() )
    {
      row.resize( group + 1u, 0 );
    }
    row[group] += delta;
    max_group_ = std::max( max_group_, group );
    max_level_ = std::max( max_level_, level );
  }

  void set( std::size_t level, std::uint64_t group, std::int64_t value ) { add( level, group, value - count( level, group ) ); }

  /* largest group id in use (G) and deepest level (L) */
  std::uint64_t max_group() const noexcept { return max_group_; }
  std::size_t max_level() const noexcept { return max_level_; }

  void raise_max_group( std::uint64_t g ) { max_group_ = std::max( max_group_, g ); }

  std::int64_t lower_levels( std::uint64_t group ) const
  {
    std::int64_t s = 0;
    for ( std::size_t l = 2; l <= max_level_; ++l )
    {
      s += count( l, group );
    }
    return s;
  }

  std::int64_t total() const
  {
    std::int64_t s = 0;
    for ( auto const& row : counts_ )
    {
      s = std::accumulate( row.begin(), row.end(), s );
    }
    return s;
  }

  bool all_non_negative() const
  {
    return std::all_of( counts_.begin(), counts_.end(), []( auto const& row ) {
      return std::all_of( row.begin(), row.end(), []( auto c ) { return c >= 0; } );
    } );
  }

  bool top_level_empty() const
  {
    for ( std::uint64_t g = 0; g <= max_group_; ++g )
    {
      if ( count( 1u, g ) != 0 )
      {
        return false;
      }
    }
    return true;
  }

  friend bool operator==( grp_lvl_table const&, grp_lvl_table const& ) = default;

private:
  std::vector<std::vector<std::int64_t>> counts_;
  std::uint64_t max_group_ = 0u;
  std::size_t max_level_ = 0u;
};

/* sum_{i=0}^{d-1} n^i, keeps groups of different write widths apart */
inline std::uint64_t group_offset( radix n, std::size_t d )
{
  std::uint64_t s = 0u, p = 1u;
  for ( std::size_t i = 0; i < d; ++i )
  {
    s += p;
    p *= n.value();
  }
  return s;
}

/*! \brief Assigns each action node its write group and builds the census.
 *
 * The group of node j is `parent.outVal(writeDim) + offset(writeDim)`, so
 * two nodes share a group exactly when they share write mask and key.
 */
inline grp_lvl_table init_grp_lvl( state_diagram& d )
{
  if ( !d.is_forest() )
  {
    throw error( "state diagram contains a cycle; break cycles before compiling" );
  }
  grp_lvl_table table;
  for ( auto& j : d.nodes )
  {
    if ( j.no_action )
    {
      continue;
    }
    auto const& parent = d.nodes[j.parent];
    auto const it = parent.out_val.find( j.write_dim );
    if ( it == parent.out_val.end() )
    {
      throw error( "outVal missing on node " + to_string( parent.vector ) + "; run compute_out_vals first" );
    }
    j.grp_num = it->second + group_offset( d.base(), j.write_dim );
    table.add( *j.level, j.grp_num, 1 );
  }
  return table;
}

struct group_selection
{
  std::uint64_t group;
  bool split = false;
  std::optional<std::uint64_t> new_group;
};

struct grp_lvl_snapshot
{
  std::size_t iteration;
  std::optional<group_selection> selection;
  std::vector<std::uint64_t> members;
  grp_lvl_table table;
};

/*! \brief Stateful blocked compilation over a private copy of the diagram. */
class blocked_compiler
{
public:
  explicit blocked_compiler( state_diagram const& d )
      : diagram_( d ), processed_( d.nodes.size(), false ), lut_( detail::empty_program( d, lut_mode::blocked ) )
  {
    table_ = init_grp_lvl( diagram_ );
    trace_.push_back( { 0u, std::nullopt, {}, table_ } );
  }

  grp_lvl_table const& table() const noexcept { return table_; }
  state_diagram const& diagram() const noexcept { return diagram_; }
  std::vector<grp_lvl_snapshot> const& trace() const noexcept { return trace_; }
  lut_program const& program() const noexcept { return lut_; }

  std::size_t remaining() const
  {
    std::size_t r = 0u;
    for ( auto const& n : diagram_.nodes )
    {
      r += ( !n.no_action && !processed_[n.index] ) ? 1u : 0u;
    }
    return r;
  }

  /*! \brief Picks the next group to emit, splitting one when necessary.
   *
   * A group whose members all sit at level 1 wins, smallest id first.
   * Otherwise the group with the most level-1 members (smallest id on ties)
   * gives its deeper members to a fresh group G+1 and is returned.  Returns
   * nothing once level 1 is empty.
   */
  std::optional<group_selection> select_next_group()
  {
    auto const groups = table_.max_group();
    for ( std::uint64_t g = 0; g <= groups; ++g )
    {
      if ( table_.count( 1u, g ) > 0 && table_.lower_levels( g ) == 0 )
      {
        return group_selection{ g, false, std::nullopt };
      }
    }
    if ( table_.top_level_empty() )
    {
      return std::nullopt;
    }

    std::uint64_t best = 0u;
    for ( std::uint64_t g = 1; g <= groups; ++g )
    {
      if ( table_.count( 1u, g ) > table_.count( 1u, best ) )
      {
        best = g;
      }
    }
    auto const fresh = table_.max_group() + 1u;
    table_.raise_max_group( fresh );
    for ( std::size_t l = 2; l <= table_.max_level(); ++l )
    {
      auto const c = table_.count( l, best );
      if ( c != 0 )
      {
        table_.add( l, fresh, c );
        table_.set( l, best, 0 );
      }
    }
    for ( auto& j : diagram_.nodes )
    {
      if ( !j.no_action && !processed_[j.index] && j.grp_num == best && *j.level > 1u )
      {
        j.grp_num = fresh;
      }
    }
    return group_selection{ best, true, fresh };
  }

  /*! \brief Numbers every member of `g` and promotes their subtrees.
   *
   * Members are numbered in ascending vector order.  Each strict
   * descendant moves up one level; the members leave the table.
   */
  block const& emit_block( std::uint64_t g, std::optional<group_selection> selection = std::nullopt )
  {
    std::vector<std::uint64_t> members;
    for ( auto const& j : diagram_.nodes )
    {
      if ( !j.no_action && !processed_[j.index] && j.grp_num == g )
      {
        if ( *j.level != 1u )
        {
          throw error( "group " + std::to_string( g ) + " has member " + to_string( j.vector ) + " below level 1" );
        }
        members.push_back( j.index );
      }
    }
    if ( members.empty() )
    {
      throw error( "group " + std::to_string( g ) + " has no unprocessed members" );
    }

    block b;
    b.id = lut_.blocks.size() + 1u;
    std::vector<std::uint64_t> stack;
    for ( auto idx : members )
    {
      auto& j = diagram_.nodes[idx];
      auto p = detail::make_pass( diagram_, j, lut_.passes.size() + 1u );
      p.block_id = b.id;
      if ( b.passes.empty() )
      {
        b.write_mask = p.write_mask;
        b.write_key = p.write_key;
      }
      j.pass_num = p.number;
      b.passes.push_back( lut_.passes.size() );
      lut_.passes.push_back( std::move( p ) );

      stack.assign( j.children.begin(), j.children.end() );
      while ( !stack.empty() )
      {
        auto& v = diagram_.nodes[stack.back()];
        stack.pop_back();
        table_.add( *v.level - 1u, v.grp_num, 1 );
        table_.add( *v.level, v.grp_num, -1 );
        --*v.level;
        stack.insert( stack.end(), v.children.begin(), v.children.end() );
      }
      processed_[idx] = true;
    }
    table_.set( 1u, g, 0 );

    lut_.blocks.push_back( std::move( b ) );
    trace_.push_back( { trace_.size(), selection ? selection : group_selection{ g, false, std::nullopt }, members, table_ } );
    return lut_.blocks.back();
  }

  lut_program run()
  {
    while ( auto sel = select_next_group() )
    {
      emit_block( sel->group, sel );
    }
    if ( remaining() != 0u )
    {
      throw error( "blocked compilation stalled with unprocessed nodes" );
    }
    return lut_;
  }

private:
  state_diagram diagram_;
  std::vector<bool> processed_;
  grp_lvl_table table_;
  lut_program lut_;
  std::vector<grp_lvl_snapshot> trace_;
};

inline lut_program compile_blocked( state_diagram const& d )
{
  if ( !d.is_forest() )
  {
    throw error( "state diagram contains a cycle; break cycles before compiling" );
  }
  return blocked_compiler( d ).run();
}

} // namespace mvap
