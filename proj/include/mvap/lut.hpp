#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "digit.hpp"

namespace mvap
{

enum class lut_mode
{
  nonblocked,
  blocked
};

inline char const* to_string( lut_mode m ) { return m == lut_mode::blocked ? "blocked" : "nonblocked"; }

/*! \brief One LUT entry: compare the full input vector, then write
 * `write_key` into the `write_mask` positions of every matching row. */
struct pass
{
  std::size_t number = 0u; /* 1-based */
  state_vector input;
  std::vector<std::size_t> write_mask;
  state_vector write_key;
  std::optional<std::size_t> block_id;

  state_vector output() const
  {
    auto out = input;
    for ( std::size_t i = 0; i < write_mask.size(); ++i )
    {
      out[write_mask[i]] = write_key[i];
    }
    return out;
  }

  friend bool operator==( pass const&, pass const& ) = default;
};

/*! \brief Passes sharing one deferred write action. */
struct block
{
  std::size_t id = 0u;
  std::vector<std::size_t> write_mask;
  state_vector write_key;
  std::vector<std::size_t> passes; /* indices into lut_program::passes */

  friend bool operator==( block const&, block const& ) = default;
};

/*! \brief Ordered compare/write schedule for one digit position.
 *
 * In non-blocked mode every block holds exactly one pass and the write
 * follows its compare immediately; pass block ids stay unassigned.
 */
struct lut_program
{
  std::uint32_t radix_value = 2u;
  std::size_t arity = 0u;
  std::vector<std::size_t> write_positions;
  lut_mode mode = lut_mode::nonblocked;
  std::vector<pass> passes;
  std::vector<block> blocks;
  std::vector<state_vector> no_action_inputs;

  radix base() const { return radix( radix_value ); }
  std::size_t pass_count() const noexcept { return passes.size(); }
  std::size_t block_count() const noexcept { return blocks.size(); }

  friend bool operator==( lut_program const&, lut_program const& ) = default;
};

/* checks the structural invariants shared by both modes */
inline void check_program( lut_program const& lut )
{
  auto const n = lut.base();
  for ( std::size_t i = 0; i < lut.passes.size(); ++i )
  {
    auto const& p = lut.passes[i];
    if ( p.number != i + 1u )
    {
      throw error( "pass numbers must be consecutive from 1" );
    }
    if ( p.input.size() != lut.arity || p.write_key.size() != p.write_mask.size() )
    {
      throw error( "pass " + std::to_string( p.number ) + " has inconsistent widths" );
    }
    for ( auto d : p.input )
    {
      if ( d >= n.value() )
      {
        throw error( "pass " + std::to_string( p.number ) + " input digit out of range" );
      }
    }
    for ( std::size_t j = 0; j < p.write_mask.size(); ++j )
    {
      if ( p.write_mask[j] >= lut.arity || p.write_key[j] >= n.value() )
      {
        throw error( "pass " + std::to_string( p.number ) + " write out of range" );
      }
    }
  }
  std::vector<bool> covered( lut.passes.size(), false );
  for ( auto const& b : lut.blocks )
  {
    for ( auto idx : b.passes )
    {
      if ( idx >= lut.passes.size() || covered[idx] )
      {
        throw error( "block " + std::to_string( b.id ) + " references an invalid or repeated pass" );
      }
      covered[idx] = true;
      auto const& p = lut.passes[idx];
      if ( p.write_mask != b.write_mask || p.write_key != b.write_key )
      {
        throw error( "block " + std::to_string( b.id ) + " mixes write actions" );
      }
    }
  }
  for ( bool c : covered )
  {
    if ( !c )
    {
      throw error( "blocks do not cover every pass" );
    }
  }
}

} // namespace mvap
