#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "function_spec.hpp"
#include "lut.hpp"

namespace mvap
{

/*! \brief Grade-school base-n addition, least significant digit first.
 *
 * Returns `a.size() + 1` digits; the last one is the final carry.
 */
inline std::vector<std::uint8_t> oracle_add( std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, radix n )
{
  if ( a.size() != b.size() )
  {
    throw error( "oracle_add operands differ in length" );
  }
  std::vector<std::uint8_t> out;
  out.reserve( a.size() + 1u );
  std::uint32_t carry = 0u;
  for ( std::size_t i = 0; i < a.size(); ++i )
  {
    auto const s = static_cast<std::uint32_t>( a[i] ) + b[i] + carry;
    out.push_back( static_cast<std::uint8_t>( s % n.value() ) );
    carry = s / n.value();
  }
  out.push_back( static_cast<std::uint8_t>( carry ) );
  return out;
}

enum class violation_kind
{
  wrong_final_state,
  domino_rewrite,
  ordering_breach
};

inline char const* to_string( violation_kind k )
{
  switch ( k )
  {
  case violation_kind::wrong_final_state:
    return "wrongFinalState";
  case violation_kind::domino_rewrite:
    return "dominoRewrite";
  default:
    return "orderingBreach";
  }
}

struct violation
{
  violation_kind kind;
  state_vector initial;
  std::vector<state_vector> trajectory; /* initial state, then the state after every write that hit it */
  state_vector expected;
  std::string detail;
};

struct validation_result
{
  std::vector<violation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/*! \brief Replays one initial vector through the program.
 *
 * Plain digit-vector semantics, independent of the CAM model: per block,
 * every member compare sees the pre-block state and the block's write is
 * applied once at the end if any member matched.
 */
inline std::vector<state_vector> replay( lut_program const& lut, state_vector const& initial )
{
  std::vector<state_vector> trajectory{ initial };
  auto state = initial;
  for ( auto const& b : lut.blocks )
  {
    bool hit = false;
    for ( auto idx : b.passes )
    {
      hit = hit || lut.passes[idx].input == state;
    }
    if ( hit )
    {
      for ( std::size_t i = 0; i < b.write_mask.size(); ++i )
      {
        state[b.write_mask[i]] = b.write_key[i];
      }
      trajectory.push_back( state );
    }
  }
  return trajectory;
}

/*! \brief Exhaustive whole-program check of `lut` against `spec`.
 *
 * Every input must end at the output of its own pass (or stay put when it
 * has none), that output must agree with the spec on the write positions,
 * and no input may be rewritten more than once.  The static rule that no
 * pass writes the input of a later pass is reported separately.
 */
inline validation_result validate_lut( function_spec const& spec, lut_program const& lut )
{
  validation_result result;
  if ( lut.base() != spec.base() || lut.arity != spec.arity() )
  {
    result.violations.push_back( { violation_kind::wrong_final_state, {}, {}, {}, "program radix/arity differ from the spec" } );
    return result;
  }
  check_program( lut );

  auto const n = spec.base();
  std::vector<std::int64_t> pass_of( spec.size(), -1 );
  for ( std::size_t i = 0; i < lut.passes.size(); ++i )
  {
    auto const idx = to_index( lut.passes[i].input, n );
    if ( pass_of[idx] >= 0 )
    {
      result.violations.push_back( { violation_kind::ordering_breach, lut.passes[i].input, {}, {},
                                     "input appears in more than one pass" } );
    }
    pass_of[idx] = static_cast<std::int64_t>( i );
  }

  /* index of the block that holds each pass */
  std::vector<std::size_t> block_pos( lut.passes.size(), 0u );
  for ( std::size_t b = 0; b < lut.blocks.size(); ++b )
  {
    for ( auto idx : lut.blocks[b].passes )
    {
      block_pos[idx] = b;
    }
  }
  for ( std::size_t i = 0; i < lut.passes.size(); ++i )
  {
    auto const out = to_index( lut.passes[i].output(), n );
    if ( pass_of[out] >= 0 && block_pos[static_cast<std::size_t>( pass_of[out] )] > block_pos[i] )
    {
      result.violations.push_back( { violation_kind::ordering_breach, lut.passes[i].input, {}, lut.passes[i].output(),
                                     "pass " + std::to_string( lut.passes[i].number ) + " writes the input of later pass " +
                                         std::to_string( pass_of[out] + 1 ) } );
    }
  }

  auto const& write = spec.write_positions();
  for ( std::uint64_t i = 0; i < spec.size(); ++i )
  {
    auto const initial = spec.input( i );
    auto const& spec_out = spec.output( i );
    auto const traj = replay( lut, initial );

    state_vector expected;
    std::string why;
    if ( pass_of[i] >= 0 )
    {
      expected = lut.passes[static_cast<std::size_t>( pass_of[i] )].output();
      for ( auto p : write )
      {
        if ( expected[p] != spec_out[p] )
        {
          why = "pass output disagrees with the spec on written positions";
          expected = spec_out;
          break;
        }
      }
    }
    else
    {
      expected = initial;
      if ( spec_out != initial )
      {
        why = "action input has no pass";
        expected = spec_out;
      }
    }

    if ( traj.size() > 2u )
    {
      result.violations.push_back( { violation_kind::domino_rewrite, initial, traj, expected,
                                     "rewritten " + std::to_string( traj.size() - 1u ) + " times" } );
    }
    if ( traj.back() != expected || !why.empty() )
    {
      result.violations.push_back( { violation_kind::wrong_final_state, initial, traj, expected,
                                     why.empty() ? "final state differs from the expected output" : why } );
    }
  }
  return result;
}

inline std::string describe( violation const& v )
{
  std::string s = to_string( v.kind );
  s += " on " + to_string( v.initial );
  if ( !v.trajectory.empty() )
  {
    s += ": ";
    for ( std::size_t i = 0; i < v.trajectory.size(); ++i )
    {
      s += ( i ? " -> " : "" ) + to_string( v.trajectory[i] );
    }
  }
  if ( !v.expected.empty() )
  {
    s += " (expected " + to_string( v.expected ) + ")";
  }
  if ( !v.detail.empty() )
  {
    s += " [" + v.detail + "]";
  }
  return s;
}

} // namespace mvap
