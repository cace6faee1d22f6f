#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "digit.hpp"

namespace mvap
{

enum class resistance : std::uint8_t
{
  high,
  low
};

/*! \brief Memristor states of one nTnR cell.
 *
 * At most one memristor is in the low-resistance state.  Its index is the
 * stored digit; no low memristor at all stores `x`.  The class keeps only
 * that index, so the invariant holds by construction.
 */
class cell_state
{
public:
  constexpr cell_state() = default;

  static constexpr cell_state storing( digit d ) noexcept
  {
    cell_state c;
    c.low_ = d.is_dont_care() ? none : static_cast<std::uint8_t>( d.value() );
    return c;
  }

  constexpr resistance memristor( std::uint32_t i ) const noexcept
  {
    return low_ == i ? resistance::low : resistance::high;
  }

  constexpr bool has_low() const noexcept { return low_ != none; }
  constexpr std::uint32_t low_index() const noexcept { return low_; }
  constexpr std::uint32_t low_count() const noexcept { return has_low() ? 1u : 0u; }

  constexpr digit stored() const noexcept { return has_low() ? digit( low_ ) : digit::dont_care(); }

  friend constexpr bool operator==( cell_state, cell_state ) = default;

private:
  static constexpr std::uint8_t none = 0xffu;
  std::uint8_t low_ = none;
};

inline cell_state encode_digit( digit d, radix n )
{
  if ( !d.valid_for( n ) )
  {
    throw error( "digit " + std::to_string( d.value() ) + " out of range for radix " + std::to_string( n.value() ) );
  }
  return cell_state::storing( d );
}

inline digit decode_cell( cell_state c ) noexcept { return c.stored(); }

/*! \brief Memristor states `M_0 .. M_{n-1}` (index i holds `M_i`). */
inline std::vector<resistance> memristors( cell_state c, radix n )
{
  std::vector<resistance> m( n.value() );
  for ( std::uint32_t i = 0; i < n.value(); ++i )
  {
    m[i] = c.memristor( i );
  }
  return m;
}

struct key_mask
{
  digit key;
  bool active = false;
};

enum class signal : std::uint8_t
{
  lo,
  hi
};

/*! \brief Decoded search signals; entry i is `S_i`. */
struct signal_vector
{
  std::vector<signal> s;

  signal operator[]( std::size_t i ) const { return s[i]; }
  std::size_t size() const noexcept { return s.size(); }
  friend bool operator==( signal_vector const&, signal_vector const& ) = default;
};

/*! \brief Functional n-ary decoder.
 *
 * An inactive mask drives every signal low.  An active mask with key j
 * drives `S_j` low and every other signal high.
 */
inline signal_vector decode_signals( key_mask km, radix n )
{
  signal_vector out{ std::vector<signal>( n.value(), signal::lo ) };
  if ( !km.active )
  {
    return out;
  }
  if ( km.key.is_dont_care() || !km.key.valid_for( n ) )
  {
    throw error( "active search key must be a digit of the radix" );
  }
  for ( std::uint32_t i = 0; i < n.value(); ++i )
  {
    out.s[i] = i == km.key.value() ? signal::lo : signal::hi;
  }
  return out;
}

struct ternary_inverter_outputs
{
  digit sti;
  digit pti;
  digit nti;
};

/* standard, positive and negative ternary inverters */
inline ternary_inverter_outputs ternary_inverters( digit v )
{
  if ( v.is_dont_care() || v.value() > 2u )
  {
    throw error( "ternary inverters take a digit in {0, 1, 2}" );
  }
  switch ( v.value() )
  {
  case 0u:
    return { digit( 2u ), digit( 2u ), digit( 2u ) };
  case 1u:
    return { digit( 1u ), digit( 2u ), digit( 0u ) };
  default:
    return { digit( 0u ), digit( 0u ), digit( 0u ) };
  }
}

/*! \brief Gate-level ternary decoder built from PTI/NTI and binary gates.
 *
 * PTI and NTI only ever output 0 or 2, which the binary gates read as
 * logic 0 and 1:
 *
 *   S2 = Mask & PTI(Key)
 *   S1 = Mask & (NTI(Key) | !PTI(Key))
 *   S0 = Mask & !NTI(Key)
 */
inline signal_vector decode_gate_level( key_mask km )
{
  auto const as_bool = []( digit d ) { return d.value() == 2u; };

  bool pti = false, nti = false;
  if ( km.active )
  {
    auto const inv = ternary_inverters( km.key );
    pti = as_bool( inv.pti );
    nti = as_bool( inv.nti );
  }
  auto const mask = km.active;
  auto const lvl = []( bool b ) { return b ? signal::hi : signal::lo; };

  return signal_vector{ { lvl( mask && !nti ), lvl( mask && ( nti || !pti ) ), lvl( mask && pti ) } };
}

struct cell_match_result
{
  bool match;
  std::uint32_t low_paths;
};

/*! \brief Match logic of one cell: a discharge path exists through every
 * branch whose signal is high and whose memristor is low. */
inline cell_match_result cell_match( cell_state c, signal_vector const& sig )
{
  std::uint32_t paths = 0u;
  for ( std::uint32_t i = 0; i < sig.size(); ++i )
  {
    if ( sig[i] == signal::hi && c.memristor( i ) == resistance::low )
    {
      ++paths;
    }
  }
  return { paths == 0u, paths };
}

} // namespace mvap
