#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mvap
{

/*! \brief Base class of all errors raised by the library. */
class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Radix of a multi-valued logic system.
 *
 * `n = 2` is the binary associative processor, `n = 3` the ternary one.
 * Digits are written as base-n characters `0-9a-f`, so the radix is capped
 * at 16 (`x` stays reserved for the don't-care symbol).
 */
class radix
{
public:
  static constexpr std::uint32_t max_value = 16u;

  constexpr explicit radix( std::uint32_t n ) : n_( n )
  {
    if ( n < 2u || n > max_value )
    {
      throw error( "radix must be in [2, 16], got " + std::to_string( n ) );
    }
  }

  constexpr std::uint32_t value() const noexcept { return n_; }

  friend constexpr bool operator==( radix, radix ) = default;

private:
  std::uint32_t n_;
};

/*! \brief A radix-n digit (nit) or the don't-care symbol `x`. */
class digit
{
public:
  constexpr digit() = default;

  constexpr explicit digit( std::uint32_t v ) : v_( static_cast<std::uint8_t>( v ) )
  {
    if ( v >= dont_care_code )
    {
      throw error( "digit value out of range: " + std::to_string( v ) );
    }
  }

  static constexpr digit dont_care() noexcept
  {
    digit d;
    d.v_ = dont_care_code;
    return d;
  }

  constexpr bool is_dont_care() const noexcept { return v_ == dont_care_code; }

  constexpr std::uint32_t value() const
  {
    if ( is_dont_care() )
    {
      throw error( "don't-care digit has no value" );
    }
    return v_;
  }

  constexpr bool valid_for( radix n ) const noexcept { return is_dont_care() || v_ < n.value(); }

  friend constexpr bool operator==( digit, digit ) = default;

private:
  static constexpr std::uint8_t dont_care_code = 0xffu;
  std::uint8_t v_ = 0u;
};

/* base-n character helpers */
inline char to_char( digit d )
{
  if ( d.is_dont_care() )
  {
    return 'x';
  }
  return "0123456789abcdef"[d.value()];
}

inline digit digit_from_char( char c, radix n )
{
  std::uint32_t v;
  if ( c == 'x' || c == 'X' )
  {
    return digit::dont_care();
  }
  else if ( c >= '0' && c <= '9' )
  {
    v = static_cast<std::uint32_t>( c - '0' );
  }
  else if ( c >= 'a' && c <= 'f' )
  {
    v = static_cast<std::uint32_t>( c - 'a' ) + 10u;
  }
  else if ( c >= 'A' && c <= 'F' )
  {
    v = static_cast<std::uint32_t>( c - 'A' ) + 10u;
  }
  else
  {
    throw error( std::string( "invalid digit character '" ) + c + "'" );
  }
  if ( v >= n.value() )
  {
    throw error( std::string( "digit '" ) + c + "' out of range for radix " + std::to_string( n.value() ) );
  }
  return digit( v );
}

/*! \brief A fully specified digit vector (no don't-cares), position 0 first.
 *
 * When read as a base-n number, position 0 is the most significant digit,
 * so the vector `020` has value 6 for n = 3.
 */
using state_vector = std::vector<std::uint8_t>;

inline std::uint64_t to_index( std::span<const std::uint8_t> v, radix n )
{
  std::uint64_t idx = 0u;
  for ( auto d : v )
  {
    idx = idx * n.value() + d;
  }
  return idx;
}

inline state_vector from_index( std::uint64_t idx, radix n, std::size_t arity )
{
  state_vector v( arity, 0u );
  for ( auto i = arity; i-- > 0u; )
  {
    v[i] = static_cast<std::uint8_t>( idx % n.value() );
    idx /= n.value();
  }
  return v;
}

inline std::string to_string( std::span<const std::uint8_t> v )
{
  std::string s;
  s.reserve( v.size() );
  for ( auto d : v )
  {
    s.push_back( to_char( digit( d ) ) );
  }
  return s;
}

inline state_vector parse_state( std::string_view text, radix n )
{
  state_vector v;
  v.reserve( text.size() );
  for ( auto c : text )
  {
    auto const d = digit_from_char( c, n );
    if ( d.is_dont_care() )
    {
      throw error( "don't-care not allowed in a state vector: " + std::string( text ) );
    }
    v.push_back( static_cast<std::uint8_t>( d.value() ) );
  }
  return v;
}

inline std::uint64_t checked_pow( radix n, std::size_t e )
{
  std::uint64_t r = 1u;
  for ( std::size_t i = 0; i < e; ++i )
  {
    if ( r > ( std::uint64_t{ 1 } << 40 ) )
    {
      throw error( "state space too large" );
    }
    r *= n.value();
  }
  return r;
}

} // namespace mvap
