#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "digit.hpp"

namespace mvap
{

class spec_error : public error
{
public:
  using error::error;
};

/*! \brief Radix-n truth table of an in-place function.
 *
 * The table maps every input vector of length `arity` to an output vector
 * of the same length.  Digits at the write positions are overwritten in
 * place; digits at the kept positions must be copied from the input.
 */
class function_spec
{
public:
  function_spec( radix n, std::size_t arity, std::vector<std::size_t> write_positions,
                 std::vector<state_vector> outputs, std::vector<std::string> names = {} )
      : radix_( n ), arity_( arity ), write_( std::move( write_positions ) ), outputs_( std::move( outputs ) ),
        names_( std::move( names ) )
  {
    if ( arity_ == 0u )
    {
      throw spec_error( "arity must be at least 1" );
    }
    size_ = checked_pow( n, arity_ );
    if ( size_ > ( std::uint64_t{ 1 } << 22 ) )
    {
      throw spec_error( "truth table too large" );
    }

    std::sort( write_.begin(), write_.end() );
    if ( std::adjacent_find( write_.begin(), write_.end() ) != write_.end() )
    {
      throw spec_error( "duplicate write position" );
    }
    if ( write_.empty() )
    {
      throw spec_error( "at least one write position is required" );
    }
    for ( auto p : write_ )
    {
      if ( p >= arity_ )
      {
        throw spec_error( "write position " + std::to_string( p ) + " out of range for arity " + std::to_string( arity_ ) );
      }
    }
    for ( std::size_t p = 0; p < arity_; ++p )
    {
      if ( !std::binary_search( write_.begin(), write_.end(), p ) )
      {
        kept_.push_back( p );
      }
    }

    if ( names_.empty() )
    {
      for ( std::size_t p = 0; p < arity_; ++p )
      {
        names_.push_back( "P" + std::to_string( p ) );
      }
    }
    else if ( names_.size() != arity_ )
    {
      throw spec_error( "position name count does not match arity" );
    }

    if ( outputs_.size() != size_ )
    {
      throw spec_error( "truth table is not total: expected " + std::to_string( size_ ) + " rows, got " +
                        std::to_string( outputs_.size() ) );
    }
    for ( std::uint64_t i = 0; i < size_; ++i )
    {
      auto const& out = outputs_[i];
      if ( out.size() != arity_ )
      {
        throw spec_error( "output width mismatch in row " + std::to_string( i ) );
      }
      for ( auto d : out )
      {
        if ( d >= n.value() )
        {
          throw spec_error( "output digit out of range in row " + std::to_string( i ) );
        }
      }
      auto const in = from_index( i, n, arity_ );
      for ( auto p : kept_ )
      {
        if ( in[p] != out[p] )
        {
          throw spec_error( "in-place violation: row " + to_string( in ) + " -> " + to_string( out ) +
                            " changes kept position " + names_[p] );
        }
      }
    }
  }

  radix base() const noexcept { return radix_; }
  std::size_t arity() const noexcept { return arity_; }
  std::uint64_t size() const noexcept { return size_; }
  std::vector<std::size_t> const& write_positions() const noexcept { return write_; }
  std::vector<std::size_t> const& kept_positions() const noexcept { return kept_; }
  std::vector<std::string> const& position_names() const noexcept { return names_; }

  state_vector const& output( std::uint64_t input_index ) const { return outputs_.at( input_index ); }
  state_vector const& output( state_vector const& input ) const { return output( to_index( input, radix_ ) ); }
  state_vector input( std::uint64_t index ) const { return from_index( index, radix_, arity_ ); }

  bool is_no_action( std::uint64_t index ) const { return outputs_.at( index ) == input( index ); }

  friend bool operator==( function_spec const&, function_spec const& ) = default;

private:
  radix radix_;
  std::size_t arity_;
  std::uint64_t size_ = 0u;
  std::vector<std::size_t> write_;
  std::vector<std::size_t> kept_;
  std::vector<state_vector> outputs_;
  std::vector<std::string> names_;
};

/*! \brief In-place full adder over positions (A, B, C).
 *
 * B receives the sum digit and C the carry digit; A is kept.  The table
 * covers every carry digit in [0, n-1], not only the reachable 0 and 1.
 */
inline function_spec make_adder_spec( radix n )
{
  auto const size = checked_pow( n, 3u );
  std::vector<state_vector> outputs;
  outputs.reserve( size );
  for ( std::uint64_t i = 0; i < size; ++i )
  {
    auto v = from_index( i, n, 3u );
    auto const sum = static_cast<std::uint32_t>( v[0] ) + v[1] + v[2];
    outputs.push_back( { v[0], static_cast<std::uint8_t>( sum % n.value() ), static_cast<std::uint8_t>( sum / n.value() ) } );
  }
  return function_spec( n, 3u, { 1u, 2u }, std::move( outputs ), { "A", "B", "C" } );
}

inline function_spec make_identity_spec( radix n, std::size_t arity, std::vector<std::size_t> write_positions )
{
  auto const size = checked_pow( n, arity );
  std::vector<state_vector> outputs;
  outputs.reserve( size );
  for ( std::uint64_t i = 0; i < size; ++i )
  {
    outputs.push_back( from_index( i, n, arity ) );
  }
  return function_spec( n, arity, std::move( write_positions ), std::move( outputs ) );
}

/*
 * Truth-table document
 * --------------------
 *
 *   # comment (anywhere, to end of line)
 *   radix 3
 *   arity 3
 *   write 1 2
 *   names A B C          (optional)
 *   000 000
 *   001 010
 *   ...
 *
 * Header keywords come before the first row, in any order.  Each row is an
 * input vector and its output vector written as base-n digit strings.
 * Every one of the n^arity inputs must appear exactly once.
 */
namespace detail
{

inline std::string_view trim( std::string_view s )
{
  auto const ws = " \t\r\n";
  auto const b = s.find_first_not_of( ws );
  if ( b == std::string_view::npos )
  {
    return {};
  }
  auto const e = s.find_last_not_of( ws );
  return s.substr( b, e - b + 1u );
}

inline std::vector<std::string> split_ws( std::string_view s )
{
  std::vector<std::string> out;
  std::istringstream is{ std::string( s ) };
  std::string tok;
  while ( is >> tok )
  {
    out.push_back( tok );
  }
  return out;
}

inline std::size_t parse_count( std::string const& tok, std::size_t line )
{
  std::size_t pos = 0u;
  unsigned long v = 0u;
  try
  {
    v = std::stoul( tok, &pos );
  }
  catch ( std::exception const& )
  {
    pos = 0u;
  }
  if ( pos != tok.size() || tok.empty() || tok[0] == '-' )
  {
    throw spec_error( "line " + std::to_string( line ) + ": expected a non-negative integer, got '" + tok + "'" );
  }
  return v;
}

} // namespace detail

inline function_spec load_spec( std::istream& is )
{
  std::optional<std::uint32_t> n;
  std::optional<std::size_t> arity;
  std::optional<std::vector<std::size_t>> write;
  std::vector<std::string> names;
  std::vector<std::optional<state_vector>> rows;

  std::string raw;
  std::size_t line_no = 0u;
  auto const ensure_rows = [&]() {
    if ( !rows.empty() )
    {
      return;
    }
    if ( !n || !arity || !write )
    {
      throw spec_error( "line " + std::to_string( line_no ) + ": radix, arity and write must precede the rows" );
    }
    rows.resize( checked_pow( radix( *n ), *arity ) );
  };

  bool in_rows = false;
  while ( std::getline( is, raw ) )
  {
    ++line_no;
    std::string_view line = raw;
    if ( auto const hash = line.find( '#' ); hash != std::string_view::npos )
    {
      line = line.substr( 0u, hash );
    }
    line = detail::trim( line );
    if ( line.empty() )
    {
      continue;
    }
    auto const tok = detail::split_ws( line );
    auto const& key = tok[0];
    if ( !in_rows && ( key == "radix" || key == "arity" ) )
    {
      if ( tok.size() != 2u )
      {
        throw spec_error( "line " + std::to_string( line_no ) + ": '" + key + "' takes one value" );
      }
      auto const v = detail::parse_count( tok[1], line_no );
      if ( key == "radix" )
      {
        try
        {
          n = radix( static_cast<std::uint32_t>( v ) ).value();
        }
        catch ( error const& e )
        {
          throw spec_error( "line " + std::to_string( line_no ) + ": " + e.what() );
        }
      }
      else
      {
        arity = v;
      }
      continue;
    }
    if ( !in_rows && key == "write" )
    {
      write.emplace();
      for ( std::size_t i = 1; i < tok.size(); ++i )
      {
        write->push_back( detail::parse_count( tok[i], line_no ) );
      }
      continue;
    }
    if ( !in_rows && key == "names" )
    {
      names.assign( tok.begin() + 1, tok.end() );
      continue;
    }

    in_rows = true;
    ensure_rows();
    if ( tok.size() != 2u )
    {
      throw spec_error( "line " + std::to_string( line_no ) + ": a row is '<input> <output>'" );
    }
    state_vector in, out;
    try
    {
      in = parse_state( tok[0], radix( *n ) );
      out = parse_state( tok[1], radix( *n ) );
    }
    catch ( error const& e )
    {
      throw spec_error( "line " + std::to_string( line_no ) + ": " + e.what() );
    }
    if ( in.size() != *arity || out.size() != *arity )
    {
      throw spec_error( "line " + std::to_string( line_no ) + ": row width differs from arity" );
    }
    auto& slot = rows[to_index( in, radix( *n ) )];
    if ( slot )
    {
      throw spec_error( "line " + std::to_string( line_no ) + ": duplicate row for input " + tok[0] );
    }
    slot = std::move( out );
  }

  ensure_rows();
  std::vector<state_vector> outputs;
  outputs.reserve( rows.size() );
  for ( std::size_t i = 0; i < rows.size(); ++i )
  {
    if ( !rows[i] )
    {
      throw spec_error( "truth table is not total: missing row for input " +
                        to_string( from_index( i, radix( *n ), *arity ) ) );
    }
    outputs.push_back( std::move( *rows[i] ) );
  }
  return function_spec( radix( *n ), *arity, std::move( *write ), std::move( outputs ), std::move( names ) );
}

inline function_spec parse_spec( std::string_view text )
{
  std::istringstream is{ std::string( text ) };
  return load_spec( is );
}

inline void save_spec( function_spec const& spec, std::ostream& os )
{
  os << "radix " << spec.base().value() << '\n';
  os << "arity " << spec.arity() << '\n';
  os << "write";
  for ( auto p : spec.write_positions() )
  {
    os << ' ' << p;
  }
  os << '\n';
  os << "names";
  for ( auto const& name : spec.position_names() )
  {
    os << ' ' << name;
  }
  os << '\n';
  for ( std::uint64_t i = 0; i < spec.size(); ++i )
  {
    os << to_string( spec.input( i ) ) << ' ' << to_string( spec.output( i ) ) << '\n';
  }
}

inline std::string save_spec( function_spec const& spec )
{
  std::ostringstream os;
  save_spec( spec, os );
  return os.str();
}

} // namespace mvap
