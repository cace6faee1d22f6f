#pragma once

#include <string>
#include <string_view>

#include <mvap/digit.hpp>
#include <mvap/lut.hpp>

namespace mvap::test
{

inline state_vector sv( std::string_view s, std::uint32_t n = 3u ) { return parse_state( s, radix( n ) ); }

/* "W" followed by the written digits, e.g. W020 */
inline std::string write_label( block const& b )
{
  std::string s = "W";
  for ( auto d : b.write_key )
  {
    s += static_cast<char>( '0' + d );
  }
  return s;
}

inline std::size_t pass_of( lut_program const& lut, std::string_view input )
{
  auto const v = parse_state( input, lut.base() );
  for ( auto const& p : lut.passes )
  {
    if ( p.input == v )
    {
      return p.number;
    }
  }
  return 0u;
}

} // namespace mvap::test
