#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cam_array.hpp"
#include "lut.hpp"

namespace mvap
{

/*! \brief Array column of each truth-table position for one digit step. */
struct digit_slice
{
  std::vector<std::size_t> columns;
};

/*
 * Adder layout for p-digit operands: columns [0, p) hold A, [p, 2p) hold B
 * and column 2p is the shared carry.  Within a group, offset k holds digit
 * k counted from the least significant end.
 */
inline std::vector<column_group> adder_layout( std::size_t p )
{
  return { { "A", 0u, p }, { "B", p, p }, { "C", 2u * p, 1u } };
}

inline digit_slice adder_slice( std::size_t p, std::size_t k ) { return { { k, p + k, 2u * p } }; }

inline cam_array make_adder_array( radix n, std::size_t p, std::size_t rows )
{
  if ( p == 0u )
  {
    throw error( "digit count must be at least 1" );
  }
  return cam_array( n, rows, 2u * p + 1u, adder_layout( p ) );
}

/* operand digits are least significant first */
inline void load_operands( cam_array& a, std::size_t row, std::span<const std::uint8_t> lhs, std::span<const std::uint8_t> rhs )
{
  auto const& ga = a.group( "A" );
  auto const& gb = a.group( "B" );
  if ( lhs.size() != ga.count || rhs.size() != gb.count )
  {
    throw error( "operand width differs from the array layout" );
  }
  for ( std::size_t k = 0; k < lhs.size(); ++k )
  {
    a.set( row, ga.first + k, digit( lhs[k] ) );
    a.set( row, gb.first + k, digit( rhs[k] ) );
  }
  a.set( row, a.group( "C" ).first, digit( 0u ) );
}

/* B digits (least significant first) followed by the final carry */
inline std::vector<std::uint8_t> read_sum( cam_array const& a, std::size_t row )
{
  auto const& gb = a.group( "B" );
  std::vector<std::uint8_t> out;
  for ( std::size_t k = 0; k < gb.count; ++k )
  {
    out.push_back( static_cast<std::uint8_t>( a.get( row, gb.first + k ).value() ) );
  }
  out.push_back( static_cast<std::uint8_t>( a.get( row, a.group( "C" ).first ).value() ) );
  return out;
}

struct compare_event
{
  std::uint64_t seq; /* position in the combined event stream */
  std::size_t digit_index;
  std::size_t pass_number;
  std::optional<std::size_t> block_id;
  std::vector<std::uint64_t> census; /* index = mismatching cells, 0 = full match */
  std::uint64_t matched;
};

struct write_event
{
  std::uint64_t seq;
  std::size_t digit_index;
  std::size_t block_id; /* pass number in non-blocked mode */
  write_counts counts;
  std::uint64_t rows_written;
};

/*! \brief Event stream of one program execution. */
struct execution_trace
{
  std::uint64_t rows = 0u;
  std::size_t digits = 0u;
  lut_mode mode = lut_mode::nonblocked;
  std::vector<compare_event> compares;
  std::vector<write_event> writes;
  std::uint64_t compare_cycles = 0u;
  std::uint64_t write_cycles = 0u;

  std::uint64_t next_seq() const noexcept { return compares.size() + writes.size(); }

  write_counts totals() const
  {
    write_counts t;
    for ( auto const& w : writes )
    {
      t += w.counts;
    }
    return t;
  }
};

namespace detail
{

inline std::vector<std::size_t> map_columns( digit_slice const& slice, std::span<const std::size_t> positions )
{
  std::vector<std::size_t> cols;
  cols.reserve( positions.size() );
  for ( auto p : positions )
  {
    if ( p >= slice.columns.size() )
    {
      throw error( "pass position outside the digit slice" );
    }
    cols.push_back( slice.columns[p] );
  }
  return cols;
}

inline void compare_pass( cam_array& a, pass const& p, digit_slice const& slice, std::size_t k, execution_trace& trace )
{
  if ( p.input.size() != slice.columns.size() )
  {
    throw error( "pass width differs from the digit slice" );
  }
  auto const census = a.compare( search_key::from_digits( slice.columns, p.input, a.base() ) );
  trace.compares.push_back( { trace.next_seq(), k, p.number, p.block_id, census.by_mismatches, census.tagged } );
  ++trace.compare_cycles;
}

} // namespace detail

/*! \brief Compare with the pass input, then write the tagged rows at once. */
inline void run_pass( cam_array& a, pass const& p, digit_slice const& slice, std::size_t k, execution_trace& trace )
{
  detail::compare_pass( a, p, slice, k, trace );
  auto const cols = detail::map_columns( slice, p.write_mask );
  auto const w = a.apply_write( cols, p.write_key, write_gate::immediate );
  trace.writes.push_back( { trace.next_seq(), k, p.number, w.counts, w.rows_written } );
  ++trace.write_cycles;
}

/*! \brief All member compares latch the block-enable flags; one write
 * fires at the end, whether or not any row matched. */
inline void run_block( cam_array& a, lut_program const& lut, block const& b, digit_slice const& slice, std::size_t k,
                       execution_trace& trace )
{
  a.clear_block_enable();
  for ( auto idx : b.passes )
  {
    detail::compare_pass( a, lut.passes.at( idx ), slice, k, trace );
    a.latch_block_enable();
  }
  auto const cols = detail::map_columns( slice, b.write_mask );
  auto const w = a.apply_write( cols, b.write_key, write_gate::block_end );
  trace.writes.push_back( { trace.next_seq(), k, b.id, w.counts, w.rows_written } );
  ++trace.write_cycles;
}

/*! \brief Runs the whole program once over `slice`. */
inline void run_program( cam_array& a, lut_program const& lut, digit_slice const& slice, std::size_t k, execution_trace& trace )
{
  if ( lut.mode == lut_mode::nonblocked )
  {
    for ( auto const& p : lut.passes )
    {
      run_pass( a, p, slice, k, trace );
    }
  }
  else
  {
    for ( auto const& b : lut.blocks )
    {
      run_block( a, lut, b, slice, k, trace );
    }
  }
}

/*! \brief Digit-serial in-place addition B <- A + B over all rows.
 *
 * Runs the adder program from the least significant digit up with the
 * carry column reset to 0 first.  Afterwards B holds the sum modulo n^p
 * and the carry column the overflow digit.  A digits may be overwritten
 * by extended writes.
 */
inline execution_trace add_vectors( cam_array& a, lut_program const& lut, std::size_t p )
{
  if ( lut.arity != 3u || lut.base() != a.base() )
  {
    throw error( "add_vectors needs a 3-position adder program of the array radix" );
  }
  if ( a.width() != 2u * p + 1u )
  {
    throw error( "array width does not match a " + std::to_string( p ) + "-digit adder layout" );
  }
  auto const carry = 2u * p;
  for ( std::size_t r = 0; r < a.rows(); ++r )
  {
    a.set( r, carry, digit( 0u ) );
  }

  execution_trace trace;
  trace.rows = a.rows();
  trace.digits = p;
  trace.mode = lut.mode;
  for ( std::size_t k = 0; k < p; ++k )
  {
    run_program( a, lut, adder_slice( p, k ), k, trace );
  }
  return trace;
}

} // namespace mvap
