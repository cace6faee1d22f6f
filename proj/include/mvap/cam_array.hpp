#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cell.hpp"
#include "digit.hpp"

namespace mvap
{

/*! \brief Memristor transitions caused by writes. */
struct write_counts
{
  std::uint64_t sets = 0u;
  std::uint64_t resets = 0u;

  write_counts& operator+=( write_counts const& o ) noexcept
  {
    sets += o.sets;
    resets += o.resets;
    return *this;
  }

  friend bool operator==( write_counts const&, write_counts const& ) = default;
};

/*! \brief Set/reset cost of rewriting one cell from `current` to `next`.
 *
 * A digit-to-digit change resets the old low memristor and sets the new
 * one; writes from or to `x` only need the set or the reset.
 */
inline write_counts write_action( digit current, digit next ) noexcept
{
  if ( current == next )
  {
    return {};
  }
  if ( current.is_dont_care() )
  {
    return { 1u, 0u };
  }
  if ( next.is_dont_care() )
  {
    return { 0u, 1u };
  }
  return { 1u, 1u };
}

struct cam_row
{
  std::vector<cell_state> cells;
  bool tag = false;
  bool block_enable = false; /* per-row D flip-flop of the blocked mode */
};

struct compare_result
{
  bool tag;
  std::size_t mismatch_cells;
};

/*! \brief Search key restricted to its unmasked columns. */
struct search_key
{
  std::vector<std::size_t> columns;
  std::vector<signal_vector> signals;

  static search_key from_masks( std::span<const key_mask> keys, radix n )
  {
    search_key sk;
    for ( std::size_t c = 0; c < keys.size(); ++c )
    {
      if ( keys[c].active )
      {
        sk.columns.push_back( c );
        sk.signals.push_back( decode_signals( keys[c], n ) );
      }
    }
    return sk;
  }

  static search_key from_digits( std::span<const std::size_t> columns, std::span<const std::uint8_t> key, radix n )
  {
    if ( columns.size() != key.size() )
    {
      throw error( "search key width does not match its columns" );
    }
    search_key sk;
    sk.columns.assign( columns.begin(), columns.end() );
    for ( auto d : key )
    {
      sk.signals.push_back( decode_signals( { digit( d ), true }, n ) );
    }
    return sk;
  }
};

/* compare without latching; masked cells always match */
inline compare_result evaluate_row( cam_row const& row, search_key const& key )
{
  std::size_t mismatches = 0u;
  for ( std::size_t i = 0; i < key.columns.size(); ++i )
  {
    if ( !cell_match( row.cells[key.columns[i]], key.signals[i] ).match )
    {
      ++mismatches;
    }
  }
  return { mismatches == 0u, mismatches };
}

/*! \brief Compares a row against a full-width key-mask vector and latches the tag. */
inline compare_result row_compare( cam_row& row, std::span<const key_mask> keys, radix n )
{
  if ( keys.size() != row.cells.size() )
  {
    throw error( "key vector width differs from row width" );
  }
  auto const r = evaluate_row( row, search_key::from_masks( keys, n ) );
  row.tag = r.tag;
  return r;
}

struct column_group
{
  std::string name;
  std::size_t first;
  std::size_t count;
};

enum class write_gate
{
  immediate, /* rows whose tag is set */
  block_end  /* rows whose block-enable flip-flop is set; clears it */
};

/*! \brief Census of one array compare; `by_mismatches[k]` counts rows with
 * k mismatching cells (0 = full match). */
struct compare_census
{
  std::vector<std::uint64_t> by_mismatches;
  std::uint64_t tagged = 0u;
};

struct write_result
{
  write_counts counts;
  std::uint64_t rows_written = 0u;
};

/*! \brief Functional MvCAM array: R rows of N cells each. */
class cam_array
{
public:
  cam_array( radix n, std::size_t rows, std::size_t width, std::vector<column_group> layout = {} )
      : radix_( n ), width_( width ), rows_( rows, cam_row{ std::vector<cell_state>( width, cell_state::storing( digit( 0u ) ) ) } ),
        layout_( std::move( layout ) )
  {
    for ( auto const& g : layout_ )
    {
      if ( g.first + g.count > width_ )
      {
        throw error( "column group '" + g.name + "' exceeds the row width" );
      }
    }
  }

  radix base() const noexcept { return radix_; }
  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t width() const noexcept { return width_; }
  std::vector<column_group> const& layout() const noexcept { return layout_; }

  cam_row const& row( std::size_t r ) const { return rows_.at( r ); }
  cam_row& row( std::size_t r ) { return rows_.at( r ); }

  digit get( std::size_t r, std::size_t c ) const { return rows_.at( r ).cells.at( c ).stored(); }
  void set( std::size_t r, std::size_t c, digit d ) { rows_.at( r ).cells.at( c ) = encode_digit( d, radix_ ); }

  column_group const& group( std::string const& name ) const
  {
    for ( auto const& g : layout_ )
    {
      if ( g.name == name )
      {
        return g;
      }
    }
    throw error( "no column group named '" + name + "'" );
  }

  /*! \brief Compares every row and latches the tags. */
  compare_census compare( search_key const& key )
  {
    for ( auto c : key.columns )
    {
      if ( c >= width_ )
      {
        throw error( "search column out of range" );
      }
    }
    compare_census census{ std::vector<std::uint64_t>( key.columns.size() + 1u, 0u ), 0u };
    for ( auto& row : rows_ )
    {
      auto const r = evaluate_row( row, key );
      row.tag = r.tag;
      ++census.by_mismatches[r.mismatch_cells];
      census.tagged += r.tag ? 1u : 0u;
    }
    return census;
  }

  compare_census compare( std::span<const key_mask> keys )
  {
    if ( keys.size() != width_ )
    {
      throw error( "key vector width differs from row width" );
    }
    return compare( search_key::from_masks( keys, radix_ ) );
  }

  /*! \brief Writes `key` into `columns` of every gated row.
   *
   * Only actual cell transitions are counted.  A block-end write clears
   * every block-enable flag afterwards.
   */
  write_result apply_write( std::span<const std::size_t> columns, std::span<const std::uint8_t> key, write_gate gate )
  {
    if ( columns.size() != key.size() )
    {
      throw error( "write mask and write key widths differ" );
    }
    for ( auto c : columns )
    {
      if ( c >= width_ )
      {
        throw error( "write column out of range" );
      }
    }
    std::vector<cell_state> next;
    for ( auto d : key )
    {
      next.push_back( encode_digit( digit( d ), radix_ ) );
    }

    write_result result;
    for ( auto& row : rows_ )
    {
      bool const enabled = gate == write_gate::immediate ? row.tag : row.block_enable;
      if ( enabled )
      {
        ++result.rows_written;
        for ( std::size_t i = 0; i < columns.size(); ++i )
        {
          auto& cell = row.cells[columns[i]];
          result.counts += write_action( cell.stored(), next[i].stored() );
          cell = next[i];
        }
      }
      if ( gate == write_gate::block_end )
      {
        row.block_enable = false;
      }
    }
    return result;
  }

  /* block_enable |= tag on every row */
  void latch_block_enable() noexcept
  {
    for ( auto& row : rows_ )
    {
      row.block_enable = row.block_enable || row.tag;
    }
  }

  void clear_block_enable() noexcept
  {
    for ( auto& row : rows_ )
    {
      row.block_enable = false;
    }
  }

private:
  radix radix_;
  std::size_t width_;
  std::vector<cam_row> rows_;
  std::vector<column_group> layout_;
};

/*
 * Digit-matrix snapshot: one line per row, one base-n character per cell in
 * column order, `x` for don't-care.  Blank lines and `#` comments are
 * skipped.
 */
inline std::string to_digit_matrix( cam_array const& a )
{
  std::string out;
  for ( std::size_t r = 0; r < a.rows(); ++r )
  {
    for ( auto const& cell : a.row( r ).cells )
    {
      out.push_back( to_char( cell.stored() ) );
    }
    out.push_back( '\n' );
  }
  return out;
}

inline cam_array from_digit_matrix( std::istream& is, radix n, std::vector<column_group> layout = {} )
{
  std::vector<std::vector<digit>> rows;
  std::string line;
  while ( std::getline( is, line ) )
  {
    if ( auto const h = line.find( '#' ); h != std::string::npos )
    {
      line.erase( h );
    }
    while ( !line.empty() && ( line.back() == '\r' || line.back() == ' ' || line.back() == '\t' ) )
    {
      line.pop_back();
    }
    if ( line.empty() )
    {
      continue;
    }
    std::vector<digit> row;
    for ( auto c : line )
    {
      row.push_back( digit_from_char( c, n ) );
    }
    if ( !rows.empty() && row.size() != rows.front().size() )
    {
      throw error( "digit matrix rows have different widths" );
    }
    rows.push_back( std::move( row ) );
  }
  cam_array a( n, rows.size(), rows.empty() ? 0u : rows.front().size(), std::move( layout ) );
  for ( std::size_t r = 0; r < rows.size(); ++r )
  {
    for ( std::size_t c = 0; c < rows[r].size(); ++c )
    {
      a.set( r, c, rows[r][c] );
    }
  }
  return a;
}

inline cam_array from_digit_matrix( std::string const& text, radix n, std::vector<column_group> layout = {} )
{
  std::istringstream is( text );
  return from_digit_matrix( is, n, std::move( layout ) );
}

} // namespace mvap
