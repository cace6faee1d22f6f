#pragma once

#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "compile.hpp"
#include "cost_model.hpp"
#include "executor.hpp"
#include "verify.hpp"

namespace mvap
{

struct size_point
{
  std::uint32_t radix_value;
  std::size_t digits;

  std::string label() const
  {
    switch ( radix_value )
    {
    case 2u:
      return std::to_string( digits ) + "b";
    case 3u:
      return std::to_string( digits ) + "t";
    default:
      return std::to_string( digits ) + "d" + std::to_string( radix_value );
    }
  }
};

/* binary/ternary pairs of roughly equal range */
inline std::vector<std::pair<size_point, size_point>> paired_sweep()
{
  return { { { 2u, 8u }, { 3u, 5u } },   { { 2u, 16u }, { 3u, 10u } }, { { 2u, 32u }, { 3u, 20u } },
           { { 2u, 51u }, { 3u, 32u } }, { { 2u, 64u }, { 3u, 40u } }, { { 2u, 128u }, { 3u, 80u } } };
}

struct operand_pair
{
  std::vector<std::uint8_t> a; /* least significant digit first */
  std::vector<std::uint8_t> b;
};

/*! \brief i.i.d. uniform digits from a generator seeded by (seed, radix, digits). */
inline std::vector<operand_pair> random_operands( radix n, std::size_t digits, std::size_t rows, std::uint64_t seed )
{
  std::seed_seq seq{ static_cast<std::uint32_t>( seed ), static_cast<std::uint32_t>( seed >> 32 ), n.value(),
                     static_cast<std::uint32_t>( digits ) };
  std::mt19937_64 rng( seq );
  std::uniform_int_distribution<std::uint32_t> dist( 0u, n.value() - 1u );
  std::vector<operand_pair> ops( rows );
  for ( auto& op : ops )
  {
    op.a.resize( digits );
    op.b.resize( digits );
    for ( std::size_t k = 0; k < digits; ++k )
    {
      op.a[k] = static_cast<std::uint8_t>( dist( rng ) );
      op.b[k] = static_cast<std::uint8_t>( dist( rng ) );
    }
  }
  return ops;
}

/* every (a, b) pair, n^(2p) rows */
inline std::vector<operand_pair> exhaustive_operands( radix n, std::size_t digits )
{
  auto const per = checked_pow( n, digits );
  if ( per * per > ( std::uint64_t{ 1 } << 24 ) )
  {
    throw error( "exhaustive sweep too large" );
  }
  std::vector<operand_pair> ops;
  ops.reserve( per * per );
  for ( std::uint64_t x = 0; x < per; ++x )
  {
    for ( std::uint64_t y = 0; y < per; ++y )
    {
      auto a = from_index( x, n, digits );
      auto b = from_index( y, n, digits );
      ops.push_back( { { a.rbegin(), a.rend() }, { b.rbegin(), b.rend() } } );
    }
  }
  return ops;
}

struct row_mismatch
{
  std::size_t row;
  operand_pair operands;
  std::vector<std::uint8_t> expected;
  std::vector<std::uint8_t> observed;
};

struct simulation_result
{
  cost_report report;
  execution_trace trace;
  std::uint64_t mismatches = 0u;
  std::vector<row_mismatch> failures; /* first few only */
  std::vector<std::vector<std::uint8_t>> sums;
};

/*! \brief Loads the operands as rows, adds in place and checks every row
 * against `oracle_add`. */
inline simulation_result simulate_additions( lut_program const& lut, std::size_t digits, std::vector<operand_pair> const& ops,
                                             cost_params const& params = {}, std::size_t keep_failures = 8u )
{
  auto const n = lut.base();
  auto array = make_adder_array( n, digits, ops.size() );
  for ( std::size_t r = 0; r < ops.size(); ++r )
  {
    load_operands( array, r, ops[r].a, ops[r].b );
  }

  simulation_result res;
  res.trace = add_vectors( array, lut, digits );
  res.report = energy_from_trace( res.trace, n, params );
  res.report.delay_cycles = delay_cycles( lut, digits, params );
  res.report.normalized_area = normalized_area( n, digits, params );

  res.sums.reserve( ops.size() );
  for ( std::size_t r = 0; r < ops.size(); ++r )
  {
    auto got = read_sum( array, r );
    auto want = oracle_add( ops[r].a, ops[r].b, n );
    if ( got != want )
    {
      ++res.mismatches;
      if ( res.failures.size() < keep_failures )
      {
        res.failures.push_back( { r, ops[r], want, got } );
      }
    }
    res.sums.push_back( std::move( got ) );
  }
  return res;
}

struct bench_row
{
  size_point size;
  cost_report report; /* non-blocked run */
  double delay_nonblocked = 0.0;
  double delay_blocked = 0.0;
  double delay_blocked_embedded = 0.0;
  double delay_nonblocked_embedded = 0.0;
  std::uint64_t mismatches = 0u; /* over both modes */
};

/*! \brief Runs one size point in both modes on the same operands. */
inline bench_row bench_point( size_point sp, std::size_t rows, std::uint64_t seed, cost_params const& params = {} )
{
  radix const n( sp.radix_value );
  auto const spec = make_adder_spec( n );
  auto const nb = compile( spec, lut_mode::nonblocked ).lut;
  auto const bl = compile( spec, lut_mode::blocked ).lut;
  auto const ops = random_operands( n, sp.digits, rows, seed );

  bench_row row;
  row.size = sp;
  auto const r_nb = simulate_additions( nb, sp.digits, ops, params, 0u );
  auto const r_bl = simulate_additions( bl, sp.digits, ops, params, 0u );
  row.report = r_nb.report;
  row.mismatches = r_nb.mismatches + r_bl.mismatches;
  row.delay_nonblocked = delay_cycles( nb, sp.digits, params );
  row.delay_blocked = delay_cycles( bl, sp.digits, params );
  row.delay_nonblocked_embedded = delay_cycles( nb, sp.digits, params, delay_mode::precharge_embedded );
  row.delay_blocked_embedded = delay_cycles( bl, sp.digits, params, delay_mode::precharge_embedded );
  return row;
}

inline std::vector<bench_row> run_bench( std::size_t rows, std::uint64_t seed, cost_params const& params = {} )
{
  std::vector<bench_row> out;
  for ( auto const& [bin, ter] : paired_sweep() )
  {
    out.push_back( bench_point( bin, rows, seed, params ) );
    out.push_back( bench_point( ter, rows, seed, params ) );
  }
  return out;
}

namespace detail
{

inline std::string fixed( double v, int precision = 4 )
{
  std::ostringstream os;
  os << std::fixed << std::setprecision( precision ) << v;
  return os.str();
}

} // namespace detail

/*! \brief One row per size point, energy/area/delay columns. */
inline void write_bench_csv( std::vector<bench_row> const& rows, cost_params const& params, std::ostream& os )
{
  os << "size,radix,digits,rows,avg_sets,avg_resets,write_energy_nj,compare_energy_pj,total_energy_nj,normalized_area,"
        "delay_nonblocked,delay_blocked,delay_ratio,delay_nonblocked_embedded,delay_blocked_embedded,mismatches";
  for ( auto const& [name, b] : params.baselines )
  {
    os << ",energy_ratio_vs_" << name << ",delay_ratio_vs_" << name;
  }
  os << '\n';
  for ( auto const& r : rows )
  {
    auto const& c = r.report;
    os << r.size.label() << ',' << c.radix_value << ',' << c.digits << ',' << c.rows << ',' << detail::fixed( c.avg_sets ) << ','
       << detail::fixed( c.avg_resets ) << ',' << detail::fixed( c.write_energy_per_add_nj ) << ','
       << detail::fixed( c.compare_energy_per_add_pj ) << ',' << detail::fixed( c.total_energy_per_add_nj ) << ','
       << detail::fixed( c.normalized_area, 2 ) << ',' << detail::fixed( r.delay_nonblocked, 1 ) << ','
       << detail::fixed( r.delay_blocked, 1 ) << ',' << detail::fixed( r.delay_nonblocked / r.delay_blocked ) << ','
       << detail::fixed( r.delay_nonblocked_embedded, 1 ) << ',' << detail::fixed( r.delay_blocked_embedded, 1 ) << ','
       << r.mismatches;
    for ( auto const& [name, b] : params.baselines )
    {
      os << ',' << detail::fixed( b.energy_nj == 0.0 ? 0.0 : c.total_energy_per_add_nj / b.energy_nj ) << ','
         << detail::fixed( b.delay_cycles == 0.0 ? 0.0 : r.delay_blocked / b.delay_cycles );
    }
    os << '\n';
  }
}

/*! \brief Cost report as a single CSV record with header. */
inline void write_report_csv( cost_report const& c, std::ostream& os )
{
  os << "radix,digits,rows,set_count,reset_count,avg_sets,avg_resets,write_energy_nj,compare_energy_pj,total_energy_nj,"
        "write_energy_per_add_nj,compare_energy_per_add_pj,total_energy_per_add_nj,delay_cycles,normalized_area\n";
  os << c.radix_value << ',' << c.digits << ',' << c.rows << ',' << c.set_count << ',' << c.reset_count << ','
     << detail::fixed( c.avg_sets ) << ',' << detail::fixed( c.avg_resets ) << ',' << detail::fixed( c.write_energy_nj ) << ','
     << detail::fixed( c.compare_energy_pj ) << ',' << detail::fixed( c.total_energy_nj ) << ','
     << detail::fixed( c.write_energy_per_add_nj ) << ',' << detail::fixed( c.compare_energy_per_add_pj ) << ','
     << detail::fixed( c.total_energy_per_add_nj ) << ',' << detail::fixed( c.delay_cycles, 1 ) << ','
     << detail::fixed( c.normalized_area, 2 ) << '\n';
}

} // namespace mvap
