#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "digit.hpp"
#include "executor.hpp"
#include "lut.hpp"

namespace mvap
{

/*! \brief Energy per addition and delay of an external adder design. */
struct baseline
{
  double energy_nj = 0.0;
  double delay_cycles = 0.0;
};

enum class delay_mode
{
  /* every compare costs cycles_compare, every write cycles_write */
  standard,
  /* precharge rides on the write cycle: a compare costs half of
     cycles_compare, plus the other half when no write follows it */
  precharge_embedded
};

/*! \brief Cost-model inputs.
 *
 * Compare energies are per row and per compare, indexed by the number of
 * mismatching cells (0 = full match).  They default to zero: they are
 * circuit-simulation constants and contribute well under 0.1% of the
 * total at the default write energy.
 */
struct cost_params
{
  double e_set_nj = 1.0;
  double e_reset_nj = 1.0;
  std::vector<double> e_compare_pj;
  std::uint32_t cycles_compare = 1u;
  std::uint32_t cycles_write = 1u;
  std::optional<double> cell_area_factor; /* nTnR cell area in 2T2R units; n/2 when unset */
  std::map<std::string, baseline> baselines;

  void check() const
  {
    if ( e_set_nj < 0.0 || e_reset_nj < 0.0 )
    {
      throw error( "set/reset energies must be non-negative" );
    }
    for ( auto e : e_compare_pj )
    {
      if ( e < 0.0 )
      {
        throw error( "compare energies must be non-negative" );
      }
    }
    if ( cycles_compare < 1u || cycles_write < 1u )
    {
      throw error( "cycle costs must be at least 1" );
    }
    if ( cell_area_factor && *cell_area_factor <= 0.0 )
    {
      throw error( "cell area factor must be positive" );
    }
  }

  double compare_energy_pj( std::size_t mismatches ) const
  {
    return mismatches < e_compare_pj.size() ? e_compare_pj[mismatches] : 0.0;
  }
};

struct cost_report
{
  std::uint32_t radix_value = 0u;
  std::size_t digits = 0u;
  std::uint64_t rows = 0u;

  std::uint64_t set_count = 0u;
  std::uint64_t reset_count = 0u;
  double avg_sets = 0.0;
  double avg_resets = 0.0;

  /* totals over all rows */
  double write_energy_nj = 0.0;
  double compare_energy_pj = 0.0;
  double total_energy_nj = 0.0;

  /* per addition (row) */
  double write_energy_per_add_nj = 0.0;
  double compare_energy_per_add_pj = 0.0;
  double total_energy_per_add_nj = 0.0;

  double delay_cycles = 0.0;
  double normalized_area = 0.0;
};

/*! \brief Write and compare energy of an execution trace. */
inline cost_report energy_from_trace( execution_trace const& trace, radix n, cost_params const& params )
{
  params.check();
  cost_report r;
  r.radix_value = n.value();
  r.digits = trace.digits;
  r.rows = trace.rows;

  auto const t = trace.totals();
  r.set_count = t.sets;
  r.reset_count = t.resets;
  r.write_energy_nj = static_cast<double>( t.sets ) * params.e_set_nj + static_cast<double>( t.resets ) * params.e_reset_nj;

  for ( auto const& c : trace.compares )
  {
    for ( std::size_t k = 0; k < c.census.size(); ++k )
    {
      r.compare_energy_pj += static_cast<double>( c.census[k] ) * params.compare_energy_pj( k );
    }
  }
  r.total_energy_nj = r.write_energy_nj + r.compare_energy_pj * 1e-3;

  if ( trace.rows > 0u )
  {
    auto const rows = static_cast<double>( trace.rows );
    r.avg_sets = static_cast<double>( t.sets ) / rows;
    r.avg_resets = static_cast<double>( t.resets ) / rows;
    r.write_energy_per_add_nj = r.write_energy_nj / rows;
    r.compare_energy_per_add_pj = r.compare_energy_pj / rows;
    r.total_energy_per_add_nj = r.total_energy_nj / rows;
  }
  return r;
}

/*! \brief Clock cycles of a p-digit run; independent of the row count.
 *
 * Write cycles are charged whether or not any row matched.  In standard
 * mode a non-blocked program costs p * passes * (compare + write) and a
 * blocked one p * (passes * compare + blocks * write).
 */
inline double delay_cycles( lut_program const& lut, std::size_t p, cost_params const& params = {},
                            delay_mode mode = delay_mode::standard )
{
  params.check();
  auto const c = static_cast<double>( params.cycles_compare );
  auto const w = static_cast<double>( params.cycles_write );
  double per_digit = 0.0;
  for ( auto const& b : lut.blocks )
  {
    auto const k = static_cast<double>( b.passes.size() );
    if ( mode == delay_mode::standard )
    {
      per_digit += k * c + w;
    }
    else
    {
      /* k - 1 compares need their own precharge, the last one shares the write */
      per_digit += ( k - 1.0 ) * c + 0.5 * c + w;
    }
  }
  return static_cast<double>( p ) * per_digit;
}

inline double cell_area_factor( radix n, cost_params const& params = {} )
{
  return params.cell_area_factor ? *params.cell_area_factor : static_cast<double>( n.value() ) / 2.0;
}

/*! \brief Operand-cell area in 2T2R units; the shared carry cell is left out. */
inline double normalized_area( radix n, std::size_t digits, cost_params const& params = {} )
{
  if ( digits == 0u )
  {
    throw error( "digit count must be at least 1" );
  }
  return cell_area_factor( n, params ) * 2.0 * static_cast<double>( digits );
}

struct comparison_summary_result
{
  std::vector<double> set_reset_reduction_pct;
  std::vector<double> total_energy_reduction_pct;
  std::vector<double> area_reduction_pct;

  double mean_set_reset_reduction_pct = 0.0;
  double mean_total_energy_reduction_pct = 0.0;
  double mean_area_reduction_pct = 0.0;
};

/*! \brief Mean percentage reductions of `second` relative to `first`, pair by pair. */
inline comparison_summary_result comparison_summary( std::span<const cost_report> first, std::span<const cost_report> second )
{
  if ( first.size() != second.size() || first.empty() )
  {
    throw error( "comparison needs two equally long, non-empty report lists" );
  }
  auto const reduction = []( double base, double other ) { return base == 0.0 ? 0.0 : 100.0 * ( base - other ) / base; };

  comparison_summary_result s;
  for ( std::size_t i = 0; i < first.size(); ++i )
  {
    auto const& b = first[i];
    auto const& t = second[i];
    s.set_reset_reduction_pct.push_back( reduction( b.avg_sets + b.avg_resets, t.avg_sets + t.avg_resets ) );
    s.total_energy_reduction_pct.push_back( reduction( b.total_energy_per_add_nj, t.total_energy_per_add_nj ) );
    s.area_reduction_pct.push_back( reduction( b.normalized_area, t.normalized_area ) );
  }
  auto const mean = []( std::vector<double> const& v ) {
    double sum = 0.0;
    for ( auto x : v )
    {
      sum += x;
    }
    return sum / static_cast<double>( v.size() );
  };
  s.mean_set_reset_reduction_pct = mean( s.set_reset_reduction_pct );
  s.mean_total_energy_reduction_pct = mean( s.total_energy_reduction_pct );
  s.mean_area_reduction_pct = mean( s.area_reduction_pct );
  return s;
}

} // namespace mvap
