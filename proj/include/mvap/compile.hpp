#pragma once

#include <string>

#include "function_spec.hpp"
#include "lut.hpp"
#include "lut_blocked.hpp"
#include "lut_nonblocked.hpp"
#include "state_diagram.hpp"
#include "verify.hpp"

namespace mvap
{

class invalid_program : public error
{
public:
  invalid_program( validation_result r, std::string const& what ) : error( what ), result_( std::move( r ) ) {}

  validation_result const& result() const noexcept { return result_; }

private:
  validation_result result_;
};

struct compilation
{
  state_diagram diagram;
  lut_program lut;
};

/*! \brief Spec to validated program.
 *
 * Throws `no_valid_redirect` when a cycle cannot be broken and
 * `invalid_program` when the exhaustive post-check fails.
 */
inline compilation compile( function_spec const& spec, lut_mode mode )
{
  auto diagram = prepare_diagram( spec );
  auto lut = mode == lut_mode::blocked ? compile_blocked( diagram ) : compile_nonblocked( diagram );
  auto check = validate_lut( spec, lut );
  if ( !check.ok() )
  {
    auto const first = describe( check.violations.front() );
    throw invalid_program( std::move( check ), "compiled program failed validation: " + first );
  }
  return { std::move( diagram ), std::move( lut ) };
}

} // namespace mvap
