#include "ddlab/quadrature.hpp"

namespace ddlab {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1e-2)) {
    throw ValidationError("rel_tol must lie in (0, 1e-2)");
  }
  if (max_panels < 16) throw ValidationError("max_panels must be >= 16");
}

}  // namespace ddlab
