#pragma once
// Small fitting helpers shared by the certification and scaling studies.

#include "eulera/grid.hpp"

#include <vector>

namespace eulera {

/// Least-squares slope of log(y) against log(x).  Requires all entries
/// positive and at least two points; throws ValidationError otherwise.
Real loglog_slope(const std::vector<Real>& x, const std::vector<Real>& y);

/// Plain least-squares slope of y against x.
Real linear_slope(const std::vector<Real>& x, const std::vector<Real>& y);

}  // namespace eulera
