#include "eulera/stats.hpp"

#include <cmath>

namespace eulera {

Real linear_slope(const std::vector<Real>& x, const std::vector<Real>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ValidationError("linear_slope: need >= 2 matching points");
    const size_t n = x.size();
    Real sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const Real denom = n * sxx - sx * sx;
    if (denom == 0) throw ValidationError("linear_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

Real loglog_slope(const std::vector<Real>& x, const std::vector<Real>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ValidationError("loglog_slope: need >= 2 matching points");
    std::vector<Real> lx(x.size()), ly(y.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0))
            throw ValidationError("loglog_slope: values must be positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return linear_slope(lx, ly);
}

}  // namespace eulera
