#include "disp2d/propagator.hpp"
#include "disp2d/errors.hpp"

#include <cmath>

namespace disp2d {

FitResult decay_fit(const std::vector<DecayRow>& rows)
{
    std::vector<double> x, y;
    int excluded = 0;
    for (const auto& r : rows) {
        if (r.value > 0 && r.t > 0) {
            x.push_back(std::log(r.t));
            y.push_back(std::log(r.value));
        } else {
            ++excluded;
        }
    }
    const int n = static_cast<int>(x.size());
    if (n < 8)
        throw NumericalError("decay_fit: only " + std::to_string(n)
                             + " usable rows (need >= 8); " + std::to_string(excluded) + " excluded");
    const double span = *std::max_element(x.begin(), x.end()) - *std::min_element(x.begin(), x.end());
    if (span < std::log(10.0) * (1.0 - 1e-9))
        throw NumericalError("decay_fit: t range spans less than one decade");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k = 0; k < n; ++k) {
        sx += x[k]; sy += y[k]; sxx += x[k] * x[k]; sxy += x[k] * y[k];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    double ssr = 0, sxx_c = 0;
    const double xbar = sx / n;
    for (int k = 0; k < n; ++k) {
        const double r = y[k] - (slope * x[k] + intercept);
        ssr += r * r;
        sxx_c += (x[k] - xbar) * (x[k] - xbar);
    }
    FitResult out;
    out.slope = slope;
    out.ci = n > 2 ? 1.96 * std::sqrt(ssr / (n - 2) / sxx_c) : 0.0;
    out.used = n;
    out.excluded = excluded;
    return out;
}

} // namespace disp2d
