#include "disp2d/cutoff.hpp"

#include <cmath>

namespace disp2d {

namespace {

struct Step {
    double value, derivative;
};

// C-infinity monotone 0 -> 1 on [0, 1]; all derivatives vanish at both ends.
Step smooth_step(double s)
{
    if (s <= 0.0) return {0.0, 0.0};
    if (s >= 1.0) return {1.0, 0.0};
    const double a = std::exp(-1.0 / s);
    const double b = std::exp(-1.0 / (1.0 - s));
    const double da = a / (s * s);
    const double db = b / ((1.0 - s) * (1.0 - s));
    const double denom = a + b;
    return {a / denom, (da * b + a * db) / (denom * denom)};
}

} // namespace

CutoffValue chi1(double y)
{
    const Step s = smooth_step(y - 1.0);
    return {s.value, s.derivative};
}

CutoffValue chi2(double y)
{
    const Step s = smooth_step(y - 1.0);
    return {1.0 - s.value, -s.derivative};
}

CutoffValue chi(double lambda, double lambda1)
{
    if (lambda1 <= 0) throw std::invalid_argument("chi: lambda1 must be > 0");
    const CutoffValue c = chi2(lambda / lambda1);
    return {c.value, c.derivative / lambda1};
}

CutoffValue smooth_cutoff(const CutoffFamily& family, double y)
{
    switch (family.kind) {
        case CutoffFamily::Kind::chi1: return chi1(y);
        case CutoffFamily::Kind::chi2: return chi2(y);
        case CutoffFamily::Kind::chi:  return chi(y, family.lambda1);
    }
    throw std::logic_error("smooth_cutoff: bad kind");
}

} // namespace disp2d
