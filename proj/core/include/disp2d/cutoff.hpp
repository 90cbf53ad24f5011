#pragma once

#include <stdexcept>

namespace disp2d {

// Smooth cutoffs with the support pattern the estimates need:
//   chi1: 0 on y <= 1, 1 on y >= 2   (high-pass)
//   chi2: 1 on y <= 1, 0 on y >= 2   (low-pass), chi2 = 1 - chi1 exactly
//   chi : 1 on lambda <= lambda1, 0 on lambda >= 2*lambda1
// Transition is the C-infinity step B(s)/(B(s)+B(1-s)), B(s) = exp(-1/s).

struct CutoffFamily {
    enum class Kind { chi, chi1, chi2 };
    Kind kind = Kind::chi2;
    double lambda1 = 0.0;   // scale, chi only

    static CutoffFamily low_pass_at(double lambda1)
    {
        if (lambda1 <= 0) throw std::invalid_argument("CutoffFamily: lambda1 must be > 0");
        return {Kind::chi, lambda1};
    }
};

struct CutoffValue {
    double value;
    double derivative;
};

CutoffValue smooth_cutoff(const CutoffFamily& family, double y);

CutoffValue chi1(double y);
CutoffValue chi2(double y);
CutoffValue chi(double lambda, double lambda1);

} // namespace disp2d
