#pragma once

#include <complex>

// Bessel/Hankel machinery for the 2D free resolvent: J0, Y0, H0± and the
// amplitude splits used by the high- and low-energy estimates.

namespace disp2d {

using Complex = std::complex<double>;

inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;

// c in Y0(z) = (2/pi)(log z + c) J0(z) + r(z), i.e. c = gamma - log 2.
inline constexpr double y0_log_constant = euler_gamma - 0.693147180559945309417232121458176568;

// Resolvent boundary value: plus = (-Delta - lambda^2 - i0)^{-1} limit from above.
enum class Branch { plus, minus };

inline int branch_sign(Branch b) { return b == Branch::plus ? +1 : -1; }
inline Branch conj_branch(Branch b) { return b == Branch::plus ? Branch::minus : Branch::plus; }

struct J0Y0 {
    double j0;
    double y0;
};

/// J0 and Y0 in one evaluation. z > 0 required for y0 (J0 alone accepts z = 0
/// through bessel_j0). Relative accuracy ~1e-13 up to z = 1e4.
J0Y0 bessel_j0_y0(double z);

double bessel_j0(double z);   // z >= 0
double bessel_y0(double z);   // z > 0
double bessel_j1(double z);   // z >= 0
double bessel_y1(double z);   // z > 0

// dJ0/dz = -J1, dY0/dz = -Y1.
inline double bessel_j0_prime(double z) { return -bessel_j1(z); }
inline double bessel_y0_prime(double z) { return -bessel_y1(z); }

/// H0±(z) = J0(z) ± i Y0(z); the minus branch is the exact conjugate.
Complex hankel_h0(Branch b, double z);

/// rho±(z) with H0±(z) = e^{±iz} rho±(z). Computed without the e^{∓iz} e^{±iz}
/// round trip for large z.
Complex hankel_rho(Branch b, double z);

struct HankelSplit {
    double z = 0;
    double y0_scale = 8.0;                  // split scale y0 >> 1
    Complex omega;                          // H0+(z) = e^{i(z-1)} omega(z) for z >= 1, omega = H0+ below
    Complex omega_plus;                     // chi1(z / y0) * omega
    Complex omega_minus;                    // omega - omega_plus, exact complement
    Complex rho_plus;                       // e^{-iz} H0+(z)
    Complex rho_minus;                      // conj(rho_plus)
};

/// Amplitude split of H0+ at scale y0 (y0 >= 4). The seam at z = 1 uses the
/// oscillatory branch (half-open convention).
HankelSplit hankel_split(double z, double y0_scale = 8.0);

/// Free resolvent kernel R0±(lambda^2)(x, y) = ±(i/4) H0±(lambda |x-y|).
/// r = 0 is a genuine kernel singularity; grid assembly regularizes it.
Complex free_resolvent_kernel(Branch b, double lambda, double r);

/// The lambda-only constant of the low-energy expansion:
/// ±i/4 - gamma/(2 pi) - log(lambda/2)/(2 pi).
Complex resolvent_expansion_constant(Branch b, double lambda);

/// E0±(lambda)(x, y) = R0± - [±i/4 - gamma/2pi - log(lambda/2)/2pi] + log|x-y|/2pi,
/// with a cancellation-safe series for small lambda*r.
Complex e0_error_kernel(Branch b, double lambda, double r);

} // namespace disp2d
