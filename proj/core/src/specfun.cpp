#include "disp2d/specfun.hpp"
#include "disp2d/cutoff.hpp"

#include <cmath>
#include <stdexcept>

namespace disp2d {

namespace {

// Power series below this, Hankel asymptotic expansion above. The asymptotic
// series' optimal-truncation floor is ~e^{-2z}; at 16 both sides meet ~1e-13.
// The series is summed in long double to absorb its ~e^z/(pi z) cancellation.
constexpr double kSeriesAsymptoticCrossover = 16.0;
constexpr int kMaxSeriesTerms = 120;
constexpr int kMaxAsymptoticTerms = 40;

struct SeriesJ0Y0 {
    long double j0, hsum;   // hsum = sum_{k>=1} (-1)^{k+1} H_k q^k / (k!)^2, q = z^2/4
};

SeriesJ0Y0 j0_series_parts(double z)
{
    const long double q = (long double)z * z / 4.0L;
    long double term = 1.0L, j0 = 1.0L, hsum = 0.0L, hk = 0.0L;
    for (int k = 1; k <= kMaxSeriesTerms; ++k) {
        term *= -q / ((long double)k * k);
        hk += 1.0L / k;
        j0 += term;
        hsum -= term * hk;
        if (std::abs((double)term) * hk < 1e-24) break;
    }
    return {j0, hsum};
}

struct SeriesJ1Y1 {
    long double j1, hsum;   // j1 = (z/2) sum ..., hsum = sum (-1)^k (H_k + H_{k+1}) q^k / (k!(k+1)!)
};

SeriesJ1Y1 j1_series_parts(double z)
{
    const long double q = (long double)z * z / 4.0L;
    long double term = 1.0L;          // q^k / (k! (k+1)!)
    long double hk = 0.0L, hk1 = 1.0L;
    long double j1 = 1.0L, hsum = hk + hk1;
    long double sign = 1.0L;
    for (int k = 1; k <= kMaxSeriesTerms; ++k) {
        term *= q / ((long double)k * (k + 1));
        sign = -sign;
        hk += 1.0L / k;
        hk1 += 1.0L / (k + 1);
        j1 += sign * term;
        hsum += sign * term * (hk + hk1);
        if (std::abs((double)term) * (hk + hk1) < 1e-24) break;
    }
    j1 *= (long double)z / 2.0L;
    return {j1, hsum};
}

// S_nu(z) = sum_k i^k a_k(nu) / z^k with a_k the Hankel symbols; stops at the
// smallest term. H0+(z) ~ sqrt(2/pi z) e^{i(z - pi/4)} S_0(z).
std::complex<double> hankel_asymptotic_sum(int nu, double z)
{
    const double mu = 4.0 * nu * nu;
    std::complex<double> sum(1.0, 0.0), ik(0.0, 1.0);
    double a = 1.0, prev = 1.0;
    std::complex<double> phase(0.0, 1.0);
    for (int k = 1; k <= kMaxAsymptoticTerms; ++k) {
        const double odd = 2.0 * k - 1.0;
        a *= (mu - odd * odd) / (8.0 * k);
        const double mag = std::abs(a) / std::pow(z, k);
        if (mag >= prev) break;              // optimal truncation
        sum += phase * (a / std::pow(z, k));
        phase *= ik;
        prev = mag;
        if (mag < 1e-18) break;
    }
    return sum;
}

std::complex<double> h0_plus_large(double z)
{
    const std::complex<double> s = hankel_asymptotic_sum(0, z);
    const double amp = std::sqrt(2.0 / (M_PI * z));
    const double th = z - M_PI / 4.0;
    return amp * std::complex<double>(std::cos(th), std::sin(th)) * s;
}

} // namespace

J0Y0 bessel_j0_y0(double z)
{
    if (z < 0) throw std::domain_error("bessel_j0_y0: z must be > 0");
    if (z == 0) throw std::domain_error("bessel_j0_y0: Y0 undefined at z = 0");
    if (z < kSeriesAsymptoticCrossover) {
        const auto p = j0_series_parts(z);
        const long double lg = std::log((long double)z / 2.0L) + (long double)euler_gamma;
        const long double y0 = (2.0L / M_PIl) * (lg * p.j0 + p.hsum);
        return {(double)p.j0, (double)y0};
    }
    const auto h = h0_plus_large(z);
    return {h.real(), h.imag()};
}

double bessel_j0(double z)
{
    if (z < 0) throw std::domain_error("bessel_j0: z must be >= 0");
    if (z < kSeriesAsymptoticCrossover) return (double)j0_series_parts(z).j0;
    return h0_plus_large(z).real();
}

double bessel_y0(double z) { return bessel_j0_y0(z).y0; }

double bessel_j1(double z)
{
    if (z < 0) throw std::domain_error("bessel_j1: z must be >= 0");
    if (z < kSeriesAsymptoticCrossover) return (double)j1_series_parts(z).j1;
    const std::complex<double> s = hankel_asymptotic_sum(1, z);
    const double amp = std::sqrt(2.0 / (M_PI * z));
    const double th = z - 3.0 * M_PI / 4.0;
    return amp * (std::cos(th) * s.real() - std::sin(th) * s.imag());
}

double bessel_y1(double z)
{
    if (z <= 0) throw std::domain_error("bessel_y1: z must be > 0");
    if (z < kSeriesAsymptoticCrossover) {
        const auto p = j1_series_parts(z);
        const long double lg = std::log((long double)z / 2.0L) + (long double)euler_gamma;
        const long double y1 = (2.0L / M_PIl) * (lg * p.j1)
            - 2.0L / (M_PIl * (long double)z)
            - ((long double)z / (2.0L * M_PIl)) * p.hsum;
        return (double)y1;
    }
    const std::complex<double> s = hankel_asymptotic_sum(1, z);
    const double amp = std::sqrt(2.0 / (M_PI * z));
    const double th = z - 3.0 * M_PI / 4.0;
    return amp * (std::sin(th) * s.real() + std::cos(th) * s.imag());
}

Complex hankel_h0(Branch b, double z)
{
    if (z <= 0) throw std::domain_error("hankel_h0: z must be > 0");
    Complex h;
    if (z < kSeriesAsymptoticCrossover) {
        const auto jy = bessel_j0_y0(z);
        h = Complex(jy.j0, jy.y0);
    } else {
        h = h0_plus_large(z);
    }
    return b == Branch::plus ? h : std::conj(h);
}

Complex hankel_rho(Branch b, double z)
{
    if (z <= 0) throw std::domain_error("hankel_rho: z must be > 0");
    Complex rho;
    if (z < kSeriesAsymptoticCrossover) {
        rho = Complex(std::cos(z), -std::sin(z)) * hankel_h0(Branch::plus, z);
    } else {
        // e^{-iz} H0+(z) = sqrt(2/pi z) e^{-i pi/4} S(z): no phase round trip.
        const std::complex<double> s = hankel_asymptotic_sum(0, z);
        const double amp = std::sqrt(2.0 / (M_PI * z));
        rho = amp * Complex(M_SQRT1_2, -M_SQRT1_2) * s;
    }
    return b == Branch::plus ? rho : std::conj(rho);
}

HankelSplit hankel_split(double z, double y0_scale)
{
    if (z <= 0) throw std::domain_error("hankel_split: z must be > 0");
    if (y0_scale < 4.0) throw std::domain_error("hankel_split: y0 must be >= 4");
    HankelSplit s;
    s.z = z;
    s.y0_scale = y0_scale;
    const Complex h = hankel_h0(Branch::plus, z);
    if (z >= 1.0) {
        // omega = e^{-i(z-1)} H0+(z)
        s.omega = Complex(std::cos(z - 1.0), -std::sin(z - 1.0)) * h;
    } else {
        s.omega = h;
    }
    const double c1 = chi1(z / y0_scale).value;
    s.omega_plus = c1 * s.omega;
    s.omega_minus = s.omega - s.omega_plus;
    s.rho_plus = hankel_rho(Branch::plus, z);
    s.rho_minus = std::conj(s.rho_plus);
    return s;
}

Complex free_resolvent_kernel(Branch b, double lambda, double r)
{
    if (lambda <= 0) throw std::domain_error("free_resolvent_kernel: lambda must be > 0");
    if (r <= 0) throw std::domain_error("free_resolvent_kernel: r = 0 hits the kernel singularity");
    const double sgn = branch_sign(b);
    return sgn * Complex(0.0, 0.25) * hankel_h0(b, lambda * r);
}

Complex resolvent_expansion_constant(Branch b, double lambda)
{
    if (lambda <= 0) throw std::domain_error("resolvent_expansion_constant: lambda must be > 0");
    const double sgn = branch_sign(b);
    return Complex(-euler_gamma / (2.0 * M_PI) - std::log(lambda / 2.0) / (2.0 * M_PI), sgn * 0.25);
}

Complex e0_error_kernel(Branch b, double lambda, double r)
{
    if (lambda <= 0 || r <= 0) throw std::domain_error("e0_error_kernel: lambda, r must be > 0");
    const double z = lambda * r;
    if (z < 1.0) {
        // R0+ - c+(lambda) + log r/(2pi) = [i/4 - (log(z/2)+gamma)/(2pi)](J0-1) - hsum/(2pi),
        // summed from the k >= 1 series terms so nothing cancels.
        const auto p = j0_series_parts(z);
        const long double j0m1 = p.j0 - 1.0L;
        const double lg = std::log(z / 2.0) + euler_gamma;
        Complex e = Complex(-lg / (2.0 * M_PI), 0.25) * (double)j0m1
            - Complex((double)p.hsum / (2.0 * M_PI), 0.0);
        return b == Branch::plus ? e : std::conj(e);
    }
    const Complex e = free_resolvent_kernel(Branch::plus, lambda, r)
        - resolvent_expansion_constant(Branch::plus, lambda)
        + std::log(r) / (2.0 * M_PI);
    return b == Branch::plus ? e : std::conj(e);
}

} // namespace disp2d
