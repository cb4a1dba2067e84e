#include "modsurf/genus1_real.hpp"

#include <cmath>
#include <numbers>

namespace modsurf {

namespace {

constexpr int kCoefficientCount = 41;   // c_0..c_40; far beyond double precision needs

std::vector<mpz_class> compute_j_coefficients() {
    const int n_max = kCoefficientCount - 1;
    const auto convolve = [&](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
        std::vector<mpz_class> c(n_max + 1, 0);
        for (int i = 0; i <= n_max; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; i + j <= n_max; ++j) c[i + j] += a[i] * b[j];
        }
        return c;
    };

    // E4 = 1 + 240 sum sigma_3(n) q^n, cubed.
    std::vector<mpz_class> e4(n_max + 1, 0);
    e4[0] = 1;
    for (int n = 1; n <= n_max; ++n) {
        mpz_class s3 = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) s3 += mpz_class(d) * d * d;
        e4[n] = 240 * s3;
    }
    const std::vector<mpz_class> e4_cubed = convolve(convolve(e4, e4), e4);

    // prod (1 - q^n)^24: pentagonal-number expansion of prod (1 - q^n),
    // then raised to the 24th power as f^16 * f^8.
    std::vector<mpz_class> f(n_max + 1, 0);
    f[0] = 1;
    for (int k = 1;; ++k) {
        const long g1 = static_cast<long>(k) * (3 * k - 1) / 2;
        const long g2 = static_cast<long>(k) * (3 * k + 1) / 2;
        const int sign = (k % 2 == 0) ? 1 : -1;
        if (g1 <= n_max) f[g1] += sign;
        if (g2 <= n_max) f[g2] += sign;
        if (g1 > n_max) break;
    }
    const auto f2 = convolve(f, f);
    const auto f4 = convolve(f2, f2);
    const auto f8 = convolve(f4, f4);
    const auto f16 = convolve(f8, f8);
    const auto denom = convolve(f16, f8);

    // Series division: coefficients of E4^3 / prod(1-q^n)^24; exactness of
    // every step is asserted (the quotient is the integral q-expansion).
    std::vector<mpz_class> out(n_max + 1, 0);
    for (int n = 0; n <= n_max; ++n) {
        mpz_class acc = e4_cubed[n];
        for (int i = 1; i <= n; ++i) acc -= denom[i] * out[n - i];
        if (acc % denom[0] != 0)
            throw std::logic_error("q-expansion division is not exact; coefficient bug");
        out[n] = acc / denom[0];
    }
    return out;
}

std::complex<double> evaluate_reduced(std::complex<double> tau) {
    using namespace std::complex_literals;
    const std::complex<double> q = std::exp(2.0i * std::numbers::pi * tau);
    const auto& coeff = j_expansion_coefficients();
    std::complex<double> acc = 0.0, q_power = 1.0;
    for (std::size_t n = 0; n < coeff.size(); ++n) {
        const std::complex<double> term = coeff[n].get_d() * q_power;
        acc += term;
        if (n >= 1 && std::abs(term) < 1e-15 * std::abs(acc)) break;
        q_power *= q;
    }
    return acc / q;
}

// Reduced point with the boundary identified: Re = -1/2 folded to +1/2 and
// the left half of the unit-circle arc mirrored to the right half.
std::complex<double> canonical_orbit_point(const HalfPlanePoint& z, double tolerance) {
    const FundamentalDomainReduction red = reduce_to_fundamental_domain(z);
    double x = red.point.x;
    const double y = red.point.y;
    if (std::abs(x + 0.5) <= tolerance) x = 0.5;
    if (x < 0.0 && std::abs(x * x + y * y - 1.0) <= 4.0 * tolerance) x = -x;
    return {x, y};
}

}   // namespace

const std::vector<mpz_class>& j_expansion_coefficients() {
    static const std::vector<mpz_class> coeff = compute_j_coefficients();
    return coeff;
}

std::complex<double> j_classical(const HalfPlanePoint& tau) {
    const FundamentalDomainReduction red = reduce_to_fundamental_domain(tau);
    return evaluate_reduced(red.point.to_complex());
}

std::complex<double> j_normalized(const HalfPlanePoint& tau) {
    return j_classical(tau) / 1728.0;
}

bool equivalent(const HalfPlanePoint& a, const HalfPlanePoint& b, double tolerance) {
    const std::complex<double> pa = canonical_orbit_point(a, tolerance);
    const std::complex<double> pb = canonical_orbit_point(b, tolerance);
    const bool same = std::abs(pa.real() - pb.real()) <= tolerance &&
                      std::abs(pa.imag() - pb.imag()) <= tolerance;
    if (same) {
        const std::complex<double> ja = j_classical(a), jb = j_classical(b);
        const double scale = std::max({1.0, std::abs(ja), std::abs(jb)});
        if (std::abs(ja - jb) > 1e-6 * scale)
            throw std::logic_error(
                "internal inconsistency: same reduced point but different j values");
    }
    return same;
}

RealDefinability is_definable_over_R(const HalfPlanePoint& tau, double tolerance) {
    const std::complex<double> j = j_normalized(tau);
    RealDefinability result;
    result.definable = std::abs(j.imag()) <= tolerance;
    if (!result.definable) return result;

    const double geometric_tolerance = 1e-6;
    // The input itself is the preferred witness: its lattice fixes the real
    // structure, and at j = 1 inequivalent real structures share one orbit.
    const double two_re_input = 2.0 * tau.x;
    if (std::abs(two_re_input - std::round(two_re_input)) <= geometric_tolerance) {
        result.witness = HalfPlanePoint(std::round(two_re_input) / 2.0, tau.y);
        return result;
    }
    const FundamentalDomainReduction red = reduce_to_fundamental_domain(tau);
    const double x = red.point.x, y = red.point.y;
    const double two_re = 2.0 * x;
    if (std::abs(two_re - std::round(two_re)) <= geometric_tolerance) {
        result.witness = HalfPlanePoint(std::round(two_re) / 2.0, y);
    } else if (std::abs(x * x + y * y - 1.0) <= geometric_tolerance) {
        // z -> z/(z+1) maps the unit circle onto the line Re = 1/2.
        const std::complex<double> moved =
            red.point.to_complex() / (red.point.to_complex() + 1.0);
        result.witness = HalfPlanePoint(0.5, moved.imag());
    }
    return result;
}

RealCurveClass real_component_count(long two_re, double im, double tolerance) {
    const HalfPlanePoint tau(static_cast<double>(two_re) / 2.0, im);   // validates im > 0
    const std::complex<double> j = j_normalized(tau);
    if (std::abs(j.imag()) > tolerance)
        throw std::logic_error("j is not real although 2 Re(tau) is integral");

    RealCurveClass out;
    out.j_normalized_value = j.real();
    out.lattice_component_count = (two_re % 2 == 0) ? 2 : 1;
    if (two_re % 2 == 0) {
        if (j.real() < 1.0 - tolerance)
            throw std::logic_error("integral Re gave normalized j below 1");
    } else {
        if (j.real() > 1.0 + tolerance)
            throw std::logic_error("odd 2 Re gave normalized j above 1");
    }
    if (std::abs(j.real() - 1.0) <= tolerance)
        out.component_count = ComponentCount::ambiguous_at_j_equals_1;
    else
        out.component_count =
            (out.lattice_component_count == 2) ? ComponentCount::two : ComponentCount::one;
    return out;
}

}   // namespace modsurf
