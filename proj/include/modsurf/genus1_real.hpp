#pragma once

// The elliptic modular function j and the classification of real genus-1
// curves C(tau) = C / (Z + tau Z):
//   * C(tau) is definable over R  iff  j(tau) is real, iff tau is equivalent
//     to a point with 2 Re integral or on the unit circle;
//   * with 2 Re(tau) integral, the real locus has 2 components when
//     Re(tau) ∈ Z (rectangular lattice) and 1 when 2 Re(tau) is odd;
//   * at j = 1728 (normalized value 1) both real forms occur, so the count
//     is flagged ambiguous there and the lattice parity disambiguates.
//
// j is evaluated from the exact integer q-expansion after reduction to the
// standard fundamental domain; "normalized" means divided by 1728, so the
// value is 1 at tau = i and 0 at the order-3 corner.

#include "modsurf/psl2.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace modsurf {

inline constexpr double kRealTolerance = 1e-8;

// Exact integer coefficients c_0..c_N of j = (sum c_n q^n) / q,
// c_0..c_4 = 1, 744, 196884, 21493760, 864299970.
const std::vector<mpz_class>& j_expansion_coefficients();

// Classical normalization: 1728 at tau = i.  Relative error <= 1e-9 after
// internal reduction to the fundamental domain.
std::complex<double> j_classical(const HalfPlanePoint& tau);

// j / 1728: the normalization in which the two-real-forms threshold is 1.
std::complex<double> j_normalized(const HalfPlanePoint& tau);

// True iff the two points lie in the same PSL(2,Z) orbit.  Decided by exact
// reduction (with boundary identifications Re = -1/2 ~ +1/2 and the two
// halves of the unit-circle arc); a same-orbit result is cross-checked
// against |j(a) - j(b)| and any disagreement throws std::logic_error.  Small
// j-distance alone is NOT evidence of equivalence (j is ramified at its
// critical points), so no check runs in that direction.
bool equivalent(const HalfPlanePoint& a, const HalfPlanePoint& b, double tolerance = 1e-9);

struct RealDefinability {
    bool definable;   // Im(normalized j) within tolerance of 0
    // An equivalent point with 2 Re integral, when one is found on the orbit
    // boundary (interior of the circle arc maps to the Re = 1/2 line).
    std::optional<HalfPlanePoint> witness;
};

RealDefinability is_definable_over_R(const HalfPlanePoint& tau,
                                     double tolerance = kRealTolerance);

enum class ComponentCount { one, two, ambiguous_at_j_equals_1 };

struct RealCurveClass {
    ComponentCount component_count;   // ambiguous flag raised exactly at j = 1
    int lattice_component_count;      // 1 or 2 from the parity of 2 Re(tau); always set
    double j_normalized_value;        // real part of the normalized j
};

// Component count of C(tau)(R) for tau = two_re/2 + i*im.  The parity of
// two_re is exact input: even -> 2 components (j >= 1 enforced), odd -> 1
// component (j <= 1 enforced); threshold violations throw std::logic_error.
RealCurveClass real_component_count(long two_re, double im,
                                    double tolerance = kRealTolerance);

}   // namespace modsurf
