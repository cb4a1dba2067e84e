#pragma once

// Singular-fiber bookkeeping for elliptic surfaces whose functional invariant
// has poles only at the cusps: the semistable types I_m and their quadratic
// twists I*_m, the possible real forms of each type, the holomorphic Euler
// characteristic of a configuration, and the enumeration of all SL(2,Z)
// lifts of a parabolic generator system (each sign choice on the generators
// decides I versus I* at the corresponding cusp).

#include "modsurf/subgroup.hpp"

#include <optional>
#include <string>
#include <vector>

namespace modsurf {

enum class FiberKind { I, IStar };

struct FiberType {
    FiberKind kind;
    int m;   // >= 1

    std::string str() const;   // "I2", "I*2", ...
    bool operator==(const FiberType& o) const { return kind == o.kind && m == o.m; }
    bool operator<(const FiberType& o) const {
        return kind != o.kind ? kind < o.kind : m < o.m;
    }
};

// Complex Euler characteristic: m for I_m, m + 6 for I*_m.
int chi_complex(const FiberType& f);

// Number of irreducible components not meeting the zero section:
// m - 1 for I_m, m + 4 for I*_m.
int components_off_section(const FiberType& f);

// One possible real form of a singular fiber: the number of connected
// components of the nearby smooth real fibers (undetermined for odd m, where
// the invariant cycle argument gives no parity), and the Euler characteristic
// of the singular fiber's real locus.
enum class NearbyComponents { one, two, undetermined };

struct RealFiberForm {
    FiberType type;
    NearbyComponents nearby_components;
    int chi_real;
    bool operator==(const RealFiberForm& o) const {
        return type == o.type && nearby_components == o.nearby_components &&
               chi_real == o.chi_real;
    }
};

// All real forms of the given type:
//   I*_m, m even -> (2, -m-4), (1, -m-2)
//   I*_m, m odd  -> (undetermined, -m-4), (undetermined, -m-2)
//   I_m,  m even -> (2, -m), (2, 0), (1, -m), (1, 0)
//   I_m,  m odd  -> (undetermined, -m), (undetermined, 1)
std::vector<RealFiberForm> real_forms(const FiberType& f);

struct FiberConfiguration {
    std::vector<FiberType> fibers;   // one per cusp, in parabolic-system order

    int total_m() const;       // sum of the m_l; equals the subgroup index
    int nu_star() const;       // number of I* fibers
    std::vector<std::string> serialized() const;   // ["I*2", ...]
};

// Holomorphic Euler characteristic (total_m + 6 nu_star)/12, cross-checked
// against (sum of chi_complex)/12.  Throws std::invalid_argument when 12
// does not divide the total.
int chi_holomorphic(const FiberConfiguration& config);

struct LiftAssignment {
    std::vector<int> signs;   // +1 or -1 per parabolic generator, same order
};

struct Lift {
    LiftAssignment assignment;
    FiberConfiguration config;
};

struct LiftEnumeration {
    std::vector<Lift> lifts;        // lexicographic in the signs, +1 first
    int raw_count;                  // 2^(t-1): free signs on the first t-1 generators
    int distinct_multiset_count;    // distinct fiber-type multisets among the lifts
    std::string note;               // fixed wording, see kLiftCountNote
};

// The raw enumeration counts sign vectors; distinct fiber-type multisets can
// be fewer, and both numbers are reported side by side with this fixed note.
extern const char* const kLiftCountNote;

// All lifts of the system to SL(2,Z): signs on the first t-1 generators are
// free, the last is forced by the product-one relation (and always lands on
// +-M_t).  Fiber type at cusp l is I_{m} for sign +1 and I*_{m} for sign -1,
// where m is the cusp width.  Because a torsion-free genus-zero group is
// free on the first t-1 generators, -identity is never in the lifted image.
LiftEnumeration enumerate_lifts(const ParabolicSystem& system);

// The unique lift with every fiber of type I*, if present.
std::optional<Lift> all_star_lift(const LiftEnumeration& enumeration);

}   // namespace modsurf
