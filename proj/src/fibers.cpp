#include "modsurf/fibers.hpp"

#include <algorithm>
#include <set>

namespace modsurf {

namespace {

void require_valid(const FiberType& f) {
    if (f.m < 1) throw std::invalid_argument("fiber multiplicity m must be >= 1");
}

}   // namespace

std::string FiberType::str() const {
    return (kind == FiberKind::I ? "I" : "I*") + std::to_string(m);
}

int chi_complex(const FiberType& f) {
    require_valid(f);
    return f.kind == FiberKind::I ? f.m : f.m + 6;
}

int components_off_section(const FiberType& f) {
    require_valid(f);
    return f.kind == FiberKind::I ? f.m - 1 : f.m + 4;
}

std::vector<RealFiberForm> real_forms(const FiberType& f) {
    require_valid(f);
    const bool even = (f.m % 2 == 0);
    if (f.kind == FiberKind::IStar) {
        if (even)
            return {{f, NearbyComponents::two, -f.m - 4}, {f, NearbyComponents::one, -f.m - 2}};
        return {{f, NearbyComponents::undetermined, -f.m - 4},
                {f, NearbyComponents::undetermined, -f.m - 2}};
    }
    if (even)
        return {{f, NearbyComponents::two, -f.m},
                {f, NearbyComponents::two, 0},
                {f, NearbyComponents::one, -f.m},
                {f, NearbyComponents::one, 0}};
    return {{f, NearbyComponents::undetermined, -f.m}, {f, NearbyComponents::undetermined, 1}};
}

int FiberConfiguration::total_m() const {
    int s = 0;
    for (const auto& f : fibers) s += f.m;
    return s;
}

int FiberConfiguration::nu_star() const {
    int s = 0;
    for (const auto& f : fibers) s += (f.kind == FiberKind::IStar) ? 1 : 0;
    return s;
}

std::vector<std::string> FiberConfiguration::serialized() const {
    std::vector<std::string> out;
    out.reserve(fibers.size());
    for (const auto& f : fibers) out.push_back(f.str());
    return out;
}

int chi_holomorphic(const FiberConfiguration& config) {
    const int total = config.total_m() + 6 * config.nu_star();
    if (total % 12 != 0)
        throw std::invalid_argument("not a valid fiber configuration for a smooth elliptic surface");
    int chi_sum = 0;
    for (const auto& f : config.fibers) chi_sum += chi_complex(f);
    if (chi_sum != total)
        throw std::logic_error("Euler characteristic bookkeeping mismatch");
    return total / 12;
}

const char* const kLiftCountNote =
    "lift count: 2^(t-1) sign assignments exist on the free generators; distinct "
    "fiber-type multisets can be fewer because different assignments may place the "
    "same types at different cusps";

LiftEnumeration enumerate_lifts(const ParabolicSystem& system) {
    const int t = static_cast<int>(system.elements.size());
    if (t == 0) throw std::invalid_argument("parabolic system is empty");

    // Sign-canonical base lifts: trace +2 representative of each generator.
    std::vector<UnimodularMatrix> base;
    base.reserve(t);
    for (const auto& el : system.elements)
        base.push_back(el.matrix.trace() == 2 ? el.matrix : el.matrix.negated());

    LiftEnumeration result;
    result.raw_count = 1 << (t - 1);
    for (int mask = 0; mask < result.raw_count; ++mask) {
        LiftAssignment assignment;
        assignment.signs.reserve(t);
        UnimodularMatrix partial = UnimodularMatrix::identity();
        for (int l = 0; l < t - 1; ++l) {
            // Lexicographic with +1 before -1: the high bit is generator 0.
            const int sign = ((mask >> (t - 2 - l)) & 1) ? -1 : 1;
            assignment.signs.push_back(sign);
            partial = compose(partial, sign == 1 ? base[l] : base[l].negated());
        }
        const UnimodularMatrix forced = partial.inverse();
        int last_sign;
        if (forced == base[t - 1])
            last_sign = 1;
        else if (forced == base[t - 1].negated())
            last_sign = -1;
        else
            throw std::logic_error("forced last lift is not +-M_t; system is not a relation");
        assignment.signs.push_back(last_sign);

        FiberConfiguration config;
        config.fibers.reserve(t);
        for (int l = 0; l < t; ++l) {
            const UnimodularMatrix lifted =
                assignment.signs[l] == 1 ? base[l] : base[l].negated();
            const ParabolicNormalForm nf = parabolic_normal_form(lifted);
            FiberType f;
            f.kind = (nf.sign == 1) ? FiberKind::I : FiberKind::IStar;
            f.m = static_cast<int>(mpz_class(abs(nf.shift)).get_si());
            if (f.m != system.elements[l].width)
                throw std::logic_error("lift multiplicity differs from the cusp width");
            config.fibers.push_back(f);
        }
        result.lifts.push_back(Lift{std::move(assignment), std::move(config)});
    }

    std::set<std::vector<FiberType>> multisets;
    for (const auto& lift : result.lifts) {
        std::vector<FiberType> sorted = lift.config.fibers;
        std::sort(sorted.begin(), sorted.end());
        multisets.insert(std::move(sorted));
    }
    result.distinct_multiset_count = static_cast<int>(multisets.size());
    result.note = kLiftCountNote;
    return result;
}

std::optional<Lift> all_star_lift(const LiftEnumeration& enumeration) {
    for (const auto& lift : enumeration.lifts) {
        if (lift.config.nu_star() == static_cast<int>(lift.config.fibers.size())) return lift;
    }
    return std::nullopt;
}

}   // namespace modsurf
