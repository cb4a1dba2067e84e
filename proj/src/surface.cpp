#include "modsurf/surface.hpp"

#include <sstream>

namespace modsurf {

SurfaceModel make_surface_model(const CosetRepresentation& base, const Lift& lift,
                                bool has_real_section) {
    const SubgroupInvariants inv = invariants(base);
    if (static_cast<int>(lift.config.fibers.size()) != inv.cusp_count)
        throw std::invalid_argument("fiber configuration length differs from the cusp count");
    if (lift.config.total_m() != inv.mu)
        throw std::invalid_argument("fiber multiplicities do not sum to the index");
    bool all_real = true;
    for (const auto& c : cusps(base)) all_real = all_real && c.is_real;
    return SurfaceModel{base, inv, lift.assignment, lift.config, all_real, has_real_section};
}

HodgeInvariants hodge_invariants(const SurfaceModel& m) {
    HodgeInvariants h;
    h.q = m.base_invariants.genus;
    h.chi_O = chi_holomorphic(m.config);
    h.e_topological = 12 * h.chi_O;
    int chi_sum = 0;
    for (const auto& f : m.config.fibers) chi_sum += chi_complex(f);
    if (chi_sum != h.e_topological)
        throw std::logic_error("topological Euler number differs from the fiber sum");
    if (h.q == 0) h.h11 = 10 * h.chi_O;
    return h;
}

bool is_normalized(const SurfaceModel& m) { return !m.has_multiple_fiber; }

Orientability orientability(const SurfaceModel& m) {
    if (m.base_invariants.genus != 0)
        throw std::invalid_argument("orientability rule requires a genus-zero base");
    if (!is_normalized(m))
        throw std::invalid_argument("orientability rule requires a normalized model");
    const int chi = chi_holomorphic(m.config);
    const bool nonempty = m.has_real_section;
    if (chi % 2 == 0) return nonempty ? Orientability::orientable : Orientability::undetermined;
    return nonempty ? Orientability::nonorientable_nonempty : Orientability::undetermined;
}

ComessattiCertificate comessatti_connectedness(int h1, int h11, int r_lower,
                                               bool known_nonempty) {
    if (r_lower > h11)
        throw std::invalid_argument("Picard rank lower bound exceeds h11");
    ComessattiCertificate cert;
    cert.component_bound = (h1 + h11 - 2.0 * (r_lower - 1)) / 2.0;
    cert.certified_connected = known_nonempty && cert.component_bound < 2.0;
    return cert;
}

RealTopologyReport real_topology_extremal(const SurfaceModel& m) {
    std::vector<std::string> problems;
    for (const auto& f : m.config.fibers) {
        if (f.kind != FiberKind::IStar || f.m % 2 != 0) {
            problems.push_back("fiber " + f.str() + " is not an even I*");
            break;
        }
    }
    if (!m.cusps_all_real) problems.push_back("not every cusp is real");
    if (!m.has_real_section) problems.push_back("no real section");
    if (m.base_invariants.genus != 0) problems.push_back("base genus is not zero");
    if (!problems.empty()) {
        std::ostringstream msg;
        msg << "extremal real topology needs all hypotheses:";
        for (const auto& p : problems) msg << "\n  - " << p;
        throw std::invalid_argument(msg.str());
    }

    // Every smooth real fiber has 2 components (the real locus of the base
    // meets only fibers with j-value above the threshold), which selects the
    // chi_real = -m-4 row for every singular fiber.
    const int t = static_cast<int>(m.config.fibers.size());
    int chi_real_sum = 0, off_section_sum = 0;
    for (const auto& f : m.config.fibers) {
        const std::vector<RealFiberForm> forms = real_forms(f);
        const RealFiberForm& selected = forms.front();   // (two, -m-4) for even I*
        if (selected.nearby_components != NearbyComponents::two ||
            selected.chi_real != -f.m - 4)
            throw std::logic_error("unexpected real-form table row for an even I* fiber");
        chi_real_sum += selected.chi_real;
        off_section_sum += components_off_section(f);
    }
    const int h1 = 2 - chi_real_sum;
    if (h1 != 2 + m.config.total_m() + 4 * t)
        throw std::logic_error("h1 computed two ways disagrees");
    // Algebraic classes: one per off-section fiber component, plus the
    // section and one generic fiber.
    const int h1_alg = 2 + off_section_sum;
    if (h1_alg != h1) throw std::logic_error("h1_alg differs from h1 on an extremal model");

    const HodgeInvariants hodge = hodge_invariants(m);
    const Orientability orient = orientability(m);
    if (orient == Orientability::undetermined)
        throw std::logic_error("orientability undetermined despite a real section");

    const ComessattiCertificate cert =
        comessatti_connectedness(h1, *hodge.h11, h1_alg, m.has_real_section);
    if (!cert.certified_connected)
        throw std::logic_error("connectedness certificate failed on an extremal model");

    RealTopologyReport report;
    report.connected_components = 1;
    report.h1 = h1;
    report.h1_alg = h1_alg;
    report.orientable = (orient == Orientability::orientable);
    if (report.orientable) {
        if (h1 % 2 != 0) throw std::logic_error("orientable surface with odd h1");
        report.type_tag = "S_" + std::to_string(h1 / 2);
    } else {
        report.type_tag = "V_" + std::to_string(h1);
    }
    return report;
}

bool ragsdale_viro_check(const RealTopologyReport& report, const HodgeInvariants& hodge) {
    if (!hodge.h11)
        throw std::invalid_argument("homology bound check requires a regular model");
    if (report.h1_alg > report.h1 || report.h1 > *hodge.h11)
        throw std::logic_error("homology bound chain h1_alg <= h1 <= h11 violated: h1_alg=" +
                               std::to_string(report.h1_alg) + " h1=" +
                               std::to_string(report.h1) + " h11=" + std::to_string(*hodge.h11));
    return report.h1 == *hodge.h11;
}

bool same_deformation_class(int chi_a, int chi_b) { return chi_a == chi_b; }

}   // namespace modsurf
