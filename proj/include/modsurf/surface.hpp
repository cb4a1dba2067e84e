#pragma once

// Assembly of a base subgroup and a monodromy lift into an elliptic-surface
// model, and the invariants computed from it: Hodge numbers, orientability
// and connectedness of the real locus, the homology bound check
// h1_alg <= h1 <= h11, and the deformation-class comparison.

#include "modsurf/fibers.hpp"
#include "modsurf/subgroup.hpp"

#include <optional>
#include <string>

namespace modsurf {

struct SurfaceModel {
    CosetRepresentation base;
    SubgroupInvariants base_invariants;
    LiftAssignment lift;
    FiberConfiguration config;       // one fiber per cusp, sum of m = index
    bool cusps_all_real;
    bool has_real_section;           // true for the modular construction
    bool has_multiple_fiber = false; // synthetic-input flag; never set by builders
};

// Builds the model for one enumerated lift and validates the bookkeeping
// (one fiber per cusp, total multiplicity equal to the index).
SurfaceModel make_surface_model(const CosetRepresentation& base, const Lift& lift,
                                bool has_real_section = true);

struct HodgeInvariants {
    int q;                    // irregularity = genus of the base
    int chi_O;                // holomorphic Euler characteristic
    std::optional<int> h11;   // 10 chi_O for regular (q = 0) models, else absent
    int e_topological;        // 12 chi_O = sum of complex fiber Euler numbers
};

HodgeInvariants hodge_invariants(const SurfaceModel& m);

// Relatively minimal and without multiple fibers.  Structural for every
// model this library builds (I/I* fibers with a section); false only for a
// model explicitly flagged with a multiple fiber.
bool is_normalized(const SurfaceModel& m);

enum class Orientability { orientable, nonorientable_nonempty, undetermined };

// Parity rule for the canonical class of a regular normalized model:
// chi(O) even and real locus nonempty -> orientable; chi(O) odd with a real
// section -> nonempty and non-orientable; no nonemptiness witness ->
// undetermined.
Orientability orientability(const SurfaceModel& m);

struct ComessattiCertificate {
    bool certified_connected;   // exactly one component, proven
    double component_bound;     // (h1 + h11 - 2(r_lower - 1)) / 2
};

// Connectedness bound 2#X(R) - h1 <= h11 - 2(r_lower - 1) where r_lower is
// any lower bound for the real Picard rank.  Certifies one component when
// the bound is < 2 and the real locus is known nonempty.
ComessattiCertificate comessatti_connectedness(int h1, int h11, int r_lower,
                                               bool known_nonempty);

struct RealTopologyReport {
    int connected_components;   // 1 (certified)
    int h1;                     // rank of H_1(X(R), Z/2)
    int h1_alg;                 // rank of the algebraic part
    bool orientable;
    std::string type_tag;       // "S_g" (h1 = 2g) or "V_q" (h1 = q)
};

// Full real topology under the extremal hypotheses: every fiber I*_m with m
// even, all cusps real, a real section, base of genus zero.  Then every
// smooth real fiber has two components, each singular real fiber contributes
// chi = -m-4, and
//     h1 = 2 - sum chi_real = 2 + sum m + 4t = h1_alg,
// computed both ways and cross-checked.  Violated hypotheses are reported
// together in the exception message.
RealTopologyReport real_topology_extremal(const SurfaceModel& m);

// Asserts the chain h1_alg <= h1 <= h11 (throws std::logic_error on any
// violation: the chain is a theorem, so a violation is an upstream bug) and
// returns whether the extremal equality h1 = h11 holds.
bool ragsdale_viro_check(const RealTopologyReport& report, const HodgeInvariants& hodge);

// Normalized regular elliptic surfaces are deformation equivalent exactly
// when their holomorphic Euler characteristics agree.
bool same_deformation_class(int chi_a, int chi_b);

}   // namespace modsurf
