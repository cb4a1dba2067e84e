#pragma once

// The concrete subgroup family behind the extremal surfaces: the level-2
// congruence group (index 6) and, for every k >= 2, the group generated by
//   T^{2(k-1)}  and  g_j = (2j-1, 2j(j-1); 2, 2j-1),  j = 1..k-1.
// g_j is the unique level-2 element pairing the half-circle with endpoints
// (-j, -(j-1)) to the one with endpoints (j-1, j) while matching -j -> j and
// -(j-1) -> j-1; every claimed invariant of the family is re-verified at
// construction time and any mismatch is a hard failure.

#include "modsurf/subgroup.hpp"

#include <string>

namespace modsurf {

struct GammaK {
    int k;
    std::vector<UnimodularMatrix> generators;
    CosetRepresentation representation;
    SubgroupInvariants invariants;
    std::vector<CuspClass> cusp_classes;
};

// Sign-insensitive mod-2 pattern a = d = 1, b = c = 0.
bool gamma2_congruence_test(const UnimodularMatrix& m);

// Generator matrices for the index-6(k-1) group described above; k >= 2.
std::vector<UnimodularMatrix> gamma_k_generators(int k);

// Builds the group and verifies, as hard failures:
//   * every generator has det 1, passes gamma2_congruence_test, and (for the
//     g_j) satisfies s_involution(g_j) = g_j^-1 and the endpoint conditions;
//   * index 6(k-1), genus 0, k+1 cusps, torsion-free, S-stable;
//   * the cusp classes are exactly {inf}, {0}, {j ~ -j} for j = 1..k-1, with
//     widths 2(k-1) at inf, 2 at 0 and k-1, 4 at interior points, all even
//     and all real.
GammaK build_gamma_k(int k, int coset_budget = kDefaultCosetBudget);

// The level-2 congruence group, i.e. build_gamma_k(2).
GammaK gamma2();

// SVG drawing of the fundamental domain: the strip |Re z| <= k-1 minus the
// half-disks of radius 1/2 centered at the odd half-integers, with the
// 2(k-1) boundary arcs (class "arc"), side labels (beta for the vertical
// pair, gamma_j and mirrors for the arcs), and the real locus highlighted.
std::string fundamental_domain_svg(const GammaK& g);

}   // namespace modsurf
