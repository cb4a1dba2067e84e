#pragma once

// Finite-index subgroups of PSL(2,Z), represented by the right-coset action
// of the generators s, t on {0, .., mu-1} with basepoint coset 0.
// The ambient presentation is <s, t | s^2, (st)^3>.
//
// Representations are immutable after construction; every query is pure.

#include "modsurf/psl2.hpp"

#include <optional>
#include <string>
#include <vector>

namespace modsurf {

inline constexpr int kDefaultCosetBudget = 10000;

// Coset enumeration ran out of table rows: the subgroup index exceeds the
// budget (or the subgroup has infinite index).
class BudgetExceededError : public std::runtime_error {
public:
    explicit BudgetExceededError(int budget)
        : std::runtime_error("index bound exceeded: coset table budget of " +
                             std::to_string(budget) + " rows exhausted") {}
};

// Relation/permutation defects in user-supplied tables, one message per
// violation with the offending point.
std::vector<std::string> table_violations(const std::vector<int>& perm_s,
                                          const std::vector<int>& perm_t);

class CosetRepresentation {
public:
    // Validates: bijectivity, s^2 = 1, (st)^3 = 1, transitivity.  Throws
    // std::invalid_argument listing every violation.
    static CosetRepresentation from_parts(std::vector<int> perm_s, std::vector<int> perm_t);

    // Todd-Coxeter coset enumeration for the subgroup generated by `gens`
    // (as words via matrix_to_word).  Deterministic; the resulting table is
    // standardized by breadth-first renumbering from the basepoint, so it
    // depends only on the subgroup, not on the generator list.  Throws
    // BudgetExceededError when the table would exceed `coset_budget` rows.
    static CosetRepresentation from_generators(const std::vector<UnimodularMatrix>& gens,
                                               int coset_budget = kDefaultCosetBudget);

    int size() const { return static_cast<int>(perm_s_.size()); }
    const std::vector<int>& perm_s() const { return perm_s_; }
    const std::vector<int>& perm_t() const { return perm_t_; }

    int apply(int coset, Letter l) const {
        switch (l) {
            case Letter::S: return perm_s_[coset];
            case Letter::T: return perm_t_[coset];
            default: return perm_t_inv_[coset];
        }
    }
    int trace_word(int start, const GeneratorWord& w) const {
        int c = start;
        for (Letter l : w.letters) c = apply(c, l);
        return c;
    }
    // Coset of an arbitrary element (basepoint traced along its word).
    int coset_of(const UnimodularMatrix& m) const {
        return trace_word(0, matrix_to_word(ProjectiveClass(m)));
    }
    // Exact coset representative: representative(i) maps coset 0 to coset i,
    // built along the breadth-first tree over (s, t, t^-1).
    const UnimodularMatrix& representative(int coset) const { return reps_[coset]; }

private:
    CosetRepresentation(std::vector<int> ps, std::vector<int> pt);
    std::vector<int> perm_s_, perm_t_, perm_t_inv_;
    std::vector<UnimodularMatrix> reps_;
};

bool membership(const CosetRepresentation& rep, const UnimodularMatrix& m);

struct CuspClass {
    ExtendedRational representative;   // smallest-coset representative applied to inf
    int width;                         // length of the perm_t cycle
    std::vector<int> coset_cycle;      // the t-cycle, starting at its smallest coset
    bool is_real;                      // fixed by z -> -z up to the subgroup
};

// Cusp classes ordered by their smallest coset.  Widths sum to the index.
std::vector<CuspClass> cusps(const CosetRepresentation& rep);

struct SubgroupInvariants {
    int mu;            // index
    int cusp_count;
    int genus;
    int e2, e3;        // elliptic point counts of order 2 and 3
    bool torsion_free;
    bool s_stable;     // invariant under the s_involution automorphism
};

SubgroupInvariants invariants(const CosetRepresentation& rep);

// True iff the pointed action (perm_s, perm_t) is isomorphic to
// (perm_s, perm_t^-1) by a bijection fixing the basepoint; equivalently the
// subgroup is stable under s_involution.
bool is_s_stable(const CosetRepresentation& rep);

// True iff both representations define the same subgroup (basepoint-fixing
// isomorphism of the actions).
bool pointed_isomorphic(const CosetRepresentation& a, const CosetRepresentation& b);

// Generator of the stabilizer of the cusp: g T^width g^-1 for the cusp's
// smallest-coset representative g.  Parabolic, member, |shift| = width.
UnimodularMatrix cusp_stabilizer(const CosetRepresentation& rep, const CuspClass& cusp);

// Ordered parabolic generating system P_1, .., P_t for a torsion-free
// genus-0 subgroup: one parabolic per cusp, ordered along the boundary of a
// fundamental polygon, with P_1 * .. * P_t == 1 in PSL(2,Z) exactly.
struct ParabolicSystem {
    struct Element {
        UnimodularMatrix matrix;
        int cusp_index;   // index into cusps(rep)
        int width;
    };
    std::vector<Element> elements;
};

ParabolicSystem parabolic_generator_system(const CosetRepresentation& rep);

}   // namespace modsurf
