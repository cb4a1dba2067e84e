#pragma once

// Machine-facing layer: report builders (stable-order JSON), a thin text
// renderer over the same objects, subgroup input files, and the command
// bodies shared by the CLI binary and the tests.

#include "modsurf/gamma_family.hpp"
#include "modsurf/genus1_real.hpp"
#include "modsurf/surface.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>

namespace modsurf {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitBudgetExceeded = 3;

struct RunOptions {
    bool json = false;
    int coset_budget = kDefaultCosetBudget;
    double tolerance = kRealTolerance;
    std::string svg_path;   // gamma-k only; empty means no drawing
};

// Subgroup description document: {"generators": [[a,b,c,d], ...]} or
// {"cosets": {"perm_s": [...], "perm_t": [...]}}.  Validation failures throw
// std::invalid_argument.
CosetRepresentation subgroup_from_json(const ordered_json& doc, int coset_budget);
CosetRepresentation subgroup_from_file(const std::string& path, int coset_budget);

// Invariant report for an arbitrary subgroup; "lifts" is null unless the
// group is torsion-free of genus zero.
ordered_json analyze_report(const CosetRepresentation& rep);

// Full invariant chain for the k-th family member with its all-I* lift:
// {"k","mu","cusps","fibers","chi_O","h11","h1","h1_alg","orientable",
//  "components","type"}.
ordered_json gamma_k_report(const GammaK& g);

// Per-k verification rows for the extremal family over [from, to].
ordered_json verify_report(int from, int to, int coset_budget);

// Classification of the genus-1 curve with period tau.
ordered_json curve_report(double re, double im, double tolerance);

// Plain-text view of a report object (same data, no reordering).
std::string render_text(const ordered_json& doc);

// Command bodies; they write the report to `out`, diagnostics to `err`, and
// return the process exit code (0 success, 1 verification failure, 2 input
// error, 3 budget exhaustion).
int cmd_analyze(const std::string& path, const RunOptions& opts, std::ostream& out,
                std::ostream& err);
int cmd_gamma_k(int k, const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(int from, int to, const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_curve(double re, double im, const RunOptions& opts, std::ostream& out,
              std::ostream& err);

}   // namespace modsurf
