#include "modsurf/report.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace modsurf {

namespace {

ordered_json cusp_to_json(const CuspClass& c) {
    return ordered_json{{"cusp", c.representative.str()}, {"width", c.width}, {"real", c.is_real}};
}

mpz_class json_to_mpz(const ordered_json& v, const char* what) {
    if (v.is_number_integer()) return mpz_class(static_cast<long>(v.get<std::int64_t>()));
    if (v.is_string()) return mpz_class(v.get<std::string>());   // large entries as strings
    throw std::invalid_argument(std::string("expected an integer for ") + what);
}

// Surface chain for one torsion-free genus-zero lift; returns the pieces the
// reports need.
struct LiftChain {
    int chi_O;
    int h11;
};

LiftChain lift_chain(const Lift& lift) {
    const int chi = chi_holomorphic(lift.config);
    return LiftChain{chi, 10 * chi};
}

int exit_code_for(const std::exception& e, std::ostream& err) {
    err << "error: " << e.what() << "\n";
    if (dynamic_cast<const BudgetExceededError*>(&e)) return kExitBudgetExceeded;
    if (dynamic_cast<const nlohmann::json::exception*>(&e)) return kExitInputError;
    if (dynamic_cast<const std::invalid_argument*>(&e)) return kExitInputError;
    if (dynamic_cast<const std::logic_error*>(&e)) return kExitVerificationFailure;
    return kExitInputError;
}

template <typename F>
int run_command(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return exit_code_for(e, err);
    }
}

void emit(const ordered_json& doc, const RunOptions& opts, std::ostream& out) {
    if (opts.json)
        out << doc.dump(2) << "\n";
    else
        out << render_text(doc);
}

}   // namespace

CosetRepresentation subgroup_from_json(const ordered_json& doc, int coset_budget) {
    if (!doc.is_object())
        throw std::invalid_argument("subgroup file must be a JSON object");
    if (doc.contains("generators")) {
        const auto& list = doc.at("generators");
        if (!list.is_array() || list.empty())
            throw std::invalid_argument("\"generators\" must be a nonempty array");
        std::vector<UnimodularMatrix> gens;
        for (const auto& entry : list) {
            if (!entry.is_array() || entry.size() != 4)
                throw std::invalid_argument("each generator must be an array [a, b, c, d]");
            gens.emplace_back(json_to_mpz(entry[0], "a"), json_to_mpz(entry[1], "b"),
                              json_to_mpz(entry[2], "c"), json_to_mpz(entry[3], "d"));
        }
        return CosetRepresentation::from_generators(gens, coset_budget);
    }
    if (doc.contains("cosets")) {
        const auto& tables = doc.at("cosets");
        if (!tables.is_object() || !tables.contains("perm_s") || !tables.contains("perm_t"))
            throw std::invalid_argument("\"cosets\" must hold \"perm_s\" and \"perm_t\" arrays");
        const auto to_perm = [](const ordered_json& arr, const char* name) {
            if (!arr.is_array())
                throw std::invalid_argument(std::string(name) + " must be an array");
            std::vector<int> p;
            p.reserve(arr.size());
            for (const auto& v : arr) {
                if (!v.is_number_integer())
                    throw std::invalid_argument(std::string(name) + " entries must be integers");
                p.push_back(v.get<int>());
            }
            return p;
        };
        return CosetRepresentation::from_parts(to_perm(tables.at("perm_s"), "perm_s"),
                                               to_perm(tables.at("perm_t"), "perm_t"));
    }
    throw std::invalid_argument("subgroup file needs a \"generators\" or \"cosets\" key");
}

CosetRepresentation subgroup_from_file(const std::string& path, int coset_budget) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open subgroup file: " + path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("subgroup file is not valid JSON: " + std::string(e.what()));
    }
    return subgroup_from_json(doc, coset_budget);
}

ordered_json analyze_report(const CosetRepresentation& rep) {
    const SubgroupInvariants inv = invariants(rep);
    ordered_json doc;
    doc["mu"] = inv.mu;
    doc["genus"] = inv.genus;
    doc["e2"] = inv.e2;
    doc["e3"] = inv.e3;
    doc["torsion_free"] = inv.torsion_free;
    doc["s_stable"] = inv.s_stable;
    doc["cusps"] = ordered_json::array();
    for (const auto& c : cusps(rep)) doc["cusps"].push_back(cusp_to_json(c));

    if (inv.torsion_free && inv.genus == 0) {
        const ParabolicSystem system = parabolic_generator_system(rep);
        const LiftEnumeration lifts = enumerate_lifts(system);
        ordered_json block;
        block["raw_count"] = lifts.raw_count;
        block["distinct_multiset_count"] = lifts.distinct_multiset_count;
        block["note"] = lifts.note;
        block["configurations"] = ordered_json::array();
        for (const auto& lift : lifts.lifts) {
            const LiftChain chain = lift_chain(lift);
            block["configurations"].push_back(ordered_json{{"signs", lift.assignment.signs},
                                                           {"fibers", lift.config.serialized()},
                                                           {"chi_O", chain.chi_O},
                                                           {"h11", chain.h11}});
        }
        doc["lifts"] = std::move(block);
    } else {
        doc["lifts"] = nullptr;
    }
    return doc;
}

ordered_json gamma_k_report(const GammaK& g) {
    const ParabolicSystem system = parabolic_generator_system(g.representation);
    const LiftEnumeration lifts = enumerate_lifts(system);
    const std::optional<Lift> star = all_star_lift(lifts);
    if (!star) throw std::logic_error("no all-I* lift exists for the family member");

    const SurfaceModel model = make_surface_model(g.representation, *star);
    const HodgeInvariants hodge = hodge_invariants(model);
    const RealTopologyReport topology = real_topology_extremal(model);
    ragsdale_viro_check(topology, hodge);

    ordered_json doc;
    doc["k"] = g.k;
    doc["mu"] = g.invariants.mu;
    doc["cusps"] = ordered_json::array();
    for (const auto& c : g.cusp_classes) doc["cusps"].push_back(cusp_to_json(c));
    doc["fibers"] = star->config.serialized();
    doc["chi_O"] = hodge.chi_O;
    doc["h11"] = *hodge.h11;
    doc["h1"] = topology.h1;
    doc["h1_alg"] = topology.h1_alg;
    doc["orientable"] = topology.orientable;
    doc["components"] = topology.connected_components;
    doc["type"] = topology.type_tag;
    return doc;
}

ordered_json verify_report(int from, int to, int coset_budget) {
    if (from < 2) throw std::invalid_argument("verification range must start at k >= 2");
    if (to < from) throw std::invalid_argument("verification range is empty (from > to)");
    ordered_json doc;
    doc["from"] = from;
    doc["to"] = to;
    doc["rows"] = ordered_json::array();
    bool all_pass = true;
    for (int k = from; k <= to; ++k) {
        ordered_json row;
        row["k"] = k;
        std::vector<std::string> failures;
        try {
            const GammaK g = build_gamma_k(k, coset_budget);
            const ordered_json full = gamma_k_report(g);
            const auto expect = [&](const char* field, const ordered_json& want) {
                if (full.at(field) != want)
                    failures.push_back(std::string(field) + " = " + full.at(field).dump() +
                                       ", expected " + want.dump());
            };
            expect("mu", 6 * (k - 1));
            expect("chi_O", k);
            expect("h11", 10 * k);
            expect("h1", 10 * k);
            expect("h1_alg", 10 * k);
            expect("components", 1);
            expect("orientable", k % 2 == 0);
            expect("type", k % 2 == 0 ? "S_" + std::to_string(5 * k)
                                      : "V_" + std::to_string(10 * k));
            if (full.at("cusps").size() != static_cast<std::size_t>(k + 1))
                failures.push_back("cusp count != k+1");
            row["mu"] = full.at("mu");
            row["chi_O"] = full.at("chi_O");
            row["h11"] = full.at("h11");
            row["h1"] = full.at("h1");
            row["h1_alg"] = full.at("h1_alg");
            row["components"] = full.at("components");
            row["type"] = full.at("type");
        } catch (const BudgetExceededError&) {
            throw;   // budget exhaustion is a resource error, not a failed row
        } catch (const std::exception& e) {
            failures.push_back(e.what());
        }
        row["pass"] = failures.empty();
        row["failures"] = failures;
        all_pass = all_pass && failures.empty();
        doc["rows"].push_back(std::move(row));
    }
    doc["all_pass"] = all_pass;
    return doc;
}

ordered_json curve_report(double re, double im, double tolerance) {
    const HalfPlanePoint tau(re, im);
    const std::complex<double> j = j_classical(tau);
    ordered_json doc;
    doc["tau"] = ordered_json{{"re", re}, {"im", im}};
    doc["j"] = ordered_json{{"re", j.real()}, {"im", j.imag()}};
    doc["j_normalized"] = ordered_json{{"re", j.real() / 1728.0}, {"im", j.imag() / 1728.0}};
    const RealDefinability def = is_definable_over_R(tau, tolerance);
    doc["definable_over_R"] = def.definable;
    if (def.definable && def.witness) {
        doc["witness_tau"] = ordered_json{{"re", def.witness->x}, {"im", def.witness->y}};
        const long two_re = std::lround(2.0 * def.witness->x);
        const RealCurveClass cls = real_component_count(two_re, def.witness->y, tolerance);
        doc["components"] = cls.lattice_component_count;
        doc["ambiguous_at_j_equals_1"] =
            cls.component_count == ComponentCount::ambiguous_at_j_equals_1;
    } else {
        doc["witness_tau"] = nullptr;
        doc["components"] = nullptr;
        doc["ambiguous_at_j_equals_1"] = false;
    }
    return doc;
}

namespace {

void render_value(std::ostream& out, const ordered_json& v, int indent);

bool is_scalar_array(const ordered_json& v) {
    if (!v.is_array()) return false;
    for (const auto& e : v)
        if (e.is_object() || e.is_array()) return false;
    return true;
}

void render_scalar(std::ostream& out, const ordered_json& v) {
    if (v.is_string())
        out << v.get<std::string>();
    else
        out << v.dump();
}

void render_value(std::ostream& out, const ordered_json& v, int indent) {
    const std::string pad(indent, ' ');
    if (v.is_object()) {
        for (const auto& [key, value] : v.items()) {
            out << pad << key << ":";
            if (value.is_object() || (value.is_array() && !is_scalar_array(value))) {
                out << "\n";
                render_value(out, value, indent + 2);
            } else if (is_scalar_array(value)) {
                out << " [";
                for (std::size_t i = 0; i < value.size(); ++i) {
                    if (i) out << ", ";
                    render_scalar(out, value[i]);
                }
                out << "]\n";
            } else {
                out << " ";
                render_scalar(out, value);
                out << "\n";
            }
        }
    } else if (v.is_array()) {
        for (const auto& e : v) {
            out << pad << "-\n";
            render_value(out, e, indent + 2);
        }
    } else {
        out << pad;
        render_scalar(out, v);
        out << "\n";
    }
}

}   // namespace

std::string render_text(const ordered_json& doc) {
    std::ostringstream out;
    render_value(out, doc, 0);
    return out.str();
}

int cmd_analyze(const std::string& path, const RunOptions& opts, std::ostream& out,
                std::ostream& err) {
    return run_command(err, [&] {
        const CosetRepresentation rep = subgroup_from_file(path, opts.coset_budget);
        emit(analyze_report(rep), opts, out);
        return kExitSuccess;
    });
}

int cmd_gamma_k(int k, const RunOptions& opts, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        const GammaK g = build_gamma_k(k, opts.coset_budget);
        emit(gamma_k_report(g), opts, out);
        if (!opts.svg_path.empty()) {
            std::ofstream svg(opts.svg_path);
            if (!svg) throw std::invalid_argument("cannot write SVG file: " + opts.svg_path);
            svg << fundamental_domain_svg(g);
        }
        return kExitSuccess;
    });
}

int cmd_verify(int from, int to, const RunOptions& opts, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        const ordered_json doc = verify_report(from, to, opts.coset_budget);
        emit(doc, opts, out);
        return doc.at("all_pass").get<bool>() ? kExitSuccess : kExitVerificationFailure;
    });
}

int cmd_curve(double re, double im, const RunOptions& opts, std::ostream& out,
              std::ostream& err) {
    return run_command(err, [&] {
        if (!(im > 0.0))
            throw std::invalid_argument("tau must be in the upper half plane (Im > 0)");
        emit(curve_report(re, im, opts.tolerance), opts, out);
        return kExitSuccess;
    });
}

}   // namespace modsurf
