#include "modsurf/gamma_family.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace modsurf {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("group family verification failed: " + what);
}

// Matrix sending inf to the integer cusp j (namely T^j * S), or the identity
// for inf itself.
UnimodularMatrix matrix_sending_inf_to(int j) {
    return {j, -1, 1, 0};
}

int cusp_index_of(const CosetRepresentation& rep, const std::vector<CuspClass>& classes,
                  const UnimodularMatrix& to_cusp) {
    const int c = rep.coset_of(to_cusp);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& cyc = classes[i].coset_cycle;
        if (std::find(cyc.begin(), cyc.end(), c) != cyc.end()) return static_cast<int>(i);
    }
    throw std::logic_error("coset not covered by any cusp class");
}

}   // namespace

bool gamma2_congruence_test(const UnimodularMatrix& m) {
    const auto odd = [](const mpz_class& x) { return mpz_odd_p(x.get_mpz_t()) != 0; };
    return odd(m.a) && odd(m.d) && !odd(m.b) && !odd(m.c);
}

std::vector<UnimodularMatrix> gamma_k_generators(int k) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    std::vector<UnimodularMatrix> gens;
    gens.push_back(UnimodularMatrix::t_power(2 * (k - 1)));
    for (int j = 1; j < k; ++j)
        gens.push_back({2 * j - 1, mpz_class(2 * j) * (j - 1), 2, 2 * j - 1});
    return gens;
}

GammaK build_gamma_k(int k, int coset_budget) {
    const std::vector<UnimodularMatrix> gens = gamma_k_generators(k);

    // Generator-level checks: congruence pattern, inversion under the real
    // involution, and the geodesic endpoint conditions -j -> j, -(j-1) -> j-1.
    for (const auto& g : gens) {
        require(g.det() == 1, "generator determinant is not 1");
        require(gamma2_congruence_test(g), "generator fails the level-2 congruence pattern");
    }
    for (int j = 1; j < k; ++j) {
        const UnimodularMatrix& g = gens[j];
        require(s_involution(g) == g.inverse(), "s_involution(g_j) != g_j^-1");
        const ProjectiveClass pg{g};
        require(mobius_act(pg, ExtendedRational(-j, 1)) == ExtendedRational(j, 1),
                "g_j does not send -j to j");
        require(mobius_act(pg, ExtendedRational(-(j - 1), 1)) == ExtendedRational(j - 1, 1),
                "g_j does not send -(j-1) to j-1");
    }

    CosetRepresentation rep = CosetRepresentation::from_generators(gens, coset_budget);
    const SubgroupInvariants inv = invariants(rep);
    require(inv.mu == 6 * (k - 1), "index is not 6(k-1)");
    require(inv.genus == 0, "genus is not 0");
    require(inv.cusp_count == k + 1, "cusp count is not k+1");
    require(inv.torsion_free, "group has torsion");
    require(inv.s_stable, "group is not S-stable");

    std::vector<CuspClass> classes = cusps(rep);
    int width_sum = 0;
    for (const auto& c : classes) {
        require(c.width % 2 == 0, "cusp width is odd");
        require(c.is_real, "cusp class is not real");
        width_sum += c.width;
    }
    require(width_sum == inv.mu, "widths do not sum to the index");

    // The classes are exactly inf, 0, .., k-1 with the expected widths, and
    // for 1 <= j <= k-1 the points j and -j land in the same class.
    std::vector<bool> used(classes.size(), false);
    const auto claim = [&](const UnimodularMatrix& to_cusp, int width, bool fresh) {
        const int i = cusp_index_of(rep, classes, to_cusp);
        if (fresh) {
            require(!used[i], "two base points claim the same cusp class");
            used[i] = true;
        } else {
            require(used[i], "mirror point -j is not equivalent to j");
        }
        require(classes[i].width == width, "cusp width differs from the expected pattern");
        return i;
    };
    claim(UnimodularMatrix::identity(), 2 * (k - 1), true);   // inf
    claim(matrix_sending_inf_to(0), 2, true);
    for (int j = 1; j <= k - 1; ++j) {
        const int expected_width = (j == k - 1) ? 2 : 4;
        const int i = claim(matrix_sending_inf_to(j), expected_width, true);
        require(i == cusp_index_of(rep, classes, matrix_sending_inf_to(-j)),
                "points j and -j fall in different cusp classes");
    }
    require(std::all_of(used.begin(), used.end(), [](bool b) { return b; }),
            "a cusp class is not hit by any base point");

    return GammaK{k, gens, std::move(rep), inv, std::move(classes)};
}

GammaK gamma2() { return build_gamma_k(2); }

std::string fundamental_domain_svg(const GammaK& g) {
    const int k = g.k;
    const double reach = k - 1;           // strip half-width
    const double top = 1.9;               // drawn height of the strip
    const double scale = 110.0;
    const double margin = 0.55;
    const double w = (2 * reach + 2 * margin) * scale;
    const double h = (top + 0.45) * scale;
    const auto X = [&](double x) { return (x + reach + margin) * scale; };
    const auto Y = [&](double y) { return (top + 0.12) * scale - y * scale; };

    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    s << "  <title>fundamental domain, strip half-width " << (k - 1) << "</title>\n";
    s << "  <rect width=\"" << w << "\" height=\"" << h << "\" fill=\"#ffffff\"/>\n";

    // Domain interior (strip minus half-disks), drawn as one closed path.
    s << "  <path d=\"M " << X(-reach) << ' ' << Y(top) << " L " << X(-reach) << ' ' << Y(0);
    for (int j = 0; j < 2 * (k - 1); ++j) {
        const double c = -reach + 0.5 + j;   // odd half-integer centers
        s << " L " << X(c - 0.5) << ' ' << Y(0) << " A " << 0.5 * scale << ' ' << 0.5 * scale
          << " 0 0 1 " << X(c + 0.5) << ' ' << Y(0);
    }
    s << " L " << X(reach) << ' ' << Y(0) << " L " << X(reach) << ' ' << Y(top)
      << " Z\" fill=\"#eef3fb\" stroke=\"none\"/>\n";

    // Real axis.
    s << "  <line x1=\"" << X(-reach - 0.4) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(reach + 0.4)
      << "\" y2=\"" << Y(0) << "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";

    // Vertical sides, paired by the translation; both labeled beta.
    for (const double x : {-reach, reach}) {
        s << "  <line class=\"side\" x1=\"" << X(x) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(x)
          << "\" y2=\"" << Y(top) << "\" stroke=\"#1a4d8f\" stroke-width=\"2\"/>\n";
        s << "  <text x=\"" << X(x) + (x < 0 ? -14 : 6) << "\" y=\"" << Y(top * 0.55)
          << "\" font-size=\"15\" fill=\"#1a4d8f\">\xce\xb2</text>\n";
    }

    // Boundary arcs: half-circles of radius 1/2 at the odd half-integers.
    // They lie on the real locus, as does the imaginary axis.
    for (int j = 1; j <= k - 1; ++j) {
        for (const int side : {-1, 1}) {
            const double c = side * (2 * j - 1) / 2.0;
            s << "  <path class=\"arc real-locus\" d=\"M " << X(c - 0.5) << ' ' << Y(0) << " A "
              << 0.5 * scale << ' ' << 0.5 * scale << " 0 0 1 " << X(c + 0.5) << ' ' << Y(0)
              << "\" fill=\"none\" stroke=\"#b22222\" stroke-width=\"2.4\"/>\n";
            s << "  <text x=\"" << X(c) - 10 << "\" y=\"" << Y(0.62)
              << "\" font-size=\"14\" fill=\"#b22222\">\xce\xb3" << (side < 0 ? "\xcc\x83" : "")
              << "<tspan baseline-shift=\"sub\" font-size=\"10\">" << j << "</tspan></text>\n";
        }
    }

    // Imaginary axis: the rest of the real locus inside the domain.
    s << "  <line class=\"real-locus\" x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(0)
      << "\" y2=\"" << Y(top) << "\" stroke=\"#b22222\" stroke-width=\"2.4\" "
      << "stroke-dasharray=\"7 4\"/>\n";

    // Cusps on the real axis (the class of j equals the class of -j).
    for (int j = -(k - 1); j <= k - 1; ++j) {
        s << "  <circle class=\"cusp\" cx=\"" << X(j) << "\" cy=\"" << Y(0)
          << "\" r=\"3\" fill=\"#222222\"/>\n";
        s << "  <text x=\"" << X(j) - 4 << "\" y=\"" << Y(0) + 18
          << "\" font-size=\"12\" fill=\"#222222\">" << j << "</text>\n";
    }
    s << "  <text x=\"" << X(0) + 6 << "\" y=\"" << Y(top) + 12
      << "\" font-size=\"12\" fill=\"#222222\">to \xe2\x88\x9e</text>\n";

    s << "</svg>\n";
    return s.str();
}

}   // namespace modsurf
