#include "modsurf/subgroup.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <sstream>
#include <utility>

namespace modsurf {

namespace {

// Table columns are 0 = s, 1 = t, 2 = t^-1; kInverseColumn[x] is the column
// of the inverse letter.
constexpr std::array<int, 3> kInverseColumn = {0, 2, 1};

int column_of(Letter l) {
    switch (l) {
        case Letter::S: return 0;
        case Letter::T: return 1;
        default: return 2;
    }
}

// Defining relators of PSL(2,Z) = <s, t | s^2, (st)^3> as column strings.
const std::vector<std::vector<int>>& relators() {
    static const std::vector<std::vector<int>> r = {{0, 0}, {0, 1, 0, 1, 0, 1}};
    return r;
}

std::vector<int> inverse_permutation(const std::vector<int>& p) {
    std::vector<int> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
    return q;
}

// Cycles of a permutation; each cycle starts at its smallest element and the
// cycles are ordered by that element.
std::vector<std::vector<int>> cycles_of(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    std::vector<bool> seen(n, false);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::vector<int> cyc;
        int j = i;
        while (!seen[j]) {
            seen[j] = true;
            cyc.push_back(j);
            j = perm[j];
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

// HLT-style coset enumeration over <s, t | s^2, (st)^3>.  The budget bounds
// the total number of table rows ever created, live or dead.
class CosetEnumerator {
public:
    explicit CosetEnumerator(int budget) : budget_(budget) {
        table_.push_back({-1, -1, -1});
        parent_.push_back(0);
    }

    void run(const std::vector<std::vector<int>>& subgroup_words) {
        for (const auto& w : subgroup_words)
            if (!w.empty()) scan_and_fill(0, w);
        int a = 0;
        while (a < static_cast<int>(table_.size())) {
            if (find(a) == a) {
                for (const auto& r : relators()) {
                    if (find(a) != a) break;
                    scan_and_fill(a, r);
                }
                if (find(a) == a)
                    for (int x = 0; x < 3; ++x)
                        if (table_[a][x] == -1) define(a, x);
            }
            ++a;
        }
    }

    // Live rows renumbered canonically, breadth-first from the basepoint over
    // the columns (s, t, t^-1).  The result depends only on the subgroup.
    std::pair<std::vector<int>, std::vector<int>> standardized() {
        std::vector<int> alive;
        for (int i = 0; i < static_cast<int>(table_.size()); ++i)
            if (find(i) == i) alive.push_back(i);
        std::vector<int> index(table_.size(), -1);
        for (std::size_t n = 0; n < alive.size(); ++n) index[alive[n]] = static_cast<int>(n);

        const int n = static_cast<int>(alive.size());
        std::vector<std::array<int, 3>> compact(n);
        for (int c = 0; c < n; ++c)
            for (int x = 0; x < 3; ++x)
                compact[c][x] = index[find(table_[alive[c]][x])];

        std::vector<int> order(n, -1);
        order[0] = 0;
        std::vector<int> bfs = {0};
        int count = 1;
        for (std::size_t qi = 0; qi < bfs.size(); ++qi) {
            const int c = bfs[qi];
            for (int x = 0; x < 3; ++x) {
                const int d = compact[c][x];
                if (order[d] == -1) {
                    order[d] = count++;
                    bfs.push_back(d);
                }
            }
        }
        if (count != n)
            throw std::logic_error("coset table is not transitive after enumeration");

        std::vector<int> perm_s(n), perm_t(n);
        for (int c = 0; c < n; ++c) {
            perm_s[order[c]] = order[compact[c][0]];
            perm_t[order[c]] = order[compact[c][1]];
        }
        return {std::move(perm_s), std::move(perm_t)};
    }

private:
    int find(int k) {
        while (parent_[k] != k) k = parent_[k];
        return k;
    }

    int define(int a, int x) {
        if (static_cast<int>(table_.size()) >= budget_) throw BudgetExceededError(budget_);
        const int b = static_cast<int>(table_.size());
        table_.push_back({-1, -1, -1});
        parent_.push_back(b);
        table_[a][x] = b;
        table_[b][kInverseColumn[x]] = a;
        return b;
    }

    void coincidence(int a, int b) {
        std::deque<int> queue;
        auto merge = [&](int x, int y) {
            x = find(x);
            y = find(y);
            if (x == y) return;
            if (x > y) std::swap(x, y);
            parent_[y] = x;
            queue.push_back(y);
        };
        merge(a, b);
        while (!queue.empty()) {
            const int g = queue.front();
            queue.pop_front();
            for (int x = 0; x < 3; ++x) {
                const int d = table_[g][x];
                if (d == -1) continue;
                if (table_[d][kInverseColumn[x]] == g) table_[d][kInverseColumn[x]] = -1;
                const int u = find(g);
                const int v = find(d);
                if (table_[u][x] != -1) {
                    merge(v, table_[u][x]);
                } else if (table_[v][kInverseColumn[x]] != -1) {
                    merge(u, table_[v][kInverseColumn[x]]);
                } else {
                    table_[u][x] = v;
                    table_[v][kInverseColumn[x]] = u;
                }
            }
        }
    }

    void scan_and_fill(int a, const std::vector<int>& w) {
        int f = a, i = 0;
        int b = a, j = static_cast<int>(w.size()) - 1;
        while (true) {
            while (i <= j && table_[f][w[i]] != -1) f = table_[f][w[i++]];
            if (i > j) {
                if (f != b) coincidence(f, b);
                return;
            }
            while (j >= i && table_[b][kInverseColumn[w[j]]] != -1)
                b = table_[b][kInverseColumn[w[j--]]];
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (j == i) {
                table_[f][w[i]] = b;
                table_[b][kInverseColumn[w[i]]] = f;
                return;
            }
            define(f, w[i]);
        }
    }

    std::vector<std::array<int, 3>> table_;
    std::vector<int> parent_;
    int budget_;
};

}   // namespace

std::vector<std::string> table_violations(const std::vector<int>& perm_s,
                                          const std::vector<int>& perm_t) {
    std::vector<std::string> out;
    const int n = static_cast<int>(perm_s.size());
    if (n == 0) {
        out.push_back("tables are empty; need at least the basepoint coset");
        return out;
    }
    if (perm_t.size() != perm_s.size()) {
        out.push_back("perm_s and perm_t have different sizes (" + std::to_string(n) + " vs " +
                      std::to_string(perm_t.size()) + ")");
        return out;
    }
    for (const auto* perm : {&perm_s, &perm_t}) {
        const char* name = (perm == &perm_s) ? "perm_s" : "perm_t";
        std::vector<int> hit(n, -1);
        for (int i = 0; i < n; ++i) {
            const int v = (*perm)[i];
            if (v < 0 || v >= n) {
                out.push_back(std::string(name) + "[" + std::to_string(i) +
                              "] = " + std::to_string(v) + " is out of range");
            } else if (hit[v] != -1) {
                out.push_back(std::string(name) + " is not a bijection: value " +
                              std::to_string(v) + " repeats at " + std::to_string(hit[v]) +
                              " and " + std::to_string(i));
            } else {
                hit[v] = i;
            }
        }
    }
    if (!out.empty()) return out;   // relation checks assume valid permutations

    for (int i = 0; i < n; ++i)
        if (perm_s[perm_s[i]] != i)
            out.push_back("s^2 != 1 at coset " + std::to_string(i));
    for (int i = 0; i < n; ++i) {
        int j = i;
        for (int r = 0; r < 3; ++r) j = perm_t[perm_s[j]];
        if (j != i) out.push_back("(st)^3 != 1 at coset " + std::to_string(i));
    }

    std::vector<bool> reach(n, false);
    reach[0] = true;
    std::vector<int> bfs = {0};
    for (std::size_t qi = 0; qi < bfs.size(); ++qi) {
        for (int next : {perm_s[bfs[qi]], perm_t[bfs[qi]]}) {
            if (!reach[next]) {
                reach[next] = true;
                bfs.push_back(next);
            }
        }
    }
    for (int i = 0; i < n; ++i)
        if (!reach[i])
            out.push_back("action is not transitive: coset " + std::to_string(i) +
                          " is unreachable from the basepoint");
    return out;
}

CosetRepresentation::CosetRepresentation(std::vector<int> ps, std::vector<int> pt)
    : perm_s_(std::move(ps)), perm_t_(std::move(pt)), perm_t_inv_(inverse_permutation(perm_t_)) {
    const int n = size();
    reps_.assign(n, UnimodularMatrix::identity());
    std::vector<bool> seen(n, false);
    seen[0] = true;
    std::vector<int> bfs = {0};
    const UnimodularMatrix steps[3] = {UnimodularMatrix::gen_s(), UnimodularMatrix::gen_t(),
                                       UnimodularMatrix::gen_t().inverse()};
    const std::vector<int>* perms[3] = {&perm_s_, &perm_t_, &perm_t_inv_};
    for (std::size_t qi = 0; qi < bfs.size(); ++qi) {
        const int c = bfs[qi];
        for (int x = 0; x < 3; ++x) {
            const int d = (*perms[x])[c];
            if (!seen[d]) {
                seen[d] = true;
                reps_[d] = compose(reps_[c], steps[x]);
                bfs.push_back(d);
            }
        }
    }
}

CosetRepresentation CosetRepresentation::from_parts(std::vector<int> perm_s,
                                                    std::vector<int> perm_t) {
    const auto violations = table_violations(perm_s, perm_t);
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "invalid coset tables:";
        for (const auto& v : violations) msg << "\n  - " << v;
        throw std::invalid_argument(msg.str());
    }
    return CosetRepresentation(std::move(perm_s), std::move(perm_t));
}

CosetRepresentation CosetRepresentation::from_generators(
    const std::vector<UnimodularMatrix>& gens, int coset_budget) {
    if (coset_budget < 1) throw std::invalid_argument("coset budget must be positive");
    std::vector<std::vector<int>> words;
    words.reserve(gens.size());
    for (const auto& g : gens) {
        const GeneratorWord w = matrix_to_word(ProjectiveClass(g));
        std::vector<int> cols;
        cols.reserve(w.letters.size());
        for (Letter l : w.letters) cols.push_back(column_of(l));
        words.push_back(std::move(cols));
    }
    CosetEnumerator enumerator(coset_budget);
    enumerator.run(words);
    auto [ps, pt] = enumerator.standardized();
    return CosetRepresentation(std::move(ps), std::move(pt));
}

bool membership(const CosetRepresentation& rep, const UnimodularMatrix& m) {
    return rep.coset_of(m) == 0;
}

std::vector<CuspClass> cusps(const CosetRepresentation& rep) {
    std::vector<CuspClass> out;
    for (auto& cyc : cycles_of(rep.perm_t())) {
        const UnimodularMatrix& g = rep.representative(cyc.front());
        CuspClass c;
        c.representative = ExtendedRational(g.a, g.c);
        c.width = static_cast<int>(cyc.size());
        c.coset_cycle = std::move(cyc);
        // The real structure sends the cusp g.inf to -(g.inf), which is
        // s_involution(g).inf; the class is real iff that lands back in the
        // same t-cycle.
        const int mirror = rep.coset_of(s_involution(g));
        c.is_real = std::find(c.coset_cycle.begin(), c.coset_cycle.end(), mirror) !=
                    c.coset_cycle.end();
        out.push_back(std::move(c));
    }
    return out;
}

SubgroupInvariants invariants(const CosetRepresentation& rep) {
    const int mu = rep.size();
    const auto& ps = rep.perm_s();
    const auto& pt = rep.perm_t();
    int e2 = 0, e3 = 0;
    for (int i = 0; i < mu; ++i) {
        if (ps[i] == i) ++e2;
        if (pt[ps[i]] == i) ++e3;   // fixed points of the st action
    }
    const int t = static_cast<int>(cycles_of(pt).size());
    const int num = 12 + mu - 3 * e2 - 4 * e3 - 6 * t;
    if (num % 12 != 0)
        throw std::logic_error("genus formula gave a non-integer; table is corrupt");
    SubgroupInvariants inv;
    inv.mu = mu;
    inv.cusp_count = t;
    inv.genus = num / 12;
    inv.e2 = e2;
    inv.e3 = e3;
    inv.torsion_free = (e2 == 0 && e3 == 0);
    inv.s_stable = is_s_stable(rep);
    return inv;
}

namespace {

// Basepoint-fixing isomorphism between two (s, t)-actions, where the second
// action's t-column is supplied explicitly (so the caller can pass t^-1).
bool actions_match(const std::vector<int>& sa, const std::vector<int>& ta,
                   const std::vector<int>& sb, const std::vector<int>& tb) {
    if (sa.size() != sb.size()) return false;
    const int n = static_cast<int>(sa.size());
    if (n == 0) return true;
    std::vector<int> phi(n, -1);
    phi[0] = 0;
    std::vector<int> stack = {0};
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        const std::pair<const std::vector<int>*, const std::vector<int>*> pairs[2] = {
            {&sa, &sb}, {&ta, &tb}};
        for (const auto& [pa, pb] : pairs) {
            const int x = (*pa)[i];
            const int y = (*pb)[phi[i]];
            if (phi[x] == -1) {
                phi[x] = y;
                stack.push_back(x);
            } else if (phi[x] != y) {
                return false;
            }
        }
    }
    std::vector<bool> image(n, false);
    for (int v : phi) {
        if (v == -1 || image[v]) return false;
        image[v] = true;
    }
    return true;
}

}   // namespace

bool is_s_stable(const CosetRepresentation& rep) {
    const std::vector<int> pt_inv = inverse_permutation(rep.perm_t());
    return actions_match(rep.perm_s(), rep.perm_t(), rep.perm_s(), pt_inv);
}

bool pointed_isomorphic(const CosetRepresentation& a, const CosetRepresentation& b) {
    return actions_match(a.perm_s(), a.perm_t(), b.perm_s(), b.perm_t());
}

UnimodularMatrix cusp_stabilizer(const CosetRepresentation& rep, const CuspClass& cusp) {
    const UnimodularMatrix& g = rep.representative(cusp.coset_cycle.front());
    return compose(compose(g, UnimodularMatrix::t_power(cusp.width)), g.inverse());
}

ParabolicSystem parabolic_generator_system(const CosetRepresentation& rep) {
    const SubgroupInvariants inv = invariants(rep);
    if (!inv.torsion_free || inv.genus != 0)
        throw std::invalid_argument(
            "parabolic generator system requires a torsion-free genus-zero subgroup (got e2=" +
            std::to_string(inv.e2) + ", e3=" + std::to_string(inv.e3) +
            ", genus=" + std::to_string(inv.genus) + ")");

    const int n = rep.size();
    const auto& ps = rep.perm_s();
    const auto& pt = rep.perm_t();
    std::vector<int> pu(n);   // action of st
    for (int i = 0; i < n; ++i) pu[i] = pt[ps[i]];
    const std::vector<int> pu_inv = inverse_permutation(pu);

    // Fundamental domain as ideal triangles: one triangle per 3-cycle of the
    // st action, one side slot per coset.
    std::vector<int> tri_id(n, -1);
    int tri_count = 0;
    for (int i = 0; i < n; ++i) {
        if (tri_id[i] != -1) continue;
        int len = 0;
        for (int j = i; tri_id[j] == -1; j = pu[j]) {
            tri_id[j] = tri_count;
            ++len;
        }
        if (len != 3) throw std::logic_error("st action has a cycle of length != 3");
        ++tri_count;
    }

    // Glue triangles along s-edges into a simply connected polygon (spanning
    // tree, breadth-first).  g[i] is an exact representative of coset i,
    // advanced by U = S*T inside a triangle and by S across glued edges.
    const UnimodularMatrix kU = compose(UnimodularMatrix::gen_s(), UnimodularMatrix::gen_t());
    const UnimodularMatrix kS = UnimodularMatrix::gen_s();
    std::vector<UnimodularMatrix> g(n);
    std::vector<bool> has_rep(n, false), glued(n, false), tri_seen(tri_count, false);
    g[0] = UnimodularMatrix::identity();
    has_rep[0] = true;
    tri_seen[tri_id[0]] = true;
    std::vector<int> queue = {0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const int e = queue[qi];
        const int slots[3] = {e, pu[e], pu[pu[e]]};
        g[slots[1]] = compose(g[e], kU);
        g[slots[2]] = compose(g[slots[1]], kU);
        has_rep[slots[1]] = has_rep[slots[2]] = true;
        for (int i : slots) {
            const int j = ps[i];
            if (!tri_seen[tri_id[j]]) {
                tri_seen[tri_id[j]] = true;
                glued[i] = glued[j] = true;
                g[j] = compose(g[i], kS);
                has_rep[j] = true;
                queue.push_back(j);
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        if (!has_rep[i] || rep.coset_of(g[i]) != i)
            throw std::logic_error("polygon gluing produced a wrong coset representative");
    }

    // Walk the polygon boundary (the non-glued slots) counterclockwise.
    std::vector<int> boundary;
    for (int i = 0; i < n; ++i)
        if (!glued[i]) boundary.push_back(i);
    const int k = static_cast<int>(boundary.size());
    std::vector<int> walk;
    walk.reserve(k);
    int cur = boundary.front();
    for (int step = 0; step < k; ++step) {
        walk.push_back(cur);
        int cand = pu_inv[cur];
        int hops = 0;
        while (glued[cand]) {
            cand = pu_inv[ps[cand]];
            if (++hops > n) throw std::logic_error("polygon boundary walk does not close");
        }
        cur = cand;
    }
    if (cur != boundary.front()) throw std::logic_error("polygon boundary walk does not close");

    // Side pairings: side r (slot b_r) is matched with the side at slot
    // s(b_r) by the subgroup element A_r = g[b_r] * S * g[s(b_r)]^-1.
    std::vector<int> pos(n, -1);
    for (int r = 0; r < k; ++r) pos[walk[r]] = r;
    std::vector<int> pair(k);
    std::vector<UnimodularMatrix> side(k);
    for (int r = 0; r < k; ++r) {
        const int partner = ps[walk[r]];
        if (pos[partner] == -1) throw std::logic_error("boundary side paired with a glued slot");
        pair[r] = pos[partner];
        side[r] = compose(compose(g[walk[r]], kS), g[partner].inverse());
        if (!membership(rep, side[r]))
            throw std::logic_error("side pairing is not a subgroup element");
    }

    // Corner r sits between sides r and r+1.  Applying the pairing of side
    // r+1 moves it to corner pair[r+1]; composing around a corner orbit gives
    // the parabolic fixing the corresponding cusp.
    std::vector<int> succ(k);
    std::vector<UnimodularMatrix> jump(k);
    for (int r = 0; r < k; ++r) {
        succ[r] = pair[(r + 1) % k];
        jump[r] = side[(r + 1) % k].inverse();
    }

    // Cusp lookup: coset -> index in cusps(rep).
    const std::vector<CuspClass> cusp_list = cusps(rep);
    std::vector<int> cusp_of_coset(n, -1);
    for (std::size_t ci = 0; ci < cusp_list.size(); ++ci)
        for (int c : cusp_list[ci].coset_cycle) cusp_of_coset[c] = static_cast<int>(ci);

    ParabolicSystem system;
    std::vector<bool> corner_seen(k, false);
    for (int r0 = 0; r0 < k; ++r0) {
        if (corner_seen[r0]) continue;
        UnimodularMatrix p = UnimodularMatrix::identity();
        int r = r0;
        do {
            corner_seen[r] = true;
            p = compose(jump[r], p);
            r = succ[r];
        } while (r != r0);
        if (p.trace() == -2) p = p.negated();   // canonical trace +2 lift
        ParabolicSystem::Element el;
        el.matrix = p;
        el.cusp_index = cusp_of_coset[walk[r0]];
        el.width = cusp_list[el.cusp_index].width;
        system.elements.push_back(std::move(el));
    }

    // Hard post-verification: the system must be one parabolic per cusp, each
    // a subgroup element whose normal form is exactly (+1, +width), and the
    // ordered product must be the identity in PSL(2,Z).
    if (system.elements.size() != cusp_list.size())
        throw std::logic_error("parabolic system size does not match the cusp count");
    std::vector<bool> cusp_used(cusp_list.size(), false);
    UnimodularMatrix product = UnimodularMatrix::identity();
    for (const auto& el : system.elements) {
        if (el.cusp_index < 0 || cusp_used[el.cusp_index])
            throw std::logic_error("parabolic system repeats a cusp");
        cusp_used[el.cusp_index] = true;
        if (!membership(rep, el.matrix))
            throw std::logic_error("parabolic system element is not a subgroup element");
        if (!is_parabolic(el.matrix))
            throw std::logic_error("parabolic system element is not parabolic");
        const ParabolicNormalForm nf = parabolic_normal_form(el.matrix);
        if (nf.sign != 1 || nf.shift != el.width)
            throw std::logic_error("parabolic system element has normal form (" +
                                   std::to_string(nf.sign) + ", " + nf.shift.get_str() +
                                   "), expected (+1, " + std::to_string(el.width) + ")");
        product = compose(product, el.matrix);
    }
    if (!psl_equal(product, UnimodularMatrix::identity()))
        throw std::logic_error("parabolic system product is not the identity: " + product.str());
    return system;
}

}   // namespace modsurf
