#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hodgetau/permutation.hpp"

namespace hodgetau {

/// Stratum of abelian differentials, stored by the zero orders m_1 >= ... >= m_r >= 1.
/// The genus is determined by sum(m_k) = 2g - 2; the empty list is the
/// genus-1 (torus) stratum.
struct Stratum {
    std::vector<int> zero_orders;  // sorted decreasing
    int genus = 1;

    Stratum() = default;

    explicit Stratum(std::vector<int> orders) : zero_orders(std::move(orders)) {
        std::sort(zero_orders.rbegin(), zero_orders.rend());
        int sum = 0;
        for (int m : zero_orders) {
            if (m < 1) throw std::invalid_argument("Stratum: zero orders must be >= 1");
            sum += m;
        }
        if (sum % 2 != 0) throw std::invalid_argument("Stratum: sum of zero orders must be even");
        genus = 1 + sum / 2;
    }

    int r() const { return int(zero_orders.size()); }
    int order_sum() const { return std::accumulate(zero_orders.begin(), zero_orders.end(), 0); }

    /// mu = 0: every zero is simple (or there are no zeroes at genus 1).
    bool is_generic() const {
        for (int m : zero_orders)
            if (m != 1) return false;
        return true;
    }

    /// Parses "2", "1,1", "" (torus).
    static Stratum parse(const std::string& s) {
        std::vector<int> orders;
        size_t pos = 0;
        while (pos < s.size()) {
            size_t comma = s.find(',', pos);
            if (comma == std::string::npos) comma = s.size();
            std::string tok = s.substr(pos, comma - pos);
            if (!tok.empty()) orders.push_back(std::stoi(tok));
            pos = comma + 1;
        }
        return Stratum(std::move(orders));
    }

    std::string label() const {
        std::string out = "H(";
        for (size_t i = 0; i < zero_orders.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(zero_orders[i]);
        }
        return out + ")";
    }

    friend bool operator==(const Stratum& a, const Stratum& b) {
        return a.zero_orders == b.zero_orders;
    }
    friend bool operator!=(const Stratum& a, const Stratum& b) { return !(a == b); }
    friend bool operator<(const Stratum& a, const Stratum& b) {
        return a.zero_orders < b.zero_orders;
    }
};

/// Square-tiled surface: h moves one square right, v moves one square up.
/// Valid origamis have <h,v> acting transitively on the squares.
struct Origami {
    Permutation h, v;

    Origami() = default;
    Origami(Permutation h_, Permutation v_) : h(std::move(h_)), v(std::move(v_)) {
        if (h.degree() != v.degree())
            throw std::invalid_argument("Origami: degree mismatch between h and v");
    }

    int degree() const { return h.degree(); }

    bool is_transitive() const {
        int d = degree();
        std::vector<char> seen(d, 0);
        std::vector<int> stack = {0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int s = stack.back();
            stack.pop_back();
            for (int t : {h(s), v(s), h.inverse()(s), v.inverse()(s)}) {
                if (!seen[t]) {
                    seen[t] = 1;
                    ++count;
                    stack.push_back(t);
                }
            }
        }
        return count == d;
    }

    friend bool operator==(const Origami& a, const Origami& b) {
        return a.h == b.h && a.v == b.v;
    }
    friend bool operator<(const Origami& a, const Origami& b) {
        if (a.h != b.h) return a.h < b.h;
        return a.v < b.v;
    }
};

/// Horizontal cylinder decomposition: list of (width, height), sorted by
/// (width, height) for determinism. Widths and heights satisfy
/// sum(w * ht) = d.
struct CylinderDiagram {
    std::vector<std::pair<int, int>> cylinders;  // (width, height)

    friend bool operator==(const CylinderDiagram& a, const CylinderDiagram& b) {
        return a.cylinders == b.cylinders;
    }
};

struct Cusp {
    int width = 0;            // length of the T-orbit
    Origami representative;   // canonical form of the smallest member
    CylinderDiagram cylinders;
};

/// Stable-limit summary at a cusp: the square complex cut along every
/// horizontal cylinder core curve.
struct StableGraph {
    int component_count = 0;
    int node_count = 0;                    // = number of cylinders
    std::vector<std::pair<int, int>> node_edges;  // component ids joined by each node
    bool irreducible = false;              // connected after deleting any single node edge
};

namespace detail {

/// Lexicographic minimization of the concatenated image arrays (h', v')
/// over simultaneous conjugation. Backtracking over partial relabelings;
/// labels are created in increasing order, branching happens whenever the
/// preimage of the next needed label is still free.
class CanonicalSearch {
public:
    CanonicalSearch(const Permutation& h, const Permutation& v)
        : h_(h.images()), v_(v.images()), d_(h.degree()), best_(2 * d_, kInf) {}

    std::pair<Permutation, Permutation> run() {
        std::vector<int> sigma(d_, -1), inv(d_, -1);
        rec(0, sigma, inv, 0);
        std::vector<int> him(best_.begin(), best_.begin() + d_);
        std::vector<int> vim(best_.begin() + d_, best_.end());
        return {Permutation(std::move(him)), Permutation(std::move(vim))};
    }

private:
    static constexpr int kInf = 1 << 30;

    // best_ always holds the lex-smallest full word reachable from any path
    // explored so far; whenever the current value improves on best_[pos] the
    // suffix is reset to infinity, so the running path is tied with best_ at
    // every node and plain per-position pruning is exact. (Every partial
    // relabeling extends to a leaf, so the eager truncation is safe.)
    void rec(int pos, std::vector<int>& sigma, std::vector<int>& inv, int next) {
        if (pos == 2 * d_) return;
        int i = pos % d_;
        const std::vector<int>& perm = pos < d_ ? h_ : v_;
        if (inv[i] < 0) {
            // label i not yet used: branch over every free source point
            for (int o = 0; o < d_; ++o) {
                if (sigma[o] >= 0) continue;
                sigma[o] = i;
                inv[i] = o;
                step(pos, perm, sigma, inv, next + 1);
                sigma[o] = -1;
                inv[i] = -1;
            }
        } else {
            step(pos, perm, sigma, inv, next);
        }
    }

    void step(int pos, const std::vector<int>& perm, std::vector<int>& sigma,
              std::vector<int>& inv, int next) {
        int i = pos % d_;
        int t = perm[inv[i]];
        bool assigned_here = false;
        if (sigma[t] < 0) {
            sigma[t] = next;
            inv[next] = t;
            ++next;
            assigned_here = true;
        }
        int val = sigma[t];
        if (val <= best_[pos]) {
            if (val < best_[pos]) {
                best_[pos] = val;
                std::fill(best_.begin() + pos + 1, best_.end(), kInf);
            }
            rec(pos + 1, sigma, inv, next);
        }
        if (assigned_here) { inv[sigma[t]] = -1; sigma[t] = -1; }
    }

    std::vector<int> h_, v_;
    int d_;
    std::vector<int> best_;
};

}  // namespace detail

/// Distinguished representative of the simultaneous-conjugation class of (h, v).
inline Origami canonical_form(const Origami& o) {
    auto [h, v] = detail::CanonicalSearch(o.h, o.v).run();
    return Origami(std::move(h), std::move(v));
}

/// The degeneracy data of the pulled-back differential: zero orders are the
/// (cycle length - 1) of the nontrivial commutator cycles.
inline Stratum stratum_of(const Origami& o) {
    Permutation c = commutator(o.h, o.v);
    std::vector<int> orders;
    for (int len : c.cycle_type())
        if (len > 1) orders.push_back(len - 1);
    return Stratum(std::move(orders));
}

/// Order of the simultaneous centralizer of h and v in S_d. For a
/// transitive pair the centralizer acts freely, so each candidate image of
/// square 0 extends in at most one way.
inline int automorphism_order(const Origami& o) {
    int d = o.degree();
    int count = 0;
    for (int start = 0; start < d; ++start) {
        std::vector<int> sigma(d, -1);
        sigma[0] = start;
        std::vector<int> stack = {0};
        bool ok = true;
        while (!stack.empty() && ok) {
            int u = stack.back();
            stack.pop_back();
            for (const Permutation* p : {&o.h, &o.v}) {
                int a = (*p)(u), b = (*p)(sigma[u]);
                if (sigma[a] < 0) {
                    sigma[a] = b;
                    stack.push_back(a);
                } else if (sigma[a] != b) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) continue;
        // unreached squares (non-transitive input) are left in place
        bool bij = true;
        std::vector<char> used(d, 0);
        for (int x = 0; x < d; ++x) {
            int y = sigma[x] < 0 ? x : sigma[x];
            if (used[y]) { bij = false; break; }
            used[y] = 1;
        }
        if (!bij) continue;
        // verify commuting on all points
        std::vector<int> full(d);
        for (int x = 0; x < d; ++x) full[x] = sigma[x] < 0 ? x : sigma[x];
        Permutation s(full);
        if (s * o.h == o.h * s && s * o.v == o.v * s) ++count;
    }
    return count;
}

/// Enumeration result; warning is set when (d, stratum) violate the degree
/// formula d = sum(m_k) + r + m with m >= 0.
struct EnumerationResult {
    std::vector<Origami> origamis;  // canonical forms, sorted
    bool warning = false;
};

namespace detail {

inline std::vector<std::vector<int>> partitions_of(int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) { out.push_back(cur); return; }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, d, d);
    return out;
}

inline Permutation rep_of_cycle_type(int d, const std::vector<int>& type) {
    std::vector<std::vector<int>> cycles;
    int at = 0;
    for (int len : type) {
        std::vector<int> c(len);
        std::iota(c.begin(), c.end(), at);
        at += len;
        cycles.push_back(std::move(c));
    }
    return Permutation::from_cycles(d, cycles);
}

}  // namespace detail

/// All origamis of degree d lying in stratum s, as sorted canonical forms.
/// h runs over one representative per cycle type; v runs over all of S_d
/// (partitioned across jobs); survivors are canonicalized and deduplicated.
inline EnumerationResult enumerate_origamis(int d, const Stratum& s, int jobs = 1) {
    EnumerationResult result;
    if (d < 1) { result.warning = true; return result; }
    int m = d - s.order_sum() - s.r();
    if (m < 0) { result.warning = true; return result; }

    // target commutator cycle type
    std::vector<int> target;
    for (int mk : s.zero_orders) target.push_back(mk + 1);
    for (int i = 0; i < m; ++i) target.push_back(1);
    std::sort(target.rbegin(), target.rend());

    std::vector<Permutation> h_reps;
    for (const auto& type : detail::partitions_of(d))
        h_reps.push_back(detail::rep_of_cycle_type(d, type));

    jobs = std::max(1, jobs);
    std::vector<std::set<Origami>> found(jobs);

    auto worker = [&](int job) {
        for (const Permutation& h : h_reps) {
            std::vector<int> vim(d);
            std::iota(vim.begin(), vim.end(), 0);
            do {
                if (vim[0] % jobs != job) continue;
                Origami o(h, Permutation(vim));
                if (!o.is_transitive()) continue;
                if (commutator(o.h, o.v).cycle_type() != target) continue;
                found[job].insert(canonical_form(o));
            } while (std::next_permutation(vim.begin(), vim.end()));
        }
    };

    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (int j = 0; j < jobs; ++j) threads.emplace_back(worker, j);
        for (auto& t : threads) t.join();
    }

    std::set<Origami> all;
    for (auto& f : found) all.insert(f.begin(), f.end());
    result.origamis.assign(all.begin(), all.end());
    return result;
}

/// Lift of the SL(2,Z) generator T (horizontal shear), on canonical forms.
inline Origami apply_T(const Origami& o) {
    return canonical_form(Origami(o.h, o.v * o.h.inverse()));
}

/// Lift of the SL(2,Z) generator S (quarter rotation), on canonical forms.
inline Origami apply_S(const Origami& o) {
    return canonical_form(Origami(o.v, o.h.inverse()));
}

/// An SL(2,Z)-orbit of canonical origamis.
struct TeichCurve {
    Stratum stratum;
    int degree = 0;
    int orbit_id = 0;
    std::vector<Origami> members;  // canonical, sorted
};

/// Partitions the given canonical origamis into orbits of <T, S>; elements
/// generated by closure but absent from the input are included in their
/// orbit (the generators preserve degree and stratum).
inline std::vector<TeichCurve> sl2_orbits(const std::vector<Origami>& origamis) {
    std::vector<TeichCurve> orbits;
    std::set<Origami> remaining(origamis.begin(), origamis.end());
    int next_id = 0;
    while (!remaining.empty()) {
        Origami seed = *remaining.begin();
        std::set<Origami> orbit;
        std::vector<Origami> stack = {seed};
        orbit.insert(seed);
        while (!stack.empty()) {
            Origami cur = stack.back();
            stack.pop_back();
            for (const Origami& nxt : {apply_T(cur), apply_S(cur)}) {
                if (orbit.insert(nxt).second) stack.push_back(nxt);
            }
        }
        TeichCurve tc;
        tc.stratum = stratum_of(seed);
        tc.degree = seed.degree();
        tc.orbit_id = next_id++;
        tc.members.assign(orbit.begin(), orbit.end());
        orbits.push_back(std::move(tc));
        for (const Origami& o : orbits.back().members) remaining.erase(o);
    }
    return orbits;
}

/// Horizontal cylinders: rows are the cycles of h; a row is glued to the
/// row above it exactly when v∘h = h∘v pointwise on the row.
inline CylinderDiagram horizontal_cylinders(const Origami& o) {
    auto rows = o.h.cycles();
    int nrows = int(rows.size());
    std::vector<int> row_of(o.degree());
    for (int r = 0; r < nrows; ++r)
        for (int s : rows[r]) row_of[s] = r;

    // union-find over rows
    std::vector<int> parent(nrows);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    for (int r = 0; r < nrows; ++r) {
        bool glued = true;
        for (int s : rows[r]) {
            if (o.v(o.h(s)) != o.h(o.v(s))) { glued = false; break; }
        }
        if (glued) {
            int above = row_of[o.v(rows[r][0])];
            parent[find(r)] = find(above);
        }
    }

    std::map<int, std::pair<int, int>> cyl;  // root -> (width, height)
    for (int r = 0; r < nrows; ++r) {
        auto& c = cyl[find(r)];
        c.first = int(rows[r].size());
        c.second += 1;
    }
    CylinderDiagram out;
    for (auto& [root, wh] : cyl) out.cylinders.push_back(wh);
    std::sort(out.cylinders.begin(), out.cylinders.end());
    return out;
}

/// T-orbits within an SL(2,Z)-orbit; the cylinder diagram is shared by the
/// whole parabolic orbit (T preserves horizontal cylinders).
inline std::vector<Cusp> cusps(const TeichCurve& c) {
    std::vector<Cusp> out;
    std::set<Origami> remaining(c.members.begin(), c.members.end());
    while (!remaining.empty()) {
        Origami seed = *remaining.begin();
        std::set<Origami> torbit;
        Origami cur = seed;
        while (torbit.insert(cur).second) cur = apply_T(cur);
        Cusp cusp;
        cusp.width = int(torbit.size());
        cusp.representative = *torbit.begin();
        cusp.cylinders = horizontal_cylinders(cusp.representative);
        out.push_back(std::move(cusp));
        for (const Origami& o : torbit) remaining.erase(o);
    }
    return out;
}

namespace detail {

/// Connectivity of a multigraph (vertices, edge list) after optionally
/// deleting one edge.
inline bool connected_without(int nvert, const std::vector<std::pair<int, int>>& edges,
                              int skip_edge) {
    if (nvert == 0) return true;
    std::vector<int> parent(nvert);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e = 0; e < int(edges.size()); ++e) {
        if (e == skip_edge) continue;
        parent[find(edges[e].first)] = find(edges[e].second);
    }
    int root = find(0);
    for (int i = 1; i < nvert; ++i)
        if (find(i) != root) return false;
    return true;
}

}  // namespace detail

/// Irreducibility of a stable graph given as (component count, node edges).
inline bool stable_graph_irreducible(int component_count,
                                     const std::vector<std::pair<int, int>>& node_edges) {
    for (int e = 0; e < int(node_edges.size()); ++e)
        if (!detail::connected_without(component_count, node_edges, e)) return false;
    return detail::connected_without(component_count, node_edges, -1);
}

/// Stable limit at the cusp of o: every horizontal cylinder core curve is
/// pinched to a node. Each square is split into a bottom and a top half;
/// the cut runs through the middle of the first row of each cylinder.
inline StableGraph cusp_stable_graph(const Origami& o) {
    int d = o.degree();
    auto rows = o.h.cycles();
    int nrows = int(rows.size());
    std::vector<int> row_of(d);
    for (int r = 0; r < nrows; ++r)
        for (int s : rows[r]) row_of[s] = r;

    // group rows into cylinders (same rule as horizontal_cylinders)
    std::vector<int> parent(nrows);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int r = 0; r < nrows; ++r) {
        bool glued = true;
        for (int s : rows[r])
            if (o.v(o.h(s)) != o.h(o.v(s))) { glued = false; break; }
        if (glued) parent[find(r)] = find(row_of[o.v(rows[r][0])]);
    }
    std::map<int, int> cyl_id;
    for (int r = 0; r < nrows; ++r)
        cyl_id.emplace(find(r), int(cyl_id.size()));
    int ncyl = int(cyl_id.size());

    // the cut row of each cylinder: the smallest row index in it
    std::vector<int> cut_row(ncyl, -1);
    for (int r = 0; r < nrows; ++r) {
        int c = cyl_id[find(r)];
        if (cut_row[c] < 0) cut_row[c] = r;
    }
    std::vector<char> is_cut_row(nrows, 0);
    for (int c = 0; c < ncyl; ++c) is_cut_row[cut_row[c]] = 1;

    // nodes 2s = bottom half of square s, 2s+1 = top half
    std::vector<int> uf(2 * d);
    std::iota(uf.begin(), uf.end(), 0);
    auto ufind = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    auto link = [&](int a, int b) { uf[ufind(a)] = ufind(b); };

    for (int s = 0; s < d; ++s) {
        link(2 * s, 2 * o.h(s));          // bottom halves along the row
        link(2 * s + 1, 2 * o.h(s) + 1);  // top halves along the row
        link(2 * s + 1, 2 * o.v(s));      // top of s to bottom of the square above
        if (!is_cut_row[row_of[s]]) link(2 * s, 2 * s + 1);
    }

    std::map<int, int> comp_id;
    for (int x = 0; x < 2 * d; ++x) comp_id.emplace(ufind(x), int(comp_id.size()));

    StableGraph g;
    g.component_count = int(comp_id.size());
    g.node_count = ncyl;
    for (int c = 0; c < ncyl; ++c) {
        int s0 = rows[cut_row[c]][0];
        g.node_edges.emplace_back(comp_id[ufind(2 * s0)], comp_id[ufind(2 * s0 + 1)]);
    }
    g.irreducible = stable_graph_irreducible(g.component_count, g.node_edges);
    return g;
}

}  // namespace hodgetau
