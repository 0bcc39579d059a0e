#ifndef TPLKIT_PRECOLOR_HPP
#define TPLKIT_PRECOLOR_HPP

#include <array>
#include <climits>
#include <ostream>
#include <string>
#include <vector>

#include "tplkit/cgraph.hpp"

namespace tplkit {

constexpr int kUnbounded = INT_MAX / 4; // maxS value meaning "no stitch cap"

struct ProfileEntry {
    Rect rect;
    int color;
    bool is_rail;
};

struct ColoringSolution {
    std::vector<int> assignment; // per CG vertex, color in {1,2,3}
    int stitch_count = 0;
    std::vector<ProfileEntry> left_profile, right_profile;
};

inline int count_stitches(const ConstraintGraph& cg, const std::vector<int>& a) {
    int s = 0;
    for (auto& e : cg.stitch_edges)
        if (a[e.u] > 0 && a[e.v] > 0 && a[e.u] != a[e.v]) ++s;
    return s;
}

inline bool proper_on_conflicts(const ConstraintGraph& cg, const std::vector<int>& a) {
    for (auto& e : cg.conflict_edges)
        if (a[e.u] > 0 && a[e.v] > 0 && a[e.u] == a[e.v]) return false;
    return true;
}

// All proper 3-colorings of the SCG conflict edges, rails pre-fixed to color 1.
// Stitch edges impose nothing here; the stitch cap is applied at verification.
// Deterministic: vertices by id, colors tried 1..3.
inline std::vector<std::vector<int>> enumerate_scg(const ConstraintGraph& scg) {
    int n = (int)scg.vertices.size();
    auto adj = scg.conflict_adj();
    std::vector<int> a(n, -1);
    for (auto& v : scg.vertices)
        if (v.is_rail) a[v.id] = 1;
    std::vector<std::vector<int>> out;

    auto rec = [&](auto&& self, int t) -> void {
        while (t < n && a[t] > 0) ++t;
        if (t == n) {
            out.push_back(a);
            return;
        }
        for (int c = 1; c <= 3; ++c) {
            bool ok = true;
            for (int u : adj[t])
                if (a[u] == c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            a[t] = c;
            self(self, t + 1);
            a[t] = -1;
        }
    };
    rec(rec, 0);
    return out;
}

// Map SCG assignments onto the CG vertex space; vertices outside the SCG
// (immune features) stay unassigned (-1).
inline std::vector<std::vector<int>> lift_to_cg(const std::vector<std::vector<int>>& scg_solutions,
                                                const ConstraintGraph& scg, size_t cg_size) {
    std::vector<std::vector<int>> out;
    out.reserve(scg_solutions.size());
    for (auto& s : scg_solutions) {
        std::vector<int> a(cg_size, -1);
        for (auto& v : scg.vertices) a[v.cg_id] = s[v.id];
        out.push_back(std::move(a));
    }
    return out;
}

namespace detail {

// Depth-first branch and bound over the unassigned CG vertices. Colors that
// clash with an already-colored conflict neighbor are never tried, so every
// completed leaf is a proper coloring; the bound is the stitch count already
// forced. Returns the minimum stitch completion, or nullopt if none exists.
struct BnB {
    const ConstraintGraph& cg;
    std::vector<std::vector<int>> cadj, sadj;
    bool prune;
    int sentinel;

    std::vector<int> work, best;
    int min_cost = 0;

    explicit BnB(const ConstraintGraph& g, int maxS, bool prune_)
        : cg(g), prune(prune_), sentinel(maxS >= kUnbounded
                                             ? kUnbounded
                                             : maxS + (int)g.stitch_edges.size() + 1) {
        cadj.resize(g.vertices.size());
        for (auto& e : g.conflict_edges) {
            cadj[e.u].push_back(e.v);
            cadj[e.v].push_back(e.u);
        }
        sadj.resize(g.vertices.size());
        for (auto& e : g.stitch_edges) {
            sadj[e.u].push_back(e.v);
            sadj[e.v].push_back(e.u);
        }
    }

    int forced_stitches() const { return count_stitches(cg, work); }

    void dfs(int t) {
        int n = (int)cg.vertices.size();
        while (t < n && work[t] > 0) ++t;
        if (t == n) {
            int cost = forced_stitches();
            if (cost < min_cost) {
                min_cost = cost;
                best = work;
            }
            return;
        }
        if (prune && forced_stitches() > min_cost) return;
        for (int c = 1; c <= 3; ++c) {
            bool ok = true;
            for (int u : cadj[t])
                if (work[u] == c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            work[t] = c;
            dfs(t + 1);
            work[t] = -1;
        }
    }

    // Complete `a`; returns true if a proper completion exists.
    bool solve(const std::vector<int>& a) {
        work = a;
        best.clear();
        min_cost = sentinel;
        dfs(0);
        return !best.empty();
    }
};

} // namespace detail

// Redundancy dedup: solutions identical on the non-immune vertices are one
// class; keep the min-stitch member, ties broken lexicographically.
inline std::vector<ColoringSolution> dedupe_redundant(std::vector<ColoringSolution> sols,
                                                      const ConstraintGraph& cg) {
    std::vector<int> visible;
    for (auto& v : cg.vertices)
        if (!v.is_immune) visible.push_back(v.id);

    auto key = [&](const ColoringSolution& s) {
        std::vector<int> k;
        k.reserve(visible.size());
        for (int v : visible) k.push_back(s.assignment[v]);
        return k;
    };
    std::vector<ColoringSolution> kept;
    std::vector<std::vector<int>> keys;
    for (auto& s : sols) {
        auto k = key(s);
        bool merged = false;
        for (size_t i = 0; i < kept.size(); ++i) {
            if (keys[i] != k) continue;
            if (s.stitch_count < kept[i].stitch_count ||
                (s.stitch_count == kept[i].stitch_count && s.assignment < kept[i].assignment))
                kept[i] = s;
            merged = true;
            break;
        }
        if (!merged) {
            kept.push_back(s);
            keys.push_back(std::move(k));
        }
    }
    return kept;
}

inline void fill_profiles(ColoringSolution& s, const ConstraintGraph& cg, Unit d_min) {
    for (auto& v : cg.vertices) {
        ProfileEntry e{v.frag, s.assignment[v.id], v.is_rail};
        if (v.frag.x_lo < d_min) s.left_profile.push_back(e);
        if (cg.cell_width - v.frag.x_hi < d_min) s.right_profile.push_back(e);
    }
}

// Algorithm: for each lifted SCG solution, branch and bound completes the
// immune vertices; the solution is kept iff its minimum stitch completion is
// within maxS. Output is deduped and sorted by (stitches, assignment).
inline std::vector<ColoringSolution> verify_cg(const std::vector<std::vector<int>>& lifted,
                                               const ConstraintGraph& cg, int maxS,
                                               const TechParams& t, bool prune = true) {
    detail::BnB bnb(cg, maxS, prune);
    std::vector<ColoringSolution> sols;
    for (auto& a : lifted) {
        if (!bnb.solve(a)) continue;
        if (bnb.min_cost > maxS) continue;
        ColoringSolution s;
        s.assignment = bnb.best;
        s.stitch_count = bnb.min_cost;
        sols.push_back(std::move(s));
    }
    sols = dedupe_redundant(std::move(sols), cg);
    std::sort(sols.begin(), sols.end(), [](const ColoringSolution& a, const ColoringSolution& b) {
        return std::tie(a.stitch_count, a.assignment) < std::tie(b.stitch_count, b.assignment);
    });
    Unit d_min = derive_dmin(t);
    for (auto& s : sols) fill_profiles(s, cg, d_min);
    return sols;
}

// Per-orientation pre-coloring of one cell.
struct OrientedColorings {
    ConstraintGraph cg;
    std::vector<ColoringSolution> solutions;
};

struct PrecolorSet {
    std::string cell;
    std::array<OrientedColorings, 2> by_orient; // [N, FN]

    const OrientedColorings& at(Orientation o) const { return by_orient[o == Orientation::N ? 0 : 1]; }
};

inline OrientedColorings precolor_oriented(const CellMaster& m, const TechParams& t, int maxS) {
    OrientedColorings oc;
    oc.cg = build_cg(m, t);
    auto scg = simplify_cg(oc.cg);
    auto scg_sols = enumerate_scg(scg);
    auto lifted = lift_to_cg(scg_sols, scg, oc.cg.vertices.size());
    oc.solutions = verify_cg(lifted, oc.cg, maxS, t);
    return oc;
}

inline PrecolorSet precolor_cell(const CellMaster& m, const TechParams& t, int maxS) {
    PrecolorSet ps;
    ps.cell = m.name;
    ps.by_orient[0] = precolor_oriented(m, t, maxS);
    ps.by_orient[1] = precolor_oriented(flipped(m, t), t, maxS);
    return ps;
}

inline void write_solutions(std::ostream& out, const PrecolorSet& ps) {
    for (Orientation o : {Orientation::N, Orientation::FN}) {
        auto& oc = ps.at(o);
        for (size_t i = 0; i < oc.solutions.size(); ++i) {
            auto& s = oc.solutions[i];
            out << "SOLN " << ps.cell << ' ' << orient_name(o) << ' ' << i << ' '
                << s.stitch_count << '\n';
            for (size_t v = 0; v < s.assignment.size(); ++v)
                out << "C " << v << ' ' << s.assignment[v] << '\n';
        }
    }
}

} // namespace tplkit

#endif
