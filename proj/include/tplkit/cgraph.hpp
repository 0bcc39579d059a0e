#ifndef TPLKIT_CGRAPH_HPP
#define TPLKIT_CGRAPH_HPP

#include <algorithm>
#include <ostream>
#include <utility>
#include <vector>

#include "tplkit/celllib.hpp"
#include "tplkit/geometry.hpp"

namespace tplkit {

// One fragment of an original layout feature.
struct CGVertex {
    int id = -1;
    int cg_id = -1;   // id in the full CG (differs from id only inside an SCG)
    int feature = -1; // owning feature index in the master
    Rect frag;
    bool is_rail = false;
    bool is_immune = false;
};

struct Edge {
    int u, v;
    bool operator==(const Edge&) const = default;
};

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

struct ConstraintGraph {
    std::vector<CGVertex> vertices;
    std::vector<Edge> conflict_edges;
    std::vector<Edge> stitch_edges;
    Unit cell_width = 0; // cell width in units, for boundary queries

    std::vector<std::vector<int>> conflict_adj() const {
        std::vector<std::vector<int>> adj(vertices.size());
        for (auto& e : conflict_edges) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        return adj;
    }
};

// A stitch candidate: where a feature may be cut, measured along its long axis.
struct StitchCandidate {
    int feature;
    Unit cut_pos;
    bool horizontal; // cut splits the x-span (true) or the y-span (false)
};

inline bool is_horizontal(const Rect& r) { return r.width() >= r.height(); }

// An M1 wire whose x-span comes within d_min of a vertical cell boundary can
// interact with neighboring cells; stitches there are forbidden.
inline bool is_boundary_wire(const Rect& r, Unit cell_width, Unit d_min) {
    return r.x_lo <= d_min || cell_width - r.x_hi <= d_min;
}

inline bool is_immune_rect(const Rect& r, Unit cell_width, Unit d_min) {
    return r.x_lo > d_min && cell_width - r.x_hi > d_min;
}

// Wire-projection stitch candidates. For each M1 wire, every neighbor within
// d_min projects its span onto the wire's long axis; maximal sub-intervals
// covered by at most one distinct projection admit one cut each, placed at the
// interval midpoint. Cuts closer than w_min to a wire end are discarded, as
// are all cuts on boundary wires and on small features (contacts).
inline std::vector<StitchCandidate> generate_stitch_candidates(const CellMaster& cell,
                                                               const TechParams& t) {
    Unit d_min = derive_dmin(t);
    Unit w = cell.width_units(t);
    std::vector<StitchCandidate> out;
    for (int fi = 0; fi < (int)cell.features.size(); ++fi) {
        const Rect& f = cell.features[fi];
        if (f.layer != Layer::M1) continue;
        if (is_boundary_wire(f, w, d_min)) continue;
        bool horiz = is_horizontal(f);
        Unit lo = horiz ? f.x_lo : f.y_lo;
        Unit hi = horiz ? f.x_hi : f.y_hi;

        // Projected neighbor intervals, clipped to the wire span.
        std::vector<std::pair<Unit, Unit>> proj;
        for (int gi = 0; gi < (int)cell.features.size(); ++gi) {
            if (gi == fi) continue;
            const Rect& g = cell.features[gi];
            if (!same_color_layer(f.layer, g.layer)) continue;
            if (!within_conflict_range(f, g, d_min)) continue;
            Unit plo = std::max(lo, horiz ? g.x_lo : g.y_lo);
            Unit phi = std::min(hi, horiz ? g.x_hi : g.y_hi);
            if (plo < phi) proj.emplace_back(plo, phi);
        }
        if (proj.empty()) continue; // nothing to separate

        // Coverage sweep over projection endpoints.
        std::vector<std::pair<Unit, int>> events;
        for (auto& [a, b] : proj) {
            events.emplace_back(a, +1);
            events.emplace_back(b, -1);
        }
        events.emplace_back(lo, 0);
        events.emplace_back(hi, 0);
        std::sort(events.begin(), events.end());

        int cover = 0;
        Unit open = lo; // start of current coverage<=1 run, or -1 if none
        bool in_run = true;
        std::vector<std::pair<Unit, Unit>> runs;
        size_t i = 0;
        while (i < events.size()) {
            Unit x = events[i].first;
            int delta = 0;
            while (i < events.size() && events[i].first == x) delta += events[i++].second;
            int next_cover = cover + delta;
            if (in_run && next_cover > 1) {
                if (x > open) runs.emplace_back(open, x);
                in_run = false;
            } else if (!in_run && next_cover <= 1) {
                open = x;
                in_run = true;
            }
            cover = next_cover;
        }
        if (in_run && hi > open) runs.emplace_back(open, hi);

        for (auto& [a, b] : runs) {
            Unit clo = std::max(a, lo + t.w_min);
            Unit chi = std::min(b, hi - t.w_min);
            if (clo > chi) continue;
            out.push_back({fi, (clo + chi) / 2, horiz});
        }
    }
    std::sort(out.begin(), out.end(), [](const StitchCandidate& a, const StitchCandidate& b) {
        return std::tie(a.feature, a.cut_pos) < std::tie(b.feature, b.cut_pos);
    });
    return out;
}

// Split features at accepted cuts and wire up conflict and stitch edges.
inline ConstraintGraph build_cg(const CellMaster& cell,
                                const std::vector<StitchCandidate>& stitches,
                                const TechParams& t) {
    Unit d_min = derive_dmin(t);
    ConstraintGraph cg;
    cg.cell_width = cell.width_units(t);

    for (int fi = 0; fi < (int)cell.features.size(); ++fi) {
        const Rect& f = cell.features[fi];
        std::vector<Unit> cuts;
        bool horiz = is_horizontal(f);
        for (auto& s : stitches)
            if (s.feature == fi) {
                cuts.push_back(s.cut_pos);
                horiz = s.horizontal;
            }
        std::sort(cuts.begin(), cuts.end());

        int prev = -1;
        Unit from = horiz ? f.x_lo : f.y_lo;
        cuts.push_back(horiz ? f.x_hi : f.y_hi);
        for (Unit to : cuts) {
            if (to <= from) continue;
            Rect frag = f;
            if (horiz) {
                frag.x_lo = from;
                frag.x_hi = to;
            } else {
                frag.y_lo = from;
                frag.y_hi = to;
            }
            CGVertex v;
            v.id = v.cg_id = (int)cg.vertices.size();
            v.feature = fi;
            v.frag = frag;
            v.is_rail = f.layer == Layer::RAIL;
            v.is_immune = is_immune_rect(frag, cg.cell_width, d_min);
            cg.vertices.push_back(v);
            if (prev >= 0) cg.stitch_edges.push_back(make_edge(prev, v.id));
            prev = v.id;
            from = to;
        }
    }

    for (int u = 0; u < (int)cg.vertices.size(); ++u)
        for (int v = u + 1; v < (int)cg.vertices.size(); ++v) {
            if (cg.vertices[u].feature == cg.vertices[v].feature) continue;
            if (!same_color_layer(cg.vertices[u].frag.layer, cg.vertices[v].frag.layer)) continue;
            if (within_conflict_range(cg.vertices[u].frag, cg.vertices[v].frag, d_min))
                cg.conflict_edges.push_back(make_edge(u, v));
        }
    return cg;
}

inline ConstraintGraph build_cg(const CellMaster& cell, const TechParams& t) {
    return build_cg(cell, generate_stitch_candidates(cell, t), t);
}

// Induced subgraph on the non-immune vertices; cg_id keeps the mapping back.
inline ConstraintGraph simplify_cg(const ConstraintGraph& cg) {
    ConstraintGraph scg;
    scg.cell_width = cg.cell_width;
    std::vector<int> remap(cg.vertices.size(), -1);
    for (auto& v : cg.vertices) {
        if (v.is_immune) continue;
        CGVertex w = v;
        w.id = (int)scg.vertices.size();
        w.cg_id = v.id;
        remap[v.id] = w.id;
        scg.vertices.push_back(w);
    }
    for (auto& e : cg.conflict_edges)
        if (remap[e.u] >= 0 && remap[e.v] >= 0)
            scg.conflict_edges.push_back(make_edge(remap[e.u], remap[e.v]));
    for (auto& e : cg.stitch_edges)
        if (remap[e.u] >= 0 && remap[e.v] >= 0)
            scg.stitch_edges.push_back(make_edge(remap[e.u], remap[e.v]));
    return scg;
}

inline void dump_cg(std::ostream& out, const ConstraintGraph& cg) {
    for (auto& v : cg.vertices)
        out << "V " << v.id << " feat=" << v.feature << " immune=" << (v.is_immune ? 1 : 0)
            << " rail=" << (v.is_rail ? 1 : 0) << '\n';
    for (auto& e : cg.conflict_edges) out << "CE " << e.u << ' ' << e.v << '\n';
    for (auto& e : cg.stitch_edges) out << "SE " << e.u << ' ' << e.v << '\n';
}

} // namespace tplkit

#endif
