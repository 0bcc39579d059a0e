#ifndef TPLKIT_CHECKER_HPP
#define TPLKIT_CHECKER_HPP

#include <array>
#include <ostream>
#include <tuple>
#include <vector>

#include "tplkit/design.hpp"

namespace tplkit {

struct ConflictPair {
    int inst_a, feature_a, inst_b, feature_b;
    int color;
    Unit gap2; // squared closest-point distance
    bool cross_row;
};

struct ConflictReport {
    std::vector<ConflictPair> conflicts;
    int per_row = 0, cross_row = 0;
    int stitch_total = 0;
    std::array<int, 3> mask_features{0, 0, 0}; // fragment count per color

    int total() const { return per_row + cross_row; }
};

namespace detail {

struct FlatFrag {
    Rect rect; // chip coordinates
    int color;
    int row, inst, feature;
    bool rail;
};

// Flatten one instance's fragments under a per-CG-vertex color assignment.
inline void flatten_instance(const Design& d, const ColoredLibrary& lib, int inst_id,
                             const std::vector<int>& colors, std::vector<FlatFrag>& out) {
    const Instance& inst = d.instances[inst_id];
    const ConstraintGraph& cg = lib.pre[inst.master].at(inst.orient).cg;
    Unit x0 = Unit(inst.x) * d.tech.site_width;
    Unit y0 = d.rows[inst.row].y;
    for (auto& v : cg.vertices) {
        FlatFrag f;
        f.rect = v.frag;
        f.rect.x_lo += x0;
        f.rect.x_hi += x0;
        f.rect.y_lo += y0;
        f.rect.y_hi += y0;
        f.color = colors[v.id];
        f.row = inst.row;
        f.inst = inst_id;
        f.feature = v.feature;
        f.rail = v.is_rail;
        out.push_back(f);
    }
}

inline ConflictReport count_conflicts(const std::vector<FlatFrag>& frags, Unit d_min) {
    ConflictReport rep;
    for (auto& f : frags)
        if (f.color >= 1 && f.color <= 3) ++rep.mask_features[f.color - 1];
    for (size_t i = 0; i < frags.size(); ++i)
        for (size_t j = i + 1; j < frags.size(); ++j) {
            const FlatFrag& a = frags[i];
            const FlatFrag& b = frags[j];
            if (a.inst == b.inst && a.feature == b.feature) continue;
            if (a.color != b.color) continue;
            if (a.rail && b.rail) continue; // abutting rails form one wire
            if (!same_color_layer(a.rect.layer, b.rect.layer)) continue;
            Unit d2 = dist2(a.rect, b.rect);
            if (d2 >= d_min * d_min) continue;
            bool cross = a.row != b.row;
            rep.conflicts.push_back(
                {a.inst, a.feature, b.inst, b.feature, a.color, d2, cross});
            (cross ? rep.cross_row : rep.per_row)++;
        }
    return rep;
}

inline int recount_stitches(const ConstraintGraph& cg, const std::vector<int>& colors) {
    int s = 0;
    for (auto& e : cg.stitch_edges)
        if (colors[e.u] != colors[e.v]) ++s;
    return s;
}

} // namespace detail

// Ground-truth geometric verification; never consults the LUT.
inline ConflictReport check_design(const Design& d, const ColoredLibrary& lib) {
    Unit d_min = derive_dmin(d.tech);
    std::vector<detail::FlatFrag> frags;
    for (auto& inst : d.instances) {
        if (inst.sol < 0)
            throw std::runtime_error("instance " + std::to_string(inst.id) + " has no color");
        const auto& oc = lib.pre[inst.master].at(inst.orient);
        detail::flatten_instance(d, lib, inst.id, oc.solutions[inst.sol].assignment, frags);
    }
    ConflictReport rep = detail::count_conflicts(frags, d_min);
    for (auto& inst : d.instances) {
        const auto& oc = lib.pre[inst.master].at(inst.orient);
        rep.stitch_total +=
            detail::recount_stitches(oc.cg, oc.solutions[inst.sol].assignment);
    }
    return rep;
}

// Conventional-flow comparator: color the placed-but-uncolored design with a
// per-row left-to-right greedy over fragments, then verify geometrically.
// Stitch budget is maxS per cell; rails are fixed to color 1.
inline ConflictReport post_decomposition_baseline(const Design& d, const ColoredLibrary& lib,
                                                  int maxS) {
    Unit d_min = derive_dmin(d.tech);
    std::vector<detail::FlatFrag> all;
    int stitch_total = 0;

    for (auto& row : d.rows) {
        std::vector<detail::FlatFrag> colored; // this row, already decided
        for (int id : row.insts) {
            const Instance& inst = d.instances[id];
            const ConstraintGraph& cg = lib.pre[inst.master].at(inst.orient).cg;
            std::vector<int> colors(cg.vertices.size(), -1);
            int budget = maxS;
            std::vector<detail::FlatFrag> mine;
            detail::flatten_instance(d, lib, id, colors, mine); // rects only

            for (auto& v : cg.vertices) {
                const detail::FlatFrag& fv = mine[v.id];
                int prev = -1; // same-feature predecessor fragment color
                if (v.id > 0 && cg.vertices[v.id - 1].feature == v.feature)
                    prev = colors[v.id - 1];

                std::vector<int> cands;
                if (v.is_rail)
                    cands = {1};
                else if (prev > 0 && budget <= 0)
                    cands = {prev};
                else
                    cands = {1, 2, 3};

                int best_c = cands[0], best_score = -1;
                bool best_stitch = false;
                for (int c : cands) {
                    int score = 0;
                    auto clash = [&](const detail::FlatFrag& o) {
                        if (o.color != c) return false;
                        if (fv.rail && o.rail) return false;
                        if (!same_color_layer(fv.rect.layer, o.rect.layer)) return false;
                        return dist2(fv.rect, o.rect) < d_min * d_min;
                    };
                    for (auto& o : colored) score += clash(o);
                    for (auto& o : mine)
                        if (o.feature != v.feature && o.color > 0 && clash(o)) ++score;
                    bool st = prev > 0 && c != prev;
                    if (best_score < 0 ||
                        std::tuple(score, st, c) < std::tuple(best_score, best_stitch, best_c)) {
                        best_score = score;
                        best_stitch = st;
                        best_c = c;
                    }
                }
                colors[v.id] = best_c;
                mine[v.id].color = best_c;
                if (best_stitch) {
                    --budget;
                    ++stitch_total;
                }
            }
            for (auto& f : mine) colored.push_back(f);
        }
        for (auto& f : colored) all.push_back(f);
    }

    ConflictReport rep = detail::count_conflicts(all, d_min);
    rep.stitch_total = stitch_total;
    return rep;
}

inline void write_report(std::ostream& out, const ConflictReport& r) {
    out << "conflicts=" << r.total() << '\n'
        << "conflicts_per_row=" << r.per_row << '\n'
        << "conflicts_cross_row=" << r.cross_row << '\n'
        << "stitches=" << r.stitch_total << '\n'
        << "mask1_features=" << r.mask_features[0] << '\n'
        << "mask2_features=" << r.mask_features[1] << '\n'
        << "mask3_features=" << r.mask_features[2] << '\n';
    for (auto& c : r.conflicts)
        out << "CONFLICT inst" << c.inst_a << ".f" << c.feature_a << " inst" << c.inst_b << ".f"
            << c.feature_b << " color=" << c.color << " gap2=" << c.gap2
            << (c.cross_row ? " cross-row" : "") << '\n';
}

} // namespace tplkit

#endif
