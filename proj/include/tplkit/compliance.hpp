#ifndef TPLKIT_COMPLIANCE_HPP
#define TPLKIT_COMPLIANCE_HPP

#include <algorithm>
#include <vector>

#include "tplkit/precolor.hpp"

namespace tplkit {

struct ConflictClique {
    std::vector<int> features; // feature ids, ascending
};

struct RepairError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Bron-Kerbosch with pivoting; reports only maximal cliques of size >= 4.
inline void bron_kerbosch(const std::vector<std::vector<char>>& adj, std::vector<int>& R,
                          std::vector<int> P, std::vector<int> X,
                          std::vector<std::vector<int>>& out) {
    if (P.empty() && X.empty()) {
        if (R.size() >= 4) out.push_back(R);
        return;
    }
    int pivot = -1, best = -1;
    for (int u : P) {
        int cnt = 0;
        for (int v : P)
            if (adj[u][v]) ++cnt;
        if (cnt > best) {
            best = cnt;
            pivot = u;
        }
    }
    for (int u : X) {
        int cnt = 0;
        for (int v : P)
            if (adj[u][v]) ++cnt;
        if (cnt > best) {
            best = cnt;
            pivot = u;
        }
    }
    std::vector<int> cand;
    for (int v : P)
        if (pivot < 0 || !adj[pivot][v]) cand.push_back(v);
    for (int v : cand) {
        std::vector<int> P2, X2;
        for (int w : P)
            if (adj[v][w]) P2.push_back(w);
        for (int w : X)
            if (adj[v][w]) X2.push_back(w);
        R.push_back(v);
        bron_kerbosch(adj, R, std::move(P2), std::move(X2), out);
        R.pop_back();
        P.erase(std::find(P.begin(), P.end(), v));
        X.push_back(v);
    }
}

} // namespace detail

// True when the cell admits no proper coloring at all, even with unlimited
// stitches. Delegates to the precolor pipeline so odd wheels etc. count too.
inline bool is_indecomposable(const CellMaster& m, const TechParams& t) {
    return precolor_oriented(m, t, kUnbounded).solutions.empty();
}

// Every maximal clique of size >= 4 in the feature-level conflict graph.
// An indecomposable cell with no such clique is reported as one pseudo-clique
// listing every feature, so callers always see a nonempty result when the
// cell cannot be colored.
inline std::vector<ConflictClique> detect_native_conflicts(const CellMaster& m,
                                                           const TechParams& t) {
    Unit d_min = derive_dmin(t);
    int n = (int)m.features.size();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!same_color_layer(m.features[i].layer, m.features[j].layer)) continue;
            if (within_conflict_range(m.features[i], m.features[j], d_min))
                adj[i][j] = adj[j][i] = 1;
        }
    std::vector<std::vector<int>> cliques;
    std::vector<int> R, P, X;
    for (int i = 0; i < n; ++i) P.push_back(i);
    detail::bron_kerbosch(adj, R, std::move(P), std::move(X), cliques);
    for (auto& c : cliques) std::sort(c.begin(), c.end());
    std::sort(cliques.begin(), cliques.end());

    std::vector<ConflictClique> out;
    for (auto& c : cliques) out.push_back({std::move(c)});
    if (out.empty() && is_indecomposable(m, t)) {
        ConflictClique all;
        for (int i = 0; i < n; ++i) all.features.push_back(i);
        out.push_back(std::move(all));
    }
    return out;
}

enum class RepairOption { CASE1, CASE2 };

namespace detail {

inline bool touches_rail(const CellMaster& m, const Rect& r) {
    for (auto& f : m.features)
        if (f.layer == Layer::RAIL && rects_touch_or_overlap(f, r)) return true;
    return false;
}

inline bool drc_clean(const CellMaster& m, const TechParams& t) {
    Unit w = m.width_units(t);
    for (auto& r : m.features)
        if (r.x_lo < 0 || r.y_lo < 0 || r.x_hi > w || r.y_hi > m.height) return false;
    for (size_t i = 0; i < m.features.size(); ++i)
        for (size_t j = i + 1; j < m.features.size(); ++j) {
            const Rect& a = m.features[i];
            const Rect& b = m.features[j];
            if (a.layer == Layer::RAIL || b.layer == Layer::RAIL) continue;
            Unit d2 = dist2(a, b);
            if (d2 > 0 && d2 < t.s_min * t.s_min) return false;
        }
    return true;
}

} // namespace detail

// Hexagonal-packing repair: shift one group of the clique's contacts (the
// rail-connected ones for CASE1, the signal ones for CASE2) by the smallest
// grid vector that clears every reported clique and keeps the cell DRC-clean.
inline CellMaster hex_pack_repair(const CellMaster& m, RepairOption opt, const TechParams& t) {
    auto cliques = detect_native_conflicts(m, t);
    if (cliques.empty()) return m;

    std::vector<char> moving(m.features.size(), 0);
    for (auto& c : cliques)
        for (int f : c.features) {
            if (m.features[f].layer != Layer::CONTACT) continue;
            bool rail = detail::touches_rail(m, m.features[f]);
            if ((opt == RepairOption::CASE1) == rail) moving[f] = 1;
        }

    Unit grid = std::max<Unit>(1, t.s_min / 2);
    Unit span = std::max(m.width_units(t), m.height) / grid;
    std::vector<std::pair<Unit, Unit>> shifts;
    for (Unit gx = -span; gx <= span; ++gx)
        for (Unit gy = -span; gy <= span; ++gy)
            if (gx || gy) shifts.emplace_back(gx * grid, gy * grid);
    std::sort(shifts.begin(), shifts.end(), [](auto& a, auto& b) {
        auto mag = [](auto& s) { return s.first * s.first + s.second * s.second; };
        return std::tuple(mag(a), a.first, a.second) < std::tuple(mag(b), b.first, b.second);
    });

    for (auto& [dx, dy] : shifts) {
        CellMaster cand = m;
        for (size_t f = 0; f < cand.features.size(); ++f)
            if (moving[f]) {
                cand.features[f].x_lo += dx;
                cand.features[f].x_hi += dx;
                cand.features[f].y_lo += dy;
                cand.features[f].y_hi += dy;
            }
        if (!detail::drc_clean(cand, t)) continue;
        if (!detect_native_conflicts(cand, t).empty()) continue;
        return cand;
    }
    throw RepairError("cell " + m.name + ": no legal contact shift repairs the clique");
}

} // namespace tplkit

#endif
