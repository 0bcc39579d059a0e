#ifndef TPLKIT_OSR_HPP
#define TPLKIT_OSR_HPP

#include <climits>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tplkit/lut.hpp"

namespace tplkit {

using Cost = long long;
constexpr Cost kInfCost = std::numeric_limits<Cost>::max() / 4;

// One (orientation, coloring solution) choice for a row cell.
struct Candidate {
    Orientation o = Orientation::N;
    int sol = 0;
    int stitches = 0;
    int lut_var = -1; // variant id in the DecomposabilityLUT
};

struct RowCell {
    int inst_id = -1;
    int master = -1;
    int width_sites = 0;
    Unit width_units = 0;
    std::vector<Candidate> cands;
};

struct RowPin {
    int cell;   // index into RowProblem::cells
    Unit off_n; // pin x-offset under orientation N
};

struct RowNet {
    std::vector<RowPin> pins;
    bool has_fixed = false;
    Unit fix_lo = 0, fix_hi = 0; // x-bbox of fixed (external) pins
};

struct RowProblem {
    int m = 0; // sites
    std::vector<RowCell> cells;
    std::vector<RowNet> nets;
    Cost alpha = 10;
    Unit site_width = 8;
};

struct PlacedCell {
    int x = 0; // site of the cell's left edge
    int cand = 0;
};

struct RowSolution {
    std::vector<PlacedCell> placed; // prefix of the cells, in order
    Cost cost = 0;                  // x-HPWL + alpha*stitches + ending penalties
    long long relax = 0;            // counted edge relaxations
    long long relax_color = 0, relax_place = 0; // two-stage breakdown

    int stitch_total(const RowProblem& p) const {
        int s = 0;
        for (size_t i = 0; i < placed.size(); ++i) s += p.cells[i].cands[placed[i].cand].stitches;
        return s;
    }
};

struct UnsolvableRowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace osr_detail {

struct NetSpan {
    int first_cell = INT_MAX, last_cell = INT_MIN;
};

inline std::vector<NetSpan> net_spans(const RowProblem& p) {
    std::vector<NetSpan> sp(p.nets.size());
    for (size_t n = 0; n < p.nets.size(); ++n)
        for (auto& pin : p.nets[n].pins) {
            sp[n].first_cell = std::min(sp[n].first_cell, pin.cell);
            sp[n].last_cell = std::max(sp[n].last_cell, pin.cell);
        }
    return sp;
}

inline std::vector<std::vector<int>> nets_of_cells(const RowProblem& p) {
    std::vector<std::vector<int>> by_cell(p.cells.size());
    for (size_t n = 0; n < p.nets.size(); ++n) {
        int last = -1;
        for (auto& pin : p.nets[n].pins)
            if (pin.cell != last) {
                by_cell[pin.cell].push_back((int)n);
                last = pin.cell;
            }
    }
    for (auto& v : by_cell) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return by_cell;
}

} // namespace osr_detail

// Net charging scheme: since cell order is fixed and pin offsets lie within
// the cell width, pin x positions are nondecreasing in cell index. So a net's
// final left boundary is decided when its first row cell commits and its
// right boundary when its last row cell commits. Charging -L on the first
// commit and +R on the last makes path cost sum exactly to the x-HPWL of all
// nets touching the row, with every edge cost computable locally.
class RowCostModel {
public:
    explicit RowCostModel(const RowProblem& p)
        : p_(p), spans_(osr_detail::net_spans(p)), by_cell_(osr_detail::nets_of_cells(p)) {}

    Cost commit_charge(int cell, Orientation o, int x_site) const {
        Unit X = Unit(x_site) * p_.site_width;
        Cost c = 0;
        for (int ni : by_cell_[cell]) {
            const RowNet& net = p_.nets[ni];
            Unit pxmin = std::numeric_limits<Unit>::max();
            Unit pxmax = std::numeric_limits<Unit>::min();
            for (auto& pin : net.pins) {
                if (pin.cell != cell) continue;
                Unit off = o == Orientation::N ? pin.off_n
                                               : p_.cells[cell].width_units - pin.off_n;
                pxmin = std::min(pxmin, X + off);
                pxmax = std::max(pxmax, X + off);
            }
            if (spans_[ni].first_cell == cell)
                c -= net.has_fixed ? std::min(net.fix_lo, pxmin) : pxmin;
            if (spans_[ni].last_cell == cell)
                c += net.has_fixed ? std::max(net.fix_hi, pxmax) : pxmax;
        }
        return c;
    }

    // Penalty unit for unplaced cells; dominates any achievable cost swing.
    Cost big_m() const {
        Cost span = 0;
        Unit row_hi = Unit(p_.m) * p_.site_width;
        for (auto& net : p_.nets) {
            Unit lo = std::min<Unit>(0, net.has_fixed ? net.fix_lo : 0);
            Unit hi = std::max<Unit>(row_hi, net.has_fixed ? net.fix_hi : row_hi);
            span += hi - lo;
        }
        Cost smax = 0;
        for (auto& c : p_.cells) {
            int mx = 0;
            for (auto& cd : c.cands) mx = std::max(mx, cd.stitches);
            smax += mx;
        }
        return 1 + p_.alpha * smax + 2 * span;
    }

private:
    const RowProblem& p_;
    std::vector<osr_detail::NetSpan> spans_;
    std::vector<std::vector<int>> by_cell_;
};

// Optimal TPL-OSR: shortest path on the (candidate row) x (site column) DAG.
// Horizontal edges cost 0; a diagonal edge commits the next cell with one
// candidate, offset by the LUT spacing against the predecessor's candidate;
// ending edges charge M per cell left unplaced. Diagonals are relaxed once
// per (target candidate, LUT spacing class), so counted relaxations scale
// with m*n*K.
inline RowSolution tpl_osr_optimal(const RowProblem& p, const DecomposabilityLUT& lut) {
    int n = (int)p.cells.size();
    RowSolution out;
    if (n == 0) return out;
    for (auto& c : p.cells)
        if (c.cands.empty())
            throw UnsolvableRowError("cell " + std::to_string(c.inst_id) +
                                     " has no pre-coloring solution");

    RowCostModel cm(p);
    Cost M = cm.big_m();
    int m = p.m;

    std::vector<int> row_base(n); // first DP row of each cell's candidate block
    int rows = 1;
    for (int i = 0; i < n; ++i) {
        row_base[i] = rows;
        rows += (int)p.cells[i].cands.size();
    }

    // LUT spacing classes: for cell i, target candidate q, the predecessors
    // grouped by required spacing.
    struct SpacingClass {
        int spacing;
        std::vector<int> preds;
    };
    std::vector<std::vector<std::vector<SpacingClass>>> classes(n);
    for (int i = 1; i < n; ++i) {
        auto& prev = p.cells[i - 1].cands;
        auto& cur = p.cells[i].cands;
        classes[i].resize(cur.size());
        for (int q = 0; q < (int)cur.size(); ++q) {
            for (int pr = 0; pr < (int)prev.size(); ++pr) {
                int s = lut.spacing_of(prev[pr].lut_var, cur[q].lut_var);
                auto& cls = classes[i][q];
                auto it = std::find_if(cls.begin(), cls.end(),
                                       [&](const SpacingClass& c) { return c.spacing == s; });
                if (it == cls.end())
                    cls.push_back({s, {pr}});
                else
                    it->preds.push_back(pr);
            }
        }
    }

    struct Parent {
        int r = -1, k = -1;
    };
    std::vector<std::vector<Cost>> dist(rows, std::vector<Cost>(m + 1, kInfCost));
    std::vector<std::vector<Parent>> par(rows, std::vector<Parent>(m + 1));
    dist[0][0] = 0;
    long long relax = 0;

    for (int k = 0; k <= m; ++k) {
        for (int r = 0; r < rows; ++r) {
            if (k > 0) {
                ++relax;
                if (dist[r][k - 1] < dist[r][k]) {
                    dist[r][k] = dist[r][k - 1];
                    par[r][k] = {r, k - 1};
                }
            }
        }
        // Diagonals departing column k.
        if (dist[0][k] < kInfCost) {
            auto& cands = p.cells[0].cands;
            for (int q = 0; q < (int)cands.size(); ++q) {
                int k2 = k + p.cells[0].width_sites;
                if (k2 > m) continue;
                ++relax;
                Cost c = dist[0][k] + cm.commit_charge(0, cands[q].o, k) +
                         p.alpha * cands[q].stitches;
                int r2 = row_base[0] + q;
                if (c < dist[r2][k2]) {
                    dist[r2][k2] = c;
                    par[r2][k2] = {0, k};
                }
            }
        }
        for (int i = 1; i < n; ++i) {
            auto& cands = p.cells[i].cands;
            for (int q = 0; q < (int)cands.size(); ++q) {
                for (auto& cls : classes[i][q]) {
                    int pos = k + cls.spacing;
                    int k2 = pos + p.cells[i].width_sites;
                    if (k2 > m) continue;
                    Cost best = kInfCost;
                    int best_p = -1;
                    for (int pr : cls.preds) {
                        Cost d = dist[row_base[i - 1] + pr][k];
                        if (d < best) {
                            best = d;
                            best_p = pr;
                        }
                    }
                    if (best >= kInfCost) continue;
                    ++relax;
                    Cost c = best + cm.commit_charge(i, cands[q].o, pos) +
                             p.alpha * cands[q].stitches;
                    int r2 = row_base[i] + q;
                    if (c < dist[r2][k2]) {
                        dist[r2][k2] = c;
                        par[r2][k2] = {row_base[i - 1] + best_p, k};
                    }
                }
            }
        }
    }

    // Ending edges from column m.
    Cost best = dist[0][m] + (dist[0][m] < kInfCost ? Cost(n) * M : 0);
    int best_r = 0;
    for (int i = 0; i < n; ++i)
        for (int q = 0; q < (int)p.cells[i].cands.size(); ++q) {
            int r = row_base[i] + q;
            ++relax;
            if (dist[r][m] >= kInfCost) continue;
            Cost c = dist[r][m] + Cost(n - 1 - i) * M;
            if (c < best) {
                best = c;
                best_r = r;
            }
        }
    if (best >= kInfCost) throw UnsolvableRowError("no s-t path in row model");

    // Decode the path.
    int placed_n = 0;
    for (int i = 0; i < n; ++i)
        if (best_r >= row_base[i] && best_r < row_base[i] + (int)p.cells[i].cands.size())
            placed_n = i + 1;
    out.placed.resize(placed_n);
    int r = best_r, k = m;
    int cell = placed_n - 1;
    while (r != 0 || k != 0) {
        Parent pp = par[r][k];
        if (pp.r != r) { // diagonal: cell committed at column k with row r
            int q = r - row_base[cell];
            out.placed[cell] = {k - p.cells[cell].width_sites, q};
            --cell;
        }
        r = pp.r;
        k = pp.k;
    }
    out.cost = best;
    out.relax = relax;
    return out;
}

// First stage of the speedup: color assignment on the layered candidate
// graph. Edge cost is alpha*stitches of the entered candidate plus the LUT
// spacing (in units) against the predecessor.
inline std::vector<int> color_assign_stage1(const RowProblem& p, const DecomposabilityLUT& lut,
                                            long long* relax_out = nullptr) {
    int n = (int)p.cells.size();
    std::vector<int> choice(n, 0);
    long long relax = 0;
    if (n == 0) {
        if (relax_out) *relax_out = 0;
        return choice;
    }
    for (auto& c : p.cells)
        if (c.cands.empty())
            throw UnsolvableRowError("cell " + std::to_string(c.inst_id) +
                                     " has no pre-coloring solution");

    std::vector<std::vector<Cost>> dist(n);
    std::vector<std::vector<int>> par(n);
    for (int i = 0; i < n; ++i) {
        dist[i].assign(p.cells[i].cands.size(), kInfCost);
        par[i].assign(p.cells[i].cands.size(), -1);
    }
    for (int q = 0; q < (int)p.cells[0].cands.size(); ++q) {
        ++relax;
        dist[0][q] = p.alpha * p.cells[0].cands[q].stitches;
    }
    for (int i = 1; i < n; ++i)
        for (int q = 0; q < (int)p.cells[i].cands.size(); ++q)
            for (int pr = 0; pr < (int)p.cells[i - 1].cands.size(); ++pr) {
                ++relax;
                int sp = lut.spacing_of(p.cells[i - 1].cands[pr].lut_var,
                                        p.cells[i].cands[q].lut_var);
                Cost c = dist[i - 1][pr] + p.alpha * p.cells[i].cands[q].stitches +
                         Cost(sp) * p.site_width;
                if (c < dist[i][q]) {
                    dist[i][q] = c;
                    par[i][q] = pr;
                }
            }
    int best_q = 0;
    for (int q = 1; q < (int)p.cells[n - 1].cands.size(); ++q)
        if (dist[n - 1][q] < dist[n - 1][best_q]) best_q = q;
    for (int i = n - 1; i >= 0; --i) {
        choice[i] = best_q;
        best_q = par[i][best_q];
    }
    if (relax_out) *relax_out = relax;
    return choice;
}

// Second stage: classic OSR with the chosen candidates frozen and cell widths
// inflated by the LUT spacing against the predecessor. One DP row per cell,
// so relaxations scale with m*n.
inline RowSolution osr_place_fixed(const RowProblem& p, const DecomposabilityLUT& lut,
                                   const std::vector<int>& choice) {
    int n = (int)p.cells.size();
    RowSolution out;
    if (n == 0) return out;
    RowCostModel cm(p);
    Cost M = cm.big_m();
    int m = p.m;

    std::vector<int> gap(n, 0); // extra sites in front of each cell
    for (int i = 1; i < n; ++i)
        gap[i] = lut.spacing_of(p.cells[i - 1].cands[choice[i - 1]].lut_var,
                                p.cells[i].cands[choice[i]].lut_var);

    int rows = n + 1;
    std::vector<std::vector<Cost>> dist(rows, std::vector<Cost>(m + 1, kInfCost));
    struct Parent {
        int r = -1, k = -1;
    };
    std::vector<std::vector<Parent>> par(rows, std::vector<Parent>(m + 1));
    dist[0][0] = 0;
    long long relax = 0;

    for (int k = 0; k <= m; ++k) {
        for (int r = 0; r < rows; ++r)
            if (k > 0) {
                ++relax;
                if (dist[r][k - 1] < dist[r][k]) {
                    dist[r][k] = dist[r][k - 1];
                    par[r][k] = {r, k - 1};
                }
            }
        for (int i = 0; i < n; ++i) {
            if (dist[i][k] >= kInfCost) continue;
            int pos = k + gap[i];
            int k2 = pos + p.cells[i].width_sites;
            if (k2 > m) continue;
            ++relax;
            const Candidate& cd = p.cells[i].cands[choice[i]];
            Cost c = dist[i][k] + cm.commit_charge(i, cd.o, pos) + p.alpha * cd.stitches;
            if (c < dist[i + 1][k2]) {
                dist[i + 1][k2] = c;
                par[i + 1][k2] = {i, k};
            }
        }
    }

    Cost best = kInfCost;
    int best_r = 0;
    for (int r = 0; r < rows; ++r) {
        ++relax;
        if (dist[r][m] >= kInfCost) continue;
        Cost c = dist[r][m] + Cost(n - r) * M;
        if (c < best) {
            best = c;
            best_r = r;
        }
    }
    if (best >= kInfCost) throw UnsolvableRowError("no s-t path in fixed-color row model");

    out.placed.resize(best_r);
    int r = best_r, k = m;
    while (r != 0 || k != 0) {
        Parent pp = par[r][k];
        if (pp.r != r) out.placed[r - 1] = {k - p.cells[r - 1].width_sites, choice[r - 1]};
        r = pp.r;
        k = pp.k;
    }
    out.cost = best;
    out.relax = relax;
    return out;
}

inline RowSolution tpl_osr_two_stage(const RowProblem& p, const DecomposabilityLUT& lut) {
    long long relax1 = 0;
    auto choice = color_assign_stage1(p, lut, &relax1);
    RowSolution sol = osr_place_fixed(p, lut, choice);
    sol.relax_color = relax1;
    sol.relax_place = sol.relax;
    sol.relax += relax1;
    return sol;
}

struct RowCheck {
    bool ok = true;
    int violating_cell = -1; // the right cell of the first bad pair
};

// Decomposability of a placed, colored row: every consecutive pair must leave
// at least the LUT spacing. Equivalent to s-t reachability in the stage-1
// graph restricted to the chosen candidates and actual gaps.
inline RowCheck check_row_decomposable(const RowProblem& p, const RowSolution& sol,
                                       const DecomposabilityLUT& lut) {
    for (size_t i = 0; i < sol.placed.size(); ++i) {
        auto& pc = sol.placed[i];
        if (pc.x < 0 || pc.x + p.cells[i].width_sites > p.m) return {false, (int)i};
        if (i == 0) continue;
        auto& prev = sol.placed[i - 1];
        int need = lut.spacing_of(p.cells[i - 1].cands[prev.cand].lut_var,
                                  p.cells[i].cands[pc.cand].lut_var);
        if (prev.x + p.cells[i - 1].width_sites + need > pc.x) return {false, (int)i};
    }
    return {};
}

// Orientation perturbation at fixed positions: DP over cells x candidates,
// feasibility limited by the actual gaps. Never returns a worse selection
// than the input.
inline RowSolution perturb_orientations(const RowProblem& p, const RowSolution& in,
                                        const DecomposabilityLUT& lut) {
    int n = (int)in.placed.size();
    if (n == 0) return in;
    RowCostModel cm(p);

    auto selection_cost = [&](const std::vector<int>& choice) {
        Cost c = 0;
        for (int i = 0; i < n; ++i) {
            const Candidate& cd = p.cells[i].cands[choice[i]];
            c += cm.commit_charge(i, cd.o, in.placed[i].x) + p.alpha * cd.stitches;
        }
        return c;
    };

    std::vector<std::vector<Cost>> dist(n);
    std::vector<std::vector<int>> par(n);
    for (int i = 0; i < n; ++i) {
        dist[i].assign(p.cells[i].cands.size(), kInfCost);
        par[i].assign(p.cells[i].cands.size(), -1);
    }
    for (int q = 0; q < (int)p.cells[0].cands.size(); ++q) {
        const Candidate& cd = p.cells[0].cands[q];
        dist[0][q] = cm.commit_charge(0, cd.o, in.placed[0].x) + p.alpha * cd.stitches;
    }
    for (int i = 1; i < n; ++i) {
        int gap_sites = in.placed[i].x - (in.placed[i - 1].x + p.cells[i - 1].width_sites);
        for (int q = 0; q < (int)p.cells[i].cands.size(); ++q) {
            const Candidate& cd = p.cells[i].cands[q];
            Cost step = cm.commit_charge(i, cd.o, in.placed[i].x) + p.alpha * cd.stitches;
            for (int pr = 0; pr < (int)p.cells[i - 1].cands.size(); ++pr) {
                if (dist[i - 1][pr] >= kInfCost) continue;
                if (lut.spacing_of(p.cells[i - 1].cands[pr].lut_var, cd.lut_var) > gap_sites)
                    continue;
                Cost c = dist[i - 1][pr] + step;
                if (c < dist[i][q]) {
                    dist[i][q] = c;
                    par[i][q] = pr;
                }
            }
        }
    }
    int best_q = -1;
    for (int q = 0; q < (int)p.cells[n - 1].cands.size(); ++q)
        if (dist[n - 1][q] < kInfCost && (best_q < 0 || dist[n - 1][q] < dist[n - 1][best_q]))
            best_q = q;
    if (best_q < 0) return in; // input row infeasible, nothing we can do here

    std::vector<int> choice(n);
    for (int i = n - 1; i >= 0; --i) {
        choice[i] = best_q;
        best_q = par[i][best_q];
    }

    std::vector<int> cur(n);
    for (int i = 0; i < n; ++i) cur[i] = in.placed[i].cand;
    bool cur_feasible = check_row_decomposable(p, in, lut).ok;
    if (cur_feasible && selection_cost(cur) <= selection_cost(choice)) return in;

    RowSolution out = in;
    for (int i = 0; i < n; ++i) out.placed[i].cand = choice[i];
    out.cost = selection_cost(choice);
    return out;
}

} // namespace tplkit

#endif
