#ifndef TPLKIT_PLACER_HPP
#define TPLKIT_PLACER_HPP

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "tplkit/design.hpp"
#include "tplkit/osr.hpp"

namespace tplkit {

enum class Engine { TwoStage, Optimal };

struct PlacerConfig {
    Cost alpha = 10;
    double epsilon_rel = 0.005; // "no significant improvement"
    int max_sweeps = 5;
    Engine engine = Engine::TwoStage;
};

struct PlaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PlaceStats {
    int sweeps = 0;
    long long relax = 0, relax_color = 0, relax_place = 0;
    Cost objective = 0;
};

enum class RowState { FREE, BUSY };

// Row problem for the current state of one design row. External net pins
// (other rows, FIX) enter as a fixed x-bbox.
inline RowProblem build_row_problem(const Design& d, const ColoredLibrary& lib,
                                    const DecomposabilityLUT& lut, int row_idx, Cost alpha) {
    const DesignRow& row = d.rows[row_idx];
    RowProblem p;
    p.m = row.m;
    p.alpha = alpha;
    p.site_width = d.tech.site_width;

    std::vector<int> cell_of_inst(d.instances.size(), -1);
    for (int k = 0; k < (int)row.insts.size(); ++k) {
        int id = row.insts[k];
        const Instance& inst = d.instances[id];
        const CellMaster& m = lib.masters[inst.master];
        RowCell c;
        c.inst_id = id;
        c.master = inst.master;
        c.width_sites = m.width_sites;
        c.width_units = m.width_units(d.tech);
        for (Orientation o : {Orientation::N, Orientation::FN}) {
            auto& sols = lib.pre[inst.master].at(o).solutions;
            for (int s = 0; s < (int)sols.size(); ++s)
                c.cands.push_back({o, s, sols[s].stitch_count,
                                   lut.index(inst.master, o, s)});
        }
        cell_of_inst[id] = k;
        p.cells.push_back(std::move(c));
    }

    for (auto& n : d.nets) {
        RowNet rn;
        Unit flo = 0, fhi = 0;
        bool have = false;
        auto add_fix = [&](Unit x) {
            if (!have) {
                flo = fhi = x;
                have = true;
            } else {
                flo = std::min(flo, x);
                fhi = std::max(fhi, x);
            }
        };
        for (auto& pin : n.pins) {
            int c = cell_of_inst[pin.inst];
            if (c >= 0) {
                const CellMaster& m = lib.masters[d.instances[pin.inst].master];
                rn.pins.push_back({c, m.pin_offset(pin.pin)});
            } else {
                add_fix(pin_x(d, lib.masters, pin));
            }
        }
        for (auto& [x, y] : n.fixed) add_fix(x);
        if (rn.pins.empty()) continue;
        rn.has_fixed = have;
        rn.fix_lo = flo;
        rn.fix_hi = fhi;
        p.nets.push_back(std::move(rn));
    }
    return p;
}

// Write the placed prefix back; returns the unplaced suffix (instance ids).
inline std::vector<int> apply_row_solution(Design& d, int row_idx, const RowProblem& p,
                                           const RowSolution& sol) {
    std::vector<int> unplaced;
    for (size_t i = 0; i < p.cells.size(); ++i) {
        int id = p.cells[i].inst_id;
        if (i < sol.placed.size()) {
            const Candidate& cd = p.cells[i].cands[sol.placed[i].cand];
            d.instances[id].x = sol.placed[i].x;
            d.instances[id].orient = cd.o;
            d.instances[id].sol = cd.sol;
        } else {
            unplaced.push_back(id);
        }
    }
    (void)row_idx;
    return unplaced;
}

inline Cost objective(const Design& d, const ColoredLibrary& lib, Cost alpha) {
    return Cost(hpwl(d, lib.masters)) + alpha * total_stitches(d, lib);
}

// HPWL-optimal relocation of one cell into a FREE row. Feasibility: the row
// (excluding the source row) must have slack for the cell's base width; every
// site x in [0, m-w] is scanned. Ties go to the lowest row index, lowest x.
inline std::pair<int, int> global_move(Design& d, const ColoredLibrary& lib, int inst_id,
                                       const std::vector<RowState>& state, int exclude_row) {
    Instance& inst = d.instances[inst_id];
    const CellMaster& master = lib.masters[inst.master];
    int w = master.width_sites;

    std::vector<int> my_nets;
    for (int n = 0; n < (int)d.nets.size(); ++n)
        for (auto& pin : d.nets[n].pins)
            if (pin.inst == inst_id) {
                my_nets.push_back(n);
                break;
            }

    Unit best_cost = 0;
    int best_row = -1, best_x = 0;
    for (int r = 0; r < (int)d.rows.size(); ++r) {
        if (r == exclude_row || state[r] != RowState::FREE) continue;
        int used = 0;
        for (int id : d.rows[r].insts) used += lib.masters[d.instances[id].master].width_sites;
        if (used + w > d.rows[r].m) continue;
        for (int x = 0; x + w <= d.rows[r].m; ++x) {
            Unit cost = 0;
            for (int n : my_nets) {
                const Net& net = d.nets[n];
                Unit xlo = 0, xhi = 0, ylo = 0, yhi = 0;
                bool first = true;
                auto add = [&](Unit px, Unit py) {
                    if (first) {
                        xlo = xhi = px;
                        ylo = yhi = py;
                        first = false;
                    } else {
                        xlo = std::min(xlo, px);
                        xhi = std::max(xhi, px);
                        ylo = std::min(ylo, py);
                        yhi = std::max(yhi, py);
                    }
                };
                for (auto& pin : net.pins) {
                    if (pin.inst == inst_id) {
                        Unit off = master.pin_offset(pin.pin);
                        if (inst.orient == Orientation::FN)
                            off = master.width_units(d.tech) - off;
                        add(Unit(x) * d.tech.site_width + off,
                            d.rows[r].y + master.height / 2);
                    } else {
                        add(pin_x(d, lib.masters, pin), row_center_y(d, lib.masters, pin.inst));
                    }
                }
                for (auto& [px, py] : net.fixed) add(px, py);
                cost += (xhi - xlo) + (yhi - ylo);
            }
            if (best_row < 0 || cost < best_cost) {
                best_cost = cost;
                best_row = r;
                best_x = x;
            }
        }
    }
    if (best_row < 0)
        throw PlaceError("global move: no FREE row has capacity for instance " +
                         std::to_string(inst_id));

    auto& src = d.rows[inst.row].insts;
    src.erase(std::find(src.begin(), src.end(), inst_id));
    inst.row = best_row;
    inst.x = best_x;
    auto& dst = d.rows[best_row].insts;
    auto it = std::find_if(dst.begin(), dst.end(),
                           [&](int id) { return d.instances[id].x > best_x; });
    dst.insert(it, inst_id);
    return {best_row, best_x};
}

// The detailed placement loop: per sweep, rows are solved in occupancy order
// (most cells first); overflow cells are globally moved to FREE rows and the
// shortened row is re-legalized with its colors frozen; sweeps stop on small
// relative improvement or when a sweep fails to improve (rolled back).
inline PlaceStats detailed_place(Design& d, const ColoredLibrary& lib,
                                 const DecomposabilityLUT& lut, const PlacerConfig& cfg) {
    PlaceStats stats;
    auto solve = [&](const RowProblem& p) {
        return cfg.engine == Engine::Optimal ? tpl_osr_optimal(p, lut)
                                             : tpl_osr_two_stage(p, lut);
    };

    Design best = d;
    Cost best_obj = 0;
    bool have_best = false;

    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        std::vector<RowState> state(d.rows.size(), RowState::FREE);
        std::vector<int> order(d.rows.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return d.rows[a].insts.size() > d.rows[b].insts.size();
        });

        for (int r : order) {
            RowProblem p = build_row_problem(d, lib, lut, r, cfg.alpha);
            RowSolution sol = solve(p);
            stats.relax += sol.relax;
            stats.relax_color += sol.relax_color;
            stats.relax_place += sol.relax_place;
            auto unplaced = apply_row_solution(d, r, p, sol);

            if (!unplaced.empty()) {
                std::vector<int> kept_choice;
                for (auto& pc : sol.placed) kept_choice.push_back(pc.cand);
                for (int id : unplaced) global_move(d, lib, id, state, r);
                // Re-legalize the shortened row with assigned colors frozen.
                RowProblem p2 = build_row_problem(d, lib, lut, r, cfg.alpha);
                std::vector<int> choice;
                for (size_t i = 0; i < p2.cells.size(); ++i) {
                    const Instance& inst = d.instances[p2.cells[i].inst_id];
                    for (int q = 0; q < (int)p2.cells[i].cands.size(); ++q)
                        if (p2.cells[i].cands[q].o == inst.orient &&
                            p2.cells[i].cands[q].sol == inst.sol)
                            choice.push_back(q);
                }
                RowSolution re = osr_place_fixed(p2, lut, choice);
                stats.relax += re.relax;
                stats.relax_place += re.relax;
                auto still = apply_row_solution(d, r, p2, re);
                if (!still.empty())
                    throw PlaceError("row " + std::to_string(r) +
                                     " infeasible after global moving");
            }
            state[r] = RowState::BUSY;
        }

        ++stats.sweeps;
        Cost obj = objective(d, lib, cfg.alpha);
        if (!have_best || obj < best_obj) {
            double rel = have_best && best_obj > 0
                             ? double(best_obj - obj) / double(best_obj)
                             : 1.0;
            best = d;
            best_obj = obj;
            have_best = true;
            if (rel < cfg.epsilon_rel) break;
        } else {
            d = best; // non-improving sweep: roll back
            break;
        }
    }
    d = best;
    stats.objective = best_obj;
    return stats;
}

struct GreedyResult {
    bool feasible = true;
    Design design;
    int failed_row = -1, failed_inst = -1;
    std::string message;
};

// Right-shift-only baseline: left to right, each cell takes the first
// (orientation, solution) with minimal immediate alpha*stitch + spacing cost
// against its already-fixed left neighbor, then sits at the first legal site
// at or right of its current position.
inline GreedyResult greedy_baseline(const Design& in, const ColoredLibrary& lib,
                                    const DecomposabilityLUT& lut, Cost alpha) {
    GreedyResult res;
    res.design = in;
    Design& d = res.design;
    for (int r = 0; r < (int)d.rows.size(); ++r) {
        int prev_var = -1;
        int prev_end = 0;
        for (int id : d.rows[r].insts) {
            Instance& inst = d.instances[id];
            const CellMaster& m = lib.masters[inst.master];
            int best_q = -1, best_sp = 0;
            Cost best_cost = 0;
            int q = 0;
            for (Orientation o : {Orientation::N, Orientation::FN}) {
                auto& sols = lib.pre[inst.master].at(o).solutions;
                for (int s = 0; s < (int)sols.size(); ++s, ++q) {
                    int var = lut.index(inst.master, o, s);
                    int sp = prev_var < 0 ? 0 : lut.spacing_of(prev_var, var);
                    Cost c = alpha * sols[s].stitch_count + Cost(sp) * d.tech.site_width;
                    if (best_q < 0 || c < best_cost) {
                        best_q = q;
                        best_cost = c;
                        best_sp = sp;
                        inst.orient = o;
                        inst.sol = s;
                    }
                }
            }
            int x = std::max(inst.x, prev_end + (prev_var < 0 ? 0 : best_sp));
            if (x + m.width_sites > d.rows[r].m) {
                res.feasible = false;
                res.failed_row = r;
                res.failed_inst = id;
                res.message = "row " + std::to_string(r) + ": instance " + std::to_string(id) +
                              " pushed past row end";
                return res;
            }
            inst.x = x;
            prev_end = x + m.width_sites;
            prev_var = lut.index(inst.master, inst.orient, inst.sol);
        }
    }
    return res;
}

} // namespace tplkit

#endif
