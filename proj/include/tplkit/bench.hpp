#ifndef TPLKIT_BENCH_HPP
#define TPLKIT_BENCH_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tplkit/compliance.hpp"
#include "tplkit/design.hpp"

namespace tplkit {

struct BenchSpec {
    std::uint64_t seed = 1;
    int num_rows = 10;
    int sites_per_row = 200;
    double utilization = 0.9;
    double hot_fraction = 0.6; // share of boundary-hot picks
    int num_nets = -1;         // default: ~1.2 per instance
    int max_pins = 4;
    double row_spread = 0.07; // per-row utilization ramp around the target
};

namespace benchlib {

inline Rect mk(Layer l, Unit x0, Unit y0, Unit x1, Unit y1) { return {l, x0, y0, x1, y1}; }

inline CellMaster base(const std::string& name, int ws, const TechParams& t) {
    CellMaster m;
    m.name = name;
    m.width_sites = ws;
    m.height = 40;
    Unit w = m.width_units(t);
    m.features.push_back(mk(Layer::RAIL, 0, 0, w, 4));
    m.features.push_back(mk(Layer::RAIL, 0, 36, w, 40));
    m.pin_offsets = {{"A", 4}, {"Y", w - 4}};
    return m;
}

// Interior-only wires: every fragment immune, single pre-coloring solution,
// zero LUT spacing against anything.
inline CellMaster clean_cell(int ws, const TechParams& t) {
    CellMaster m = base("clean_" + std::to_string(ws), ws, t);
    Unit c = m.width_units(t) / 2;
    m.features.push_back(mk(Layer::M1, c - 5, 6, c - 3, 20));
    m.features.push_back(mk(Layer::M1, c + 3, 6, c + 5, 20));
    return m;
}

// Rail-locked wire pairs hugging both vertical boundaries: abutting two such
// cells at gap 0 has no legal coloring, so every LUT pair costs one site.
inline CellMaster hot_cell(int ws, const TechParams& t) {
    CellMaster m = base("hot_" + std::to_string(ws), ws, t);
    Unit w = m.width_units(t);
    m.features.push_back(mk(Layer::M1, 1, 6, 3, 30));
    m.features.push_back(mk(Layer::M1, 5, 6, 7, 30));
    m.features.push_back(mk(Layer::M1, w - 7, 6, w - 5, 30));
    m.features.push_back(mk(Layer::M1, w - 3, 6, w - 1, 30));
    return m;
}

// Boundary wires bridged by a rail-adjacent interior wire with one stitch
// candidate: half its solutions carry a stitch.
inline CellMaster stitchy_cell(const TechParams& t) {
    CellMaster m = base("stitchy_10", 10, t);
    m.features.push_back(mk(Layer::M1, 1, 6, 3, 30));
    m.features.push_back(mk(Layer::M1, 77, 6, 79, 30));
    m.features.push_back(mk(Layer::M1, 11, 8, 69, 10));
    return m;
}

// Clean cell plus a 2x2 contact grid whose pitch makes an indecomposable
// 4-clique; the bottom pair touches the ground rail (hex repair CASE1 target).
inline CellMaster clique_cell_raw(const TechParams& t) {
    CellMaster m = base("clique_10", 10, t);
    Unit c = m.width_units(t) / 2;
    m.features.push_back(mk(Layer::M1, c - 21, 6, c - 19, 20));
    m.features.push_back(mk(Layer::M1, c - 13, 6, c - 11, 20));
    m.features.push_back(mk(Layer::CONTACT, 48, 4, 50, 6));
    m.features.push_back(mk(Layer::CONTACT, 54, 4, 56, 6));
    m.features.push_back(mk(Layer::CONTACT, 48, 10, 50, 12));
    m.features.push_back(mk(Layer::CONTACT, 54, 10, 56, 12));
    return m;
}

} // namespace benchlib

// The benchmark library: clean widths 4/5/6, hot 6/8, the stitchable cell,
// and the clique cell shipped post-repair so it is placeable.
inline std::vector<CellMaster> bench_library(const TechParams& t, bool with_hot = true) {
    std::vector<CellMaster> lib;
    lib.push_back(benchlib::clean_cell(4, t));
    lib.push_back(benchlib::clean_cell(5, t));
    lib.push_back(benchlib::clean_cell(6, t));
    lib.push_back(hex_pack_repair(benchlib::clique_cell_raw(t), RepairOption::CASE1, t));
    if (with_hot) {
        lib.push_back(benchlib::hot_cell(6, t));
        lib.push_back(benchlib::hot_cell(8, t));
        lib.push_back(benchlib::stitchy_cell(t));
    }
    for (auto& m : lib) validate_master(m, t);
    return lib;
}

struct BenchOutput {
    std::vector<CellMaster> masters;
    Design design;
};

// Deterministic synthetic benchmark. Rows are filled to individually ramped
// utilization targets (heavier rows first in the ramp) so dense designs have
// overfull rows for Global Moving to drain; total width lands within 2% of
// the requested utilization. All randomness comes from the raw mt19937_64
// stream, which is portable, so equal seeds give byte-identical files.
inline BenchOutput gen_bench(const BenchSpec& spec, const TechParams& t) {
    if (spec.utilization > 1.0) throw std::invalid_argument("utilization > 1");
    if (spec.num_rows <= 0 || spec.sites_per_row <= 0)
        throw std::invalid_argument("empty benchmark grid");

    BenchOutput out;
    out.masters = bench_library(t, spec.hot_fraction > 0.0);
    std::vector<int> clean_ids, hot_ids;
    for (int i = 0; i < (int)out.masters.size(); ++i)
        (out.masters[i].name.rfind("hot_", 0) == 0 || out.masters[i].name.rfind("stitchy", 0) == 0
             ? hot_ids
             : clean_ids)
            .push_back(i);

    Design& d = out.design;
    d.tech = t;
    Unit pitch = 40 + effective_drow(t);
    for (int r = 0; r < spec.num_rows; ++r)
        d.rows.push_back({Unit(r) * pitch, spec.sites_per_row, {}});

    std::mt19937_64 rng(spec.seed);
    auto pick = [&](const std::vector<int>& ids) { return ids[rng() % ids.size()]; };

    for (int r = 0; r < spec.num_rows; ++r) {
        double ramp = spec.num_rows > 1 ? 2.0 * r / (spec.num_rows - 1) - 1.0 : 0.0;
        double u = spec.utilization + spec.row_spread * ramp;
        int target = (int)(u * spec.sites_per_row + 0.5);
        int cur = 0;
        while (true) {
            bool hot = !hot_ids.empty() && (rng() % 1000) < (std::uint64_t)(spec.hot_fraction * 1000);
            int master = pick(hot ? hot_ids : clean_ids);
            if (cur + out.masters[master].width_sites > target) {
                // close the gap with the widest master that still fits
                int alt = -1;
                for (int i = 0; i < (int)out.masters.size(); ++i)
                    if (cur + out.masters[i].width_sites <= target &&
                        (alt < 0 || out.masters[i].width_sites > out.masters[alt].width_sites))
                        alt = i;
                if (alt < 0) break;
                master = alt;
            }
            Instance inst;
            inst.id = (int)d.instances.size();
            inst.master = master;
            inst.row = r;
            d.rows[r].insts.push_back(inst.id);
            d.instances.push_back(inst);
            cur += out.masters[master].width_sites;
        }
    }
    initial_place(d, out.masters);

    int n_inst = (int)d.instances.size();
    int n_nets = spec.num_nets >= 0 ? spec.num_nets : n_inst + n_inst / 5;
    Unit chip_w = Unit(spec.sites_per_row) * t.site_width;
    Unit chip_h = Unit(spec.num_rows) * pitch;
    for (int n = 0; n < n_nets && n_inst > 1; ++n) {
        Net net;
        net.id = n;
        int pins = 2 + (int)(rng() % (std::uint64_t)std::max(1, spec.max_pins - 1));
        for (int k = 0; k < pins; ++k) {
            int inst = (int)(rng() % (std::uint64_t)n_inst);
            net.pins.push_back({inst, (rng() % 2) ? "Y" : "A"});
        }
        if (rng() % 5 == 0)
            net.fixed.emplace_back(Unit(rng() % (std::uint64_t)chip_w),
                                   Unit(rng() % (std::uint64_t)chip_h));
        d.nets.push_back(std::move(net));
    }
    return out;
}

} // namespace tplkit

#endif
