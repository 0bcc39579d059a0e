#ifndef TPLKIT_TESTS_FIXTURES_HPP
#define TPLKIT_TESTS_FIXTURES_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tplkit/celllib.hpp"
#include "tplkit/lut.hpp"
#include "tplkit/osr.hpp"

namespace fixtures {

using namespace tplkit;

// Empty cell with the two power rails in place.
inline CellMaster bare_cell(const std::string& name, int ws, const TechParams& t) {
    CellMaster m;
    m.name = name;
    m.width_sites = ws;
    m.height = 40;
    Unit w = m.width_units(t);
    m.features.push_back({Layer::RAIL, 0, 0, w, 2 * t.w_min});
    m.features.push_back({Layer::RAIL, 0, 40 - 2 * t.w_min, w, 40});
    m.pin_offsets = {{"A", 4}, {"Y", w - 4}};
    return m;
}

// A two-input-gate-like cell calibrated so that, with the default tech
// (w_min = s_min = 2, d_min = 10):
//   - exactly 5 stitch candidates are generated,
//   - the SCG enumerates exactly 24 assignments,
//   - verification at maxS=1 keeps 8 solutions (4 with 0 stitches, 4 with 1),
//     and at maxS=0 keeps 4.
// The layout: two rail-adjacent left wires L/R and a vertical bridge H1 with
// one cut; two chains of short links carry the fragment colors across the
// cell to a bottom-right wire E and a free wire X, so exactly one of E's two
// colors and two of X's three survive per (L, R) choice. Links are pitched so
// consecutive links conflict but next-nearest ones sit exactly d_min apart.
inline CellMaster and2x1_like_master() {
    TechParams t; // defaults
    CellMaster m = bare_cell("AND2X1", 10, t);
    auto R = [&](Layer l, Unit a, Unit b, Unit c, Unit d) {
        m.features.push_back({l, a, b, c, d});
    };
    R(Layer::M1, 1, 6, 3, 14);    // L  (bottom-left, rail-locked to {2,3})
    R(Layer::M1, 1, 26, 3, 34);   // R  (top-left, rail-locked to {2,3})
    R(Layer::M1, 77, 6, 79, 12);  // E  (bottom-right, rail-locked to {2,3})
    R(Layer::M1, 70, 22, 78, 24); // X  (right, color free)
    R(Layer::M1, 12, 8, 14, 30);  // H1 (bridge with the single vertical cut)
    // bottom chain: H1 lower fragment -> E
    for (Unit x : {18, 24, 30, 36, 42, 48, 54, 60, 66}) R(Layer::M1, x, 6, x + 2, 9);
    // top chain: H1 upper fragment -> d1 -> X
    for (Unit x : {17, 24, 30, 36, 42, 48, 54, 60}) R(Layer::M1, x, 31, x + 2, 34);
    R(Layer::M1, 66, 25, 68, 28); // d1
    // interior wires with one stitch candidate each (never profitably stitched)
    R(Layer::M1, 24, 14, 30, 16);
    R(Layer::M1, 40, 14, 46, 16);
    R(Layer::M1, 56, 14, 62, 16);
    R(Layer::M1, 24, 19, 30, 21);
    return m;
}

// Random small cell whose CG stays at or below `max_vertices`: a handful of
// short wires dropped into a narrow cell. Geometry is kept on even
// coordinates so fragments stay DRC-plausible.
inline CellMaster random_small_cell(std::mt19937_64& rng, const TechParams& t,
                                    int max_vertices) {
    for (int attempt = 0;; ++attempt) {
        int ws = 3 + int(rng() % 3); // 3..5 sites
        CellMaster m = bare_cell("rnd", ws, t);
        Unit w = m.width_units(t);
        int wires = 2 + int(rng() % 4); // 2..5
        for (int i = 0; i < wires; ++i) {
            bool horiz = rng() % 2;
            Unit x0, y0, x1, y1;
            if (horiz) {
                Unit len = 4 + Unit(rng() % 8) * 2;
                x0 = 1 + Unit(rng() % std::max<Unit>(1, (w - len - 1) / 2)) * 2;
                x1 = x0 + len;
                y0 = 6 + Unit(rng() % 12) * 2;
                y1 = y0 + 2;
            } else {
                Unit len = 4 + Unit(rng() % 8) * 2;
                y0 = 6 + Unit(rng() % 5) * 2;
                y1 = y0 + len;
                x0 = 1 + Unit(rng() % ((w - 3) / 2)) * 2;
                x1 = x0 + 2;
            }
            if (x1 > w - 1 || y1 > 34) continue;
            m.features.push_back({Layer::M1, x0, y0, x1, y1});
        }
        auto cg = build_cg(m, t);
        if ((int)cg.vertices.size() <= max_vertices && m.features.size() > 2) return m;
        if (attempt > 200) return bare_cell("rnd", 3, t); // rails only, |V|=2
    }
}

// Synthetic LUT with `nv` variants and random spacings in [0, max_spacing];
// lets row-engine tests control K directly.
inline DecomposabilityLUT synthetic_lut(std::mt19937_64& rng, int nv, int max_spacing,
                                        int max_stitches) {
    DecomposabilityLUT lut;
    lut.d_min = 10;
    lut.site_width = 8;
    lut.var_base = {0};
    for (int v = 0; v < nv; ++v)
        lut.variants.push_back({0, v % 2 ? Orientation::FN : Orientation::N, v / 2,
                                int(rng() % (max_stitches + 1))});
    lut.spacing.assign(nv, std::vector<int>(nv, 0));
    for (int a = 0; a < nv; ++a)
        for (int b = 0; b < nv; ++b) lut.spacing[a][b] = int(rng() % (max_spacing + 1));
    return lut;
}

// Random ordered-row instance against a synthetic LUT.
inline RowProblem random_row_problem(std::mt19937_64& rng, const DecomposabilityLUT& lut,
                                     int n, int m, int K, int max_nets) {
    RowProblem p;
    p.m = m;
    p.alpha = 10;
    p.site_width = 8;
    int nv = lut.num_variants();
    for (int i = 0; i < n; ++i) {
        RowCell c;
        c.inst_id = i;
        c.master = 0;
        c.width_sites = 1 + int(rng() % 2);
        c.width_units = Unit(c.width_sites) * p.site_width;
        int k = 1 + int(rng() % K);
        for (int q = 0; q < k; ++q) {
            int var = int(rng() % nv);
            c.cands.push_back({lut.variants[var].o, lut.variants[var].sol,
                               lut.variants[var].stitches, var});
        }
        p.cells.push_back(std::move(c));
    }
    int nets = 1 + int(rng() % max_nets);
    for (int ni = 0; ni < nets; ++ni) {
        RowNet net;
        int pins = 1 + int(rng() % 3);
        for (int pi = 0; pi < pins; ++pi) {
            int cell = int(rng() % n);
            net.pins.push_back({cell, Unit(rng() % (p.cells[cell].width_units + 1))});
        }
        std::sort(net.pins.begin(), net.pins.end(),
                  [](const RowPin& a, const RowPin& b) { return a.cell < b.cell; });
        if (rng() % 2) {
            net.has_fixed = true;
            net.fix_lo = Unit(rng() % (Unit(m) * p.site_width));
            net.fix_hi = net.fix_lo + Unit(rng() % 40);
        }
        p.nets.push_back(std::move(net));
    }
    return p;
}

} // namespace fixtures

#endif
