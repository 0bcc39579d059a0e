#ifndef TPLKIT_LUT_HPP
#define TPLKIT_LUT_HPP

#include <cassert>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tplkit/precolor.hpp"

namespace tplkit {

// A cell library with pre-coloring solutions attached.
struct ColoredLibrary {
    TechParams tech;
    std::vector<CellMaster> masters;
    std::vector<PrecolorSet> pre; // parallel to masters

    int cell_index(const std::string& name) const {
        for (size_t i = 0; i < masters.size(); ++i)
            if (masters[i].name == name) return (int)i;
        throw std::runtime_error("no such cell: " + name);
    }
};

inline ColoredLibrary precolor_library(std::vector<CellMaster> masters, const TechParams& t,
                                       int maxS) {
    ColoredLibrary lib;
    lib.tech = t;
    lib.masters = std::move(masters);
    for (auto& m : lib.masters) lib.pre.push_back(precolor_cell(m, t, maxS));
    return lib;
}

constexpr int kIncompatible = -1;

// Minimum extra spacing, in sites, so that the left colored cell and the
// right colored cell have no cross-boundary conflict. Only fragments within
// d_min of the facing boundaries can interact, so offsets beyond
// ceil(d_min / site_width) always succeed.
inline int pair_spacing(const CellMaster& left_cell, const ColoringSolution& left,
                        const CellMaster& right_cell, const ColoringSolution& right,
                        const TechParams& t) {
    (void)right_cell;
    Unit d_min = derive_dmin(t);
    Unit wl = left_cell.width_units(t);
    int kmax = (int)((d_min + t.site_width - 1) / t.site_width);
    for (int k = 0; k <= kmax; ++k) {
        Unit x0 = wl + Unit(k) * t.site_width;
        bool clean = true;
        for (auto& a : left.right_profile) {
            for (auto& b : right.left_profile) {
                if (a.color != b.color) continue;
                if (!same_color_layer(a.rect.layer, b.rect.layer)) continue;
                if (a.is_rail && b.is_rail) continue; // rails merge into one wire
                Rect shifted = b.rect;
                shifted.x_lo += x0;
                shifted.x_hi += x0;
                if (within_conflict_range(a.rect, shifted, d_min)) {
                    clean = false;
                    break;
                }
            }
            if (!clean) break;
        }
        if (clean) return k;
    }
    assert(false && "spacing beyond d_min can never conflict");
    return kIncompatible;
}

// Pairwise decomposability table over every (cell, orientation, solution)
// variant in the library.
struct DecomposabilityLUT {
    struct Variant {
        int cell;
        Orientation o;
        int sol;
        int stitches;
    };

    Unit d_min = 0, site_width = 0;
    std::vector<Variant> variants;
    std::vector<int> var_base;        // per cell: first variant id
    std::vector<std::vector<int>> spacing; // [left variant][right variant], sites

    int num_variants() const { return (int)variants.size(); }

    int index(int cell, Orientation o, int sol) const {
        int v = var_base[cell];
        // variants of a cell are laid out N-solutions first, then FN
        for (; v < num_variants() && variants[v].cell == cell; ++v)
            if (variants[v].o == o && variants[v].sol == sol) return v;
        throw std::out_of_range("no such LUT variant");
    }

    int spacing_of(int left_var, int right_var) const { return spacing[left_var][right_var]; }
    int stitch_of(int var) const { return variants[var].stitches; }
};

inline DecomposabilityLUT build_lut(const ColoredLibrary& lib) {
    DecomposabilityLUT lut;
    lut.d_min = derive_dmin(lib.tech);
    lut.site_width = lib.tech.site_width;
    for (int c = 0; c < (int)lib.masters.size(); ++c) {
        lut.var_base.push_back(lut.num_variants());
        for (Orientation o : {Orientation::N, Orientation::FN}) {
            auto& sols = lib.pre[c].at(o).solutions;
            for (int s = 0; s < (int)sols.size(); ++s)
                lut.variants.push_back({c, o, s, sols[s].stitch_count});
        }
    }
    int nv = lut.num_variants();
    lut.spacing.assign(nv, std::vector<int>(nv, 0));
    for (int a = 0; a < nv; ++a)
        for (int b = 0; b < nv; ++b) {
            auto& va = lut.variants[a];
            auto& vb = lut.variants[b];
            lut.spacing[a][b] = pair_spacing(
                oriented(lib.masters[va.cell], va.o, lib.tech),
                lib.pre[va.cell].at(va.o).solutions[va.sol],
                oriented(lib.masters[vb.cell], vb.o, lib.tech),
                lib.pre[vb.cell].at(vb.o).solutions[vb.sol], lib.tech);
        }
    return lut;
}

inline void write_lut(std::ostream& out, const DecomposabilityLUT& lut,
                      const ColoredLibrary& lib) {
    out << "LUT d_min=" << lut.d_min << " site=" << lut.site_width << '\n';
    for (auto& v : lut.variants)
        out << "S " << lib.masters[v.cell].name << ' ' << orient_name(v.o) << ' ' << v.sol << ' '
            << v.stitches << '\n';
    for (int a = 0; a < lut.num_variants(); ++a)
        for (int b = 0; b < lut.num_variants(); ++b) {
            auto& va = lut.variants[a];
            auto& vb = lut.variants[b];
            out << "E " << lib.masters[va.cell].name << ' ' << orient_name(va.o) << ' ' << va.sol
                << ' ' << lib.masters[vb.cell].name << ' ' << orient_name(vb.o) << ' ' << vb.sol
                << ' ' << lut.spacing[a][b] << '\n';
        }
}

inline DecomposabilityLUT read_lut(std::istream& in, const ColoredLibrary& lib) {
    DecomposabilityLUT lut;
    std::string line;
    std::vector<std::tuple<int, Orientation, int, int>> svars;
    std::vector<std::tuple<std::string, std::string, int, std::string, std::string, int, int>> es;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string kw;
        if (!(ss >> kw)) continue;
        if (kw == "LUT") {
            std::string a, b;
            ss >> a >> b;
            lut.d_min = std::stoll(a.substr(a.find('=') + 1));
            lut.site_width = std::stoll(b.substr(b.find('=') + 1));
        } else if (kw == "S") {
            std::string cell, o;
            int sol, st;
            ss >> cell >> o >> sol >> st;
            svars.emplace_back(lib.cell_index(cell), orient_from_name(o), sol, st);
        } else if (kw == "E") {
            std::string lc, lo, rc, ro;
            int lp, rq, sp;
            ss >> lc >> lo >> lp >> rc >> ro >> rq >> sp;
            es.emplace_back(lc, lo, lp, rc, ro, rq, sp);
        }
    }
    int last_cell = -1;
    for (auto& [c, o, sol, st] : svars) {
        if (c != last_cell) {
            lut.var_base.push_back((int)lut.variants.size());
            last_cell = c;
        }
        lut.variants.push_back({c, o, sol, st});
    }
    int nv = lut.num_variants();
    lut.spacing.assign(nv, std::vector<int>(nv, 0));
    for (auto& [lc, lo, lp, rc, ro, rq, sp] : es) {
        int a = lut.index(lib.cell_index(lc), orient_from_name(lo), lp);
        int b = lut.index(lib.cell_index(rc), orient_from_name(ro), rq);
        lut.spacing[a][b] = sp;
    }
    return lut;
}

} // namespace tplkit

#endif
