#ifndef TPLKIT_DESIGN_HPP
#define TPLKIT_DESIGN_HPP

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tplkit/lut.hpp"

namespace tplkit {

struct Instance {
    int id = -1;
    int master = -1; // index into library
    int row = -1;
    int x = 0;                       // site index
    Orientation orient = Orientation::N;
    int sol = -1;                    // pre-coloring solution index, -1 = uncolored
};

struct DesignRow {
    Unit y = 0;
    int m = 0;                 // capacity in sites
    std::vector<int> insts;    // instance ids, left to right
};

struct NetPin {
    int inst;
    std::string pin;
};

struct Net {
    int id = -1;
    std::vector<NetPin> pins;
    std::vector<std::pair<Unit, Unit>> fixed; // chip-coordinate pins
};

struct Design {
    TechParams tech;
    std::vector<DesignRow> rows;
    std::vector<Instance> instances;
    std::vector<Net> nets;
};

// Design file format:
//   TECH <w_min> <s_min> <site_width>
//   ROW <y> <m>
//   INST <id> <cell> <row> <order-index>
//   NET <id> (<inst> <pin> | FIX <x> <y>)+
// '#' starts a comment. INST order within a row follows <order-index>.
inline Design parse_design(std::istream& in, const std::vector<CellMaster>& lib) {
    Design d;
    std::string line;
    int lineno = 0;
    std::vector<std::vector<std::pair<int, int>>> row_order; // per row: (order, inst)
    auto fail = [&](const std::string& msg) {
        throw ParseError("line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string kw;
        if (!(ss >> kw)) continue;
        if (kw == "TECH") {
            if (!(ss >> d.tech.w_min >> d.tech.s_min >> d.tech.site_width)) fail("malformed TECH");
        } else if (kw == "ROW") {
            DesignRow r;
            if (!(ss >> r.y >> r.m)) fail("malformed ROW");
            d.rows.push_back(r);
            row_order.emplace_back();
        } else if (kw == "INST") {
            Instance inst;
            std::string cell;
            int order;
            if (!(ss >> inst.id >> cell >> inst.row >> order)) fail("malformed INST");
            if (inst.row < 0 || inst.row >= (int)d.rows.size()) fail("INST row out of range");
            inst.master = (int)(&find_cell(lib, cell) - lib.data());
            if (inst.id != (int)d.instances.size()) fail("INST ids must be dense and in order");
            row_order[inst.row].emplace_back(order, inst.id);
            d.instances.push_back(inst);
        } else if (kw == "NET") {
            Net n;
            if (!(ss >> n.id)) fail("malformed NET");
            std::string tok;
            while (ss >> tok) {
                if (tok == "FIX") {
                    Unit x, y;
                    if (!(ss >> x >> y)) fail("malformed FIX pin");
                    n.fixed.emplace_back(x, y);
                } else {
                    NetPin p;
                    p.inst = std::stoi(tok);
                    if (!(ss >> p.pin)) fail("malformed net pin");
                    if (p.inst < 0 || p.inst >= (int)d.instances.size())
                        fail("net pin references unknown instance");
                    n.pins.push_back(std::move(p));
                }
            }
            d.nets.push_back(std::move(n));
        } else {
            fail("unknown keyword " + kw);
        }
    }
    for (int r = 0; r < (int)d.rows.size(); ++r) {
        std::sort(row_order[r].begin(), row_order[r].end());
        for (auto& [ord, id] : row_order[r]) d.rows[r].insts.push_back(id);
    }
    if (!check_row_independence(d.tech))
        throw ValidationError("tech violates row-independence precondition");
    return d;
}

inline Design parse_design(const std::string& path, const std::vector<CellMaster>& lib) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_design(in, lib);
}

inline void write_design(std::ostream& out, const Design& d, const std::vector<CellMaster>& lib) {
    out << "TECH " << d.tech.w_min << ' ' << d.tech.s_min << ' ' << d.tech.site_width << '\n';
    for (auto& r : d.rows) out << "ROW " << r.y << ' ' << r.m << '\n';
    for (auto& r : d.rows)
        for (int k = 0; k < (int)r.insts.size(); ++k) {
            auto& i = d.instances[r.insts[k]];
            out << "INST " << i.id << ' ' << lib[i.master].name << ' ' << i.row << ' ' << k
                << '\n';
        }
    for (auto& n : d.nets) {
        out << "NET " << n.id;
        for (auto& p : n.pins) out << ' ' << p.inst << ' ' << p.pin;
        for (auto& [x, y] : n.fixed) out << " FIX " << x << ' ' << y;
        out << '\n';
    }
}

// Left-packed legal-order placement; colors untouched.
inline void initial_place(Design& d, const std::vector<CellMaster>& lib) {
    for (auto& r : d.rows) {
        int x = 0;
        for (int id : r.insts) {
            d.instances[id].x = x;
            x += lib[d.instances[id].master].width_sites;
        }
    }
}

// Placement-state serialization: one line per instance.
//   PLACE <id> <x_site> <N|FN> <solution>
inline void write_placement(std::ostream& out, const Design& d) {
    for (auto& i : d.instances)
        out << "PLACE " << i.id << ' ' << i.x << ' ' << orient_name(i.orient) << ' ' << i.sol
            << '\n';
}

inline void read_placement(std::istream& in, Design& d) {
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string kw, o;
        int id, x, sol;
        if (!(ss >> kw)) continue;
        if (kw != "PLACE") continue;
        if (!(ss >> id >> x >> o >> sol)) throw ParseError("malformed PLACE line");
        d.instances.at(id).x = x;
        d.instances.at(id).orient = orient_from_name(o);
        d.instances.at(id).sol = sol;
    }
}

// Absolute x of a pin, in units.
inline Unit pin_x(const Design& d, const std::vector<CellMaster>& lib, const NetPin& p) {
    const Instance& i = d.instances[p.inst];
    const CellMaster& m = lib[i.master];
    Unit off = m.pin_offset(p.pin);
    if (i.orient == Orientation::FN) off = m.width_units(d.tech) - off;
    return Unit(i.x) * d.tech.site_width + off;
}

inline Unit row_center_y(const Design& d, const std::vector<CellMaster>& lib, int inst) {
    const Instance& i = d.instances[inst];
    return d.rows[i.row].y + lib[i.master].height / 2;
}

// Half-perimeter wirelength over all nets (x and y), fixed pins included.
inline Unit hpwl(const Design& d, const std::vector<CellMaster>& lib) {
    Unit total = 0;
    for (auto& n : d.nets) {
        if (n.pins.size() + n.fixed.size() < 2) continue;
        Unit xlo = 0, xhi = 0, ylo = 0, yhi = 0;
        bool first = true;
        auto add = [&](Unit x, Unit y) {
            if (first) {
                xlo = xhi = x;
                ylo = yhi = y;
                first = false;
            } else {
                xlo = std::min(xlo, x);
                xhi = std::max(xhi, x);
                ylo = std::min(ylo, y);
                yhi = std::max(yhi, y);
            }
        };
        for (auto& p : n.pins) add(pin_x(d, lib, p), row_center_y(d, lib, p.inst));
        for (auto& [x, y] : n.fixed) add(x, y);
        total += (xhi - xlo) + (yhi - ylo);
    }
    return total;
}

inline int total_stitches(const Design& d, const ColoredLibrary& lib) {
    int s = 0;
    for (auto& i : d.instances) {
        if (i.sol < 0) continue;
        s += lib.pre[i.master].at(i.orient).solutions[i.sol].stitch_count;
    }
    return s;
}

} // namespace tplkit

#endif
