#ifndef TPLKIT_CELLLIB_HPP
#define TPLKIT_CELLLIB_HPP

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tplkit/geometry.hpp"

namespace tplkit {

enum class Orientation : std::uint8_t { N, FN };

inline const char* orient_name(Orientation o) { return o == Orientation::N ? "N" : "FN"; }

inline Orientation flip(Orientation o) {
    return o == Orientation::N ? Orientation::FN : Orientation::N;
}

inline Orientation orient_from_name(const std::string& s) {
    if (s == "N") return Orientation::N;
    if (s == "FN") return Orientation::FN;
    throw std::runtime_error("unknown orientation: " + s);
}

// Standard cell master: geometry plus pin x-offsets from the cell left edge.
struct CellMaster {
    std::string name;
    int width_sites = 0;
    Unit height = 0;
    std::vector<Rect> features;
    std::vector<std::pair<std::string, Unit>> pin_offsets;

    Unit width_units(const TechParams& t) const { return Unit(width_sites) * t.site_width; }

    Unit pin_offset(const std::string& pin) const {
        for (auto& [n, off] : pin_offsets)
            if (n == pin) return off;
        throw std::runtime_error("cell " + name + ": no pin " + pin);
    }

    std::vector<int> rail_feature_ids() const {
        std::vector<int> ids;
        for (int i = 0; i < (int)features.size(); ++i)
            if (features[i].layer == Layer::RAIL) ids.push_back(i);
        return ids;
    }
};

// Mirror about the vertical axis: x-range [a,b] maps to [W-b, W-a].
inline CellMaster flipped(const CellMaster& m, const TechParams& t) {
    CellMaster out = m;
    Unit w = m.width_units(t);
    for (auto& r : out.features) {
        Unit lo = w - r.x_hi, hi = w - r.x_lo;
        r.x_lo = lo;
        r.x_hi = hi;
    }
    for (auto& [n, off] : out.pin_offsets) off = w - off;
    return out;
}

inline CellMaster oriented(const CellMaster& m, Orientation o, const TechParams& t) {
    return o == Orientation::N ? m : flipped(m, t);
}

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void validate_master(const CellMaster& m, const TechParams& t) {
    Unit w = m.width_units(t);
    if (m.width_sites <= 0 || m.height <= 0)
        throw ValidationError("cell " + m.name + ": non-positive dimensions");
    int rails = 0;
    for (auto& r : m.features) {
        if (!r.valid())
            throw ValidationError("cell " + m.name + ": degenerate rect");
        if (r.x_lo < 0 || r.y_lo < 0 || r.x_hi > w || r.y_hi > m.height)
            throw ValidationError("cell " + m.name + ": feature outside cell bounds");
        if (r.layer == Layer::RAIL) {
            ++rails;
            if (r.x_lo != 0 || r.x_hi != w)
                throw ValidationError("cell " + m.name + ": rail does not span full width");
            if (r.height() != 2 * t.w_min)
                throw ValidationError("cell " + m.name + ": rail height != 2*w_min");
        }
    }
    if (rails != 2)
        throw ValidationError("cell " + m.name + ": expected exactly 2 rails, got " +
                              std::to_string(rails));
}

// Line-oriented cell library format:
//   CELL <name> <width_sites> <height>
//   RECT <layer> <x_lo> <y_lo> <x_hi> <y_hi>
//   PIN <name> <x_offset>
//   END
// '#' starts a comment.
inline std::vector<CellMaster> parse_library(std::istream& in, const TechParams& t) {
    std::vector<CellMaster> lib;
    std::optional<CellMaster> cur;
    std::string line;
    int lineno = 0;
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
        if (kw == "CELL") {
            if (cur) fail("CELL inside CELL");
            CellMaster m;
            if (!(ss >> m.name >> m.width_sites >> m.height)) fail("malformed CELL");
            cur = std::move(m);
        } else if (kw == "RECT") {
            if (!cur) fail("RECT outside CELL");
            std::string layer;
            Rect r;
            if (!(ss >> layer >> r.x_lo >> r.y_lo >> r.x_hi >> r.y_hi)) fail("malformed RECT");
            r.layer = layer_from_name(layer);
            cur->features.push_back(r);
        } else if (kw == "PIN") {
            if (!cur) fail("PIN outside CELL");
            std::string name;
            Unit off;
            if (!(ss >> name >> off)) fail("malformed PIN");
            cur->pin_offsets.emplace_back(name, off);
        } else if (kw == "END") {
            if (!cur) fail("END outside CELL");
            validate_master(*cur, t);
            lib.push_back(std::move(*cur));
            cur.reset();
        } else {
            fail("unknown keyword " + kw);
        }
    }
    if (cur) throw ParseError("unterminated CELL " + cur->name);
    return lib;
}

inline std::vector<CellMaster> parse_library(const std::string& path, const TechParams& t) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_library(in, t);
}

inline void write_library(std::ostream& out, const std::vector<CellMaster>& lib) {
    for (auto& m : lib) {
        out << "CELL " << m.name << ' ' << m.width_sites << ' ' << m.height << '\n';
        for (auto& r : m.features)
            out << "RECT " << layer_name(r.layer) << ' ' << r.x_lo << ' ' << r.y_lo << ' '
                << r.x_hi << ' ' << r.y_hi << '\n';
        for (auto& [n, off] : m.pin_offsets) out << "PIN " << n << ' ' << off << '\n';
        out << "END\n";
    }
}

inline const CellMaster& find_cell(const std::vector<CellMaster>& lib, const std::string& name) {
    for (auto& m : lib)
        if (m.name == name) return m;
    throw std::runtime_error("no such cell: " + name);
}

} // namespace tplkit

#endif
