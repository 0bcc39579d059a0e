#ifndef TPLKIT_SVG_HPP
#define TPLKIT_SVG_HPP

#include <ostream>

#include "tplkit/checker.hpp"

namespace tplkit {

// Deterministic SVG dump of a colored design: one fill per mask, stitch
// midpoints marked, conflicting fragment pairs outlined.
inline void render_svg(std::ostream& out, const Design& d, const ColoredLibrary& lib,
                       const ConflictReport* report = nullptr) {
    static const char* fill[4] = {"#cccccc", "#4363d8", "#e6194b", "#3cb44b"};
    Unit pitch = d.rows.empty() ? 0 : 40 + effective_drow(d.tech);
    Unit w = 0, h = 0;
    for (auto& r : d.rows) {
        w = std::max(w, Unit(r.m) * d.tech.site_width);
        h = std::max(h, r.y + pitch);
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << ' ' << h
        << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
        << "\" fill=\"#ffffff\"/>\n";

    for (auto& inst : d.instances) {
        const auto& oc = lib.pre[inst.master].at(inst.orient);
        Unit x0 = Unit(inst.x) * d.tech.site_width;
        Unit y0 = d.rows[inst.row].y;
        out << "<g id=\"inst" << inst.id << "\">\n";
        out << "<rect x=\"" << x0 << "\" y=\"" << h - y0 - lib.masters[inst.master].height
            << "\" width=\"" << lib.masters[inst.master].width_units(d.tech) << "\" height=\""
            << lib.masters[inst.master].height << "\" fill=\"none\" stroke=\"#999999\"/>\n";
        const std::vector<int>* colors =
            inst.sol >= 0 ? &oc.solutions[inst.sol].assignment : nullptr;
        for (auto& v : oc.cg.vertices) {
            int c = colors ? (*colors)[v.id] : 0;
            if (c < 0 || c > 3) c = 0;
            out << "<rect x=\"" << x0 + v.frag.x_lo << "\" y=\""
                << h - y0 - v.frag.y_hi << "\" width=\"" << v.frag.width() << "\" height=\""
                << v.frag.height() << "\" fill=\"" << fill[c] << "\""
                << (v.frag.layer == Layer::CONTACT ? " stroke=\"#000000\"" : "") << "/>\n";
        }
        if (colors)
            for (auto& e : oc.cg.stitch_edges)
                if ((*colors)[e.u] != (*colors)[e.v]) {
                    const Rect& a = oc.cg.vertices[e.u].frag;
                    Unit cx = x0 + std::max(a.x_lo, oc.cg.vertices[e.v].frag.x_lo);
                    Unit cy = y0 + std::max(a.y_lo, oc.cg.vertices[e.v].frag.y_lo);
                    // a vertical stitch sits at the shared x cut, horizontal at y
                    if (a.x_hi != oc.cg.vertices[e.v].frag.x_hi)
                        cy = y0 + (a.y_lo + a.y_hi) / 2;
                    else
                        cx = x0 + (a.x_lo + a.x_hi) / 2;
                    out << "<circle cx=\"" << cx << "\" cy=\"" << h - cy
                        << "\" r=\"2\" fill=\"#ffe119\" stroke=\"#000000\"/>\n";
                }
        out << "</g>\n";
    }

    if (report)
        for (auto& c : report->conflicts) {
            auto mark = [&](int inst_id, int feat) {
                const Instance& inst = d.instances[inst_id];
                for (auto& f : lib.masters[inst.master].features) (void)f;
                const auto& cg = lib.pre[inst.master].at(inst.orient).cg;
                for (auto& v : cg.vertices)
                    if (v.feature == feat) {
                        Unit x0 = Unit(inst.x) * d.tech.site_width;
                        Unit y0 = d.rows[inst.row].y;
                        out << "<rect x=\"" << x0 + v.frag.x_lo - 1 << "\" y=\""
                            << h - y0 - v.frag.y_hi - 1 << "\" width=\"" << v.frag.width() + 2
                            << "\" height=\"" << v.frag.height() + 2
                            << "\" fill=\"none\" stroke=\"#ff00ff\" stroke-width=\"1\"/>\n";
                    }
            };
            mark(c.inst_a, c.feature_a);
            mark(c.inst_b, c.feature_b);
        }
    out << "</svg>\n";
}

} // namespace tplkit

#endif
