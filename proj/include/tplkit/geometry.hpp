#ifndef TPLKIT_GEOMETRY_HPP
#define TPLKIT_GEOMETRY_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tplkit {

using Unit = std::int64_t;

enum class Layer : std::uint8_t { M1, CONTACT, RAIL };

inline const char* layer_name(Layer l) {
    switch (l) {
    case Layer::M1: return "M1";
    case Layer::CONTACT: return "CONTACT";
    case Layer::RAIL: return "RAIL";
    }
    return "?";
}

inline Layer layer_from_name(const std::string& s) {
    if (s == "M1") return Layer::M1;
    if (s == "CONTACT") return Layer::CONTACT;
    if (s == "RAIL") return Layer::RAIL;
    throw std::runtime_error("unknown layer: " + s);
}

// Axis-aligned rectangle in integer database units.
struct Rect {
    Layer layer = Layer::M1;
    Unit x_lo = 0, y_lo = 0, x_hi = 0, y_hi = 0;

    Unit width() const { return x_hi - x_lo; }
    Unit height() const { return y_hi - y_lo; }
    bool valid() const { return x_lo < x_hi && y_lo < y_hi; }

    bool operator==(const Rect&) const = default;
};

struct TechParams {
    Unit w_min = 2;       // minimum feature width
    Unit s_min = 2;       // minimum spacing
    Unit d_row = 0;       // inter-row metal spacing; 0 = use mirrored worst case
    Unit site_width = 8;
    int max_stitch = 1;

    bool valid() const { return w_min > 0 && s_min > 0 && site_width > 0; }
};

inline void require_valid(const TechParams& t) {
    if (!t.valid()) throw std::invalid_argument("degenerate TechParams");
}

// Minimum same-color spacing for triple patterning: d_min = 2*w_min + 3*s_min.
inline Unit derive_dmin(const TechParams& t) {
    require_valid(t);
    return 2 * t.w_min + 3 * t.s_min;
}

inline Unit effective_drow(const TechParams& t) {
    // Worst case: mirrored rows, no routing channel.
    return t.d_row > 0 ? t.d_row : 4 * t.w_min + 2 * t.s_min;
}

// Rows can be colored independently iff features in different rows can
// never be closer than d_min.
inline bool check_row_independence(const TechParams& t) {
    return effective_drow(t) >= derive_dmin(t);
}

// Rectilinear gaps between two rects along each axis (0 if touching/overlapping).
inline Unit gap_x(const Rect& a, const Rect& b) {
    Unit g = std::max(b.x_lo - a.x_hi, a.x_lo - b.x_hi);
    return g > 0 ? g : 0;
}
inline Unit gap_y(const Rect& a, const Rect& b) {
    Unit g = std::max(b.y_lo - a.y_hi, a.y_lo - b.y_hi);
    return g > 0 ? g : 0;
}

// Squared closest-point distance. All spacing comparisons are done squared
// so integer geometry stays exact.
inline Unit dist2(const Rect& a, const Rect& b) {
    Unit dx = gap_x(a, b), dy = gap_y(a, b);
    return dx * dx + dy * dy;
}

// Closest-point distance rounded down to integer units.
inline Unit rect_distance(const Rect& a, const Rect& b) {
    return static_cast<Unit>(std::sqrt(static_cast<double>(dist2(a, b))));
}

// Metal (incl. power rails) and contacts are decomposed as separate coloring
// layers; features only conflict within the same group.
inline bool same_color_layer(Layer a, Layer b) {
    auto grp = [](Layer l) { return l == Layer::CONTACT ? 1 : 0; };
    return grp(a) == grp(b);
}

// Two features conflict when closer than d_min (strict).
inline bool within_conflict_range(const Rect& a, const Rect& b, Unit d_min) {
    return dist2(a, b) < d_min * d_min;
}

inline bool rects_touch_or_overlap(const Rect& a, const Rect& b) {
    return dist2(a, b) == 0;
}

} // namespace tplkit

#endif
