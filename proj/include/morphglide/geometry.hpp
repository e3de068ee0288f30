// morphglide -- wing section geometry: NACA 4-digit generation, camber
// morphs, and profile deviation metrics.
//
// Conventions used throughout:
//   * Profiles are ordered trailing edge -> lower surface -> leading edge
//     -> upper surface -> trailing edge, with the first point repeated at
//     the end (closed polyline). The leading edge sits at x = 0, the
//     trailing edge at x = chord_m.
//   * A camber morph displaces both surfaces vertically by the same
//     interpolated offset (shearing transform), so apply/extract are exact
//     inverses of each other.
//   * Camber offsets are measured relative to the leading-edge midline
//     point, which stays fixed (rigid leading edge).

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "morphglide/csv.hpp"
#include "morphglide/errors.hpp"

namespace morphglide {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct AirfoilProfile {
    std::vector<Vec2> points;  // closed: points.front() == points.back()
    double chord_m = 0.0;
    std::string name;

    bool closed(double tol = 1e-9) const {
        if (points.size() < 4) return false;
        return std::hypot(points.front().x - points.back().x,
                          points.front().y - points.back().y) <= tol;
    }
};

struct CamberLine {
    std::vector<Vec2> stations;  // x: x/c fraction in [0,1], y: offset in metres
    double chord_m = 0.0;
    double inflation_mL = 0.0;
};

struct EffectiveAoA {
    double alpha_deg = 0.0;       // mounting AoA against the undeformed chord
    double alpha_wing_deg = 0.0;  // classical chord-line AoA after morphing
};

struct DeviationStats {
    double rms_m = 0.0;
    double max_m = 0.0;
};

namespace detail {

inline double pi() { return std::numbers::pi; }

// Linear interpolation on a strictly increasing abscissa; clamps outside.
inline double interp(const std::vector<Vec2>& pts, double x) {
    if (x <= pts.front().x) return pts.front().y;
    if (x >= pts.back().x) return pts.back().y;
    auto it = std::upper_bound(pts.begin(), pts.end(), x,
                               [](double v, const Vec2& p) { return v < p.x; });
    const Vec2& b = *it;
    const Vec2& a = *(it - 1);
    double t = (x - a.x) / (b.x - a.x);
    return a.y + t * (b.y - a.y);
}

inline bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    auto cross = [](Vec2 o, Vec2 p, Vec2 q) {
        return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x);
    };
    double d1 = cross(c, d, a), d2 = cross(c, d, b);
    double d3 = cross(a, b, c), d4 = cross(a, b, d);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace detail

// True when no two non-adjacent segments of the closed polyline cross.
inline bool profile_is_simple(const AirfoilProfile& p) {
    const auto& pts = p.points;
    if (pts.size() < 4) return false;
    size_t n = pts.size() - 1;  // segment count (last point repeats the first)
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // closing adjacency
            if (detail::segments_intersect(pts[i], pts[i + 1], pts[j], pts[j + 1]))
                return false;
        }
    }
    return true;
}

// Index of the leading-edge point (minimum x).
inline size_t leading_edge_index(const AirfoilProfile& p) {
    size_t idx = 0;
    for (size_t i = 1; i < p.points.size(); ++i)
        if (p.points[i].x < p.points[idx].x) idx = i;
    return idx;
}

// ---------------------------------------------------------------------------
// NACA 4-digit generation
// ---------------------------------------------------------------------------

// Closed-trailing-edge thickness polynomial (a4 = -0.1036 instead of the
// open-TE -0.1015).
inline double naca4_half_thickness(double t, double xc) {
    double s = std::sqrt(std::max(xc, 0.0));
    return 5.0 * t *
           (0.2969 * s - 0.1260 * xc - 0.3516 * xc * xc + 0.2843 * xc * xc * xc -
            0.1036 * xc * xc * xc * xc);
}

// n_points is the number of surface segments; the returned polyline has
// n_points + 1 vertices, the last repeating the first (trailing edge).
inline AirfoilProfile naca4_profile(const std::string& code, int n_points, double chord_m) {
    if (code.size() != 4 ||
        !std::all_of(code.begin(), code.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw InvalidDiscretizationError("NACA code must be 4 digits, got '" + code + "'");
    if (n_points < 40)
        throw InvalidDiscretizationError("n_points must be >= 40, got " + std::to_string(n_points));
    if (n_points % 2 != 0)
        throw InvalidDiscretizationError("n_points must be even, got " + std::to_string(n_points));
    if (chord_m <= 0.0) throw InvalidDiscretizationError("chord must be positive");

    const double m = (code[0] - '0') / 100.0;   // max camber
    const double p = (code[1] - '0') / 10.0;    // camber position
    const double t = std::stoi(code.substr(2)) / 100.0;  // thickness

    auto camber = [&](double xc) -> std::pair<double, double> {  // (yc, dyc/dx)
        if (m == 0.0 || p == 0.0) return {0.0, 0.0};
        if (xc < p)
            return {m / (p * p) * (2.0 * p * xc - xc * xc), 2.0 * m / (p * p) * (p - xc)};
        return {m / ((1 - p) * (1 - p)) * (1 - 2 * p + 2 * p * xc - xc * xc),
                2.0 * m / ((1 - p) * (1 - p)) * (p - xc)};
    };

    const int nh = n_points / 2;  // stations per surface
    std::vector<double> xc(nh + 1);
    for (int i = 0; i <= nh; ++i)  // cosine clustering at both edges
        xc[i] = 0.5 * (1.0 - std::cos(detail::pi() * i / nh));

    AirfoilProfile prof;
    prof.chord_m = chord_m;
    prof.name = "NACA" + code;
    prof.points.reserve(n_points + 1);

    auto surface_point = [&](double x, bool upper) -> Vec2 {
        double yt = naca4_half_thickness(t, x);
        auto [yc, dyc] = camber(x);
        double th = std::atan(dyc);
        double sgn = upper ? 1.0 : -1.0;
        return {(x - sgn * yt * std::sin(th)) * chord_m, (yc + sgn * yt * std::cos(th)) * chord_m};
    };

    // TE -> lower -> LE
    for (int i = nh; i >= 0; --i) prof.points.push_back(surface_point(xc[i], false));
    // LE -> upper -> TE (leading edge itself already emitted)
    for (int i = 1; i <= nh; ++i) prof.points.push_back(surface_point(xc[i], true));
    // close exactly
    prof.points.push_back(prof.points.front());
    return prof;
}

// ---------------------------------------------------------------------------
// Camber morphs
// ---------------------------------------------------------------------------

inline AirfoilProfile apply_camber(const AirfoilProfile& profile, const CamberLine& camber) {
    if (camber.stations.size() < 2)
        throw ContractError("camber line needs at least two stations");
    if (camber.stations.front().x > 1e-12 || camber.stations.back().x < 1.0 - 1e-12)
        throw ContractError("camber stations must span [0, 1] in x/c");
    for (size_t i = 1; i < camber.stations.size(); ++i)
        if (camber.stations[i].x <= camber.stations[i - 1].x)
            throw ContractError("camber stations must be strictly increasing in x/c");
    for (const auto& s : camber.stations)
        if (std::abs(s.y) > 0.5 * profile.chord_m)
            throw ImplausibleMorphError("camber offset " + csv::fmt_g(s.y) +
                                        " m exceeds half the chord");

    const size_t ile = leading_edge_index(profile);
    const double x0 = profile.points[ile].x;

    AirfoilProfile out = profile;
    for (auto& pt : out.points) {
        double xc = (pt.x - x0) / profile.chord_m;
        pt.y += detail::interp(camber.stations, xc);
    }
    return out;
}

inline CamberLine extract_camber(const AirfoilProfile& profile, int n_stations) {
    if (n_stations < 2) throw ContractError("need at least two camber stations");
    if (static_cast<int>(profile.points.size()) < n_stations)
        throw ResolutionError("profile has fewer points (" +
                              std::to_string(profile.points.size()) + ") than requested stations (" +
                              std::to_string(n_stations) + ")");
    if (!profile.closed()) throw ContractError("profile must be closed");

    const size_t ile = leading_edge_index(profile);
    const Vec2 le = profile.points[ile];

    // Side A: start..LE, side B: LE..end. Sort each by x for interpolation.
    std::vector<Vec2> lower(profile.points.begin(), profile.points.begin() + ile + 1);
    std::vector<Vec2> upper(profile.points.begin() + ile, profile.points.end());
    auto by_x = [](const Vec2& a, const Vec2& b) { return a.x < b.x; };
    std::sort(lower.begin(), lower.end(), by_x);
    std::sort(upper.begin(), upper.end(), by_x);

    CamberLine cl;
    cl.chord_m = profile.chord_m;
    cl.stations.reserve(n_stations);
    for (int i = 0; i < n_stations; ++i) {
        double xc = static_cast<double>(i) / (n_stations - 1);
        double x = le.x + xc * profile.chord_m;
        double mid = 0.5 * (detail::interp(upper, x) + detail::interp(lower, x));
        cl.stations.push_back({xc, mid - le.y});
    }
    cl.stations.front().y = 0.0;  // leading edge is the reference point
    return cl;
}

// ---------------------------------------------------------------------------
// Effective angle of attack
// ---------------------------------------------------------------------------

// Sign convention: a trailing edge displaced downward (negative y offset)
// rotates the chord line nose-up, i.e. adds positive incidence. Upward
// camber at the trailing edge is the opposite, a negative increment.
inline EffectiveAoA effective_aoa(const CamberLine& camber, double alpha_deg) {
    if (camber.stations.empty() || camber.stations.front().x > 1e-12 ||
        camber.stations.back().x < 1.0 - 1e-12)
        throw ContractError("camber stations must include x/c = 0 and x/c = 1");
    if (camber.chord_m <= 0.0) throw ContractError("camber line carries no chord length");
    double y_le = camber.stations.front().y;
    double y_te = camber.stations.back().y;
    double rot = std::atan(-(y_te - y_le) / camber.chord_m);
    return {alpha_deg, alpha_deg + rot * 180.0 / detail::pi()};
}

// ---------------------------------------------------------------------------
// Profile-vs-profile deviation
// ---------------------------------------------------------------------------

inline DeviationStats profile_rms_error(const CamberLine& a, const CamberLine& b) {
    if (a.chord_m > 0.0 && b.chord_m > 0.0 &&
        std::abs(a.chord_m - b.chord_m) > 0.01 * std::max(a.chord_m, b.chord_m))
        throw IncomparableProfilesError("chord lengths differ by more than 1%");
    size_t n = std::max<size_t>(std::max(a.stations.size(), b.stations.size()), 64);
    double sum2 = 0.0, mx = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double xc = static_cast<double>(i) / (n - 1);
        double d = detail::interp(a.stations, xc) - detail::interp(b.stations, xc);
        sum2 += d * d;
        mx = std::max(mx, std::abs(d));
    }
    return {std::sqrt(sum2 / n), mx};
}

inline DeviationStats profile_rms_error(const AirfoilProfile& a, const AirfoilProfile& b) {
    if (std::abs(a.chord_m - b.chord_m) > 0.01 * std::max(a.chord_m, b.chord_m))
        throw IncomparableProfilesError("chord lengths differ by more than 1%");

    auto split = [](const AirfoilProfile& p) {
        size_t ile = leading_edge_index(p);
        std::vector<Vec2> lower(p.points.begin(), p.points.begin() + ile + 1);
        std::vector<Vec2> upper(p.points.begin() + ile, p.points.end());
        auto by_x = [](const Vec2& u, const Vec2& v) { return u.x < v.x; };
        std::sort(lower.begin(), lower.end(), by_x);
        std::sort(upper.begin(), upper.end(), by_x);
        return std::make_pair(lower, upper);
    };
    auto [alo, aup] = split(a);
    auto [blo, bup] = split(b);
    double ax0 = a.points[leading_edge_index(a)].x;
    double bx0 = b.points[leading_edge_index(b)].x;

    size_t n = 200;
    double sum2 = 0.0, mx = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double xc = static_cast<double>(i) / (n - 1);
        double du = detail::interp(aup, ax0 + xc * a.chord_m) -
                    detail::interp(bup, bx0 + xc * b.chord_m);
        double dl = detail::interp(alo, ax0 + xc * a.chord_m) -
                    detail::interp(blo, bx0 + xc * b.chord_m);
        sum2 += du * du + dl * dl;
        mx = std::max({mx, std::abs(du), std::abs(dl)});
    }
    return {std::sqrt(sum2 / (2 * n)), mx};
}

// ---------------------------------------------------------------------------
// CSV import/export
// ---------------------------------------------------------------------------

inline csv::Table profile_to_table(const AirfoilProfile& p) {
    csv::Table t;
    t.header = {"x_m", "y_m"};
    for (const auto& pt : p.points) t.rows.push_back({pt.x, pt.y});
    return t;
}

inline AirfoilProfile profile_from_table(const csv::Table& t, const std::string& name = "") {
    if (t.header != std::vector<std::string>{"x_m", "y_m"})
        throw ParseError("expected header x_m,y_m");
    AirfoilProfile p;
    p.name = name;
    double xmin = 1e300, xmax = -1e300;
    for (const auto& r : t.rows) {
        p.points.push_back({r[0], r[1]});
        xmin = std::min(xmin, r[0]);
        xmax = std::max(xmax, r[0]);
    }
    p.chord_m = xmax - xmin;
    return p;
}

inline csv::Table camber_to_table(const CamberLine& c) {
    csv::Table t;
    t.comments = {" chord_m=" + csv::fmt_g(c.chord_m),
                  " inflation_mL=" + csv::fmt_g(c.inflation_mL)};
    t.header = {"x_over_c", "y_m"};
    for (const auto& s : c.stations) t.rows.push_back({s.x, s.y});
    return t;
}

inline CamberLine camber_from_table(const csv::Table& t) {
    if (t.header != std::vector<std::string>{"x_over_c", "y_m"})
        throw ParseError("expected header x_over_c,y_m");
    CamberLine c;
    for (const auto& line : t.comments) {
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        key.erase(0, key.find_first_not_of(' '));
        if (key == "chord_m") c.chord_m = std::stod(line.substr(eq + 1));
        if (key == "inflation_mL") c.inflation_mL = std::stod(line.substr(eq + 1));
    }
    for (const auto& r : t.rows) c.stations.push_back({r[0], r[1]});
    return c;
}

}  // namespace morphglide
