// morphglide -- sectional hydrodynamics: Hess-Smith panel method plus an
// empirical viscous drag buildup.
//
// The panel solver distributes constant-strength sources (one per panel)
// and a single vortex strength shared by all panels over the closed
// profile, then enforces flow tangency at panel midpoints and the Kutta
// condition at the trailing edge. Lift comes from the resulting
// circulation; the moment is integrated from the surface pressure
// distribution about the quarter chord.
//
// Angle of attack is measured against the undeformed symmetric chord
// (the x axis of the profile), so morphed profiles are analysed in the
// same frame they were deformed in.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "morphglide/errors.hpp"
#include "morphglide/geometry.hpp"

namespace morphglide {

struct FlowConditions {
    double u_mps = 0.0;
    double nu_m2ps = 1.00e-6;   // water
    double rho_kgpm3 = 1000.0;  // water
    double length_m = 0.0;

    void validate() const {
        if (u_mps <= 0 || nu_m2ps <= 0 || rho_kgpm3 <= 0 || length_m <= 0)
            throw ContractError("flow conditions must be strictly positive");
    }
};

inline double reynolds(const FlowConditions& flow) {
    flow.validate();
    return flow.u_mps * flow.length_m / flow.nu_m2ps;
}

struct PolarRow {
    double alpha_deg = 0.0;
    double c_l = 0.0;
    double c_d = 0.0;
    double c_m = 0.0;  // about quarter chord, nose-up positive
};

struct HydroPolar {
    double re = 0.0;
    double inflation_mL = 0.0;
    std::vector<PolarRow> rows;
    std::vector<std::string> warnings;
};

struct ForceBreakdown {
    double lift_n = 0.0;
    double drag_n = 0.0;
    double reference_area_m2 = 0.0;
    double dynamic_pressure_pa = 0.0;
};

struct PanelSolution {
    double c_l = 0.0;
    double c_m = 0.0;            // quarter chord, nose-up positive
    double c_l_pressure = 0.0;   // c_l re-integrated from cp (consistency check)
    std::vector<double> cp;      // one per panel midpoint
    std::vector<Vec2> midpoints;
};

// ---------------------------------------------------------------------------
// Hess-Smith panel method
// ---------------------------------------------------------------------------

inline PanelSolution panel_solve(const AirfoilProfile& profile, double alpha_deg,
                                 const FlowConditions& flow) {
    flow.validate();
    if (!profile.closed(1e-9 * std::max(profile.chord_m, 1.0)))
        throw ContractError("panel_solve requires a closed profile");
    if (profile.points.size() < 41)
        throw ContractError("panel_solve requires at least 40 panels");
    if (std::abs(alpha_deg) > 15.0)
        throw ContractError("panel method restricted to |alpha| <= 15 deg");

    // Nodes walk TE -> lower -> LE -> upper -> TE; the exterior lies to the
    // left of each panel. Reverse a counterclockwise input.
    std::vector<Vec2> pts(profile.points.begin(), profile.points.end() - 1);
    double area2 = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) {
        const Vec2& a = pts[i];
        const Vec2& b = pts[(i + 1) % pts.size()];
        area2 += a.x * b.y - b.x * a.y;
    }
    if (area2 > 0.0) std::reverse(pts.begin(), pts.end());

    const int n = static_cast<int>(pts.size());
    std::vector<double> theta(n), len(n);
    std::vector<Vec2> mid(n);
    for (int i = 0; i < n; ++i) {
        const Vec2& a = pts[i];
        const Vec2& b = pts[(i + 1) % n];
        double dx = b.x - a.x, dy = b.y - a.y;
        len[i] = std::hypot(dx, dy);
        if (len[i] < 1e-14)
            throw DegenerateGeometryError("zero-length panel at index " + std::to_string(i));
        theta[i] = std::atan2(dy, dx);
        mid[i] = {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
    }

    const double alpha = alpha_deg * std::numbers::pi / 180.0;
    const double U = flow.u_mps;

    // Influence integrals in panel-local frames:
    //   source:  u* = (q/2pi) ln(r1/r2),  v* = (q/2pi) beta
    //   vortex:  u* = -(g/2pi) beta,      v* = (g/2pi) ln(r1/r2)
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + 1, n + 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
    Eigen::MatrixXd At(n, n), Vt(n, n);  // tangential influences, reused after solve

    for (int i = 0; i < n; ++i) {
        double vortex_n = 0.0;
        for (int j = 0; j < n; ++j) {
            const Vec2& a = pts[j];
            const Vec2& b = pts[(j + 1) % n];
            double r1x = mid[i].x - a.x, r1y = mid[i].y - a.y;
            double r2x = mid[i].x - b.x, r2y = mid[i].y - b.y;
            double lnR, beta;
            if (i == j) {
                lnR = 0.0;
                beta = std::numbers::pi;
            } else {
                lnR = 0.5 * std::log((r2x * r2x + r2y * r2y) / (r1x * r1x + r1y * r1y));
                beta = std::atan2(r1x * r2y - r1y * r2x, r1x * r2x + r1y * r2y);
            }
            double sd = std::sin(theta[i] - theta[j]);
            double cd = std::cos(theta[i] - theta[j]);
            double src_n = (sd * lnR + cd * beta) / (2 * std::numbers::pi);
            double src_t = (sd * beta - cd * lnR) / (2 * std::numbers::pi);
            A(i, j) = src_n;
            At(i, j) = src_t;
            Vt(i, j) = -src_n;
            vortex_n += src_t;  // vortex normal influence equals source tangential
        }
        A(i, n) = vortex_n;
        rhs(i) = U * std::sin(theta[i] - alpha);
    }

    // Kutta condition: tangential speeds on the two trailing-edge panels
    // are equal and opposite along the panel directions.
    for (int j = 0; j < n; ++j) {
        A(n, j) = At(0, j) + At(n - 1, j);
        A(n, n) += Vt(0, j) + Vt(n - 1, j);
    }
    rhs(n) = -U * (std::cos(theta[0] - alpha) + std::cos(theta[n - 1] - alpha));

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    Eigen::VectorXd x = lu.solve(rhs);
    if (!x.allFinite() || (A * x - rhs).norm() > 1e-6 * (1.0 + rhs.norm()))
        throw DegenerateGeometryError("singular influence matrix (degenerate panels)");

    const double tau = x(n);

    PanelSolution sol;
    sol.cp.resize(n);
    sol.midpoints = mid;

    double chord = profile.chord_m;
    double perim = 0.0;
    for (int i = 0; i < n; ++i) perim += len[i];

    // Circulation (counterclockwise positive); lift is minus rho*U*Gamma.
    sol.c_l = -2.0 * tau * perim / (U * chord);

    double x0 = pts[0].x;
    for (const auto& p : pts) x0 = std::min(x0, p.x);
    const double xref = x0 + 0.25 * chord;
    const double yref = 0.0;

    double fx = 0.0, fy = 0.0, mz = 0.0;
    for (int i = 0; i < n; ++i) {
        double vt = U * std::cos(theta[i] - alpha);
        for (int j = 0; j < n; ++j) vt += At(i, j) * x(j) + Vt(i, j) * tau;
        sol.cp[i] = 1.0 - (vt / U) * (vt / U);
        // Outward normal is the left normal for clockwise ordering.
        double nx = -std::sin(theta[i]), ny = std::cos(theta[i]);
        double f = -sol.cp[i] * len[i];
        fx += f * nx;
        fy += f * ny;
        mz += (mid[i].x - xref) * f * ny - (mid[i].y - yref) * f * nx;
    }
    // Rotate pressure force into wind axes for the consistency lift.
    sol.c_l_pressure = (fy * std::cos(alpha) - fx * std::sin(alpha)) / chord;
    sol.c_m = -mz / (chord * chord);  // nose-up positive
    return sol;
}

// ---------------------------------------------------------------------------
// Empirical drag buildup
// ---------------------------------------------------------------------------

struct DragModel {
    double re_transition = 5.0e5;  // flat-plate transition Reynolds number
    double k_lift = 0.5;           // lift-dependent profile-drag factor
    double re_min = 1.0e4;
    double re_max = 1.0e7;

    // Blended laminar/turbulent flat-plate skin friction (one side).
    double skin_friction(double re) const {
        if (re <= re_transition) return 1.328 / std::sqrt(re);
        double offset =
            re_transition * (0.074 * std::pow(re_transition, -0.2) - 1.328 / std::sqrt(re_transition));
        return 0.074 * std::pow(re, -0.2) - offset / re;
    }

    // Hoerner-style thickness form factor.
    double form_factor(double t_over_c) const {
        return 1.0 + 2.0 * t_over_c + 60.0 * std::pow(t_over_c, 4);
    }
};

// Maximum vertical surface gap over the chord.
inline double thickness_ratio(const AirfoilProfile& profile) {
    size_t ile = leading_edge_index(profile);
    std::vector<Vec2> lower(profile.points.begin(), profile.points.begin() + ile + 1);
    std::vector<Vec2> upper(profile.points.begin() + ile, profile.points.end());
    auto by_x = [](const Vec2& a, const Vec2& b) { return a.x < b.x; };
    std::sort(lower.begin(), lower.end(), by_x);
    std::sort(upper.begin(), upper.end(), by_x);
    double x0 = profile.points[ile].x;
    double tmax = 0.0;
    for (int i = 1; i < 100; ++i) {
        double x = x0 + profile.chord_m * i / 100.0;
        tmax = std::max(tmax, detail::interp(upper, x) - detail::interp(lower, x));
    }
    return tmax / profile.chord_m;
}

inline double drag_estimate(const AirfoilProfile& profile, double /*alpha_deg*/,
                            const FlowConditions& flow, double c_l,
                            const DragModel& model = {}) {
    double re = reynolds(flow);
    if (re < model.re_min || re > model.re_max)
        throw ModelValidityError("Re=" + csv::fmt_g(re) + " outside drag-model range [" +
                                 csv::fmt_g(model.re_min) + ", " + csv::fmt_g(model.re_max) + "]");
    double cf = model.skin_friction(re);
    double ff = model.form_factor(thickness_ratio(profile));
    return 2.0 * cf * ff * (1.0 + model.k_lift * c_l * c_l);
}

inline std::pair<double, double> coefficients_from_forces(const ForceBreakdown& f) {
    if (f.reference_area_m2 <= 0 || f.dynamic_pressure_pa <= 0)
        throw ContractError("force breakdown requires positive area and dynamic pressure");
    double denom = f.dynamic_pressure_pa * f.reference_area_m2;
    return {f.lift_n / denom, f.drag_n / denom};
}

// ---------------------------------------------------------------------------
// Polar sweeps
// ---------------------------------------------------------------------------

struct PolarCellError {
    double inflation_mL = 0.0;
    double alpha_deg = 0.0;
    std::string message;
};

struct PolarSweepResult {
    std::vector<HydroPolar> polars;
    std::vector<PolarCellError> failures;
    bool ok() const { return failures.empty(); }
};

namespace detail {

// Chunked parallel loop with a bounded worker count; the work items write
// into preallocated slots, so aggregation order never matters.
inline void parallel_for(int count, int max_workers, const std::function<void(int)>& fn) {
    int workers = std::max(1, std::min(max_workers, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace detail

inline PolarSweepResult polar_sweep(
    const std::vector<std::pair<double, AirfoilProfile>>& profiles,
    std::vector<double> alphas, const FlowConditions& flow, const DragModel& drag = {},
    int max_workers = 1) {
    if (profiles.empty()) throw ContractError("polar_sweep requires at least one profile");
    if (alphas.empty()) throw ContractError("polar_sweep requires at least one alpha");
    std::sort(alphas.begin(), alphas.end());

    const double re = reynolds(flow);
    const int na = static_cast<int>(alphas.size());
    const int np = static_cast<int>(profiles.size());

    std::vector<PolarRow> cells(np * na);
    std::vector<std::optional<PolarCellError>> errors(np * na);

    detail::parallel_for(np * na, max_workers, [&](int k) {
        int ip = k / na, ia = k % na;
        const auto& [infl, prof] = profiles[ip];
        double a = alphas[ia];
        try {
            PanelSolution sol = panel_solve(prof, a, flow);
            double cd = drag_estimate(prof, a, flow, sol.c_l, drag);
            cells[k] = {a, sol.c_l, cd, sol.c_m};
        } catch (const std::exception& e) {
            errors[k] = PolarCellError{infl, a, e.what()};
        }
    });

    PolarSweepResult out;
    for (int ip = 0; ip < np; ++ip) {
        bool failed = false;
        for (int ia = 0; ia < na; ++ia) {
            if (errors[ip * na + ia]) {
                out.failures.push_back(*errors[ip * na + ia]);
                failed = true;
            }
        }
        if (failed) continue;
        HydroPolar polar;
        polar.re = re;
        polar.inflation_mL = profiles[ip].first;
        polar.rows.assign(cells.begin() + ip * na, cells.begin() + (ip + 1) * na);
        for (double a : alphas)
            if (std::abs(a) > 8.0) {
                polar.warnings.push_back("alpha " + csv::fmt_g(a) +
                                         " deg outside validated range |alpha| <= 8 deg");
            }
        out.polars.push_back(std::move(polar));
    }
    return out;
}

inline csv::Table polar_to_table(const HydroPolar& p) {
    csv::Table t;
    t.comments = {" re=" + csv::fmt_g(p.re), " inflation_mL=" + csv::fmt_g(p.inflation_mL)};
    for (const auto& w : p.warnings) t.comments.push_back(" warning: " + w);
    t.header = {"alpha_deg", "c_l", "c_d", "c_m"};
    for (const auto& r : p.rows) t.rows.push_back({r.alpha_deg, r.c_l, r.c_d, r.c_m});
    return t;
}

}  // namespace morphglide
