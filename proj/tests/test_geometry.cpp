#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "morphglide/geometry.hpp"

using namespace morphglide;

namespace {

CamberLine parabolic_camber(double h, double chord, int n = 41) {
    CamberLine c;
    c.chord_m = chord;
    for (int i = 0; i < n; ++i) {
        double xc = static_cast<double>(i) / (n - 1);
        c.stations.push_back({xc, 4.0 * h * xc * (1.0 - xc)});
    }
    return c;
}

// Cantilever-style camber: flat forward of the hinge, quadratic droop aft.
CamberLine flap_camber(double te_offset, double chord, double hinge_xc = 0.3, int n = 61) {
    CamberLine c;
    c.chord_m = chord;
    for (int i = 0; i < n; ++i) {
        double xc = static_cast<double>(i) / (n - 1);
        double s = std::max(0.0, (xc - hinge_xc) / (1.0 - hinge_xc));
        c.stations.push_back({xc, te_offset * s * s});
    }
    return c;
}

double max_thickness(const AirfoilProfile& p) {
    size_t ile = leading_edge_index(p);
    std::vector<Vec2> lower(p.points.begin(), p.points.begin() + ile + 1);
    std::vector<Vec2> upper(p.points.begin() + ile, p.points.end());
    auto by_x = [](const Vec2& a, const Vec2& b) { return a.x < b.x; };
    std::sort(lower.begin(), lower.end(), by_x);
    std::sort(upper.begin(), upper.end(), by_x);
    double t = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        double x = p.chord_m * i / 2000.0;
        t = std::max(t, detail::interp(upper, x) - detail::interp(lower, x));
    }
    return t;
}

// Surface gap measured along the local normal of the camber line.
double normal_gap(const AirfoilProfile& p, const CamberLine& camber, double xc) {
    double x = xc * p.chord_m;
    double y = detail::interp(camber.stations, xc);
    double h = 1e-4;
    double slope = (detail::interp(camber.stations, xc + h) -
                    detail::interp(camber.stations, xc - h)) /
                   (2 * h * p.chord_m);
    double nx = -slope / std::hypot(1.0, slope), ny = 1.0 / std::hypot(1.0, slope);

    auto ray_hit = [&](bool up) {
        double best = 0.0;
        bool found = false;
        for (size_t i = 0; i + 1 < p.points.size(); ++i) {
            Vec2 a = p.points[i], b = p.points[i + 1];
            // Solve (x,y) + t*(nx,ny) = a + s*(b-a)
            double dx = b.x - a.x, dy = b.y - a.y;
            double det = nx * (-dy) - ny * (-dx);
            if (std::abs(det) < 1e-16) continue;
            double rx = a.x - x, ry = a.y - y;
            double t = (rx * (-dy) + dx * ry) / det;
            double s = (nx * ry - ny * rx) / det;
            if (s < -1e-12 || s > 1 + 1e-12) continue;
            if (up ? t > 1e-9 : t < -1e-9) {
                if (!found || std::abs(t) < std::abs(best)) best = t;
                found = true;
            }
        }
        REQUIRE(found);
        return best;
    };
    return ray_hit(true) - ray_hit(false);
}

}  // namespace

TEST_CASE("naca4 thickness matches code digits") {
    auto p16 = naca4_profile("0016", 200, 0.230);
    CHECK_THAT(max_thickness(p16), Catch::Matchers::WithinRel(0.0368, 0.005));

    auto p09 = naca4_profile("0009", 200, 0.213);
    CHECK_THAT(max_thickness(p09), Catch::Matchers::WithinRel(0.01917, 0.005));
}

TEST_CASE("naca4 symmetric profile mirrors onto itself") {
    auto p = naca4_profile("0016", 200, 1.0);
    REQUIRE(p.closed());
    // points run TE->lower->LE->upper->TE; mirroring y reverses the walk
    size_t n = p.points.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = p.points[i];
        const Vec2& b = p.points[n - 1 - i];
        CHECK(std::abs(a.x - b.x) < 1e-9);
        CHECK(std::abs(a.y + b.y) < 1e-9);
    }
}

TEST_CASE("naca4 symmetric sections have zero camber everywhere") {
    for (const char* code : {"0009", "0016"}) {
        auto cl = extract_camber(naca4_profile(code, 240, 0.230), 50);
        for (const auto& s : cl.stations) CHECK(std::abs(s.y) < 1e-9);
    }
}

TEST_CASE("naca4 input validation") {
    CHECK_THROWS_AS(naca4_profile("00x6", 200, 0.23), InvalidDiscretizationError);
    CHECK_THROWS_AS(naca4_profile("016", 200, 0.23), InvalidDiscretizationError);
    CHECK_THROWS_AS(naca4_profile("0016", 38, 0.23), InvalidDiscretizationError);
    CHECK_THROWS_AS(naca4_profile("0016", 41, 0.23), InvalidDiscretizationError);
}

TEST_CASE("cambered naca4 is simple and closed") {
    auto p = naca4_profile("2412", 160, 0.5);
    CHECK(p.closed());
    CHECK(profile_is_simple(p));
    auto cl = extract_camber(p, 40);
    double cmax = 0.0;
    for (const auto& s : cl.stations) cmax = std::max(cmax, s.y);
    CHECK_THAT(cmax, Catch::Matchers::WithinRel(0.02 * 0.5, 0.05));
}

TEST_CASE("apply zero camber is the identity") {
    auto p = naca4_profile("0016", 200, 0.230);
    CamberLine zero;
    zero.chord_m = 0.230;
    zero.stations = {{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}};
    auto q = apply_camber(p, zero);
    for (size_t i = 0; i < p.points.size(); ++i) {
        CHECK(std::abs(p.points[i].x - q.points[i].x) < 1e-12);
        CHECK(std::abs(p.points[i].y - q.points[i].y) < 1e-12);
    }
}

TEST_CASE("parabolic camber peaks at mid-chord") {
    auto p = naca4_profile("0016", 200, 0.230);
    double h = 0.004;
    auto q = apply_camber(p, parabolic_camber(h, 0.230));
    auto cl = extract_camber(q, 101);
    double best_x = 0, best_y = 0;
    for (const auto& s : cl.stations)
        if (std::abs(s.y) > std::abs(best_y)) {
            best_y = s.y;
            best_x = s.x;
        }
    CHECK_THAT(best_y, Catch::Matchers::WithinAbs(h, 1e-5));
    CHECK_THAT(best_x, Catch::Matchers::WithinAbs(0.5, 0.011));
}

TEST_CASE("apply then extract recovers the camber line") {
    auto p = naca4_profile("0016", 400, 0.230);
    for (const CamberLine& cl : {parabolic_camber(0.004, 0.230, 81),
                                 flap_camber(-0.012, 0.230, 0.3, 81)}) {
        auto morphed = apply_camber(p, cl);
        auto rec = extract_camber(morphed, 81);
        for (size_t i = 0; i < cl.stations.size(); ++i) {
            double want = detail::interp(cl.stations, rec.stations[i].x);
            CHECK(std::abs(rec.stations[i].y - want) < 1e-6);
        }
    }
}

TEST_CASE("camber morph preserves thickness measured normal to the camber line") {
    auto p = naca4_profile("0016", 400, 0.230);
    auto cl = parabolic_camber(0.0046, 0.230, 81);  // 2% camber
    auto q = apply_camber(p, cl);
    CamberLine zero;
    zero.chord_m = 0.230;
    zero.stations = {{0.0, 0.0}, {1.0, 0.0}};
    for (double xc : {0.15, 0.3, 0.5, 0.7, 0.85}) {
        double t0 = normal_gap(p, zero, xc);
        double t1 = normal_gap(q, cl, xc);
        CHECK(std::abs(t1 - t0) <= 0.01 * t0);
    }
}

TEST_CASE("implausible morph is rejected") {
    auto p = naca4_profile("0016", 100, 0.230);
    CamberLine big;
    big.chord_m = 0.230;
    big.stations = {{0.0, 0.0}, {1.0, 0.2}};  // 87% of chord
    CHECK_THROWS_AS(apply_camber(p, big), ImplausibleMorphError);
}

TEST_CASE("extract_camber is translation invariant") {
    auto p = naca4_profile("0016", 200, 0.230);
    auto q = apply_camber(p, flap_camber(-0.008, 0.230));
    auto moved = q;
    for (auto& pt : moved.points) {
        pt.x += 1.75;
        pt.y -= 0.32;
    }
    auto a = extract_camber(q, 60);
    auto b = extract_camber(moved, 60);
    for (size_t i = 0; i < a.stations.size(); ++i) {
        CHECK(std::abs(a.stations[i].x - b.stations[i].x) < 1e-12);
        CHECK(std::abs(a.stations[i].y - b.stations[i].y) < 1e-9);
    }
}

TEST_CASE("extract_camber wants enough profile points") {
    auto p = naca4_profile("0016", 40, 0.230);
    CHECK_THROWS_AS(extract_camber(p, 200), ResolutionError);
}

TEST_CASE("effective AoA follows the trailing-edge rotation") {
    CamberLine zero;
    zero.chord_m = 0.230;
    zero.stations = {{0.0, 0.0}, {1.0, 0.0}};
    CHECK(effective_aoa(zero, 4.0).alpha_wing_deg == Catch::Approx(4.0));

    CamberLine droop;  // TE 10 mm down
    droop.chord_m = 0.230;
    droop.stations = {{0.0, 0.0}, {0.5, -0.004}, {1.0, -0.010}};
    CHECK_THAT(effective_aoa(droop, 0.0).alpha_wing_deg,
               Catch::Matchers::WithinAbs(2.4896, 5e-4));
    CHECK_THAT(effective_aoa(droop, -2.4895529).alpha_wing_deg,
               Catch::Matchers::WithinAbs(0.0, 5e-6));
}

TEST_CASE("effective AoA is affine in alpha with unit slope") {
    auto cl = flap_camber(-0.009, 0.230);
    double off = effective_aoa(cl, 0.0).alpha_wing_deg;
    for (double a : {-8.0, -3.0, 1.5, 6.0})
        CHECK_THAT(effective_aoa(cl, a).alpha_wing_deg,
                   Catch::Matchers::WithinAbs(a + off, 1e-12));
}

TEST_CASE("profile deviation metrics") {
    auto p = naca4_profile("0016", 200, 0.230);
    auto [rms0, max0] = profile_rms_error(p, p);
    CHECK(rms0 == 0.0);
    CHECK(max0 == 0.0);

    auto shifted = p;
    for (auto& pt : shifted.points) pt.y += 1.0e-3;
    auto [rms1, max1] = profile_rms_error(p, shifted);
    CHECK_THAT(rms1, Catch::Matchers::WithinRel(1.0e-3, 1e-9));
    CHECK_THAT(max1, Catch::Matchers::WithinRel(1.0e-3, 1e-9));

    // symmetry and rms <= max on a generic pair
    auto q = apply_camber(p, parabolic_camber(0.003, 0.230));
    auto [rms_ab, max_ab] = profile_rms_error(p, q);
    auto [rms_ba, max_ba] = profile_rms_error(q, p);
    CHECK(rms_ab == Catch::Approx(rms_ba));
    CHECK(max_ab == Catch::Approx(max_ba));
    CHECK(rms_ab <= max_ab);

    auto other = naca4_profile("0016", 200, 0.250);
    CHECK_THROWS_AS(profile_rms_error(p, other), IncomparableProfilesError);
}

TEST_CASE("profile and camber CSV round-trip") {
    auto p = apply_camber(naca4_profile("0016", 80, 0.230), flap_camber(-0.007, 0.230));
    std::ostringstream os;
    csv::write(os, profile_to_table(p));
    std::istringstream is(os.str());
    auto q = profile_from_table(csv::read(is), p.name);
    REQUIRE(q.points.size() == p.points.size());
    for (size_t i = 0; i < p.points.size(); ++i) {
        CHECK(std::abs(p.points[i].x - q.points[i].x) < 1e-12);
        CHECK(std::abs(p.points[i].y - q.points[i].y) < 1e-12);
    }

    auto cl = extract_camber(p, 33);
    std::ostringstream os2;
    csv::write(os2, camber_to_table(cl));
    std::istringstream is2(os2.str());
    auto cl2 = camber_from_table(csv::read(is2));
    REQUIRE(cl2.stations.size() == cl.stations.size());
    CHECK(cl2.chord_m == Catch::Approx(cl.chord_m));
    for (size_t i = 0; i < cl.stations.size(); ++i)
        CHECK(std::abs(cl.stations[i].y - cl2.stations[i].y) < 1e-12);
}
