#include <random>

#include "doctest.h"
#include "incbessel/batch.hpp"
#include "incbessel/sweep.hpp"
#include "support.hpp"

using namespace incbessel;

namespace {

std::vector<Parameters> random_points(std::size_t count) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> xd(0.5, 20.0), yd(0.0, 20.0), nd(-2.0, 5.0);
    std::vector<Parameters> pts;
    for (std::size_t i = 0; i < count; ++i) pts.push_back({xd(rng), yd(rng), nd(rng)});
    return pts;
}

}  // namespace

TEST_CASE("parallel evaluation matches the serial reference bitwise") {
    const auto pts = random_points(257);
    const auto s = batch::evaluate_serial(pts);
    const auto p = batch::evaluate_parallel(pts);
    REQUIRE(s.size() == pts.size());
    REQUIRE(p.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CAPTURE(i);
        CHECK(s[i].value == p[i].value);
        CHECK(s[i].order == p[i].order);
        CHECK(s[i].status == p[i].status);
    }
    CHECK(batch::max_threads() >= 1);
}

TEST_CASE("parallel quadrature matches the serial reference bitwise") {
    const auto pts = random_points(40);
    const auto s = batch::tail_integral_serial(pts);
    const auto p = batch::tail_integral_parallel(pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(s[i].value == p[i].value);
        CHECK(s[i].converged);
    }
}

TEST_CASE("invalid points are rejected before any work") {
    auto pts = random_points(10);
    pts[7].x = 0.0;
    CHECK_THROWS_AS((void)batch::evaluate_parallel(pts), DomainError);
    CHECK_THROWS_AS((void)batch::evaluate_serial(pts), DomainError);
    CHECK_THROWS_AS((void)batch::tail_integral_parallel(pts), DomainError);
    EngineConfig bad;
    bad.max_order = 0;
    CHECK_THROWS_AS((void)batch::evaluate_parallel(random_points(3), bad), std::invalid_argument);
    CHECK(batch::evaluate_parallel(std::vector<Parameters>{}).empty());
}

TEST_CASE("sweep rows are ordered by y then n") {
    const std::vector<double> ys{5.0, 0.0, 2.0};
    const auto rows = compute_sweep(4.0, 3.0, ys, 10);
    REQUIRE(rows.size() == 33);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].y == ys[i / 11]);
        CHECK(rows[i].n == static_cast<int>(i % 11));
        CHECK(rows[i].rel_error >= 0);
    }
    CHECK_THROWS_AS((void)compute_sweep(4.0, 3.0, ys, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)compute_sweep(-4.0, 3.0, ys, 3), DomainError);
}

TEST_CASE("sweep error decays to near machine precision") {
    for (const auto& [x, nu, y] : {std::tuple{4.0, 3.0, 2.0}, std::tuple{10.0, 0.0, 10.0}}) {
        const auto rows = compute_sweep(x, nu, {y}, 60);
        CHECK(rows.front().g_n == 0.0);
        CHECK(rows.front().rel_error == 1.0);
        double best = 1.0;
        for (const auto& r : rows) best = std::min(best, r.rel_error);
        CHECK(best < 1e-14);
        CHECK(rows[5].rel_error > 1e-8);
    }
}

TEST_CASE("skipped rows") {
    const auto rows = compute_sweep(1.0, 0.0, {2.0}, 3);
    REQUIRE(rows.size() == 4);
    CHECK(rows[1].skipped);
    CHECK(std::isnan(rows[1].g_n));
    CHECK(std::isinf(rows[1].rel_error));
    CHECK_FALSE(rows[2].skipped);
}

TEST_CASE("format_real") {
    CHECK(format_real(0.0) == "0.0000000000000000e+00");
    CHECK(format_real(-1.5) == "-1.5000000000000000e+00");
    CHECK(format_real(0.1) == "1.0000000000000001e-01");
    CHECK(std::stod(format_real(0.1)) == 0.1);
    CHECK(format_real(std::nan("")) == "nan");
    CHECK(format_real(-HUGE_VAL) == "-inf");
}
