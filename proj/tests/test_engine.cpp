#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "incbessel/engine.hpp"
#include "incbessel/legacy.hpp"
#include "incbessel/quadrature.hpp"
#include "incbessel/symbolic_oracle.hpp"
#include "oracles/expint.hpp"
#include "support.hpp"

using namespace incbessel;
using testsupport::rel_diff;

namespace {

using Window = RecurrenceWindow<double>;

// Runs both sequences from arbitrary starting windows at n = 1 and returns G_n
// for n = 1..n_max (NaN where the denominator is zero).
std::vector<double> run_from(Window num, Window den, const Parameters& p, int n_max) {
    std::vector<double> g{std::exp(-(p.x + p.y)) * num.q_n / den.q_n};
    for (int n = 2; n <= n_max; ++n) {
        num.advance(*recurrence_step(num, p));
        den.advance(*recurrence_step(den, p));
        g.push_back(std::exp(-(p.x + p.y)) * num.q_n / den.q_n);
    }
    return g;
}

}  // namespace

TEST_CASE("recurrence_step") {
    SUBCASE("denominator from n = 0 reproduces Dhat_1 = x + nu + 1 - y") {
        const Parameters p{4, 0, 3};
        const Window w{0, 1.0, 0.0, 0.0, SequenceKind::Denominator};
        CHECK(*recurrence_step(w, p) == 8.0);
    }
    SUBCASE("numerator from n = 1") {
        const Parameters p{2.5, 0.75, 1.5};
        const auto w = Window::start(SequenceKind::Numerator, p);
        CHECK(*recurrence_step(w, p) == doctest::Approx((p.x + p.nu + 3 - p.y) / 2).epsilon(1e-15));
    }
    SUBCASE("third denominator term at (4, 2, 3)") {
        // q_3(1) / 3! = 232/3 from exact polynomial replay.
        const Parameters p{4, 2, 3};
        auto w = Window::start(SequenceKind::Denominator, p);
        w.advance(*recurrence_step(w, p));
        CHECK(w.q_n == 24.0);
        CHECK(rel_diff(*recurrence_step(w, p), 232.0 / 3.0) < 1e-15);
    }
    SUBCASE("overflow is reported, not propagated") {
        const Parameters p{4, 2, 3};
        const Window w{5, 1e308, 1e308, 0.0, SequenceKind::Numerator};
        CHECK_FALSE(recurrence_step(w, p).has_value());
    }
    SUBCASE("start windows") {
        const Parameters p{4, 2, 3};
        const auto n = Window::start(SequenceKind::Numerator, p);
        const auto d = Window::start(SequenceKind::Denominator, p);
        CHECK(n.n == 1);
        CHECK((n.q_n == 1.0 && n.q_nm1 == 0.0 && n.q_nm2 == 0.0));
        CHECK((d.q_n == 6.0 && d.q_nm1 == 1.0 && d.q_nm2 == 0.0));
    }
}

TEST_CASE("approximant") {
    const Parameters p{4, 2, 3};
    CHECK(*approximant(0.0, 1.0, p) == 0.0);
    CHECK(rel_diff(*approximant(1.0, 6.0, p), std::exp(-6.0) / 6.0) < 1e-15);
    const Parameters degenerate{1, 2, 0};
    const auto d1 = Window::start(SequenceKind::Denominator, degenerate).q_n;
    CHECK(d1 == 0.0);
    CHECK_FALSE(approximant(1.0, d1, degenerate).has_value());
}

TEST_CASE("evaluate against independent values") {
    SUBCASE("y = 0 is the exponential integral E_4(4)") {
        const auto r = evaluate(Parameters{4, 0, 3});
        CHECK(r.status == Status::Converged);
        CHECK(rel_diff(r.value, oracles::expint(4, 4.0)) < 1e-12);
    }
    SUBCASE("reference table") {
        for (const auto& ref : testsupport::references()) {
            CAPTURE(ref.p.x);
            CAPTURE(ref.p.y);
            CAPTURE(ref.p.nu);
            const auto r = evaluate(ref.p);
            CHECK(r.status == Status::Converged);
            CHECK(r.est_rel_error <= 1e-14);
            CHECK(rel_diff(r.value, ref.value) < 1e-12);
        }
    }
    SUBCASE("parameter set (4, 4, 3) against quadrature") {
        const Parameters p{4, 4, 3};
        const auto r = evaluate(p);
        CHECK(r.status == Status::Converged);
        CHECK(rel_diff(r.value, tail_integral(p).value) < 1e-12);
    }
}

TEST_CASE("evaluate status and error paths") {
    CHECK_THROWS_AS((void)evaluate(Parameters{0, 1, 0}), DomainError);
    CHECK_THROWS_AS((void)evaluate(Parameters{-1, 0, 0}), DomainError);
    CHECK_THROWS_AS((void)evaluate(Parameters{1, -0.5, 0}), DomainError);
    CHECK_THROWS_AS((void)evaluate(Parameters{1, 1, std::nan("")}), DomainError);
    CHECK_THROWS_AS((void)evaluate(Parameters{std::numeric_limits<double>::infinity(), 1, 0}), DomainError);

    EngineConfig bad;
    bad.max_order = 1;
    CHECK_THROWS_AS((void)evaluate(Parameters{1, 1, 0}, bad), std::invalid_argument);
    bad = {};
    bad.rel_tolerance = 1.0;
    CHECK_THROWS_AS((void)evaluate(Parameters{1, 1, 0}, bad), std::invalid_argument);

    SUBCASE("order cap reports the best approximant") {
        EngineConfig cfg;
        cfg.max_order = 5;
        const auto r = evaluate(Parameters{10, 5, 0}, cfg);
        CHECK(r.status == Status::MaxOrderReached);
        CHECK(r.order <= 5);
        CHECK(r.est_rel_error > cfg.rel_tolerance);
        const auto traj = evaluate_sequence(Parameters{10, 5, 0}, 5);
        CHECK(r.value == traj.entries[static_cast<std::size_t>(r.order)].approximant);
    }
    SUBCASE("a single agreement can be a coincidence") {
        // With 2y = nu + 1 the first two approximants are equal exactly.
        const Parameters p{4, 2, 3};
        const auto t = evaluate_sequence(p, 2);
        CHECK(t.entries[1].approximant == t.entries[2].approximant);
        EngineConfig once;
        once.agreement_count = 1;
        CHECK(evaluate(p, once).order == 2);
        const auto r = evaluate(p);
        CHECK(r.order > 2);
        CHECK(rel_diff(r.value, 0.0004170423397336784428949363) < 1e-12);
    }
    SUBCASE("every order degenerate") {
        EngineConfig cfg;
        cfg.denom_floor = 1e300;
        const auto r = evaluate(Parameters{4, 2, 3}, cfg);
        CHECK(r.status == Status::DegenerateDenominator);
        CHECK(std::isnan(r.value));
    }
    SUBCASE("converged implies the tolerance holds") {
        for (double tol : {1e-6, 1e-10, 1e-14}) {
            EngineConfig cfg;
            cfg.rel_tolerance = tol;
            const auto r = evaluate(Parameters{10, 5, 0}, cfg);
            CHECK(r.status == Status::Converged);
            CHECK(r.est_rel_error <= tol);
            CHECK(r.order <= cfg.max_order);
        }
    }
}

TEST_CASE("degenerate first order is skipped") {
    const Parameters p{1, 2, 0};
    const auto traj = evaluate_sequence(p, 3);
    CHECK(traj.entries[1].skipped);
    CHECK(std::isnan(traj.entries[1].approximant));
    CHECK_FALSE(traj.entries[2].skipped);
    const auto r = evaluate(p);
    CHECK(r.status == Status::Converged);
    CHECK(rel_diff(r.value, 0.06176699783935735824646206) < 1e-12);
}

TEST_CASE("evaluate_sequence") {
    SUBCASE("n_max = 0") {
        const auto t = evaluate_sequence(Parameters{3, 1, 2}, 0);
        REQUIRE(t.entries.size() == 1);
        CHECK(t.entries[0].order == 0);
        CHECK(t.entries[0].approximant == 0.0);
        CHECK(t.entries[0].denominator == 1.0);
    }
    SUBCASE("first order at (4, 2, 3)") {
        const auto t = evaluate_sequence(Parameters{4, 2, 3}, 1);
        REQUIRE(t.entries.size() == 2);
        CHECK(rel_diff(t.entries[1].approximant, std::exp(-6.0) / 6.0) < 1e-15);
    }
    SUBCASE("matches the symbolic oracle for 20 orders at (4, 2, 3)") {
        const Parameters p{4, 2, 3};
        const auto t = evaluate_sequence(p, 20);
        const auto o = oracle_trajectory(p, 20);
        REQUIRE(o.entries.size() == 21);
        for (int n = 1; n <= 20; ++n) {
            const auto& e = t.entries[static_cast<std::size_t>(n)];
            const auto& q = o.entries[static_cast<std::size_t>(n)];
            CHECK(rel_diff(e.approximant, std::exp(-6.0) * q.ntilde / q.dhat) < 1e-12);
        }
    }
    SUBCASE("negative n_max") { CHECK_THROWS_AS((void)evaluate_sequence(Parameters{1, 1, 1}, -1), std::invalid_argument); }
    SUBCASE("domain error") { CHECK_THROWS_AS((void)evaluate_sequence(Parameters{0, 1, 1}, 3), DomainError); }
}

TEST_CASE("scaled denominator times e^(x+y) is the unscaled one") {
    for (const auto& p : testsupport::test_grid()) {
        CAPTURE(p.x);
        CAPTURE(p.y);
        CAPTURE(p.nu);
        const double e = std::exp(p.x + p.y);
        Window raw{1, (p.x + p.nu + 1 - p.y) * e, e, 0.0, SequenceKind::Denominator};
        // The same recurrence on absolute values bounds how far rounding can
        // move either run; cancellation (y > x) makes it exceed |D_n|.
        Window cond{1, std::abs(raw.q_n), e, 0.0, SequenceKind::Denominator};
        const auto t = evaluate_sequence(p, 10);
        for (int n = 1; n <= 10; ++n) {
            if (n > 1) {
                raw.advance(*recurrence_step(raw, p));
                const double k = n - 1;
                const double a = std::abs(p.x + p.nu + 1 + 2 * k - p.y), b = std::abs(2 * p.y - p.nu - k);
                cond.advance((a * cond.q_n + b * cond.q_nm1 + p.y * cond.q_nm2) / (k + 1));
            }
            CAPTURE(n);
            const double scaled = t.entries[static_cast<std::size_t>(n)].denominator * e;
            CHECK(std::abs(scaled - raw.q_n) <= 1e-15 * cond.q_n);
            if (p.y == 0) CHECK(rel_diff(scaled, raw.q_n) <= 1e-15);
        }
    }
}

TEST_CASE("ratio invariance under a common scale of both sequences") {
    const Parameters p{4, 2, 3};
    const auto num = Window::start(SequenceKind::Numerator, p);
    const auto den = Window::start(SequenceKind::Denominator, p);
    const auto base = run_from(num, den, p, 40);
    auto scaled_run = [&](double c) {
        auto n2 = num;
        auto d2 = den;
        n2.q_n *= c;
        d2.q_n *= c;
        d2.q_nm1 *= c;
        return run_from(n2, d2, p, 40);
    };
    SUBCASE("powers of two leave every approximant bitwise unchanged") {
        for (double c : {-2.0, std::ldexp(1.0, -300), std::ldexp(1.0, 400)}) CHECK(scaled_run(c) == base);
    }
    SUBCASE("arbitrary constants: rounding drift only") {
        const double eps = std::numeric_limits<double>::epsilon();
        for (double c : {3.7, -0.3, 1e-100, 1e120}) {
            const auto g = scaled_run(c);
            for (std::size_t i = 0; i < g.size(); ++i) {
                const int n = static_cast<int>(i) + 1;
                CAPTURE(n);
                CAPTURE(c);
                // 1e-15 while the drift is a few ulps, then at most n ulps.
                CHECK(rel_diff(g[i], base[i]) <= (n <= 12 ? 1e-15 : n * eps));
            }
        }
    }
}

TEST_CASE("oracle equivalence of the raw sequences over the grid") {
    double worst = 0.0;
    for (const auto& p : testsupport::test_grid()) {
        const auto t = evaluate_sequence(p, 20);
        const auto o = oracle_trajectory(p, 20);
        REQUIRE(o.entries.size() == 21);
        for (int n = 0; n <= 20; ++n) {
            const auto& e = t.entries[static_cast<std::size_t>(n)];
            const auto& q = o.entries[static_cast<std::size_t>(n)];
            worst = std::max({worst, rel_diff(e.numerator, q.ntilde), rel_diff(e.denominator, q.dhat)});
        }
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("legacy equivalence for n <= 8") {
    for (const auto& p : testsupport::test_grid()) {
        const auto t = evaluate_sequence(p, 8);
        for (int n = 1; n <= 8; ++n) {
            const auto& e = t.entries[static_cast<std::size_t>(n)];
            if (e.skipped) continue;
            CAPTURE(n);
            CAPTURE(p.x);
            CAPTURE(p.y);
            CAPTURE(p.nu);
            CHECK(rel_diff(e.approximant, legacy::legacy_G(n, p)) <= 1e-8);
        }
    }
}

TEST_CASE("y = 0 reduces to the exponential integral") {
    for (double x : {0.5, 1.0, 4.0, 10.0, 25.0})
        for (int nu : {0, 1, 2, 3, 5}) {
            CAPTURE(x);
            CAPTURE(nu);
            const auto r = evaluate(Parameters{x, 0, static_cast<double>(nu)});
            CHECK(r.status == Status::Converged);
            CHECK(rel_diff(r.value, oracles::expint(nu + 1, x)) < 1e-12);
        }
}

TEST_CASE("K_nu(x, y) + K_-nu(y, x) is the full-line integral") {
    for (const auto& p : {Parameters{4, 2, 3}, Parameters{10, 5, 0}, Parameters{3, 3, 0}, Parameters{2, 1, 1.5}}) {
        const double sum = evaluate(p).value + evaluate(Parameters{p.y, p.x, -p.nu}).value;
        CHECK(rel_diff(sum, full_integral(p).value) < 1e-10);
    }
}

TEST_CASE("operation count is linear in n_max") {
    const Parameters p{4, 2, 3};
    const double c = static_cast<double>(2 * kOpsPerStep + kOpsPerApproximant);
    for (int n : {1, 10, 100, 1000, 5000}) {
        const auto t = evaluate_sequence(p, n);
        CHECK(static_cast<double>(t.arithmetic_ops) <= c * n);
    }
    const auto a = evaluate_sequence(p, 1000).arithmetic_ops;
    const auto b = evaluate_sequence(p, 2000).arithmetic_ops;
    CHECK(static_cast<double>(b) / static_cast<double>(a) == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("renormalization keeps long runs finite without changing approximants") {
    // Unscaled, both sequences pass 1e308 near n = 1500 here.
    const Parameters p{100, 50, 0};
    const auto t = evaluate_sequence(p, 3000);
    CHECK_FALSE(t.truncated);
    REQUIRE(t.entries.size() == 3001);
    CHECK(t.entries.back().scale_exponent > 0);
    const double ref = tail_integral(p).value;
    for (int n : {100, 500, 1000, 2000, 3000}) {
        const auto& e = t.entries[static_cast<std::size_t>(n)];
        CHECK(std::isfinite(e.numerator));
        CHECK(std::abs(e.denominator) <= 1e251);
        CHECK(rel_diff(e.approximant, ref) < 1e-12);
    }
}

TEST_CASE("overflow-scale arguments underflow cleanly") {
    const Parameters p{500, 500, 0};
    const auto r = evaluate(p);
    CHECK(r.status == Status::Converged);
    CHECK(std::isfinite(r.value));
    CHECK(r.value == 0.0);  // true value ~ e^-1000
    const auto q = tail_integral(p);
    CHECK(rel_diff(r.scaled_value, q.scaled_value) < 1e-12);

    const Parameters edge{700, 0, 0};
    const auto re = evaluate(edge);
    CHECK(re.status == Status::Converged);
    CHECK(re.value > 0.0);
    CHECK(rel_diff(re.value, oracles::expint(1, 700.0)) < 1e-10);
}

TEST_CASE("property: agreement with quadrature over random parameters") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> ux(0.5, 20.0), uf(0.0, 1.0), unu(-1.5, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double x = ux(rng);
        const Parameters p{x, uf(rng) * x, unu(rng)};
        CAPTURE(p.x);
        CAPTURE(p.y);
        CAPTURE(p.nu);
        const auto r = evaluate(p);
        CHECK(r.status == Status::Converged);
        CHECK(rel_diff(r.value, tail_integral(p).value) < 1e-11);
    }
}

#ifdef INCBESSEL_HAVE_EXTENDED
TEST_CASE("extended precision goes past binary64") {
    using LD = long double;
    EngineConfig cfg;
    cfg.rel_tolerance = 1e-18;
    cfg.max_order = 400;
    for (const auto& ref : {testsupport::references()[1], testsupport::references()[4]}) {
        const auto r = evaluate(ref.p.as<LD>(), cfg);
        CHECK(r.status == Status::Converged);
        // Reference is only stored as a double; compare to its rounding.
        CHECK(rel_diff(static_cast<double>(r.value), ref.value) <= 1.2e-16);
    }
    // Against the extended quadrature the agreement is well below binary64 epsilon.
    QuadratureConfig qc;
    qc.rel_target = 1e-18;
    const BasicParameters<LD> p{4, 2, 3};
    const LD q = tail_integral(p, qc).value;
    CHECK(rel_diff(evaluate(p, cfg).value, q) < 1e-17L);
}
#endif
