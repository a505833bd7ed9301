#include <doctest.h>

#include "rtdig/trace.hpp"

#include <random>
#include <vector>

using rtdig::DigitallyTimedSequence;
using rtdig::Rational;
using rtdig::TimedStateSequence;

namespace {

TimedStateSequence seq(const std::vector<Rational>& times) {
    TimedStateSequence eta;
    for (const Rational& t : times) {
        eta.observations.push_back({{}, t});
    }
    return eta;
}

// Independent oracle for rounding p/q (>= 0) with threshold a/b, written
// against raw integers only: frac(p/q) <= a/b  <=>  (p mod q) * b <= a * q.
std::int64_t oracle_round(std::int64_t p, std::int64_t q, std::int64_t a, std::int64_t b) {
    const std::int64_t fl = p / q;
    const std::int64_t rem = p - fl * q;
    return rem * b <= a * q ? fl : fl + 1;
}

} // namespace

TEST_CASE("scalar rounding: pinned values") {
    CHECK(rtdig::digitize_scalar(Rational(5, 2), Rational(1, 2)) == 2);
    CHECK(rtdig::digitize_scalar(Rational(5, 2), Rational(2, 5)) == 3);
    CHECK(rtdig::digitize_scalar(Rational(3), Rational(1, 7)) == 3);

    // Threshold exactly equal to the fractional part rounds down.
    CHECK(rtdig::digitize_scalar(Rational(7, 10), Rational(7, 10)) == 0);
    CHECK(rtdig::digitize_scalar(Rational(7, 10), Rational(69, 100)) == 1);
    CHECK(rtdig::digitize_scalar(Rational(0), Rational(1, 2)) == 0);
    CHECK(rtdig::digitize_scalar(Rational(4), Rational(1)) == 4);
}

TEST_CASE("scalar rounding: domain errors") {
    CHECK_THROWS_WITH_AS(rtdig::digitize_scalar(Rational(1, 2), Rational(0)),
                         "eps must lie in (0,1]", std::domain_error);
    CHECK_THROWS_WITH_AS(rtdig::digitize_scalar(Rational(1, 2), Rational(11, 10)),
                         "eps must lie in (0,1]", std::domain_error);
    CHECK_THROWS_WITH_AS(rtdig::digitize_scalar(Rational(-1, 2), Rational(1, 2)),
                         "digitization requires a nonnegative value", std::domain_error);
}

TEST_CASE("scalar rounding agrees with the integer oracle on random inputs") {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 10000; ++i) {
        const std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 1000);
        const std::int64_t p = static_cast<std::int64_t>(rng() % 1000000);
        const std::int64_t b = 1 + static_cast<std::int64_t>(rng() % 1000);
        const std::int64_t a = 1 + static_cast<std::int64_t>(rng() % b);
        CHECK(rtdig::digitize_scalar(Rational(p, q), Rational(a, b)) == oracle_round(p, q, a, b));
    }
}

TEST_CASE("scalar rounding is monotone and stays within one unit") {
    std::mt19937_64 rng(999);
    for (int i = 0; i < 2000; ++i) {
        const Rational x(static_cast<std::int64_t>(rng() % 500), 1 + static_cast<std::int64_t>(rng() % 50));
        const Rational y = x + Rational(static_cast<std::int64_t>(rng() % 200), 1 + static_cast<std::int64_t>(rng() % 50));
        const std::int64_t b = 1 + static_cast<std::int64_t>(rng() % 64);
        const Rational eps(1 + static_cast<std::int64_t>(rng() % b), b);

        const std::int64_t dx = rtdig::digitize_scalar(x, eps);
        const std::int64_t dy = rtdig::digitize_scalar(y, eps);
        CHECK(dx <= dy);                       // monotone in the value
        CHECK(Rational(dx) >= x - Rational(1));
        CHECK(Rational(dx) <= x + Rational(1));
    }
}

TEST_CASE("rounding both endpoints with one eps preserves non-strict distance bounds") {
    // For integer c: y - x <= c implies [y] - [x] <= c, and y - x >= c
    // implies [y] - [x] >= c, when both are rounded with the same eps.
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 5000; ++i) {
        const Rational x(static_cast<std::int64_t>(rng() % 400), 1 + static_cast<std::int64_t>(rng() % 40));
        const Rational y = x + Rational(static_cast<std::int64_t>(rng() % 300), 1 + static_cast<std::int64_t>(rng() % 40));
        const std::int64_t b = 1 + static_cast<std::int64_t>(rng() % 100);
        const Rational eps(1 + static_cast<std::int64_t>(rng() % b), b);

        const Rational d = y - x;
        const std::int64_t di = rtdig::digitize_scalar(y, eps) - rtdig::digitize_scalar(x, eps);
        for (std::int64_t c = 0; c <= 8; ++c) {
            if (d <= Rational(c)) CHECK(di <= c);
            if (d >= Rational(c)) CHECK(di >= c);
        }
    }
}

TEST_CASE("trace digitization: pinned values") {
    const TimedStateSequence eta = seq({Rational(0), Rational(7, 10), Rational(6, 5)});

    CHECK(rtdig::digitize_trace(eta, Rational(1, 2)).times == std::vector<std::int64_t>{0, 1, 1});
    CHECK(rtdig::digitize_trace(eta, Rational(4, 5)).times == std::vector<std::int64_t>{0, 0, 1});

    // States ride along unchanged.
    TimedStateSequence labeled = eta;
    labeled.observations[1].atoms = {"p", "q"};
    const DigitallyTimedSequence d = rtdig::digitize_trace(labeled, Rational(1, 2));
    CHECK(d.states[1] == rtdig::StateLabel{"p", "q"});
    CHECK(d.states[0].empty());

    CHECK(rtdig::digitize_times({Rational(0), Rational(7, 10), Rational(6, 5)}, Rational(1, 2)) ==
          std::vector<std::int64_t>{0, 1, 1});
}

TEST_CASE("critical epsilons") {
    CHECK(rtdig::critical_epsilons(seq({Rational(0), Rational(7, 10), Rational(6, 5)})) ==
          std::vector<Rational>{Rational(1, 5), Rational(7, 10), Rational(1)});
    CHECK(rtdig::critical_epsilons(seq({Rational(0), Rational(2), Rational(5)})) ==
          std::vector<Rational>{Rational(1)});
    CHECK(rtdig::critical_epsilons(seq({Rational(1, 3), Rational(1, 3)})) ==
          std::vector<Rational>{Rational(1, 3), Rational(1)});
    CHECK(rtdig::critical_epsilons(seq({})) == std::vector<Rational>{Rational(1)});
}

TEST_CASE("digitization classes partition (0,1]") {
    const TimedStateSequence eta = seq({Rational(0), Rational(7, 10), Rational(6, 5)});
    const auto classes = rtdig::digitization_classes(eta);

    REQUIRE(classes.size() == 3);
    CHECK(classes[0].range_str() == "(0, 1/5)");
    CHECK(classes[1].range_str() == "[1/5, 7/10)");
    CHECK(classes[2].range_str() == "[7/10, 1]");
    CHECK(classes[0].eps == Rational(1, 10));
    CHECK(classes[1].eps == Rational(1, 5));
    CHECK(classes[2].eps == Rational(7, 10));
    CHECK(classes[0].trace.times == std::vector<std::int64_t>{0, 1, 2});
    CHECK(classes[1].trace.times == std::vector<std::int64_t>{0, 1, 1});
    CHECK(classes[2].trace.times == std::vector<std::int64_t>{0, 0, 1});

    // Structural partition properties.
    CHECK(classes.front().lo == Rational(0));
    CHECK_FALSE(classes.front().lo_closed);
    CHECK(classes.back().hi == Rational(1));
    CHECK(classes.back().hi_closed);
    for (std::size_t i = 0; i + 1 < classes.size(); ++i) {
        CHECK(classes[i].hi == classes[i + 1].lo);
        CHECK_FALSE(classes[i].hi_closed);
        CHECK(classes[i + 1].lo_closed);
    }
    for (const auto& cls : classes) {
        if (cls.lo_closed) {
            CHECK(cls.lo <= cls.eps);
        } else {
            CHECK(cls.lo < cls.eps);
        }
        CHECK(cls.eps <= cls.hi);
        CHECK(rtdig::digitize_trace(eta, cls.eps) == cls.trace);
    }
}

TEST_CASE("integer-only trace has the single class (0, 1]") {
    const auto classes = rtdig::digitization_classes(seq({Rational(1), Rational(4)}));
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].range_str() == "(0, 1]");
    CHECK(classes[0].eps == Rational(1));
    CHECK(classes[0].trace.times == std::vector<std::int64_t>{1, 4});
}

TEST_CASE("digitization set: pinned values") {
    const auto ds = rtdig::digitization_set(seq({Rational(0), Rational(7, 10), Rational(6, 5)}));
    std::set<std::vector<std::int64_t>> times;
    for (const auto& d : ds) times.insert(d.times);
    CHECK(times == std::set<std::vector<std::int64_t>>{{0, 1, 2}, {0, 1, 1}, {0, 0, 1}});

    const auto single = rtdig::digitization_set(seq({Rational(1, 2)}));
    std::set<std::vector<std::int64_t>> single_times;
    for (const auto& d : single) single_times.insert(d.times);
    CHECK(single_times == std::set<std::vector<std::int64_t>>{{0}, {1}});
}

TEST_CASE("digitization set equals a fine-grid sweep on random traces") {
    // For timestamps on the 1/D grid every constancy class of eps contains a
    // multiple of 1/(2D), so sweeping eps = j/(2D) for j = 1..2D finds every
    // class representative.
    const std::int64_t D = 60;
    std::mt19937_64 rng(777);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<Rational> times;
        Rational t(0);
        const std::size_t len = 1 + rng() % 6;
        for (std::size_t i = 0; i < len; ++i) {
            t = t + Rational(static_cast<std::int64_t>(rng() % (2 * D)), D);
            times.push_back(t);
        }
        const TimedStateSequence eta = seq(times);

        std::set<DigitallyTimedSequence> swept;
        for (std::int64_t j = 1; j <= 2 * D; ++j) {
            swept.insert(rtdig::digitize_trace(eta, Rational(j, 2 * D)));
        }
        CHECK(rtdig::digitization_set(eta) == swept);
    }
}

TEST_CASE("sequence validation") {
    TimedStateSequence bad1 = seq({Rational(-1, 2)});
    CHECK_THROWS_AS(bad1.validate(), std::domain_error);

    TimedStateSequence bad2 = seq({Rational(2), Rational(1)});
    CHECK_THROWS_AS(bad2.validate(), std::domain_error);

    TimedStateSequence ok = seq({Rational(0), Rational(0), Rational(1, 2)});
    CHECK_NOTHROW(ok.validate());
}

TEST_CASE("empty trace digitizes to the empty trace") {
    const TimedStateSequence empty;
    CHECK(rtdig::digitization_set(empty).size() == 1);
    CHECK(rtdig::digitize_trace(empty, Rational(1)).size() == 0);
}

TEST_CASE("digital sequence round-trips through dense view") {
    DigitallyTimedSequence d;
    d.states = {{"p"}, {}, {"q"}};
    d.times = {0, 2, 2};
    const TimedStateSequence eta = d.as_timed_sequence();
    REQUIRE(eta.size() == 3);
    CHECK(eta.observations[2].time == Rational(2));
    CHECK(rtdig::digitize_trace(eta, Rational(1)) == d);
}
