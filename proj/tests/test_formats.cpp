#include <doctest.h>

#include "rtdig/formats.hpp"

#include "generators.hpp"
#include "ta_fixtures.hpp"

#include <cstdio>
#include <fstream>
#include <random>

using namespace rtdig;

TEST_CASE("trace documents parse exactly") {
    const std::string text = R"({
      "observations": [
        {"atoms": ["p"], "time": "0"},
        {"atoms": ["p", "q"], "time": "7/10"},
        {"atoms": [], "time": "1.2"},
        {"atoms": ["r"], "time": 3}
      ]
    })";
    const TimedStateSequence eta = parse_trace_text(text);
    REQUIRE(eta.size() == 4);
    CHECK(eta.observations[0].time == Rational(0));
    CHECK(eta.observations[1].time == Rational(7, 10));
    CHECK(eta.observations[1].atoms == StateLabel{"p", "q"});
    CHECK(eta.observations[2].time == Rational(6, 5));
    CHECK(eta.observations[2].atoms.empty());
    CHECK(eta.observations[3].time == Rational(3));
}

TEST_CASE("trace documents reject sloppy input") {
    CHECK_THROWS_AS(parse_trace_text("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_trace_text("{}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_trace_text(R"({"observations": 3})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_trace_text(R"({"observations": [{"atoms": ["p"]}]})"),
                    std::invalid_argument);
    // JSON floats are inexact; fractional times must be strings.
    CHECK_THROWS_AS(parse_trace_text(R"({"observations": [{"atoms": [], "time": 0.7}]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_trace_text(R"({"observations": [{"atoms": [], "time": true}]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_trace_text(R"({"observations": [{"atoms": [3], "time": "1"}]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_trace_text(R"({"observations": [{"atoms": [], "time": "1/3/5"}]})"),
                    std::invalid_argument);
    // Semantic validation still applies: negative or non-monotone times.
    CHECK_THROWS_AS(parse_trace_text(R"({"observations": [{"atoms": [], "time": "-1"}]})"),
                    std::domain_error);
    CHECK_THROWS_AS(parse_trace_text(R"({"observations": [
        {"atoms": [], "time": "2"}, {"atoms": [], "time": "1"}]})"),
                    std::domain_error);
}

TEST_CASE("trace serialization round-trips") {
    std::mt19937_64 rng(654);
    for (int trial = 0; trial < 200; ++trial) {
        const TimedStateSequence eta = gen::random_trace(rng, 6, 5, {"p", "q", "r"});
        const std::string text = serialize_trace(eta);
        CHECK(parse_trace_text(text) == eta);
        CHECK(serialize_trace(parse_trace_text(text)) == text);
    }
    CHECK(serialize_trace(TimedStateSequence{}) == "{\n  \"observations\": []\n}\n");
}

TEST_CASE("automaton documents parse with defaults and == expansion") {
    const std::string text = R"({
      "clocks": ["x"],
      "locations": ["s0", "s1"],
      "initial": "s0",
      "accepting": ["s1"],
      "invariants": {"s0": [{"clock": "x", "op": "<=", "const": 3}]},
      "edges": [
        {"from": "s0", "to": "s1", "action": "a",
         "guard": [{"clock": "x", "op": "==", "const": 2}], "resets": ["x"]},
        {"from": "s1", "to": "s1", "action": "b"}
      ]
    })";
    const TimedAutomaton a = parse_automaton_text(text);
    CHECK(a.clocks == std::vector<std::string>{"x"});
    CHECK(a.initial == "s0");
    CHECK(a.accepting == std::set<std::string>{"s1"});
    REQUIRE(a.edges.size() == 2);
    // "==" expands to the two closed atoms.
    REQUIRE(a.edges[0].guard.size() == 2);
    CHECK(a.edges[0].guard[0].op == RelOp::LE);
    CHECK(a.edges[0].guard[1].op == RelOp::GE);
    CHECK(a.edges[0].guard[0].bound == 2);
    CHECK(a.edges[0].resets == std::set<std::string>{"x"});
    // Omitted guard and resets default to empty.
    CHECK(a.edges[1].guard.empty());
    CHECK(a.edges[1].resets.empty());
    REQUIRE(a.invariants.count("s0") == 1);
    CHECK(a.invariants.at("s0")[0].op == RelOp::LE);
}

TEST_CASE("automaton documents reject malformed input") {
    CHECK_THROWS_AS(parse_automaton_text("[]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_automaton_text("{\"clocks\": []}"), std::invalid_argument);
    const std::string base = R"({
      "clocks": ["x"], "locations": ["s0"], "initial": "s0", "accepting": [],
      "edges": [{"from": "s0", "to": "s0", "action": "a",
                 "guard": [{"clock": "x", "op": "OP", "const": CONST}]}]
    })";
    const auto with = [&](const std::string& op, const std::string& c) {
        std::string text = base;
        text.replace(text.find("OP"), 2, op);
        text.replace(text.find("CONST"), 5, c);
        return text;
    };
    CHECK_NOTHROW(parse_automaton_text(with("<=", "1")));
    CHECK_THROWS_AS(parse_automaton_text(with("=<", "1")), std::invalid_argument);
    CHECK_THROWS_AS(parse_automaton_text(with("<=", "-1")), std::invalid_argument);
    CHECK_THROWS_AS(parse_automaton_text(with("<=", "1.5")), std::invalid_argument);
    // Undeclared names are caught by semantic validation.
    std::string bad_clock = with("<=", "1");
    bad_clock.replace(bad_clock.find("{\"clock\": \"x\""), 13, "{\"clock\": \"y\"");
    CHECK_THROWS_AS(parse_automaton_text(bad_clock), std::invalid_argument);
    std::string bad_initial = with("<=", "1");
    bad_initial.replace(bad_initial.find("\"initial\": \"s0\""), 15, "\"initial\": \"zz\"");
    CHECK_THROWS_AS(parse_automaton_text(bad_initial), std::invalid_argument);
}

TEST_CASE("automaton serialization round-trips") {
    for (const auto& a :
         {fixtures::ta_ge2(), fixtures::ta_gt0(), fixtures::ta_mixed(), fixtures::ta_chain3(),
          fixtures::ta_exact_one_branch(), fixtures::ta_unrealizable_strict()}) {
        const std::string text = serialize_automaton(a);
        const TimedAutomaton back = parse_automaton_text(text);
        CHECK(back.clocks == a.clocks);
        CHECK(back.locations == a.locations);
        CHECK(back.initial == a.initial);
        CHECK(back.accepting == a.accepting);
        CHECK(back.invariants == a.invariants);
        CHECK(back.edges == a.edges);
        CHECK(serialize_automaton(back) == text);
    }
}

TEST_CASE("verdict reports serialize with sorted keys") {
    Verdict plain = Verdict::no_counterexample(5);
    CHECK(serialize_verdict(plain) ==
          "{\n  \"kind\": \"NoCounterexampleFound\",\n  \"notes\": [],\n  \"trials\": 5\n}\n");

    Verdict full = Verdict::counterexample();
    full.trace = word_as_trace({{"a", Rational(1, 2)}});
    full.eps = Rational(1, 2);
    full.tick_word = TickWord{"a"};
    full.notes = {"first", "second"};
    const std::string text = serialize_verdict(full);
    CHECK(text == serialize_verdict(full));  // byte-stable
    CHECK(text.find("\"kind\": \"Counterexample\"") != std::string::npos);
    CHECK(text.find("\"eps\": \"1/2\"") != std::string::npos);
    CHECK(text.find("\"tick_word\": [\n      \"a\"\n    ]") != std::string::npos);
    CHECK(text.find("\"time\": \"1/2\"") != std::string::npos);
    // Alphabetical key order: evidence before kind before notes before trials.
    CHECK(text.find("\"evidence\"") < text.find("\"kind\""));
    CHECK(text.find("\"kind\"") < text.find("\"notes\""));
    CHECK(text.find("\"notes\"") < text.find("\"trials\""));

    Verdict inconclusive = Verdict::inconclusive("not established");
    const std::string itext = serialize_verdict(inconclusive);
    CHECK(itext.find("\"reason\": \"not established\"") != std::string::npos);
}

TEST_CASE("file loading wrappers") {
    const std::string trace_path = "format_test_trace.json";
    {
        std::ofstream out(trace_path);
        out << R"({"observations": [{"atoms": ["p"], "time": "1/2"}]})";
    }
    const TimedStateSequence eta = load_trace_file(trace_path);
    CHECK(eta.size() == 1);
    std::remove(trace_path.c_str());

    const std::string ta_path = "format_test_ta.json";
    {
        std::ofstream out(ta_path);
        out << serialize_automaton(fixtures::ta_ge2());
    }
    const TimedAutomaton a = load_automaton_file(ta_path);
    CHECK(a.initial == "s0");
    std::remove(ta_path.c_str());

    CHECK_THROWS_AS(load_trace_file("does_not_exist.json"), std::invalid_argument);
    CHECK_THROWS_AS(load_automaton_file("does_not_exist.json"), std::invalid_argument);
}
