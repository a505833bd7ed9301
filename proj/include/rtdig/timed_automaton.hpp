// timed_automaton.hpp -- timed automata over finite timed words
//
// Guards and invariants are conjunctions of atomic constraints x ~ c with
// ~ in {<, <=, >=, >} and integer c >= 0; disjunction is expressed by
// parallel edges. A timed word is accepted if some run fires each edge at
// the word's timestamp with its guard satisfied, respects location
// invariants, and ends in an accepting location. Clock values are exact
// rationals throughout, so boundary cases (value exactly at a bound) are
// decided without error.

#pragma once

#include "rtdig/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rtdig {

enum class RelOp { LT, LE, GE, GT };

std::string rel_op_str(RelOp op);

struct ClockConstraint {
    std::string clock;
    RelOp op;
    std::int64_t bound = 0;  // always >= 0

    bool holds(const Rational& value) const;
    std::string str() const;

    bool operator==(const ClockConstraint&) const = default;
};

struct Edge {
    std::string from;
    std::string to;
    std::string action;
    std::vector<ClockConstraint> guard;
    std::set<std::string> resets;

    bool operator==(const Edge&) const = default;
};

enum class Classification { Closed, Open, Mixed };

std::string classification_str(Classification c);

struct TimedAutomaton {
    std::vector<std::string> clocks;
    std::vector<std::string> locations;
    std::string initial;
    std::set<std::string> accepting;
    std::map<std::string, std::vector<ClockConstraint>> invariants;
    std::vector<Edge> edges;

    /// Throws std::invalid_argument when a name is undeclared, a bound is
    /// negative, or an action collides with the reserved tick symbol.
    void validate() const;

    /// Sorted distinct edge actions.
    std::vector<std::string> alphabet() const;

    /// Largest bound appearing in any guard or invariant; 0 if none.
    std::int64_t max_constant() const;

    const std::vector<ClockConstraint>* invariant_of(const std::string& location) const;
};

/// Closed iff every constraint is non-strict, Open iff every constraint is
/// strict; an automaton with no constraints at all counts as Closed.
Classification classify(const TimedAutomaton& a);

/// Weakens every strict constraint (< to <=, > to >=). The result is Closed
/// and its dense language contains the original's.
TimedAutomaton closure_transform(const TimedAutomaton& a);

/// Tightens every non-strict constraint (<= to <, >= to >). The result is
/// Open whenever any constraint is present.
TimedAutomaton interior_transform(const TimedAutomaton& a);

/// Finite word of (action, timestamp) pairs with weakly monotone times.
using TimedWord = std::vector<std::pair<std::string, Rational>>;

void validate_timed_word(const TimedWord& word);

struct MembershipResult {
    bool accepted = false;
    std::vector<std::size_t> run;  ///< indices into edges, one per letter

    explicit operator bool() const { return accepted; }
};

/// Exact acceptance check by depth-first search over runs. Invariants are
/// enforced at location entry and at every edge-firing time; since each
/// atomic constraint carves a time interval, holding at both endpoints of a
/// stay implies holding throughout it.
MembershipResult simulate_membership(const TimedAutomaton& a, const TimedWord& word);

struct TraceGenConfig {
    std::uint64_t seed = 0;
    std::int64_t denominator_bound = 64;  ///< sampled delays are multiples of 1/bound
    int max_expansions = 4000;            ///< backtracking budget
};

/// Seeded randomized search for an accepted word of exactly `length`
/// letters. Returns std::nullopt when the budget is exhausted (in
/// particular when the language has no word of that length). The result,
/// when present, always passes simulate_membership.
std::optional<TimedWord> generate_accepted_trace(const TimedAutomaton& a,
                                                 std::size_t length,
                                                 const TraceGenConfig& cfg);

/// Seeded random walk that ignores acceptance and reports every location
/// visited; used for dense-side reachability estimates.
std::set<std::string> explore_locations_dense(const TimedAutomaton& a,
                                              std::size_t walks,
                                              std::size_t walk_length,
                                              std::uint64_t seed);

/// Reserved symbol for one integral time unit; timed-automaton actions must
/// not collide with it.
inline constexpr const char* kTickName = "TICK";

} // namespace rtdig
