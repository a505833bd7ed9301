// tick_automaton.hpp -- integral semantics of a timed automaton as an NFA
//
// Integer time is encoded in unary: the word (a1,n1)(a2,n2)... becomes
// TICK^{n1} a1 TICK^{n2-n1} a2 ..., so a finite automaton over the event
// alphabet plus TICK captures exactly the integer-timed language. Clock
// values are capped at cmax+1: beyond every constant, larger values are
// indistinguishable, which keeps the state space finite.

#pragma once

#include "rtdig/errors.hpp"
#include "rtdig/timed_automaton.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rtdig {

/// Word over event symbols plus the reserved TICK symbol.
using TickWord = std::vector<std::string>;

/// Action word with absolute integer timestamps, weakly monotone.
using IntegerTimedWord = std::vector<std::pair<std::string, std::int64_t>>;

struct TickState {
    std::string location;
    std::vector<std::int64_t> clocks;  ///< capped at cmax+1, aligned with clock_names

    bool operator==(const TickState&) const = default;
};

/// NFA over events + TICK. States are kept in BFS discovery order, which
/// makes every derived artifact (witnesses, graph exports) deterministic.
/// An empty state vector denotes the empty language.
struct TickAutomaton {
    std::vector<std::string> symbols;  ///< [0] is always the TICK symbol
    std::vector<std::string> clock_names;
    std::vector<TickState> states;
    std::size_t initial = 0;
    std::vector<char> accepting;  ///< per state
    /// transitions[state][symbol] -> ascending target state indices
    std::vector<std::vector<std::vector<std::size_t>>> transitions;

    std::size_t size() const { return states.size(); }
    std::optional<std::size_t> symbol_index(const std::string& name) const;
    /// "location|v1,v2,..." (bare location when there are no clocks).
    std::string state_label(std::size_t i) const;
};

inline constexpr std::size_t kDefaultStateCap = 1000000;

/// Explores (location, capped valuation) pairs reachable from the initial
/// configuration. TICK advances every clock by one (capped) and requires the
/// location invariant at the successor; event transitions require the guard
/// now and the target invariant after resets. Throws ResourceLimitError when
/// more than `state_cap` states would be materialized.
TickAutomaton build_tick_automaton(const TimedAutomaton& a,
                                   std::size_t state_cap = kDefaultStateCap);

/// Unary encoding; throws std::domain_error on negative or decreasing
/// timestamps. decode_tick_word(encode_integer_word(w)) == w.
TickWord encode_integer_word(const IntegerTimedWord& w);

/// Inverse of the encoding; trailing TICKs carry no event and are dropped.
IntegerTimedWord decode_tick_word(const TickWord& u);

/// Standard nondeterministic acceptance; throws std::domain_error when the
/// word mentions a symbol outside n's alphabet.
bool nfa_accepts(const TickAutomaton& n, const TickWord& u);

/// Shortest accepted word, or std::nullopt when the language is empty.
/// Ties resolve by symbol order (TICK first), so the result is stable.
std::optional<TickWord> emptiness_witness(const TickAutomaton& n);

struct InclusionResult {
    bool included = true;
    TickWord counterexample;  ///< shortest word in L(n1) \ L(n2) when !included
};

/// Decides L(n1) subseteq L(n2) by exploring n1 in product with the lazily
/// determinized complement of n2 (symbols matched by name). Breadth-first
/// search makes the counterexample a shortest one. Throws ResourceLimitError
/// when the product exceeds `state_cap` nodes.
InclusionResult language_inclusion(const TickAutomaton& n1, const TickAutomaton& n2,
                                   std::size_t state_cap = kDefaultStateCap);

/// Locations appearing in any reachable integral configuration.
std::set<std::string> reachable_locations_tick(const TimedAutomaton& a,
                                               std::size_t state_cap = kDefaultStateCap);

/// Every distinct accepted word of length <= max_length, found by
/// depth-first search over the determinized prefix tree; deterministic
/// order. Throws ResourceLimitError past `node_budget` explored prefixes.
std::vector<TickWord> enumerate_accepted_words(const TickAutomaton& n,
                                               std::size_t max_length,
                                               std::size_t node_budget = kDefaultStateCap);

/// Graphviz rendering with deterministic node and edge order; TICK edges
/// are labeled with a check mark.
std::string to_dot(const TickAutomaton& n);

} // namespace rtdig
