// closure_lab.hpp -- executable closure analyses over digitization
//
// Ties the trace, automaton, tick, and logic layers together: refutation
// testers that sample dense behavior and compare it against every
// digitization, a decision procedure for closure under digitization of a
// timed automaton, a dense-vs-tick reachability cross-check, and a bounded
// integer-semantics verification pipeline.
//
// Verdict discipline: sampling never proves anything, so the fuzz testers
// return NoCounterexampleFound (with the trial count) or Counterexample,
// never Holds. Holds is reserved for decision procedures. Identical inputs
// and configuration produce byte-identical verdicts.

#pragma once

#include "rtdig/mtl.hpp"
#include "rtdig/tick_automaton.hpp"
#include "rtdig/timed_automaton.hpp"
#include "rtdig/trace.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rtdig {

struct Verdict {
    enum class Kind { Holds, NoCounterexampleFound, Counterexample, Inconclusive };

    Kind kind = Kind::Inconclusive;
    std::uint64_t trials = 0;  ///< NoCounterexampleFound: sampling/bound budget
    std::string reason;        ///< Inconclusive only

    // Evidence; filled by Counterexample, optionally by Inconclusive when a
    // suspect artifact exists but could not be confirmed.
    std::optional<TimedStateSequence> trace;
    std::optional<Rational> eps;
    std::optional<TickWord> tick_word;

    std::vector<std::string> notes;

    std::string kind_str() const;

    static Verdict holds(std::string note);
    static Verdict no_counterexample(std::uint64_t trials);
    static Verdict counterexample();
    static Verdict inconclusive(std::string reason);
};

/// Budgets for the sampling testers. The budgets must be positive; the seed
/// may be anything (0 is the conventional default). Identical configs
/// replay identical trials.
struct FuzzConfig {
    std::uint64_t seed = 0;
    std::uint64_t trials = 1000;
    std::size_t max_len = 6;        ///< max observations / letters per sample
    std::int64_t max_time = 8;      ///< timestamps stay at or below this
    std::int64_t den_bound = 4;     ///< timestamp denominators stay at or below this

    /// Throws std::domain_error when a budget is not positive.
    void validate() const;
};

/// One-line deterministic rendering "{a,b}@t {}@t ..." used in notes.
std::string render_trace(const TimedStateSequence& eta);
std::string render_tick_word(const TickWord& u);

/// A timed action word viewed as a state sequence: each event contributes
/// the singleton atom named by its action (digitization then applies to the
/// timestamps with the action sequence as the state component).
TimedStateSequence word_as_trace(const TimedWord& word);

/// Samples dense traces over the atoms of phi; for every sampled trace that
/// satisfies phi, every trace in its digitization set must satisfy phi too.
Verdict test_formula_cud(const MtlPtr& phi, const FuzzConfig& cfg);

/// Samples dense traces; flags a trace whose digitizations all satisfy phi
/// while the trace itself does not.
Verdict test_formula_cuid(const MtlPtr& phi, const FuzzConfig& cfg);

/// Samples accepted dense words of A; every digitization of an accepted
/// word must be accepted in the integer semantics (tick membership).
Verdict test_ta_cud_fuzz(const TimedAutomaton& a, const FuzzConfig& cfg);

/// Samples arbitrary dense words over A's alphabet; flags a word all of
/// whose digitizations are integrally accepted while the word itself is
/// rejected in the dense semantics.
Verdict test_ta_cuid_fuzz(const TimedAutomaton& a, const FuzzConfig& cfg);

/// Decides closure under digitization via the closure-inclusion criterion
/// L(tick(closure(A))) subset-of L(tick(A)). Included yields Holds. An
/// inclusion counterexample is trusted only after a dense witness (an
/// accepted dense word one of whose digitizations decodes exactly to the
/// offending tick word) confirms it; otherwise the verdict is Inconclusive
/// with the unconfirmed artifact attached. Resource caps propagate as
/// ResourceLimitError.
Verdict check_ta_cud(const TimedAutomaton& a, std::size_t state_cap = kDefaultStateCap);

/// Compares tick-side reachable locations against locations discovered by
/// seeded dense random exploration. Dense-found must be a subset of
/// tick-found for a closed automaton (a violation is a Counterexample);
/// both sets are reported in the notes. Warns (in notes) when A is not
/// Closed but still runs.
Verdict check_reach_equivalence(const TimedAutomaton& a, const FuzzConfig& cfg,
                                std::size_t state_cap = kDefaultStateCap);

/// Bounded verification in the integer semantics. Gate 1: A must classify
/// as Closed (supplies closure under digitization). Gate 2: phi must be
/// QualitativeSyntactic or weakly constrained (supplies closure under
/// inverse digitization). Then every accepting tick word of length at most
/// `bound` is decoded to an integer-timed trace (observation state = the
/// singleton atom named by the action, unless atom_map overrides) and
/// checked against phi. A failing trace is a Counterexample; none means
/// NoCounterexampleFound up to the bound. Gate failures are Inconclusive
/// and name the unmet hypothesis.
Verdict verify(const TimedAutomaton& a, const MtlPtr& phi, std::size_t bound,
               const std::map<std::string, StateLabel>& atom_map = {},
               std::size_t state_cap = kDefaultStateCap,
               std::size_t enum_node_budget = 1u << 22);

} // namespace rtdig
