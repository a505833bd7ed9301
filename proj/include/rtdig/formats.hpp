// formats.hpp -- structured (JSON) file formats for traces, automata, and
// verdict reports.
//
// Numbers that carry time are never JSON floats: rationals travel as
// strings ("7/10", "2", or an exact decimal on input) and serialize
// canonically as "p/q" / bare integers, so parse(serialize(x)) == x.
// Objects serialize with sorted keys, making output byte-stable.

#pragma once

#include "rtdig/closure_lab.hpp"
#include "rtdig/timed_automaton.hpp"
#include "rtdig/trace.hpp"

#include <string>

namespace rtdig {

/// { "observations": [ { "atoms": ["p", ...], "time": "7/10" }, ... ] }
/// Accepts integer JSON numbers for time; fractional times must be strings
/// (floats are rejected to keep arithmetic exact). Throws
/// std::invalid_argument on malformed input; the result is validated.
TimedStateSequence parse_trace_text(const std::string& text);
std::string serialize_trace(const TimedStateSequence& eta);

/// { "clocks": [...], "locations": [...], "initial": "...",
///   "accepting": [...], "invariants": { "loc": [constraint] },
///   "edges": [ { "from", "to", "action", "guard": [constraint],
///                "resets": [...] } ] }
/// where constraint = { "clock", "op": "<"|"<="|">="|">"|"==",
/// "const": nonnegative integer }. "==" expands to the two closed atoms
/// <= and >=. Missing "invariants"/"guard"/"resets" default to empty.
/// Throws std::invalid_argument on malformed input; the result is
/// validated.
TimedAutomaton parse_automaton_text(const std::string& text);
std::string serialize_automaton(const TimedAutomaton& a);

/// { "kind", "trials", "reason", "evidence": { "trace", "eps",
///   "tick_word" }, "notes" } — absent evidence fields are omitted.
std::string serialize_verdict(const Verdict& v);

/// File wrappers; throw std::invalid_argument when the file cannot be read.
TimedStateSequence load_trace_file(const std::string& path);
TimedAutomaton load_automaton_file(const std::string& path);

// Structured documents for the query-style CLI commands. All share the
// sorted-key, canonical-rational conventions above.

/// { "classes": [ { "eps", "range", "trace" } ], "critical_epsilons": [...] }
std::string serialize_digitization_report(const TimedStateSequence& eta);

/// { "classification": "Closed", "constraints": [ { "constraint", "site",
///   "strict" } ] }
std::string serialize_classification_report(const TimedAutomaton& a);

/// { "violations": [...], "weakly_constrained": bool }
std::string serialize_weak_constraint_report(const WeakConstraintCheck& w);

/// { "pattern": "BoundedResponse(2)" }
std::string serialize_pattern_report(const PatternClass& p);

/// { "value": bool }
std::string serialize_eval_report(bool value);

} // namespace rtdig
