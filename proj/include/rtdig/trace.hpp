// trace.hpp -- timed state sequences and epsilon-digitization
//
// A timed state sequence is a finite, weakly monotone list of observations
// (state, time). Digitization rounds each timestamp to floor(x) when
// frac(x) <= eps and to ceil(x) otherwise, for one eps in (0,1] applied
// across the whole trace. The map eps -> digitized trace is piecewise
// constant; its breakpoints are the distinct nonzero fractional parts of the
// timestamps, which lets us enumerate every distinct digitization exactly.

#pragma once

#include "rtdig/rational.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace rtdig {

/// Finite set of atomic propositions observed in one state.
using StateLabel = std::set<std::string>;

struct Observation {
    StateLabel atoms;
    Rational time;

    bool operator==(const Observation&) const = default;
};

/// Weakly monotone finite sequence of observations over dense (rational) time.
struct TimedStateSequence {
    std::vector<Observation> observations;

    std::size_t size() const { return observations.size(); }
    bool empty() const { return observations.empty(); }

    /// Throws std::domain_error if a timestamp is negative or the sequence
    /// is not weakly monotone.
    void validate() const;

    bool operator==(const TimedStateSequence&) const = default;
};

/// A timed state sequence whose timestamps are all integers.
struct DigitallyTimedSequence {
    std::vector<StateLabel> states;
    std::vector<std::int64_t> times;

    std::size_t size() const { return states.size(); }

    /// View as an ordinary (dense-time) sequence; integers are rationals.
    TimedStateSequence as_timed_sequence() const;

    bool operator==(const DigitallyTimedSequence&) const = default;
    auto operator<=>(const DigitallyTimedSequence&) const = default;
};

/// One constancy class of eps values together with the digitization it
/// produces. The classes partition (0, 1].
struct DigitizationClass {
    Rational lo;
    bool lo_closed;
    Rational hi;
    bool hi_closed;
    Rational eps;        ///< representative eps used to compute `trace`
    DigitallyTimedSequence trace;

    std::string range_str() const;
};

/// floor(x) if frac(x) <= eps, else ceil(x). Requires x >= 0 and
/// eps in (0, 1]; throws std::domain_error otherwise.
std::int64_t digitize_scalar(const Rational& x, const Rational& eps);

/// Digitizes every timestamp with the same eps; states are unchanged.
DigitallyTimedSequence digitize_trace(const TimedStateSequence& eta, const Rational& eps);

/// Timestamp-level core shared with timed words.
std::vector<std::int64_t> digitize_times(const std::vector<Rational>& times, const Rational& eps);

/// Sorted distinct nonzero fractional parts of the timestamps, plus 1.
/// The digitization map is constant between consecutive thresholds.
std::vector<Rational> critical_epsilons_of(const std::vector<Rational>& times);
std::vector<Rational> critical_epsilons(const TimedStateSequence& eta);

/// Every constancy class of eps in (0,1] with its representative
/// digitization, ordered by increasing eps.
std::vector<DigitizationClass> digitization_classes(const TimedStateSequence& eta);

/// Exactly { digitize_trace(eta, eps) : eps in (0,1] }.
std::set<DigitallyTimedSequence> digitization_set(const TimedStateSequence& eta);

} // namespace rtdig
