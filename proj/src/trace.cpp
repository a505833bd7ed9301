#include "rtdig/trace.hpp"

#include <algorithm>

namespace rtdig {

void TimedStateSequence::validate() const {
    for (std::size_t i = 0; i < observations.size(); ++i) {
        if (observations[i].time.is_negative()) {
            throw std::domain_error("timestamp must be nonnegative");
        }
        if (i > 0 && observations[i].time < observations[i - 1].time) {
            throw std::domain_error("timestamps must be weakly monotone");
        }
    }
}

TimedStateSequence DigitallyTimedSequence::as_timed_sequence() const {
    TimedStateSequence eta;
    eta.observations.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        eta.observations.push_back({states[i], Rational(times[i])});
    }
    return eta;
}

std::string DigitizationClass::range_str() const {
    return std::string(lo_closed ? "[" : "(") + lo.str() + ", " + hi.str() +
           (hi_closed ? "]" : ")");
}

std::int64_t digitize_scalar(const Rational& x, const Rational& eps) {
    if (eps <= Rational(0) || eps > Rational(1)) {
        throw std::domain_error("eps must lie in (0,1]");
    }
    if (x.is_negative()) {
        throw std::domain_error("digitization requires a nonnegative value");
    }
    return x.frac() <= eps ? x.floor() : x.ceil();
}

std::vector<std::int64_t> digitize_times(const std::vector<Rational>& times, const Rational& eps) {
    std::vector<std::int64_t> out;
    out.reserve(times.size());
    for (const Rational& t : times) {
        out.push_back(digitize_scalar(t, eps));
    }
    return out;
}

DigitallyTimedSequence digitize_trace(const TimedStateSequence& eta, const Rational& eps) {
    DigitallyTimedSequence out;
    out.states.reserve(eta.size());
    out.times.reserve(eta.size());
    for (const Observation& obs : eta.observations) {
        out.states.push_back(obs.atoms);
        out.times.push_back(digitize_scalar(obs.time, eps));
    }
    return out;
}

std::vector<Rational> critical_epsilons_of(const std::vector<Rational>& times) {
    std::set<Rational> fracs;
    for (const Rational& t : times) {
        const Rational f = t.frac();
        if (f != Rational(0)) {
            fracs.insert(f);
        }
    }
    fracs.insert(Rational(1));
    return {fracs.begin(), fracs.end()};
}

std::vector<Rational> critical_epsilons(const TimedStateSequence& eta) {
    std::vector<Rational> times;
    times.reserve(eta.size());
    for (const Observation& obs : eta.observations) {
        times.push_back(obs.time);
    }
    return critical_epsilons_of(times);
}

std::vector<DigitizationClass> digitization_classes(const TimedStateSequence& eta) {
    // Fractional parts lie in [0, 1), so the trailing threshold 1 never opens
    // a class of its own; it closes the last one.
    std::vector<Rational> fracs = critical_epsilons(eta);
    fracs.pop_back();  // drop the final 1

    std::vector<DigitizationClass> classes;
    auto add = [&](Rational lo, bool lo_closed, Rational hi, bool hi_closed, Rational eps) {
        DigitizationClass cls;
        cls.lo = std::move(lo);
        cls.lo_closed = lo_closed;
        cls.hi = std::move(hi);
        cls.hi_closed = hi_closed;
        cls.trace = digitize_trace(eta, eps);
        cls.eps = std::move(eps);
        classes.push_back(std::move(cls));
    };

    if (fracs.empty()) {
        add(Rational(0), false, Rational(1), true, Rational(1));
        return classes;
    }

    // frac(x) <= eps flips to floor exactly at eps = frac(x), so each
    // threshold starts a left-closed class; the gap below the first
    // threshold is a class of its own, sampled at its midpoint.
    add(Rational(0), false, fracs.front(), false, midpoint(Rational(0), fracs.front()));
    for (std::size_t i = 0; i < fracs.size(); ++i) {
        const bool last = i + 1 == fracs.size();
        add(fracs[i], true, last ? Rational(1) : fracs[i + 1], last, fracs[i]);
    }
    return classes;
}

std::set<DigitallyTimedSequence> digitization_set(const TimedStateSequence& eta) {
    std::set<DigitallyTimedSequence> out;
    for (const DigitizationClass& cls : digitization_classes(eta)) {
        out.insert(cls.trace);
    }
    return out;
}

} // namespace rtdig
