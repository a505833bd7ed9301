#include "rtdig/timed_automaton.hpp"

#include <algorithm>
#include <random>

namespace rtdig {

std::string rel_op_str(RelOp op) {
    switch (op) {
        case RelOp::LT: return "<";
        case RelOp::LE: return "<=";
        case RelOp::GE: return ">=";
        case RelOp::GT: return ">";
    }
    return "?";
}

bool ClockConstraint::holds(const Rational& value) const {
    const Rational b(bound);
    switch (op) {
        case RelOp::LT: return value < b;
        case RelOp::LE: return value <= b;
        case RelOp::GE: return value >= b;
        case RelOp::GT: return value > b;
    }
    return false;
}

std::string ClockConstraint::str() const {
    return clock + " " + rel_op_str(op) + " " + std::to_string(bound);
}

std::string classification_str(Classification c) {
    switch (c) {
        case Classification::Closed: return "Closed";
        case Classification::Open: return "Open";
        case Classification::Mixed: return "Mixed";
    }
    return "?";
}

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

void check_constraints(const TimedAutomaton& a,
                       const std::vector<ClockConstraint>& cs,
                       const std::string& where) {
    for (const ClockConstraint& c : cs) {
        if (!contains(a.clocks, c.clock)) {
            throw std::invalid_argument("undeclared clock '" + c.clock + "' in " + where);
        }
        if (c.bound < 0) {
            throw std::invalid_argument("negative bound in " + where);
        }
    }
}

} // namespace

void TimedAutomaton::validate() const {
    if (locations.empty()) {
        throw std::invalid_argument("automaton needs at least one location");
    }
    if (!contains(locations, initial)) {
        throw std::invalid_argument("initial location '" + initial + "' is not declared");
    }
    for (const std::string& loc : accepting) {
        if (!contains(locations, loc)) {
            throw std::invalid_argument("accepting location '" + loc + "' is not declared");
        }
    }
    for (const auto& [loc, inv] : invariants) {
        if (!contains(locations, loc)) {
            throw std::invalid_argument("invariant on undeclared location '" + loc + "'");
        }
        check_constraints(*this, inv, "invariant of " + loc);
    }
    for (const Edge& e : edges) {
        if (!contains(locations, e.from) || !contains(locations, e.to)) {
            throw std::invalid_argument("edge endpoint not declared: " + e.from + " -> " + e.to);
        }
        if (e.action == kTickName) {
            throw std::invalid_argument("action name '" + std::string(kTickName) + "' is reserved");
        }
        if (e.action.empty()) {
            throw std::invalid_argument("edge action must be nonempty");
        }
        check_constraints(*this, e.guard, "guard of " + e.from + " -> " + e.to);
        for (const std::string& r : e.resets) {
            if (!contains(clocks, r)) {
                throw std::invalid_argument("reset of undeclared clock '" + r + "'");
            }
        }
    }
}

std::vector<std::string> TimedAutomaton::alphabet() const {
    std::set<std::string> syms;
    for (const Edge& e : edges) {
        syms.insert(e.action);
    }
    return {syms.begin(), syms.end()};
}

std::int64_t TimedAutomaton::max_constant() const {
    std::int64_t cmax = 0;
    for (const Edge& e : edges) {
        for (const ClockConstraint& c : e.guard) {
            cmax = std::max(cmax, c.bound);
        }
    }
    for (const auto& [loc, inv] : invariants) {
        for (const ClockConstraint& c : inv) {
            cmax = std::max(cmax, c.bound);
        }
    }
    return cmax;
}

const std::vector<ClockConstraint>* TimedAutomaton::invariant_of(const std::string& location) const {
    const auto it = invariants.find(location);
    return it == invariants.end() ? nullptr : &it->second;
}

Classification classify(const TimedAutomaton& a) {
    bool any_strict = false;
    bool any_nonstrict = false;
    auto scan = [&](const std::vector<ClockConstraint>& cs) {
        for (const ClockConstraint& c : cs) {
            if (c.op == RelOp::LT || c.op == RelOp::GT) {
                any_strict = true;
            } else {
                any_nonstrict = true;
            }
        }
    };
    for (const Edge& e : a.edges) scan(e.guard);
    for (const auto& [loc, inv] : a.invariants) scan(inv);

    if (any_strict && any_nonstrict) return Classification::Mixed;
    if (any_strict) return Classification::Open;
    // No constraints at all also lands here: constraint-free automata count
    // as Closed.
    return Classification::Closed;
}

namespace {

TimedAutomaton rewrite_ops(const TimedAutomaton& a, RelOp from1, RelOp to1, RelOp from2, RelOp to2) {
    TimedAutomaton out = a;
    auto rewrite = [&](std::vector<ClockConstraint>& cs) {
        for (ClockConstraint& c : cs) {
            if (c.op == from1) c.op = to1;
            if (c.op == from2) c.op = to2;
        }
    };
    for (Edge& e : out.edges) rewrite(e.guard);
    for (auto& [loc, inv] : out.invariants) rewrite(inv);
    return out;
}

} // namespace

TimedAutomaton closure_transform(const TimedAutomaton& a) {
    return rewrite_ops(a, RelOp::LT, RelOp::LE, RelOp::GT, RelOp::GE);
}

TimedAutomaton interior_transform(const TimedAutomaton& a) {
    return rewrite_ops(a, RelOp::LE, RelOp::LT, RelOp::GE, RelOp::GT);
}

void validate_timed_word(const TimedWord& word) {
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i].second.is_negative()) {
            throw std::domain_error("timed word timestamps must be nonnegative");
        }
        if (i > 0 && word[i].second < word[i - 1].second) {
            throw std::domain_error("timed word must be weakly monotone");
        }
    }
}

// ---------------------------------------------------------------------------
// Membership simulation
// ---------------------------------------------------------------------------

namespace {

using ClockIndex = std::map<std::string, std::size_t>;

ClockIndex index_clocks(const TimedAutomaton& a) {
    ClockIndex idx;
    for (std::size_t i = 0; i < a.clocks.size(); ++i) {
        idx[a.clocks[i]] = i;
    }
    return idx;
}

bool invariant_holds(const TimedAutomaton& a, const ClockIndex& idx, const std::string& loc,
                     const std::vector<Rational>& reset, const Rational& now) {
    const auto* inv = a.invariant_of(loc);
    if (inv == nullptr) return true;
    for (const ClockConstraint& c : *inv) {
        if (!c.holds(now - reset[idx.at(c.clock)])) {
            return false;
        }
    }
    return true;
}

struct SimContext {
    const TimedAutomaton& a;
    const TimedWord& word;
    ClockIndex clock_index;
};

bool search_run(const SimContext& ctx, std::size_t pos, const std::string& loc,
                const std::vector<Rational>& reset, std::vector<std::size_t>& run) {
    if (pos == ctx.word.size()) {
        return ctx.a.accepting.count(loc) > 0;
    }
    const auto& [action, now] = ctx.word[pos];
    for (std::size_t ei = 0; ei < ctx.a.edges.size(); ++ei) {
        const Edge& e = ctx.a.edges[ei];
        if (e.from != loc || e.action != action) continue;

        bool ok = true;
        for (const ClockConstraint& c : e.guard) {
            if (!c.holds(now - reset[ctx.clock_index.at(c.clock)])) {
                ok = false;
                break;
            }
        }
        // Staying in `loc` until `now` requires the invariant at the firing
        // time; it held on entry, and constraint time-sets are intervals.
        if (!ok || !invariant_holds(ctx.a, ctx.clock_index, loc, reset, now)) continue;

        std::vector<Rational> next_reset = reset;
        for (const std::string& r : e.resets) {
            next_reset[ctx.clock_index.at(r)] = now;
        }
        if (!invariant_holds(ctx.a, ctx.clock_index, e.to, next_reset, now)) continue;

        run.push_back(ei);
        if (search_run(ctx, pos + 1, e.to, next_reset, run)) {
            return true;
        }
        run.pop_back();
    }
    return false;
}

} // namespace

MembershipResult simulate_membership(const TimedAutomaton& a, const TimedWord& word) {
    validate_timed_word(word);

    SimContext ctx{a, word, index_clocks(a)};

    const std::vector<Rational> zeros(a.clocks.size(), Rational(0));
    MembershipResult result;
    if (!invariant_holds(a, ctx.clock_index, a.initial, zeros, Rational(0))) {
        return result;  // the automaton cannot even start
    }
    result.accepted = search_run(ctx, 0, a.initial, zeros, result.run);
    if (!result.accepted) {
        result.run.clear();
    }
    return result;
}

// ---------------------------------------------------------------------------
// Randomized generation
// ---------------------------------------------------------------------------

namespace {

// Engine-direct draws keep results identical across standard libraries
// (std::uniform_int_distribution is implementation-defined).
std::uint64_t rnd_below(std::mt19937_64& rng, std::uint64_t n) {
    return n <= 1 ? 0 : rng() % n;
}

/// Feasible firing times for `edge` from the given configuration. All
/// bounds are multiples of 1/denominator_bound because sampled times are.
struct TimeInterval {
    Rational lo;
    bool lo_strict = false;
    std::optional<Rational> hi;
    bool hi_strict = false;
    bool empty = false;

    void add_lower(const Rational& v, bool strict) {
        if (v > lo || (v == lo && strict && !lo_strict)) {
            lo = v;
            lo_strict = strict;
        }
    }
    void add_upper(const Rational& v, bool strict) {
        if (!hi || v < *hi || (v == *hi && strict && !hi_strict)) {
            hi = v;
            hi_strict = strict;
        }
    }
    void finalize() {
        if (hi && (*hi < lo || (*hi == lo && (lo_strict || hi_strict)))) {
            empty = true;
        }
    }
};

struct GenContext {
    const TimedAutomaton& a;
    ClockIndex clock_index;
    std::int64_t grid;  // denominator bound
    std::mt19937_64 rng;
    int expansions_left = 0;
};

void constrain_with(TimeInterval& iv, const ClockConstraint& c, const Rational& reset_time) {
    const Rational pivot = reset_time + Rational(c.bound);
    switch (c.op) {
        case RelOp::GE: iv.add_lower(pivot, false); break;
        case RelOp::GT: iv.add_lower(pivot, true); break;
        case RelOp::LE: iv.add_upper(pivot, false); break;
        case RelOp::LT: iv.add_upper(pivot, true); break;
    }
}

std::optional<TimeInterval> firing_interval(const GenContext& ctx, const Edge& e,
                                            const std::vector<Rational>& reset,
                                            const Rational& now) {
    TimeInterval iv;
    iv.lo = now;
    for (const ClockConstraint& c : e.guard) {
        constrain_with(iv, c, reset[ctx.clock_index.at(c.clock)]);
    }
    if (const auto* inv = ctx.a.invariant_of(e.from)) {
        for (const ClockConstraint& c : *inv) {
            constrain_with(iv, c, reset[ctx.clock_index.at(c.clock)]);
        }
    }
    if (const auto* inv = ctx.a.invariant_of(e.to)) {
        for (const ClockConstraint& c : *inv) {
            if (e.resets.count(c.clock) > 0) {
                // Clock reads 0 right after the reset.
                if (!c.holds(Rational(0))) return std::nullopt;
            } else {
                constrain_with(iv, c, reset[ctx.clock_index.at(c.clock)]);
            }
        }
    }
    iv.finalize();
    if (iv.empty) return std::nullopt;
    return iv;
}

/// Draws a grid point from the interval, favoring closed endpoints so that
/// boundary behavior gets exercised.
std::optional<Rational> sample_time(GenContext& ctx, const TimeInterval& iv) {
    const Rational step(1, ctx.grid);

    Rational lo = iv.lo;
    if (iv.lo_strict) lo = lo + step;
    Rational hi = iv.hi ? *iv.hi : lo + Rational(3);
    if (iv.hi && iv.hi_strict) hi = hi - step;
    if (hi < lo) return std::nullopt;

    // Cap the window so unbounded guards do not produce huge timestamps.
    if (hi > lo + Rational(3)) hi = lo + Rational(3);

    const std::uint64_t roll = rnd_below(ctx.rng, 4);
    if (roll == 0 && !iv.lo_strict) return iv.lo;
    if (roll == 1 && iv.hi && !iv.hi_strict && *iv.hi <= hi) return *iv.hi;

    const Rational span = hi - lo;
    const std::int64_t steps = (span * Rational(ctx.grid)).floor();
    return lo + Rational(static_cast<std::int64_t>(rnd_below(ctx.rng, steps + 1)), ctx.grid);
}

bool gen_search(GenContext& ctx, std::size_t remaining, const std::string& loc,
                const std::vector<Rational>& reset, const Rational& now, TimedWord& word) {
    if (remaining == 0) {
        return ctx.a.accepting.count(loc) > 0;
    }
    if (ctx.expansions_left-- <= 0) {
        return false;
    }

    std::vector<std::size_t> candidates;
    for (std::size_t ei = 0; ei < ctx.a.edges.size(); ++ei) {
        if (ctx.a.edges[ei].from == loc) {
            candidates.push_back(ei);
        }
    }
    // Fisher-Yates with engine-direct draws, for reproducibility.
    for (std::size_t i = candidates.size(); i > 1; --i) {
        std::swap(candidates[i - 1], candidates[rnd_below(ctx.rng, i)]);
    }

    for (const std::size_t ei : candidates) {
        const Edge& e = ctx.a.edges[ei];
        const auto iv = firing_interval(ctx, e, reset, now);
        if (!iv) continue;

        for (int attempt = 0; attempt < 3; ++attempt) {
            const auto t = sample_time(ctx, *iv);
            if (!t) break;

            std::vector<Rational> next_reset = reset;
            for (const std::string& r : e.resets) {
                next_reset[ctx.clock_index.at(r)] = *t;
            }
            word.emplace_back(e.action, *t);
            if (gen_search(ctx, remaining - 1, e.to, next_reset, *t, word)) {
                return true;
            }
            word.pop_back();
        }
    }
    return false;
}

GenContext make_gen_context(const TimedAutomaton& a, std::uint64_t seed,
                            std::int64_t grid, int expansions) {
    return GenContext{a, index_clocks(a), grid, std::mt19937_64(seed), expansions};
}

} // namespace

std::optional<TimedWord> generate_accepted_trace(const TimedAutomaton& a,
                                                 std::size_t length,
                                                 const TraceGenConfig& cfg) {
    if (length == 0) {
        throw std::domain_error("requested trace length must be positive");
    }
    GenContext ctx = make_gen_context(a, cfg.seed, cfg.denominator_bound, cfg.max_expansions);

    const std::vector<Rational> zeros(a.clocks.size(), Rational(0));
    if (!invariant_holds(a, ctx.clock_index, a.initial, zeros, Rational(0))) {
        return std::nullopt;
    }

    TimedWord word;
    if (!gen_search(ctx, length, a.initial, zeros, Rational(0), word)) {
        return std::nullopt;
    }
    if (!simulate_membership(a, word)) {
        throw std::logic_error("generated word failed the membership check");
    }
    return word;
}

std::set<std::string> explore_locations_dense(const TimedAutomaton& a,
                                              std::size_t walks,
                                              std::size_t walk_length,
                                              std::uint64_t seed) {
    GenContext ctx = make_gen_context(a, seed, 64, 0);

    std::set<std::string> visited;
    const std::vector<Rational> zeros(a.clocks.size(), Rational(0));
    if (!invariant_holds(a, ctx.clock_index, a.initial, zeros, Rational(0))) {
        return visited;
    }
    visited.insert(a.initial);

    for (std::size_t w = 0; w < walks; ++w) {
        std::string loc = a.initial;
        std::vector<Rational> reset = zeros;
        Rational now(0);
        for (std::size_t step = 0; step < walk_length; ++step) {
            std::vector<std::size_t> candidates;
            for (std::size_t ei = 0; ei < a.edges.size(); ++ei) {
                if (a.edges[ei].from == loc) candidates.push_back(ei);
            }
            for (std::size_t i = candidates.size(); i > 1; --i) {
                std::swap(candidates[i - 1], candidates[rnd_below(ctx.rng, i)]);
            }

            bool moved = false;
            for (const std::size_t ei : candidates) {
                const Edge& e = a.edges[ei];
                const auto iv = firing_interval(ctx, e, reset, now);
                if (!iv) continue;
                const auto t = sample_time(ctx, *iv);
                if (!t) continue;
                for (const std::string& r : e.resets) {
                    reset[ctx.clock_index.at(r)] = *t;
                }
                now = *t;
                loc = e.to;
                visited.insert(loc);
                moved = true;
                break;
            }
            if (!moved) break;
        }
    }
    return visited;
}

} // namespace rtdig
