#include "rtdig/closure_lab.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace rtdig {

// ---------------------------------------------------------------------------
// Verdict
// ---------------------------------------------------------------------------

std::string Verdict::kind_str() const {
    switch (kind) {
        case Kind::Holds: return "Holds";
        case Kind::NoCounterexampleFound: return "NoCounterexampleFound";
        case Kind::Counterexample: return "Counterexample";
        case Kind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

Verdict Verdict::holds(std::string note) {
    Verdict v;
    v.kind = Kind::Holds;
    v.notes.push_back(std::move(note));
    return v;
}

Verdict Verdict::no_counterexample(std::uint64_t trials) {
    Verdict v;
    v.kind = Kind::NoCounterexampleFound;
    v.trials = trials;
    return v;
}

Verdict Verdict::counterexample() {
    Verdict v;
    v.kind = Kind::Counterexample;
    return v;
}

Verdict Verdict::inconclusive(std::string reason) {
    Verdict v;
    v.kind = Kind::Inconclusive;
    v.reason = std::move(reason);
    return v;
}

void FuzzConfig::validate() const {
    if (trials == 0) throw std::domain_error("fuzz config: trials must be positive");
    if (max_len == 0) throw std::domain_error("fuzz config: max trace length must be positive");
    if (max_time <= 0) throw std::domain_error("fuzz config: max timestamp must be positive");
    if (den_bound <= 0) {
        throw std::domain_error("fuzz config: denominator bound must be positive");
    }
}

// ---------------------------------------------------------------------------
// Rendering and bridging helpers
// ---------------------------------------------------------------------------

std::string render_trace(const TimedStateSequence& eta) {
    std::string out;
    for (const auto& obs : eta.observations) {
        if (!out.empty()) out += " ";
        out += "{";
        bool first = true;
        for (const auto& a : obs.atoms) {
            if (!first) out += ",";
            out += a;
            first = false;
        }
        out += "}@" + obs.time.str();
    }
    return out.empty() ? "(empty)" : out;
}

std::string render_tick_word(const TickWord& u) {
    std::string out;
    for (const auto& s : u) {
        if (!out.empty()) out += " ";
        out += s;
    }
    return out.empty() ? "(empty)" : out;
}

TimedStateSequence word_as_trace(const TimedWord& word) {
    validate_timed_word(word);
    TimedStateSequence eta;
    for (const auto& [action, time] : word) {
        eta.observations.push_back({{action}, time});
    }
    return eta;
}

namespace {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) {
    return n <= 1 ? 0 : rng() % n;
}

void collect_atoms(const MtlPtr& f, std::set<std::string>& out) {
    if (f->kind == MtlKind::Atom) {
        if (f->atom != "true" && f->atom != "false") out.insert(f->atom);
        return;
    }
    if (f->left) collect_atoms(f->left, out);
    if (f->right) collect_atoms(f->right, out);
}

/// Denominator for one sampled trace; biased toward 2 so half-integral
/// timestamps (the classic digitization stress case) appear often.
std::int64_t sample_denominator(std::mt19937_64& rng, std::int64_t den_bound) {
    if (den_bound >= 2 && draw(rng, 2) == 0) return 2;
    return 1 + static_cast<std::int64_t>(draw(rng, static_cast<std::uint64_t>(den_bound)));
}

std::vector<Rational> sample_times(std::mt19937_64& rng, const FuzzConfig& cfg,
                                   std::size_t len) {
    const std::int64_t den = sample_denominator(rng, cfg.den_bound);
    std::vector<std::int64_t> nums;
    for (std::size_t i = 0; i < len; ++i) {
        nums.push_back(static_cast<std::int64_t>(
            draw(rng, static_cast<std::uint64_t>(cfg.max_time * den + 1))));
    }
    std::sort(nums.begin(), nums.end());
    std::vector<Rational> times;
    for (const auto k : nums) times.emplace_back(k, den);
    return times;
}

TimedStateSequence sample_trace(std::mt19937_64& rng, const FuzzConfig& cfg,
                                const std::vector<std::string>& atoms) {
    const std::size_t len = 1 + draw(rng, cfg.max_len);
    const auto times = sample_times(rng, cfg, len);
    TimedStateSequence eta;
    for (std::size_t i = 0; i < len; ++i) {
        Observation obs;
        obs.time = times[i];
        for (const auto& a : atoms) {
            if (draw(rng, 2) == 1) obs.atoms.insert(a);
        }
        eta.observations.push_back(std::move(obs));
    }
    return eta;
}

TimedWord sample_word(std::mt19937_64& rng, const FuzzConfig& cfg,
                      const std::vector<std::string>& alphabet) {
    const std::size_t len = 1 + draw(rng, cfg.max_len);
    const auto times = sample_times(rng, cfg, len);
    TimedWord word;
    for (std::size_t i = 0; i < len; ++i) {
        word.emplace_back(alphabet[draw(rng, alphabet.size())], times[i]);
    }
    return word;
}

std::vector<std::string> formula_atoms(const MtlPtr& phi) {
    std::set<std::string> set;
    collect_atoms(phi, set);
    if (set.empty()) set.insert("p");
    return {set.begin(), set.end()};
}

IntegerTimedWord digitized_word(const TimedWord& word, const DigitallyTimedSequence& d) {
    IntegerTimedWord z;
    for (std::size_t i = 0; i < word.size(); ++i) {
        z.emplace_back(word[i].first, d.times[i]);
    }
    return z;
}

std::string render_set(const std::set<std::string>& s) {
    std::string out;
    for (const auto& x : s) {
        if (!out.empty()) out += " ";
        out += x;
    }
    return out.empty() ? "(none)" : out;
}

} // namespace

// ---------------------------------------------------------------------------
// Formula-level testers
// ---------------------------------------------------------------------------

Verdict test_formula_cud(const MtlPtr& phi, const FuzzConfig& cfg) {
    cfg.validate();
    const auto atoms = formula_atoms(phi);
    std::mt19937_64 rng(cfg.seed);
    std::uint64_t satisfied = 0;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        const TimedStateSequence eta = sample_trace(rng, cfg, atoms);
        if (!satisfies(phi, eta)) continue;
        ++satisfied;
        for (const auto& cls : digitization_classes(eta)) {
            const TimedStateSequence d = cls.trace.as_timed_sequence();
            if (!satisfies(phi, d)) {
                Verdict v = Verdict::counterexample();
                v.trace = eta;
                v.eps = cls.eps;
                v.notes.push_back("dense trace satisfies the formula: " + render_trace(eta));
                v.notes.push_back("its digitization at eps = " + cls.eps.str() + " (class " +
                                  cls.range_str() + ") does not: " + render_trace(d));
                return v;
            }
        }
    }
    Verdict v = Verdict::no_counterexample(cfg.trials);
    if (satisfied == 0) {
        v.notes.push_back("vacuous: no sampled trace satisfied the formula");
    } else {
        v.notes.push_back(std::to_string(satisfied) + " of " + std::to_string(cfg.trials) +
                          " sampled traces satisfied the formula; every digitization of each "
                          "satisfied it too");
    }
    return v;
}

Verdict test_formula_cuid(const MtlPtr& phi, const FuzzConfig& cfg) {
    cfg.validate();
    const auto atoms = formula_atoms(phi);
    std::mt19937_64 rng(cfg.seed);
    std::uint64_t all_digitized = 0;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        const TimedStateSequence eta = sample_trace(rng, cfg, atoms);
        bool every_class = true;
        for (const auto& cls : digitization_classes(eta)) {
            if (!satisfies(phi, cls.trace.as_timed_sequence())) {
                every_class = false;
                break;
            }
        }
        if (!every_class) continue;
        ++all_digitized;
        if (!satisfies(phi, eta)) {
            Verdict v = Verdict::counterexample();
            v.trace = eta;
            v.notes.push_back("every digitization of this trace satisfies the formula, "
                              "but the dense trace does not: " +
                              render_trace(eta));
            return v;
        }
    }
    Verdict v = Verdict::no_counterexample(cfg.trials);
    if (all_digitized == 0) {
        v.notes.push_back("vacuous: no sampled trace had all digitizations satisfying "
                          "the formula");
    } else {
        v.notes.push_back(std::to_string(all_digitized) + " of " + std::to_string(cfg.trials) +
                          " sampled traces had every digitization satisfying the formula; "
                          "each dense trace satisfied it too");
    }
    return v;
}

// ---------------------------------------------------------------------------
// Automaton-level testers
// ---------------------------------------------------------------------------

Verdict test_ta_cud_fuzz(const TimedAutomaton& a, const FuzzConfig& cfg) {
    cfg.validate();
    a.validate();
    const TickAutomaton n = build_tick_automaton(a);
    std::mt19937_64 rng(cfg.seed);
    std::uint64_t found = 0;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        const std::size_t len = 1 + draw(rng, cfg.max_len);
        TraceGenConfig gen;
        gen.seed = rng();
        gen.denominator_bound = cfg.den_bound;
        const auto word = generate_accepted_trace(a, len, gen);
        if (!word) continue;
        ++found;
        const TimedStateSequence eta = word_as_trace(*word);
        for (const auto& cls : digitization_classes(eta)) {
            const TickWord u = encode_integer_word(digitized_word(*word, cls.trace));
            if (!nfa_accepts(n, u)) {
                Verdict v = Verdict::counterexample();
                v.trace = eta;
                v.eps = cls.eps;
                v.tick_word = u;
                v.notes.push_back("accepted dense word: " + render_trace(eta));
                v.notes.push_back("its digitization at eps = " + cls.eps.str() + " (class " +
                                  cls.range_str() +
                                  ") is rejected in the integer semantics: " +
                                  render_tick_word(u));
                return v;
            }
        }
    }
    Verdict v = Verdict::no_counterexample(cfg.trials);
    if (found == 0) {
        v.notes.push_back("vacuous: no accepted dense word was found at this budget");
    } else {
        v.notes.push_back(std::to_string(found) + " of " + std::to_string(cfg.trials) +
                          " trials produced an accepted dense word; every digitization of "
                          "each was integrally accepted");
    }
    return v;
}

Verdict test_ta_cuid_fuzz(const TimedAutomaton& a, const FuzzConfig& cfg) {
    cfg.validate();
    a.validate();
    const auto alphabet = a.alphabet();
    if (alphabet.empty()) {
        Verdict v = Verdict::no_counterexample(cfg.trials);
        v.notes.push_back("vacuous: the automaton has no actions, so only the empty word "
                          "exists and it digitizes to itself");
        return v;
    }
    const TickAutomaton n = build_tick_automaton(a);
    std::mt19937_64 rng(cfg.seed);
    std::uint64_t dense_rejected = 0;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        const TimedWord word = sample_word(rng, cfg, alphabet);
        if (simulate_membership(a, word).accepted) continue;
        ++dense_rejected;
        const TimedStateSequence eta = word_as_trace(word);
        bool all_integral = true;
        for (const auto& cls : digitization_classes(eta)) {
            if (!nfa_accepts(n, encode_integer_word(digitized_word(word, cls.trace)))) {
                all_integral = false;
                break;
            }
        }
        if (all_integral) {
            Verdict v = Verdict::counterexample();
            v.trace = eta;
            v.notes.push_back("dense word is rejected, yet every one of its digitizations "
                              "is integrally accepted: " +
                              render_trace(eta));
            return v;
        }
    }
    Verdict v = Verdict::no_counterexample(cfg.trials);
    if (dense_rejected == 0) {
        v.notes.push_back("vacuous: every sampled dense word was accepted");
    } else {
        v.notes.push_back(std::to_string(dense_rejected) + " of " + std::to_string(cfg.trials) +
                          " sampled words were dense-rejected; none had all digitizations "
                          "integrally accepted");
    }
    return v;
}

// ---------------------------------------------------------------------------
// Decision procedure for closure under digitization
// ---------------------------------------------------------------------------

namespace {

/// Dense timestamps that digitize to `z` at `eps`: z itself, the largest
/// floor point z + eps, and (when z >= 1) a ceil point z - 1 + (1+eps)/2.
std::vector<Rational> dense_candidates(std::int64_t z, const Rational& eps) {
    std::vector<Rational> out;
    const Rational zr(z);
    out.push_back(zr);
    out.push_back(zr + eps);
    if (z >= 1) {
        out.push_back(zr - Rational(1) + (Rational(1) + eps) / Rational(2));
    }
    std::vector<Rational> checked;
    for (const auto& t : out) {
        if (digitize_scalar(t, eps) == z) checked.push_back(t);
    }
    return checked;
}

/// DFS over per-position candidate timestamps (monotone, one shared eps)
/// for a dense word accepted by `a` whose eps-digitization is exactly `z`.
std::optional<TimedWord> dense_witness_search(const TimedAutomaton& a,
                                              const IntegerTimedWord& z,
                                              const Rational& eps) {
    std::vector<std::vector<Rational>> candidates;
    for (const auto& [action, time] : z) {
        candidates.push_back(dense_candidates(time, eps));
    }
    TimedWord current;
    std::optional<TimedWord> hit;
    long budget = 200000;
    const auto dfs = [&](auto&& self, std::size_t i) -> void {
        if (hit || --budget <= 0) return;
        if (i == z.size()) {
            if (simulate_membership(a, current).accepted) hit = current;
            return;
        }
        for (const auto& t : candidates[i]) {
            if (!current.empty() && t < current.back().second) continue;
            current.emplace_back(z[i].first, t);
            self(self, i + 1);
            current.pop_back();
        }
    };
    dfs(dfs, 0);
    return hit;
}

} // namespace

Verdict check_ta_cud(const TimedAutomaton& a, std::size_t state_cap) {
    a.validate();
    const TickAutomaton n_cl = build_tick_automaton(closure_transform(a), state_cap);
    const TickAutomaton n = build_tick_automaton(a, state_cap);
    const InclusionResult inc = language_inclusion(n_cl, n, state_cap);
    if (inc.included) {
        return Verdict::holds("decision via closure-inclusion criterion");
    }

    const TickWord& u = inc.counterexample;
    const IntegerTimedWord z = decode_tick_word(u);
    for (const Rational& eps :
         {Rational(1, 2), Rational(1, 4), Rational(3, 4), Rational(1)}) {
        if (z.empty()) break;  // the only dense word digitizing to it is itself
        const auto witness = dense_witness_search(a, z, eps);
        if (witness) {
            Verdict v = Verdict::counterexample();
            v.trace = word_as_trace(*witness);
            v.eps = eps;
            v.tick_word = u;
            v.notes.push_back("accepted dense word: " + render_trace(*v.trace));
            v.notes.push_back("its digitization at eps = " + eps.str() +
                              " is rejected in the integer semantics: " + render_tick_word(u));
            return v;
        }
    }
    if (z.empty() && simulate_membership(a, {}).accepted) {
        Verdict v = Verdict::counterexample();
        v.trace = TimedStateSequence{};
        v.eps = Rational(1);
        v.tick_word = u;
        v.notes.push_back("the empty word is dense-accepted but integrally rejected");
        return v;
    }
    Verdict v = Verdict::inconclusive(
        "closure-inclusion criterion produced a counterexample tick word, but no dense "
        "witness realizing it was found within budget");
    v.tick_word = u;
    v.notes.push_back("unconfirmed tick word: " + render_tick_word(u));
    return v;
}

// ---------------------------------------------------------------------------
// Reachability cross-check
// ---------------------------------------------------------------------------

Verdict check_reach_equivalence(const TimedAutomaton& a, const FuzzConfig& cfg,
                                std::size_t state_cap) {
    cfg.validate();
    a.validate();
    std::vector<std::string> notes;
    if (classify(a) != Classification::Closed) {
        notes.push_back("warning: the automaton is not Closed; dense and integer "
                        "reachability may legitimately differ");
    }
    const std::set<std::string> tick_locs = reachable_locations_tick(a, state_cap);
    const std::set<std::string> dense_locs =
        explore_locations_dense(a, cfg.trials, cfg.max_len, cfg.seed);
    notes.push_back("tick-reachable locations: " + render_set(tick_locs));
    notes.push_back("dense-explored locations: " + render_set(dense_locs));

    std::set<std::string> dense_only;
    std::set_difference(dense_locs.begin(), dense_locs.end(), tick_locs.begin(),
                        tick_locs.end(), std::inserter(dense_only, dense_only.begin()));
    if (!dense_only.empty()) {
        Verdict v = Verdict::counterexample();
        v.notes = std::move(notes);
        v.notes.push_back("dense exploration reached locations the integer semantics "
                          "cannot: " +
                          render_set(dense_only));
        return v;
    }
    std::set<std::string> tick_only;
    std::set_difference(tick_locs.begin(), tick_locs.end(), dense_locs.begin(),
                        dense_locs.end(), std::inserter(tick_only, tick_only.begin()));
    Verdict v = Verdict::no_counterexample(cfg.trials);
    v.notes = std::move(notes);
    if (tick_only.empty()) {
        v.notes.push_back("location sets agree");
    } else {
        v.notes.push_back("dense exploration did not reach: " + render_set(tick_only) +
                          " (raise the budget to close the gap)");
    }
    return v;
}

// ---------------------------------------------------------------------------
// Bounded integer-semantics verification
// ---------------------------------------------------------------------------

Verdict verify(const TimedAutomaton& a, const MtlPtr& phi, std::size_t bound,
               const std::map<std::string, StateLabel>& atom_map, std::size_t state_cap,
               std::size_t enum_node_budget) {
    a.validate();
    if (bound == 0) throw std::domain_error("verification bound must be positive");

    std::vector<std::string> gate_notes;
    const Classification cls = classify(a);
    if (cls != Classification::Closed) {
        const char* name = cls == Classification::Open ? "Open" : "Mixed";
        Verdict v = Verdict::inconclusive(
            std::string("gate 1 failed: the automaton classifies as ") + name +
            ", so the closed-under-digitization hypothesis is not established");
        v.notes.push_back(std::string("gate 1 (closed under digitization): failed - "
                                      "automaton classifies as ") +
                          name);
        v.notes.push_back("gate 2 (closed under inverse digitization): not evaluated");
        return v;
    }
    gate_notes.push_back("gate 1 (closed under digitization): passed - automaton "
                         "classifies as Closed");

    const PatternClass pattern = classify_pattern(phi);
    const WeakConstraintCheck weak = is_weakly_constrained(phi);
    if (pattern.kind == PatternClass::QualitativeSyntactic) {
        gate_notes.push_back("gate 2 (closed under inverse digitization): passed - "
                             "formula is syntactically qualitative");
    } else if (weak.yes) {
        gate_notes.push_back("gate 2 (closed under inverse digitization): passed - "
                             "formula is weakly constrained");
    } else {
        Verdict v = Verdict::inconclusive(
            "gate 2 failed: the formula is neither syntactically qualitative nor weakly "
            "constrained, so the closed-under-inverse-digitization hypothesis is not "
            "established");
        v.notes = std::move(gate_notes);
        v.notes.push_back("gate 2 (closed under inverse digitization): failed");
        for (const auto& violation : weak.violations) {
            v.notes.push_back("  " + violation);
        }
        return v;
    }

    const TickAutomaton n = build_tick_automaton(a, state_cap);
    auto words = enumerate_accepted_words(n, bound, enum_node_budget);
    // Shortest-first so a reported counterexample is a minimal tick word.
    std::sort(words.begin(), words.end(), [](const TickWord& x, const TickWord& y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    std::size_t skipped_empty = 0;
    for (const auto& u : words) {
        const IntegerTimedWord z = decode_tick_word(u);
        if (z.empty()) {
            ++skipped_empty;
            continue;
        }
        TimedStateSequence eta;
        for (const auto& [action, time] : z) {
            const auto it = atom_map.find(action);
            const StateLabel atoms = it != atom_map.end() ? it->second : StateLabel{action};
            eta.observations.push_back({atoms, Rational(time)});
        }
        if (!satisfies(phi, eta)) {
            Verdict v = Verdict::counterexample();
            v.trace = eta;
            v.tick_word = u;
            v.notes = std::move(gate_notes);
            v.notes.push_back("violating integer-timed trace: " + render_trace(eta));
            v.notes.push_back("as a tick word: " + render_tick_word(u));
            return v;
        }
    }
    Verdict v = Verdict::no_counterexample(bound);
    v.notes = std::move(gate_notes);
    v.notes.push_back("the formula holds in the integer semantics on every accepted "
                      "tick word of length at most " +
                      std::to_string(bound));
    if (skipped_empty > 0) {
        v.notes.push_back("skipped " + std::to_string(skipped_empty) +
                          " empty decoded trace(s): formulas are evaluated on non-empty "
                          "traces only");
    }
    return v;
}

} // namespace rtdig
