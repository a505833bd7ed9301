#include "rtdig/tick_automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace rtdig {

std::optional<std::size_t> TickAutomaton::symbol_index(const std::string& name) const {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (symbols[i] == name) return i;
    }
    return std::nullopt;
}

std::string TickAutomaton::state_label(std::size_t i) const {
    const TickState& s = states.at(i);
    if (s.clocks.empty()) return s.location;
    std::string label = s.location + "|";
    for (std::size_t c = 0; c < s.clocks.size(); ++c) {
        if (c > 0) label += ",";
        label += std::to_string(s.clocks[c]);
    }
    return label;
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

namespace {

bool integral_invariant_holds(const TimedAutomaton& a, const std::string& loc,
                              const std::vector<std::int64_t>& v) {
    const auto* inv = a.invariant_of(loc);
    if (inv == nullptr) return true;
    for (const ClockConstraint& c : *inv) {
        const std::size_t ci = std::find(a.clocks.begin(), a.clocks.end(), c.clock) - a.clocks.begin();
        if (!c.holds(Rational(v[ci]))) return false;
    }
    return true;
}

} // namespace

TickAutomaton build_tick_automaton(const TimedAutomaton& a, std::size_t state_cap) {
    a.validate();

    TickAutomaton n;
    n.symbols.push_back(kTickName);
    for (const std::string& act : a.alphabet()) {
        n.symbols.push_back(act);
    }
    n.clock_names = a.clocks;

    const std::int64_t cap_value = a.max_constant() + 1;

    std::map<std::string, std::size_t> clock_index;
    for (std::size_t i = 0; i < a.clocks.size(); ++i) {
        clock_index[a.clocks[i]] = i;
    }
    auto guard_holds = [&](const std::vector<ClockConstraint>& cs,
                           const std::vector<std::int64_t>& v) {
        for (const ClockConstraint& c : cs) {
            if (!c.holds(Rational(v[clock_index.at(c.clock)]))) return false;
        }
        return true;
    };

    std::map<std::pair<std::string, std::vector<std::int64_t>>, std::size_t> ids;
    std::deque<std::size_t> queue;

    auto intern = [&](const std::string& loc, std::vector<std::int64_t> v) {
        const auto key = std::make_pair(loc, v);
        const auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        if (n.states.size() >= state_cap) {
            throw ResourceLimitError("tick automaton construction exceeded the state cap (" +
                                     std::to_string(state_cap) + ")");
        }
        const std::size_t id = n.states.size();
        ids.emplace(key, id);
        n.states.push_back({loc, std::move(v)});
        n.accepting.push_back(a.accepting.count(loc) > 0 ? 1 : 0);
        n.transitions.emplace_back(n.symbols.size());
        queue.push_back(id);
        return id;
    };

    const std::vector<std::int64_t> zeros(a.clocks.size(), 0);
    if (!integral_invariant_holds(a, a.initial, zeros)) {
        return n;  // no valid start: the language is empty
    }
    n.initial = intern(a.initial, zeros);

    while (!queue.empty()) {
        const std::size_t id = queue.front();
        queue.pop_front();
        // Copy: intern() may grow n.states and invalidate references.
        const TickState cur = n.states[id];

        std::vector<std::int64_t> ticked = cur.clocks;
        for (std::int64_t& x : ticked) {
            x = std::min(x + 1, cap_value);
        }
        if (integral_invariant_holds(a, cur.location, ticked)) {
            n.transitions[id][0].push_back(intern(cur.location, std::move(ticked)));
        }

        for (const Edge& e : a.edges) {
            if (e.from != cur.location) continue;
            if (!guard_holds(e.guard, cur.clocks)) continue;
            std::vector<std::int64_t> next = cur.clocks;
            for (const std::string& r : e.resets) {
                next[clock_index.at(r)] = 0;
            }
            if (!integral_invariant_holds(a, e.to, next)) continue;
            const std::size_t sym = *n.symbol_index(e.action);
            n.transitions[id][sym].push_back(intern(e.to, std::move(next)));
        }
    }

    for (auto& per_state : n.transitions) {
        for (auto& targets : per_state) {
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        }
    }
    return n;
}

// ---------------------------------------------------------------------------
// Encoding
// ---------------------------------------------------------------------------

TickWord encode_integer_word(const IntegerTimedWord& w) {
    TickWord out;
    std::int64_t now = 0;
    for (const auto& [action, t] : w) {
        if (t < 0) {
            throw std::domain_error("integer-timed word timestamps must be nonnegative");
        }
        if (t < now) {
            throw std::domain_error("integer-timed word must be weakly monotone");
        }
        for (; now < t; ++now) {
            out.push_back(kTickName);
        }
        out.push_back(action);
    }
    return out;
}

IntegerTimedWord decode_tick_word(const TickWord& u) {
    IntegerTimedWord out;
    std::int64_t now = 0;
    for (const std::string& sym : u) {
        if (sym == kTickName) {
            ++now;
        } else {
            out.emplace_back(sym, now);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Language algorithms
// ---------------------------------------------------------------------------

namespace {

bool any_accepting(const TickAutomaton& n, const std::vector<std::size_t>& subset) {
    for (const std::size_t q : subset) {
        if (n.accepting[q]) return true;
    }
    return false;
}

std::vector<std::size_t> subset_step(const TickAutomaton& n, const std::vector<std::size_t>& subset,
                                     std::size_t symbol) {
    std::vector<std::size_t> next;
    for (const std::size_t q : subset) {
        const auto& targets = n.transitions[q][symbol];
        next.insert(next.end(), targets.begin(), targets.end());
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    return next;
}

std::vector<std::size_t> initial_subset(const TickAutomaton& n) {
    if (n.states.empty()) return {};
    return {n.initial};
}

} // namespace

bool nfa_accepts(const TickAutomaton& n, const TickWord& u) {
    std::vector<std::size_t> sym_indices;
    sym_indices.reserve(u.size());
    for (const std::string& sym : u) {
        const auto idx = n.symbol_index(sym);
        if (!idx) {
            throw std::domain_error("symbol '" + sym + "' is not in the tick alphabet");
        }
        sym_indices.push_back(*idx);
    }

    std::vector<std::size_t> current = initial_subset(n);
    for (const std::size_t s : sym_indices) {
        if (current.empty()) return false;
        current = subset_step(n, current, s);
    }
    return any_accepting(n, current);
}

std::optional<TickWord> emptiness_witness(const TickAutomaton& n) {
    if (n.states.empty()) return std::nullopt;

    // BFS over single states suffices: a shortest accepted word is a
    // shortest path to an accepting state.
    std::vector<std::pair<std::size_t, std::size_t>> parent(n.size(), {SIZE_MAX, SIZE_MAX});
    std::vector<char> seen(n.size(), 0);
    std::deque<std::size_t> queue;
    seen[n.initial] = 1;
    queue.push_back(n.initial);

    std::size_t hit = SIZE_MAX;
    if (n.accepting[n.initial]) {
        hit = n.initial;
    }
    while (hit == SIZE_MAX && !queue.empty()) {
        const std::size_t q = queue.front();
        queue.pop_front();
        for (std::size_t s = 0; s < n.symbols.size() && hit == SIZE_MAX; ++s) {
            for (const std::size_t t : n.transitions[q][s]) {
                if (seen[t]) continue;
                seen[t] = 1;
                parent[t] = {q, s};
                if (n.accepting[t]) {
                    hit = t;
                    break;
                }
                queue.push_back(t);
            }
        }
    }
    if (hit == SIZE_MAX) return std::nullopt;

    TickWord word;
    for (std::size_t q = hit; parent[q].first != SIZE_MAX; q = parent[q].first) {
        word.push_back(n.symbols[parent[q].second]);
    }
    std::reverse(word.begin(), word.end());
    return word;
}

InclusionResult language_inclusion(const TickAutomaton& n1, const TickAutomaton& n2,
                                   std::size_t state_cap) {
    InclusionResult result;
    if (n1.states.empty()) return result;  // empty language is included in anything

    // Map n1 symbol indices onto n2's; a missing symbol sends the n2 subset
    // to the dead set.
    std::vector<std::optional<std::size_t>> sym_map(n1.symbols.size());
    for (std::size_t s = 0; s < n1.symbols.size(); ++s) {
        sym_map[s] = n2.symbol_index(n1.symbols[s]);
    }

    std::map<std::vector<std::size_t>, std::size_t> subset_ids;
    std::vector<std::vector<std::size_t>> subsets;
    auto intern_subset = [&](std::vector<std::size_t> subset) {
        const auto it = subset_ids.find(subset);
        if (it != subset_ids.end()) return it->second;
        const std::size_t id = subsets.size();
        subset_ids.emplace(subset, id);
        subsets.push_back(std::move(subset));
        return id;
    };

    struct Node {
        std::size_t q1;
        std::size_t sub2;
    };
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> node_ids;
    std::vector<Node> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> parent;  // node, n1 symbol
    std::deque<std::size_t> queue;

    auto intern_node = [&](std::size_t q1, std::size_t sub2, std::size_t from,
                           std::size_t via) -> std::size_t {
        const auto key = std::make_pair(q1, sub2);
        const auto it = node_ids.find(key);
        if (it != node_ids.end()) return it->second;
        if (nodes.size() >= state_cap) {
            throw ResourceLimitError("language inclusion exceeded the state cap (" +
                                     std::to_string(state_cap) + ")");
        }
        const std::size_t id = nodes.size();
        node_ids.emplace(key, id);
        nodes.push_back({q1, sub2});
        parent.emplace_back(from, via);
        queue.push_back(id);
        return id;
    };

    auto violating = [&](std::size_t node) {
        return n1.accepting[nodes[node].q1] && !any_accepting(n2, subsets[nodes[node].sub2]);
    };
    auto extract = [&](std::size_t node) {
        TickWord word;
        for (std::size_t v = node; parent[v].first != SIZE_MAX; v = parent[v].first) {
            word.push_back(n1.symbols[parent[v].second]);
        }
        std::reverse(word.begin(), word.end());
        result.included = false;
        result.counterexample = std::move(word);
    };

    const std::size_t root =
        intern_node(n1.initial, intern_subset(initial_subset(n2)), SIZE_MAX, SIZE_MAX);
    if (violating(root)) {
        extract(root);
        return result;
    }

    while (!queue.empty()) {
        const std::size_t id = queue.front();
        queue.pop_front();
        const Node cur = nodes[id];

        for (std::size_t s = 0; s < n1.symbols.size(); ++s) {
            const auto& targets1 = n1.transitions[cur.q1][s];
            if (targets1.empty()) continue;
            const std::vector<std::size_t> next2 =
                sym_map[s] ? subset_step(n2, subsets[cur.sub2], *sym_map[s])
                           : std::vector<std::size_t>{};
            const std::size_t sub2 = intern_subset(next2);
            for (const std::size_t t1 : targets1) {
                const std::size_t next = intern_node(t1, sub2, id, s);
                if (violating(next)) {
                    extract(next);
                    return result;
                }
            }
        }
    }
    return result;
}

std::set<std::string> reachable_locations_tick(const TimedAutomaton& a, std::size_t state_cap) {
    const TickAutomaton n = build_tick_automaton(a, state_cap);
    std::set<std::string> out;
    for (const TickState& s : n.states) {
        out.insert(s.location);
    }
    return out;
}

std::vector<TickWord> enumerate_accepted_words(const TickAutomaton& n, std::size_t max_length,
                                               std::size_t node_budget) {
    std::vector<TickWord> out;
    std::size_t budget = node_budget;

    TickWord prefix;
    auto dfs = [&](auto&& self, const std::vector<std::size_t>& subset) -> void {
        if (budget-- == 0) {
            throw ResourceLimitError("tick word enumeration exceeded the node budget (" +
                                     std::to_string(node_budget) + ")");
        }
        if (any_accepting(n, subset)) {
            out.push_back(prefix);
        }
        if (prefix.size() == max_length) return;
        for (std::size_t s = 0; s < n.symbols.size(); ++s) {
            const std::vector<std::size_t> next = subset_step(n, subset, s);
            if (next.empty()) continue;
            prefix.push_back(n.symbols[s]);
            self(self, next);
            prefix.pop_back();
        }
    };

    const std::vector<std::size_t> root = initial_subset(n);
    if (!root.empty()) {
        dfs(dfs, root);
    }
    return out;
}

std::string to_dot(const TickAutomaton& n) {
    std::ostringstream os;
    os << "digraph tick {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=circle];\n";
    if (n.states.empty()) {
        os << "  empty [shape=plaintext, label=\"(empty language)\"];\n";
        os << "}\n";
        return os.str();
    }
    os << "  __start [shape=point];\n";
    for (std::size_t i = 0; i < n.size(); ++i) {
        os << "  s" << i << " [label=\"" << n.state_label(i) << "\"";
        if (n.accepting[i]) os << ", shape=doublecircle";
        os << "];\n";
    }
    os << "  __start -> s" << n.initial << ";\n";
    for (std::size_t i = 0; i < n.size(); ++i) {
        for (std::size_t s = 0; s < n.symbols.size(); ++s) {
            for (const std::size_t t : n.transitions[i][s]) {
                os << "  s" << i << " -> s" << t << " [label=\""
                   << (s == 0 ? "✓" : n.symbols[s]) << "\"];\n";
            }
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace rtdig
