// Independent reference evaluator for the temporal logic, used only by
// tests. Works bottom-up: for every node it fills a whole satisfaction
// table (one bool per trace position) from the children's tables, with a
// running-prefix scan for Until. Kept deliberately separate from the
// recursive evaluator in the library so the two can cross-check each other.

#pragma once

#include "rtdig/mtl.hpp"
#include "rtdig/trace.hpp"

#include <vector>

namespace refeval {

inline bool in_interval(const rtdig::Interval& iv, const rtdig::Rational& d) {
    const bool lo_ok = iv.lower_closed ? !(d < iv.lower) : iv.lower < d;
    const bool hi_ok = !iv.upper || (iv.upper_closed ? !(*iv.upper < d) : d < *iv.upper);
    return lo_ok && hi_ok;
}

inline std::vector<char> table(const rtdig::MtlPtr& f, const rtdig::TimedStateSequence& eta) {
    using rtdig::MtlKind;
    const std::size_t n = eta.size();
    std::vector<char> out(n, 0);
    switch (f->kind) {
        case MtlKind::Atom: {
            for (std::size_t i = 0; i < n; ++i) {
                if (f->atom == "true") {
                    out[i] = 1;
                } else if (f->atom == "false") {
                    out[i] = 0;
                } else {
                    out[i] = eta.observations[i].atoms.count(f->atom) ? 1 : 0;
                }
            }
            return out;
        }
        case MtlKind::Not: {
            const auto l = table(f->left, eta);
            for (std::size_t i = 0; i < n; ++i) out[i] = !l[i];
            return out;
        }
        case MtlKind::And: {
            const auto l = table(f->left, eta);
            const auto r = table(f->right, eta);
            for (std::size_t i = 0; i < n; ++i) out[i] = l[i] && r[i];
            return out;
        }
        case MtlKind::Or: {
            const auto l = table(f->left, eta);
            const auto r = table(f->right, eta);
            for (std::size_t i = 0; i < n; ++i) out[i] = l[i] || r[i];
            return out;
        }
        case MtlKind::Until: {
            const auto l = table(f->left, eta);
            const auto r = table(f->right, eta);
            for (std::size_t i = 0; i < n; ++i) {
                bool prefix = true;  // left holds on [i, j)
                for (std::size_t j = i; j < n && prefix; ++j) {
                    const rtdig::Rational d =
                        eta.observations[j].time - eta.observations[i].time;
                    if (in_interval(f->interval, d) && r[j]) {
                        out[i] = 1;
                        break;
                    }
                    prefix = prefix && l[j];
                }
            }
            return out;
        }
        case MtlKind::Unless: {
            const auto l = table(f->left, eta);
            const auto r = table(f->right, eta);
            for (std::size_t i = 0; i < n; ++i) {
                bool until_part = false;
                bool prefix = true;
                for (std::size_t j = i; j < n && prefix; ++j) {
                    const rtdig::Rational d =
                        eta.observations[j].time - eta.observations[i].time;
                    if (in_interval(f->interval, d) && r[j]) {
                        until_part = true;
                        break;
                    }
                    prefix = prefix && l[j];
                }
                bool hold_part = true;
                for (std::size_t j = i; j < n; ++j) {
                    const rtdig::Rational d =
                        eta.observations[j].time - eta.observations[i].time;
                    if (f->interval.upper && *f->interval.upper < d) break;
                    if (!l[j]) {
                        hold_part = false;
                        break;
                    }
                }
                out[i] = until_part || hold_part;
            }
            return out;
        }
    }
    return out;
}

inline bool ref_evaluate(const rtdig::MtlPtr& f, const rtdig::TimedStateSequence& eta,
                         std::size_t i) {
    return table(f, eta)[i] != 0;
}

inline bool ref_satisfies(const rtdig::MtlPtr& f, const rtdig::TimedStateSequence& eta) {
    return ref_evaluate(f, eta, 0);
}

} // namespace refeval
