// mtl.hpp -- metric temporal logic over finite timed state sequences
//
// The AST keeps six node kinds: Atom, Not, And, Or, Until(I), Unless(I).
// Everything else is parser sugar: F[I] f = (true U[I] f), G[I] f =
// (f W[I] false), p -> q = (!p | q), and True/False are the reserved atoms
// "true" and "false". Semantics are pointwise over observations: strong
// until (the witness must lie inside the trace) and weak unless (obligations
// past the trace end are vacuous).

#pragma once

#include "rtdig/rational.hpp"
#include "rtdig/trace.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rtdig {

/// Time interval with rational endpoints; upper may be +infinity
/// (represented by an empty optional, never closed).
struct Interval {
    Rational lower;
    bool lower_closed = true;
    std::optional<Rational> upper;  ///< nullopt = +infinity
    bool upper_closed = false;

    bool contains(const Rational& v) const;
    /// True when no rational lies inside.
    bool is_empty() const;
    bool is_zero_inf() const;
    std::string str() const;

    static Interval zero_inf() { return {Rational(0), true, std::nullopt, false}; }
    static Interval closed(Rational lo, Rational hi) { return {std::move(lo), true, std::move(hi), true}; }
    static Interval open(Rational lo, Rational hi) { return {std::move(lo), false, std::move(hi), false}; }

    bool operator==(const Interval&) const = default;
};

enum class MtlKind { Atom, Not, And, Or, Until, Unless };

struct MtlFormula;
using MtlPtr = std::shared_ptr<const MtlFormula>;

struct MtlFormula {
    MtlKind kind;
    std::string atom;   ///< Atom only
    Interval interval;  ///< Until/Unless only
    MtlPtr left;        ///< Not/And/Or/Until/Unless
    MtlPtr right;       ///< And/Or/Until/Unless

    /// Canonical rendering; sugar forms (F, G, omitted [0,inf)) are used
    /// when the shape matches, and parse(str(f)) reproduces f.
    std::string str() const;
};

MtlPtr mtl_atom(std::string name);
MtlPtr mtl_true();
MtlPtr mtl_false();
MtlPtr mtl_not(MtlPtr f);
MtlPtr mtl_and(MtlPtr a, MtlPtr b);
MtlPtr mtl_or(MtlPtr a, MtlPtr b);
MtlPtr mtl_implies(MtlPtr a, MtlPtr b);
MtlPtr mtl_until(Interval i, MtlPtr a, MtlPtr b);
MtlPtr mtl_unless(Interval i, MtlPtr a, MtlPtr b);
MtlPtr mtl_eventually(Interval i, MtlPtr f);
MtlPtr mtl_always(Interval i, MtlPtr f);

/// Structural equality of ASTs.
bool mtl_equal(const MtlPtr& a, const MtlPtr& b);

struct ParseError : std::invalid_argument {
    ParseError(const std::string& what, std::size_t position);
    std::size_t position;
};

/// Grammar, loosest to tightest: `->` (right-assoc), `U[I]`/`W[I]`
/// (right-assoc), `|`, `&`, then `!`/`F[I]`/`G[I]`, then atoms, `true`,
/// `false` and parentheses. Intervals: `[a,b]`, `(a,b)`, `[a,b)`, `(a,b]`,
/// with `inf` as an upper end; an omitted interval means `[0,inf)`; bounds
/// are decimals or p/q. Keywords U, W, F, G, inf, true, false are reserved.
MtlPtr parse_formula(const std::string& text);

/// Removes double negations and pushes negation over And/Or (De Morgan)
/// only; a negation never crosses Until or Unless.
MtlPtr propositional_nnf(const MtlPtr& f);

struct WeakConstraintCheck {
    bool yes = true;
    /// One entry per offending subformula: which condition it violates and
    /// the rendered subformula.
    std::vector<std::string> violations;
};

/// Checks as written (no normalization): (i) every negation sits on an
/// atom, (ii) every Until interval is open at its finite endpoints (an
/// infinite upper end counts as open), (iii) every Unless interval is
/// closed at its finite endpoints.
WeakConstraintCheck is_weakly_constrained(const MtlPtr& f);

struct PatternClass {
    enum Kind { BoundedInvariance, BoundedResponse, QualitativeSyntactic, Other } kind;
    Rational bound;  ///< the c of the bounded patterns; 0 otherwise

    std::string str() const;
    bool operator==(const PatternClass&) const = default;
};

/// BoundedResponse: G(L1 | F[0,c] L2) with literals Li, finite c, modulo Or
/// commutativity (the implication sugar produces this shape).
/// BoundedInvariance: the same with G[0,c] inside. QualitativeSyntactic:
/// every interval is exactly [0,inf). Otherwise Other.
PatternClass classify_pattern(const MtlPtr& f);

/// Pointwise satisfaction at observation i; throws std::out_of_range when i
/// is not a valid position.
bool evaluate(const MtlPtr& f, const TimedStateSequence& eta, std::size_t i);

/// evaluate at position 0; throws std::domain_error on an empty trace.
bool satisfies(const MtlPtr& f, const TimedStateSequence& eta);

} // namespace rtdig
