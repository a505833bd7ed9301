#include "rtdig/mtl.hpp"

#include <cctype>

namespace rtdig {

// ---------------------------------------------------------------------------
// Interval
// ---------------------------------------------------------------------------

bool Interval::contains(const Rational& v) const {
    if (lower_closed ? v < lower : v <= lower) return false;
    if (upper) {
        if (upper_closed ? v > *upper : v >= *upper) return false;
    }
    return true;
}

bool Interval::is_empty() const {
    if (!upper) return false;
    if (lower > *upper) return true;
    if (lower == *upper) return !(lower_closed && upper_closed);
    return false;
}

bool Interval::is_zero_inf() const {
    return lower == Rational(0) && lower_closed && !upper;
}

std::string Interval::str() const {
    std::string s = lower_closed ? "[" : "(";
    s += lower.str();
    s += ",";
    if (upper) {
        s += upper->str();
        s += upper_closed ? "]" : ")";
    } else {
        s += "inf)";
    }
    return s;
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

namespace {

MtlPtr make(MtlKind kind, std::string atom, Interval iv, MtlPtr l, MtlPtr r) {
    auto f = std::make_shared<MtlFormula>();
    f->kind = kind;
    f->atom = std::move(atom);
    f->interval = std::move(iv);
    f->left = std::move(l);
    f->right = std::move(r);
    return f;
}

bool is_atom(const MtlPtr& f, const char* name) {
    return f->kind == MtlKind::Atom && f->atom == name;
}

bool is_literal(const MtlPtr& f) {
    return f->kind == MtlKind::Atom ||
           (f->kind == MtlKind::Not && f->left->kind == MtlKind::Atom);
}

} // namespace

MtlPtr mtl_atom(std::string name) {
    return make(MtlKind::Atom, std::move(name), Interval::zero_inf(), nullptr, nullptr);
}

MtlPtr mtl_true() { return mtl_atom("true"); }
MtlPtr mtl_false() { return mtl_atom("false"); }

MtlPtr mtl_not(MtlPtr f) {
    return make(MtlKind::Not, "", Interval::zero_inf(), std::move(f), nullptr);
}

MtlPtr mtl_and(MtlPtr a, MtlPtr b) {
    return make(MtlKind::And, "", Interval::zero_inf(), std::move(a), std::move(b));
}

MtlPtr mtl_or(MtlPtr a, MtlPtr b) {
    return make(MtlKind::Or, "", Interval::zero_inf(), std::move(a), std::move(b));
}

MtlPtr mtl_implies(MtlPtr a, MtlPtr b) {
    return mtl_or(mtl_not(std::move(a)), std::move(b));
}

MtlPtr mtl_until(Interval i, MtlPtr a, MtlPtr b) {
    return make(MtlKind::Until, "", std::move(i), std::move(a), std::move(b));
}

MtlPtr mtl_unless(Interval i, MtlPtr a, MtlPtr b) {
    return make(MtlKind::Unless, "", std::move(i), std::move(a), std::move(b));
}

MtlPtr mtl_eventually(Interval i, MtlPtr f) {
    return mtl_until(std::move(i), mtl_true(), std::move(f));
}

MtlPtr mtl_always(Interval i, MtlPtr f) {
    return mtl_unless(std::move(i), std::move(f), mtl_false());
}

bool mtl_equal(const MtlPtr& a, const MtlPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->atom != b->atom || !(a->interval == b->interval)) {
        return false;
    }
    return mtl_equal(a->left, b->left) && mtl_equal(a->right, b->right);
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string MtlFormula::str() const {
    const std::string iv = interval.is_zero_inf() ? "" : interval.str();
    switch (kind) {
        case MtlKind::Atom:
            return atom;
        case MtlKind::Not:
            return "!" + left->str();
        case MtlKind::And:
            return "(" + left->str() + " & " + right->str() + ")";
        case MtlKind::Or:
            return "(" + left->str() + " | " + right->str() + ")";
        case MtlKind::Until:
            if (is_atom(left, "true")) {
                return "F" + iv + " " + right->str();
            }
            return "(" + left->str() + " U" + iv + " " + right->str() + ")";
        case MtlKind::Unless:
            if (is_atom(right, "false")) {
                return "G" + iv + " " + left->str();
            }
            return "(" + left->str() + " W" + iv + " " + right->str() + ")";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

ParseError::ParseError(const std::string& what, std::size_t pos)
    : std::invalid_argument(what + " (at offset " + std::to_string(pos) + ")"),
      position(pos) {}

namespace {

enum class Tok {
    Ident, Number, LParen, RParen, LBracket, RBracket,
    Comma, Pipe, Amp, Bang, Arrow, Slash, End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    const auto isid = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                num += text[i++];
            }
            if (i < text.size() && text[i] == '.') {
                num += text[i++];
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                    num += text[i++];
                }
            }
            out.push_back({Tok::Number, num, start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (i < text.size() && isid(text[i])) {
                id += text[i++];
            }
            out.push_back({Tok::Ident, id, start});
            continue;
        }
        switch (c) {
            case '(': out.push_back({Tok::LParen, "(", start}); break;
            case ')': out.push_back({Tok::RParen, ")", start}); break;
            case '[': out.push_back({Tok::LBracket, "[", start}); break;
            case ']': out.push_back({Tok::RBracket, "]", start}); break;
            case ',': out.push_back({Tok::Comma, ",", start}); break;
            case '|': out.push_back({Tok::Pipe, "|", start}); break;
            case '&': out.push_back({Tok::Amp, "&", start}); break;
            case '!': out.push_back({Tok::Bang, "!", start}); break;
            case '/': out.push_back({Tok::Slash, "/", start}); break;
            case '-':
                if (i + 1 < text.size() && text[i + 1] == '>') {
                    out.push_back({Tok::Arrow, "->", start});
                    ++i;
                    break;
                }
                throw ParseError("unexpected character '-'", start);
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
        ++i;
    }
    out.push_back({Tok::End, "", text.size()});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    MtlPtr run() {
        MtlPtr f = implied();
        if (peek().kind != Tok::End) {
            throw ParseError("unexpected trailing input '" + peek().text + "'", peek().pos);
        }
        return f;
    }

private:
    std::vector<Token> toks_;
    std::size_t at_ = 0;

    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(at_ + ahead, toks_.size() - 1)];
    }
    Token next() { return toks_[std::min(at_++, toks_.size() - 1)]; }
    bool peek_ident(const char* name) const {
        return peek().kind == Tok::Ident && peek().text == name;
    }
    Token expect(Tok kind, const char* what) {
        if (peek().kind != kind) {
            throw ParseError(std::string("expected ") + what + " before '" + peek().text + "'",
                             peek().pos);
        }
        return next();
    }

    MtlPtr implied() {
        MtlPtr lhs = until_level();
        if (peek().kind == Tok::Arrow) {
            next();
            return mtl_implies(std::move(lhs), implied());
        }
        return lhs;
    }

    MtlPtr until_level() {
        MtlPtr lhs = or_level();
        if (peek_ident("U") || peek_ident("W")) {
            const bool until = next().text == "U";
            Interval iv = optional_interval();
            MtlPtr rhs = until_level();
            return until ? mtl_until(std::move(iv), std::move(lhs), std::move(rhs))
                         : mtl_unless(std::move(iv), std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    MtlPtr or_level() {
        MtlPtr lhs = and_level();
        while (peek().kind == Tok::Pipe) {
            next();
            lhs = mtl_or(std::move(lhs), and_level());
        }
        return lhs;
    }

    MtlPtr and_level() {
        MtlPtr lhs = unary();
        while (peek().kind == Tok::Amp) {
            next();
            lhs = mtl_and(std::move(lhs), unary());
        }
        return lhs;
    }

    MtlPtr unary() {
        if (peek().kind == Tok::Bang) {
            next();
            return mtl_not(unary());
        }
        if (peek_ident("F")) {
            next();
            Interval iv = optional_interval();
            return mtl_eventually(std::move(iv), unary());
        }
        if (peek_ident("G")) {
            next();
            Interval iv = optional_interval();
            return mtl_always(std::move(iv), unary());
        }
        return primary();
    }

    MtlPtr primary() {
        const Token t = peek();
        if (t.kind == Tok::LParen) {
            next();
            MtlPtr f = implied();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (t.kind == Tok::Ident) {
            if (t.text == "U" || t.text == "W" || t.text == "inf") {
                throw ParseError("reserved word '" + t.text + "' cannot be an atom", t.pos);
            }
            next();
            return mtl_atom(t.text);
        }
        throw ParseError("expected a formula, found '" + t.text + "'", t.pos);
    }

    // An interval follows iff the next token is '[' or a '(' directly
    // followed by a number; a bare '(' opens a subformula instead.
    Interval optional_interval() {
        if (peek().kind == Tok::LBracket ||
            (peek().kind == Tok::LParen && peek(1).kind == Tok::Number)) {
            return interval();
        }
        return Interval::zero_inf();
    }

    Interval interval() {
        const Token open = next();  // '[' or '('
        Interval iv;
        iv.lower_closed = open.kind == Tok::LBracket;
        iv.lower = bound();
        expect(Tok::Comma, "','");
        if (peek_ident("inf")) {
            next();
            iv.upper = std::nullopt;
            if (peek().kind == Tok::RBracket) {
                throw ParseError("an infinite endpoint must be open", peek().pos);
            }
            expect(Tok::RParen, "')'");
            iv.upper_closed = false;
        } else {
            iv.upper = bound();
            if (peek().kind == Tok::RBracket) {
                next();
                iv.upper_closed = true;
            } else {
                expect(Tok::RParen, "']' or ')'");
                iv.upper_closed = false;
            }
        }
        if (iv.is_empty()) {
            throw ParseError("empty interval " + iv.str(), open.pos);
        }
        return iv;
    }

    Rational bound() {
        const Token t = expect(Tok::Number, "a number");
        std::string text = t.text;
        if (peek().kind == Tok::Slash) {
            next();
            text += "/" + expect(Tok::Number, "a denominator").text;
        }
        try {
            return Rational::parse(text);
        } catch (const std::exception& e) {
            throw ParseError(e.what(), t.pos);
        }
    }
};

} // namespace

MtlPtr parse_formula(const std::string& text) {
    return Parser(lex(text)).run();
}

// ---------------------------------------------------------------------------
// Normal form and syntactic classifiers
// ---------------------------------------------------------------------------

MtlPtr propositional_nnf(const MtlPtr& f) {
    switch (f->kind) {
        case MtlKind::Atom:
            return f;
        case MtlKind::And:
            return mtl_and(propositional_nnf(f->left), propositional_nnf(f->right));
        case MtlKind::Or:
            return mtl_or(propositional_nnf(f->left), propositional_nnf(f->right));
        case MtlKind::Until:
            return mtl_until(f->interval, propositional_nnf(f->left), propositional_nnf(f->right));
        case MtlKind::Unless:
            return mtl_unless(f->interval, propositional_nnf(f->left), propositional_nnf(f->right));
        case MtlKind::Not:
            break;
    }
    const MtlPtr& g = f->left;
    switch (g->kind) {
        case MtlKind::Atom:
            return f;
        case MtlKind::Not:
            return propositional_nnf(g->left);
        case MtlKind::And:
            return mtl_or(propositional_nnf(mtl_not(g->left)),
                          propositional_nnf(mtl_not(g->right)));
        case MtlKind::Or:
            return mtl_and(propositional_nnf(mtl_not(g->left)),
                           propositional_nnf(mtl_not(g->right)));
        case MtlKind::Until:
        case MtlKind::Unless:
            // Negation stays on the temporal node; only its body normalizes.
            return mtl_not(propositional_nnf(g));
    }
    return f;
}

namespace {

void collect_violations(const MtlPtr& f, std::vector<std::string>& out) {
    switch (f->kind) {
        case MtlKind::Atom:
            return;
        case MtlKind::Not:
            if (f->left->kind != MtlKind::Atom) {
                out.push_back("condition (i): negation not on an atom: " + f->str());
            }
            collect_violations(f->left, out);
            return;
        case MtlKind::And:
        case MtlKind::Or:
            collect_violations(f->left, out);
            collect_violations(f->right, out);
            return;
        case MtlKind::Until:
            if (f->interval.lower_closed || (f->interval.upper && f->interval.upper_closed)) {
                out.push_back("condition (ii): until interval is not open: " + f->str());
            }
            collect_violations(f->left, out);
            collect_violations(f->right, out);
            return;
        case MtlKind::Unless:
            if (!f->interval.lower_closed || (f->interval.upper && !f->interval.upper_closed)) {
                out.push_back("condition (iii): unless interval is not closed: " + f->str());
            }
            collect_violations(f->left, out);
            collect_violations(f->right, out);
            return;
    }
}

bool all_intervals_zero_inf(const MtlPtr& f) {
    switch (f->kind) {
        case MtlKind::Atom:
            return true;
        case MtlKind::Not:
            return all_intervals_zero_inf(f->left);
        case MtlKind::And:
        case MtlKind::Or:
            return all_intervals_zero_inf(f->left) && all_intervals_zero_inf(f->right);
        case MtlKind::Until:
        case MtlKind::Unless:
            return f->interval.is_zero_inf() && all_intervals_zero_inf(f->left) &&
                   all_intervals_zero_inf(f->right);
    }
    return true;
}

bool closed_zero_bounded(const Interval& iv) {
    return iv.lower == Rational(0) && iv.lower_closed && iv.upper.has_value() && iv.upper_closed;
}

/// Matches F[0,c] L (bounded response) or G[0,c] L (bounded invariance)
/// with L a literal; fills kind and bound on success.
bool match_bounded_inner(const MtlPtr& f, PatternClass& result) {
    if (f->kind == MtlKind::Until && is_atom(f->left, "true") && is_literal(f->right) &&
        closed_zero_bounded(f->interval)) {
        result.kind = PatternClass::BoundedResponse;
        result.bound = *f->interval.upper;
        return true;
    }
    if (f->kind == MtlKind::Unless && is_atom(f->right, "false") && is_literal(f->left) &&
        closed_zero_bounded(f->interval)) {
        result.kind = PatternClass::BoundedInvariance;
        result.bound = *f->interval.upper;
        return true;
    }
    return false;
}

} // namespace

WeakConstraintCheck is_weakly_constrained(const MtlPtr& f) {
    WeakConstraintCheck result;
    collect_violations(f, result.violations);
    result.yes = result.violations.empty();
    return result;
}

std::string PatternClass::str() const {
    switch (kind) {
        case BoundedInvariance: return "BoundedInvariance(" + bound.str() + ")";
        case BoundedResponse: return "BoundedResponse(" + bound.str() + ")";
        case QualitativeSyntactic: return "QualitativeSyntactic";
        case Other: return "Other";
    }
    return "?";
}

PatternClass classify_pattern(const MtlPtr& f) {
    PatternClass result{PatternClass::Other, Rational(0)};

    // G(L1 | F[0,c] L2) and G(L1 | G[0,c] L2), modulo Or commutativity.
    if (f->kind == MtlKind::Unless && f->interval.is_zero_inf() && is_atom(f->right, "false") &&
        f->left->kind == MtlKind::Or) {
        const MtlPtr& a = f->left->left;
        const MtlPtr& b = f->left->right;
        if (is_literal(a) && match_bounded_inner(b, result)) return result;
        if (is_literal(b) && match_bounded_inner(a, result)) return result;
    }

    if (all_intervals_zero_inf(f)) {
        return {PatternClass::QualitativeSyntactic, Rational(0)};
    }
    return {PatternClass::Other, Rational(0)};
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

bool evaluate(const MtlPtr& f, const TimedStateSequence& eta, std::size_t i) {
    const std::size_t n = eta.size();
    if (i >= n) {
        throw std::out_of_range("formula evaluation position out of range");
    }
    switch (f->kind) {
        case MtlKind::Atom:
            if (f->atom == "true") return true;
            if (f->atom == "false") return false;
            return eta.observations[i].atoms.count(f->atom) > 0;
        case MtlKind::Not:
            return !evaluate(f->left, eta, i);
        case MtlKind::And:
            return evaluate(f->left, eta, i) && evaluate(f->right, eta, i);
        case MtlKind::Or:
            return evaluate(f->left, eta, i) || evaluate(f->right, eta, i);
        case MtlKind::Until: {
            for (std::size_t j = i; j < n; ++j) {
                const Rational d = eta.observations[j].time - eta.observations[i].time;
                if (f->interval.contains(d) && evaluate(f->right, eta, j)) {
                    bool prefix_ok = true;
                    for (std::size_t k = i; k < j && prefix_ok; ++k) {
                        prefix_ok = evaluate(f->left, eta, k);
                    }
                    if (prefix_ok) return true;
                }
            }
            return false;
        }
        case MtlKind::Unless: {
            // Weak: either the until part succeeds, or the left obligation
            // holds at every position within sup(I) of the start.
            if (evaluate(mtl_until(f->interval, f->left, f->right), eta, i)) {
                return true;
            }
            for (std::size_t j = i; j < n; ++j) {
                const Rational d = eta.observations[j].time - eta.observations[i].time;
                if (f->interval.upper && d > *f->interval.upper) break;
                if (!evaluate(f->left, eta, j)) return false;
            }
            return true;
        }
    }
    return false;
}

bool satisfies(const MtlPtr& f, const TimedStateSequence& eta) {
    if (eta.empty()) {
        throw std::domain_error("cannot evaluate a formula on an empty trace");
    }
    return evaluate(f, eta, 0);
}

} // namespace rtdig
