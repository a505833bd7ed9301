// cli.cpp -- single-binary command surface over the digitization toolkit.
//
// Subcommands: digitize, classify, check-cud, mtl (check|classify|eval),
// verify, fuzz (formula-cud|formula-cuid|ta-cud|ta-cuid|reach). Global flags
// fall through into every subcommand. Output is plain text by default;
// `--format structured` switches every report to the JSON documents from
// formats.hpp (sorted keys, canonical rationals), which are byte-stable
// across runs with identical flags and seed.

#include "rtdig/cli.hpp"

#include "rtdig/closure_lab.hpp"
#include "rtdig/errors.hpp"
#include "rtdig/formats.hpp"
#include "rtdig/mtl.hpp"
#include "rtdig/tick_automaton.hpp"
#include "rtdig/timed_automaton.hpp"
#include "rtdig/trace.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace rtdig {
namespace {

struct CliConfig {
    std::int64_t seed = 0;
    std::uint64_t trials = 1000;
    std::size_t bound = 6;
    std::string format = "text";
    std::size_t state_cap = kDefaultStateCap;
    // fuzz-only shape knobs (defaults mirror FuzzConfig)
    std::size_t max_len = 6;
    std::int64_t max_time = 8;
    std::int64_t den_bound = 4;

    bool structured() const { return format == "structured"; }

    FuzzConfig fuzz() const {
        FuzzConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(seed);
        cfg.trials = trials;
        cfg.max_len = max_len;
        cfg.max_time = max_time;
        cfg.den_bound = den_bound;
        cfg.validate();
        return cfg;
    }
};

int verdict_exit(const Verdict& v) {
    switch (v.kind) {
    case Verdict::Kind::Holds: return 0;
    case Verdict::Kind::NoCounterexampleFound: return 0;
    case Verdict::Kind::Counterexample: return 1;
    case Verdict::Kind::Inconclusive: return 3;
    }
    return 3;
}

// Text rendering of a verdict. `notes_first` front-loads the notes (verify
// prints its gate outcomes before the verdict line).
void print_verdict(const Verdict& v, const CliConfig& cfg, std::ostream& out,
                   bool notes_first = false) {
    if (cfg.structured()) {
        out << serialize_verdict(v);
        return;
    }
    auto emit_notes = [&] {
        for (const auto& n : v.notes) out << "note: " << n << "\n";
    };
    if (notes_first) emit_notes();
    out << "verdict: " << v.kind_str() << "\n";
    if (v.kind == Verdict::Kind::NoCounterexampleFound)
        out << "trials: " << v.trials << "\n";
    if (!v.reason.empty()) out << "reason: " << v.reason << "\n";
    if (v.trace) out << "trace: " << render_trace(*v.trace) << "\n";
    if (v.eps) out << "eps: " << v.eps->str() << "\n";
    if (v.tick_word) out << "tick word: " << render_tick_word(*v.tick_word) << "\n";
    if (!notes_first) emit_notes();
}

Rational parse_eps(const std::string& text) {
    const Rational eps = Rational::parse(text);
    if (!(Rational(0) < eps) || Rational(1) < eps)
        throw std::domain_error("eps must lie in (0,1]");
    return eps;
}

int cmd_digitize(const std::string& trace_path, const std::string& eps_text,
                 bool all, const CliConfig& cfg, std::ostream& out) {
    if (all == !eps_text.empty())
        throw std::invalid_argument("provide exactly one of --eps or --all");
    const TimedStateSequence eta = load_trace_file(trace_path);
    if (!all) {
        const Rational eps = parse_eps(eps_text);
        const DigitallyTimedSequence d = digitize_trace(eta, eps);
        if (cfg.structured())
            out << serialize_trace(d.as_timed_sequence());
        else
            out << render_trace(d.as_timed_sequence()) << "\n";
        return 0;
    }
    if (cfg.structured()) {
        out << serialize_digitization_report(eta);
        return 0;
    }
    out << "critical epsilons:";
    for (const auto& e : critical_epsilons(eta)) out << " " << e.str();
    out << "\n";
    for (const auto& cls : digitization_classes(eta)) {
        out << "eps in " << cls.range_str() << "  (rep " << cls.eps.str()
            << "): " << render_trace(cls.trace.as_timed_sequence()) << "\n";
    }
    return 0;
}

int cmd_classify(const std::string& ta_path, bool apply_closure,
                 const std::string& export_tick, const CliConfig& cfg,
                 std::ostream& out) {
    TimedAutomaton a = load_automaton_file(ta_path);
    if (apply_closure) a = closure_transform(a);
    if (cfg.structured()) {
        out << serialize_classification_report(a);
    } else {
        out << classification_str(classify(a)) << "\n";
        auto line = [&](const ClockConstraint& c, const std::string& site) {
            const bool strict = c.op == RelOp::LT || c.op == RelOp::GT;
            out << "constraint " << c.str() << "  ["
                << (strict ? "strict" : "non-strict") << "]  at " << site << "\n";
        };
        for (const auto& e : a.edges)
            for (const auto& c : e.guard)
                line(c, "edge " + e.from + " -" + e.action + "-> " + e.to);
        for (const auto& [loc, cs] : a.invariants)
            for (const auto& c : cs) line(c, "invariant " + loc);
    }
    if (!export_tick.empty()) {
        std::ofstream f(export_tick);
        if (!f) throw std::invalid_argument("cannot write file: " + export_tick);
        f << to_dot(build_tick_automaton(a, cfg.state_cap));
        if (!cfg.structured())
            out << "tick automaton written to " << export_tick << "\n";
    }
    return 0;
}

int cmd_check_cud(const std::string& ta_path, const CliConfig& cfg,
                  std::ostream& out) {
    const TimedAutomaton a = load_automaton_file(ta_path);
    const Verdict v = check_ta_cud(a, cfg.state_cap);
    print_verdict(v, cfg, out);
    return verdict_exit(v);
}

int cmd_mtl_check(const std::string& formula, const CliConfig& cfg,
                  std::ostream& out) {
    const MtlPtr f = parse_formula(formula);
    const WeakConstraintCheck w = is_weakly_constrained(f);
    if (cfg.structured()) {
        out << serialize_weak_constraint_report(w);
        return 0;
    }
    out << (w.yes ? "Yes" : "No") << "\n";
    for (const auto& violation : w.violations) out << "violation: " << violation << "\n";
    return 0;
}

int cmd_mtl_classify(const std::string& formula, const CliConfig& cfg,
                     std::ostream& out) {
    const PatternClass p = classify_pattern(parse_formula(formula));
    if (cfg.structured())
        out << serialize_pattern_report(p);
    else
        out << p.str() << "\n";
    return 0;
}

int cmd_mtl_eval(const std::string& formula, const std::string& trace_path,
                 const CliConfig& cfg, std::ostream& out) {
    const MtlPtr f = parse_formula(formula);
    const TimedStateSequence eta = load_trace_file(trace_path);
    const bool value = satisfies(f, eta);
    if (cfg.structured())
        out << serialize_eval_report(value);
    else
        out << (value ? "true" : "false") << "\n";
    return 0;
}

int cmd_verify(const std::string& ta_path, const std::string& formula,
               const CliConfig& cfg, std::ostream& out) {
    const TimedAutomaton a = load_automaton_file(ta_path);
    const MtlPtr f = parse_formula(formula);
    const Verdict v = verify(a, f, cfg.bound, {}, cfg.state_cap);
    print_verdict(v, cfg, out, /*notes_first=*/true);
    return verdict_exit(v);
}

int cmd_fuzz_formula(const std::string& which, const std::string& formula,
                     const CliConfig& cfg, std::ostream& out) {
    const MtlPtr f = parse_formula(formula);
    const Verdict v = which == "formula-cud" ? test_formula_cud(f, cfg.fuzz())
                                             : test_formula_cuid(f, cfg.fuzz());
    print_verdict(v, cfg, out);
    return verdict_exit(v);
}

int cmd_fuzz_ta(const std::string& which, const std::string& ta_path,
                const CliConfig& cfg, std::ostream& out) {
    const TimedAutomaton a = load_automaton_file(ta_path);
    Verdict v = Verdict::holds("");
    if (which == "ta-cud")
        v = test_ta_cud_fuzz(a, cfg.fuzz());
    else if (which == "ta-cuid")
        v = test_ta_cuid_fuzz(a, cfg.fuzz());
    else
        v = check_reach_equivalence(a, cfg.fuzz(), cfg.state_cap);
    print_verdict(v, cfg, out);
    return verdict_exit(v);
}

} // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"digitization toolkit: epsilon-digitization of timed traces, "
                 "closure analysis for timed automata and MTL, tick-automaton "
                 "construction, and bounded integer-time verification"};
    app.name("rtdig");
    app.require_subcommand(1);

    CliConfig cfg;
    app.add_option("--seed", cfg.seed, "random seed for sampling commands");
    app.add_option("--trials", cfg.trials, "sampling trials for fuzz commands");
    app.add_option("--bound", cfg.bound, "tick-word length bound for verify");
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--state-cap", cfg.state_cap,
                   "tick-automaton state cap before giving up");

    auto* digitize = app.add_subcommand("digitize", "digitize a trace file");
    digitize->fallthrough();
    std::string trace_path;
    std::string eps_text;
    bool all = false;
    digitize->add_option("trace", trace_path, "trace file (JSON)")->required();
    digitize->add_option("--eps", eps_text, "digitize at this eps in (0,1]");
    digitize->add_flag("--all", all,
                       "list every digitization class with its eps range");

    auto* classify_cmd =
        app.add_subcommand("classify", "classify a timed automaton file");
    classify_cmd->fallthrough();
    std::string classify_path;
    bool apply_closure = false;
    std::string export_tick;
    classify_cmd->add_option("ta", classify_path, "automaton file (JSON)")->required();
    classify_cmd->add_flag("--apply-closure", apply_closure,
                           "classify the closure transform instead");
    classify_cmd->add_option("--export-tick", export_tick,
                             "write the tick automaton as Graphviz dot to this path");

    auto* check_cud = app.add_subcommand(
        "check-cud", "decide closure under digitization for an automaton file");
    check_cud->fallthrough();
    std::string check_path;
    check_cud->add_option("ta", check_path, "automaton file (JSON)")->required();

    auto* mtl = app.add_subcommand("mtl", "formula queries");
    mtl->fallthrough();
    mtl->require_subcommand(1);
    auto* mtl_check = mtl->add_subcommand(
        "check", "report whether the formula is weakly constrained");
    auto* mtl_classify = mtl->add_subcommand(
        "classify", "report the bounded-pattern class of the formula");
    auto* mtl_eval = mtl->add_subcommand(
        "eval", "evaluate the formula on a trace file at position 0");
    std::string mtl_formula_check, mtl_formula_classify, mtl_formula_eval;
    std::string mtl_trace_path;
    mtl_check->fallthrough();
    mtl_check->add_option("formula", mtl_formula_check, "formula text")->required();
    mtl_classify->fallthrough();
    mtl_classify->add_option("formula", mtl_formula_classify, "formula text")->required();
    mtl_eval->fallthrough();
    mtl_eval->add_option("formula", mtl_formula_eval, "formula text")->required();
    mtl_eval->add_option("trace", mtl_trace_path, "trace file (JSON)")->required();

    auto* verify_cmd = app.add_subcommand(
        "verify", "bounded verification of a formula against an automaton");
    verify_cmd->fallthrough();
    std::string verify_path, verify_formula;
    verify_cmd->add_option("ta", verify_path, "automaton file (JSON)")->required();
    verify_cmd->add_option("formula", verify_formula, "formula text")->required();

    auto* fuzz = app.add_subcommand("fuzz", "randomized closure testers");
    fuzz->fallthrough();
    fuzz->require_subcommand(1);
    fuzz->add_option("--max-len", cfg.max_len, "max sampled trace length");
    fuzz->add_option("--max-time", cfg.max_time, "max sampled timestamp");
    fuzz->add_option("--den-bound", cfg.den_bound,
                     "max sampled timestamp denominator");
    auto* fz_formula_cud = fuzz->add_subcommand(
        "formula-cud", "search for a trace violating closure under digitization");
    auto* fz_formula_cuid = fuzz->add_subcommand(
        "formula-cuid",
        "search for a trace violating closure under inverse digitization");
    auto* fz_ta_cud = fuzz->add_subcommand(
        "ta-cud", "search for an accepted word whose digitization is rejected");
    auto* fz_ta_cuid = fuzz->add_subcommand(
        "ta-cuid", "search for a rejected word accepted in every digitization");
    auto* fz_reach = fuzz->add_subcommand(
        "reach", "compare tick-reachable locations against dense exploration");
    std::string fz_formula_cud_text, fz_formula_cuid_text;
    std::string fz_ta_cud_path, fz_ta_cuid_path, fz_reach_path;
    fz_formula_cud->fallthrough();
    fz_formula_cud->add_option("formula", fz_formula_cud_text, "formula text")->required();
    fz_formula_cuid->fallthrough();
    fz_formula_cuid->add_option("formula", fz_formula_cuid_text, "formula text")->required();
    fz_ta_cud->fallthrough();
    fz_ta_cud->add_option("ta", fz_ta_cud_path, "automaton file (JSON)")->required();
    fz_ta_cuid->fallthrough();
    fz_ta_cuid->add_option("ta", fz_ta_cuid_path, "automaton file (JSON)")->required();
    fz_reach->fallthrough();
    fz_reach->add_option("ta", fz_reach_path, "automaton file (JSON)")->required();

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("rtdig");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (digitize->parsed())
            return cmd_digitize(trace_path, eps_text, all, cfg, out);
        if (classify_cmd->parsed())
            return cmd_classify(classify_path, apply_closure, export_tick, cfg, out);
        if (check_cud->parsed()) return cmd_check_cud(check_path, cfg, out);
        if (mtl->parsed()) {
            if (mtl_check->parsed()) return cmd_mtl_check(mtl_formula_check, cfg, out);
            if (mtl_classify->parsed())
                return cmd_mtl_classify(mtl_formula_classify, cfg, out);
            return cmd_mtl_eval(mtl_formula_eval, mtl_trace_path, cfg, out);
        }
        if (verify_cmd->parsed())
            return cmd_verify(verify_path, verify_formula, cfg, out);
        if (fuzz->parsed()) {
            if (fz_formula_cud->parsed())
                return cmd_fuzz_formula("formula-cud", fz_formula_cud_text, cfg, out);
            if (fz_formula_cuid->parsed())
                return cmd_fuzz_formula("formula-cuid", fz_formula_cuid_text, cfg, out);
            if (fz_ta_cud->parsed()) return cmd_fuzz_ta("ta-cud", fz_ta_cud_path, cfg, out);
            if (fz_ta_cuid->parsed())
                return cmd_fuzz_ta("ta-cuid", fz_ta_cuid_path, cfg, out);
            return cmd_fuzz_ta("reach", fz_reach_path, cfg, out);
        }
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no command selected\n";
    return 2;
}

} // namespace rtdig
