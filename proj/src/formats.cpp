#include "rtdig/formats.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace rtdig {

using nlohmann::json;  // std::map-backed: object keys serialize sorted

namespace {

json parse_document(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed ") + what + ": " + e.what());
    }
}

Rational time_field(const json& v, const char* where) {
    if (v.is_string()) {
        return Rational::parse(v.get<std::string>());
    }
    if (v.is_number_integer() || v.is_number_unsigned()) {
        return Rational(v.get<std::int64_t>());
    }
    if (v.is_number_float()) {
        throw std::invalid_argument(std::string(where) +
                                    ": fractional times must be strings like \"7/10\" or "
                                    "\"0.7\", not JSON floats");
    }
    throw std::invalid_argument(std::string(where) + ": time must be a string or an integer");
}

std::vector<std::string> string_array(const json& v, const char* where) {
    if (!v.is_array()) {
        throw std::invalid_argument(std::string(where) + ": expected an array of strings");
    }
    std::vector<std::string> out;
    for (const auto& x : v) {
        if (!x.is_string()) {
            throw std::invalid_argument(std::string(where) + ": expected an array of strings");
        }
        out.push_back(x.get<std::string>());
    }
    return out;
}

void append_constraint(std::vector<ClockConstraint>& out, const json& c, const char* where) {
    if (!c.is_object() || !c.contains("clock") || !c.contains("op") || !c.contains("const")) {
        throw std::invalid_argument(std::string(where) +
                                    ": constraint needs 'clock', 'op', and 'const'");
    }
    if (!c["clock"].is_string()) {
        throw std::invalid_argument(std::string(where) + ": constraint clock must be a string");
    }
    const auto& cv = c["const"];
    if (!(cv.is_number_integer() || cv.is_number_unsigned()) || cv.get<std::int64_t>() < 0) {
        throw std::invalid_argument(std::string(where) +
                                    ": constraint constant must be a nonnegative integer");
    }
    const std::string clock = c["clock"].get<std::string>();
    const std::int64_t bound = cv.get<std::int64_t>();
    const std::string op = c["op"].is_string() ? c["op"].get<std::string>() : "";
    if (op == "<") {
        out.push_back({clock, RelOp::LT, bound});
    } else if (op == "<=") {
        out.push_back({clock, RelOp::LE, bound});
    } else if (op == ">=") {
        out.push_back({clock, RelOp::GE, bound});
    } else if (op == ">") {
        out.push_back({clock, RelOp::GT, bound});
    } else if (op == "==") {
        out.push_back({clock, RelOp::LE, bound});
        out.push_back({clock, RelOp::GE, bound});
    } else {
        throw std::invalid_argument(std::string(where) + ": constraint op must be one of " +
                                    "\"<\", \"<=\", \">=\", \">\", \"==\"");
    }
}

std::vector<ClockConstraint> constraint_array(const json& v, const char* where) {
    if (!v.is_array()) {
        throw std::invalid_argument(std::string(where) + ": expected an array of constraints");
    }
    std::vector<ClockConstraint> out;
    for (const auto& c : v) append_constraint(out, c, where);
    return out;
}

const char* op_token(RelOp op) {
    switch (op) {
        case RelOp::LT: return "<";
        case RelOp::LE: return "<=";
        case RelOp::GE: return ">=";
        case RelOp::GT: return ">";
    }
    return "?";
}

json constraint_json(const ClockConstraint& c) {
    json out;
    out["clock"] = c.clock;
    out["op"] = op_token(c.op);
    out["const"] = c.bound;
    return out;
}

json trace_json(const TimedStateSequence& eta) {
    json obs = json::array();
    for (const auto& o : eta.observations) {
        json entry;
        entry["atoms"] = json::array();
        for (const auto& a : o.atoms) entry["atoms"].push_back(a);
        entry["time"] = o.time.str();
        obs.push_back(std::move(entry));
    }
    json doc;
    doc["observations"] = std::move(obs);
    return doc;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot read file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TimedStateSequence parse_trace_text(const std::string& text) {
    const json j = parse_document(text, "trace document");
    if (!j.is_object() || !j.contains("observations") || !j["observations"].is_array()) {
        throw std::invalid_argument("trace document must contain an 'observations' array");
    }
    TimedStateSequence eta;
    for (const auto& o : j["observations"]) {
        if (!o.is_object() || !o.contains("atoms") || !o.contains("time")) {
            throw std::invalid_argument("each observation needs 'atoms' and 'time'");
        }
        Observation obs;
        for (const auto& a : string_array(o["atoms"], "observation atoms")) {
            obs.atoms.insert(a);
        }
        obs.time = time_field(o["time"], "observation");
        eta.observations.push_back(std::move(obs));
    }
    eta.validate();
    return eta;
}

std::string serialize_trace(const TimedStateSequence& eta) {
    return trace_json(eta).dump(2) + "\n";
}

TimedAutomaton parse_automaton_text(const std::string& text) {
    const json j = parse_document(text, "automaton document");
    if (!j.is_object()) {
        throw std::invalid_argument("automaton document must be an object");
    }
    for (const char* key : {"clocks", "locations", "initial", "accepting", "edges"}) {
        if (!j.contains(key)) {
            throw std::invalid_argument(std::string("automaton document is missing '") + key +
                                        "'");
        }
    }
    TimedAutomaton a;
    a.clocks = string_array(j["clocks"], "clocks");
    a.locations = string_array(j["locations"], "locations");
    if (!j["initial"].is_string()) {
        throw std::invalid_argument("automaton 'initial' must be a string");
    }
    a.initial = j["initial"].get<std::string>();
    for (const auto& loc : string_array(j["accepting"], "accepting")) {
        a.accepting.insert(loc);
    }
    if (j.contains("invariants")) {
        if (!j["invariants"].is_object()) {
            throw std::invalid_argument("automaton 'invariants' must map locations to "
                                        "constraint arrays");
        }
        for (const auto& [loc, arr] : j["invariants"].items()) {
            a.invariants[loc] = constraint_array(arr, "invariant");
        }
    }
    if (!j["edges"].is_array()) {
        throw std::invalid_argument("automaton 'edges' must be an array");
    }
    for (const auto& e : j["edges"]) {
        if (!e.is_object() || !e.contains("from") || !e.contains("to") ||
            !e.contains("action")) {
            throw std::invalid_argument("each edge needs 'from', 'to', and 'action'");
        }
        for (const char* key : {"from", "to", "action"}) {
            if (!e[key].is_string()) {
                throw std::invalid_argument(std::string("edge '") + key +
                                            "' must be a string");
            }
        }
        Edge edge;
        edge.from = e["from"].get<std::string>();
        edge.to = e["to"].get<std::string>();
        edge.action = e["action"].get<std::string>();
        if (e.contains("guard")) {
            edge.guard = constraint_array(e["guard"], "guard");
        }
        if (e.contains("resets")) {
            for (const auto& r : string_array(e["resets"], "resets")) {
                edge.resets.insert(r);
            }
        }
        a.edges.push_back(std::move(edge));
    }
    a.validate();
    return a;
}

std::string serialize_automaton(const TimedAutomaton& a) {
    json j;
    j["clocks"] = a.clocks;
    j["locations"] = a.locations;
    j["initial"] = a.initial;
    j["accepting"] = json::array();
    for (const auto& loc : a.accepting) j["accepting"].push_back(loc);
    j["invariants"] = json::object();
    for (const auto& [loc, constraints] : a.invariants) {
        json arr = json::array();
        for (const auto& c : constraints) arr.push_back(constraint_json(c));
        j["invariants"][loc] = std::move(arr);
    }
    j["edges"] = json::array();
    for (const auto& e : a.edges) {
        json edge;
        edge["from"] = e.from;
        edge["to"] = e.to;
        edge["action"] = e.action;
        edge["guard"] = json::array();
        for (const auto& c : e.guard) edge["guard"].push_back(constraint_json(c));
        edge["resets"] = json::array();
        for (const auto& r : e.resets) edge["resets"].push_back(r);
        j["edges"].push_back(std::move(edge));
    }
    return j.dump(2) + "\n";
}

std::string serialize_verdict(const Verdict& v) {
    json j;
    j["kind"] = v.kind_str();
    j["trials"] = v.trials;
    if (!v.reason.empty()) j["reason"] = v.reason;
    json evidence = json::object();
    if (v.trace) evidence["trace"] = trace_json(*v.trace);
    if (v.eps) evidence["eps"] = v.eps->str();
    if (v.tick_word) {
        json arr = json::array();
        for (const auto& s : *v.tick_word) arr.push_back(s);
        evidence["tick_word"] = std::move(arr);
    }
    if (!evidence.empty()) j["evidence"] = std::move(evidence);
    j["notes"] = v.notes;
    return j.dump(2) + "\n";
}

TimedStateSequence load_trace_file(const std::string& path) {
    return parse_trace_text(read_file(path));
}

TimedAutomaton load_automaton_file(const std::string& path) {
    return parse_automaton_text(read_file(path));
}

std::string serialize_digitization_report(const TimedStateSequence& eta) {
    json j;
    j["critical_epsilons"] = json::array();
    for (const auto& e : critical_epsilons(eta)) j["critical_epsilons"].push_back(e.str());
    j["classes"] = json::array();
    for (const auto& cls : digitization_classes(eta)) {
        json entry;
        entry["range"] = cls.range_str();
        entry["eps"] = cls.eps.str();
        entry["trace"] = trace_json(cls.trace.as_timed_sequence());
        j["classes"].push_back(std::move(entry));
    }
    return j.dump(2) + "\n";
}

std::string serialize_classification_report(const TimedAutomaton& a) {
    json j;
    j["classification"] = classification_str(classify(a));
    j["constraints"] = json::array();
    auto add = [&](const ClockConstraint& c, const std::string& site) {
        json entry;
        entry["constraint"] = c.str();
        entry["site"] = site;
        entry["strict"] = c.op == RelOp::LT || c.op == RelOp::GT;
        j["constraints"].push_back(std::move(entry));
    };
    for (const auto& e : a.edges)
        for (const auto& c : e.guard)
            add(c, "edge " + e.from + " -" + e.action + "-> " + e.to);
    for (const auto& [loc, cs] : a.invariants)
        for (const auto& c : cs) add(c, "invariant " + loc);
    return j.dump(2) + "\n";
}

std::string serialize_weak_constraint_report(const WeakConstraintCheck& w) {
    json j;
    j["weakly_constrained"] = w.yes;
    j["violations"] = w.violations;
    return j.dump(2) + "\n";
}

std::string serialize_pattern_report(const PatternClass& p) {
    json j;
    j["pattern"] = p.str();
    return j.dump(2) + "\n";
}

std::string serialize_eval_report(bool value) {
    json j;
    j["value"] = value;
    return j.dump(2) + "\n";
}

} // namespace rtdig
