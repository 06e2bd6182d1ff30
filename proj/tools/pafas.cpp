// Command-line front-end. Every command prints one JSON document (or DOT
// for `explore --format dot`) and exits with
//   0  verdict computed (positive), 1  negative verdict,
//   2  input error,                 3  bound exceeded.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pafas/analysis.hpp"
#include "pafas/error.hpp"
#include "pafas/examples.hpp"
#include "pafas/petri.hpp"
#include "pafas/predicates.hpp"
#include "pafas/sos.hpp"
#include "pafas/syntax.hpp"
#include "pafas/transform.hpp"

using namespace pafas;
using json = nlohmann::json;

namespace {

enum Exit { Ok = 0, Negative = 1, InputError = 2, Bounded = 3 };

struct Options {
    std::string lang = "auto";
    std::size_t max_states = 0;
    std::size_t max_depth = 0;
    std::string scheme = "r";
    std::string word;
    std::string loop;
    std::string law;
    std::string at;
    std::string format = "json";
    std::string refuse;
    std::string trace;
    std::size_t max_len = 4;
    bool check = false;
    std::string direction;
    std::vector<std::string> inputs;
};

std::string read_input(const std::string& arg) {
    if (arg == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(arg);
    if (in) return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return arg; // inline text
}

struct Input {
    Term term = Term::nil();
    Dialect dialect = Dialect::R;
};

Input load(const std::string& arg, const std::string& lang) {
    std::string text = read_input(arg);
    if (lang == "r") return {parse_program(text, Dialect::R).main, Dialect::R};
    if (lang == "s") return {parse_program(text, Dialect::S).main, Dialect::S};
    try {
        return {parse_program(text, Dialect::R).main, Dialect::R};
    } catch (const ParseError& e) {
        if (e.kind() != ErrorKind::WrongDialect) throw;
    }
    return {parse_program(text, Dialect::S).main, Dialect::S};
}

const char* lang_name(Dialect d) { return d == Dialect::R ? "r" : "s"; }

ExploreOptions explore_options(const Options& o) {
    ExploreOptions e = default_explore_options();
    if (const char* env = std::getenv("PAFAS_MAX_STATES")) {
        try {
            e.max_states = std::stoul(env);
        } catch (const std::exception&) {
            throw Error(ErrorKind::Syntax, std::string("PAFAS_MAX_STATES is not a number: ") + env);
        }
    }
    if (o.max_states) e.max_states = o.max_states;
    if (o.max_depth) e.max_depth = o.max_depth;
    return e;
}

json refusal_json(const RefusalSet& x) {
    return {{"polarity", x.is_cofinite() ? "cofinite" : "finite"}, {"names", x.names()}, {"text", x.str()}};
}

json label_json(const StepLabel& l) {
    switch (l.kind) {
    case StepKind::Ordinary: return {{"kind", "ordinary"}, {"action", l.action.str()}};
    case StepKind::Read: return {{"kind", "read"}, {"action", l.action.str()}};
    case StepKind::Time: return {{"kind", "time"}, {"refusal", refusal_json(l.refusal)}, {"full", l.refusal.is_full()}};
    }
    return {};
}

std::vector<std::string> split_word(const std::string& w) {
    std::vector<std::string> out;
    if (w.find_first_of(", ") == std::string::npos) {
        for (char c : w) out.emplace_back(1, c);
        return out;
    }
    std::string cur;
    for (char c : w) {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

Path parse_path(const std::string& s) {
    Path p;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, '.')) {
        if (part.empty()) continue;
        try {
            p.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw Error(ErrorKind::Syntax, "bad subterm path '" + s + "'");
        }
    }
    return p;
}

RefusalSet parse_refusal(const std::string& s) {
    auto t = parse_trace(s);
    if (t.size() != 1 || !t[0].is_time) throw Error(ErrorKind::Syntax, "expected one refusal set, got '" + s + "'");
    return t[0].refusal;
}

BisimScheme parse_scheme(const std::string& s) {
    if (s == "r") return BisimScheme::RSense;
    if (s == "s") return BisimScheme::SSense;
    if (s == "untimed") return BisimScheme::Untimed;
    throw Error(ErrorKind::Syntax, "unknown scheme '" + s + "' (r, s or untimed)");
}

json answer_json(Answer a) { return to_string(a); }

int answer_exit(Answer a) { return a == Answer::Yes ? Ok : a == Answer::No ? Negative : Bounded; }

void warn_improper(json& doc, const Input& in) {
    if (in.dialect != Dialect::S) return;
    if (auto v = check_proper(in.term)) doc["warnings"].push_back("input is not proper: " + v->str());
}

// ---- commands --------------------------------------------------------------

int cmd_parse_check(const Options& o, json& doc) {
    Input in = load(o.inputs.at(0), o.lang);
    doc["language"] = lang_name(in.dialect);
    doc["term"] = print(in.term);
    doc["sort"] = sort_of(in.term);
    return Ok;
}

int cmd_steps(const Options& o, json& doc) {
    Input in = load(o.inputs.at(0), o.lang);
    warn_improper(doc, in);
    doc["language"] = lang_name(in.dialect);
    doc["term"] = print(in.term);
    json steps = json::array();
    for (const auto& s : successors(in.term, in.dialect, false)) {
        json j = label_json(s.label);
        j["target"] = print(s.target);
        steps.push_back(j);
    }
    doc["steps"] = steps;
    return Ok;
}

int cmd_time(const Options& o, json& doc) {
    Input in = load(o.inputs.at(0), o.lang);
    warn_improper(doc, in);
    doc["term"] = print(in.term);
    bool r = in.dialect == Dialect::R;
    if (!o.refuse.empty()) {
        RefusalSet x = parse_refusal(o.refuse);
        auto t = r ? can_refuse(in.term, x) : can_refuse_s(in.term, x);
        doc["refusal"] = refusal_json(x);
        doc["possible"] = t.has_value();
        if (t) doc["target"] = print(*t);
        return t ? Ok : Negative;
    }
    auto m = r ? max_refusal(in.term) : max_refusal_s(in.term);
    doc["possible"] = m.has_value();
    if (!m) return Negative;
    doc["max"] = refusal_json(m->max);
    doc["full"] = m->max.is_full();
    doc["target"] = print(m->target);
    return Ok;
}

int cmd_explore(const Options& o, json& doc, std::string& raw) {
    Input in = load(o.inputs.at(0), o.lang);
    warn_improper(doc, in);
    Lts lts = explore(in.term, in.dialect, explore_options(o));
    if (o.format == "dot") {
        raw = lts_to_dot(lts);
    } else if (o.format == "json") {
        doc["lts"] = json::parse(lts_to_json(lts));
        doc["deterministic"] = is_deterministic(lts);
    } else {
        throw Error(ErrorKind::Syntax, "unknown format '" + o.format + "' (json or dot)");
    }
    return lts.truncated ? Bounded : Ok;
}

int cmd_bisim(const Options& o, json& doc) {
    if (o.inputs.size() != 2) throw Error(ErrorKind::Syntax, "bisim needs two inputs");
    Input a = load(o.inputs[0], o.lang), b = load(o.inputs[1], o.lang);
    BisimScheme scheme = parse_scheme(o.scheme);
    ExploreOptions eo = explore_options(o);
    eo.timed = scheme != BisimScheme::Untimed;
    Lts la = explore(a.term, a.dialect, eo), lb = explore(b.term, b.dialect, eo);
    BisimResult r = bisim(la, lb, scheme);
    doc["scheme"] = to_string(scheme);
    doc["verdict"] = to_string(r.verdict);
    doc["states"] = {la.state_count(), lb.state_count()};
    doc["rounds"] = r.rounds;
    if (r.verdict == Verdict::Distinguished) {
        json w = json::array();
        for (const auto& st : r.witness) {
            const Lts& mover = st.side == 0 ? la : lb;
            const Lts& other = st.side == 0 ? lb : la;
            json j = {{"side", st.side},
                      {"label", label_json(st.label)},
                      {"from", {print(la.states[st.state0]), print(lb.states[st.state1])}},
                      {"target", print(mover.states[st.target])}};
            if (st.answer) j["answer"] = print(other.states[*st.answer]);
            w.push_back(j);
        }
        doc["witness"] = w;
        if (r.distinguishing_refusal) doc["distinguishing_refusal"] = refusal_json(*r.distinguishing_refusal);
    }
    switch (r.verdict) {
    case Verdict::Equivalent: return Ok;
    case Verdict::Distinguished: return Negative;
    case Verdict::BoundedUnknown: return Bounded;
    }
    return Ok;
}

int cmd_proper(const Options& o, json& doc) {
    Input in = load(o.inputs.at(0), o.lang == "auto" ? "s" : o.lang);
    auto v = check_proper(in.term);
    doc["term"] = print(in.term);
    doc["proper"] = !v;
    doc["read_proper"] = is_read_proper(in.term);
    doc["rec_proper"] = is_rec_proper(in.term);
    if (v) doc["violation"] = {{"path", path_str(v->path)}, {"subterm", print(in.term.at(v->path))}, {"reason", v->str()}};
    return v ? Negative : Ok;
}

int cmd_rnf(const Options& o, json& doc) {
    Input in = load(o.inputs.at(0), o.lang == "auto" ? "r" : o.lang);
    auto v = check_rnf(in.term);
    doc["term"] = print(in.term);
    doc["rnf"] = !v;
    if (v) doc["violation"] = {{"path", path_str(v->path)}, {"subterm", print(in.term.at(v->path))}, {"reason", v->str()}};
    return v ? Negative : Ok;
}

int cmd_translate(const Options& o, json& doc) {
    if (o.direction == "s2r") {
        Input in = load(o.inputs.at(0), "s");
        doc["term"] = print(s_to_r(in.term));
        doc["language"] = "r";
    } else {
        Input in = load(o.inputs.at(0), "r");
        doc["term"] = print(r_to_s(in.term));
        doc["language"] = "s";
    }
    doc["direction"] = o.direction;
    return Ok;
}

int cmd_normalize(const Options& o, json& doc) {
    Input in = load(o.inputs.at(0), "r");
    Term n = normalize_to_rnf(in.term);
    doc["input"] = print(in.term);
    doc["term"] = print(n);
    if (o.check) {
        Lts a = explore(in.term, Dialect::R, explore_options(o)), b = explore(n, Dialect::R, explore_options(o));
        Verdict v = bisim(a, b, BisimScheme::RSense).verdict;
        doc["bisimilar"] = to_string(v);
        if (v == Verdict::BoundedUnknown) return Bounded;
        if (v == Verdict::Distinguished) return Negative;
    }
    return Ok;
}

int cmd_laws_apply(const Options& o, json& doc) {
    Input in = load(o.inputs.at(0), "r");
    LawId law = parse_law(o.law);
    Path path = parse_path(o.at);
    Term out = apply_law(in.term, law, path);
    doc["law"] = to_string(law);
    doc["at"] = path_str(path);
    doc["input"] = print(in.term);
    doc["term"] = print(out);
    if (o.check) {
        Lts a = explore(in.term, Dialect::R, explore_options(o)), b = explore(out, Dialect::R, explore_options(o));
        Verdict v = bisim(a, b, BisimScheme::RSense).verdict;
        doc["bisimilar"] = to_string(v);
        if (v == Verdict::BoundedUnknown) return Bounded;
        if (v == Verdict::Distinguished) return Negative;
    }
    return Ok;
}

int cmd_fair_member(const Options& o, json& doc) {
    Input in = load(o.inputs.at(0), o.lang);
    Lts lts = explore(in.term, in.dialect, explore_options(o));
    auto w = split_word(o.word);
    Answer a = o.loop.empty() ? fair_member(lts, w) : fair_lasso(lts, w, split_word(o.loop));
    doc["word"] = w;
    if (!o.loop.empty()) doc["loop"] = split_word(o.loop);
    doc["answer"] = answer_json(a);
    doc["truncated"] = lts.truncated;
    return answer_exit(a);
}

int cmd_fair_words(const Options& o, json& doc) {
    Input in = load(o.inputs.at(0), o.lang);
    Lts lts = explore(in.term, in.dialect, explore_options(o));
    FairWords fw = fair_words_up_to(lts, o.max_len);
    json words = json::array();
    for (const auto& w : fw.words) {
        std::string s;
        for (const auto& a : w) s += (s.empty() ? "" : " ") + a;
        words.push_back(s);
    }
    doc["max_len"] = o.max_len;
    doc["words"] = words;
    doc["bounded"] = fw.bounded;
    return fw.bounded ? Bounded : Ok;
}

int cmd_traces(const Options& o, json& doc) {
    Input in = load(o.inputs.at(0), o.lang);
    Lts lts = explore(in.term, in.dialect, explore_options(o));
    if (!o.trace.empty()) {
        RefusalTrace t = parse_trace(o.trace);
        Answer a = has_refusal_trace(lts, t);
        doc["trace"] = trace_str(t);
        doc["answer"] = answer_json(a);
        return answer_exit(a);
    }
    RefusalTraces rt = refusal_traces_up_to(lts, o.max_len);
    json traces = json::array();
    for (const auto& t : rt.traces) traces.push_back(trace_str(t));
    doc["max_len"] = o.max_len;
    doc["traces"] = traces;
    doc["bounded"] = rt.bounded;
    return rt.bounded ? Bounded : Ok;
}

int cmd_import_pn(const Options& o, json& doc) {
    ReadArcNet net = parse_net(read_input(o.inputs.at(0)));
    NetTranslation tr = petri_to_s(net, explore_options(o).max_states);
    doc["term"] = print(tr.term);
    doc["language"] = "s";
    doc["proper"] = is_proper(tr.term);
    for (const auto& w : tr.warnings) doc["warnings"].push_back(w);
    return Ok;
}

int cmd_validate(json& doc) {
    auto results = run_reference_examples();
    json list = json::array();
    int failed = 0;
    for (const auto& r : results) {
        json j = {{"id", r.id}, {"claim", r.claim}, {"passed", r.passed}};
        if (!r.passed) j["detail"] = r.detail;
        failed += !r.passed;
        list.push_back(j);
    }
    doc["examples"] = list;
    doc["passed"] = results.size() - failed;
    doc["failed"] = failed;
    return failed ? Negative : Ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Workbench for timed process algebras with read prefixes"};
    app.require_subcommand(1);
    Options o;

    auto add_input = [&](CLI::App* c, bool two = false) {
        c->add_option("input", o.inputs, two ? "two terms: files, '-' for stdin, or inline text"
                                             : "term: file, '-' for stdin, or inline text")
            ->required()
            ->expected(two ? 2 : 1);
        c->add_option("--lang", o.lang, "r, s or auto")->check(CLI::IsMember({"r", "s", "auto"}));
    };
    auto add_bounds = [&](CLI::App* c) {
        c->add_option("--max-states", o.max_states, "exploration bound on states (default: $PAFAS_MAX_STATES or 10000)");
        c->add_option("--max-depth", o.max_depth, "exploration bound on breadth-first depth");
    };

    auto* parse_check = app.add_subcommand("parse-check", "parse a term and print it canonically");
    add_input(parse_check);
    auto* steps = app.add_subcommand("steps", "action and read transitions");
    add_input(steps);
    auto* time = app.add_subcommand("time", "the time step: maximal refusal set and successor");
    add_input(time);
    time->add_option("--refuse", o.refuse, "check one refusal set, e.g. {a,b}, ~{a} or 1");
    auto* explore_cmd = app.add_subcommand("explore", "breadth-first transition system");
    add_input(explore_cmd);
    add_bounds(explore_cmd);
    explore_cmd->add_option("--format", o.format, "json or dot");
    auto* bisim_cmd = app.add_subcommand("bisim", "timed bisimilarity of two terms");
    add_input(bisim_cmd, true);
    add_bounds(bisim_cmd);
    bisim_cmd->add_option("--scheme", o.scheme, "r (read steps separate), s (merged) or untimed");
    auto* proper = app.add_subcommand("proper", "properness of a read-set term");
    add_input(proper);
    auto* rnf = app.add_subcommand("rnf", "read normal form of a read-action term");
    add_input(rnf);
    auto* translate = app.add_subcommand("translate", "translate between read sets and read actions");
    translate->add_option("direction", o.direction, "s2r or r2s")->required()->check(CLI::IsMember({"s2r", "r2s"}));
    translate->add_option("input", o.inputs, "term")->required()->expected(1);
    auto* normalize = app.add_subcommand("normalize", "rewrite into read normal form");
    normalize->add_option("input", o.inputs, "term")->required()->expected(1);
    normalize->add_flag("--check", o.check, "also check bisimilarity with the input");
    add_bounds(normalize);
    auto* laws = app.add_subcommand("laws", "algebraic laws");
    laws->require_subcommand(1);
    auto* laws_apply = laws->add_subcommand("apply", "rewrite one subterm with a law");
    laws_apply->add_option("input", o.inputs, "term")->required()->expected(1);
    laws_apply->add_option("--law", o.law, "L1..L7, DetChoice or Rename")->required();
    laws_apply->add_option("--at", o.at, "subterm path, e.g. 0.1 (default: root)");
    laws_apply->add_flag("--check", o.check, "also check bisimilarity of both sides");
    add_bounds(laws_apply);
    auto* fair = app.add_subcommand("fair", "fair traces");
    fair->require_subcommand(1);
    auto* fair_member_cmd = fair->add_subcommand("member", "is a word a fair trace?");
    add_input(fair_member_cmd);
    add_bounds(fair_member_cmd);
    fair_member_cmd->add_option("--word", o.word, "actions, one letter each or comma separated");
    fair_member_cmd->add_option("--loop", o.loop, "repeat this word forever after --word");
    auto* fair_words = fair->add_subcommand("words", "all fair words up to a length");
    add_input(fair_words);
    add_bounds(fair_words);
    fair_words->add_option("--max-len", o.max_len, "longest word");
    auto* traces = app.add_subcommand("traces", "refusal traces");
    add_input(traces);
    add_bounds(traces);
    traces->add_option("--max-len", o.max_len, "longest trace");
    traces->add_option("--trace", o.trace, "check one trace, e.g. \"1 a 1 a\"");
    auto* import_pn = app.add_subcommand("import-pn", "translate a safe Petri net with read arcs");
    import_pn->add_option("input", o.inputs, "net file (text or JSON)")->required()->expected(1);
    add_bounds(import_pn);
    auto* validate = app.add_subcommand("validate-paper", "run the built-in reference examples");

    json doc = {{"schema", 1}};
    std::string raw;
    int code = Ok;
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Ok : InputError;
    }

    try {
        if (*parse_check) doc["command"] = "parse-check", code = cmd_parse_check(o, doc);
        else if (*steps) doc["command"] = "steps", code = cmd_steps(o, doc);
        else if (*time) doc["command"] = "time", code = cmd_time(o, doc);
        else if (*explore_cmd) doc["command"] = "explore", code = cmd_explore(o, doc, raw);
        else if (*bisim_cmd) doc["command"] = "bisim", code = cmd_bisim(o, doc);
        else if (*proper) doc["command"] = "proper", code = cmd_proper(o, doc);
        else if (*rnf) doc["command"] = "rnf", code = cmd_rnf(o, doc);
        else if (*translate) doc["command"] = "translate", code = cmd_translate(o, doc);
        else if (*normalize) doc["command"] = "normalize", code = cmd_normalize(o, doc);
        else if (*laws_apply) doc["command"] = "laws apply", code = cmd_laws_apply(o, doc);
        else if (*fair_member_cmd) doc["command"] = "fair member", code = cmd_fair_member(o, doc);
        else if (*fair_words) doc["command"] = "fair words", code = cmd_fair_words(o, doc);
        else if (*traces) doc["command"] = "traces", code = cmd_traces(o, doc);
        else if (*import_pn) doc["command"] = "import-pn", code = cmd_import_pn(o, doc);
        else if (*validate) doc["command"] = "validate-paper", code = cmd_validate(doc);
    } catch (const ParseError& e) {
        doc["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}};
        code = InputError;
    } catch (const Error& e) {
        doc["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
        code = e.kind() == ErrorKind::BoundExceeded ? Bounded : InputError;
    } catch (const std::exception& e) {
        doc["error"] = {{"kind", "Internal"}, {"message", e.what()}};
        code = InputError;
    }

    if (!raw.empty() && !doc.contains("error")) std::cout << raw;
    else std::cout << doc.dump(2) << "\n";
    return code;
}
