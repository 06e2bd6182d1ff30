#include "pafas/petri.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "pafas/error.hpp"
#include "pafas/syntax.hpp"

namespace pafas {

namespace {

std::set<std::string> select(const std::set<std::pair<std::string, std::string>>& arcs, const std::string& key,
                             bool key_first) {
    std::set<std::string> out;
    for (const auto& [a, b] : arcs) {
        if (key_first && a == key) out.insert(b);
        if (!key_first && b == key) out.insert(a);
    }
    return out;
}

std::string marking_str(const Marking& m) {
    std::string s = "{";
    for (const auto& p : m) s += (s.size() > 1 ? "," : "") + p;
    return s + "}";
}

std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::InvalidNet, msg); }

void add_arc(ReadArcNet& net, const std::string& from, const std::string& to, const std::set<std::string>& places) {
    if (places.contains(from)) net.pre.insert({from, to});
    else if (places.contains(to)) net.post.insert({from, to});
    else bad("arc " + from + "->" + to + " does not touch a place");
}

} // namespace

std::set<std::string> ReadArcNet::preset(const std::string& t) const { return select(pre, t, false); }
std::set<std::string> ReadArcNet::postset(const std::string& t) const { return select(post, t, true); }
std::set<std::string> ReadArcNet::readset(const std::string& t) const { return select(reads, t, false); }

std::set<std::string> ReadArcNet::initial_marking() const {
    std::set<std::string> m;
    for (const auto& p : places)
        if (p.marked) m.insert(p.name);
    return m;
}

const std::string& ReadArcNet::label(const std::string& t) const {
    for (const auto& tr : transitions)
        if (tr.name == t) return tr.label;
    bad("unknown transition " + t);
}

void validate(const ReadArcNet& net) {
    std::set<std::string> places, transitions;
    for (const auto& p : net.places) {
        if (!is_valid_action_name(p.name)) bad("invalid place name '" + p.name + "'");
        if (!places.insert(p.name).second) bad("duplicate place " + p.name);
    }
    for (const auto& t : net.transitions) {
        if (!is_valid_action_name(t.name)) bad("invalid transition name '" + t.name + "'");
        if (places.contains(t.name)) bad("name used for a place and a transition: " + t.name);
        if (!transitions.insert(t.name).second) bad("duplicate transition " + t.name);
        if (t.label != "tau" && !is_valid_action_name(t.label)) bad("invalid label '" + t.label + "'");
    }
    for (const auto& [p, t] : net.pre)
        if (!places.contains(p) || !transitions.contains(t)) bad("arc " + p + "->" + t + " has an unknown endpoint");
    for (const auto& [t, p] : net.post)
        if (!places.contains(p) || !transitions.contains(t)) bad("arc " + t + "->" + p + " has an unknown endpoint");
    for (const auto& [p, t] : net.reads) {
        if (!places.contains(p) || !transitions.contains(t)) bad("read arc " + p + "--" + t + " has an unknown endpoint");
        if (net.pre.contains({p, t}) || net.post.contains({t, p}))
            bad("read arc " + p + "--" + t + " duplicates a flow arc");
    }
}

ReadArcNet parse_net_text(std::string_view text) {
    ReadArcNet net;
    std::set<std::string> places;
    std::vector<std::pair<std::string, std::string>> arcs;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        auto where = " (line " + std::to_string(lineno) + ")";
        if (kw == "place") {
            std::string name, flag;
            if (!(ls >> name)) bad("place without a name" + where);
            ls >> flag;
            if (!flag.empty() && flag != "marked") bad("unexpected '" + flag + "'" + where);
            net.places.push_back({name, flag == "marked"});
            places.insert(name);
        } else if (kw == "trans") {
            std::string name, opt;
            if (!(ls >> name)) bad("transition without a name" + where);
            std::string label = name;
            if (ls >> opt) {
                if (opt.rfind("label=", 0) != 0) bad("unexpected '" + opt + "'" + where);
                label = opt.substr(6);
            }
            net.transitions.push_back({name, label});
        } else if (kw == "arc" || kw == "read") {
            std::string rest;
            std::getline(ls, rest);
            rest = trim(rest);
            bool is_read = kw == "read";
            if (!is_read && rest.rfind("read ", 0) == 0) {
                is_read = true;
                rest = trim(rest.substr(5));
            }
            if (auto d = rest.find("--"); d != std::string::npos) {
                net.reads.insert({trim(rest.substr(0, d)), trim(rest.substr(d + 2))});
            } else if (auto a = rest.find("->"); a != std::string::npos && !is_read) {
                arcs.push_back({trim(rest.substr(0, a)), trim(rest.substr(a + 2))});
            } else {
                bad("malformed arc '" + rest + "'" + where);
            }
        } else {
            bad("unknown keyword '" + kw + "'" + where);
        }
    }
    for (const auto& [from, to] : arcs) add_arc(net, from, to, places);
    validate(net);
    return net;
}

ReadArcNet parse_net_json(std::string_view text) {
    ReadArcNet net;
    try {
        auto j = nlohmann::json::parse(text);
        std::set<std::string> places;
        for (const auto& p : j.value("places", nlohmann::json::array())) {
            net.places.push_back({p.at("name").get<std::string>(), p.value("marked", false)});
            places.insert(net.places.back().name);
        }
        for (const auto& t : j.value("transitions", nlohmann::json::array())) {
            std::string name = t.at("name").get<std::string>();
            net.transitions.push_back({name, t.value("label", name)});
        }
        for (const auto& a : j.value("arcs", nlohmann::json::array()))
            add_arc(net, a.at("from").get<std::string>(), a.at("to").get<std::string>(), places);
        for (const auto& r : j.value("reads", nlohmann::json::array()))
            net.reads.insert({r.at("place").get<std::string>(), r.at("transition").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
        bad(std::string("malformed net JSON: ") + e.what());
    }
    validate(net);
    return net;
}

ReadArcNet parse_net(std::string_view text) {
    auto b = text.find_first_not_of(" \t\r\n");
    if (b != std::string_view::npos && text[b] == '{') return parse_net_json(text);
    return parse_net_text(text);
}

std::string net_to_text(const ReadArcNet& net) {
    std::string s;
    for (const auto& p : net.places) s += "place " + p.name + (p.marked ? " marked" : "") + "\n";
    for (const auto& t : net.transitions) s += "trans " + t.name + " label=" + t.label + "\n";
    for (const auto& [p, t] : net.pre) s += "arc " + p + "->" + t + "\n";
    for (const auto& [t, p] : net.post) s += "arc " + t + "->" + p + "\n";
    for (const auto& [p, t] : net.reads) s += "read " + p + "--" + t + "\n";
    return s;
}

std::vector<NetStep> net_steps(const ReadArcNet& net, const Marking& marking) {
    std::vector<NetStep> out;
    for (const auto& t : net.transitions) {
        auto pre = net.preset(t.name);
        auto rd = net.readset(t.name);
        bool enabled = true;
        for (const auto& p : pre) enabled = enabled && marking.contains(p);
        for (const auto& p : rd) enabled = enabled && marking.contains(p);
        if (!enabled) continue;
        Marking m = marking;
        for (const auto& p : pre) m.erase(p);
        for (const auto& p : net.postset(t.name)) m.insert(p);
        out.push_back({t.name, t.label, std::move(m)});
    }
    return out;
}

MarkingGraph marking_graph(const ReadArcNet& net, std::size_t max_markings) {
    MarkingGraph g;
    std::map<Marking, int> index;
    std::deque<int> queue;
    auto intern = [&](const Marking& m) -> std::optional<int> {
        if (auto it = index.find(m); it != index.end()) return it->second;
        if (g.markings.size() >= max_markings) {
            g.truncated = true;
            return std::nullopt;
        }
        int id = static_cast<int>(g.markings.size());
        g.markings.push_back(m);
        index.emplace(m, id);
        queue.push_back(id);
        return id;
    };
    intern(net.initial_marking());
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        Marking m = g.markings[s];
        for (const auto& t : net.transitions) {
            auto pre = net.preset(t.name);
            bool enabled = true;
            for (const auto& p : pre) enabled = enabled && m.contains(p);
            for (const auto& p : net.readset(t.name)) enabled = enabled && m.contains(p);
            if (!enabled) continue;
            for (const auto& p : net.postset(t.name))
                if (m.contains(p) && !pre.contains(p))
                    throw Error(ErrorKind::NotSafe, "firing " + t.name + " in marking " + marking_str(m) +
                                                        " puts a second token on " + p);
        }
        for (auto& step : net_steps(net, m))
            if (auto to = intern(step.target)) g.edges.emplace_back(s, step.label, *to);
    }
    return g;
}

Term place_process(const ReadArcNet& net, const std::string& p) {
    auto place = std::find_if(net.places.begin(), net.places.end(), [&](const auto& pl) { return pl.name == p; });
    if (place == net.places.end()) throw Error(ErrorKind::InvalidNet, "unknown place " + p);
    std::set<std::string> in = select(net.post, p, false);  // transitions producing into p
    std::set<std::string> outs = select(net.pre, p, true);  // transitions consuming from p
    std::set<std::string> readers = select(net.reads, p, true);
    std::string empty_name = p + "_0", marked_name = p + "_1";
    Term empty_var = Term::var(empty_name), marked_var = Term::var(marked_name);

    std::optional<Term> empty_body;
    auto add = [](std::optional<Term>& sum, Term t) { sum = sum ? Term::sum(*sum, t) : t; };
    for (const auto& t : in)
        if (!outs.contains(t)) add(empty_body, Term::prefix(Action::visible(t), marked_var));
    std::optional<Term> marked_sum;
    for (const auto& t : outs)
        add(marked_sum, Term::prefix(Action::visible(t), in.contains(t) ? marked_var : empty_var));
    Term marked_body = marked_sum.value_or(Term::nil());
    if (!readers.empty()) {
        ReadSetActions rs;
        for (const auto& r : readers) rs.push_back(Action::visible(r));
        marked_body = Term::read_set(rs, marked_body);
    }
    std::vector<std::pair<std::string, Term>> eqs = {{empty_name, empty_body.value_or(Term::nil())},
                                                    {marked_name, marked_body}};
    return desugar_equations(eqs, place->marked ? marked_name : empty_name);
}

NetTranslation petri_to_s(const ReadArcNet& net, std::size_t max_markings) {
    validate(net);
    NetTranslation out;
    MarkingGraph g = marking_graph(net, max_markings);
    if (g.truncated)
        out.warnings.push_back("Unverified: safety checked only on the first " + std::to_string(max_markings) +
                               " markings");

    std::optional<Term> acc;
    NameSet acc_names;
    auto compose = [&](const Term& component, const NameSet& names) {
        if (!acc) {
            acc = component;
        } else {
            NameSet sync;
            for (const auto& n : names)
                if (acc_names.contains(n)) sync.insert(n);
            acc = Term::par(*acc, component, sync);
        }
        acc_names.insert(names.begin(), names.end());
    };

    for (const auto& place : net.places) {
        NameSet names = select(net.post, place.name, false);
        names.merge(select(net.pre, place.name, true));
        names.merge(select(net.reads, place.name, true));
        compose(place_process(net, place.name), names);
    }

    for (const auto& t : net.transitions) {
        if (!net.preset(t.name).empty() || !net.postset(t.name).empty() || !net.readset(t.name).empty()) continue;
        out.warnings.push_back("IsolatedTransition: " + t.name + " has no arcs and is always enabled");
        Term loop = Term::rec("x", Term::prefix(Action::visible(t.name), Term::var("x")));
        compose(loop, {t.name});
    }

    std::map<std::string, Action> labels;
    for (const auto& t : net.transitions)
        labels[t.name] = t.label == "tau" ? Action::tau() : Action::visible(t.label);
    Relabelling phi(labels);
    Term body = acc.value_or(Term::nil());
    out.term = phi.is_identity() ? body : Term::relabel(body, phi);
    return out;
}

} // namespace pafas
