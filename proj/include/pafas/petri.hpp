#pragma once

#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "pafas/term.hpp"

namespace pafas {

/// Safe Petri net with read arcs. Transition labels are visible names or
/// `tau`; transition ids double as action names in the translated term.
struct ReadArcNet {
    struct Place {
        std::string name;
        bool marked = false;
    };
    struct Transition {
        std::string name;
        std::string label;
    };

    std::vector<Place> places;
    std::vector<Transition> transitions;
    /// (place, transition) pairs.
    std::set<std::pair<std::string, std::string>> pre;
    /// (transition, place) pairs.
    std::set<std::pair<std::string, std::string>> post;
    /// (place, transition) pairs.
    std::set<std::pair<std::string, std::string>> reads;

    std::set<std::string> preset(const std::string& t) const;
    std::set<std::string> postset(const std::string& t) const;
    std::set<std::string> readset(const std::string& t) const;
    std::set<std::string> initial_marking() const;
    const std::string& label(const std::string& t) const;
};

using Marking = std::set<std::string>;

/// Checks names, arc endpoints and that no read arc duplicates a flow arc.
/// Throws InvalidNet.
void validate(const ReadArcNet& net);

/// Line format: `place p [marked]`, `trans t [label=a]`, `arc p->t`,
/// `arc t->p`, `read p--t` (also `arc read p--t`); `#` starts a comment.
ReadArcNet parse_net_text(std::string_view text);
/// {"places":[{"name","marked"}], "transitions":[{"name","label"}],
///  "arcs":[{"from","to"}], "reads":[{"place","transition"}]}
ReadArcNet parse_net_json(std::string_view text);
/// JSON if the first non-blank character is `{`, the line format otherwise.
ReadArcNet parse_net(std::string_view text);
std::string net_to_text(const ReadArcNet& net);

struct NetStep {
    std::string transition;
    std::string label;
    Marking target;

    auto operator<=>(const NetStep&) const = default;
    bool operator==(const NetStep&) const = default;
};

/// Enabled iff preset and read places are marked; firing removes the preset
/// and adds the postset, read places are left untouched.
std::vector<NetStep> net_steps(const ReadArcNet& net, const Marking& marking);

struct MarkingGraph {
    std::vector<Marking> markings;
    /// (from, label, to)
    std::vector<std::tuple<int, std::string, int>> edges;
    bool truncated = false;
};

/// Reachable markings; throws NotSafe with a witness marking if some firing
/// would put a second token on a place.
MarkingGraph marking_graph(const ReadArcNet& net, std::size_t max_markings = 10000);

struct NetTranslation {
    Term term = Term::nil();
    std::vector<std::string> warnings;
};

/// The two-state process of one place: `p_0 <= t.p_1 + ...` over the
/// transitions producing into p, `p_1 <= {readers} |> (u.p_0 + ...)` over the
/// transitions consuming from it. Starts in p_1 if p is marked.
Term place_process(const ReadArcNet& net, const std::string& place);

/// One recursive process per place, composed in parallel over common
/// transition names, then relabelled from transition ids to labels (tau
/// labels hide). An empty place offers t.marked for each t in its preset;
/// a marked place is {readers} |> (sum of t.empty over its postset, plus
/// t.marked for self-loops). Requires a safe net.
NetTranslation petri_to_s(const ReadArcNet& net, std::size_t max_markings = 10000);

} // namespace pafas
