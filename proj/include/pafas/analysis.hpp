#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pafas/refusal_set.hpp"
#include "pafas/sos.hpp"
#include "pafas/term.hpp"

namespace pafas {

struct LtsEdge {
    int from = 0;
    StepLabel label;
    int to = 0;

    auto operator<=>(const LtsEdge&) const = default;
    bool operator==(const LtsEdge&) const = default;
};

/// Explored transition system. States are distinct terms, numbered in
/// breadth-first discovery order; edges are grouped by source state.
struct Lts {
    Dialect dialect = Dialect::R;
    std::vector<Term> states;
    std::vector<LtsEdge> edges;
    /// edges[offsets[s] .. offsets[s+1]) leave state s.
    std::vector<std::size_t> offsets;
    int initial = 0;
    bool truncated = false;
    bool timed = true;

    std::size_t state_count() const { return states.size(); }
    /// Outgoing edges of `s` (empty for states that were cut off).
    std::vector<LtsEdge> out(int s) const;
};

struct ExploreOptions {
    std::size_t max_states = 10000;
    std::size_t max_depth = 500;
    /// Also add the Time edge labelled with the maximal refusal set.
    bool timed = true;
    /// Compute the successors of each breadth-first level in parallel.
    bool parallel = true;
};

/// Reads `PAFAS_MAX_STATES` if set; otherwise the defaults above.
ExploreOptions default_explore_options();

/// All one-step successors of a closed term: action steps (ordinary and read
/// for R; one kind for S), then the Time step if `timed`.
std::vector<Step> successors(const Term& t, Dialect dialect, bool timed = true);

/// Breadth-first closure under successors(). `truncated` is set when a
/// bound stops the search; states are keyed by syntactic identity.
Lts explore(const Term& t, Dialect dialect, const ExploreOptions& options = default_explore_options());
/// Single-threaded reference implementation; must agree with explore().
Lts explore_serial(const Term& t, Dialect dialect, ExploreOptions options = default_explore_options());

/// Never performs tau and never has two successors for one visible action
/// (ordinary and read steps pooled).
bool is_deterministic(const Lts& lts);

// ---- bisimulation ----------------------------------------------------------

enum class BisimScheme {
    /// Ordinary, read and time steps matched separately.
    RSense,
    /// Ordinary and read steps merged into one action label.
    SSense,
    /// Action labels only (ordinary and read merged, no time steps).
    Untimed,
};

std::string to_string(BisimScheme scheme);

/// Edge-labelled graph used by the bisimulation checker.
struct Graph {
    std::vector<std::vector<std::pair<StepLabel, int>>> out;
    int initial = 0;
    bool truncated = false;
};

Graph to_graph(const Lts& lts, BisimScheme scheme);

enum class Verdict { Equivalent, Distinguished, BoundedUnknown };
std::string to_string(Verdict v);

/// One move of a play in the distinguishing game: `side` (0 or 1) moves
/// from its current state with `label`; the other side answers with its
/// first matching move, if any.
struct WitnessStep {
    int side = 0;
    StepLabel label;
    int state0 = 0; // current state of side 0 before the move
    int state1 = 0; // current state of side 1 before the move
    int target = 0; // successor on the moving side
    std::optional<int> answer; // successor on the other side
};

struct BisimResult {
    Verdict verdict = Verdict::Equivalent;
    /// Present when distinguished. The last step is unanswerable.
    std::vector<WitnessStep> witness;
    /// For a final time move: a refusal set the mover can refuse and the
    /// other side cannot.
    std::optional<RefusalSet> distinguishing_refusal;
    std::size_t rounds = 0;
    std::size_t classes = 0;
};

/// Signature-based partition refinement over the disjoint union. Time edges
/// carry their maximal refusal set and must match exactly. On truncated
/// inputs the verdict is BoundedUnknown (a distinction may come from the
/// missing part).
BisimResult bisim(const Graph& a, const Graph& b, bool parallel = true);
BisimResult bisim(const Lts& a, const Lts& b, BisimScheme scheme, bool parallel = true);

/// Equivalence classes of all states of `g` (used to compare the serial and
/// parallel refinement).
std::vector<int> bisim_classes(const Graph& g, bool parallel);

// ---- fairness --------------------------------------------------------------

/// Query answer; BoundedUnknown when a negative answer rests on a truncated LTS.
enum class Answer { Yes, No, BoundedUnknown };
std::string to_string(Answer a);

/// Is there a run whose visible projection is `word` followed by infinitely
/// many steps that are tau or time steps, infinitely many of them full?
Answer fair_member(const Lts& lts, const std::vector<std::string>& word);
/// Is there a run with visible projection stem . loop^omega and infinitely
/// many full time steps? An empty loop reduces to fair_member(stem).
Answer fair_lasso(const Lts& lts, const std::vector<std::string>& stem, const std::vector<std::string>& loop);

struct FairWords {
    std::vector<std::vector<std::string>> words;
    bool bounded = false;
};
/// All fair finite words of length <= max_len, shortest first.
FairWords fair_words_up_to(const Lts& lts, std::size_t max_len);

/// States from which a silent run with infinitely many full time steps exists.
std::vector<bool> fair_states(const Lts& lts);

// ---- refusal traces --------------------------------------------------------

/// A visible action or a time step refusing `refusal`.
struct TraceEvent {
    bool is_time = false;
    std::string action;
    RefusalSet refusal;

    static TraceEvent act(std::string a) { return {false, std::move(a), {}}; }
    static TraceEvent time(RefusalSet x) { return {true, {}, std::move(x)}; }
    std::string str() const;

    auto operator<=>(const TraceEvent&) const = default;
    bool operator==(const TraceEvent&) const = default;
};
using RefusalTrace = std::vector<TraceEvent>;
std::string trace_str(const RefusalTrace& trace);
/// Space-separated events: action names, `1` for a full time step, `{a,b}`
/// for a partial one.
RefusalTrace parse_trace(const std::string& text);

struct RefusalTraces {
    /// Time events carry the maximal refusal set of the step taken.
    std::vector<RefusalTrace> traces;
    bool bounded = false;
};
/// Refusal traces of length <= max_len (tau steps are abstracted).
RefusalTraces refusal_traces_up_to(const Lts& lts, std::size_t max_len);
/// Membership; a time event X is matched by any step whose maximal set
/// contains X.
Answer has_refusal_trace(const Lts& lts, const RefusalTrace& trace);

// ---- export ----------------------------------------------------------------

std::string lts_to_json(const Lts& lts);
std::string lts_to_dot(const Lts& lts);

} // namespace pafas
