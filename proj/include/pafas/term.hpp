#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pafas/action.hpp"
#include "pafas/relabelling.hpp"

namespace pafas {

/// The two term languages: read-action prefixes (R) or read-set prefixes (S).
enum class Dialect { R, S };

enum class Kind { Nil, Var, Prefix, ReadAction, ReadSet, Sum, Par, Relabel, Rec };

using ReadSetActions = std::vector<Action>;

/// Position of a subterm: child indices from the root (left = 0, right = 1,
/// single children = 0).
using Path = std::vector<int>;
std::string path_str(const Path& path);

/// Immutable process term shared by both dialects. A ReadAction node only
/// appears in R terms, a ReadSet node only in S terms.
class Term {
public:
    static Term nil();
    static Term var(std::string name);
    static Term prefix(Action action, Term body);
    static Term read(Action action, Term body);
    /// Legal read sets hold at most one copy (lazy or urgent) of each action.
    static Term read_set(ReadSetActions actions, Term body);
    static Term sum(Term left, Term right);
    static Term par(Term left, Term right, NameSet sync);
    static Term relabel(Term body, Relabelling relabelling);
    static Term rec(std::string var, Term body);

    Kind kind() const noexcept;
    bool is(Kind k) const noexcept { return kind() == k; }

    /// Prefix / ReadAction action.
    const Action& action() const;
    /// ReadSet members in canonical order.
    const ReadSetActions& read_actions() const;
    /// Var or Rec binder name.
    const std::string& name() const;
    /// Left operand (Sum, Par) or the only child (Prefix, Read*, Relabel, Rec).
    const Term& body() const;
    const Term& left() const { return body(); }
    const Term& right() const;
    const NameSet& sync() const;
    const Relabelling& relabelling() const;

    std::size_t child_count() const noexcept;
    const Term& child(int index) const;
    /// Rebuilds this node with one child replaced.
    Term with_child(int index, Term replacement) const;

    const Term& at(const Path& path) const;
    Term replace_at(const Path& path, Term replacement) const;

    std::size_t hash() const noexcept;
    std::size_t size() const noexcept;

    friend bool operator==(const Term& a, const Term& b);
    friend std::strong_ordering operator<=>(const Term& a, const Term& b);

    struct Node;

private:
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

/// Free process variables of a term.
NameSet free_vars(const Term& t);
bool is_closed(const Term& t);

/// Capture-free replacement of free occurrences of `x` by the closed term `s`.
Term substitute(const Term& t, const std::string& x, const Term& s);
/// rec x. Q  ->  Q{rec x. Q / x}
Term unfold(const Term& rec_term);

bool contains_kind(const Term& t, Kind kind);

/// Generates action names that do not occur in any registered sort.
class FreshNames {
public:
    FreshNames() = default;
    explicit FreshNames(NameSet avoid) : used_(std::move(avoid)) {}

    void avoid(const NameSet& names);
    /// Returns `base_N` for the smallest counter N not yet taken.
    std::string next(const std::string& base = "e");

private:
    NameSet used_;
    std::size_t counter_ = 0;
};

} // namespace pafas
