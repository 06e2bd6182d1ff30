#pragma once

#include <optional>
#include <string>

#include "pafas/term.hpp"

namespace pafas {

/// Visible names occurring in the term plus the image bases of its relabellings.
NameSet sort_of(const Term& t);

/// True iff every free occurrence of `x` in `t` lies under an action prefix `mu.`.
bool is_guarded(const std::string& x, const Term& t);
/// Every Rec binder's variable is guarded in its body.
bool has_guarded_recursion(const Term& t);

/// A failed syntactic check: which condition and where.
struct Violation {
    std::string condition;
    Path path;
    std::string str() const;
};

/// Every read prefix (action or set) lies under some action prefix.
bool is_read_guarded(const Term& t);

/// Read sets: every sum is read-guarded and every read-set body is read-guarded.
std::optional<Violation> check_read_proper(const Term& t);
/// Free `x` is guarded in every sum, read prefix and rec subterm.
std::optional<Violation> check_x_proper(const std::string& x, const Term& t);
/// For every rec x. Q1, Q1 is read-guarded or x-proper.
std::optional<Violation> check_rec_proper(const Term& t);
/// Read-set dialect properness: read-proper and rec-proper.
std::optional<Violation> check_proper(const Term& t);

bool is_read_proper(const Term& t);
bool is_x_proper(const std::string& x, const Term& t);
bool is_rec_proper(const Term& t);
bool is_proper(const Term& t);

/// Read-action dialect: every sum is read-guarded and every mu |> Q' has Q'
/// read-guarded or itself a read-action prefix.
std::optional<Violation> check_ra_proper(const Term& t);
/// Read normal form: ra-proper and rec-proper.
std::optional<Violation> check_rnf(const Term& t);
bool is_rnf(const Term& t);

/// Urgent markers only where the general grammar allows them: the body of an
/// action prefix must be an initial term (no urgency anywhere below).
std::optional<Violation> check_stratified(const Term& t);
bool is_initial(const Term& t);

/// Legal read set: at most one copy of each action.
bool is_legal_read_set(const ReadSetActions& actions);
/// Replaces every member by its urgent copy.
ReadSetActions urgentify_read_set(const ReadSetActions& actions);
/// Names of the urgent members ("tau" included when urgent tau is present).
NameSet urgent_set(const ReadSetActions& actions);

/// R if the term contains read-action prefixes, S if it contains read sets,
/// `fallback` when it contains neither. Throws WrongDialect for mixtures.
Dialect dialect_of(const Term& t, Dialect fallback = Dialect::R);

} // namespace pafas
