#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pafas/refusal_set.hpp"
#include "pafas/term.hpp"

namespace pafas {

/// Action transition; the action is always in lazy form since performing an
/// action does not reveal whether it was urgent.
struct Transition {
    Action action;
    Term target;

    auto operator<=>(const Transition&) const = default;
    bool operator==(const Transition&) const = default;
};

enum class StepKind { Ordinary, Read, Time };

struct StepLabel {
    StepKind kind = StepKind::Ordinary;
    Action action;      // Ordinary / Read
    RefusalSet refusal; // Time: the maximal refusal set

    static StepLabel ordinary(Action a) { return {StepKind::Ordinary, a.lazy(), {}}; }
    static StepLabel read(Action a) { return {StepKind::Read, a.lazy(), {}}; }
    static StepLabel time(RefusalSet m) { return {StepKind::Time, Action::tau(), std::move(m)}; }

    bool is_time() const noexcept { return kind == StepKind::Time; }
    bool is_full_time() const noexcept { return kind == StepKind::Time && refusal.is_full(); }
    /// `a`, `?a` (read), or the refusal set (`1` for a full step).
    std::string str() const;

    auto operator<=>(const StepLabel&) const = default;
    bool operator==(const StepLabel&) const = default;
};

struct Step {
    StepLabel label;
    Term target;

    auto operator<=>(const Step&) const = default;
    bool operator==(const Step&) const = default;
};

/// Time step with the maximal refusal set; the successor is the same for
/// every refusal set below `max`.
struct TimeStep {
    RefusalSet max;
    Term target;
};

// ---- read-action language -------------------------------------------------

/// Ordinary (state-changing) action transitions.
std::vector<Transition> ordinary_steps(const Term& q);
/// Read transitions; they never remove a read prefix.
std::vector<Transition> read_steps(const Term& q);
/// Both kinds, tagged, sorted and deduplicated.
std::vector<Step> steps(const Term& q);

/// Time step refusing `x` by direct application of the refusal rules (the
/// existential split at parallel composition is searched exhaustively over
/// the synchronised part of `x`). Absent if no derivation exists.
std::optional<Term> can_refuse(const Term& q, const RefusalSet& x);
/// Compositional maximal refusal set and the unique time successor.
std::optional<TimeStep> max_refusal(const Term& q);
/// Successor of a full time step (1-step), if any.
std::optional<Term> one_step(const Term& q);

// ---- read-set language ----------------------------------------------------

/// Single action-transition relation with the read-set self-loop rule.
std::vector<Transition> action_steps_s(const Term& q);
std::optional<Term> can_refuse_s(const Term& q, const RefusalSet& x);
std::optional<TimeStep> max_refusal_s(const Term& q);
std::optional<Term> one_step_s(const Term& q);

} // namespace pafas
