#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>

namespace pafas {

/// A visible action name or tau, either lazy (may still delay one time unit)
/// or urgent (must not be refused by a time step).
class Action {
public:
    Action() = default;

    static Action visible(std::string name, bool urgent = false);
    static Action tau(bool urgent = false);

    bool is_tau() const noexcept { return tau_; }
    bool is_urgent() const noexcept { return urgent_; }
    /// Name for visible actions; "tau" for the internal action.
    const std::string& name() const noexcept { return name_; }

    Action lazy() const { Action a = *this; a.urgent_ = false; return a; }
    Action urgent() const { Action a = *this; a.urgent_ = true; return a; }

    /// Canonical order: tau first, then names lexicographically; urgency breaks ties.
    std::strong_ordering operator<=>(const Action& other) const;
    bool operator==(const Action& other) const = default;

    /// Order ignoring urgency; used for listing read sets.
    static bool name_less(const Action& lhs, const Action& rhs);

    /// Surface syntax: `a`, `!a`, `tau`, `!tau`.
    std::string str() const;

    std::size_t hash() const noexcept;

private:
    std::string name_ = "tau";
    bool tau_ = true;
    bool urgent_ = false;
};

inline bool is_identifier_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool is_identifier_char(char c) {
    return is_identifier_start(c) || (c >= '0' && c <= '9') || c == '\'';
}
bool is_valid_action_name(const std::string& name);

} // namespace pafas

template <>
struct std::hash<pafas::Action> {
    std::size_t operator()(const pafas::Action& a) const noexcept { return a.hash(); }
};
