#include "pafas/action.hpp"
#include "pafas/error.hpp"

namespace pafas {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::UnguardedRecursion: return "UnguardedRecursion";
    case ErrorKind::IllegalReadSet: return "IllegalReadSet";
    case ErrorKind::UrgencyPosition: return "UrgencyPosition";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::ShadowedBinder: return "ShadowedBinder";
    case ErrorKind::WrongDialect: return "WrongDialect";
    case ErrorKind::OpenTerm: return "OpenTerm";
    case ErrorKind::ImproperInput: return "ImproperInput";
    case ErrorKind::NotRnf: return "NotRnf";
    case ErrorKind::NoMatch: return "NoMatch";
    case ErrorKind::SideConditionViolated: return "SideConditionViolated";
    case ErrorKind::OutsideFragment: return "OutsideFragment";
    case ErrorKind::NotSafe: return "NotSafe";
    case ErrorKind::InvalidNet: return "InvalidNet";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    }
    return "Unknown";
}

bool is_valid_action_name(const std::string& name) {
    if (name.empty() || !is_identifier_start(name.front())) return false;
    for (char c : name)
        if (!is_identifier_char(c)) return false;
    return name != "tau" && name != "rec" && name != "main";
}

Action Action::visible(std::string name, bool urgent) {
    if (!is_valid_action_name(name))
        throw Error(ErrorKind::Syntax, "invalid action name '" + name + "'");
    Action a;
    a.name_ = std::move(name);
    a.tau_ = false;
    a.urgent_ = urgent;
    return a;
}

Action Action::tau(bool urgent) {
    Action a;
    a.urgent_ = urgent;
    return a;
}

std::strong_ordering Action::operator<=>(const Action& other) const {
    if (tau_ != other.tau_) return tau_ ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = name_.compare(other.name_); c != 0)
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return urgent_ <=> other.urgent_;
}

bool Action::name_less(const Action& lhs, const Action& rhs) {
    if (lhs.tau_ != rhs.tau_) return lhs.tau_;
    return lhs.name_ < rhs.name_;
}

std::string Action::str() const {
    return urgent_ ? "!" + name_ : name_;
}

std::size_t Action::hash() const noexcept {
    std::size_t h = std::hash<std::string>{}(name_);
    return h * 31 + (tau_ ? 7 : 0) + (urgent_ ? 3 : 0);
}

} // namespace pafas
