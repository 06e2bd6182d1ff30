#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "pafas/action.hpp"

namespace pafas {

using NameSet = std::set<std::string>;

/// General relabelling function: identity outside a finite map from visible
/// names to a visible name or tau. tau is always mapped to tau.
class Relabelling {
public:
    Relabelling() = default;
    /// Identity entries are dropped; targets are stored lazily.
    explicit Relabelling(const std::map<std::string, Action>& mapping);

    static Relabelling hiding(const NameSet& names);
    static Relabelling single(const std::string& from, const Action& to);

    /// Image of an action; urgency is preserved.
    Action apply(const Action& a) const;

    const std::map<std::string, Action>& mapping() const noexcept { return map_; }
    bool is_identity() const noexcept { return map_.empty(); }

    /// Visible names b with apply(b) == target (target visible).
    NameSet preimage(const std::string& target) const;
    /// Names mapped to tau.
    NameSet hidden() const;

    /// ib(Phi) = { a | preimage(a) nonempty and != {a} }.
    NameSet image_base() const;

    /// Result behaves like applying `inner` first, then `*this`.
    Relabelling after(const Relabelling& inner) const;

    /// Returns a copy where `from` is additionally mapped to `to`.
    Relabelling with(const std::string& from, const Action& to) const;

    bool operator==(const Relabelling&) const = default;
    auto operator<=>(const Relabelling& other) const { return map_ <=> other.map_; }

private:
    std::map<std::string, Action> map_;
};

} // namespace pafas
