#pragma once

#include <string>

#include "pafas/relabelling.hpp"

namespace pafas {

/// Finite or cofinite set of visible action names. The cofinite set with an
/// empty exception list is the full action universe.
class RefusalSet {
public:
    RefusalSet() = default;

    static RefusalSet full() { return RefusalSet(true, {}); }
    static RefusalSet empty() { return RefusalSet(false, {}); }
    static RefusalSet finite(NameSet names) { return RefusalSet(false, std::move(names)); }
    /// Everything except `names`.
    static RefusalSet all_except(NameSet names) { return RefusalSet(true, std::move(names)); }

    bool is_cofinite() const noexcept { return cofinite_; }
    bool is_full() const noexcept { return cofinite_ && names_.empty(); }
    bool is_empty() const noexcept { return !cofinite_ && names_.empty(); }
    /// Members when finite, exceptions when cofinite.
    const NameSet& names() const noexcept { return names_; }

    bool contains(const std::string& name) const;
    bool subset_of(const RefusalSet& other) const;

    RefusalSet united(const RefusalSet& other) const;
    RefusalSet intersected(const RefusalSet& other) const;
    RefusalSet minus(const RefusalSet& other) const;
    RefusalSet minus(const NameSet& names) const { return minus(finite(names)); }
    RefusalSet complement() const { return RefusalSet(!cofinite_, names_); }

    /// Printed as `1` for the full set, `{a,b}` or `~{a,b}` otherwise.
    std::string str() const;

    bool operator==(const RefusalSet&) const = default;
    auto operator<=>(const RefusalSet& other) const {
        if (auto c = cofinite_ <=> other.cofinite_; c != 0) return c;
        return names_ <=> other.names_;
    }

private:
    RefusalSet(bool cofinite, NameSet names) : cofinite_(cofinite), names_(std::move(names)) {}

    bool cofinite_ = false;
    NameSet names_;
};

} // namespace pafas
