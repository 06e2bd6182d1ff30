// Helpers shared by the analysis and transform tests.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "pafas/analysis.hpp"
#include "pafas/predicates.hpp"
#include "pafas/refusal_set.hpp"
#include "pafas/syntax.hpp"

namespace support {

using namespace pafas;

inline Term R(const char* s) { return parse_term(s, Dialect::R); }
inline Term S(const char* s) { return parse_term(s, Dialect::S); }

inline ExploreOptions small_bounds(std::size_t states = 400) {
    ExploreOptions o;
    o.max_states = states;
    o.max_depth = 200;
    return o;
}

inline Verdict compare(const Term& p, Dialect dp, const Term& q, Dialect dq, BisimScheme scheme,
                       std::size_t max_states = 400) {
    Lts a = explore(p, dp, small_bounds(max_states));
    Lts b = explore(q, dq, small_bounds(max_states));
    return bisim(a, b, scheme).verdict;
}

inline Verdict compare_r(const Term& p, const Term& q, std::size_t max_states = 400) {
    return compare(p, Dialect::R, q, Dialect::R, BisimScheme::RSense, max_states);
}

/// All finite subsets of `names` and their complements.
inline std::vector<RefusalSet> refusal_family(const NameSet& names) {
    std::vector<std::string> v(names.begin(), names.end());
    std::vector<RefusalSet> out;
    for (unsigned mask = 0; mask < (1u << v.size()); ++mask) {
        NameSet s;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (mask & (1u << i)) s.insert(v[i]);
        out.push_back(RefusalSet::finite(s));
        out.push_back(RefusalSet::all_except(s));
    }
    return out;
}

inline std::set<std::vector<std::string>> word_set(const FairWords& fw) {
    return {fw.words.begin(), fw.words.end()};
}

inline std::vector<std::string> word(const std::string& letters) {
    std::vector<std::string> w;
    for (char c : letters) w.emplace_back(1, c);
    return w;
}

} // namespace support
