#pragma once

#include <string>
#include <vector>

namespace pafas {

struct ExampleResult {
    /// Short identifier, e.g. `boolean-array/read-self-loops`.
    std::string id;
    /// The claim being checked, in words.
    std::string claim;
    bool passed = false;
    /// What was observed when the check failed (or threw).
    std::string detail;
};

/// Runs the built-in worked examples (boolean array, fast reader, fairness
/// priorities, laws and their counterexamples, translations, nets).
std::vector<ExampleResult> run_reference_examples();

/// Source text of the boolean-array equations; `main` is B_tf.
extern const char* const kBooleanArrayProgram;

} // namespace pafas
