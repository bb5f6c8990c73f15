#pragma once

#include <string>
#include <vector>

#include "sqa/code_model.hpp"
#include "sqa/tokenizer.hpp"

namespace sqa {

struct ExtractionWarning {
    std::string file;
    int line = 0;
    std::string reason;
};

struct ExtractionResult {
    SystemSnapshot fragment;
    std::vector<ExtractionWarning> warnings;
};

// Cyclomatic complexity of one method body: 1 + decision points (if, while,
// for, case, catch, ?: and each short-circuit operator). Equal to e-n+2p on
// the structured control-flow graph.
std::int64_t cyclomatic(const std::vector<Token>& body_tokens);

// Parses a single source unit into a snapshot fragment. Constructs outside
// the recognized subset are skipped with a warning; only tokenizer errors
// propagate.
ExtractionResult extract_unit(const SourceUnit& unit);

// Whole-system pass after merge(): resolves call targets, fills fan_in /
// fan_out and package afferent/efferent couplings. Unresolved targets are
// reported as warnings and count toward fan_out only.
SystemSnapshot resolve_couplings(const SystemSnapshot& snapshot,
                                 std::vector<ExtractionWarning>* warnings = nullptr);

}  // namespace sqa
