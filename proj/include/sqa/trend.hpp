#pragma once

#include <string>
#include <vector>

#include "sqa/quality_model.hpp"

namespace sqa {

struct TrendSeries {
    std::string subject;  // characteristic or attribute name
    std::vector<std::string> versions;
    std::vector<double> raw;
    std::vector<double> normalized;  // first entry is exactly 1
};

enum class Direction { Increasing, Decreasing, Unchanged };
const char* to_string(Direction d);

struct CharacteristicVerdict {
    std::string characteristic;
    Direction expected;
    Direction observed;
    bool conforms;
    bool noteworthy;  // maintainability not decreasing: flagged, not failing
    std::string narrative;
};

struct ConformanceReport {
    std::vector<CharacteristicVerdict> verdicts;
};

// Series over >= 2 ordered version evaluations, normalized to the first
// version. The subject is looked up among characteristics first, then
// sub-characteristics, then attributes. Throws ZeroBaseline when the first
// raw value is 0 and MissingMetricValue when the subject is absent.
TrendSeries build_series(const std::vector<EvaluationResult>& evaluations,
                         const std::string& subject);

// Last-vs-first direction check against the evolution-law expectations:
// functionality, efficiency and portability up; maintainability down in the
// early phase. Deltas within 1e-6 count as unchanged.
ConformanceReport conformance(const std::vector<TrendSeries>& series);

}  // namespace sqa
