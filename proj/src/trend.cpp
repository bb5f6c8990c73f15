#include "sqa/trend.hpp"

#include <cmath>

namespace sqa {

namespace {

constexpr double kFlatTolerance = 1e-6;

double lookup_subject(const EvaluationResult& e, const std::string& subject, bool& found) {
    found = true;
    if (auto it = e.characteristic.find(subject); it != e.characteristic.end()) return it->second;
    if (auto it = e.subcharacteristic.find(subject); it != e.subcharacteristic.end())
        return it->second;
    if (auto it = e.attribute.find(subject); it != e.attribute.end()) return it->second;
    found = false;
    return 0.0;
}

}  // namespace

const char* to_string(Direction d) {
    switch (d) {
        case Direction::Increasing: return "increasing";
        case Direction::Decreasing: return "decreasing";
        case Direction::Unchanged: return "unchanged";
    }
    return "unchanged";
}

TrendSeries build_series(const std::vector<EvaluationResult>& evaluations,
                         const std::string& subject) {
    if (evaluations.size() < 2)
        throw MissingMetricValue("trend series needs at least 2 versions for " + subject);
    TrendSeries s;
    s.subject = subject;
    for (const auto& e : evaluations) {
        bool found = false;
        double v = lookup_subject(e, subject, found);
        if (!found)
            throw MissingMetricValue("subject '" + subject + "' absent from evaluation of " +
                                     e.version_label);
        s.versions.push_back(e.version_label);
        s.raw.push_back(v);
    }
    if (s.raw.front() == 0.0)
        throw ZeroBaseline("first-version value is zero for " + subject);
    s.normalized.reserve(s.raw.size());
    for (double v : s.raw) s.normalized.push_back(v / s.raw.front());
    s.normalized.front() = 1.0;
    return s;
}

ConformanceReport conformance(const std::vector<TrendSeries>& series) {
    struct Expectation {
        const char* name;
        Direction expected;
    };
    static const Expectation expectations[] = {
        {"functionality", Direction::Increasing},
        {"efficiency", Direction::Increasing},
        {"maintainability", Direction::Decreasing},
        {"portability", Direction::Increasing},
    };

    ConformanceReport report;
    for (const auto& exp : expectations) {
        const TrendSeries* s = nullptr;
        for (const auto& candidate : series)
            if (candidate.subject == exp.name) s = &candidate;
        if (!s)
            throw MissingMetricValue(std::string("conformance needs a series for ") + exp.name);

        double delta = s->normalized.back() - 1.0;
        Direction observed = std::abs(delta) <= kFlatTolerance
                                 ? Direction::Unchanged
                                 : delta > 0 ? Direction::Increasing : Direction::Decreasing;

        CharacteristicVerdict v;
        v.characteristic = exp.name;
        v.expected = exp.expected;
        v.observed = observed;
        v.noteworthy = false;
        if (observed == Direction::Unchanged) {
            v.conforms = false;
            v.narrative = std::string(exp.name) + " is unchanged across versions";
        } else if (observed == exp.expected) {
            v.conforms = true;
            v.narrative = std::string(exp.name) + " " + to_string(observed) +
                          " as expected from the laws of software evolution";
        } else if (std::string(exp.name) == "maintainability") {
            // Not decreasing is a finding, not a failure: maintenance work can
            // hold maintainability steady while features are added.
            v.conforms = false;
            v.noteworthy = true;
            v.narrative = "maintainability " + std::string(to_string(observed)) +
                          "; does not follow the expected early-phase decline, suggesting "
                          "deliberate effort to keep the code maintainable";
        } else {
            v.conforms = false;
            v.narrative = std::string(exp.name) + " " + to_string(observed) + " but expected " +
                          to_string(exp.expected);
        }
        report.verdicts.push_back(std::move(v));
    }
    return report;
}

}  // namespace sqa
