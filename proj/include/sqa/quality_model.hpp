#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqa/metrics.hpp"

namespace sqa {

struct MissingMetricValue : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroBaseline : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadHierarchy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class NodeKind { Characteristic, SubCharacteristic, Attribute, Metric };

// One node of the weighted quality hierarchy. Leaves (kind == Metric) carry
// the metric name; inner nodes hold weighted children. A characteristic may
// parent attributes directly (flattened hierarchy, as in the OO trend
// profile).
struct QualityNode {
    std::string name;
    NodeKind kind = NodeKind::Metric;
    std::vector<std::pair<QualityNode, double>> children;
};

struct QualityHierarchy {
    std::string profile_name;
    std::vector<QualityNode> characteristics;

    // All metric names referenced by leaves.
    std::vector<std::string> referenced_metrics() const;
};

struct EvaluationResult {
    std::string profile;
    std::string scheme;
    std::string version_label;
    std::map<std::string, double> characteristic;
    std::map<std::string, double> subcharacteristic;
    std::map<std::string, double> attribute;
    std::map<std::string, double> metric;
};

std::vector<std::string> validate_hierarchy(const QualityHierarchy& h);

enum class NormalizationScheme { BaselineRatio, CorpusMinMax };
const char* to_string(NormalizationScheme s);

// Normalizes the named metrics across systems. baseline_ratio divides by the
// first vector's values (throws ZeroBaseline); corpus_minmax rescales to
// [0,1] over the corpus, 0.5 on a degenerate range.
std::vector<std::map<std::string, double>> normalize_metrics(
    const std::vector<MetricVector>& raw, NormalizationScheme scheme,
    const std::vector<std::string>& metric_names);

// Weighted sums of Eqs-style utility evaluation, bottom up.
double evaluate_node(const QualityNode& node, const std::map<std::string, double>& metric_values,
                     EvaluationResult* record = nullptr);

EvaluationResult evaluate(const QualityHierarchy& h,
                          const std::map<std::string, double>& metric_values);

// Built-in profiles:
//   "oo-trend"            class-level OO suite, attributes weighted per
//                         characteristic with signed weights
//   "maintainability-sip" method-level LOC/CC/I suite under changeability
//                         and analysability
std::map<std::string, QualityHierarchy> builtin_profiles();

// Declarative configuration format, one node per line:
//   profile <name>
//   characteristic <name>
//   sub <name> <weight>
//   attribute <name> <weight>
//   metric <name> <weight>
std::string serialize_hierarchy(const QualityHierarchy& h);
QualityHierarchy parse_hierarchy(const std::string& text);
QualityHierarchy load_hierarchy(const std::string& path);

}  // namespace sqa
