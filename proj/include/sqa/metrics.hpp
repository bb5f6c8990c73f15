#pragma once

#include <map>
#include <string>
#include <vector>

#include "sqa/code_model.hpp"

namespace sqa {

enum class MetricScope { Class, Method, System };

struct MetricVector {
    std::string entity_id;  // qualified name
    MetricScope scope = MetricScope::System;
    std::map<std::string, double> values;

    double at(const std::string& name) const;
    bool has(const std::string& name) const { return values.count(name) != 0; }
};

// Names accepted in MetricVector::values.
const std::vector<std::string>& known_metric_names();

// Class-level suite: WMC, LCOM, CBO, DIT, NOC, NOM, DAM, MOA, NOP, NOS.
MetricVector class_metrics(const ClassInfo& cls, const SystemSnapshot& snapshot);

// Method-level suite: LOC, CC, I = FO/(FO+FI), with I = 0 when FO+FI = 0.
MetricVector method_metrics(const MethodInfo& method);

// System level: DSC, total LOC, and the arithmetic mean of every class
// metric over all classes.
MetricVector system_metrics(const SystemSnapshot& snapshot);

}  // namespace sqa
