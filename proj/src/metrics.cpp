#include "sqa/metrics.hpp"

#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace sqa {

double MetricVector::at(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end())
        throw std::out_of_range("metric not present for " + entity_id + ": " + name);
    return it->second;
}

const std::vector<std::string>& known_metric_names() {
    static const std::vector<std::string> names = {"WMC", "LCOM", "CBO", "DIT", "NOC",
                                                   "NOM", "DSC",  "DAM", "MOA", "NOP",
                                                   "NOS", "LOC",  "CC",  "I"};
    return names;
}

namespace {

std::string strip_type(const std::string& type) {
    std::string t = type;
    if (auto lt = t.find('<'); lt != std::string::npos) t = t.substr(0, lt);
    while (!t.empty() && (t.back() == '*' || t.back() == '&' || t.back() == '[' ||
                          t.back() == ']' || t.back() == ' '))
        t.pop_back();
    if (auto dot = t.find_last_of(".:"); dot != std::string::npos) t = t.substr(dot + 1);
    return t;
}

}  // namespace

MetricVector class_metrics(const ClassInfo& cls, const SystemSnapshot& snapshot) {
    MetricVector v;
    v.entity_id = cls.qualified_name();
    v.scope = MetricScope::Class;

    std::unordered_set<std::string> declared;
    for (const auto& c : snapshot.classes) declared.insert(c.name);

    // WMC: sum of member method complexities.
    std::int64_t wmc = 0;
    for (const auto& m : cls.methods) wmc += m.cyclomatic_complexity;

    // LCOM1: max(0, P - Q) over method pairs.
    std::int64_t sharing = 0, non_sharing = 0;
    for (size_t i = 0; i < cls.methods.size(); ++i) {
        std::set<std::string> a(cls.methods[i].accessed_members.begin(),
                                cls.methods[i].accessed_members.end());
        for (size_t j = i + 1; j < cls.methods.size(); ++j) {
            bool share = false;
            for (const auto& member : cls.methods[j].accessed_members)
                if (a.count(member)) {
                    share = true;
                    break;
                }
            (share ? sharing : non_sharing) += 1;
        }
    }
    std::int64_t lcom = non_sharing > sharing ? non_sharing - sharing : 0;

    // CBO: distinct other declared classes referenced by invocation or
    // member-variable type.
    std::set<std::string> coupled;
    for (const auto& m : cls.methods)
        for (const auto& t : m.invoked_targets)
            if (!t.class_name.empty() && t.class_name != "?" && t.class_name != cls.name &&
                declared.count(t.class_name))
                coupled.insert(t.class_name);
    for (const auto& d : cls.data_members) {
        std::string bt = strip_type(d.type_name);
        if (d.kind == DataKind::UserDefined && bt != cls.name && declared.count(bt))
            coupled.insert(bt);
    }

    // DIT: ancestor chain length; an ancestor outside the snapshot ends the
    // chain after its edge.
    std::unordered_map<std::string, const ClassInfo*> by_name;
    for (const auto& c : snapshot.classes) by_name[c.name] = &c;
    std::int64_t dit = 0;
    const ClassInfo* cur = &cls;
    std::unordered_set<std::string> seen;
    while (cur->ancestor_name && seen.insert(cur->name).second) {
        ++dit;
        auto it = by_name.find(*cur->ancestor_name);
        if (it == by_name.end()) break;
        cur = it->second;
    }

    std::int64_t noc = 0;
    for (const auto& c : snapshot.classes)
        if (c.ancestor_name && *c.ancestor_name == cls.name) ++noc;

    std::int64_t nom = 0, nop = 0;
    for (const auto& m : cls.methods) {
        if (m.visibility == Visibility::Public) ++nom;
        if (m.overrides_ancestor) ++nop;
    }

    std::int64_t hidden = 0, moa = 0;
    for (const auto& d : cls.data_members) {
        if (d.visibility == Visibility::Private || d.visibility == Visibility::Protected) ++hidden;
        if (d.kind == DataKind::UserDefined) ++moa;
    }
    double dam = cls.data_members.empty()
                     ? 1.0
                     : static_cast<double>(hidden) / static_cast<double>(cls.data_members.size());

    std::int64_t nos = cls.statement_count;
    for (const auto& m : cls.methods) nos += m.statement_count;

    v.values = {{"WMC", double(wmc)}, {"LCOM", double(lcom)}, {"CBO", double(coupled.size())},
                {"DIT", double(dit)}, {"NOC", double(noc)},   {"NOM", double(nom)},
                {"DAM", dam},         {"MOA", double(moa)},   {"NOP", double(nop)},
                {"NOS", double(nos)}};
    return v;
}

MetricVector method_metrics(const MethodInfo& method) {
    MetricVector v;
    v.entity_id = method.name;
    v.scope = MetricScope::Method;
    double fo = static_cast<double>(method.fan_out);
    double fi = static_cast<double>(method.fan_in);
    double instability = (fo + fi) == 0.0 ? 0.0 : fo / (fo + fi);
    v.values = {{"LOC", double(method.loc)},
                {"CC", double(method.cyclomatic_complexity)},
                {"I", instability}};
    return v;
}

MetricVector system_metrics(const SystemSnapshot& snapshot) {
    MetricVector v;
    v.entity_id = snapshot.system_name + "@" + snapshot.version_label;
    v.scope = MetricScope::System;
    v.values["DSC"] = static_cast<double>(snapshot.classes.size());
    v.values["LOC"] = static_cast<double>(snapshot.total_loc);

    // Method-level means (CC, I) over every member method and free function.
    std::int64_t method_count = 0;
    double cc_sum = 0.0, i_sum = 0.0;
    auto tally = [&](const MethodInfo& m) {
        MetricVector mm = method_metrics(m);
        cc_sum += mm.at("CC");
        i_sum += mm.at("I");
        ++method_count;
    };
    for (const auto& c : snapshot.classes)
        for (const auto& m : c.methods) tally(m);
    for (const auto& f : snapshot.free_functions) tally(f);
    if (method_count > 0) {
        v.values["CC"] = cc_sum / static_cast<double>(method_count);
        v.values["I"] = i_sum / static_cast<double>(method_count);
    }

    if (snapshot.classes.empty()) return v;

    std::map<std::string, double> sums;
    for (const auto& c : snapshot.classes) {
        MetricVector cm = class_metrics(c, snapshot);
        for (const auto& [name, value] : cm.values) sums[name] += value;
    }
    for (const auto& [name, total] : sums)
        v.values[name] = total / static_cast<double>(snapshot.classes.size());
    return v;
}

}  // namespace sqa
