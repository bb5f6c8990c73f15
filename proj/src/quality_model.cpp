#include "sqa/quality_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace sqa {

namespace {

void collect_metrics(const QualityNode& node, std::set<std::string>& out) {
    if (node.kind == NodeKind::Metric) {
        out.insert(node.name);
        return;
    }
    for (const auto& [child, w] : node.children) collect_metrics(child, out);
}

}  // namespace

std::vector<std::string> QualityHierarchy::referenced_metrics() const {
    std::set<std::string> out;
    for (const auto& c : characteristics) collect_metrics(c, out);
    return {out.begin(), out.end()};
}

const char* to_string(NormalizationScheme s) {
    return s == NormalizationScheme::BaselineRatio ? "baseline_ratio" : "corpus_minmax";
}

namespace {

void validate_node(const QualityNode& node, std::vector<std::string>& violations) {
    if (node.kind == NodeKind::Metric) {
        const auto& known = known_metric_names();
        if (std::find(known.begin(), known.end(), node.name) == known.end())
            violations.push_back("unknown metric referenced: " + node.name);
        if (!node.children.empty())
            violations.push_back("metric leaf has children: " + node.name);
        return;
    }
    std::set<std::string> names;
    for (const auto& [child, weight] : node.children) {
        if (!std::isfinite(weight))
            violations.push_back("non-finite weight under " + node.name);
        if (!names.insert(child.name).second)
            violations.push_back("duplicate child name under " + node.name + ": " + child.name);
        validate_node(child, violations);
    }
}

}  // namespace

std::vector<std::string> validate_hierarchy(const QualityHierarchy& h) {
    std::vector<std::string> violations;
    std::set<std::string> names;
    for (const auto& c : h.characteristics) {
        if (!names.insert(c.name).second)
            violations.push_back("duplicate characteristic: " + c.name);
        validate_node(c, violations);
    }
    return violations;
}

std::vector<std::map<std::string, double>> normalize_metrics(
    const std::vector<MetricVector>& raw, NormalizationScheme scheme,
    const std::vector<std::string>& metric_names) {
    std::vector<std::map<std::string, double>> out(raw.size());
    if (raw.empty()) return out;

    if (scheme == NormalizationScheme::BaselineRatio) {
        const MetricVector& base = raw.front();
        for (const auto& name : metric_names) {
            if (!base.has(name))
                throw MissingMetricValue("baseline lacks metric " + name + " (" + base.entity_id +
                                         ")");
            double b = base.at(name);
            if (b == 0.0) throw ZeroBaseline("baseline value is zero for metric " + name);
            for (size_t i = 0; i < raw.size(); ++i) {
                if (!raw[i].has(name))
                    throw MissingMetricValue("system " + raw[i].entity_id + " lacks metric " +
                                             name);
                out[i][name] = raw[i].at(name) / b;
            }
            out[0][name] = 1.0;  // exact by construction
        }
        return out;
    }

    if (raw.size() < 2)
        throw MissingMetricValue("corpus_minmax normalization needs at least 2 systems");
    for (const auto& name : metric_names) {
        double lo = 0.0, hi = 0.0;
        for (size_t i = 0; i < raw.size(); ++i) {
            if (!raw[i].has(name))
                throw MissingMetricValue("system " + raw[i].entity_id + " lacks metric " + name);
            double v = raw[i].at(name);
            if (i == 0) lo = hi = v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        for (size_t i = 0; i < raw.size(); ++i)
            out[i][name] = hi == lo ? 0.5 : (raw[i].at(name) - lo) / (hi - lo);
    }
    return out;
}

double evaluate_node(const QualityNode& node, const std::map<std::string, double>& metric_values,
                     EvaluationResult* record) {
    if (node.kind == NodeKind::Metric) {
        auto it = metric_values.find(node.name);
        if (it == metric_values.end())
            throw MissingMetricValue("no value for metric " + node.name);
        if (record) record->metric[node.name] = it->second;
        return it->second;
    }
    double sum = 0.0;
    for (const auto& [child, weight] : node.children)
        sum += weight * evaluate_node(child, metric_values, record);
    if (record) {
        switch (node.kind) {
            case NodeKind::Characteristic: record->characteristic[node.name] = sum; break;
            case NodeKind::SubCharacteristic: record->subcharacteristic[node.name] = sum; break;
            case NodeKind::Attribute: record->attribute[node.name] = sum; break;
            case NodeKind::Metric: break;
        }
    }
    return sum;
}

EvaluationResult evaluate(const QualityHierarchy& h,
                          const std::map<std::string, double>& metric_values) {
    EvaluationResult result;
    result.profile = h.profile_name;
    for (const auto& c : h.characteristics) evaluate_node(c, metric_values, &result);
    return result;
}

namespace {

QualityNode metric_leaf(const std::string& name) {
    return {name, NodeKind::Metric, {}};
}

QualityNode attribute(const std::string& name, const std::string& metric) {
    QualityNode n{name, NodeKind::Attribute, {}};
    n.children.emplace_back(metric_leaf(metric), 1.0);
    return n;
}

// Attribute order and metric bindings for the OO trend profile.
const std::vector<std::pair<std::string, std::string>>& oo_attribute_metrics() {
    static const std::vector<std::pair<std::string, std::string>> map = {
        {"Volume", "NOS"},        {"Complexity", "WMC"}, {"Abstraction", "NOC"},
        {"Encapsulation", "DAM"}, {"Coupling", "CBO"},   {"Cohesion", "LCOM"},
        {"Messaging", "NOM"},     {"Polymorphism", "NOP"}, {"Composition", "MOA"},
        {"Inheritance", "DIT"}};
    return map;
}

QualityNode oo_characteristic(const std::string& name, const std::vector<double>& weights) {
    QualityNode c{name, NodeKind::Characteristic, {}};
    const auto& attrs = oo_attribute_metrics();
    for (size_t i = 0; i < attrs.size(); ++i)
        c.children.emplace_back(attribute(attrs[i].first, attrs[i].second), weights[i]);
    return c;
}

QualityNode sip_subcharacteristic(const std::string& name, double volume_w, double complexity_w,
                                  double coupling_w) {
    QualityNode sc{name, NodeKind::SubCharacteristic, {}};
    sc.children.emplace_back(attribute("Volume", "LOC"), volume_w);
    sc.children.emplace_back(attribute("Complexity", "CC"), complexity_w);
    sc.children.emplace_back(attribute("Coupling", "I"), coupling_w);
    return sc;
}

}  // namespace

std::map<std::string, QualityHierarchy> builtin_profiles() {
    std::map<std::string, QualityHierarchy> profiles;

    // Signed attribute weights per characteristic, published column order:
    // Volume, Complexity, Abstraction, Encapsulation, Coupling, Cohesion,
    // Messaging, Polymorphism, Composition, Inheritance. Used verbatim, no
    // renormalization.
    QualityHierarchy oo;
    oo.profile_name = "oo-trend";
    oo.characteristics = {
        oo_characteristic("functionality",
                          {0.17, 0.10, 0.05, 0.04, 0.07, 0.10, 0.17, 0.17, 0.07, 0.07}),
        oo_characteristic("efficiency",
                          {0.05, 0.07, 0.13, 0.13, 0.08, 0.06, 0.09, 0.12, 0.13, 0.13}),
        oo_characteristic("maintainability",
                          {-0.12, -0.12, 0.12, 0.12, -0.12, 0.12, 0.06, -0.12, 0.04, 0.04}),
        oo_characteristic("portability",
                          {-0.06, -0.10, 0.16, 0.05, -0.16, 0.06, 0.06, 0.16, 0.04, 0.16}),
    };
    profiles["oo-trend"] = std::move(oo);

    QualityHierarchy sip;
    sip.profile_name = "maintainability-sip";
    QualityNode maint{"maintainability", NodeKind::Characteristic, {}};
    maint.children.emplace_back(sip_subcharacteristic("changeability", 0.05, 0.80, 0.15), 0.5);
    maint.children.emplace_back(sip_subcharacteristic("analysability", 0.50, 0.25, 0.25), 0.5);
    sip.characteristics = {std::move(maint)};
    profiles["maintainability-sip"] = std::move(sip);

    return profiles;
}

namespace {

const char* kind_tag(NodeKind k) {
    switch (k) {
        case NodeKind::Characteristic: return "characteristic";
        case NodeKind::SubCharacteristic: return "sub";
        case NodeKind::Attribute: return "attribute";
        case NodeKind::Metric: return "metric";
    }
    return "metric";
}

void write_node(std::ostream& os, const QualityNode& node, double weight, bool top) {
    if (top)
        os << kind_tag(node.kind) << ' ' << node.name << '\n';
    else
        os << kind_tag(node.kind) << ' ' << node.name << ' ' << weight << '\n';
    for (const auto& [child, w] : node.children) write_node(os, child, w, false);
}

}  // namespace

std::string serialize_hierarchy(const QualityHierarchy& h) {
    std::ostringstream os;
    os.precision(17);
    os << "profile " << h.profile_name << '\n';
    for (const auto& c : h.characteristics) write_node(os, c, 0.0, true);
    return os.str();
}

QualityHierarchy parse_hierarchy(const std::string& text) {
    QualityHierarchy h;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    QualityNode* cur_char = nullptr;
    QualityNode* cur_sub = nullptr;
    QualityNode* cur_attr = nullptr;

    auto fail = [&](const std::string& why) -> void {
        throw BadHierarchy("line " + std::to_string(line_no) + ": " + why);
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "profile") {
            ls >> h.profile_name;
        } else if (tag == "characteristic") {
            std::string name;
            if (!(ls >> name)) fail("characteristic needs a name");
            h.characteristics.push_back({name, NodeKind::Characteristic, {}});
            cur_char = &h.characteristics.back();
            cur_sub = cur_attr = nullptr;
        } else if (tag == "sub" || tag == "attribute" || tag == "metric") {
            std::string name;
            double weight;
            if (!(ls >> name >> weight)) fail(tag + " needs a name and a weight");
            if (tag == "sub") {
                if (!cur_char) fail("sub outside a characteristic");
                cur_char->children.emplace_back(
                    QualityNode{name, NodeKind::SubCharacteristic, {}}, weight);
                cur_sub = &cur_char->children.back().first;
                cur_attr = nullptr;
            } else if (tag == "attribute") {
                QualityNode* parent = cur_sub ? cur_sub : cur_char;
                if (!parent) fail("attribute outside a characteristic");
                parent->children.emplace_back(QualityNode{name, NodeKind::Attribute, {}}, weight);
                cur_attr = &parent->children.back().first;
            } else {
                if (!cur_attr) fail("metric outside an attribute");
                cur_attr->children.emplace_back(QualityNode{name, NodeKind::Metric, {}}, weight);
            }
        } else {
            fail("unknown directive: " + tag);
        }
    }
    auto violations = validate_hierarchy(h);
    if (!violations.empty()) throw BadHierarchy("invalid hierarchy: " + violations.front());
    return h;
}

QualityHierarchy load_hierarchy(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadHierarchy("cannot open hierarchy file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_hierarchy(buf.str());
}

}  // namespace sqa
