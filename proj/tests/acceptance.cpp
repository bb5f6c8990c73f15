// End-to-end acceptance harness. Each criterion prints one [PASS]/[FAIL]
// line; the process exits nonzero if any criterion fails. All tolerances are
// pinned here, next to the checks that use them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sqa/ahp.hpp"
#include "sqa/code_model.hpp"
#include "sqa/extractor.hpp"
#include "sqa/metrics.hpp"
#include "sqa/quality_model.hpp"
#include "sqa/report.hpp"
#include "sqa/risk_profile.hpp"
#include "sqa/trend.hpp"

using namespace sqa;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Criterion {
    int number;
    std::string description;
    std::vector<std::string> problems;

    void require(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
    void close_to(double got, double want, double tol, const std::string& what) {
        if (!(std::abs(got - want) <= tol))
            problems.push_back(what + ": got " + std::to_string(got) + ", want " +
                               std::to_string(want));
    }
    ~Criterion() {
        if (problems.empty()) {
            std::printf("[PASS] criterion %d: %s\n", number, description.c_str());
        } else {
            ++g_failures;
            std::printf("[FAIL] criterion %d: %s\n", number, description.c_str());
            for (const auto& p : problems) std::printf("       %s\n", p.c_str());
        }
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------- 1 and 2

void criterion_1() {
    Criterion c{1, "uniform pairwise matrices give weights 1/n and lambda n (1e-12, < 1s)"};
    auto start = Clock::now();
    for (size_t n = 2; n <= 10; ++n) {
        PairwiseMatrix m;
        for (size_t i = 0; i < n; ++i) {
            m.labels.push_back("c" + std::to_string(i));
            m.entries.push_back(std::vector<double>(n, 1.0));
        }
        auto w = principal_eigenvector(m);
        c.close_to(w.lambda_max, double(n), 1e-12, "lambda at n=" + std::to_string(n));
        for (double x : w.weights)
            c.close_to(x, 1.0 / double(n), 1e-12, "weight at n=" + std::to_string(n));
    }
    c.require(seconds_since(start) < 1.0, "runtime exceeded 1 s");
}

void criterion_2() {
    Criterion c{2, "consistent matrices recover their weights (100 trials, 1e-8, < 5s)"};
    auto start = Clock::now();
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(0.05, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        size_t n = 3 + rng() % 7;
        std::vector<double> w(n);
        double sum = 0;
        for (auto& x : w) sum += (x = dist(rng));
        for (auto& x : w) x /= sum;
        PairwiseMatrix m;
        for (size_t i = 0; i < n; ++i) {
            m.labels.push_back("c" + std::to_string(i));
            std::vector<double> row;
            for (size_t j = 0; j < n; ++j) row.push_back(w[i] / w[j]);
            m.entries.push_back(row);
        }
        auto result = principal_eigenvector(m);
        for (size_t i = 0; i < n; ++i)
            c.close_to(result.weights[i], w[i], 1e-8, "weight recovery");
        c.require(result.consistency_ratio < 1e-9, "consistency ratio not ~0");
    }
    c.require(seconds_since(start) < 5.0, "runtime exceeded 5 s");
}

// --------------------------------------------------------------------- 3

void flatten(const QualityNode& n, double factor, std::map<std::string, double>& coeff) {
    if (n.kind == NodeKind::Metric) {
        coeff[n.name] += factor;
        return;
    }
    for (const auto& [child, w] : n.children) flatten(child, factor * w, coeff);
}

QualityNode random_node(std::mt19937& rng, int depth) {
    std::uniform_real_distribution<double> wdist(-1.0, 1.0);
    const auto& metrics = known_metric_names();
    if (depth == 0) return {metrics[rng() % metrics.size()], NodeKind::Metric, {}};
    NodeKind kind = depth == 3   ? NodeKind::Characteristic
                    : depth == 2 ? NodeKind::SubCharacteristic
                                 : NodeKind::Attribute;
    QualityNode n{"n" + std::to_string(rng()), kind, {}};
    size_t fanout = 1 + rng() % 10;
    for (size_t i = 0; i < fanout; ++i)
        n.children.emplace_back(random_node(rng, rng() % 2 ? depth - 1 : 0), wdist(rng));
    return n;
}

void criterion_3() {
    Criterion c{3, "hierarchy evaluation matches a flat dot-product oracle (1000 trials, 1e-12)"};
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> vdist(-3.0, 3.0);
    for (int trial = 0; trial < 1000; ++trial) {
        QualityNode top = random_node(rng, 3);
        std::map<std::string, double> values;
        for (const auto& name : known_metric_names()) values[name] = vdist(rng);
        std::map<std::string, double> coeff;
        flatten(top, 1.0, coeff);
        double expected = 0;
        for (const auto& [name, k] : coeff) expected += k * values[name];
        double got = evaluate_node(top, values);
        c.close_to(got, expected, 1e-12, "utility vs oracle at trial " + std::to_string(trial));
    }
}

// --------------------------------------------------------------------- 4

MethodInfo synthetic_method(std::int64_t loc, std::int64_t cc, std::int64_t fan_out = 0,
                            std::int64_t fan_in = 0) {
    MethodInfo m;
    m.name = "m";
    m.loc = loc;
    m.cyclomatic_complexity = cc;
    m.fan_out = fan_out;
    m.fan_in = fan_in;
    return m;
}

void criterion_4() {
    Criterion c{4, "10,000-LOC system with 500 LOC of high-complexity methods reads high = 5%"};
    SystemSnapshot s;
    s.system_name = "synthetic";
    s.version_label = "1";
    ClassInfo cls;
    cls.name = "Bulk";
    for (int i = 0; i < 19; ++i) cls.methods.push_back(synthetic_method(500, 2));
    cls.methods.push_back(synthetic_method(500, 25));  // 21..50 band
    s.classes.push_back(cls);
    s.total_loc = 10000;
    auto p = build_profile(s, "CC", cc_band_scheme());
    c.require(p.loc_percentage.at(RiskLevel::High) == 5.0, "high band is not exactly 5.0%");
    c.require(p.loc_percentage.at(RiskLevel::VeryLow) == 95.0, "very_low band is not 95%");
}

// --------------------------------------------------------------------- 5

void criterion_5() {
    Criterion c{5, "published band boundaries categorize exactly"};
    auto cc_scheme = cc_band_scheme();
    const std::pair<double, RiskLevel> cc_cases[] = {
        {0, RiskLevel::VeryLow},  {5, RiskLevel::VeryLow}, {6, RiskLevel::Low},
        {10, RiskLevel::Low},     {11, RiskLevel::Moderate}, {20, RiskLevel::Moderate},
        {21, RiskLevel::High},    {50, RiskLevel::High},   {51, RiskLevel::VeryHigh}};
    for (const auto& [value, level] : cc_cases)
        c.require(categorize(value, cc_scheme) == level,
                  "CC " + std::to_string(value) + " not " + to_string(level));
    auto i_scheme = instability_band_scheme();
    const std::pair<double, RiskLevel> i_cases[] = {
        {0.0, RiskLevel::VeryLow},  {0.19, RiskLevel::VeryLow}, {0.2, RiskLevel::Low},
        {0.59, RiskLevel::Moderate}, {0.6, RiskLevel::High},    {1.0, RiskLevel::VeryHigh}};
    for (const auto& [value, level] : i_cases)
        c.require(categorize(value, i_scheme) == level,
                  "I " + std::to_string(value) + " not " + to_string(level));
}

// --------------------------------------------------------------------- 6

ClassInfo fixture_class(const std::string& name, const std::string& ancestor = "") {
    ClassInfo c;
    c.name = name;
    if (!ancestor.empty()) c.ancestor_name = ancestor;
    return c;
}

MethodInfo fixture_method(const std::string& name, std::int64_t cc,
                          std::vector<std::string> accesses = {},
                          Visibility vis = Visibility::Public) {
    MethodInfo m;
    m.name = name;
    m.cyclomatic_complexity = cc;
    m.accessed_members = std::move(accesses);
    m.visibility = vis;
    return m;
}

std::int64_t lcom_brute_force(const ClassInfo& c) {
    std::int64_t p = 0, q = 0;
    for (size_t i = 0; i < c.methods.size(); ++i)
        for (size_t j = i + 1; j < c.methods.size(); ++j) {
            bool shared = false;
            for (const auto& a : c.methods[i].accessed_members)
                for (const auto& b : c.methods[j].accessed_members)
                    if (a == b) shared = true;
            if (shared)
                ++q;
            else
                ++p;
        }
    return p > q ? p - q : 0;
}

std::int64_t cbo_brute_force(const ClassInfo& c, const SystemSnapshot& s) {
    std::set<std::string> referenced;
    for (const auto& other : s.classes) {
        if (other.name == c.name) continue;
        for (const auto& m : c.methods)
            for (const auto& t : m.invoked_targets)
                if (t.class_name == other.name) referenced.insert(other.name);
        for (const auto& d : c.data_members)
            if (d.kind == DataKind::UserDefined && d.type_name == other.name)
                referenced.insert(other.name);
    }
    return static_cast<std::int64_t>(referenced.size());
}

void criterion_6() {
    Criterion c{6, "metric suite matches a documented 6-class fixture and brute-force oracles"};

    SystemSnapshot s;
    auto base = fixture_class("Base");
    base.methods = {fixture_method("init", 2, {"state"}), fixture_method("reset", 1, {"state"}),
                    fixture_method("helper", 3, {}, Visibility::Private)};
    base.data_members = {{"state", "int", DataKind::Primitive, Visibility::Private, false, false}};
    base.statement_count = 1;
    base.methods[0].statement_count = 4;
    base.methods[1].statement_count = 2;
    base.methods[2].statement_count = 6;

    auto mid = fixture_class("Mid", "Base");
    mid.methods = {fixture_method("init", 2, {"cache"})};
    mid.methods[0].overrides_ancestor = true;
    mid.data_members = {
        {"cache", "Holder", DataKind::UserDefined, Visibility::Private, false, false},
        {"flag", "bool", DataKind::Primitive, Visibility::Public, false, false}};

    auto leaf = fixture_class("Leaf", "Mid");
    leaf.methods = {fixture_method("run", 4)};
    leaf.methods[0].invoked_targets = {{"Util", "log"}, {"Holder", "get"}};
    leaf.methods[0].fan_out = 2;

    auto holder = fixture_class("Holder");
    holder.methods = {fixture_method("get", 1, {"value"})};
    holder.data_members = {
        {"value", "int", DataKind::Primitive, Visibility::Private, false, false}};

    auto util = fixture_class("Util");
    util.methods = {fixture_method("log", 2), fixture_method("log2", 1)};

    s.classes = {base, mid, leaf, fixture_class("Other", "Base"), holder, util};

    // Expected values worked out by hand for every class:
    //   name    WMC LCOM CBO DIT NOC NOM DAM  MOA NOP NOS
    //   Base      6    1   0   0   2   2  1     0   0  13
    //   Mid       2    0   1   1   1   1  0.5   1   1   0
    //   Leaf      4    0   2   2   0   1  1     0   0   0
    //   Other     0    0   0   1   0   0  1     0   0   0
    //   Holder    1    0   0   0   0   1  1     0   0   0
    //   Util      3    1   0   0   0   2  1     0   0   0
    struct Row {
        const char* name;
        double wmc, lcom, cbo, dit, noc, nom, dam, moa, nop, nos;
    };
    const Row rows[] = {{"Base", 6, 1, 0, 0, 2, 2, 1, 0, 0, 13},
                        {"Mid", 2, 0, 1, 1, 1, 1, 0.5, 1, 1, 0},
                        {"Leaf", 4, 0, 2, 2, 0, 1, 1, 0, 0, 0},
                        {"Other", 0, 0, 0, 1, 0, 0, 1, 0, 0, 0},
                        {"Holder", 1, 0, 0, 0, 0, 1, 1, 0, 0, 0},
                        {"Util", 3, 1, 0, 0, 0, 2, 1, 0, 0, 0}};
    for (size_t i = 0; i < s.classes.size(); ++i) {
        auto v = class_metrics(s.classes[i], s);
        const Row& r = rows[i];
        auto check = [&](const char* metric, double want) {
            c.require(v.at(metric) == want, std::string(r.name) + " " + metric);
        };
        check("WMC", r.wmc);
        check("LCOM", r.lcom);
        check("CBO", r.cbo);
        check("DIT", r.dit);
        check("NOC", r.noc);
        check("NOM", r.nom);
        check("DAM", r.dam);
        check("MOA", r.moa);
        check("NOP", r.nop);
        check("NOS", r.nos);
    }
    c.require(system_metrics(s).at("DSC") == 6, "DSC");

    // Brute-force LCOM/CBO agreement on randomized fixtures of <= 5 classes.
    std::mt19937 rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        SystemSnapshot r;
        int nc = 1 + rng() % 5;
        for (int i = 0; i < nc; ++i) {
            auto cls = fixture_class("C" + std::to_string(i));
            int nm = rng() % 6;
            for (int j = 0; j < nm; ++j) {
                std::vector<std::string> acc;
                while (rng() % 3) acc.push_back("f" + std::to_string(rng() % 4));
                auto m = fixture_method("m" + std::to_string(j), 1, acc);
                if (rng() % 3 == 0)
                    m.invoked_targets = {{"C" + std::to_string(rng() % 5), "m0"}};
                cls.methods.push_back(m);
            }
            if (rng() % 2)
                cls.data_members.push_back({"d", "C" + std::to_string(rng() % 5),
                                            DataKind::UserDefined, Visibility::Private, false,
                                            false});
            r.classes.push_back(cls);
        }
        for (const auto& cls : r.classes) {
            auto v = class_metrics(cls, r);
            c.require(v.at("LCOM") == double(lcom_brute_force(cls)), "brute-force LCOM");
            c.require(v.at("CBO") == double(cbo_brute_force(cls, r)), "brute-force CBO");
        }
    }
}

// --------------------------------------------------------------------- 7

void criterion_7() {
    Criterion c{7, "decision-point complexity equals e-n+2p on 20 hand-drawn control-flow graphs"};
    // Each fixture lists the node and edge count of its flow graph, drawn by
    // hand with one entry and one exit; p = 1 throughout, so the expected
    // complexity is edges - nodes + 2.
    struct Fixture {
        const char* body;
        int nodes, edges;
    };
    const Fixture fixtures[] = {
        // 1: single basic block.
        {"x = 1; y = 2;", 1, 0},
        // 2: if without else: cond, then, join.
        {"if (a) { x = 1; } y = 2;", 3, 3},
        // 3: if/else: cond, then, else, join.
        {"if (a) { x = 1; } else { x = 2; }", 4, 4},
        // 4: while: cond, body, exit.
        {"while (a) { x = x - 1; }", 3, 3},
        // 5: two sequential ifs: cond1, then1, cond2, then2, join2.
        {"if (a) { x = 1; } if (b) { y = 1; }", 5, 6},
        // 6: nested if: cond1, cond2, then, inner join, outer join.
        {"if (a) { if (b) { x = 1; } y = 2; } z = 3;", 5, 6},
        // 7: if then while: cond1, then, join, loop cond, loop body, exit.
        {"if (a) { x = 1; } while (b) { y = y + 1; }", 6, 7},
        // 8: for behaves as while: cond, body+inc, exit.
        {"for (i = 0; i < n; i = i + 1) { s = s + i; }", 3, 3},
        // 9: do-while: body, cond, exit.
        {"do { x = x - 1; } while (x);", 3, 3},
        // 10: switch, three cases, no default: head, 3 arms, exit.
        {"switch (k) { case 1: a(); break; case 2: b(); break; case 3: c(); break; }", 5, 7},
        // 11: ternary: cond, value1, value2, join.
        {"x = a ? 1 : 2;", 4, 4},
        // 12: short-circuit and: test a, test b, then, join.
        {"if (a && b) { x = 1; }", 4, 5},
        // 13: short-circuit or: test a, test b, then, join.
        {"if (a || b) { x = 1; }", 4, 5},
        // 14: while with conjunctive guard: test a, test b, body, exit.
        {"while (a && b) { x = x - 1; }", 4, 5},
        // 15: try/catch: protected block, handler, join.
        {"try { risky(); } catch (E e) { log(); }", 3, 3},
        // 16: for with an if inside: for cond, if cond, then, increment, exit.
        {"for (i = 0; i < n; i = i + 1) { if (v) { s = s + i; } }", 5, 6},
        // 17: mixed and/or guard: test a, test b, test c, then, join.
        {"if (a && b || c) { x = 1; }", 5, 7},
        // 18: nested whiles: outer cond, inner cond, inner body, exit.
        {"while (a) { while (b) { x = x - 1; } }", 4, 5},
        // 19: switch with an if inside one arm: head, if cond, then, arm join,
        // plain arm, exit.
        {"switch (k) { case 1: if (a) { x = 1; } break; case 2: y = 1; break; }", 6, 8},
        // 20: if/else with a loop in one branch and a ternary in the other:
        // cond, while cond, while body, ternary cond, value1, value2, join.
        {"if (a) { while (b) { s(); } } else { x = c ? 1 : 2; }", 7, 9},
    };
    int index = 0;
    for (const auto& f : fixtures) {
        ++index;
        SourceUnit unit{"fixture" + std::to_string(index), Language::JavaLike, f.body};
        std::int64_t got = cyclomatic(tokenize(unit));
        std::int64_t want = f.edges - f.nodes + 2;
        if (got != want)
            c.problems.push_back("fixture " + std::to_string(index) + ": complexity " +
                                 std::to_string(got) + " but e-n+2p = " + std::to_string(want));
    }
}

// --------------------------------------------------------------------- 8

SystemSnapshot trend_version(bool second) {
    // Five classes, identical between versions except that the second version
    // has one more overriding method, one more cross-class reference from A,
    // and a slightly more cohesive member-access pattern (shared member in
    // each subclass). Every other metric input is byte-for-byte identical.
    SystemSnapshot s;
    s.system_name = "trendy";
    s.version_label = second ? "2" : "1";
    s.total_loc = 500;

    auto make = [&](const std::string& name, bool is_base) {
        ClassInfo c = fixture_class(name, is_base ? "" : "A");
        for (int j = 0; j < 5; ++j) {
            std::vector<std::string> acc = {"f" + std::to_string(j)};
            // m0-m1-m2 share f0 in the second version, cutting each
            // subclass's non-sharing pair surplus by more than 20%.
            if (second && !is_base && (j == 1 || j == 2)) acc = {"f0"};
            auto m = fixture_method("m" + std::to_string(j), 2, acc);
            m.statement_count = 3;
            m.loc = 4;
            c.methods.push_back(m);
        }
        c.data_members = {
            {"f0", "int", DataKind::Primitive, Visibility::Private, false, false}};
        return c;
    };
    auto a = make("A", true);
    a.data_members.push_back(
        {"hub", "B", DataKind::UserDefined, Visibility::Private, false, false});
    auto b = make("B", false), cc = make("C", false), d = make("D", false), e = make("E", false);

    // Version 1: one override in each subclass; version 2 adds a second
    // override in B.
    for (ClassInfo* sub : {&b, &cc, &d, &e}) sub->methods[0].overrides_ancestor = true;
    if (second) b.methods[1].overrides_ancestor = true;

    // Couplings: B->C, C->D, D->E, E->B always; version 2 adds A->C.
    auto couple = [](ClassInfo& from, const std::string& to) {
        from.methods[0].invoked_targets.push_back({to, "m0"});
        from.methods[0].fan_out = distinct_call_fanout(from.methods[0], from.name);
    };
    couple(b, "C");
    couple(cc, "D");
    couple(d, "E");
    couple(e, "B");
    if (second) couple(a, "C");

    s.classes = {a, b, cc, d, e};
    return s;
}

void criterion_8() {
    Criterion c{8, "rising polymorphism/coupling and falling cohesion move the trend as expected"};
    auto v1 = trend_version(false);
    auto v2 = trend_version(true);
    auto m1 = system_metrics(v1);
    auto m2 = system_metrics(v2);

    // The construction must actually move the three attribute metrics by
    // >= 20% while holding the rest fixed.
    c.require(m2.at("NOP") >= 1.2 * m1.at("NOP"), "NOP mean did not rise 20%");
    c.require(m2.at("CBO") >= 1.2 * m1.at("CBO"), "CBO mean did not rise 20%");
    c.require(m2.at("LCOM") <= 0.8 * m1.at("LCOM"), "LCOM mean did not fall 20%");
    for (const char* fixed : {"NOS", "WMC", "NOC", "DAM", "NOM", "MOA", "DIT"})
        c.require(m1.at(fixed) == m2.at(fixed), std::string(fixed) + " moved");

    auto profile = builtin_profiles().at("oo-trend");
    auto normalized = normalize_metrics({m1, m2}, NormalizationScheme::BaselineRatio,
                                        profile.referenced_metrics());
    auto e1 = evaluate(profile, normalized[0]);
    auto e2 = evaluate(profile, normalized[1]);
    c.require(e2.characteristic.at("maintainability") < e1.characteristic.at("maintainability"),
              "maintainability did not strictly decrease");
    c.require(e2.characteristic.at("functionality") > e1.characteristic.at("functionality"),
              "functionality did not strictly increase");
}

// --------------------------------------------------------------------- 9

void criterion_9() {
    Criterion c{9, "signed weight columns sum to 0.02 (maintainability) and 1.01 (functionality)"};
    auto profile = builtin_profiles().at("oo-trend");
    std::map<std::string, double> ones;
    for (const auto& name : known_metric_names()) ones[name] = 1.0;
    auto r = evaluate(profile, ones);
    c.close_to(r.characteristic.at("maintainability"), 0.02, 1e-12, "maintainability column");
    c.close_to(r.characteristic.at("functionality"), 1.01, 1e-12, "functionality column");
}

// -------------------------------------------------------------------- 10

SystemSnapshot ranked_system(const std::string& name, std::vector<MethodInfo> methods) {
    SystemSnapshot s;
    s.system_name = name;
    s.version_label = "1";
    ClassInfo c;
    c.name = "C";
    c.methods = std::move(methods);
    s.classes.push_back(c);
    return s;
}

void criterion_10() {
    Criterion c{10, "risk ranking dominance and the published weighted-sum arithmetic"};
    // 10 LOC, CC 2, isolated: very_low on every attribute.
    auto calm = ranked_system("calm", {synthetic_method(10, 2)});
    // 120 LOC, CC 60, pure efferent coupling: very_high on every attribute.
    auto frantic = ranked_system("frantic", {synthetic_method(120, 60, 3, 0)});
    for (auto sub : {MaintainabilitySub::Changeability, MaintainabilitySub::Analysability}) {
        auto ranked = rank_systems({frantic, calm}, sub);
        c.require(ranked[0].name == "calm", std::string(to_string(sub)) + ": calm not first");
        c.close_to(ranked[0].score, 0.0, 1e-12, std::string(to_string(sub)) + " all-very_low");
        c.close_to(ranked[1].score, 1.0, 1e-12, std::string(to_string(sub)) + " all-very_high");
    }

    // Mixed fixture with attribute penalties 0.2 / 0.5 / 0.4:
    //   volume: 80 LOC in the low band (20-LOC methods), 20 LOC very_low
    //           -> 0.8 * 0.25 = 0.2
    //   complexity: every method CC 15 (moderate) -> 0.5
    //   coupling: 40 LOC at instability 1 (very_high), 60 LOC at 0 -> 0.4
    std::vector<MethodInfo> methods = {
        synthetic_method(20, 15, 1, 0), synthetic_method(20, 15, 1, 0),
        synthetic_method(20, 15), synthetic_method(20, 15),
        synthetic_method(10, 15), synthetic_method(10, 15)};
    auto mixed = ranked_system("mixed", methods);
    auto ranked = rank_systems({mixed, calm}, MaintainabilitySub::Changeability);
    const RankedSystem* m = nullptr;
    for (const auto& r : ranked)
        if (r.name == "mixed") m = &r;
    c.require(m != nullptr, "mixed system missing from ranking");
    if (m) {
        c.close_to(m->volume_penalty, 0.2, 1e-12, "volume penalty");
        c.close_to(m->complexity_penalty, 0.5, 1e-12, "complexity penalty");
        c.close_to(m->coupling_penalty, 0.4, 1e-12, "coupling penalty");
        c.close_to(m->score, 0.47, 1e-12, "changeability score");
    }
}

// -------------------------------------------------------------------- 11

void criterion_11() {
    Criterion c{11, "trend normalization anchors at exactly 1 and ignores uniform scaling"};
    std::mt19937 rng(55);
    std::uniform_real_distribution<double> vdist(0.3, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<EvaluationResult> evals, scaled;
        int n = 2 + rng() % 6;
        for (int i = 0; i < n; ++i) {
            double v = vdist(rng);
            EvaluationResult e;
            e.version_label = std::to_string(i);
            e.characteristic["functionality"] = v;
            evals.push_back(e);
            e.characteristic["functionality"] = v * 7.3;
            scaled.push_back(e);
        }
        auto s = build_series(evals, "functionality");
        auto t = build_series(scaled, "functionality");
        c.require(s.normalized.front() == 1.0, "first value not exactly 1");
        c.require(t.normalized.front() == 1.0, "scaled first value not exactly 1");
        for (size_t i = 0; i < s.normalized.size(); ++i)
            c.close_to(t.normalized[i], s.normalized[i], 1e-12, "scaling changed the series");
    }
}

// -------------------------------------------------------------------- 12

std::string corpus_file(int i, int classes_total) {
    std::ostringstream out;
    out << "package p" << (i / 50) << ";\n\n";
    out << "public class K" << i;
    if (i % 50 != 0) out << " extends K" << (i - 1);
    out << " {\n";
    out << "    private int tally;\n";
    out << "    private int spare;\n";
    out << "    private K" << ((i + 3) % classes_total) << " partner;\n\n";
    for (int j = 0; j < 5; ++j) {
        out << "    public int m" << j << "(int x) {\n";
        if (j < 2)
            out << "        tally = tally + x;\n";
        else if (j == 2)
            out << "        spare = spare + x;\n";
        out << "        if (x > " << j << ") {\n";
        out << "            x = x - 1;\n";
        out << "        }\n";
        // Only the first two methods touch the partner, so each class keeps
        // some non-sharing method pairs (nonzero lack of cohesion).
        if (j < 2) out << "        partner.m0(x);\n";
        for (int k = 0; k < 10; ++k) out << "        x = x + " << k << ";\n";
        out << "        return x;\n";
        out << "    }\n";
    }
    out << "}\n";
    return out.str();
}

std::string run_pipeline(const std::vector<std::string>& sources, std::string& score_out) {
    std::vector<SystemSnapshot> fragments;
    std::vector<ExtractionWarning> warnings;
    for (size_t i = 0; i < sources.size(); ++i) {
        SourceUnit unit{"K" + std::to_string(i) + ".java", Language::JavaLike, sources[i]};
        auto r = extract_unit(unit);
        r.fragment.system_name = "corpus";
        r.fragment.version_label = "1";
        fragments.push_back(std::move(r.fragment));
    }
    SystemSnapshot merged = merge(fragments);
    SystemSnapshot resolved = resolve_couplings(merged, &warnings);

    auto profile = builtin_profiles().at("oo-trend");
    auto metrics = system_metrics(resolved);
    auto normalized = normalize_metrics({metrics}, NormalizationScheme::BaselineRatio,
                                        profile.referenced_metrics());
    auto evaluation = evaluate(profile, normalized[0]);
    ReportTable t;
    t.title = "characteristics";
    t.headers = {"characteristic", "value"};
    for (const auto& [name, v] : evaluation.characteristic)
        t.rows.push_back({name, format_number(v)});
    score_out = render(t, OutputFormat::Csv);
    return serialize(resolved);
}

void criterion_12() {
    Criterion c{12, "100 KLOC corpus extracts and scores in < 10 s with byte-identical output"};
    const int files = 1000;
    std::vector<std::string> sources;
    std::int64_t total_lines = 0;
    for (int i = 0; i < files; ++i) {
        sources.push_back(corpus_file(i, files));
        for (char ch : sources.back())
            if (ch == '\n') ++total_lines;
    }
    c.require(total_lines >= 90000 && total_lines <= 120000,
              "corpus is not ~100 KLOC (" + std::to_string(total_lines) + " lines)");

    auto start = Clock::now();
    std::string score1, score2;
    std::string model1 = run_pipeline(sources, score1);
    double elapsed = seconds_since(start);
    std::string model2 = run_pipeline(sources, score2);

    c.require(elapsed < 10.0,
              "pipeline took " + std::to_string(elapsed) + " s (budget 10 s)");
    c.require(model1 == model2, "serialized snapshots differ between runs");
    c.require(score1 == score2, "score reports differ between runs");
    c.require(!model1.empty() && !score1.empty(), "pipeline produced no output");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 12 criteria passed\n");
    return 0;
}
