#include "sqa/risk_profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace sqa {

const char* to_string(RiskLevel level) {
    switch (level) {
        case RiskLevel::VeryLow: return "very_low";
        case RiskLevel::Low: return "low";
        case RiskLevel::Moderate: return "moderate";
        case RiskLevel::High: return "high";
        case RiskLevel::VeryHigh: return "very_high";
    }
    return "very_low";
}

const char* to_string(MaintainabilitySub sub) {
    return sub == MaintainabilitySub::Changeability ? "changeability" : "analysability";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

RiskBandScheme cc_band_scheme() {
    return {"CC",
            BandConvention::IntegerInclusive,
            {{0, 5, RiskLevel::VeryLow},
             {6, 10, RiskLevel::Low},
             {11, 20, RiskLevel::Moderate},
             {21, 50, RiskLevel::High},
             {51, kInf, RiskLevel::VeryHigh}}};
}

RiskBandScheme instability_band_scheme() {
    return {"I",
            BandConvention::HalfOpen,
            {{0.0, 0.2, RiskLevel::VeryLow},
             {0.2, 0.4, RiskLevel::Low},
             {0.4, 0.6, RiskLevel::Moderate},
             {0.6, 0.8, RiskLevel::High},
             {0.8, 1.0, RiskLevel::VeryHigh}}};
}

RiskBandScheme loc_band_scheme() {
    return {"LOC",
            BandConvention::IntegerInclusive,
            {{0, 15, RiskLevel::VeryLow},
             {16, 30, RiskLevel::Low},
             {31, 60, RiskLevel::Moderate},
             {61, 100, RiskLevel::High},
             {101, kInf, RiskLevel::VeryHigh}}};
}

std::vector<std::string> validate_scheme(const RiskBandScheme& scheme) {
    std::vector<std::string> violations;
    if (scheme.bands.empty()) {
        violations.push_back("no bands");
        return violations;
    }
    for (size_t i = 0; i < scheme.bands.size(); ++i) {
        const auto& b = scheme.bands[i];
        if (b.upper < b.lower)
            violations.push_back("band " + std::to_string(i) + " has upper below lower");
        if (i + 1 < scheme.bands.size()) {
            double next_lower = scheme.bands[i + 1].lower;
            double expected = scheme.convention == BandConvention::IntegerInclusive
                                  ? b.upper + 1
                                  : b.upper;
            if (std::abs(next_lower - expected) > 1e-12)
                violations.push_back("gap or overlap between bands " + std::to_string(i) +
                                     " and " + std::to_string(i + 1));
            if (scheme.bands[i + 1].level < b.level)
                violations.push_back("risk level decreases at band " + std::to_string(i + 1));
        }
    }
    return violations;
}

RiskLevel categorize(double value, const RiskBandScheme& scheme) {
    const auto& bands = scheme.bands;
    for (size_t i = 0; i < bands.size(); ++i) {
        bool last = i + 1 == bands.size();
        if (scheme.convention == BandConvention::IntegerInclusive) {
            if (value <= bands[i].upper || last) return bands[i].level;
        } else {
            if (value < bands[i].upper || last) return bands[i].level;
        }
    }
    return bands.back().level;
}

namespace {

double metric_of(const MethodInfo& m, const std::string& metric) {
    if (metric == "CC") return static_cast<double>(m.cyclomatic_complexity);
    if (metric == "LOC") return static_cast<double>(m.loc);
    if (metric == "I") {
        double fo = static_cast<double>(m.fan_out), fi = static_cast<double>(m.fan_in);
        return (fo + fi) == 0.0 ? 0.0 : fo / (fo + fi);
    }
    throw BadBandScheme("no method-level metric named " + metric);
}

}  // namespace

RiskProfile build_profile(const SystemSnapshot& snapshot, const std::string& metric,
                          const RiskBandScheme& scheme) {
    RiskProfile profile;
    profile.metric = metric;
    std::map<RiskLevel, std::int64_t> loc_per_level;
    for (int l = 0; l < kRiskLevelCount; ++l) loc_per_level[static_cast<RiskLevel>(l)] = 0;

    std::int64_t total = 0;
    auto add = [&](const MethodInfo& m) {
        loc_per_level[categorize(metric_of(m, metric), scheme)] += m.loc;
        total += m.loc;
    };
    for (const auto& c : snapshot.classes)
        for (const auto& m : c.methods) add(m);
    for (const auto& f : snapshot.free_functions) add(f);

    if (total == 0)
        throw EmptySystem("no method LOC in system " + snapshot.system_name + " " +
                          snapshot.version_label);
    for (const auto& [level, loc] : loc_per_level)
        profile.loc_percentage[level] =
            100.0 * static_cast<double>(loc) / static_cast<double>(total);
    return profile;
}

double profile_penalty(const RiskProfile& profile) {
    // Linear in band rank: very_low 0, low 0.25, ..., very_high 1.
    double penalty = 0.0;
    for (const auto& [level, pct] : profile.loc_percentage)
        penalty += (static_cast<int>(level) / double(kRiskLevelCount - 1)) * (pct / 100.0);
    return penalty;
}

BandConfig parse_band_config(const std::string& text) {
    BandConfig config;
    std::map<std::string, RiskBandScheme> parsed;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string metric, convention, lower, upper, level;
        if (!(ls >> metric)) continue;
        if (metric[0] == '#') continue;
        if (!(ls >> convention >> lower >> upper >> level))
            throw BadBandScheme("line " + std::to_string(line_no) +
                                ": expected <metric> <convention> <lower> <upper> <level>");
        RiskBandScheme& scheme = parsed[metric];
        scheme.metric = metric;
        if (convention == "integer")
            scheme.convention = BandConvention::IntegerInclusive;
        else if (convention == "half_open")
            scheme.convention = BandConvention::HalfOpen;
        else
            throw BadBandScheme("line " + std::to_string(line_no) + ": unknown convention " +
                                convention);
        RiskBand band;
        band.lower = std::stod(lower);
        band.upper = upper == "inf" ? kInf : std::stod(upper);
        bool found = false;
        for (int l = 0; l < kRiskLevelCount; ++l)
            if (level == to_string(static_cast<RiskLevel>(l))) {
                band.level = static_cast<RiskLevel>(l);
                found = true;
            }
        if (!found)
            throw BadBandScheme("line " + std::to_string(line_no) + ": unknown level " + level);
        scheme.bands.push_back(band);
    }
    for (auto& [metric, scheme] : parsed) {
        auto violations = validate_scheme(scheme);
        if (!violations.empty())
            throw BadBandScheme("bands for " + metric + ": " + violations.front());
        if (metric == "LOC")
            config.loc = scheme;
        else if (metric == "CC")
            config.cc = scheme;
        else if (metric == "I")
            config.instability = scheme;
        else
            throw BadBandScheme("bands given for unknown metric " + metric);
    }
    return config;
}

BandConfig load_band_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadBandScheme("cannot open band file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_band_config(buf.str());
}

std::vector<RankedSystem> rank_systems(const std::vector<SystemSnapshot>& systems,
                                       MaintainabilitySub sub, const BandConfig& config) {
    if (systems.size() < 2)
        throw EmptySystem("ranking needs at least 2 systems, got " +
                          std::to_string(systems.size()));

    // Published attribute weights: volume, complexity, coupling.
    const double wv = sub == MaintainabilitySub::Changeability ? 0.05 : 0.50;
    const double wc = sub == MaintainabilitySub::Changeability ? 0.80 : 0.25;
    const double wi = sub == MaintainabilitySub::Changeability ? 0.15 : 0.25;

    std::vector<RankedSystem> ranking;
    for (const auto& s : systems) {
        RankedSystem r;
        r.name = s.system_name;
        r.volume_penalty = profile_penalty(build_profile(s, "LOC", config.loc));
        r.complexity_penalty = profile_penalty(build_profile(s, "CC", config.cc));
        r.coupling_penalty = profile_penalty(build_profile(s, "I", config.instability));
        r.score = wv * r.volume_penalty + wc * r.complexity_penalty + wi * r.coupling_penalty;
        ranking.push_back(r);
    }
    std::sort(ranking.begin(), ranking.end(), [](const RankedSystem& a, const RankedSystem& b) {
        if (a.score != b.score) return a.score < b.score;
        return a.name < b.name;
    });
    return ranking;
}

}  // namespace sqa
