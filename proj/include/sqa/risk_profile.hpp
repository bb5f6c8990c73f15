#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqa/code_model.hpp"

namespace sqa {

struct EmptySystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadBandScheme : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RiskLevel { VeryLow, Low, Moderate, High, VeryHigh };
const char* to_string(RiskLevel level);
constexpr int kRiskLevelCount = 5;

// Bound handling: IntegerInclusive matches printed integer ranges
// (0-5, 6-10, ...); HalfOpen uses [lo, hi) with the top band closed.
enum class BandConvention { IntegerInclusive, HalfOpen };

struct RiskBand {
    double lower;
    double upper;  // inclusive for IntegerInclusive; exclusive (except top) for HalfOpen
    RiskLevel level;
};

struct RiskBandScheme {
    std::string metric;  // "CC", "I" or "LOC"
    BandConvention convention = BandConvention::IntegerInclusive;
    std::vector<RiskBand> bands;  // ordered, contiguous, covering the range
};

struct RiskProfile {
    std::string metric;
    std::map<RiskLevel, double> loc_percentage;  // per level, 0..100
};

// Default categorizations: complexity and instability as published, plus the
// artifact's LOC-per-method bands for the volume attribute.
RiskBandScheme cc_band_scheme();
RiskBandScheme instability_band_scheme();
RiskBandScheme loc_band_scheme();

std::vector<std::string> validate_scheme(const RiskBandScheme& scheme);

RiskLevel categorize(double value, const RiskBandScheme& scheme);

// LOC-weighted risk distribution over every method (member and free) of the
// snapshot; throws EmptySystem when total method LOC is zero.
RiskProfile build_profile(const SystemSnapshot& snapshot, const std::string& metric,
                          const RiskBandScheme& scheme);

// Linear scalarization of a profile: 0 (all very-low) .. 1 (all very-high).
double profile_penalty(const RiskProfile& profile);

struct BandConfig {
    RiskBandScheme loc = loc_band_scheme();
    RiskBandScheme cc = cc_band_scheme();
    RiskBandScheme instability = instability_band_scheme();
};

// Band scheme configuration file: lines of
//   <metric> <convention> <lower> <upper|inf> <level>
BandConfig load_band_config(const std::string& path);
BandConfig parse_band_config(const std::string& text);

struct RankedSystem {
    std::string name;
    double score;
    double volume_penalty;
    double complexity_penalty;
    double coupling_penalty;
};

enum class MaintainabilitySub { Changeability, Analysability };
const char* to_string(MaintainabilitySub sub);

// Scores each system as the weighted sum of attribute penalties (volume from
// LOC bands, complexity from CC, coupling from I) under the published
// sub-characteristic weights. Lower is better; ties break lexicographically.
std::vector<RankedSystem> rank_systems(const std::vector<SystemSnapshot>& systems,
                                       MaintainabilitySub sub,
                                       const BandConfig& config = BandConfig{});

}  // namespace sqa
