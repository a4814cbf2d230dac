#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "briefaudit/elements.hpp"
#include "briefaudit/static_analysis.hpp"

namespace briefaudit {

enum class WeightKind { Uniform, Configured };
std::string_view to_string(WeightKind kind);

struct WeightScheme {
  WeightKind kind = WeightKind::Uniform;
  std::array<double, kElementCount> weights{};

  double operator[](Element e) const { return weights[index_of(e)]; }
};

WeightScheme uniform_weights();

/// Divides every weight by the sum. Keys outside 1..8 are rejected; missing
/// keys read as 0.
WeightScheme normalize_weights(const std::map<int, double>& raw,
                               WeightKind kind = WeightKind::Configured);

inline constexpr double kDefaultSynergyGamma = 0.05;
inline constexpr double kMaxSynergyGamma = 0.2;

struct SynergyPair {
  Element a = Element::Specificity;
  Element b = Element::Process;
  double gamma = kDefaultSynergyGamma;
};

/// Checks distinct members, gamma in [0, 0.2] and unordered-pair uniqueness.
void validate_synergies(std::span<const SynergyPair> pairs);

struct Thresholds {
  double green_below = 40.0;
  double red_at_or_above = 70.0;
  double tolerance = 2.0;
  std::string version = "default";

  void validate() const;
};

enum class TrafficLight { Green, Amber, Red };
std::string_view to_string(TrafficLight light);
std::string to_upper(TrafficLight light);
TrafficLight parse_traffic_light(std::string_view name);

struct Classification {
  TrafficLight light = TrafficLight::Green;
  bool borderline = false;
};

Classification classify(double value, const Thresholds& thresholds);

struct StaticComposite {
  double v_static = 0.0;
  double v_static_adjusted = 0.0;
};

/// v_static = 100 * sum(w_e * v_e); the adjusted value subtracts
/// 100 * gamma * r_a * r_b per synergy pair, clamped to [0, 100].
StaticComposite composite_static(const StaticProfile& profile, const WeightScheme& weights,
                                 std::span<const SynergyPair> synergies);
StaticComposite composite_static(const std::array<double, kElementCount>& vulnerability,
                                 const WeightScheme& weights, std::span<const SynergyPair> synergies);

inline constexpr double kDefaultAlpha = 0.5;
inline constexpr double kDefaultFloorExploit = 0.8;

struct Fusion {
  std::optional<double> v_dynamic;
  double fused = 0.0;
  /// exploit_max reached the floor, so the brief cannot be rated green.
  bool floor_engaged = false;
};

Fusion fuse(double v_static_adjusted, std::optional<double> exploit_max, double alpha = kDefaultAlpha,
            double floor_exploit = kDefaultFloorExploit);

struct CompositeScore {
  double v_static = 0.0;
  double v_static_adjusted = 0.0;
  std::optional<double> v_dynamic;
  double fused = 0.0;
  TrafficLight classification = TrafficLight::Green;
  bool borderline = false;
  bool floor_applied = false;
};

struct ScoringConfig {
  WeightScheme weights = uniform_weights();
  std::vector<SynergyPair> synergies;
  Thresholds thresholds;
  double alpha = kDefaultAlpha;
  double floor_exploit = kDefaultFloorExploit;

  void validate() const;
};

/// Composite, fusion, classification and the green-blocking floor.
CompositeScore score(const StaticProfile& profile, std::optional<double> exploit_max,
                     const ScoringConfig& config);
CompositeScore score_values(const std::array<double, kElementCount>& vulnerability,
                            std::optional<double> exploit_max, const ScoringConfig& config);

}  // namespace briefaudit
