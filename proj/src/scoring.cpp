#include "briefaudit/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "briefaudit/error.hpp"

namespace briefaudit {

std::string_view to_string(WeightKind kind) {
  return kind == WeightKind::Uniform ? "uniform" : "configured";
}

WeightScheme uniform_weights() {
  WeightScheme w;
  w.kind = WeightKind::Uniform;
  w.weights.fill(1.0 / static_cast<double>(kElementCount));
  return w;
}

WeightScheme normalize_weights(const std::map<int, double>& raw, WeightKind kind) {
  WeightScheme w;
  w.kind = kind;
  double sum = 0.0;
  for (const auto& [key, value] : raw) {
    auto e = element_from_int(key);
    if (!e) throw Error(ErrorCode::UnknownElement, "weight for unknown element " + std::to_string(key));
    if (value < 0.0 || std::isnan(value)) {
      throw Error(ErrorCode::NegativeWeight, "weight for element " + std::to_string(key) + " is negative");
    }
    w.weights[index_of(*e)] = value;
  }
  for (double v : w.weights) sum += v;
  if (!(sum > 0.0)) throw Error(ErrorCode::AllZeroWeights, "at least one weight must be positive");
  for (double& v : w.weights) v /= sum;
  return w;
}

void validate_synergies(std::span<const SynergyPair> pairs) {
  std::set<std::pair<int, int>> seen;
  for (const auto& p : pairs) {
    if (p.a == p.b) throw Error(ErrorCode::SchemaError, "synergy pair members must differ");
    if (!(p.gamma >= 0.0 && p.gamma <= kMaxSynergyGamma)) {
      throw Error(ErrorCode::SchemaError, "synergy gamma must be in [0, 0.2]");
    }
    const auto key = std::minmax(to_int(p.a), to_int(p.b));
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::SchemaError, "synergy pair (" + std::to_string(key.first) + "," +
                                              std::to_string(key.second) + ") listed twice");
    }
  }
}

void Thresholds::validate() const {
  if (!(green_below > 0.0 && green_below <= red_at_or_above && red_at_or_above <= 100.0)) {
    throw Error(ErrorCode::SchemaError, "thresholds need 0 < green_below <= red_at_or_above <= 100");
  }
  if (!(tolerance >= 0.0)) throw Error(ErrorCode::SchemaError, "tolerance must be >= 0");
}

std::string_view to_string(TrafficLight light) {
  switch (light) {
    case TrafficLight::Green: return "green";
    case TrafficLight::Amber: return "amber";
    case TrafficLight::Red: return "red";
  }
  return "green";
}

std::string to_upper(TrafficLight light) {
  std::string s(to_string(light));
  for (char& c : s) c = static_cast<char>(c - 'a' + 'A');
  return s;
}

TrafficLight parse_traffic_light(std::string_view name) {
  if (name == "green") return TrafficLight::Green;
  if (name == "amber") return TrafficLight::Amber;
  if (name == "red") return TrafficLight::Red;
  throw Error(ErrorCode::SchemaError, "unknown classification '" + std::string(name) + "'");
}

Classification classify(double value, const Thresholds& t) {
  Classification c;
  if (value < t.green_below) {
    c.light = TrafficLight::Green;
  } else if (value >= t.red_at_or_above) {
    c.light = TrafficLight::Red;
  } else {
    c.light = TrafficLight::Amber;
  }
  c.borderline = std::abs(value - t.green_below) <= t.tolerance ||
                 std::abs(value - t.red_at_or_above) <= t.tolerance;
  return c;
}

StaticComposite composite_static(const std::array<double, kElementCount>& vulnerability,
                                 const WeightScheme& weights, std::span<const SynergyPair> synergies) {
  StaticComposite out;
  double sum = 0.0;
  for (std::size_t i = 0; i < kElementCount; ++i) sum += weights.weights[i] * vulnerability[i];
  out.v_static = std::clamp(100.0 * sum, 0.0, 100.0);
  double reduction = 0.0;
  for (const auto& p : synergies) {
    const double ra = 1.0 - vulnerability[index_of(p.a)];
    const double rb = 1.0 - vulnerability[index_of(p.b)];
    reduction += p.gamma * ra * rb;
  }
  out.v_static_adjusted = std::clamp(out.v_static - 100.0 * reduction, 0.0, 100.0);
  return out;
}

StaticComposite composite_static(const StaticProfile& profile, const WeightScheme& weights,
                                 std::span<const SynergyPair> synergies) {
  return composite_static(profile.vulnerabilities(), weights, synergies);
}

Fusion fuse(double v_static_adjusted, std::optional<double> exploit_max, double alpha,
            double floor_exploit) {
  Fusion f;
  if (!exploit_max) {
    f.fused = v_static_adjusted;
    return f;
  }
  f.v_dynamic = 100.0 * *exploit_max;
  f.fused = std::clamp(alpha * v_static_adjusted + (1.0 - alpha) * *f.v_dynamic, 0.0, 100.0);
  f.floor_engaged = *exploit_max >= floor_exploit;
  return f;
}

void ScoringConfig::validate() const {
  thresholds.validate();
  validate_synergies(synergies);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::SchemaError, "alpha must be in [0,1]");
  if (!(floor_exploit >= 0.0 && floor_exploit <= 1.0)) {
    throw Error(ErrorCode::SchemaError, "floor_exploit must be in [0,1]");
  }
}

CompositeScore score_values(const std::array<double, kElementCount>& vulnerability,
                            std::optional<double> exploit_max, const ScoringConfig& config) {
  const auto composite = composite_static(vulnerability, config.weights, config.synergies);
  const auto fusion = fuse(composite.v_static_adjusted, exploit_max, config.alpha, config.floor_exploit);
  const auto cls = classify(fusion.fused, config.thresholds);

  CompositeScore s;
  s.v_static = composite.v_static;
  s.v_static_adjusted = composite.v_static_adjusted;
  s.v_dynamic = fusion.v_dynamic;
  s.fused = fusion.fused;
  s.classification = cls.light;
  s.borderline = cls.borderline;
  if (fusion.floor_engaged && cls.light == TrafficLight::Green) {
    s.classification = TrafficLight::Amber;
    s.floor_applied = true;
  }
  return s;
}

CompositeScore score(const StaticProfile& profile, std::optional<double> exploit_max,
                     const ScoringConfig& config) {
  return score_values(profile.vulnerabilities(), exploit_max, config);
}

}  // namespace briefaudit
