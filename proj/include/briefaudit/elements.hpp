#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace briefaudit {

/// The eight vulnerability elements, numbered 1..8 in catalog order.
enum class Element : int {
  Specificity = 1,
  Temporal = 2,
  Process = 3,
  Personalization = 4,
  Resources = 5,
  Multimodal = 6,
  Ethics = 7,
  Collaboration = 8,
};

inline constexpr std::size_t kElementCount = 8;
inline constexpr std::size_t kDimensionsPerElement = 3;

constexpr int to_int(Element e) { return static_cast<int>(e); }
constexpr std::size_t index_of(Element e) { return static_cast<std::size_t>(to_int(e) - 1); }
std::optional<Element> element_from_int(int value);

enum class AnalyzerKind { Specialized, Keyword };

/// How a sub-dimension's signal is produced.
enum class SignalMethod { Keyword, Rarity, Years };

struct DimensionInfo {
  std::string_view key;
  std::string_view label;
  SignalMethod method;
};

struct ElementInfo {
  Element id;
  std::string_view name;
  std::string_view short_name;
  AnalyzerKind analyzer;
  std::array<DimensionInfo, kDimensionsPerElement> dimensions;
};

const std::array<ElementInfo, kElementCount>& element_catalog();
const ElementInfo& element_info(Element e);

/// Index 0..2 of `key` within the element's dimensions.
std::optional<std::size_t> dimension_index(Element e, std::string_view key);

inline constexpr std::array<Element, kElementCount> kAllElements = {
    Element::Specificity,   Element::Temporal, Element::Process, Element::Personalization,
    Element::Resources,     Element::Multimodal, Element::Ethics, Element::Collaboration,
};

}  // namespace briefaudit
