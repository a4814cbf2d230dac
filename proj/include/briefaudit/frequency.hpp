#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

namespace briefaudit {

/// Token -> frequency rank (1 = most frequent). Unknown tokens rank at
/// infinity, represented as std::nullopt.
class FrequencyTable {
 public:
  FrequencyTable() = default;
  FrequencyTable(std::unordered_map<std::string, std::uint32_t> ranks, std::string id);

  /// TSV `token<TAB>rank`, ranks strictly increasing down the file.
  static FrequencyTable parse_tsv(std::string_view tsv, std::string id);
  static FrequencyTable load(const std::filesystem::path& path);

  /// Exact lookup first; possessive forms ("students'", "model's") fall back
  /// to their stem.
  std::optional<std::uint32_t> rank(std::string_view token) const;

  const std::string& id() const { return id_; }
  std::size_t size() const { return ranks_.size(); }

 private:
  std::unordered_map<std::string, std::uint32_t> ranks_;
  std::string id_;
};

/// Tokens at or below this rank are treated as function words.
inline constexpr std::uint32_t kStopwordRank = 200;
inline constexpr int kDefaultRankThreshold = 20000;

struct RarityCount {
  std::size_t rare = 0;
  std::size_t eligible = 0;
  double ratio() const {
    return eligible == 0 ? 0.0 : static_cast<double>(rare) / static_cast<double>(eligible);
  }
};

/// Share of eligible tokens (not digit-only, not stopword-class) ranked above
/// `rank_threshold` or unknown.
RarityCount rarity_count(std::span<const std::string> tokens, const FrequencyTable& table,
                         int rank_threshold);
double rarity_ratio(std::span<const std::string> tokens, const FrequencyTable& table,
                    int rank_threshold);

/// 64-bit FNV-1a, used for stable content identifiers.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace briefaudit
