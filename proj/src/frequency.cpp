#include "briefaudit/frequency.hpp"

#include <charconv>
#include <cstdio>

#include "briefaudit/corpus.hpp"
#include "briefaudit/error.hpp"
#include "briefaudit/text.hpp"

namespace briefaudit {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

FrequencyTable::FrequencyTable(std::unordered_map<std::string, std::uint32_t> ranks, std::string id)
    : ranks_(std::move(ranks)), id_(std::move(id)) {}

FrequencyTable FrequencyTable::parse_tsv(std::string_view tsv, std::string id) {
  std::unordered_map<std::string, std::uint32_t> ranks;
  ranks.reserve(tsv.size() / 12);
  std::uint32_t previous = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < tsv.size()) {
    auto end = tsv.find('\n', pos);
    if (end == std::string_view::npos) end = tsv.size();
    auto line = tsv.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    auto fail = [&](const char* why) {
      throw Error(ErrorCode::SchemaError,
                  "frequency table line " + std::to_string(line_no) + ": " + why);
    };
    if (tab == std::string_view::npos || tab == 0) fail("expected token<TAB>rank");
    std::uint32_t rank = 0;
    const auto digits = line.substr(tab + 1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), rank);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || rank == 0) {
      fail("rank must be a positive integer");
    }
    if (rank <= previous) fail("ranks must be strictly increasing");
    previous = rank;
    ranks.emplace(text::ascii_lower(line.substr(0, tab)), rank);
  }
  return FrequencyTable(std::move(ranks), std::move(id));
}

FrequencyTable FrequencyTable::load(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return parse_tsv(bytes, path.filename().string() + ":" + hash);
}

std::optional<std::uint32_t> FrequencyTable::rank(std::string_view token) const {
  if (auto it = ranks_.find(std::string(token)); it != ranks_.end()) return it->second;
  std::string_view stem = token;
  if (stem.ends_with("'s")) {
    stem.remove_suffix(2);
  } else {
    while (stem.ends_with('\'')) stem.remove_suffix(1);
  }
  if (stem.size() == token.size() || stem.empty()) return std::nullopt;
  if (auto it = ranks_.find(std::string(stem)); it != ranks_.end()) return it->second;
  return std::nullopt;
}

RarityCount rarity_count(std::span<const std::string> tokens, const FrequencyTable& table,
                         int rank_threshold) {
  if (rank_threshold < 1) throw Error(ErrorCode::InvalidArgument, "rank_threshold must be >= 1");
  RarityCount count;
  for (const auto& token : tokens) {
    if (text::is_digits(token)) continue;
    const auto rank = table.rank(token);
    if (rank && *rank <= kStopwordRank) continue;
    ++count.eligible;
    if (!rank || *rank > static_cast<std::uint32_t>(rank_threshold)) ++count.rare;
  }
  return count;
}

double rarity_ratio(std::span<const std::string> tokens, const FrequencyTable& table,
                    int rank_threshold) {
  return rarity_count(tokens, table, rank_threshold).ratio();
}

}  // namespace briefaudit
