#include "briefaudit/dynamic.hpp"

#include <algorithm>
#include <set>

namespace briefaudit {

const std::vector<std::string>& default_verb_list() {
  static const std::vector<std::string> verbs = {
      "analyse", "analyze", "evaluate", "critically evaluate", "discuss", "produce", "design",
      "develop", "create",  "reflect",  "present",  "record",  "compare", "justify", "propose",
  };
  return verbs;
}

namespace {

bool is_word_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || u >= 0x80;
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?' || c == ';' || c == ':'; }

struct VerbEntry {
  std::string text;  // lowercased entry, e.g. "critically evaluate"
  std::string head;  // reported verb, e.g. "evaluate"
};

std::vector<VerbEntry> prepare_verbs(std::span<const std::string> verbs) {
  std::vector<VerbEntry> entries;
  for (const auto& raw : verbs) {
    auto entry = text::ascii_lower(text::trim(raw));
    if (entry.empty()) continue;
    const auto space = entry.rfind(' ');
    entries.push_back({entry, space == std::string::npos ? entry : entry.substr(space + 1)});
  }
  // Longest first so "critically evaluate" wins over "evaluate".
  std::stable_sort(entries.begin(), entries.end(),
                   [](const VerbEntry& a, const VerbEntry& b) { return a.text.size() > b.text.size(); });
  return entries;
}

class Scanner {
 public:
  Scanner(std::string_view body, std::span<const std::size_t> line_starts,
          const std::vector<VerbEntry>& verbs)
      : body_(body), lower_(text::ascii_lower(body)), verbs_(verbs),
        line_starts_(line_starts.begin(), line_starts.end()) {}

  std::vector<Deliverable> run() {
    std::vector<Deliverable> out;
    for (std::size_t p = 0; p < body_.size(); ++p) {
      if (!sentence_start(p) && !coordination_start(p)) continue;
      const VerbEntry* verb = verb_at(p);
      if (verb == nullptr) continue;
      std::size_t object_begin = p + verb->text.size();
      while (object_begin < body_.size() && body_[object_begin] == ' ') ++object_begin;
      const std::size_t object_end = clause_end(object_begin);
      auto object = text::trim(body_.substr(object_begin, object_end - object_begin));
      while (!object.empty() && (object.back() == ',' || is_terminator(object.back()))) object.pop_back();
      object = text::trim(text::truncate_chars(object, kMaxObjectChars, ""));
      if (object.empty() || object_begin >= object_end) continue;
      out.push_back({verb->head, object, {p, object_begin + object.size()}});
    }
    return out;
  }

 private:
  bool is_line_start(std::size_t p) const {
    return std::binary_search(line_starts_.begin(), line_starts_.end(), p);
  }

  bool sentence_start(std::size_t p) const {
    if (p == 0 || is_line_start(p)) return true;
    return p >= 2 && body_[p - 1] == ' ' && is_terminator(body_[p - 2]);
  }

  bool ends_with_word(std::size_t p, std::string_view word) const {
    // body_[..p) ends with " <word> "
    if (p < word.size() + 2) return false;
    if (lower_.compare(p - word.size() - 1, word.size() + 1, std::string(word) + " ") != 0) return false;
    const std::size_t before = p - word.size() - 2;
    return !is_word_byte(lower_[before]);
  }

  bool coordination_start(std::size_t p) const {
    if (p >= 2 && body_[p - 1] == ' ' && body_[p - 2] == ',') return true;
    return ends_with_word(p, "and") || ends_with_word(p, "or") || ends_with_word(p, "then");
  }

  const VerbEntry* verb_at(std::size_t p) const {
    if (p > 0 && is_word_byte(lower_[p - 1])) return nullptr;
    for (const auto& v : verbs_) {
      if (lower_.compare(p, v.text.size(), v.text) != 0) continue;
      const std::size_t end = p + v.text.size();
      if (end < lower_.size() && (is_word_byte(lower_[end]) || lower_[end] == '\'' || lower_[end] == '-')) {
        continue;
      }
      return &v;
    }
    return nullptr;
  }

  // End of the object clause starting at `begin`: the next sentence boundary,
  // or a coordinator that introduces another listed verb.
  std::size_t clause_end(std::size_t begin) const {
    for (std::size_t q = begin; q < body_.size(); ++q) {
      if (q > begin && is_line_start(q)) return q - 1;
      if (is_terminator(body_[q]) && (q + 1 == body_.size() || body_[q + 1] == ' ')) return q;
      if (q > begin && coordination_start(q) && verb_at(q) != nullptr) {
        // Strip the coordinator itself: ", and ", " and ", ", " ...
        std::size_t end = q - 1;
        for (std::string_view word : {"and", "or", "then"}) {
          if (ends_with_word(q, word)) {
            end = q - word.size() - 2;
            break;
          }
        }
        while (end > begin && (body_[end] == ' ' || body_[end] == ',')) --end;
        return end + 1;
      }
    }
    return body_.size();
  }

  std::string_view body_;
  std::string lower_;
  const std::vector<VerbEntry>& verbs_;
  std::vector<std::size_t> line_starts_;
};

}  // namespace

std::vector<Deliverable> find_deliverable_mentions(std::string_view body,
                                                   std::span<const std::size_t> line_starts,
                                                   std::span<const std::string> verbs) {
  const auto entries = prepare_verbs(verbs.empty() ? std::span<const std::string>(default_verb_list()) : verbs);
  return Scanner(body, line_starts, entries).run();
}

std::vector<Deliverable> extract_deliverables(const AssessmentBrief& brief,
                                              std::span<const std::string> verbs) {
  std::vector<Deliverable> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (auto& d : find_deliverable_mentions(brief.body, brief.line_starts, verbs)) {
    if (seen.emplace(d.verb, text::ascii_lower(d.object)).second) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace briefaudit
