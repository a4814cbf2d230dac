#include "briefaudit/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "briefaudit/error.hpp"
#include "briefaudit/text.hpp"

namespace briefaudit {

namespace fs = std::filesystem;
using nlohmann::json;

SourceFormat parse_source_format(std::string_view name) {
  if (name == "plain" || name == "text") return SourceFormat::Plain;
  if (name == "markdown" || name == "md") return SourceFormat::Markdown;
  throw Error(ErrorCode::UnknownFormat, "unknown source format '" + std::string(name) + "'");
}

std::string_view to_string(SourceFormat format) {
  return format == SourceFormat::Markdown ? "markdown" : "plain";
}

SourceFormat format_from_path(const fs::path& path) {
  const auto ext = text::ascii_lower(path.extension().string());
  if (ext == ".md" || ext == ".markdown") return SourceFormat::Markdown;
  if (ext.empty() || ext == ".txt" || ext == ".text") return SourceFormat::Plain;
  throw Error(ErrorCode::UnknownFormat, "cannot infer format from extension '" + ext + "'");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

bool is_space_byte(char c) { return c == ' ' || c == '\t'; }

std::string nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error(ErrorCode::DecodeError, "NFC normalizer unavailable");
  icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  icu::UnicodeString normalized = normalizer->normalize(source, status);
  if (U_FAILURE(status)) throw Error(ErrorCode::DecodeError, "NFC normalization failed");
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      std::string line(text.substr(start, i - start));
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
      start = i + 1;
    }
  }
  return lines;
}

std::string_view ltrim(std::string_view s) {
  while (!s.empty() && is_space_byte(s.front())) s.remove_prefix(1);
  return s;
}

bool is_fence(std::string_view line) {
  line = ltrim(line);
  return line.starts_with("```") || line.starts_with("~~~");
}

// Thematic breaks, setext underlines and table separator rows carry no text.
bool is_decoration_line(std::string_view line) {
  line = ltrim(line);
  if (line.empty()) return false;
  const char first = line.front();
  if (first == '=' || first == '-' || first == '*' || first == '_') {
    std::size_t marks = 0;
    for (char c : line) {
      if (c == first) {
        ++marks;
      } else if (!is_space_byte(c)) {
        return false;
      }
    }
    return first == '=' ? marks >= 1 : marks >= 3;
  }
  if (first == '|' || first == ':') {
    bool dash = false;
    for (char c : line) {
      if (c == '-') {
        dash = true;
      } else if (c != '|' && c != ':' && !is_space_byte(c)) {
        return false;
      }
    }
    return dash;
  }
  return false;
}

// Removes one leading block marker (heading, quote, bullet, ordered item).
bool strip_block_prefix(std::string_view& line) {
  line = ltrim(line);
  if (line.empty()) return false;
  auto followed_by_gap = [&](std::size_t n) {
    return line.size() == n || is_space_byte(line[n]);
  };
  if (line.front() == '#') {
    std::size_t n = 0;
    while (n < line.size() && line[n] == '#') ++n;
    if (n <= 6 && followed_by_gap(n)) {
      line.remove_prefix(n);
      // Closing sequence: "## Title ##".
      auto body = line;
      while (!body.empty() && is_space_byte(body.back())) body.remove_suffix(1);
      std::size_t hashes = 0;
      while (hashes < body.size() && body[body.size() - 1 - hashes] == '#') ++hashes;
      if (hashes > 0 && (hashes == body.size() || is_space_byte(body[body.size() - 1 - hashes]))) {
        body.remove_suffix(hashes);
      }
      line = body;
      return true;
    }
    return false;
  }
  if (line.front() == '>') {
    line.remove_prefix(1);
    return true;
  }
  if ((line.front() == '-' || line.front() == '*' || line.front() == '+') && followed_by_gap(1)) {
    line.remove_prefix(1);
    return true;
  }
  std::size_t digits = 0;
  while (digits < line.size() && digits < 9 && line[digits] >= '0' && line[digits] <= '9') ++digits;
  if (digits > 0 && digits < line.size() && (line[digits] == '.' || line[digits] == ')') &&
      followed_by_gap(digits + 1)) {
    line.remove_prefix(digits + 1);
    return true;
  }
  return false;
}

bool is_punct_or_space(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (u >= 0x80) return false;
  return std::isspace(u) || std::ispunct(u);
}

// `[text](url)` -> `text`, `![alt](url)` -> `alt`; innermost first.
bool strip_links(std::string& s) {
  bool changed = false;
  std::size_t pos = 0;
  while ((pos = s.find("](", pos)) != std::string::npos) {
    const auto open = s.rfind('[', pos);
    const auto close = s.find(')', pos + 2);
    if (open == std::string::npos || close == std::string::npos ||
        s.find_first_of("[]", open + 1) != pos) {
      pos += 2;
      continue;
    }
    const auto url = std::string_view(s).substr(pos + 2, close - pos - 2);
    if (url.find_first_of(" \t()") != std::string_view::npos) {
      pos += 2;
      continue;
    }
    std::string label = s.substr(open + 1, pos - open - 1);
    std::size_t begin = open;
    if (begin > 0 && s[begin - 1] == '!') --begin;
    s.replace(begin, close + 1 - begin, label);
    pos = begin;
    changed = true;
  }
  return changed;
}

// Emphasis / inline-code delimiter runs are removed when they open or close a
// span: touching text on exactly one side. Intraword and free-standing
// markers are kept.
bool strip_emphasis(std::string& s) {
  std::string out;
  out.reserve(s.size());
  bool changed = false;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c != '*' && c != '_' && c != '`') {
      out.push_back(c);
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] == c) ++j;
    const bool before_edge = i == 0 || is_punct_or_space(s[i - 1]);
    const bool after_edge = j == s.size() || is_punct_or_space(s[j]);
    const bool before_space = i == 0 || std::isspace(static_cast<unsigned char>(s[i - 1]));
    const bool after_space = j == s.size() || std::isspace(static_cast<unsigned char>(s[j]));
    const bool opening = before_edge && !after_space;
    const bool closing = after_edge && !before_space;
    if ((opening || closing) && !(before_space && after_space)) {
      changed = true;
    } else {
      out.append(s, i, j - i);
    }
    i = j;
  }
  s = std::move(out);
  return changed;
}

std::string strip_inline(std::string_view line) {
  std::string s(line);
  for (int guard = 0; guard < 16; ++guard) {
    const bool links = strip_links(s);
    const bool emphasis = strip_emphasis(s);
    if (!links && !emphasis) break;
  }
  return s;
}

std::vector<std::string> strip_markdown(const std::vector<std::string>& lines) {
  std::vector<std::string> out;
  bool in_fence = false;
  for (const auto& raw : lines) {
    if (is_fence(raw)) {
      in_fence = !in_fence;
      out.emplace_back();
      continue;
    }
    if (in_fence) {
      out.push_back(raw);
      continue;
    }
    if (is_decoration_line(raw)) {
      out.emplace_back();
      continue;
    }
    std::string line = strip_inline(raw);
    std::string_view view = line;
    for (int guard = 0; guard < 64 && strip_block_prefix(view); ++guard) {
    }
    out.emplace_back(view);
  }
  return out;
}

// Collapses every run of Unicode whitespace to one ASCII space and trims.
std::string collapse_whitespace(std::string_view line) {
  std::string out;
  const auto* s = reinterpret_cast<const uint8_t*>(line.data());
  const auto length = static_cast<int32_t>(line.size());
  int32_t i = 0;
  bool pending_space = false;
  while (i < length) {
    const int32_t start = i;
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    if (c >= 0 && (u_isUWhiteSpace(c) || c == 0)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.append(line.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(i - start)));
  }
  return out;
}

}  // namespace

NormalizedText normalize_text(std::string_view source, SourceFormat format) {
  if (!text::is_valid_utf8(source)) {
    throw Error(ErrorCode::DecodeError, "source is not valid UTF-8");
  }
  if (source.starts_with("\xEF\xBB\xBF")) source.remove_prefix(3);
  auto lines = split_lines(nfc(source));
  if (format == SourceFormat::Markdown) lines = strip_markdown(lines);

  NormalizedText result;
  for (const auto& line : lines) {
    std::string collapsed = collapse_whitespace(line);
    if (collapsed.empty()) continue;
    if (!result.body.empty()) result.body.push_back(' ');
    result.line_starts.push_back(result.body.size());
    result.body += collapsed;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Briefs

bool is_valid_brief_id(std::string_view id) {
  if (id.empty()) return false;
  for (char c : id) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '.' || c == '-';
    if (!ok) return false;
  }
  return true;
}

AssessmentBrief load_brief(std::string_view source, SourceFormat format, CourseContext context,
                           std::string id, std::string title) {
  if (!is_valid_brief_id(id)) {
    throw Error(ErrorCode::SchemaError, "brief id '" + id + "' must match [A-Za-z0-9_.-]+");
  }
  auto normalized = normalize_text(source, format);
  if (normalized.body.empty()) {
    throw Error(ErrorCode::EmptyDocument, "brief '" + id + "' is empty after normalization");
  }
  AssessmentBrief brief;
  brief.id = std::move(id);
  if (title.empty()) {
    const auto end = normalized.line_starts.size() > 1 ? normalized.line_starts[1] - 1
                                                       : normalized.body.size();
    title = text::truncate_chars(std::string_view(normalized.body).substr(0, end), 80);
  }
  brief.title = std::move(title);
  brief.word_count = text::tokenize_spans(normalized.body).size();
  brief.body = std::move(normalized.body);
  brief.line_starts = std::move(normalized.line_starts);
  brief.source_format = format;
  brief.context = std::move(context);
  return brief;
}

namespace {

std::string id_from_path(const fs::path& path) {
  std::string id = path.stem().string();
  for (char& c : id) {
    if (!is_valid_brief_id(std::string_view(&c, 1))) c = '_';
  }
  return id.empty() ? "brief" : id;
}

}  // namespace

AssessmentBrief load_brief_file(const fs::path& path, CourseContext context,
                                std::optional<SourceFormat> format, std::optional<std::string> id,
                                std::optional<std::string> title) {
  const auto fmt = format ? *format : format_from_path(path);
  const auto bytes = read_file(path);
  return load_brief(bytes, fmt, std::move(context), id ? *id : id_from_path(path),
                    title ? *title : std::string{});
}

// ---------------------------------------------------------------------------
// Context and manifest

namespace {

const json& require(const json& object, const char* key, const char* where) {
  if (!object.is_object() || !object.contains(key)) {
    throw Error(ErrorCode::SchemaError, std::string(where) + ": missing key '" + key + "'");
  }
  return object.at(key);
}

std::string require_string(const json& value, const std::string& what) {
  if (!value.is_string()) throw Error(ErrorCode::SchemaError, what + " must be a string");
  return value.get<std::string>();
}

Date parse_date_value(const json& value, const std::string& what) {
  return Date::parse(require_string(value, what));
}

std::vector<ResourceDescriptor> parse_resources(const json& value, const fs::path& base_dir) {
  if (!value.is_array()) throw Error(ErrorCode::SchemaError, "provided_resources must be an array");
  std::vector<ResourceDescriptor> out;
  for (const auto& item : value) {
    if (item.is_string()) {
      out.push_back({item.get<std::string>(), std::nullopt});
      continue;
    }
    ResourceDescriptor r;
    r.label = require_string(require(item, "label", "resource"), "resource label");
    if (item.contains("body")) {
      r.body = require_string(item.at("body"), "resource body");
    } else if (item.contains("path")) {
      fs::path p = require_string(item.at("path"), "resource path");
      if (p.is_relative()) p = base_dir / p;
      r.body = read_file(p);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> parse_string_list(const json& value, const std::string& what) {
  if (!value.is_array()) throw Error(ErrorCode::SchemaError, what + " must be an array");
  std::vector<std::string> out;
  for (const auto& item : value) out.push_back(require_string(item, what + " entry"));
  return out;
}

void apply_context_fields(CourseContext& ctx, const json& object, const fs::path& base_dir) {
  if (!object.is_object()) throw Error(ErrorCode::SchemaError, "context must be an object");
  for (const auto& [key, value] : object.items()) {
    if (key == "course_code") {
      ctx.course_code = value.is_null() ? std::nullopt
                                        : std::optional(require_string(value, "course_code"));
    } else if (key == "delivery_date") {
      ctx.delivery_date = value.is_null() ? std::nullopt
                                          : std::optional(parse_date_value(value, key));
    } else if (key == "knowledge_cutoff") {
      ctx.knowledge_cutoff = parse_date_value(value, key);
    } else if (key == "provided_resources") {
      ctx.provided_resources = parse_resources(value, base_dir);
    } else if (key == "discipline_lexicon") {
      ctx.discipline_lexicon = parse_string_list(value, key);
    } else {
      throw Error(ErrorCode::SchemaError, "unknown context key '" + key + "'");
    }
  }
}

}  // namespace

CourseContext parse_context(const json& object, const fs::path& base_dir) {
  require(object, "knowledge_cutoff", "context");
  CourseContext ctx;
  apply_context_fields(ctx, object, base_dir);
  return ctx;
}

CourseContext overlay_context(const CourseContext& base, const json& overrides,
                              const fs::path& base_dir) {
  CourseContext ctx = base;
  apply_context_fields(ctx, overrides, base_dir);
  return ctx;
}

CorpusManifest load_manifest(std::string_view source, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::SchemaError, "manifest must be a JSON object");

  CorpusManifest manifest;
  const auto& version = require(doc, "version", "manifest");
  if (!version.is_number_integer() || version.get<int>() != 1) {
    throw Error(ErrorCode::SchemaError, "manifest version must be 1");
  }
  manifest.version = 1;
  manifest.shared_context = parse_context(require(doc, "shared_context", "manifest"), base_dir);

  const auto& briefs = require(doc, "briefs", "manifest");
  if (!briefs.is_array() || briefs.empty()) {
    throw Error(ErrorCode::SchemaError, "manifest briefs must be a non-empty array");
  }
  std::set<std::string> seen;
  for (const auto& item : briefs) {
    ManifestEntry entry;
    entry.id = require_string(require(item, "id", "brief"), "brief id");
    if (!is_valid_brief_id(entry.id)) {
      throw Error(ErrorCode::SchemaError, "brief id '" + entry.id + "' must match [A-Za-z0-9_.-]+");
    }
    if (!seen.insert(entry.id).second) {
      throw Error(ErrorCode::DuplicateId, "duplicate brief id '" + entry.id + "'");
    }
    entry.title = item.contains("title") ? require_string(item.at("title"), "brief title") : entry.id;
    entry.path = require_string(require(item, "path", "brief"), "brief path");
    if (entry.path.is_relative()) entry.path = base_dir / entry.path;
    if (!fs::exists(entry.path)) {
      throw Error(ErrorCode::MissingFile, "brief '" + entry.id + "': " + entry.path.string());
    }
    if (item.contains("format")) {
      entry.format = parse_source_format(require_string(item.at("format"), "brief format"));
    }
    entry.context = item.contains("context")
                        ? overlay_context(manifest.shared_context, item.at("context"), base_dir)
                        : manifest.shared_context;
    manifest.briefs.push_back(std::move(entry));
  }
  return manifest;
}

CorpusManifest load_manifest_file(const fs::path& path) {
  return load_manifest(read_file(path), path.parent_path());
}

}  // namespace briefaudit
