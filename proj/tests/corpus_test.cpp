#include <gtest/gtest.h>

#include <fstream>

#include <nlohmann/json.hpp>

#include "briefaudit/corpus.hpp"
#include "briefaudit/error.hpp"
#include "support.hpp"

using namespace briefaudit;
using testsupport::context;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::IoError;
}

void write(const std::filesystem::path& p, std::string_view s) {
  std::ofstream(p, std::ios::binary) << s;
}

}  // namespace

TEST(LoadBrief, MarkdownStripped) {
  auto b = load_brief("## Task\nWrite  an essay.", SourceFormat::Markdown, context());
  EXPECT_EQ(b.body, "Task Write an essay.");
  EXPECT_EQ(b.word_count, 4u);
  EXPECT_EQ(b.line_starts, (std::vector<std::size_t>{0, 5}));
}

TEST(LoadBrief, PlainAlreadyNormalized) {
  auto b = load_brief("Analyse the 2024 dataset.", SourceFormat::Plain, context());
  EXPECT_EQ(b.body, "Analyse the 2024 dataset.");
  EXPECT_EQ(b.word_count, 4u);
  EXPECT_EQ(b.title, "Analyse the 2024 dataset.");
}

TEST(LoadBrief, WhitespaceOnlyIsEmpty) {
  EXPECT_EQ(code_of([] { load_brief("   \n\t", SourceFormat::Plain, context()); }), ErrorCode::EmptyDocument);
  EXPECT_EQ(code_of([] { load_brief("---\n\n***", SourceFormat::Markdown, context()); }), ErrorCode::EmptyDocument);
}

TEST(LoadBrief, RejectsInvalidUtf8) {
  EXPECT_EQ(code_of([] { load_brief("bad \xC3\x28 byte", SourceFormat::Plain, context()); }), ErrorCode::DecodeError);
}

TEST(LoadBrief, RejectsBadId) {
  EXPECT_THROW(load_brief("text", SourceFormat::Plain, context(), "has space"), Error);
}

TEST(LoadBrief, StripsBomAndAppliesNfc) {
  // "e" + combining acute composes to U+00E9.
  auto b = load_brief("\xEF\xBB\xBF" "Cafe\xCC\x81 menu", SourceFormat::Plain, context());
  EXPECT_EQ(b.body, "Caf\xC3\xA9 menu");
}

TEST(LoadBrief, MarkdownStructures) {
  const char* md =
      "# Brief\n"
      "> Quoted **bold** text\n"
      "\n"
      "1. First [link](http://x.example) item\n"
      "- *second* `code` item\n"
      "| a | b |\n"
      "|---|---|\n"
      "```\n"
      "  keep   # this\n"
      "```\n";
  auto b = load_brief(md, SourceFormat::Markdown, context());
  EXPECT_EQ(b.body, "Brief Quoted bold text First link item second code item | a | b | keep # this");
}

TEST(LoadBrief, FormatFromExtension) {
  EXPECT_EQ(format_from_path("a.md"), SourceFormat::Markdown);
  EXPECT_EQ(format_from_path("a.txt"), SourceFormat::Plain);
  EXPECT_EQ(format_from_path("README"), SourceFormat::Plain);
  EXPECT_EQ(code_of([] { format_from_path("a.docx"); }), ErrorCode::UnknownFormat);
  EXPECT_EQ(code_of([] { parse_source_format("pdf"); }), ErrorCode::UnknownFormat);
}

TEST(Normalize, Idempotent) {
  const std::vector<std::string> samples = {
      "## Heading\n\n*  item  one\n* item **two**\n\n> quote\ttabbed",
      "Plain   text with odd spaces.\n\nSecond line",
      "```\ncode ## kept\n```\nafter [a](b)",
      "1) one\n2) two\n\n---\nSetext\n======",
  };
  for (const auto& s : samples) {
    for (auto fmt : {SourceFormat::Plain, SourceFormat::Markdown}) {
      auto once = normalize_text(s, fmt);
      auto twice = normalize_text(once.body, fmt);
      EXPECT_EQ(once.body, twice.body) << s;
    }
  }
}

TEST(LoadBrief, Deterministic) {
  const std::string src = "# T\nDiscuss the 2024 report and reflect on it.";
  EXPECT_EQ(load_brief(src, SourceFormat::Markdown, context()), load_brief(src, SourceFormat::Markdown, context()));
}

TEST(Context, ParsesAndOverlays) {
  testsupport::TempDir dir;
  write(dir.path / "notes.txt", "Resource text.");
  auto ctx = parse_context(nlohmann::json::parse(R"({
    "course_code": "MKT101", "delivery_date": "2024-09-01", "knowledge_cutoff": "2023-12-31",
    "provided_resources": [{"label": "Notes", "path": "notes.txt"}, {"label": "Bare"}],
    "discipline_lexicon": ["price index"]})"),
                           dir.path);
  EXPECT_EQ(ctx.course_code, "MKT101");
  ASSERT_EQ(ctx.provided_resources.size(), 2u);
  EXPECT_EQ(ctx.provided_resources[0].body, "Resource text.");
  EXPECT_FALSE(ctx.provided_resources[1].body.has_value());
  EXPECT_FALSE(ctx.temporal_analysis_vacuous());

  auto over = overlay_context(ctx, nlohmann::json::parse(R"({"knowledge_cutoff": "2025-01-01"})"));
  EXPECT_EQ(over.knowledge_cutoff, Date::parse("2025-01-01"));
  EXPECT_EQ(over.course_code, "MKT101");
  EXPECT_TRUE(over.temporal_analysis_vacuous());

  EXPECT_EQ(code_of([] { parse_context(nlohmann::json::parse(R"({"course_code": "X"})")); }), ErrorCode::SchemaError);
  EXPECT_EQ(code_of([] { parse_context(nlohmann::json::parse(R"({"knowledge_cutoff": "2023-02-30"})")); }),
            ErrorCode::SchemaError);
}

class ManifestTest : public ::testing::Test {
 protected:
  testsupport::TempDir dir;
  void SetUp() override {
    write(dir.path / "a.txt", "Discuss the first topic.");
    write(dir.path / "b.md", "# Second\nDiscuss the second topic.");
  }
};

TEST_F(ManifestTest, TwoBriefs) {
  auto m = load_manifest(R"({"version": 1, "shared_context": {"knowledge_cutoff": "2023-12-31"},
    "briefs": [{"id": "A1", "title": "A", "path": "a.txt"}, {"id": "B1", "title": "B", "path": "b.md"}]})",
                         dir.path);
  ASSERT_EQ(m.briefs.size(), 2u);
  EXPECT_EQ(m.briefs[1].path, dir.path / "b.md");
}

TEST_F(ManifestTest, DuplicateId) {
  EXPECT_EQ(code_of([&] {
              load_manifest(R"({"version": 1, "shared_context": {"knowledge_cutoff": "2023-12-31"},
      "briefs": [{"id": "A1", "title": "A", "path": "a.txt"}, {"id": "A1", "title": "B", "path": "b.md"}]})",
                            dir.path);
            }),
            ErrorCode::DuplicateId);
}

TEST_F(ManifestTest, OverrideAppliesToOneBrief) {
  auto m = load_manifest(R"({"version": 1, "shared_context": {"knowledge_cutoff": "2023-12-31"},
    "briefs": [{"id": "A1", "title": "A", "path": "a.txt", "context": {"knowledge_cutoff": "2024-06-30"}},
               {"id": "B1", "title": "B", "path": "b.md"}]})",
                         dir.path);
  EXPECT_EQ(m.briefs[0].context.knowledge_cutoff, Date::parse("2024-06-30"));
  EXPECT_EQ(m.briefs[1].context.knowledge_cutoff, Date::parse("2023-12-31"));
}

TEST_F(ManifestTest, MissingFileAndSchema) {
  EXPECT_EQ(code_of([&] {
              load_manifest(R"({"version": 1, "shared_context": {"knowledge_cutoff": "2023-12-31"},
      "briefs": [{"id": "A1", "title": "A", "path": "nope.txt"}]})",
                            dir.path);
            }),
            ErrorCode::MissingFile);
  EXPECT_EQ(code_of([&] {
              load_manifest(R"({"version": 1, "shared_context": {"knowledge_cutoff": "2023-12-31"}, "briefs": []})",
                            dir.path);
            }),
            ErrorCode::SchemaError);
  EXPECT_EQ(code_of([&] { load_manifest("{not json", dir.path); }), ErrorCode::SchemaError);
  EXPECT_EQ(code_of([&] { load_manifest_file(dir.path / "absent.json"); }), ErrorCode::MissingFile);
}
