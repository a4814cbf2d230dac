#include "briefaudit/elements.hpp"

namespace briefaudit {

namespace {

using enum SignalMethod;

constexpr std::array<ElementInfo, kElementCount> kCatalog = {{
    {Element::Specificity, "Specificity & Contextualization", "Specificity", AnalyzerKind::Specialized,
     {{{"topical", "Topical specificity", Rarity},
       {"contextual", "Contextual specificity", Keyword},
       {"analytical", "Analytical specificity", Keyword}}}},
    {Element::Temporal, "Temporal Relevance", "Temporal", AnalyzerKind::Specialized,
     {{{"reference", "Reference recency", Years},
       {"event", "Event recency", Keyword},
       {"analytical", "Analytical recency", Keyword}}}},
    {Element::Process, "Process Visibility", "Process", AnalyzerKind::Keyword,
     {{{"developmental", "Developmental visibility", Keyword},
       {"justificatory", "Justificatory visibility", Keyword},
       {"reflective", "Reflective visibility", Keyword}}}},
    {Element::Personalization, "Personalization", "Personalization", AnalyzerKind::Keyword,
     {{{"experiential", "Experiential personalization", Keyword},
       {"reflective", "Reflective personalization", Keyword},
       {"applicative", "Applicative personalization", Keyword}}}},
    {Element::Resources, "Resource Accessibility", "Resources", AnalyzerKind::Keyword,
     {{{"exclusivity", "Exclusivity", Keyword},
       {"specificity", "Specificity", Keyword},
       {"format_diversity", "Format diversity", Keyword}}}},
    {Element::Multimodal, "Multimodal Integration", "Multimodal", AnalyzerKind::Keyword,
     {{{"cross_modal", "Cross-modal interpretation", Keyword},
       {"synthesis", "Synthesis", Keyword},
       {"translation", "Representational translation", Keyword}}}},
    {Element::Ethics, "Ethical Reasoning", "Ethics", AnalyzerKind::Keyword,
     {{{"identification", "Identification", Keyword},
       {"analysis", "Analysis", Keyword},
       {"resolution", "Resolution of dilemmas", Keyword}}}},
    {Element::Collaboration, "Collaborative Elements", "Collaboration", AnalyzerKind::Keyword,
     {{{"interactive", "Interactive collaboration", Keyword},
       {"integrative", "Integrative collaboration", Keyword},
       {"negotiated", "Negotiated collaboration", Keyword}}}},
}};

}  // namespace

std::optional<Element> element_from_int(int value) {
  if (value < 1 || value > static_cast<int>(kElementCount)) return std::nullopt;
  return static_cast<Element>(value);
}

const std::array<ElementInfo, kElementCount>& element_catalog() { return kCatalog; }

const ElementInfo& element_info(Element e) { return kCatalog[index_of(e)]; }

std::optional<std::size_t> dimension_index(Element e, std::string_view key) {
  const auto& dims = element_info(e).dimensions;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i].key == key) return i;
  }
  return std::nullopt;
}

}  // namespace briefaudit
