#include "gemframe/segmenter.h"

#include <string>

#include "gemframe/doc_model.h"
#include "gemframe/error.h"
#include "gemframe/lexicon.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace gemframe {
namespace {

using testing::Find;

std::vector<Segment> Segments(const std::string& text,
                              const MarkerLexicon& lexicon = DefaultLexicon()) {
  Document doc = ParseDocument(text, "t");
  return SegmentDocument(doc, lexicon);
}

bool HasClass(const Segment& s, MarkerClass c) {
  for (const MarkerHit& hit : s.hits) {
    if (hit.marker_class == c) return true;
  }
  return false;
}

TEST(ClassifyUnitsTest, DeonticSentenceIsRecommendation) {
  const std::string text = "Il est recommandé de vacciner.";
  auto segments = Segments(text);
  ASSERT_EQ(segments.size(), 1u);
  EXPECT_EQ(segments[0].kind, SegmentKind::kRecommendation);
  EXPECT_EQ(segments[0].span, (Span{0, text.size()}));
  EXPECT_EQ(segments[0].position, IntroducerPosition::kNotApplicable);
  EXPECT_EQ(segments[0].id, "r0-" + std::to_string(text.size()));
}

TEST(ClassifyUnitsTest, TitleWithConfiguredDomainTerm) {
  MarkerLexicon lexicon =
      LoadLexicon("domain_terms:\n  hypertension artérielle\n");
  const std::string text = "# Hypertension artérielle";
  auto segments = Segments(text, lexicon);
  ASSERT_EQ(segments.size(), 1u);
  EXPECT_EQ(segments[0].kind, SegmentKind::kCondition);
  EXPECT_EQ(segments[0].position, IntroducerPosition::kTitle);
  EXPECT_EQ(segments[0].span, Find(text, "Hypertension artérielle"));
  EXPECT_TRUE(HasClass(segments[0], MarkerClass::kDomainTerm));
  EXPECT_TRUE(Segments(text).empty());
}

TEST(ClassifyUnitsTest, DetachedPrefixSplit) {
  const std::string text = "En cas de fièvre, il est nécessaire de consulter.";
  auto segments = Segments(text);
  ASSERT_EQ(segments.size(), 2u);
  EXPECT_EQ(segments[0].kind, SegmentKind::kCondition);
  EXPECT_EQ(segments[0].span, Find(text, "En cas de fièvre,"));
  EXPECT_EQ(segments[0].position, IntroducerPosition::kDetached);
  EXPECT_EQ(segments[1].kind, SegmentKind::kRecommendation);
  EXPECT_EQ(segments[1].span, Find(text, "il est nécessaire de consulter."));
}

TEST(ClassifyUnitsTest, TitleNeverYieldsRecommendation) {
  auto segments = Segments("# Il est recommandé de lire");
  EXPECT_TRUE(segments.empty());
}

TEST(ClassifyUnitsTest, UnmarkedSentencesYieldNothing) {
  EXPECT_TRUE(Segments("Le patient est vu. La fièvre baisse.").empty());
}

TEST(ClassifyUnitsTest, EnumIntroCondition) {
  const std::string text = "Si le patient est âgé :\n- surveiller\n- peser";
  auto segments = Segments(text);
  ASSERT_EQ(segments.size(), 1u);
  EXPECT_EQ(segments[0].position, IntroducerPosition::kEnumIntro);
  EXPECT_EQ(segments[0].span, Find(text, "Si le patient est âgé :"));
}

TEST(ClassifyUnitsTest, OnlyFirstTriggerCounts) {
  const std::string text =
      "Si la fièvre persiste et si la toux dure, il faut consulter.";
  auto segments = Segments(text);
  ASSERT_EQ(segments.size(), 2u);
  EXPECT_EQ(segments[0].span,
            Find(text, "Si la fièvre persiste et si la toux dure,"));
}

TEST(ClassifyUnitsTest, MidSentenceTriggerWithDelimiterSplits) {
  const std::string text =
      "Le traitement, lorsque la fièvre persiste, doit être arrêté.";
  auto segments = Segments(text);
  ASSERT_EQ(segments.size(), 2u);
  EXPECT_EQ(segments[0].span,
            Find(text, "Le traitement, lorsque la fièvre persiste,"));
  EXPECT_EQ(segments[0].position, IntroducerPosition::kIntegrated);
  EXPECT_EQ(segments[1].span, Find(text, "doit être arrêté."));
}

TEST(ClassifyUnitsTest, IntegratedWithoutSplitCoversSentence) {
  const std::string text = "Un traitement est indiqué si la fièvre persiste.";
  auto segments = Segments(text);
  ASSERT_EQ(segments.size(), 2u);
  EXPECT_EQ(segments[0].kind, SegmentKind::kCondition);
  EXPECT_EQ(segments[1].kind, SegmentKind::kRecommendation);
  EXPECT_EQ(segments[0].span, segments[1].span);
  EXPECT_EQ(segments[0].position, IntroducerPosition::kIntegrated);
}

TEST(ClassifyUnitsTest, JustificationAndDeonticIsRecommendation) {
  auto segments = Segments("En effet, il faut surveiller la kaliémie.");
  ASSERT_EQ(segments.size(), 1u);
  EXPECT_EQ(segments[0].kind, SegmentKind::kRecommendation);
}

TEST(ClassifyUnitsTest, NegatedDeonticIsRecommendation) {
  auto segments = Segments("Il n'est pas recommandé de traiter.");
  ASSERT_EQ(segments.size(), 1u);
  EXPECT_EQ(segments[0].kind, SegmentKind::kRecommendation);
}

TEST(ClassifyPositionTest, Cases) {
  {
    const std::string text = "En cas de diabète, surveiller la glycémie.";
    Document doc = ParseDocument(text, "t");
    auto candidates = ClassifyUnits(doc, DefaultLexicon());
    ASSERT_EQ(candidates.size(), 1u);
    EXPECT_EQ(ClassifyPosition(candidates[0], doc),
              IntroducerPosition::kDetached);
  }
  {
    const std::string text = "Un traitement est indiqué si la fièvre persiste.";
    Document doc = ParseDocument(text, "t");
    for (const Segment& c : ClassifyUnits(doc, DefaultLexicon())) {
      if (c.kind != SegmentKind::kCondition) continue;
      EXPECT_EQ(ClassifyPosition(c, doc), IntroducerPosition::kIntegrated);
    }
  }
  {
    Document doc = ParseDocument("# Chez l'enfant\n\nTexte.", "t");
    auto candidates = ClassifyUnits(doc, DefaultLexicon());
    ASSERT_EQ(candidates.size(), 1u);
    EXPECT_EQ(ClassifyPosition(candidates[0], doc), IntroducerPosition::kTitle);
  }
  {
    Document doc = ParseDocument("Si la fièvre persiste il faut traiter.", "t");
    for (const Segment& c : ClassifyUnits(doc, DefaultLexicon())) {
      if (c.kind != SegmentKind::kCondition) continue;
      EXPECT_EQ(ClassifyPosition(c, doc), IntroducerPosition::kIntegrated);
    }
  }
}

TEST(ExtendSegmentsTest, MergesFollowingUnmarkedSentence) {
  const std::string text = "Il faut traiter. La durée est de sept jours.";
  auto segments = Segments(text);
  ASSERT_EQ(segments.size(), 1u);
  EXPECT_EQ(segments[0].span, (Span{0, text.size()}));
}

TEST(ExtendSegmentsTest, RecommendationAtBlockEndUnchanged) {
  const std::string text = "Il faut traiter.\n\nLa durée est de sept jours.";
  auto segments = Segments(text);
  ASSERT_EQ(segments.size(), 1u);
  EXPECT_EQ(segments[0].span, Find(text, "Il faut traiter."));
}

TEST(ExtendSegmentsTest, StopsAtConditionSentence) {
  const std::string text =
      "Il faut traiter. Si la fièvre persiste, on hospitalise.";
  auto segments = Segments(text);
  ASSERT_EQ(segments.size(), 2u);
  EXPECT_EQ(segments[0].span, Find(text, "Il faut traiter."));
  EXPECT_EQ(segments[1].kind, SegmentKind::kCondition);
}

TEST(ExtendSegmentsTest, StopsAtAnyMarker) {
  const std::string text = "Il faut traiter. Cependant la durée est courte.";
  auto segments = Segments(text);
  ASSERT_EQ(segments.size(), 1u);
  EXPECT_EQ(segments[0].span, Find(text, "Il faut traiter."));
}

TEST(ExtendSegmentsTest, DoesNotCrossEnumerationItems) {
  const std::string text =
      "Liste :\n- il faut traiter.\n- La durée est courte.";
  auto segments = Segments(text);
  ASSERT_EQ(segments.size(), 1u);
  EXPECT_EQ(segments[0].span, Find(text, "il faut traiter."));
}

TEST(ExtendSegmentsTest, ConditionsNeverExtended) {
  const std::string text = "Si besoin, on verra. La suite est neutre.";
  auto segments = Segments(text);
  ASSERT_EQ(segments.size(), 1u);
  EXPECT_EQ(segments[0].span, Find(text, "Si besoin,"));
}

TEST(ExtendSegmentsTest, SortedConditionFirst) {
  auto segments = Segments("Un traitement est indiqué si la fièvre persiste.");
  ASSERT_EQ(segments.size(), 2u);
  EXPECT_EQ(segments[0].kind, SegmentKind::kCondition);
}

TEST(ExtendSegmentsTest, SameKindOverlapIsInvariantError) {
  Document doc = ParseDocument("Il faut traiter. Il faut agir.", "t");
  std::vector<Segment> candidates = ClassifyUnits(doc, DefaultLexicon());
  ASSERT_EQ(candidates.size(), 2u);
  candidates[1].span.start = 3;
  EXPECT_THROW(ExtendSegments(candidates, doc, DefaultLexicon()),
               InvariantError);
}

TEST(SegmenterTest, HitInvariants) {
  const std::string text =
      "# Insuffisance rénale\n\nEn cas de fièvre, il est nécessaire de "
      "consulter. Le suivi est mensuel.\n\nLorsque la dose est élevée :\n- "
      "il faut réduire ;\n- chez l'enfant, le sirop est préférable.";
  auto segments = Segments(text);
  ASSERT_FALSE(segments.empty());
  for (const Segment& s : segments) {
    if (s.kind == SegmentKind::kCondition) {
      EXPECT_NE(s.position, IntroducerPosition::kNotApplicable);
      EXPECT_TRUE(HasClass(s, MarkerClass::kConditionTrigger) ||
                  HasClass(s, MarkerClass::kDomainTerm))
          << s.id;
    } else {
      EXPECT_TRUE(HasClass(s, MarkerClass::kDeonticVerb) ||
                  HasClass(s, MarkerClass::kDeonticAdjective))
          << s.id;
    }
  }
}

TEST(SegmenterTest, Deterministic) {
  const std::string text =
      "Si besoin, il faut traiter. Suite.\n\nIl faut agir.";
  EXPECT_EQ(Segments(text), Segments(text));
}

TEST(SegmenterTest, KindNames) {
  EXPECT_EQ(SegmentKindName(SegmentKind::kCondition), "condition");
  EXPECT_EQ(ParseSegmentKind("recommendation"),
            std::optional<SegmentKind>(SegmentKind::kRecommendation));
  EXPECT_FALSE(ParseSegmentKind("other").has_value());
  for (auto p :
       {IntroducerPosition::kTitle, IntroducerPosition::kEnumIntro,
        IntroducerPosition::kDetached, IntroducerPosition::kIntegrated}) {
    EXPECT_EQ(ParsePosition(PositionName(p)), std::optional(p));
  }
}

}  // namespace
}  // namespace gemframe
