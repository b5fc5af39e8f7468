#include "gemframe/evaluator.h"

#include <cmath>
#include <random>
#include <string>

#include "agreement_fixture.h"
#include "gemframe/gem_io.h"
#include "gemframe/pipeline.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "published_tables.h"
#include "test_util.h"

namespace gemframe {
namespace {

using testing::Find;
using L = SentenceLabel;

Segment Seg(SegmentKind kind, Span span) {
  Segment s;
  s.kind = kind;
  s.span = span;
  s.id = SegmentId(kind, span);
  return s;
}

// Kappa from an explicit confusion matrix.
double KappaOracle(const std::vector<L>& a, const std::vector<L>& b) {
  double m[3][3] = {};
  for (size_t i = 0; i < a.size(); ++i) {
    m[static_cast<int>(a[i])][static_cast<int>(b[i])] += 1.0 / a.size();
  }
  double po = 0, pe = 0;
  for (int k = 0; k < 3; ++k) {
    po += m[k][k];
    double row = 0, col = 0;
    for (int j = 0; j < 3; ++j) {
      row += m[k][j];
      col += m[j][k];
    }
    pe += row * col;
  }
  return pe == 1.0 ? 1.0 : (po - pe) / (1 - pe);
}

const std::string kSource =
    "Une phrase de quarante caractères exacte. Deux.  \nTrois quatre.";

TEST(MatchSegmentsTest, IdenticalListsMatchInBothModes) {
  std::vector<Segment> gold = {Seg(SegmentKind::kCondition, {0, 10}),
                               Seg(SegmentKind::kRecommendation, {11, 20})};
  EXPECT_EQ(MatchSegments(gold, gold, MatchMode::kStrict, kSource).size(), 2u);
  EXPECT_EQ(MatchSegments(gold, gold, MatchMode::kLenient, kSource).size(), 2u);
}

TEST(MatchSegmentsTest, TrailingWhitespaceIgnoredInStrictMode) {
  const Span deux = Find(kSource, "Deux.");
  std::vector<Segment> gold = {
      Seg(SegmentKind::kRecommendation, {deux.start, deux.end + 3})};
  std::vector<Segment> system = {Seg(SegmentKind::kRecommendation, deux)};
  EXPECT_EQ(MatchSegments(system, gold, MatchMode::kStrict, kSource).size(),
            1u);
}

TEST(MatchSegmentsTest, SixtyPercentCoverageIsLenientOnly) {
  std::vector<Segment> gold = {Seg(SegmentKind::kCondition, {0, 10})};
  std::vector<Segment> system = {Seg(SegmentKind::kCondition, {0, 6})};
  EXPECT_TRUE(MatchSegments(system, gold, MatchMode::kStrict, kSource).empty());
  EXPECT_EQ(MatchSegments(system, gold, MatchMode::kLenient, kSource).size(),
            1u);
  std::vector<Segment> small = {Seg(SegmentKind::kCondition, {0, 4})};
  EXPECT_TRUE(MatchSegments(small, gold, MatchMode::kLenient, kSource).empty());
}

TEST(MatchSegmentsTest, KindMustAgree) {
  std::vector<Segment> gold = {Seg(SegmentKind::kCondition, {0, 10})};
  std::vector<Segment> system = {Seg(SegmentKind::kRecommendation, {0, 10})};
  EXPECT_TRUE(
      MatchSegments(system, gold, MatchMode::kLenient, kSource).empty());
}

TEST(MatchSegmentsTest, OneToOne) {
  std::vector<Segment> gold = {Seg(SegmentKind::kCondition, {0, 10}),
                               Seg(SegmentKind::kCondition, {0, 10})};
  std::vector<Segment> system = {Seg(SegmentKind::kCondition, {0, 10})};
  EXPECT_EQ(MatchSegments(system, gold, MatchMode::kLenient, kSource).size(),
            1u);
}

TEST(MatchSegmentsTest, PrefersLargestOverlap) {
  std::vector<Segment> gold = {Seg(SegmentKind::kCondition, {0, 10})};
  std::vector<Segment> system = {Seg(SegmentKind::kCondition, {0, 6}),
                                 Seg(SegmentKind::kCondition, {1, 10})};
  auto pairs = MatchSegments(system, gold, MatchMode::kLenient, kSource);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].system, 1u);
}

TEST(ScoresTest, PublishedExamples) {
  Prf prf = ScoresFromCounts({73, 60, 70});
  EXPECT_NEAR(100 * prf.recall, 82.19, 0.01);
  EXPECT_NEAR(100 * prf.precision, 95.89, 0.01);
  // Harmonic mean of the unrounded ratios.
  EXPECT_NEAR(100 * prf.f_measure, 88.52, 0.01);
}

TEST(ScoresTest, AllTableRows) {
  for (const auto& row : testing::kKindRows) {
    Prf prf = ScoresFromCounts({static_cast<size_t>(row.present),
                                static_cast<size_t>(row.found),
                                static_cast<size_t>(row.correct)});
    EXPECT_NEAR(100 * prf.recall, row.printed_recall,
                testing::kTablePointTolerance)
        << row.guideline << " " << row.kind;
    EXPECT_NEAR(100 * prf.precision, row.printed_precision,
                testing::kTablePointTolerance)
        << row.guideline << " " << row.kind;
  }
  for (const auto& row : testing::kAttachmentRows) {
    EXPECT_NEAR(100 * AccuracyFromCounts(row.common_pairs, row.gold_pairs),
                row.printed_accuracy, testing::kTablePointTolerance)
        << row.guideline;
  }
}

TEST(ScoresTest, ZeroPresentIsZero) {
  Prf prf = ScoresFromCounts({0, 0, 0});
  EXPECT_EQ(prf.recall, 0);
  EXPECT_EQ(prf.precision, 0);
  EXPECT_EQ(prf.f_measure, 0);
  EXPECT_EQ(AccuracyFromCounts(0, 0), 0);
}

TEST(ScoresTest, FMeasureIsHarmonicMeanWithinBounds) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unit(0.001, 1.0);
  for (int i = 0; i < 1000; ++i) {
    double r = unit(rng), p = unit(rng);
    double f = FMeasure(r, p);
    EXPECT_NEAR(1 / f, (1 / r + 1 / p) / 2, 1e-9);
    EXPECT_LE(std::min(r, p), f + 1e-12);
    EXPECT_GE(std::max(r, p), f - 1e-12);
  }
}

// Root -> C1 -> C2 -> R1, plus R2 under Root.
ScopeTree NestedTree() {
  ScopeTree tree;
  tree.doc_id = "t";
  tree.root.type = ScopeNode::Type::kRoot;
  ScopeNode r1{
      ScopeNode::Type::kRecommendation, "r30-40", {30, 40}, {}, {}, {}};
  ScopeNode c2{ScopeNode::Type::kCondition,
               "c20-25",
               {20, 25},
               IntroducerPosition::kDetached,
               Frame{"c20-25", {25, 45}, {{RuleId::kR3DetachedParagraph, {}}}},
               {r1}};
  ScopeNode c1{ScopeNode::Type::kCondition,
               "c0-10",
               {0, 10},
               IntroducerPosition::kTitle,
               Frame{"c0-10", {10, 50}, {{RuleId::kR1Title, {}}}},
               {c2}};
  ScopeNode r2{
      ScopeNode::Type::kRecommendation, "r55-60", {55, 60}, {}, {}, {}};
  tree.root.children = {c1, r2};
  return tree;
}

TEST(AttachmentPairsTest, TransitiveClosure) {
  auto pairs = AttachmentPairs(NestedTree());
  std::set<std::pair<std::string, std::string>> expected = {
      {"c0-10", "r30-40"}, {"c20-25", "r30-40"}};
  EXPECT_EQ(pairs, expected);
}

TEST(AttachmentPairsTest, SingleLevelAndRoot) {
  ScopeTree tree = NestedTree();
  tree.root.children[0].children[0].children.clear();
  tree.root.children[0].children.push_back(
      {ScopeNode::Type::kRecommendation, "r46-48", {46, 48}, {}, {}, {}});
  auto pairs = AttachmentPairs(tree);
  EXPECT_EQ(
      pairs,
      (std::set<std::pair<std::string, std::string>>{{"c0-10", "r46-48"}}));
}

TEST(AttachmentAccuracyTest, IdenticalTreesScoreOne) {
  const std::string source(80, 'x');
  EXPECT_EQ(AttachmentAccuracy(NestedTree(), NestedTree(), source), 1.0);
}

TEST(AttachmentAccuracyTest, MissingNestingLosesPair) {
  const std::string source(80, 'x');
  ScopeTree system = NestedTree();
  // Move C2 (with R1) out of C1: only (C2, R1) survives.
  ScopeNode c2 = system.root.children[0].children[0];
  system.root.children[0].children.clear();
  system.root.children.insert(system.root.children.begin() + 1, c2);
  AttachmentCounts counts = CountAttachments(system, NestedTree(), source);
  EXPECT_EQ(counts.gold_pairs, 2u);
  EXPECT_EQ(counts.common_pairs, 1u);
}

TEST(PairwiseAgreementTest, PublishedAgreementFigure) {
  std::string source;
  auto [a, b] = testing::AgreementFixture(&source);
  AgreementCounts counts = CountAgreement(a, b, source);
  EXPECT_EQ(counts.agreeing, 157u);
  EXPECT_EQ(counts.total(), 162u);
  const double agreement = PairwiseAgreement(a, b, source);
  EXPECT_NEAR(agreement, 0.9691, 0.0001);
  EXPECT_EQ(std::floor(agreement * 100) / 100, 0.96);
}

TEST(PairwiseAgreementTest, IdentitySymmetryAndDisjoint) {
  std::string source;
  auto [a, b] = testing::AgreementFixture(&source);
  EXPECT_EQ(PairwiseAgreement(a, a, source), 1.0);
  EXPECT_EQ(PairwiseAgreement(a, b, source), PairwiseAgreement(b, a, source));

  ScopeTree none = b;
  none.root.children.clear();
  for (const ScopeNode& cond : a.root.children) {
    ScopeNode bare = cond;
    bare.children.clear();
    none.root.children.push_back(bare);
    none.root.children.push_back(cond.children[0]);
  }
  EXPECT_EQ(PairwiseAgreement(a, none, source), 0.0);
  const ScopeTree bare_root;
  EXPECT_EQ(PairwiseAgreement(bare_root, bare_root, source), 1.0);
}

TEST(PairwiseAgreementTest, UnalignedLeavesCountAsDisagreement) {
  std::string source;
  auto [a, b] = testing::AgreementFixture(&source);
  ScopeTree fewer = a;
  fewer.root.children.pop_back();
  AgreementCounts counts = CountAgreement(a, fewer, source);
  EXPECT_EQ(counts.unaligned_a, 1u);
  EXPECT_EQ(counts.total(), 162u);
  EXPECT_EQ(counts.agreeing, 161u);
}

TEST(CohenKappaTest, IdenticalNonConstantIsOne) {
  std::vector<L> labels = {L::kCondition, L::kNone, L::kRecommendation};
  EXPECT_EQ(CohenKappa(labels, labels), 1.0);
}

TEST(CohenKappaTest, WorkedExampleFromConfusionMatrix) {
  // p_o = 3/4; marginals (1/2, 1/4, 1/4) and (1/4, 1/2, 1/4) give
  // p_e = 5/16, so kappa = 7/11.
  std::vector<L> a = {L::kCondition, L::kCondition, L::kRecommendation,
                      L::kNone};
  std::vector<L> b = {L::kCondition, L::kRecommendation, L::kRecommendation,
                      L::kNone};
  EXPECT_NEAR(KappaOracle(a, b), 7.0 / 11.0, 1e-12);
  EXPECT_NEAR(CohenKappa(a, b), 7.0 / 11.0, 1e-12);
}

TEST(CohenKappaTest, ExampleWithChanceAgreementThreeEighths) {
  // p_o = 3/4, p_e = 3/8, kappa = 0.6.
  std::vector<L> a = {L::kCondition, L::kCondition, L::kRecommendation,
                      L::kNone};
  std::vector<L> b = {L::kCondition, L::kCondition, L::kRecommendation,
                      L::kRecommendation};
  EXPECT_NEAR(KappaOracle(a, b), 0.6, 1e-12);
  EXPECT_NEAR(CohenKappa(a, b), 0.6, 1e-12);
}

TEST(CohenKappaTest, MatchesOracleAndIsSymmetric) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> label(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<L> a(1 + trial % 17), b(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
      a[i] = static_cast<L>(label(rng));
      b[i] = static_cast<L>(label(rng));
    }
    EXPECT_NEAR(CohenKappa(a, b), KappaOracle(a, b), 1e-9);
    EXPECT_NEAR(CohenKappa(a, b), CohenKappa(b, a), 1e-12);
    EXPECT_GE(CohenKappa(a, b), -1.0);
    EXPECT_LE(CohenKappa(a, b), 1.0);
  }
}

TEST(CohenKappaTest, IndependentLabelingsNearZero) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> label(0, 2);
  std::vector<L> a(100000), b(100000);
  for (size_t i = 0; i < a.size(); ++i) {
    a[i] = static_cast<L>(label(rng));
    b[i] = static_cast<L>(label(rng));
  }
  EXPECT_NEAR(CohenKappa(a, b), 0.0, 0.01);
}

TEST(CohenKappaTest, ConstantAgreementAndErrors) {
  std::vector<L> constant = {L::kNone, L::kNone};
  EXPECT_EQ(CohenKappa(constant, constant), 1.0);
  std::vector<L> empty;
  EXPECT_THROW(CohenKappa(empty, empty), std::invalid_argument);
  std::vector<L> one = {L::kNone};
  EXPECT_THROW(CohenKappa(one, constant), std::invalid_argument);
}

TEST(SentenceLabelsTest, ConditionTakesPrecedence) {
  const std::string text =
      "En cas de fièvre, il faut boire. Rien ici.\n\nIl faut dormir.";
  PipelineResult r = RunPipeline(text, "t", DefaultLexicon());
  auto labels = SentenceLabels(r.tree, r.doc);
  EXPECT_EQ(labels, (std::vector<L>{L::kCondition, L::kRecommendation,
                                    L::kRecommendation}));
}

TEST(EvaluateTest, SelfEvaluationIsAllOnes) {
  const std::string text =
      "# Chez l'enfant\n\nEn cas de fièvre, il faut boire. Rien ici.\n\n"
      "Dans ce cas, il faut dormir.";
  PipelineResult r = RunPipeline(text, "t", DefaultLexicon());
  EvalReport report = Evaluate(r.tree, r.tree, r.doc);
  EXPECT_EQ(report.condition.recall, 1.0);
  EXPECT_EQ(report.condition.precision, 1.0);
  EXPECT_EQ(report.condition.f_measure, 1.0);
  EXPECT_EQ(report.recommendation.recall, 1.0);
  EXPECT_EQ(report.recommendation.precision, 1.0);
  EXPECT_EQ(report.attachment_accuracy, 1.0);
  EXPECT_EQ(report.agreement, 1.0);
  ASSERT_TRUE(report.kappa.has_value());
  EXPECT_EQ(*report.kappa, 1.0);
  EXPECT_TRUE(report.warnings.empty());
}

TEST(EvaluateTest, MissingRecommendationLowersRecall) {
  const std::string text =
      "En cas de fièvre, il faut boire. Il faut dormir.\n\nIl faut manger.";
  PipelineResult r = RunPipeline(text, "t", DefaultLexicon());
  ScopeTree system = r.tree;
  system.root.children.pop_back();
  EvalReport report = Evaluate(system, r.tree, r.doc);
  EXPECT_EQ(report.recommendation_counts.present, 3u);
  EXPECT_EQ(report.recommendation_counts.found, 2u);
  EXPECT_NEAR(report.recommendation.recall, 2.0 / 3.0, 1e-12);
}

TEST(EvaluateTest, EmptyGoldWarns) {
  PipelineResult r = RunPipeline("Il faut manger.", "t", DefaultLexicon());
  EvalReport report = Evaluate(r.tree, r.tree, r.doc);
  EXPECT_EQ(report.condition.recall, 0.0);
  EXPECT_FALSE(report.warnings.empty());
}

TEST(EvaluateTest, JsonReportFields) {
  PipelineResult r =
      RunPipeline("Si besoin, il faut manger.", "t", DefaultLexicon());
  auto json =
      nlohmann::json::parse(FormatReportJson(Evaluate(r.tree, r.tree, r.doc)));
  for (const char* kind : {"conditions", "recommendations"}) {
    for (const char* field :
         {"present", "found", "correct", "recall", "precision", "f_measure"}) {
      EXPECT_TRUE(json[kind].contains(field)) << kind << "." << field;
    }
  }
  for (const char* field : {"attachment_accuracy", "agreement", "kappa"}) {
    EXPECT_TRUE(json.contains(field)) << field;
  }
  EXPECT_EQ(json["attachment_accuracy"], 1.0);
  const std::string table = FormatReportTable(Evaluate(r.tree, r.tree, r.doc));
  EXPECT_NE(table.find("100.00"), std::string::npos);
}

}  // namespace
}  // namespace gemframe
