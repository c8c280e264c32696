// Copyright 2026 The spanalign Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "spanalign/corpus.h"
#include "spanalign/corpus_io.h"
#include "spanalign/errors.h"
#include "spanalign/sentence_splitter.h"
#include "spanalign/span.h"
#include "spanalign/utf8.h"

namespace spanalign {
namespace {

TEST(SpanTest, NormalizesSortsAndMergesAdjacent) {
  Span s{{8, 10}, {0, 3}, {3, 5}, {9, 12}, {20, 20}};
  ASSERT_EQ(s.ranges().size(), 2u);
  EXPECT_EQ(s.ranges()[0], (CharRange{0, 5}));
  EXPECT_EQ(s.ranges()[1], (CharRange{8, 12}));
  EXPECT_EQ(s.length(), 9);
  EXPECT_TRUE(s.Contains(4));
  EXPECT_FALSE(s.Contains(5));
  EXPECT_TRUE(s.Contains(11));
}

TEST(SpanTest, RejectsInvertedRange) {
  EXPECT_THROW(Span({{5, 3}}), InvalidArgument);
  EXPECT_THROW(Span({{-1, 3}}), InvalidArgument);
}

TEST(SpanTest, NormalizationMatchesPositionSetAndIsIdempotent) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<CharRange> ranges;
    const int k = 1 + static_cast<int>(rng() % 6);
    std::vector<bool> covered(80, false);
    for (int i = 0; i < k; ++i) {
      const long a = static_cast<long>(rng() % 70);
      const long b = a + static_cast<long>(rng() % 10);
      ranges.push_back({a, b});
      for (long p = a; p < b; ++p) covered[p] = true;
    }
    const Span s(ranges);
    for (long p = 0; p < 80; ++p) EXPECT_EQ(s.Contains(p), covered[p]);
    for (size_t i = 0; i + 1 < s.ranges().size(); ++i) {
      EXPECT_LT(s.ranges()[i].end, s.ranges()[i + 1].start);
    }
    EXPECT_EQ(Span(s.ranges()), s);
  }
}

TEST(SpanTextTest, ContiguousAndDiscontiguous) {
  const std::u32string text = U"Hello world";
  EXPECT_EQ(SpanTextUtf8(Span{{0, 5}}, text), "Hello");
  EXPECT_EQ(SpanTextUtf8(Span{{0, 2}, {6, 11}}, text), "He world");
  EXPECT_THROW(SpanText(Span{{6, 12}}, text), InvalidArgument);
}

TEST(SpanTextTest, MatchesCharacterCollectionOracle) {
  std::mt19937_64 rng(11);
  const std::u32string alphabet = U"abcdé漢 .🙂";
  for (int trial = 0; trial < 300; ++trial) {
    std::u32string text;
    const size_t n = 1 + rng() % 60;
    for (size_t i = 0; i < n; ++i) text.push_back(alphabet[rng() % alphabet.size()]);
    std::vector<CharRange> ranges;
    for (int i = 0; i < 3; ++i) {
      const long a = static_cast<long>(rng() % n);
      ranges.push_back({a, a + 1 + static_cast<long>(rng() % (n - a))});
    }
    const Span span(ranges);
    // Oracle: walk positions, emit a space at each gap between covered runs.
    std::u32string expected;
    bool in_run = false;
    for (size_t p = 0; p < n; ++p) {
      if (span.Contains(static_cast<long>(p))) {
        if (!in_run && !expected.empty()) expected.push_back(U' ');
        expected.push_back(text[p]);
        in_run = true;
      } else {
        in_run = false;
      }
    }
    EXPECT_EQ(SpanText(span, text), expected);
  }
}

TEST(Utf8Test, RoundTripsAndRejectsMalformed) {
  const std::string s = "naïve 漢字 🙂";
  const std::u32string cps = DecodeUtf8(s);
  EXPECT_EQ(cps.size(), 10u);
  EXPECT_EQ(EncodeUtf8(cps), s);
  EXPECT_THROW(DecodeUtf8("\xC3"), ParseError);
  EXPECT_THROW(DecodeUtf8("\xC0\x80"), ParseError);
  EXPECT_THROW(DecodeUtf8("\xED\xA0\x80"), ParseError);
}

std::vector<Sentence> Split(const std::string& text) {
  return SplitSentences(DecodeUtf8(text));
}

TEST(SentenceSplitterTest, SingleSentence) {
  auto s = Split("Hello world.");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].text, "Hello world.");
}

TEST(SentenceSplitterTest, TwoSentencesWithOffsets) {
  auto s = Split("He said hi. She left.");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].offset, 0);
  EXPECT_EQ(s[0].text, "He said hi.");
  EXPECT_EQ(s[1].offset, 12);
  EXPECT_EQ(s[1].text, "She left.");
}

TEST(SentenceSplitterTest, AbbreviationsAreNotBoundaries) {
  auto s = Split("U.S. rates rose. Markets fell.");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].text, "U.S. rates rose.");
  EXPECT_EQ(s[1].offset, 17);

  s = Split("Mr. Smith met Dr. Jones in the U.S. Senate. They talked.");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[1].text, "They talked.");
}

TEST(SentenceSplitterTest, QuotesDecimalsAndBlankLines) {
  auto s = Split("He said \"stop.\" Then he left. Prices rose 3.5 percent!");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].text, "He said \"stop.\"");
  EXPECT_EQ(s[2].text, "Prices rose 3.5 percent!");

  s = Split("Headline without period\n\nBody starts here. Ends");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].text, "Headline without period");
  EXPECT_EQ(s[2].text, "Ends");
}

TEST(SentenceSplitterTest, EmptyAndWhitespaceOnly) {
  EXPECT_TRUE(Split("").empty());
  EXPECT_TRUE(Split("  \n ").empty());
}

TEST(SentenceSplitterTest, OffsetsSliceBackToTextOnRandomUnicode) {
  std::mt19937_64 rng(3);
  const std::vector<std::u32string> pieces = {
      U"Ünïcode", U"漢字", U"🙂", U"word", U"A.", U"Mr.", U"end.", U"?",
      U"\"quoted.\"", U" ", U"  ", U"\n\n", U"x", U"ß"};
  for (int trial = 0; trial < 300; ++trial) {
    std::u32string text;
    const int k = static_cast<int>(rng() % 30);
    for (int i = 0; i < k; ++i) {
      text += pieces[rng() % pieces.size()];
      text += U' ';
    }
    const auto sentences = SplitSentences(text, "doc");
    CharIndex previous_end = 0;
    for (const Sentence& s : sentences) {
      EXPECT_GE(s.offset, previous_end);
      EXPECT_EQ(EncodeUtf8(text.substr(s.offset, s.length)), s.text);
      EXPECT_EQ(s.parent_id, "doc");
      previous_end = s.offset + s.length;
    }
    // Everything outside sentences is whitespace.
    std::vector<bool> inside(text.size(), false);
    for (const Sentence& s : sentences) {
      for (CharIndex p = s.offset; p < s.offset + s.length; ++p) inside[p] = true;
    }
    for (size_t p = 0; p < text.size(); ++p) {
      if (!inside[p]) {
        EXPECT_TRUE(text[p] == U' ' || text[p] == U'\n');
      }
    }
    EXPECT_EQ(SplitSentences(text, "doc"), sentences);
  }
}

TEST(TopicIoTest, LoadsSmallestTopic) {
  std::istringstream in(
      R"({"topic_id":"t1","kind":"document","text_id":"d1","text":"A. B."})"
      "\n");
  auto topics = ReadTopics(in, "mem");
  ASSERT_EQ(topics.size(), 1u);
  const auto& sentences = topics[0].documents()[0].sentences();
  ASSERT_EQ(sentences.size(), 2u);
  EXPECT_EQ(sentences[0].offset, 0);
  EXPECT_EQ(sentences[1].offset, 3);
}

TEST(TopicIoTest, TopicWithoutDocumentsIsIntegrityError) {
  std::istringstream in(
      R"({"topic_id":"t1","kind":"summary","text_id":"s1","text":"A."})"
      "\n");
  EXPECT_THROW(ReadTopics(in, "mem"), IntegrityError);
}

TEST(TopicIoTest, MalformedRecordNamesLine) {
  std::istringstream in(
      R"({"topic_id":"t1","kind":"document","text_id":"d1","text":"A."})"
      "\n{not json\n");
  try {
    ReadTopics(in, "mem");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("mem:2"), std::string::npos);
  }
}

TEST(TopicIoTest, BadSentenceOffsetsAreIntegrityErrors) {
  std::istringstream in(
      R"({"topic_id":"t1","kind":"document","text_id":"d1","text":"abc",)"
      R"("sentences":[{"start":0,"end":9}]})"
      "\n");
  EXPECT_THROW(ReadTopics(in, "mem"), IntegrityError);
  std::istringstream dup(
      R"({"topic_id":"t1","kind":"document","text_id":"d1","text":"abc"})"
      "\n"
      R"({"topic_id":"t1","kind":"summary","text_id":"d1","text":"abc"})"
      "\n");
  EXPECT_THROW(ReadTopics(dup, "mem"), IntegrityError);
}

TEST(TopicIoTest, MultibyteOffsetsCountScalarValues) {
  std::istringstream in(
      R"({"topic_id":"t","kind":"document","text_id":"d","text":"Çà va. 漢字 ok. 🙂 fin."})"
      "\n");
  auto topics = ReadTopics(in, "mem");
  const ParentText& doc = topics[0].documents()[0];
  ASSERT_EQ(doc.sentences().size(), 3u);
  EXPECT_EQ(doc.sentences()[1].offset, 7);
  EXPECT_EQ(doc.sentences()[2].offset, 14);
  for (const Sentence& s : doc.sentences()) {
    EXPECT_EQ(doc.Slice(s.range()), s.text);
  }
}

TEST(TopicIoTest, CanonicalRoundTripIsByteIdentical) {
  std::istringstream in(
      R"({"topic_id":"t","kind":"document","text_id":"d","text":"Çà va. 漢字 \"ok\". Fin"})"
      "\n"
      R"({"topic_id":"t","kind":"summary","text_id":"s","text":"One. Two.","sentences":[{"start":0,"end":4}]})"
      "\n");
  auto topics = ReadTopics(in, "mem");
  std::ostringstream first;
  WriteTopics(first, topics);
  std::istringstream again(first.str());
  std::ostringstream second;
  WriteTopics(second, ReadTopics(again, "mem"));
  EXPECT_EQ(first.str(), second.str());
  EXPECT_EQ(topics[0].summaries()[0].sentences().size(), 1u);
}

Topic SmallTopic() {
  std::vector<ParentText> docs;
  docs.emplace_back("d1", TextKind::kDocument, "John ate an apple. Mary left.");
  std::vector<ParentText> sums;
  sums.emplace_back("s1", TextKind::kSummary, "John ate fruit.");
  return Topic("t", std::move(docs), std::move(sums));
}

TEST(AlignmentIoTest, RoundTripAndResolve) {
  const std::string line =
      R"({"topic_id":"t","summary_id":"s1","summary_span":[[0,8]],"doc_id":"d1","doc_span":[[0,8],[12,17]],"probability":0.75,"provenance":"supervised"})";
  std::istringstream in(line + "\n" + line + "\n");
  auto sets = ReadAlignments(in, "mem");
  ASSERT_EQ(sets.size(), 1u);
  ASSERT_EQ(sets[0].size(), 1u);  // duplicate dropped
  std::ostringstream out;
  WriteAlignments(out, sets);
  EXPECT_EQ(out.str(), line + "\n");

  const Topic topic = SmallTopic();
  ResolveAlignments(sets[0], topic);
  EXPECT_EQ(sets[0].pairs()[0].summary_iu.surface, "John ate");
  EXPECT_EQ(sets[0].pairs()[0].doc_iu.surface, "John ate apple");
  EXPECT_EQ(sets[0].pairs()[0].doc_iu.sentence_index, 0);
}

TEST(AlignmentIoTest, ResolveRejectsWrongKindsAndBounds) {
  const Topic topic = SmallTopic();
  std::istringstream swapped(
      R"({"topic_id":"t","summary_id":"d1","summary_span":[[0,4]],"doc_id":"s1","doc_span":[[0,4]],"provenance":"gold"})"
      "\n");
  auto sets = ReadAlignments(swapped, "mem");
  EXPECT_THROW(ResolveAlignments(sets[0], topic), IntegrityError);
  std::istringstream oob(
      R"({"topic_id":"t","summary_id":"s1","summary_span":[[0,400]],"doc_id":"d1","doc_span":[[0,4]],"provenance":"gold"})"
      "\n");
  sets = ReadAlignments(oob, "mem");
  EXPECT_THROW(ResolveAlignments(sets[0], topic), IntegrityError);
  std::istringstream bad_prob(
      R"({"topic_id":"t","summary_id":"s1","summary_span":[[0,4]],"doc_id":"d1","doc_span":[[0,4]],"probability":1.5,"provenance":"gold"})"
      "\n");
  EXPECT_THROW(ReadAlignments(bad_prob, "mem"), IntegrityError);
}

TEST(UnitIoTest, ImportValidatesAndRoundTrips) {
  const std::vector<Topic> topics = {SmallTopic()};
  std::istringstream in(
      R"({"text_id":"d1","sentence_index":1,"ranges":[[19,23]]})"
      "\n");
  auto units = ReadUnits(in, "mem", topics);
  ASSERT_EQ(units.size(), 1u);
  EXPECT_EQ(units[0].units[0].surface, "Mary");
  std::ostringstream out;
  WriteUnits(out, units);
  std::istringstream back(out.str());
  auto again = ReadUnits(back, "mem", topics);
  EXPECT_EQ(again[0].units[0].span, units[0].units[0].span);

  std::istringstream oob(
      R"({"text_id":"d1","sentence_index":0,"ranges":[[0,4]]})"
      "\n"
      R"({"text_id":"d1","sentence_index":1,"ranges":[[19,99]]})"
      "\n");
  try {
    ReadUnits(oob, "mem", topics);
    FAIL() << "expected IntegrityError";
  } catch (const IntegrityError& e) {
    EXPECT_NE(std::string(e.what()).find("record 2"), std::string::npos);
  }
  std::istringstream wrong_sentence(
      R"({"text_id":"d1","sentence_index":0,"ranges":[[19,23]]})"
      "\n");
  EXPECT_THROW(ReadUnits(wrong_sentence, "mem", topics), IntegrityError);
}

}  // namespace
}  // namespace spanalign
