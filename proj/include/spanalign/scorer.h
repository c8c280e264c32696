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

#ifndef SPANALIGN_SCORER_H_
#define SPANALIGN_SCORER_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spanalign {

enum class ScoreKind { kSimilarity, kEntailment, kAlignProb };

std::string_view ScoreKindName(ScoreKind kind);
ScoreKind ParseScoreKind(std::string_view name);

// text_a is the document-side text (premise, reference); text_b is the
// summary-side text (hypothesis, candidate).
struct TextPair {
  std::string text_a;
  std::string text_b;

  friend auto operator<=>(const TextPair&, const TextPair&) = default;
};

struct PairScores {
  std::optional<double> similarity;
  std::optional<double> entailment;
  std::optional<double> align_prob;

  std::optional<double> Get(ScoreKind kind) const;
  void Set(ScoreKind kind, double value);
};

// Black-box pair scoring. Implementations return one PairScores per input
// pair, in input order, with every requested kind present and in [0, 1];
// anything else is a ScorerError.
class PairScorer {
 public:
  virtual ~PairScorer() = default;
  virtual std::vector<PairScores> Score(const std::vector<TextPair>& pairs,
                                        const std::vector<ScoreKind>& kinds) = 0;
};

// Throws ScorerError unless every requested kind is present and in [0, 1].
void ValidateScores(const PairScores& scores,
                    const std::vector<ScoreKind>& kinds, std::string_view who);

// Precomputed scores from a JSONL file of
// {text_a, text_b, similarity?, entailment?, align_prob?} records.
class ScoreFileScorer : public PairScorer {
 public:
  explicit ScoreFileScorer(const std::string& path);
  ScoreFileScorer(std::istream& in, const std::string& source);

  std::vector<PairScores> Score(const std::vector<TextPair>& pairs,
                                const std::vector<ScoreKind>& kinds) override;
  size_t size() const { return table_.size(); }

 private:
  void Load(std::istream& in, const std::string& source);

  std::string source_;
  std::map<TextPair, PairScores> table_;
};

void WriteScoreRecord(std::ostream& out, const TextPair& pair,
                      const PairScores& scores);

struct HttpScorerOptions {
  size_t batch_size = 64;
  int max_attempts = 3;
  int timeout_seconds = 60;
  int backoff_millis = 200;
};

// Client for a scoring service: POST /score with
// {"batch": [{"text_a", "text_b", "kinds": [...]}]}. The response is a JSON
// array of score objects in request order, or an object holding that array
// under "scores" or "results". Transport failures and 5xx responses are
// retried; 4xx responses are not.
class HttpScorer : public PairScorer {
 public:
  explicit HttpScorer(std::string base_url, HttpScorerOptions options = {});

  std::vector<PairScores> Score(const std::vector<TextPair>& pairs,
                                const std::vector<ScoreKind>& kinds) override;
  // GET /health returns 200.
  bool Healthy();
  const std::string& base_url() const { return base_url_; }

 private:
  std::vector<PairScores> ScoreBatch(const std::vector<TextPair>& pairs,
                                     size_t begin, size_t end,
                                     const std::vector<ScoreKind>& kinds);

  std::string base_url_;
  HttpScorerOptions options_;
};

inline constexpr char kScorerUrlEnv[] = "SPANALIGN_SCORER_URL";

// A ScoreFileScorer when scores_file is non-empty, else an HttpScorer on
// url, falling back to the SPANALIGN_SCORER_URL environment variable.
// Throws ScorerError when neither is available.
std::unique_ptr<PairScorer> MakeScorer(const std::string& scores_file,
                                       const std::string& url,
                                       HttpScorerOptions options = {});

}  // namespace spanalign

#endif  // SPANALIGN_SCORER_H_
