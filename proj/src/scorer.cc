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

#include "spanalign/scorer.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "spanalign/errors.h"

namespace spanalign {
namespace {

using nlohmann::json;

constexpr ScoreKind kAllKinds[] = {ScoreKind::kSimilarity,
                                   ScoreKind::kEntailment,
                                   ScoreKind::kAlignProb};

PairScores ScoresFromJson(const json& j, std::string_view who) {
  if (!j.is_object()) throw ScorerError(std::string(who) + ": score is not an object");
  PairScores out;
  for (ScoreKind kind : kAllKinds) {
    const auto it = j.find(std::string(ScoreKindName(kind)));
    if (it == j.end() || it->is_null()) continue;
    if (!it->is_number()) {
      throw ScorerError(std::string(who) + ": " +
                        std::string(ScoreKindName(kind)) + " is not a number");
    }
    out.Set(kind, it->get<double>());
  }
  return out;
}

}  // namespace

std::string_view ScoreKindName(ScoreKind kind) {
  switch (kind) {
    case ScoreKind::kSimilarity:
      return "similarity";
    case ScoreKind::kEntailment:
      return "entailment";
    case ScoreKind::kAlignProb:
      return "align_prob";
  }
  return "";
}

ScoreKind ParseScoreKind(std::string_view name) {
  for (ScoreKind kind : kAllKinds) {
    if (ScoreKindName(kind) == name) return kind;
  }
  throw InvalidArgument("unknown score kind: " + std::string(name));
}

std::optional<double> PairScores::Get(ScoreKind kind) const {
  switch (kind) {
    case ScoreKind::kSimilarity:
      return similarity;
    case ScoreKind::kEntailment:
      return entailment;
    case ScoreKind::kAlignProb:
      return align_prob;
  }
  return std::nullopt;
}

void PairScores::Set(ScoreKind kind, double value) {
  switch (kind) {
    case ScoreKind::kSimilarity:
      similarity = value;
      break;
    case ScoreKind::kEntailment:
      entailment = value;
      break;
    case ScoreKind::kAlignProb:
      align_prob = value;
      break;
  }
}

void ValidateScores(const PairScores& scores,
                    const std::vector<ScoreKind>& kinds, std::string_view who) {
  for (ScoreKind kind : kinds) {
    const auto v = scores.Get(kind);
    if (!v) {
      throw ScorerError(std::string(who) + ": missing " +
                        std::string(ScoreKindName(kind)));
    }
    if (!(*v >= 0.0 && *v <= 1.0)) {
      throw ScorerError(std::string(who) + ": " +
                        std::string(ScoreKindName(kind)) + " out of range: " +
                        std::to_string(*v));
    }
  }
}

ScoreFileScorer::ScoreFileScorer(const std::string& path) : source_(path) {
  std::ifstream in(path);
  if (!in) throw ScorerError("cannot open scores file: " + path);
  Load(in, path);
}

ScoreFileScorer::ScoreFileScorer(std::istream& in, const std::string& source)
    : source_(source) {
  Load(in, source);
}

void ScoreFileScorer::Load(std::istream& in, const std::string& source) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("text_a") || !j.contains("text_b") ||
        !j["text_a"].is_string() || !j["text_b"].is_string()) {
      throw ParseError(where + ": record needs string text_a and text_b");
    }
    TextPair key{j["text_a"].get<std::string>(), j["text_b"].get<std::string>()};
    PairScores scores = ScoresFromJson(j, where);
    PairScores& slot = table_[std::move(key)];
    for (ScoreKind kind : kAllKinds) {
      if (auto v = scores.Get(kind)) slot.Set(kind, *v);
    }
  }
}

std::vector<PairScores> ScoreFileScorer::Score(
    const std::vector<TextPair>& pairs, const std::vector<ScoreKind>& kinds) {
  std::vector<PairScores> out;
  out.reserve(pairs.size());
  for (const TextPair& p : pairs) {
    const auto it = table_.find(p);
    if (it == table_.end()) {
      throw ScorerError(source_ + ": no scores for pair (" + p.text_a +
                        " | " + p.text_b + ")");
    }
    ValidateScores(it->second, kinds, source_);
    out.push_back(it->second);
  }
  return out;
}

void WriteScoreRecord(std::ostream& out, const TextPair& pair,
                      const PairScores& scores) {
  nlohmann::ordered_json j;
  j["text_a"] = pair.text_a;
  j["text_b"] = pair.text_b;
  for (ScoreKind kind : kAllKinds) {
    if (auto v = scores.Get(kind)) j[std::string(ScoreKindName(kind))] = *v;
  }
  out << j.dump(-1, ' ', false, json::error_handler_t::strict) << '\n';
}

HttpScorer::HttpScorer(std::string base_url, HttpScorerOptions options)
    : base_url_(std::move(base_url)), options_(options) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
  if (base_url_.empty()) throw ScorerError("empty scorer url");
  if (options_.batch_size == 0 || options_.max_attempts < 1) {
    throw InvalidArgument("scorer batch size and attempts must be positive");
  }
}

bool HttpScorer::Healthy() {
  httplib::Client client(base_url_);
  client.set_connection_timeout(options_.timeout_seconds);
  client.set_read_timeout(options_.timeout_seconds);
  const auto res = client.Get("/health");
  return res && res->status == 200;
}

std::vector<PairScores> HttpScorer::Score(const std::vector<TextPair>& pairs,
                                          const std::vector<ScoreKind>& kinds) {
  std::vector<PairScores> out;
  out.reserve(pairs.size());
  for (size_t begin = 0; begin < pairs.size(); begin += options_.batch_size) {
    const size_t end = std::min(pairs.size(), begin + options_.batch_size);
    for (PairScores& s : ScoreBatch(pairs, begin, end, kinds)) {
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<PairScores> HttpScorer::ScoreBatch(
    const std::vector<TextPair>& pairs, size_t begin, size_t end,
    const std::vector<ScoreKind>& kinds) {
  json kind_names = json::array();
  for (ScoreKind k : kinds) kind_names.push_back(ScoreKindName(k));
  json batch = json::array();
  for (size_t i = begin; i < end; ++i) {
    batch.push_back({{"text_a", pairs[i].text_a},
                     {"text_b", pairs[i].text_b},
                     {"kinds", kind_names}});
  }
  const std::string body = json{{"batch", std::move(batch)}}.dump();

  httplib::Client client(base_url_);
  client.set_connection_timeout(options_.timeout_seconds);
  client.set_read_timeout(options_.timeout_seconds);
  client.set_write_timeout(options_.timeout_seconds);
  std::string last_error;
  for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
    if (attempt > 1 && options_.backoff_millis > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(options_.backoff_millis * (attempt - 1)));
    }
    const auto res = client.Post("/score", body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status) + ": " + res->body;
      continue;
    }
    if (res->status != 200) {
      throw ScorerError(base_url_ + "/score: HTTP " +
                        std::to_string(res->status) + ": " + res->body);
    }
    json reply;
    try {
      reply = json::parse(res->body);
    } catch (const json::parse_error& e) {
      throw ScorerError(base_url_ + "/score: malformed response: " + e.what());
    }
    if (reply.is_object()) {
      if (reply.contains("scores")) {
        reply = reply["scores"];
      } else if (reply.contains("results")) {
        reply = reply["results"];
      }
    }
    if (!reply.is_array() || reply.size() != end - begin) {
      throw ScorerError(base_url_ + "/score: expected " +
                        std::to_string(end - begin) + " results");
    }
    std::vector<PairScores> out;
    out.reserve(reply.size());
    for (const json& item : reply) {
      out.push_back(ScoresFromJson(item, base_url_));
      ValidateScores(out.back(), kinds, base_url_);
    }
    return out;
  }
  throw ScorerError(base_url_ + "/score: giving up after " +
                    std::to_string(options_.max_attempts) +
                    " attempts: " + last_error);
}

std::unique_ptr<PairScorer> MakeScorer(const std::string& scores_file,
                                       const std::string& url,
                                       HttpScorerOptions options) {
  if (!scores_file.empty()) return std::make_unique<ScoreFileScorer>(scores_file);
  std::string endpoint = url;
  if (endpoint.empty()) {
    if (const char* env = std::getenv(kScorerUrlEnv)) endpoint = env;
  }
  if (endpoint.empty()) {
    throw ScorerError(std::string("no scorer: pass a scores file, a scorer "
                                  "url, or set ") +
                      kScorerUrlEnv);
  }
  return std::make_unique<HttpScorer>(endpoint, options);
}

}  // namespace spanalign
