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

#include "spanalign/cli.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "spanalign/aggregation.h"
#include "spanalign/aligners.h"
#include "spanalign/alignment_metrics.h"
#include "spanalign/corpus_io.h"
#include "spanalign/derive.h"
#include "spanalign/derive_io.h"
#include "spanalign/errors.h"
#include "spanalign/filtering.h"
#include "spanalign/iu_extraction.h"
#include "spanalign/jsonl.h"
#include "spanalign/parallel.h"
#include "spanalign/scorer.h"

namespace spanalign {
namespace {

using jsonl::json;
using jsonl::ordered_json;

// Reads JSON config files: top-level keys set main options, nested objects
// set the options of the subcommand they are named after.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool, bool,
                        std::string) const override {
    ordered_json j;
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const auto results = opt->results();
      if (!results.empty()) j[opt->get_lnames().front()] = results.back();
    }
    return j.dump();
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config is not JSON: ") +
                                 e.what());
    }
    if (!j.is_object()) {
      throw CLI::ConversionError("config must be a JSON object");
    }
    std::vector<CLI::ConfigItem> items;
    Collect(j, {}, items);
    return items;
  }

 private:
  static std::string Scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  }

  static void Collect(const json& j, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it->is_object()) {
        std::vector<std::string> nested = parents;
        nested.push_back(it.key());
        Collect(*it, nested, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      if (it->is_array()) {
        for (const json& v : *it) item.inputs.push_back(Scalar(v));
      } else {
        item.inputs.push_back(Scalar(*it));
      }
      items.push_back(std::move(item));
    }
  }
};

// Writes through a temporary file renamed into place, or to out for "-".
void WriteOutput(const std::string& path, std::ostream& out,
                 const std::function<void(std::ostream&)>& fill) {
  if (path == "-") {
    fill(out);
    out.flush();
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream file = OpenForWrite(tmp);
    fill(file);
    file.flush();
    if (!file) throw ParseError("failed writing '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw ParseError("cannot move '" + tmp + "' to '" + path +
                     "': " + ec.message());
  }
}

std::string Fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Common {
  unsigned long long seed = kDefaultSeed;
  int jobs = 0;
};

struct ScorerFlags {
  std::string scores_file;
  std::string url;
  int batch_size = 64;
  int timeout = 60;
  int attempts = 3;

  void Add(CLI::App* cmd) {
    cmd->add_option("--scores-file", scores_file,
                    "Precomputed scores JSONL (offline mode)");
    cmd->add_option("--scorer-url", url,
                    std::string("Scoring service base URL (default $") +
                        kScorerUrlEnv + ")");
    cmd->add_option("--scorer-batch", batch_size, "Pairs per request")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--scorer-timeout", timeout, "Request timeout, seconds")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--scorer-attempts", attempts, "Attempts per request")
        ->check(CLI::PositiveNumber);
  }

  bool Configured() const {
    const char* env = std::getenv(kScorerUrlEnv);
    return !scores_file.empty() || !url.empty() ||
           (env != nullptr && *env != '\0');
  }

  std::unique_ptr<PairScorer> Make() const {
    HttpScorerOptions options;
    options.batch_size = static_cast<size_t>(batch_size);
    options.timeout_seconds = timeout;
    options.max_attempts = attempts;
    return MakeScorer(scores_file, url, options);
  }
};

// Loads topics and their units, extracting heuristically when no units file
// is given. Units are matched to topics by id.
struct Workspace {
  std::vector<Topic> topics;
  std::vector<TopicUnits> units;
};

Workspace LoadWorkspace(const std::string& topics_path,
                        const std::string& units_path) {
  Workspace w;
  w.topics = LoadTopics(topics_path);
  if (!units_path.empty()) {
    std::vector<TopicUnits> imported = ImportUnits(units_path, w.topics);
    std::map<std::string, TopicUnits> by_id;
    for (TopicUnits& u : imported) by_id[u.topic_id] = std::move(u);
    for (const Topic& t : w.topics) {
      auto it = by_id.find(t.id());
      w.units.push_back(it == by_id.end() ? TopicUnits{t.id(), {}}
                                          : std::move(it->second));
    }
  } else {
    for (const Topic& t : w.topics) w.units.push_back(ExtractTopicUnits(t));
  }
  return w;
}

void SplitUnits(const Topic& topic, const TopicUnits& units,
                std::vector<InformationUnit>& summary_ius,
                std::vector<InformationUnit>& doc_ius) {
  for (const InformationUnit& u : units.units) {
    if (topic.FindSummary(u.parent_id) != nullptr) {
      summary_ius.push_back(u);
    } else {
      doc_ius.push_back(u);
    }
  }
}

std::vector<AlignmentSet> LoadResolved(const std::string& path,
                                       const std::vector<Topic>& topics) {
  std::vector<AlignmentSet> sets = LoadAlignments(path);
  for (AlignmentSet& set : sets) {
    const Topic* topic = nullptr;
    for (const Topic& t : topics) {
      if (t.id() == set.topic_id()) topic = &t;
    }
    if (topic == nullptr) {
      throw IntegrityError(path + ": unknown topic '" + set.topic_id() + "'");
    }
    ResolveAlignments(set, *topic);
  }
  return sets;
}

std::string Join(const std::vector<std::string>& v) {
  std::string s;
  for (const std::string& x : v) s += (s.empty() ? "" : " ") + x;
  return s;
}

void LogConfig(std::ostream& err, const CLI::App& app, const CLI::App& cmd) {
  ordered_json j;
  j["command"] = cmd.get_name();
  for (const CLI::App* a : {&app, &cmd}) {
    for (const CLI::Option* opt : a->get_options()) {
      if (opt->get_lnames().empty()) continue;
      const std::string name = opt->get_lnames().front();
      if (name == "help" || name == "config") continue;
      if (opt->count() > 0) {
        j[name] = Join(opt->results());
      } else if (opt->get_expected_max() == 0 ||
                 opt->get_type_size_max() == 0) {
        j[name] = "false";
      } else {
        j[name] = opt->get_default_str();
      }
    }
  }
  err << "spanalign: config " << j.dump() << '\n';
}

// Merges per-topic inputs into one namespace so that topic-local indices
// can be calibrated jointly. Parent ids become "<topic>\x1f<id>".
struct MergedCandidates {
  std::vector<CandidateScore> scores;
  std::vector<InformationUnit> ius;
  std::vector<Sentence> sentences;
  AlignmentSet gold;
};

std::string Qualify(const std::string& topic, const std::string& id) {
  return topic + '\x1f' + id;
}

void AppendTopic(MergedCandidates& m, const std::string& topic_id,
                 const std::vector<CandidateScore>& scores,
                 std::vector<InformationUnit> ius,
                 std::vector<Sentence> sentences, const AlignmentSet* gold) {
  const size_t iu_base = m.ius.size(), sentence_base = m.sentences.size();
  for (InformationUnit& u : ius) {
    u.parent_id = Qualify(topic_id, u.parent_id);
    m.ius.push_back(std::move(u));
  }
  for (Sentence& s : sentences) {
    s.parent_id = Qualify(topic_id, s.parent_id);
    m.sentences.push_back(std::move(s));
  }
  for (CandidateScore c : scores) {
    c.iu += iu_base;
    c.sentence += sentence_base;
    m.scores.push_back(c);
  }
  if (gold == nullptr) return;
  for (AlignmentPair p : gold->pairs()) {
    p.summary_iu.parent_id = Qualify(topic_id, p.summary_iu.parent_id);
    p.doc_iu.parent_id = Qualify(topic_id, p.doc_iu.parent_id);
    m.gold.Add(std::move(p));
  }
}

FilterPolicy LoadPolicy(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": malformed policy JSON: " + e.what());
  }
  FilterPolicy p;
  auto read = [&](const char* key, double& field) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_number()) throw ParseError(path + ": " + key + " not a number");
    field = it->get<double>();
  };
  read("theta_r", p.theta_r);
  read("theta_b", p.theta_b);
  read("theta_e", p.theta_e);
  return p;
}

const AlignmentSet* FindSet(const std::vector<AlignmentSet>& sets,
                            const std::string& topic_id) {
  for (const AlignmentSet& s : sets) {
    if (s.topic_id() == topic_id) return &s;
  }
  return nullptr;
}

// ---- extract ---------------------------------------------------------------

struct ExtractFlags {
  std::string in, out = "-", mode = "heuristic", units;
};

int RunExtract(const ExtractFlags& f, std::ostream& out, std::ostream& err) {
  const std::vector<Topic> topics = LoadTopics(f.in);
  std::vector<TopicUnits> units;
  if (f.mode == "import") {
    if (f.units.empty()) throw InvalidArgument("--mode import needs --units");
    units = ImportUnits(f.units, topics);
  } else {
    long verbless = 0;
    for (const Topic& t : topics) {
      units.push_back(ExtractTopicUnits(t));
      std::set<std::pair<std::string, int>> covered;
      for (const InformationUnit& u : units.back().units) {
        covered.insert({u.parent_id, u.sentence_index});
      }
      for (const auto* group : {&t.documents(), &t.summaries()}) {
        for (const ParentText& p : *group) {
          for (const Sentence& s : p.sentences()) {
            verbless += covered.count({p.id(), s.index}) == 0;
          }
        }
      }
    }
    err << "spanalign: extract: " << verbless
        << " sentence(s) without a verb produced no units\n";
  }
  WriteOutput(f.out, out, [&](std::ostream& o) { WriteUnits(o, units); });
  return kExitOk;
}

// ---- filter / calibrate ----------------------------------------------------

struct FilterFlags {
  std::string topics, units, gold, policy, out = "-", diagnostics;
  double threshold = kDefaultThreshold;
  std::optional<double> theta_r, theta_b, theta_e;
  ScorerFlags scorer;
};

struct ScoredTopic {
  std::vector<InformationUnit> summary_ius, doc_ius;
  std::vector<Sentence> sentences;
  std::vector<CandidateScore> scores;
};

std::vector<ScoredTopic> ScoreWorkspace(const Workspace& w,
                                        PairScorer& scorer) {
  std::vector<ScoredTopic> out(w.topics.size());
  for (size_t i = 0; i < w.topics.size(); ++i) {
    SplitUnits(w.topics[i], w.units[i], out[i].summary_ius, out[i].doc_ius);
    out[i].sentences = w.topics[i].DocumentSentences();
    out[i].scores =
        ScoreCandidates(out[i].summary_ius, out[i].sentences, scorer);
  }
  return out;
}

int RunFilter(const FilterFlags& f, std::ostream& out, std::ostream& err) {
  const Workspace w = LoadWorkspace(f.topics, f.units);
  FilterPolicy policy = f.policy.empty() ? FilterPolicy{} : LoadPolicy(f.policy);
  if (f.theta_r) policy.theta_r = *f.theta_r;
  if (f.theta_b) policy.theta_b = *f.theta_b;
  if (f.theta_e) policy.theta_e = *f.theta_e;
  std::vector<AlignmentSet> gold;
  if (!f.gold.empty()) gold = LoadResolved(f.gold, w.topics);
  auto scorer = f.scorer.Make();
  const std::vector<ScoredTopic> scored = ScoreWorkspace(w, *scorer);

  std::ostringstream diag;
  diag << "topic\tcandidates\tkept\treduction\trecall\n";
  MergedCandidates merged;
  WriteOutput(f.out, out, [&](std::ostream& o) {
    for (size_t i = 0; i < w.topics.size(); ++i) {
      const Topic& topic = w.topics[i];
      const ScoredTopic& st = scored[i];
      for (const CandidateScore& c : AutomaticFilter(st.scores, policy)) {
        const InformationUnit& iu = st.summary_ius[c.iu];
        const Sentence& s = st.sentences[c.sentence];
        ordered_json r;
        r["topic_id"] = topic.id();
        r["summary_id"] = iu.parent_id;
        r["summary_span"] = jsonl::SpanJson(iu.span);
        r["doc_id"] = s.parent_id;
        r["doc_sentence"] = s.index;
        r["doc_span"] = jsonl::SpanJson(Span{s.range()});
        r["rouge1_precision"] = c.rouge1_precision;
        r["similarity"] = c.similarity;
        r["entailment"] = c.entailment;
        o << jsonl::Dump(r) << '\n';
      }
      const AlignmentSet* g = FindSet(gold, topic.id());
      const AlignmentSet none(topic.id());
      const FilterDiagnostics d =
          Diagnose(st.scores, st.summary_ius, st.sentences, policy,
                   gold.empty() ? nullptr : (g ? g : &none), f.threshold);
      diag << topic.id() << '\t' << d.total << '\t' << d.kept << '\t'
           << Fixed2(d.reduction) << '\t'
           << (d.recall ? Fixed2(*d.recall) : "NA") << '\n';
      AppendTopic(merged, topic.id(), st.scores, st.summary_ius, st.sentences,
                  g);
    }
  });
  const FilterDiagnostics total =
      Diagnose(merged.scores, merged.ius, merged.sentences, policy,
               gold.empty() ? nullptr : &merged.gold, f.threshold);
  diag << "ALL\t" << total.total << '\t' << total.kept << '\t'
       << Fixed2(total.reduction) << '\t'
       << (total.recall ? Fixed2(*total.recall) : "NA") << '\n';
  if (!f.diagnostics.empty()) {
    WriteOutput(f.diagnostics, out, [&](std::ostream& o) { o << diag.str(); });
  } else {
    err << diag.str();
  }
  return kExitOk;
}

struct CalibrateFlags {
  std::string topics, units, gold, out = "-";
  double threshold = kDefaultThreshold;
  double recall_target = 90.0;
  ScorerFlags scorer;
};

int RunCalibrate(const CalibrateFlags& f, std::ostream& out, std::ostream&) {
  const Workspace w = LoadWorkspace(f.topics, f.units);
  const std::vector<AlignmentSet> gold = LoadResolved(f.gold, w.topics);
  auto scorer = f.scorer.Make();
  const std::vector<ScoredTopic> scored = ScoreWorkspace(w, *scorer);
  MergedCandidates merged;
  for (size_t i = 0; i < w.topics.size(); ++i) {
    AppendTopic(merged, w.topics[i].id(), scored[i].scores,
                scored[i].summary_ius, scored[i].sentences,
                FindSet(gold, w.topics[i].id()));
  }
  const CalibrationResult r =
      Calibrate(merged.scores, merged.ius, merged.sentences, merged.gold,
                f.recall_target, f.threshold);
  ordered_json j;
  j["theta_r"] = r.policy.theta_r;
  j["theta_b"] = r.policy.theta_b;
  j["theta_e"] = r.policy.theta_e;
  j["reduction"] = r.reduction;
  j["recall"] = r.recall;
  j["feasible"] = r.feasible;
  WriteOutput(f.out, out, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  return kExitOk;
}

// ---- align -----------------------------------------------------------------

struct AlignFlags {
  std::string method = "rouge-iu", topics, units, out = "-";
  std::string measure = "mean-f1";
  int k = 2;
  int max_per = 2;
  int top_k = 10;
  double threshold = 0.5;
  bool no_filter = false;
  std::string policy;
  ScorerFlags scorer;
};

int RunAlign(const AlignFlags& f, std::ostream& out, std::ostream&) {
  const RougeMeasure measure = ParseRougeMeasure(f.measure);
  const bool needs_units = f.method == "rouge-iu" ||
                           f.method == "sim-ensemble" ||
                           f.method == "supervised";
  const bool needs_scorer =
      f.method == "sim-ensemble" || f.method == "supervised";
  Workspace w;
  if (needs_units) {
    w = LoadWorkspace(f.topics, f.units);
  } else {
    w.topics = LoadTopics(f.topics);
  }
  const FilterPolicy policy =
      f.policy.empty() ? FilterPolicy{} : LoadPolicy(f.policy);
  std::unique_ptr<PairScorer> scorer;
  if (needs_scorer) scorer = f.scorer.Make();
  std::vector<AlignmentSet> sets;
  for (size_t i = 0; i < w.topics.size(); ++i) {
    const Topic& topic = w.topics[i];
    std::vector<InformationUnit> sius, dius;
    if (needs_units) SplitUnits(topic, w.units[i], sius, dius);
    if (f.method == "rouge-iu") {
      sets.push_back(AlignRougeIu(topic.id(), sius, dius, f.k, measure));
    } else if (f.method == "sim-ensemble") {
      SimEnsembleOptions options;
      options.top_k = static_cast<size_t>(f.top_k);
      options.policy = policy;
      options.apply_filter = !f.no_filter;
      sets.push_back(AlignSimEnsemble(topic, sius, *scorer, options));
    } else if (f.method == "supervised") {
      sets.push_back(AlignSupervised(
          topic.id(), SupervisedCandidates(topic, sius, dius, *scorer, policy),
          *scorer, f.threshold));
    } else if (f.method == "rouge-full") {
      sets.push_back(RougeFullAlignment(topic));
    } else {
      sets.push_back(AlignRougeSent(topic, f.max_per, measure).alignments);
    }
  }
  WriteOutput(f.out, out, [&](std::ostream& o) { WriteAlignments(o, sets); });
  return kExitOk;
}

// ---- eval ------------------------------------------------------------------

struct EvalFlags {
  std::string pred, gold, report = "tsv", out = "-";
  double threshold = kDefaultThreshold;
};

int RunEval(const EvalFlags& f, std::ostream& out, std::ostream&) {
  const std::vector<AlignmentSet> pred = LoadAlignments(f.pred);
  const std::vector<AlignmentSet> gold = LoadAlignments(f.gold);
  const EvaluationReport r = Evaluate(pred, gold, f.threshold);
  WriteOutput(f.out, out, [&](std::ostream& o) {
    if (f.report == "tsv") {
      o << "Rec_t\tPrec_t\tF1\tCover_t\tF1_cover\tCoJac^T\tCoJac^P\n";
      o << Fixed2(r.match.recall) << '\t' << Fixed2(r.match.precision) << '\t'
        << Fixed2(r.match.f1) << '\t' << Fixed2(r.coverage.coverage) << '\t'
        << Fixed2(r.coverage.f1_cover) << '\t' << Fixed2(r.cojac.cojac_t)
        << '\t' << Fixed2(r.cojac.cojac_p) << '\n';
      return;
    }
    ordered_json j;
    j["threshold"] = f.threshold;
    j["Rec_t"] = r.match.recall;
    j["Prec_t"] = r.match.precision;
    j["F1"] = r.match.f1;
    j["Cover_t"] = r.coverage.coverage;
    j["F1_cover"] = r.coverage.f1_cover;
    j["CoJac^T"] = r.cojac.cojac_t;
    j["CoJac^P"] = r.cojac.cojac_p;
    ordered_json undefined;
    undefined["recall"] = r.match.recall_undefined;
    undefined["precision"] = r.match.precision_undefined;
    undefined["coverage"] = r.coverage.undefined;
    undefined["cojac_t"] = r.cojac.t_empty;
    undefined["cojac_p"] = r.cojac.p_empty;
    j["undefined"] = std::move(undefined);
    ordered_json counts;
    counts["predicted"] = r.tally.predicted;
    counts["gold"] = r.tally.gold;
    counts["matched_predicted"] = r.tally.matched_predicted;
    counts["matched_gold"] = r.tally.matched_gold;
    counts["gold_summary_units"] = r.tally.gold_summary_units;
    counts["covered_summary_units"] = r.tally.covered_summary_units;
    j["counts"] = std::move(counts);
    o << j.dump(2) << '\n';
  });
  return kExitOk;
}

// ---- aggregate -------------------------------------------------------------

struct AggregateFlags {
  std::string in, out = "-", topics;
  AffinityParams params;
};

int RunAggregate(const AggregateFlags& f, const Common& c, std::ostream& out,
                 std::ostream& err) {
  const std::vector<WorkerAnnotation> anns = LoadWorkerAnnotations(f.in);
  std::vector<AlignmentSet> sets = AggregateAll(anns, c.seed, f.params);
  if (!f.topics.empty()) {
    const std::vector<Topic> topics = LoadTopics(f.topics);
    for (AlignmentSet& set : sets) {
      const Topic* topic = nullptr;
      for (const Topic& t : topics) {
        if (t.id() == set.topic_id()) topic = &t;
      }
      if (topic == nullptr) {
        throw IntegrityError("aggregate: unknown topic '" + set.topic_id() +
                             "'");
      }
      ResolveAlignments(set, *topic);
    }
  }
  size_t pairs = 0;
  for (const AlignmentSet& s : sets) pairs += s.size();
  err << "spanalign: aggregate: " << anns.size() << " worker annotation(s) -> "
      << pairs << " gold pair(s)\n";
  WriteOutput(f.out, out, [&](std::ostream& o) { WriteAlignments(o, sets); });
  return kExitOk;
}

// ---- derive / stats --------------------------------------------------------

struct DeriveFlags {
  std::string task, alignments, topics, pyramid, units, out = "-";
  std::string topics_out, format = "tsv";
  TrainingPairOptions training;
  ScorerFlags scorer;
};

int RunStatsFrom(const std::vector<TopicDerivation>& d,
                 const std::string& format, const std::string& path,
                 std::ostream& out) {
  const DatasetStats stats = ComputeStats(d);
  WriteOutput(path, out, [&](std::ostream& o) {
    if (format == "json") {
      o << StatsJson(stats) << '\n';
    } else {
      WriteStatsTsv(o, stats);
    }
  });
  return kExitOk;
}

int RunDerive(const DeriveFlags& f, const Common& c, std::ostream& out,
              std::ostream& err) {
  if (f.task == "pyramid" || f.task == "train-pairs") {
    std::vector<Topic> topics;
    std::vector<AlignmentSet> gold;
    if (!f.pyramid.empty()) {
      const std::vector<PyramidTopic> corpus = LoadPyramid(f.pyramid);
      PyramidResult r = PyramidTransitiveAlign(corpus);
      err << "spanalign: derive: " << r.emitted << " pair(s), " << r.skipped
          << " link piece(s) without an extractive source skipped\n";
      for (const PyramidTopic& pt : corpus) topics.push_back(pt.topic);
      gold = std::move(r.sets);
    } else if (f.task == "train-pairs" && !f.alignments.empty() &&
               !f.topics.empty()) {
      topics = LoadTopics(f.topics);
      gold = LoadResolved(f.alignments, topics);
    } else {
      throw InvalidArgument("--task " + f.task +
                            " needs --pyramid (or --alignments and --topics "
                            "for train-pairs)");
    }
    if (f.task == "pyramid") {
      if (!f.topics_out.empty()) {
        WriteOutput(f.topics_out, out,
                    [&](std::ostream& o) { WriteTopics(o, topics); });
      }
      WriteOutput(f.out, out,
                  [&](std::ostream& o) { WriteAlignments(o, gold); });
      return kExitOk;
    }
    std::vector<TopicUnits> units;
    if (!f.units.empty()) {
      units = ImportUnits(f.units, topics);
    } else {
      for (const Topic& t : topics) units.push_back(ExtractTopicUnits(t));
    }
    std::unique_ptr<PairScorer> scorer;
    if (f.scorer.Configured()) scorer = f.scorer.Make();
    std::vector<TrainingPair> pairs;
    bool warned = false;
    for (size_t i = 0; i < topics.size(); ++i) {
      const AlignmentSet* g = FindSet(gold, topics[i].id());
      if (g == nullptr) continue;
      std::vector<InformationUnit> sius, dius;
      for (const TopicUnits& u : units) {
        if (u.topic_id == topics[i].id()) SplitUnits(topics[i], u, sius, dius);
      }
      TrainingPairResult r =
          BuildTrainingPairs(*g, sius, dius, scorer.get(), f.training);
      if (r.hard_negatives_omitted && !warned) {
        err << "spanalign: warning: " << r.warning << '\n';
        warned = true;
      }
      for (TrainingPair& p : r.pairs) pairs.push_back(std::move(p));
    }
    WriteOutput(f.out, out,
                [&](std::ostream& o) { WriteTrainingPairs(o, pairs); });
    return kExitOk;
  }
  if (f.alignments.empty() || f.topics.empty()) {
    throw InvalidArgument("--task " + f.task +
                          " needs --alignments and --topics");
  }
  const std::vector<Topic> topics = LoadTopics(f.topics);
  const std::vector<AlignmentSet> sets = LoadResolved(f.alignments, topics);
  const std::vector<TopicDerivation> d = DeriveDataset(sets, topics, c.seed);
  if (f.task == "stats") return RunStatsFrom(d, f.format, f.out, out);
  using Writer = void (*)(std::ostream&, const std::vector<TopicDerivation>&);
  const std::map<std::string, Writer> writers = {
      {"salience", &WriteSalience}, {"clusters", &WriteClusters},
      {"plans", &WritePlans},       {"fusion", &WriteFusion},
      {"ordering", &WriteOrdering}};
  const Writer writer = writers.at(f.task);
  WriteOutput(f.out, out, [&](std::ostream& o) { writer(o, d); });
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app("Span-level summary-source alignment toolkit", "spanalign");
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config file (flags override it)");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.option_defaults()->always_capture_default();
  app.fallthrough();
  app.require_subcommand(1);

  Common common;
  app.add_option("--seed", common.seed, "Random seed");
  app.add_option("--jobs", common.jobs,
                 "Worker threads (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);

  const std::vector<std::string> methods = {"rouge-iu", "sim-ensemble",
                                            "supervised", "rouge-full",
                                            "rouge-sent"};
  const std::vector<std::string> measures = {"mean-f1", "rouge1-f1",
                                             "rouge2-f1", "rougeL-f1"};

  ExtractFlags extract;
  CLI::App* cmd_extract = app.add_subcommand("extract", "Extract IUs");
  cmd_extract->add_option("--in", extract.in, "Topic JSONL")->required();
  cmd_extract->add_option("--out", extract.out, "IU JSONL ('-' = stdout)");
  cmd_extract->add_option("--mode", extract.mode, "Extraction mode")
      ->check(CLI::IsMember({"heuristic", "import"}));
  cmd_extract->add_option("--units", extract.units,
                          "IU JSONL to import in import mode");

  FilterFlags filter;
  CLI::App* cmd_filter =
      app.add_subcommand("filter", "Score and filter IU-sentence candidates");
  cmd_filter->add_option("--topics", filter.topics, "Topic JSONL")->required();
  cmd_filter->add_option("--units", filter.units,
                         "IU JSONL (default: heuristic extraction)");
  cmd_filter->add_option("--gold", filter.gold,
                         "Gold alignments for the recall diagnostic");
  cmd_filter->add_option("--policy", filter.policy,
                         "Policy JSON {theta_r, theta_b, theta_e}");
  cmd_filter->add_option("--theta-r", filter.theta_r, "ROUGE-1 threshold");
  cmd_filter->add_option("--theta-b", filter.theta_b, "Similarity threshold");
  cmd_filter->add_option("--theta-e", filter.theta_e, "Entailment threshold");
  cmd_filter->add_option("--threshold", filter.threshold,
                         "Jaccard threshold for recall")
      ->check(CLI::Range(0.0, 1.0));
  cmd_filter->add_option("--out", filter.out, "Surviving-pair JSONL");
  cmd_filter->add_option("--diagnostics", filter.diagnostics,
                         "Diagnostics TSV (default: stderr)");
  filter.scorer.Add(cmd_filter);

  CalibrateFlags calibrate;
  CLI::App* cmd_calibrate =
      app.add_subcommand("calibrate", "Grid-search filter thresholds");
  cmd_calibrate->add_option("--topics", calibrate.topics, "Topic JSONL")
      ->required();
  cmd_calibrate->add_option("--units", calibrate.units, "IU JSONL");
  cmd_calibrate->add_option("--gold", calibrate.gold, "Gold alignments")
      ->required();
  cmd_calibrate->add_option("--recall-target", calibrate.recall_target,
                            "Minimum recall, percent")
      ->check(CLI::Range(0.0, 100.0));
  cmd_calibrate->add_option("--threshold", calibrate.threshold,
                            "Jaccard threshold for recall")
      ->check(CLI::Range(0.0, 1.0));
  cmd_calibrate->add_option("--out", calibrate.out, "Policy JSON");
  calibrate.scorer.Add(cmd_calibrate);

  AlignFlags align;
  CLI::App* cmd_align = app.add_subcommand("align", "Run an aligner");
  cmd_align->add_option("--method", align.method, "Aligner")
      ->check(CLI::IsMember(methods));
  cmd_align->add_option("--topics", align.topics, "Topic JSONL")->required();
  cmd_align->add_option("--units", align.units,
                        "IU JSONL (default: heuristic extraction)");
  cmd_align->add_option("--k", align.k, "Matches per summary IU (rouge-iu)")
      ->check(CLI::PositiveNumber);
  cmd_align->add_option("--measure", align.measure, "ROUGE measure")
      ->check(CLI::IsMember(measures));
  cmd_align->add_option("--threshold", align.threshold,
                        "Probability threshold (supervised)")
      ->check(CLI::Range(0.0, 1.0));
  cmd_align->add_option("--max-per", align.max_per,
                        "Sentences per summary sentence (rouge-sent)")
      ->check(CLI::PositiveNumber);
  cmd_align->add_option("--top-k", align.top_k,
                        "Candidate sentences per IU (sim-ensemble)")
      ->check(CLI::PositiveNumber);
  cmd_align->add_flag("--no-filter", align.no_filter,
                      "Skip the automatic filter (sim-ensemble)");
  cmd_align->add_option("--policy", align.policy, "Filter policy JSON");
  cmd_align->add_option("--out", align.out, "Alignment JSONL");
  align.scorer.Add(cmd_align);

  EvalFlags eval;
  CLI::App* cmd_eval = app.add_subcommand("eval", "Evaluate alignments");
  cmd_eval->add_option("--pred", eval.pred, "Predicted alignments")
      ->required();
  cmd_eval->add_option("--gold", eval.gold, "Gold alignments")->required();
  cmd_eval->add_option("--threshold", eval.threshold, "Jaccard threshold")
      ->check(CLI::Range(0.0, 1.0));
  cmd_eval->add_option("--report", eval.report, "Report format")
      ->check(CLI::IsMember({"tsv", "json"}));
  cmd_eval->add_option("--out", eval.out, "Report path");

  AggregateFlags aggregate;
  CLI::App* cmd_aggregate =
      app.add_subcommand("aggregate", "Aggregate worker annotations");
  cmd_aggregate->add_option("--in", aggregate.in, "Worker annotation JSONL")
      ->required();
  cmd_aggregate->add_option("--out", aggregate.out, "Gold alignment JSONL");
  cmd_aggregate->add_option("--topics", aggregate.topics,
                            "Topic JSONL for span validation");
  cmd_aggregate->add_option("--ap-damping", aggregate.params.damping,
                            "Affinity propagation damping");
  cmd_aggregate->add_option("--ap-max-iter", aggregate.params.max_iter,
                            "Affinity propagation iteration cap")
      ->check(CLI::PositiveNumber);
  cmd_aggregate->add_option("--ap-convergence-iter",
                            aggregate.params.convergence_iter,
                            "Stable iterations before stopping")
      ->check(CLI::PositiveNumber);

  DeriveFlags derive;
  CLI::App* cmd_derive = app.add_subcommand("derive", "Derive datasets");
  cmd_derive->add_option("--task", derive.task, "Derived dataset")
      ->required()
      ->check(CLI::IsMember({"salience", "clusters", "plans", "fusion",
                             "ordering", "pyramid", "train-pairs", "stats"}));
  cmd_derive->add_option("--alignments", derive.alignments,
                         "Alignment JSONL");
  cmd_derive->add_option("--topics", derive.topics, "Topic JSONL");
  cmd_derive->add_option("--pyramid", derive.pyramid, "Pyramid JSONL");
  cmd_derive->add_option("--units", derive.units,
                         "IU JSONL for train-pairs (default: heuristic)");
  cmd_derive->add_option("--topics-out", derive.topics_out,
                         "Topic JSONL written by the pyramid task");
  cmd_derive->add_option("--positive-threshold",
                         derive.training.positive_threshold,
                         "Joint Jaccard for positives")
      ->check(CLI::Range(0.0, 1.0));
  cmd_derive->add_option("--hard-negative-similarity",
                         derive.training.hard_negative_similarity,
                         "Similarity above which unaligned pairs are hard "
                         "negatives");
  cmd_derive->add_option("--format", derive.format, "Stats format")
      ->check(CLI::IsMember({"tsv", "json"}));
  cmd_derive->add_option("--out", derive.out, "Output path");
  derive.scorer.Add(cmd_derive);

  DeriveFlags stats;
  stats.task = "stats";
  CLI::App* cmd_stats = app.add_subcommand("stats", "Derived dataset stats");
  cmd_stats->add_option("--alignments", stats.alignments, "Alignment JSONL")
      ->required();
  cmd_stats->add_option("--topics", stats.topics, "Topic JSONL")->required();
  cmd_stats->add_option("--format", stats.format, "Report format")
      ->check(CLI::IsMember({"tsv", "json"}));
  cmd_stats->add_option("--out", stats.out, "Report path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  LogConfig(err, app, *cmd);
  SetJobs(common.jobs);
  try {
    if (cmd == cmd_extract) return RunExtract(extract, out, err);
    if (cmd == cmd_filter) return RunFilter(filter, out, err);
    if (cmd == cmd_calibrate) return RunCalibrate(calibrate, out, err);
    if (cmd == cmd_align) return RunAlign(align, out, err);
    if (cmd == cmd_eval) return RunEval(eval, out, err);
    if (cmd == cmd_aggregate) return RunAggregate(aggregate, common, out, err);
    if (cmd == cmd_derive) return RunDerive(derive, common, out, err);
    return RunDerive(stats, common, out, err);
  } catch (const InvalidArgument& e) {
    err << "spanalign: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ScorerError& e) {
    err << "spanalign: scorer error: " << e.what() << '\n';
    return kExitScorer;
  } catch (const ParseError& e) {
    err << "spanalign: input error: " << e.what() << '\n';
    return kExitIntegrity;
  } catch (const IntegrityError& e) {
    err << "spanalign: integrity error: " << e.what() << '\n';
    return kExitIntegrity;
  } catch (const std::exception& e) {
    err << "spanalign: error: " << e.what() << '\n';
    return kExitIntegrity;
  }
}

}  // namespace spanalign
