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

#include "spanalign/aggregation.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <tuple>

#include "spanalign/alignment_metrics.h"
#include "spanalign/corpus_io.h"
#include "spanalign/errors.h"
#include "spanalign/jsonl.h"

namespace spanalign {
namespace {

void Validate(const Matrix& s, const AffinityParams& params) {
  const size_t n = s.size();
  for (const auto& row : s) {
    if (row.size() != n) throw InvalidArgument("similarity matrix not square");
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (std::abs(s[i][j] - s[j][i]) > 1e-12) {
        throw InvalidArgument("similarity matrix not symmetric");
      }
    }
  }
  if (!(params.damping >= 0.5 && params.damping < 1.0)) {
    throw InvalidArgument("damping must be in [0.5, 1)");
  }
  if (params.max_iter < 1 || params.convergence_iter < 1) {
    throw InvalidArgument("iteration limits must be positive");
  }
}

}  // namespace

double MedianOffDiagonal(const Matrix& similarity) {
  std::vector<double> values;
  for (size_t i = 0; i < similarity.size(); ++i) {
    for (size_t j = 0; j < similarity.size(); ++j) {
      if (i != j) values.push_back(similarity[i][j]);
    }
  }
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const size_t m = values.size();
  return m % 2 ? values[m / 2] : (values[m / 2 - 1] + values[m / 2]) / 2.0;
}

ClusterResult AffinityPropagation(const Matrix& similarity,
                                  const AffinityParams& params,
                                  Execution execution) {
  Validate(similarity, params);
  const long n = static_cast<long>(similarity.size());
  ClusterResult out;
  if (n == 0) {
    out.converged = true;
    return out;
  }
  if (n == 1) {
    out.labels = {0};
    out.exemplars = {0};
    out.converged = true;
    return out;
  }
  const double preference =
      params.preference.value_or(MedianOffDiagonal(similarity));
  std::vector<double> s(n * n), r(n * n, 0.0), a(n * n, 0.0), tmp(n * n);
  for (long i = 0; i < n; ++i) {
    for (long k = 0; k < n; ++k) {
      s[i * n + k] = i == k ? preference : similarity[i][k];
    }
  }
  std::mt19937_64 noise_rng(params.noise_seed);
  std::normal_distribution<double> normal;
  for (double& v : s) v += 1e-12 * (std::abs(v) + 1.0) * normal(noise_rng);
  const double lambda = params.damping;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<char>> history(
      params.convergence_iter, std::vector<char>(n, 0));
  std::vector<char> is_exemplar(n, 0);
  int it = 0;
  for (; it < params.max_iter; ++it) {
    // Responsibilities, row by row.
    ParallelFor(n, execution, [&](long i) {
      double first = -inf, second = -inf;
      long best = 0;
      for (long k = 0; k < n; ++k) {
        const double v = a[i * n + k] + s[i * n + k];
        if (v > first) {
          second = first;
          first = v;
          best = k;
        } else if (v > second) {
          second = v;
        }
      }
      for (long k = 0; k < n; ++k) {
        const double update = s[i * n + k] - (k == best ? second : first);
        r[i * n + k] = lambda * r[i * n + k] + (1 - lambda) * update;
      }
    });
    // Availabilities, column by column.
    ParallelFor(n, execution, [&](long k) {
      double total = 0.0;
      for (long i = 0; i < n; ++i) {
        total += i == k ? r[i * n + k] : std::max(0.0, r[i * n + k]);
      }
      for (long i = 0; i < n; ++i) {
        const double own = i == k ? r[i * n + k] : std::max(0.0, r[i * n + k]);
        double update = total - own;
        if (i != k) update = std::min(0.0, update);
        a[i * n + k] = lambda * a[i * n + k] + (1 - lambda) * update;
      }
    });
    long count = 0;
    for (long i = 0; i < n; ++i) {
      is_exemplar[i] = a[i * n + i] + r[i * n + i] > 0;
      count += is_exemplar[i];
    }
    history[it % params.convergence_iter] = is_exemplar;
    if (it + 1 >= params.convergence_iter) {
      bool stable = true;
      for (long i = 0; i < n && stable; ++i) {
        int on = 0;
        for (const auto& h : history) on += h[i];
        stable = on == 0 || on == params.convergence_iter;
      }
      if (stable && count > 0) {
        out.converged = true;
        ++it;
        break;
      }
    }
  }
  out.iterations = it;

  std::vector<long> exemplars;
  for (long i = 0; i < n; ++i) {
    if (is_exemplar[i]) exemplars.push_back(i);
  }
  if (exemplars.empty()) {
    out.converged = false;
    for (long i = 0; i < n; ++i) {
      out.labels.push_back(static_cast<int>(i));
      out.exemplars.push_back(static_cast<int>(i));
    }
    return out;
  }
  auto assign = [&](const std::vector<long>& centers) {
    std::vector<long> c(n);
    for (long i = 0; i < n; ++i) {
      long best = 0;
      for (size_t e = 1; e < centers.size(); ++e) {
        if (s[i * n + centers[e]] > s[i * n + centers[best]]) best = static_cast<long>(e);
      }
      c[i] = best;
    }
    for (size_t e = 0; e < centers.size(); ++e) c[centers[e]] = static_cast<long>(e);
    return c;
  };
  // Refine each exemplar to the member with the highest total similarity to
  // its cluster, then reassign.
  std::vector<long> c = assign(exemplars);
  for (size_t e = 0; e < exemplars.size(); ++e) {
    std::vector<long> members;
    for (long i = 0; i < n; ++i) {
      if (c[i] == static_cast<long>(e)) members.push_back(i);
    }
    long best = members.front();
    double best_sum = -inf;
    for (long j : members) {
      double sum = 0.0;
      for (long i : members) sum += s[i * n + j];
      if (sum > best_sum) {
        best_sum = sum;
        best = j;
      }
    }
    exemplars[e] = best;
  }
  c = assign(exemplars);
  // Relabel by exemplar index order.
  std::vector<long> centers(n);
  for (long i = 0; i < n; ++i) centers[i] = exemplars[c[i]];
  std::vector<long> unique = centers;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  for (long i = 0; i < n; ++i) {
    out.labels.push_back(static_cast<int>(
        std::lower_bound(unique.begin(), unique.end(), centers[i]) -
        unique.begin()));
  }
  for (long u : unique) out.exemplars.push_back(static_cast<int>(u));
  return out;
}

CharIndex JointLength(const AlignmentPair& pair) {
  return pair.summary_iu.span.length() + pair.doc_iu.span.length();
}

std::optional<AlignmentPair> AggregateSpanAnnotations(
    const std::vector<AlignmentPair>& annotations, uint64_t seed,
    const AffinityParams& params, Execution execution) {
  const size_t n = annotations.size();
  if (n == 0) return std::nullopt;
  Matrix sim(n, std::vector<double>(n, 1.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      sim[i][j] = sim[j][i] = JointJaccard(annotations[i], annotations[j]);
    }
  }
  const ClusterResult clusters = AffinityPropagation(sim, params, execution);
  std::vector<std::vector<size_t>> members(clusters.exemplars.size());
  for (size_t i = 0; i < n; ++i) members[clusters.labels[i]].push_back(i);
  size_t biggest = 0;
  for (const auto& m : members) biggest = std::max(biggest, m.size());
  std::vector<size_t> tied;
  for (size_t c = 0; c < members.size(); ++c) {
    if (members[c].size() == biggest) tied.push_back(c);
  }
  std::mt19937_64 rng(seed);
  const size_t chosen =
      tied.size() == 1 ? tied.front() : tied[rng() % tied.size()];
  std::vector<size_t> group = members[chosen];
  std::stable_sort(group.begin(), group.end(), [&](size_t x, size_t y) {
    return JointLength(annotations[x]) < JointLength(annotations[y]);
  });
  return annotations[group[group.size() / 2]];
}

std::vector<WorkerAnnotation> ReadWorkerAnnotations(std::istream& in,
                                                    const std::string& source) {
  std::vector<WorkerAnnotation> out;
  const Provenance annotated = Provenance::kAnnotated;
  jsonl::ForEachRecord(in, source, [&](const jsonl::json& r, int line) {
    const std::string where = jsonl::Where(source, line);
    WorkerAnnotation a;
    a.worker_id = jsonl::RequireString(r, "worker_id", where);
    if (r.contains("candidate_id")) {
      const auto& c = r.at("candidate_id");
      a.candidate_id = c.is_string() ? c.get<std::string>() : c.dump();
    }
    if (!r.contains("pair") || !r.at("pair").is_object()) {
      throw ParseError(where + "missing object field 'pair'");
    }
    auto [topic, pair] = jsonl::ParsePair(r.at("pair"), where, &annotated);
    a.topic_id = std::move(topic);
    a.pair = std::move(pair);
    out.push_back(std::move(a));
  });
  return out;
}

std::vector<WorkerAnnotation> LoadWorkerAnnotations(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  return ReadWorkerAnnotations(in, path);
}

void WriteWorkerAnnotations(std::ostream& out,
                            const std::vector<WorkerAnnotation>& annotations) {
  for (const WorkerAnnotation& a : annotations) {
    jsonl::ordered_json r;
    r["worker_id"] = a.worker_id;
    if (!a.candidate_id.empty()) r["candidate_id"] = a.candidate_id;
    r["pair"] = jsonl::PairJson(a.topic_id, a.pair);
    out << jsonl::Dump(r) << '\n';
  }
}

std::vector<AlignmentSet> AggregateAll(
    const std::vector<WorkerAnnotation>& annotations, uint64_t seed,
    const AffinityParams& params, Execution execution) {
  using Key = std::tuple<std::string, std::string, std::string, std::string>;
  std::map<Key, size_t> index;
  std::vector<std::vector<AlignmentPair>> groups;
  std::vector<std::string> group_topic;
  for (const WorkerAnnotation& a : annotations) {
    const Key key{a.topic_id, a.pair.summary_iu.parent_id,
                  a.pair.doc_iu.parent_id, a.candidate_id};
    auto [it, inserted] = index.try_emplace(key, groups.size());
    if (inserted) {
      groups.emplace_back();
      group_topic.push_back(a.topic_id);
    }
    groups[it->second].push_back(a.pair);
  }
  std::vector<std::optional<AlignmentPair>> chosen(groups.size());
  ParallelFor(static_cast<long>(groups.size()), execution, [&](long g) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(g)};
    std::mt19937_64 derive(seq);
    chosen[g] = AggregateSpanAnnotations(groups[g], derive(), params,
                                         Execution::kSerial);
  });
  std::vector<AlignmentSet> sets;
  std::map<std::string, size_t> topic_index;
  for (size_t g = 0; g < groups.size(); ++g) {
    if (!chosen[g]) continue;
    auto [it, inserted] = topic_index.try_emplace(group_topic[g], sets.size());
    if (inserted) sets.emplace_back(group_topic[g]);
    AlignmentPair p = *chosen[g];
    p.provenance = Provenance::kAnnotated;
    sets[it->second].Add(std::move(p));
  }
  return sets;
}

}  // namespace spanalign
