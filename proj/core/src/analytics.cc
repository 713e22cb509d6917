// Copyright 2026 The Framelens Authors.
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

#include "framelens/analytics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "framelens/errors.h"
#include "framelens/evaluate.h"
#include "framelens/util.h"

namespace framelens {
namespace {

bool InScope(const AnalysisRecord &r, const TopicScope &scope) {
  if (!scope) return true;
  return r.topic && NormalizeTopic(*r.topic) == NormalizeTopic(*scope);
}

const std::optional<LabelSet> &FramesOf(const AnalysisRecord &r, Modality m) {
  return m == Modality::kText ? r.text_frames : r.image_frames;
}

std::string Id(int i) { return std::string(CanonicalId(FrameAt(i))); }

Json OptionalNumber(const std::optional<double> &v) {
  return v ? Json(*v) : Json();
}

std::string OptionalCsv(const std::optional<double> &v) {
  return v ? FormatDouble(*v) : std::string();
}

}  // namespace

std::string ScopeName(const TopicScope &scope) {
  return scope ? "topic:" + NormalizeTopic(*scope) : "global";
}

int64_t FrameStats::TotalLabels() const {
  int64_t t = 0;
  for (int64_t c : counts) t += c;
  return t;
}

Json FrameStats::ToJson() const {
  Json c = Json::object();
  Json p = Json::object();
  const int64_t total = TotalLabels();
  for (int i = 0; i < kNumFrames; ++i) {
    c[Id(i)] = counts[i];
    p[Id(i)] = total ? static_cast<double>(counts[i]) / static_cast<double>(total) : 0.0;
  }
  return Json{{"modality", ModalityName(modality)},
              {"n_articles", n_articles},
              {"mean_labels_per_item", mean_labels_per_item},
              {"counts", std::move(c)},
              {"proportions", std::move(p)}};
}

std::string FrameStats::ToCsv(const std::string &scope) const {
  std::string out = "scope,modality,label,count,proportion\n";
  const int64_t total = TotalLabels();
  for (int i = 0; i < kNumFrames; ++i) {
    double prop = total ? static_cast<double>(counts[i]) / static_cast<double>(total) : 0.0;
    out += CsvField(scope) + "," + std::string(ModalityName(modality)) + "," + CsvField(Id(i)) +
           "," + std::to_string(counts[i]) + "," + FormatDouble(prop) + "\n";
  }
  return out;
}

FrameStats ComputeFrameFrequencies(std::span<const AnalysisRecord> records,
                                   Modality modality, const TopicScope &scope) {
  FrameStats s;
  s.modality = modality;
  for (const AnalysisRecord &r : records) {
    const auto &frames = FramesOf(r, modality);
    if (!frames || !InScope(r, scope)) continue;
    ++s.n_articles;
    for (Frame f : frames->ToVector()) ++s.counts[FrameIndex(f)];
  }
  if (s.n_articles == 0) {
    throw Error("EmptyInput", "no records with " + std::string(ModalityName(modality)) +
                                  " frames in scope " + ScopeName(scope));
  }
  s.mean_labels_per_item =
      static_cast<double>(s.TotalLabels()) / static_cast<double>(s.n_articles);
  return s;
}

FrameArray<int> DenseRanks(const FrameArray<int64_t> &counts) {
  std::vector<int64_t> distinct(counts.begin(), counts.end());
  std::sort(distinct.begin(), distinct.end(), std::greater<>());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  FrameArray<int> ranks{};
  for (int i = 0; i < kNumFrames; ++i) {
    auto it = std::find(distinct.begin(), distinct.end(), counts[i]);
    ranks[i] = static_cast<int>(it - distinct.begin()) + 1;
  }
  return ranks;
}

FrameArray<int> RankDifference(const FrameStats &text, const FrameStats &image) {
  FrameArray<int> rt = DenseRanks(text.counts);
  FrameArray<int> ri = DenseRanks(image.counts);
  FrameArray<int> out{};
  for (int i = 0; i < kNumFrames; ++i) out[i] = ri[i] - rt[i];
  return out;
}

std::string RankDifferenceCsv(const FrameArray<int> &scores, const std::string &scope) {
  std::vector<int> order(kNumFrames);
  for (int i = 0; i < kNumFrames; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [](int a, int b) { return Id(a) < Id(b); });
  std::string out = "scope,label,rank_difference\n";
  for (int i : order) {
    out += CsvField(scope) + "," + CsvField(Id(i)) + "," + std::to_string(scores[i]) + "\n";
  }
  return out;
}

CooccurrenceMatrix ComputePmi(std::span<const AnalysisRecord> records,
                              const TopicScope &scope) {
  CooccurrenceMatrix m;
  m.scope = ScopeName(scope);
  for (const AnalysisRecord &r : records) {
    if (!r.text_frames || !r.image_frames || !InScope(r, scope)) continue;
    ++m.n;
    std::vector<Frame> text = r.text_frames->ToVector();
    std::vector<Frame> image = r.image_frames->ToVector();
    for (Frame t : text) ++m.text_marginal[FrameIndex(t)];
    for (Frame i : image) ++m.image_marginal[FrameIndex(i)];
    for (Frame t : text) {
      for (Frame i : image) ++m.joint[FrameIndex(t)][FrameIndex(i)];
    }
  }
  if (m.n == 0) throw Error("EmptyInput", "no records with both frame sets in " + m.scope);
  const auto n = static_cast<double>(m.n);
  for (int t = 0; t < kNumFrames; ++t) {
    for (int i = 0; i < kNumFrames; ++i) {
      if (m.joint[t][i] == 0) continue;
      m.pmi[t][i] = std::log2(static_cast<double>(m.joint[t][i]) * n /
                              (static_cast<double>(m.text_marginal[t]) *
                               static_cast<double>(m.image_marginal[i])));
    }
  }
  return m;
}

Json CooccurrenceMatrix::ToJson() const {
  Json labels = Json::array();
  Json joint_rows = Json::array();
  Json pmi_rows = Json::array();
  for (int t = 0; t < kNumFrames; ++t) {
    labels.push_back(Id(t));
    joint_rows.push_back(joint[t]);
    Json row = Json::array();
    for (int i = 0; i < kNumFrames; ++i) row.push_back(OptionalNumber(pmi[t][i]));
    pmi_rows.push_back(std::move(row));
  }
  return Json{{"scope", scope},
              {"n", n},
              {"labels", std::move(labels)},
              {"rows", "text label"},
              {"columns", "image label"},
              {"text_marginal", text_marginal},
              {"image_marginal", image_marginal},
              {"joint", std::move(joint_rows)},
              {"pmi", std::move(pmi_rows)}};
}

std::string CooccurrenceMatrix::ToCsv() const {
  std::string out = "scope,text_label,image_label,joint,pmi\n";
  for (int t = 0; t < kNumFrames; ++t) {
    for (int i = 0; i < kNumFrames; ++i) {
      out += CsvField(scope) + "," + CsvField(Id(t)) + "," + CsvField(Id(i)) + "," +
             std::to_string(joint[t][i]) + "," + OptionalCsv(pmi[t][i]) + "\n";
    }
  }
  return out;
}

CooccurrencePct ComputeCooccurrencePct(std::span<const AnalysisRecord> records,
                                       const std::string &topic) {
  CooccurrencePct out;
  out.topic = NormalizeTopic(topic);
  FrameMatrix<int64_t> joint{};  // [image][text]
  bool any = false;
  for (const AnalysisRecord &r : records) {
    if (!InScope(r, topic)) continue;
    any = true;
    if (!r.text_frames || !r.image_frames) continue;
    for (Frame i : r.image_frames->ToVector()) {
      for (Frame t : r.text_frames->ToVector()) ++joint[FrameIndex(i)][FrameIndex(t)];
    }
  }
  if (!any) throw Error("UnknownTopic", "no records for topic '" + topic + "'");
  for (int i = 0; i < kNumFrames; ++i) {
    int64_t mass = 0;
    for (int64_t c : joint[i]) mass += c;
    if (mass == 0) continue;
    for (int t = 0; t < kNumFrames; ++t) {
      out.pct[i][t] = static_cast<double>(joint[i][t]) / static_cast<double>(mass);
    }
  }
  return out;
}

Json CooccurrencePct::ToJson() const {
  Json labels = Json::array();
  Json rows = Json::array();
  for (int i = 0; i < kNumFrames; ++i) {
    labels.push_back(Id(i));
    Json row = Json::array();
    for (int t = 0; t < kNumFrames; ++t) row.push_back(OptionalNumber(pct[i][t]));
    rows.push_back(std::move(row));
  }
  return Json{{"topic", topic},
              {"labels", std::move(labels)},
              {"rows", "image label"},
              {"columns", "text label"},
              {"pct", std::move(rows)}};
}

std::string CooccurrencePct::ToCsv() const {
  std::string out = "scope,image_label,text_label,pct\n";
  for (int i = 0; i < kNumFrames; ++i) {
    for (int t = 0; t < kNumFrames; ++t) {
      out += CsvField("topic:" + topic) + "," + CsvField(Id(i)) + "," + CsvField(Id(t)) + "," +
             OptionalCsv(pct[i][t]) + "\n";
    }
  }
  return out;
}

LeaningDistribution ComputeLeaningDistribution(std::span<const AnalysisRecord> records,
                                               const TopicScope &scope,
                                               Modality modality) {
  LeaningDistribution d;
  d.scope = ScopeName(scope);
  d.modality = modality;
  bool any = false;
  for (const AnalysisRecord &r : records) {
    if (!InScope(r, scope)) continue;
    any = true;
    const auto &frames = FramesOf(r, modality);
    if (!frames || !r.leaning) continue;
    auto &row = d.counts[static_cast<int>(Combine(*r.leaning))];
    for (Frame f : frames->ToVector()) ++row[FrameIndex(f)];
  }
  if (!any) throw Error("UnknownTopic", "no records in scope " + d.scope);
  for (int l = 0; l < kNumCombinedLeanings; ++l) {
    int64_t total = 0;
    for (int64_t c : d.counts[l]) total += c;
    if (total == 0) continue;
    FrameArray<double> p{};
    for (int i = 0; i < kNumFrames; ++i) {
      p[i] = static_cast<double>(d.counts[l][i]) / static_cast<double>(total);
    }
    d.proportions[l] = p;
  }
  return d;
}

Json LeaningDistribution::ToJson() const {
  Json per = Json::object();
  for (int l = 0; l < kNumCombinedLeanings; ++l) {
    Json row = Json::object();
    for (int i = 0; i < kNumFrames; ++i) {
      row[Id(i)] = proportions[l] ? Json((*proportions[l])[i]) : Json();
    }
    per[std::string(CombinedLeaningName(static_cast<CombinedLeaning>(l)))] = std::move(row);
  }
  return Json{{"scope", scope}, {"modality", ModalityName(modality)}, {"per_leaning", std::move(per)}};
}

std::string LeaningDistribution::ToCsv() const {
  std::string out = "scope,modality,leaning,label,count,proportion\n";
  for (int l = 0; l < kNumCombinedLeanings; ++l) {
    std::string leaning(CombinedLeaningName(static_cast<CombinedLeaning>(l)));
    for (int i = 0; i < kNumFrames; ++i) {
      std::optional<double> p;
      if (proportions[l]) p = (*proportions[l])[i];
      out += CsvField(scope) + "," + std::string(ModalityName(modality)) + "," + leaning + "," +
             CsvField(Id(i)) + "," + std::to_string(counts[l][i]) + "," + OptionalCsv(p) + "\n";
    }
  }
  return out;
}

std::string NormalizeIssueFrame(std::string_view raw) {
  std::string s = ToLower(CollapseWhitespace(raw));
  bool start = true;
  for (char &c : s) {
    if (start && std::isalpha(static_cast<unsigned char>(c))) {
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    start = c == ' ' || c == '-';
  }
  return s;
}

IssueFrameTable ComputeIssueFrameTable(std::span<const AnalysisRecord> records,
                                       const TopicScope &scope, int top_k) {
  IssueFrameTable table;
  table.scope = ScopeName(scope);
  table.top_k = top_k;
  std::map<std::string, IssueFrameRow> rows;
  for (const AnalysisRecord &r : records) {
    if (!InScope(r, scope)) continue;
    std::optional<int> leaning;
    if (r.leaning) {
      leaning = static_cast<int>(Combine(*r.leaning));
      ++table.articles_per_leaning[*leaning];
    }
    if (!r.issue_frame) continue;
    std::string key = NormalizeIssueFrame(*r.issue_frame);
    if (key.empty()) continue;
    IssueFrameRow &row = rows[key];
    row.issue_frame = key;
    ++row.total;
    if (leaning) ++row.counts[*leaning];
  }
  for (auto &[key, row] : rows) {
    for (int l = 0; l < kNumCombinedLeanings; ++l) {
      row.normalized[l] = SafeRatio(row.counts[l], table.articles_per_leaning[l]);
    }
    table.rows.push_back(row);
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const IssueFrameRow &a, const IssueFrameRow &b) {
                     return a.total > b.total;
                   });
  if (top_k >= 0 && table.rows.size() > static_cast<size_t>(top_k)) {
    table.rows.resize(static_cast<size_t>(top_k));
  }
  return table;
}

Json IssueFrameTable::ToJson() const {
  Json out_rows = Json::array();
  for (const IssueFrameRow &r : rows) {
    Json counts_j = Json::object();
    Json norm_j = Json::object();
    for (int l = 0; l < kNumCombinedLeanings; ++l) {
      std::string name(CombinedLeaningName(static_cast<CombinedLeaning>(l)));
      counts_j[name] = r.counts[l];
      norm_j[name] = r.normalized[l];
    }
    out_rows.push_back({{"issue_frame", r.issue_frame},
                        {"total", r.total},
                        {"counts", std::move(counts_j)},
                        {"normalized", std::move(norm_j)}});
  }
  Json per = Json::object();
  for (int l = 0; l < kNumCombinedLeanings; ++l) {
    per[std::string(CombinedLeaningName(static_cast<CombinedLeaning>(l)))] =
        articles_per_leaning[l];
  }
  return Json{{"scope", scope},
              {"top_k", top_k},
              {"articles_per_leaning", std::move(per)},
              {"rows", std::move(out_rows)}};
}

std::string IssueFrameTable::ToCsv() const {
  std::string out = "scope,issue_frame,total,leaning,count,normalized\n";
  for (const IssueFrameRow &r : rows) {
    for (int l = 0; l < kNumCombinedLeanings; ++l) {
      out += CsvField(scope) + "," + CsvField(r.issue_frame) + "," + std::to_string(r.total) +
             "," + std::string(CombinedLeaningName(static_cast<CombinedLeaning>(l))) + "," +
             std::to_string(r.counts[l]) + "," + FormatDouble(r.normalized[l]) + "\n";
    }
  }
  return out;
}

std::string EntityKey(std::string_view name) { return ToLower(CollapseWhitespace(name)); }

std::vector<EntityDelta> ComputeEntitySentimentDeltas(std::span<const AnalysisRecord> records,
                                                      int min_support) {
  struct Acc {
    std::string display;
    int64_t n = 0;
    int64_t text_sum = 0;
    int64_t image_sum = 0;
  };
  std::map<std::string, Acc> acc;
  for (const AnalysisRecord &r : records) {
    if (!r.text_entity || !r.image_entity) continue;
    std::string key = EntityKey(r.text_entity->name);
    if (key.empty() || key == "none" || key != EntityKey(r.image_entity->name)) continue;
    auto ts = SentimentScore(r.text_entity->sentiment);
    auto is = SentimentScore(r.image_entity->sentiment);
    if (!ts || !is) continue;
    Acc &a = acc[key];
    if (a.display.empty()) a.display = CollapseWhitespace(r.text_entity->name);
    ++a.n;
    a.text_sum += *ts;
    a.image_sum += *is;
  }
  std::vector<EntityDelta> out;
  for (const auto &[key, a] : acc) {
    if (a.n < min_support) continue;
    EntityDelta d;
    d.name = a.display;
    d.support = a.n;
    d.text_mean = static_cast<double>(a.text_sum) / static_cast<double>(a.n);
    d.image_mean = static_cast<double>(a.image_sum) / static_cast<double>(a.n);
    d.delta = d.image_mean - d.text_mean;
    out.push_back(std::move(d));
  }
  return out;
}

Json EntityDeltasToJson(const std::vector<EntityDelta> &deltas) {
  Json rows = Json::array();
  for (const EntityDelta &d : deltas) {
    rows.push_back({{"entity", d.name},
                    {"support", d.support},
                    {"text_mean", d.text_mean},
                    {"image_mean", d.image_mean},
                    {"delta", d.delta}});
  }
  return Json{{"entities", std::move(rows)}};
}

std::string EntityDeltasToCsv(const std::vector<EntityDelta> &deltas) {
  std::string out = "entity,support,text_mean,image_mean,delta\n";
  for (const EntityDelta &d : deltas) {
    out += CsvField(d.name) + "," + std::to_string(d.support) + "," +
           FormatDouble(d.text_mean) + "," + FormatDouble(d.image_mean) + "," +
           FormatDouble(d.delta) + "\n";
  }
  return out;
}

}  // namespace framelens
