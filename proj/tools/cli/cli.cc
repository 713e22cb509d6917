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

#include "cli.h"

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "framelens/analytics.h"
#include "framelens/annotate.h"
#include "framelens/backend.h"
#include "framelens/corpus.h"
#include "framelens/evaluate.h"
#include "framelens/lexical.h"
#include "framelens/store.h"
#include "framelens/util.h"
#include "pipeline.h"
#include "server.h"

namespace framelens::cli {
namespace fs = std::filesystem;
namespace {

constexpr const char *kApiKeyEnv = "FRAMELENS_API_KEY";

struct Options {
  std::string data = "framelens-data";
  std::string config;
  bool json = false;

  // ingest / import
  std::string input;
  std::string registry;
  std::string name = "framelens";
  std::string kind = "annotations";

  // filter
  FilterConfig filter;

  // annotate
  std::string task;
  std::string modality;
  bool mock = false;
  uint64_t seed = 0;
  int concurrency = 0;
  int64_t limit = -1;
  std::string base_url;
  std::string model;
  int timeout_s = 0;

  // gold / eval
  std::string output;
  std::string gold;
  std::string pred;

  // analyze / lexical
  std::string topic;
  bool no_subset = false;
  int top_k = 10;
  int min_support = 1;
  std::string frame;
  double prior = 0.01;
  int64_t min_freq = 5;
  bool informative = false;
  bool drop_shared = false;

  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  std::string strata;

  // export
  std::string out;
};

struct Config {
  HttpBackendConfig backend;
  int concurrency = 4;
};

Config LoadConfig(const Options &o) {
  Config c;
  if (!o.config.empty()) {
    Json j;
    try {
      j = Json::parse(ReadFile(o.config));
    } catch (const Json::exception &e) {
      throw Error("InvalidConfig", o.config + ": " + e.what());
    }
    if (j.contains("backend")) {
      const Json &b = j["backend"];
      c.backend.base_url = b.value("base_url", c.backend.base_url);
      c.backend.model = b.value("model", c.backend.model);
      c.backend.api_key = b.value("api_key", c.backend.api_key);
      c.backend.timeout = std::chrono::seconds(b.value("timeout_s", 120));
    }
    c.concurrency = j.value("concurrency", c.concurrency);
  }
  if (const char *key = std::getenv(kApiKeyEnv); key && *key) c.backend.api_key = key;
  if (!o.base_url.empty()) c.backend.base_url = o.base_url;
  if (!o.model.empty()) c.backend.model = o.model;
  if (o.timeout_s > 0) c.backend.timeout = std::chrono::seconds(o.timeout_s);
  if (o.concurrency > 0) c.concurrency = o.concurrency;
  return c;
}

std::optional<std::string> TopicOpt(const Options &o) {
  if (o.topic.empty()) return std::nullopt;
  return o.topic;
}

std::vector<Modality> Modalities(const Options &o) {
  if (o.modality.empty()) return {Modality::kText, Modality::kImage};
  auto m = ParseModality(o.modality);
  if (!m) throw Error("InvalidConfig", "unknown modality '" + o.modality + "'");
  return {*m};
}

Modality OneModality(const Options &o, Modality fallback) {
  if (o.modality.empty()) return fallback;
  return Modalities(o).front();
}

void WriteReportPair(Dataset &ds, const std::string &stem, const Json &json,
                     const std::string &csv, Json *files) {
  ds.WriteReport(stem + ".json", json.dump(2) + "\n");
  files->push_back(StorePath(StoreKind::kReports, stem + ".json"));
  if (!csv.empty()) {
    ds.WriteReport(stem + ".csv", csv);
    files->push_back(StorePath(StoreKind::kReports, stem + ".csv"));
  }
}

std::set<std::string> ExistingIds(const Dataset &ds, StoreKind kind, const std::string &name) {
  std::set<std::string> ids;
  if (!ds.Has(kind, name)) return ids;
  for (const Json &j : ds.Read(kind, name)) {
    if (j.contains("item_id") && j["item_id"].is_string()) {
      ids.insert(j["item_id"].get<std::string>());
    } else if (j.contains("id") && j["id"].is_string()) {
      ids.insert(j["id"].get<std::string>());
    }
  }
  return ids;
}

// ---- commands ----

Json CmdIngest(const Options &o) {
  LeaningRegistry registry = LeaningRegistry::Default();
  if (!o.registry.empty()) registry = LeaningRegistry::FromJson(Json::parse(ReadFile(o.registry)));
  Dataset ds = Dataset::OpenOrCreate(o.data, o.name);
  IngestResult r = IngestFile(o.input, registry);
  AdoptImages(ds.root(), &r.articles);
  std::set<std::string> seen = ExistingIds(ds, StoreKind::kRaw, "articles");
  std::vector<Json> rows;
  int64_t duplicates = 0;
  for (const Article &a : r.articles) {
    if (!seen.insert(a.id).second) {
      ++duplicates;
      continue;
    }
    rows.push_back(ArticleToJson(a));
  }
  ds.Append(StoreKind::kRaw, "articles", rows);
  Json s = r.report.ToJson();
  s["duplicates"] = duplicates;
  s["appended"] = rows.size();
  s["output"] = StorePath(StoreKind::kRaw, "articles");
  return s;
}

Json CmdImport(const Options &o) {
  StoreKind kind;
  if (o.kind == "annotations") {
    kind = StoreKind::kAnnotations;
  } else if (o.kind == "gold") {
    kind = StoreKind::kGold;
  } else {
    throw Error("InvalidConfig", "import kind must be annotations or gold");
  }
  Dataset ds = Dataset::Open(o.data);
  std::vector<Json> rows = ReadJsonl(o.input);
  ds.Append(kind, o.name, rows);
  return Json{{"appended", rows.size()}, {"output", StorePath(kind, o.name)}};
}

Json CmdFilter(const Options &o) {
  Dataset ds = Dataset::Open(o.data);
  if (ds.Has(StoreKind::kArticles)) {
    throw Error("AlreadyFiltered", "articles.jsonl exists; the store is append-only");
  }
  std::vector<Article> raw;
  for (const Json &j : ds.Read(StoreKind::kRaw, "articles")) raw.push_back(ArticleFromJson(j));
  std::vector<ImageRef> images = CollectImages(raw);
  FilterResult r = FilterCorpus(raw, images, o.filter);
  std::vector<Json> rows;
  for (const Article &a : r.articles) rows.push_back(ArticleToJson(a));
  ds.Append(StoreKind::kArticles, {}, rows);
  Json report = r.report.ToJson();
  ds.WriteReport("filter.json", report.dump(2) + "\n");
  report["output"] = StorePath(StoreKind::kArticles);
  return report;
}

Json CmdAnnotate(const Options &o) {
  auto kind = ParseTaskKind(o.task);
  if (!kind) throw Error("InvalidConfig", "unknown task '" + o.task + "'");
  auto modality = ParseModality(o.modality);
  if (!modality) throw Error("InvalidConfig", "unknown modality '" + o.modality + "'");
  AnnotationTask task{*kind, *modality};
  if (!IsAllowed(task)) throw UnsupportedTask(task);

  Config cfg = LoadConfig(o);
  Dataset ds = Dataset::Open(o.data);
  std::vector<Article> articles = LoadArticles(ds);
  std::string slug = TaskSlug(task);
  std::set<std::string> existing = ExistingIds(ds, StoreKind::kAnnotations, slug);
  std::vector<AnnotationItem> items;
  int64_t skipped = 0;
  for (AnnotationItem &item : BuildItems(ds, articles, *modality)) {
    if (existing.contains(item.item_id)) {
      ++skipped;
      continue;
    }
    if (o.limit >= 0 && static_cast<int64_t>(items.size()) >= o.limit) break;
    items.push_back(std::move(item));
  }

  std::unique_ptr<Backend> backend;
  if (o.mock) {
    backend = std::make_unique<MockBackend>(o.seed);
  } else {
    backend = std::make_unique<HttpBackend>(cfg.backend);
  }
  BatchOptions bo;
  bo.concurrency = cfg.concurrency;
  BatchResult result = RunBatch(items, task, *backend, bo);
  std::vector<Json> rows;
  for (const AnnotationRecord &r : result.records) rows.push_back(RecordToJson(r));
  ds.Append(StoreKind::kAnnotations, slug, rows);

  Json s{{"task", slug}, {"annotator", backend->model_id()}, {"items", items.size()},
         {"skipped_existing", skipped}};
  Json batch = result.summary.ToJson();
  for (auto &[k, v] : batch.items()) s[k] = v;
  s["output"] = StorePath(StoreKind::kAnnotations, slug);
  return s;
}

Json CmdGold(const Options &o, bool mfc) {
  Dataset ds = Dataset::Open(o.data);
  std::string input = o.input.empty() ? "human_image_frames" : o.input;
  std::string output = o.output.empty() ? (mfc ? "mfc_top3" : "union") : o.output;
  if (!ds.Has(StoreKind::kAnnotations, input)) {
    throw Error("MissingData", "no human annotations at " +
                                   StorePath(StoreKind::kAnnotations, input));
  }
  if (ds.Has(StoreKind::kGold, output)) {
    throw Error("GoldExists", StorePath(StoreKind::kGold, output) + " already exists");
  }
  std::vector<Json> rows = ds.Read(StoreKind::kAnnotations, input);
  std::vector<ItemAnnotations> items = GroupAnnotations(rows);
  std::vector<GoldSet> gold = mfc ? BuildGoldMfc(items) : BuildGoldUnion(items);
  std::vector<Json> out;
  for (const GoldSet &g : gold) out.push_back(GoldSetToJson(g));
  ds.Append(StoreKind::kGold, output, out);
  return Json{{"method", mfc ? "mfc-top3" : "union"},
              {"items", out.size()},
              {"output", StorePath(StoreKind::kGold, output)}};
}

struct EvalInputs {
  std::vector<Prediction> preds;
  std::vector<GoldSet> gold;
  int64_t failed = 0;
  std::string gold_path;
  std::string pred_path;
};

EvalInputs LoadEvalInputs(const Dataset &ds, const Options &o, Modality m) {
  EvalInputs in;
  std::string gold = o.gold.empty() ? (m == Modality::kText ? "mfc_top3" : "union") : o.gold;
  in.gold_path = StorePath(StoreKind::kGold, gold);
  if (!ds.Has(StoreKind::kGold, gold)) {
    throw Error("MissingGold", "no gold labels at " + in.gold_path + "; run `gold` first");
  }
  std::string pred =
      o.pred.empty() ? TaskSlug({TaskKind::kGenericFrames, m}) : o.pred;
  in.pred_path = StorePath(StoreKind::kAnnotations, pred);
  if (!ds.Has(StoreKind::kAnnotations, pred)) {
    throw Error("MissingData", "no predictions at " + in.pred_path);
  }
  for (const Json &j : ds.Read(StoreKind::kGold, gold)) in.gold.push_back(GoldSetFromJson(j));
  for (const Json &j : ds.Read(StoreKind::kAnnotations, pred)) {
    AnnotationRecord r = RecordFromJson(j);
    if (r.parse_status == ParseStatus::kFailed) {
      ++in.failed;
      continue;
    }
    in.preds.push_back({r.item_id, r.labels});
  }
  return in;
}

Json CmdEvalFrames(const Options &o) {
  Dataset ds = Dataset::Open(o.data);
  Modality m = OneModality(o, Modality::kText);
  EvalInputs in = LoadEvalInputs(ds, o, m);
  EvalReport r = ScoreMultilabel(in.preds, in.gold);
  Json files = Json::array();
  Json body = r.ToJson();
  body["gold"] = in.gold_path;
  body["predictions"] = in.pred_path;
  body["failed_parses_excluded"] = in.failed;
  WriteReportPair(ds, "eval_frames_" + std::string(ModalityName(m)), body, r.ToCsv(), &files);
  return Json{{"modality", ModalityName(m)},
              {"items", r.n_items},
              {"micro_f1", r.micro.f1},
              {"nonzero_intersection_rate", r.nonzero_intersection_rate},
              {"failed_parses_excluded", in.failed},
              {"files", files}};
}

Json CmdEvalMismatch(const Options &o) {
  Dataset ds = Dataset::Open(o.data);
  Modality m = OneModality(o, Modality::kText);
  EvalInputs in = LoadEvalInputs(ds, o, m);
  MismatchMatrix mm = ComputeMismatch(in.preds, in.gold);
  Json files = Json::array();
  WriteReportPair(ds, "mismatch_" + std::string(ModalityName(m)), mm.ToJson(), mm.ToCsv(),
                  &files);
  return Json{{"modality", ModalityName(m)}, {"total", mm.Total()}, {"files", files}};
}

Json CmdEvalAgreement(const Options &o) {
  Dataset ds = Dataset::Open(o.data);
  std::string input = o.input.empty() ? "human_image_frames" : o.input;
  std::vector<Json> rows = ds.Read(StoreKind::kAnnotations, input);
  AgreementReport r = ComputeAgreement(GroupAnnotations(rows));
  Json files = Json::array();
  WriteReportPair(ds, "agreement", r.ToJson(), {}, &files);
  return Json{{"alpha", r.alpha},
              {"mean_jaccard", r.mean_jaccard},
              {"items", r.n_items},
              {"files", files}};
}

Json CmdEvalTopics(const Options &o) {
  Dataset ds = Dataset::Open(o.data);
  std::string input = o.input.empty() ? "topic_judgments" : o.input;
  std::vector<TopicJudgment> judgments;
  for (const Json &j : ds.Read(StoreKind::kAnnotations, input)) {
    judgments.push_back({j.at("item_id").get<std::string>(), j.at("judge_id").get<std::string>(),
                         j.at("acceptable").get<bool>()});
  }
  TopicAccuracyReport r = ComputeTopicAccuracy(judgments);
  Json files = Json::array();
  WriteReportPair(ds, "eval_topics", r.ToJson(), {}, &files);
  return Json{{"judges", r.per_judge.size()}, {"judgments", judgments.size()}, {"files", files}};
}

Json AnalysisHeader(const AnalysisInput &in) {
  Json h{{"articles", in.articles}, {"unannotated", in.unannotated}};
  if (in.subset) {
    h["subset"] = {{"in", in.subset->in},
                   {"kept", in.subset->kept},
                   {"dropped_none_frames", in.subset->dropped_none_frames},
                   {"dropped_short", in.subset->dropped_short},
                   {"dropped_topic", in.subset->dropped_topic}};
  }
  h["records"] = in.records.size();
  return h;
}

Json CmdAnalyze(const Options &o, const std::string &what) {
  Dataset ds = Dataset::Open(o.data);
  AnalysisInput in = LoadAnalysisInput(ds, !o.no_subset);
  const std::vector<AnalysisRecord> &recs = in.records;
  std::optional<std::string> topic = TopicOpt(o);
  std::string scope = ScopeSlug(topic);
  Json files = Json::array();
  Json s = AnalysisHeader(in);
  s["analysis"] = what;

  if (what == "freq") {
    for (Modality m : Modalities(o)) {
      FrameStats st = ComputeFrameFrequencies(recs, m, topic);
      Json body = st.ToJson();
      body["scope"] = ScopeName(topic);
      WriteReportPair(ds, "freq_" + scope + "_" + std::string(ModalityName(m)), body,
                      st.ToCsv(ScopeName(topic)), &files);
      s["mean_labels_" + std::string(ModalityName(m))] = st.mean_labels_per_item;
    }
  } else if (what == "rankdiff") {
    FrameStats text = ComputeFrameFrequencies(recs, Modality::kText, topic);
    FrameStats image = ComputeFrameFrequencies(recs, Modality::kImage, topic);
    FrameArray<int> diff = RankDifference(text, image);
    FrameArray<int> rt = DenseRanks(text.counts);
    FrameArray<int> ri = DenseRanks(image.counts);
    Json labels = Json::object();
    for (int i = 0; i < kNumFrames; ++i) {
      labels[std::string(CanonicalId(FrameAt(i)))] = {
          {"rank_text", rt[i]}, {"rank_image", ri[i]}, {"difference", diff[i]}};
    }
    WriteReportPair(ds, "rankdiff_" + scope, {{"scope", ScopeName(topic)}, {"labels", labels}},
                    RankDifferenceCsv(diff, ScopeName(topic)), &files);
  } else if (what == "pmi") {
    CooccurrenceMatrix m = ComputePmi(recs, topic);
    WriteReportPair(ds, "pmi_" + scope, m.ToJson(), m.ToCsv(), &files);
    s["pairs"] = m.n;
  } else if (what == "cooc") {
    if (!topic) throw Error("InvalidConfig", "analyze cooc requires --topic");
    CooccurrencePct c = ComputeCooccurrencePct(recs, *topic);
    WriteReportPair(ds, "cooc_" + scope, c.ToJson(), c.ToCsv(), &files);
  } else if (what == "leaning") {
    for (Modality m : Modalities(o)) {
      LeaningDistribution d = ComputeLeaningDistribution(recs, topic, m);
      WriteReportPair(ds, "leaning_" + scope + "_" + std::string(ModalityName(m)), d.ToJson(),
                      d.ToCsv(), &files);
    }
  } else if (what == "issue") {
    IssueFrameTable t = ComputeIssueFrameTable(recs, topic, o.top_k);
    WriteReportPair(ds, "issue_" + scope, t.ToJson(), t.ToCsv(), &files);
    s["rows"] = t.rows.size();
  } else if (what == "sentiment") {
    std::vector<EntityDelta> d = ComputeEntitySentimentDeltas(recs, o.min_support);
    WriteReportPair(ds, "sentiment", EntityDeltasToJson(d), EntityDeltasToCsv(d), &files);
    s["entities"] = d.size();
  }
  s["files"] = files;
  return s;
}

Json CmdFightinWords(const Options &o) {
  Frame frame = NormalizeLabel(o.frame);
  Dataset ds = Dataset::Open(o.data);
  AnalysisInput in = LoadAnalysisInput(ds, !o.no_subset);
  FramePartition p = PartitionByFrame(in.records, frame, o.drop_shared);
  const StopwordSet &stop = DefaultStopwords();
  BigramCounts c1 = ExtractBigrams(p.image_texts, stop, "image:" + std::string(CanonicalId(frame)));
  BigramCounts c2 = ExtractBigrams(p.text_texts, stop, "text:" + std::string(CanonicalId(frame)));
  FightinWordsOptions fo;
  fo.prior = o.prior;
  fo.min_freq = o.min_freq;
  fo.prior_kind = o.informative ? PriorKind::kInformative : PriorKind::kUniform;
  std::vector<LexicalScore> scores = FightinWords(c1, c2, fo);
  Json body = LexicalScoresToJson(scores, fo);
  body["frame"] = CanonicalId(frame);
  body["corpus_1"] = {{"id", c1.corpus_id}, {"articles", p.image_side.size()}, {"bigrams", c1.total}};
  body["corpus_2"] = {{"id", c2.corpus_id}, {"articles", p.text_side.size()}, {"bigrams", c2.total}};
  body["shared_articles"] = p.shared;
  body["drop_shared"] = o.drop_shared;
  Json files = Json::array();
  WriteReportPair(ds, "fightin_words_" + FileSlug(CanonicalId(frame)), body,
                  LexicalScoresToCsv(scores), &files);
  return Json{{"frame", CanonicalId(frame)},
              {"image_side", p.image_side.size()},
              {"text_side", p.text_side.size()},
              {"shared", p.shared},
              {"vocabulary", scores.size()},
              {"top_image_side", BigramText(scores.front().bigram)},
              {"top_text_side", BigramText(scores.back().bigram)},
              {"files", files}};
}

Json CmdServe(const Options &o, std::ostream &out) {
  ServeOptions so;
  so.host = o.host;
  so.port = o.port;
  if (!o.static_dir.empty()) so.static_dir = o.static_dir;
  if (!o.output.empty()) so.output = o.output;
  so.strata_weights = ParseStrataWeights(o.strata);

  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  AnnotationServer server(o.data, so);
  int port = server.Start();
  out << Json{{"command", "serve-annotate"},
              {"url", "http://" + o.host + ":" + std::to_string(port)}}
             .dump()
      << std::endl;
  int sig = 0;
  sigwait(&set, &sig);
  server.Stop();
  return Json{{"stopped_by_signal", sig}};
}

Json CmdExport(const Options &o) {
  Dataset ds = Dataset::Open(o.data);
  if (!ds.reconciled().empty()) {
    throw Error("CorruptDataset", "manifest disagreed with data files; reopen to inspect");
  }
  fs::path dest(o.out);
  if (fs::exists(dest) && !fs::is_empty(dest)) {
    throw Error("ExportExists", dest.string() + " exists and is not empty");
  }
  fs::create_directories(dest);
  int64_t records = 0;
  std::set<std::string> images;
  for (const auto &[rel, entry] : ds.manifest().files) {
    std::string content = ReadFile(ds.root() / rel);
    if (Sha256Hex(content) != entry.sha256) {
      throw Error("CorruptDataset", rel + " does not match its manifest hash");
    }
    fs::create_directories((dest / rel).parent_path());
    WriteFileAtomic(dest / rel, content);
    if (!rel.starts_with("reports/")) records += entry.count;
  }
  if (ds.Has(StoreKind::kArticles)) {
    for (const Article &a : LoadArticles(ds)) {
      for (const ImageRef &r : a.image_refs) {
        if (r.local_path && fs::exists(ds.root() / *r.local_path)) images.insert(*r.local_path);
      }
    }
  }
  for (const std::string &rel : images) {
    std::string bytes = ReadFile(ds.root() / rel);
    std::string stem = fs::path(rel).stem().string();
    if (rel.starts_with("images/") && !Sha256Hex(bytes).starts_with(stem)) {
      throw Error("CorruptDataset", rel + " does not match its content address");
    }
    fs::create_directories((dest / rel).parent_path());
    WriteFileAtomic(dest / rel, bytes);
  }
  WriteFileAtomic(dest / "manifest.json", ds.manifest().ToJson().dump(2) + "\n");
  return Json{{"files", ds.manifest().files.size()},
              {"records", records},
              {"images", images.size()},
              {"out", dest.string()}};
}

void AppendFields(const std::string &prefix, const Json &obj, std::string *line) {
  for (const auto &[k, v] : obj.items()) {
    if (v.is_object()) {
      AppendFields(prefix + k + ".", v, line);
    } else if (!v.is_array()) {
      *line += " " + prefix + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
    }
  }
}

std::string SummaryLine(const std::string &command, const Json &s) {
  std::string line = command + ":";
  AppendFields("", s, &line);
  return line;
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Options o;
  CLI::App app{"framelens: multimodal news framing analysis toolkit", "framelens"};
  app.require_subcommand(1);
  app.add_option("--data", o.data, "Dataset directory")->capture_default_str();
  app.add_option("--config", o.config, "JSON config file (backend, concurrency)");
  app.add_flag("--json", o.json, "Print the summary as JSON");

  auto *ingest = app.add_subcommand("ingest", "Read news JSONL into raw/articles.jsonl");
  ingest->add_option("--input", o.input, "News JSONL file")->required();
  ingest->add_option("--registry", o.registry, "Leaning registry JSON");
  ingest->add_option("--name", o.name, "Dataset name for a new store");

  auto *import = app.add_subcommand("import", "Append external JSONL (human labels, judgments, gold)");
  import->add_option("--kind", o.kind, "annotations or gold")->capture_default_str();
  import->add_option("--name", o.name, "Target file stem")->required();
  import->add_option("--input", o.input, "JSONL file")->required();

  auto *filter = app.add_subcommand("filter", "Apply length, language and image rules");
  filter->add_option("--length-low-pct", o.filter.length_low_pct)->capture_default_str();
  filter->add_option("--length-high-pct", o.filter.length_high_pct)->capture_default_str();
  filter->add_option("--image-high-pct", o.filter.image_high_pct)->capture_default_str();
  filter->add_option("--min-image-bytes", o.filter.min_image_bytes)->capture_default_str();
  filter->add_option("--language", o.filter.language)->capture_default_str();

  auto *annotate = app.add_subcommand("annotate", "Annotate articles or images with a model");
  annotate->add_option("--task", o.task, "topic, frames, issue, entity or caption")->required();
  annotate->add_option("--modality", o.modality, "text or image")->required();
  annotate->add_flag("--mock", o.mock, "Use the deterministic offline backend");
  annotate->add_option("--seed", o.seed, "Mock backend seed");
  annotate->add_option("--concurrency", o.concurrency, "Requests in flight");
  annotate->add_option("--limit", o.limit, "Annotate at most N new items");
  annotate->add_option("--base-url", o.base_url, "Chat completions server");
  annotate->add_option("--model", o.model, "Model name");
  annotate->add_option("--timeout", o.timeout_s, "Request timeout in seconds");

  auto *gold = app.add_subcommand("gold", "Build gold label sets from human annotations");
  gold->require_subcommand(1);
  auto *gold_mfc = gold->add_subcommand("mfc-top3", "Top-3 labels by annotator count");
  auto *gold_union = gold->add_subcommand("union", "Union of annotator label sets");
  for (auto *g : {gold_mfc, gold_union}) {
    g->add_option("--input", o.input, "annotations/<input>.jsonl (default human_image_frames)");
    g->add_option("--output", o.output, "gold/<output>.jsonl");
  }

  auto *eval = app.add_subcommand("eval", "Evaluate annotations");
  eval->require_subcommand(1);
  auto *eval_frames = eval->add_subcommand("frames", "Multi-label scores against gold");
  auto *eval_mismatch = eval->add_subcommand("mismatch", "Missed-vs-predicted label counts");
  for (auto *e : {eval_frames, eval_mismatch}) {
    e->add_option("--modality", o.modality, "text (default) or image");
    e->add_option("--gold", o.gold, "gold/<name>.jsonl");
    e->add_option("--pred", o.pred, "annotations/<name>.jsonl");
  }
  auto *eval_agreement = eval->add_subcommand("agreement", "Krippendorff's alpha and Jaccard");
  eval_agreement->add_option("--input", o.input, "annotations/<input>.jsonl");
  auto *eval_topics = eval->add_subcommand("topics", "Topic accuracy from judge verdicts");
  eval_topics->add_option("--input", o.input, "annotations/<input>.jsonl");

  auto *analyze = app.add_subcommand("analyze", "Frame statistics over the analysis subset");
  analyze->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App *>> analyses;
  for (const char *name : {"freq", "rankdiff", "pmi", "cooc", "leaning", "issue", "sentiment"}) {
    auto *a = analyze->add_subcommand(name);
    a->add_option("--topic", o.topic, "Restrict to one topic");
    a->add_flag("--no-subset", o.no_subset, "Skip the analysis subset rules");
    analyses.emplace_back(name, a);
  }
  analyses[0].second->add_option("--modality", o.modality);
  analyses[4].second->add_option("--modality", o.modality);
  analyses[5].second->add_option("--top-k", o.top_k)->capture_default_str();
  analyses[6].second->add_option("--min-support", o.min_support)->capture_default_str();

  auto *lexical = app.add_subcommand("lexical", "Lexical comparisons");
  lexical->require_subcommand(1);
  auto *fw = lexical->add_subcommand("fightin-words", "Bigram log-odds, image side vs text side");
  fw->add_option("--frame", o.frame, "Frame label")->required();
  fw->add_option("--prior", o.prior)->capture_default_str();
  fw->add_option("--min-freq", o.min_freq)->capture_default_str();
  fw->add_flag("--informative", o.informative, "Corpus-proportional prior");
  fw->add_flag("--drop-shared", o.drop_shared, "Drop articles carrying the frame in both");
  fw->add_flag("--no-subset", o.no_subset, "Skip the analysis subset rules");

  auto *serve = app.add_subcommand("serve-annotate", "Serve the image annotation API");
  serve->add_option("--port", o.port)->capture_default_str();
  serve->add_option("--host", o.host)->capture_default_str();
  serve->add_option("--static", o.static_dir, "Directory with the UI build");
  serve->add_option("--output", o.output, "annotations/<output>.jsonl");
  serve->add_option("--strata-weights", o.strata, "topic=weight,...");

  auto *exp = app.add_subcommand("export", "Copy the verified dataset to a directory");
  exp->add_option("--out", o.out, "Destination directory")->required();

  std::vector<const char *> argv{"framelens"};
  for (const std::string &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  std::string command;
  try {
    Json summary;
    auto is = [](CLI::App *sub) { return sub->parsed(); };
    if (is(ingest)) {
      command = "ingest", summary = CmdIngest(o);
    } else if (is(import)) {
      command = "import", summary = CmdImport(o);
    } else if (is(filter)) {
      command = "filter", summary = CmdFilter(o);
    } else if (is(annotate)) {
      command = "annotate", summary = CmdAnnotate(o);
    } else if (is(gold)) {
      command = "gold", summary = CmdGold(o, is(gold_mfc));
    } else if (is(eval)) {
      if (is(eval_frames)) command = "eval frames", summary = CmdEvalFrames(o);
      if (is(eval_mismatch)) command = "eval mismatch", summary = CmdEvalMismatch(o);
      if (is(eval_agreement)) command = "eval agreement", summary = CmdEvalAgreement(o);
      if (is(eval_topics)) command = "eval topics", summary = CmdEvalTopics(o);
    } else if (is(analyze)) {
      for (auto &[name, sub] : analyses) {
        if (is(sub)) command = "analyze " + name, summary = CmdAnalyze(o, name);
      }
    } else if (is(lexical)) {
      command = "lexical fightin-words", summary = CmdFightinWords(o);
    } else if (is(serve)) {
      command = "serve-annotate", summary = CmdServe(o, out);
    } else if (is(exp)) {
      command = "export", summary = CmdExport(o);
    }
    if (o.json) {
      Json line{{"command", command}};
      for (auto &[k, v] : summary.items()) line[k] = v;
      out << line.dump() << "\n";
    } else {
      out << SummaryLine(command, summary) << "\n";
    }
    return kExitOk;
  } catch (const Error &e) {
    err << Json{{"error", e.kind()}, {"message", e.what()}, {"command", command}}.dump() << "\n";
  } catch (const std::exception &e) {
    err << Json{{"error", "InternalError"}, {"message", e.what()}, {"command", command}}.dump()
        << "\n";
  }
  return kExitRuntime;
}

}  // namespace framelens::cli
