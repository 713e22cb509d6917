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

#include "framelens/corpus.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "framelens/errors.h"
#include "framelens/util.h"

namespace framelens {
namespace fs = std::filesystem;

namespace {

struct DefaultSource {
  Leaning leaning;
  std::initializer_list<std::string_view> domains;
};

const DefaultSource kDefaultSources[] = {
    {Leaning::kLeft,
     {"alternet.org", "editor.cnn.com", "democracynow.org", "dailybeast.com",
      "huffpost.com", "theintercept.com", "jacobin.com", "motherjones.com",
      "newyorker.com", "slate.com", "msnbc.com", "vox.com"}},
    {Leaning::kLeftLean,
     {"abcnews.com", "apnews.com", "theatlantic.com", "bloomberg.com",
      "cbsnews.com", "insider.com", "nbcnews.com", "thenytimes.com", "npr.com",
      "politico.com", "propublica.org", "time.com", "washingtonpost.com",
      "yahoonews.com", "usatoday.com", "theguardian.com"}},
    {Leaning::kCenter,
     {"axios.com", "forbes.com", "newsweek.com", "reuters.com",
      "realclearpolitics.com", "thehill.com"}},
    {Leaning::kRightLean,
     {"thedispatch.com", "theepochtimes.com", "foxbusiness.com", "ijr.com",
      "nypost.com", "thepostmillennial.com", "washingtonexaminer.com",
      "washingtontimes.com"}},
    {Leaning::kRight,
     {"theamericanconservative.com", "theamericanspectator.com",
      "breitbart.com", "dailycaller.com", "dailywire.com", "foxnews.com",
      "newsmax.com", "oann.com", "thefederalist.com"}},
};

std::string StringField(const Json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) return {};
  return it->get<std::string>();
}

// Image entries may be plain URLs or {url, byte_size} objects.
void CollectImageEntries(const Json &value, std::vector<Json> *out) {
  if (value.is_string() || value.is_object()) {
    out->push_back(value);
  } else if (value.is_array()) {
    for (const Json &v : value) CollectImageEntries(v, out);
  }
}

std::optional<fs::path> ResolveLocal(std::string_view url,
                                     const fs::path &base_dir) {
  std::string_view rest = url;
  if (rest.starts_with("file://")) {
    rest.remove_prefix(7);
  } else if (rest.find("://") != std::string_view::npos) {
    return std::nullopt;
  }
  fs::path p(rest);
  if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
  std::error_code ec;
  if (fs::is_regular_file(p, ec)) return p;
  return std::nullopt;
}

bool IsEnglish(std::string_view language, std::string_view wanted) {
  std::string lang = ToLower(Trim(language));
  if (lang == wanted) return true;
  return lang.size() > wanted.size() && lang.starts_with(wanted) &&
         (lang[wanted.size()] == '-' || lang[wanted.size()] == '_');
}

}  // namespace

std::string ArticleId(std::string_view url) {
  return Sha256Hex(url).substr(0, 16);
}

int64_t WordCount(std::string_view text) {
  int64_t n = 0;
  bool in_word = false;
  for (char c : text) {
    bool space = std::isspace(static_cast<unsigned char>(c));
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

Json ImageRefToJson(const ImageRef &r) {
  Json j{{"article_id", r.article_id},
         {"url", r.url},
         {"byte_size", r.byte_size}};
  if (r.local_path) j["local_path"] = *r.local_path;
  return j;
}

ImageRef ImageRefFromJson(const Json &j) {
  ImageRef r;
  r.article_id = j.value("article_id", "");
  r.url = j.at("url").get<std::string>();
  r.byte_size = j.value("byte_size", int64_t{0});
  if (j.contains("local_path") && j["local_path"].is_string()) {
    r.local_path = j["local_path"].get<std::string>();
  }
  return r;
}

Json ArticleToJson(const Article &a) {
  Json images = Json::array();
  for (const ImageRef &r : a.image_refs) images.push_back(ImageRefToJson(r));
  return Json{{"id", a.id},
              {"url", a.url},
              {"source_domain", a.source_domain},
              {"leaning", a.leaning ? Json(LeaningName(*a.leaning)) : Json()},
              {"date_publish", a.date_publish},
              {"title", a.title},
              {"maintext", a.maintext},
              {"language", a.language},
              {"word_count", a.word_count},
              {"image_refs", std::move(images)}};
}

Article ArticleFromJson(const Json &j) {
  Article a;
  a.url = j.at("url").get<std::string>();
  a.id = j.contains("id") ? j["id"].get<std::string>() : ArticleId(a.url);
  a.source_domain = StringField(j, "source_domain");
  if (j.contains("leaning") && j["leaning"].is_string()) {
    a.leaning = ParseLeaning(j["leaning"].get<std::string>());
  }
  a.date_publish = StringField(j, "date_publish");
  a.title = StringField(j, "title");
  a.maintext = j.at("maintext").get<std::string>();
  a.language = StringField(j, "language");
  a.word_count = j.value("word_count", WordCount(a.maintext));
  if (j.contains("image_refs")) {
    for (const Json &r : j["image_refs"]) {
      a.image_refs.push_back(ImageRefFromJson(r));
    }
  }
  return a;
}

LeaningRegistry LeaningRegistry::Default() {
  LeaningRegistry reg;
  for (const DefaultSource &src : kDefaultSources) {
    for (std::string_view d : src.domains) reg.Add(std::string(d), src.leaning);
  }
  return reg;
}

LeaningRegistry LeaningRegistry::FromJson(const Json &j) {
  LeaningRegistry reg;
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto leaning = ParseLeaning(it.key());
    if (!leaning) {
      throw Error("InvalidRegistry", "unknown leaning '" + it.key() + "'");
    }
    for (const Json &d : it.value()) reg.Add(d.get<std::string>(), *leaning);
  }
  return reg;
}

Json LeaningRegistry::ToJson() const {
  Json out = Json::object();
  for (int i = 0; i < 5; ++i) {
    auto l = static_cast<Leaning>(i);
    Json domains = Json::array();
    for (const auto &[d, dl] : domains_) {
      if (dl == l) domains.push_back(d);
    }
    out[std::string(LeaningName(l))] = std::move(domains);
  }
  return out;
}

void LeaningRegistry::Add(std::string domain, Leaning leaning) {
  domain = ToLower(Trim(domain));
  auto [it, inserted] = domains_.emplace(domain, leaning);
  if (!inserted && it->second != leaning) {
    throw Error("DuplicateDomain", "domain " + domain + " listed twice");
  }
}

std::optional<Leaning> LeaningRegistry::Lookup(std::string_view domain) const {
  std::string d = ToLower(Trim(domain));
  if (d.starts_with("www.")) d.erase(0, 4);
  while (!d.empty()) {
    if (auto it = domains_.find(d); it != domains_.end()) return it->second;
    size_t dot = d.find('.');
    if (dot == std::string::npos) break;
    d.erase(0, dot + 1);
    if (d.find('.') == std::string::npos) break;  // do not match bare TLDs
  }
  return std::nullopt;
}

bool LeaningRegistry::CoversAllLeanings() const {
  std::set<Leaning> seen;
  for (const auto &[d, l] : domains_) seen.insert(l);
  return seen.size() == 5;
}

std::string DomainOf(std::string_view url) {
  size_t scheme = url.find("://");
  if (scheme != std::string_view::npos) url.remove_prefix(scheme + 3);
  size_t end = url.find_first_of("/?#");
  if (end != std::string_view::npos) url = url.substr(0, end);
  size_t at = url.rfind('@');
  if (at != std::string_view::npos) url.remove_prefix(at + 1);
  size_t colon = url.find(':');
  if (colon != std::string_view::npos) url = url.substr(0, colon);
  return ToLower(url);
}

Json IngestReport::ToJson() const {
  return Json{{"read", read},
              {"parsed", parsed},
              {"malformed", malformed},
              {"unknown_domain", unknown_domain}};
}

IngestResult Ingest(std::istream &in, const LeaningRegistry &registry,
                    const fs::path &base_dir) {
  IngestResult result;
  std::string line;
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    ++result.report.read;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("url") ||
        !j["url"].is_string() || !j.contains("maintext") ||
        !j["maintext"].is_string()) {
      ++result.report.malformed;
      continue;
    }
    Article a;
    a.url = j["url"].get<std::string>();
    a.id = ArticleId(a.url);
    a.source_domain = StringField(j, "source_domain");
    if (a.source_domain.empty()) a.source_domain = DomainOf(a.url);
    a.leaning = registry.Lookup(a.source_domain);
    if (!a.leaning) ++result.report.unknown_domain;
    a.date_publish = StringField(j, "date_publish");
    a.title = StringField(j, "title");
    a.maintext = j["maintext"].get<std::string>();
    a.language = StringField(j, "language");
    a.word_count = WordCount(a.maintext);

    std::vector<Json> entries;
    for (const char *key : {"image_url", "image_urls", "images"}) {
      if (j.contains(key)) CollectImageEntries(j[key], &entries);
    }
    for (const Json &e : entries) {
      ImageRef ref;
      ref.article_id = a.id;
      ref.byte_size = -1;
      if (e.is_string()) {
        ref.url = e.get<std::string>();
      } else {
        ref.url = StringField(e, "url");
        if (e.contains("byte_size") && e["byte_size"].is_number_integer()) {
          ref.byte_size = e["byte_size"].get<int64_t>();
        }
      }
      if (ref.url.empty()) continue;
      if (auto local = ResolveLocal(ref.url, base_dir)) {
        ref.local_path = local->string();
        if (ref.byte_size < 0) {
          ref.byte_size = static_cast<int64_t>(fs::file_size(*local));
        }
      }
      if (ref.byte_size < 0) ref.byte_size = 0;
      a.image_refs.push_back(std::move(ref));
    }
    result.articles.push_back(std::move(a));
    ++result.report.parsed;
  }
  return result;
}

IngestResult IngestFile(const fs::path &path, const LeaningRegistry &registry) {
  std::ifstream in(path);
  if (!in) throw Error("UnreadableFile", "cannot read " + path.string());
  return Ingest(in, registry, path.parent_path());
}

Json FilterReport::ToJson() const {
  return Json{{"articles",
               {{"in", articles_in},
                {"kept", articles_kept},
                {"dropped_too_short", dropped_too_short},
                {"dropped_too_long", dropped_too_long},
                {"dropped_language", dropped_language},
                {"length_low_cut", length_low_cut},
                {"length_high_cut", length_high_cut}}},
              {"images",
               {{"in", images_in},
                {"kept", images_kept},
                {"dropped_orphaned", dropped_orphaned},
                {"dropped_logo", dropped_logo},
                {"dropped_too_large", dropped_too_large},
                {"dropped_not_primary", dropped_not_primary},
                {"size_cut", image_size_cut}}}};
}

int64_t NearestRankPercentile(std::vector<int64_t> values, double pct) {
  if (values.empty()) throw Error("EmptyInput", "percentile of empty set");
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  // Multiply before dividing so integral products stay exact.
  auto rank = static_cast<int64_t>(std::ceil(pct * n / 100.0));
  rank = std::clamp<int64_t>(rank, 1, static_cast<int64_t>(values.size()));
  return values[static_cast<size_t>(rank - 1)];
}

std::vector<ImageRef> CollectImages(std::span<const Article> articles) {
  std::vector<ImageRef> out;
  for (const Article &a : articles) {
    out.insert(out.end(), a.image_refs.begin(), a.image_refs.end());
  }
  return out;
}

FilterResult FilterCorpus(std::span<const Article> articles,
                          std::span<const ImageRef> images,
                          const FilterConfig &cfg) {
  auto valid = [](double lo, double hi) {
    return 0.0 <= lo && lo < hi && hi <= 100.0;
  };
  if (!valid(cfg.length_low_pct, cfg.length_high_pct) ||
      cfg.image_high_pct < 0.0 || cfg.image_high_pct > 100.0 ||
      cfg.min_image_bytes < 0) {
    throw Error("InvalidConfig", "percentile bounds must satisfy 0 <= low < high <= 100");
  }
  FilterResult out;
  FilterReport &rep = out.report;
  rep.articles_in = static_cast<int64_t>(articles.size());
  rep.images_in = static_cast<int64_t>(images.size());

  if (!articles.empty()) {
    std::vector<int64_t> counts;
    counts.reserve(articles.size());
    for (const Article &a : articles) counts.push_back(a.word_count);
    rep.length_low_cut = NearestRankPercentile(counts, cfg.length_low_pct);
    rep.length_high_cut = NearestRankPercentile(counts, cfg.length_high_pct);
  }

  std::unordered_set<std::string> kept_ids;
  for (const Article &a : articles) {
    if (a.word_count < rep.length_low_cut) {
      ++rep.dropped_too_short;
    } else if (a.word_count > rep.length_high_cut) {
      ++rep.dropped_too_long;
    } else if (!IsEnglish(a.language, cfg.language)) {
      ++rep.dropped_language;
    } else {
      kept_ids.insert(a.id);
      out.articles.push_back(a);
      out.articles.back().image_refs.clear();
    }
  }
  rep.articles_kept = static_cast<int64_t>(out.articles.size());

  if (!images.empty()) {
    std::vector<int64_t> sizes;
    sizes.reserve(images.size());
    for (const ImageRef &r : images) sizes.push_back(r.byte_size);
    rep.image_size_cut = NearestRankPercentile(sizes, cfg.image_high_pct);
  }

  std::unordered_map<std::string, size_t> primary;  // article id -> image
  for (const ImageRef &r : images) {
    if (!kept_ids.contains(r.article_id)) {
      ++rep.dropped_orphaned;
    } else if (r.byte_size < cfg.min_image_bytes) {
      ++rep.dropped_logo;
    } else if (r.byte_size > rep.image_size_cut) {
      ++rep.dropped_too_large;
    } else if (primary.contains(r.article_id)) {
      ++rep.dropped_not_primary;
    } else {
      primary.emplace(r.article_id, out.images.size());
      out.images.push_back(r);
    }
  }
  rep.images_kept = static_cast<int64_t>(out.images.size());
  for (Article &a : out.articles) {
    if (auto it = primary.find(a.id); it != primary.end()) {
      a.image_refs.push_back(out.images[it->second]);
    }
  }

  if (out.articles.empty()) {
    throw Error("EmptyCorpus", "no article survived filtering");
  }
  return out;
}

std::string NormalizeTopic(std::string_view topic) {
  return ToLower(CollapseWhitespace(topic));
}

std::vector<AnalysisRecord> AnalysisSubset(std::span<const AnalysisRecord> in,
                                           SubsetReport *report) {
  SubsetReport rep;
  rep.in = static_cast<int64_t>(in.size());
  std::vector<AnalysisRecord> out;
  for (const AnalysisRecord &r : in) {
    if (!r.text_frames || !r.topic) {
      throw Error("MissingAnnotation",
                  "article " + r.item_id + " lacks text frames or topic");
    }
    std::string topic = NormalizeTopic(*r.topic);
    if (r.text_frames->IsNoneOnly()) {
      ++rep.dropped_none_frames;
    } else if (r.word_count < 100) {
      ++rep.dropped_short;
    } else if (topic == "sports" || topic == "media") {
      ++rep.dropped_topic;
    } else {
      out.push_back(r);
    }
  }
  rep.kept = static_cast<int64_t>(out.size());
  if (report) *report = rep;
  return out;
}

}  // namespace framelens
