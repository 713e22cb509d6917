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

#include "framelens/schema.h"

#include <algorithm>
#include <cctype>

#include "framelens/errors.h"

namespace framelens {
namespace {

struct LabelRow {
  Frame frame;
  std::string_view id;
  std::string_view display;
  std::string_view description;
  std::initializer_list<std::string_view> aliases;
};

// Display names and descriptions follow the Media Frames Corpus codebook;
// aliases cover the names used in the annotation prompts and the dataset.
const LabelRow kRows[kNumFrames] = {
    {Frame::kEconomic, "economic", "Economic",
     "The costs, benefits, or monetary/financial implications of the issue "
     "(to an individual, family, community or to the economy as a whole)",
     {}},
    {Frame::kCapacityResources, "cap&res", "Capacity and resources",
     "The lack of or availability of physical, geographical, spatial, human, "
     "and financial resources, or the capacity of existing systems and "
     "resources to implement or carry out policy goals.",
     {"Capacity & Resources", "Capacity", "Resources"}},
    {Frame::kMorality, "morality", "Morality",
     "Any perspective—or policy objective or action (including proposed "
     "action)—that is compelled by religious doctrine or interpretation, "
     "duty, honor, righteousness or any other sense of ethics or social "
     "responsibility.",
     {}},
    {Frame::kFairness, "fairness", "Fairness and equality",
     "Equality or inequality with which laws, punishment, rewards, and "
     "resources are applied or distributed among individuals or groups. Also "
     "the balance between the rights or interests of one individual or group "
     "compared to another individual or group.",
     {"Fairness & Equality"}},
    {Frame::kLegality, "legality", "Constitutionality and jurisprudence",
     "The constraints imposed on or freedoms granted to individuals, "
     "government, and corporations via the Constitution, Bill of Rights and "
     "other amendments, or judicial interpretation. This deals specifically "
     "with the authority of government to regulate, and the authority of "
     "individuals/corporations to act independently of government.",
     {"Legality, constitutionality and jurisprudence",
      "Legality, constitutionality and jurispudence",
      "Legality, Constitutionality & Jurisprudence",
      "Constitutionality & Jurisprudence"}},
    {Frame::kPolicy, "policy", "Policy prescription and evaluation",
     "Particular policies proposed for addressing an identified problem, and "
     "figuring out if certain policies will work, or if existing policies are "
     "effective.",
     {"Policy Prescription & Evaluation", "Policy prescription"}},
    {Frame::kCrime, "crime", "Law and order, crime and justice",
     "Specific policies in practice and their enforcement, incentives, and "
     "implications. Includes stories about enforcement and interpretation of "
     "laws by individuals and law enforcement, breaking laws, loopholes, "
     "fines, sentencing and punishment. Increases or reductions in crime.",
     {"Crime and punishment", "Crime & Punishment"}},
    {Frame::kSecurity, "security", "Security and defence",
     "Security, threats to security, and protection of one’s person, "
     "family, in-group, nation, etc. Generally an action or a call to action "
     "that can be taken to protect the welfare of a person, group, nation "
     "sometimes from a not yet manifested threat.",
     {"Security and defense", "Security & Defense", "Security & Defence"}},
    {Frame::kHealth, "health", "Health and safety",
     "Healthcare access and effectiveness, illness, disease, sanitation, "
     "obesity, mental health effects, prevention of or perpetuation of gun "
     "violence, infrastructure and building safety.",
     {"Health & Safety"}},
    {Frame::kQualityLife, "quality_life", "Quality of life",
     "The effects of a policy on individuals’ wealth, mobility, access to "
     "resources, happiness, social structures, ease of day-to-day routines, "
     "quality of community life etc.",
     {}},
    {Frame::kCulture, "culture", "Cultural identity",
     "The social norms, trends, values and customs constituting culture(s), "
     "as they relate to a specific policy issue",
     {"Culture"}},
    {Frame::kPublicOpinion, "public_op", "Public opinion",
     "References to general social attitudes, polling and demographic "
     "information, as well as implied or actual consequences of diverging "
     "from or getting ahead of public opinion or polls.",
     {"Public sentiment"}},
    {Frame::kPolitical, "political", "Political",
     "Any political considerations surrounding an issue. Issue actions or "
     "efforts or stances that are political, such as partisan filibusters, "
     "lobbyist involvement, bipartisan efforts, deal-making and vote trading, "
     "appealing to one’s base, mentions of political manoeuvring. "
     "Explicit statements that a policy issue is good or bad for a particular "
     "political party.",
     {"Politics"}},
    {Frame::kRegulation, "regulation", "External regulation and reputation",
     "The United States’ external relations with another nation; the "
     "external relations of one state with another; or relations between "
     "groups. This includes trade agreements and outcomes, comparisons of "
     "policy outcomes or desired policy outcomes.",
     {"External regulation & reputation"}},
    {Frame::kNone, "none", "None",
     "Any frames that do not fit into the above categories.",
     {"Other", "No frame"}},
};

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

}  // namespace

std::vector<Frame> LabelSet::ToVector() const {
  std::vector<Frame> out;
  for (int i = 0; i < kNumFrames; ++i) {
    if (bits_ & (1u << i)) out.push_back(FrameAt(i));
  }
  return out;
}

LabelSet CanonicalizeNone(LabelSet set) {
  if (set.empty()) return LabelSet{Frame::kNone};
  if (set.Contains(Frame::kNone) && set.size() > 1) set.Erase(Frame::kNone);
  return set;
}

std::string FoldLabel(std::string_view raw) {
  std::string spaced;
  spaced.reserve(raw.size() + 8);
  for (char c : raw) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      spaced.push_back(static_cast<char>(std::tolower(u)));
    } else if (c == '&') {
      spaced += " and ";
    } else if (c == '-' || c == '_' || c == '/' || IsSpace(c)) {
      spaced.push_back(' ');
    } else if (u >= 0x80) {
      // Non-ASCII bytes (e.g. typographic quotes) act as separators.
      spaced.push_back(' ');
    }
  }
  std::string out;
  out.reserve(spaced.size());
  for (char c : spaced) {
    if (c == ' ' && (out.empty() || out.back() == ' ')) continue;
    out.push_back(c);
  }
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

Taxonomy::Taxonomy() {
  for (int i = 0; i < kNumFrames; ++i) {
    const LabelRow &row = kRows[i];
    labels_[i] = FrameLabel{row.frame, row.id, row.display, row.description,
                            std::vector<std::string_view>(row.aliases)};
    auto add = [&](std::string_view name) {
      std::string key = FoldLabel(name);
      auto it = std::find_if(folded_.begin(), folded_.end(),
                             [&](const auto &p) { return p.first == key; });
      if (it == folded_.end()) {
        folded_.emplace_back(std::move(key), row.frame);
      } else if (it->second != row.frame) {
        throw Error("TaxonomyConflict",
                    "alias '" + std::string(name) + "' maps to two frames");
      }
    };
    add(row.id);
    add(row.display);
    for (std::string_view a : row.aliases) add(a);
  }
  std::sort(folded_.begin(), folded_.end());
}

const Taxonomy &Taxonomy::Get() {
  static const Taxonomy instance;
  return instance;
}

std::optional<Frame> Taxonomy::TryNormalize(std::string_view raw) const {
  std::string key = FoldLabel(raw);
  if (key.empty()) return std::nullopt;
  auto it = std::lower_bound(
      folded_.begin(), folded_.end(), key,
      [](const auto &p, const std::string &k) { return p.first < k; });
  if (it == folded_.end() || it->first != key) return std::nullopt;
  return it->second;
}

Frame Taxonomy::Normalize(std::string_view raw) const {
  if (auto f = TryNormalize(raw)) return *f;
  throw UnknownLabel(std::string(raw));
}

std::optional<Frame> Taxonomy::FromCanonicalId(std::string_view id) const {
  for (const FrameLabel &l : labels_) {
    if (l.canonical_id == id) return l.frame;
  }
  return std::nullopt;
}

Json Taxonomy::ToJson() const {
  Json labels = Json::array();
  for (const FrameLabel &l : labels_) {
    Json aliases = Json::array();
    for (std::string_view a : l.aliases) aliases.push_back(a);
    labels.push_back({{"id", l.canonical_id},
                      {"display_name", l.display_name},
                      {"description", l.description},
                      {"aliases", std::move(aliases)}});
  }
  return Json{{"version", kVersion}, {"labels", std::move(labels)}};
}

std::vector<Frame> ParseTaxonomyJson(const Json &doc) {
  const Taxonomy &tax = Taxonomy::Get();
  if (!doc.is_object() || doc.value("version", "") != tax.kVersion) {
    throw Error("TaxonomyMismatch", "unsupported taxonomy version");
  }
  std::vector<Frame> frames;
  for (const Json &entry : doc.at("labels")) {
    auto f = tax.FromCanonicalId(entry.at("id").get<std::string>());
    if (!f) {
      throw Error("TaxonomyMismatch",
                  "unknown id " + entry.at("id").get<std::string>());
    }
    const FrameLabel &l = tax.label(*f);
    if (entry.at("display_name").get<std::string>() != l.display_name ||
        entry.at("description").get<std::string>() != l.description) {
      throw Error("TaxonomyMismatch",
                  "label " + std::string(l.canonical_id) + " differs");
    }
    frames.push_back(*f);
  }
  return frames;
}

LabelSet NormalizeLabelSet(std::span<const std::string> raw) {
  LabelSet set;
  const Taxonomy &tax = Taxonomy::Get();
  for (size_t i = 0; i < raw.size(); ++i) {
    auto f = tax.TryNormalize(raw[i]);
    if (!f) throw UnknownLabel(raw[i], static_cast<int>(i));
    set.Insert(*f);
  }
  return CanonicalizeNone(set);
}

std::string_view CanonicalId(Frame f) {
  return Taxonomy::Get().label(f).canonical_id;
}

Json LabelSetToJson(LabelSet set) {
  Json arr = Json::array();
  for (Frame f : set.ToVector()) arr.push_back(CanonicalId(f));
  return arr;
}

LabelSet LabelSetFromJson(const Json &j) {
  std::vector<std::string> raw;
  for (const Json &e : j) raw.push_back(e.get<std::string>());
  return NormalizeLabelSet(raw);
}

CombinedLeaning Combine(Leaning l) {
  switch (l) {
    case Leaning::kLeft:
    case Leaning::kLeftLean:
      return CombinedLeaning::kLeft;
    case Leaning::kCenter:
      return CombinedLeaning::kCenter;
    case Leaning::kRightLean:
    case Leaning::kRight:
      return CombinedLeaning::kRight;
  }
  return CombinedLeaning::kCenter;
}

std::string_view LeaningName(Leaning l) {
  static constexpr std::string_view kNames[] = {"left", "left-lean", "center",
                                                "right-lean", "right"};
  return kNames[static_cast<int>(l)];
}

std::string_view CombinedLeaningName(CombinedLeaning l) {
  static constexpr std::string_view kNames[] = {"left", "center", "right"};
  return kNames[static_cast<int>(l)];
}

std::optional<Leaning> ParseLeaning(std::string_view raw) {
  std::string key = FoldLabel(raw);
  if (key == "left") return Leaning::kLeft;
  if (key == "left lean" || key == "lean left" || key == "left leaning")
    return Leaning::kLeftLean;
  if (key == "center" || key == "centre") return Leaning::kCenter;
  if (key == "right lean" || key == "lean right" || key == "right leaning")
    return Leaning::kRightLean;
  if (key == "right") return Leaning::kRight;
  return std::nullopt;
}

bool IsAllowed(AnnotationTask task) {
  if (task.modality == Modality::kText) {
    return task.kind != TaskKind::kCaption;
  }
  return task.kind == TaskKind::kCaption ||
         task.kind == TaskKind::kGenericFrames ||
         task.kind == TaskKind::kEntitySentiment;
}

std::string_view TaskKindName(TaskKind k) {
  static constexpr std::string_view kNames[] = {
      "topic", "generic_frames", "issue_frame", "entity_sentiment", "caption"};
  return kNames[static_cast<int>(k)];
}

std::string_view TaskShortName(TaskKind k) {
  static constexpr std::string_view kNames[] = {"topic", "frames", "issue",
                                                "entity", "caption"};
  return kNames[static_cast<int>(k)];
}

std::string_view ModalityName(Modality m) {
  return m == Modality::kText ? "text" : "image";
}

std::optional<TaskKind> ParseTaskKind(std::string_view raw) {
  for (int i = 0; i < 5; ++i) {
    auto k = static_cast<TaskKind>(i);
    if (raw == TaskKindName(k) || raw == TaskShortName(k)) return k;
  }
  return std::nullopt;
}

std::optional<Modality> ParseModality(std::string_view raw) {
  if (raw == "text") return Modality::kText;
  if (raw == "image") return Modality::kImage;
  return std::nullopt;
}

std::string TaskSlug(AnnotationTask task) {
  return std::string(ModalityName(task.modality)) + "_" +
         std::string(TaskKindName(task.kind));
}

std::string_view SentimentName(Sentiment s) {
  static constexpr std::string_view kNames[] = {"positive", "negative",
                                                "neutral", "none"};
  return kNames[static_cast<int>(s)];
}

std::optional<Sentiment> ParseSentiment(std::string_view raw) {
  std::string key = FoldLabel(raw);
  if (key == "positive") return Sentiment::kPositive;
  if (key == "negative") return Sentiment::kNegative;
  if (key == "neutral") return Sentiment::kNeutral;
  if (key == "none" || key.empty()) return Sentiment::kNone;
  return std::nullopt;
}

std::optional<int> SentimentScore(Sentiment s) {
  switch (s) {
    case Sentiment::kPositive:
      return 1;
    case Sentiment::kNegative:
      return -1;
    case Sentiment::kNeutral:
      return 0;
    case Sentiment::kNone:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace framelens
