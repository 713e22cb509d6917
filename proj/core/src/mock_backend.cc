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

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <vector>

#include "framelens/backend.h"
#include "framelens/prompts.h"
#include "framelens/util.h"

namespace framelens {
namespace {

struct Cue {
  std::string_view name;  // as the model would spell it
  std::initializer_list<std::string_view> words;
};

const Cue kFrameCues[] = {
    {"Economic", {"economy", "economic", "tax", "taxes", "budget", "cost", "costs",
                  "prices", "inflation", "market", "jobs", "wages", "funding"}},
    {"Capacity and resources", {"resources", "shortage", "capacity", "supply",
                                "staffing", "housing", "infrastructure"}},
    {"Morality", {"moral", "religious", "church", "faith", "ethics", "pope"}},
    {"Fairness and equality", {"equality", "discrimination", "rights", "unfair",
                               "inequality", "equal"}},
    {"Legality, constitutionality and jurispudence",
     {"court", "judge", "lawsuit", "ruling", "constitutional", "supreme", "legal"}},
    {"Policy prescription and evaluation", {"policy", "bill", "legislation",
                                            "proposal", "plan", "reform"}},
    {"Crime and punishment", {"police", "arrested", "crime", "shooting", "charged",
                              "murder", "suspect"}},
    {"Security and defense", {"military", "war", "troops", "border", "defense",
                              "attack", "missile", "security"}},
    {"Health and safety", {"health", "hospital", "disease", "covid", "vaccine",
                           "doctors", "safety"}},
    {"Quality of life", {"families", "community", "homeless", "living", "daily",
                         "residents"}},
    {"Cultural identity", {"culture", "festival", "music", "art", "tradition",
                           "film", "celebrity"}},
    {"Public Opinion", {"poll", "polls", "protest", "protesters", "survey", "public"}},
    {"Political", {"election", "campaign", "senator", "congress", "republican",
                   "democrat", "president", "vote"}},
    {"External regulation and reputation",
     {"international", "foreign", "allies", "nato", "sanctions", "diplomatic"}},
};

const Cue kTopicCues[] = {
    {"Immigration", {"immigration", "immigrants", "migrants", "asylum", "border"}},
    {"War", {"war", "troops", "military", "missile", "ukraine", "gaza"}},
    {"Crime", {"police", "crime", "arrested", "shooting", "suspect"}},
    {"Politics", {"election", "congress", "senate", "campaign", "republican", "democrat"}},
    {"Economy", {"economy", "inflation", "jobs", "market", "prices"}},
    {"Health", {"health", "hospital", "covid", "vaccine", "disease"}},
    {"Environment", {"climate", "storm", "wildfire", "emissions", "flood"}},
    {"Technology", {"technology", "software", "ai", "chip", "startup"}},
    {"Sports", {"game", "season", "coach", "team", "championship"}},
    {"Media", {"network", "anchor", "television", "newspaper", "journalist"}},
};

struct IssueChoices {
  std::string_view topic;
  std::initializer_list<std::string_view> frames;
};

const IssueChoices kIssueFrames[] = {
    {"Immigration", {"Humanitarian Crisis", "Economic Burden", "Border Security Threat"}},
    {"War", {"Humanitarian Crisis", "National Security Threat", "Military Escalation"}},
    {"Crime", {"Public Safety Concern", "Criminal Threat", "Tragedy"}},
    {"Politics", {"Political Crisis", "Political Power Struggle", "Political Scandal"}},
    {"Economy", {"Economic Struggle", "Economic Burden", "Financial Opportunity"}},
    {"Health", {"Public Health Crisis", "Healthcare Access", "Public Safety Concern"}},
    {"Environment", {"Natural Disaster", "Natural Disaster Threat", "Climate Crisis"}},
    {"Technology", {"Technological Disruption", "Financial Opportunity", "Privacy Threat"}},
    {"Sports", {"Cultural Celebration", "Sporting Triumph"}},
    {"Media", {"Media Bias", "Press Freedom"}},
};

constexpr std::string_view kEntities[] = {
    "Joe Biden",       "Donald Trump",     "Vladimir Putin", "Benjamin Netanyahu",
    "Elon Musk",       "Volodymyr Zelensky", "Kamala Harris", "Hunter Biden",
};

constexpr std::string_view kNegativeWords[] = {
    "crisis", "attack", "criticized", "failed", "scandal", "killed", "charged",
    "accused", "indicted", "condemned"};
constexpr std::string_view kPositiveWords[] = {
    "praised", "success", "win", "won", "celebrated", "growth", "hope",
    "welcomed", "agreement", "record"};

// Weighted image frame draws: (frame name, weight out of 100).
const std::pair<std::string_view, int> kImageFrameWeights[] = {
    {"None", 25},          {"Political", 15},    {"Security and defense", 10},
    {"Crime and punishment", 8}, {"Public opinion", 8}, {"Economic", 6},
    {"Health and safety", 6}, {"Cultural identity", 6}, {"Quality of life", 6},
    {"External regulation \\& reputation", 4},
    {"Policy prescription and evaluation", 3},
    {"Legality, constitutionality and jurisprudence", 3},
};

uint64_t HashOf(uint64_t seed, std::string_view slug, std::string_view content) {
  std::string key = std::to_string(seed) + "|" + std::string(slug) + "|";
  key.append(content);
  std::string hex = Sha256Hex(key).substr(0, 16);
  return std::stoull(hex, nullptr, 16);
}

std::vector<std::string> Tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  std::sort(out.begin(), out.end());
  return out;
}

int Hits(const std::vector<std::string> &sorted_tokens, const Cue &cue) {
  int hits = 0;
  for (std::string_view w : cue.words) {
    auto range = std::equal_range(sorted_tokens.begin(), sorted_tokens.end(), w);
    hits += static_cast<int>(range.second - range.first);
  }
  return hits;
}

std::string ArticleText(std::string_view user_prompt) {
  size_t pos = user_prompt.rfind(prompts::kArticleHeader);
  if (pos == std::string_view::npos) return {};
  return std::string(user_prompt.substr(pos + prompts::kArticleHeader.size()));
}

std::string Wrap(const Json &obj, uint64_t h) {
  switch (h % 4) {
    case 1:
      return "Sure! Here is the json:\n" + obj.dump() + "\nLet me know if you need more.";
    case 2:
      return obj.dump(2);
    default:
      return obj.dump();
  }
}

std::string TopicFor(const std::vector<std::string> &tokens) {
  int best = 0;
  std::string_view topic = "Politics";
  for (const Cue &cue : kTopicCues) {
    int h = Hits(tokens, cue);
    if (h > best) {
      best = h;
      topic = cue.name;
    }
  }
  return std::string(topic);
}

std::string TextFrames(const std::vector<std::string> &tokens, uint64_t h) {
  std::vector<std::pair<int, int>> scored;  // (-hits, index)
  for (int i = 0; i < static_cast<int>(std::size(kFrameCues)); ++i) {
    int hits = Hits(tokens, kFrameCues[i]);
    if (hits >= 2) scored.emplace_back(-hits, i);
  }
  std::sort(scored.begin(), scored.end());
  if (scored.size() > 4) scored.resize(4);
  std::vector<std::string> names;
  for (auto [neg, i] : scored) names.emplace_back(kFrameCues[i].name);
  if (names.empty()) names.emplace_back("None");
  Json obj;
  if (h % 4 == 3) {
    // The list-as-string shape the prompt template itself suggests.
    std::string joined = "[";
    for (size_t i = 0; i < names.size(); ++i) {
      if (i) joined += ", ";
      joined += names[i];
    }
    obj["frames-list"] = joined + "]";
  } else {
    obj["frames-list"] = names;
  }
  obj["reason"] = "The article discusses " + std::to_string(names.size()) +
                  " framing dimension(s) based on its vocabulary.";
  return Wrap(obj, h);
}

std::pair<std::string, Sentiment> TextEntity(std::string_view text) {
  size_t best_pos = std::string_view::npos;
  std::string_view best;
  for (std::string_view name : kEntities) {
    size_t pos = text.find(name);
    if (pos < best_pos) {
      best_pos = pos;
      best = name;
    }
  }
  if (best.empty()) return {"None", Sentiment::kNone};
  std::vector<std::string> tokens = Tokens(text);
  int neg = 0, pos = 0;
  for (std::string_view w : kNegativeWords) {
    neg += static_cast<int>(std::count(tokens.begin(), tokens.end(), w));
  }
  for (std::string_view w : kPositiveWords) {
    pos += static_cast<int>(std::count(tokens.begin(), tokens.end(), w));
  }
  Sentiment s = neg > pos ? Sentiment::kNegative
                : pos > neg ? Sentiment::kPositive
                            : Sentiment::kNeutral;
  return {std::string(best), s};
}

std::string_view DrawImageFrame(uint64_t r) {
  int pick = static_cast<int>(r % 100);
  for (const auto &[name, weight] : kImageFrameWeights) {
    if (pick < weight) return name;
    pick -= weight;
  }
  return "None";
}

}  // namespace

std::string MockBackend::Complete(const PromptBundle &bundle) {
  const std::string slug = TaskSlug(bundle.task);
  if (bundle.task.modality == Modality::kText) {
    std::string text = ArticleText(bundle.user_prompt);
    const uint64_t h = HashOf(seed_, slug, text);
    std::vector<std::string> tokens = Tokens(text);
    switch (bundle.task.kind) {
      case TaskKind::kGenericFrames:
        return TextFrames(tokens, h);
      case TaskKind::kTopic: {
        Json obj{{"topic_justification", "Most of the article vocabulary points here."},
                 {"topic", TopicFor(tokens)}};
        return Wrap(obj, h);
      }
      case TaskKind::kIssueFrame: {
        std::string topic = TopicFor(tokens);
        std::string frame = "Political Crisis";
        for (const IssueChoices &c : kIssueFrames) {
          if (c.topic == topic) {
            frame = std::string(*(c.frames.begin() + (h >> 8) % c.frames.size()));
          }
        }
        if ((h >> 16) % 3 == 0) frame = ToLower(frame);
        Json obj{{"issue_frame_justification", "Derived from the article topic."},
                 {"issue_frame", frame}};
        return Wrap(obj, h);
      }
      case TaskKind::kEntitySentiment: {
        auto [name, s] = TextEntity(text);
        Json obj{{"entity-name", name},
                 {"sentiment", name == "None" ? "None" : SentimentName(s)},
                 {"sentiment-reason", "Tone of the surrounding sentences."}};
        return Wrap(obj, h);
      }
      case TaskKind::kCaption:
        break;
    }
    throw Error("UnsupportedTask", "mock cannot answer " + slug);
  }

  std::string_view bytes = bundle.image ? std::string_view(bundle.image->bytes)
                                        : std::string_view();
  const uint64_t h = HashOf(seed_, slug, bytes);
  switch (bundle.task.kind) {
    case TaskKind::kGenericFrames: {
      std::vector<std::string> names{std::string(DrawImageFrame(h >> 4))};
      if ((h >> 12) % 10 < 3) {
        std::string second(DrawImageFrame(h >> 20));
        if (second != names[0] && second != "None" && names[0] != "None") {
          names.push_back(second);
        }
      }
      Json obj{{"frames-list", names},
               {"reason", "Visual elements in the image."}};
      return Wrap(obj, h);
    }
    case TaskKind::kEntitySentiment: {
      std::string name = "None";
      Sentiment s = Sentiment::kNone;
      if ((h >> 8) % 10 < 6) {
        name = std::string(kEntities[(h >> 16) % std::size(kEntities)]);
        int r = static_cast<int>((h >> 24) % 10);
        s = r < 5 ? Sentiment::kPositive : r < 8 ? Sentiment::kNeutral : Sentiment::kNegative;
      }
      Json obj{{"entity-name", name},
               {"sentiment", name == "None" ? "None" : SentimentName(s)},
               {"sentiment-reason", "Facial expression and setting."}};
      return Wrap(obj, h);
    }
    case TaskKind::kCaption: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%08llx",
                    static_cast<unsigned long long>(h & 0xffffffffULL));
      Json obj{{"caption", std::string("News photograph ") + buf}};
      return Wrap(obj, h);
    }
    default:
      break;
  }
  throw Error("UnsupportedTask", "mock cannot answer " + slug);
}

}  // namespace framelens
