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

// Brute-force reference implementations used as test oracles. They work on
// plain string sets and enumerate everything explicitly.

#ifndef FRAMELENS_TESTS_ORACLES_H_
#define FRAMELENS_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

using Labels = std::set<std::string>;

inline Labels Inter(const Labels &a, const Labels &b) {
  Labels out;
  for (const auto &x : a) {
    if (b.count(x)) out.insert(x);
  }
  return out;
}

inline Labels Minus(const Labels &a, const Labels &b) {
  Labels out;
  for (const auto &x : a) {
    if (!b.count(x)) out.insert(x);
  }
  return out;
}

struct Counts {
  long tp = 0, fp = 0, fn = 0;
};

struct Scores {
  std::map<std::string, Counts> per_label;
  double micro_p = 0, micro_r = 0, micro_f = 0;
  double macro_p = 0, macro_r = 0, macro_f = 0;
  double weighted_p = 0, weighted_r = 0, weighted_f = 0;
  double samples_p = 0, samples_r = 0, samples_f = 0;
  double nonzero = 0;
  long n = 0;
};

inline double Div(double a, double b) { return b == 0 ? 0.0 : a / b; }
inline double F1(double p, double r) { return p + r == 0 ? 0.0 : 2 * p * r / (p + r); }

// Items are (pred, gold) pairs already joined.
inline Scores Score(const std::vector<std::pair<Labels, Labels>> &items) {
  Scores s;
  s.n = static_cast<long>(items.size());
  Labels universe;
  for (const auto &[p, g] : items) {
    universe.insert(p.begin(), p.end());
    universe.insert(g.begin(), g.end());
  }
  for (const auto &l : universe) {
    Counts c;
    for (const auto &[p, g] : items) {
      bool inp = p.count(l) > 0, ing = g.count(l) > 0;
      if (inp && ing) ++c.tp;
      if (inp && !ing) ++c.fp;
      if (!inp && ing) ++c.fn;
    }
    s.per_label[l] = c;
  }
  long tp = 0, fp = 0, fn = 0;
  double support_total = 0;
  for (const auto &[l, c] : s.per_label) {
    tp += c.tp;
    fp += c.fp;
    fn += c.fn;
    double p = Div(c.tp, c.tp + c.fp), r = Div(c.tp, c.tp + c.fn), f = F1(p, r);
    s.macro_p += p;
    s.macro_r += r;
    s.macro_f += f;
    double w = c.tp + c.fn;
    support_total += w;
    s.weighted_p += w * p;
    s.weighted_r += w * r;
    s.weighted_f += w * f;
  }
  double k = static_cast<double>(s.per_label.size());
  s.macro_p /= k;
  s.macro_r /= k;
  s.macro_f /= k;
  if (support_total > 0) {
    s.weighted_p /= support_total;
    s.weighted_r /= support_total;
    s.weighted_f /= support_total;
  } else {
    s.weighted_p = s.weighted_r = s.weighted_f = 0;
  }
  s.micro_p = Div(tp, tp + fp);
  s.micro_r = Div(tp, tp + fn);
  s.micro_f = F1(s.micro_p, s.micro_r);
  long nonzero = 0;
  for (const auto &[p, g] : items) {
    double i = static_cast<double>(Inter(p, g).size());
    if (i > 0) ++nonzero;
    s.samples_p += Div(i, static_cast<double>(p.size()));
    s.samples_r += Div(i, static_cast<double>(g.size()));
    s.samples_f += Div(2 * i, static_cast<double>(p.size() + g.size()));
  }
  s.samples_p /= static_cast<double>(s.n);
  s.samples_r /= static_cast<double>(s.n);
  s.samples_f /= static_cast<double>(s.n);
  s.nonzero = static_cast<double>(nonzero) / static_cast<double>(s.n);
  return s;
}

// (missed gold label, wrongly predicted label) -> count.
inline std::map<std::pair<std::string, std::string>, long> Mismatch(
    const std::vector<std::pair<Labels, Labels>> &items) {
  std::map<std::pair<std::string, std::string>, long> out;
  for (const auto &[p, g] : items) {
    for (const auto &m : Minus(g, p)) {
      for (const auto &w : Minus(p, g)) ++out[{m, w}];
    }
  }
  return out;
}

inline double Jaccard(const Labels &a, const Labels &b) {
  Labels u = a;
  u.insert(b.begin(), b.end());
  if (u.empty()) return 1.0;
  return static_cast<double>(Inter(a, b).size()) / static_cast<double>(u.size());
}

struct Agreement {
  double alpha = 1.0;
  double mean_jaccard = 1.0;
};

// Units are lists of label sets, one per annotator. Every ordered pair of
// pairable values is enumerated directly.
inline Agreement Alpha(const std::vector<std::vector<Labels>> &units) {
  std::vector<Labels> values;
  double d_o = 0;
  double jac = 0;
  long pairable_units = 0;
  for (const auto &u : units) {
    if (u.size() < 2) continue;
    ++pairable_units;
    double unit = 0;
    double jsum = 0;
    long jn = 0;
    for (size_t i = 0; i < u.size(); ++i) {
      values.push_back(u[i]);
      for (size_t j = 0; j < u.size(); ++j) {
        if (i == j) continue;
        unit += 1.0 - Jaccard(u[i], u[j]);
        if (i < j) {
          jsum += Jaccard(u[i], u[j]);
          ++jn;
        }
      }
    }
    d_o += unit / static_cast<double>(u.size() - 1);
    jac += jsum / static_cast<double>(jn);
  }
  double n = static_cast<double>(values.size());
  d_o /= n;
  double d_e = 0;
  for (size_t i = 0; i < values.size(); ++i) {
    for (size_t j = 0; j < values.size(); ++j) {
      if (i != j) d_e += 1.0 - Jaccard(values[i], values[j]);
    }
  }
  d_e /= n * (n - 1);
  Agreement a;
  a.alpha = d_e == 0 ? 1.0 : 1.0 - d_o / d_e;
  a.mean_jaccard = jac / static_cast<double>(pairable_units);
  return a;
}

// Top-3 by item count, then corpus count, then id; "none" survives only
// when nothing else was chosen.
inline std::vector<Labels> GoldTop3(const std::vector<std::vector<Labels>> &items) {
  std::map<std::string, long> corpus;
  for (const auto &item : items) {
    for (const auto &a : item) {
      for (const auto &l : a) ++corpus[l];
    }
  }
  std::vector<Labels> out;
  for (const auto &item : items) {
    std::map<std::string, long> count;
    for (const auto &a : item) {
      for (const auto &l : a) ++count[l];
    }
    bool substantive = std::any_of(count.begin(), count.end(),
                                   [](const auto &kv) { return kv.first != "none"; });
    std::vector<std::tuple<long, long, std::string>> keys;
    for (const auto &[l, c] : count) {
      if (substantive && l == "none") continue;
      keys.emplace_back(-c, -corpus[l], l);
    }
    std::sort(keys.begin(), keys.end());
    Labels g;
    for (size_t i = 0; i < keys.size() && i < 3; ++i) g.insert(std::get<2>(keys[i]));
    if (g.empty()) g.insert("none");
    out.push_back(g);
  }
  return out;
}

inline Labels GoldUnion(const std::vector<Labels> &item) {
  Labels u;
  for (const auto &a : item) u.insert(a.begin(), a.end());
  if (u.size() > 1) u.erase("none");
  if (u.empty()) u.insert("none");
  return u;
}

struct Pmi {
  long n = 0;
  std::map<std::pair<std::string, std::string>, long> joint;  // (text, image)
  std::map<std::string, long> text, image;
  std::map<std::pair<std::string, std::string>, double> pmi;
};

// Articles are (text labels, image labels).
inline Pmi PmiOf(const std::vector<std::pair<Labels, Labels>> &articles) {
  Pmi r;
  r.n = static_cast<long>(articles.size());
  for (const auto &[t, i] : articles) {
    for (const auto &a : t) ++r.text[a];
    for (const auto &b : i) ++r.image[b];
    for (const auto &a : t) {
      for (const auto &b : i) ++r.joint[{a, b}];
    }
  }
  double n = static_cast<double>(r.n);
  for (const auto &[k, c] : r.joint) {
    double p_ab = c / n;
    double p_a = r.text[k.first] / n;
    double p_b = r.image[k.second] / n;
    r.pmi[k] = std::log(p_ab / (p_a * p_b)) / std::log(2.0);
  }
  return r;
}

struct FwScore {
  double delta, sigma2, z;
};

// Direct evaluation of the log-odds formulas for one bigram.
inline FwScore FightinWords(double y1, double y2, double n1, double n2, double a, double a0) {
  double l1 = std::log(y1 + a) - std::log(n1 + a0 - y1 - a);
  double l2 = std::log(y2 + a) - std::log(n2 + a0 - y2 - a);
  FwScore s;
  s.delta = l1 - l2;
  s.sigma2 = 1.0 / (y1 + a) + 1.0 / (y2 + a);
  s.z = s.delta / std::sqrt(s.sigma2);
  return s;
}

inline long NearestRank(std::vector<long> v, double pct) {
  std::sort(v.begin(), v.end());
  long n = static_cast<long>(v.size());
  long rank = static_cast<long>(std::ceil(pct / 100.0 * static_cast<double>(n)));
  rank = std::clamp(rank, 1L, n);
  return v[static_cast<size_t>(rank - 1)];
}

}  // namespace oracle

#endif  // FRAMELENS_TESTS_ORACLES_H_
