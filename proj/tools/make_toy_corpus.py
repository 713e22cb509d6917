#!/usr/bin/env python3
# Copyright 2026 The Framelens Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled toy corpus under data/toy.

Output is fully determined by SEED. Layout:
  articles.jsonl            56 articles + 1 malformed line
  images/*.png              photos, logos and oversized images
  leaning_registry.json     outlets used by the corpus
  human_image_frames.jsonl  two annotators over 20 images
  mfc_text_frames.jsonl     three coders over 20 texts
  topic_judgments.jsonl     two judges over 20 topics
"""

import argparse
import hashlib
import json
import pathlib
import random

from PIL import Image, ImageDraw

SEED = 20240611

DOMAINS = {
    "left": ["vox.com", "huffpost.com"],
    "left-lean": ["apnews.com", "npr.com", "washingtonpost.com"],
    "center": ["reuters.com", "thehill.com"],
    "right-lean": ["nypost.com", "washingtontimes.com"],
    "right": ["foxnews.com", "dailywire.com"],
}

COMMON = [
    "Officials said the situation was still developing on Monday.",
    "Local residents told reporters they were watching closely.",
    "The announcement came after weeks of negotiations.",
    "Analysts expect further updates later this week.",
    "Former President Donald Trump commented on the news in a statement.",
    "Joe Biden praised the agreement as a success for families.",
    "Critics said the plan failed to address the crisis.",
    "A spokesperson declined to comment further.",
]

TOPICS = {
    "immigration": [
        "Migrants waited at the border crossing as asylum requests piled up.",
        "Immigration officials said the shelters had reached capacity.",
        "Immigrants described long journeys and scarce resources.",
        "The border patrol reported a shortage of staff and supply trucks.",
        "Advocates said asylum seekers faced discrimination and unfair treatment.",
        "Lawmakers debated a bill to change immigration policy.",
    ],
    "war": [
        "Troops moved toward the front line as the war entered its third year.",
        "Military officials said a missile struck a depot near the border.",
        "Volodymyr Zelensky welcomed new defense aid from NATO allies.",
        "Vladimir Putin was condemned by foreign leaders over the attack.",
        "International sanctions tightened as diplomatic talks stalled.",
        "Soldiers said the war had killed dozens in the region.",
    ],
    "crime": [
        "Police said the suspect was arrested after a shooting downtown.",
        "A 24 year old man was charged with assault, police said.",
        "Police said the crime scene remained closed overnight.",
        "The suspect, a 31 year old resident, appeared before a judge.",
        "Prosecutors said the shooting was part of a wider crime wave.",
        "Police said witnesses described a car leaving the area.",
        "The court ruling set bail at a record amount.",
    ],
    "politics": [
        "The election campaign intensified as the senator toured the state.",
        "Republican and Democrat leaders in Congress traded accusations.",
        "Former President Donald Trump held a campaign rally in Ohio.",
        "Kamala Harris criticized the Senate vote on the spending bill.",
        "A new poll showed the campaign narrowing among likely voters.",
        "Congress passed legislation after a long political fight.",
    ],
    "economy": [
        "Inflation eased as prices for groceries fell for a second month.",
        "The economy added jobs at a steady pace, the report said.",
        "Markets rallied after the budget deal lowered tax uncertainty.",
        "Economic growth beat forecasts, boosting hope for wages.",
        "Families said the cost of living still strained budgets.",
        "Elon Musk said the market reaction was a win for investors.",
    ],
    "health": [
        "Hospital officials reported a rise in covid cases this winter.",
        "The vaccine rollout expanded to more clinics across the state.",
        "Health experts warned that the disease spread quickly in schools.",
        "Doctors said hospital capacity was stretched by the outbreak.",
        "Public health officials urged residents to get tested.",
        "The new health policy aims to cut costs for patients.",
    ],
    "environment": [
        "A storm flooded coastal towns, forcing families to evacuate.",
        "Wildfire smoke covered the valley as crews fought the blaze.",
        "Climate scientists said emissions must fall faster this decade.",
        "The flood damaged homes and disrupted daily living for residents.",
        "Officials said the storm caused a shortage of clean water supply.",
        "International talks on climate ended with a new agreement.",
    ],
    "technology": [
        "The startup unveiled new software that uses ai to scan documents.",
        "Chip makers said technology demand remained strong this quarter.",
        "Elon Musk said the ai model would launch next month.",
        "Regulators questioned the technology company over privacy rules.",
        "The software update drew criticism from privacy advocates.",
        "Investors welcomed the chip deal as a record for the industry.",
    ],
    "sports": [
        "The team won the championship game after a dramatic season.",
        "The coach praised the players for a record season.",
        "Fans celebrated in the streets after the final game.",
        "The season opener drew a large crowd to the stadium.",
        "The team announced a new coach after the championship loss.",
    ],
    "media": [
        "The television network named a new evening anchor.",
        "The newspaper journalist won an award for the investigation.",
        "Critics accused the network of bias in its election coverage.",
        "The anchor said the newspaper story was accurate.",
        "A journalist was detained while covering the protest.",
    ],
}

FRAMES = ["economic", "cap&res", "morality", "fairness", "legality", "policy",
          "crime", "security", "health", "quality_life", "culture", "public_op",
          "political", "regulation"]

SPANISH = ("La policia dijo que el sospechoso fue arrestado despues del tiroteo. "
           "Los vecinos dijeron que la situacion era tranquila. ")


def article_id(url):
  return hashlib.sha256(url.encode()).hexdigest()[:16]


def make_text(rng, topic, target):
  pool = TOPICS[topic]
  sentences = []
  words = 0
  while words < target:
    s = rng.choice(pool) if rng.random() < 0.7 else rng.choice(COMMON)
    sentences.append(s)
    words += len(s.split())
  return " ".join(sentences)


def save_png(img, path):
  img.save(path, format="PNG", optimize=False, compress_level=6)


def photo(rng, w, h, noise):
  img = Image.new("RGB", (w, h), tuple(rng.randrange(256) for _ in range(3)))
  d = ImageDraw.Draw(img)
  for _ in range(12):
    x0, y0 = rng.randrange(w), rng.randrange(h)
    x1, y1 = x0 + rng.randrange(10, w), y0 + rng.randrange(10, h)
    color = tuple(rng.randrange(256) for _ in range(3))
    if rng.random() < 0.5:
      d.rectangle([x0, y0, x1, y1], fill=color)
    else:
      d.ellipse([x0, y0, x1, y1], fill=color)
  px = img.load()
  for y in range(h):
    for x in range(w):
      if rng.random() < noise:
        r, g, b = px[x, y]
        n = rng.randrange(-40, 41)
        px[x, y] = (max(0, min(255, r + n)), max(0, min(255, g + n)), max(0, min(255, b + n)))
  return img


def main():
  ap = argparse.ArgumentParser(description=__doc__)
  ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "toy"))
  args = ap.parse_args()
  out = pathlib.Path(args.out)
  (out / "images").mkdir(parents=True, exist_ok=True)
  rng = random.Random(SEED)

  domains = [(l, d) for l, ds in DOMAINS.items() for d in ds]
  rows = []
  regular = []
  n = 0

  def add(topic, text, language, images, title):
    nonlocal n
    n += 1
    leaning, domain = domains[n % len(domains)]
    url = f"https://www.{domain}/{n:03d}-{topic}"
    rows.append({
        "url": url,
        "date_publish": f"2024-{1 + n % 12:02d}-{1 + n % 27:02d} 08:00:00",
        "title": title,
        "maintext": text,
        "language": language,
        "image_urls": images,
    })
    return url

  def image(name, img):
    save_png(img, out / "images" / name)
    return f"images/{name}"

  logo_count = 0
  large_count = 0
  for topic in TOPICS:
    for k in range(5):
      target = rng.choice([70, 85]) if (topic, k) in {("war", 4), ("health", 2), ("economy", 3)} \
          else rng.randrange(110, 260)
      text = make_text(rng, topic, target)
      imgs = []
      idx = len(regular)
      if idx % 9 == 0:
        logo_count += 1
        imgs.append(image(f"logo_{logo_count:02d}.png",
                          Image.new("RGB", (24, 24), (200, 30, 30))))
      if idx in (5, 23, 41):
        large_count += 1
        imgs.append(image(f"large_{large_count:02d}.png", photo(rng, 300, 220, 1.0)))
      imgs.append(image(f"photo_{idx:02d}.png", photo(rng, 160, 120, 0.25)))
      url = add(topic, text, "en", imgs, f"{topic.title()} report {k + 1}")
      regular.append((article_id(url), topic))

  # Outliers removed by the filter: two very short, two very long, two not English.
  for k in range(2):
    add("media", "Breaking news update.", "en",
        [image(f"photo_short_{k}.png", photo(rng, 160, 120, 0.25))], "Short item")
  for k in range(2):
    add("politics", make_text(rng, "politics", 900), "en",
        [image(f"photo_long_{k}.png", photo(rng, 160, 120, 0.25))], "Long feature")
  for k in range(2):
    add("crime", SPANISH * 8, "es",
        [image(f"photo_es_{k}.png", photo(rng, 160, 120, 0.25))], "Noticia")

  with open(out / "articles.jsonl", "w") as f:
    for i, r in enumerate(rows):
      f.write(json.dumps(r) + "\n")
      if i == 10:
        f.write('{"url": "https://www.vox.com/broken", "maintext": \n')

  with open(out / "leaning_registry.json", "w") as f:
    json.dump(DOMAINS, f, indent=2)
    f.write("\n")

  sample = regular[:20]
  with open(out / "human_image_frames.jsonl", "w") as f:
    for item_id, _ in sample:
      a = sorted(rng.sample(FRAMES, rng.choice([1, 1, 2])))
      if rng.random() < 0.15:
        a = ["none"]
      b = list(a) if rng.random() < 0.5 else sorted(set(a[:1] + rng.sample(FRAMES, 1)))
      for annotator, labels in (("annotator_a", a), ("annotator_b", b)):
        f.write(json.dumps({"item_id": item_id, "annotator_id": annotator,
                            "labels": labels}) + "\n")

  with open(out / "mfc_text_frames.jsonl", "w") as f:
    for item_id, _ in regular[10:30]:
      base = rng.sample(FRAMES, 3)
      for coder in ("coder_1", "coder_2", "coder_3"):
        labels = sorted(set(base[:2] + rng.sample(FRAMES, rng.choice([0, 1, 2]))))
        f.write(json.dumps({"item_id": item_id, "annotator_id": coder,
                            "labels": labels}) + "\n")

  with open(out / "topic_judgments.jsonl", "w") as f:
    for item_id, _ in regular[:20]:
      for judge in ("judge_1", "judge_2"):
        f.write(json.dumps({"item_id": item_id, "judge_id": judge,
                            "acceptable": rng.random() < 0.9}) + "\n")


if __name__ == "__main__":
  main()
