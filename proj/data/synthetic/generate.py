# Copyright 2026 The Sessiz Authors
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

"""Writes the bundled synthetic posts and labeled corpus.

Output is a pure function of the seed; rerunning reproduces both files byte for byte.
"""

import argparse
import csv
import datetime as dt
import random
from pathlib import Path

KEYWORDS = {
    "Happy": ["mutlu", "sevindim", "güzel", "harika", "gurur duydum"],
    "Fear": ["korkuyorum", "endişeliyim", "tedirginim", "tehlikeli", "ürktüm"],
    "Sadness": ["üzgünüm", "üzüldüm", "ağladım", "hüzünlü", "yazık"],
    "Disgust": ["iğrenç", "tiksindim", "rezil", "midem bulandı", "kusmuk gibi"],
    "Surprise": ["şaşırdım", "şaşkınım", "inanılmaz", "hayret", "vay be"],
    "Anger": ["öfkeliyim", "kızgınım", "sinir oldum", "nefret ediyorum", "yeter artık"],
}
FILLER = [
    "Sessiz istila", "bu film", "İstanbul sokakları", "Irak sınırı", "göç meselesi",
    "belgesel", "herkes izlemeli", "bugün", "sınırlar", "ÇOK ÖNEMLİ", "gençler",
]
EMOJI = ["😀", "😂", "👏", "😡", "😢", "😱", "🤮", "😮", "🇹🇷", "❤️", "🔥", "🦄", "👏🏻"]
USERS = ["Zalim_Fira", "SedefKabas", "KaracasuHande", "haber_ajansi", "kullanici42"]
TAGS = ["sessizistila", "suriyeliler", "sığınmacısorunu", "afganlar", "İstilaVar"]
MONTH_WEIGHTS = {
    "2021-06": 1, "2021-07": 30, "2021-08": 3, "2021-09": 1, "2021-10": 1, "2021-11": 1,
    "2021-12": 6, "2022-01": 1, "2022-02": 3, "2022-03": 4, "2022-04": 7, "2022-05": 420,
    "2022-06": 190, "2022-07": 60, "2022-08": 50, "2022-09": 45, "2022-10": 7, "2022-11": 20,
    "2022-12": 25,
}


def sentence(rng, emotion):
    words = rng.sample(FILLER, 2)
    if emotion is not None:
        words += rng.choices(KEYWORDS[emotion], k=rng.choice([1, 2, 3, 3, 4]))
        if rng.random() < 0.3:
            other = rng.choice([e for e in KEYWORDS if e != emotion])
            words.append(rng.choice(KEYWORDS[other]))
    rng.shuffle(words)
    text = " ".join(words)
    return text[0].upper() + text[1:] + rng.choice([".", "!", "...", "?", "…", ""])


def timestamp(rng, month):
    year, mon = map(int, month.split("-"))
    start = dt.datetime(year, mon, 1, tzinfo=dt.timezone.utc)
    end = dt.datetime(year + mon // 12, mon % 12 + 1, 1, tzinfo=dt.timezone.utc)
    seconds = rng.randrange(int((end - start).total_seconds()))
    return (start + dt.timedelta(seconds=seconds)).strftime("%Y-%m-%dT%H:%M:%SZ")


def post_text(rng):
    emotion = rng.choice(list(KEYWORDS) + [None])
    text = sentence(rng, emotion)
    if rng.random() < 0.35:
        text = f"RT @{rng.choice(USERS)}: {text}"
    elif rng.random() < 0.25:
        text = f"@{rng.choice(USERS)} {text}"
    if rng.random() < 0.3:
        text += " " + " ".join("#" + t for t in rng.sample(TAGS, rng.randint(1, 3)))
    if rng.random() < 0.3:
        text += " " + "".join(rng.choices(EMOJI, k=rng.randint(1, 5)))
    if rng.random() < 0.25:
        text += f" https://t.co/{''.join(rng.choices('abcdefghijkLMNOP0123456789', k=10))}"
    return text


def posts(rng, n):
    months = list(MONTH_WEIGHTS)
    weights = list(MONTH_WEIGHTS.values())
    rows = []
    while len(rows) < n:
        i = len(rows) + 1
        roll = rng.random()
        if roll < 0.02:
            created = rng.choice(["2021-05-31T23:59:59Z", "2021-05-12T08:00:00Z", "2023-01-01T00:00:00Z"])
        else:
            created = timestamp(rng, rng.choices(months, weights)[0])
        lang = "en" if roll > 0.97 else rng.choice(["tr", "tr", "tr", "TR"])
        if rows and rng.random() < 0.08:
            text = rng.choice(rows)[2]  # exact duplicate text, new post
        else:
            text = post_text(rng) if lang != "en" else "Silent invasion is trending again"
        rows.append([f"p{i:04d}", created, text, lang, rng.choice(USERS), rng.randint(0, 5000)])
    return rows


def corpus(rng, per_class):
    rows = []
    i = 0
    for emotion, count in zip(KEYWORDS, per_class):
        for _ in range(count):
            i += 1
            validated = emotion if rng.random() < 0.85 else rng.choice(["", "Ambiguous"])
            text = sentence(rng, emotion)
            if rng.random() < 0.2:
                text = text.upper()
            rows.append([f"t{i:04d}", text, emotion, validated])
    rng.shuffle(rows)
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=2022)
    ap.add_argument("--posts", type=int, default=1000)
    ap.add_argument("--out", type=Path, default=Path(__file__).parent)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    with open(args.out / "posts.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["id", "created_at", "text", "lang", "user_name", "followers"])
        w.writerows(posts(rng, args.posts))
    with open(args.out / "tremo.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["ID", "Entry", "Emotion", "ValidatedEmotion"])
        w.writerows(corpus(rng, [72, 80, 76, 70, 62, 77]))


if __name__ == "__main__":
    main()
