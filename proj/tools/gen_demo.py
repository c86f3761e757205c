#!/usr/bin/env python3
"""Writes the synthetic demo data set under data/demo/.

The output is a pure function of SEED, so rerunning reproduces the shipped files.
"""
import csv
import datetime as dt
import json
import math
import os
import random

SEED = 20200101
START = dt.date(2020, 1, 1)
END = dt.date(2020, 4, 16)
REGIONS = ["Central", "Beijing", "Shanghai", "Zhejiang", "Guangdong", "Hubei", "Sichuan", "Hainan"]
LAG = {"Beijing": 2, "Shanghai": 3, "Zhejiang": 4, "Guangdong": 6, "Hubei": 1, "Sichuan": 9, "Hainan": 11}
GROUPS = [("central", ["Central"]), ("hubei", ["Hubei"]), ("north", ["Beijing"]),
          ("south", ["Guangdong", "Hainan"]), ("east", ["Shanghai", "Zhejiang"]), ("west", ["Sichuan"])]

THEMES = {
    "control": ["nursery", "infant", "children", "transport", "vehicle", "access", "highway", "in-out",
                "shop", "supermarket", "inspection", "illegal"],
    "information": ["civil affairs", "rights", "administrative", "report", "underreport", "omission",
                    "complaint", "processing", "responsibility", "test"],
    "economy": ["company", "enterprise", "business", "taxes", "employment", "employer", "worker",
                "agricultural", "farmland", "fertilizer", "vocational", "education", "recruitment"],
    "safety": ["fire", "fight", "weather", "disaster", "emergency", "check", "traffic", "party",
               "branch", "grain-oil", "food"],
    "support": ["electricity", "grid", "power", "toll road", "tolls", "rent", "rent free", "subsidies",
                "loan", "credit", "financing", "liquidity", "bank", "catering", "store", "return-work", "online"],
}
FILLER = ["notice", "province", "city", "county", "office", "measures", "work", "people", "plan",
          "implement", "strengthen", "prevention", "pandemic", "疫情", "防控", "通知"]
STOPWORDS = ["the", "of", "and", "to", "in", "on", "for", "的", "和"]
TITLES = {"control": "notice on control measures", "information": "notice on information release",
          "economy": "measures to support enterprises", "safety": "notice on public safety",
          "support": "measures on economic relief"}


def days():
    d = START
    while d <= END:
        yield d
        d += dt.timedelta(days=1)


def main():
    rng = random.Random(SEED)
    root = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data", "demo")
    os.makedirs(root, exist_ok=True)
    dates = list(days())
    n = len(dates)

    # Central policy intensity with volatility clustering; locals follow it with a lag.
    central = []
    level, var = 6.0, 1.0
    for t in range(n):
        shock = rng.gauss(0.0, math.sqrt(var))
        var = 0.3 + 0.25 * shock * shock + 0.6 * var
        level = 6.0 + 0.5 * (level - 6.0) + shock + (3.0 if 22 <= t <= 50 else 0.0)
        central.append(max(level, 0.5))
    intensity = {"Central": central}
    for r, lag in LAG.items():
        own = []
        for t in range(n):
            past = central[t - lag] if t >= lag else central[0]
            own.append(max(0.5, 0.8 * past + 1.5 + rng.gauss(0.0, 0.6)))
        intensity[r] = own

    docs = []
    for r in REGIONS:
        for t, d in enumerate(dates):
            for _ in range(max(1, int(round(intensity[r][t] / 2.0)))):
                theme = rng.choice(sorted(THEMES))
                words = []
                for _ in range(max(2, int(rng.gauss(intensity[r][t], 1.0)))):
                    words.append(rng.choice(THEMES[theme]) if rng.random() < 0.6 else rng.choice(FILLER))
                    if rng.random() < 0.3:
                        words.append(rng.choice(STOPWORDS))
                sep = "" if rng.random() < 0.2 else " "
                docs.append({"region": r, "date": d.isoformat(), "title": TITLES[theme],
                             "text": sep.join(words) + "."})
    with open(os.path.join(root, "corpus.jsonl"), "w", encoding="utf-8", newline="\n") as f:
        for doc in docs:
            f.write(json.dumps(doc, ensure_ascii=False) + "\n")

    with open(os.path.join(root, "..", "dictionary.csv"), encoding="utf-8") as f:
        keywords = {r["keyword"] for r in csv.DictReader(line for line in f if not line.startswith("#"))}
    lexicon = sorted({w for ws in THEMES.values() for w in ws} | keywords | set(FILLER) | set(STOPWORDS)
                     | {w for t in TITLES.values() for w in t.split()})
    with open(os.path.join(root, "lexicon.txt"), "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(lexicon) + "\n")
    with open(os.path.join(root, "stopwords.txt"), "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(STOPWORDS) + "\n")

    with open(os.path.join(root, "groups.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["group", "region"])
        for g, members in GROUPS:
            for m in members:
                w.writerow([g, m])

    # Daily new cases: an epidemic curve with multiplicative noise.
    with open(os.path.join(root, "covid.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["date", "new_cases"])
        for t, d in enumerate(dates):
            curve = 40.0 + 3000.0 * math.exp(-((t - 40) / 12.0) ** 2)
            w.writerow([d.isoformat(), int(round(curve * math.exp(rng.gauss(0.0, 0.35))))])

    # Daily index returns in percent on trading days only.
    holiday = (dt.date(2020, 1, 24), dt.date(2020, 2, 2))
    with open(os.path.join(root, "stock.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["date", "return"])
        var = 1.0
        for d in dates:
            if d.weekday() >= 5 or holiday[0] <= d <= holiday[1]:
                continue
            shock = rng.gauss(0.0, math.sqrt(var))
            var = 0.2 + 0.15 * shock * shock + 0.65 * var
            w.writerow([d.isoformat(), f"{0.03 + shock:.4f}"])


if __name__ == "__main__":
    main()
