#!/usr/bin/env python3
"""Generate the bundled synthetic desk corpus.

The texts are template-generated. Target groups are fictional (e.g. "zorblians")
so the corpus carries the structure of group-directed hate vs. untargeted
insults vs. everyday chatter without reproducing real slurs. A small fraction
of labels is flipped to mimic annotator noise.

Usage: gen_desk_corpus.py [--out data/corpus] [--seed 42]
"""

import argparse
import csv
import json
import random
from pathlib import Path

GROUPS = ["zorblians", "quenites", "vardoks", "plimmers", "ostrani", "kelvish people",
          "the marrow folk", "drabbites"]
GROUP_SG = ["zorblian", "quenite", "vardok", "plimmer", "ostrani", "kelvish", "marrow", "drabbite"]

HATE = [
    "all {g} should be kicked out of this country",
    "{g} are vermin and do not deserve rights",
    "i hate {g}, every single one of them",
    "never trust {g}, they are a disease on society",
    "{g} do not belong here, send them back",
    "women like her should stay in the kitchen, not the office",
    "girls cannot do science, stop pretending they can",
    "those {g} are subhuman and ruin every neighborhood",
    "get the {g} out of our schools now",
    "another {s} criminal, typical of their whole race",
    "{g} breed like rats and steal our jobs",
    "no {s} should ever be allowed to vote",
    "she only got hired because she is a woman, females are useless at work",
    "the {g} are an inferior people and everyone knows it",
    "ban every {s} from entering, they spread filth",
    "i would never rent to {g}, they are all thieves",
]

OFFENSIVE = [
    "shut up you absolute clown",
    "you are such an idiot lol",
    "what a stupid take, delete your account",
    "this referee is a total moron",
    "my ex is a lying jerk",
    "get lost loser nobody asked you",
    "you dumb fool, read the article first",
    "ugh this traffic is damn trash",
    "he is a pathetic little weasel",
    "stop whining you crybaby",
    "that movie was garbage and the director is a hack",
    "you are dumb as a rock",
    "what an annoying idiot on the bus today",
    "shut your mouth, you clueless muppet",
    "my boss is a useless jerk again",
    "screw you and your stupid opinion",
]

CLEAN = [
    "had a lovely walk in the park this morning",
    "just finished reading a great book about the ocean",
    "coffee with friends is the best way to start the day",
    "the new bakery downtown makes amazing bread",
    "can not wait for the concert this weekend",
    "our team won the match last night",
    "learning to cook pasta from scratch, wish me luck",
    "the sunset over the lake was beautiful",
    "happy birthday to my little sister",
    "anyone have tips for growing tomatoes",
    "finally fixed my bike, going for a ride",
    "thanks everyone for the kind messages today",
    "rainy day, perfect for a movie marathon",
    "the museum has a new exhibit on space travel",
    "met some {g} at the festival, they were so friendly",
    "reading about {s} history, really fascinating culture",
    "our new neighbors are {g} and they brought us cake",
    "the library is hosting a chess club on friday",
]

FILLERS = ["", "", "", " honestly", " today", " again", " smh", " for real", " lol", " tbh"]
HASHTAGS = ["", "", "", " #monday", " #news", " #life", " #sports", " #weekend"]
MENTIONS = ["@sam_k", "@news_daily", "@alex99", "@the_real_jo", "@weather_bot"]


def noisy(rng, text):
    t = text + rng.choice(FILLERS) + rng.choice(HASHTAGS)
    r = rng.random()
    if r < 0.2:
        t = rng.choice(MENTIONS) + " " + t
    elif r < 0.3:
        t = "RT " + rng.choice(MENTIONS) + ": " + t
    if rng.random() < 0.15:
        t += " https://t.co/" + "".join(rng.choice("abcdefghjkmnpqrstuvwxyz0123456789") for _ in range(8))
    if rng.random() < 0.3:
        t = t[0].upper() + t[1:]
    return t


def make(rng, templates):
    i = rng.randrange(len(GROUPS))
    return rng.choice(templates).format(g=GROUPS[i], s=GROUP_SG[i])


def generate(rng, n_per_class):
    rows = []
    for label, templates in (("hateful", HATE), ("offensive", OFFENSIVE), ("clean", CLEAN)):
        for _ in range(n_per_class):
            rows.append([label, noisy(rng, make(rng, templates))])
    rng.shuffle(rows)
    labels = ["hateful", "offensive", "clean"]
    for row in rows:
        if rng.random() < 0.05:
            row[0] = rng.choice([l for l in labels if l != row[0]])
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data/corpus")
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    rows = generate(rng, 200)
    a, b, c = rows[:300], rows[300:450], rows[450:]

    with open(out / "source_a.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["id", "text", "label"])
        for i, (label, text) in enumerate(a):
            w.writerow([f"a{i:04d}", text, label])

    # Second source uses a sexism/racism/neither vocabulary.
    with open(out / "source_b.jsonl", "w", encoding="utf-8") as f:
        for i, (label, text) in enumerate(b):
            if label == "hateful":
                raw = "Sexism" if any(w in text.lower() for w in ("women", "girls", "woman", "females")) else "Racism"
            elif label == "clean":
                raw = "Neither"
            else:
                raw = "Offensive"
            f.write(json.dumps({"id": str(100000 + i), "text": text, "label": raw}) + "\n")

    # Third source: mixed-case labels, integer-like ids.
    with open(out / "source_c.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["id", "text", "label"])
        for i, (label, text) in enumerate(c):
            w.writerow([str(900000 + i), text, label.capitalize()])


if __name__ == "__main__":
    main()
