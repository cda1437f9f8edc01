"""Build the bundled German noun lexicon from the Wiktionary-derived noun list.

The source is ``nouns.csv`` from the ``german-nouns`` package (WiktionaryDE,
CC BY-SA 4.0).  Only short simplex nouns are kept, sampled deterministically.

    pip download german-nouns --no-deps -d /tmp/gn
    python -m zipfile -e /tmp/gn/german_nouns-*.whl /tmp/gn/x
    python scripts/build_lexicon.py /tmp/gn/x/german_nouns/nouns.csv \
        src/gfmwe/data/german_nouns.tsv
"""

import argparse
import csv
import random
import re

from gfmwe.compound import SplitConfig, lexicon_from_words, split_compound

SIMPLEX = re.compile(r"^[A-ZÄÖÜ][a-zäöüß]+$")

# Components of the worked examples and of the phrase-table fixtures.
# "Krank" is an adjective stem, listed as N so that Krank+en|Wagen is derivable.
SEED = """
Leben Mittel Krank Wagen Apfel Saft Haus Tür Schlüssel Bahn Hof Karte Kind
Garten Buch Laden Schule Stadt Tag Zeit Welt Fahrt Wasser Glas Flasche Bier
Banane Hund Auto Zug Stern Hilfe Arbeit Platz Wein Brot Milch Tisch
""".split()


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("nouns_csv")
    ap.add_argument("out")
    ap.add_argument("--size", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=2014)
    ap.add_argument("--min-len", type=int, default=4)
    ap.add_argument("--max-len", type=int, default=7)
    args = ap.parse_args()

    with open(args.nouns_csv, encoding="utf-8") as f:
        nouns = {r["lemma"] for r in csv.DictReader(f) if r["pos"] == "Substantiv"}
    nouns = sorted(w for w in nouns if SIMPLEX.match(w) and len(w) >= 3)
    pool = [w for w in nouns if args.min_len <= len(w) <= args.max_len]
    # Drop words that are themselves compounds of other nouns.
    pool_lex = lexicon_from_words(nouns)
    simplex = [w for w in pool if split_compound(w, pool_lex, SplitConfig()) is None]
    rng = random.Random(args.seed)
    rest = [w for w in simplex if w not in SEED]
    chosen = sorted(set(SEED) | set(rng.sample(rest, args.size - len(set(SEED)))))
    with open(args.out, "w", encoding="utf-8") as f:
        f.write("# German nouns sampled from WiktionaryDE via the german-nouns package (CC BY-SA 4.0).\n")
        f.write("# Krank is an adjective stem listed as N for the Cons_en rule.\n")
        for w in chosen:
            f.write(f"{w}\tN\n")
    print(f"pool {len(pool)}, simplex {len(simplex)}, wrote {len(chosen)} lemmas to {args.out}")


if __name__ == "__main__":
    main()
