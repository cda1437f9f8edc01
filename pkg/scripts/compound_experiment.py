"""Split synthetic compounds built from the bundled noun list and report statistics.

Each lemma is joined with random partners through every linker; the splitter
output is checked against exhaustive enumeration and the results are tabulated
by linker, recovered component count and number of competing optimal splits.

    python scripts/compound_experiment.py --partners 10 --seed 1
"""

import argparse
import random
import time
from collections import Counter

from gfmwe import load_bundled_lexicon
from gfmwe.compound import SplitConfig, enumerate_splits, split_compound


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--partners", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--min-component", type=int, default=3)
    args = ap.parse_args()

    lex = load_bundled_lexicon()
    config = SplitConfig(min_component_length=args.min_component)
    lemmas = sorted(set(lex.nouns.values()))
    rng = random.Random(args.seed)

    by_linker = Counter()
    recovered = Counter()
    parts = Counter()
    ties = Counter()
    disagree = 0
    t0 = time.perf_counter()
    for a in lemmas:
        for b in rng.sample(lemmas, args.partners):
            for lk in config.linkers:
                word = a + lk + b.lower()
                s = split_compound(word, lex, config)
                by_linker[lk] += 1
                if s is None:
                    continue
                parts[len(s)] += 1
                if s.components == ((a, lk), (b, "")):
                    recovered[lk] += 1
                alts = enumerate_splits(word, lex, config)
                if alts[0] != s:
                    disagree += 1
                ties[sum(len(x) == len(s) for x in alts)] += 1
    dt = time.perf_counter() - t0

    total = sum(by_linker.values())
    print(f"{total} compounds from {len(lemmas)} lemmas in {dt:.1f}s ({1e6 * dt / total:.0f} us each, incl. enumeration)")
    print(f"splitter vs enumeration disagreements: {disagree}")
    print("\nlinker  built  recovered-as-built")
    for lk in config.linkers:
        print(f"{lk or '-':<6}  {by_linker[lk]:>5}  {recovered[lk] / by_linker[lk]:.3f}")
    print("\ncomponents  count")
    for k in sorted(parts):
        print(f"{k:>10}  {parts[k]}")
    print("\noptimal splits  count")
    for k in sorted(ties):
        print(f"{k:>14}  {ties[k]}")


if __name__ == "__main__":
    main()
