"""Run candidate detection over a parallel corpus and propose constructions.

    python scripts/run_detection.py                       # bundled eng-swe corpus
    python scripts/run_detection.py --corpus my.tsv --langs eng,fre

Prints the summary table, then one proposed ``fun`` declaration for every
predicate-level candidate whose diff sites share a category.
"""

import argparse
import sys
from collections import Counter

from gfmwe import data_path, load_grammar, load_toy_grammar
from gfmwe.cli import read_corpus
from gfmwe.detect import Kind, detect_pair, emit_construction, render_summary, summarize


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--corpus", default=str(data_path("toy_corpus.tsv")))
    ap.add_argument("--grammar")
    ap.add_argument("--langs", default="eng,swe")
    args = ap.parse_args()

    grammar = load_grammar(open(args.grammar, encoding="utf-8").read()) if args.grammar else load_toy_grammar()
    langs = tuple(args.langs.split(","))
    with open(args.corpus, encoding="utf-8") as f:
        pairs = list(read_corpus(f.read(), langs))
    reports = [detect_pair(p, grammar) for p in pairs]

    sys.stdout.write(render_summary(summarize(reports)))
    print()

    status = Counter((r.outcome_x.status.value, r.outcome_y.status.value) for r in reports)
    for (sx, sy), n in sorted(status.items()):
        print(f"# parse status {sx}/{sy}: {n}")
    print()

    for r in reports:
        if r.candidate_kind is not Kind.PREDICATE:
            continue
        for i, d in enumerate(r.diffs):
            name = f"{r.pair_id}_c{i}"
            try:
                print(emit_construction(d, name, grammar, langs))
            except ValueError as e:
                print(f"-- {name}: {e}")


if __name__ == "__main__":
    main()
