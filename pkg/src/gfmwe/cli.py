"""Command-line front end: ``gfmwe {detect,split,extract,gen,report}``.

Data goes to files or stdout, logs to stderr.  Exit status 2 signals a
configuration or I/O problem; data-level rejects never change it.
"""

import argparse
import json
import logging
import sys
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import data_path
from .compound import SplitConfig, format_split_line, load_lexicon, split_compound
from .detect import Kind, SentencePair, Verdict, detect_pair, render_summary, summarize, summary_balances
from .grammar import GrammarError, enumerate_trees, linearize, load_grammar
from .parser import DEFAULT_CAP
from .phrases import PhraseTableError, build_compound_lexicon, export_lexicon, filter_candidates, load_phrase_table

log = logging.getLogger("gfmwe")

PUNCT = ".,!?;:\"()[]¿¡«»…"


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    grammar_path: Path
    langs: tuple = ("eng", "swe")
    corpus_path: Optional[Path] = None
    lexicon_path: Optional[Path] = None
    phrase_table_path: Optional[Path] = None
    phrase_format: str = "moses"
    threshold: float = 0.1
    score_index: int = 0
    require_constituent: bool = False
    split: SplitConfig = field(default_factory=SplitConfig)
    cap: int = DEFAULT_CAP
    out_dir: Optional[Path] = None
    out_format: str = "both"

    @classmethod
    def from_args(cls, args):
        def path(value, what):
            if value is None:
                return None
            p = Path(value)
            if not p.is_file():
                raise ConfigError(f"{what} not found: {p}")
            return p

        try:
            split = SplitConfig(
                linkers=tuple(getattr(args, "linkers", ",s,en").split(",")),
                min_component_length=getattr(args, "min_component", 3),
            )
        except ValueError as e:
            raise ConfigError(str(e)) from None
        threshold = getattr(args, "threshold", 0.1)
        if not 0.0 <= threshold <= 1.0:
            raise ConfigError(f"threshold {threshold} outside [0, 1]")
        if args.cap < 1:
            raise ConfigError("--cap must be >= 1")
        langs = tuple(args.langs.split(","))
        if len(langs) != 2 or langs[0] == langs[1]:
            raise ConfigError(f"--langs needs two distinct codes, got {args.langs!r}")
        return cls(
            grammar_path=path(args.grammar, "grammar") or Path(str(data_path("toy.gf"))),
            langs=langs,
            corpus_path=path(getattr(args, "corpus", None), "corpus"),
            lexicon_path=path(getattr(args, "lexicon", None), "lexicon")
            or Path(str(data_path("german_nouns.tsv"))),
            phrase_table_path=path(getattr(args, "phrase_table", None), "phrase table"),
            phrase_format=getattr(args, "format", "moses"),
            threshold=threshold,
            score_index=getattr(args, "score_index", 0),
            require_constituent=getattr(args, "require_constituent", False),
            split=split,
            cap=args.cap,
            out_dir=Path(args.out_dir) if args.out_dir else None,
            out_format=getattr(args, "out_format", "both"),
        )

    def grammar(self, need_langs=()):
        try:
            g = load_grammar(self.grammar_path.read_text(encoding="utf-8"))
        except GrammarError as e:
            raise ConfigError(f"{self.grammar_path}: {e}") from None
        missing = [l for l in need_langs if l not in g.concretes]
        if missing:
            raise ConfigError(f"grammar has no concrete syntax for {', '.join(missing)}")
        return g

    def lexicon(self):
        return load_lexicon(self.lexicon_path.read_text(encoding="utf-8"), str(self.lexicon_path))


def tokenize(sentence):
    """Whitespace tokens with surrounding punctuation stripped."""
    return [t for t in (w.strip(PUNCT) for w in sentence.split()) if t]


def read_corpus(text, langs):
    """Yield SentencePairs from ``id<TAB>x<TAB>y`` lines; bad lines are logged."""
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            log.warning("corpus line %d skipped: expected 3 tab-separated fields", lineno)
            continue
        try:
            yield SentencePair(fields[0].strip(), langs[0], langs[1], tokenize(fields[1]), tokenize(fields[2]))
        except ValueError as e:
            log.warning("corpus line %d skipped: %s", lineno, e)


def _out(cfg, name):
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    return cfg.out_dir / name


# --- commands --------------------------------------------------------------

def cmd_detect(cfg):
    if cfg.corpus_path is None:
        raise ConfigError("detect needs --corpus")
    grammar = cfg.grammar(cfg.langs)
    reports = [
        detect_pair(p, grammar, cap=cfg.cap)
        for p in read_corpus(cfg.corpus_path.read_text(encoding="utf-8"), cfg.langs)
    ]
    counts = summarize(reports)
    assert summary_balances(counts)
    summary = render_summary(counts)
    if cfg.out_dir:
        _out(cfg, "reports.jsonl").write_text("".join(r.to_json() + "\n" for r in reports), encoding="utf-8")
        _out(cfg, "summary.txt").write_text(summary, encoding="utf-8")
        _out(cfg, "summary.json").write_text(json.dumps(counts, indent=2) + "\n", encoding="utf-8")
    else:
        for r in reports:
            print(r.to_json())
    sys.stdout.write(summary)
    return 0


def cmd_report(args):
    counts = dict.fromkeys(("not_candidates", "candidates", "false_positives", "lexical", "predicates", "total"), 0)
    kind_key = {Kind.FALSE_POSITIVE.value: "false_positives", Kind.LEXICAL.value: "lexical", Kind.PREDICATE.value: "predicates"}
    for name in args.reports:
        p = Path(name)
        if not p.is_file():
            raise ConfigError(f"report file not found: {p}")
        for lineno, line in enumerate(p.read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                verdict = Verdict(rec["verdict"])
                kind = kind_key[rec["kind"]] if verdict is Verdict.CANDIDATE else None
            except (ValueError, KeyError) as e:
                log.warning("%s line %d skipped: %s", p, lineno, e)
                continue
            counts["total"] += 1
            if kind:
                counts["candidates"] += 1
                counts[kind] += 1
            else:
                counts["not_candidates"] += 1
    if args.json:
        print(json.dumps(counts, indent=2))
    else:
        sys.stdout.write(render_summary(counts))
    return 0


def cmd_split(cfg, words):
    lexicon = cfg.lexicon()
    if not words:
        words = [w for line in sys.stdin for w in line.split()]
    for w in words:
        s = split_compound(w, lexicon, cfg.split)
        try:
            print(format_split_line(w, s))
        except ValueError:
            # Extended linkers have no tree-building rule.
            print(f"{w}\t{s}\tNO-TREE")
    return 0


def cmd_extract(cfg):
    if cfg.phrase_table_path is None:
        raise ConfigError("extract needs --phrase-table")
    grammar = cfg.grammar(("eng",))
    lexicon = cfg.lexicon()
    try:
        entries = load_phrase_table(
            cfg.phrase_table_path.read_text(encoding="utf-8"), cfg.phrase_format, cfg.score_index
        )
    except PhraseTableError as e:
        raise ConfigError(f"{cfg.phrase_table_path}: {e}") from None
    candidates = filter_candidates(entries, cfg.threshold, grammar, cfg.require_constituent)
    accepted, rejects = build_compound_lexicon(candidates, lexicon, grammar, cfg.split)
    if cfg.out_dir:
        fmts = ("tsv", "gf") if cfg.out_format == "both" else (cfg.out_format,)
        for fmt in fmts:
            _out(cfg, f"compounds.{fmt}").write_text(export_lexicon(accepted, fmt), encoding="utf-8")
    else:
        sys.stdout.write(export_lexicon(accepted, "tsv" if cfg.out_format == "both" else cfg.out_format))
    by_reason = Counter(reason for _, reason in rejects)
    rows = [("loaded", len(entries)), ("filtered", len(candidates)), ("accepted", len(accepted)), ("rejected", len(rejects))]
    rows += [(f"rejected:{r}", by_reason[r]) for r in sorted(by_reason)]
    counts = "".join(f"{k}\t{v}\n" for k, v in rows)
    # Counts share stdout only when the lexicon itself went to files.
    (sys.stdout if cfg.out_dir else sys.stderr).write(counts)
    if cfg.out_dir:
        _out(cfg, "counts.tsv").write_text(counts, encoding="utf-8")
    return 0


def cmd_gen(cfg, depth):
    if depth < 1:
        raise ConfigError("--depth must be >= 1")
    grammar = cfg.grammar()
    langs = grammar.languages
    lines = ["#tree\t" + "\t".join(langs)]
    for t in enumerate_trees(grammar, depth):
        cols = [" ".join(linearize(t, grammar, l)) if grammar.covers(t, l) else "" for l in langs]
        lines.append(f"{t}\t" + "\t".join(cols))
    text = "\n".join(lines) + "\n"
    if cfg.out_dir:
        _out(cfg, f"gen_depth{depth}.tsv").write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


# --- argument parsing ------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grammar", help="grammar file (default: bundled toy grammar)")
    common.add_argument("--langs", default="eng,swe", help="language pair X,Y")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="ambiguity cap per sentence")
    common.add_argument("--out-dir", help="write output files here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    splitting = argparse.ArgumentParser(add_help=False)
    splitting.add_argument("--lexicon", help="TSV lemma<TAB>category (default: bundled noun list)")
    splitting.add_argument("--linkers", default=",s,en", help="comma-separated linking morphemes")
    splitting.add_argument("--min-component", type=int, default=3)

    ap = argparse.ArgumentParser(prog="gfmwe", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", parents=[common], help="flag MWE candidates in a parallel corpus")
    p.add_argument("--corpus", required=True, help="id<TAB>sentence_x<TAB>sentence_y lines")

    p = sub.add_parser("split", parents=[common, splitting], help="split German compounds")
    p.add_argument("words", nargs="*", help="words to split (default: read stdin)")

    p = sub.add_parser("extract", parents=[common, splitting], help="build a compound lexicon from a phrase table")
    p.add_argument("--phrase-table", required=True)
    p.add_argument("--format", choices=("moses", "tsv"), default="moses")
    p.add_argument("--threshold", type=float, default=0.1, help="keep entries with probability > threshold")
    p.add_argument("--score-index", type=int, default=0, help="which score column is the probability")
    p.add_argument("--require-constituent", action="store_true")
    p.add_argument("--out-format", choices=("tsv", "gf", "both"), default="both")

    p = sub.add_parser("gen", parents=[common], help="enumerate trees with linearizations")
    p.add_argument("--depth", type=int, default=2)

    p = sub.add_parser("report", help="recount the summary table from detect reports")
    p.add_argument("reports", nargs="+", help="reports.jsonl files")
    p.add_argument("--json", action="store_true")
    p.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "report":
            return cmd_report(args)
        cfg = RunConfig.from_args(args)
        if args.command == "detect":
            return cmd_detect(cfg)
        if args.command == "split":
            return cmd_split(cfg, args.words)
        if args.command == "extract":
            return cmd_extract(cfg)
        if args.command == "gen":
            return cmd_gen(cfg, args.depth)
    except (ConfigError, OSError) as e:
        log.error("%s", e)
        return 2
    return 2
