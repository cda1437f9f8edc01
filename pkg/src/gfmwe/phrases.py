"""Phrase-table candidate filtering and bilingual compound lexicon export."""

import logging
from dataclasses import dataclass
from typing import Optional

from .compound import SplitConfig, split_compound, to_tree
from .parser import DEFAULT_CAP, parse

log = logging.getLogger(__name__)

NP_LABELS = frozenset({"NP"})
# Placeholder values for "not a constituent" in the TSV label column.
_NO_LABEL = frozenset({"", "-", "_"})


class PhraseTableError(ValueError):
    pass


@dataclass(frozen=True)
class PhraseEntry:
    source: tuple
    target: tuple
    probability: float
    is_constituent: bool = False
    constituent_label: Optional[str] = None
    line: int = 0

    def __post_init__(self):
        if not 0.0 <= self.probability <= 1.0:
            raise ValueError(f"probability {self.probability} outside [0, 1]")
        if not self.source or not self.target:
            raise ValueError("empty phrase")


@dataclass(frozen=True)
class CompoundLexEntry:
    english_tree: object
    german_tree: object
    source_entry: PhraseEntry
    probability: float
    split: object = None


def _entry(src, tgt, score, label, lineno):
    label = label.strip() if label is not None else None
    if label in _NO_LABEL:
        label = None
    return PhraseEntry(
        source=tuple(src.split()),
        target=tuple(tgt.split()),
        probability=float(score),
        is_constituent=label is not None,
        constituent_label=label,
        line=lineno,
    )


def load_phrase_table(source, fmt="moses", score_index=0):
    """Parse a Moses (``src ||| tgt ||| scores ...``) or TSV phrase table.

    Malformed lines are logged and skipped; an input with no usable lines
    raises :class:`PhraseTableError`.
    """
    if fmt not in ("moses", "tsv"):
        raise ValueError(f"unknown phrase-table format {fmt!r}")
    entries = []
    saw_content = False
    for lineno, line in enumerate(source.splitlines(), 1):
        if not line.strip():
            continue
        saw_content = True
        try:
            if fmt == "moses":
                fields = [f.strip() for f in line.split("|||")]
                if len(fields) < 3:
                    raise ValueError("expected at least 3 '|||' fields")
                scores = fields[2].split()
                entries.append(_entry(fields[0], fields[1], scores[score_index], None, lineno))
            else:
                fields = line.rstrip("\r\n").split("\t")
                if len(fields) not in (3, 4):
                    raise ValueError("expected 3 or 4 tab-separated fields")
                scores = fields[2].split()
                label = fields[3] if len(fields) == 4 else None
                entries.append(_entry(fields[0], fields[1], scores[score_index], label, lineno))
        except (ValueError, IndexError) as e:
            log.warning("phrase table line %d skipped: %s", lineno, e)
    if not saw_content:
        raise PhraseTableError("empty phrase table")
    return entries


def english_np_parses(entry, grammar, lang="eng", cap=DEFAULT_CAP):
    return parse(entry.source, grammar, lang, start="NP", cap=cap)


def filter_candidates(entries, threshold, grammar, require_constituent=False, lang="eng"):
    """Entries with probability above ``threshold`` whose English side parses
    as an NP and whose German side is one word."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError("threshold must be within [0, 1]")
    kept = []
    for e in entries:
        if e.probability <= threshold or len(e.target) != 1:
            continue
        if require_constituent and not (e.is_constituent and e.constituent_label in NP_LABELS):
            continue
        if english_np_parses(e, grammar, lang):
            kept.append(e)
    return kept


def build_compound_lexicon(candidates, lexicon, grammar, config=SplitConfig(), lang="eng"):
    """Split and pair each candidate; returns (entries, rejects).

    Rejects are ``(entry, reason)`` with reason in no-np-parse, no-split,
    bad-linker, duplicate.
    """
    accepted = {}
    rejects = []
    for e in candidates:
        parses = english_np_parses(e, grammar, lang)
        if not parses:
            rejects.append((e, "no-np-parse"))
            continue
        split = split_compound(e.target[0], lexicon, config)
        if split is None:
            rejects.append((e, "no-split"))
            continue
        try:
            german = to_tree(split)
        except ValueError:
            rejects.append((e, "bad-linker"))
            continue
        entry = CompoundLexEntry(parses[0], german, e, e.probability, split)
        key = (entry.english_tree, german)
        prev = accepted.get(key)
        if prev is None:
            accepted[key] = entry
        elif entry.probability > prev.probability:
            rejects.append((prev.source_entry, "duplicate"))
            accepted[key] = entry
        else:
            rejects.append((e, "duplicate"))
    return list(accepted.values()), rejects


TSV_HEADER = "english\tgerman\tgerman_tree\tprobability"
GF_HEADER = "-- German compound lexicon: lin <id> = <compound tree> ; -- <English phrase>"


def _gf_ids(entries):
    seen = {}
    for e in entries:
        base = e.source_entry.target[0] + "_CN"
        seen[base] = seen.get(base, 0) + 1
        yield base if seen[base] == 1 else f"{base}_{seen[base]}"


def export_lexicon(entries, fmt="tsv"):
    if fmt == "tsv":
        lines = [TSV_HEADER]
        for e in entries:
            src = e.source_entry
            lines.append(f"{' '.join(src.source)}\t{src.target[0]}\t{e.german_tree}\t{e.probability:g}")
    elif fmt == "gf":
        lines = [GF_HEADER]
        for ident, e in zip(_gf_ids(entries), entries):
            lines.append(f"lin {ident} = {e.german_tree} ; -- {' '.join(e.source_entry.source)}")
    else:
        raise ValueError(f"unknown lexicon format {fmt!r}")
    return "\n".join(lines) + "\n"
