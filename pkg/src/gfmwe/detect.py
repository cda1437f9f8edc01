"""Candidate detection by comparing parse forests of parallel sentences.

A sentence pair is a candidate when no tree is shared between the two
forests.  Candidates are localized (differing subtrees of the closest pair
of trees) and bucketed into false-positive suspects, lexical MWEs and
predicates.
"""

import enum
import json
from dataclasses import dataclass, field
from typing import Optional

from .grammar import UNK_CHUNK, linearize, validate_tree
from .parser import DEFAULT_CAP, Status, chunk_parse, project_chunks


class Verdict(str, enum.Enum):
    NOT_CANDIDATE = "NotCandidate"
    CANDIDATE = "Candidate"


class Kind(str, enum.Enum):
    FALSE_POSITIVE = "FalsePositiveSuspect"
    LEXICAL = "LexicalMWE"
    PREDICATE = "Predicate"


@dataclass(frozen=True)
class SentencePair:
    id: str
    lang_x: str
    lang_y: str
    tokens_x: tuple
    tokens_y: tuple

    def __post_init__(self):
        if self.lang_x == self.lang_y:
            raise ValueError(f"pair {self.id}: both sides are {self.lang_x}")
        if not self.tokens_x or not self.tokens_y:
            raise ValueError(f"pair {self.id}: empty sentence")
        object.__setattr__(self, "tokens_x", tuple(self.tokens_x))
        object.__setattr__(self, "tokens_y", tuple(self.tokens_y))


@dataclass
class DetectionReport:
    pair_id: str
    outcome_x: object
    outcome_y: object
    verdict: Verdict
    candidate_kind: Optional[Kind] = None
    diffs: list = field(default_factory=list)
    best_pair: Optional[tuple] = None

    def to_json(self):
        return json.dumps(
            {
                "pair_id": self.pair_id,
                "verdict": self.verdict.value,
                "kind": self.candidate_kind.value if self.candidate_kind else None,
                "status_x": self.outcome_x.status.value,
                "status_y": self.outcome_y.status.value,
                "diffs": [
                    {"path": list(p), "x": str(a), "y": str(b)} for p, a, b in self.diffs
                ],
                "best_pair": [str(t) for t in self.best_pair] if self.best_pair else None,
            },
            ensure_ascii=False,
        )


def forest_intersect(a, b):
    return sorted(set(a) & set(b))


def tree_diff(x, y, path=()):
    """Maximal mismatching positions as ``(path, subtree_x, subtree_y)``."""
    if x == y:
        return []
    if x.fun != y.fun or x.token != y.token or len(x.children) != len(y.children):
        return [(path, x, y)]
    out = []
    for i, (cx, cy) in enumerate(zip(x.children, y.children)):
        out.extend(tree_diff(cx, cy, path + (i,)))
    return out


def diff_size(diffs):
    return sum(a.size() + b.size() for _, a, b in diffs)


def best_pair(fx, fy):
    """The (x, y) pair whose differing subtrees have the fewest nodes in total."""
    if not fx or not fy:
        raise ValueError("best_pair needs two non-empty forests")
    best = None
    for x in fx:
        for y in fy:
            d = tree_diff(x, y)
            key = (diff_size(d), x.sexpr, y.sexpr)
            if best is None or key < best[0]:
                best = (key, x, y, d)
    return best[1], best[2], best[3]


def _comparison_sets(ox, oy, grammar):
    sx, sy = ox.comparison_set(), oy.comparison_set()
    # A full parse facing a chunked one is re-expressed as chunks.
    if ox.status is Status.FULL and oy.status is Status.CHUNKED:
        sx = tuple(sorted({project_chunks(t, grammar) for t in sx}))
    elif oy.status is Status.FULL and ox.status is Status.CHUNKED:
        sy = tuple(sorted({project_chunks(t, grammar) for t in sy}))
    return sx, sy


def detect_pair(pair, grammar, cap=DEFAULT_CAP):
    for lang in (pair.lang_x, pair.lang_y):
        if lang not in grammar.concretes:
            raise KeyError(f"grammar has no concrete syntax for {lang}")
    ox = chunk_parse(pair.tokens_x, grammar, pair.lang_x, cap=cap)
    oy = chunk_parse(pair.tokens_y, grammar, pair.lang_y, cap=cap)
    sx, sy = _comparison_sets(ox, oy, grammar)
    shared = forest_intersect(sx, sy)
    if shared:
        return DetectionReport(pair.id, ox, oy, Verdict.NOT_CANDIDATE, best_pair=(shared[0], shared[0]))
    report = DetectionReport(pair.id, ox, oy, Verdict.CANDIDATE)
    if sx and sy:
        x, y, diffs = best_pair(sx, sy)
        report.best_pair = (x, y)
        report.diffs = diffs
    report.candidate_kind = classify_candidate(report)
    return report


def _is_lexical(t):
    # A lexical node, or a chain of single-child wrappers ending in one.
    while len(t.children) == 1:
        t = t.children[0]
    return not t.children and t.fun != UNK_CHUNK


def classify_candidate(report):
    """Heuristic bucket: parse trouble, lexical difference, or larger predicate."""
    if report.verdict is not Verdict.CANDIDATE:
        raise ValueError(f"{report.pair_id} is not a candidate")
    if report.outcome_x.status is not Status.FULL or report.outcome_y.status is not Status.FULL:
        return Kind.FALSE_POSITIVE
    if report.diffs and all(_is_lexical(a) and _is_lexical(b) for _, a, b in report.diffs):
        return Kind.LEXICAL
    return Kind.PREDICATE


def _subtrees(t):
    return set(t.walk())


def shared_arguments(x, y):
    """Maximal proper subtrees of ``x`` that also occur in ``y``, in preorder."""
    in_y = _subtrees(y)
    out = []

    def visit(t):
        for c in t.children:
            if c in in_y:
                out.append(c)
            else:
                visit(c)

    visit(x)
    return out


def emit_construction(diff, name, grammar, langs=None):
    """Render a construction declaration for one diff site.

    ``langs`` = (lang_x, lang_y) adds a comment with both surface forms.
    """
    _, sx, sy = diff
    for t in (sx, sy):
        v = validate_tree(t, grammar)
        if not v:
            raise ValueError(f"ill-typed subtree {t} at {v.path}: {v.reason}")
    cat = grammar.category_of(sx)
    if cat is None or cat != grammar.category_of(sy):
        raise ValueError(f"diff site has no common category: {sx} / {sy}")
    args = [grammar.category_of(a) for a in shared_arguments(sx, sy)]
    line = f"fun {name} : {' -> '.join(args + [cat])} ;"
    if langs:
        lx, ly = langs
        line += f" -- {' '.join(linearize(sx, grammar, lx))} / {' '.join(linearize(sy, grammar, ly))}"
    return line


# --- corpus summaries ------------------------------------------------------

SUMMARY_ROWS = (
    ("not_candidates", "Not MWE candidates"),
    ("candidates", "MWE candidates"),
    ("false_positives", "  False positives"),
    ("lexical", "  Lexical MWEs"),
    ("predicates", "  Predicates"),
    ("total", "All sentences"),
)


def summarize(reports):
    counts = dict.fromkeys((k for k, _ in SUMMARY_ROWS), 0)
    kind_key = {Kind.FALSE_POSITIVE: "false_positives", Kind.LEXICAL: "lexical", Kind.PREDICATE: "predicates"}
    for r in reports:
        counts["total"] += 1
        if r.verdict is Verdict.CANDIDATE:
            counts["candidates"] += 1
            counts[kind_key[r.candidate_kind]] += 1
        else:
            counts["not_candidates"] += 1
    return counts


def summary_balances(counts):
    return (
        counts["not_candidates"] + counts["candidates"] == counts["total"]
        and counts["false_positives"] + counts["lexical"] + counts["predicates"] == counts["candidates"]
    )


def render_summary(counts):
    width = max(len(label) for _, label in SUMMARY_ROWS)
    return "\n".join(f"{label:<{width}}  {counts[key]:>6}" for key, label in SUMMARY_ROWS) + "\n"
