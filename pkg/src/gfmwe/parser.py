"""Chart parsing of token sequences into abstract trees, with a chunking fallback."""

import enum
import itertools
from dataclasses import dataclass
from typing import Optional

from .grammar import CHUNKS, UNK_CHUNK, Arg, Tree, unk

DEFAULT_CAP = 64
# Per-cell safety valve against forest blowup; the cell keeps its
# lexicographically smallest trees.
MAX_CELL_TREES = 4096


class Status(str, enum.Enum):
    FULL = "Full"
    CHUNKED = "Chunked"
    FAILED = "Failed"


@dataclass(frozen=True)
class ParseOutcome:
    status: Status
    language: str
    forest: tuple = ()
    chunk_tree: Optional[Tree] = None

    def comparison_set(self):
        if self.status is Status.FULL:
            return self.forest
        if self.status is Status.CHUNKED:
            return (self.chunk_tree,)
        return ()


def _rules(grammar, lang):
    unit, other = [], []
    for name, rule in grammar.concretes.get(lang, {}).items():
        decl = grammar.functions[name]
        (unit if rule.is_unit() else other).append((decl, rule))
    return unit, other


def build_chart(tokens, grammar, lang):
    """Fill a CKY-style chart: ``chart[(i, j)][cat]`` is a sorted list of trees
    whose linearization in ``lang`` is ``tokens[i:j]``."""
    tokens = list(tokens)
    n = len(tokens)
    unit, other = _rules(grammar, lang)
    chart = {}

    def matches(items, k, pos, end, span_len, binds):
        if k == len(items):
            if pos == end:
                yield binds
            return
        item = items[k]
        rest = len(items) - k - 1
        if isinstance(item, tuple):
            index, cat = item
            for b in range(pos + 1, end - rest + 1):
                if b - pos == span_len:
                    continue  # only unit rules may reuse the whole span
                if chart[(pos, b)].get(cat):
                    yield from matches(items, k + 1, b, end, span_len, binds + ((index, (pos, b), cat),))
        elif pos < end and tokens[pos] == item:
            yield from matches(items, k + 1, pos + 1, end, span_len, binds)

    # Argument items become (index, category) pairs; literals stay strings.
    compiled = []
    for decl, rule in other:
        items = tuple((i.index, decl.args[i.index]) if isinstance(i, Arg) else i for i in rule.items)
        compiled.append((decl, items))

    for length in range(1, n + 1):
        for i in range(0, n - length + 1):
            j = i + length
            cell = {}
            for decl, items in compiled:
                for binds in matches(items, 0, i, j, length, ()):
                    ordered = sorted(binds)
                    pools = [chart[span][cat] for _, span, cat in ordered]
                    for kids in itertools.product(*pools):
                        cell.setdefault(decl.result, set()).add(Tree(decl.name, kids))
            chart[(i, j)] = cell
            # Unit rules reuse the same span; the load-time acyclicity check
            # guarantees this closure terminates.
            changed = True
            while changed:
                changed = False
                for decl, _ in unit:
                    src = cell.get(decl.args[0])
                    if not src:
                        continue
                    dst = cell.setdefault(decl.result, set())
                    before = len(dst)
                    dst.update(Tree(decl.name, (t,)) for t in list(src))
                    changed |= len(dst) != before
            for cat, trees in cell.items():
                cell[cat] = sorted(trees)[:MAX_CELL_TREES]
    return chart


def parse(tokens, grammar, lang, start=None, cap=DEFAULT_CAP):
    """Trees of category ``start`` linearizing to ``tokens``, the first ``cap``
    in serialized order."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    tokens = list(tokens)
    start = start or grammar.start
    if not tokens:
        return []
    chart = build_chart(tokens, grammar, lang)
    return chart[(0, len(tokens))].get(start, [])[:cap]


def chunk_parse(tokens, grammar, lang, start=None, cap=DEFAULT_CAP):
    tokens = list(tokens)
    if not tokens:
        return ParseOutcome(Status.FAILED, lang)
    start = start or grammar.start
    n = len(tokens)
    chart = build_chart(tokens, grammar, lang)
    forest = chart[(0, n)].get(start, [])[:cap]
    if forest:
        return ParseOutcome(Status.FULL, lang, forest=tuple(forest))
    chunks = []
    i = 0
    while i < n:
        found = None
        for j in range(n, i, -1):
            cell = chart[(i, j)]
            for cat in grammar.chunk_categories:
                if cell.get(cat):
                    found = (j, cell[cat][0])
                    break
            if found:
                break
        if found:
            i, tree = found
            chunks.append(tree)
        else:
            chunks.append(unk(tokens[i]))
            i += 1
    return ParseOutcome(Status.CHUNKED, lang, chunk_tree=Tree(CHUNKS, tuple(chunks)))


def project_chunks(tree, grammar):
    """Re-express a tree as a ``Chunks`` node over its maximal chunk-category
    subtrees (abstract left-to-right order)."""
    chunkcats = set(grammar.chunk_categories)
    out = []

    def collect(t):
        if t.fun == UNK_CHUNK or (t.fun != CHUNKS and grammar.category_of(t) in chunkcats):
            out.append(t)
        else:
            for c in t.children:
                collect(c)

    collect(tree)
    return Tree(CHUNKS, tuple(out))
