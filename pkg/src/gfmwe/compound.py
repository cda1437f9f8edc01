"""German nominal compound splitting against a noun lexicon.

Three compounding rules are supported, one per linking morpheme:

    ConsNomCN : N -> CN -> CN    -- modifier as is      (Apfel|Saft)
    Cons_sCN  : N -> CN -> CN    -- modifier + "s"      (Leben+s|Mittel)
    Cons_enCN : N -> CN -> CN    -- modifier + "en"     (Krank+en|Wagen)

The splitter minimizes the number of components exactly (shortest path over
character positions); ties go to the longest head, then to the smallest
serialized split.
"""

import logging
import re
from dataclasses import dataclass
from functools import cached_property

from .grammar import FunctionDecl, Grammar, Tree

log = logging.getLogger(__name__)

LINKER_RULES = {"": "ConsNomCN", "s": "Cons_sCN", "en": "Cons_enCN"}
NOUN = "N"
_LEMMA = re.compile(r"\w+\Z")


@dataclass(frozen=True)
class Lexicon:
    lemmas: frozenset  # of (lemma, category)
    source: str = ""
    malformed: tuple = ()  # line numbers skipped at load time

    @cached_property
    def nouns(self):
        """Lowercased form -> canonical lemma (first in sort order on clashes)."""
        index = {}
        for lemma, cat in sorted(self.lemmas):
            if cat == NOUN:
                index.setdefault(lemma.lower(), lemma)
        return index

    def __len__(self):
        return len(self.lemmas)

    def __contains__(self, lemma):
        return lemma.lower() in self.nouns


def load_lexicon(source, tag=""):
    """Read ``lemma<TAB>category`` lines; ``#`` lines are comments."""
    entries, bad = set(), []
    for lineno, line in enumerate(source.splitlines(), 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not _LEMMA.match(parts[0]) or not _LEMMA.match(parts[1]):
            log.warning("lexicon %s line %d malformed: %r", tag or "<text>", lineno, line)
            bad.append(lineno)
            continue
        entries.add((parts[0], parts[1]))
    return Lexicon(frozenset(entries), tag, tuple(bad))


def lexicon_from_words(words, category=NOUN):
    return Lexicon(frozenset((w, category) for w in words))


@dataclass(frozen=True)
class SplitConfig:
    linkers: tuple = ("", "s", "en")
    min_component_length: int = 3
    tie_break: str = "longest-head"

    def __post_init__(self):
        object.__setattr__(self, "linkers", tuple(dict.fromkeys(self.linkers)))
        if "" not in self.linkers:
            raise ValueError("the empty linker must be allowed")
        if self.min_component_length < 1:
            raise ValueError("min_component_length must be >= 1")
        if self.tie_break != "longest-head":
            raise ValueError(f"unknown tie-break rule {self.tie_break!r}")


@dataclass(frozen=True)
class CompoundSplit:
    components: tuple  # of (lemma, linker); the head's linker is ""
    surface: str

    @property
    def head(self):
        return self.components[-1][0]

    def __len__(self):
        return len(self.components)

    def __str__(self):
        return "|".join(lemma + ("+" + lk if lk else "") for lemma, lk in self.components)

    def reassemble(self):
        return "".join(lemma + lk for lemma, lk in self.components)

    def sort_key(self):
        return (len(self.components), -len(self.head), str(self))


def _edges(word, pos, lexicon, config):
    """(next position, lemma, linker) for every component starting at ``pos``."""
    n = len(word)
    index = lexicon.nouns
    for j in range(pos + config.min_component_length, n + 1):
        lemma = index.get(word[pos:j])
        if lemma is None:
            continue
        for lk in config.linkers:
            k = j + len(lk)
            if word.startswith(lk, j) and (k < n or (k == n and lk == "")):
                yield k, lemma, lk


def split_compound(word, lexicon, config=SplitConfig()):
    """Best split with at least two components, or None."""
    w = word.lower()
    n = len(w)
    inf = float("inf")
    # cost[i]: fewest components covering w[i:], the last one linker-free.
    cost = [inf] * (n + 1)
    cost[n] = 0
    edges = {}
    for i in range(n - 1, -1, -1):
        edges[i] = list(_edges(w, i, lexicon, config))
        for k, _, _ in edges[i]:
            cost[i] = min(cost[i], 1 + cost[k])
    # At least two components: the first one must stop short of the end.
    target = min((1 + cost[k] for k, _, _ in edges.get(0, ()) if k < n), default=inf)
    if target == inf:
        return None

    best = None

    def walk(i, left, acc):
        nonlocal best
        if i == n:
            cand = CompoundSplit(tuple(acc), word)
            if best is None or cand.sort_key() < best.sort_key():
                best = cand
            return
        for k, lemma, lk in edges[i]:
            if i == 0 and k == n:
                continue
            if 1 + cost[k] == left:
                acc.append((lemma, lk))
                walk(k, left - 1, acc)
                acc.pop()

    walk(0, target, [])
    return best


def enumerate_splits(word, lexicon, config=SplitConfig(), cap=1000):
    """Every split with >= 2 components by exhaustive search, best first."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    w = word.lower()
    n = len(w)
    index = lexicon.nouns
    found = []

    def rec(pos, acc):
        for j in range(pos + 1, n + 1):
            piece = w[pos:j]
            if len(piece) < config.min_component_length or piece not in index:
                continue
            lemma = index[piece]
            if j == n:
                found.append(tuple(acc + [(lemma, "")]))
                continue
            for lk in config.linkers:
                if w[j : j + len(lk)] == lk and j + len(lk) < n:
                    rec(j + len(lk), acc + [(lemma, lk)])

    rec(0, [])
    splits = sorted(
        (CompoundSplit(c, word) for c in found if len(c) >= 2), key=CompoundSplit.sort_key
    )
    return splits[:cap]


def to_tree(split):
    """Right-fold the components into a CN tree using the three Cons rules."""
    tree = Tree("UseN", (Tree(split.head + "_N"),))
    for lemma, lk in reversed(split.components[:-1]):
        fun = LINKER_RULES.get(lk)
        if fun is None:
            raise ValueError(f"no compounding rule for linker {lk!r} in {split}")
        tree = Tree(fun, (Tree(lemma + "_N"), tree))
    return tree


def compound_grammar(lexicon):
    """Abstract grammar fragment that every ``to_tree`` result type-checks against."""
    funs = {"UseN": FunctionDecl("UseN", (NOUN,), "CN")}
    for fun in LINKER_RULES.values():
        funs[fun] = FunctionDecl(fun, (NOUN, "CN"), "CN")
    for lemma in sorted(set(lexicon.nouns.values())):
        name = lemma + "_N"
        funs[name] = FunctionDecl(name, (), NOUN)
    return Grammar(categories=(NOUN, "CN"), functions=funs, concretes={}, start="CN")


def format_split_line(word, split):
    """``word<TAB>split<TAB>tree`` or ``word<TAB>NONE``."""
    if split is None:
        return f"{word}\tNONE"
    return f"{word}\t{split}\t{to_tree(split)}"
