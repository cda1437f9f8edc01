"""Abstract/concrete grammars, abstract trees and linearization.

A grammar has one abstract syntax (categories and typed functions) and one
concrete syntax per language.  Concrete rules are flat token templates: each
item is either a literal token or a reference ``$k`` to the k-th argument.

Grammar file format (line oriented, ``--`` starts a comment)::

    cat N ;
    fun ConsNomCN : N -> CN -> CN ;
    lin ger ConsNomCN = $0 $1 ;
    lin eng apple_N = "apple" ;
    start Utt ;
    chunkcats NP VP AP Adv ;
"""

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

# Synthetic node names produced by the chunking parser; never declarable.
CHUNKS = "Chunks"
UNK_CHUNK = "UnkChunk"
RESERVED = frozenset({CHUNKS, UNK_CHUNK})

IDENT = re.compile(r"\w[\w']*\Z")


class GrammarError(ValueError):
    def __init__(self, msg, line=None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


class LinearizationError(KeyError):
    def __str__(self):
        return self.args[0]


@dataclass(frozen=True)
class FunctionDecl:
    name: str
    args: tuple
    result: str

    @property
    def arity(self):
        return len(self.args)

    def signature(self):
        return " -> ".join(self.args + (self.result,))


@dataclass(frozen=True)
class Arg:
    index: int


@dataclass(frozen=True)
class LinRule:
    function: str
    items: tuple  # of str (literal token) or Arg

    def is_unit(self):
        return len(self.items) == 1 and isinstance(self.items[0], Arg)


@dataclass
class Grammar:
    categories: tuple
    functions: dict  # name -> FunctionDecl, declaration order
    concretes: dict  # lang -> {fun name -> LinRule}
    start: Optional[str] = None
    chunk_categories: tuple = ()

    def __post_init__(self):
        _check_grammar(self)

    @property
    def languages(self):
        return tuple(self.concretes)

    def category_of(self, tree):
        """Result category of the tree's root, None for synthetic chunk nodes."""
        decl = self.functions.get(tree.fun)
        return decl.result if decl else None

    def lexical_functions(self):
        return [f for f in self.functions.values() if f.arity == 0]

    def covers(self, tree, lang):
        """True if every function in ``tree`` has a rule for ``lang``."""
        rules = self.concretes.get(lang, {})
        return all(t.fun in rules for t in tree.walk())


@dataclass(frozen=True)
class Tree:
    fun: str
    children: tuple = ()
    token: Optional[str] = None  # only set on UnkChunk leaves

    def __post_init__(self):
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))

    @cached_property
    def sexpr(self):
        return serialize_tree(self)

    def __str__(self):
        return self.sexpr

    def __repr__(self):
        return f"Tree({self.sexpr})"

    def __lt__(self, other):
        return self.sexpr < other.sexpr

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def size(self):
        return sum(1 for _ in self.walk())

    def depth(self):
        return 1 + max((c.depth() for c in self.children), default=0)

    def subtree(self, path):
        t = self
        for i in path:
            t = t.children[i]
        return t


def T(fun, *children):
    """Shorthand constructor: ``T("UseN", T("apple_N"))``."""
    return Tree(fun, tuple(children))


def unk(token):
    return Tree(UNK_CHUNK, (), token)


# --- tree serialization ----------------------------------------------------

def _quote(tok):
    return '"' + tok.replace("\\", "\\\\").replace('"', '\\"') + '"'


def serialize_tree(tree):
    if tree.token is not None:
        return f"({tree.fun} {_quote(tree.token)})"
    if not tree.children:
        return tree.fun
    return "(" + " ".join([tree.fun] + [c.sexpr for c in tree.children]) + ")"


_TREE_TOKEN = re.compile(r'\s*(?:(\()|(\))|"((?:[^"\\]|\\.)*)"|([^\s()"]+))')


def _unquote(s):
    return re.sub(r"\\(.)", r"\1", s)


def parse_tree(text):
    """Read a tree in parenthesized prefix form; ``(f)`` and ``f`` are the same leaf."""
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TREE_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad tree syntax at offset {pos}: {text!r}")
        pos = m.end()
        if m.group(1):
            toks.append("(")
        elif m.group(2):
            toks.append(")")
        elif m.group(3) is not None:
            toks.append(("str", _unquote(m.group(3))))
        elif m.group(4):
            toks.append(("id", m.group(4)))

    def read(i):
        tok = toks[i] if i < len(toks) else None
        if tok is None:
            raise ValueError(f"unexpected end of tree: {text!r}")
        if tok == "(":
            head = toks[i + 1] if i + 1 < len(toks) else None
            if not isinstance(head, tuple) or head[0] != "id":
                raise ValueError(f"expected function name after '(' in {text!r}")
            i += 2
            if head[1] == UNK_CHUNK:
                lit = toks[i] if i < len(toks) else None
                if not isinstance(lit, tuple) or lit[0] != "str" or toks[i + 1 : i + 2] != [")"]:
                    raise ValueError(f"UnkChunk needs one quoted token: {text!r}")
                return unk(lit[1]), i + 2
            kids = []
            while i < len(toks) and toks[i] != ")":
                kid, i = read(i)
                kids.append(kid)
            if i >= len(toks):
                raise ValueError(f"unbalanced parentheses: {text!r}")
            return Tree(head[1], tuple(kids)), i + 1
        if tok == ")" or tok[0] != "id":
            raise ValueError(f"unexpected {tok!r} in {text!r}")
        return Tree(tok[1]), i + 1

    tree, end = read(0)
    if end != len(toks):
        raise ValueError(f"trailing input in tree: {text!r}")
    return tree


# --- grammar files ---------------------------------------------------------

_GF_TOKEN = re.compile(r"""\s*(?:(--.*)|("(?:[^"\\]|\\.)*")|(->)|([:;=])|(\$\d+)|([\w']+))""")


def _lex_line(line, lineno):
    toks = []
    pos = 0
    while pos < len(line):
        if line[pos:].strip() == "":
            break
        m = _GF_TOKEN.match(line, pos)
        if not m or m.end() == pos:
            raise GrammarError(f"unexpected character {line[pos:].strip()[:1]!r}", lineno)
        pos = m.end()
        comment, string, arrow, punct, argref, word = m.groups()
        if comment:
            break
        if string:
            toks.append(("str", _unquote(string[1:-1])))
        elif arrow:
            toks.append(("->", arrow))
        elif punct:
            toks.append((punct, punct))
        elif argref:
            toks.append(("arg", int(argref[1:])))
        else:
            toks.append(("id", word))
    return toks


def _statements(source):
    """Split into (lineno, tokens) statements; ``;`` or end of line terminates."""
    for lineno, line in enumerate(source.splitlines(), 1):
        cur = []
        for tok in _lex_line(line, lineno):
            if tok[0] == ";":
                if cur:
                    yield lineno, cur
                cur = []
            else:
                cur.append(tok)
        if cur:
            yield lineno, cur


def _ident(tok, lineno, what):
    if tok[0] != "id" or not IDENT.match(tok[1]):
        raise GrammarError(f"expected {what}, got {tok[1]!r}", lineno)
    return tok[1]


def load_grammar(source):
    """Parse grammar text into a checked :class:`Grammar`."""
    cats, funs, concretes = [], {}, {}
    start, chunkcats = None, []
    pending_lin = []  # checked after all declarations are read
    for lineno, toks in _statements(source):
        kw = toks[0][1]
        rest = toks[1:]
        if kw == "cat":
            if not rest:
                raise GrammarError("cat needs a name", lineno)
            for tok in rest:
                name = _ident(tok, lineno, "category name")
                if name in cats:
                    raise GrammarError(f"duplicate category {name}", lineno)
                cats.append(name)
        elif kw == "fun":
            if len(rest) < 3 or rest[1][0] != ":":
                raise GrammarError("expected 'fun <name> : <Cat> -> ... ;'", lineno)
            name = _ident(rest[0], lineno, "function name")
            sig = rest[2:]
            if len(sig) % 2 == 0 or any(t[0] != "->" for t in sig[1::2]):
                raise GrammarError(f"malformed type for {name}", lineno)
            types = [_ident(t, lineno, "category") for t in sig[0::2]]
            if name in funs:
                raise GrammarError(f"duplicate function {name}", lineno)
            funs[name] = (FunctionDecl(name, tuple(types[:-1]), types[-1]), lineno)
        elif kw == "lin":
            if len(rest) < 3 or rest[2][0] != "=":
                raise GrammarError("expected 'lin <lang> <fun> = <items> ;'", lineno)
            lang = _ident(rest[0], lineno, "language code")
            name = _ident(rest[1], lineno, "function name")
            items = []
            for t in rest[3:]:
                if t[0] == "str":
                    items.append(t[1])
                elif t[0] == "arg":
                    items.append(Arg(t[1]))
                else:
                    raise GrammarError(f"bad linearization item {t[1]!r}", lineno)
            pending_lin.append((lineno, lang, LinRule(name, tuple(items))))
        elif kw == "start":
            if len(rest) != 1:
                raise GrammarError("expected 'start <Cat> ;'", lineno)
            start = (_ident(rest[0], lineno, "category"), lineno)
        elif kw == "chunkcats":
            chunkcats.extend((_ident(t, lineno, "category"), lineno) for t in rest)
        else:
            raise GrammarError(f"unknown statement {kw!r}", lineno)

    catset = set(cats)
    for decl, lineno in funs.values():
        if decl.name in RESERVED:
            raise GrammarError(f"{decl.name} is a reserved name", lineno)
        for c in decl.args + (decl.result,):
            if c not in catset:
                raise GrammarError(f"undeclared category {c} in {decl.name}", lineno)
    for lineno, lang, rule in pending_lin:
        if rule.function not in funs:
            raise GrammarError(f"linearization for undeclared function {rule.function}", lineno)
        rules = concretes.setdefault(lang, {})
        if rule.function in rules:
            raise GrammarError(f"duplicate rule for {rule.function} in {lang}", lineno)
        try:
            _check_rule(rule, funs[rule.function][0])
        except GrammarError as e:
            raise GrammarError(str(e), lineno) from None
        rules[rule.function] = rule
    for c, lineno in ([start] if start else []) + chunkcats:
        if c not in catset:
            raise GrammarError(f"undeclared category {c}", lineno)
    return Grammar(
        categories=tuple(cats),
        functions={n: d for n, (d, _) in funs.items()},
        concretes=concretes,
        start=start[0] if start else (cats[0] if cats else None),
        chunk_categories=tuple(dict.fromkeys(c for c, _ in chunkcats)),
    )


def _check_rule(rule, decl):
    idx = sorted(i.index for i in rule.items if isinstance(i, Arg))
    if idx != list(range(decl.arity)):
        raise GrammarError(
            f"rule for {decl.name} must use each of $0..${decl.arity - 1} exactly once"
        )
    if not rule.items:
        raise GrammarError(f"rule for {decl.name} has an empty yield")
    for item in rule.items:
        if isinstance(item, str) and (not item or re.search(r"\s", item)):
            raise GrammarError(f"literal token {item!r} in {decl.name} is empty or has whitespace")


def _check_grammar(g):
    catset = set(g.categories)
    if len(catset) != len(g.categories):
        raise GrammarError("duplicate category names")
    for name, decl in g.functions.items():
        if name != decl.name:
            raise GrammarError(f"function table key {name} != {decl.name}")
    for lang, rules in g.concretes.items():
        for name, rule in rules.items():
            if name not in g.functions:
                raise GrammarError(f"{lang} rule for undeclared function {name}")
            _check_rule(rule, g.functions[name])
        _check_unit_cycles(g, lang)
    if g.start is not None and g.start not in catset:
        raise GrammarError(f"start category {g.start} undeclared")
    bad = [c for c in g.chunk_categories if c not in catset]
    if bad:
        raise GrammarError(f"chunk categories undeclared: {bad}")


def _check_unit_cycles(g, lang):
    # Unit rules (lin = $0) over a cycle of categories make the parse forest infinite.
    edges = {}
    for name, rule in g.concretes[lang].items():
        if rule.is_unit():
            d = g.functions[name]
            edges.setdefault(d.args[0], set()).add(d.result)
    state = {}

    def visit(c):
        state[c] = 1
        for nxt in edges.get(c, ()):
            if state.get(nxt) == 1:
                raise GrammarError(f"cycle of unit rules through {nxt} in {lang}")
            if nxt not in state:
                visit(nxt)
        state[c] = 2

    for c in list(edges):
        if c not in state:
            visit(c)


def dump_grammar(g):
    """Serialize to the grammar file format; ``load_grammar`` reads it back equal."""
    out = [f"cat {c} ;" for c in g.categories]
    out += [f"fun {d.name} : {d.signature()} ;" for d in g.functions.values()]
    for lang, rules in g.concretes.items():
        for name, rule in rules.items():
            items = " ".join(f"${i.index}" if isinstance(i, Arg) else _quote(i) for i in rule.items)
            out.append(f"lin {lang} {name} = {items} ;")
    if g.start:
        out.append(f"start {g.start} ;")
    if g.chunk_categories:
        out.append("chunkcats " + " ".join(g.chunk_categories) + " ;")
    return "\n".join(out) + "\n"


# --- typing and linearization ----------------------------------------------

@dataclass(frozen=True)
class Verdict:
    ok: bool
    path: tuple = ()
    reason: str = ""

    def __bool__(self):
        return self.ok


def validate_tree(tree, grammar, path=()):
    """Check arity and argument categories at every node (preorder)."""
    if tree.fun == UNK_CHUNK:
        if tree.children or tree.token is None:
            return Verdict(False, path, "UnkChunk must be a leaf carrying a token")
        return Verdict(True)
    if tree.fun == CHUNKS:
        for i, c in enumerate(tree.children):
            v = validate_tree(c, grammar, path + (i,))
            if not v:
                return v
        return Verdict(True)
    decl = grammar.functions.get(tree.fun)
    if decl is None:
        return Verdict(False, path, f"unknown function {tree.fun}")
    if len(tree.children) != decl.arity:
        return Verdict(
            False, path, f"{tree.fun} expects {decl.arity} arguments, got {len(tree.children)}"
        )
    for i, (c, want) in enumerate(zip(tree.children, decl.args)):
        got = grammar.category_of(c)
        if got != want:
            return Verdict(False, path + (i,), f"argument {i} of {tree.fun} has category {got}, expected {want}")
        v = validate_tree(c, grammar, path + (i,))
        if not v:
            return v
    return Verdict(True)


def linearize(tree, grammar, lang):
    if tree.fun == UNK_CHUNK:
        return [tree.token]
    if tree.fun == CHUNKS:
        return [tok for c in tree.children for tok in linearize(c, grammar, lang)]
    rule = grammar.concretes.get(lang, {}).get(tree.fun)
    if rule is None:
        raise LinearizationError(f"no linearization of {tree.fun} for language {lang}")
    out = []
    for item in rule.items:
        if isinstance(item, Arg):
            out.extend(linearize(tree.children[item.index], grammar, lang))
        else:
            out.append(item)
    return out


def enumerate_trees(grammar, depth, category=None):
    """All well-typed trees of depth <= ``depth``, sorted by serialized form.

    A lexical function has depth 1.
    """
    by_cat = {c: set() for c in grammar.categories}
    for _ in range(depth):
        nxt = {c: set(ts) for c, ts in by_cat.items()}
        for d in grammar.functions.values():
            if d.arity == 0:
                nxt[d.result].add(Tree(d.name))
                continue
            pools = [sorted(by_cat[a]) for a in d.args]
            if not all(pools):
                continue
            for combo in itertools.product(*pools):
                nxt[d.result].add(Tree(d.name, combo))
        by_cat = nxt
    if category is not None:
        return sorted(by_cat[category])
    return sorted((t for ts in by_cat.values() for t in ts))

