"""Multilingual MWE candidate detection and German compound lexicon extraction
over a small GF-style interlingua grammar."""

from importlib import resources

from .grammar import Grammar, Tree, T, load_grammar, dump_grammar, linearize, parse_tree, validate_tree
from .parser import ParseOutcome, Status, chunk_parse, parse, project_chunks
from .detect import SentencePair, best_pair, classify_candidate, detect_pair, emit_construction, tree_diff
from .compound import CompoundSplit, Lexicon, SplitConfig, enumerate_splits, load_lexicon, split_compound, to_tree

__version__ = "0.1.0"


def data_path(name):
    """Path of a bundled data file (toy grammar, lexicon, corpus)."""
    return resources.files(__name__) / "data" / name


def load_toy_grammar():
    return load_grammar(data_path("toy.gf").read_text(encoding="utf-8"))


def load_bundled_lexicon():
    return load_lexicon(data_path("german_nouns.tsv").read_text(encoding="utf-8"), "german_nouns.tsv")
