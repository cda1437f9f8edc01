import io
import json

import pytest

from gfmwe import data_path
from gfmwe.cli import main, read_corpus, tokenize
from gfmwe.grammar import parse_tree, linearize

from conftest import FIXTURES

MOSES = str(FIXTURES / "phrases_10.moses")
SMALL = str(FIXTURES / "lexicon_small.tsv")
CORPUS = str(data_path("toy_corpus.tsv"))


def summary_numbers(text):
    return [int(l.split()[-1]) for l in text.strip().splitlines()[-6:]]


def test_tokenize():
    assert tokenize("where did X go?") == ["where", "did", "X", "go"]
    assert tokenize(" «kaffe» , tack. ") == ["kaffe", "tack"]


def test_read_corpus_skips_bad_lines(caplog):
    text = "# header\na\thello\thej\nbroken\nb\t...\thej\n\nc\thello\thej\n"
    assert [p.id for p in read_corpus(text, ("eng", "swe"))] == ["a", "c"]
    assert caplog.text.count("skipped") == 2


def test_detect_bundled_corpus(tmp_path, capsys):
    assert main(["detect", "--corpus", CORPUS, "--out-dir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert summary_numbers(out) == [14, 16, 5, 3, 8, 30]
    lines = (tmp_path / "reports.jsonl").read_text().splitlines()
    assert len(lines) == 30 and json.loads(lines[0])["pair_id"] == "g01"
    assert json.loads((tmp_path / "summary.json").read_text())["total"] == 30
    assert (tmp_path / "summary.txt").read_text() == out


def test_detect_to_stdout(capsys):
    assert main(["detect", "--corpus", CORPUS]) == 0
    out = capsys.readouterr().out.splitlines()
    assert sum(1 for l in out if l.startswith("{")) == 30


def test_detect_empty_corpus(tmp_path, capsys):
    empty = tmp_path / "empty.tsv"
    empty.write_text("")
    assert main(["detect", "--corpus", str(empty)]) == 0
    assert summary_numbers(capsys.readouterr().out) == [0] * 6


def test_detect_config_errors(tmp_path, caplog):
    assert main(["detect", "--corpus", CORPUS, "--grammar", str(tmp_path / "nope.gf")]) == 2
    assert main(["detect", "--corpus", str(tmp_path / "nope.tsv")]) == 2
    assert main(["detect", "--corpus", CORPUS, "--langs", "eng,deu"]) == 2
    assert main(["detect", "--corpus", CORPUS, "--langs", "eng"]) == 2
    assert main(["detect", "--corpus", CORPUS, "--cap", "0"]) == 2
    bad = tmp_path / "bad.gf"
    bad.write_text("cat S ;\nfun f : T ;\n")
    assert main(["detect", "--corpus", CORPUS, "--grammar", str(bad)]) == 2
    assert "line 2" in caplog.text


def test_detect_french_pair(tmp_path, capsys):
    corpus = tmp_path / "fre.tsv"
    corpus.write_text("w1\tit is warm.\til fait chaud.\nw2\thello!\tbonjour!\n")
    assert main(["detect", "--corpus", str(corpus), "--langs", "eng,fre"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert json.loads(lines[0])["kind"] == "Predicate"
    assert json.loads(lines[1])["verdict"] == "NotCandidate"


def test_report_recounts(tmp_path, capsys):
    main(["detect", "--corpus", CORPUS, "--out-dir", str(tmp_path)])
    first = capsys.readouterr().out
    assert main(["report", str(tmp_path / "reports.jsonl")]) == 0
    assert capsys.readouterr().out == first
    assert main(["report", "--json", str(tmp_path / "reports.jsonl"), str(tmp_path / "reports.jsonl")]) == 0
    assert json.loads(capsys.readouterr().out)["total"] == 60
    assert main(["report", str(tmp_path / "missing.jsonl")]) == 2


def test_split_words(capsys):
    assert main(["split", "--lexicon", SMALL, "Lebensmittel", "Banane"]) == 0
    assert capsys.readouterr().out.splitlines() == [
        "Lebensmittel\tLeben+s|Mittel\t(Cons_sCN Leben_N (UseN Mittel_N))",
        "Banane\tNONE",
    ]


def test_split_stdin(monkeypatch, capsys):
    words = ["Apfelsaft", "Krankenwagen", "Haus"] * 333 + ["Lebensmittel"]
    monkeypatch.setattr("sys.stdin", io.StringIO("\n".join(words) + "\n"))
    assert main(["split"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 1000
    assert out[0] == "Apfelsaft\tApfel|Saft\t(ConsNomCN Apfel_N (UseN Saft_N))"
    assert out[2] == "Haus\tNONE"


def test_split_extended_linker(tmp_path, capsys):
    lex = tmp_path / "lex.tsv"
    lex.write_text("Tag\tN\nZeit\tN\n")
    assert main(["split", "--lexicon", str(lex), "--linkers", ",s,en,es", "Tageszeit"]) == 0
    assert capsys.readouterr().out == "Tageszeit\tTag+es|Zeit\tNO-TREE\n"


def test_split_config_errors(tmp_path):
    assert main(["split", "--lexicon", str(tmp_path / "none.tsv"), "Haus"]) == 2
    assert main(["split", "--linkers", "s,en", "Haus"]) == 2
    assert main(["split", "--min-component", "0", "Haus"]) == 2


def test_extract_fixture(tmp_path, capsys):
    assert main(["extract", "--phrase-table", MOSES, "--lexicon", SMALL, "--out-dir", str(tmp_path)]) == 0
    counts = dict(l.split("\t") for l in capsys.readouterr().out.splitlines())
    assert counts == {"loaded": "10", "filtered": "3", "accepted": "2", "rejected": "1", "rejected:no-split": "1"}
    tsv = (tmp_path / "compounds.tsv").read_text().splitlines()
    assert [l.split("\t")[1] for l in tsv[1:]] == ["Apfelsaft", "Krankenwagen"]
    gf = (tmp_path / "compounds.gf").read_text().splitlines()
    assert sum(l.startswith("lin ") for l in gf) == 2
    assert (tmp_path / "counts.tsv").exists()


def test_extract_threshold_one(capsys):
    assert main(["extract", "--phrase-table", MOSES, "--threshold", "1.0"]) == 0
    cap = capsys.readouterr()
    assert cap.out.splitlines() == ["english\tgerman\tgerman_tree\tprobability"]
    assert "accepted\t0" in cap.err


def test_extract_tsv_with_labels(capsys):
    table = str(FIXTURES / "phrases_100.tsv")
    assert main(["extract", "--phrase-table", table, "--format", "tsv", "--out-format", "gf"]) == 0
    plain = capsys.readouterr()
    assert main(["extract", "--phrase-table", table, "--format", "tsv", "--out-format", "gf",
                 "--require-constituent"]) == 0
    labelled = capsys.readouterr()
    n = lambda err: int(dict(l.split("\t") for l in err.splitlines())["filtered"])
    assert n(labelled.err) < n(plain.err)
    assert plain.out.startswith("-- ")


def test_extract_rerun_identical(tmp_path, capsys):
    for d in ("a", "b"):
        main(["extract", "--phrase-table", MOSES, "--out-dir", str(tmp_path / d)])
    for name in ("compounds.tsv", "compounds.gf", "counts.tsv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_extract_errors(tmp_path):
    empty = tmp_path / "empty.moses"
    empty.write_text("\n")
    assert main(["extract", "--phrase-table", str(empty)]) == 2
    assert main(["extract", "--phrase-table", MOSES, "--threshold", "2"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["extract"])
    assert exc.value.code == 2


def _gen(depth, capsys):
    assert main(["gen", "--depth", str(depth)]) == 0
    lines = capsys.readouterr().out.splitlines()
    return lines[0], [l.split("\t") for l in lines[1:]]


def test_gen_depth_one_lists_lexicon(toy, capsys):
    header, rows = _gen(1, capsys)
    assert header == "#tree\t" + "\t".join(toy.languages)
    assert sorted(r[0] for r in rows) == sorted(f.name for f in toy.lexical_functions())


def test_gen_depths_nest(toy, capsys):
    _, two = _gen(2, capsys)
    _, three = _gen(3, capsys)
    assert {r[0] for r in two} < {r[0] for r in three}
    for row in three:
        tree = parse_tree(row[0])
        for lang, text in zip(toy.languages, row[1:]):
            if text:
                assert " ".join(linearize(tree, toy, lang)) == text


def test_gen_bad_depth():
    assert main(["gen", "--depth", "0"]) == 2
