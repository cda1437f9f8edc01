"""Write the 100-entry TSV phrase-table fixture and its ground-truth file.

The NP flags below are assigned by hand from the toy grammar's English
lexicon; the filter test checks the parser-based filter against them.
"""

import random
import sys
from pathlib import Path

ENGLISH = [
    # (phrase, parses as an NP in the toy grammar)
    ("the apple juice", True), ("apple juice", True), ("the ambulance", True),
    ("a ticket", True), ("the train station", True), ("the train ticket", True),
    ("the school book", True), ("the hospital", True), ("food", True),
    ("the food", True), ("a big house", True), ("my key", True),
    ("the car key", True), ("a red car", True), ("the house key", True),
    ("water", True), ("a glass of water", True), ("the hospital food", True),
    ("a school", True), ("the station", True),
    ("is warm", False), ("want a", False), ("of the", False), ("the", False),
    ("apple juice is", False), ("to the station", False), ("the doctor", False),
    ("the city hall", False), ("where is", False), ("house door", False),
    ("very", False), ("the apple juice .", False), ("the big", False),
    ("an apple", False),
]
GERMAN_ONE = ["Apfelsaft", "Krankenwagen", "Lebensmittel", "Bahnhof", "Fahrkarte",
              "Schulbuch", "Haustür", "Autoschlüssel", "Wasserglas", "Schule"]
GERMAN_MANY = ["der Apfelsaft", "zum Bahnhof", "das Krankenhaus", "ein Glas Wasser",
               "rotes Auto", "die Schule"]
PROBS = [0.0, 0.05, 0.1, 0.1, 0.25, 0.5, 0.5, 0.75, 0.9, 1.0]
LABELS = ["NP", "NP", "-", "VP", "PP"]


def main(out_dir):
    rng = random.Random(7)
    out = Path(out_dir)
    table, truth = [], ["#line\tenglish_is_np\tgerman_words\tprobability\tlabel"]
    for i in range(100):
        eng, is_np = ENGLISH[i % len(ENGLISH)]
        ger = rng.choice(GERMAN_ONE if rng.random() < 0.7 else GERMAN_MANY)
        p = rng.choice(PROBS) if rng.random() < 0.6 else round(rng.random(), 3)
        label = rng.choice(LABELS)
        table.append(f"{eng}\t{ger}\t{p}\t{label}")
        truth.append(f"{i + 1}\t{int(is_np)}\t{len(ger.split())}\t{p}\t{label}")
    (out / "phrases_100.tsv").write_text("\n".join(table) + "\n", encoding="utf-8")
    (out / "phrases_100.truth.tsv").write_text("\n".join(truth) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures")
