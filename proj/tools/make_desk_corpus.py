#!/usr/bin/env python3
"""Regenerates the bundled desk corpus under data/.

The real UCI tables come from scikit-learn's bundled copies (iris, wine,
wdbc). Balance-scale, MONK-1, tic-tac-toe endgame, waveform and LED are
generated from their published generating rules. Three synthetic fixtures
with known structure round out the corpus.

Output is deterministic; rerunning rewrites byte-identical files.
"""

import argparse
import itertools
import os

import numpy as np
from sklearn import datasets


def fmt(v):
    if isinstance(v, str):
        return v
    if v is None or (isinstance(v, float) and np.isnan(v)):
        return "?"
    return f"{float(v):.6g}"


def write_csv(path, header, rows):
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")


def write_arff(path, relation, attrs, rows):
    with open(path, "w", newline="\n") as fh:
        fh.write(f"@relation {relation}\n\n")
        for name, kind in attrs:
            if kind == "numeric":
                fh.write(f"@attribute {name} numeric\n")
            else:
                fh.write(f"@attribute {name} {{{','.join(kind)}}}\n")
        fh.write("\n@data\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")


def sklearn_table(loader, out, class_names=None):
    bunch = loader()
    x, y = bunch.data, bunch.target
    names = class_names or [str(c).replace(" ", "_") for c in bunch.target_names]
    header = [f"f{i}:num" for i in range(x.shape[1])] + ["class:cat"]
    rows = [list(x[i]) + [names[y[i]]] for i in range(len(y))]
    write_csv(out, header, rows)


def balance_scale(out):
    rows = []
    for lw, ld, rw, rd in itertools.product(range(1, 6), repeat=4):
        left, right = lw * ld, rw * rd
        label = "L" if left > right else ("R" if right > left else "B")
        rows.append([lw, ld, rw, rd, label])
    write_csv(out, ["left_weight:num", "left_distance:num", "right_weight:num",
                    "right_distance:num", "class:cat"], rows)


def monks1(out):
    domains = [(1, 2, 3), (1, 2, 3), (1, 2), (1, 2, 3), (1, 2, 3, 4), (1, 2)]
    rows = []
    for a in itertools.product(*domains):
        label = "1" if (a[0] == a[1] or a[4] == 1) else "0"
        rows.append([str(v) for v in a] + [label])
    attrs = [(f"a{i + 1}", [str(v) for v in d]) for i, d in enumerate(domains)]
    attrs.append(("class", ["0", "1"]))
    write_arff(out, "monks-1", attrs, rows)


LINES = [(0, 1, 2), (3, 4, 5), (6, 7, 8), (0, 3, 6), (1, 4, 7), (2, 5, 8),
         (0, 4, 8), (2, 4, 6)]


def winner(board):
    for a, b, c in LINES:
        if board[a] != "b" and board[a] == board[b] == board[c]:
            return board[a]
    return None


def tic_tac_toe(out):
    finals = set()

    def play(board, player):
        if winner(board) or "b" not in board:
            finals.add(tuple(board))
            return
        for i in range(9):
            if board[i] == "b":
                board[i] = player
                play(board, "o" if player == "x" else "x")
                board[i] = "b"

    play(["b"] * 9, "x")
    names = ["top_left", "top_middle", "top_right", "middle_left", "middle_middle",
             "middle_right", "bottom_left", "bottom_middle", "bottom_right"]
    rows = []
    for board in sorted(finals):
        rows.append(list(board) + ["positive" if winner(list(board)) == "x" else "negative"])
    attrs = [(n, ["x", "o", "b"]) for n in names] + [("class", ["positive", "negative"])]
    write_arff(out, "tic-tac-toe", attrs, rows)
    return len(rows)


def waveform(out, n, rng):
    h1 = np.array([max(6 - abs(i - 6), 0) for i in range(21)], dtype=float)
    h2 = np.array([max(6 - abs(i - 14), 0) for i in range(21)], dtype=float)
    h3 = np.array([max(6 - abs(i - 10), 0) for i in range(21)], dtype=float)
    pairs = [(h1, h2), (h1, h3), (h2, h3)]
    rows = []
    for _ in range(n):
        c = int(rng.integers(3))
        u = rng.random()
        a, b = pairs[c]
        x = u * a + (1 - u) * b + rng.normal(size=21)
        rows.append(list(x) + [f"w{c}"])
    write_csv(out, [f"x{i}:num" for i in range(21)] + ["class:cat"], rows)


SEGMENTS = [
    (1, 1, 1, 0, 1, 1, 1), (0, 0, 1, 0, 0, 1, 0), (1, 0, 1, 1, 1, 0, 1),
    (1, 0, 1, 1, 0, 1, 1), (0, 1, 1, 1, 0, 1, 0), (1, 1, 0, 1, 0, 1, 1),
    (1, 1, 0, 1, 1, 1, 1), (1, 0, 1, 0, 0, 1, 0), (1, 1, 1, 1, 1, 1, 1),
    (1, 1, 1, 1, 0, 1, 1),
]


def led7(out, n, rng):
    rows = []
    for _ in range(n):
        digit = int(rng.integers(10))
        seg = [s ^ int(rng.random() < 0.1) for s in SEGMENTS[digit]]
        rows.append([str(s) for s in seg] + [f"d{digit}"])
    write_csv(out, [f"s{i}:cat" for i in range(7)] + ["class:cat"], rows)


def two_blobs(out, n, rng):
    rows = []
    for i in range(n):
        c = i % 2
        centre = -3.0 if c == 0 else 3.0
        x = rng.normal(centre, 1.0, size=2)
        rows.append(list(x) + ["neg" if c == 0 else "pos"])
    write_csv(out, ["x:num", "y:num", "class:cat"], rows)


def checkerboard(out, n, rng):
    rows = []
    for _ in range(n):
        x, y = rng.uniform(-1, 1, size=2)
        label = "even" if (x > 0) == (y > 0) else "odd"
        rows.append([x, y, label])
    write_csv(out, ["x:num", "y:num", "class:cat"], rows)


def mixed_rules(out, n, rng):
    housing = ["own", "rent", "free"]
    purpose = ["car", "education", "business", "home"]
    rows = []
    for _ in range(n):
        age = float(rng.integers(18, 70))
        income = float(np.round(rng.gamma(4.0, 12.0), 1))
        h = housing[int(rng.integers(3))]
        p = purpose[int(rng.integers(4))]
        good = (income > 40 and h != "rent") or (p == "education" and age < 30)
        row = [age, income, h, p, "good" if good else "bad"]
        for j in range(4):
            if rng.random() < 0.03:
                row[j] = None
        rows.append(["?" if v is None else v for v in row])
    write_csv(out, ["age:num", "income:num", "housing:cat", "purpose:cat", "class:cat"], rows)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data"))
    args = parser.parse_args()
    out = os.path.abspath(args.out)
    os.makedirs(out, exist_ok=True)
    rng = np.random.default_rng(20141104)

    sklearn_table(datasets.load_iris, os.path.join(out, "iris.csv"))
    sklearn_table(datasets.load_wine, os.path.join(out, "wine.csv"))
    sklearn_table(datasets.load_breast_cancer, os.path.join(out, "wdbc.csv"))
    balance_scale(os.path.join(out, "balance_scale.csv"))
    monks1(os.path.join(out, "monks1.arff"))
    tic_tac_toe(os.path.join(out, "tic_tac_toe.arff"))
    waveform(os.path.join(out, "waveform.csv"), 600, rng)
    led7(os.path.join(out, "led7.csv"), 500, rng)
    two_blobs(os.path.join(out, "two_blobs.csv"), 500, rng)
    checkerboard(os.path.join(out, "checkerboard.csv"), 400, rng)
    mixed_rules(os.path.join(out, "mixed_rules.csv"), 400, rng)


if __name__ == "__main__":
    main()
