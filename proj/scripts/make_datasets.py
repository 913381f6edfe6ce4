#!/usr/bin/env python3
"""Regenerate the CSV files in data/.

wine: the UCI wine recognition data (178 samples, 13 features, 3 classes),
taken from scikit-learn's bundled copy of the same data.

balance: the UCI balance-scale data reconstructed exactly. The dataset is the
full factorial grid of (left_weight, left_distance, right_weight,
right_distance) over {1..5}, labeled L/B/R by comparing left_weight *
left_distance against right_weight * right_distance.
"""
import csv
import itertools
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "data")


def write_wine():
    from sklearn.datasets import load_wine

    wine = load_wine()
    names = [n.replace("/", "_") for n in wine.feature_names]
    with open(os.path.join(OUT, "wine.csv"), "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["class"] + names)
        for y, x in zip(wine.target, wine.data):
            w.writerow([int(y) + 1] + [repr(float(v)) for v in x])


def write_balance():
    with open(os.path.join(OUT, "balance.csv"), "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["class", "left_weight", "left_distance",
                    "right_weight", "right_distance"])
        for lw, ld, rw, rd in itertools.product(range(1, 6), repeat=4):
            left, right = lw * ld, rw * rd
            label = "L" if left > right else ("R" if right > left else "B")
            w.writerow([label, lw, ld, rw, rd])


if __name__ == "__main__":
    os.makedirs(OUT, exist_ok=True)
    write_wine()
    write_balance()
    print("wrote data/wine.csv and data/balance.csv")
