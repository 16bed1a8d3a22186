"""
Converting the UCI breast-cancer tables to the loader's CSV schema
==================================================================

Two layouts are handled:

``breast-cancer-wisconsin.data`` (original, 699 rows)
    ``id, 9 integer features, class`` with class 2 (benign) / 4
    (malignant); 16 rows contain ``?`` and are dropped.  Output header:
    ``clump_thickness,...,mitoses,class``; load with
    ``--labels=2=-1,4=+1 --label-column class --header``.

``wdbc.data`` (diagnostic, 569 rows)
    ``id, diagnosis, 30 real features`` with diagnosis B / M.  Output
    header: ``diagnosis,f1,...,f30``; load with
    ``--labels=B=-1,M=+1 --label-column diagnosis --header``.

Usage::

    python notebooks/convert_breast_cancer.py breast-cancer-wisconsin.data cancer.csv
    python notebooks/convert_breast_cancer.py wdbc.data wdbc.csv

Without arguments, the copy of the diagnostic table that ships with
scikit-learn is written to ``wdbc.csv`` (no download needed).
"""

import csv
import sys

ORIGINAL = ["clump_thickness", "cell_size_uniformity", "cell_shape_uniformity",
            "marginal_adhesion", "single_epithelial_cell_size", "bare_nuclei",
            "bland_chromatin", "normal_nucleoli", "mitoses"]


def convert(src, dst):
    with open(src, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    out = []
    if len(rows[0]) == 11:
        header = ORIGINAL + ["class"]
        dropped = 0
        for r in rows:
            if "?" in r:
                dropped += 1
                continue
            out.append(r[1:])
        print(f"original layout: kept {len(out)} rows, dropped {dropped} with missing values")
    elif len(rows[0]) == 32:
        header = ["diagnosis"] + [f"f{i}" for i in range(1, 31)]
        out = [[r[1]] + r[2:] for r in rows]
        print(f"diagnostic layout: {len(out)} rows")
    else:
        raise SystemExit(f"unrecognized layout with {len(rows[0])} columns")
    with open(dst, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(out)


def from_sklearn(dst):
    from sklearn.datasets import load_breast_cancer

    b = load_breast_cancer()
    with open(dst, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["diagnosis"] + [n.replace(" ", "_") for n in b.feature_names])
        # sklearn codes malignant as 0
        for t, row in zip(b.target, b.data):
            w.writerow(["M" if t == 0 else "B"] + [repr(float(v)) for v in row])
    print(f"wrote {len(b.target)} rows to {dst}")


if __name__ == "__main__":
    if len(sys.argv) == 3:
        convert(sys.argv[1], sys.argv[2])
    else:
        from_sklearn("wdbc.csv")
