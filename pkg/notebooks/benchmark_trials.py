"""
Repeated random splits: Ada-Stump against the chain ensembles
=============================================================

Ten train/test splits with shared seeds, 50 rounds per ensemble and at
most 5 operations per chain.  Runs on the two bundled synthetic tables;
pass a CSV path (diagnosis column ``B``/``M``, as written by
``convert_breast_cancer.py``) to include a real table as well::

    python notebooks/benchmark_trials.py wdbc.csv
"""

import sys

from andorboost import SplitSpec, WeakLearnerSpec, load_csv
from andorboost.experiments import format_ratio, ops_sweep, ratio_table
from andorboost.fixtures import fixture_split, load_fixture

tables = [(load_fixture(n), fixture_split(n, 0)) for n in ("noisy_xor", "two_conjunctions")]
if len(sys.argv) > 1:
    d = load_csv(sys.argv[1], "diagnosis", "B=-1,M=+1", has_header=True, name="wdbc")
    n_test = d.n_samples // 10
    tables.append((d, SplitSpec(d.n_samples - n_test, n_test, 0)))

specs = [WeakLearnerSpec(k, max_ops=5) for k in ("stump", "or", "and", "andor")]
for data, split in tables:
    rows = ratio_table(data, specs, rounds=50, split_spec=split, n_trials=10)
    print(data.name)
    for r in rows:
        print(f"  {r.numerator_spec.label:14s} mean test error {r.numerator_mean:.4f}"
              f"  ratio {format_ratio(r.ratio)}")

###############################################################################
# Error against chain length on the xor table: one operation reproduces
# Ada-Stump exactly, two are enough for the diagonal structure.

data, split = tables[0]
for row in ops_sweep(data, ["or", "andor"], 50, range(1, 6), split, n_trials=5):
    print(f"{row.kind:6s} ops={row.ops}: mean test error {row.mean_test:.4f}")
