"""
Lines through the origin on xor
===============================

On a point set closed under x -> -x with unchanged labels, a classifier
that is odd (h(-x) = -h(x)) gets exactly half the weight wrong under any
symmetric distribution.  Lines through the origin are such classifiers,
so on noiseless xor every one of them has error 0.5.

To see what reweighting does, add a single extra positive point so the
best line gets an edge, reweight once, and look for the best next line.
With the vote weight log((1 - eps) / eps), the line pointing the opposite
way becomes the best choice, so boosting oscillates between a classifier
and its complement.  With AdaBoost's 0.5 * log((1 - eps) / eps), both the
line and its complement land at exactly 1/2 and a different line wins.
"""

import numpy as np

from andorboost import Dataset, make_xor
from andorboost.experiments import origin_line_deadlock_check, origin_line_predictions

rep = origin_line_deadlock_check(n_per_quadrant=10, n_angles=360)
print("symmetric xor: max |error - 0.5| over 360 lines =", rep.max_deviation)

xor = make_xor(10, spread=0.0)
lopsided = Dataset(np.vstack([xor.features, [[1.0, 1.0]]]), np.append(xor.labels, 1))

for rule in ("log-odds", "adaboost"):
    rep = origin_line_deadlock_check(data=lopsided, n_angles=36, alpha_rule=rule)
    H = origin_line_predictions(lopsided.features, rep.angles)
    complement = bool(np.all(H[:, rep.next_index] == -H[:, rep.first_index]))
    print(f"{rule:9s} alpha={rep.alpha:.4f}: first line {np.degrees(rep.first_angle):.0f} deg "
          f"(error {rep.first_error:.4f}); best next line {np.degrees(rep.next_angle):.0f} deg "
          f"(error {rep.errors_after[rep.next_index]:.4f}); acts as complement: {complement}")
