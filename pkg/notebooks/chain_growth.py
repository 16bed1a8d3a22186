"""
How an OR chain grows on a fixed distribution
=============================================

A chain never reweights the samples.  Once the OR has answered +1 for a
sample, nothing appended later can change that answer, so the next stump
is searched only over the samples the chain still labels -1.  On
noiseless xor the first stump has error 1/2; the second one removes a
quadrant of errors and leaves 1/4.
"""

import numpy as np

from andorboost import make_xor, train_and_chain, train_or_chain, train_stump, uniform_weights

data = make_xor(25, spread=0.0)
w = uniform_weights(data.n_samples)

stump, err = train_stump(data, w)
print("best single stump:", stump, "error", err)

for train in (train_or_chain, train_and_chain):
    for ops in (1, 2, 3):
        chain = train(data, w, max_ops=ops)
        print(f"{chain.connective} chain, max_ops={ops}: {len(chain)} operations, "
              f"training error {chain.training_error}")
        for op in chain.operations:
            print("   ", op)

###############################################################################
# A third operation does not help: the remaining errors are samples the
# OR already calls +1, and only correctly labelled samples are still open,
# so growth stops.

chain = train_or_chain(data, w, max_ops=5)
assert chain.training_error == 0.25 and len(chain) == 2

###############################################################################
# De Morgan: an AND of stumps equals the negated OR of the flipped stumps.

from andorboost import AND, OR, LogicChain

rng = np.random.default_rng(0)
X = rng.normal(size=(1000, 2))
ops = train_and_chain(data, w, max_ops=2).operations
lhs = LogicChain(AND, ops).predict(X)
rhs = -LogicChain(OR, tuple(op.negated() for op in ops)).predict(X)
print("De Morgan holds on 1000 points:", bool(np.all(lhs == rhs)))
