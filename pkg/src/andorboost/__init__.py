"""AdaBoost over OR/AND chains of decision stumps, with stump and tree baselines."""

from .boosting import (
    AND_CHAIN, AND_OR, KINDS, OR_CHAIN, STUMP, TREE,
    BoostedEnsemble, WeakLearnerSpec, compute_alpha, exponential_loss, load_model,
    margin, posterior, predict_ensemble, reweight, save_model, train_boost,
)
from .chains import AND, OR, LogicChain, evaluate_chain, train_and_chain, train_or_chain
from .dataset import (
    Dataset, SplitSpec, load_csv, make_xor, split, uniform_weights,
)
from .stump import GE, LT, DecisionStump, train_stump, weighted_error
from .tree import DecisionTree, predict_tree, train_tree

__version__ = "0.1.0"
