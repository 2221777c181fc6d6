"""Learning vector quantization classifiers backed by the lvqkit C++ core."""

import numpy as np

from ._lvqkit import (
    ContractError,
    InvariantError,
    IoError,
    Model,
    ParseError,
    benchmark,
    classification_error,
    gen_multimodal,
    load_csv,
    multi_compare,
    paired_t_test,
    train,
    variants,
)

__all__ = [
    "ContractError",
    "InvariantError",
    "IoError",
    "LVQClassifier",
    "Model",
    "ParseError",
    "benchmark",
    "classification_error",
    "gen_multimodal",
    "load_csv",
    "multi_compare",
    "paired_t_test",
    "train",
    "variants",
]


class LVQClassifier:
    """fit/predict wrapper accepting arbitrary label values.

    Keyword arguments are passed to ``train`` (np, eps0, tau, epochs, sigma,
    init, jitter, np_max).
    """

    def __init__(self, variant="glvq", seed=42, **params):
        self.variant = variant
        self.seed = seed
        self.params = params

    def fit(self, X, y):
        X = np.ascontiguousarray(X, dtype=np.float64)
        self.classes_, codes = np.unique(np.asarray(y), return_inverse=True)
        self.model_, self.trace_ = train(X, (codes + 1).tolist(), self.variant, self.seed, **self.params)
        return self

    def predict(self, X):
        X = np.ascontiguousarray(X, dtype=np.float64)
        return self.classes_[np.asarray(self.model_.predict(X)) - 1]

    def score(self, X, y):
        return float(np.mean(self.predict(X) == np.asarray(y)))
