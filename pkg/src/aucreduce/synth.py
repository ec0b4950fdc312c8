"""Synthetic rating-scale data with a planted set of signal items.

Each response is a standard normal latent value cut into ``levels``
ordinal categories at the standard normal quantiles ``k / levels``, so
a noise item is uniform over categories in both classes. On signal
items the latent value is shifted by ``+signal_strength / 2`` for
positive respondents and ``-signal_strength / 2`` for negative ones.
The classes are then ``signal_strength`` apart on the latent scale,
and a very large strength pushes them into the extreme categories.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from statistics import NormalDist

import numpy as np

from aucreduce.data import Dataset

RNG_ALGORITHM = "numpy.random.Generator(PCG64)"


@dataclass(frozen=True)
class GeneratorSpec:
    respondents: int
    items: int
    signal_items: tuple[int, ...] = ()
    levels: int = 4
    signal_strength: float = 0.8
    prevalence: float = 0.5
    seed: int = 0
    rng_algorithm: str = field(default=RNG_ALGORITHM, init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "signal_items", tuple(int(i) for i in self.signal_items))
        if self.respondents < 2:
            raise ValueError("need at least two respondents")
        if self.items < 1:
            raise ValueError("need at least one item")
        if self.levels < 2:
            raise ValueError(f"levels must be >= 2, got {self.levels}")
        if not 0 < self.prevalence < 1:
            raise ValueError(f"prevalence must lie in (0, 1), got {self.prevalence}")
        if not (math.isfinite(self.signal_strength) and self.signal_strength >= 0):
            raise ValueError("signal_strength must be finite and >= 0")
        bad = [i for i in self.signal_items if not 1 <= i <= self.items]
        if bad:
            raise ValueError(f"signal items {bad} outside 1..{self.items}")
        if len(set(self.signal_items)) != len(self.signal_items):
            raise ValueError("signal items must be distinct")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["signal_items"] = list(self.signal_items)
        return d


def _cutpoints(levels: int) -> np.ndarray:
    # standard normal quantiles at 1/L, ..., (L-1)/L
    nd = NormalDist()
    return np.array([nd.inv_cdf(k / levels) for k in range(1, levels)])


def generate(spec: GeneratorSpec) -> Dataset:
    rng = np.random.default_rng(spec.seed)
    labels = (rng.random(spec.respondents) < spec.prevalence).astype(np.int64)
    n_pos = int(labels.sum())
    if n_pos == 0 or n_pos == spec.respondents:
        raise ValueError(
            f"seed {spec.seed} drew a single class; increase respondents or adjust prevalence"
        )
    latent = rng.standard_normal((spec.respondents, spec.items))
    cols = [i - 1 for i in spec.signal_items]
    latent[:, cols] += spec.signal_strength * (labels[:, None] - 0.5)
    responses = np.searchsorted(_cutpoints(spec.levels), latent, side="right")
    return Dataset(
        labels=labels,
        items=responses.astype(np.int64),
        item_ids=tuple(str(i) for i in range(1, spec.items + 1)),
    )
