import numpy as np
import pytest

from aucreduce.data import Dataset

# Published per-item AUCs of the 21-item depression inventory.
TABLE2_AUC = {
    21: 0.587468, 11: 0.597342, 16: 0.605937, 6: 0.610004, 18: 0.610028,
    19: 0.629285, 2: 0.631205, 12: 0.636791, 13: 0.648917, 4: 0.651187,
    3: 0.655666, 5: 0.658478, 20: 0.666999, 8: 0.667983, 17: 0.674283,
    15: 0.692064, 10: 0.697225, 9: 0.700461, 7: 0.701489, 14: 0.707401,
    1: 0.725009,
}

# Published running-total curve: (item added, AUC of running total).
TABLE3_CURVE = [
    (1, 0.725), (14, 0.777), (7, 0.795), (9, 0.810), (10, 0.813), (15, 0.822),
    (17, 0.821), (8, 0.819), (20, 0.820), (5, 0.821), (3, 0.821), (4, 0.821),
    (13, 0.821), (12, 0.820), (2, 0.819), (19, 0.818), (18, 0.816), (6, 0.814),
    (16, 0.812), (11, 0.811), (21, 0.812),
]

TABLE3_ORDER = [1, 14, 7, 9, 10, 15, 17, 8, 20, 5, 3, 4, 13, 12, 2, 19, 18, 6, 16, 11, 21]

# Standardized loadings, full scale (V1..V21) and reduced scale.
TABLE6_LOADINGS = [
    0.716, 0.604, 0.655, 0.585, 0.633, 0.454, 0.636, 0.645, 0.632, 0.523, 0.394,
    0.594, 0.514, 0.737, 0.654, 0.413, 0.589, 0.468, 0.520, 0.681, 0.433,
]
TABLE7_LOADINGS = {"V1": 0.748, "V7": 0.614, "V9": 0.703, "V10": 0.534, "V14": 0.736, "V15": 0.816}


def brute_force_auc(scores, labels):
    """Literal O(P*N) pair count; ties count one half."""
    pos = [s for s, y in zip(scores, labels) if y == 1]
    neg = [s for s, y in zip(scores, labels) if y == 0]
    wins = 0.0
    for p in pos:
        for n in neg:
            if p > n:
                wins += 1.0
            elif p == n:
                wins += 0.5
    return wins / (len(pos) * len(neg))


@pytest.fixture
def eight_respondents():
    """Hand-built 8 x 3 fixture with ties in every column."""
    return Dataset(
        labels=np.array([1, 0, 1, 0, 1, 0, 1, 0]),
        items=np.array(
            [
                [2, 3, 1],
                [1, 0, 1],
                [3, 2, 0],
                [1, 1, 2],
                [0, 3, 1],
                [2, 0, 0],
                [3, 1, 3],
                [0, 1, 1],
            ]
        ),
        item_ids=("1", "2", "3"),
    )
