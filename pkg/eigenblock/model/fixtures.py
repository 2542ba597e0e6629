"""Committed synthetic 3-machine parameter set"""

import numpy as np

from .models import HeffronParams


# Synthetic values in the usual per-unit ranges of a 3-machine, 9-bus system.
# K1 has equal row sums and is diagonally dominant, damping is proportional
# to inertia, and K2, K4, K5 are small so every mode sits in the open left
# half-plane. Not a reproduction of any published data set.
SYNTHETIC_HEFFRON = {
    "M": [47.28, 12.80, 6.02],
    "D": [47.28, 12.80, 6.02],
    "Td0": [8.96, 6.00, 5.89],
    "TA": [0.20, 0.25, 0.30],
    "KA": [20.0, 25.0, 15.0],
    "K1": [[1.50, -0.60, -0.70],
           [-0.60, 1.60, -0.80],
           [-0.70, -0.80, 1.70]],
    "K2": [[0.10, 0.02, 0.02],
           [0.02, 0.12, 0.02],
           [0.02, 0.02, 0.15]],
    "K3": [[1.30, 0.05, 0.05],
           [0.05, 1.40, 0.05],
           [0.05, 0.05, 1.50]],
    "K4": [[0.05, -0.02, -0.02],
           [-0.02, 0.06, -0.02],
           [-0.02, -0.02, 0.07]],
    "K5": [[0.04, -0.01, -0.01],
           [-0.01, 0.03, -0.01],
           [-0.01, -0.01, 0.05]],
    "K6": [[0.50, 0.02, 0.02],
           [0.02, 0.55, 0.02],
           [0.02, 0.02, 0.60]],
    "omega0": 2 * np.pi * 60
}


def synthetic_heffron_params() -> HeffronParams:
    """Fresh HeffronParams built from SYNTHETIC_HEFFRON"""
    return HeffronParams(**SYNTHETIC_HEFFRON)
