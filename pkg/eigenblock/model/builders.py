"""Analytical Heffron-Phillips and tie-line output builders"""

import logging
from typing import List, Optional

import numpy as np

from ..errors import DimensionMismatchError, ValidationError
from .models import HeffronParams, LtiSystem, StateLayout, TieLineIncidence

logger = logging.getLogger(__name__)

STATE_GROUPS = ("delta", "omega", "eq", "efd")


def heffron_state_labels(n_machines: int) -> List[str]:
    """delta_1..delta_g, omega_1.., eq_1.., efd_1.. (eq = E'q, efd = E'fd)"""
    return [f"{group}_{k + 1}" for group in STATE_GROUPS for k in range(n_machines)]


def build_heffron_phillips(
    params: HeffronParams,
    k5_in_exciter: bool = False,
    incidence: Optional[TieLineIncidence] = None
) -> LtiSystem:
    """
    Assemble the 4g-state Heffron-Phillips model.

    Block rows (state order δ, ω, E'q, E'fd):
        [0,            ω0 I,     0,             0      ]
        [-M⁻¹K1,       -M⁻¹D,    -M⁻¹K2,        0      ]
        [-Td0⁻¹K4,     0,        -Td0⁻¹K3,      Td0⁻¹  ]
        [-TA⁻¹K5KA,    0,        -TA⁻¹K6KA,     -TA⁻¹  ]
    and B = [0; 0; 0; TA⁻¹KA]. The output is the tie-line flow matrix.

    Args:
        params: Machine and coupling parameters
        k5_in_exciter: Use K5 instead of K6 in the E'fd/E'q block
        incidence: Tie-line incidence (default: every machine pair)

    Returns:
        LtiSystem with n = 4g, q = g
    """
    g = params.n_machines
    I = np.eye(g)
    Z = np.zeros((g, g))
    M_inv = np.diag(1.0 / np.diag(params.M))
    Td0_inv = np.diag(1.0 / np.diag(params.Td0))
    TA_inv = np.diag(1.0 / np.diag(params.TA))

    exciter_eq = params.K5 if k5_in_exciter else params.K6
    if k5_in_exciter:
        logger.info("building exciter row with K5 in both delta and E'q columns")

    A = np.block([
        [Z, params.omega0 * I, Z, Z],
        [-M_inv @ params.K1, -M_inv @ params.D, -M_inv @ params.K2, Z],
        [-Td0_inv @ params.K4, Z, -Td0_inv @ params.K3, Td0_inv],
        [-TA_inv @ params.K5 @ params.KA, Z, -TA_inv @ exciter_eq @ params.KA, -TA_inv]
    ])
    B = np.vstack([Z, Z, Z, TA_inv @ params.KA])

    incidence = incidence or TieLineIncidence.all_pairs(g)
    C = build_tieline_output(params.K1, params.K2, incidence)

    return LtiSystem(
        A, B, C,
        state_labels=tuple(heffron_state_labels(g)),
        input_labels=tuple(f"u_pss_{k + 1}" for k in range(g)),
        output_labels=incidence.labels
    )


def build_tieline_output(K1, K2, incidence: TieLineIncidence) -> np.ndarray:
    """
    Tie-line output C = C̃ [K1 0 K2 0] in the Heffron state order.

    Args:
        K1: g x g angle-to-power sensitivities
        K2: g x g E'q-to-power sensitivities
        incidence: Signed incidence C̃ over the g machine injections

    Returns:
        Real (tie-lines) x 4g output matrix
    """
    K1 = np.asarray(K1, dtype=float)
    K2 = np.asarray(K2, dtype=float)
    g = incidence.n_machines
    for name, K in (("K1", K1), ("K2", K2)):
        if K.shape != (g, g):
            raise DimensionMismatchError(f"{name} must be {g}x{g}, got {K.shape}")
    Z = np.zeros((g, g))
    return incidence.matrix @ np.hstack([K1, Z, K2, Z])


def machine_state_indices(
    machine: int,
    n_machines: int,
    states_per_machine: int,
    layout: StateLayout = StateLayout.BY_VARIABLE
) -> List[int]:
    """
    0-based indices of every state belonging to one machine.

    Args:
        machine: 0-based machine index
        n_machines: Number of machines in the model
        states_per_machine: States per machine (4 for Heffron-Phillips)
        layout: State ordering convention

    Returns:
        Sorted state indices
    """
    if not 0 <= machine < n_machines:
        raise ValidationError(f"machine {machine + 1} outside 1..{n_machines}")
    if layout == StateLayout.BY_VARIABLE:
        return [v * n_machines + machine for v in range(states_per_machine)]
    return [machine * states_per_machine + v for v in range(states_per_machine)]
