"""Modal analysis: decomposition, participation, observability, pairing"""

import logging
from dataclasses import replace
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from ..errors import (
    DimensionMismatchError, DistinctnessError, PairingError, PairSelectionError,
    ValidationError
)
from ..model import LtiSystem
from ..numerics import eig, match_eigenvalues, solve, spectral_norm
from .models import (
    ModalDecomposition, ModeClass, ModeObservability, ModePair,
    ParticipationMatrix, ParticipationShift
)

logger = logging.getLogger(__name__)

DISTINCTNESS_TOL = 1e-8
PAIRING_TOL = 1e-9
RESIDUAL_TOL = 1e-9
BIORTHOGONALITY_TOL = 1e-9

# Band edges in Hz
BELOW_BAND_HZ = 0.1
INTER_AREA_HZ = 0.7
AMBIGUOUS_HZ = 1.0
LOCAL_HZ = 2.0


def _state_matrix(system: Union[LtiSystem, np.ndarray]) -> np.ndarray:
    if isinstance(system, LtiSystem):
        return np.array(system.A)
    return np.asarray(system, dtype=float)


def mode_order(eigenvalues: np.ndarray) -> np.ndarray:
    """Ascending |Im|, then ascending Re, +Im before its conjugate"""
    return np.lexsort((-eigenvalues.imag, eigenvalues.real, np.abs(eigenvalues.imag)))


def _enforce_conjugates(values: np.ndarray, vectors: np.ndarray, tol: float) -> None:
    i = 0
    while i < values.size - 1:
        lam = values[i]
        if lam.imag > tol and abs(values[i + 1] - np.conj(lam)) <= tol:
            values[i + 1] = np.conj(lam)
            vectors[:, i + 1] = np.conj(vectors[:, i])
            i += 2
        else:
            i += 1


def decomposition_from_vectors(A: np.ndarray, eigenvalues: np.ndarray, V: np.ndarray) -> ModalDecomposition:
    """
    Normalize left eigenvectors against given right eigenvectors.

    W is taken as (V⁻¹)ᵀ so that WᵀV = I holds to solve accuracy; rescaling
    a column of V rescales the matching column of W by the inverse factor.
    """
    V = np.array(V, dtype=complex)
    inv_V, cond = solve(V, np.eye(V.shape[0], dtype=complex))
    W = inv_V.T
    md = ModalDecomposition(
        eigenvalues=np.array(eigenvalues, dtype=complex), V=V, W=W,
        state_matrix=np.array(A, dtype=float)
    )
    logger.debug("modal decomposition: n=%d cond(V)=%.3e", md.n, cond)
    return md


def modal_decomposition(system: Union[LtiSystem, np.ndarray]) -> ModalDecomposition:
    """
    Eigen-decomposition with biorthonormal left/right eigenvectors.

    Args:
        system: LtiSystem or state matrix

    Returns:
        ModalDecomposition ordered by ascending |Im λ|, then Re λ, with
        conjugates adjacent and the +Im member first
    """
    A = _state_matrix(system)
    values, vectors = eig(A)
    order = mode_order(values)
    values = values[order]
    vectors = vectors[:, order]

    scale = spectral_norm(A)
    _enforce_conjugates(values, vectors, PAIRING_TOL * max(scale, 1.0))

    if values.size > 1:
        gaps = np.abs(values[:, None] - values[None, :])
        np.fill_diagonal(gaps, np.inf)
        i, j = np.unravel_index(np.argmin(gaps), gaps.shape)
        if gaps[i, j] <= DISTINCTNESS_TOL * scale:
            raise DistinctnessError(
                f"distinctness violated: eigenvalues {values[i]:.6g} and "
                f"{values[j]:.6g} are {gaps[i, j]:.3e} apart"
            )

    md = decomposition_from_vectors(A, values, vectors)

    worst = float(md.residuals().max())
    if worst > RESIDUAL_TOL * max(scale, 1.0):
        logger.warning("eigenvector residual %.3e above %.1e*||A||", worst, RESIDUAL_TOL)
    biorth = md.biorthogonality_error()
    if biorth > BIORTHOGONALITY_TOL:
        logger.warning("biorthogonality error %.3e above %.1e", biorth, BIORTHOGONALITY_TOL)
    return md


def participation_matrix(md: ModalDecomposition) -> ParticipationMatrix:
    """P = V ∘ W, i.e. p_ki = w_ik v_ki; each column sums to 1"""
    return ParticipationMatrix(P=md.V * md.W, eigenvalues=md.eigenvalues.copy())


def observability_coefficients(C, md: ModalDecomposition) -> ModeObservability:
    """
    Mode observability in the outputs y = C x.

    Args:
        C: p x n output matrix
        md: Decomposition supplying the right eigenvectors

    Returns:
        ModeObservability with O = C V and column norms ‖C vᵢ‖
    """
    C = np.atleast_2d(np.asarray(C))
    if C.size == 0:
        C = np.zeros((0, md.n))
    if C.shape[1] != md.n:
        raise DimensionMismatchError(f"C has {C.shape[1]} columns, expected {md.n}")
    O = C @ md.V
    return ModeObservability(O=O, norms=np.linalg.norm(O, axis=0), eigenvalues=md.eigenvalues.copy())


def conjugate_pairs(md: ModalDecomposition, tol: Optional[float] = None) -> List[ModePair]:
    """
    Group oscillatory modes into conjugate pairs.

    Args:
        md: Decomposition in mode order
        tol: Pairing tolerance (default 1e-9 * ‖A‖)

    Returns:
        One ModePair per conjugate pair, real modes excluded
    """
    if tol is None:
        tol = PAIRING_TOL * max(md.norm_A, 1.0)
    values = md.eigenvalues
    pairs: List[ModePair] = []
    i = 0
    while i < values.size:
        lam = values[i]
        if abs(lam.imag) <= tol:
            i += 1
            continue
        if lam.imag < 0 or i + 1 >= values.size or abs(values[i + 1] - np.conj(lam)) > tol:
            raise PairingError(f"eigenvalue {lam:.6g} at index {i} has no conjugate partner")
        pairs.append(ModePair(index=i, eigenvalue=complex(lam)))
        i += 2
    return pairs


def classify_frequency(frequency_hz: float) -> ModeClass:
    """Band label for a frequency in Hz"""
    if frequency_hz < BELOW_BAND_HZ:
        return ModeClass.BELOW_BAND
    if frequency_hz < INTER_AREA_HZ:
        return ModeClass.INTER_AREA
    if frequency_hz <= AMBIGUOUS_HZ:
        return ModeClass.AMBIGUOUS
    if frequency_hz <= LOCAL_HZ:
        return ModeClass.LOCAL
    return ModeClass.ABOVE_BAND


def classify_modes(pairs: Sequence[ModePair]) -> List[ModePair]:
    """Same pairs with mode_class set from their frequency"""
    return [replace(pair, mode_class=classify_frequency(pair.frequency_hz)) for pair in pairs]


def analyze_pairs(md: ModalDecomposition) -> List[ModePair]:
    """conjugate_pairs followed by classify_modes"""
    return classify_modes(conjugate_pairs(md))


def find_pair(pairs: Sequence[ModePair], eigenvalue: complex, tol: float) -> ModePair:
    """Pair whose +Im eigenvalue lies within tol of the given value"""
    target = complex(eigenvalue.real, abs(eigenvalue.imag))
    best = min(pairs, key=lambda pair: abs(pair.eigenvalue - target), default=None)
    if best is None or abs(best.eigenvalue - target) > tol:
        raise PairSelectionError(f"no conjugate pair near eigenvalue {target:.6g}")
    return best


def pair_by_index(pairs: Sequence[ModePair], index: int) -> ModePair:
    """Pair whose first member has the given 0-based mode index"""
    for pair in pairs:
        if index in pair.indices:
            return pair
    raise PairSelectionError(f"mode {index + 1} is not part of a conjugate pair")


def pair_by_frequency(pairs: Sequence[ModePair], frequency_hz: float, window_hz: float) -> ModePair:
    """Pair closest to frequency_hz, within ± window_hz"""
    best = min(pairs, key=lambda pair: (abs(pair.frequency_hz - frequency_hz), pair.index), default=None)
    if best is None or abs(best.frequency_hz - frequency_hz) > window_hz:
        raise PairSelectionError(
            f"no conjugate pair within {window_hz} Hz of {frequency_hz} Hz"
        )
    return best


def dominant_pair(pm: ParticipationMatrix, pairs: Sequence[ModePair], states: Sequence[int]) -> ModePair:
    """
    Pair in which the given states participate most.

    Score is Σ_k |p_ki| over the states for the +Im member; ties resolve to
    the lowest mode index.
    """
    if not pairs:
        raise PairSelectionError("system has no oscillatory modes")
    n = pm.magnitude.shape[0]
    states = list(states)
    if not states:
        raise ValidationError("dominant pair needs at least one state")
    bad = [k for k in states if not 0 <= k < n]
    if bad:
        raise ValidationError(f"state indices {bad} outside 0..{n - 1}")
    mag = pm.magnitude[states, :]
    return max(pairs, key=lambda pair: (float(mag[:, pair.index].sum()), -pair.index))


def participation_shift(
    before: ParticipationMatrix,
    after: ParticipationMatrix,
    state_labels: Sequence[str] = ()
) -> ParticipationShift:
    """
    |P_after| − |P_before| with modes aligned by eigenvalue.

    Blocking changes the left eigenvectors of every mode, so states removed
    from one pair may show up in others; this table makes that visible.
    """
    matches = match_eigenvalues(before.eigenvalues, after.eigenvalues)
    columns = [j for _, j, _ in matches]
    aligned = after.magnitude[:, columns]
    return ParticipationShift(
        delta=aligned - before.magnitude,
        before=before.magnitude,
        after=aligned,
        eigenvalues=before.eigenvalues.copy(),
        state_labels=tuple(state_labels)
    )


def mode_table(md: ModalDecomposition, pairs: Optional[Sequence[ModePair]] = None) -> List[Dict]:
    """One row per mode: index (1-based), Re, Im, freq Hz, damping, class"""
    if pairs is None:
        pairs = analyze_pairs(md)
    classes = {}
    for pair in pairs:
        for i in pair.indices:
            classes[i] = pair.mode_class or classify_frequency(pair.frequency_hz)

    rows = []
    for i, lam in enumerate(md.eigenvalues):
        magnitude = abs(lam)
        rows.append({
            "index": i + 1,
            "re": float(lam.real),
            "im": float(lam.imag),
            "freq_hz": abs(lam.imag) / (2 * np.pi),
            "damping": float(-lam.real / magnitude) if magnitude > 0 else 0.0,
            "class": classes.get(i, ModeClass.NON_OSCILLATORY).value
        })
    return rows
