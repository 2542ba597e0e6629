"""Eigenstructure blocking session over one system"""

import logging
from typing import Any, Callable, Dict, List, Optional, Sequence

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import EigenblockError, PairSelectionError, ValidationError
from ..modal import (
    ModalDecomposition, ModeObservability, ModePair, ParticipationMatrix,
    ParticipationShift, analyze_pairs, dominant_pair, modal_decomposition,
    mode_table, observability_coefficients, pair_by_frequency, pair_by_index,
    participation_matrix, participation_shift
)
from ..model import LtiSystem, StateLayout, machine_state_indices
from .algorithms import execute_request
from .models import BlockingRequest, BlockingResult, BlockingSession
from .sequential import block_inter_area, sequential_block

logger = logging.getLogger(__name__)


class EigenstructureBlocker:
    """Blocks participation or observability of mode pairs in one system"""

    def __init__(
        self,
        system: LtiSystem,
        tolerances: Optional[Tolerances] = None,
        enforce_guarantee: bool = True,
        seed: int = 0
    ):
        """
        Initialize the blocker and decompose the open loop.

        Args:
            system: Open-loop model
            tolerances: Numerical thresholds (defaults if not provided)
            enforce_guarantee: Reject requests outside the guaranteed region
            seed: Seed for random direction draws
        """
        self.system = system.validate()
        self.tolerances = tolerances or DEFAULT_TOLERANCES
        self.enforce_guarantee = enforce_guarantee
        self.seed = seed
        self.session = BlockingSession()
        self.decomposition: ModalDecomposition = modal_decomposition(system)
        self.pairs: List[ModePair] = analyze_pairs(self.decomposition)

    def participation(self) -> ParticipationMatrix:
        return participation_matrix(self.decomposition)

    def observability(self, C=None) -> ModeObservability:
        return observability_coefficients(self.system.C if C is None else C, self.decomposition)

    def analyze(self) -> Dict[str, Any]:
        """
        Modal picture of the open loop.

        Returns:
            Mode table, classified pairs, participation and observability
        """
        return {
            "modes": mode_table(self.decomposition, self.pairs),
            "pairs": [pair.to_dict() for pair in self.pairs],
            "participation": self.participation(),
            "observability": self.observability()
        }

    def select_pair(
        self,
        index: Optional[int] = None,
        frequency_hz: Optional[float] = None,
        window_hz: Optional[float] = None,
        states: Optional[Sequence[int]] = None
    ) -> ModePair:
        """
        Pick a pair by 0-based mode index, by frequency or by dominant participation.

        Exactly one of index, frequency_hz and states must be given.
        """
        given = [value is not None for value in (index, frequency_hz, states)]
        if sum(given) != 1:
            raise ValidationError("select a pair by exactly one of index, frequency or states")
        if index is not None:
            return pair_by_index(self.pairs, index)
        if frequency_hz is not None:
            window = self.tolerances.pair_freq_window if window_hz is None else window_hz
            return pair_by_frequency(self.pairs, frequency_hz, window)
        return dominant_pair(self.participation(), self.pairs, states)

    def block_participation(self, pair: ModePair, states: Sequence[int]) -> BlockingResult:
        """
        Remove the given states from one mode pair.

        Args:
            pair: Target pair of the open loop
            states: 0-based state indices

        Returns:
            Verified BlockingResult
        """
        request = BlockingRequest.participation(pair, states)
        return self._run(request.describe(), lambda: self._execute(request))

    def block_observability(self, pair: ModePair, C=None) -> BlockingResult:
        """Hide one mode pair from y = C x (the system output by default)"""
        request = BlockingRequest.observability(pair, C)
        return self._run(request.describe(), lambda: self._execute(request))

    def block_machine(
        self,
        pair: ModePair,
        machine: int,
        states_per_machine: int = 4,
        layout: StateLayout = StateLayout.BY_VARIABLE,
        variables: Optional[Sequence[int]] = None
    ) -> BlockingResult:
        """
        Remove the states of one machine from a mode pair.

        Args:
            pair: Target pair
            machine: 0-based machine index
            states_per_machine: States per machine (4 for Heffron-Phillips)
            layout: State ordering of the model
            variables: Optional subset of per-machine slots (0-based)

        Returns:
            Verified BlockingResult
        """
        if states_per_machine < 1 or self.system.n % states_per_machine:
            raise ValidationError(
                f"{self.system.n} states do not split into machines of {states_per_machine}"
            )
        states = machine_state_indices(
            machine, self.system.n // states_per_machine, states_per_machine, layout
        )
        if variables is not None:
            bad = [v for v in variables if not 0 <= v < states_per_machine]
            if bad:
                raise ValidationError(f"machine variables {bad} outside 0..{states_per_machine - 1}")
            states = [states[v] for v in variables]
        return self.block_participation(pair, states)

    def block_inter_area(self) -> BlockingResult:
        """Hide every inter-area pair from the system output"""
        return self._run(
            "observability of every inter-area pair",
            lambda: block_inter_area(self.system, self.tolerances, self.enforce_guarantee, self.seed)
        )

    def run_plan(self, requests: Sequence[BlockingRequest]) -> BlockingResult:
        """Run requests as one sequential chain"""
        description = "; ".join(request.describe() for request in requests) or "empty plan"
        return self._run(
            description,
            lambda: sequential_block(
                self.system, requests, self.tolerances, self.enforce_guarantee, self.seed
            )
        )

    def closed_loop(self, result: Optional[BlockingResult] = None) -> LtiSystem:
        """Closed loop of a result (latest if not provided)"""
        result = result or self.session.latest()
        if result is None:
            raise PairSelectionError("no blocking result in this session")
        return self.system.with_feedback(result.F)

    def participation_shift(self, result: Optional[BlockingResult] = None) -> ParticipationShift:
        """Participation change caused by a result"""
        after = participation_matrix(modal_decomposition(self.closed_loop(result)))
        return participation_shift(self.participation(), after, self.system.state_labels)

    def summary(self) -> Dict[str, Any]:
        return {
            "n": self.system.n,
            "q": self.system.q,
            "p": self.system.p,
            "pairs": len(self.pairs),
            "enforce_guarantee": self.enforce_guarantee,
            **self.session.summary()
        }

    def _execute(self, request: BlockingRequest) -> BlockingResult:
        return execute_request(self.system, request, self.tolerances, self.enforce_guarantee, self.seed)

    def _run(self, description: str, action: Callable[[], BlockingResult]) -> BlockingResult:
        try:
            result = action()
        except EigenblockError as exc:
            logger.info("blocking failed (%s): %s", description, exc)
            self.session.add_failure(description, exc)
            raise
        self.session.add_result(result)
        return result
