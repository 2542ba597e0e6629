#!/usr/bin/env python3
"""
Tests for eigenstructure assignment: subspaces, directions, gains, blocking
"""

import os
import sys
import tempfile
import unittest
from pathlib import Path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
from scipy.linalg import block_diag

from eigenblock.assign import (
    BlockingRequest, EigenstructureBlocker, assignable_subspace, block_inter_area, block_observability,
    block_participation, candidate_directions, load_gain,
    observability_blocking_direction, participation_blocking_direction,
    save_gain, sequential_block, synthesize_gain
)
from eigenblock.config import DEFAULT_TOLERANCES
from eigenblock.errors import (
    EXIT_INFEASIBLE, EmptySubspaceError, InfeasibleRequestError, ModelFileError,
    OverlappingTargetsError, PairSelectionError, StageError, ValidationError
)
from eigenblock.modal import (
    ModePair, conjugate_pairs, modal_decomposition, observability_coefficients,
    participation_matrix
)
from eigenblock.model import LtiSystem, random_stable_system
from eigenblock.numerics import eigvals, max_spectrum_shift
from eigenblock.verify import TargetKind


def closed_loop_participation(system: LtiSystem, F: np.ndarray):
    md = modal_decomposition(system.with_feedback(F))
    return md, participation_matrix(md)


class TestAssignableSubspace(unittest.TestCase):
    """Null space of [A − λI, B]"""

    def test_full_input_case(self):
        """Test that B = I makes the whole state space assignable"""
        system = LtiSystem(np.diag([-1.0, -2.0]), np.eye(2), np.zeros((0, 2)))
        sub = assignable_subspace(system, -3.0)
        self.assertEqual(sub.d, 2)
        residual = (system.A + 3.0 * np.eye(2)) @ sub.N1 + system.B @ sub.N2
        self.assertLess(np.abs(residual).max(), 1e-12)

    def test_no_input_off_spectrum_is_empty(self):
        """Test that no inputs leave nothing to assign off the spectrum"""
        system = LtiSystem(np.diag([-1.0, -2.0]), np.zeros((2, 1)), np.zeros((0, 2)))
        with self.assertRaises(EmptySubspaceError):
            assignable_subspace(system, -3.0)

    def test_controllable_dimension_equals_inputs(self):
        """Test subspace dimension equals the input count"""
        system = random_stable_system(8, 4, 2, seed=1)
        pair = conjugate_pairs(modal_decomposition(system))[0]
        sub = assignable_subspace(system, pair.eigenvalue)
        self.assertEqual(sub.d, 4)
        self.assertLess(sub.residual(system.A, system.B), 1e-9 * (np.linalg.norm(system.A, 2) + np.linalg.norm(system.B, 2)))


class TestDirections(unittest.TestCase):
    """Blocking directions h"""

    def setUp(self):
        self.system = random_stable_system(8, 4, 2, seed=3)
        self.pair = conjugate_pairs(modal_decomposition(self.system))[1]
        self.sub = assignable_subspace(self.system, self.pair.eigenvalue)

    def test_participation_direction_zeroes_states(self):
        """Test the participation direction has zeros at the blocked states"""
        h = participation_blocking_direction(self.sub, [1, 4])
        self.assertAlmostEqual(np.linalg.norm(h), 1.0)
        v_hat = self.sub.N1 @ h
        self.assertGreater(np.linalg.norm(v_hat), 0)
        self.assertLess(np.abs(v_hat[[1, 4]]).max(), 1e-10 * np.linalg.norm(v_hat) + 1e-12)

    def test_unconstrained_direction_maximizes_eigenvector(self):
        """Test an empty state set picks the largest eigenvector direction"""
        h = participation_blocking_direction(self.sub, [])
        norms = np.linalg.norm(self.sub.N1, axis=0)
        self.assertAlmostEqual(np.linalg.norm(self.sub.N1 @ h), norms.max())

    def test_participation_infeasible(self):
        """Test m + 2 > q is refused with the condition in the message"""
        with self.assertRaises(InfeasibleRequestError) as ctx:
            participation_blocking_direction(self.sub, [0, 1, 2])
        self.assertEqual(ctx.exception.exit_code, EXIT_INFEASIBLE)
        self.assertIn("m+2 <= q", str(ctx.exception))

    def test_best_effort_relaxes_condition(self):
        """Test best-effort mode accepts m < q"""
        h = participation_blocking_direction(self.sub, [0, 1, 2], enforce_guarantee=False)
        v_hat = self.sub.N1 @ h
        self.assertLess(np.abs(v_hat[[0, 1, 2]]).max(), 1e-9 * np.linalg.norm(v_hat))

    def test_observability_direction(self):
        """Test the observability direction lies in the null space of C"""
        h = observability_blocking_direction(self.sub, self.system.C)
        v_hat = self.sub.N1 @ h
        C = self.system.C
        self.assertLess(np.linalg.norm(C @ v_hat), 1e-9 * np.linalg.norm(C, 2) * np.linalg.norm(v_hat))

    def test_observability_zero_output(self):
        """Test any direction hides the pair from a zero output"""
        h = observability_blocking_direction(self.sub, np.zeros((2, 8)))
        self.assertEqual(np.linalg.norm(np.zeros((2, 8)) @ (self.sub.N1 @ h)), 0.0)

    def test_observability_full_rank_output_infeasible(self):
        """Test a full-rank output is refused"""
        with self.assertRaises(InfeasibleRequestError) as ctx:
            observability_blocking_direction(self.sub, np.eye(8))
        self.assertIn("rank(C)+2 <= q", str(ctx.exception))

    def test_candidates_are_seeded(self):
        """Test retry directions repeat for the same seed"""
        H = np.eye(self.sub.d)
        first = list(candidate_directions(self.sub, H, seed=9, max_random=4))
        second = list(candidate_directions(self.sub, H, seed=9, max_random=4))
        self.assertEqual(len(first), self.sub.d + 4)
        for a, b in zip(first, second):
            np.testing.assert_array_equal(a, b)


class TestSynthesizeGain(unittest.TestCase):
    """F = Z V̂⁻¹"""

    def setUp(self):
        self.system = random_stable_system(8, 4, 2, seed=6)
        self.md = modal_decomposition(self.system)
        self.pair = conjugate_pairs(self.md)[0]

    def test_null_replacement_gives_zero_gain(self):
        """Test replacing a pair by itself gives F = 0"""
        i = self.pair.index
        result = synthesize_gain(self.md, self.pair, self.md.V[:, i], np.zeros(4))
        self.assertLess(np.abs(result.F).max(), 1e-12)

    def test_gain_properties(self):
        """Test the gain is real, keeps the spectrum and fixes the other eigenvectors"""
        sub = assignable_subspace(self.system, self.pair.eigenvalue)
        h = participation_blocking_direction(sub, [2])
        result = synthesize_gain(self.md, self.pair, sub.N1 @ h, sub.N2 @ h)
        F = result.F
        self.assertEqual(F.shape, (4, 8))
        self.assertTrue(np.isrealobj(F))
        self.assertLess(result.imag_residue, 1e-9)

        closed = self.system.A + self.system.B @ F
        lam = self.pair.eigenvalue
        self.assertLess(np.linalg.norm(closed @ result.v_hat - lam * result.v_hat), 1e-8 * (1 + np.linalg.norm(closed, 2)))
        self.assertLess(max_spectrum_shift(eigvals(self.system.A), eigvals(closed)), 1e-8 * (1 + np.linalg.norm(self.system.A, 2)))

        untouched = [j for j in range(8) if j not in self.pair.indices]
        residual = max(np.linalg.norm(F @ self.md.V[:, j]) for j in untouched)
        self.assertLess(residual, 1e-9 * (1 + np.linalg.norm(F, 2)))


class TestBlocking(unittest.TestCase):
    """End-to-end blocking with built-in verification"""

    def setUp(self):
        self.system = random_stable_system(10, 5, 2, seed=12)
        self.md = modal_decomposition(self.system)
        self.pairs = conjugate_pairs(self.md)

    def test_participation_blocked(self):
        """Test the targeted states drop out of the pair"""
        pair = self.pairs[2]
        result = block_participation(self.system, pair, [0, 3, 7])
        self.assertTrue(result.verification.passed)
        md, pm = closed_loop_participation(self.system, result.F)
        cols = [int(np.argmin(np.abs(md.eigenvalues - lam))) for lam in (pair.eigenvalue, np.conj(pair.eigenvalue))]
        self.assertLess(pm.magnitude[np.ix_([0, 3, 7], cols)].max(), 1e-8)

    def test_empty_states_preserve_spectrum(self):
        """Test a request without states still keeps the spectrum"""
        result = block_participation(self.system, self.pairs[0], [])
        self.assertLess(result.spectrum_max_shift, 1e-7 * (1 + np.linalg.norm(self.system.A, 2)))

    def test_observability_blocked(self):
        """Test the pair becomes unobservable while other output norms stay"""
        pair = self.pairs[1]
        result = block_observability(self.system, pair)
        md = modal_decomposition(self.system.with_feedback(result.F))
        mo = observability_coefficients(self.system.C, md)
        target = int(np.argmin(np.abs(md.eigenvalues - pair.eigenvalue)))
        self.assertLess(mo.norms[target], 1e-8 * (1 + np.linalg.norm(self.system.C, 2)))
        self.assertTrue(result.verification.checks["pbh_untouched"])

    def test_real_mode_rejected(self):
        """Test a real mode cannot be targeted"""
        system = random_stable_system(7, 4, 1, seed=2)
        real_pair = ModePair(index=0, eigenvalue=complex(eigvals(system.A)[0].real, 0.0))
        with self.assertRaises(PairSelectionError):
            block_participation(system, real_pair, [1])

    def test_state_indices_checked(self):
        """Test out-of-range states are refused"""
        with self.assertRaises(ValidationError):
            block_participation(self.system, self.pairs[0], [1, 1])
        with self.assertRaises(ValidationError):
            block_participation(self.system, self.pairs[0], [10])

    def test_infeasible_request(self):
        """Test too many states are refused as infeasible"""
        with self.assertRaises(InfeasibleRequestError):
            block_participation(self.system, self.pairs[0], [0, 1, 2, 3])

    def test_request_describes_one_based_states(self):
        """Test request descriptions use 1-based states"""
        request = BlockingRequest.participation(self.pairs[0], [0, 3])
        self.assertIn("[1, 4]", request.describe())
        self.assertEqual(request.to_target().kind, TargetKind.PARTICIPATION)


class TestSequentialBlocking(unittest.TestCase):
    """Chained blocking on distinct pairs"""

    def setUp(self):
        self.system = random_stable_system(10, 5, 2, seed=21)
        self.pairs = conjugate_pairs(modal_decomposition(self.system))

    def test_single_request_matches_direct_call(self):
        """Test a one-stage chain equals the direct call"""
        direct = block_participation(self.system, self.pairs[0], [2])
        chained = sequential_block(self.system, [BlockingRequest.participation(self.pairs[0], [2])])
        np.testing.assert_allclose(chained.F, direct.F, atol=1e-12)

    def test_two_participation_stages(self):
        """Test both participation blocks survive the chain"""
        requests = [
            BlockingRequest.participation(self.pairs[0], [1, 2]),
            BlockingRequest.participation(self.pairs[3], [5]),
        ]
        result = sequential_block(self.system, requests)
        self.assertEqual(len(result.stages), 2)
        self.assertEqual(len(result.targets), 2)
        self.assertTrue(result.verification.checks["participation"])
        self.assertTrue(result.verification.checks["spectrum"])

    def test_mixed_stages(self):
        """Test participation then observability in one chain"""
        requests = [
            BlockingRequest.participation(self.pairs[1], [4]),
            BlockingRequest.observability(self.pairs[2]),
        ]
        result = sequential_block(self.system, requests)
        self.assertTrue(result.verification.passed)
        self.assertIn("pbh", result.verification.checks)

    def test_overlapping_targets_rejected(self):
        """Test two stages on one pair are refused"""
        requests = [
            BlockingRequest.participation(self.pairs[0], [1]),
            BlockingRequest.observability(self.pairs[0]),
        ]
        with self.assertRaises(OverlappingTargetsError):
            sequential_block(self.system, requests)

    def test_failing_stage_is_named(self):
        """Test the failing stage number and exit code are reported"""
        requests = [
            BlockingRequest.participation(self.pairs[0], [1]),
            BlockingRequest.participation(self.pairs[1], [0, 1, 2, 3]),
        ]
        with self.assertRaises(StageError) as ctx:
            sequential_block(self.system, requests)
        self.assertEqual(ctx.exception.stage, 2)
        self.assertEqual(ctx.exception.exit_code, EXIT_INFEASIBLE)

    def test_empty_plan(self):
        """Test an empty chain is refused"""
        with self.assertRaises(ValidationError):
            sequential_block(self.system, [])


class TestInterAreaBlocking(unittest.TestCase):
    """Hiding every inter-area pair from the outputs"""

    @staticmethod
    def banded_system(*freqs_hz: float) -> LtiSystem:
        rng = np.random.default_rng(31)
        blocks = []
        for k, freq in enumerate(freqs_hz):
            w = 2 * np.pi * freq
            damping = 0.1 + 0.05 * k
            blocks.append(np.array([[-damping, w], [-w, -damping]]))
        n = 2 * len(freqs_hz)
        return LtiSystem(block_diag(*blocks), rng.standard_normal((n, 5)), rng.standard_normal((2, n)))

    def test_inter_area_pair_hidden(self):
        """Test only the inter-area pair is hidden from the outputs"""
        system = self.banded_system(0.4, 1.5, 3.0)
        result = block_inter_area(system)
        self.assertEqual(len(result.targets), 1)
        self.assertEqual(result.targets[0].kind, TargetKind.OBSERVABILITY)
        self.assertAlmostEqual(abs(result.targets[0].eigenvalue.imag), 2 * np.pi * 0.4)
        self.assertTrue(result.verification.passed)

    def test_no_inter_area_pair(self):
        """Test a system without inter-area modes is refused"""
        with self.assertRaises(PairSelectionError):
            block_inter_area(self.banded_system(1.5, 3.0))


class TestGainFiles(unittest.TestCase):
    """Gain file round trip and corruption"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        self.system = random_stable_system(8, 4, 2, seed=30)
        self.pair = conjugate_pairs(modal_decomposition(self.system))[0]

    def tearDown(self):
        self.tmp.cleanup()

    def test_saved_gain_reloads(self):
        """Test a saved gain file reloads with its targets"""
        result = block_participation(self.system, self.pair, [0, 5])
        gain = load_gain(save_gain(result, self.dir / "gain.json")).check_against(self.system)
        np.testing.assert_array_equal(gain.F, result.F)
        self.assertEqual(gain.targets[0].states, (0, 5))
        self.assertEqual(gain.stages[0]["states"], [1, 6])
        self.assertIn("cond_V_hat", gain.diagnostics)

    def test_corrupted_gain_file(self):
        """Test a truncated gain file is a file error"""
        path = self.dir / "gain.json"
        path.write_text('{"F": [[1.0, "x"]]}')
        with self.assertRaises(ModelFileError):
            load_gain(path)

    def test_wrong_gain_shape(self):
        """Test a gain of the wrong shape is refused"""
        path = self.dir / "gain.json"
        path.write_text('{"F": [[1.0, 2.0]]}')
        with self.assertRaises(ValidationError):
            load_gain(path).check_against(self.system)


class TestEigenstructureBlocker(unittest.TestCase):
    """Session facade"""

    def setUp(self):
        self.blocker = EigenstructureBlocker(random_stable_system(10, 5, 2, seed=40), seed=3)

    def test_analyze(self):
        """Test the facade analysis lists every mode"""
        analysis = self.blocker.analyze()
        self.assertEqual(len(analysis["modes"]), 10)
        self.assertEqual(len(analysis["pairs"]), 5)

    def test_select_pair_needs_one_selector(self):
        """Test exactly one pair selector is required"""
        with self.assertRaises(ValidationError):
            self.blocker.select_pair(index=0, frequency_hz=1.0)
        self.assertEqual(self.blocker.select_pair(index=1).index, 0)

    def test_history_records_success_and_failure(self):
        """Test the session history keeps results and failures"""
        pair = self.blocker.pairs[0]
        self.blocker.block_participation(pair, [0])
        with self.assertRaises(InfeasibleRequestError):
            self.blocker.block_participation(pair, [0, 1, 2, 3, 4])
        summary = self.blocker.summary()
        self.assertEqual(summary["results"], 1)
        self.assertEqual(summary["failures"], 1)
        self.assertEqual(summary["events_logged"], 2)
        self.assertTrue(summary["latest_pass"])

    def test_machine_blocking(self):
        """Test machine blocking picks that machine's states"""
        # 10 states as 5 machines of 2 states, by-variable layout: machine 1 owns states 1 and 6
        blocker = EigenstructureBlocker(random_stable_system(10, 5, 2, seed=41))
        result = blocker.block_machine(blocker.pairs[0], 1, states_per_machine=2)
        self.assertEqual(result.targets[0].states, (1, 6))

    def test_participation_shift(self):
        """Test the before/after shift has one row per state"""
        result = self.blocker.block_participation(self.blocker.pairs[1], [2])
        shift = self.blocker.participation_shift(result)
        self.assertEqual(shift.delta.shape, (10, 10))


if __name__ == "__main__":
    unittest.main()
