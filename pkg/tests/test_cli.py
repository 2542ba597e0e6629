#!/usr/bin/env python3
"""
Tests for the eigenblock command line and its exit codes
"""

import json
import os
import sys
import tempfile
import unittest
from pathlib import Path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pandas as pd

from eigenblock.assign import load_gain
from eigenblock.cli import main
from eigenblock.errors import (
    EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_VERIFICATION_FAILED
)
from eigenblock.modal import conjugate_pairs, modal_decomposition
from eigenblock.model import load_system, random_stable_system, save_system, synthetic_heffron_params


class CliTestCase(unittest.TestCase):
    """Temporary workspace with a random model file"""

    n, q, p, seed = 10, 5, 2, 60

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        self.system = random_stable_system(self.n, self.q, self.p, seed=self.seed)
        self.model = str(save_system(self.system, self.dir / "model.json"))
        self.pairs = conjugate_pairs(modal_decomposition(self.system))

    def tearDown(self):
        self.tmp.cleanup()

    def out(self, name: str) -> str:
        path = self.dir / name
        path.mkdir(exist_ok=True)
        return str(path)

    def pair_arg(self, k: int) -> str:
        return str(self.pairs[k].index + 1)


class TestAnalyze(CliTestCase):
    """analyze command"""

    def test_writes_tables(self):
        """Test analyze writes mode, participation and observability tables"""
        out = self.out("analysis")
        self.assertEqual(main(["analyze", "--model", self.model, "--out", out]), EXIT_OK)
        modes = pd.read_csv(Path(out) / "modes.csv")
        self.assertEqual(len(modes), self.n)
        participation = pd.read_csv(Path(out) / "participation.csv", index_col="state")
        self.assertEqual(participation.shape, (self.n, self.n))
        self.assertTrue((Path(out) / "observability.csv").exists())

    def test_missing_model(self):
        """Test a missing model file gives code 2"""
        code = main(["analyze", "--model", str(self.dir / "missing.json"), "--out", self.out("x")])
        self.assertEqual(code, EXIT_VALIDATION)

    def test_unwritable_output(self):
        """An output directory that cannot be created gives code 2"""
        blocker = self.dir / "blocker.txt"
        blocker.write_text("not a directory")
        code = main(["analyze", "--model", self.model, "--out", str(blocker / "sub")])
        self.assertEqual(code, EXIT_VALIDATION)

    def test_unknown_command(self):
        """Test an unknown command gives code 1"""
        self.assertEqual(main(["frobnicate"]), EXIT_USAGE)


class TestBlockParticipation(CliTestCase):
    """block-participation command"""

    def test_block_and_verify_round_trip(self):
        """Test block-participation output verifies from the files"""
        out = self.out("block")
        code = main([
            "block-participation", "--model", self.model, "--pair-index", self.pair_arg(0),
            "--states", "1,4", "--out", out
        ])
        self.assertEqual(code, EXIT_OK)
        for name in ("gain.json", "verification.json", "participation_before.csv",
                     "participation_after.csv", "observability_before.csv",
                     "observability_after.csv", "participation_shift.csv"):
            self.assertTrue((Path(out) / name).exists(), name)

        gain = load_gain(Path(out) / "gain.json")
        self.assertEqual(gain.F.shape, (self.q, self.n))
        self.assertEqual(gain.targets[0].states, (0, 3))
        report = json.loads((Path(out) / "verification.json").read_text())
        self.assertTrue(report["pass"])

        code = main([
            "verify", "--model", self.model, "--gain", str(Path(out) / "gain.json"),
            "--out", self.out("verify")
        ])
        self.assertEqual(code, EXIT_OK)

    def test_same_seed_gives_identical_files(self):
        """Test the same seed writes byte-identical files"""
        args = ["block-participation", "--model", self.model, "--pair-index", self.pair_arg(1),
                "--states", "2", "--seed", "7"]
        first, second = self.out("first"), self.out("second")
        self.assertEqual(main(args + ["--out", first]), EXIT_OK)
        self.assertEqual(main(args + ["--out", second]), EXIT_OK)
        for name in ("gain.json", "verification.json", "participation_after.csv"):
            self.assertEqual((Path(first) / name).read_bytes(), (Path(second) / name).read_bytes())

    def test_dominant_pair_when_no_selector(self):
        """Test the dominant pair is used without a selector"""
        code = main(["block-participation", "--model", self.model, "--states", "3", "--out", self.out("dom")])
        self.assertEqual(code, EXIT_OK)

    def test_infeasible_request(self):
        """Test too many states give code 4"""
        code = main([
            "block-participation", "--model", self.model, "--pair-index", self.pair_arg(0),
            "--states", "1,2,3,4", "--out", self.out("inf")
        ])
        self.assertEqual(code, EXIT_INFEASIBLE)

    def test_exclusive_selectors(self):
        """Test --pair-index and --pair-freq together give code 1"""
        code = main([
            "block-participation", "--model", self.model, "--pair-index", "1",
            "--pair-freq", "0.5", "--states", "1", "--out", self.out("usage")
        ])
        self.assertEqual(code, EXIT_USAGE)

    def test_bad_states_argument(self):
        """Test a non-numeric --states gives code 1"""
        code = main([
            "block-participation", "--model", self.model, "--pair-index", "1",
            "--states", "one", "--out", self.out("usage")
        ])
        self.assertEqual(code, EXIT_USAGE)

    def test_state_out_of_range(self):
        """Test a state beyond n gives code 2"""
        code = main([
            "block-participation", "--model", self.model, "--pair-index", self.pair_arg(0),
            "--states", str(self.n + 1), "--out", self.out("range")
        ])
        self.assertEqual(code, EXIT_VALIDATION)


    def test_state_out_of_range_without_pair_selector(self):
        """The dominant-pair lookup rejects an out-of-range state with code 2"""
        code = main([
            "block-participation", "--model", self.model,
            "--states", str(self.n + 1), "--out", self.out("range")
        ])
        self.assertEqual(code, EXIT_VALIDATION)


class TestSmallInputCount(CliTestCase):
    """q too small for the requested blocking"""

    n, q, p, seed = 6, 2, 1, 61

    def test_participation_needs_more_inputs(self):
        """Test participation blocking with q = 2 gives code 4"""
        code = main([
            "block-participation", "--model", self.model, "--pair-index", self.pair_arg(0),
            "--states", "1", "--out", self.out("small")
        ])
        self.assertEqual(code, EXIT_INFEASIBLE)

    def test_observability_needs_more_inputs(self):
        """Test observability blocking with q = 2 gives code 4"""
        code = main([
            "block-observability", "--model", self.model, "--pair-index", self.pair_arg(0),
            "--out", self.out("small")
        ])
        self.assertEqual(code, EXIT_INFEASIBLE)


class TestVerify(CliTestCase):
    """verify command on hand-written gain files"""

    def test_zero_gain_with_target_fails(self):
        """Test a zero gain claiming a block fails verification"""
        pair = self.pairs[0]
        gain = {
            "F": np.zeros((self.q, self.n)).tolist(),
            "targets": [{
                "kind": "participation",
                "eigenvalue_re": pair.eigenvalue.real,
                "eigenvalue_im": pair.eigenvalue.imag,
                "states": [1]
            }]
        }
        path = self.dir / "gain.json"
        path.write_text(json.dumps(gain))
        out = self.out("verify")
        code = main(["verify", "--model", self.model, "--gain", str(path), "--out", out])
        self.assertEqual(code, EXIT_VERIFICATION_FAILED)
        report = json.loads((Path(out) / "verification.json").read_text())
        self.assertFalse(report["pass"])
        self.assertFalse(report["checks"]["participation"])

    def test_corrupted_gain(self):
        """Test a truncated gain file gives code 2"""
        path = self.dir / "gain.json"
        path.write_text("{\"F\": [[1.0,")
        code = main(["verify", "--model", self.model, "--gain", str(path), "--out", self.out("v")])
        self.assertEqual(code, EXIT_VALIDATION)

    def test_gain_shape_mismatch(self):
        """Test a gain of the wrong shape gives code 2"""
        path = self.dir / "gain.json"
        path.write_text(json.dumps({"F": [[0.0, 0.0]]}))
        code = main(["verify", "--model", self.model, "--gain", str(path), "--out", self.out("v")])
        self.assertEqual(code, EXIT_VALIDATION)


class TestSequential(CliTestCase):
    """sequential command with a plan file"""

    def write_plan(self, stages) -> str:
        path = self.dir / "plan.json"
        path.write_text(json.dumps(stages))
        return str(path)

    def test_mixed_plan(self):
        """Test a two-stage mixed plan runs and records both stages"""
        plan = self.write_plan([
            {"kind": "participation", "pair_index": self.pairs[0].index + 1, "states": [1, 2]},
            {"kind": "observability", "pair_index": self.pairs[2].index + 1}
        ])
        out = self.out("seq")
        self.assertEqual(main(["sequential", "--model", self.model, "--plan", plan, "--out", out]), EXIT_OK)
        gain = load_gain(Path(out) / "gain.json")
        self.assertEqual(len(gain.targets), 2)
        self.assertEqual(len(gain.stages), 2)
        self.assertEqual(gain.stages[1]["kind"], "observability")

    def test_overlapping_plan(self):
        """Test a plan hitting one pair twice gives code 2"""
        plan = self.write_plan([
            {"kind": "participation", "pair_index": self.pairs[0].index + 1, "states": [1]},
            {"kind": "observability", "pair_index": self.pairs[0].index + 2}
        ])
        code = main(["sequential", "--model", self.model, "--plan", plan, "--out", self.out("seq")])
        self.assertEqual(code, EXIT_VALIDATION)

    def test_failing_stage_keeps_exit_code(self):
        """Test a failing stage keeps its own exit code"""
        plan = self.write_plan([
            {"kind": "participation", "pair_index": self.pairs[0].index + 1, "states": [1]},
            {"kind": "participation", "pair_index": self.pairs[1].index + 1, "states": [1, 2, 3, 4]}
        ])
        code = main(["sequential", "--model", self.model, "--plan", plan, "--out", self.out("seq")])
        self.assertEqual(code, EXIT_INFEASIBLE)

    def test_plan_schema_error(self):
        """Test a plan entry without a selector gives code 2"""
        plan = self.write_plan([{"kind": "participation", "states": [1]}])
        code = main(["sequential", "--model", self.model, "--plan", plan, "--out", self.out("seq")])
        self.assertEqual(code, EXIT_VALIDATION)


class TestHeffron(unittest.TestCase):
    """build-heffron followed by analysis and blocking of the 3-machine model"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        self.assertEqual(main(["build-heffron", "--out", str(self.dir)]), EXIT_OK)
        self.model = str(self.dir / "model.json")

    def tearDown(self):
        self.tmp.cleanup()

    def test_model_file(self):
        """Test build-heffron writes a 12-state model"""
        system = load_system(self.model)
        self.assertEqual((system.n, system.q, system.p), (12, 3, 3))

    def test_analyze(self):
        """Test analyze lists twelve modes"""
        self.assertEqual(main(["analyze", "--model", self.model, "--out", str(self.dir)]), EXIT_OK)
        self.assertEqual(len(pd.read_csv(self.dir / "modes.csv")), 12)

    def test_machine_one_needs_best_effort(self):
        """States 1 and 4 only block with --best-effort; their rows vanish for the pair"""
        args = ["block-participation", "--model", self.model, "--states", "1,4", "--out", str(self.dir)]
        self.assertEqual(main(args), EXIT_INFEASIBLE)
        self.assertEqual(main(args + ["--best-effort"]), EXIT_OK)
        report = json.loads((self.dir / "verification.json").read_text())
        self.assertTrue(report["checks"]["participation"])
        self.assertTrue(report["checks"]["spectrum"])

        columns = self.target_columns()
        before = pd.read_csv(self.dir / "participation_before.csv", index_col="state")
        after = pd.read_csv(self.dir / "participation_after.csv", index_col="state")
        self.assertLess(after.loc[["delta_1", "omega_1"], columns].to_numpy().max(), 1e-8)
        self.assertGreater(before.loc[["delta_1", "omega_1"]].to_numpy().max(), 1e-3)

    def test_tieline_observability_blocking(self):
        """A swing pair disappears from the tie-line flows and no other bar moves"""
        pairs = conjugate_pairs(modal_decomposition(load_system(self.model)))
        args = ["block-observability", "--model", self.model,
                "--pair-index", str(pairs[0].index + 1), "--out", str(self.dir)]
        self.assertEqual(main(args), EXIT_INFEASIBLE)
        self.assertEqual(main(args + ["--best-effort"]), EXIT_OK)

        before = pd.read_csv(self.dir / "observability_before.csv")
        after = pd.read_csv(self.dir / "observability_after.csv")
        targeted = [int(np.argmin(np.abs(after["re"] + 1j * after["im"] - lam)))
                    for lam in (pairs[0].eigenvalue, np.conj(pairs[0].eigenvalue))]
        self.assertLess(after["cv_norm"].iloc[targeted].max(), 1e-8)
        for _, row in before.iterrows():
            lam = complex(row["re"], row["im"])
            j = int(np.argmin(np.abs(after["re"] + 1j * after["im"] - lam)))
            if j not in targeted:
                self.assertLess(abs(after["cv_norm"].iloc[j] - row["cv_norm"]), 1e-9)

    def target_columns(self):
        """participation_after.csv columns of the pair named in gain.json"""
        target = json.loads((self.dir / "gain.json").read_text())["targets"][0]
        lam = complex(target["eigenvalue_re"], target["eigenvalue_im"])
        modes = pd.read_csv(self.dir / "observability_after.csv")
        values = modes["re"] + 1j * modes["im"]
        return [f"mode_{int(modes['index'].iloc[int(np.argmin(np.abs(values - mu)))])}"
                for mu in (lam, np.conj(lam))]

    def test_params_file(self):
        """Test a parameter file rebuilds the default model"""
        params = self.dir / "params.json"
        params.write_text(json.dumps(synthetic_heffron_params().to_dict()))
        out = self.dir / "from_params"
        out.mkdir()
        self.assertEqual(main(["build-heffron", "--params", str(params), "--out", str(out)]), EXIT_OK)
        self.assertTrue(load_system(out / "model.json").equals(load_system(self.model)))

    def test_literal_structure_flag(self):
        """Test the printed exciter structure gives a different model"""
        out = self.dir / "literal"
        out.mkdir()
        self.assertEqual(main(["build-heffron", "--literal-paper-structure", "--out", str(out)]), EXIT_OK)
        self.assertFalse(load_system(out / "model.json").equals(load_system(self.model)))


if __name__ == "__main__":
    unittest.main()
