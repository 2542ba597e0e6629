#!/usr/bin/env python3
"""
Interactive Demo: Participation Blocking Step by Step
Walks through subspace, direction, gain and verification on one mode pair
"""

import argparse
import os
import sys
import time
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))
from typing import List, Optional

import numpy as np

from eigenblock.assign import (
    AssignableSubspace, BlockingResult, assignable_subspace,
    participation_blocking_direction, synthesize_gain
)
from eigenblock.modal import (
    ModalDecomposition, ModePair, analyze_pairs, dominant_pair,
    modal_decomposition, participation_matrix
)
from eigenblock.model import build_heffron_phillips, synthetic_heffron_params
from eigenblock.verify import BlockingTarget, TargetKind, verify_blocking


class InteractiveBlockingDemo:
    """Step-by-step blocking with pause points for explanation"""

    def __init__(self, auto_advance: bool = False, states: Optional[List[int]] = None):
        self.auto_advance = auto_advance
        self.states = states or [0, 3]
        self.current_step = 0
        self.system = build_heffron_phillips(synthetic_heffron_params())
        self.md: Optional[ModalDecomposition] = None
        self.pair: Optional[ModePair] = None
        self.sub: Optional[AssignableSubspace] = None
        self.result: Optional[BlockingResult] = None

    def wait_for_input(self, message: str = "Press Enter to continue..."):
        """Wait for user input or auto-advance"""
        if self.auto_advance:
            time.sleep(1)
        else:
            input(f"\n⏸️  {message}")

    def step(self, title: str):
        self.current_step += 1
        print(f"\n{'='*80}")
        print(f"  STEP {self.current_step}: {title}")
        print(f"{'='*80}")

    def show_modes(self):
        self.step("OPEN-LOOP MODES")
        self.md = modal_decomposition(self.system)
        pairs = analyze_pairs(self.md)
        for pair in pairs:
            print(f"  mode {pair.index + 1:>2}  {pair.frequency_hz:6.3f} Hz  ζ={pair.damping:6.3f}  {pair.mode_class.value}")
        self.pair = dominant_pair(participation_matrix(self.md), pairs, self.states)
        labels = [self.system.state_labels[k] for k in self.states]
        print(f"\n  🎯 {', '.join(labels)} participate most in mode {self.pair.index + 1}")
        self.wait_for_input("Continue to the assignable subspace...")

    def show_subspace(self):
        self.step("ASSIGNABLE SUBSPACE  null([A − λI, B])")
        self.sub = assignable_subspace(self.system, self.pair.eigenvalue)
        print(f"  λ = {self.pair.eigenvalue:.4f}")
        print(f"  d = {self.sub.d} eigenvector directions with q = {self.system.q} inputs")
        print(f"  residual ‖(A − λI)N1 + B N2‖ = {self.sub.residual(self.system.A, self.system.B):.2e}")
        self.wait_for_input("Continue to the blocking direction...")

    def show_direction(self):
        self.step("BLOCKING DIRECTION  N1[states] h = 0")
        h = participation_blocking_direction(self.sub, self.states, enforce_guarantee=False)
        v_hat = self.sub.N1 @ h
        for k, label in enumerate(self.system.state_labels):
            marker = "  ⛔" if k in self.states else ""
            print(f"  v̂[{label:<7}] = {abs(v_hat[k]):.3e}{marker}")
        self.result = synthesize_gain(self.md, self.pair, v_hat, self.sub.N2 @ h)
        self.wait_for_input("Continue to the gain...")

    def show_gain(self):
        self.step("GAIN  F V̂ = Z")
        print(f"  cond(V̂) = {self.result.cond_V_hat:.3e}")
        print(f"  imaginary residue = {self.result.imag_residue:.2e}")
        with np.printoptions(precision=2, suppress=True, linewidth=140):
            print(self.result.F)
        self.wait_for_input("Continue to verification...")

    def show_verification(self):
        self.step("INDEPENDENT VERIFICATION")
        target = BlockingTarget(TargetKind.PARTICIPATION, self.pair.eigenvalue, tuple(self.states))
        report = verify_blocking(self.system.A, self.system.B, self.system.C, self.result.raw_gain, [target])
        for name, ok in report.checks.items():
            print(f"  {'✅' if ok else '❌'} {name}")
        print(f"\n  spectrum shift          {report.spectrum_max_shift:.2e}")
        print(f"  blocked participation   {report.blocked_participation_max:.2e}")

    def run(self):
        print("\n" + "=" * 80)
        print("        EIGENBLOCK - PARTICIPATION BLOCKING WALKTHROUGH")
        print("=" * 80)
        self.show_modes()
        self.show_subspace()
        self.show_direction()
        self.show_gain()
        self.show_verification()
        print("\n" + "=" * 80)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--auto", action="store_true", help="Advance automatically")
    args = parser.parse_args()
    try:
        InteractiveBlockingDemo(auto_advance=args.auto).run()
    except KeyboardInterrupt:
        print("\n\n👋 Demo interrupted")
    except Exception as e:
        print(f"\n❌ Error: {e}")


if __name__ == "__main__":
    main()
