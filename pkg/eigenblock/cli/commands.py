"""
Command implementations.

Each command takes a validated RunConfig, writes its files under
config.out_dir and returns the process exit code. Library errors propagate
and are mapped to exit codes by the click group.
"""

import logging
from pathlib import Path
from typing import List, Optional

import click

from ..assign import BlockingRequest, BlockingResult, EigenstructureBlocker, load_gain, save_gain
from ..config import Tolerances
from ..errors import EXIT_OK, EXIT_VERIFICATION_FAILED, ValidationError, VerificationFailedError
from ..modal import modal_decomposition, observability_coefficients, participation_matrix
from ..model import (
    LtiSystem, StateLayout, build_heffron_phillips, load_heffron_params, load_system,
    machine_state_indices, read_json, save_system, synthetic_heffron_params
)
from ..model.io import parse_schema
from ..verify import verify_blocking
from .config import Command, PlanFile, RunConfig
from .reports import write_modes, write_observability, write_participation, write_report, write_shift

logger = logging.getLogger(__name__)

HEFFRON_STATES_PER_MACHINE = 4


def _status(message: str) -> None:
    click.echo(message, err=True)


def _require(path: Optional[Path], flag: str) -> Path:
    if path is None:
        raise click.UsageError(f"{flag} is required")
    return path


def _machine_states(system: LtiSystem, machine: int) -> List[int]:
    """0-based states of a 1-based machine in the Heffron by-variable ordering"""
    if system.n % HEFFRON_STATES_PER_MACHINE:
        raise ValidationError(
            f"--machine needs {HEFFRON_STATES_PER_MACHINE} states per machine, model has n={system.n}"
        )
    return machine_state_indices(
        machine - 1, system.n // HEFFRON_STATES_PER_MACHINE,
        HEFFRON_STATES_PER_MACHINE, StateLayout.BY_VARIABLE
    )


def _select_pair(blocker: EigenstructureBlocker, pair_index, pair_freq, window, states):
    if pair_index is not None:
        return blocker.select_pair(index=pair_index - 1)
    if pair_freq is not None:
        return blocker.select_pair(frequency_hz=pair_freq, window_hz=window)
    if states:
        return blocker.select_pair(states=states)
    raise click.UsageError("select a mode pair with --pair-index or --pair-freq")


def _blocker(config: RunConfig, base: Tolerances) -> EigenstructureBlocker:
    system = load_system(_require(config.model_path, "--model"))
    return EigenstructureBlocker(
        system,
        tolerances=config.tolerances(base),
        enforce_guarantee=not config.best_effort,
        seed=config.seed
    )


def write_block_outputs(out_dir: Path, blocker: EigenstructureBlocker, result: BlockingResult) -> None:
    """Gain file, verification report and before/after tables"""
    system = blocker.system
    save_gain(result, out_dir / "gain.json")
    write_report(result.verification, out_dir / "verification.json")

    after = modal_decomposition(blocker.closed_loop(result))
    write_participation(blocker.participation(), system.state_labels, out_dir / "participation_before.csv")
    write_participation(participation_matrix(after), system.state_labels, out_dir / "participation_after.csv")
    write_observability(blocker.observability(), out_dir / "observability_before.csv")
    write_observability(observability_coefficients(system.C, after), out_dir / "observability_after.csv")
    shift = blocker.participation_shift(result)
    write_shift(shift, out_dir / "participation_shift.csv")

    for target in result.targets:
        for k in target.states:
            mode, increase = shift.largest_increase(k)
            if increase > 0:
                _status(
                    f"state {system.state_labels[k]} now participates more in mode {mode + 1} "
                    f"(+{increase:.3g})"
                )


def _run_blocking(config: RunConfig, blocker: EigenstructureBlocker, action) -> int:
    try:
        result = action()
    except VerificationFailedError as exc:
        write_report(exc.report, config.out_dir / "verification.json")
        raise
    write_block_outputs(config.out_dir, blocker, result)
    _status(
        f"blocked {len(result.targets)} pair(s): cond(V̂)={result.cond_V_hat:.3e} "
        f"spectrum shift={result.spectrum_max_shift:.3e} -> {config.out_dir}"
    )
    return EXIT_OK


def cmd_analyze(config: RunConfig, base: Tolerances) -> int:
    """modes.csv, participation.csv and observability.csv for a model"""
    blocker = _blocker(config, base)
    analysis = blocker.analyze()
    out = config.out_dir
    write_modes(analysis["modes"], out / "modes.csv")
    write_participation(analysis["participation"], blocker.system.state_labels, out / "participation.csv")
    write_observability(analysis["observability"], out / "observability.csv")
    _status(
        f"{len(analysis['modes'])} modes, {len(analysis['pairs'])} oscillatory pair(s) -> {out}"
    )
    return EXIT_OK


def cmd_block(config: RunConfig, base: Tolerances) -> int:
    """block-participation and block-observability"""
    blocker = _blocker(config, base)
    system = blocker.system

    if config.command == Command.BLOCK_PARTICIPATION:
        states = _machine_states(system, config.machine) if config.machine else config.zero_based_states
        if not states:
            raise click.UsageError("give --states or --machine")
        pair = _select_pair(blocker, config.pair_index, config.pair_freq, config.pair_freq_window, states)
        return _run_blocking(config, blocker, lambda: blocker.block_participation(pair, states))

    if config.states or config.machine is not None:
        raise click.UsageError("block-observability takes no states")
    if config.all_inter_area:
        return _run_blocking(config, blocker, blocker.block_inter_area)
    pair = _select_pair(blocker, config.pair_index, config.pair_freq, config.pair_freq_window, None)
    return _run_blocking(config, blocker, lambda: blocker.block_observability(pair))


def plan_requests(blocker: EigenstructureBlocker, plan: PlanFile) -> List[BlockingRequest]:
    """Turn plan entries into requests against the open loop"""
    requests = []
    for entry in plan.root:
        pair = _select_pair(blocker, entry.pair_index, entry.pair_freq, entry.pair_freq_window, None)
        if entry.kind == "observability":
            requests.append(BlockingRequest.observability(pair))
            continue
        states = (
            _machine_states(blocker.system, entry.machine)
            if entry.machine is not None else [k - 1 for k in entry.states]
        )
        requests.append(BlockingRequest.participation(pair, states))
    return requests


def cmd_sequential(config: RunConfig, base: Tolerances) -> int:
    """Run a plan file as one blocking chain"""
    plan_path = _require(config.plan_path, "--plan")
    blocker = _blocker(config, base)
    plan = parse_schema(PlanFile, read_json(plan_path), str(plan_path))
    if not plan.root:
        raise ValidationError(f"plan {plan_path} has no stages")
    requests = plan_requests(blocker, plan)
    return _run_blocking(config, blocker, lambda: blocker.run_plan(requests))


def cmd_verify(config: RunConfig, base: Tolerances) -> int:
    """Verify a gain file against a model from the files alone"""
    system = load_system(_require(config.model_path, "--model"))
    gain = load_gain(_require(config.gain_path, "--gain")).check_against(system)
    report = verify_blocking(system.A, system.B, system.C, gain.F, gain.targets, config.tolerances(base))
    write_report(report, config.out_dir / "verification.json")
    if report.passed:
        _status(f"verification passed ({len(report.checks)} checks)")
        return EXIT_OK
    _status(f"verification failed: {', '.join(report.failed_checks())}")
    return EXIT_VERIFICATION_FAILED


def cmd_build_heffron(config: RunConfig, base: Tolerances) -> int:
    """Write the 3-machine Heffron-Phillips model file"""
    params = (
        load_heffron_params(config.params_path)
        if config.params_path else synthetic_heffron_params()
    )
    system = build_heffron_phillips(params, k5_in_exciter=config.k5_in_exciter)
    path = save_system(system, config.out_dir / "model.json")
    _status(f"Heffron-Phillips model n={system.n} q={system.q} p={system.p} -> {path}")
    return EXIT_OK


COMMANDS = {
    Command.ANALYZE: cmd_analyze,
    Command.BLOCK_PARTICIPATION: cmd_block,
    Command.BLOCK_OBSERVABILITY: cmd_block,
    Command.SEQUENTIAL: cmd_sequential,
    Command.VERIFY: cmd_verify,
    Command.BUILD_HEFFRON: cmd_build_heffron,
}


def run(config: RunConfig, base: Tolerances) -> int:
    logger.info("running %s", config.command.value)
    return COMMANDS[config.command](config, base)
