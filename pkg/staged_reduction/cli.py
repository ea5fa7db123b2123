"""
Command-line interface: staged-reduction {validate, bracket, simulate, compare}.

Exit codes: 0 when the command succeeds (and every check passes), 1 for a failed check or an aborted simulation, 2 for
an invalid invocation or configuration.
"""
import argparse
import json
import logging
import os
import sys
from functools import partial
from typing import Callable, List, Optional, Tuple

import numpy as np

from staged_reduction.common.errors import ConfigError, ConstraintViolation, IntegrationAborted, \
    InvariantViolation, SingularSystemError, StructuralError
from staged_reduction.disk.disk_comparison import compare_with_oracle
from staged_reduction.disk.disk_oracle import oracle_trajectory_table, simulate_oracle
from staged_reduction.disk.disk_system import disk_state_from_json, THETA_MARGIN
from staged_reduction.entities.bundle.local_state import LocalState
from staged_reduction.entities.bundle.trivial_bundle_system import TrivialBundleSystem
from staged_reduction.entities.config.run_config import RunConfig, shipped_config_path
from staged_reduction.entities.disk.disk_state import DiskState, FullDiskState
from staged_reduction.entities.dynamics.constraint_subspace import ConstraintSubspace
from staged_reduction.entities.output.trajectory_table import TrajectoryTable
from staged_reduction.entities.stages.staged_structure import StagedStructure
from staged_reduction.enums import ModelEnum, SystemEnum
from staged_reduction.local_bundle.lagrange_poincare import local_trajectory_table, simulate_system
from staged_reduction.local_bundle.registry import build_system, initial_state_from_json
from staged_reduction.reduced_dynamics.ep_simulation import ep_trajectory_table, simulate_ep
from staged_reduction.reduced_dynamics.integrator import Trajectory
from staged_reduction.validate_structures.validate import validate_all

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="staged-reduction",
                                     description="Symmetry reduction by stages: structure checks and simulations")
    parser.add_argument("--verbose", action="store_true", help="log progress (level INFO)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_run_arguments(subparser: argparse.ArgumentParser) -> None:
        subparser.add_argument("--config", help="path of a json run configuration")
        subparser.add_argument("--scenario", help="name of a shipped configuration (used when --config is absent)")

    add_run_arguments(subparsers.add_parser("validate", help="check the algebra, the chain of ideals and the "
                                                             "bracket by stages"))

    bracket_parser = subparsers.add_parser("bracket", help="bracket and bracket by stages of two vectors")
    add_run_arguments(bracket_parser)
    bracket_parser.add_argument("--u", required=True, help="comma separated coordinates of the first vector")
    bracket_parser.add_argument("--v", required=True, help="comma separated coordinates of the second vector")

    for command, help_text in [("simulate", "integrate the reduced equations and write a csv trajectory"),
                               ("compare", "compare the reduced simulation of the disk with the full-space oracle")]:
        subparser = subparsers.add_parser(command, help=help_text)
        add_run_arguments(subparser)
        subparser.add_argument("--h", type=float, help="RK4 step in seconds")
        subparser.add_argument("--t-end", type=float, help="final time in seconds")
        if command == "simulate":
            subparser.add_argument("--out", help="path of the csv output")
            subparser.add_argument("--oracle", action="store_true",
                                   help="integrate the full constrained disk instead (writes multiplier columns)")
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    if args.config is not None:
        config = RunConfig.from_json_file(args.config)
    elif args.scenario is not None:
        path = shipped_config_path(args.scenario)
        if not os.path.isfile(path):
            raise ConfigError(f"no shipped configuration for scenario '{args.scenario}'")
        config = RunConfig.from_json_file(path)
    else:
        raise ConfigError("either --config or --scenario is required")
    config.override(h=getattr(args, "h", None), t_end=getattr(args, "t_end", None), output=getattr(args, "out", None))
    return config


def parse_vector(text: str, dim: int, flag: str) -> np.ndarray:
    try:
        vector = np.array([float(value) for value in text.split(",")])
    except ValueError:
        raise ConfigError(f"{flag} should be a comma separated list of numbers, got '{text}'")
    if vector.shape != (dim,):
        raise ConfigError(f"{flag} should have {dim} coordinates, got {len(vector)}")
    return vector


def staged_structure(config: RunConfig) -> StagedStructure:
    if config.model == ModelEnum.bundle:
        return build_bundle_system(config).staged
    return StagedStructure(alg=config.algebra, chain=config.chain, metric=config.metric)


def build_bundle_system(config: RunConfig) -> TrivialBundleSystem:
    return build_system(config.system, disk_params=config.disk_params)


def bundle_initial_state(config: RunConfig, system: TrivialBundleSystem) -> LocalState:
    try:
        state = initial_state_from_json(system, config.initial_state, disk_params=config.disk_params)
    except (ValueError, StructuralError) as e:
        raise ConfigError(f"initial_state: {e}")
    if not system.inside_chart(state.x):
        raise ConfigError(f"initial_state: x={state.x.tolist()} lies outside the chart of '{system.name}'")
    return state


def disk_state(config: RunConfig) -> DiskState:
    if config.initial_state is None:
        state = build_bundle_system(config).initial_state
        return DiskState(theta=state.x[0], phi=state.x[1], thetadot=state.xdot[0], phidot=state.xdot[1],
                         eta01=state.c[0], r=config.disk_params.r)
    try:
        return disk_state_from_json(config.disk_params, config.initial_state)
    except ValueError as e:
        raise ConfigError(f"initial_state: {e}")


def output_path(config: RunConfig) -> str:
    return config.output if config.output is not None else f"{config.scenario}.csv"


def write_table(table: TrajectoryTable, csv_path: str) -> None:
    table.to_csv(csv_path)
    logging.info(f"wrote {len(table)} samples to {csv_path}")
    print(csv_path)


def cmd_validate(config: RunConfig) -> int:
    if config.model == ModelEnum.bundle:
        staged = build_bundle_system(config).staged
        alg, chain, metric = staged.alg, staged.chain, staged.metric
    else:
        alg, chain, metric = config.algebra, config.chain, config.metric
    reports = validate_all(alg=alg, chain=chain, metric=metric)
    for report in reports:
        print(report)
    passed = all(report.passed for report in reports)
    print(f"max residual: {max(report.residual for report in reports):.3e}")
    return EXIT_OK if passed else EXIT_FAILURE


def cmd_bracket(config: RunConfig, u_text: str, v_text: str) -> int:
    staged = staged_structure(config)
    u = parse_vector(u_text, staged.dim, "--u")
    v = parse_vector(v_text, staged.dim, "--v")
    result = {"u": u.tolist(), "v": v.tolist(), "bracket": staged.alg.bracket(u, v).tolist(),
              "bracket_by_stages": staged.bracket_by_stages(u, v).tolist()}
    print(json.dumps(result, indent=2))
    return EXIT_OK


def _algebra_run(config: RunConfig) -> Tuple[Callable[[], Trajectory], Callable[[Trajectory], TrajectoryTable]]:
    if config.lagrangian is None:
        raise ConfigError(f"scenario '{config.scenario}' has no lagrangian to simulate")
    staged = staged_structure(config)
    constraint = None
    if config.constraint is not None:
        try:
            constraint = ConstraintSubspace.from_json(config.constraint, staged)
        except (StructuralError, ValueError) as e:
            raise ConfigError(f"constraint: {e}")
    state = config.ep_state()

    def run() -> Trajectory:
        return simulate_ep(staged, config.lagrangian, state, t_end=config.t_end, h=config.h, constraint=constraint)

    return run, partial(ep_trajectory_table, config.lagrangian)


def _oracle_run(config: RunConfig) -> Tuple[Callable[[], Trajectory], Callable[[Trajectory], TrajectoryTable]]:
    full_state = FullDiskState.from_reduced(disk_state(config))

    def run() -> Trajectory:
        return simulate_oracle(config.disk_params, full_state, t_end=config.t_end, h=config.h,
                               theta_margin=THETA_MARGIN)

    return run, partial(oracle_trajectory_table, config.disk_params)


def _bundle_run(config: RunConfig) -> Tuple[Callable[[], Trajectory], Callable[[Trajectory], TrajectoryTable]]:
    system = build_bundle_system(config)
    state = bundle_initial_state(config, system)

    def run() -> Trajectory:
        return simulate_system(system, t_end=config.t_end, h=config.h, initial_state=state)

    return run, partial(local_trajectory_table, system)


def cmd_simulate(config: RunConfig, oracle: bool = False) -> int:
    """ write the trajectory (or, when the integration aborts, the part that was computed) as csv """
    if config.model == ModelEnum.algebra:
        run, make_table = _algebra_run(config)
    elif oracle:
        if not config.is_disk:
            print(f"error: system '{config.system}' has no full-space oracle", file=sys.stderr)
            return EXIT_FAILURE
        run, make_table = _oracle_run(config)
    else:
        run, make_table = _bundle_run(config)

    csv_path = output_path(config)
    try:
        trajectory = run()
    except IntegrationAborted as e:
        logging.error(f"simulation of '{config.scenario}' aborted: {e}")
        if e.trajectory is not None:
            write_table(make_table(e.trajectory), csv_path)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    write_table(make_table(trajectory), csv_path)
    return EXIT_OK


def cmd_compare(config: RunConfig) -> int:
    if config.model != ModelEnum.bundle or not config.is_disk:
        logging.error(f"scenario '{config.scenario}' has no full-space oracle")
        print(f"error: scenario '{config.scenario}' has no full-space oracle", file=sys.stderr)
        return EXIT_FAILURE
    if config.oracle_h is not None and config.oracle_h != config.h:
        raise ConfigError(f"the reduced path (h={config.h}) and the oracle (h={config.oracle_h}) must use the same "
                          f"step to be compared sample by sample")
    try:
        summary = compare_with_oracle(config.disk_params, disk_state(config), t_end=config.t_end, h=config.h,
                                      one_stage=config.system == SystemEnum.disk_one_stage.value,
                                      tolerances=config.tolerances)
    except IntegrationAborted as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    print(json.dumps(summary.to_json(), indent=2))
    return EXIT_OK if summary.passed else EXIT_FAILURE


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(levelname)s %(message)s")
    try:
        config = load_config(args)
        if args.command == "validate":
            return cmd_validate(config)
        if args.command == "bracket":
            return cmd_bracket(config, args.u, args.v)
        if args.command == "simulate":
            return cmd_simulate(config, oracle=args.oracle)
        return cmd_compare(config)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (StructuralError, InvariantViolation, ConstraintViolation, SingularSystemError) as e:
        logging.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
