from __future__ import annotations

import json
import os
from typing import Dict, Optional, Union

import numpy as np

from staged_reduction.common.errors import ConfigError, StructuralError
from staged_reduction.entities.algebra.lie_algebra import LieAlgebraSpec
from staged_reduction.entities.disk.disk_params import DiskParams
from staged_reduction.entities.dynamics.ep_state import EPState
from staged_reduction.entities.dynamics.quadratic_lagrangian import QuadraticLagrangian
from staged_reduction.entities.stages.stage_chain import InvariantMetric, StageChain
from staged_reduction.enums import ModelEnum, SystemEnum

CONFIGS_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))),
                           "examples", "configs")


def shipped_config_path(scenario: str) -> str:
    """ path of the shipped config of a scenario; dashes in the name map to underscores in the file name """
    return os.path.join(CONFIGS_DIR, f"{scenario.replace('-', '_')}.json")


def _without_comments(json_dict: Dict) -> Dict:
    return {key: value for key, value in json_dict.items() if not key.startswith("_")}


class RunConfig:
    def __init__(self, scenario: str, model: ModelEnum, h: float, t_end: float,
                 algebra: Optional[LieAlgebraSpec] = None, chain: Optional[StageChain] = None,
                 metric: Optional[InvariantMetric] = None, lagrangian: Optional[QuadraticLagrangian] = None,
                 constraint: Optional[Dict] = None, initial_state: Optional[Dict] = None,
                 system: Optional[str] = None, disk_params: Optional[DiskParams] = None,
                 oracle_h: Optional[float] = None, tolerances: Optional[Dict[str, float]] = None,
                 output: Optional[str] = None) -> None:
        """
        Everything a command needs to run one scenario.

        Algebra runs (model=ModelEnum.algebra) describe a Lie algebra with a chain of ideals, an invariant metric
        and optionally a quadratic Lagrangian and a constraint subspace; bundle runs (model=ModelEnum.bundle)
        name a built-in system.
        :param scenario: name of the scenario
        :param model: kind of dynamics
        :param h: RK4 step in seconds
        :param t_end: final time in seconds
        :param algebra: Lie algebra (algebra runs)
        :param chain: chain of ideals (algebra runs)
        :param metric: invariant metric (algebra runs; identity when None)
        :param lagrangian: quadratic Lagrangian on the algebra (algebra runs, needed to simulate)
        :param constraint: constraint document, interpreted with ConstraintSubspace.from_json
        :param initial_state: initial state document ({"v": [...]} for algebra runs; for bundle runs the fields of
        DiskState or LocalState)
        :param system: name of a built-in system (bundle runs)
        :param disk_params: parameters of Euler's disk (disk systems)
        :param oracle_h: step of the oracle path in comparisons (must equal h when given)
        :param tolerances: thresholds of the comparison
        :param output: path of the csv output
        """
        self.scenario = str(scenario)
        self.model = model
        self.h = float(h)
        self.t_end = float(t_end)
        self.algebra = algebra
        self.chain = chain
        self.metric = metric if metric is not None or algebra is None else InvariantMetric.identity(algebra.dim)
        self.lagrangian = lagrangian
        self.constraint = constraint
        self.initial_state = initial_state
        self.system = system
        self.disk_params = disk_params if disk_params is not None else DiskParams()
        self.oracle_h = None if oracle_h is None else float(oracle_h)
        self.tolerances = dict(tolerances) if tolerances is not None else {}
        self.output = output
        self._validate()

    def _validate(self) -> None:
        if not isinstance(self.model, ModelEnum):
            raise TypeError(f"model should be a ModelEnum, got {self.model!r}")
        if not self.h > 0 or not np.isfinite(self.h):
            raise ConfigError(f"integrator.h must be a positive number, got {self.h}")
        if not self.t_end > 0 or not np.isfinite(self.t_end):
            raise ConfigError(f"integrator.t_end must be a positive number, got {self.t_end}")
        if self.oracle_h is not None and not self.oracle_h > 0:
            raise ConfigError(f"integrator.oracle_h must be a positive number, got {self.oracle_h}")
        if self.model == ModelEnum.algebra:
            self._validate_algebra_run()
        else:
            self._validate_bundle_run()

    def _validate_algebra_run(self) -> None:
        if self.algebra is None or self.chain is None:
            raise ConfigError(f"scenario '{self.scenario}': an algebra run needs the fields 'algebra' and 'chain'")
        try:
            self.chain.check_dim(self.algebra.dim)
        except StructuralError as e:
            raise ConfigError(f"chain: {e}")
        if self.metric.dim != self.algebra.dim:
            raise ConfigError(f"metric has dimension {self.metric.dim} while the algebra has {self.algebra.dim}")
        if self.lagrangian is not None and self.lagrangian.dim != self.algebra.dim:
            raise ConfigError(f"lagrangian.mass has dimension {self.lagrangian.dim} while the algebra has "
                              f"{self.algebra.dim}")
        if self.initial_state is not None:
            if "v" not in self.initial_state:
                raise ConfigError("initial_state of an algebra run should have the field 'v'")
            if len(self.initial_state["v"]) != self.algebra.dim:
                raise ConfigError(f"initial_state.v should have {self.algebra.dim} entries")

    def _validate_bundle_run(self) -> None:
        if self.system not in [system.value for system in SystemEnum]:
            raise ConfigError(f"scenario '{self.scenario}': unknown system {self.system!r}, expected one of "
                              f"{[system.value for system in SystemEnum]}")

    @property
    def is_disk(self) -> bool:
        return self.system in [SystemEnum.disk.value, SystemEnum.disk_one_stage.value]

    def ep_state(self) -> EPState:
        if self.initial_state is None:
            raise ConfigError(f"scenario '{self.scenario}' has no initial_state")
        return EPState.from_json(self.initial_state)

    def override(self, h: Optional[float] = None, t_end: Optional[float] = None,
                 output: Optional[str] = None) -> None:
        """ replace integrator settings or the output path (command-line flags) """
        if h is not None:
            self.h = float(h)
        if t_end is not None:
            self.t_end = float(t_end)
        if output is not None:
            self.output = output
        self._validate()

    def to_json(self) -> Dict:
        """get dictionary structure that can be stored as json with json.dumps()"""
        json_dict = {"scenario": self.scenario, "model": self.model.value,
                     "integrator": {"h": self.h, "t_end": self.t_end}}
        if self.oracle_h is not None:
            json_dict["integrator"]["oracle_h"] = self.oracle_h
        if self.model == ModelEnum.algebra:
            json_dict.update(algebra=self.algebra.to_json(), chain=self.chain.to_json(), metric=self.metric.to_json())
            if self.lagrangian is not None:
                json_dict["lagrangian"] = {"mass": self.lagrangian.to_json()}
            if self.constraint is not None:
                json_dict["constraint"] = self.constraint
        else:
            json_dict.update(system=self.system, disk=self.disk_params.to_json())
        if self.initial_state is not None:
            json_dict["initial_state"] = self.initial_state
        if self.tolerances:
            json_dict["tolerances"] = dict(self.tolerances)
        if self.output is not None:
            json_dict["output"] = self.output
        return json_dict

    @staticmethod
    def from_json(config_dict: Dict, base_dir: str = ".") -> RunConfig:
        """
        Loading a run configuration from json (expected same json structure as generated with to_json). The
        algebra is either an inline algebra document or the path of an algebra file, relative to base_dir.
        Keys starting with an underscore are comments.
        :param config_dict: configuration document
        :param base_dir: directory against which relative file references are resolved
        :return: RunConfig object
        """
        if not isinstance(config_dict, dict):
            raise ConfigError("a configuration should be a json object")
        config_dict = _without_comments(config_dict)
        for key in ["scenario", "integrator"]:
            if key not in config_dict:
                raise ConfigError(f"configuration misses the field '{key}'")
        integrator = config_dict["integrator"]
        if not isinstance(integrator, dict) or "h" not in integrator or "t_end" not in integrator:
            raise ConfigError("integrator should be an object with the fields 'h' and 't_end'")
        try:
            model = ModelEnum(config_dict.get("model", ModelEnum.algebra.value))
        except ValueError:
            raise ConfigError(f"model should be one of {[model.value for model in ModelEnum]}, "
                              f"got {config_dict.get('model')!r}")
        kwargs = dict(scenario=config_dict["scenario"], model=model, h=_number(integrator, "h", "integrator"),
                      t_end=_number(integrator, "t_end", "integrator"), initial_state=config_dict.get("initial_state"),
                      tolerances=config_dict.get("tolerances"), output=config_dict.get("output"))
        if "oracle_h" in integrator:
            kwargs["oracle_h"] = _number(integrator, "oracle_h", "integrator")

        if model == ModelEnum.algebra:
            if "algebra" not in config_dict or "chain" not in config_dict:
                raise ConfigError("an algebra run needs the fields 'algebra' and 'chain'")
            algebra = _load_algebra(config_dict["algebra"], base_dir=base_dir)
            kwargs.update(algebra=algebra, constraint=config_dict.get("constraint"))
            kwargs["chain"] = _located("chain", lambda: StageChain.from_json(config_dict["chain"]))
            if "metric" in config_dict:
                kwargs["metric"] = _located("metric", lambda: InvariantMetric.from_json(config_dict["metric"],
                                                                                         algebra.dim))
            if "lagrangian" in config_dict:
                lagrangian = config_dict["lagrangian"]
                if not isinstance(lagrangian, dict) or "mass" not in lagrangian:
                    raise ConfigError("lagrangian should be an object with the field 'mass'")
                kwargs["lagrangian"] = _located("lagrangian.mass", lambda: QuadraticLagrangian.from_json(
                    lagrangian["mass"], algebra.dim))
        else:
            kwargs["system"] = config_dict.get("system", config_dict["scenario"])
            if "disk" in config_dict:
                kwargs["disk_params"] = _located("disk", lambda: DiskParams.from_json(config_dict["disk"]))
        return RunConfig(**kwargs)

    @staticmethod
    def from_json_file(json_path: str) -> RunConfig:
        """
        Loading a run configuration from a json file
        :param json_path: path to json file
        :return: RunConfig object
        """
        try:
            with open(json_path, "r") as f:
                json_dict = json.load(f)
        except OSError as e:
            raise ConfigError(f"{json_path}: cannot read the configuration ({e.strerror})")
        except json.JSONDecodeError as e:
            raise ConfigError(f"{json_path}: line {e.lineno}, column {e.colno}: {e.msg}")
        try:
            return RunConfig.from_json(json_dict, base_dir=os.path.dirname(os.path.abspath(json_path)))
        except ConfigError as e:
            raise ConfigError(f"{json_path}: {e}")

    def __repr__(self):
        return f"RunConfig(scenario='{self.scenario}', model={self.model.value}, h={self.h}, t_end={self.t_end})"


def _number(section: Dict, key: str, location: str) -> float:
    value = section[key]
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"{location}.{key} should be a number, got {value!r}")
    return float(value)


def _located(location: str, load):
    """ run a loader and report its structural errors as configuration errors at the given location """
    try:
        return load()
    except (StructuralError, ValueError, TypeError) as e:
        raise ConfigError(f"{location}: {e}")


def _load_algebra(algebra_spec: Union[str, Dict], base_dir: str) -> LieAlgebraSpec:
    if isinstance(algebra_spec, str):
        path = algebra_spec if os.path.isabs(algebra_spec) else os.path.join(base_dir, algebra_spec)
        if not os.path.isfile(path):
            raise ConfigError(f"algebra: file {path} does not exist")
        try:
            with open(path, "r") as f:
                algebra_dict = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"algebra: {path}: line {e.lineno}, column {e.colno}: {e.msg}")
        return _located(f"algebra ({path})", lambda: LieAlgebraSpec.from_json(algebra_dict))
    return _located("algebra", lambda: LieAlgebraSpec.from_json(algebra_spec))
