"""JSON scenario documents and command-line run configuration.

Document keys (all optional when a built-in scenario supplies the maneuver)::

    {
      "name": "A",
      "sigma0": [0, 0, 0],
      "sigma_d": [0.1, 0.2, -0.3],
      "J_diag": [114, 86, 87],            # or "J_full": [[...], [...], [...]]
      "disturbance": {"scale": 0.01, "freq": 0.05},
      "dt": 0.001,
      "duration": 20,
      "ufsmc": {"alpha": 2, "gamma1": 30, "eps1": 0.5, "eps2": 0.0001},
      "smc": {"k": 1.5, "lambda": -0.5, "eps": 0.5}
    }
"""

import json
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Optional, TypeVar

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from mrpsim.common.exceptions import ConfigError
from mrpsim.controllers.baseline_smc import SmcParams
from mrpsim.controllers.ufsmc import GAMMA1_MARGIN, UfsmcParams
from mrpsim.dynamics import DisturbanceModel, InertiaMatrix, StepConfig
from mrpsim.harness.scenario import BUILTIN_SCENARIOS, Scenario, SimulationConfig, builtin_scenario

DOCUMENT_KEYS = {
    "name",
    "sigma0",
    "sigma_d",
    "J_diag",
    "J_full",
    "disturbance",
    "dt",
    "duration",
    "ufsmc",
    "smc",
}
DISTURBANCE_KEYS = {"scale": "scale", "freq": "frequency"}

T = TypeVar("T")


def _key_path(prefix: str, loc: tuple) -> str:
    parts = [prefix] if prefix else []
    parts.extend(str(p) for p in loc)
    return ".".join(parts)


def _validated(prefix: str, build: Callable[[], T]) -> T:
    """Run a model constructor, re-raising validation failures with their key path."""
    try:
        return build()
    except ValidationError as exc:
        err = exc.errors()[0]
        raise ConfigError(err["msg"], _key_path(prefix, err["loc"])) from exc


def _section(doc: dict[str, Any], key: str) -> dict[str, Any]:
    value = doc.get(key, {})
    if not isinstance(value, dict):
        raise ConfigError("expected an object", key)
    return value


def _inertia(doc: dict[str, Any], default: InertiaMatrix) -> InertiaMatrix:
    if "J_diag" in doc and "J_full" in doc:
        raise ConfigError("give either J_diag or J_full, not both", "J_full")
    if "J_diag" in doc:
        diag = doc["J_diag"]
        if not isinstance(diag, list) or len(diag) != 3:
            raise ConfigError("expected three principal moments", "J_diag")
        return _validated("J_diag", lambda: InertiaMatrix.diagonal(*diag))
    if "J_full" in doc:
        return _validated("J_full", lambda: InertiaMatrix(matrix=doc["J_full"]))
    return default


def _disturbance(doc: dict[str, Any], default: DisturbanceModel) -> DisturbanceModel:
    section = _section(doc, "disturbance")
    unknown = set(section) - set(DISTURBANCE_KEYS)
    if unknown:
        raise ConfigError("unknown key", f"disturbance.{sorted(unknown)[0]}")
    values = default.model_dump()
    values.update({DISTURBANCE_KEYS[k]: v for k, v in section.items()})
    return _validated("disturbance", lambda: DisturbanceModel(**values))


def build_config(doc: dict[str, Any], scenario: Optional[str] = None) -> SimulationConfig:
    """Validate a scenario document on top of an optional built-in scenario.

    Args:
        doc: Parsed JSON object.
        scenario: Built-in scenario supplying defaults for missing keys.

    Raises:
        ConfigError: On unknown keys or values violating parameter invariants,
            naming the offending key path.
    """
    if not isinstance(doc, dict):
        raise ConfigError("configuration document must be a JSON object")
    unknown = set(doc) - DOCUMENT_KEYS
    if unknown:
        raise ConfigError("unknown key", sorted(unknown)[0])

    base = builtin_scenario(scenario) if scenario is not None else None
    if base is None and "sigma_d" not in doc:
        raise ConfigError("required without a built-in scenario", "sigma_d")

    defaults = base or Scenario(sigma_d=(0.0, 0.0, 0.0))
    step = _validated(
        "",
        lambda: StepConfig(
            dt=doc.get("dt", defaults.step.dt), duration=doc.get("duration", defaults.step.duration)
        ),
    )
    built = _validated(
        "",
        lambda: Scenario(
            name=doc.get("name", defaults.name),
            sigma0=doc.get("sigma0", defaults.sigma0),
            sigma_d=doc.get("sigma_d", defaults.sigma_d),
            J=_inertia(doc, defaults.J),
            disturbance=_disturbance(doc, defaults.disturbance),
            step=step,
        ),
    )
    ufsmc = _validated("ufsmc", lambda: UfsmcParams.model_validate(_section(doc, "ufsmc")))
    smc = _validated("smc", lambda: SmcParams.model_validate(_section(doc, "smc")))
    return assemble(built, ufsmc, smc)


def assemble(
    scenario: Scenario, ufsmc: UfsmcParams, smc: SmcParams, sign_control: bool = False
) -> SimulationConfig:
    """Combine validated parts, checking ``gamma1`` against the disturbance bound."""
    bound = scenario.disturbance.bound
    if ufsmc.gamma1 < GAMMA1_MARGIN * bound:
        raise ConfigError(
            f"{ufsmc.gamma1} is below {GAMMA1_MARGIN} x disturbance bound {bound:.6g}",
            "ufsmc.gamma1",
        )
    return _validated(
        "",
        lambda: SimulationConfig(
            scenario=scenario, ufsmc=ufsmc, smc=smc, sign_control=sign_control
        ),
    )


def parse_config(path: Path, scenario: Optional[str] = None) -> SimulationConfig:
    """Read and validate a JSON scenario document.

    Args:
        path: JSON file.
        scenario: Built-in scenario whose values fill missing keys.

    Raises:
        ConfigError: If the file cannot be read, is not valid JSON, or fails
            validation.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc.msg} (line {exc.lineno})") from exc
    return build_config(doc, scenario)


class ControllerChoice(str, Enum):
    UFSMC = "ufsmc"
    SMC = "smc"
    BOTH = "both"


class RunConfig(BaseModel):
    """Resolved command-line options of one invocation.

    Attributes:
        scenario: Built-in name or path to a JSON scenario document.
        config_path: Optional JSON document layered over a built-in scenario.
        controller: Controller(s) to run.
        out_dir: Directory receiving telemetry.
        overrides: Gain and step overrides keyed by parameter name.
    """

    model_config = ConfigDict(frozen=True)

    scenario: str = "A"
    config_path: Optional[Path] = None
    controller: ControllerChoice = ControllerChoice.UFSMC
    out_dir: Path = Path("./mrpsim-out")
    overrides: dict[str, float] = Field(default_factory=dict)
    sign_control: bool = False

    @field_validator("config_path")
    @classmethod
    def validate_config_path(cls, v: Optional[Path]) -> Optional[Path]:
        if v is not None and not v.is_file():
            raise ValueError(f"config file {v} does not exist")
        return v

    def simulation_config(self) -> SimulationConfig:
        """Build the validated simulation configuration.

        Raises:
            ConfigError: For unknown scenarios, unreadable or invalid
                documents, and overrides violating parameter invariants.
        """
        name = self.scenario
        is_builtin = name.strip().upper() in BUILTIN_SCENARIOS
        if not is_builtin and Path(name).is_file():
            base = parse_config(Path(name))
        elif self.config_path is not None:
            base = parse_config(self.config_path, name)
        else:
            base = build_config({}, name)
        return apply_overrides(base, self.overrides, self.sign_control)


UFSMC_OVERRIDES = {"alpha": "alpha", "gamma1": "gamma1", "eps1": "epsilon1", "eps2": "epsilon2"}
SMC_OVERRIDES = {"k": "k", "lam": "lambda_", "eps": "epsilon"}
STEP_OVERRIDES = {"dt", "duration"}


def apply_overrides(
    config: SimulationConfig, overrides: dict[str, float], sign_control: bool = False
) -> SimulationConfig:
    """Re-validate ``config`` with command-line overrides applied.

    Raises:
        ConfigError: On unknown override names or invalid values.
    """
    overrides = {k: v for k, v in overrides.items() if v is not None}
    unknown = set(overrides) - set(UFSMC_OVERRIDES) - set(SMC_OVERRIDES) - STEP_OVERRIDES
    if unknown:
        raise ConfigError("unknown override", sorted(unknown)[0])

    ufsmc_values = config.ufsmc.model_dump()
    smc_values = config.smc.model_dump()
    for key, value in overrides.items():
        if key in UFSMC_OVERRIDES:
            ufsmc_values[UFSMC_OVERRIDES[key]] = value
        elif key in SMC_OVERRIDES:
            smc_values[SMC_OVERRIDES[key]] = value
    step = config.scenario.step
    step_values = {
        "dt": overrides.get("dt", step.dt),
        "duration": overrides.get("duration", step.duration),
    }

    ufsmc = _validated("ufsmc", lambda: UfsmcParams(**ufsmc_values))
    smc = _validated("smc", lambda: SmcParams(**smc_values))
    new_step = _validated("", lambda: StepConfig(**step_values))
    scenario = config.scenario.model_copy(update={"step": new_step})
    return assemble(scenario, ufsmc, smc, sign_control or config.sign_control)
