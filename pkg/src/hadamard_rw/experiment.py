"""
Run configuration and side-by-side simulation of both walks.

A config file is flat ``key = value`` text; ``#`` starts a comment. Complex
numbers are written ``a+bi`` (``1+0.5i``, ``-i``, ``2``). Example::

    d = 80
    n = 20
    start = 40
    init = rw-rows:1+0.5i,0,0,1-0.5i
    engine = both
"""

import json
import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, Optional, Tuple

import numpy as np

from . import analysis
from .bridge import canonical_embed, lift, quantum_distribution, quantum_distribution_from_rw
from .engine import (
    ConfigurationError,
    LatticeConfig,
    QuantumState,
    RwState,
    evolve_dense,
    init_quantum,
    init_rw,
    step_quantum,
    step_rw,
    trajectory,
)

__all__ = [
    "InitSpec",
    "ExperimentConfig",
    "ExperimentResult",
    "parse_complex",
    "format_complex",
    "parse_init",
    "load_config_file",
    "run_experiment",
    "write_csv",
    "write_json",
    "ENGINES",
]

ENGINES = ("matrix-free", "dense", "both")
INIT_MODES = ("quantum-coin", "rw-rows")
_INIT_ALIASES = {"qw": "quantum-coin", "rw": "rw-rows"}

_COMPLEX_RE = re.compile(
    r"""^\s*(?:
        (?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
        (?P<im1>[+-](?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)?
      | (?P<im2>[+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)
    )\s*$""",
    re.VERBOSE,
)


def _imag_part(text: str) -> float:
    body = text[:-1]
    if body in ("", "+"):
        return 1.0
    if body == "-":
        return -1.0
    return float(body)


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``bi`` or ``a+bi`` (also ``i``, ``-i``, ``a-i``)."""
    m = _COMPLEX_RE.match(text)
    if m is None:
        raise ConfigurationError(f"not a complex literal: {text!r}")
    if m.group("im2") is not None:
        return complex(0.0, _imag_part(m.group("im2")))
    real = float(m.group("re"))
    imag = _imag_part(m.group("im1")) if m.group("im1") else 0.0
    return complex(real, imag)


def format_complex(z: complex) -> str:
    """Inverse of :func:`parse_complex`, round-trip exact."""
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    sign = "-" if np.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


@dataclass(frozen=True)
class InitSpec:
    """Initial values at the start site: a coin pair or four chain rows."""

    mode: str
    values: Tuple[complex, ...]

    def __post_init__(self):
        if self.mode not in INIT_MODES:
            raise ConfigurationError(f"init mode must be one of {INIT_MODES}, got {self.mode!r}")
        need = 2 if self.mode == "quantum-coin" else 4
        if len(self.values) != need:
            raise ConfigurationError(f"{self.mode} takes {need} values, got {len(self.values)}")

    def __str__(self):
        return f"{self.mode}:" + ",".join(format_complex(v) for v in self.values)


def parse_init(text: str) -> InitSpec:
    """Parse ``quantum-coin:a,b`` or ``rw-rows:r1,r2,r3,r4`` (``qw:``/``rw:`` also accepted)."""
    mode, sep, rest = text.partition(":")
    mode = _INIT_ALIASES.get(mode.strip(), mode.strip())
    if not sep:
        raise ConfigurationError(f"init must look like 'mode:v1,v2,...', got {text!r}")
    values = tuple(parse_complex(v) for v in rest.split(","))
    return InitSpec(mode, values)


DEFAULT_INIT = InitSpec("rw-rows", (1 + 0.5j, 0j, 0j, 1 - 0.5j))


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Everything needed for one run. ``start=None`` means ``floor(d/2)``.
    """

    d: int = 80
    n: int = 20
    start: Optional[int] = None
    init: InitSpec = DEFAULT_INIT
    engine: str = "matrix-free"
    out_csv: Optional[str] = None
    out_json: Optional[str] = None
    out_svg: Optional[str] = None
    seed: int = 0

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise ConfigurationError(f"engine must be one of {ENGINES}, got {self.engine!r}")
        self.lattice  # validates d, start, n

    @property
    def lattice(self) -> LatticeConfig:
        start = self.d // 2 if self.start is None else self.start
        return LatticeConfig(self.d, start, self.n)

    def echo(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "start": self.lattice.start,
            "init": str(self.init),
            "engine": self.engine,
            "seed": self.seed,
        }

    def with_overrides(self, **kwargs) -> "ExperimentConfig":
        """Copy with every non-None keyword applied."""
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


_INT_KEYS = ("d", "n", "start", "seed")
_STR_KEYS = ("engine", "out_csv", "out_json", "out_svg")


def load_config_file(path) -> Dict[str, object]:
    """
    Read a ``key = value`` file into keyword arguments for
    :class:`ExperimentConfig`. Dashes in keys are treated as underscores.
    """
    out: Dict[str, object] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if not sep or not key:
            raise ConfigurationError(f"{path}:{lineno}: expected key = value")
        if key in _INT_KEYS:
            try:
                out[key] = int(value)
            except ValueError:
                raise ConfigurationError(f"{path}:{lineno}: {key} must be an integer") from None
        elif key in _STR_KEYS:
            out[key] = value
        elif key == "init":
            out[key] = parse_init(value)
        else:
            raise ConfigurationError(f"{path}:{lineno}: unknown key {key!r}")
    return out


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    quantum: QuantumState
    rw: RwState
    distributions: Dict[str, np.ndarray]
    report: analysis.RunReport
    residuals: Dict[str, float] = field(default_factory=dict)

    @property
    def rows(self) -> np.ndarray:
        """Chain populations as a ``4 × d`` array."""
        return self.rw.sites.T

    def to_dict(self) -> dict:
        out = self.report.to_dict()
        out["residuals"] = dict(self.residuals)
        out["config_echo"] = self.config.echo()
        return out


def _initial_states(cfg: ExperimentConfig) -> Tuple[QuantumState, RwState]:
    lattice = cfg.lattice
    if cfg.init.mode == "rw-rows":
        rw0 = init_rw(lattice, cfg.init.values)
        return lift(rw0).to_quantum(), rw0
    q0 = init_quantum(lattice, cfg.init.values)
    return q0, canonical_embed(q0)


def _max_diff(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def _evolve_tracked(state, n, stepper):
    # streams the trajectory so only the latest state is held
    last = [state]

    def states():
        for s in trajectory(state, n, stepper):
            last[0] = s
            yield s

    leak = analysis.leakage(states())
    return last[0], leak


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """
    Evolve the quantum walk and the chain ``cfg.n`` steps from the same
    initial condition and compare the coin distributions.

    The matrix-free engine also tracks boundary leakage step by step. With
    ``engine="both"`` the dense oracle is run as well and the largest
    entrywise disagreement is recorded under ``residuals["engine"]``.
    """
    q0, rw0 = _initial_states(cfg)
    n = cfg.n
    residuals: Dict[str, float] = {}
    leak_qw = leak_rw = 0.0

    if cfg.engine in ("matrix-free", "both"):
        q_n, leak_qw = _evolve_tracked(q0, n, step_quantum)
        rw_n, leak_rw = _evolve_tracked(rw0, n, step_rw)
    if cfg.engine in ("dense", "both"):
        q_dense = evolve_dense(q0, n)
        rw_dense = evolve_dense(rw0, n)
        if cfg.engine == "dense":
            q_n, rw_n = q_dense, rw_dense
            leak_qw = q0.norm2() - q_n.norm2()
            leak_rw = abs(rw0.total() - rw_n.total())
        else:
            residuals["engine"] = max(_max_diff(q_n.amp, q_dense.amp),
                                      _max_diff(rw_n.pop, rw_dense.pop))

    p0_qw, p1_qw = quantum_distribution(q_n)
    p0_rw, p1_rw = quantum_distribution_from_rw(rw_n, n)
    residuals["qw_vs_rw"] = max(_max_diff(p0_qw, p0_rw), _max_diff(p1_qw, p1_rw))

    dists = {"p0_qw": p0_qw, "p1_qw": p1_qw, "p0_rw": p0_rw, "p1_rw": p1_rw}
    rows = rw_n.sites.T
    if not np.any(rows.imag):
        for r in range(4):
            dists[f"row{r + 1}"] = rows[r].real.copy()

    mom = {}
    for name, dist in dists.items():
        try:
            mom[name] = analysis.moments(dist)
        except analysis.UndefinedMomentsError:
            continue
    report = analysis.RunReport(
        energy=analysis.energy(p0_rw, p1_rw),
        population=analysis.population(rw_n),
        leak=float(leak_qw),
        leak_rw=float(leak_rw),
        moments=mom,
    )
    return ExperimentResult(cfg, q_n, rw_n, dists, report, residuals)


CSV_COLUMNS = ("p0_qw", "p1_qw", "p0_rw", "p1_rw")
ROW_COLUMNS = ("row1", "row2", "row3", "row4")


def write_csv(result: ExperimentResult, path) -> None:
    """
    Per-site table ``site,p0_qw,p1_qw,p0_rw,p1_rw`` with 17 significant
    digits and LF endings. Chain rows ``row1..row4`` are appended when they
    are real.
    """
    cols = list(CSV_COLUMNS)
    if all(c in result.distributions for c in ROW_COLUMNS):
        cols += ROW_COLUMNS
    lines = [",".join(("site", *cols))]
    table = np.column_stack([result.distributions[c] for c in cols])
    for site, values in enumerate(table, 1):
        lines.append(",".join([str(site)] + [f"{v:.17g}" for v in values]))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_json(result: ExperimentResult, path) -> None:
    with open(path, "w", newline="\n") as fh:
        json.dump(result.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
