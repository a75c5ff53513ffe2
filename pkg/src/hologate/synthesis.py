"""Compose the one-parameter holonomic gate family into arbitrary one-qubit
unitaries, and search for pulse sequences that hit a target gate.

The composed product is tracked as a real quaternion (w, v) with
U = w I + i v.sigma, which makes one objective evaluation a handful of float
operations; the search itself is multi-start Nelder-Mead on [0, pi/2]^N with
out-of-range trial points folded back by reflection at the bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize

from .drive import HolonomicGate, analytic_gate
from .su2 import FidelityReport, fidelity, max_abs

_HALF_PI = math.pi / 2
_I2 = np.eye(2, dtype=complex)

#: Optimizer solutions within this distance of a bound snap to the exact bound
#: when that does not worsen the objective. The window is wide because the
#: objective can be quartically flat at the bounds (e.g. identity-like pulses).
_BOUND_SNAP = 1e-3


@dataclass(frozen=True)
class PulseSequence:
    """Ordered holonomic pulses; the first entry acts first. May be empty."""

    betas: tuple[float, ...]
    omega_drive: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        for b in self.betas:
            if not 0.0 <= b <= _HALF_PI:
                raise ValueError(f"every beta must lie in [0, pi/2], got {b}")
        if not self.omega_drive > 0:
            raise ValueError(f"omega_drive must be > 0, got {self.omega_drive}")

    def __len__(self) -> int:
        return len(self.betas)


@dataclass(frozen=True)
class TargetGate:
    """A named target unitary (2x2, validated)."""

    matrix: np.ndarray
    name: str = "custom"

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError("target matrix must be 2x2")
        if max_abs(m.conj().T @ m - _I2) > 1e-12:
            raise ValueError("target matrix must be unitary within 1e-12")
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class OptimizerConfig:
    """Settings for the multi-start simplex search."""

    restarts: int = 100
    max_evaluations: int = 5000  # per simplex run
    tolerance: float = 1e-9  # infidelity at which the search counts as converged
    fatol: float = 1e-14
    xatol: float = 1e-10
    phase_sensitive: bool = False  # minimize 1 - Re tr/2 instead of 1 - |tr|/2
    stop_at_tolerance: bool = True  # skip remaining restarts once converged
    polish_rounds: int = 2  # fresh simplexes seeded at the incumbent


@dataclass(frozen=True)
class SynthesisResult:
    sequence: PulseSequence
    fidelity: FidelityReport
    evaluations: int
    restarts_used: int
    converged: bool


class CatalogEntry(NamedTuple):
    target: TargetGate
    sequence: PulseSequence
    claimed_fidelity: float


def compose(seq: PulseSequence) -> np.ndarray:
    """Ordered product of the holonomic gates in ``seq`` (first beta applied
    first, so it is the rightmost matrix factor)."""
    u = _I2.copy()
    for b in seq.betas:
        u = analytic_gate(HolonomicGate(b, seq.omega_drive)) @ u
    return u


def standard_target(name: str) -> TargetGate:
    """Named one-qubit targets with their conventional global phases, chosen
    so every matrix has det = 1 (reachable exactly by holonomic products)."""
    key = name.strip().lower().replace("/", "")
    if key == "not":
        return TargetGate(np.array([[0, 1j], [1j, 0]]), name="NOT")
    if key == "hadamard":
        return TargetGate(np.array([[1j, 1j], [1j, -1j]]) / math.sqrt(2), name="Hadamard")
    if key == "phase":
        return TargetGate(
            np.diag([np.exp(-1j * math.pi / 4), np.exp(1j * math.pi / 4)]), name="Phase"
        )
    if key in ("t", "pi8"):
        return TargetGate(
            np.diag([np.exp(-1j * math.pi / 8), np.exp(1j * math.pi / 8)]), name="T"
        )
    raise ValueError(f"unknown target name {name!r} (use NOT, Hadamard, Phase or T)")


def catalog() -> list[CatalogEntry]:
    """The four published pulse sequences with their claimed fidelities."""
    return [
        CatalogEntry(
            standard_target("NOT"),
            PulseSequence((0.423, 0.680, 0.236, 0.222)),
            0.99999999990,
        ),
        CatalogEntry(
            standard_target("Hadamard"),
            PulseSequence((0.331, 0.783, 0.300, 0.926, 0.174, 0.851, 0.347)),
            0.99999999791,
        ),
        CatalogEntry(
            standard_target("Phase"),
            PulseSequence((0.827, 0.102, 0.287, 0.777)),
            0.99999999993,
        ),
        CatalogEntry(
            standard_target("T"),
            PulseSequence((0.788, 0.514, 0.788)),
            0.99999999996,
        ),
    ]


def noncommutativity_witness(b1: float, b2: float) -> float:
    """Max-norm of the commutator of two holonomic gates; positive for generic
    pairs, which is what makes the family universal under composition."""
    u1 = analytic_gate(HolonomicGate(b1))
    u2 = analytic_gate(HolonomicGate(b2))
    return max_abs(u1 @ u2 - u2 @ u1)


# --- quaternion fast path -------------------------------------------------
#
# U = w I + i (x sx + y sy + z sz) with (w, x, y, z) real and unit norm.


def _gate_quat(beta: float) -> tuple[float, float, float, float]:
    s = math.sin(beta)
    ps = math.pi * s
    sp = math.sin(ps)
    return (-math.cos(ps), math.cos(beta) * sp, 0.0, -s * sp)


def _quat_mul(a, b):
    """Quaternion of A @ B (A applied after B)."""
    w1, x1, y1, z1 = a
    w2, x2, y2, z2 = b
    return (
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
        w1 * x2 + w2 * x1 - (y1 * z2 - z1 * y2),
        w1 * y2 + w2 * y1 - (z1 * x2 - x1 * z2),
        w1 * z2 + w2 * z1 - (x1 * y2 - y1 * x2),
    )


def _pauli_coefficients(m: np.ndarray) -> tuple[complex, complex, complex, complex]:
    """Coefficients (a, bx, by, bz) of m = a I + bx sx + by sy + bz sz."""
    return (
        (m[0, 0] + m[1, 1]) / 2.0,
        (m[0, 1] + m[1, 0]) / 2.0,
        (m[1, 0] - m[0, 1]) / 2.0 * 1j,
        (m[0, 0] - m[1, 1]) / 2.0,
    )


def _make_objective(target: np.ndarray, phase_sensitive: bool):
    """Infidelity of the composed sequence against ``target`` as a plain-float
    function of unconstrained simplex coordinates (folded into [0, pi/2])."""
    a, bx, by, bz = _pauli_coefficients(np.asarray(target, dtype=complex))
    half_pi = _HALF_PI
    pi_ = math.pi

    def objective(x) -> float:
        q = (1.0, 0.0, 0.0, 0.0)
        for raw in x:
            b = raw % pi_
            if b > half_pi:
                b = pi_ - b
            q = _quat_mul(_gate_quat(b), q)
        # tr(U^dag target) / 2 for U = w I + i v.sigma
        tr = q[0] * a - 1j * (q[1] * bx + q[2] * by + q[3] * bz)
        return 1.0 - (tr.real if phase_sensitive else abs(tr))

    return objective


def _fold(x: np.ndarray) -> np.ndarray:
    r = np.mod(x, math.pi)
    return np.where(r > _HALF_PI, math.pi - r, r)


def _simplex_descend(objective, x0: np.ndarray, cfg: OptimizerConfig):
    """Nelder-Mead run plus fresh-simplex polish rounds at the incumbent."""
    options = {"maxfev": cfg.max_evaluations, "fatol": cfg.fatol, "xatol": cfg.xatol}
    res = minimize(objective, x0, method="Nelder-Mead", options=options)
    evaluations = res.nfev
    best_fun, best_x = res.fun, res.x
    for _ in range(cfg.polish_rounds):
        res = minimize(objective, best_x, method="Nelder-Mead", options=options)
        evaluations += res.nfev
        if res.fun >= best_fun:
            break
        best_fun, best_x = res.fun, res.x
    return best_fun, best_x, evaluations


def _snap_to_bounds(objective, betas: np.ndarray) -> tuple[np.ndarray, int]:
    """Snap near-boundary solutions to the exact bound when not worse.

    A pulse at exactly pi/2 (identity) then flips to 0 (minus identity) when
    that is not worse either; the two differ only by a global sign of the
    product, so under the default objective the lower angle is the convention.
    """
    evaluations = 0
    snapped = np.where(betas < _BOUND_SNAP, 0.0, betas)
    snapped = np.where(snapped > _HALF_PI - _BOUND_SNAP, _HALF_PI, snapped)
    if not np.array_equal(snapped, betas):
        evaluations += 2
        if objective(snapped) <= objective(betas):
            betas = snapped
    for i in range(betas.size):
        if betas[i] == _HALF_PI:
            flipped = betas.copy()
            flipped[i] = 0.0
            evaluations += 2
            if objective(flipped) <= objective(betas):
                betas = flipped
    return betas, evaluations


def _build_result(
    target: TargetGate,
    betas: np.ndarray,
    cfg: OptimizerConfig,
    evaluations: int,
    restarts_used: int,
) -> SynthesisResult:
    seq = PulseSequence(tuple(float(b) for b in betas))
    report = fidelity(compose(seq), target.matrix)
    # products of exact unitaries can overshoot 1 by rounding; clamp the report
    report = FidelityReport(
        magnitude=min(report.magnitude, 1.0),
        phase_sensitive=min(max(report.phase_sensitive, -1.0), 1.0),
        relative_phase=report.relative_phase,
    )
    achieved = report.phase_sensitive if cfg.phase_sensitive else report.magnitude
    return SynthesisResult(
        sequence=seq,
        fidelity=report,
        evaluations=evaluations,
        restarts_used=restarts_used,
        converged=(1.0 - achieved) <= cfg.tolerance,
    )


def synthesize(
    target: TargetGate,
    length: int,
    config: OptimizerConfig | None = None,
    rng_seed: int = 0,
) -> SynthesisResult:
    """Search for a pulse sequence of the given length maximizing fidelity to
    ``target``. Deterministic for a fixed seed and config; restarts stop early
    once the configured tolerance is reached (unless disabled)."""
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    cfg = config or OptimizerConfig()
    objective = _make_objective(target.matrix, cfg.phase_sensitive)
    rng = np.random.default_rng(rng_seed)

    best_fun = math.inf
    best_x = None
    evaluations = 0
    restarts_used = 0
    for _ in range(cfg.restarts):
        restarts_used += 1
        x0 = rng.uniform(0.0, _HALF_PI, length)
        fun, x, nfev = _simplex_descend(objective, x0, cfg)
        evaluations += nfev
        if fun < best_fun:
            best_fun, best_x = fun, x
        if cfg.stop_at_tolerance and best_fun <= cfg.tolerance:
            break

    betas, extra = _snap_to_bounds(objective, _fold(np.asarray(best_x)))
    return _build_result(target, betas, cfg, evaluations + extra, restarts_used)


def refine(
    target: TargetGate,
    betas,
    config: OptimizerConfig | None = None,
) -> SynthesisResult:
    """Local search seeded at an existing sequence (no random restarts)."""
    cfg = config or OptimizerConfig()
    x0 = np.asarray([float(b) for b in betas])
    if x0.ndim != 1 or x0.size < 1:
        raise ValueError("betas must be a nonempty 1-d sequence")
    objective = _make_objective(target.matrix, cfg.phase_sensitive)
    fun, x, nfev = _simplex_descend(objective, x0, cfg)
    folded, extra = _snap_to_bounds(objective, _fold(np.asarray(x)))
    return _build_result(target, folded, cfg, nfev + extra, 0)


def synthesize_shortest(
    target: TargetGate,
    max_length: int,
    config: OptimizerConfig | None = None,
    rng_seed: int = 0,
) -> SynthesisResult:
    """Try lengths 1..max_length and return the shortest converged result, or
    the best non-converged one if none converges."""
    if max_length < 1:
        raise ValueError(f"max_length must be >= 1, got {max_length}")
    cfg = config or OptimizerConfig()
    best: SynthesisResult | None = None
    for length in range(1, max_length + 1):
        result = synthesize(target, length, cfg, rng_seed)
        if result.converged:
            return result
        if best is None or result.fidelity.magnitude > best.fidelity.magnitude:
            best = result
    return best
