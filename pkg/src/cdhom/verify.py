"""Verification suites: every structural identity of the family as a check.

Each check evaluates one identity (cocycle, quasi-invariance, golden
closed forms, commutation relations, positive definiteness, homogeneity
at truncation, ...) at explicitly pinned tolerances and returns a
record; the report aggregates them.  Reports are byte-stable for a fixed
config and seed: all sampled points are drawn from seeded generators and
no timestamps are recorded.  Independent checks may run in parallel
(capped by CDHOM_THREADS); results are assembled in submission order.
"""

from __future__ import annotations

import itertools
import json
import os
import platform
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__, goldens
from .basis import basis_value_matrix, e_basis, minus_F, op_E, op_F, op_H, u_closed
from .errors import ConfigError, NormalizationError
from .kernel import (
    SampleGrid,
    check_positive_definite,
    check_quasi_invariance,
    default_grid,
    kernel_full,
    kernel_series,
    normalize_kernel,
)
from .mobius import X0, X1, Y, GroupElement, exp_basis
from .operator import (
    _active_indices,
    check_homogeneity,
    mobius_calculus,
    representation_matrix,
    reproducing_coefficients,
    shift_block,
    truncate,
)
from .representation import ModelParams, TriangularRep, act_U, check_cocycle, multiplier_J, multiplier_J0
from .scalars import VectorPolynomial, poly_distance

SUITES = ("all", "kernel", "shift", "rep", "operator")

DEFAULT_TOLERANCES = {
    "hermitian_symmetry": 1e-12,
    "kernel_oracle": 1e-8,
    "positive_definite": 1e-10,
    "quasi_invariance": 1e-8,
    "normalization": 1e-10,
    "monotone_truncation": 1e-12,
    "golden_g": 1e-12,
    "golden_w": 1e-12,
    "golden_k": 1e-10,
    "adjoint_reproducing": 1e-6,
    "column_action": 1e-12,
    "shift_norm_bound": 1e-12,
    "cocycle": 1e-10,
    "rotation_multiplier_constant": 1e-10,
    "multiplier_holomorphy": 1e-6,
    "sl2_commutators": 1e-10,
    "ladder_recursion": 1e-10,
    "rotation_k_type": 1e-10,
    "infinitesimal_generators": 1e-6,
    "homogeneity_rotation": 1e-10,
    "homogeneity_interior": 1e-4,
    "homogeneity_monotone": 1e-12,
    "representation_unitarity": 1e-6,
    "calculus_rotation": 1e-12,
}

_SUBGROUP_TIMES = (0.2, -0.2, 0.11)
_SUBGROUP_ELEMENTS = (("X0", X0), ("X1", X1), ("Y", Y))


@dataclass(frozen=True)
class RunConfig:
    """CLI-facing configuration mirroring the model parameters."""

    lam: float
    m: int
    mu: tuple[float, ...]
    truncation: int = 60
    r_max: float = 0.5
    tolerances: tuple[tuple[str, float], ...] = ()
    fmt: str = "json"
    seed: int = 20260810
    allow_degenerate: bool = False

    def __post_init__(self):
        if self.fmt not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, got {self.fmt!r}")
        if self.truncation < 1:
            raise ConfigError(f"truncation must be >= 1, got {self.truncation}")
        if not 0.0 < self.r_max < 1.0:
            raise ConfigError(f"r_max must lie in (0, 1), got {self.r_max}")
        unknown = [k for k, _ in self.tolerances if k not in DEFAULT_TOLERANCES]
        if unknown:
            raise ConfigError(f"unknown tolerance override(s): {unknown}")
        try:
            self.params()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def params(self) -> ModelParams:
        return ModelParams(
            lam=self.lam, m=self.m, mu=self.mu, allow_degenerate=self.allow_degenerate
        )

    def tolerance(self, name: str) -> float:
        return dict(self.tolerances).get(name, DEFAULT_TOLERANCES[name])

    def grid(self) -> SampleGrid:
        return default_grid(self.r_max)


@dataclass(frozen=True)
class CheckResult:
    name: str
    parameters: dict
    residual: float
    tolerance: float
    passed: bool
    note: str = ""


@dataclass(frozen=True)
class VerificationReport:
    config: dict
    environment: dict
    checks: tuple[CheckResult, ...]
    passed: bool

    def to_json(self) -> str:
        import math

        payload = {
            "config": self.config,
            "environment": self.environment,
            "checks": [
                {
                    "name": c.name,
                    "parameters": c.parameters,
                    "residual": c.residual if math.isfinite(c.residual) else None,
                    "tolerance": c.tolerance,
                    "passed": c.passed,
                    "note": c.note,
                }
                for c in self.checks
            ],
            "passed": self.passed,
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        lines = ["name,residual,tolerance,passed"]
        for c in self.checks:
            lines.append(f"{c.name},{c.residual!r},{c.tolerance!r},{str(c.passed).lower()}")
        lines.append(f"overall,,,{str(self.passed).lower()}")
        return "\n".join(lines) + "\n"


def _result(name: str, cfg: RunConfig, residual: float, note: str = "", **parameters) -> CheckResult:
    tol = cfg.tolerance(name)
    return CheckResult(
        name=name,
        parameters=parameters,
        residual=float(residual),
        tolerance=tol,
        passed=bool(residual <= tol),
        note=note,
    )


def _subgroup_elements():
    for name, elem in _SUBGROUP_ELEMENTS:
        for t in _SUBGROUP_TIMES:
            yield f"exp({t}*{name})", exp_basis(elem, t)


def _seeded_disc_points(cfg: RunConfig, count: int, salt: int, r: float | None = None) -> list[complex]:
    rng = np.random.default_rng(cfg.seed + salt)
    r = cfg.r_max if r is None else r
    pts: list[complex] = []
    while len(pts) < count:
        z = complex(rng.uniform(-r, r), rng.uniform(-r, r))
        if abs(z) <= r:
            pts.append(z)
    return pts


# ---------------------------------------------------------------- kernel suite


def check_hermitian_symmetry(cfg: RunConfig) -> CheckResult:
    p, grid = cfg.params(), cfg.grid()
    worst = 0.0
    for z, w in itertools.product(grid.points, repeat=2):
        k = kernel_full(z, w, p)
        worst = max(worst, float(np.max(np.abs(k - kernel_full(w, z, p).conj().T))))
    return _result("hermitian_symmetry", cfg, worst, points=len(grid.points))


def check_kernel_oracle(cfg: RunConfig) -> CheckResult:
    p, grid = cfg.params(), cfg.grid()
    worst = 0.0
    for z, w in itertools.product(grid.points, repeat=2):
        dev = np.max(np.abs(kernel_series(z, w, p, cfg.truncation) - kernel_full(z, w, p)))
        worst = max(worst, float(dev))
    return _result("kernel_oracle", cfg, worst, truncation=cfg.truncation)


def check_pd(cfg: RunConfig) -> CheckResult:
    report = check_positive_definite(cfg.params(), cfg.grid(), tolerance=-cfg.tolerance("positive_definite"))
    return _result(
        "positive_definite",
        cfg,
        max(0.0, -report.min_eigenvalue),
        min_eigenvalue=report.min_eigenvalue,
        gram_size=report.gram_size,
    )


def check_qi(cfg: RunConfig) -> CheckResult:
    p, grid = cfg.params(), cfg.grid()
    rep = TriangularRep.from_params(p)
    worst, worst_g = 0.0, ""
    for label, g in _subgroup_elements():
        r = check_quasi_invariance(g, grid, p, rep)
        if r > worst:
            worst, worst_g = r, label
    return _result("quasi_invariance", cfg, worst, worst_element=worst_g)


def check_normalization(cfg: RunConfig) -> CheckResult:
    report = normalize_kernel(cfg.params(), cfg.grid())
    return _result("normalization", cfg, report.residual)


def check_monotone_truncation(cfg: RunConfig) -> CheckResult:
    p = cfg.params()
    pts = _seeded_disc_points(cfg, 3, salt=3)
    worst_increase = 0.0
    for z, w in zip(pts, reversed(pts)):
        ref = kernel_full(z, w, p)
        devs = [float(np.max(np.abs(kernel_series(z, w, p, n) - ref))) for n in range(10, cfg.truncation + 1, 10)]
        for a, b in zip(devs, devs[1:]):
            worst_increase = max(worst_increase, b - a)
    return _result("monotone_truncation", cfg, max(0.0, worst_increase))


# ----------------------------------------------------------------- shift suite


def _golden_g_reference(n: int, p: ModelParams) -> np.ndarray | None:
    if p.m == 1:
        return goldens.g_matrix_m1(n, p.lam)
    if p.m == 2:
        return goldens.g_matrix_m2(n, p.lam)
    return None


def _golden_w_reference(n: int, p: ModelParams) -> np.ndarray | None:
    if p.m == 1:
        return goldens.shift_block_m1(n, p.lam, p.mu[1] / p.mu[0])
    if p.m == 2:
        return goldens.shift_block_m2(n, p.lam, p.mu[1] / p.mu[0], p.mu[2] / p.mu[0])
    return None


def check_golden_g(cfg: RunConfig) -> CheckResult:
    from .basis import g_matrix

    p = cfg.params()
    worst = 0.0
    covered = p.m in (1, 2)
    if covered:
        for n in range(21):
            ref = _golden_g_reference(n, p)
            worst = max(worst, float(np.max(np.abs(g_matrix(n, p) - ref))))
    note = "" if covered else "explicit closed forms exist only for m in {1, 2}; skipped"
    return _result("golden_g", cfg, worst, note=note, covered=covered)


def check_golden_w(cfg: RunConfig) -> CheckResult:
    p = cfg.params()
    worst = 0.0
    covered = p.m in (1, 2)
    if covered:
        for n in range(21):
            ref = _golden_w_reference(n, p)
            worst = max(worst, float(np.max(np.abs(shift_block(n, p) - ref))))
    note = "" if covered else "explicit closed forms exist only for m in {1, 2}; skipped"
    return _result("golden_w", cfg, worst, note=note, covered=covered)


def check_golden_k(cfg: RunConfig) -> CheckResult:
    p = cfg.params()
    worst = 0.0
    covered = p.m in (1, 2)
    if covered:
        zs = _seeded_disc_points(cfg, 10, salt=1)
        ws = _seeded_disc_points(cfg, 10, salt=2)
        for z, w in zip(zs, ws):
            if p.m == 1:
                ref = goldens.kernel_m1(z, w, p.lam, p.mu[1] / p.mu[0])
            else:
                ref = goldens.kernel_m2(z, w, p.lam, p.mu[1] / p.mu[0], p.mu[2] / p.mu[0])
            worst = max(worst, float(np.max(np.abs(kernel_full(z, w, p) - p.mu[0] ** 2 * ref))))
    note = "" if covered else "explicit closed forms exist only for m in {1, 2}; skipped"
    return _result("golden_k", cfg, worst, note=note, covered=covered)


def check_adjoint(cfg: RunConfig) -> CheckResult:
    p = cfg.params()
    t_mat = truncate(p, cfg.truncation).matrix
    rng = np.random.default_rng(cfg.seed + 4)
    worst = 0.0
    for w in _seeded_disc_points(cfg, 4, salt=5, r=0.3):
        xi = rng.standard_normal(p.m + 1) + 1j * rng.standard_normal(p.m + 1)
        c = reproducing_coefficients(w, xi, p, cfg.truncation)
        resid = t_mat.conj().T @ c - np.conjugate(w) * c
        worst = max(worst, float(np.linalg.norm(resid) / np.linalg.norm(c)))
    return _result("adjoint_reproducing", cfg, worst, truncation=cfg.truncation)


def check_column_action(cfg: RunConfig) -> CheckResult:
    p = cfg.params()
    worst = 0.0
    for n in range(11):
        w_blk = shift_block(n, p)
        for z in _seeded_disc_points(cfg, 2, salt=6):
            lhs = z * basis_value_matrix(n, z, p)
            rhs = basis_value_matrix(n + 1, z, p) @ w_blk
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return _result("column_action", cfg, worst)


def check_shift_norm_bound(cfg: RunConfig) -> CheckResult:
    p = cfg.params()
    block_sup = max(float(np.linalg.norm(shift_block(n, p), 2)) for n in range(cfg.truncation))
    t_norm = float(np.linalg.norm(truncate(p, cfg.truncation).matrix, 2))
    return _result(
        "shift_norm_bound", cfg, max(0.0, t_norm - block_sup), block_sup=block_sup, truncated_norm=t_norm
    )


# ------------------------------------------------------------------- rep suite


def check_cocycle_sweep(cfg: RunConfig) -> CheckResult:
    from .mobius import X as X_UPPER
    from .mobius import Y_LOWER

    p = cfg.params()
    rep = TriangularRep.from_params(p)
    elements = [exp_basis(e, t) for e in (X_UPPER, Y_LOWER, X0, X1, Y) for t in (0.2, -0.13)]
    zs = [complex(zr, zi) for zr in (-0.5, -0.25, 0.0, 0.25, 0.5) for zi in (-0.3, -0.1, 0.0, 0.2, 0.35)]
    zs = [z for z in zs if abs(z) <= 0.5][:25]
    worst = 0.0
    for g, h in itertools.product(elements, repeat=2):
        for z in zs:
            worst = max(worst, check_cocycle(g, h, z, p, rep))
    return _result("cocycle", cfg, worst, pairs=len(elements) ** 2, points=len(zs))


def check_rotation_multiplier(cfg: RunConfig) -> CheckResult:
    p = cfg.params()
    rep = TriangularRep.from_params(p)
    worst = 0.0
    eye = np.eye(p.m + 1)
    for theta in (0.15, -0.3):
        k = GroupElement.rotation(theta)
        j0 = multiplier_J(k, 0.0, p, rep)
        for z in cfg.grid().points:
            dev = np.max(np.abs(multiplier_J(k, z, p, rep) @ np.linalg.inv(j0) - eye))
            worst = max(worst, float(dev))
    return _result("rotation_multiplier_constant", cfg, worst)


def check_holomorphy(cfg: RunConfig) -> CheckResult:
    p = cfg.params()
    rep = TriangularRep.from_params(p)
    g = exp_basis(X1, 0.17)
    h = 1e-6
    worst = 0.0
    for z in _seeded_disc_points(cfg, 4, salt=7):
        dx = (multiplier_J0(g, z + h, rep) - multiplier_J0(g, z - h, rep)) / (2 * h)
        dy = (multiplier_J0(g, z + 1j * h, rep) - multiplier_J0(g, z - 1j * h, rep)) / (2j * h)
        worst = max(worst, float(np.max(np.abs(dx - dy))))
    return _result("multiplier_holomorphy", cfg, worst)


def _test_polynomials(p: ModelParams, seed: int, degree: int = 15, count: int = 3) -> list[VectorPolynomial]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        coeffs = rng.standard_normal((degree + 1, p.m + 1)) + 1j * rng.standard_normal((degree + 1, p.m + 1))
        out.append(VectorPolynomial(coeffs))
    return out


def check_sl2(cfg: RunConfig) -> CheckResult:
    p = cfg.params()
    rep = TriangularRep.from_params(p)
    worst = 0.0
    for f in _test_polynomials(p, cfg.seed + 8):
        scale = f.max_abs()
        he = op_H(op_E(f), p, rep) - op_E(op_H(f, p, rep))
        worst = max(worst, poly_distance(he, op_E(f)) / scale)
        hf = op_H(op_F(f, p, rep), p, rep) - op_F(op_H(f, p, rep), p, rep)
        worst = max(worst, poly_distance(hf, op_F(f, p, rep) * (-1.0)) / scale)
        ef = op_E(op_F(f, p, rep)) - op_F(op_E(f), p, rep)
        worst = max(worst, poly_distance(ef, op_H(f, p, rep) * (-2.0)) / scale)
    return _result("sl2_commutators", cfg, worst, degree=15)


def check_ladder_recursion(cfg: RunConfig) -> CheckResult:
    p = cfg.params()
    rep = TriangularRep.from_params(p)
    worst = 0.0
    for j in range(p.m + 1):
        current = u_closed(j, 0, p).poly
        for n in range(15):
            current = minus_F(current, p, rep)
            ref = u_closed(j, n + 1, p).poly
            worst = max(worst, poly_distance(current, ref) / max(ref.max_abs(), 1.0))
    return _result("ladder_recursion", cfg, worst, max_n=15)


def check_k_type(cfg: RunConfig) -> CheckResult:
    p = cfg.params()
    rep = TriangularRep.from_params(p)
    g = GroupElement.rotation(0.4)
    worst = 0.0
    z0 = 0.31 + 0.12j
    for j in range(p.m + 1):
        for n in (j, j + 2):
            mono = VectorPolynomial.monomial(p.m, j, n)
            vals = act_U(g, mono, p, rep)(z0)
            ref = mono(z0)
            keep = np.abs(ref) > 1e-14
            worst = max(worst, float(np.max(np.abs(np.abs(vals[keep] / ref[keep]) - 1.0))))
    return _result("rotation_k_type", cfg, worst)


def check_infinitesimal(cfg: RunConfig) -> CheckResult:
    from .mobius import X as X_UPPER
    from .mobius import H as H_DIAG
    from .mobius import Y_LOWER

    p = cfg.params()
    rep = TriangularRep.from_params(p)
    f = _test_polynomials(p, cfg.seed + 9, degree=6, count=1)[0]
    h = 1e-6
    worst = 0.0
    cases = [
        (X_UPPER, op_E(f)),
        (H_DIAG, op_H(f, p, rep)),
        (Y_LOWER, op_F(f, p, rep) * (-1.0)),  # d/dt U_{exp(tY_-)} = U_y = -F
    ]
    for elem, expected in cases:
        for z in (0.3, 0.18 - 0.22j):
            up = act_U(exp_basis(elem, h), f, p, rep)(z)
            dn = act_U(exp_basis(elem, -h), f, p, rep)(z)
            fd = (up - dn) / (2 * h)
            worst = max(worst, float(np.max(np.abs(fd - expected(z)))))
    return _result("infinitesimal_generators", cfg, worst, step=h)


# -------------------------------------------------------------- operator suite


def check_homog_rotation(cfg: RunConfig) -> CheckResult:
    p = cfg.params()
    rep = TriangularRep.from_params(p)
    worst = 0.0
    for theta in (0.3, -0.45):
        worst = max(worst, check_homogeneity(GroupElement.rotation(theta), p, rep, 40))
    return _result("homogeneity_rotation", cfg, worst, truncation=40)


def check_homog_interior(cfg: RunConfig) -> CheckResult:
    p = cfg.params()
    rep = TriangularRep.from_params(p)
    worst = 0.0
    for label, g in (("exp(0.05*X1)", exp_basis(X1, 0.05)), ("exp(0.05*Y)", exp_basis(Y, 0.05))):
        worst = max(worst, check_homogeneity(g, p, rep, 40))
    return _result("homogeneity_interior", cfg, worst, truncation=40, guard_band=5)


def check_homog_monotone(cfg: RunConfig) -> CheckResult:
    p = cfg.params()
    rep = TriangularRep.from_params(p)
    g = exp_basis(X1, 0.05)
    seq = [check_homogeneity(g, p, rep, n, window=15) for n in (20, 40, 60)]
    worst_increase = max(b - a for a, b in zip(seq, seq[1:]))
    return _result(
        "homogeneity_monotone",
        cfg,
        max(0.0, worst_increase),
        residuals={f"N{n}": s for n, s in zip((20, 40, 60), seq)},
        window=15,
    )


def check_unitarity(cfg: RunConfig) -> CheckResult:
    p = cfg.params()
    rep = TriangularRep.from_params(p)
    n_trunc, guard = 40, 10
    keep = [n * (p.m + 1) + j for n, j in _active_indices(p.m, n_trunc) if n <= n_trunc - guard]
    worst = 0.0
    for g in (GroupElement.rotation(0.3), exp_basis(X1, 0.1), exp_basis(Y, -0.1)):
        u = representation_matrix(g, p, rep, n_trunc).matrix
        gram = (u.conj().T @ u - np.eye(u.shape[0]))[np.ix_(keep, keep)]
        worst = max(worst, float(np.linalg.norm(gram)))
    return _result("representation_unitarity", cfg, worst, truncation=n_trunc, guard_band=guard)


def check_calculus_rotation(cfg: RunConfig) -> CheckResult:
    import cmath

    p = cfg.params()
    t_mat = truncate(p, min(cfg.truncation, 40)).matrix
    worst = 0.0
    for theta in (0.3, -0.7):
        g = GroupElement.rotation(theta)
        dev = np.max(np.abs(mobius_calculus(g, t_mat) - cmath.exp(1j * theta) * t_mat))
        worst = max(worst, float(dev))
    return _result("calculus_rotation", cfg, worst)


_SUITE_CHECKS = {
    "kernel": (
        check_hermitian_symmetry,
        check_kernel_oracle,
        check_pd,
        check_qi,
        check_normalization,
        check_monotone_truncation,
    ),
    "shift": (
        check_golden_g,
        check_golden_w,
        check_golden_k,
        check_adjoint,
        check_column_action,
        check_shift_norm_bound,
    ),
    "rep": (
        check_cocycle_sweep,
        check_rotation_multiplier,
        check_holomorphy,
        check_sl2,
        check_ladder_recursion,
        check_k_type,
        check_infinitesimal,
    ),
    "operator": (
        check_homog_rotation,
        check_homog_interior,
        check_homog_monotone,
        check_unitarity,
        check_calculus_rotation,
    ),
}


def _max_workers() -> int:
    cap = os.environ.get("CDHOM_THREADS", "")
    try:
        if cap and int(cap) >= 1:
            return int(cap)
    except ValueError:
        pass
    return min(8, os.cpu_count() or 1)


def _environment() -> dict:
    return {
        "package": "cdhom",
        "version": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
    }


def _config_echo(cfg: RunConfig, suite: str) -> dict:
    return {
        "lambda": cfg.lam,
        "m": cfg.m,
        "mu": list(cfg.mu),
        "truncation": cfg.truncation,
        "r_max": cfg.r_max,
        "seed": cfg.seed,
        "allow_degenerate": cfg.allow_degenerate,
        "suite": suite,
        "tolerance_overrides": {k: v for k, v in cfg.tolerances},
    }


def run_suite(cfg: RunConfig, suite: str = "all") -> VerificationReport:
    """Run the selected checks and assemble the report (deterministically)."""
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; choose from {SUITES}")
    names = ("kernel", "shift", "rep", "operator") if suite == "all" else (suite,)
    checks = [fn for name in names for fn in _SUITE_CHECKS[name]]

    def run_one(fn) -> CheckResult:
        try:
            return fn(cfg)
        except NormalizationError as exc:
            name = fn.__name__.removeprefix("check_")
            alias = {
                "pd": "positive_definite",
                "qi": "quasi_invariance",
                "homog_rotation": "homogeneity_rotation",
                "homog_interior": "homogeneity_interior",
                "homog_monotone": "homogeneity_monotone",
                "unitarity": "representation_unitarity",
                "cocycle_sweep": "cocycle",
                "sl2": "sl2_commutators",
                "k_type": "rotation_k_type",
                "adjoint": "adjoint_reproducing",
            }.get(name, name)
            tol = dict(cfg.tolerances).get(alias, DEFAULT_TOLERANCES.get(alias, 0.0))
            return CheckResult(
                name=alias,
                parameters={},
                residual=float("inf"),
                tolerance=tol,
                passed=False,
                note=f"degenerate normalization: {exc}",
            )

    with ThreadPoolExecutor(max_workers=_max_workers()) as pool:
        results = list(pool.map(run_one, checks))
    return VerificationReport(
        config=_config_echo(cfg, suite),
        environment=_environment(),
        checks=tuple(results),
        passed=all(c.passed for c in results),
    )
