"""Contractive dynamics on flag varieties in eigenchart coordinates.

Acting on a flag by exp(t * generator_sum) becomes, in the affine eigenchart
of the embedding module, the diagonal map

    f(t, p)_k = exp(t * (mu_k - mu_0)) * p_k,

whose rates are the eigenvalue drops below the top of the spectrum.  All
rates are negative, so every chart point is pulled to the origin -- the
stationary flag -- at exponential speed governed by the spectral gap.
This module houses the diagonal flow itself, a verifier for the axioms a
contracting flow must satisfy, sphere-crossing and convergence reporters,
and the invariance check that boundary flags move strictly inside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .chevalley import FLOAT, GroupElement, Pinning, build_pinning, exp_generator_sum, generator_sum
from .embedding import (
    ChartOverflowError,
    EigenChart,
    LineCoords,
    chart_coords,
    chart_line,
    line_of,
)
from .totpos import (
    FlagPoint,
    Membership,
    Sl3Coords,
    flag_of,
    sample_params,
    sample_positive,
    sl3_coords,
    sl3_membership,
    standard_word_w0,
)

__all__ = [
    "DiagonalFlow",
    "flow_point",
    "trajectory",
    "has_overflow",
    "AxiomCheck",
    "AxiomReport",
    "verify_axioms",
    "CrossingResult",
    "default_ball_radius",
    "sphere_crossing",
    "Convergence",
    "converge",
    "fixed_flag",
    "line_to_sl3_coords",
    "commutation_check",
    "InvarianceCase",
    "default_invariance_cases",
    "invariance_check",
]


@dataclass(frozen=True, eq=False)
class DiagonalFlow:
    """The diagonal contraction with the given eigenvalue-drop rates.

    ``rates`` holds mu_k - mu_0 for k >= 1.  A genuinely contracting flow has
    all rates negative; the constructor does not enforce that, so degenerate
    specimens can be built deliberately and fed to :func:`verify_axioms` as
    negative controls.
    """

    rates: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "rates", np.asarray(self.rates, dtype=np.float64))
        self.rates.setflags(write=False)

    @classmethod
    def from_chart(cls, chart: EigenChart) -> "DiagonalFlow":
        return cls(chart.mu[1:] - chart.mu[0])

    @property
    def ncoords(self) -> int:
        return self.rates.shape[0]

    @property
    def is_contractive(self) -> bool:
        return bool(np.all(self.rates < 0))

    @property
    def log_contraction(self) -> float:
        """log C = mu_0 - mu_1, the slowest decay rate."""
        return float(-np.max(self.rates))


def flow_point(flow: DiagonalFlow, t: float, p: np.ndarray) -> np.ndarray:
    """Evaluate f(t, p).  Very negative t may overflow to inf (not an error)."""
    p = np.asarray(p, dtype=np.float64)
    if p.shape != (flow.ncoords,):
        raise ValueError(f"expected {flow.ncoords} chart coordinates, got {p.shape}")
    with np.errstate(over="ignore", under="ignore"):
        return np.exp(float(t) * flow.rates) * p


def has_overflow(p: np.ndarray) -> bool:
    return not bool(np.all(np.isfinite(p)))


def trajectory(flow: DiagonalFlow, p: np.ndarray, times) -> np.ndarray:
    """Sample the flow at the given times; rows are chart points."""
    return np.array([flow_point(flow, t, p) for t in times])


# ---------------------------------------------------------------------------
# axioms


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    samples: int
    worst: float
    witness: dict | None = None


@dataclass(frozen=True)
class AxiomReport:
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> AxiomCheck:
        return next(c for c in self.checks if c.name == name)


def _sample_point(rng: np.random.Generator, n: int, scale: float) -> np.ndarray:
    while True:
        p = rng.uniform(-scale, scale, size=n)
        if np.linalg.norm(p) > 1e-3:
            return p


def verify_axioms(
    flow: DiagonalFlow,
    rng: np.random.Generator,
    samples: int = 1000,
    t_max: float = 5.0,
    p_scale: float = 10.0,
) -> AxiomReport:
    """Check the contracting-flow axioms on random samples.

    * continuity -- joint local Lipschitz bound with the theoretical constant;
    * identity   -- f(0, p) = p exactly;
    * semigroup  -- f(t1+t2, p) = f(t2, f(t1, p)) to 1e-12 relative;
    * contraction -- ||f(t, p)|| <= exp(-t logC) ||p|| + 1e-12 and strictly
      decreasing for t > 0.

    The deterministic coordinate axes are appended to the random batch so a
    flow with a flat direction cannot slip through on sampling luck.
    """
    n = flow.ncoords
    rates = flow.rates
    amp = math.exp(t_max * max(0.0, float(np.max(rates))))
    max_rate = float(np.max(np.abs(rates)))

    def batch():
        pts = [_sample_point(rng, n, p_scale) for _ in range(samples)]
        pts.extend(np.eye(n))  # one per coordinate axis
        return pts

    # identity
    worst_id = 0.0
    id_witness = None
    id_points = batch()
    for p in id_points:
        err = float(np.max(np.abs(flow_point(flow, 0.0, p) - p)))
        if err > worst_id:
            worst_id = err
            id_witness = {"p": p.tolist(), "error": err}
    identity = AxiomCheck("identity", worst_id == 0.0, len(id_points), worst_id,
                          None if worst_id == 0.0 else id_witness)

    # continuity
    worst_cont = -math.inf
    cont_witness = None
    cont_ok = True
    cont_points = batch()
    for p in cont_points:
        t = rng.uniform(0.0, t_max)
        dt = rng.uniform(-1e-6, 1e-6)
        if t + dt < 0:
            dt = -dt
        dp = rng.uniform(-1e-6, 1e-6, size=n)
        lhs = float(np.linalg.norm(flow_point(flow, t + dt, p + dp) - flow_point(flow, t, p)))
        rhs = amp * float(np.linalg.norm(dp)) + abs(dt) * max_rate * amp * float(np.linalg.norm(p))
        margin = rhs * (1 + 1e-9) + 1e-12 - lhs
        if margin < worst_cont or worst_cont == -math.inf:
            worst_cont = margin
        if margin < 0 and cont_ok:
            cont_ok = False
            cont_witness = {"t": t, "dt": dt, "lhs": lhs, "rhs": rhs}
    continuity = AxiomCheck("continuity", cont_ok, len(cont_points), worst_cont, cont_witness)

    # semigroup
    worst_semi = 0.0
    semi_witness = None
    semi_points = batch()
    for p in semi_points:
        t1 = rng.uniform(-3.0, 3.0)
        t2 = rng.uniform(-3.0, 3.0)
        once = flow_point(flow, t1 + t2, p)
        twice = flow_point(flow, t2, flow_point(flow, t1, p))
        scale = max(float(np.linalg.norm(once)), float(np.linalg.norm(twice)), 1e-300)
        rel = float(np.linalg.norm(once - twice)) / scale
        if rel > worst_semi:
            worst_semi = rel
            semi_witness = {"t1": t1, "t2": t2, "rel_error": rel}
    semigroup = AxiomCheck("semigroup", worst_semi <= 1e-12, len(semi_points), worst_semi,
                           None if worst_semi <= 1e-12 else semi_witness)

    # contraction
    logc = flow.log_contraction
    worst_contr = -math.inf
    contr_witness = None
    contr_ok = True
    contr_points = batch()
    for p in contr_points:
        t = rng.uniform(0.0, t_max)
        t = max(t, 1e-6)  # strictly positive time for the strict-decrease clause
        norm_p = float(np.linalg.norm(p))
        norm_f = float(np.linalg.norm(flow_point(flow, t, p)))
        bound = math.exp(-t * logc) * norm_p + 1e-12
        margin = min(bound - norm_f, norm_p - norm_f)
        if margin < worst_contr or worst_contr == -math.inf:
            worst_contr = margin
        decreased = norm_f < norm_p
        if (norm_f > bound or not decreased) and contr_ok:
            contr_ok = False
            contr_witness = {"t": t, "p": p.tolist(), "norm_before": norm_p,
                             "norm_after": norm_f, "bound": bound}
    contraction = AxiomCheck("contraction", contr_ok, len(contr_points), worst_contr, contr_witness)

    return AxiomReport((continuity, identity, semigroup, contraction))


# ---------------------------------------------------------------------------
# crossing and convergence


@dataclass(frozen=True)
class CrossingResult:
    time: float
    point: np.ndarray
    radius: float
    residual: float


def default_ball_radius(chart: EigenChart, rng: np.random.Generator, count: int = 25) -> float:
    """A chart-adapted target radius: 1e-2 times the smallest boundary norm.

    Samples ``count`` boundary flags (factorizations with at least one zeroed
    parameter), embeds them, and returns a hundredth of the smallest chart
    norm seen.  The smallest boundary norm sets the scale below which the
    sphere is unambiguously "near the fixed point", so a small fraction of it
    makes a sensible default when the caller has no radius in mind.
    """
    word = standard_word_w0(chart.rep.n)
    ell = len(word)
    smallest = math.inf
    for _ in range(count):
        size = int(rng.integers(1, ell + 1))
        mask = sorted(rng.choice(ell, size=size, replace=False).tolist())
        u = sample_positive(sample_params(word, rng, zero_mask=mask), "lower")
        p = chart_coords(chart, line_of(chart.rep, u.to_float()))
        smallest = min(smallest, float(np.linalg.norm(p)))
    if not math.isfinite(smallest) or smallest <= 0.0:
        raise RuntimeError("boundary sampling never produced a nonzero chart norm")
    return 1e-2 * smallest


def sphere_crossing(
    flow: DiagonalFlow,
    p: np.ndarray,
    radius: float,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> CrossingResult:
    """The unique time at which the trajectory through p crosses the sphere.

    The chart norm along a contracting trajectory is strictly decreasing and
    spans (0, inf), so a bracket always exists; it is found by doubling and
    then refined by bisection until the norm matches the radius to ``tol``
    relative.
    """
    p = np.asarray(p, dtype=np.float64)
    if not flow.is_contractive:
        raise ValueError("sphere crossing needs a strictly contractive flow")
    if np.linalg.norm(p) == 0.0:
        raise ValueError("the zero point never crosses a positive sphere")
    if radius <= 0:
        raise ValueError("radius must be positive")

    def norm_at(t: float) -> float:
        return float(np.linalg.norm(flow_point(flow, t, p)))

    lo, hi = 0.0, 0.0  # norm_at(lo) >= radius >= norm_at(hi)
    start = norm_at(0.0)
    if start >= radius:
        hi = 1.0
        while norm_at(hi) > radius:
            hi *= 2.0
            if hi > 2.0**60:
                raise RuntimeError("failed to bracket the crossing")
    else:
        lo = -1.0
        while norm_at(lo) < radius:
            lo *= 2.0
            if lo < -(2.0**60):
                raise RuntimeError("failed to bracket the crossing")
    t_star = lo
    for _ in range(max_iter):
        t_star = (lo + hi) / 2.0
        value = norm_at(t_star)
        if abs(value - radius) <= tol * radius:
            break
        if value > radius:
            lo = t_star
        else:
            hi = t_star
    point = flow_point(flow, t_star, p)
    return CrossingResult(t_star, point, radius, float(np.linalg.norm(point)) - radius)


@dataclass(frozen=True)
class Convergence:
    time: float
    final_norm: float
    bound: float

    @property
    def within_bound(self) -> bool:
        return self.time <= self.bound * (1 + 1e-9) + 1e-9


def converge(flow: DiagonalFlow, p: np.ndarray, tol: float) -> Convergence:
    """Smallest sampled time T with ||f(T, p)|| < tol, with its a priori bound.

    The bound is log(||p|| / tol) / logC: past it the contraction inequality
    alone forces the norm below tol.
    """
    if not flow.is_contractive:
        raise ValueError("convergence needs a strictly contractive flow")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    p = np.asarray(p, dtype=np.float64)
    norm0 = float(np.linalg.norm(p))
    bound = max(0.0, math.log(max(norm0, 1e-300) / tol)) / flow.log_contraction
    if norm0 < tol:
        return Convergence(0.0, norm0, bound)

    def norm_at(t: float) -> float:
        return float(np.linalg.norm(flow_point(flow, t, p)))

    hi = 1.0
    while norm_at(hi) >= tol:
        hi *= 2.0
        if hi > 2.0**60:
            raise RuntimeError("trajectory failed to enter the target ball")
    lo = 0.0 if hi == 1.0 else hi / 2.0
    for _ in range(80):
        mid = (lo + hi) / 2.0
        if norm_at(mid) < tol:
            hi = mid
        else:
            lo = mid
    return Convergence(hi, norm_at(hi), bound)


def fixed_flag(pinning: Pinning, J=()) -> FlagPoint:
    """The stationary flag: eigenspaces of the generator sum, top first.

    The generator sum on the defining representation is an irreducible Jacobi
    matrix, so its spectrum is simple and the flag is well defined.
    """
    tau = linalg.to_float(generator_sum(pinning))
    w, v = np.linalg.eigh(tau)
    v_desc = v[:, ::-1].copy()
    return flag_of(GroupElement(v_desc, FLOAT), J)


# ---------------------------------------------------------------------------
# commutation between the two evaluation paths


def line_to_sl3_coords(chart: EigenChart, line: LineCoords) -> Sl3Coords:
    """Recover (v, w) coordinates of a complete SL(3) flag from its line.

    The module sits inside (defining) x (wedge^2); the ambient vector of a
    decomposable line is a rank-one 3x3 matrix v * z^T whose factors are the
    line of the flag and the Pluecker vector of its plane.  The factors are
    split off with an SVD, which also certifies decomposability.
    """
    rep = chart.rep
    if rep.n != 3 or rep.factors != (1, 2):
        raise ValueError("flag recovery is implemented for the complete SL(3) module")
    vec = np.asarray(line.to_float().vec, dtype=np.float64)
    big = linalg.to_float(rep.basis).T @ vec
    m = big.reshape(3, 3)
    u, s, vt = np.linalg.svd(m)
    if s[0] == 0.0 or s[1] > 1e-8 * s[0]:
        raise ValueError("line is not decomposable: not the image of a flag")
    v_raw = u[:, 0]
    z = vt[0]  # Pluecker coordinates (12, 13, 23) of the plane
    w_raw = np.array([z[2], z[1], z[0]])
    v = v_raw / v_raw.sum()
    w = w_raw / w_raw.sum()
    return Sl3Coords(tuple(v), tuple(w), FLOAT)


def commutation_check(
    pinning: Pinning,
    chart: EigenChart,
    params,
    t: float,
    side: str = "lower",
) -> dict:
    """Compare flowing in the chart against acting on the flag by exp(t tau).

    Path one: act on the flag matrix, embed, read chart coordinates.
    Path two: embed first, read chart coordinates, flow diagonally.
    Both are returned with their max coordinate difference.
    """
    flow = DiagonalFlow.from_chart(chart)
    g = sample_positive(params, side)
    acted = exp_generator_sum(pinning, t).entries @ linalg.to_float(g.entries)
    line_acted = line_of(chart.rep, GroupElement(acted, FLOAT))
    p_acted = chart_coords(chart, line_acted)

    p_start = chart_coords(chart, line_of(chart.rep, params, side))
    p_flowed = flow_point(flow, t, p_start)
    diff = float(np.max(np.abs(p_acted - p_flowed)))
    return {"acted": p_acted, "flowed": p_flowed, "max_diff": diff}


# ---------------------------------------------------------------------------
# invariance: the boundary moves strictly inside


@dataclass(frozen=True)
class InvarianceCase:
    n: int
    J: frozenset


def default_invariance_cases() -> tuple:
    return (
        InvarianceCase(3, frozenset()),
        InvarianceCase(3, frozenset({2})),
        InvarianceCase(4, frozenset({2})),
    )


def _interior_margin(rep, g_float: GroupElement) -> float:
    """Positivity margin of the embedded line: min coord over max |coord|.

    Strictly positive margin certifies an interior flag; the margin vanishes
    (some weight coordinate is zero) on the boundary.
    """
    vec = np.asarray(line_of(rep, g_float).vec, dtype=np.float64)
    scale = float(np.max(np.abs(vec)))
    if scale == 0.0:
        return -math.inf
    return float(np.min(vec)) / scale


def invariance_check(
    case: InvarianceCase,
    rep,
    chart: EigenChart | None,
    t: float,
    rng: np.random.Generator,
    count: int = 100,
    margin_tol: float = 1e-12,
) -> dict:
    """Flow boundary flags for time t and certify they land strictly inside.

    Boundary samples come from factorizations with zeroed parameters (the
    first sample zeroes every parameter: the base flag).  For each sample the
    line-coordinate positivity margin must clear ``margin_tol``; for the
    complete SL(3) case the (v, w) membership oracle must simultaneously say
    PositivePart.  The negative control re-runs the first sample at t = 0,
    where the certificate must fail.
    """
    pin = build_pinning(case.n)
    word = standard_word_w0(case.n)
    ell = len(word)
    exp_t = exp_generator_sum(pin, t).entries
    results = []
    all_interior = True
    worst = math.inf
    witness = None
    for k in range(count):
        if k == 0:
            mask = list(range(ell))
        else:
            size = int(rng.integers(1, ell + 1))
            mask = sorted(rng.choice(ell, size=size, replace=False).tolist())
        params = sample_params(word, rng, zero_mask=mask)
        u = sample_positive(params, "lower")
        moved = GroupElement(exp_t @ linalg.to_float(u.entries), FLOAT)
        margin = _interior_margin(rep, moved)
        interior = margin > margin_tol
        if case.n == 3 and not case.J:
            membership = sl3_membership(sl3_coords(flag_of(moved)), tol=1e-10)
            interior = interior and membership is Membership.POSITIVE_PART
        if margin < worst:
            worst = margin
            witness = {"sample": k, "mask": mask, "margin": margin}
        all_interior = all_interior and interior
        results.append(interior)

    # negative control: with t = 0 the base-flag sample stays on the boundary
    base = sample_positive(
        sample_params(word, rng, zero_mask=list(range(ell))), "lower"
    )
    control_margin = _interior_margin(rep, base.to_float())
    control_interior = control_margin > margin_tol
    if case.n == 3 and not case.J:
        membership = sl3_membership(sl3_coords(flag_of(base.to_float())), tol=1e-10)
        control_interior = control_interior and membership is Membership.POSITIVE_PART

    return {
        "n": case.n,
        "J": sorted(case.J),
        "t": t,
        "count": count,
        "all_interior": all_interior,
        "worst_margin": worst,
        "witness": witness,
        "control_interior": control_interior,  # must be False
        "passed": all_interior and not control_interior,
    }
