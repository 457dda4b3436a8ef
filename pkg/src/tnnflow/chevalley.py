"""Standard pinning of SL(n): Chevalley generators and one-parameter subgroups.

The simple root data of SL(n) in its defining representation: raising
generators ``e_i = E_{i,i+1}``, lowering generators ``f_i = E_{i+1,i}``,
coroots ``h_i = E_{i,i} - E_{i+1,i+1}``, indexed by ``i = 1, ..., n-1``.
The element ``tau = sum_i (e_i + f_i)`` is the symmetric tridiagonal
0/1 matrix whose exponential drives the contraction dynamics downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import linalg

__all__ = [
    "GroupElement",
    "Pinning",
    "build_pinning",
    "one_param",
    "generator_sum",
    "exp_generator_sum",
    "exp_generator_sum_series",
    "commutator",
]

RATIONAL = "rational"
FLOAT = "float"


def _coerce_scalar(t):
    """Classify a scalar as exact (Fraction) or floating, preserving exactness."""
    if isinstance(t, Rational):
        return Fraction(t), RATIONAL
    if isinstance(t, float) or isinstance(t, np.floating):
        return float(t), FLOAT
    raise TypeError(f"unsupported scalar type {type(t).__name__}")


@dataclass(frozen=True)
class GroupElement:
    """An element of SL(n), stored as a matrix over Q or over binary64.

    ``field`` records which arithmetic the entries live in; exact elements
    compose exactly, and mixing an exact element with a float one demotes
    the product to floats.
    """

    entries: np.ndarray
    field: str

    def __post_init__(self):
        n = self.entries.shape[0]
        if self.entries.shape != (n, n):
            raise ValueError("group elements are square matrices")
        if self.field not in (RATIONAL, FLOAT):
            raise ValueError(f"unknown field tag {self.field!r}")
        if self.field == RATIONAL and linalg.det(self.entries) != 1:
            raise ValueError("exact group element must have determinant 1")
        self.entries.setflags(write=False)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        if self.field == RATIONAL and other.field == RATIONAL:
            return GroupElement(self.entries @ other.entries, RATIONAL)
        return GroupElement(
            linalg.to_float(self.entries) @ linalg.to_float(other.entries), FLOAT
        )

    def inverse(self) -> "GroupElement":
        if self.field == RATIONAL:
            return GroupElement(linalg.inv(self.entries), RATIONAL)
        return GroupElement(np.linalg.inv(self.entries), FLOAT)

    def transpose(self) -> "GroupElement":
        return GroupElement(self.entries.T.copy(), self.field)

    def to_float(self) -> "GroupElement":
        if self.field == FLOAT:
            return self
        return GroupElement(linalg.to_float(self.entries), FLOAT)

    def det(self):
        if self.field == RATIONAL:
            return linalg.det(self.entries)
        return float(np.linalg.det(self.entries))


@dataclass(frozen=True)
class Pinning:
    """Chevalley generators of sl(n) in the defining representation."""

    n: int
    e: tuple
    f: tuple
    h: tuple

    @property
    def indices(self) -> range:
        """Simple root indices 1..n-1."""
        return range(1, self.n)

    def raising(self, i: int) -> np.ndarray:
        return self.e[i - 1]

    def lowering(self, i: int) -> np.ndarray:
        return self.f[i - 1]

    def coroot(self, i: int) -> np.ndarray:
        return self.h[i - 1]


def build_pinning(n: int) -> Pinning:
    if n < 2:
        raise ValueError("the special linear group needs n >= 2")
    e, f, h = [], [], []
    for i in range(1, n):
        ei = linalg.rational_zeros(n, n)
        ei[i - 1, i] = Fraction(1)
        fi = linalg.rational_zeros(n, n)
        fi[i, i - 1] = Fraction(1)
        hi = linalg.rational_zeros(n, n)
        hi[i - 1, i - 1] = Fraction(1)
        hi[i, i] = Fraction(-1)
        for m in (ei, fi, hi):
            m.setflags(write=False)
        e.append(ei)
        f.append(fi)
        h.append(hi)
    return Pinning(n, tuple(e), tuple(f), tuple(h))


def one_param(pinning: Pinning, kind: str, i: int, t) -> GroupElement:
    """One-parameter subgroup element: x_i(t), y_i(t), or the coweight h_i(t).

    ``x_i(t) = I + t e_i`` and ``y_i(t) = I + t f_i`` (the nilpotent series
    stops after one term); the coweight puts ``t`` at slot ``i`` and ``1/t``
    at slot ``i+1`` and requires ``t != 0``.
    """
    if i not in pinning.indices:
        raise ValueError(f"simple root index {i} out of range for n={pinning.n}")
    t, field = _coerce_scalar(t)
    n = pinning.n
    if field == RATIONAL:
        m = linalg.rational_identity(n)
    else:
        m = np.eye(n)
    if kind == "x":
        m[i - 1, i] = t
    elif kind == "y":
        m[i, i - 1] = t
    elif kind == "coweight":
        if t == 0:
            raise ValueError("coweight parameter must be nonzero")
        m[i - 1, i - 1] = t
        m[i, i] = 1 / t
    else:
        raise ValueError(f"kind must be 'x', 'y' or 'coweight', got {kind!r}")
    return GroupElement(m, field)


def generator_sum(pinning: Pinning) -> np.ndarray:
    """The symmetric tridiagonal matrix ``sum_i e_i + f_i`` (exact entries)."""
    tau = linalg.rational_zeros(pinning.n, pinning.n)
    for i in pinning.indices:
        tau = tau + pinning.raising(i) + pinning.lowering(i)
    return tau


def exp_generator_sum(pinning: Pinning, t: float) -> GroupElement:
    """exp(t * generator_sum), computed spectrally.

    The generator sum is symmetric, so we diagonalize once with ``eigh`` and
    exponentiate the (real) spectrum.  Its trace is zero, hence the result
    has determinant 1 up to roundoff.
    """
    tau = linalg.to_float(generator_sum(pinning))
    w, v = np.linalg.eigh(tau)
    m = (v * np.exp(float(t) * w)) @ v.T
    return GroupElement((m + m.T) / 2.0, FLOAT)


def exp_generator_sum_series(pinning: Pinning, t: float, terms: int = 24) -> GroupElement:
    """Independent route to exp(t * generator_sum): Taylor series with squaring.

    Scales ``t*tau`` down by a power of two until its 1-norm is below 1/2,
    sums the truncated exponential series by Horner's rule, then squares back
    up.  Used as a cross-check oracle against the spectral route.
    """
    a = float(t) * linalg.to_float(generator_sum(pinning))
    norm = np.linalg.norm(a, 1)
    squarings = max(0, int(np.ceil(np.log2(norm / 0.5))) if norm > 0 else 0)
    a = a / (2.0**squarings)
    n = pinning.n
    result = np.eye(n)
    for k in range(terms, 0, -1):
        result = np.eye(n) + (a / k) @ result
    for _ in range(squarings):
        result = result @ result
    return GroupElement(result, FLOAT)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a
