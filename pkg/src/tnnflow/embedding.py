"""Highest-weight representations of sl(n) and the projective eigenchart.

A partial flag variety with recorded dimensions ``{1..n-1} - J`` embeds in
the projectivization of the irreducible module whose highest weight is the
sum of the fundamental weights over the recorded dimensions.  The module is
realized concretely: fundamental modules are wedge powers of the defining
representation; a general one is carved out of the tensor product of its
fundamental factors as the lowering closure of the highest vector, with an
exact reduced-echelon basis so that coordinates can be read off pivot
positions without solving anything.

The symmetric operator ``sum_i E_i + F_i`` acting on the module has a simple
top eigenvalue; the affine chart of projective space centered at the top
eigenline, expressed in an orthonormal eigenbasis, is the coordinate system
in which the induced dynamics become diagonal (see :mod:`tnnflow.flow`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .chevalley import FLOAT, RATIONAL, GroupElement
from .totpos import FactorizationParams

__all__ = [
    "Weight",
    "lambda_for",
    "weyl_dim",
    "RepModule",
    "fundamental_rep",
    "build_rep",
    "LineCoords",
    "line_of",
    "compound_matrix",
    "rep_matrix",
    "EigenChart",
    "eigenchart",
    "chart_coords",
    "chart_line",
    "ChartOverflowError",
    "SpectralGapError",
]


class ChartOverflowError(ValueError):
    """The line is orthogonal to the top eigenvector: no chart coordinates."""


class SpectralGapError(ValueError):
    """Top of the spectrum is not simple enough to center a chart on."""


@dataclass(frozen=True)
class Weight:
    """A dominant integral weight of sl(n), as fundamental-weight coefficients."""

    n: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.n - 1:
            raise ValueError("need one coefficient per fundamental weight")
        if any(c < 0 or int(c) != c for c in self.coeffs):
            raise ValueError("coefficients must be nonnegative integers")

    @property
    def support(self) -> frozenset:
        return frozenset(k for k in range(1, self.n) if self.coeffs[k - 1] > 0)


def lambda_for(n: int, J) -> Weight:
    """The multiplicity-one weight supported exactly on the recorded dimensions.

    For the flag variety of type ``J`` the recorded dimensions are
    ``{1..n-1} - J``; taking each coefficient there equal to 1 is the minimal
    regular-on-support choice.
    """
    J = frozenset(J)
    if any(j < 1 or j >= n for j in J):
        raise ValueError("J must be a subset of {1, ..., n-1}")
    support = [k for k in range(1, n) if k not in J]
    if not support:
        raise ValueError("J leaves no recorded dimensions")
    return Weight(n, tuple(1 if k not in J else 0 for k in range(1, n)))


def weyl_dim(weight: Weight) -> int:
    """Dimension of the irreducible module, by the Weyl product formula."""
    n, c = weight.n, weight.coeffs
    result = Fraction(1)
    for i in range(1, n):
        for j in range(i, n):
            result *= Fraction(sum(c[i - 1 : j]) + (j - i + 1), j - i + 1)
    assert result.denominator == 1
    return int(result)


# ---------------------------------------------------------------------------
# module construction


def _wedge_subsets(n: int, k: int):
    return list(itertools.combinations(range(1, n + 1), k))


def _subset_label(s) -> str:
    return "".join(str(a) for a in s)


def _wedge_ops(n: int, k: int):
    """E_i, F_i, H_i on the k-th wedge power of the defining module.

    Basis vectors are indexed by sorted k-subsets in lexicographic order;
    replacing i+1 by i (or back) never reorders a sorted subset, so all
    structure constants are +1.
    """
    subsets = _wedge_subsets(n, k)
    index = {s: a for a, s in enumerate(subsets)}
    d = len(subsets)
    e_ops, f_ops, h_ops = {}, {}, {}
    for i in range(1, n):
        e = linalg.rational_zeros(d, d)
        f = linalg.rational_zeros(d, d)
        h = linalg.rational_zeros(d, d)
        for a, s in enumerate(subsets):
            if (i + 1) in s and i not in s:
                t = tuple(sorted(set(s) - {i + 1} | {i}))
                e[index[t], a] = Fraction(1)
            if i in s and (i + 1) not in s:
                t = tuple(sorted(set(s) - {i} | {i + 1}))
                f[index[t], a] = Fraction(1)
            h[a, a] = Fraction((i in s) - ((i + 1) in s))
        e_ops[i], f_ops[i], h_ops[i] = e, f, h
    return subsets, e_ops, f_ops, h_ops


def _kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.einsum("ij,kl->ikjl", a, b)
    return out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])


@dataclass(frozen=True, eq=False)
class RepModule:
    """An irreducible sl(n)-module with an exact weight-coordinate basis.

    ``basis`` is a (dim x ambient) reduced-echelon matrix over Q embedding
    the module into the tensor product of its fundamental factors; module
    coordinates of an ambient vector known to lie in the module are simply
    its entries at ``pivot_cols``.  ``e``, ``f``, ``h`` are the generator
    actions in module coordinates; ``big_e`` etc. act on the ambient space.
    """

    n: int
    weight: Weight
    factors: tuple
    dim: int
    ambient_dim: int
    labels: tuple
    basis: np.ndarray
    pivot_cols: tuple
    highest_index: int
    e: dict
    f: dict
    h: dict
    big_e: dict
    big_f: dict
    big_h: dict

    def generator_sum(self) -> np.ndarray:
        """sum_i E_i + F_i in module coordinates (exact)."""
        tau = linalg.rational_zeros(self.dim, self.dim)
        for i in range(1, self.n):
            tau = tau + self.e[i] + self.f[i]
        return tau

    def big_generator_sum(self) -> np.ndarray:
        tau = linalg.rational_zeros(self.ambient_dim, self.ambient_dim)
        for i in range(1, self.n):
            tau = tau + self.big_e[i] + self.big_f[i]
        return tau

    def coords_of(self, ambient_vec: np.ndarray) -> np.ndarray:
        """Module coordinates of an ambient vector (pivot read-off)."""
        return ambient_vec[list(self.pivot_cols)]


def _echelon_insert(basis, pivots, vec) -> bool:
    """Insert ``vec`` into a reduced echelon basis; False if dependent."""
    v = vec.copy()
    for b, p in zip(basis, pivots):
        if v[p] != 0:
            v = v - v[p] * b
    nz = next((j for j in range(v.shape[0]) if v[j] != 0), None)
    if nz is None:
        return False
    v = v / v[nz]
    for k in range(len(basis)):
        if basis[k][nz] != 0:
            basis[k] = basis[k] - basis[k][nz] * v
    pos = next((k for k, p in enumerate(pivots) if p > nz), len(pivots))
    basis.insert(pos, v)
    pivots.insert(pos, nz)
    return True


def _tensor_big_ops(n: int, factors):
    """Generator actions on the full tensor product of wedge factors."""
    per_factor = [_wedge_ops(n, k) for k in factors]
    dims = [len(pf[0]) for pf in per_factor]
    ambient = int(np.prod(dims))
    big = {"e": {}, "f": {}, "h": {}}
    for i in range(1, n):
        for key, slot in (("e", 1), ("f", 2), ("h", 3)):
            total = linalg.rational_zeros(ambient, ambient)
            for j in range(len(factors)):
                op = linalg.rational_identity(1)
                for m in range(len(factors)):
                    piece = per_factor[m][slot][i] if m == j else linalg.rational_identity(dims[m])
                    op = _kron(op, piece)
                total = total + op
            big[key][i] = total
    subset_lists = [pf[0] for pf in per_factor]
    labels = []
    for combo in itertools.product(*subset_lists):
        labels.append("*".join(_subset_label(s) for s in combo))
    return ambient, big, labels


def fundamental_rep(n: int, k: int) -> RepModule:
    """The k-th fundamental module: the wedge power Lambda^k of Q^n."""
    if not 1 <= k <= n - 1:
        raise ValueError("fundamental index must lie in 1..n-1")
    weight = Weight(n, tuple(1 if j == k else 0 for j in range(1, n)))
    return build_rep(weight)


def build_rep(weight: Weight) -> RepModule:
    """Construct the irreducible module by lowering closure (exact).

    Inside the tensor product of fundamental factors, repeatedly apply the
    lowering operators to the highest vector and keep a reduced-echelon basis
    of everything reachable; the span is the irreducible submodule.  The
    generator actions are then re-expressed in the echelon basis by pivot
    read-off, with an exact residual check that the span really is invariant.
    """
    n = weight.n
    factors = tuple(
        k for k in range(1, n) for _ in range(weight.coeffs[k - 1])
    )
    if not factors:
        raise ValueError("the zero weight has no projective geometry attached")
    ambient, big, big_labels = _tensor_big_ops(n, factors)

    highest = np.empty(ambient, dtype=object)
    highest[:] = Fraction(0)
    highest[0] = Fraction(1)  # top subset of each factor is lexicographically first

    basis: list[np.ndarray] = []
    pivots: list[int] = []
    _echelon_insert(basis, pivots, highest)
    frontier = [highest]
    while frontier:
        vec = frontier.pop()
        for i in range(1, n):
            lowered = big["f"][i] @ vec
            if any(x != 0 for x in lowered) and _echelon_insert(basis, pivots, lowered):
                frontier.append(lowered)

    dim = len(basis)
    bmat = np.empty((dim, ambient), dtype=object)
    for r, row in enumerate(basis):
        bmat[r] = row

    def to_module(op_big):
        op = np.empty((dim, dim), dtype=object)
        for c in range(dim):
            image = op_big @ bmat[c]
            coords = image[pivots]
            residual = image - coords @ bmat
            if any(x != 0 for x in residual):
                raise AssertionError("closure is not invariant; construction bug")
            op[:, c] = coords
        return op

    e_ops = {i: to_module(big["e"][i]) for i in range(1, n)}
    f_ops = {i: to_module(big["f"][i]) for i in range(1, n)}
    h_ops = {i: to_module(big["h"][i]) for i in range(1, n)}

    labels = tuple(big_labels[p] for p in pivots)
    highest_index = pivots.index(0)
    return RepModule(
        n=n,
        weight=weight,
        factors=factors,
        dim=dim,
        ambient_dim=ambient,
        labels=labels,
        basis=bmat,
        pivot_cols=tuple(pivots),
        highest_index=highest_index,
        e=e_ops,
        f=f_ops,
        h=h_ops,
        big_e=big["e"],
        big_f=big["f"],
        big_h=big["h"],
    )


# ---------------------------------------------------------------------------
# the embedding of the flag variety


@dataclass(frozen=True)
class LineCoords:
    """Homogeneous coordinates of a line in a module, in the module basis."""

    vec: np.ndarray
    field: str

    def __post_init__(self):
        self.vec.setflags(write=False)

    def to_float(self) -> "LineCoords":
        if self.field == FLOAT:
            return self
        return LineCoords(linalg.to_float(self.vec), FLOAT)


def _apply_exp_big(rep: RepModule, kind: str, i: int, t, vec: np.ndarray) -> np.ndarray:
    """Apply exp(t * generator) to an ambient vector, one factor at a time.

    Raising/lowering generators are nilpotent so the series terminates
    (exactly, in rational arithmetic); coweights act diagonally by integer
    powers of t.
    """
    exact = linalg.is_rational_array(vec)
    t = Fraction(t) if exact else float(t)
    if kind == "coweight":
        if t == 0:
            raise ValueError("coweight parameter must be nonzero")
        weights = [int(rep.big_h[i][a, a]) for a in range(rep.ambient_dim)]
        scaled = [t**wt * x for wt, x in zip(weights, vec)]
        return np.array(scaled, dtype=object if exact else np.float64)
    op = rep.big_e[i] if kind == "x" else rep.big_f[i]
    if not exact:
        op = linalg.to_float(op)
    out = vec.copy()
    term = vec
    for k in range(1, rep.ambient_dim + 2):
        term = (op @ term) * (t / k)
        if all(x == 0 for x in term):
            break
        out = out + term
    else:
        raise AssertionError("nilpotent series failed to terminate")
    return out


def _factor_sequence(params: FactorizationParams, side: str):
    word = params.word
    ell = len(word)
    if side == "upper":
        return [("x", i, tk) for i, tk in zip(word.letters, params.t[:ell])]
    if side == "lower":
        return [("y", i, tk) for i, tk in zip(word.letters, params.t[:ell])]
    if side == "group":
        upper = [("x", i, tk) for i, tk in zip(word.letters, params.t[:ell])]
        lower_ts = params.t[ell:] if len(params.t) == 2 * ell else params.t
        lower = [("y", i, tk) for i, tk in zip(word.letters, lower_ts)]
        torus_ts = params.torus if params.torus is not None else (Fraction(1),) * (word.n - 1)
        torus = [("coweight", i, s) for i, s in zip(range(1, word.n), torus_ts)]
        return upper + torus + lower
    raise ValueError(f"side must be 'upper', 'lower' or 'group', got {side!r}")


def compound_matrix(g: GroupElement, k: int) -> np.ndarray:
    """The induced action on the k-th wedge power: all k x k minors of g."""
    subsets = _wedge_subsets(g.n, k)
    exact = g.field == RATIONAL
    d = len(subsets)
    out = np.empty((d, d), dtype=object if exact else np.float64)
    fmat = None if exact else linalg.to_float(g.entries)
    for b, cols in enumerate(subsets):
        cidx = [c - 1 for c in cols]
        for a, rows in enumerate(subsets):
            ridx = [r - 1 for r in rows]
            if exact:
                out[a, b] = linalg.minor(g.entries, ridx, cidx)
            else:
                out[a, b] = np.linalg.det(fmat[np.ix_(ridx, cidx)])
    return out


def rep_matrix(rep: RepModule, g: GroupElement) -> np.ndarray:
    """The action of a group element in module coordinates.

    Built from compound matrices of the factors; exact for rational input.
    For float input the pivot read-off silently projects away the (tiny)
    numerical residual normal to the module.
    """
    big = None
    for k in rep.factors:
        c = compound_matrix(g, k)
        big = c if big is None else _kron(big, c)
    exact = g.field == RATIONAL
    out = np.empty((rep.dim, rep.dim), dtype=object if exact else np.float64)
    basis = rep.basis if exact else linalg.to_float(rep.basis)
    for c in range(rep.dim):
        image = big @ basis[c]
        coords = image[list(rep.pivot_cols)]
        if exact:
            residual = image - coords @ basis
            if any(x != 0 for x in residual):
                raise AssertionError("module is not invariant under the group action")
        out[:, c] = coords
    return out


def line_of(rep: RepModule, g, side: str = "lower") -> LineCoords:
    """Image of the highest-weight line under a group element.

    ``g`` may be factorization parameters (exact path: the one-parameter
    factors act on the highest vector by terminating series) or a
    :class:`~tnnflow.chevalley.GroupElement` (minor/compound path, exact for
    rational entries and floating otherwise).
    """
    if isinstance(g, FactorizationParams):
        scalars = list(g.t) + list(g.torus or ())
        exact = all(isinstance(tk, (int, Fraction)) for tk in scalars)
        vec = np.empty(rep.ambient_dim, dtype=object)
        vec[:] = Fraction(0)
        vec[0] = Fraction(1)
        if not exact:
            vec = linalg.to_float(vec)
        for kind, i, tk in reversed(_factor_sequence(g, side)):
            vec = _apply_exp_big(rep, kind, i, tk, vec)
        return LineCoords(rep.coords_of(vec), RATIONAL if exact else FLOAT)
    if isinstance(g, GroupElement):
        vecs = []
        for k, kdeg in enumerate(rep.factors):
            comp = compound_matrix(g, kdeg)
            vecs.append(comp[:, 0])  # highest vector of each factor is index 0
        big = vecs[0]
        for v in vecs[1:]:
            big = np.multiply.outer(big, v).reshape(-1)
        return LineCoords(rep.coords_of(big), g.field)
    raise TypeError("g must be FactorizationParams or GroupElement")


# ---------------------------------------------------------------------------
# eigenchart


@dataclass(frozen=True, eq=False)
class EigenChart:
    """Affine chart of P(V) centered at the top eigenline of the generator sum.

    ``vectors`` are orthonormal eigenvectors (columns, eigenvalues ``mu``
    descending) expressed in the Q-frame of the module basis; ``r_mat`` maps
    module coordinates to that orthonormal frame (vec_Q = r_mat @ vec).
    Chart coordinates of a line are ratios a_k / a_0 of its eigenbasis
    components, k = 1..dim-1.
    """

    rep: RepModule
    mu: np.ndarray
    vectors: np.ndarray
    r_mat: np.ndarray
    r_inv: np.ndarray

    @property
    def ncoords(self) -> int:
        return self.rep.dim - 1

    @property
    def gap(self) -> float:
        return float(self.mu[0] - self.mu[1])

    def top_line(self) -> LineCoords:
        """The fixed line (top eigenvector) in module coordinates."""
        vec = self.r_inv @ self.vectors[:, 0]
        k = int(np.argmax(np.abs(vec)))
        if vec[k] < 0:
            vec = -vec
        return LineCoords(vec, FLOAT)


def eigenchart(rep: RepModule, gap_tol: float = 1e-8) -> EigenChart:
    """Diagonalize the generator sum on the module and center a chart on top.

    The generator sum is symmetric in the ambient tensor basis (raising and
    lowering operators are mutual transposes), so we orthonormalize the
    module basis by a QR factorization and call ``eigh`` in that frame.
    A spectral gap below ``gap_tol`` is refused: the chart would not have a
    well-defined center.
    """
    bt = linalg.to_float(rep.basis).T  # ambient x dim, full column rank
    q, r = np.linalg.qr(bt)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    q = q * signs
    r = signs[:, None] * r
    tau_big = linalg.to_float(rep.big_generator_sum())
    tau_q = q.T @ tau_big @ q
    tau_q = (tau_q + tau_q.T) / 2.0
    w, v = np.linalg.eigh(tau_q)
    w, v = w[::-1].copy(), v[:, ::-1].copy()
    if w[0] - w[1] < gap_tol:
        raise SpectralGapError(
            f"top eigenvalue gap {w[0] - w[1]:.3e} below {gap_tol:.1e}"
        )
    for j in range(v.shape[1]):
        k = int(np.argmax(np.abs(v[:, j])))
        if v[k, j] < 0:
            v[:, j] = -v[:, j]
    return EigenChart(rep=rep, mu=w, vectors=v, r_mat=r, r_inv=np.linalg.inv(r))


def chart_coords(chart: EigenChart, line: LineCoords) -> np.ndarray:
    """Chart coordinates of a line; raises ChartOverflowError at the equator.

    Lines orthogonal to the top eigenvector have no finite coordinates; the
    totally nonnegative region never meets that hyperplane, so hitting the
    error on a nominally nonnegative input signals numerical trouble.
    """
    vec = np.asarray(line.to_float().vec, dtype=np.float64)
    a = chart.vectors.T @ (chart.r_mat @ vec)
    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        raise ValueError("zero vector does not span a line")
    if abs(a[0]) <= 1e-13 * scale:
        raise ChartOverflowError("line lies on the chart's hyperplane at infinity")
    return a[1:] / a[0]


def chart_line(chart: EigenChart, p: np.ndarray) -> LineCoords:
    """The line with the given chart coordinates (inverse of chart_coords)."""
    p = np.asarray(p, dtype=np.float64)
    if p.shape != (chart.ncoords,):
        raise ValueError(f"expected {chart.ncoords} coordinates, got {p.shape}")
    a = np.concatenate([[1.0], p])
    return LineCoords(chart.r_inv @ (chart.vectors @ a), FLOAT)
