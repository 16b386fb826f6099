"""Polynomial-representation operators and the finite-dimensional quotients.

The four generators act on C[z^{+-1}] through difference operators of
Demazure-Lusztig shape T = s_part + c(z) * (1 - s): the rational
coefficient always multiplies the difference f - s(f), which the
denominator divides exactly, so the action stays inside the Laurent
ring.  Finite-dimensional irreducibles arise as quotients by a
principal ideal (E); this module builds them as explicit matrices and
provides the diagnostics used by the classification (dimension vector,
z-spectrum, commutant, rigidity count).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal, Optional

import numpy as np

from .core import Params, Tolerance, validate_params
from .laurent import (
    LaurentPoly,
    apply_s0,
    apply_s1,
    build_E,
    build_E_dual,
    canonical_window,
    divide_exact,
    dual_ladder_roots,
    ladder_roots,
    reduce_mod,
)
from .roots import Imaginary, RootKind, Type1E, Type1F, Type2, kind_to_str
from .strata import sigma_membership

IDEAL_RESIDUAL_MAX = 1e-6
RELATION_RESIDUAL_MAX = 1e-8

# flipped by the self-test fault injector: negates the difference part
# of every operator, which silently breaks the quadratic relations
_FLIP_CONVENTION = False


class NotOnStratumError(ValueError):
    """Construction requested off the kind's parameter stratum."""

    def __init__(self, kind: RootKind, failed: list[str]):
        self.kind = kind
        self.failed = failed
        super().__init__(
            f"parameters not on stratum of {kind_to_str(kind)}: failed {failed}"
        )


class IdealNotInvariantError(ArithmeticError):
    """The candidate ideal is not stable under the generator action."""

    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(f"ideal invariance residual {residual:.3e}")


class RelationResidualError(ArithmeticError):
    """Constructed matrices violate a defining relation."""

    def __init__(self, residuals: dict[str, float]):
        self.residuals = residuals
        worst = max(residuals.values())
        super().__init__(f"relation residual {worst:.3e}")


class RankIndeterminateError(ArithmeticError):
    """A singular value sits too close to the rank threshold."""


@dataclass(frozen=True)
class SignVector:
    eps0: int = 1
    eps1: int = 1
    del0: int = 1
    del1: int = 1

    def __post_init__(self):
        for s in (self.eps0, self.eps1, self.del0, self.del1):
            if s not in (1, -1):
                raise ValueError("signs must be +1 or -1")


@dataclass(frozen=True)
class DimVector:
    d0: int
    d1: int
    d2: int
    d3: int
    d4: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.d0, self.d1, self.d2, self.d3, self.d4)


@dataclass
class Rep:
    """Four square matrices realizing the generators, plus provenance."""

    dim: int
    T0: np.ndarray
    T1: np.ndarray
    T0v: np.ndarray
    T1v: np.ndarray
    basis_labels: list[int]
    provenance: dict = field(default_factory=dict)

    def generators(self) -> list[np.ndarray]:
        return [self.T0, self.T1, self.T0v, self.T1v]


# -- operator actions on the Laurent ring --------------------------------


def _difference_part(
    f: LaurentPoly,
    sf: LaurentPoly,
    numerator: LaurentPoly,
    denominator: LaurentPoly,
    tol: Tolerance,
) -> LaurentPoly:
    part = divide_exact(numerator * (f - sf), denominator, tol)
    return -part if _FLIP_CONVENTION else part


def apply_T1(f: LaurentPoly, eps1: int, p: Params) -> LaurentPoly:
    """T1 = eps1 k1^eps1 s1 + [(k1-k1^-1) + (u1-u1^-1) z] (1 - s1)/(1 - z^2)."""
    sf = apply_s1(f)
    num = LaurentPoly({0: p.k1 - 1 / p.k1, 1: p.u1 - 1 / p.u1})
    den = LaurentPoly({0: 1.0, 2: -1.0})
    return sf.scale(eps1 * p.k1**eps1) + _difference_part(f, sf, num, den, p.tol)


def apply_T0(f: LaurentPoly, eps0: int, p: Params) -> LaurentPoly:
    """T0 = eps0 k0^eps0 s0 + [(k0-k0^-1) + (u0-u0^-1) q^{1/2} z^-1] (1 - s0)/(1 - q z^-2)."""
    sf = apply_s0(f, p.q)
    num = LaurentPoly({0: p.k0 - 1 / p.k0, -1: (p.u0 - 1 / p.u0) * p.q_half})
    den = LaurentPoly({0: 1.0, -2: -p.q})
    return sf.scale(eps0 * p.k0**eps0) + _difference_part(f, sf, num, den, p.tol)


def apply_T0v_bar(f: LaurentPoly, del0: int, p: Params) -> LaurentPoly:
    """T0v on the dual-side module: the mirror of apply_T0 with k0 and u0
    swapped in the numerator."""
    sf = apply_s0(f, p.q)
    num = LaurentPoly({0: p.u0 - 1 / p.u0, -1: (p.k0 - 1 / p.k0) * p.q_half})
    den = LaurentPoly({0: 1.0, -2: -p.q})
    return sf.scale(del0 * p.u0**del0) + _difference_part(f, sf, num, den, p.tol)


def apply_T1v_bar(f: LaurentPoly, del1: int, p: Params) -> LaurentPoly:
    """T1v on the dual-side module: the mirror of apply_T1."""
    sf = apply_s1(f)
    num = LaurentPoly({0: p.u1 - 1 / p.u1, 1: p.k1 - 1 / p.k1})
    den = LaurentPoly({0: 1.0, 2: -1.0})
    return sf.scale(del1 * p.u1**del1) + _difference_part(f, sf, num, den, p.tol)


# -- quotient construction -----------------------------------------------


def _matrix_of(
    op: Callable[[LaurentPoly], LaurentPoly],
    window: list[int],
    E: LaurentPoly,
    tol: Tolerance,
) -> np.ndarray:
    win = canonical_window(E)
    cols = []
    for j in window:
        r = reduce_mod(op(LaurentPoly.monomial(j)), E, win, tol)
        cols.append([r.coeff(d) for d in window])
    return np.array(cols, dtype=complex).T


def _certify_ideal(
    ops: list[Callable[[LaurentPoly], LaurentPoly]],
    E: LaurentPoly,
    roots: list[complex],
    n: int,
    tol: Tolerance,
) -> float:
    """Worst relative residual of membership of T(z^j E) in the ideal.

    Since E has simple roots, g lies in the ideal iff g vanishes at each
    root; the residual is |g(r)| scaled by the evaluation's own
    magnitude sum, which keeps the statistic well conditioned even when
    the window reduction of a high-degree multiple would not be."""
    worst = 0.0
    for op in ops:
        for j in range(-2 * n - 2, 2 * n + 3):
            g = op(E.shift(j))
            if g.is_zero():
                continue
            for r in roots:
                scale = sum(abs(c) * abs(r) ** d for d, c in g.items())
                worst = max(worst, abs(g(r)) / max(scale, 1.0))
    return worst


def quotient_data(
    kind: RootKind, s: Optional[SignVector], p: Params
) -> tuple[str, tuple[int, int], LaurentPoly, complex, list[complex]]:
    """(side, operator signs, divisor E, ladder parameter a, E's roots).

    Side "P" modules are generated through apply_T0/apply_T1; side
    "Pbar" through the bar operators.  For one-leg kinds the free
    operator sign is +1 and the constrained one is the negative of the
    kind's sign (the cyclic generator then carries the eigenvalue that
    survives on the stratum).
    """
    if isinstance(kind, Type2):
        sv = s if s is not None else SignVector(*kind.signs)
        if sv.eps0 != kind.eps0 or sv.eps1 != kind.eps1 \
                or sv.del0 != kind.del0 or sv.del1 != kind.del1:
            raise ValueError("sign vector must match the type-2 kind")
        a = kind.eps0 * p.k0**kind.eps0 * kind.del0 * p.u0**kind.del0
        roots = ladder_roots(kind.n, a, p.q_half)
        return "P", (kind.eps0, kind.eps1), build_E(kind.n, a, p.q_half), a, roots
    if isinstance(kind, Type1E):
        if kind.i == 0:
            a = -kind.eps * p.k0 ** (-kind.eps) * p.u0
            roots = ladder_roots(-kind.n, a, p.q_half)
            return "P", (-kind.eps, 1), build_E(-kind.n, a, p.q_half), a, roots
        a = kind.eps * p.k1**kind.eps * p.u1
        roots = dual_ladder_roots(kind.n, a, p.q_half)
        return "P", (1, -kind.eps), build_E_dual(kind.n, a, p.q_half), a, roots
    if isinstance(kind, Type1F):
        if kind.i == 0:
            a = -kind.delta * p.u0 ** (-kind.delta) * p.k0
            roots = ladder_roots(-kind.n, a, p.q_half)
            return "Pbar", (-kind.delta, 1), build_E(-kind.n, a, p.q_half), a, roots
        a = kind.delta * p.u1**kind.delta * p.k1
        roots = dual_ladder_roots(kind.n, a, p.q_half)
        return "Pbar", (1, -kind.delta), build_E_dual(kind.n, a, p.q_half), a, roots
    raise ValueError(f"no quotient for kind {kind!r}")


def build_quotient_rep(
    kind: RootKind,
    s: Optional[SignVector],
    p: Params,
    force: bool = False,
) -> Rep:
    """Construct the irreducible of the kind's dimension vector.

    The quotient basis is the canonical window of the divisor E; the two
    directly-defined generators are reduced into it and the other two
    derived through the z-action using the exact inverse identities
    T^{-1} = T - (t - t^{-1}).  The ideal is certified stable and the
    five defining relations verified before the Rep is returned.

    With force=True the stratum guard is skipped (the certification
    still runs and fails off-stratum).
    """
    validate_params(p)
    if isinstance(kind, Imaginary):
        raise ValueError("imaginary kinds admit no finite-dimensional quotient")
    if not force:
        verdict = sigma_membership(p, kind)
        if not verdict.member:
            raise NotOnStratumError(kind, verdict.failed_conditions)
    side, op_signs, E, a, roots = quotient_data(kind, s, p)
    n = kind.n
    lo, hi = canonical_window(E)
    window = list(range(lo, hi + 1))
    dim = len(window)
    tol = p.tol

    if side == "P":
        op_a = lambda f: apply_T0(f, op_signs[0], p)
        op_b = lambda f: apply_T1(f, op_signs[1], p)
    else:
        op_a = lambda f: apply_T0v_bar(f, op_signs[0], p)
        op_b = lambda f: apply_T1v_bar(f, op_signs[1], p)

    ideal_res = _certify_ideal([op_a, op_b], E, roots, n, tol)
    if ideal_res > IDEAL_RESIDUAL_MAX:
        raise IdealNotInvariantError(ideal_res)

    Z = _matrix_of(lambda f: f.shift(1), window, E, tol)
    Zi = _matrix_of(lambda f: f.shift(-1), window, E, tol)
    eye = np.eye(dim)
    if side == "P":
        T0 = _matrix_of(op_a, window, E, tol)
        T1 = _matrix_of(op_b, window, E, tol)
        # q^{1/2} T0 T0v acts by z and (T1v T1)^{-1} acts by z
        T0v = (1 / p.q_half) * (T0 - (p.k0 - 1 / p.k0) * eye) @ Z
        T1v = Zi @ (T1 - (p.k1 - 1 / p.k1) * eye)
    else:
        T0v = _matrix_of(op_a, window, E, tol)
        T1v = _matrix_of(op_b, window, E, tol)
        T1 = (T1v - (p.u1 - 1 / p.u1) * eye) @ Zi
        T0 = (1 / p.q_half) * Z @ (T0v - (p.u0 - 1 / p.u0) * eye)

    rep = Rep(
        dim=dim,
        T0=T0,
        T1=T1,
        T0v=T0v,
        T1v=T1v,
        basis_labels=window,
        provenance={
            "kind": kind_to_str(kind),
            "poly_side": side,
            "E": {str(d): [c.real, c.imag] for d, c in E.items()},
            "a": [a.real, a.imag],
            "ideal_residual": ideal_res,
        },
    )
    residuals = verify_relations(rep, p)
    if max(residuals.values()) > RELATION_RESIDUAL_MAX:
        raise RelationResidualError(residuals)
    return rep


def verify_relations(r: Rep, p: Params) -> dict[str, float]:
    """Normalized spectral-norm residuals of the five defining relations."""
    eye = np.eye(r.dim)
    out: dict[str, float] = {}
    quads = [
        ("T0", r.T0, p.k0),
        ("T1", r.T1, p.k1),
        ("T0v", r.T0v, p.u0),
        ("T1v", r.T1v, p.u1),
    ]
    for name, M, t in quads:
        res = (M - t * eye) @ (M + eye / t)
        scale = max(1.0, np.linalg.norm(M - t * eye, 2) * np.linalg.norm(M + eye / t, 2))
        out[f"quad.{name}"] = float(np.linalg.norm(res, 2) / scale)
    prod = r.T1v @ r.T1 @ r.T0 @ r.T0v
    scale = max(
        1.0,
        float(
            np.linalg.norm(r.T1v, 2)
            * np.linalg.norm(r.T1, 2)
            * np.linalg.norm(r.T0, 2)
            * np.linalg.norm(r.T0v, 2)
        ),
    )
    out["product"] = float(
        np.linalg.norm(prod - eye / p.q_half, 2) / scale
    )
    return out


# -- diagnostics ---------------------------------------------------------


def numerical_rank(M: np.ndarray, rank_tol: float) -> int:
    """Rank by singular values, with a factor-10 indeterminacy band."""
    sv = np.linalg.svd(M, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    # floor the scale at 1 so a matrix that is zero up to roundoff gets
    # rank 0 instead of inheriting rank from its noise floor
    thr = rank_tol * max(sv[0], 1.0)
    band = (sv > thr / 10.0) & (sv < thr * 10.0)
    if band.any():
        raise RankIndeterminateError(
            f"singular value near threshold {thr:.3e}"
        )
    return int((sv > thr).sum())


def dim_vector(r: Rep, p: Params) -> DimVector:
    """(dim, rank(T0-k0), rank(T1-k1), rank(T0v-u0), rank(T1v-u1))."""
    eye = np.eye(r.dim)
    rt = p.tol.rank_tol
    return DimVector(
        d0=r.dim,
        d1=numerical_rank(r.T0 - p.k0 * eye, rt),
        d2=numerical_rank(r.T1 - p.k1 * eye, rt),
        d3=numerical_rank(r.T0v - p.u0 * eye, rt),
        d4=numerical_rank(r.T1v - p.u1 * eye, rt),
    )


def spectrum_of_z(r: Rep, p: Params) -> list[complex]:
    """Eigenvalues of the z-action q^{1/2} T0 T0v as a multiset."""
    return [complex(v) for v in np.linalg.eigvals(p.q_half * r.T0 @ r.T0v)]


def rho_ladder(s: SignVector, n: int, p: Params) -> list[complex]:
    """Expected z-eigenvalues rho_{-n}..rho_n of a type-2 quotient on
    side P: a*q^{1/2+i} for i >= 0 and a^{-1}*q^{1/2+i} for i < 0."""
    a = s.eps0 * p.k0**s.eps0 * s.del0 * p.u0**s.del0
    out = []
    for i in range(-n, n + 1):
        base = a if i >= 0 else 1 / a
        out.append(base * p.q_half ** (1 + 2 * i))
    return out


def commutant_dim(r: Rep, rank_tol: float = 1e-9) -> int:
    """Dimension of the joint commutant of the four generators.

    Computed as the nullity of the stacked Sylvester system
    X -> [T, X] over all generators; 1 means irreducible.
    """
    d = r.dim
    eye = np.eye(d)
    rows = [np.kron(M, eye) - np.kron(eye, M.T) for M in r.generators()]
    stack = np.vstack(rows)
    sv = np.linalg.svd(stack, compute_uv=False)
    if sv[0] == 0.0:
        return d * d
    thr = rank_tol * sv[0]
    band = (sv > thr / 10.0) & (sv < thr * 10.0)
    if band.any():
        raise RankIndeterminateError("commutant rank indeterminate")
    return d * d - int((sv > thr).sum())


def rigidity_D(n: int, d1: int, d2: int, d3: int, d4: int) -> int:
    """Moduli dimension 2(1 - n^2 + sum d_i(n - d_i)) of the conjugacy
    data; 0 on every rigid representation.  The d_i are the kernel
    dimensions dim Ker(T - t)."""
    for d in (d1, d2, d3, d4):
        if d < 0 or d > n:
            raise ValueError("kernel dimensions must lie in [0, n]")
    return 2 * (1 - n * n + sum(d * (n - d) for d in (d1, d2, d3, d4)))


def conjugacy_class_dim(n: int, d: int) -> int:
    """dim of the conjugacy class with eigenvalue multiplicities (d, n-d):
    2d(n-d), in both the diagonalizable and the t^2 = -1 Jordan case."""
    if d < 0 or d > n:
        raise ValueError("d must lie in [0, n]")
    return 2 * d * (n - d)


def kernel_dims(r: Rep, p: Params) -> tuple[int, int, int, int]:
    """dim Ker(T - t) for the four generators, from the dimension vector."""
    dv = dim_vector(r, p)
    return (r.dim - dv.d1, r.dim - dv.d2, r.dim - dv.d3, r.dim - dv.d4)


def build_truncated_polyrep(
    side: Literal["P", "Pbar"],
    s: SignVector,
    N: int,
    p: Params,
) -> dict:
    """Matrices of the two directly-defined generators on the degree
    ball [-N, N]; exact because the operators preserve every such ball."""
    validate_params(p)
    window = list(range(-N, N + 1))
    if side == "P":
        ops = {
            "T0": lambda f: apply_T0(f, s.eps0, p),
            "T1": lambda f: apply_T1(f, s.eps1, p),
        }
    else:
        ops = {
            "T0v": lambda f: apply_T0v_bar(f, s.del0, p),
            "T1v": lambda f: apply_T1v_bar(f, s.del1, p),
        }
    out: dict = {"basis_labels": window}
    for name, op in ops.items():
        cols = []
        for j in window:
            g = op(LaurentPoly.monomial(j))
            if not g.is_zero() and (g.min_degree < -N or g.max_degree > N):
                raise ArithmeticError("operator left the degree ball")
            cols.append([g.coeff(d) for d in window])
        out[name] = np.array(cols, dtype=complex).T
    return out


# -- serialization -------------------------------------------------------


def _matrix_to_json(M: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in M]


def _matrix_from_json(data: list) -> np.ndarray:
    return np.array(
        [[complex(v[0], v[1]) for v in row] for row in data], dtype=complex
    )


def rep_to_json(r: Rep) -> dict:
    return {
        "dim": r.dim,
        "T0": _matrix_to_json(r.T0),
        "T1": _matrix_to_json(r.T1),
        "T0v": _matrix_to_json(r.T0v),
        "T1v": _matrix_to_json(r.T1v),
        "basis_labels": list(r.basis_labels),
        "provenance": r.provenance,
    }


def rep_from_json(data: dict) -> Rep:
    return Rep(
        dim=int(data["dim"]),
        T0=_matrix_from_json(data["T0"]),
        T1=_matrix_from_json(data["T1"]),
        T0v=_matrix_from_json(data["T0v"]),
        T1v=_matrix_from_json(data["T1v"]),
        basis_labels=[int(x) for x in data["basis_labels"]],
        provenance=dict(data.get("provenance", {})),
    )


__all__ = [
    "SignVector",
    "DimVector",
    "Rep",
    "apply_T0",
    "apply_T1",
    "apply_T0v_bar",
    "apply_T1v_bar",
    "build_quotient_rep",
    "verify_relations",
    "dim_vector",
    "spectrum_of_z",
    "rho_ladder",
    "commutant_dim",
    "rigidity_D",
    "conjugacy_class_dim",
    "kernel_dims",
    "build_truncated_polyrep",
    "rep_to_json",
    "rep_from_json",
    "NotOnStratumError",
    "IdealNotInvariantError",
    "RelationResidualError",
    "RankIndeterminateError",
]
