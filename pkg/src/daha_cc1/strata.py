"""Stratum predicates over parameter space.

A real strict root alpha carries a locally closed stratum: one q-power
equality plus finitely many inequalities.  Parameters admit the
irreducible of dimension vector alpha exactly when they lie on the
stratum.  This module also houses the prescribed-eigenvalue table for
the four-matrix product problem and the xi^[alpha] closure product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .core import DEFAULT_TOL, Params, Tolerance, approx_eq, validate_params
from .roots import (
    Imaginary,
    RootKind,
    RootVector,
    Type1E,
    Type2,
    enumerate_strict_roots,
)


class ImaginaryKindError(ValueError):
    """Imaginary roots carry no stratum when q is not a root of unity."""


class InconsistentRanksError(ValueError):
    """A leg label exceeds the central label, so the rank data is invalid."""


@dataclass(frozen=True)
class XiTable:
    """Prescribed eigenvalue pairs per generator row.

    Rows follow (A1, A2, A3, A4) = (q^{1/2} T0, T0v, T1, T1v); each row
    multiplies to -q (row 1) or -1 (rows 2-4).
    """

    rows: tuple[tuple[complex, complex], ...]

    def xi(self, i: int, j: int) -> complex:
        return self.rows[i - 1][j - 1]


@dataclass(frozen=True)
class StratumVerdict:
    member: bool
    failed_conditions: list[str] = field(default_factory=list)


def xi_table(p: Params) -> XiTable:
    """Eigenvalue rows for (q^{1/2}T0, T0v, T1, T1v).

    The k1/u1 rows are paired with T1/T1v respectively, so that each
    generator row lists its own quadratic's eigenvalues.
    """
    qh = p.q_half
    return XiTable(
        rows=(
            (p.k0 * qh, -qh / p.k0),
            (p.u0, -1 / p.u0),
            (p.k1, -1 / p.k1),
            (p.u1, -1 / p.u1),
        )
    )


def xi_product(alpha: RootVector, p: Params, table: XiTable | None = None) -> complex:
    """prod_i xi[i,1]^(a0 - leg_i) * xi[i,2]^leg_i over the four rows.

    Legs are taken in the order (a1, a3, a2, a4), matching the row order
    (T0, T0v, T1, T1v).
    """
    table = table if table is not None else xi_table(p)
    legs = (alpha.a1, alpha.a3, alpha.a2, alpha.a4)
    if any(leg > alpha.a0 for leg in legs):
        raise InconsistentRanksError(
            f"leg label exceeds central label in {alpha}"
        )
    out = 1 + 0j
    for row, leg in enumerate(legs, start=1):
        out *= table.xi(row, 1) ** (alpha.a0 - leg) * table.xi(row, 2) ** leg
    return out


def signed_product(p: Params, signs: tuple[int, int, int, int]) -> complex:
    """eps1 k1^eps1 * eps0 k0^eps0 * del1 u1^del1 * del0 u0^del0."""
    eps0, eps1, del0, del1 = signs
    return (
        eps1 * p.k1**eps1
        * eps0 * p.k0**eps0
        * del1 * p.u1**del1
        * del0 * p.u0**del0
    )


def _clearly_apart(a: complex, b: complex, tol: Tolerance) -> bool:
    return abs(a - b) > tol.ineq_margin * max(1.0, abs(a), abs(b))


def sigma_membership(
    p: Params, k: RootKind, tol: Tolerance | None = None
) -> StratumVerdict:
    """Evaluate the stratum conditions of a real strict root kind.

    Equalities must hold within eq_tol; inequalities must be violated by
    the full margin (1e3 * eq_tol) to count as satisfied, keeping the
    verdict well separated from boundary noise.
    """
    tol = tol if tol is not None else p.tol
    if isinstance(k, Imaginary):
        raise ImaginaryKindError("imaginary kinds have no stratum")
    q = p.q
    failed: list[str] = []

    if isinstance(k, Type2):
        rhs = p.q_half ** (-1 - 2 * k.n)
        if not approx_eq(signed_product(p, k.signs), rhs, tol):
            failed.append(f"eq.product.{k.n}")
        per_param = (
            ("k0", p.k0, k.eps0),
            ("k1", p.k1, k.eps1),
            ("u0", p.u0, k.del0),
            ("u1", p.u1, k.del1),
        )
        for name, t, s in per_param:
            lhs = t ** (2 * s)
            for m in range((1 + s) // 2, k.n):
                if not _clearly_apart(lhs, -(q**m), tol):
                    failed.append(f"neq.{name}.m{m}")
        return StratumVerdict(member=not failed, failed_conditions=failed)

    if isinstance(k, Type1E):
        name, t, s = ("k0", p.k0, k.eps) if k.i == 0 else ("k1", p.k1, k.eps)
    else:
        name, t, s = ("u0", p.u0, k.delta) if k.i == 0 else ("u1", p.u1, k.delta)
    if not approx_eq(t ** (2 * s), -(q**k.n), tol):
        failed.append(f"eq.{name}.n")
    # the product inequality is required for every sign assignment
    for m in range(0, k.n):
        rhs = p.q_half ** (-1 - 2 * m)
        if any(
            not _clearly_apart(signed_product(p, signs), rhs, tol)
            for signs in product((1, -1), repeat=4)
        ):
            failed.append(f"neq.product.m{m}")
    return StratumVerdict(member=not failed, failed_conditions=failed)


def classify_params(
    p: Params, n_max: int, tol: Tolerance | None = None
) -> list[tuple[RootKind, RootVector]]:
    """All strict real roots up to level n_max whose stratum contains p."""
    validate_params(p)
    out = []
    for kind, vec in enumerate_strict_roots(n_max):
        if isinstance(kind, Imaginary):
            continue
        if sigma_membership(p, kind, tol).member:
            out.append((kind, vec))
    return out


def verdict_to_json(v: StratumVerdict) -> dict:
    return {"member": v.member, "failed": list(v.failed_conditions)}


# -- stratum parameter samplers ------------------------------------------


def _random_unit(rng: np.random.Generator, spread: float = 0.35) -> complex:
    mod = float(np.exp(rng.normal(0.0, spread)))
    phase = float(rng.uniform(0.0, 2.0 * np.pi))
    return mod * complex(np.cos(phase), np.sin(phase))


def _random_q_half(rng: np.random.Generator) -> complex:
    mod = float(rng.uniform(1.15, 1.45))
    phase = float(rng.uniform(0.0, 2.0 * np.pi))
    return mod * complex(np.cos(phase), np.sin(phase))


def sample_generic_params(
    rng: np.random.Generator, tol: Tolerance = DEFAULT_TOL
) -> Params:
    """Random parameters with |q| > 1, resampled until they avoid every
    stratum equality by the full margin (levels up to 6)."""
    for _ in range(200):
        p = Params(
            k0=_random_unit(rng),
            k1=_random_unit(rng),
            u0=_random_unit(rng),
            u1=_random_unit(rng),
            q_half=_random_q_half(rng),
            tol=tol,
        )
        ok = True
        for n in range(0, 7):
            rhs = p.q_half ** (-1 - 2 * n)
            for signs in product((1, -1), repeat=4):
                if not _clearly_apart(signed_product(p, signs), rhs, tol):
                    ok = False
            for t in (p.k0, p.k1, p.u0, p.u1):
                for s in (2, -2):
                    if not _clearly_apart(t**s, -(p.q**n), tol):
                        ok = False
        if ok:
            return p
    raise RuntimeError("failed to sample generic parameters")


def sample_stratum_params(
    kind: RootKind, rng: np.random.Generator, tol: Tolerance = DEFAULT_TOL
) -> Params:
    """Random parameters on the stratum of the given real kind.

    The stratum equality is solved exactly for one parameter; draws that
    land within the margin band of any inequality are rejected.
    """
    if isinstance(kind, Imaginary):
        raise ImaginaryKindError("imaginary kinds have no stratum")
    for _ in range(500):
        qh = _random_q_half(rng)
        q = qh * qh
        if isinstance(kind, Type2):
            k0, k1, u0 = (_random_unit(rng) for _ in range(3))
            eps0, eps1, del0, del1 = kind.signs
            rest = (
                eps1 * k1**eps1 * eps0 * k0**eps0 * del0 * u0**del0
            )
            target = qh ** (-1 - 2 * kind.n)
            u1 = (target / (rest * del1)) ** del1
            p = Params(k0=k0, k1=k1, u0=u0, u1=u1, q_half=qh, tol=tol)
        else:
            branch = complex(np.sqrt(-(q**kind.n)))
            if rng.integers(2):
                branch = -branch
            if isinstance(kind, Type1E):
                s = kind.eps
                fixed = branch**s
                vals = {"k0" if kind.i == 0 else "k1": fixed}
            else:
                s = kind.delta
                fixed = branch**s
                vals = {"u0" if kind.i == 0 else "u1": fixed}
            for nm in ("k0", "k1", "u0", "u1"):
                vals.setdefault(nm, _random_unit(rng))
            p = Params(q_half=qh, tol=tol, **vals)
        try:
            validate_params(p)
        except ValueError:
            continue
        if sigma_membership(p, kind, tol).member:
            return p
    raise RuntimeError(f"failed to sample parameters on stratum of {kind}")
