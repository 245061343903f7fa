"""Virasoro modes built as normal-ordered quadratics in the currents.

``L_n = (1/2) * sum_k :J_{n-k} J_k:`` with the annihilating factor applied
first; only finitely many ``k`` act on a level-``ell`` vector (``|k| <= ell +
|n|``), so each action is an exact finite sum.  The central charge of the
resulting bracket is 1:

    [L_m, L_n] = (m - n) L_{m+n} + (1/12) m (m^2 - 1) delta_{m,-n}

Unperturbed two-sided boost/rotation combinations live here too:
``l_plus = L_1 x 1 + 1 x L_{-1}``, ``l_minus = L_{-1} x 1 + 1 x L_1``,
``k0 = L_0 x 1 - 1 x L_0``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .fock import Partition, SectorState, Space, TensorState
from .heisenberg import j_step

_HALF = Fraction(1, 2)

# Self-test knob: when True, one quadratic coefficient (the k=1 term of L_2)
# is doubled so that identity suites demonstrably catch a wrong coefficient.
FAULT_SUGAWARA = False


@lru_cache(maxsize=None)
def _sugawara_on_basis(n: int, j: int, lam: Partition, alpha0, fault: bool):
    """L_n on basis (j, lam) as a tuple of (partition, coefficient); exact."""
    beta = alpha0 * j
    ell = sum(lam)
    bound = ell + abs(n)
    acc = {}
    for k in range(-bound, bound + 1):
        a = n - k
        lo, hi = (a, k) if a <= k else (k, a)
        for mu1, c1 in j_step(lam, hi, beta):
            for mu2, c2 in j_step(mu1, lo, beta):
                c = _HALF * c1 * c2
                if fault and n == 2 and k == 1:
                    c = 2 * c
                acc[mu2] = acc.get(mu2, 0) + c
    return tuple((mu, c) for mu, c in acc.items() if c != 0)


def apply_L(space: Space, n: int, v: SectorState) -> SectorState:
    out = {}
    overflow = v.overflow
    for (j, lam), c in v.entries.items():
        for mu, coeff in _sugawara_on_basis(n, j, lam, space.alpha0, FAULT_SUGAWARA):
            if not space.trunc.admits_level(sum(mu)):
                overflow = True
                continue
            key = (j, mu)
            out[key] = out.get(key, 0) + c * coeff
    return SectorState(out, overflow)


def apply_L_tensor(space: Space, side: str, n: int, v: TensorState) -> TensorState:
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    out = {}
    overflow = v.overflow
    for (j, left, right), c in v.entries.items():
        lam = left if side == "left" else right
        for mu, coeff in _sugawara_on_basis(n, j, lam, space.alpha0, FAULT_SUGAWARA):
            if not space.trunc.admits_level(sum(mu)):
                overflow = True
                continue
            key = (j, mu, right) if side == "left" else (j, left, mu)
            out[key] = out.get(key, 0) + c * coeff
    return TensorState(out, overflow)


def central_term(m: int, n: int) -> Fraction:
    """Scalar part of [L_m, L_n] at central charge 1."""
    if m + n != 0:
        return Fraction(0)
    return Fraction(m * (m * m - 1), 12)


LORENTZ_KINDS = ("l_plus", "l_minus", "k0")


def apply_lorentz(space: Space, kind: str, v: TensorState) -> TensorState:
    """Unperturbed two-sided generators on diagonal states."""
    if kind == "l_plus":
        return apply_L_tensor(space, "left", 1, v).add(apply_L_tensor(space, "right", -1, v))
    if kind == "l_minus":
        return apply_L_tensor(space, "left", -1, v).add(apply_L_tensor(space, "right", 1, v))
    if kind == "k0":
        return apply_L_tensor(space, "left", 0, v).sub(apply_L_tensor(space, "right", 0, v))
    raise ValueError(f"unknown generator kind {kind!r}")
