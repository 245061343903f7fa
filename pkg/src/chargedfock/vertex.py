"""Charged intertwiner modes between Fock sectors.

A charge-``alpha`` intertwiner maps sector ``j`` to sector ``j + alpha/alpha0``
(``alpha`` must be an integer multiple of ``alpha0``).  Its modes are indexed
here by the *integer level shift* ``delta``; the real mode index familiar from
the weight grading is

    s = -alpha*beta - d - delta,      d = alpha**2 / 2,  beta = j * alpha0,

so ``delta`` is sector-independent while ``s`` is not.  A mode acts on a basis
vector as a finite double sum: annihilate a sub-multiset of weight ``b`` (with
coefficient ``prod_i C(m_i, k_i) * (-alpha)**K`` over distinct part sizes),
then create any partition ``nu`` of weight ``a = delta + b`` (with coefficient
``alpha**len(nu) / zsym(nu)``).  Everything is exact; no intermediate
truncation occurs.

Two independent evaluation routes are kept deliberately separate:

* :func:`apply_Y_mode` -- the explicit exponential-expansion sum above;
* :func:`apply_Y_mode_recursive` -- matrix elements rebuilt from nothing but
  the commutation relation ``[J_m, Y_delta] = alpha * Y_{delta-m}``, the
  adjoint pairing, and the vacuum anchor ``<vac', Y_delta vac> = delta_{delta,0}``.

Cross-checking them is a structural test of the whole mode calculus.
"""

from __future__ import annotations

import csv
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import IO

import numpy as np

from .fock import (
    Partition,
    SectorState,
    Space,
    partitions_of,
    zsym,
)

__all__ = [
    "charge_multiplier",
    "conformal_weight",
    "mode_index",
    "expand_E",
    "y_mode_table",
    "apply_Y_mode",
    "apply_Y_mode_recursive",
    "vacuum_mode_norm_sq",
    "truncated_mode_norm",
    "export_mode_block",
    "PowerIterationError",
]


def charge_multiplier(space: Space, alpha) -> int:
    """alpha / alpha0 as an exact integer; rejects off-lattice charges."""
    if space.alpha0 == 0:
        raise ValueError("alpha0 = 0 admits no charged intertwiners")
    ratio = alpha / space.alpha0
    if isinstance(ratio, Fraction):
        if ratio.denominator != 1:
            raise ValueError(f"alpha = {alpha} is not an integer multiple of alpha0 = {space.alpha0}")
        return int(ratio)
    rounded = round(ratio)
    if abs(ratio - rounded) > 1e-9:
        raise ValueError(f"alpha = {alpha} is not an integer multiple of alpha0 = {space.alpha0}")
    return rounded


def conformal_weight(alpha):
    """d = alpha^2 / 2."""
    return alpha * alpha / 2


def mode_index(space: Space, alpha, j: int, delta: int):
    """Real mode index s of the level-shift-``delta`` mode out of sector j."""
    return -alpha * space.charge(j) - conformal_weight(alpha) + (-delta)


@lru_cache(maxsize=None)
def _removals(lam: Partition):
    """All sub-multisets removable from lam.

    Returns tuples (b, K, binom, rem): weight removed, number of parts
    removed, the product of binomials prod_i C(m_i, k_i), and the remaining
    partition.
    """
    groups = []
    i = 0
    while i < len(lam):
        j = i
        while j < len(lam) and lam[j] == lam[i]:
            j += 1
        groups.append((lam[i], j - i))
        i = j
    results = [(0, 0, 1, ())]
    for size, mult in groups:
        new = []
        for b, K, binom, rem in results:
            for k in range(mult + 1):
                new.append(
                    (
                        b + size * k,
                        K + k,
                        binom * comb(mult, k),
                        rem + (size,) * (mult - k),
                    )
                )
        results = new
    # rem built in descending group order stays a valid partition
    return tuple((b, K, binom, tuple(sorted(rem, reverse=True))) for b, K, binom, rem in results)


def _merge(a: Partition, b: Partition) -> Partition:
    return tuple(sorted(a + b, reverse=True))


def expand_E(sign: str, alpha, max_level: int):
    """Graded expansion coefficients of the exponential current factors.

    sign '-' (creation side): level a -> tuple of (nu, alpha**len(nu)/zsym(nu)).
    sign '+' (annihilation side): level b -> tuple of (mu, (-alpha)**len(mu)/zsym(mu)),
    where mu lists the parts to be annihilated.
    """
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    table = {}
    for level in range(max_level + 1):
        rows = []
        for nu in partitions_of(level):
            base = alpha if sign == "-" else -alpha
            coeff = base ** len(nu) * Fraction(1, zsym(nu))
            rows.append((nu, coeff))
        table[level] = tuple(rows)
    return table


@lru_cache(maxsize=None)
def y_mode_table(alpha, delta: int, lam: Partition):
    """Level-shift-delta mode on one basis partition: tuple of (mu, coeff).

    All outputs sit at level sum(lam) + delta; the empty tuple means the mode
    annihilates this vector.
    """
    acc = {}
    for b, K, binom, rem in _removals(lam):
        a = delta + b
        if a < 0:
            continue
        ann = binom * (-alpha) ** K
        for nu in partitions_of(a):
            coeff = ann * alpha ** len(nu) * Fraction(1, zsym(nu))
            if coeff == 0:
                continue
            mu = _merge(rem, nu)
            acc[mu] = acc.get(mu, 0) + coeff
    return tuple((mu, c) for mu, c in acc.items() if c != 0)


def apply_Y_mode(space: Space, alpha, delta: int, v: SectorState) -> SectorState:
    """Apply the mode; shifts every sector by alpha/alpha0."""
    mult = charge_multiplier(space, alpha)
    out = {}
    overflow = v.overflow
    for (j, lam), c in v.entries.items():
        jt = j + mult
        if not space.trunc.admits_sector(jt):
            overflow = True
            continue
        target_level = sum(lam) + delta
        if target_level < 0:
            continue
        if not space.trunc.admits_level(target_level):
            overflow = True
            continue
        for mu, coeff in y_mode_table(alpha, delta, lam):
            key = (jt, mu)
            out[key] = out.get(key, 0) + c * coeff
    return SectorState(out, overflow)


@lru_cache(maxsize=None)
def _recursive_element(alpha, mu: Partition, delta: int, lam: Partition):
    """<b_mu, Y_delta b_lam> in the target sector, from commutators alone."""
    if sum(mu) != sum(lam) + delta:
        return Fraction(0)
    if mu:
        p, rest = mu[0], mu[1:]
        total = alpha * _recursive_element(alpha, rest, delta - p, lam)
        # J_p moved through the mode acts on lam: remove one part p
        cnt = lam.count(p)
        if cnt:
            out = list(lam)
            out.remove(p)
            total = total + p * cnt * _recursive_element(alpha, rest, delta, tuple(out))
        return total
    if lam:
        q, rest = lam[0], lam[1:]
        return -alpha * _recursive_element(alpha, (), delta + q, rest)
    return Fraction(1) if delta == 0 else Fraction(0)


def apply_Y_mode_recursive(space: Space, alpha, delta: int, v: SectorState) -> SectorState:
    """Independent oracle route for apply_Y_mode; same contract."""
    mult = charge_multiplier(space, alpha)
    out = {}
    overflow = v.overflow
    for (j, lam), c in v.entries.items():
        jt = j + mult
        if not space.trunc.admits_sector(jt):
            overflow = True
            continue
        target_level = sum(lam) + delta
        if target_level < 0:
            continue
        if not space.trunc.admits_level(target_level):
            overflow = True
            continue
        for mu in partitions_of(target_level):
            elem = _recursive_element(alpha, mu, delta, lam)
            if elem == 0:
                continue
            key = (jt, mu)
            out[key] = out.get(key, 0) + c * elem * Fraction(1, zsym(mu))
    return SectorState(out, overflow)


def vacuum_mode_norm_sq(alpha, n: int):
    """Squared norm of the level-raising-``n`` mode on a vacuum:
    prod_{k=0}^{n-1} (alpha^2 + k) / n!  (binomial C(2d+n-1, n))."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    num = 1
    for k in range(n):
        num = num * (alpha * alpha + k)
    return num * Fraction(1, factorial(n))


class PowerIterationError(RuntimeError):
    def __init__(self, message, residual, iterations):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


def _mode_block_entries(space: Space, alpha, delta: int):
    """Nonzero normalized-basis matrix entries of the truncated mode block.

    Yields (source_level, lam, mu, coeff) with coeff the unnormalized table
    coefficient; the normalized entry is coeff * sqrt(zsym(mu)/zsym(lam)).
    """
    L = space.trunc.level_cutoff
    if L is None:
        raise ValueError("mode block needs a finite level cutoff")
    lo = max(0, -delta)
    hi = min(L, L - delta)
    for level in range(lo, hi + 1):
        for lam in partitions_of(level):
            for mu, coeff in y_mode_table(alpha, delta, lam):
                yield level, lam, mu, coeff


def truncated_mode_norm(
    space: Space,
    alpha,
    delta: int,
    seed: int = 0,
    tol: float = 1e-12,
    maxiter: int = 20000,
) -> float:
    """Operator norm of the truncated mode block via power iteration.

    Rayleigh quotients increase to the top singular value, so the estimate
    converges from below; compression by the level cutoff can only shrink the
    norm.  Raises PowerIterationError when the quotient fails to settle.
    """
    L = space.trunc.level_cutoff
    if L is None:
        raise ValueError("truncated_mode_norm needs a finite level cutoff")
    lo = max(0, -delta)
    hi = min(L, L - delta)
    if hi < lo:
        return 0.0
    sources = []
    targets = {}
    for level in range(lo, hi + 1):
        for lam in partitions_of(level):
            sources.append(lam)
        for mu in partitions_of(level + delta):
            targets[mu] = len(targets)
    src_index = {lam: i for i, lam in enumerate(sources)}
    A = np.zeros((len(targets), len(sources)))
    for level, lam, mu, coeff in _mode_block_entries(space, alpha, delta):
        A[targets[mu], src_index[lam]] = float(coeff) * (zsym(mu) / zsym(lam)) ** 0.5
    if not A.any():
        return 0.0
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(A.shape[1])
    v /= np.linalg.norm(v)
    sigma = 0.0
    for it in range(1, maxiter + 1):
        w = A @ v
        u = A.T @ w
        nu = np.linalg.norm(u)
        if nu == 0.0:
            return 0.0
        new_sigma = float(np.sqrt(w @ w))
        u /= nu
        if abs(new_sigma - sigma) <= tol * max(1.0, new_sigma) and it > 2:
            return new_sigma
        sigma = new_sigma
        v = u
    raise PowerIterationError(
        f"power iteration did not settle after {maxiter} iterations "
        f"(last increment {abs(new_sigma - sigma):.3e})",
        residual=abs(new_sigma - sigma),
        iterations=maxiter,
    )


def export_mode_block(space: Space, alpha, delta: int, fp: IO[str]) -> None:
    """CSV dump of the truncated mode block (unnormalized basis coefficients)."""
    writer = csv.writer(fp)
    writer.writerow(["source_level", "source_partition", "target_partition", "re", "im"])
    rows = sorted(
        _mode_block_entries(space, alpha, delta),
        key=lambda r: (r[0], r[1], r[2]),
    )
    ctx = space.ctx
    for level, lam, mu, coeff in rows:
        re, im = ctx.json_re_im(coeff)
        writer.writerow([level, list(lam), list(mu), re, im])
