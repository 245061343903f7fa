"""Time-zero field modes on diagonal two-sided states.

The time-zero mode of charge ``alpha`` at integer index ``m`` is the band sum

    Psi_{alpha,m} = sum_{delta} Y_{alpha,delta} (x) Y_{alpha,delta+m}

over the left level shift ``delta`` (both chiral factors shift the shared
sector once).  The symmetrized variant adds the charge-reflected term with
``alpha -> -alpha``; its adjoint is the index-reflected mode m -> -m.

At a finite level cutoff only finitely many bands fit; applications return the
band-resolved partial sum together with a :class:`BandReport` recording every
included band's squared norm.  Dropped bands live strictly outside the cutoff
(or the sector window), so they are orthogonal to everything kept -- the only
truncation error in a pairing <Psi phi1, Psi phi2> is tail-against-tail, and
:func:`psi_pair_form` budgets it by extrapolating the band-norm series.

Two exact symmetries used by the vanishing arguments live here as well: the
chiral ``flip`` and the ``sign_automorphism`` (every current negated, sectors
reflected).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

from .diagnostics import loglog_slope, tail_budget
from .fock import SectorState, Space, TensorState, inner_product, norm_sq
from .scalar import Scalar, decimal_str
from .vertex import charge_multiplier, vacuum_mode_norm_sq, y_mode_table

__all__ = [
    "TimeZeroMode",
    "BandReport",
    "apply_time_zero",
    "band_tail_norm",
    "psi_pair_form",
    "weak_psi_commutator",
    "partial_sum_norm_series",
    "write_convergence_csv",
    "flip",
    "sign_automorphism",
]


@dataclass(frozen=True)
class TimeZeroMode:
    alpha: Scalar
    m: int
    symmetrized: bool = True

    def adjoint(self) -> "TimeZeroMode":
        if self.symmetrized:
            return TimeZeroMode(self.alpha, -self.m, True)
        return TimeZeroMode(-self.alpha, -self.m, False)


@dataclass(frozen=True)
class BandReport:
    """Included diagonal bands (left level shift, squared norm of that band)."""

    bands: Tuple[Tuple[int, float], ...]
    clipped: bool
    charge_clipped: bool

    def last_band_norm_sq(self) -> float:
        return self.bands[-1][1] if self.bands else 0.0


def apply_time_zero(space: Space, mode: TimeZeroMode, v: TensorState):
    """Partial band sum of the mode on v -> (TensorState, BandReport)."""
    L = space.trunc.level_cutoff
    if L is None:
        raise ValueError("time-zero modes need a finite level cutoff")
    mult = charge_multiplier(space, mode.alpha)
    signs = (1, -1) if mode.symmetrized else (1,)
    band_acc: dict = {}
    charge_clipped = False
    for (j, left, right), c in v.entries.items():
        lL, lR = sum(left), sum(right)
        for eps in signs:
            alpha_eps = mode.alpha if eps == 1 else -mode.alpha
            jt = j + eps * mult
            if not space.trunc.admits_sector(jt):
                charge_clipped = True
                continue
            dlo = max(-lL, -mode.m - lR)
            dhi = min(L - lL, L - mode.m - lR)
            for dl in range(dlo, dhi + 1):
                tab_left = y_mode_table(alpha_eps, dl, left)
                if not tab_left:
                    continue
                tab_right = y_mode_table(alpha_eps, dl + mode.m, right)
                if not tab_right:
                    continue
                band = band_acc.setdefault(dl, {})
                for mu_l, c_l in tab_left:
                    cc = c * c_l
                    for mu_r, c_r in tab_right:
                        key = (jt, mu_l, mu_r)
                        band[key] = band.get(key, 0) + cc * c_r
    total: dict = {}
    bands = []
    for dl in sorted(band_acc):
        part = TensorState(band_acc[dl])
        if part.entries:
            bands.append((dl, float(norm_sq(space.ctx, part))))
            for key, c in part.entries.items():
                total[key] = total.get(key, 0) + c
    clipped = bool(v.entries)
    out = TensorState(total, overflow=v.overflow or clipped or charge_clipped)
    return out, BandReport(tuple(bands), clipped, charge_clipped)


def band_tail_norm(report: BandReport) -> float:
    """Estimated norm of the dropped band tail (sqrt of extrapolated sum).

    Returns 0 for an empty application, +inf when the band series is too
    short or not summably decaying -- never a silent underestimate.
    """
    vals = [v for _, v in report.bands]
    if not vals or max(vals) == 0.0:
        return 0.0
    pts = [(i, v) for i, v in enumerate(vals, start=1) if v > 0]
    n_fit = max(3, len(pts) // 2)
    fit_pts = pts[-n_fit:]
    if len(fit_pts) < 3:
        return math.inf
    try:
        slope = loglog_slope(fit_pts)
    except ValueError:
        return math.inf
    if slope >= -1:
        return math.inf
    budget_sq = tail_budget(vals[: pts[-1][0]], slope)
    return math.sqrt(budget_sq)


def psi_pair_form(space: Space, mode_bra: TimeZeroMode, mode_ket: TimeZeroMode, phi1, phi2):
    """<Psi_bra phi1, Psi_ket phi2> at the cutoff, with a truncation budget.

    Kept components stay inside the cutoff while dropped bands leave it on at
    least one chiral factor (or leave the sector window), so cross terms
    between kept and dropped parts vanish identically; the budget is the
    product of the two extrapolated tail norms.
    """
    u, rep_u = apply_time_zero(space, mode_bra, phi1)
    w, rep_w = apply_time_zero(space, mode_ket, phi2)
    value = inner_product(space.ctx, u, w)
    budget = band_tail_norm(rep_u) * band_tail_norm(rep_w)
    return value, budget


def weak_psi_commutator(space: Space, alpha, m: int, n: int, phi1, phi2):
    """Weak commutator of two symmetrized time-zero modes on a pair of states:
    <Psi_{-m} phi1, Psi_n phi2> - <Psi_{-n} phi1, Psi_m phi2>."""
    first, b1 = psi_pair_form(
        space, TimeZeroMode(alpha, -m), TimeZeroMode(alpha, n), phi1, phi2
    )
    second, b2 = psi_pair_form(
        space, TimeZeroMode(alpha, -n), TimeZeroMode(alpha, m), phi1, phi2
    )
    return first - second, b1 + b2


def partial_sum_norm_series(alpha, m: int, n_bands: int) -> List[Tuple[int, Scalar, Scalar]]:
    """Band-norm series of the unsymmetrized mode on a vacuum pair.

    Band n contributes ||Y_n vac||^2 * ||Y_{n+m} vac||^2; rows are
    (band, band_norm_sq, partial_sum) for the first n_bands bands, exact when
    alpha is exact.
    """
    rows = []
    total = 0
    band = max(0, -m)
    for _ in range(n_bands):
        val = vacuum_mode_norm_sq(alpha, band) * vacuum_mode_norm_sq(alpha, band + m)
        total = total + val
        rows.append((band, val, total))
        band += 1
    return rows


def write_convergence_csv(rows, fp) -> None:
    fp.write("band,band_norm_sq,partial_sum\n")
    for band, val, total in rows:
        fp.write(f"{band},{decimal_str(val)},{decimal_str(total)}\n")


def flip(v: TensorState) -> TensorState:
    """Chiral swap (j, left, right) -> (j, right, left)."""
    return TensorState(
        {(j, right, left): c for (j, left, right), c in v.entries.items()}, v.overflow
    )


def sign_automorphism(v):
    """Negate every current mode: sectors reflect and each part contributes -1."""
    if isinstance(v, SectorState):
        return SectorState(
            {
                (-j, lam): c * (-1) ** len(lam)
                for (j, lam), c in v.entries.items()
            },
            v.overflow,
        )
    return TensorState(
        {
            (-j, left, right): c * (-1) ** (len(left) + len(right))
            for (j, left, right), c in v.entries.items()
        },
        v.overflow,
    )
