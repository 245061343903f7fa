"""Perturbed two-sided generator families and weak-commutator verdicts.

Each family combines a chiral pair of Virasoro modes with a scalar multiple
of the symmetrized time-zero bilinear:

* ``lorentz``     -- boost-like: ``L_m (x) 1 + 1 (x) L_{-m}`` for m = +-1 with
  coefficient ``lam``; the m = 0 member is the unperturbed difference
  ``L_0 (x) 1 - 1 (x) L_0``.
* ``virasoro_c0`` -- chiral difference ``L_m (x) 1 - 1 (x) L_{-m}`` with the
  purely imaginary coefficient ``i*lam*m`` (needs gaussian or float scalars).
* ``d_half``      -- chiral difference with the constant coefficient ``lam``;
  closes on the (m - n) ladder only at conformal weight 1/2.

A weak commutator <A* v, B w> - <B* v, A w> splits into three pieces with
different exactness guarantees.  The Virasoro/Virasoro piece and the two
cross pieces are finite computations once the test vectors sit a buffer
inside the level cutoff (and one charge step inside the window), so their
residuals against the ladder target must vanish identically.  Only the
bilinear/bilinear piece is band-truncated: dropped bands leave the cutoff on
at least one chiral factor, hence are orthogonal to every kept vector, and
the computed value differs from the true weak form by at most the product of
the two extrapolated tail norms, summed over both operator orders.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .fock import Space, TensorState, inner_product, partitions_of
from .scalar import Scalar
from .twodim import TimeZeroMode, apply_time_zero, band_tail_norm, partial_sum_norm_series
from .vertex import charge_multiplier, conformal_weight
from .virasoro import apply_L_tensor

__all__ = [
    "FAMILIES",
    "PerturbedGenerator",
    "psi_coefficient",
    "apply_l_part",
    "PsiCache",
    "WeakParts",
    "weak_commutator_parts",
    "weak_commutator",
    "commutator_targets",
    "default_interior_buffer",
    "mixed_gap_coefficients",
    "virasoro_combination",
    "closure_table",
    "verify_lorentz",
    "verify_virasoro_c0",
    "explore_d_half",
]

FAMILIES = ("lorentz", "virasoro_c0", "d_half")


@dataclass(frozen=True)
class PerturbedGenerator:
    family: str
    m: int
    lam: Scalar
    alpha: Scalar

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.family == "lorentz" and self.m not in (-1, 0, 1):
            raise ValueError("the lorentz family is only defined for m in {-1, 0, 1}")

    def at(self, m: int) -> "PerturbedGenerator":
        return replace(self, m=m)

    def adjoint(self) -> "PerturbedGenerator":
        """All three families satisfy A(m)* = A(-m): the chiral part swaps
        m -> -m and the bilinear coefficient conjugates to the -m one."""
        return self.at(-self.m)


def psi_coefficient(space: Space, gen: PerturbedGenerator) -> Scalar:
    """Scalar in front of the symmetrized bilinear inside ``gen``."""
    ctx = space.ctx
    if ctx.is_zero(gen.lam):
        return ctx.zero()
    if gen.family == "lorentz":
        return gen.lam if gen.m != 0 else ctx.zero()
    if gen.family == "virasoro_c0":
        if gen.m == 0:
            return ctx.zero()
        return ctx.imaginary_unit() * gen.lam * gen.m
    return gen.lam


def _chiral_sign(gen: PerturbedGenerator) -> int:
    if gen.family == "lorentz" and gen.m != 0:
        return 1
    return -1


def apply_l_part(space: Space, gen: PerturbedGenerator, v: TensorState) -> TensorState:
    """Unperturbed part: ``L_m`` on the left plus/minus ``L_{-m}`` on the right."""
    left = apply_L_tensor(space, "left", gen.m, v)
    right = apply_L_tensor(space, "right", -gen.m, v)
    return left.add(right) if _chiral_sign(gen) == 1 else left.sub(right)


class PsiCache:
    """Memo for bilinear applications; they are reused across cells and
    coupling values because the mode itself does not depend on ``lam``.

    Keyed by input-state identity (a reference is kept, so ids stay valid).
    """

    def __init__(self):
        self._store: Dict[tuple, Tuple[TensorState, TensorState, float]] = {}

    def apply(self, space: Space, alpha: Scalar, m: int, state: TensorState):
        key = (str(alpha), m, id(state))
        hit = self._store.get(key)
        if hit is None:
            out, report = apply_time_zero(space, TimeZeroMode(alpha, m), state)
            if report.charge_clipped:
                raise ValueError(
                    "bilinear application left the charge window; test vectors"
                    " must sit one charge step inside it"
                )
            hit = (state, out, band_tail_norm(report))
            self._store[key] = hit
        return hit[1], hit[2]


@dataclass(frozen=True)
class WeakParts:
    """Weak commutator split by operator content, plus the truncation budget
    that applies to the bilinear/bilinear piece alone."""

    ll: Scalar
    mixed: Scalar
    psipsi: Scalar
    tail_budget: float

    @property
    def total(self) -> Scalar:
        return self.ll + self.mixed + self.psipsi


def default_interior_buffer(max_abs_m: int, probe_level: int) -> int:
    """One chiral Virasoro application plus the deepest sampled probe."""
    return max(max_abs_m, 1) + probe_level


def _require_interior(space: Space, phi: TensorState, buffer: int, name: str) -> None:
    L = space.trunc.level_cutoff
    if L is None:
        raise ValueError("weak commutators need a finite level cutoff")
    if phi.overflow:
        raise ValueError(f"{name} already carries truncation drops")
    if phi.entries and phi.max_chiral_level() > L - buffer:
        raise ValueError(
            f"{name} reaches chiral level {phi.max_chiral_level()}, beyond the"
            f" interior margin {L - buffer} (cutoff {L}, buffer {buffer})"
        )


def _require_charge_interior(space: Space, phi: TensorState, mult: int, name: str) -> None:
    for (j, _l, _r) in phi.entries:
        if not (space.trunc.admits_sector(j - mult) and space.trunc.admits_sector(j + mult)):
            raise ValueError(
                f"{name} occupies charge sector {j}, less than one bilinear"
                " step inside the charge window"
            )


def weak_commutator_parts(
    space: Space,
    gen_a: PerturbedGenerator,
    gen_b: PerturbedGenerator,
    phi1: TensorState,
    phi2: TensorState,
    interior_buffer: int,
    cache: Optional[PsiCache] = None,
) -> WeakParts:
    """<A* phi1, B phi2> - <B* phi1, A phi2> split into exact and budgeted parts.

    The two vectors must be interior: chiral levels at most cutoff - buffer
    with buffer covering every single Virasoro application made here, and (when
    a bilinear acts at all) charge sectors one multiplier step inside the
    window.  Under those conditions ``ll`` and ``mixed`` are exact and only
    ``psipsi`` carries the band-truncation budget.
    """
    ctx = space.ctx
    if gen_a.alpha != gen_b.alpha:
        raise ValueError("both generators must share one vertex charge")
    needed = max(abs(gen_a.m), abs(gen_b.m), 1)
    if interior_buffer < needed:
        raise ValueError(
            f"interior buffer {interior_buffer} cannot absorb a level shift of {needed}"
        )
    _require_interior(space, phi1, interior_buffer, "phi1")
    _require_interior(space, phi2, interior_buffer, "phi2")

    a_coeff = psi_coefficient(space, gen_a)
    b_coeff = psi_coefficient(space, gen_b)
    use_a = not ctx.is_zero(a_coeff)
    use_b = not ctx.is_zero(b_coeff)
    if use_a or use_b:
        mult = charge_multiplier(space, gen_a.alpha)
        _require_charge_interior(space, phi1, mult, "phi1")
        _require_charge_interior(space, phi2, mult, "phi2")
    cache = cache if cache is not None else PsiCache()

    la_ad1 = apply_l_part(space, gen_a.adjoint(), phi1)
    lb_ad1 = apply_l_part(space, gen_b.adjoint(), phi1)
    la2 = apply_l_part(space, gen_a, phi2)
    lb2 = apply_l_part(space, gen_b, phi2)
    for applied in (la_ad1, lb_ad1, la2, lb2):
        if applied.overflow:
            raise ValueError("chiral Virasoro application left the cutoff; enlarge the buffer")

    ll = inner_product(ctx, la_ad1, lb2) - inner_product(ctx, lb_ad1, la2)

    mixed = ctx.zero()
    psipsi = ctx.zero()
    budget = 0.0
    alpha = gen_a.alpha
    if use_b:
        psi_b2, _ = cache.apply(space, alpha, gen_b.m, phi2)
        psi_mb1, _ = cache.apply(space, alpha, -gen_b.m, phi1)
        mixed = mixed + b_coeff * inner_product(ctx, la_ad1, psi_b2)
        mixed = mixed - b_coeff * inner_product(ctx, psi_mb1, la2)
    if use_a:
        psi_a2, _ = cache.apply(space, alpha, gen_a.m, phi2)
        psi_ma1, _ = cache.apply(space, alpha, -gen_a.m, phi1)
        mixed = mixed + a_coeff * inner_product(ctx, psi_ma1, lb2)
        mixed = mixed - a_coeff * inner_product(ctx, lb_ad1, psi_a2)
    if use_a and use_b:
        psi_ma1, tail_ma1 = cache.apply(space, alpha, -gen_a.m, phi1)
        psi_b2, tail_b2 = cache.apply(space, alpha, gen_b.m, phi2)
        psi_mb1, tail_mb1 = cache.apply(space, alpha, -gen_b.m, phi1)
        psi_a2, tail_a2 = cache.apply(space, alpha, gen_a.m, phi2)
        first = inner_product(ctx, psi_ma1, psi_b2)
        second = inner_product(ctx, psi_mb1, psi_a2)
        psipsi = a_coeff * b_coeff * (first - second)
        budget = abs(ctx.to_complex(a_coeff * b_coeff)) * (
            tail_ma1 * tail_b2 + tail_mb1 * tail_a2
        )
    return WeakParts(ll, mixed, psipsi, budget)


def weak_commutator(
    space: Space,
    gen_a: PerturbedGenerator,
    gen_b: PerturbedGenerator,
    phi1: TensorState,
    phi2: TensorState,
    interior_buffer: int,
    cache: Optional[PsiCache] = None,
) -> Tuple[Scalar, float]:
    """Weak commutator value and the truncation budget on it."""
    parts = weak_commutator_parts(
        space, gen_a, gen_b, phi1, phi2, interior_buffer, cache=cache
    )
    return parts.total, parts.tail_budget


def commutator_targets(
    space: Space,
    gen_a: PerturbedGenerator,
    gen_b: PerturbedGenerator,
    phi1: TensorState,
    phi2: TensorState,
    cache: Optional[PsiCache] = None,
) -> Tuple[Scalar, Scalar]:
    """Ladder target (m - n) <phi1, G_{m+n} phi2>, split like the commutator.

    Returns the chiral-part pairing and the bilinear-part pairing separately;
    both are exact for interior phi1 (dropped bilinear bands are orthogonal to
    every vector inside the cutoff).
    """
    ctx = space.ctx
    coeff = gen_a.m - gen_b.m
    if coeff == 0:
        return ctx.zero(), ctx.zero()
    target = gen_a.at(gen_a.m + gen_b.m)
    ll_target = coeff * inner_product(ctx, phi1, apply_l_part(space, target, phi2))
    t_coeff = psi_coefficient(space, target)
    if ctx.is_zero(t_coeff):
        return ll_target, ctx.zero()
    cache = cache if cache is not None else PsiCache()
    psi_t2, _ = cache.apply(space, target.alpha, target.m, phi2)
    psi_target = coeff * (t_coeff * inner_product(ctx, phi1, psi_t2))
    return ll_target, psi_target


# ---------------------------------------------------------------------------
# symbolic coefficient checks


def mixed_gap_coefficients(d, m: int, n: int) -> dict:
    """Cross-term coefficient of the chiral-difference families.

    ``lhs`` is the computed combination ((2d-1)m - n) - ((2d-1)n - m); it
    always equals ``2d (m - n)``, while matching the ladder requirement
    ``m - n`` singles out d = 1/2 (or m = n).
    """
    d = Fraction(d)
    two_d_minus_1 = 2 * d - 1
    lhs = (two_d_minus_1 * m - n) - (two_d_minus_1 * n - m)
    two_d_form = 2 * d * (m - n)
    ladder = Fraction(m - n)
    return {
        "lhs": lhs,
        "two_d_form": two_d_form,
        "ladder": ladder,
        "identity": lhs == two_d_form,
        "closes": lhs == ladder,
    }


def virasoro_combination(d, m: int, n: int) -> Tuple[Fraction, Fraction]:
    """n((2d-1)m - n) - m((2d-1)n - m) against (m - n)(m + n); the d terms
    cancel, which is what lets the imaginary-coefficient family close."""
    d = Fraction(d)
    two_d_minus_1 = 2 * d - 1
    lhs = n * (two_d_minus_1 * m - n) - m * (two_d_minus_1 * n - m)
    rhs = Fraction((m - n) * (m + n))
    return lhs, rhs


def closure_table(weights=(Fraction(1, 2), Fraction(1, 8)), m_range: int = 3) -> List[dict]:
    """Symbolic closure survey of the constant-coefficient family."""
    rows = []
    for d in weights:
        for m in range(-m_range, m_range + 1):
            for n in range(-m_range, m_range + 1):
                info = mixed_gap_coefficients(d, m, n)
                rows.append(
                    {
                        "d": str(Fraction(d)),
                        "m": m,
                        "n": n,
                        "mixed_coefficient": str(info["lhs"]),
                        "ladder_coefficient": str(info["ladder"]),
                        "identity_2d": info["identity"],
                        "closes": info["closes"],
                    }
                )
    return rows


# ---------------------------------------------------------------------------
# relation reports


def _probe_pairs(
    space: Space,
    alpha: Scalar,
    interior_buffer: int,
    seed: int,
    samples: int,
    probe_level: int = 2,
) -> List[Tuple[str, TensorState, TensorState]]:
    """Deterministic interior probe pairs, then seeded basis samples.

    Charge grading makes a single pair blind to part of the commutator: on a
    same-sector pair every one-bilinear pairing vanishes, while a pair offset
    by one charge step sees only those.  The fixed list therefore mixes both,
    and the charge-step probe is a sum over chiral offsets so that every cell
    with |m + n| <= 2 pairs nonvacuously against the vacuum.
    """
    L = space.trunc.level_cutoff
    mult = charge_multiplier(space, alpha)
    level = max(0, min(probe_level, L - interior_buffer))
    js = [
        j
        for j in range(space.trunc.j_min + mult, space.trunc.j_max - mult + 1)
        if space.trunc.admits_sector(j)
    ]
    if not js:
        raise ValueError("charge window too narrow for any interior sector")
    j0 = 0 if 0 in js else js[0]
    pairs: List[Tuple[str, TensorState, TensorState]] = []
    vac = TensorState.basis(j0, (), ())
    pairs.append(("vacuum-pair", vac, vac))
    if level >= 1:
        exc = TensorState.basis(j0, (1,), ())
        pairs.append(("current-pair", exc, exc))
    if level >= 2:
        pairs.append(
            ("split-pair", TensorState.basis(j0, (2,), (1,)), TensorState.basis(j0, (1,), ()))
        )
    if j0 + mult in js:
        offsets = [((), ()), ((1,), ()), ((), (1,)), ((1,), (1,)), ((2,), ()), ((), (2,))]
        step = TensorState.zero()
        for left, right in offsets:
            if sum(left) <= level and sum(right) <= level:
                step = step.add(TensorState.basis(j0 + mult, left, right))
        pairs.append(("charge-step-pair", step, vac))
    rng = random.Random(seed)
    menu = [lam for lv in range(level + 1) for lam in partitions_of(lv)]
    for s in range(samples):
        j1 = rng.choice(js)
        j2 = rng.choice([j for j in (j1 - mult, j1, j1 + mult) if j in js])
        phi1 = TensorState.basis(j1, rng.choice(menu), rng.choice(menu))
        phi2 = TensorState.basis(j2, rng.choice(menu), rng.choice(menu))
        pairs.append((f"sample-{s}", phi1, phi2))
    return pairs


def _residual_record(
    space: Space,
    gen_a: PerturbedGenerator,
    gen_b: PerturbedGenerator,
    probe: str,
    phi1: TensorState,
    phi2: TensorState,
    interior_buffer: int,
    cache: PsiCache,
) -> dict:
    ctx = space.ctx
    parts = weak_commutator_parts(
        space, gen_a, gen_b, phi1, phi2, interior_buffer, cache=cache
    )
    ll_target, psi_target = commutator_targets(space, gen_a, gen_b, phi1, phi2, cache=cache)
    ll_residual = parts.ll - ll_target
    mixed_residual = parts.mixed - psi_target
    residual = ll_residual + mixed_residual + parts.psipsi
    ll_ok = ctx.is_zero(ll_residual)
    mixed_ok = ctx.is_zero(mixed_residual)
    if not (ll_ok and mixed_ok):
        verdict = "identity_failure"
    elif abs(ctx.to_complex(parts.psipsi)) <= parts.tail_budget + ctx.tolerance:
        verdict = "pass"
    else:
        verdict = "budget_exceeded"
    res_re, res_im = ctx.re_im(residual)
    record = {
        "family": gen_a.family,
        "m": gen_a.m,
        "n": gen_b.m,
        "lambda": ctx.json_real(ctx.re_im(gen_a.lam)[0]),
        "alpha": ctx.json_real(ctx.re_im(gen_a.alpha)[0]),
        "L": space.trunc.level_cutoff,
        "buffer": interior_buffer,
        "probe": probe,
        "residual_re": float(res_re),
        "residual_im": float(res_im),
        "tail_budget": parts.tail_budget,
        "ll_exact": ll_ok,
        "mixed_exact": mixed_ok,
        "verdict": verdict,
    }
    if gen_a.m + gen_b.m == 0 and gen_a.family == "virasoro_c0":
        off_re, off_im = ctx.re_im(ll_residual)
        record["central_offset_re"] = float(off_re)
        record["central_offset_im"] = float(off_im)
    return record


def _summarize(records: List[dict]) -> dict:
    id_fail = sum(1 for r in records if r["verdict"] == "identity_failure")
    over = sum(1 for r in records if r["verdict"] == "budget_exceeded")
    verdict = "identity_failure" if id_fail else ("budget_exceeded" if over else "pass")
    return {
        "records": len(records),
        "identity_failures": id_fail,
        "budget_exceeded": over,
        "max_abs_residual": max(
            (abs(complex(r["residual_re"], r["residual_im"])) for r in records),
            default=0.0,
        ),
        "max_tail_budget": max((r["tail_budget"] for r in records), default=0.0),
        "verdict": verdict,
    }


def verify_lorentz(
    space: Space,
    alpha: Scalar,
    lam: Scalar,
    interior_buffer: Optional[int] = None,
    seed: int = 0,
    samples: int = 2,
) -> dict:
    """Boost-family ladder relations over all nine (m, n) cells.

    Cross terms must cancel exactly; the bilinear/bilinear piece must stay
    inside its band-tail budget.  With ``lam`` zero every residual is exactly
    zero (the unperturbed generators close on the nose).
    """
    probe_level = 2
    if interior_buffer is None:
        interior_buffer = default_interior_buffer(1, probe_level)
    cache = PsiCache()
    pairs = _probe_pairs(space, alpha, interior_buffer, seed, samples, probe_level)
    records = []
    for m in (-1, 0, 1):
        for n in (-1, 0, 1):
            gen_a = PerturbedGenerator("lorentz", m, lam, alpha)
            gen_b = PerturbedGenerator("lorentz", n, lam, alpha)
            for probe, phi1, phi2 in pairs:
                records.append(
                    _residual_record(
                        space, gen_a, gen_b, probe, phi1, phi2, interior_buffer, cache
                    )
                )
    return {"family": "lorentz", "records": records, "summary": _summarize(records)}


def verify_virasoro_c0(
    space: Space,
    alpha: Scalar,
    lam: Scalar,
    m_range: int = 2,
    interior_buffer: Optional[int] = None,
    seed: int = 0,
    samples: int = 2,
) -> dict:
    """Chiral-difference family with imaginary coefficients: the ladder holds
    with no central term, cells limited to |m|, |n|, |m+n| <= m_range."""
    probe_level = 2
    if interior_buffer is None:
        interior_buffer = default_interior_buffer(m_range, probe_level)
    cache = PsiCache()
    pairs = _probe_pairs(space, alpha, interior_buffer, seed, samples, probe_level)
    records = []
    for m in range(-m_range, m_range + 1):
        for n in range(-m_range, m_range + 1):
            if abs(m + n) > m_range:
                continue
            gen_a = PerturbedGenerator("virasoro_c0", m, lam, alpha)
            gen_b = PerturbedGenerator("virasoro_c0", n, lam, alpha)
            for probe, phi1, phi2 in pairs:
                records.append(
                    _residual_record(
                        space, gen_a, gen_b, probe, phi1, phi2, interior_buffer, cache
                    )
                )
    coefficient_rows = []
    for m in range(-m_range, m_range + 1):
        for n in range(-m_range, m_range + 1):
            lhs, rhs = virasoro_combination(conformal_weight_fraction(alpha), m, n)
            coefficient_rows.append(
                {"m": m, "n": n, "lhs": str(lhs), "rhs": str(rhs), "equal": lhs == rhs}
            )
    return {
        "family": "virasoro_c0",
        "records": records,
        "coefficient_identity": coefficient_rows,
        "summary": _summarize(records),
    }


def conformal_weight_fraction(alpha) -> Fraction:
    """Exact weight for symbolic rows; float charges are rationalized first."""
    if isinstance(alpha, float):
        return Fraction(alpha).limit_denominator(10**12) ** 2 / 2
    weight = conformal_weight(alpha)
    re = getattr(weight, "re", weight)
    return Fraction(re)


def explore_d_half(
    space: Space,
    alpha: Scalar,
    lam: Scalar,
    m_range: int = 2,
    n_bands: int = 48,
    interior_buffer: Optional[int] = None,
) -> dict:
    """Diagnostic for the constant-coefficient family.

    Measures the cross-term gap against the ladder target and compares it to
    the predicted ``lam (2d - 1) (m - n) <phi1, Psi_{m+n} phi2>``; tabulates
    the symbolic closure coefficients; reports band partial sums without
    asserting convergence (at weight 1/2 the band norms are constant).
    """
    ctx = space.ctx
    probe_level = 1
    if interior_buffer is None:
        interior_buffer = default_interior_buffer(m_range, probe_level)
    cache = PsiCache()
    pairs = _probe_pairs(space, alpha, interior_buffer, seed=0, samples=0, probe_level=probe_level)
    d = conformal_weight(alpha)
    gap_scale = lam * (2 * d - 1)
    measured = []
    all_gaps_vanish = True
    for m in range(-m_range, m_range + 1):
        for n in range(-m_range, m_range + 1):
            if abs(m + n) > m_range:
                continue
            gen_a = PerturbedGenerator("d_half", m, lam, alpha)
            gen_b = PerturbedGenerator("d_half", n, lam, alpha)
            for probe, phi1, phi2 in pairs:
                parts = weak_commutator_parts(
                    space, gen_a, gen_b, phi1, phi2, interior_buffer, cache=cache
                )
                _ll_t, psi_t = commutator_targets(space, gen_a, gen_b, phi1, phi2, cache=cache)
                gap = parts.mixed - psi_t
                if ctx.is_zero(lam) or m == n:
                    predicted = ctx.zero()
                else:
                    psi_sum2, _ = cache.apply(space, alpha, m + n, phi2)
                    predicted = gap_scale * ((m - n) * inner_product(ctx, phi1, psi_sum2))
                all_gaps_vanish = all_gaps_vanish and ctx.is_zero(gap)
                gap_re, gap_im = ctx.re_im(gap)
                pre_re, pre_im = ctx.re_im(predicted)
                measured.append(
                    {
                        "m": m,
                        "n": n,
                        "probe": probe,
                        "gap_re": float(gap_re),
                        "gap_im": float(gap_im),
                        "predicted_re": float(pre_re),
                        "predicted_im": float(pre_im),
                        "matches_prediction": ctx.is_zero(gap - predicted),
                    }
                )
    series = partial_sum_norm_series(alpha, 0, n_bands)
    band_rows = [
        {"band": band, "band_norm_sq": float(val), "partial_sum": float(total)}
        for band, val, total in series
    ]
    d_re, _ = ctx.re_im(d)
    return {
        "family": "d_half",
        "weight": ctx.json_real(d_re),
        "lambda": ctx.json_real(ctx.re_im(lam)[0]),
        "alpha": ctx.json_real(ctx.re_im(alpha)[0]),
        "L": space.trunc.level_cutoff,
        "buffer": interior_buffer,
        "measured_gap": measured,
        "closure_table": closure_table(m_range=3),
        "band_partial_sums": band_rows,
        "closes_at_this_weight": all_gaps_vanish,
    }
