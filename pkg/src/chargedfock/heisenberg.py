"""Current mode actions J_m on sector and two-sided states.

Conventions (fixed by positivity of the Gram form and J_m* = J_{-m}):

* ``[J_m, J_n] = m * delta_{m,-n}``
* ``J_0`` acts on sector ``j`` as the scalar charge ``j * alpha0``
* ``J_{-k}`` (k > 0) prepends a part ``k`` with coefficient 1
* ``J_k`` (k > 0) removes one part ``k`` with coefficient ``k * multiplicity``

Actions are exact on the basis; a result component beyond the level cutoff is
dropped and flags ``overflow`` on the returned state.
"""

from __future__ import annotations

from .fock import Partition, SectorState, Space, TensorState


def _insert_part(lam: Partition, k: int) -> Partition:
    out = list(lam)
    for i, p in enumerate(out):
        if p <= k:
            out.insert(i, k)
            break
    else:
        out.append(k)
    return tuple(out)


def _remove_part(lam: Partition, k: int):
    """(multiplicity of k, lam with one k removed) or (0, None)."""
    mult = lam.count(k)
    if mult == 0:
        return 0, None
    out = list(lam)
    out.remove(k)
    return mult, tuple(out)


def j_step(lam: Partition, m: int, beta):
    """J_m on a single basis partition: list of (partition, coefficient)."""
    if m == 0:
        return [(lam, beta)] if beta != 0 else []
    if m < 0:
        return [(_insert_part(lam, -m), 1)]
    mult, mu = _remove_part(lam, m)
    if mult == 0:
        return []
    return [(mu, m * mult)]


def apply_J(space: Space, m: int, v: SectorState) -> SectorState:
    out = {}
    overflow = v.overflow
    for (j, lam), c in v.entries.items():
        for mu, coeff in j_step(lam, m, space.charge(j)):
            if not space.trunc.admits_level(sum(mu)):
                overflow = True
                continue
            key = (j, mu)
            out[key] = out.get(key, 0) + c * coeff
    return SectorState(out, overflow)


def apply_J_tensor(space: Space, side: str, m: int, v: TensorState) -> TensorState:
    """J_m acting on one chiral factor of a diagonal two-sided state."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    out = {}
    overflow = v.overflow
    for (j, left, right), c in v.entries.items():
        lam = left if side == "left" else right
        for mu, coeff in j_step(lam, m, space.charge(j)):
            if not space.trunc.admits_level(sum(mu)):
                overflow = True
                continue
            key = (j, mu, right) if side == "left" else (j, left, mu)
            out[key] = out.get(key, 0) + c * coeff
    return TensorState(out, overflow)
