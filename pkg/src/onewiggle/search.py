"""One-wiggle families: enumeration, omega sets, replay, greedy search.

A family fixes two slots of f at basis unitaries and wiggles the third over
u^p_q.  The wiggle row index is forced (two choices reach target rows 0 and
1); the wiggle column sweeps all residues, so a family produces 2d coefficient
forms covering the targets {u^0_q} and {u^1_q}.  The family is valid when no
required form vanishes identically.

Omega(H) is the union of the zero sets of the parameter-dependent forms; a
certificate is an ordered family list whose Omega-intersection is empty or a
known exceptional point set.
"""

import random
from dataclasses import dataclass

from .affine import (
    ALWAYS_ZERO,
    NEVER_ZERO,
    GoodnessSignature,
    UnionOfAffine,
    goodness,
    intersect_unions,
    subset_from_form,
)
from .clock_shift import BasisUnitary
from .poly_eval import AffineForm, evaluate_on_units
from .rings import CycloError, CycloField


class InvalidFamilyError(CycloError):
    """Family descriptor invalid at this dimension (indices or validity)."""


@dataclass(frozen=True)
class WiggleFamily:
    """(wiggle slot, two fixed units in slot order) at dimension d."""

    d: int
    wiggle_slot: int  # 1, 2 or 3
    fixed: tuple  # (BasisUnitary, BasisUnitary) for the non-wiggle slots

    @staticmethod
    def of(d: int, slot: int, fixed_indices) -> "WiggleFamily":
        if slot not in (1, 2, 3):
            raise InvalidFamilyError(f"wiggle slot {slot} not in 1..3")
        units = []
        for p, q in fixed_indices:
            if not (0 <= p < d and 0 <= q < d):
                raise InvalidFamilyError(f"index ({p},{q}) out of range at d={d}")
            units.append(BasisUnitary(p, q, d))
        return WiggleFamily(d, slot, tuple(units))

    def triple(self, wiggle: BasisUnitary) -> tuple:
        slots = [None, None, None]
        slots[self.wiggle_slot - 1] = wiggle
        rest = [i for i in range(3) if i != self.wiggle_slot - 1]
        slots[rest[0]], slots[rest[1]] = self.fixed
        return tuple(slots)

    def describe(self) -> str:
        parts = []
        it = iter(self.fixed)
        for i in range(1, 4):
            parts.append("u^p_q" if i == self.wiggle_slot else repr(next(it)))
        return f"f({', '.join(parts)})"


@dataclass(frozen=True)
class FamilyEvaluation:
    """The 2d (wiggle unit, target, coefficient form) rows of one family."""

    family: WiggleFamily
    rows: tuple  # of (BasisUnitary, BasisUnitary, AffineForm)

    def forms(self):
        return tuple(form for _, _, form in self.rows)


def evaluate_family(family: WiggleFamily, field: CycloField) -> FamilyEvaluation:
    """All 2d evaluations; raises InvalidFamilyError on an identically-zero
    required coefficient."""
    d = field.d
    rowsum = sum(u.p for u in family.fixed)
    rows = []
    for target_row in (0, 1):
        pw = (target_row - rowsum) % d
        for qw in range(d):
            wiggle = BasisUnitary(pw, qw, d)
            target, form = evaluate_on_units(field, family.triple(wiggle))
            assert target.p == target_row
            if form.is_zero():
                raise InvalidFamilyError(
                    f"{family.describe()} has identically-zero coefficient "
                    f"on {target!r}"
                )
            rows.append((wiggle, target, form))
    return FamilyEvaluation(family, tuple(rows))


def enumerate_families(field: CycloField) -> list[WiggleFamily]:
    """All valid one-wiggle families, in (slot, fixed indices) order."""
    if field.d < 3:
        raise CycloError("one-wiggle enumeration needs d >= 3")
    d = field.d
    out = []
    for slot in (1, 2, 3):
        for p1 in range(d):
            for q1 in range(d):
                for p2 in range(d):
                    for q2 in range(d):
                        fam = WiggleFamily(
                            d, slot, (BasisUnitary(p1, q1, d), BasisUnitary(p2, q2, d))
                        )
                        try:
                            evaluate_family(fam, field)
                        except InvalidFamilyError:
                            continue
                        out.append(fam)
    return out


def omega_set(family: WiggleFamily, field: CycloField) -> UnionOfAffine:
    """Union of the zero sets of the family's parameter-dependent forms."""
    evaluation = evaluate_family(family, field)
    members = []
    for form in evaluation.forms():
        s = subset_from_form(form)
        if s is ALWAYS_ZERO:
            raise InvalidFamilyError(f"{family.describe()} invalid: zero form")
        if s is not NEVER_ZERO:
            members.append(s)
    return UnionOfAffine(members)


def replay(families, field: CycloField) -> tuple[UnionOfAffine, list]:
    """Fold the Omega-intersection over the family order.

    Returns the final union and the per-step goodness trace.
    """
    phi = None
    trace = []
    for fam in families:
        if fam.d != field.d:
            raise InvalidFamilyError(f"family at d={fam.d} replayed at d={field.d}")
        om = omega_set(fam, field)
        phi = om if phi is None else intersect_unions(phi, om)
        trace.append(goodness(phi))
    if phi is None:
        raise CycloError("no families to replay")
    return phi, trace


@dataclass(frozen=True)
class SearchConfig:
    """Greedy search controls; defaults give the fully deterministic mode."""

    seed: int = 0
    budget: int | None = None  # candidates sampled per step; None = all
    max_dim_only: bool = False  # score candidates against the top-dimension part
    target: str = "empty"  # 'empty' or 'point'

    def __post_init__(self):
        if self.target not in ("empty", "point"):
            raise CycloError(f"unknown search target {self.target!r}")


@dataclass
class SearchResult:
    selected: list  # WiggleFamily, in selection order
    trace: list  # GoodnessSignature after each selection
    final: UnionOfAffine
    reached_target: bool
    stalled: bool
    config: SearchConfig

    def signature(self) -> GoodnessSignature:
        return goodness(self.final)


def _target_reached(phi: UnionOfAffine, target: str) -> bool:
    if target == "empty":
        return phi.is_empty()
    return bool(phi.members) and all(m.dimension == 0 for m in phi.members)


def greedy_search(families, field: CycloField, config: SearchConfig) -> SearchResult:
    """The paper's selection loop, made deterministic.

    The first family is the one with the best standalone signature (ties by
    enumeration order).  Each later step scores every remaining candidate by
    the signature of Phi meet Omega(H) (or of Phi_max meet Omega(H) when
    max_dim_only is set), keeps the best strict improvement, and stops when
    the target outcome is reached or no candidate improves.  With a sampling
    budget, candidates are drawn by a seeded PRNG and testing ends early once
    a strict improvement has been seen after min(32, budget) trials.
    """
    families = list(families)
    if not families:
        raise CycloError("empty family list")
    omegas = []
    seen = {}
    for fam in families:
        om = omega_set(fam, field)
        key = om.members
        if key in seen:  # identical Omega-set adds nothing the first can't
            omegas.append(None)
        else:
            seen[key] = fam
            omegas.append(om)
    candidates = [i for i, om in enumerate(omegas) if om is not None]

    best_i = min(candidates, key=lambda i: (goodness(omegas[i]), i))
    selected = [families[best_i]]
    phi = omegas[best_i]
    trace = [goodness(phi)]
    remaining = [i for i in candidates if i != best_i]
    rng = random.Random(config.seed)

    while remaining and not _target_reached(phi, config.target):
        current = goodness(phi)
        pool = list(remaining)
        if config.budget is not None:
            rng.shuffle(pool)
            min_trials = min(32, config.budget)

        accepted = None  # (index, trial union)
        if config.max_dim_only:
            # rank candidates by their effect on the worst-dimension part,
            # then accept the first whose full intersection improves
            proxy = phi.max_dimension_part()
            pool = pool if config.budget is None else pool[: config.budget]
            ranked = sorted(
                pool, key=lambda i: (goodness(intersect_unions(proxy, omegas[i])), i)
            )
            for i in ranked:
                trial = intersect_unions(phi, omegas[i])
                sig = goodness(trial)
                if sig < current or (sig == current and len(trial) < len(phi)):
                    accepted = (i, trial)
                    break
        else:
            best = None  # (signature, index, trial)
            tested = 0
            for i in pool:
                trial = intersect_unions(phi, omegas[i])
                sig = goodness(trial)
                tested += 1
                if best is None or (sig, i) < (best[0], best[1]):
                    best = (sig, i, trial)
                if config.budget is not None:
                    if tested >= config.budget:
                        break
                    if tested >= min_trials and best[0] < current:
                        break
            if best is not None and (
                best[0] < current
                or (best[0] == current and len(best[2]) < len(phi))
            ):
                accepted = (best[1], best[2])

        if accepted is None:
            return SearchResult(
                selected, trace, phi, _target_reached(phi, config.target), True, config
            )
        phi = accepted[1]
        selected.append(families[accepted[0]])
        trace.append(goodness(phi))
        remaining.remove(accepted[0])

    return SearchResult(
        selected, trace, phi, _target_reached(phi, config.target), False, config
    )
