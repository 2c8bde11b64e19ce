"""Exact affine subsets of the 4-dimensional parameter space and their unions.

A subset is the solution set of rows (c1, c2, c3, c4, c0), meaning
c1*a123 + c2*a132 + c3*a213 + c4*a231 + c0 = 0, kept in reduced row-echelon
form.  Two arithmetic modes share the machinery:

* concrete - entries in a cyclotomic field Q(w_d); pivots are 1 and pivot
  columns are otherwise zero.  Rows are stored in the field's integer form
  (den, ints) with zero = (), which the elimination kernel works on directly.
* generic  - entries are polynomials in Q[w] with w a formal root of unity;
  elimination is fraction-free (never dividing by a polynomial of positive
  degree), pivots are monic, entries above a pivot have strictly lower
  degree, and every discarded inconsistency row (0,0,0,0,p) is recorded as
  the side condition "p does not vanish at the root of unity".
"""

from dataclasses import dataclass, field

from .poly_eval import AffineForm, ParamPoint
from .rings import CycloError, CycloField, CycloNum, Poly, rat


class _Sentinel:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


#: the form is a nonzero constant: its zero set is empty and is discarded
NEVER_ZERO = _Sentinel("NEVER_ZERO")
#: the form vanishes identically: the family cannot produce this target
ALWAYS_ZERO = _Sentinel("ALWAYS_ZERO")

_N_COLS = 5
_CONST_COL = 4


class SideConditionSet:
    """Polynomials in w assumed nonvanishing at the primitive d-th root.

    Stored primitive (integer content removed, positive leading coefficient);
    constants are dropped since they never vanish.
    """

    def __init__(self, polys=()):
        self._polys: set[Poly] = set()
        for p in polys:
            self.add(p)

    def add(self, p: Poly) -> None:
        if p.is_zero():
            raise CycloError("zero polynomial is not a side condition")
        if p.is_constant():
            return
        self._polys.add(p.primitive())

    def update(self, other: "SideConditionSet") -> None:
        self._polys |= other._polys

    def polys(self) -> list[Poly]:
        return sorted(self._polys, key=lambda p: (p.degree, _poly_key(p)))

    def product(self) -> Poly:
        out = Poly.of(1)
        for p in self._polys:
            out = out * p
        return out

    def __len__(self):
        return len(self._polys)

    def __iter__(self):
        return iter(self.polys())

    def __repr__(self):
        return f"SideConditionSet({self.polys()!r})"


def _poly_key(p: Poly):
    return tuple((int(c.numerator), int(c.denominator)) for c in p.coeffs)


@dataclass(frozen=True)
class AffineSubset:
    """Solution set of an RREF system; dimension 4 - (number of rows).

    `raw` is the storage form: in concrete mode a tuple of rows of
    integer-form field values, in generic mode a tuple of rows of Poly.
    """

    field_ctx: object  # CycloField, or None in generic mode
    raw: tuple
    generic: bool
    key: tuple = field(repr=False, compare=False, default=None)
    mcache: dict = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        if self.generic:
            key_rows = tuple(
                tuple(_poly_key(e) for e in row) for row in self.raw
            )
        else:
            key_rows = self.raw
        object.__setattr__(self, "key", (self.dimension, key_rows))
        object.__setattr__(self, "mcache", {})

    @property
    def dimension(self) -> int:
        return 4 - len(self.raw)

    @property
    def rows(self) -> tuple:
        """Rows as ring elements (CycloNum in concrete mode, Poly in generic)."""
        if self.generic:
            return self.raw
        f = self.field_ctx
        return tuple(
            tuple(CycloNum(f, f.rat_coeffs(e)) for e in row) for row in self.raw
        )

    def __eq__(self, other):
        return (
            isinstance(other, AffineSubset)
            and self.generic == other.generic
            and self.key == other.key
        )

    def __hash__(self):
        return hash((self.generic, self.key))

    def row_key_set(self) -> frozenset:
        return frozenset(self.key[1])

    def __repr__(self):
        mode = "generic" if self.generic else "concrete"
        return f"AffineSubset(dim={self.dimension}, rows={len(self.raw)}, {mode})"


def _check_mode(a: AffineSubset, b: AffineSubset):
    if a.generic != b.generic:
        raise CycloError("cannot mix generic and concrete affine subsets")


# ---------------------------------------------------------------------------
# concrete mode: RREF over a cyclotomic field, on integer-form rows

_EMPTY = object()  # inconsistent system marker
_SAME = object()  # inserted rows were all redundant


def _leading_index(row):
    for i, e in enumerate(row):
        if e:
            return i
    return None


def _insert_rows(f: CycloField, basis_rows, new_rows):
    """Insert rows into an RREF basis.  Returns _EMPTY, _SAME, or new rows."""
    imul, isub = f.imul, f.isub
    basis = [(_leading_index(r), r) for r in basis_rows]
    changed = False
    for row in new_rows:
        for pc, brow in basis:
            c = row[pc]
            if c:
                row = tuple(
                    isub(x, imul(c, y)) if y else x for x, y in zip(row, brow)
                )
        lead = _leading_index(row)
        if lead is None:
            continue
        if lead == _CONST_COL:
            return _EMPTY
        if row[lead] != (1, (1,)):
            inv = f.iinv(row[lead])
            row = tuple(imul(inv, e) for e in row)
        basis = [
            (
                pc,
                tuple(
                    isub(x, imul(brow[lead], y)) if y else x
                    for x, y in zip(brow, row)
                )
                if brow[lead]
                else brow,
            )
            for pc, brow in basis
        ]
        basis.append((lead, row))
        basis.sort(key=lambda t: t[0])
        changed = True
    if not changed:
        return _SAME
    return tuple(r for _, r in basis)


def _to_ival_rows(f: CycloField, rows):
    return [tuple(f.ival(e.coeffs) for e in row) for row in rows]


def rref_concrete(rows):
    """RREF rows of CycloNum, or None if the system is inconsistent."""
    rows = list(rows)
    f = rows[0][0].field
    out = _insert_rows(f, (), _to_ival_rows(f, rows))
    if out is _EMPTY:
        return None
    if out is _SAME:
        return ()
    return tuple(tuple(CycloNum(f, f.rat_coeffs(e)) for e in row) for row in out)


# ---------------------------------------------------------------------------
# generic mode: fraction-free elimination over Q[w]


def _row_content_normalize(row):
    """Scale a row of polynomials by a rational: integer coefficients,
    content 1 across the whole row, positive leading coefficient of the
    leading entry.  Rational scaling never changes the solution set."""
    joined = []
    for e in row:
        joined.extend(e.coeffs)
    if not joined:
        return row
    whole = Poly(joined).primitive()
    lead = None
    for e in row:
        if e:
            lead = e
            break
    # recover the scaling factor from one nonzero coefficient
    old = next(c for c in joined if c)
    pos = joined.index(old)
    scale = whole.coeffs[pos] / old
    if lead.leading() * scale < 0:
        scale = -scale
    return tuple(e * scale for e in row)


def rref_generic(rows, conditions: SideConditionSet | None = None):
    """Fraction-free echelon with monic pivots and reduced upper entries.

    Returns RREF rows, or None when an inconsistency row (0,0,0,0,p) arises;
    each such p is emitted into `conditions`.  Pivots are the lowest-degree
    nonzero candidates (ties by row order).
    """
    remaining = [tuple(r) for r in rows if any(e for e in r)]
    pivots: list = []  # (col, row)
    for col in range(4):
        cands = [(r[col].degree, idx) for idx, r in enumerate(remaining) if r[col]]
        if not cands:
            continue
        _, best = min(cands)
        pivot = remaining.pop(best)
        lead_coeff = pivot[col].leading()
        if lead_coeff != 1:
            pivot = tuple(e * (1 / lead_coeff) for e in pivot)
        reduced = []
        for r in remaining:
            if r[col]:
                m = pivot[col]
                r = tuple(m * x - r[col] * y for x, y in zip(r, pivot))
                if any(e for e in r):
                    reduced.append(_row_content_normalize(r))
            else:
                reduced.append(r)
        remaining = reduced
        pivots.append((col, pivot))

    inconsistent = False
    for r in remaining:
        p = r[_CONST_COL]
        if p:
            inconsistent = True
            if conditions is not None:
                conditions.add(p)
    if inconsistent:
        return None

    # reduce entries above each pivot modulo the monic pivot polynomial
    for i in range(len(pivots) - 1, -1, -1):
        col, prow = pivots[i]
        m = prow[col]
        for j in range(i):
            cj, rj = pivots[j]
            e = rj[col]
            if e and e.degree >= m.degree:
                q, _ = divmod(e, m)
                rj = tuple(x - q * y for x, y in zip(rj, prow))
                pivots[j] = (cj, rj)
    return tuple(row for _, row in pivots)


# ---------------------------------------------------------------------------
# subsets, intersections, unions


def subset_from_form(form: AffineForm, conditions: SideConditionSet | None = None):
    """Zero set of an affine form: a subset, NEVER_ZERO, or ALWAYS_ZERO.

    In generic mode a parameter-free form that is a nonzero non-monomial
    polynomial is discarded as never zero *under the side condition* that it
    does not vanish, which is emitted.
    """
    if form.is_zero():
        return ALWAYS_ZERO
    generic = isinstance(form.constant, Poly)
    if form.is_constant():
        if generic:
            c = form.constant
            if sum(1 for x in c.coeffs if x) > 1 and conditions is not None:
                conditions.add(c)
        return NEVER_ZERO
    row = form.row()
    if generic:
        rows = rref_generic([row], conditions)
        if rows is None:
            return None
        return AffineSubset(None, rows, True)
    f = form.constant.field
    out = _insert_rows(f, (), [tuple(f.ival(e.coeffs) for e in row)])
    return AffineSubset(f, out, False)


def intersect(
    a: AffineSubset,
    b: AffineSubset,
    conditions: SideConditionSet | None = None,
):
    """Stack and re-reduce; None when the intersection is empty."""
    _check_mode(a, b)
    if a.generic:
        rows = rref_generic(list(a.raw) + list(b.raw), conditions)
        if rows is None:
            return None
        return AffineSubset(None, rows, True)
    out = _insert_rows(a.field_ctx, a.raw, b.raw)
    if out is _EMPTY:
        return None
    if out is _SAME:
        return a
    return AffineSubset(a.field_ctx, out, False)


def is_subset(a: AffineSubset, b: AffineSubset) -> bool:
    """True when solution(a) is contained in solution(b)."""
    met = intersect(a, b)
    return met is not None and met == a


class UnionOfAffine:
    """Canonically-ordered, deduplicated union of affine subsets.

    Members subsumed by another member through row containment are dropped:
    if rows(A) is a subset of rows(B) then B's solutions lie inside A's and
    B adds nothing to the union.
    """

    __slots__ = ("members",)

    def __init__(self, members=()):
        unique = {}
        for m in members:
            unique.setdefault((m.generic, m.key), m)
        # a member is redundant when some member with strictly fewer rows has
        # a row subset of its rows; scan dimensions from high to low so only
        # cross-dimension comparisons are needed
        by_dim: dict[int, list] = {}
        for m in unique.values():
            by_dim.setdefault(m.dimension, []).append(m)
        kept = []
        kept_rowsets: list[frozenset] = []
        for dim in sorted(by_dim, reverse=True):
            fresh = []
            for m in by_dim[dim]:
                rs = m.row_key_set()
                if not any(prev < rs for prev in kept_rowsets):
                    kept.append(m)
                    fresh.append(rs)
            kept_rowsets.extend(fresh)
        self.members = tuple(sorted(kept, key=lambda m: m.key))

    def is_empty(self) -> bool:
        return not self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other):
        return isinstance(other, UnionOfAffine) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def max_dimension_part(self) -> "UnionOfAffine":
        if not self.members:
            return self
        top = max(m.dimension for m in self.members)
        return UnionOfAffine(m for m in self.members if m.dimension == top)

    def __repr__(self):
        return f"UnionOfAffine({self.signature()})"

    def signature(self) -> "GoodnessSignature":
        return goodness(self)


def _raw_point(subset: AffineSubset):
    """Coordinates of a 0-dimensional subset, negated consts in integer form."""
    coords = [()] * 4
    for row in subset.raw:
        c = row[_CONST_COL]
        coords[_leading_index(row)] = (c[0], tuple(-v for v in c[1])) if c else ()
    return coords


def _raw_point_on(f: CycloField, coords, rows) -> bool:
    imul, iadd = f.imul, f.iadd
    for row in rows:
        acc = row[_CONST_COL]
        for c, v in zip(row, coords):
            if c and v:
                acc = iadd(acc, imul(c, v))
        if acc:
            return False
    return True


def _mod_point(subset: AffineSubset, mf):
    """Cached modular image of a 0-dimensional subset's coordinates."""
    cached = subset.mcache.get("pt")
    if cached is None:
        cached = tuple(mf.reduce(c) for c in _raw_point(subset))
        subset.mcache["pt"] = cached
    return cached


def _mod_rows(subset: AffineSubset, mf):
    """Cached modular image of the rows; a row reduces to None when any of
    its denominators collides with the modulus (no information)."""
    cached = subset.mcache.get("rows")
    if cached is None:
        rows = []
        for row in subset.raw:
            mrow = tuple(mf.reduce(e) for e in row)
            rows.append(None if any(v is None for v in mrow) else mrow)
        cached = tuple(rows)
        subset.mcache["rows"] = cached
    return cached


def _batch_inverses(f: CycloField, values):
    """Montgomery's trick: k inversions for 3(k-1) products and one inverse."""
    imul = f.imul
    prefix = []
    acc = None
    for v in values:
        acc = v if acc is None else imul(acc, v)
        prefix.append(acc)
    inv_acc = f.iinv(acc)
    out = [None] * len(values)
    for i in range(len(values) - 1, 0, -1):
        out[i] = imul(inv_acc, prefix[i - 1])
        inv_acc = imul(inv_acc, values[i])
    out[0] = inv_acc
    return out


def _sweep_hyperplanes(a: AffineSubset, planes, out):
    """Intersect one positive-dimensional subset with many 1-row subsets,
    batching the pivot inversions across the sweep."""
    f = a.field_ctx
    imul, isub = f.imul, f.isub
    basis = [(_leading_index(r), r) for r in a.raw]
    pending = []  # (lead, reduced row)
    for b in planes:
        row = b.raw[0]
        for pc, brow in basis:
            c = row[pc]
            if c:
                row = tuple(
                    isub(x, imul(c, y)) if y else x for x, y in zip(row, brow)
                )
        lead = _leading_index(row)
        if lead is None:
            out.append(a)  # the whole subset lies inside this hyperplane
        elif lead != _CONST_COL:
            pending.append((lead, row))
    if not pending:
        return
    inverses = _batch_inverses(f, [row[lead] for lead, row in pending])
    for (lead, row), inv in zip(pending, inverses):
        if row[lead] != (1, (1,)):
            row = tuple(imul(inv, e) for e in row)
        rows = [
            tuple(
                isub(x, imul(brow[lead], y)) if y else x
                for x, y in zip(brow, row)
            )
            if brow[lead]
            else brow
            for _, brow in basis
        ]
        rows.append(row)
        rows.sort(key=_leading_index)
        out.append(AffineSubset(f, tuple(rows), False))


def intersect_unions(
    theta: UnionOfAffine,
    phi: UnionOfAffine,
    conditions: SideConditionSet | None = None,
) -> UnionOfAffine:
    """All pairwise intersections, empties dropped, canonicalized."""
    out = []
    mf = None
    phi_all_planes = all(
        not b.generic and len(b.raw) == 1 for b in phi.members
    ) and bool(phi.members)
    for a in theta.members:
        if not a.generic and a.dimension == 0:
            # A point survives iff it lies on some member of the other
            # union.  A nonzero image under the modular filter proves a row
            # is violated exactly, so only candidates that pass the filter
            # reach the exact test; the verdict is always decided exactly.
            if mf is None:
                mf = a.field_ctx.mod_filter()
            coords = _raw_point(a)
            cmod = _mod_point(a, mf)
            exact_only = any(v is None for v in cmod)
            P = mf.P
            hit = False
            for b in phi.members:
                if not exact_only:
                    off = False
                    for mrow in _mod_rows(b, mf):
                        if mrow is None:
                            continue
                        acc = mrow[_CONST_COL]
                        for c, v in zip(mrow, cmod):
                            if c:
                                acc += c * v
                        if acc % P:
                            off = True
                            break
                    if off:
                        continue
                if _raw_point_on(a.field_ctx, coords, b.raw):
                    hit = True
                    break
            if hit:
                out.append(a)
            continue
        if phi_all_planes and not a.generic:
            _sweep_hyperplanes(a, phi.members, out)
            continue
        for b in phi.members:
            met = intersect(a, b, conditions)
            if met is not None:
                out.append(met)
    return UnionOfAffine(out)


@dataclass(frozen=True)
class GoodnessSignature:
    """Dimension histogram ((dim, count), ...) with dims descending.

    Total order: fewer high-dimensional members is better; exhausting the
    list earlier is better.  The empty union has the unique minimum ().
    """

    entries: tuple

    def _padded(self, n):
        return self.entries + ((-1, 0),) * (n - len(self.entries))

    def __lt__(self, other):
        n = max(len(self.entries), len(other.entries))
        return self._padded(n) < other._padded(n)

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        return other < self

    def __ge__(self, other):
        return other <= self

    def __repr__(self):
        return f"Signature{list(self.entries)!r}"


def goodness(u: UnionOfAffine) -> GoodnessSignature:
    counts: dict[int, int] = {}
    for m in u.members:
        counts[m.dimension] = counts.get(m.dimension, 0) + 1
    return GoodnessSignature(
        tuple((d, counts[d]) for d in sorted(counts, reverse=True))
    )


def contains_point(a: AffineSubset, p: ParamPoint) -> bool:
    """Exact membership: every row equation satisfied."""
    if a.generic:
        coords = (p.a123, p.a132, p.a213, p.a231)
        for row in a.raw:
            acc = row[_CONST_COL]
            for c, v in zip(row, coords):
                acc = acc + c * rat(v)
            if acc:
                return False
        return True
    f = a.field_ctx
    coords = [
        f.ival(v.coeffs) if isinstance(v, CycloNum) else f.ival((rat(v),))
        for v in (p.a123, p.a132, p.a213, p.a231)
    ]
    return _raw_point_on(f, coords, a.raw)


def union_contains_point(u: UnionOfAffine, p: ParamPoint) -> bool:
    return any(contains_point(m, p) for m in u.members)


def point_of(subset: AffineSubset):
    """The single solution of a 0-dimensional concrete subset, if rational."""
    if subset.dimension != 0 or subset.generic:
        return None
    from .rings import Rational

    coords = [None] * 4
    for row in subset.raw:
        lead = _leading_index(row)
        c = row[_CONST_COL]
        if c and len(c[1]) > 1:
            return None
        coords[lead] = Rational(-c[1][0], c[0]) if c else Rational(0)
    return ParamPoint(*coords)


def subset_through_point(p: ParamPoint, field_ctx: CycloField) -> AffineSubset:
    """The 0-dimensional concrete subset {p}; used to encode expected points."""
    one = (1, (1,))
    rows = []
    for i, v in enumerate((p.a123, p.a132, p.a213, p.a231)):
        row = [()] * 5
        row[i] = one
        r = rat(v)
        num, den = int(r.numerator), int(r.denominator)
        row[_CONST_COL] = (den, (-num,)) if num else ()
        rows.append(tuple(row))
    return AffineSubset(field_ctx, tuple(rows), False)
