"""F-curves and their intersection numbers with divisor classes.

The six families of one-parameter degenerations are labelled C1..C6:

    C1            varying elliptic tail
    C2            varying point on a fixed component
    C3(i)         elliptic bridge between parts of genus i and g-i-1
    C4(i)         four-pointed rational spine, parts of genus i and g-i-1
    C5(i, j)      two moving nodes, parts of genus i and j
    C6(i, j, k, l)  four parts attached to a rational cross, i+j+k+l = g

Intersection numbers against D = a*lambda - sum b_i delta_i:

    C1:  a/12 - b_0 + b_1/12
    C2:  b_0
    C3:  b_i
    C4:  2 b_0 - b_{i+1}
    C5:  b_i + b_j - b_{i+j}
    C6:  b_i + b_j + b_k + b_l - b_{i+j} - b_{i+k} - b_{i+l}

with every subscript read through the reflection k -> min(k, g-k).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .divisors import DivisorClass, GenusContext, as_context, delta, lambda_class
from .errors import GenusMismatchError, IndexOutOfRangeError, UnsupportedGenusError
from .linalg import Vec


@dataclass(frozen=True)
class FCurve:
    """One F-curve, stored with its raw (unreflected) indices."""

    ctx: GenusContext
    family: str
    indices: tuple[int, ...] = ()

    def __post_init__(self):
        g = self.ctx.g
        fam, idx = self.family, self.indices
        if fam == "C1":
            if idx:
                raise IndexOutOfRangeError("C1 takes no indices")
        elif fam == "C2":
            if idx:
                raise IndexOutOfRangeError("C2 takes no indices")
            if g < 3:
                raise UnsupportedGenusError("C2 needs genus >= 3")
        elif fam == "C3":
            if len(idx) != 1:
                raise IndexOutOfRangeError("C3 takes one index")
            if not 1 <= idx[0] <= g - 2:
                raise IndexOutOfRangeError(f"C3 index {idx[0]} outside 1..{g - 2}")
        elif fam == "C4":
            if len(idx) != 1:
                raise IndexOutOfRangeError("C4 takes one index")
            if not 0 <= idx[0] <= g - 2:
                raise IndexOutOfRangeError(f"C4 index {idx[0]} outside 0..{g - 2}")
        elif fam == "C5":
            if len(idx) != 2:
                raise IndexOutOfRangeError("C5 takes two indices")
            i, j = idx
            if i < 1 or j < 1 or i + j > g - 1:
                raise IndexOutOfRangeError(f"C5 indices {idx} need i,j >= 1, i+j <= {g - 1}")
        elif fam == "C6":
            if len(idx) != 4:
                raise IndexOutOfRangeError("C6 takes four indices")
            if any(i < 1 for i in idx):
                raise IndexOutOfRangeError(f"C6 indices {idx} must all be >= 1")
            if sum(idx) != g:
                raise IndexOutOfRangeError(f"C6 indices {idx} must sum to the genus {g}")
        else:
            raise ValueError(f"unknown family {fam!r}")

    @property
    def tag(self) -> str:
        if not self.indices:
            return self.family
        return f"{self.family}({','.join(str(i) for i in self.indices)})"

    @property
    def sort_key(self) -> tuple:
        return (int(self.family[1]), self.indices)

    def __str__(self) -> str:
        return self.tag


def intersect(d: DivisorClass, c: FCurve) -> Fraction:
    """Intersection number of a divisor class with an F-curve."""
    if d.ctx != c.ctx:
        raise GenusMismatchError(f"divisor genus {d.ctx.g} vs curve genus {c.ctx.g}")
    fam, idx = c.family, c.indices
    if fam == "C1":
        return d.a / 12 - d.b_at(0) + d.b_at(1) / 12
    if fam == "C2":
        return d.b_at(0)
    if fam == "C3":
        return d.b_at(idx[0])
    if fam == "C4":
        return 2 * d.b_at(0) - d.b_at(idx[0] + 1)
    if fam == "C5":
        i, j = idx
        return d.b_at(i) + d.b_at(j) - d.b_at(i + j)
    i, j, k, l = idx
    return (
        d.b_at(i) + d.b_at(j) + d.b_at(k) + d.b_at(l)
        - d.b_at(i + j) - d.b_at(i + k) - d.b_at(i + l)
    )


def intersection_vector(c: FCurve) -> Vec:
    """(lambda . C, delta_0 . C, ..., delta_{floor(g/2)} . C)."""
    ctx = c.ctx
    vals = [intersect(lambda_class(ctx), c)]
    for i in range(ctx.max_delta + 1):
        vals.append(intersect(delta(ctx, i), c))
    return tuple(vals)


def ineq_row(c: FCurve) -> Vec:
    """Coefficients of D . C as a functional on (a, b_0, ..., b_{floor(g/2)})."""
    v = intersection_vector(c)
    return (v[0],) + tuple(-x for x in v[1:])


def enumerate_fcurves_raw(g) -> list[FCurve]:
    """All curves with canonically ordered indices, before numerical merging.

    C5 is listed with i <= j and C6 with i <= j <= k <= l; permuted index
    tuples give the same curve, so only the sorted form is emitted.
    """
    ctx = as_context(g)
    n = ctx.g
    curves = [FCurve(ctx, "C1")]
    if n >= 3:
        curves.append(FCurve(ctx, "C2"))
    for i in range(1, n - 1):
        curves.append(FCurve(ctx, "C3", (i,)))
    for i in range(0, n - 1):
        curves.append(FCurve(ctx, "C4", (i,)))
    for i in range(1, n):
        for j in range(i, n - i):
            curves.append(FCurve(ctx, "C5", (i, j)))
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                l = n - i - j - k
                if l >= k:
                    curves.append(FCurve(ctx, "C6", (i, j, k, l)))
    return curves


@dataclass(frozen=True)
class FCurveClass:
    """A numerical class of F-curves: representative, vector, all tags."""

    curve: FCurve
    vector: Vec
    tags: tuple[str, ...]


@lru_cache(maxsize=None)
def _classes_cached(ctx: GenusContext) -> tuple[FCurveClass, ...]:
    groups: dict[Vec, list[FCurve]] = {}
    for c in enumerate_fcurves_raw(ctx):
        groups.setdefault(intersection_vector(c), []).append(c)
    records = []
    for vector, members in groups.items():
        members.sort(key=lambda c: c.sort_key)
        records.append(
            FCurveClass(members[0], vector, tuple(c.tag for c in members))
        )
    records.sort(key=lambda r: r.curve.sort_key)
    return tuple(records)


def numerical_classes(g) -> list[FCurveClass]:
    """Curves grouped by intersection vector, one representative per class.

    The representative is the curve whose (family, indices) key is smallest,
    so C4(0) represents the g = 3 class {C4(0), C4(1)}.  Needs g >= 3.
    """
    ctx = as_context(g)
    ctx.require_basis()
    return list(_classes_cached(ctx))


def enumerate_fcurves(g) -> list[FCurve]:
    """Distinct numerical F-curve classes, canonically sorted.

    For g = 2 the raw family list is returned (the lambda/delta basis is
    not available there, so no numerical merging applies).
    """
    ctx = as_context(g)
    if ctx.g == 2:
        return enumerate_fcurves_raw(ctx)
    return [rec.curve for rec in numerical_classes(ctx)]


def is_fnef(d: DivisorClass) -> tuple[bool, FCurve | None]:
    """Nonnegativity against every F-curve.

    Returns (True, None) or (False, witness) where the witness is the
    violated curve with the smallest (family, indices) key.
    """
    for rec in numerical_classes(d.ctx):
        if intersect(d, rec.curve) < 0:
            return False, rec.curve
    return True, None
