"""Polyhedral cones over the rationals and the F-nef face certificate.

Cones carry an H-representation (inequality rows with provenance labels),
a V-representation (generators), or both.  Everything is exact; inequality
rows and rays are kept in primitive integer form (gcd 1, positive scaling)
so output is reproducible across runs and machines.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .divisors import (
    DivisorClass,
    as_context,
    delta,
    lambda_class,
    twelve_lambda_minus_delta0,
)
from .errors import (
    CertificateFailure,
    DimensionLimitError,
    NotMemberError,
    NotPointedError,
)
from .fcurves import FCurve, ineq_row, intersect, is_fnef, numerical_classes
from .linalg import (
    QMatrix,
    Vec,
    dot,
    is_zero_vec,
    primitive,
    vec,
    vec_scale,
    vec_sub,
)

DEFAULT_DIM_LIMIT = 8


@dataclass(frozen=True)
class PolyCone:
    """Rational polyhedral cone with labelled inequalities.

    ``ineq_rows[i]`` is the functional of the constraint ``row . x >= 0``
    and ``labels[i]`` names where it came from (an F-curve tag, usually).
    """

    dim: int
    ineq_rows: tuple[Vec, ...] = ()
    labels: tuple[str, ...] = ()
    generators: tuple[Vec, ...] | None = None
    genus: int | None = None

    def __post_init__(self):
        if self.labels and len(self.labels) != len(self.ineq_rows):
            raise ValueError("one label per inequality row")
        for r in self.ineq_rows:
            if len(r) != self.dim:
                raise ValueError("inequality row with the wrong length")
        if self.generators is not None:
            for g in self.generators:
                if len(g) != self.dim:
                    raise ValueError("generator with the wrong length")

    @classmethod
    def from_inequalities(cls, rows: Sequence[Sequence], labels=None, genus=None) -> "PolyCone":
        prim = tuple(primitive(vec(r)) for r in rows)
        dim = len(prim[0]) if prim else 0
        if labels is None:
            labels = tuple(f"ineq{i}" for i in range(len(prim)))
        return cls(dim, prim, tuple(labels), None, genus)

    @classmethod
    def from_generators(cls, gens: Sequence[Sequence], dim=None, genus=None) -> "PolyCone":
        prim = tuple(primitive(vec(g)) for g in gens)
        if dim is None:
            dim = len(prim[0]) if prim else 0
        return cls(dim, (), (), prim, genus)

    def contains(self, point) -> bool:
        x = _as_point(self, point)
        if self.ineq_rows:
            return all(dot(r, x) >= 0 for r in self.ineq_rows)
        if self.generators is not None:
            return nonneg_combination(list(self.generators), x) is not None
        raise ValueError("cone has neither inequalities nor generators")


def _as_point(cone: PolyCone, point) -> Vec:
    x = point.coeffs() if isinstance(point, DivisorClass) else vec(point)
    if len(x) != cone.dim:
        raise ValueError(f"point of length {len(x)} in a {cone.dim}-dimensional cone")
    return x


def fnef_cone(g) -> PolyCone:
    """H-rep of the F-nef cone: one inequality per numerical F-curve class."""
    ctx = as_context(g)
    classes = numerical_classes(ctx)
    rows = tuple(primitive(ineq_row(rec.curve)) for rec in classes)
    labels = tuple(rec.curve.tag for rec in classes)
    return PolyCone(ctx.dim, rows, labels, None, ctx.g)


# -- exact nonnegative solving (Farkas direction) ----------------------------


def nonneg_combination(
    columns: Sequence[Sequence[Fraction]], target: Sequence[Fraction]
) -> list[Fraction] | None:
    """Solve ``sum_j x_j * columns[j] = target`` with ``x >= 0`` exactly.

    Phase-1 simplex with Bland's rule over Fractions; returns one solution
    or None when the system is infeasible.
    """
    m = len(target)
    n = len(columns)
    tableau: list[list[Fraction]] = []
    for i in range(m):
        row = [Fraction(columns[j][i]) for j in range(n)]
        rhs = Fraction(target[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        tableau.append(row + [Fraction(1 if k == i else 0) for k in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    total = n + m
    while True:
        in_basis_artificial = [i for i in range(m) if basis[i] >= n]
        entering = None
        for j in range(total):
            cost = Fraction(1 if j >= n else 0)
            reduced = cost - sum(tableau[i][j] for i in in_basis_artificial)
            if reduced < 0:
                entering = j
                break
        if entering is None:
            break
        pivot_row = None
        pivot_key = None
        for i in range(m):
            if tableau[i][entering] > 0:
                key = (tableau[i][-1] / tableau[i][entering], basis[i])
                if pivot_key is None or key < pivot_key:
                    pivot_key, pivot_row = key, i
        if pivot_row is None:
            raise RuntimeError("phase-1 objective cannot be unbounded")
        pv = tableau[pivot_row][entering]
        tableau[pivot_row] = [x / pv for x in tableau[pivot_row]]
        for i in range(m):
            if i != pivot_row and tableau[i][entering] != 0:
                f = tableau[i][entering]
                tableau[i] = [x - f * y for x, y in zip(tableau[i], tableau[pivot_row])]
        basis[pivot_row] = entering
    if sum(tableau[i][-1] for i in range(m) if basis[i] >= n) != 0:
        return None
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tableau[i][-1]
    return x


# -- extreme rays (double description) ---------------------------------------


def _rank_of(rows: Sequence[Vec]) -> int:
    return QMatrix.from_rows([list(r) for r in rows]).rank() if rows else 0


def _adjacent(A: Sequence[Vec], processed: Sequence[int], r1: Vec, r2: Vec, d: int) -> bool:
    common = [A[i] for i in processed if dot(A[i], r1) == 0 and dot(A[i], r2) == 0]
    return _rank_of(common) == d - 2


def _dd_extreme_rays(A: Sequence[Vec], d: int) -> list[Vec]:
    """Double description run over inequality rows of full rank d."""
    chosen: list[Vec] = []
    chosen_idx: list[int] = []
    for i, row in enumerate(A):
        if _rank_of(chosen + [row]) > len(chosen):
            chosen.append(row)
            chosen_idx.append(i)
            if len(chosen) == d:
                break
    inv = QMatrix.from_rows([list(r) for r in chosen]).inverse()
    rays = sorted({primitive(inv.col(j)) for j in range(d)})
    processed = list(chosen_idx)
    for i, row in enumerate(A):
        if i in chosen_idx:
            continue
        vals = {r: dot(row, r) for r in rays}
        neg = [r for r in rays if vals[r] < 0]
        if not neg:
            processed.append(i)
            continue
        pos = [r for r in rays if vals[r] > 0]
        zero = [r for r in rays if vals[r] == 0]
        new = set(pos) | set(zero)
        for rp in pos:
            for rn in neg:
                if _adjacent(A, processed, rp, rn, d):
                    comb = vec_sub(vec_scale(vals[rp], rn), vec_scale(vals[rn], rp))
                    new.add(primitive(comb))
        processed.append(i)
        rays = sorted(new)
    return rays


def extreme_rays(cone: PolyCone, limit: int = DEFAULT_DIM_LIMIT) -> list[Vec]:
    """Primitive extreme rays, sorted lexicographically.

    H-rep cones run double description (pointed cones only, dimension at
    most ``limit``).  V-rep cones drop generators that are nonnegative
    combinations of the others.
    """
    if cone.ineq_rows:
        if cone.dim > limit:
            raise DimensionLimitError(
                f"dimension {cone.dim} exceeds the ray enumeration limit {limit}"
            )
        if _rank_of(cone.ineq_rows) < cone.dim:
            raise NotPointedError("inequality rows do not have full rank")
        return _dd_extreme_rays(list(cone.ineq_rows), cone.dim)
    if cone.generators is not None:
        gens: list[Vec] = []
        for g in cone.generators:
            p = primitive(g)
            if not is_zero_vec(p) and p not in gens:
                gens.append(p)
        out = []
        for i, g0 in enumerate(gens):
            others = [g for j, g in enumerate(gens) if j != i]
            if not others or nonneg_combination(others, g0) is None:
                out.append(g0)
        return sorted(out)
    raise ValueError("cone has neither inequalities nor generators")


# -- faces and certificates ---------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class FaceCertificate:
    """Audit record for a face of a cone."""

    genus: int | None
    face_dim: int
    generators: tuple[Vec, ...] | None
    active_curves: tuple[str, ...]
    active_rank: int
    lemma_mat: QMatrix | None
    det: Fraction | None
    checks: tuple[Check, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "genus": self.genus,
            "face_dim": self.face_dim,
            "generators": None
            if self.generators is None
            else [[str(x) for x in g] for g in self.generators],
            "active_curves": list(self.active_curves),
            "active_rank": self.active_rank,
            "lemma_matrix": None
            if self.lemma_mat is None
            else [[str(self.lemma_mat.entry(i, j)) for j in range(self.lemma_mat.ncols)]
                  for i in range(self.lemma_mat.nrows)],
            "det": None if self.det is None else str(self.det),
            "checks": [
                {"name": c.name, "pass": c.ok, "detail": c.detail} for c in self.checks
            ],
        }


def face_of(cone: PolyCone, point, limit: int = DEFAULT_DIM_LIMIT) -> FaceCertificate:
    """Smallest face of the cone containing the point.

    Raises NotMemberError when the point violates an inequality.  Spanning
    rays are reported when the face dimension is within ``limit``, else the
    generators field is None.
    """
    if not cone.ineq_rows:
        raise ValueError("face_of needs an inequality representation")
    x = _as_point(cone, point)
    active_idx: list[int] = []
    for i, row in enumerate(cone.ineq_rows):
        v = dot(row, x)
        if v < 0:
            label = cone.labels[i] if cone.labels else f"ineq{i}"
            raise NotMemberError(f"violates {label}: value {v}")
        if v == 0:
            active_idx.append(i)
    active_rows = [cone.ineq_rows[i] for i in active_idx]
    active_rank = _rank_of(active_rows)
    face_dim = cone.dim - active_rank
    gens: tuple[Vec, ...] | None
    if face_dim == 0:
        gens = ()
    elif not active_rows:
        try:
            gens = tuple(extreme_rays(cone, limit))
        except DimensionLimitError:
            gens = None
    else:
        span = QMatrix.from_rows([list(r) for r in active_rows]).kernel_basis()
        f = len(span)
        restricted = []
        for row in cone.ineq_rows:
            rr = tuple(dot(row, kv) for kv in span)
            if not is_zero_vec(rr):
                restricted.append(primitive(rr))
        if f > limit or _rank_of(restricted) < f:
            gens = None
        else:
            sub = _dd_extreme_rays(restricted, f) if restricted else []
            back = []
            for y in sub:
                full = tuple(
                    sum((c * kv[t] for c, kv in zip(y, span)), Fraction(0))
                    for t in range(cone.dim)
                )
                back.append(primitive(full))
            gens = tuple(sorted(back))
    mat = det = None
    if cone.genus is not None:
        mat = lemma_matrix(cone.genus)
        det = mat.det()
    labels = cone.labels or tuple(f"ineq{i}" for i in range(len(cone.ineq_rows)))
    return FaceCertificate(
        genus=cone.genus,
        face_dim=face_dim,
        generators=gens,
        active_curves=tuple(labels[i] for i in active_idx),
        active_rank=active_rank,
        lemma_mat=mat,
        det=det,
    )


def lemma_matrix(g) -> QMatrix:
    """Pairing of {12*lambda, 12*lambda - delta_0, delta_1, ...} against
    the curves {C1, C2, C3(1), ...}, one row and one column per basis slot."""
    ctx = as_context(g)
    ctx.require_basis()
    row_divs = [lambda_class(ctx).scale(12), twelve_lambda_minus_delta0(ctx)]
    col_curves = [FCurve(ctx, "C1"), FCurve(ctx, "C2")]
    for i in range(1, ctx.dim - 1):
        row_divs.append(delta(ctx, i))
        col_curves.append(FCurve(ctx, "C3", (i,)))
    return QMatrix.from_rows(
        [[intersect(dv, cv) for cv in col_curves] for dv in row_divs]
    )


def face_certificate(
    g,
    gen1: DivisorClass,
    gen2: DivisorClass,
    gen_labels: tuple[str, str] = ("first-generator", "second-generator"),
) -> FaceCertificate:
    """Certify that two divisor classes span a 2-dimensional extremal face
    of the F-nef cone.

    Runs the whole battery: F-nefness of both generators, the vanishing
    pattern on the witness curves {C1, C2, C3(1), ...}, invertibility of
    the pairing matrix, and the rank of the common active set.  Raises
    CertificateFailure on the first violated check.
    """
    ctx = as_context(g)
    ctx.require_basis()
    d = ctx.dim
    classes = numerical_classes(ctx)
    witness = [FCurve(ctx, "C1"), FCurve(ctx, "C2")]
    witness += [FCurve(ctx, "C3", (i,)) for i in range(1, d - 1)]
    checks: list[Check] = []

    ok1, w1 = is_fnef(gen1)
    checks.append(
        Check(f"fnef:{gen_labels[0]}", ok1, "" if ok1 else f"negative against {w1.tag}")
    )
    ok2, w2 = is_fnef(gen2)
    checks.append(
        Check(f"fnef:{gen_labels[1]}", ok2, "" if ok2 else f"negative against {w2.tag}")
    )

    v1 = [intersect(gen1, c) for c in witness]
    ok = v1[0] != 0 and all(x == 0 for x in v1[1:])
    checks.append(
        Check(
            f"vanishing:{gen_labels[0]}",
            ok,
            "" if ok else f"witness values {[str(x) for x in v1]}",
        )
    )

    v2 = [intersect(gen2, c) for c in witness]
    ok = v2[1] != 0 and all(x == 0 for k, x in enumerate(v2) if k != 1)
    checks.append(
        Check(
            f"vanishing:{gen_labels[1]}",
            ok,
            "" if ok else f"witness values {[str(x) for x in v2]}",
        )
    )

    combined = gen1 + gen2
    vu = [intersect(combined, c) for c in witness]
    ok = vu[0] != 0 and vu[1] != 0 and all(x == 0 for x in vu[2:])
    checks.append(
        Check(
            "vanishing:interior-combination",
            ok,
            "" if ok else f"witness values {[str(x) for x in vu]}",
        )
    )

    mat = lemma_matrix(ctx)
    dt = mat.det()
    checks.append(
        Check("independence:lemma-matrix", dt != 0 and abs(dt) == 1, f"det = {dt}")
    )

    active = [
        rec
        for rec in classes
        if intersect(gen1, rec.curve) == 0 and intersect(gen2, rec.curve) == 0
    ]
    active_rank = _rank_of([primitive(ineq_row(rec.curve)) for rec in active])
    checks.append(
        Check(
            "face:active-rank",
            active_rank == d - 2,
            f"rank {active_rank}, expected {d - 2}",
        )
    )

    for c in checks:
        if not c.ok:
            raise CertificateFailure(c.name, c.detail)
    return FaceCertificate(
        genus=ctx.g,
        face_dim=d - active_rank,
        generators=(primitive(gen1.coeffs()), primitive(gen2.coeffs())),
        active_curves=tuple(rec.curve.tag for rec in active),
        active_rank=active_rank,
        lemma_mat=mat,
        det=dt,
        checks=tuple(checks),
    )


def verify_extremal_face(g) -> FaceCertificate:
    """Certificate for the face spanned by lambda and 12*lambda - delta_0."""
    ctx = as_context(g)
    return face_certificate(
        ctx,
        lambda_class(ctx),
        twelve_lambda_minus_delta0(ctx),
        ("lambda", "12lambda-delta0"),
    )
