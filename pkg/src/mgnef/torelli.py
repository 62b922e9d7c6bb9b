"""Toroidal and Satake compactifications seen through the Torelli map.

The catalog keeps three models of the compactified moduli of abelian
varieties, each with its Picard basis, nef cone, and (when one is known)
the images of the basis classes under pullback along the Torelli map:

    satake    rank 1, basis M;       nef = {a*M : a >= 0};       M -> lambda
    partial   rank 2, basis M, D;    nef = {a >= 12b >= 0};      no pullback stored
    perfect   rank 2, basis M, D;    nef = {a >= 12b >= 0};      M -> lambda, D -> delta_0

Divisors on a model are written a*M - b*D, matching the divisor side's
sign convention.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cones import PolyCone, extreme_rays
from .divisors import (
    DivisorClass,
    as_context,
    boundary_total,
    canonical_class,
    delta,
    face_member,
    lambda_class,
)
from .errors import ModelMismatchError, ParseError
from .fcurves import FCurve, intersect


@dataclass(frozen=True)
class CompactificationModel:
    """One compactification: Picard basis, nef cone rows, pullback flag."""

    name: str
    picard_rank: int
    basis_labels: tuple[str, ...]
    nef_rows: tuple[tuple[Fraction, ...], ...]
    nef_row_labels: tuple[str, ...]
    has_pullback: bool

    def nef_cone(self) -> PolyCone:
        """Nef cone in the model's own (a, b) coordinates."""
        return PolyCone.from_inequalities(self.nef_rows, self.nef_row_labels)


def _rows(*rows) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


SATAKE = CompactificationModel(
    name="satake",
    picard_rank=1,
    basis_labels=("M",),
    nef_rows=_rows((1,)),
    nef_row_labels=("a>=0",),
    has_pullback=True,
)

PARTIAL = CompactificationModel(
    name="partial",
    picard_rank=2,
    basis_labels=("M", "D"),
    nef_rows=_rows((1, -12), (0, 1)),
    nef_row_labels=("a-12b>=0", "b>=0"),
    has_pullback=False,
)

PERFECT = CompactificationModel(
    name="perfect",
    picard_rank=2,
    basis_labels=("M", "D"),
    nef_rows=_rows((1, -12), (0, 1)),
    nef_row_labels=("a-12b>=0", "b>=0"),
    has_pullback=True,
)

MODELS: dict[str, CompactificationModel] = {
    m.name: m for m in (SATAKE, PARTIAL, PERFECT)
}


def get_model(name: str) -> CompactificationModel:
    try:
        return MODELS[name]
    except KeyError:
        raise ModelMismatchError(
            f"unknown model {name!r}, expected one of {sorted(MODELS)}"
        ) from None


@dataclass(frozen=True)
class AbelianDivisor:
    """a*M - b*D on one of the cataloged models (b fixed to 0 at rank 1)."""

    model: str
    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        m = get_model(self.model)
        if m.picard_rank == 1 and self.b != 0:
            raise ModelMismatchError(f"model {self.model!r} has no D class")

    def coeffs(self) -> tuple[Fraction, ...]:
        m = get_model(self.model)
        return (self.a,) if m.picard_rank == 1 else (self.a, self.b)

    def to_expr(self) -> str:
        if get_model(self.model).picard_rank == 1 or self.b == 0:
            return f"{self.a}*M"
        sign = " - " if self.b > 0 else " + "
        return f"{self.a}*M{sign}{abs(self.b)}*D"

    def to_json_dict(self) -> dict:
        return {
            "model": self.model,
            "a": str(self.a),
            "b": str(self.b),
            "expr": self.to_expr(),
        }


def parse_abelian(text: str, model_name: str) -> AbelianDivisor:
    """Parse ``a*M - b*D`` (either term optional, rationals as p/q)."""
    model = get_model(model_name)
    coeffs = {"M": Fraction(0), "D": Fraction(0)}
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def read_rational() -> Fraction:
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise ParseError("expected a number", pos)
        num = int(text[start:pos])
        if pos < n and text[pos] == "/":
            pos += 1
            dstart = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            if pos == dstart:
                raise ParseError("expected a denominator", pos)
            den = int(text[dstart:pos])
            if den == 0:
                raise ParseError("zero denominator", dstart)
            return Fraction(num, den)
        return Fraction(num)

    skip_ws()
    if pos >= n:
        raise ParseError("empty divisor expression", pos)
    first = True
    while True:
        skip_ws()
        if pos >= n:
            break
        sign = Fraction(1)
        if text[pos] == "-":
            sign = Fraction(-1)
            pos += 1
        elif text[pos] == "+":
            pos += 1
        elif not first:
            raise ParseError("expected '+' or '-'", pos)
        skip_ws()
        coeff = Fraction(1)
        if pos < n and text[pos].isdigit():
            coeff = read_rational()
            skip_ws()
            if pos < n and text[pos] == "*":
                pos += 1
                skip_ws()
            elif coeff == 0 and (pos >= n or text[pos] in "+-"):
                first = False
                continue
            else:
                raise ParseError("expected '*' after the coefficient", pos)
        if pos >= n or text[pos] not in "MD":
            raise ParseError("expected basis class M or D", pos)
        label = text[pos]
        pos += 1
        coeffs[label] += sign * coeff
        first = False
    if coeffs["D"] != 0 and model.picard_rank == 1:
        raise ModelMismatchError(f"model {model.name!r} has no D class")
    # the expression a*M - b*D stores b with the sign flipped
    return AbelianDivisor(model.name, coeffs["M"], -coeffs["D"])


def basis_images(model: CompactificationModel, ctx) -> tuple[DivisorClass, ...]:
    """Pullback images of the model's basis classes, when the catalog has them."""
    ctx = as_context(ctx)
    if not model.has_pullback:
        raise ModelMismatchError(
            f"no pullback stored in the catalog for model {model.name!r}"
        )
    if model.name == "satake":
        return (lambda_class(ctx),)
    return (lambda_class(ctx), delta(ctx, 0))


def pullback(model: CompactificationModel, adiv: AbelianDivisor, ctx) -> DivisorClass:
    """Image of a*M - b*D on the divisor side."""
    if adiv.model != model.name:
        raise ModelMismatchError(
            f"divisor on model {adiv.model!r} pulled back through {model.name!r}"
        )
    images = basis_images(model, ctx)
    result = images[0].scale(adiv.a)
    if len(images) > 1:
        result = result - images[1].scale(adiv.b)
    return result


def pullback_nef_cone(model: CompactificationModel, ctx) -> PolyCone:
    """V-rep image of the model's nef cone in divisor coordinates."""
    ctx = as_context(ctx)
    gens = []
    for ray in extreme_rays(model.nef_cone()):
        adiv = AbelianDivisor(model.name, ray[0], ray[1] if len(ray) > 1 else Fraction(0))
        gens.append(pullback(model, adiv, ctx).coeffs())
    return PolyCone.from_generators(gens, dim=ctx.dim, genus=ctx.g)


# -- position inside the two-parameter face -----------------------------------


class FaceLocation(enum.Enum):
    INTERIOR = "interior"
    RAY_LAMBDA = "ray-lambda"
    RAY_12LAMBDA_DELTA0 = "ray-12lambda-delta0"
    ORIGIN = "origin"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class FaceClassification:
    location: FaceLocation
    alpha: Fraction | None = None
    beta: Fraction | None = None
    epsilon: Fraction | None = None


def classify_in_face(d: DivisorClass) -> FaceClassification:
    """Position of a divisor relative to the cone spanned by lambda and
    12*lambda - delta_0.

    A member decomposes as alpha*lambda + beta*(12*lambda - delta_0) with
    alpha, beta >= 0; interior members also report epsilon = a/b - 12,
    the slope excess over the boundary ray.
    """
    if any(x != 0 for x in d.b[1:]):
        return FaceClassification(FaceLocation.OUTSIDE)
    beta = d.b[0]
    alpha = d.a - 12 * beta
    if beta < 0 or alpha < 0:
        return FaceClassification(FaceLocation.OUTSIDE)
    if alpha == 0 and beta == 0:
        return FaceClassification(FaceLocation.ORIGIN, alpha, beta)
    if beta == 0:
        return FaceClassification(FaceLocation.RAY_LAMBDA, alpha, beta)
    if alpha == 0:
        return FaceClassification(FaceLocation.RAY_12LAMBDA_DELTA0, alpha, beta)
    return FaceClassification(
        FaceLocation.INTERIOR, alpha, beta, epsilon=d.a / d.b[0] - 12
    )


# -- semi-ampleness catalog ----------------------------------------------------


@dataclass(frozen=True)
class SemiampleStatus:
    classification: FaceClassification
    status: str
    reason: str


def semiample_status(d: DivisorClass) -> SemiampleStatus:
    """What the catalog knows about base loci of multiples of the class."""
    cls = classify_in_face(d)
    g = d.ctx.g
    loc = cls.location
    if loc is FaceLocation.ORIGIN:
        return SemiampleStatus(cls, "semi-ample", "the zero class is trivially semi-ample")
    if loc is FaceLocation.RAY_LAMBDA:
        return SemiampleStatus(
            cls,
            "semi-ample",
            "pullback of the ample generator under the map to the Satake model",
        )
    if loc is FaceLocation.INTERIOR:
        return SemiampleStatus(
            cls,
            "semi-ample",
            "pullback of an ample class under the map to the perfect cone model",
        )
    if loc is FaceLocation.RAY_12LAMBDA_DELTA0:
        if g <= 11:
            return SemiampleStatus(
                cls,
                "semi-ample over the complex numbers",
                "boundary ray of the pulled back nef cone, basepoint free in genus up to 11",
            )
        return SemiampleStatus(
            cls,
            "nef, semi-ampleness unknown",
            "nef for every genus, but basepoint freeness beyond genus 11 "
            "is not settled by this catalog",
        )
    return SemiampleStatus(
        cls, "unknown", "outside the two-parameter face covered by this catalog"
    )


# -- scan of mD - (K + Delta) over a parameter grid ----------------------------


@dataclass(frozen=True)
class BpfEntry:
    m: int
    alpha: Fraction
    beta: Fraction
    divisor: DivisorClass
    c3_values: tuple[Fraction, ...]

    @property
    def ok(self) -> bool:
        return all(v == Fraction(-1) for v in self.c3_values)


@dataclass(frozen=True)
class BpfReport:
    genus: int
    entries: tuple[BpfEntry, ...]
    symbolic_ok: bool

    @property
    def deviations(self) -> list[BpfEntry]:
        return [e for e in self.entries if not e.ok]

    @property
    def ok(self) -> bool:
        return self.symbolic_ok and not self.deviations

    def to_json_dict(self) -> dict:
        return {
            "genus": self.genus,
            "entries": len(self.entries),
            "symbolic_delta_check": self.symbolic_ok,
            "all_c3_equal_minus_one": not self.deviations,
            "deviations": [
                {
                    "m": e.m,
                    "alpha": str(e.alpha),
                    "beta": str(e.beta),
                    "c3_values": [str(v) for v in e.c3_values],
                }
                for e in self.deviations
            ],
        }


def bpf_scan(ctx, m_values: Sequence[int], alphas: Sequence, betas: Sequence) -> BpfReport:
    """Evaluate m*D_{alpha,beta} - (K + Delta) against every C3(i).

    D_{alpha,beta} lives on the face, so the subtraction leaves every
    delta_i coefficient (i >= 1) equal to -1 no matter what m is; each C3
    value should therefore be exactly -1.  The symbolic flag records that
    coefficient identity, the entries record the numeric scan.
    """
    ctx = as_context(ctx)
    ctx.require_basis()
    g = ctx.g
    adjoint = canonical_class(ctx) + boundary_total(ctx)
    c3_curves = [FCurve(ctx, "C3", (i,)) for i in range(1, g - 1)]

    symbolic_ok = all(x == 1 for x in adjoint.b[1:])
    entries = []
    for alpha in alphas:
        for beta in betas:
            member = face_member(ctx, alpha, beta)
            if any(x != 0 for x in member.b[1:]):
                symbolic_ok = False
            for m in m_values:
                dv = member.scale(m) - adjoint
                vals = tuple(intersect(dv, c) for c in c3_curves)
                entries.append(BpfEntry(int(m), Fraction(alpha), Fraction(beta), dv, vals))
    return BpfReport(g, tuple(entries), symbolic_ok)
