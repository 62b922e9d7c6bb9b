"""Divisor classes on the moduli space of stable curves of genus g.

Coordinates follow the usual basis lambda, delta_0, ..., delta_{floor(g/2)}
of the rational Picard group for g >= 3.  A divisor is stored through the
sign convention

    D = a*lambda - sum_i b_i * delta_i

so the stored ``b`` numbers are the negatives of the delta coefficients.
Boundary subscripts beyond floor(g/2) refer to the same class as their
reflection: delta_k means delta_{g-k} when k > floor(g/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import (
    GenusMismatchError,
    IndexOutOfRangeError,
    NegativeCoefficientError,
    ParseError,
    UnsupportedGenusError,
)


def reflect_index(k: int, g: int) -> int:
    """Canonical boundary subscript: min(k, g - k)."""
    if k < 0 or k > g:
        raise IndexOutOfRangeError(f"delta index {k} outside 0..{g}")
    return min(k, g - k)


@dataclass(frozen=True, order=True)
class GenusContext:
    """Fixes the genus and with it the shape of the coefficient space."""

    g: int

    def __post_init__(self):
        if self.g < 2:
            raise UnsupportedGenusError(f"genus {self.g} < 2 is not supported")

    @property
    def max_delta(self) -> int:
        """Largest canonical boundary subscript, floor(g/2)."""
        return self.g // 2

    @property
    def dim(self) -> int:
        """Rank of the Picard group in this basis, floor(g/2) + 2."""
        return self.g // 2 + 2

    def require_basis(self) -> None:
        """Basis-dependent operations need g >= 3."""
        if self.g < 3:
            raise UnsupportedGenusError(
                f"genus {self.g}: the lambda/delta basis operations need g >= 3"
            )


def as_context(g: Union[int, GenusContext]) -> GenusContext:
    return g if isinstance(g, GenusContext) else GenusContext(g)


@dataclass(frozen=True)
class DivisorClass:
    """Rational divisor class a*lambda - sum b_i delta_i, i = 0..floor(g/2)."""

    ctx: GenusContext
    a: Fraction
    b: tuple[Fraction, ...]

    def __post_init__(self):
        # the lambda/delta coordinates are only a basis for g >= 3
        self.ctx.require_basis()
        want = self.ctx.max_delta + 1
        if len(self.b) != want:
            raise ValueError(f"expected {want} boundary coefficients, got {len(self.b)}")

    # -- coefficient access -------------------------------------------------

    def b_at(self, k: int) -> Fraction:
        """b coefficient for subscript k, reflecting k past floor(g/2)."""
        return self.b[reflect_index(k, self.ctx.g)]

    def delta_coeff(self, k: int) -> Fraction:
        """Signed coefficient of delta_k in the expanded expression, -b_k."""
        return -self.b_at(k)

    def coeffs(self) -> tuple[Fraction, ...]:
        """Coordinate vector (a, b_0, ..., b_{floor(g/2)})."""
        return (self.a, *self.b)

    # -- arithmetic ---------------------------------------------------------

    def _check_ctx(self, other: "DivisorClass") -> None:
        if self.ctx != other.ctx:
            raise GenusMismatchError(
                f"genus {self.ctx.g} combined with genus {other.ctx.g}"
            )

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check_ctx(other)
        return DivisorClass(
            self.ctx, self.a + other.a, tuple(x + y for x, y in zip(self.b, other.b))
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check_ctx(other)
        return DivisorClass(
            self.ctx, self.a - other.a, tuple(x - y for x, y in zip(self.b, other.b))
        )

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.ctx, -self.a, tuple(-x for x in self.b))

    def scale(self, c) -> "DivisorClass":
        c = Fraction(c)
        return DivisorClass(self.ctx, c * self.a, tuple(c * x for x in self.b))

    def __rmul__(self, c) -> "DivisorClass":
        return self.scale(c)

    def is_zero(self) -> bool:
        return self.a == 0 and all(x == 0 for x in self.b)

    # -- rendering ----------------------------------------------------------

    def to_expr(self) -> str:
        """Signed expansion like ``13*L - 2*d0 - 2*d1``."""
        pieces: list[str] = []
        if self.a != 0:
            pieces.append(f"{self.a}*L")
        for i, bi in enumerate(self.b):
            c = -bi
            if c == 0:
                continue
            if not pieces:
                pieces.append(f"{c}*d{i}" if c > 0 else f"-{-c}*d{i}")
            else:
                sign = " + " if c > 0 else " - "
                pieces.append(f"{sign}{abs(c)}*d{i}")
        return "".join(pieces) if pieces else "0"

    def to_json_dict(self) -> dict:
        return {
            "genus": self.ctx.g,
            "a": str(self.a),
            "b": [str(x) for x in self.b],
            "expr": self.to_expr(),
        }

    def __str__(self) -> str:
        return self.to_expr()


def from_coeffs(ctx: GenusContext, coeffs: Sequence) -> DivisorClass:
    """Build from a coordinate vector (a, b_0, ..., b_{floor(g/2)})."""
    ctx = as_context(ctx)
    if len(coeffs) != ctx.dim:
        raise ValueError(f"expected {ctx.dim} coordinates, got {len(coeffs)}")
    vals = [Fraction(c) for c in coeffs]
    return DivisorClass(ctx, vals[0], tuple(vals[1:]))


# -- named divisors ---------------------------------------------------------


def zero_divisor(ctx) -> DivisorClass:
    ctx = as_context(ctx)
    return DivisorClass(ctx, Fraction(0), tuple(Fraction(0) for _ in range(ctx.max_delta + 1)))


def lambda_class(ctx) -> DivisorClass:
    ctx = as_context(ctx)
    return DivisorClass(ctx, Fraction(1), tuple(Fraction(0) for _ in range(ctx.max_delta + 1)))


def delta(ctx, k: int) -> DivisorClass:
    """The boundary class delta_k (k reflected into 0..floor(g/2))."""
    ctx = as_context(ctx)
    i = reflect_index(k, ctx.g)
    b = [Fraction(0)] * (ctx.max_delta + 1)
    b[i] = Fraction(-1)
    return DivisorClass(ctx, Fraction(0), tuple(b))


def twelve_lambda_minus_delta0(ctx) -> DivisorClass:
    ctx = as_context(ctx)
    b = [Fraction(0)] * (ctx.max_delta + 1)
    b[0] = Fraction(1)
    return DivisorClass(ctx, Fraction(12), tuple(b))


def boundary_total(ctx) -> DivisorClass:
    """Total boundary, the sum of all delta_i."""
    ctx = as_context(ctx)
    return DivisorClass(
        ctx, Fraction(0), tuple(Fraction(-1) for _ in range(ctx.max_delta + 1))
    )


def canonical_class(ctx) -> DivisorClass:
    """13*lambda - 2 * (sum of all delta_i)."""
    ctx = as_context(ctx)
    return DivisorClass(
        ctx, Fraction(13), tuple(Fraction(2) for _ in range(ctx.max_delta + 1))
    )


def face_member(ctx, alpha, beta) -> DivisorClass:
    """(alpha + 12*beta)*lambda - beta*delta_0 for alpha, beta >= 0."""
    ctx = as_context(ctx)
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha < 0 or beta < 0:
        raise NegativeCoefficientError(f"alpha={alpha}, beta={beta} must be >= 0")
    b = [Fraction(0)] * (ctx.max_delta + 1)
    b[0] = beta
    return DivisorClass(ctx, alpha + 12 * beta, tuple(b))


def linear_combination(terms: Sequence[tuple], ctx=None) -> DivisorClass:
    """Sum of c*D over (c, D) pairs; all terms must share one genus."""
    if not terms and ctx is None:
        raise ValueError("empty combination with no genus context")
    acc = zero_divisor(as_context(ctx)) if ctx is not None else None
    for c, d in terms:
        term = d.scale(c)
        acc = term if acc is None else acc + term
    return acc


# -- parsing ----------------------------------------------------------------


class _DivisorParser:
    """Recursive descent over ``a*L - b0*d0 - ...`` with named shorthands."""

    def __init__(self, text: str, ctx: GenusContext):
        self.text = text
        self.ctx = ctx
        self.pos = 0

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def take(self, literal: str) -> bool:
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def parse_int(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a number")
        return int(self.text[start : self.pos])

    def parse_rational(self) -> Fraction:
        num = self.parse_int()
        if self.take("/"):
            den = self.parse_int()
            if den == 0:
                raise self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def parse_atom(self) -> DivisorClass:
        self.skip_ws()
        if self.take("12L-d0"):
            return twelve_lambda_minus_delta0(self.ctx)
        if self.take("lambda") or self.take("L"):
            return lambda_class(self.ctx)
        if self.take("Delta"):
            return boundary_total(self.ctx)
        if self.take("K"):
            return canonical_class(self.ctx)
        if self.take("d"):
            k = self.parse_int()
            return delta(self.ctx, k)
        raise self.error("expected a divisor name")

    def parse_term(self) -> DivisorClass:
        self.skip_ws()
        start = self.pos
        # the 12L-d0 shorthand starts with a digit, so try it before numbers
        if self.take("12L-d0"):
            return twelve_lambda_minus_delta0(self.ctx)
        if self.pos < len(self.text) and self.text[self.pos].isdigit():
            coeff = self.parse_rational()
            self.skip_ws()
            if self.take("*"):
                return self.parse_atom().scale(coeff)
            # a bare number is only meaningful as the zero divisor
            if coeff == 0:
                return zero_divisor(self.ctx)
            self.pos = start
            raise self.error("bare constant in a divisor expression")
        return self.parse_atom()

    def parse(self) -> DivisorClass:
        self.skip_ws()
        if self.at_end():
            raise self.error("empty divisor expression")
        negate = False
        if self.take("-"):
            negate = True
        elif self.take("+"):
            pass
        total = self.parse_term()
        if negate:
            total = -total
        while not self.at_end():
            self.skip_ws()
            if self.take("+"):
                total = total + self.parse_term()
            elif self.take("-"):
                total = total - self.parse_term()
            else:
                raise self.error("expected '+' or '-'")
        return total


def parse_divisor(text: str, ctx) -> DivisorClass:
    """Parse ``a*L - b0*d0 - ...`` (shorthands: lambda, 12L-d0, K, Delta, 0)."""
    return _DivisorParser(text, as_context(ctx)).parse()
