"""Exact sparse multivariate polynomials over QQ, monomial orders, and
presented (quotient) rings.

Coefficients are `fractions.Fraction`, so arithmetic is exact and every
stored value is automatically in lowest terms with a positive denominator.
A monomial is a plain tuple of nonnegative integer exponents, one slot per
ring variable; exponents are Python ints and cannot overflow.  The zero
polynomial has an empty term map.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Union

Scalar = Union[int, Fraction]
Monomial = tuple[int, ...]

GREVLEX = "grevlex"
LEX = "lex"
BLOCK = "block"


class AlgebraError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(AlgebraError):
    """Operands live in different rings or have mismatched shapes."""


class ArgumentError(AlgebraError):
    """An argument violates an operation's contract."""


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when a divides b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_quotient(a: Monomial, b: Monomial) -> Monomial:
    """The monomial a/b; b must divide a."""
    q = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in q):
        raise ArgumentError("monomial quotient with negative exponent")
    return q


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def _grevlex_key(m: Monomial) -> tuple:
    # Graded, ties broken so that the *last* nonzero entry of the exponent
    # difference being negative means "greater".
    return (sum(m), tuple(-e for e in reversed(m)))


@lru_cache(maxsize=None)
def _key_function(order: str, block: int) -> Callable[[Monomial], tuple]:
    if order == GREVLEX:
        return _grevlex_key
    if order == LEX:
        return lambda m: m
    if order == BLOCK:
        def block_key(m: Monomial, k: int = block) -> tuple:
            return (_grevlex_key(m[:k]), _grevlex_key(m[k:]))
        return block_key
    raise ArgumentError(f"unknown monomial order {order!r}")


@dataclass(frozen=True)
class RingSignature:
    """Variable names plus the monomial order they carry.

    order is one of "grevlex", "lex", or "block"; for "block" the first
    `block` variables form a leading grevlex block and the remaining
    variables a trailing grevlex block (an elimination order for the
    leading block).
    """

    variables: tuple[str, ...]
    order: str = GREVLEX
    block: int = 0

    def __post_init__(self) -> None:
        if len(set(self.variables)) != len(self.variables):
            raise ArgumentError("duplicate variable names")
        if self.order not in (GREVLEX, LEX, BLOCK):
            raise ArgumentError(f"unknown monomial order {self.order!r}")
        if self.order == BLOCK and not 0 <= self.block <= len(self.variables):
            raise ArgumentError("block size out of range")

    def key(self) -> Callable[[Monomial], tuple]:
        return _key_function(self.order, self.block)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise ArgumentError(f"unknown variable {name!r}") from None

    @property
    def nvars(self) -> int:
        return len(self.variables)


def compare_monomials(a: Monomial, b: Monomial, sig: RingSignature) -> int:
    """-1, 0, or 1 as a is less than, equal to, or greater than b."""
    if len(a) != sig.nvars or len(b) != sig.nvars:
        raise DimensionError("monomial length does not match signature")
    if any(e < 0 for e in a) or any(e < 0 for e in b):
        raise ArgumentError("negative exponent")
    ka, kb = sig.key()(a), sig.key()(b)
    return (ka > kb) - (ka < kb)


def fresh_name(base: str, taken: Iterable[str]) -> str:
    """A deterministic identifier starting from `base` avoiding `taken`."""
    used = set(taken)
    if base not in used:
        return base
    k = 1
    while f"{base}_{k}" in used:
        k += 1
    return f"{base}_{k}"


class Polynomial:
    """Immutable sparse polynomial attached to a RingSignature."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: RingSignature, terms: Mapping[Monomial, Scalar]):
        clean: dict[Monomial, Fraction] = {}
        n = sig.nvars
        for m, c in terms.items():
            if len(m) != n:
                raise DimensionError("monomial length does not match signature")
            if any(e < 0 for e in m):
                raise ArgumentError("negative exponent")
            c = Fraction(c)
            if c:
                clean[m] = c
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "terms", clean)

    @staticmethod
    def _raw(sig: RingSignature, terms: dict[Monomial, Fraction]) -> "Polynomial":
        p = object.__new__(Polynomial)
        object.__setattr__(p, "sig", sig)
        object.__setattr__(p, "terms", terms)
        return p

    @classmethod
    def zero(cls, sig: RingSignature) -> "Polynomial":
        return cls._raw(sig, {})

    @classmethod
    def constant(cls, sig: RingSignature, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return cls.zero(sig)
        return cls._raw(sig, {(0,) * sig.nvars: c})

    @classmethod
    def variable(cls, sig: RingSignature, name: str) -> "Polynomial":
        i = sig.index(name)
        mono = tuple(1 if j == i else 0 for j in range(sig.nvars))
        return cls._raw(sig, {mono: Fraction(1)})

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Polynomial is immutable")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    __hash__ = None

    def _check(self, other: "Polynomial") -> None:
        if self.sig != other.sig:
            raise DimensionError("polynomials over different signatures")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.sig, other)
        return other

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, 0) + c
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
        return Polynomial._raw(self.sig, out)

    def __radd__(self, other) -> "Polynomial":
        return self.__add__(other)

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, 0) - c
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
        return Polynomial._raw(self.sig, out)

    def __rsub__(self, other) -> "Polynomial":
        coerced = self._coerce(other)
        if not isinstance(coerced, Polynomial):
            return NotImplemented
        return coerced.__sub__(self)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.sig, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                nc = out.get(m, 0) + c1 * c2
                if nc:
                    out[m] = nc
                else:
                    out.pop(m, None)
        return Polynomial._raw(self.sig, out)

    def __rmul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.sig)
        return Polynomial._raw(self.sig, {m: c * v for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c: Scalar) -> "Polynomial":
        """self * c * x^mono."""
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.sig)
        return Polynomial._raw(
            self.sig, {mono_mul(m, mono): c * v for m, v in self.terms.items()}
        )

    def __pow__(self, e: int) -> "Polynomial":
        if not isinstance(e, int) or e < 0:
            raise ArgumentError("exponent must be a nonnegative integer")
        result = Polynomial.constant(self.sig, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ArgumentError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.sig.key())

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def leading_term(self) -> tuple[Monomial, Fraction]:
        m = self.leading_monomial()
        return m, self.terms[m]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        c = self.leading_coefficient()
        if c == 1:
            return self
        return Polynomial._raw(self.sig, {m: v / c for m, v in self.terms.items()})

    def constant_value(self) -> Fraction:
        """The coefficient of the constant monomial."""
        return self.terms.get((0,) * self.sig.nvars, Fraction(0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.sig.variables
        parts: list[str] = []
        for m in sorted(self.terms, key=self.sig.key(), reverse=True):
            c = self.terms[m]
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not parts:
                parts.append(f"-{text}" if c < 0 else text)
            else:
                parts.append(f" - {text}" if c < 0 else f" + {text}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def transplant(
    f: Polynomial,
    new_sig: RingSignature,
    rename: Mapping[str, str] | None = None,
) -> Polynomial:
    """Re-home f into new_sig, optionally renaming variables first.

    Every variable appearing in f with a nonzero exponent must map to a
    variable of new_sig.
    """
    old = f.sig.variables
    slot: list[int | None] = []
    for name in old:
        target = rename.get(name, name) if rename else name
        try:
            slot.append(new_sig.variables.index(target))
        except ValueError:
            slot.append(None)
    out: dict[Monomial, Fraction] = {}
    for m, c in f.terms.items():
        exps = [0] * new_sig.nvars
        for i, e in enumerate(m):
            if not e:
                continue
            j = slot[i]
            if j is None:
                raise ArgumentError(
                    f"variable {old[i]!r} has no image in the target signature"
                )
            exps[j] += e
        key = tuple(exps)
        nc = out.get(key, 0) + c
        if nc:
            out[key] = nc
        else:
            out.pop(key, None)
    return Polynomial._raw(new_sig, out)


class PresentedRing:
    """QQ[variables]/(defining generators), with a cached reduced basis.

    Instances are immutable in practice; the defining basis is computed at
    most once and the cached value is reused by every later call, so
    sharing a ring between threads is safe.
    """

    __slots__ = ("signature", "defining", "_basis")

    def __init__(self, signature: RingSignature, defining: Iterable[Polynomial] = ()):
        object.__setattr__(self, "signature", signature)
        kept = []
        for p in defining:
            if p.sig != signature:
                raise DimensionError("defining generator over a different signature")
            if not p.is_zero():
                kept.append(p)
        object.__setattr__(self, "defining", tuple(kept))
        object.__setattr__(self, "_basis", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("PresentedRing is immutable")

    @property
    def is_quotient(self) -> bool:
        return bool(self.defining)

    def defining_basis(self) -> tuple[Polynomial, ...]:
        """Reduced Groebner basis of the defining ideal (cached)."""
        if self._basis is None:
            from .groebner import reduced_basis

            object.__setattr__(self, "_basis", reduced_basis(self.defining))
        return self._basis

    def reduce(self, f: Polynomial) -> Polynomial:
        """Normal form of f modulo the defining ideal."""
        if f.sig != self.signature:
            raise DimensionError("polynomial over a different signature")
        if not self.defining:
            return f
        from .groebner import divide

        _, r = divide(f, self.defining_basis())
        return r

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.signature)

    def one(self) -> Polynomial:
        return Polynomial.constant(self.signature, 1)

    def var(self, name: str) -> Polynomial:
        return Polynomial.variable(self.signature, name)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PresentedRing):
            return NotImplemented
        return self.signature == other.signature and self.defining == other.defining

    __hash__ = None

    def __str__(self) -> str:
        base = f"QQ[{','.join(self.signature.variables)}]"
        if self.defining:
            rels = ", ".join(str(p) for p in self.defining)
            return f"{base}/({rels})"
        return base

    def __repr__(self) -> str:
        return f"PresentedRing({self})"
