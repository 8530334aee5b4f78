"""Buchberger engine: multivariate division, reduced Groebner bases, ideal
membership, variable elimination, and ring-map kernels.

All computations over a quotient ring happen in the ambient polynomial
ring with the defining generators adjoined; outputs are deterministic
(selection by minimal lcm degree, ties by generator index, bases sorted
by decreasing leading monomial).
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from .poly import (
    ArgumentError,
    BLOCK,
    DimensionError,
    GREVLEX,
    LEX,
    Polynomial,
    PresentedRing,
    RingSignature,
    fresh_name,
    mono_degree,
    mono_divides,
    mono_lcm,
    mono_mul,
    mono_quotient,
    transplant,
)


def divide(
    f: Polynomial,
    divisors: Sequence[Polynomial],
    ring: PresentedRing | None = None,
) -> tuple[list[Polynomial], Polynomial]:
    """Division with remainder: f = sum(q[i]*divisors[i]) + r.

    Divisors are tried in list order (first match wins); no term of r is
    divisible by any divisor's leading term.
    """
    divisors = list(divisors)
    sig = f.sig
    for d in divisors:
        if d.sig != sig:
            raise DimensionError("divisor over a different signature")
        if d.is_zero():
            raise ArgumentError("zero divisor")
    if ring is not None and ring.signature != sig:
        raise DimensionError("polynomial does not live in the given ring")
    key = sig.key()
    lms = [d.leading_monomial() for d in divisors]
    lcs = [d.terms[m] for d, m in zip(divisors, lms)]
    work = dict(f.terms)
    rem: dict = {}
    quots: list[dict] = [{} for _ in divisors]
    while work:
        m = max(work, key=key)
        c = work[m]
        for i, lm in enumerate(lms):
            if mono_divides(lm, m):
                t = mono_quotient(m, lm)
                q = c / lcs[i]
                quots[i][t] = quots[i].get(t, 0) + q
                for m2, c2 in divisors[i].terms.items():
                    mm = mono_mul(t, m2)
                    nc = work.get(mm, 0) - q * c2
                    if nc:
                        work[mm] = nc
                    else:
                        work.pop(mm, None)
                break
        else:
            rem[m] = c
            del work[m]
    return (
        [Polynomial._raw(sig, {m: c for m, c in q.items() if c}) for q in quots],
        Polynomial._raw(sig, rem),
    )


def spolynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """The S-polynomial of f and g (both monic-normalized internally)."""
    if f.sig != g.sig:
        raise DimensionError("polynomials over different signatures")
    mf, cf = f.leading_term()
    mg, cg = g.leading_term()
    lcm = mono_lcm(mf, mg)
    return f.mul_term(mono_quotient(lcm, mf), 1 / cf) - g.mul_term(
        mono_quotient(lcm, mg), 1 / cg
    )


def buchberger(generators: Iterable[Polynomial]) -> list[Polynomial]:
    """A (not yet reduced) monic Groebner basis, deterministically built.

    Pair selection is the normal strategy (minimal lcm degree first, ties
    by index); Buchberger's coprimality and chain criteria prune pairs.
    """
    G = [g.monic() for g in generators if not g.is_zero()]
    if not G:
        return []
    sig = G[0].sig
    lead = [g.leading_monomial() for g in G]
    heap: list[tuple[int, int, int]] = []
    pending: set[tuple[int, int]] = set()

    def push(i: int, j: int) -> None:
        lcm = mono_lcm(lead[i], lead[j])
        heapq.heappush(heap, (mono_degree(lcm), i, j))
        pending.add((i, j))

    for j in range(len(G)):
        for i in range(j):
            push(i, j)
    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        lcm = mono_lcm(lead[i], lead[j])
        if lcm == mono_mul(lead[i], lead[j]):
            continue  # coprime leading monomials
        skip = False
        for k in range(len(G)):
            if k in (i, j) or not mono_divides(lead[k], lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (
                min(j, k),
                max(j, k),
            ) not in pending:
                skip = True
                break
        if skip:
            continue
        _, r = divide(spolynomial(G[i], G[j]), G)
        if not r.is_zero():
            G.append(r.monic())
            lead.append(r.leading_monomial())
            new = len(G) - 1
            for k in range(new):
                push(k, new)
    return G


def reduced_basis(generators: Iterable[Polynomial]) -> tuple[Polynomial, ...]:
    """The unique reduced Groebner basis, sorted by decreasing leading
    monomial: monic elements, no term divisible by another leading term."""
    G = buchberger(generators)
    if not G:
        return ()
    key = G[0].sig.key()
    kept: list[Polynomial] = []
    for g in sorted(G, key=lambda p: key(p.leading_monomial())):
        lm = g.leading_monomial()
        if not any(mono_divides(k.leading_monomial(), lm) for k in kept):
            kept.append(g)
    changed = True
    while changed:
        changed = False
        for idx in range(len(kept)):
            others = kept[:idx] + kept[idx + 1 :]
            if not others:
                continue
            _, r = divide(kept[idx], others)
            r = r.monic()
            if r != kept[idx]:
                kept[idx] = r
                changed = True
    kept.sort(key=lambda p: key(p.leading_monomial()), reverse=True)
    return tuple(kept)


class IdealHandle:
    """An ideal of a presented ring with a cached reduced basis.

    The basis is that of <generators> + <ring defining generators> in the
    ambient polynomial ring; it is computed at most once.
    """

    __slots__ = ("ring", "generators", "_basis")

    def __init__(self, ring: PresentedRing, generators: Iterable[Polynomial]):
        gens = tuple(generators)
        for g in gens:
            if g.sig != ring.signature:
                raise DimensionError("generator over a different signature")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_basis", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("IdealHandle is immutable")

    def groebner_basis(self) -> tuple[Polynomial, ...]:
        if self._basis is None:
            gens = self.generators + self.ring.defining
            object.__setattr__(self, "_basis", reduced_basis(gens))
        return self._basis

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.sig != self.ring.signature:
            raise DimensionError("polynomial over a different signature")
        basis = self.groebner_basis()
        if not basis:
            return f
        _, r = divide(f, basis)
        return r

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def is_proper(self) -> bool:
        return not self.contains(self.ring.one())

    def __eq__(self, other) -> bool:
        if not isinstance(other, IdealHandle):
            return NotImplemented
        return self.ring == other.ring and self.groebner_basis() == other.groebner_basis()

    __hash__ = None

    def __str__(self) -> str:
        return f"ideal({', '.join(str(g) for g in self.generators) or '0'})"

    def __repr__(self) -> str:
        return f"IdealHandle({self})"


def reduced_groebner(ideal: IdealHandle) -> tuple[Polynomial, ...]:
    """The cached reduced Groebner basis of the ideal."""
    return ideal.groebner_basis()


def contains(ideal: IdealHandle, f: Polynomial) -> bool:
    """Ideal membership via normal form against the reduced basis."""
    return ideal.contains(f)


def eliminate(ideal: IdealHandle, drop: Iterable[str]) -> IdealHandle:
    """Generators of (ideal + defining ideal) intersected with the subring
    omitting the dropped variables, computed with a block order."""
    drop_set = set(drop)
    sig = ideal.ring.signature
    unknown = drop_set - set(sig.variables)
    if unknown:
        raise ArgumentError(f"cannot drop unknown variables {sorted(unknown)}")
    if not drop_set:
        return IdealHandle(ideal.ring, ideal.generators)
    dropped = [v for v in sig.variables if v in drop_set]
    kept = [v for v in sig.variables if v not in drop_set]
    esig = RingSignature(tuple(dropped + kept), BLOCK, block=len(dropped))
    gens = [transplant(g, esig) for g in ideal.generators + ideal.ring.defining]
    basis = reduced_basis(gens)
    k = len(dropped)
    out_order = LEX if sig.order == LEX else GREVLEX
    osig = RingSignature(tuple(kept), out_order)
    result = [
        transplant(b, osig)
        for b in basis
        if all(m[:k] == (0,) * k for m in b.terms)
    ]
    return IdealHandle(PresentedRing(osig), result)


class RingMap:
    """A QQ-algebra map source -> target, given by images of the source
    variables; well-definedness on the source's defining ideal is checked
    eagerly at construction."""

    __slots__ = ("source", "target", "images", "_powers")

    def __init__(
        self,
        source: PresentedRing,
        target: PresentedRing,
        images: Sequence[Polynomial],
    ):
        images = tuple(images)
        if len(images) != source.signature.nvars:
            raise DimensionError(
                f"expected {source.signature.nvars} images, got {len(images)}"
            )
        for im in images:
            if im.sig != target.signature:
                raise DimensionError("image over a different signature")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_powers", {})
        for p in source.defining:
            if not target.reduce(self._substitute(p)).is_zero():
                raise ArgumentError(
                    f"map does not kill the defining relation {p}"
                )

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("RingMap is immutable")

    def _power(self, i: int, e: int) -> Polynomial:
        keyed = self._powers.get((i, e))
        if keyed is None:
            keyed = self.images[i] ** e
            self._powers[(i, e)] = keyed
        return keyed

    def _substitute(self, f: Polynomial) -> Polynomial:
        out = Polynomial.zero(self.target.signature)
        for m, c in f.terms.items():
            term = Polynomial.constant(self.target.signature, c)
            for i, e in enumerate(m):
                if e:
                    term = term * self._power(i, e)
            out = out + term
        return out

    def apply(self, f: Polynomial) -> Polynomial:
        """The image of f, reduced modulo the target's defining ideal."""
        if f.sig != self.source.signature:
            raise DimensionError("polynomial over a different signature")
        return self.target.reduce(self._substitute(f))

    def __str__(self) -> str:
        imgs = ", ".join(str(p) for p in self.images)
        return f"map {self.source} -> {self.target}: {{{imgs}}}"

    def __repr__(self) -> str:
        return f"RingMap({self})"


def map_kernel(F: RingMap) -> IdealHandle:
    """The kernel ideal of F, as an ideal of F.source.

    Computed by adjoining the source variables to the target ring,
    imposing (s_i - image(s_i)) plus the target's defining relations, and
    eliminating the target variables with a block order.
    """
    tvars = F.target.signature.variables
    svars = F.source.signature.variables
    names = list(tvars)
    rename: dict[str, str] = {}
    for s in svars:
        w = fresh_name(s, set(names) | set(svars)) if s in names else s
        rename[s] = w
        names.append(w)
    wsig = RingSignature(tuple(names), BLOCK, block=len(tvars))
    gens = [transplant(q, wsig) for q in F.target.defining]
    for s, img in zip(svars, F.images):
        gens.append(
            Polynomial.variable(wsig, rename[s]) - transplant(img, wsig)
        )
    basis = reduced_basis(gens)
    k = len(tvars)
    back = {w: s for s, w in rename.items()}
    out = [
        transplant(b, F.source.signature, back)
        for b in basis
        if all(m[:k] == (0,) * k for m in b.terms)
    ]
    return IdealHandle(F.source, out)
