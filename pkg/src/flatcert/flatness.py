"""Geometry-flavored constructions over affine coordinate rings: tensor
products, invariant-subalgebra presentations, graph and fibered-product
ideals of morphisms, and the Tor_1 flatness probe at a point.

An affine morphism X -> Y is carried by its coordinate pullback, a
RingMap from the coordinate ring of Y to the coordinate ring of X.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groebner import IdealHandle, RingMap, map_kernel
from .homology import ModuleLike, TorReport, tor
from .poly import (
    ArgumentError,
    DimensionError,
    Polynomial,
    PresentedRing,
    RingSignature,
    transplant,
)


def tensor_with_renaming(
    A: PresentedRing, B: PresentedRing
) -> tuple[PresentedRing, dict[str, str], dict[str, str]]:
    """A tensor B over QQ, with the two variable renamings used.

    Clashing names get deterministic numeric suffixes (u, v in both
    factors become u1, v1 and u2, v2); non-clashing names are kept.
    """
    avars = A.signature.variables
    bvars = B.signature.variables
    clash = set(avars) & set(bvars)
    used = set(avars) | set(bvars)
    names: list[str] = []
    rename_a: dict[str, str] = {}
    rename_b: dict[str, str] = {}
    for v in avars:
        w = v
        if v in clash:
            w = f"{v}1"
            k = 0
            while w in used:
                k += 1
                w = f"{v}1_{k}"
        used.add(w)
        rename_a[v] = w
        names.append(w)
    for v in bvars:
        w = v
        if v in clash:
            w = f"{v}2"
            k = 0
            while w in used:
                k += 1
                w = f"{v}2_{k}"
        used.add(w)
        rename_b[v] = w
        names.append(w)
    sig = RingSignature(tuple(names))
    defining = [transplant(p, sig, rename_a) for p in A.defining]
    defining += [transplant(p, sig, rename_b) for p in B.defining]
    return PresentedRing(sig, defining), rename_a, rename_b


def tensor_rings(A: PresentedRing, B: PresentedRing) -> PresentedRing:
    """The tensor product ring; renaming on clash is deterministic."""
    product, _, _ = tensor_with_renaming(A, B)
    return product


@dataclass(frozen=True)
class AffineMorphism:
    """A morphism of affine schemes, stored as its coordinate pullback
    (a map from the target's coordinate ring to the source's)."""

    pullback: RingMap

    @property
    def source_ring(self) -> PresentedRing:
        """Coordinate ring of the geometric source."""
        return self.pullback.target

    @property
    def target_ring(self) -> PresentedRing:
        """Coordinate ring of the geometric target (the base)."""
        return self.pullback.source

    def __str__(self) -> str:
        return f"morphism with pullback {self.pullback}"


def graph_ideal(f: AffineMorphism) -> IdealHandle:
    """The ideal of the graph of f inside target x source: one generator
    y_j - pullback(y_j) per target variable."""
    product, rename_t, rename_s = tensor_with_renaming(
        f.target_ring, f.source_ring
    )
    sig = product.signature
    gens = []
    for j, y in enumerate(f.target_ring.signature.variables):
        lhs = Polynomial.variable(sig, rename_t[y])
        rhs = transplant(f.pullback.images[j], sig, rename_s)
        gens.append(lhs - rhs)
    return IdealHandle(product, gens)


def trim_generators(ring: PresentedRing, gens: Sequence[Polynomial]) -> list[Polynomial]:
    """Drop any generator that reduces to zero modulo the others (working
    in the presented ring), scanning from the last generator backwards so
    earlier generators are preferred."""
    kept = [g for g in gens if not ring.reduce(g).is_zero()]
    i = len(kept) - 1
    while i >= 0:
        others = kept[:i] + kept[i + 1 :]
        if others and IdealHandle(ring, others).contains(kept[i]):
            kept.pop(i)
        i -= 1
    return kept


def fibered_product_ideal(f: AffineMorphism, g: AffineMorphism) -> IdealHandle:
    """The ideal cutting the fibered product of f and g inside the product
    of their sources: pullback_f(b) - pullback_g(b) for each base variable
    b, with the generator list trimmed of redundant members."""
    if f.target_ring != g.target_ring:
        raise ArgumentError("morphisms have different targets")
    product, rename_1, rename_2 = tensor_with_renaming(
        f.source_ring, g.source_ring
    )
    sig = product.signature
    gens = []
    for j in range(f.target_ring.signature.nvars):
        lhs = transplant(f.pullback.images[j], sig, rename_1)
        rhs = transplant(g.pullback.images[j], sig, rename_2)
        gens.append(lhs - rhs)
    return IdealHandle(product, trim_generators(product, gens))


def invariant_presentation(
    gens: Sequence[Polynomial],
    names: Sequence[str],
    ambient: PresentedRing | None = None,
) -> tuple[PresentedRing, RingMap]:
    """Present the subalgebra QQ[gens] of the ambient ring as
    QQ[names]/(kernel of names -> gens), returning the presented ring and
    the inclusion map."""
    gens = tuple(gens)
    names = tuple(names)
    if len(gens) != len(names):
        raise DimensionError("one name per generator is required")
    if not gens:
        raise ArgumentError("at least one generator is required")
    if ambient is None:
        ambient = PresentedRing(gens[0].sig)
    plain = PresentedRing(RingSignature(names))
    probe = RingMap(plain, ambient, gens)
    kernel = map_kernel(probe)
    presented = PresentedRing(plain.signature, kernel.generators)
    return presented, RingMap(presented, ambient, gens)


@dataclass(frozen=True)
class PointSpec:
    """A point of Spec(ring), given by a proper ideal of the ring."""

    ring: PresentedRing
    point_ideal: IdealHandle

    def __post_init__(self) -> None:
        if self.point_ideal.ring != self.ring:
            raise DimensionError("point ideal over a different ring")
        if not self.point_ideal.is_proper():
            raise ArgumentError("point ideal is improper (contains 1)")


@dataclass(frozen=True)
class FlatnessVerdict:
    flat: bool
    tor_witness: TorReport

    def __str__(self) -> str:
        return "flat" if self.flat else f"not flat ({self.tor_witness})"


def flat_at_point(
    M: ModuleLike, p: PointSpec, along: RingMap | None = None
) -> FlatnessVerdict:
    """The local flatness probe: M is flat at p exactly when
    Tor_1(M, R/extended point ideal) vanishes.

    The point's ideal is extended into M's ring along the supplied map;
    without a map, the point's variables must name variables of M's ring
    and are extended by inclusion.
    """
    ring = M.ring
    pgens = p.point_ideal.generators
    if along is not None:
        if along.source != p.ring or along.target != ring:
            raise ArgumentError("extension map does not connect point to module")
        ext = [along.apply(q) for q in pgens]
    elif p.ring == ring:
        ext = list(pgens)
    elif set(p.ring.signature.variables) <= set(ring.signature.variables):
        ext = [transplant(q, ring.signature) for q in pgens]
    else:
        raise ArgumentError(
            "point ideal does not live in the module's ring; supply a map"
        )
    extended = IdealHandle(ring, ext)
    if not extended.is_proper():
        raise ArgumentError("extended point ideal is improper")
    from .homology import PresentedModule

    fiber = PresentedModule.cyclic(ring, ext)
    report = tor(1, M, fiber)
    return FlatnessVerdict(report.is_zero, report)
