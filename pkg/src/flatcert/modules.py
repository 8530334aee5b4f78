"""Vectors of polynomials, module Groebner bases, and syzygies.

Module terms are (position, monomial) pairs compared position-over-term:
a lower position index dominates, ties are broken by the ring's monomial
order.  Syzygies are computed by Schreyer-style tracked elimination: each
input column is augmented with a unit tracker in a trailing block of
positions, relation columns (defining generators of a quotient ring, and
any caller-supplied relations) enter untracked, and basis elements whose
terms all lie in the tracker block project onto syzygy generators.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .poly import (
    ArgumentError,
    DimensionError,
    Monomial,
    Polynomial,
    PresentedRing,
    mono_degree,
    mono_divides,
    mono_lcm,
    mono_mul,
    mono_quotient,
)

VecTerm = tuple[int, Monomial]
VecPoly = dict[VecTerm, Fraction]
Entries = tuple[Polynomial, ...]


class ModuleElement:
    """An element of ring^n, stored as a tuple of polynomial entries."""

    __slots__ = ("ring", "entries")

    def __init__(self, ring: PresentedRing, entries: Iterable[Polynomial]):
        entries = tuple(entries)
        for e in entries:
            if e.sig != ring.signature:
                raise DimensionError("entry over a different signature")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("ModuleElement is immutable")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    __hash__ = None

    def __str__(self) -> str:
        return "(" + ", ".join(str(e) for e in self.entries) + ")"

    def __repr__(self) -> str:
        return f"ModuleElement{self}"


class PolyMatrix:
    """A matrix over a presented ring, stored by columns."""

    __slots__ = ("ring", "nrows", "columns")

    def __init__(
        self,
        ring: PresentedRing,
        nrows: int,
        columns: Iterable[Sequence[Polynomial]] = (),
    ):
        if nrows < 0:
            raise ArgumentError("negative row count")
        cols = []
        for col in columns:
            col = tuple(col)
            if len(col) != nrows:
                raise DimensionError("column length does not match row count")
            for e in col:
                if e.sig != ring.signature:
                    raise DimensionError("entry over a different signature")
            cols.append(col)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "columns", tuple(cols))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("PolyMatrix is immutable")

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def column_elements(self) -> list[ModuleElement]:
        return [ModuleElement(self.ring, c) for c in self.columns]

    def apply(self, vector: Sequence[Polynomial]) -> Entries:
        """Matrix times column vector (length ncols), unreduced."""
        if len(vector) != self.ncols:
            raise DimensionError("vector length does not match column count")
        zero = self.ring.zero()
        out = [zero] * self.nrows
        for col, v in zip(self.columns, vector):
            if v.is_zero():
                continue
            for i, e in enumerate(col):
                if not e.is_zero():
                    out[i] = out[i] + e * v
        return tuple(out)

    def compose(self, other: "PolyMatrix") -> "PolyMatrix":
        """self * other."""
        if other.nrows != self.ncols:
            raise DimensionError("inner dimensions do not match")
        return PolyMatrix(
            self.ring, self.nrows, [self.apply(c) for c in other.columns]
        )

    def is_zero_in_ring(self) -> bool:
        """True when every entry reduces to zero in the presented ring."""
        return all(
            self.ring.reduce(e).is_zero() for col in self.columns for e in col
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.nrows == other.nrows
            and self.columns == other.columns
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"PolyMatrix({self.nrows}x{self.ncols})"


def _vkey_for(sig) -> Callable[[VecTerm], tuple]:
    mk = sig.key()

    def vk(t: VecTerm) -> tuple:
        return (-t[0], mk(t[1]))

    return vk


def _vp_from_entries(entries: Sequence[Polynomial]) -> VecPoly:
    vp: VecPoly = {}
    for i, e in enumerate(entries):
        for m, c in e.terms.items():
            vp[(i, m)] = c
    return vp


def _entries_from_vp(vp: VecPoly, sig, rank: int) -> Entries:
    split: list[dict] = [{} for _ in range(rank)]
    for (i, m), c in vp.items():
        split[i][m] = c
    return tuple(Polynomial._raw(sig, d) for d in split)


def _vp_normal_form(
    vp: VecPoly,
    basis: list[VecPoly],
    leads: list[VecTerm],
    buckets: dict[int, list[int]],
    vk: Callable[[VecTerm], tuple],
) -> VecPoly:
    """Full normal form against a monic basis; first match by insertion
    order within the lead position's bucket."""
    work = dict(vp)
    rem: VecPoly = {}
    while work:
        t = max(work, key=vk)
        c = work[t]
        pos, m = t
        hit = -1
        for k in buckets.get(pos, ()):
            if mono_divides(leads[k][1], m):
                hit = k
                break
        if hit < 0:
            rem[t] = c
            del work[t]
            continue
        q = mono_quotient(m, leads[hit][1])
        for (p2, m2), c2 in basis[hit].items():
            tt = (p2, mono_mul(q, m2))
            nc = work.get(tt, 0) - c * c2
            if nc:
                work[tt] = nc
            else:
                work.pop(tt, None)
    return rem


def _module_buchberger(
    gens: Iterable[VecPoly], sig, rank: int
) -> tuple[list[VecPoly], list[VecTerm], dict[int, list[int]]]:
    """Monic module Groebner basis (position-over-term order).

    S-pairs only arise between elements with the same leading position;
    the chain criterion applies there, and the coprimality criterion only
    when the ambient rank is 1 (it is invalid for genuine vectors).
    """
    vk = _vkey_for(sig)
    basis: list[VecPoly] = []
    leads: list[VecTerm] = []
    buckets: dict[int, list[int]] = {}
    heap: list[tuple[int, int, int]] = []
    pending: set[tuple[int, int]] = set()

    def push(i: int, j: int) -> None:
        lcm = mono_lcm(leads[i][1], leads[j][1])
        heapq.heappush(heap, (mono_degree(lcm), i, j))
        pending.add((i, j))

    def add(vp: VecPoly) -> None:
        lt = max(vp, key=vk)
        c = vp[lt]
        if c != 1:
            vp = {t: v / c for t, v in vp.items()}
        idx = len(basis)
        basis.append(vp)
        leads.append(lt)
        bucket = buckets.setdefault(lt[0], [])
        for k in bucket:
            push(k, idx)
        bucket.append(idx)

    for vp in gens:
        if vp:
            add(dict(vp))
    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        pos = leads[i][0]
        mi, mj = leads[i][1], leads[j][1]
        lcm = mono_lcm(mi, mj)
        if rank == 1 and lcm == mono_mul(mi, mj):
            continue
        skip = False
        for k in buckets[pos]:
            if k in (i, j) or not mono_divides(leads[k][1], lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (
                min(j, k),
                max(j, k),
            ) not in pending:
                skip = True
                break
        if skip:
            continue
        qi = mono_quotient(lcm, mi)
        qj = mono_quotient(lcm, mj)
        s: VecPoly = {}
        for (p, m), c in basis[i].items():
            s[(p, mono_mul(qi, m))] = c
        for (p, m), c in basis[j].items():
            t = (p, mono_mul(qj, m))
            nc = s.get(t, 0) - c
            if nc:
                s[t] = nc
            else:
                s.pop(t, None)
        r = _vp_normal_form(s, basis, leads, buckets, vk)
        if r:
            add(r)
    return basis, leads, buckets


def _reduced_module_basis(
    gens: Iterable[VecPoly], sig, rank: int
) -> list[VecPoly]:
    """The unique reduced module basis, sorted by decreasing lead term."""
    basis, leads, _ = _module_buchberger(gens, sig, rank)
    if not basis:
        return []
    vk = _vkey_for(sig)
    order = sorted(range(len(basis)), key=lambda k: vk(leads[k]))
    kept: list[VecPoly] = []
    kept_leads: list[VecTerm] = []
    for k in order:
        pos, m = leads[k]
        if not any(
            p == pos and mono_divides(lm, m) for p, lm in kept_leads
        ):
            kept.append(basis[k])
            kept_leads.append(leads[k])
    changed = True
    while changed:
        changed = False
        for idx in range(len(kept)):
            others = kept[:idx] + kept[idx + 1 :]
            oleads = kept_leads[:idx] + kept_leads[idx + 1 :]
            obuckets: dict[int, list[int]] = {}
            for k, (p, _) in enumerate(oleads):
                obuckets.setdefault(p, []).append(k)
            r = _vp_normal_form(kept[idx], others, oleads, obuckets, vk)
            if r != kept[idx]:
                lt = max(r, key=vk)
                c = r[lt]
                if c != 1:
                    r = {t: v / c for t, v in r.items()}
                kept[idx] = r
                kept_leads[idx] = lt
                changed = True
    paired = sorted(
        zip(kept, kept_leads), key=lambda pair: vk(pair[1]), reverse=True
    )
    return [vp for vp, _ in paired]


def _defining_vps(ring: PresentedRing, rank: int) -> list[VecPoly]:
    out = []
    for q in ring.defining:
        for i in range(rank):
            out.append({(i, m): c for m, c in q.terms.items()})
    return out


class SubmodulePresentation:
    """A finitely generated submodule of ring^ambient_rank, given by its
    generator vectors, with a cached reduced module basis."""

    __slots__ = ("ring", "ambient_rank", "generators", "_basis")

    def __init__(
        self,
        ring: PresentedRing,
        ambient_rank: int,
        generators: Iterable[ModuleElement | Sequence[Polynomial]],
    ):
        if ambient_rank < 0:
            raise ArgumentError("negative ambient rank")
        gens = []
        for g in generators:
            entries = g.entries if isinstance(g, ModuleElement) else tuple(g)
            elem = ModuleElement(ring, entries)
            if elem.rank != ambient_rank:
                raise DimensionError("generator length does not match rank")
            gens.append(elem)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "ambient_rank", ambient_rank)
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "_basis", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("SubmodulePresentation is immutable")

    def matrix(self) -> PolyMatrix:
        return PolyMatrix(
            self.ring, self.ambient_rank, [g.entries for g in self.generators]
        )

    def module_gb(self) -> tuple[ModuleElement, ...]:
        if self._basis is None:
            object.__setattr__(self, "_basis", tuple(module_reduced_gb(self)))
        return self._basis

    def __str__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"submodule of R^{self.ambient_rank} generated by {gens or '0'}"


def module_reduced_gb(sub: SubmodulePresentation) -> list[ModuleElement]:
    """Reduced module Groebner basis; over a quotient ring the defining
    generators times each standard basis vector are adjoined before
    computing and filtered from the reported basis."""
    ring = sub.ring
    sig = ring.signature
    rank = sub.ambient_rank
    gens = [_vp_from_entries(g.entries) for g in sub.generators]
    defining = _defining_vps(ring, rank)
    reduced = _reduced_module_basis(gens + defining, sig, rank)
    if defining:
        dbasis, dleads, dbuckets = _module_buchberger(defining, sig, rank)
        vk = _vkey_for(sig)
        reduced = [
            vp
            for vp in reduced
            if _vp_normal_form(vp, dbasis, dleads, dbuckets, vk)
        ]
    return [
        ModuleElement(ring, _entries_from_vp(vp, sig, rank)) for vp in reduced
    ]


class MembershipBasis:
    """A module Groebner basis of given columns (defining generators
    adjoined) supporting normal-form queries."""

    __slots__ = ("ring", "rank", "_basis", "_leads", "_buckets", "_vk")

    def __init__(
        self,
        ring: PresentedRing,
        rank: int,
        columns: Iterable[Sequence[Polynomial]],
    ):
        sig = ring.signature
        gens = [_vp_from_entries(tuple(c)) for c in columns]
        gens += _defining_vps(ring, rank)
        basis, leads, buckets = _module_buchberger(gens, sig, rank)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "_basis", basis)
        object.__setattr__(self, "_leads", leads)
        object.__setattr__(self, "_buckets", buckets)
        object.__setattr__(self, "_vk", _vkey_for(sig))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("MembershipBasis is immutable")

    def normal_form(self, entries: Sequence[Polynomial]) -> Entries:
        entries = tuple(entries)
        if len(entries) != self.rank:
            raise DimensionError("vector length does not match rank")
        vp = _vp_from_entries(entries)
        nf = _vp_normal_form(vp, self._basis, self._leads, self._buckets, self._vk)
        return _entries_from_vp(nf, self.ring.signature, self.rank)

    def contains(self, entries: Sequence[Polynomial]) -> bool:
        return all(e.is_zero() for e in self.normal_form(entries))


def syzygy_entries(
    columns: Sequence[Entries],
    nrows: int,
    ring: PresentedRing,
    extra_relations: Sequence[Entries] = (),
) -> list[Entries]:
    """Generators of the syzygy module of the given columns over `ring`,
    relative to the span of `extra_relations` (and the defining
    generators in every coordinate)."""
    m = len(columns)
    if m == 0:
        return []
    sig = ring.signature
    one = (0,) * sig.nvars
    gens: list[VecPoly] = []
    for j, col in enumerate(columns):
        vp = _vp_from_entries(col)
        vp[(nrows + j, one)] = Fraction(1)
        gens.append(vp)
    for col in extra_relations:
        gens.append(_vp_from_entries(col))
    gens += _defining_vps(ring, nrows)
    basis, leads, _ = _module_buchberger(gens, sig, nrows + m)
    vk = _vkey_for(sig)
    picks = [
        (vp, lt) for vp, lt in zip(basis, leads) if lt[0] >= nrows
    ]
    # The tracker block is ordered below every head position, so a lead in
    # the tracker block means the whole element lies there.
    picks.sort(key=lambda p: vk(p[1]))
    kept: list[tuple[VecPoly, VecTerm]] = []
    for vp, lt in picks:
        pos, mono = lt
        if not any(
            p == pos and mono_divides(lm, mono) for _, (p, lm) in kept
        ):
            kept.append((vp, lt))
    kept.sort(key=lambda p: vk(p[1]), reverse=True)
    out: list[Entries] = []
    for vp, _ in kept:
        shifted = {(p - nrows, mono): c for (p, mono), c in vp.items()}
        entries = _entries_from_vp(shifted, sig, m)
        entries = tuple(ring.reduce(e) for e in entries)
        if any(not e.is_zero() for e in entries):
            out.append(entries)
    return out


def syzygy_matrix(matrix: PolyMatrix) -> PolyMatrix:
    """Columns generating the full syzygy module of matrix's columns; over
    a quotient ring, syzygies are taken modulo the defining generators in
    every coordinate."""
    if matrix.ncols == 0:
        raise ArgumentError("syzygies of an empty column list")
    cols = syzygy_entries(matrix.columns, matrix.nrows, matrix.ring)
    return PolyMatrix(matrix.ring, matrix.ncols, cols)


def kernel_generators(
    matrix: PolyMatrix, extra_relations: Sequence[Entries] = ()
) -> list[Entries]:
    """Generators of the kernel of the map defined by `matrix`, relative
    to the submodule of the target spanned by `extra_relations` (plus the
    defining generators in every coordinate)."""
    return syzygy_entries(
        matrix.columns, matrix.nrows, matrix.ring, extra_relations
    )
