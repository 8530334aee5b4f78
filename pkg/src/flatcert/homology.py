"""Presented modules, chain complexes, Koszul complexes, free resolutions,
homology, and Tor.

Tor is computed over the presented ring itself: the first argument is
resolved to length i+1 (resolutions over a quotient ring may be infinite,
so only that much is built), the resolution is tensored with the second
argument, and homology is taken at position i.  Verdicts are zero or
nonzero with explicit witness generators, never dimension counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence, Union

from .groebner import IdealHandle
from .modules import (
    Entries,
    MembershipBasis,
    ModuleElement,
    PolyMatrix,
    SubmodulePresentation,
    kernel_generators,
    syzygy_entries,
)
from .poly import ArgumentError, DimensionError, Polynomial, PresentedRing


@dataclass(frozen=True)
class PresentedModule:
    """coker(relations): the quotient of ring^rank by the column span of
    the relations matrix."""

    ring: PresentedRing
    rank: int
    relations: PolyMatrix

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ArgumentError("negative rank")
        if self.relations.nrows != self.rank:
            raise DimensionError("relations do not match the rank")
        if self.relations.ring != self.ring:
            raise DimensionError("relations over a different ring")

    @classmethod
    def free(cls, ring: PresentedRing, rank: int) -> "PresentedModule":
        return cls(ring, rank, PolyMatrix(ring, rank, ()))

    @classmethod
    def cyclic(
        cls, ring: PresentedRing, relation_gens: Sequence[Polynomial]
    ) -> "PresentedModule":
        """ring^1 modulo the given scalar relations."""
        cols = [(g,) for g in relation_gens]
        return cls(ring, 1, PolyMatrix(ring, 1, cols))

    def __str__(self) -> str:
        if self.relations.ncols == 0:
            return f"free module of rank {self.rank}"
        rels = ", ".join(
            "(" + ", ".join(str(e) for e in col) + ")"
            for col in self.relations.columns
        )
        return f"module of rank {self.rank} with relations {rels}"


ModuleLike = Union[PresentedModule, IdealHandle, SubmodulePresentation]


def as_presented_module(obj: ModuleLike) -> PresentedModule:
    """Present an ideal or submodule by generators and their syzygies."""
    if isinstance(obj, PresentedModule):
        return obj
    if isinstance(obj, IdealHandle):
        gens = obj.generators
        if not gens:
            return PresentedModule(obj.ring, 0, PolyMatrix(obj.ring, 0, ()))
        cols = syzygy_entries([(g,) for g in gens], 1, obj.ring)
        return PresentedModule(
            obj.ring, len(gens), PolyMatrix(obj.ring, len(gens), cols)
        )
    if isinstance(obj, SubmodulePresentation):
        gens = obj.generators
        if not gens:
            return PresentedModule(obj.ring, 0, PolyMatrix(obj.ring, 0, ()))
        cols = syzygy_entries(
            [g.entries for g in gens], obj.ambient_rank, obj.ring
        )
        return PresentedModule(
            obj.ring, len(gens), PolyMatrix(obj.ring, len(gens), cols)
        )
    raise ArgumentError(f"cannot present {type(obj).__name__} as a module")


@dataclass(frozen=True)
class ChainComplex:
    """F_0 <- F_1 <- ... <- F_l with differentials d_1..d_l; `complete`
    records whether the final syzygy step was reached (zero)."""

    ring: PresentedRing
    ranks: tuple[int, ...]
    differentials: tuple[PolyMatrix, ...]
    complete: bool

    def __post_init__(self) -> None:
        if len(self.ranks) != len(self.differentials) + 1:
            raise DimensionError("ranks do not match differentials")
        for k, d in enumerate(self.differentials, start=1):
            if d.nrows != self.ranks[k - 1] or d.ncols != self.ranks[k]:
                raise DimensionError(f"differential {k} has the wrong shape")

    @property
    def length(self) -> int:
        return len(self.differentials)

    def differential(self, k: int) -> PolyMatrix:
        """d_k: F_k -> F_(k-1), 1-based."""
        if not 1 <= k <= self.length:
            raise ArgumentError(f"no differential {k}")
        return self.differentials[k - 1]

    def composition_is_zero(self) -> bool:
        """Check d_k composed with d_(k+1) vanishes in the presented ring."""
        for k in range(1, self.length):
            if not self.differentials[k - 1].compose(
                self.differentials[k]
            ).is_zero_in_ring():
                return False
        return True


def free_resolution(module: ModuleLike, length: int) -> ChainComplex:
    """A free resolution of the module, built by iterated syzygies:
    d_1 is the relations matrix and d_(k+1) = syzygy_matrix(d_k).

    Truncates early (and flags completion) when a syzygy step is zero;
    over a quotient ring the resolution may never complete.
    """
    if length < 1:
        raise ArgumentError("resolution length must be at least 1")
    mod = as_presented_module(module)
    ring = mod.ring
    if mod.relations.ncols == 0:
        # free module: the resolution is the module itself
        return ChainComplex(ring, (mod.rank,), (), True)
    diffs = [mod.relations]
    ranks = [mod.rank, mod.relations.ncols]
    complete = False
    while not complete and len(diffs) < length:
        prev = diffs[-1]
        cols = syzygy_entries(prev.columns, prev.nrows, ring)
        if not cols:
            complete = True
            break
        nxt = PolyMatrix(ring, prev.ncols, cols)
        diffs.append(nxt)
        ranks.append(nxt.ncols)
    return ChainComplex(ring, tuple(ranks), tuple(diffs), complete)


def koszul(sequence: Sequence[Polynomial], ring: PresentedRing) -> ChainComplex:
    """The Koszul complex on the given elements: ranks C(n, k), with the
    usual alternating signs (for n = 2 the complex reads
    R -[(-f2, f1)]-> R^2 -[(f1, f2)]-> R)."""
    seq = tuple(sequence)
    if not seq:
        raise ArgumentError("empty sequence")
    for f in seq:
        if f.sig != ring.signature:
            raise DimensionError("sequence entry over a different signature")
    n = len(seq)
    zero = ring.zero()
    diffs = []
    for k in range(1, n + 1):
        rows = list(combinations(range(n), k - 1))
        row_index = {S: i for i, S in enumerate(rows)}
        cols = []
        for S in combinations(range(n), k):
            col = [zero] * len(rows)
            for t, j in enumerate(S):
                T = tuple(x for x in S if x != j)
                entry = seq[j] if t % 2 == 0 else -seq[j]
                col[row_index[T]] = col[row_index[T]] + entry
            cols.append(tuple(col))
        diffs.append(PolyMatrix(ring, len(rows), cols))
    ranks = tuple(comb(n, k) for k in range(n + 1))
    return ChainComplex(ring, ranks, tuple(diffs), True)


def homology_witnesses(
    complex_: ChainComplex, i: int
) -> tuple[bool, list[ModuleElement]]:
    """Whether homology at position i vanishes, with witness generators
    (kernel generators surviving reduction modulo the image) otherwise."""
    if not 0 <= i <= complex_.length:
        raise ArgumentError(f"no homology position {i}")
    ring = complex_.ring
    rank_i = complex_.ranks[i]
    if rank_i == 0:
        return True, []
    if i == 0:
        ker = _standard_basis(ring, rank_i)
    else:
        ker = kernel_generators(complex_.differential(i))
    image_cols: list[Entries] = []
    if i + 1 <= complex_.length:
        image_cols.extend(complex_.differential(i + 1).columns)
    basis = MembershipBasis(ring, rank_i, image_cols)
    witnesses = []
    for v in ker:
        nf = basis.normal_form(v)
        if any(not e.is_zero() for e in nf):
            witnesses.append(ModuleElement(ring, nf))
    return not witnesses, witnesses


def homology_is_zero(complex_: ChainComplex, i: int) -> bool:
    """Convenience wrapper returning only the verdict."""
    verdict, _ = homology_witnesses(complex_, i)
    return verdict


@dataclass(frozen=True)
class TorReport:
    """Zero-or-nonzero verdict for Tor_i(M, N), with witness generators
    spanning the homology when nonzero."""

    index: int
    is_zero: bool
    witness_generators: tuple[ModuleElement, ...]

    def __str__(self) -> str:
        if self.is_zero:
            return f"Tor_{self.index} = 0"
        wits = "; ".join(str(w) for w in self.witness_generators)
        return f"Tor_{self.index} != 0, witnesses: {wits}"


def _standard_basis(ring: PresentedRing, rank: int) -> list[Entries]:
    zero = ring.zero()
    one = ring.one()
    out = []
    for i in range(rank):
        col = [zero] * rank
        col[i] = one
        out.append(tuple(col))
    return out


def tor(i: int, M: ModuleLike, N: ModuleLike) -> TorReport:
    """Tor_i(M, N) over the common presented ring.

    Resolves M to length i+1, tensors with N (each F_k tensor N becomes
    N^(rank F_k), with N's relations imposed in every coordinate), and
    takes homology at position i.
    """
    if i < 0:
        raise ArgumentError("negative Tor index")
    mod = as_presented_module(M)
    other = as_presented_module(N)
    if mod.ring != other.ring:
        raise ArgumentError("modules over different rings")
    ring = mod.ring
    res = free_resolution(mod, i + 1)
    top = len(res.differentials)

    def rank(k: int) -> int:
        return res.ranks[k] if k <= top else 0

    s = other.rank
    rank_i = rank(i)
    if rank_i == 0 or s == 0:
        return TorReport(i, True, ())
    zero = ring.zero()
    n_rels = other.relations.columns

    def level_relations(r: int) -> list[Entries]:
        cols = []
        for pos in range(r):
            for rc in n_rels:
                col = [zero] * (r * s)
                for t in range(s):
                    col[pos * s + t] = rc[t]
                cols.append(tuple(col))
        return cols

    def tensored(k: int) -> PolyMatrix:
        d = res.differential(k)
        cols = []
        for col in d.columns:
            for t in range(s):
                big = [zero] * (d.nrows * s)
                for r_, e in enumerate(col):
                    if not e.is_zero():
                        big[r_ * s + t] = e
                cols.append(tuple(big))
        return PolyMatrix(ring, d.nrows * s, cols)

    if i == 0 or rank(i - 1) == 0:
        ker = _standard_basis(ring, rank_i * s)
    else:
        ker = kernel_generators(
            tensored(i), extra_relations=level_relations(rank(i - 1))
        )
    image_cols: list[Entries] = []
    if i + 1 <= top:
        image_cols.extend(tensored(i + 1).columns)
    image_cols.extend(level_relations(rank_i))
    basis = MembershipBasis(ring, rank_i * s, image_cols)
    witnesses = []
    for v in ker:
        nf = basis.normal_form(v)
        if any(not e.is_zero() for e in nf):
            witnesses.append(ModuleElement(ring, nf))
    return TorReport(i, not witnesses, tuple(witnesses))
