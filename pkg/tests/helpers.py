"""Independent oracles used to pin expected values.

Everything here is deliberately naive: dense linear algebra over exact
Fractions and exhaustive monomial enumeration.  The oracles share no code
with the package's Buchberger or syzygy machinery, so agreement between
the two is meaningful evidence.
"""

from __future__ import annotations

from fractions import Fraction

from flatcert import (
    Polynomial,
    PolyMatrix,
    PresentedRing,
    RingSignature,
    mono_divides,
    mono_lcm,
    mono_quotient,
)


def nullspace(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of {v : A v = 0}, by Gauss-Jordan elimination over QQ."""
    if not rows:
        return []
    ncols = len(rows[0])
    m = [list(row) for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][c]
        m[r] = [v / inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    basis = []
    for free_col in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free_col] = Fraction(1)
        for i, pivot_col in enumerate(pivots):
            v[pivot_col] = -m[i][free_col]
        basis.append(v)
    return basis


def monomials_up_to(nvars: int, deg: int) -> list[tuple[int, ...]]:
    """Every exponent tuple of total degree <= deg, in a fixed order."""
    monos: list[tuple[int, ...]] = [()]
    for _ in range(nvars):
        monos = [m + (e,) for m in monos for e in range(deg - sum(m) + 1)]
    return monos


def brute_syzygies(
    matrix: PolyMatrix, deg: int
) -> list[tuple[Polynomial, ...]]:
    """All syzygies of the matrix with polynomial entries of degree <= deg.

    Sets up one linear unknown per (column, monomial) pair and solves
    M v = 0 in the presented ring coordinate by coordinate.
    """
    ring = matrix.ring
    sig = ring.signature
    monos = monomials_up_to(sig.nvars, deg)
    unknowns = [(j, m) for j in range(matrix.ncols) for m in monos]
    images: dict[tuple[int, tuple[int, ...]], list[Polynomial]] = {}
    coords: set[tuple[int, tuple[int, ...]]] = set()
    for j, m in unknowns:
        vec = [ring.reduce(entry.mul_term(m, 1)) for entry in matrix.columns[j]]
        images[(j, m)] = vec
        for i, p in enumerate(vec):
            coords.update((i, mono) for mono in p.terms)
    coord_list = sorted(coords)
    rows = [
        [images[u][i].terms.get(mono, Fraction(0)) for u in unknowns]
        for i, mono in coord_list
    ]
    out = []
    for v in nullspace(rows):
        entries = []
        for j in range(matrix.ncols):
            terms = {}
            for k, m in enumerate(monos):
                c = v[j * len(monos) + k]
                if c:
                    terms[m] = c
            entries.append(Polynomial(sig, terms))
        out.append(tuple(entries))
    return out


def brute_membership(ring: PresentedRing, f: Polynomial,
                     gens: list[Polynomial], deg: int) -> bool:
    """Is f a combination sum(q_i g_i) with deg(q_i) <= deg, in the ring?"""
    matrix = PolyMatrix(ring, 1, [(g,) for g in gens])
    sig = ring.signature
    monos = monomials_up_to(sig.nvars, deg)
    unknowns = [(j, m) for j in range(matrix.ncols) for m in monos]
    target = ring.reduce(f)
    images = {}
    coords = set(target.terms)
    for j, m in unknowns:
        p = ring.reduce(gens[j].mul_term(m, 1))
        images[(j, m)] = p
        coords.update(p.terms)
    coord_list = sorted(coords)
    rows = [[images[u].terms.get(mono, Fraction(0)) for u in unknowns]
            for mono in coord_list]
    rhs = [target.terms.get(mono, Fraction(0)) for mono in coord_list]
    # solve by elimination on the augmented system
    aug = [row + [b] for row, b in zip(rows, rhs)]
    n = len(unknowns)
    r = 0
    for c in range(n):
        pivot_row = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if pivot_row is None:
            continue
        aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        inv = aug[r][c]
        aug[r] = [v / inv for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                fac = aug[i][c]
                aug[i] = [a - fac * b for a, b in zip(aug[i], aug[r])]
        r += 1
        if r == len(aug):
            break
    # inconsistent iff some row is (0 ... 0 | nonzero)
    return not any(
        all(v == 0 for v in row[:-1]) and row[-1] != 0 for row in aug
    )


def random_poly(rng, sig: RingSignature, max_deg: int = 2,
                max_terms: int = 3) -> Polynomial:
    """Random sparse polynomial with small integer coefficients."""
    monos = monomials_up_to(sig.nvars, max_deg)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        m = rng.choice(monos)
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        terms[m] = terms.get(m, Fraction(0)) + c
    return Polynomial(sig, {m: c for m, c in terms.items() if c})


def spolynomial_certificate(basis, divide) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero.

    `divide` is the package's division, which the arithmetic tests verify
    independently via the reconstruction identity f = sum(q_i d_i) + r.
    """
    basis = list(basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            f, g = basis[i], basis[j]
            lf, lg = f.leading_monomial(), g.leading_monomial()
            lcm = mono_lcm(lf, lg)
            sp = f.mul_term(
                mono_quotient(lcm, lf), 1 / f.leading_coefficient()
            ) - g.mul_term(mono_quotient(lcm, lg), 1 / g.leading_coefficient())
            _, rem = divide(sp, tuple(basis))
            if not rem.is_zero():
                return False
    return True


def is_reduced_basis(basis) -> bool:
    """Monic, and no term of one element divisible by another's lead."""
    for i, f in enumerate(basis):
        if f.leading_coefficient() != 1:
            return False
        for j, g in enumerate(basis):
            if i == j:
                continue
            lg = g.leading_monomial()
            if any(mono_divides(lg, m) for m in f.terms):
                return False
    return True
