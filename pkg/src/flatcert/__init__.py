"""flatcert: an exact commutative-algebra kernel over QQ that certifies
flatness of ideals and modules via Groebner bases, syzygies, free
resolutions, and Tor, plus a small script language and CLI."""

from __future__ import annotations

from typing import Iterable, Sequence, Union

from .poly import (
    AlgebraError,
    ArgumentError,
    BLOCK,
    DimensionError,
    GREVLEX,
    LEX,
    Monomial,
    Polynomial,
    PresentedRing,
    RingSignature,
    compare_monomials,
    fresh_name,
    mono_degree,
    mono_divides,
    mono_lcm,
    mono_mul,
    mono_quotient,
    transplant,
)
from .parse import ParseError, parse_polynomial
from .groebner import (
    IdealHandle,
    RingMap,
    contains,
    divide,
    eliminate,
    map_kernel,
    reduced_basis,
    reduced_groebner,
    spolynomial,
)
from .modules import (
    MembershipBasis,
    ModuleElement,
    PolyMatrix,
    SubmodulePresentation,
    kernel_generators,
    module_reduced_gb,
    syzygy_matrix,
)
from .homology import (
    ChainComplex,
    PresentedModule,
    TorReport,
    as_presented_module,
    free_resolution,
    homology_is_zero,
    homology_witnesses,
    koszul,
    tor,
)
from .flatness import (
    AffineMorphism,
    FlatnessVerdict,
    PointSpec,
    fibered_product_ideal,
    flat_at_point,
    graph_ideal,
    invariant_presentation,
    tensor_rings,
    tensor_with_renaming,
    trim_generators,
)
from .script import ScriptReport, parse_script, pretty_script, run_script

__all__ = [name for name in dir() if not name.startswith("_")]


def ring(
    variables: Union[str, Sequence[str]],
    defining: Iterable[Union[str, Polynomial]] = (),
    order: str = GREVLEX,
) -> PresentedRing:
    """Convenience constructor: ring("x,y,z", ["x*y - z^2"])."""
    if isinstance(variables, str):
        names = tuple(v.strip() for v in variables.split(",") if v.strip())
    else:
        names = tuple(variables)
    sig = RingSignature(names, order)
    rels = [
        parse_polynomial(p, sig) if isinstance(p, str) else p for p in defining
    ]
    return PresentedRing(sig, rels)


def poly(text: Union[str, Polynomial], R: PresentedRing) -> Polynomial:
    """Convenience constructor: poly("x*y - z^2", R)."""
    if isinstance(text, Polynomial):
        return text
    return parse_polynomial(text, R.signature)


def ideal(R: PresentedRing, *gens: Union[str, Polynomial]) -> IdealHandle:
    """Convenience constructor: ideal(R, "x - u", "z - u*v")."""
    return IdealHandle(R, [poly(g, R) for g in gens])
