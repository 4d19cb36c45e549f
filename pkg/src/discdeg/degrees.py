"""Equivariant degree computations: basic degrees and linearized degrees.

The basic degree of an irreducible representation V is the equivariant
Brouwer degree of -id on its unit ball.  Its coefficients follow the
top-down recurrence

    n_H = ( (-1)^{dim V^H} - sum_{(L) > (H)} n_L * n(H, L) * |W(L)| ) / |W(H)|

over the orbit types of V together with the class of the full group.
Every basic degree is an involution: deg * deg = (G).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .burnside import BurnsideElement, BurnsideRing
from .reps import IrrDescriptor, RepContext, orbit_types


def basic_degree(ring: BurnsideRing, ctx: RepContext,
                 rep: IrrDescriptor) -> BurnsideElement:
    cat = ctx.catalog
    domain = orbit_types(ctx, rep) + [cat.full_cid]
    order = sorted(domain, key=lambda c: (cat.classes[c].size, c), reverse=True)
    n: dict[int, int] = {}
    for h in order:
        d_h = -1 if ctx.fixed_dim(rep, h) % 2 else 1
        acc = d_h
        for l, nl in n.items():
            if nl:
                acc -= nl * cat.n_count(h, l) * cat.classes[l].weyl_order
        w = cat.classes[h].weyl_order
        if acc % w:
            raise AssertionError(f"non-exact division in basic degree at "
                                 f"{cat.classes[h].name}")
        n[h] = acc // w
    return ring.element({h: v for h, v in n.items() if v})


@dataclass
class SpectralAssignment:
    """Which basic degrees enter a linearization, with multiplicities.

    ``exponents`` maps an irreducible (m, j, sign) to the total number of
    negative eigenvalues of the linearization on the isotypic component
    modeled on it.  Only the parity matters: each basic degree squares to
    the identity.
    """
    exponents: dict[IrrDescriptor, int] = field(default_factory=dict)

    def add(self, rep: IrrDescriptor, count: int) -> None:
        if count:
            self.exponents[rep] = self.exponents.get(rep, 0) + count

    def odd_reps(self) -> list[IrrDescriptor]:
        return sorted((r for r, e in self.exponents.items() if e % 2),
                      key=lambda r: (r.m, r.j, r.sign))


def gdeg_linear(ring: BurnsideRing, ctx: RepContext,
                assignment: SpectralAssignment) -> BurnsideElement:
    """Degree of the linearized map: product of odd-multiplicity basic degrees."""
    out = ring.one()
    for rep in assignment.odd_reps():
        out = out * basic_degree(ring, ctx, rep)
    return out


def gdeg_field(ring: BurnsideRing, ctx: RepContext,
               assignment: SpectralAssignment) -> BurnsideElement:
    """Degree of the full (nonlinear) field on the admissible annulus:
    identity minus the linearized degree at the origin."""
    return ring.one() - gdeg_linear(ring, ctx, assignment)
