"""Burnside ring arithmetic over a lattice of subgroup conjugacy classes.

Elements are finite integer combinations of classes.  Multiplication is
resolved through fixed-point marks: the mark of an element at a class (L)
is

    mark_L(X) = sum_H a_H * n(L, H) * |W(H)|,

marks multiply pointwise, and coefficients are recovered by walking the
common down-closure of the two supports from the top,

    m_L = ( mark_L(X) * mark_L(Y)
            - sum_{(L') > (L)} m_{L'} * n(L, L') * |W(L')| ) / |W(L)|.

Every division must be exact; a remainder indicates corrupted lattice
data and raises immediately.  Products of single generators (H)(K) go
through the same route and are exposed for oracle testing, but for
lattices whose ``weyl_order`` is a normalization convention rather than
the plain normalizer quotient only whole-element products of marks of
honest elements are guaranteed integral.

The lattice object must provide: ``classes`` (sequence with ``cid``,
``weyl_order``, ``name``), ``n_count(l, h)``, ``down_closure(h)``,
``full_cid`` (class of the whole group, the ring identity) and optionally
``fold_class(cid, nu)``.
"""
from __future__ import annotations

from functools import lru_cache

_I64_MIN, _I64_MAX = -(2**63), 2**63 - 1


def _check64(v: int) -> int:
    if not (_I64_MIN <= v <= _I64_MAX):
        raise OverflowError("Burnside coefficient exceeds 64-bit range")
    return v


class BurnsideElement:
    """An element of the Burnside ring, a map class-id -> coefficient."""

    def __init__(self, ring: "BurnsideRing", coeffs: dict[int, int]):
        self.ring = ring
        self.coeffs = {c: _check64(v) for c, v in coeffs.items() if v != 0}

    def coeff(self, cid: int) -> int:
        return self.coeffs.get(cid, 0)

    def coeff_by_name(self, name: str) -> int:
        return self.coeff(self.ring.lattice.by_name[name])

    def __eq__(self, other) -> bool:
        return isinstance(other, BurnsideElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "BurnsideElement") -> "BurnsideElement":
        out = dict(self.coeffs)
        for c, v in other.coeffs.items():
            out[c] = out.get(c, 0) + v
        return BurnsideElement(self.ring, out)

    def __sub__(self, other: "BurnsideElement") -> "BurnsideElement":
        return self + (-other)

    def __neg__(self) -> "BurnsideElement":
        return BurnsideElement(self.ring, {c: -v for c, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return BurnsideElement(
                self.ring, {c: v * other for c, v in self.coeffs.items()})
        return self.ring.multiply(self, other)

    __rmul__ = __mul__

    def fold(self, nu: int) -> "BurnsideElement":
        """Apply the ring homomorphism induced by the nu-fold cover of O(2)."""
        out: dict[int, int] = {}
        for c, v in self.coeffs.items():
            c2 = self.ring.lattice.fold_class(c, nu)
            out[c2] = out.get(c2, 0) + v
        return BurnsideElement(self.ring, out)

    def terms(self) -> list[tuple[str, int]]:
        """(name, coefficient) pairs, classes in descending order."""
        cs = sorted(self.coeffs, reverse=True)
        return [(self.ring.lattice.classes[c].name, self.coeffs[c]) for c in cs]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for name, v in self.terms():
            sgn = "-" if v < 0 else ("+" if parts else "")
            mag = "" if abs(v) == 1 else str(abs(v))
            parts.append(f"{sgn} {mag}({name})".replace("- ", "-").replace("+ ", "+ "))
        return " ".join(parts).lstrip("+ ")


class BurnsideRing:
    def __init__(self, lattice):
        self.lattice = lattice
        self._prod_cache: dict[tuple[int, int], dict[int, int]] = {}

    def zero(self) -> BurnsideElement:
        return BurnsideElement(self, {})

    def one(self) -> BurnsideElement:
        return BurnsideElement(self, {self.lattice.full_cid: 1})

    def generator(self, cid: int) -> BurnsideElement:
        return BurnsideElement(self, {cid: 1})

    def element(self, coeffs: dict[int, int]) -> BurnsideElement:
        return BurnsideElement(self, dict(coeffs))

    def mark(self, coeffs: dict[int, int], l: int) -> int:
        """Number of fixed points of a class-l subgroup on the element."""
        lat = self.lattice
        return sum(v * lat.n_count(l, h) * lat.classes[h].weyl_order
                   for h, v in coeffs.items() if v)

    def _solve_support(self, a: dict[int, int],
                       b: dict[int, int]) -> dict[int, int]:
        """Coefficients of the product of two elements with ring-one removed."""
        lat = self.lattice
        if not a or not b:
            return {}
        da = set().union(*(lat.down_closure(h) for h in a))
        db = set().union(*(lat.down_closure(k) for k in b))
        # descending: every class strictly above l in the lattice precedes it
        order = sorted(da & db,
                       key=lambda l: (lat.classes[l].size, l), reverse=True)
        m: dict[int, int] = {}
        for l in order:
            acc = self.mark(a, l) * self.mark(b, l)
            for lp, mlp in m.items():
                if mlp:
                    acc -= mlp * lat.n_count(l, lp) * lat.classes[lp].weyl_order
            w = lat.classes[l].weyl_order
            if acc % w:
                raise AssertionError(
                    f"non-exact division in product recurrence at class {l}")
            m[l] = acc // w
        return {l: v for l, v in m.items() if v}

    def multiply(self, x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
        full = self.lattice.full_cid
        a = dict(x.coeffs)
        b = dict(y.coeffs)
        ag = a.pop(full, 0)
        bg = b.pop(full, 0)
        out: dict[int, int] = {full: ag * bg} if ag and bg else {}
        for coeffs, scale in ((a, bg), (b, ag)):
            if scale:
                for c, v in coeffs.items():
                    out[c] = out.get(c, 0) + _check64(scale * v)
        for c, v in self._solve_support(a, b).items():
            out[c] = out.get(c, 0) + _check64(v)
        return BurnsideElement(self, out)

    def generator_product(self, h: int, k: int) -> dict[int, int]:
        if h > k:
            h, k = k, h
        key = (h, k)
        if key not in self._prod_cache:
            if k == self.lattice.full_cid:
                out = {h: 1}
            else:
                out = self._solve_support({h: 1}, {k: 1})
            self._prod_cache[key] = out
        return self._prod_cache[key]
