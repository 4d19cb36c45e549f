"""Conjugacy classes of closed subgroups of O(2) x K with finite Weyl group.

Every such subgroup is an amalgamated product  H ^Z x_L^R K'  glued from a
closed subgroup H <= O(2) and a subgroup K' <= K along a common finite
quotient L; classes with dihedral head H = D_h are represented as explicit
element sets on the grid model (see o2model), while SO(2)- and O(2)-headed
classes are K-determined and handled by their membership masks.

The catalog covers heads D_h for h in a divisor-closed set ``heads``,
plus all SO(2)- and O(2)-headed classes.  Within that scope it supplies
the complete lattice data the Burnside-ring recurrences need: Weyl group
orders, the counts n(L, H) of conjugates of H containing L, conjugacy
tests, and the nu-fold covering maps between classes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .o2model import O2Model
from .permgroup import FiniteGroup, Perm, pidentity, pmul
from .permgroup import SubgroupClassTable
from .naming import name_subgroup_classes


# ---------------------------------------------------------------------------
# closed subgroups of O(2)

@dataclass(frozen=True)
class O2Closed:
    """A closed subgroup of O(2): Z_n, D_n, SO(2) or O(2)."""
    kind: str          # "Z", "D", "SO2", "O2"
    n: int = 0

    def __str__(self):
        if self.kind in ("Z", "D"):
            return f"{self.kind}{self.n}"
        return "SO(2)" if self.kind == "SO2" else "O(2)"


def finite_epimorphism_targets(h: O2Closed) -> list[tuple[O2Closed, str, int]]:
    """Kernel/quotient pairs for epimorphisms of h onto finite groups.

    Returns (kernel, quotient_kind, q) triples where the quotient is:
    ``("C", q)`` cyclic of order q, or ``("D", q)`` dihedral-type of order
    2q (q = 1 gives Z2, q = 2 the Klein group).  Kernels D_{n/2} come in
    two O(2)-conjugate flavours; only one representative is listed.
    """
    out: list[tuple[O2Closed, str, int]] = []
    if h.kind == "Z":
        for d in range(1, h.n + 1):
            if h.n % d == 0:
                out.append((O2Closed("Z", d), "C", h.n // d))
    elif h.kind == "D":
        for d in range(1, h.n + 1):
            if h.n % d == 0:
                out.append((O2Closed("Z", d), "D", h.n // d))
        if h.n % 2 == 0:
            out.append((O2Closed("D", h.n // 2), "C", 2))
        out.append((O2Closed("D", h.n), "C", 1))
    elif h.kind == "SO2":
        out.append((O2Closed("SO2"), "C", 1))
    else:
        out.append((O2Closed("O2"), "C", 1))
        out.append((O2Closed("SO2"), "C", 2))
    return out


# ---------------------------------------------------------------------------
# product classes

@dataclass
class ProductClass:
    cid: int
    kind: str                   # "D", "SO2", "O2", "O2amalg"
    head: int                   # h for D-kind, 0 otherwise
    kp_cid: int                 # class id of the K-projection in the K table
    bucket: int                 # |U ^ (SO(2) x 1)|: d for D-kind kernels Z_d
    o2_idx: np.ndarray          # element data on the grid model
    k_idx: np.ndarray
    mask: np.ndarray            # (2P, nK) membership
    size: int                   # number of grid elements
    weyl_order: int             # reported Weyl order (coefficient normalization)
    name: str
    fingerprint: tuple
    r_k: frozenset[int] = field(default_factory=frozenset)  # ker(psi) as k-indices
    n_model: int = 0            # |N(U)| in the grid model
    normalizer_weyl_order: int = 0  # |N(U)/U|, the plain normalizer quotient


def _quotient_group(Kp: frozenset[Perm], R: frozenset[Perm], degree: int):
    """Cosets of R in K' with multiplication table; returns (cosets, mul, eid)."""
    cosets: list[frozenset[Perm]] = []
    seen: set[Perm] = set()
    for g in sorted(Kp):
        if g in seen:
            continue
        c = frozenset(pmul(g, r) for r in R)
        seen |= c
        cosets.append(c)
    index = {g: i for i, c in enumerate(cosets) for g in c}
    reps = [sorted(c)[0] for c in cosets]
    mul = [[index[pmul(a, b)] for b in reps] for a in reps]
    eid = index[pidentity(degree)]
    return cosets, mul, eid


def _coset_orders(mul, eid):
    n = len(mul)
    orders = []
    for i in range(n):
        o, j = 1, i
        while j != eid:
            j = mul[j][i]
            o += 1
        orders.append(o)
    return orders


def _dihedral_isos(mul, eid, q):
    """Isomorphisms from the dihedral-type group of order 2q onto the coset
    group, given as (x, y) = images of the rotation and reflection generators."""
    orders = _coset_orders(mul, eid)
    n = len(mul)
    if n != 2 * q:
        return []
    def power(i, k):
        j = eid
        for _ in range(k):
            j = mul[j][i]
        return j
    out = []
    for x in range(n):
        if orders[x] != q and not (q == 1 and x == eid):
            continue
        if q == 1 and x != eid:
            continue
        cyc = {power(x, k) for k in range(q)}
        for y in range(n):
            if orders[y] != 2 or y in cyc:
                continue
            if mul[mul[y][x]][y] != power(x, q - 1):   # y x y = x^{-1}
                continue
            out.append((x, y))
    return out


class ProductCatalog:
    """Catalog of finite-Weyl subgroup classes of O(2) x K on a grid model."""

    def __init__(self, K: FiniteGroup, heads: list[int],
                 ktable: SubgroupClassTable | None = None):
        heads = sorted(set(heads))
        for h in heads:
            for d in range(1, h + 1):
                if h % d == 0 and d not in heads:
                    raise ValueError("head set must be divisor-closed")
        self.heads = heads
        self.K = K
        self.ktable = ktable if ktable is not None else SubgroupClassTable(K)
        if not any(r.name for r in self.ktable.classes):
            name_subgroup_classes(self.ktable)
        P = 2 * math.lcm(*heads) if heads else 4
        self.model = O2Model(P, K)
        self.P = P
        self._kidx = K.index_of
        self._kcls_of_elem = K.class_index_of_element()
        self.classes: list[ProductClass] = []
        self._ncount: dict[tuple[int, int], int] = {}
        self._build()

    # -- construction -------------------------------------------------------

    def _fingerprint(self, o2_idx, k_idx):
        P = self.P
        items: dict[tuple, int] = {}
        for o2, k in zip(o2_idx.tolist(), k_idx.tolist()):
            kcls = self._kcls_of_elem[self.K.elements[k]]
            if o2 < P:
                key = (0, P // math.gcd(P, o2) if o2 else 1, kcls)
            else:
                key = (1, (o2 - P) % 2, kcls)
            items[key] = items.get(key, 0) + 1
        return tuple(sorted(items.items()))

    def _mask_of(self, o2_idx, k_idx):
        m = np.zeros((2 * self.P, self.model.nK), dtype=bool)
        m[o2_idx, k_idx] = True
        return m

    def _build(self):
        K, P, ktable = self.K, self.P, self.ktable
        raw: list[dict] = []

        for kp in ktable.classes:
            Kp = kp.representative
            kp_elems = sorted(self._kidx[g] for g in Kp)
            normals = ktable.normal_subgroups_of(Kp)

            # O(2)- and SO(2)-headed classes (K-determined)
            rots = np.arange(P)
            refl = P + np.arange(P)
            full = np.concatenate([rots, refl])
            for kind, o2part in (("O2", full), ("SO2", rots)):
                o2_idx = np.repeat(o2part, len(kp_elems))
                k_idx = np.tile(np.array(kp_elems), len(o2part))
                wk = kp.weyl_order
                raw.append(dict(kind=kind, head=0, kp_cid=kp.cid,
                                bucket=0, o2_idx=o2_idx, k_idx=k_idx,
                                r_k=frozenset(kp_elems),
                                weyl=wk if kind == "O2" else 2 * wk,
                                zname="", lname="", rname=""))
            for R in normals:
                if 2 * len(R) != len(Kp):
                    continue
                r_elems = {self._kidx[g] for g in R}
                o2s, ks = [], []
                for k in kp_elems:
                    part = rots if k in r_elems else refl
                    o2s.append(part)
                    ks.append(np.full(P, k))
                nk = self._normalizing(Kp, R)
                raw.append(dict(kind="O2amalg", head=0, kp_cid=kp.cid,
                                bucket=0, o2_idx=np.concatenate(o2s),
                                k_idx=np.concatenate(ks),
                                r_k=frozenset(r_elems),
                                weyl=2 * nk // len(Kp),
                                zname="SO(2)", lname="Z2",
                                rname=ktable.classes[ktable.cid_of(R)].name))

            # dihedral-headed classes
            for h in self.heads:
                g = P // h
                for R in normals:
                    quo = len(Kp) // len(R)
                    cosets, mul, eid = None, None, None
                    # kernel Z_d with quotient of dihedral type, order 2q
                    for d in [dd for dd in range(1, h + 1) if h % dd == 0]:
                        q = h // d
                        if quo != 2 * q:
                            continue
                        if cosets is None:
                            cosets, mul, eid = _quotient_group(Kp, R, K.degree)
                        for x, y in _dihedral_isos(mul, eid, q):
                            o2_idx, k_idx = self._amalg_elements(
                                h, q, cosets, mul, eid, x, y)
                            raw.append(dict(
                                kind="D", head=h, kp_cid=kp.cid, bucket=d,
                                o2_idx=o2_idx, k_idx=k_idx,
                                r_k=frozenset(self._kidx[e] for e in R),
                                weyl=None,
                                zname=f"Z{d}" if d > 1 else "",
                                lname=f"D{q}" if q >= 2 else "Z2",
                                rname=ktable.classes[ktable.cid_of(R)].name))
                    # kernel D_{h/2}, quotient Z2
                    if h % 2 == 0 and quo == 2:
                        cosets2, mul2, eid2 = _quotient_group(Kp, R, K.degree)
                        other = 1 - eid2
                        o2s, ks = [], []
                        for k in range(h):
                            for f, base in ((0, 0), (1, P)):
                                coset = cosets2[eid2 if k % 2 == 0 else other]
                                for e in coset:
                                    o2s.append(base + k * g)
                                    ks.append(self._kidx[e])
                        raw.append(dict(
                            kind="D", head=h, kp_cid=kp.cid, bucket=h // 2,
                            o2_idx=np.array(o2s), k_idx=np.array(ks),
                            r_k=frozenset(self._kidx[e] for e in R),
                            weyl=None, zname=f"D{h // 2}", lname="Z2",
                            rname=ktable.classes[ktable.cid_of(R)].name))
                    # full product D_h x K'
                    if len(R) == len(Kp):
                        o2part = np.concatenate(
                            [np.arange(h) * g, P + np.arange(h) * g])
                        o2_idx = np.repeat(o2part, len(kp_elems))
                        k_idx = np.tile(np.array(kp_elems), 2 * h)
                        raw.append(dict(kind="D", head=h, kp_cid=kp.cid,
                                        bucket=h, o2_idx=o2_idx, k_idx=k_idx,
                                        r_k=frozenset(kp_elems),
                                        weyl=None, zname="", lname="",
                                        rname=""))

        self._dedupe_and_register(raw)

    def _amalg_elements(self, h, q, cosets, mul, eid, x, y):
        """Element set of D_h ^{Z_d} x_{D_q} ^R K' for the iso (x, y)."""
        P, g = self.P, self.P // h
        def power(i, k):
            j = eid
            for _ in range(k):
                j = mul[j][i]
            return j
        xpow = [power(x, k) for k in range(q)]
        o2s, ks = [], []
        for k in range(h):
            # rotation (0, k*g) has label r_{k mod q} -> coset x^{k mod q}
            for e in cosets[xpow[k % q]]:
                o2s.append(k * g)
                ks.append(self._kidx[e])
            # reflection (1, k*g) has label s_{k mod q} -> coset y * x^{-k}
            c = mul[y][xpow[(-k) % q]]
            for e in cosets[c]:
                o2s.append(P + k * g)
                ks.append(self._kidx[e])
        return np.array(o2s), np.array(ks)

    def _normalizing(self, Kp: frozenset[Perm], R: frozenset[Perm]) -> int:
        from .permgroup import pconj
        return sum(1 for g in self.K.elements
                   if frozenset(pconj(g, p) for p in Kp) == Kp
                   and frozenset(pconj(g, p) for p in R) == R)

    def _dedupe_and_register(self, raw: list[dict]):
        buckets: dict[tuple, list[dict]] = {}
        for rec in raw:
            rec["size"] = len(rec["o2_idx"])
            rec["fp"] = self._fingerprint(rec["o2_idx"], rec["k_idx"])
            key = (rec["kind"], rec["head"], rec["kp_cid"], rec["size"],
                   rec["bucket"], rec["fp"])
            buckets.setdefault(key, []).append(rec)

        kept: list[dict] = []
        for key, group in sorted(buckets.items()):
            reps: list[dict] = []
            for rec in group:
                rec["mask"] = self._mask_of(rec["o2_idx"], rec["k_idx"])
                dup = False
                for other in reps:
                    if self._conjugate(rec, other):
                        dup = True
                        break
                if not dup:
                    reps.append(rec)
            kept.extend(reps)

        kept.sort(key=lambda r: (r["size"], r["kind"], r["head"], r["bucket"],
                                 r["kp_cid"], r["fp"]))
        # the amalgamated notation does not always pin the class (several
        # non-conjugate gluings can share it); disambiguate deterministically
        tally: dict[str, int] = {}
        for rec in kept:
            base = self._format_name(rec)
            k = tally.get(base, 0) + 1
            tally[base] = k
            rec["unique_name"] = base if k == 1 else f"{base} ~{k}"
        eidx = self.K.index_of[pidentity(self.K.degree)]
        for cid, rec in enumerate(kept):
            if rec["kind"] == "D":
                n_model = self.model.count_conj_into(
                    rec["o2_idx"], rec["k_idx"], rec["mask"])
                nw = n_model // rec["size"]
                # reported convention: classes whose O(2)-side kernel is
                # rotation-only get half the plain normalizer quotient (the
                # central coset is not counted)
                m2 = np.asarray(rec["mask"]).reshape(2 * self.P, self.model.nK)
                kernel_has_reflection = bool(m2[self.P:, eidx].any())
                weyl = nw if kernel_has_reflection else nw // 2
            else:
                n_conj = len(self.model.conjugates_k_side(rec["mask"]))
                n_model = 2 * self.P * self.model.nK // n_conj
                nw = weyl = rec["weyl"]
            self.classes.append(ProductClass(
                cid=cid, kind=rec["kind"], head=rec["head"],
                kp_cid=rec["kp_cid"], bucket=rec["bucket"],
                o2_idx=rec["o2_idx"], k_idx=rec["k_idx"], mask=rec["mask"],
                size=rec["size"], weyl_order=weyl,
                name=rec["unique_name"], fingerprint=rec["fp"],
                r_k=rec["r_k"], n_model=n_model, normalizer_weyl_order=nw))
        self.by_name = {c.name: c.cid for c in self.classes}
        self.full_cid = self.by_name[f"O(2) x {self._kname(self._full_kp())}"]

    def _full_kp(self) -> int:
        return max(range(len(self.ktable.classes)),
                   key=lambda i: self.ktable.classes[i].order)

    def _kname(self, cid: int) -> str:
        return self.ktable.classes[cid].name

    def _conjugate(self, a: dict, b: dict) -> bool:
        if a["size"] != b["size"] or a["fp"] != b["fp"]:
            return False
        if a["kind"] == "D":
            return self.model.count_conj_into(
                a["o2_idx"], a["k_idx"], b["mask"]) > 0
        for m in self.model.conjugates_k_side(b["mask"]):
            if m[a["o2_idx"], a["k_idx"]].all():
                return True
        return False

    def _format_name(self, rec: dict) -> str:
        kname = self._kname(rec["kp_cid"])
        if rec["kind"] == "O2":
            return f"O(2) x {kname}"
        if rec["kind"] == "SO2":
            return f"SO(2) x {kname}"
        head = "O(2)" if rec["kind"] == "O2amalg" else f"D{rec['head']}"
        z = rec["zname"]
        l, r = rec["lname"], rec["rname"]
        if not l:                                    # full product
            return f"{head} x {kname}"
        s = head + (f"^{{{z}}}" if z else "") + " x_{" + l + "}"
        if r and r != "Z1":
            s += f"^{{{r}}}"
        return s + f" {kname}"

    # -- lattice queries -----------------------------------------------------

    def __len__(self):
        return len(self.classes)

    def n_count(self, l: int, h: int) -> int:
        """Number of conjugates of class-h subgroups containing a fixed
        class-l subgroup."""
        key = (l, h)
        if key in self._ncount:
            return self._ncount[key]
        cl, ch = self.classes[l], self.classes[h]
        val = 0
        if not self._maybe_leq(cl, ch):
            val = 0
        elif ch.kind == "D":
            if cl.kind == "D":
                cnt = self.model.count_conj_into(cl.o2_idx, cl.k_idx, ch.mask)
                val = cnt // ch.n_model
            else:
                val = 0
        else:
            for m in self.model.conjugates_k_side(ch.mask):
                if m[cl.o2_idx, cl.k_idx].all():
                    val += 1
        self._ncount[key] = val
        return val

    def _maybe_leq(self, cl: ProductClass, ch: ProductClass) -> bool:
        if cl.cid == ch.cid:
            return True
        if ch.size % cl.size:
            return False
        if cl.kind == "D":
            if ch.kind == "D" and (ch.head % cl.head or ch.bucket % cl.bucket):
                return False
        elif ch.kind == "D":
            return False
        if not self.ktable.leq(cl.kp_cid, ch.kp_cid):
            return False
        return True

    def leq(self, l: int, h: int) -> bool:
        return self.n_count(l, h) > 0

    def conjugacy_test(self, l: int, h: int) -> bool:
        return l == h

    def down_closure(self, h: int) -> list[int]:
        return [l for l in range(len(self.classes)) if self.n_count(l, h) > 0]

    def weyl(self, cid: int) -> int:
        return self.classes[cid].weyl_order

    # -- folding -------------------------------------------------------------

    def fold_class(self, cid: int, nu: int) -> int:
        """Image of a class under the pullback along the nu-fold cover of O(2).

        The preimage of D_h is D_{h*nu} (kernels scale the same way);
        O(2)- and SO(2)-headed classes are fixed.
        """
        c = self.classes[cid]
        if nu == 1 or c.kind != "D":
            return cid
        if c.head * nu not in self.heads:
            raise ValueError(
                f"folded head D{c.head * nu} outside catalog heads {self.heads}")
        P = self.P
        mask = c.mask
        new = np.zeros_like(mask)
        t = np.arange(P)
        new[:P] = mask[(nu * t) % P]
        new[P:] = mask[P + (nu * t) % P]
        o2s, ks = np.nonzero(new)
        fp = self._fingerprint(o2s, ks)
        size = len(o2s)
        for cand in self.classes:
            if (cand.kind == "D" and cand.size == size and cand.fingerprint == fp
                    and cand.head == c.head * nu and cand.kp_cid == c.kp_cid
                    and self.model.count_conj_into(o2s, ks, cand.mask) > 0):
                return cand.cid
        raise AssertionError("folded class not found in catalog")
