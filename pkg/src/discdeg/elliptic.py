"""Application layer: coupling problems on the disc and the existence report.

Pipeline: a finite symmetry group Gamma acting on R^k together with a
Gamma-commuting linearization matrix A determine isotypic eigenvalues
mu_j (exact rational projector arithmetic), which are compared against
the Dirichlet spectrum s_nm of the disc; the resulting negative-spectrum
counters drive a product of basic degrees in the Burnside ring of
O(2) x Gamma x Z2, and the final expansion is read off for guaranteed
non-radial and radial solution orbit types.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .bessel import ModeTable
from .burnside import BurnsideElement, BurnsideRing
from .catalog import ProductCatalog
from .characters import isotypic_multiplicities
from .degrees import SpectralAssignment, basic_degree, gdeg_field
from .permgroup import (FiniteGroup, Perm, closure, cyclic_group,
                        direct_product, pidentity, symmetric_group)
from .reps import IrrDescriptor, RepContext, maximal_orbit_types_union

D_GUARD = 1e-8          # tolerance band for condition (D)
MU_TOL = 1e-10          # tolerance for float isotypic eigenvalues
MAX_HEAD_PERIOD = 720   # cap on the grid-model period 2*lcm(heads)


# ---------------------------------------------------------------------------
# problem data

@dataclass(frozen=True)
class GrowthMeta:
    """Growth constants of the nonlinearity; validated, never consumed."""
    alpha: float = 0.5   # sublinear exponent, in (0, 1)
    a: float = 1.0
    b: float = 1.0
    beta: float = 2.0    # linearization remainder exponent, > 1
    c: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.beta <= 1.0:
            raise ValueError(f"beta must exceed 1, got {self.beta}")
        if self.a <= 0 or self.b <= 0 or self.c <= 0:
            raise ValueError("growth constants a, b, c must be positive")


@dataclass
class CouplingProblem:
    """Symmetry group, its coordinate action, and the linearization matrix.

    ``action`` maps each element of ``gamma`` to the permutation of the k
    coordinates it induces; ``matrix`` is the k x k linearization, which
    must commute with every action permutation.
    """
    gamma: FiniteGroup
    action: dict[Perm, Perm]
    matrix: list[list[Fraction]]
    growth: GrowthMeta = field(default_factory=GrowthMeta)
    cube_params: tuple[Fraction, Fraction] | None = None

    def __post_init__(self):
        k = len(self.matrix)
        if any(len(row) != k for row in self.matrix):
            raise ValueError("matrix must be square")
        if set(self.action) != set(self.gamma.elements):
            raise ValueError("action must cover every group element")
        for g in self.gamma.generators or [pidentity(self.gamma.degree)]:
            p = self.action[g]
            if len(p) != k:
                raise ValueError("action degree differs from matrix size")
            # equivariance (B1): A rho(g) = rho(g) A, i.e. A[p(i)][p(l)] = A[i][l]
            for i in range(k):
                for l in range(k):
                    if self.matrix[p[i]][p[l]] != self.matrix[i][l]:
                        raise ValueError(
                            "matrix does not commute with the group action")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def permutation_character(self) -> list[int]:
        """Fixed coordinates of each element conjugacy class of gamma."""
        out = []
        for cls in self.gamma.element_conjugacy_classes():
            p = self.action[cls[0]]
            out.append(sum(1 for i in range(len(p)) if p[i] == i))
        return out


# ---------------------------------------------------------------------------
# the cube template

# adjacency of the cube graph (vertices 0-7, antipodal pairs i, i+4)
CUBE_ADJACENCY = [
    [0, 1, 0, 1, 0, 1, 0, 0],
    [1, 0, 1, 0, 0, 0, 1, 0],
    [0, 1, 0, 1, 0, 0, 0, 1],
    [1, 0, 1, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 0, 1],
    [1, 0, 0, 0, 1, 0, 1, 0],
    [0, 1, 0, 0, 0, 1, 0, 1],
    [0, 0, 1, 0, 1, 0, 1, 0],
]


def _cube_automorphisms() -> list[Perm]:
    adj = CUBE_ADJACENCY
    autos: list[Perm] = []

    def extend(img: list[int], used: set[int]) -> None:
        i = len(img)
        if i == 8:
            autos.append(tuple(img))
            return
        for v in range(8):
            if v in used:
                continue
            if all(adj[i][l] == adj[v][img[l]] for l in range(i)):
                img.append(v)
                used.add(v)
                extend(img, used)
                img.pop()
                used.remove(v)

    extend([], set())
    assert len(autos) == 48
    return autos


def _diagonals() -> list[tuple[int, int]]:
    """Antipodal vertex pairs, ordered by smaller vertex."""
    nbrs = [frozenset(l for l in range(8) if CUBE_ADJACENCY[i][l])
            for i in range(8)]
    pairs = []
    for i in range(4):
        opp = next(v for v in range(8)
                   if v != i and not CUBE_ADJACENCY[i][v] and not (nbrs[i] & nbrs[v]))
        pairs.append((i, opp))
    return pairs


def _diag_perm(g: Perm, diags: list[tuple[int, int]]) -> Perm:
    of = {v: d for d, pair in enumerate(diags) for v in pair}
    return tuple(of[g[diags[d][0]]] for d in range(4))


@lru_cache(maxsize=1)
def cube_action() -> tuple[FiniteGroup, dict[Perm, Perm]]:
    """S4 acting on the 8 cube vertices through the rotation group.

    The full graph automorphism group splits over the antipodal map; the
    rotation copy of S4 is generated by the (unique) lifts of a diagonal
    transposition fixing no vertex and of a 3-cycle fixing two.
    """
    autos = _cube_automorphisms()
    diags = _diagonals()
    fix = lambda p: sum(1 for i in range(8) if p[i] == i)
    t = next(p for p in autos
             if _diag_perm(p, diags) == (1, 0, 2, 3) and fix(p) == 0)
    c = next(p for p in autos
             if _diag_perm(p, diags) == (0, 2, 3, 1) and fix(p) == 2)
    rot = closure([t, c], 8)
    assert len(rot) == 24
    gamma = symmetric_group(4)
    action = {_diag_perm(p, diags): p for p in rot}
    assert set(action) == set(gamma.elements)
    return gamma, action


def cube_matrix(c, d) -> list[list[Fraction]]:
    """The 8x8 cube coupling matrix c*I + d*Adj."""
    c, d = Fraction(c), Fraction(d)
    return [[c if i == l else d * CUBE_ADJACENCY[i][l] for l in range(8)]
            for i in range(8)]


def cube_problem(c, d, growth: GrowthMeta | None = None) -> CouplingProblem:
    gamma, action = cube_action()
    return CouplingProblem(gamma=gamma, action=action,
                           matrix=cube_matrix(c, d),
                           growth=growth or GrowthMeta(),
                           cube_params=(Fraction(c), Fraction(d)))


# ---------------------------------------------------------------------------
# isotypic spectrum

@dataclass(frozen=True)
class IsotypicEigenvalue:
    j: int                 # Gamma-irreducible index
    mu: Fraction | float   # eigenvalue of A on the isotypic component
    mult: int              # m_j = dim V_j / dim U_j
    dim: int               # dim V_j


def isotypic_spectrum(problem: CouplingProblem,
                      ctx_table=None) -> list[IsotypicEigenvalue]:
    """Eigenvalue mu_j of A on each nonzero isotypic component of V.

    The projector P_j = (deg chi_j / |Gamma|) sum_g chi_j(g) rho(g) is
    exact rational; condition (B2) requires A P_j = mu_j P_j, which is
    verified entrywise and rejected with a diagnostic otherwise.
    """
    from .characters import character_table
    G = problem.gamma
    table = ctx_table or character_table(G)
    k = problem.dim
    A = [[Fraction(v) if not isinstance(v, float) else v for v in row]
         for row in problem.matrix]
    exact = all(isinstance(v, Fraction) for row in A for v in row)
    mults = isotypic_multiplicities(table, problem.permutation_character())
    out = []
    n = G.order
    for j, m_j in enumerate(mults):
        if m_j == 0:
            continue
        deg = table.degrees[j]
        # P_j[i][l] = (deg/|G|) * sum_g chi_j(g) [action(g): l -> i]
        P = [[Fraction(0)] * k for _ in range(k)]
        for g in G.elements:
            chi = table.value(j, g)
            if chi == 0:
                continue
            p = problem.action[g]
            for l in range(k):
                P[p[l]][l] += Fraction(chi)
        scale = Fraction(deg, n)
        P = [[scale * v for v in row] for row in P]
        # A P_j must be a scalar multiple of P_j
        AP = [[sum(A[i][t] * P[t][l] for t in range(k)) for l in range(k)]
              for i in range(k)]
        i0, l0 = next((i, l) for i in range(k) for l in range(k) if P[i][l])
        mu = AP[i0][l0] / P[i0][l0]
        tol = 0 if exact else MU_TOL
        for i in range(k):
            for l in range(k):
                if abs(AP[i][l] - mu * P[i][l]) > tol:
                    raise ValueError(
                        f"matrix is not scalar on isotypic component {j}; "
                        f"condition (B2) fails")
        out.append(IsotypicEigenvalue(j=j, mu=mu, mult=m_j, dim=m_j * deg))
    return out


def spectrum_summary(spec: list[IsotypicEigenvalue]) -> dict:
    """sigma(A) as {eigenvalue: algebraic multiplicity} plus attribution."""
    sigma: dict = {}
    for e in spec:
        sigma[e.mu] = sigma.get(e.mu, 0) + e.dim
    return sigma


# ---------------------------------------------------------------------------
# conditions (D) and (3.1)

def check_condition_D(spec: list[IsotypicEigenvalue],
                      modes: ModeTable) -> tuple[bool, tuple | None]:
    """True iff every positive eigenvalue clears every s_nm by D_GUARD."""
    for e in spec:
        mu = float(e.mu)
        if mu <= 0:
            continue
        if mu > modes.mu_max:
            raise ValueError("mode table does not cover the spectrum")
        for (n, m), z in modes.zeros.items():
            if abs(z - mu) <= D_GUARD:
                return False, (n, m, e.mu)
    return True, None


def resonant_set(spec: list[IsotypicEigenvalue],
                 modes: ModeTable) -> set[int]:
    """Modes m admitting an eigenvalue collision (the set C)."""
    out = set()
    for e in spec:
        mu = float(e.mu)
        if mu <= 0:
            continue
        for (n, m), z in modes.zeros.items():
            if abs(z - mu) <= D_GUARD:
                out.add(m)
    return out


def check_s3_1(resonant: set[int], l: int) -> bool:
    """True iff no odd multiple of l is resonant."""
    if l < 1:
        raise ValueError("l must be a positive integer")
    return not any(m % (2 * l) == l for m in resonant)


# ---------------------------------------------------------------------------
# counters

def n_counter(modes: ModeTable, m: int, mu) -> int:
    """n_m(mu): the number of n with s_nm < mu."""
    return modes.count_below(m, float(mu))


def m_counter(spec: list[IsotypicEigenvalue], modes: ModeTable,
              m: int) -> int:
    """m_m = sum over positive eigenvalues of n_m(mu) * mult(mu)."""
    sigma = spectrum_summary(spec)
    return sum(n_counter(modes, m, mu) * mult
               for mu, mult in sigma.items() if float(mu) > 0)


@dataclass
class ClassCounters:
    """Fold counters for one maximal orbit type (H) of mode 1."""
    cid: int
    name: str
    n_j: dict[tuple[int, int], int]   # (nu, j) -> n_j(H_nu)
    m_of: dict[int, int]              # nu -> m(H_nu)
    nu0: int | None                   # max nu with m(H_nu) odd, if any


def class_counters(spec, modes, ring: BurnsideRing, ctx: RepContext,
                   cid: int) -> ClassCounters:
    cat = ctx.catalog
    n_j: dict[tuple[int, int], int] = {}
    m_of: dict[int, int] = {}
    for nu in range(1, modes.max_mode + 1):
        raw = {e.j: (n_counter(modes, nu, e.mu) if float(e.mu) > 0 else 0)
               for e in spec}
        if not any(raw.values()):
            n_j.update({(nu, j): 0 for j in raw})
            m_of[nu] = 0
            continue
        h_nu = cat.fold_class(cid, nu)
        total = 0
        for e in spec:
            cnt = raw[e.j]
            if cnt and basic_degree(ring, ctx,
                                    IrrDescriptor(nu, e.j, -1)).coeff(h_nu) == 0:
                cnt = 0
            n_j[(nu, e.j)] = cnt
            total += cnt * e.mult
        m_of[nu] = total
    odd = [v for v, t in m_of.items() if t % 2]
    return ClassCounters(cid=cid, name=cat.classes[cid].name, n_j=n_j,
                         m_of=m_of, nu0=max(odd) if odd else None)


# ---------------------------------------------------------------------------
# catalog sizing

def dihedral_quotient_orders(catalog_ktable) -> set[int]:
    """Rotation orders r of dihedral quotients K'/R over subgroups of K."""
    from .catalog import _dihedral_isos, _quotient_group

    out = {1, 2}
    for rec in catalog_ktable.classes:
        Kp = rec.representative
        degree = len(next(iter(Kp)))
        for R in catalog_ktable.normal_subgroups_of(Kp):
            q = len(Kp) // len(R)
            if q < 6 or q % 2 or q // 2 in out:
                continue
            _, mul, eid = _quotient_group(Kp, R, degree)
            if _dihedral_isos(mul, eid, q // 2):
                out.add(q // 2)
    return out


def required_heads(K_table, active_modes: set[int]) -> list[int]:
    """Divisor-closed head set covering all orbit types and folds.

    Heads of dihedral-kind orbit types of a mode-m representation are of
    the form r*m, with r the rotation order of a dihedral subquotient of
    K; folding a mode-1 orbit type to level nu lands on head r*nu, so
    ranging m over the active modes covers both uses.
    """
    rs = dihedral_quotient_orders(K_table)
    base = {r * m for r in rs for m in (active_modes or {1})}
    heads = set()
    for h in base:
        heads.update(d for d in range(1, h + 1) if h % d == 0)
    heads = sorted(heads) or [1]
    if 2 * math.lcm(*heads) > MAX_HEAD_PERIOD:
        raise ValueError(
            f"required head set {heads} exceeds the supported grid period")
    return heads


# ---------------------------------------------------------------------------
# full pipeline

@dataclass
class PipelineContext:
    """Catalog, ring and representation data shared across a run."""
    catalog: ProductCatalog
    ring: BurnsideRing
    ctx: RepContext


def build_context(problem: CouplingProblem, modes: ModeTable,
                  heads: list[int] | None = None) -> PipelineContext:
    from .permgroup import SubgroupClassTable

    K = direct_product(problem.gamma, cyclic_group(2))
    ktable = SubgroupClassTable(K)
    if heads is None:
        active = {m for m, c in modes.counts.items() if m >= 1 and c > 0}
        heads = required_heads(ktable, active)
    cat = ProductCatalog(K, heads, ktable=ktable)
    return PipelineContext(catalog=cat, ring=BurnsideRing(cat),
                           ctx=RepContext(cat, problem.gamma))


@dataclass
class NonRadialFamily:
    base_cid: int
    base_name: str
    nu0: int
    family_name: str       # fold-parameter form, e.g. "D6m^{Zm} x_{D6} D3p"
    witness_cid: int       # class H_{nu0}
    witness_coeff: int     # its coefficient in gdeg(F, Omega)


@dataclass
class DegreeReport:
    condition_D: bool
    condition_D_witness: tuple | None
    resonant: set[int]
    spectrum: list[IsotypicEigenvalue]
    mode_counts: dict[int, int]          # m -> m_m of the mode counter
    maximal_mode1: list[int]             # cids of M_1
    counters: list[ClassCounters]
    degree: BurnsideElement | None
    non_radial: list[NonRadialFamily]
    radial: list[tuple[int, str, int]]   # (cid, name, coefficient)


def fold_family_name(cat: ProductCatalog, cid: int) -> str:
    """Name of the fold family {Psi_nu(H)}, with symbolic parameter m."""
    c = cat.classes[cid]
    if c.kind != "D":
        raise ValueError("fold families are defined for dihedral-headed classes")
    eidx = cat.K.index_of[pidentity(cat.K.degree)]
    m2 = np.asarray(c.mask).reshape(2 * cat.P, cat.model.nK)
    z = int(m2[:cat.P, eidx].sum())
    has_refl = bool(m2[cat.P:, eidx].any())
    head_part, sep, rest = c.name.partition(" x_")
    if not sep:
        # full product D_h x K' folds to D_{h m} x K'
        _, _, kname = c.name.partition(" x ")
        return f"D{c.head}m x {kname}"
    sym = "D" if has_refl else "Z"
    kern = f"{sym}m" if z == 1 else f"{sym}{z}m"
    return f"D{c.head}m^{{{kern}}} x_{rest}"


def spectral_assignment(spec, modes) -> SpectralAssignment:
    assign = SpectralAssignment()
    for e in spec:
        if float(e.mu) <= 0:
            continue
        for m in range(modes.max_mode + 1):
            cnt = n_counter(modes, m, e.mu)
            if cnt:
                assign.add(IrrDescriptor(m, e.j, -1), cnt * e.mult)
    return assign


def existence_report(problem: CouplingProblem,
                     pipeline: PipelineContext | None = None,
                     max_mode: int | None = None) -> DegreeReport:
    """Run the full pipeline and collect every reportable conclusion."""
    spec = isotypic_spectrum(problem)
    mu_max = max((float(e.mu) for e in spec if float(e.mu) > 0), default=0.0)
    modes = ModeTable(mu_max)
    if max_mode is not None and max_mode < modes.max_mode:
        raise ValueError(
            f"max-mode override {max_mode} below required {modes.max_mode}")
    ok, witness = (check_condition_D(spec, modes) if mu_max > 0
                   else (True, None))
    resonant = resonant_set(spec, modes) if mu_max > 0 else set()
    if not ok:
        return DegreeReport(condition_D=False, condition_D_witness=witness,
                            resonant=resonant, spectrum=spec, mode_counts={},
                            maximal_mode1=[], counters=[], degree=None,
                            non_radial=[], radial=[])
    if mu_max == 0.0:
        return DegreeReport(condition_D=True, condition_D_witness=None,
                            resonant=set(), spectrum=spec, mode_counts={},
                            maximal_mode1=[], counters=[], degree=None,
                            non_radial=[], radial=[])

    if pipeline is None:
        pipeline = build_context(problem, modes)
    cat, ring, ctx = pipeline.catalog, pipeline.ring, pipeline.ctx

    mode_counts = {m: m_counter(spec, modes, m)
                   for m in range(modes.max_mode + 1)}
    assign = spectral_assignment(spec, modes)
    gdeg = gdeg_field(ring, ctx, assign)

    m1 = maximal_orbit_types_union(
        ctx, [IrrDescriptor(1, e.j, -1) for e in spec])
    counters = [class_counters(spec, modes, ring, ctx, cid) for cid in m1]

    non_radial = []
    for cc in counters:
        if cc.nu0 is None:
            continue
        h0 = cat.fold_class(cc.cid, cc.nu0)
        non_radial.append(NonRadialFamily(
            base_cid=cc.cid, base_name=cc.name, nu0=cc.nu0,
            family_name=fold_family_name(cat, cc.cid),
            witness_cid=h0, witness_coeff=gdeg.coeff(h0)))
        if non_radial[-1].witness_coeff == 0:
            raise AssertionError(
                f"odd counter at {cc.name} but zero degree coefficient at "
                f"{cat.classes[h0].name}")

    # only reps with odd multiplicity survive in the degree product, so the
    # radial candidates are the maximal orbit types of the odd mode-0 reps
    odd0 = [r for r in assign.odd_reps() if r.m == 0]
    radial_types = maximal_orbit_types_union(ctx, odd0) if odd0 else []
    radial = [(cid, cat.classes[cid].name, gdeg.coeff(cid))
              for cid in radial_types if gdeg.coeff(cid) != 0]

    return DegreeReport(condition_D=True, condition_D_witness=None,
                        resonant=resonant, spectrum=spec,
                        mode_counts=mode_counts, maximal_mode1=m1,
                        counters=counters, degree=gdeg,
                        non_radial=non_radial, radial=radial)
