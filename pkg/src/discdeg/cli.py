"""Command-line surface for the disc-degree pipeline.

Machine output is line-delimited JSON with a schema version field; text
output uses the amalgamated class names in descending class order.  Exit
status: 0 success, 2 validation error, 3 non-resonance refusal.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import pickle
import sys
from fractions import Fraction

SCHEMA = 1
CACHE_ENV = "DISCDEG_CACHE_DIR"


class Refusal(Exception):
    """Condition (D) / resonance violation (exit status 3)."""


def _emit(fmt, records, text_lines):
    if fmt == "json":
        for r in records:
            print(json.dumps({"schema": SCHEMA, **r}, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _build_group(descriptor: str):
    from .permgroup import build_group
    return build_group(descriptor)


def _cached(tag: str, build):
    """Build-or-load an expensive object keyed by tag in the cache dir."""
    cache_dir = os.environ.get(CACHE_ENV)
    key = None
    if cache_dir:
        key = os.path.join(
            cache_dir,
            hashlib.sha256(f"{tag}|v{SCHEMA}".encode()).hexdigest() + ".pkl")
        if os.path.exists(key):
            with open(key, "rb") as fh:
                return pickle.load(fh)
    obj = build()
    if key:
        os.makedirs(cache_dir, exist_ok=True)
        with open(key, "wb") as fh:
            pickle.dump(obj, fh)
    return obj


def _catalog(descriptor: str, heads: list[int]):
    """Product catalog for O(2) x K, with optional on-disk cache."""
    from .catalog import ProductCatalog
    heads = sorted(set(heads))
    return _cached(f"catalog|{descriptor}|{heads}",
                   lambda: ProductCatalog(_build_group(descriptor), heads))


def _parse_heads(s: str) -> list[int]:
    try:
        heads = sorted({int(t) for t in s.split(",") if t.strip()})
    except ValueError:
        raise ValueError(f"bad head list {s!r}; expected comma-separated integers")
    if not heads or heads[0] < 1:
        raise ValueError("head list must contain positive integers")
    return heads


# ---------------------------------------------------------------------------
# subcommands

def cmd_ccs(args) -> int:
    if args.heads:
        cat = _catalog(args.group, _parse_heads(args.heads))
        recs = [{"record": "class", "cid": c.cid, "name": c.name,
                 "kind": c.kind, "weyl": c.weyl_order} for c in cat.classes]
        text = [f"{c.cid:5d}  W={c.weyl_order:<4d} ({c.name})"
                for c in cat.classes]
    else:
        from .naming import name_subgroup_classes
        from .permgroup import SubgroupClassTable
        table = SubgroupClassTable(_build_group(args.group))
        name_subgroup_classes(table)
        recs = [{"record": "class", "cid": r.cid, "name": r.name,
                 "order": r.order, "weyl": r.weyl_order, "size": r.size}
                for r in table.classes]
        text = [f"{r.cid:3d}  |H|={r.order:<3d} W={r.weyl_order:<3d} ({r.name})"
                for r in table.classes]
    _emit(args.format, recs, text)
    return 0


def cmd_chartab(args) -> int:
    from .characters import character_table
    t = character_table(_build_group(args.group))
    recs = [{"record": "irrep", "index": i, "name": t.names[i],
             "values": list(row)} for i, row in enumerate(t.irreps)]
    width = max(len(n) for n in t.names)
    text = [f"{t.names[i]:<{width}}  " + "  ".join(f"{v:3d}" for v in row)
            for i, row in enumerate(t.irreps)]
    _emit(args.format, recs, text)
    return 0


def _context(args):
    from .burnside import BurnsideRing
    from .reps import RepContext
    cat = _catalog(args.group, _parse_heads(args.heads))
    if not cat.K.factors or len(cat.K.factors) < 2:
        raise ValueError("group must be a direct product Gamma*Z2")
    gamma = cat.K.factors[0][0]
    return cat, BurnsideRing(cat), RepContext(cat, gamma)


def _element_records(el, record: str):
    return [{"record": record, "name": n, "coeff": v} for n, v in el.terms()]


def cmd_basic_degree(args) -> int:
    from .degrees import basic_degree
    from .reps import IrrDescriptor
    cat, ring, ctx = _context(args)
    el = basic_degree(ring, ctx, IrrDescriptor(args.m, args.j, args.sign))
    _emit(args.format, _element_records(el, "term"), [repr(el)])
    return 0


def cmd_burnside_mul(args) -> int:
    cat, ring, _ = _context(args)
    try:
        a = ring.generator(cat.by_name[args.left])
        b = ring.generator(cat.by_name[args.right])
    except KeyError as e:
        raise ValueError(f"unknown class name {e.args[0]!r}")
    el = a * b
    _emit(args.format, _element_records(el, "term"), [repr(el)])
    return 0


def cmd_fold(args) -> int:
    cat, _, _ = _context(args)
    try:
        cid = cat.by_name[args.name]
    except KeyError:
        raise ValueError(f"unknown class name {args.name!r}")
    out = cat.fold_class(cid, args.nu)
    name = cat.classes[out].name
    _emit(args.format,
          [{"record": "fold", "name": args.name, "nu": args.nu,
            "result": name}],
          [name])
    return 0


def cmd_bessel_zeros(args) -> int:
    from .bessel import bessel_zeros
    zs = bessel_zeros(args.m, args.upper)
    _emit(args.format,
          [{"record": "zero", "m": args.m, "n": i + 1, "value": z}
           for i, z in enumerate(zs)],
          [f"{z:.10f}" for z in zs])
    return 0


def _load_problem(path: str):
    from .elliptic import CouplingProblem, GrowthMeta, cube_problem
    with open(path) as fh:
        doc = json.load(fh)
    growth = GrowthMeta(**doc.get("growth", {}))
    if "cube" in doc:
        c = Fraction(str(doc["cube"]["c"]))
        d = Fraction(str(doc["cube"]["d"]))
        return cube_problem(c, d, growth)
    gamma = _build_group(doc["group"])
    gens = [tuple(p) for p in doc["action_generators"]]
    if len(gens) != len(gamma.generators):
        raise ValueError("action_generators must match the group generators")
    action = _extend_action(gamma, gens)
    matrix = [[Fraction(str(v)) for v in row] for row in doc["matrix"]]
    return CouplingProblem(gamma=gamma, action=action, matrix=matrix,
                           growth=growth)


def _extend_action(gamma, gen_images):
    """Extend generator images to the homomorphism on all of gamma."""
    from .permgroup import pidentity, pmul
    k = len(gen_images[0]) if gen_images else 1
    action = {pidentity(gamma.degree): pidentity(k)}
    frontier = list(action)
    while frontier:
        nxt = []
        for g in frontier:
            for s, img in zip(gamma.generators, gen_images):
                h = pmul(s, g)
                if h not in action:
                    action[h] = pmul(img, action[g])
                    nxt.append(h)
        frontier = nxt
    if len(action) != gamma.order:
        raise ValueError("generator images do not generate an action")
    return action


def _report_records(rep):
    recs = [{"record": "condition", "name": "D", "ok": rep.condition_D,
             "witness": list(map(str, rep.condition_D_witness or []))},
            {"record": "resonant", "modes": sorted(rep.resonant)}]
    for e in rep.spectrum:
        recs.append({"record": "eigenvalue", "irrep": e.j, "mu": str(e.mu),
                     "mult": e.mult, "dim": e.dim})
    recs.append({"record": "mode_counts",
                 "counts": {str(m): v for m, v in sorted(rep.mode_counts.items())}})
    for cc in rep.counters:
        recs.append({"record": "counter", "class": cc.name,
                     "m_of": {str(k): v for k, v in sorted(cc.m_of.items())},
                     "nu0": cc.nu0})
    if rep.degree is not None:
        recs += [{"record": "expansion", "name": n, "coeff": v}
                 for n, v in rep.degree.terms()]
    for f in rep.non_radial:
        recs.append({"record": "nonradial", "family": f.family_name,
                     "base": f.base_name, "nu0": f.nu0,
                     "coeff": f.witness_coeff})
    for _, name, co in rep.radial:
        recs.append({"record": "radial", "name": name, "coeff": co})
    return recs


def _report_text(rep):
    out = [f"condition (D): {'satisfied' if rep.condition_D else 'VIOLATED'}"]
    if rep.condition_D_witness:
        n, m, mu = rep.condition_D_witness
        out.append(f"  collision near s_{n}{m} at eigenvalue {mu}")
    for e in rep.spectrum:
        out.append(f"eigenvalue mu_{e.j} = {e.mu} (multiplicity {e.dim})")
    if rep.degree is not None:
        out.append(f"degree: {rep.degree!r}")
    out.append(f"non-radial families ({len(rep.non_radial)}):")
    for f in rep.non_radial:
        out.append(f"  ({f.family_name})   [nu0 = {f.nu0}, coeff {f.witness_coeff}]")
    out.append(f"radial types ({len(rep.radial)}):")
    for _, name, co in rep.radial:
        out.append(f"  ({name})   [coeff {co}]")
    return out


def _solve_pipeline(problem):
    """PipelineContext for a problem, using the catalog cache if enabled."""
    from .bessel import ModeTable
    from .burnside import BurnsideRing
    from .catalog import ProductCatalog
    from .elliptic import (PipelineContext, isotypic_spectrum, required_heads)
    from .permgroup import SubgroupClassTable, cyclic_group, direct_product
    from .reps import RepContext

    spec = isotypic_spectrum(problem)
    mu_max = max((float(e.mu) for e in spec if float(e.mu) > 0), default=0.0)
    if mu_max == 0.0:
        return None
    modes = ModeTable(mu_max)
    K = direct_product(problem.gamma, cyclic_group(2))
    ktable = SubgroupClassTable(K)
    active = {m for m, c in modes.counts.items() if m >= 1 and c > 0}
    heads = required_heads(ktable, active)
    cat = _cached(f"catalog|{K.name}/{K.order}|{heads}",
                  lambda: ProductCatalog(K, heads, ktable=ktable))
    return PipelineContext(catalog=cat, ring=BurnsideRing(cat),
                           ctx=RepContext(cat, problem.gamma))


def cmd_solve(args) -> int:
    from .elliptic import existence_report
    problem = _load_problem(args.problem)
    rep = existence_report(problem, pipeline=_solve_pipeline(problem),
                           max_mode=args.max_mode)
    if not rep.condition_D:
        _emit(args.format, _report_records(rep), _report_text(rep))
        raise Refusal("condition (D) violated: eigenvalue collides with a "
                      f"Bessel zero at (n, m, mu) = {rep.condition_D_witness}")
    _emit(args.format, _report_records(rep), _report_text(rep))
    return 0


def _expansion_multiset(path: str):
    terms = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            r = json.loads(line)
            if r.get("record") == "expansion":
                terms.append((r["name"], r["coeff"]))
    return sorted(terms)


def cmd_golden_check(args) -> int:
    got = _expansion_multiset(args.report)
    want = _expansion_multiset(args.expected)
    if got == want:
        print(f"OK: {len(got)} terms match")
        return 0
    missing = sorted(set(want) - set(got))
    extra = sorted(set(got) - set(want))
    raise ValueError(f"expansion mismatch: missing {missing[:5]}, "
                     f"extra {extra[:5]}")


# ---------------------------------------------------------------------------

def _parser():
    p = argparse.ArgumentParser(
        prog="discdeg",
        description="Equivariant degree computations for disc boundary "
                    "value problems with O(2) x Gamma x Z2 symmetry.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("ccs", help="conjugacy classes of subgroups")
    sp.add_argument("group")
    sp.add_argument("--heads", help="comma-separated dihedral heads; if set, "
                                    "list the O(2) x K product catalog")
    sp.set_defaults(fn=cmd_ccs)

    sp = sub.add_parser("chartab", help="character table")
    sp.add_argument("group")
    sp.set_defaults(fn=cmd_chartab)

    for name, fn in (("basic-degree", cmd_basic_degree),):
        sp = sub.add_parser(name, help="basic degree of an irreducible rep")
        sp.add_argument("m", type=int)
        sp.add_argument("j", type=int)
        sp.add_argument("sign", type=int, choices=(-1, 1))
        sp.add_argument("--group", default="S4*Z2")
        sp.add_argument("--heads", default="1,2,3,4,6,8,9,12,18")
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("burnside-mul", help="product of two generators")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--group", default="S4*Z2")
    sp.add_argument("--heads", default="1,2,3,4,6,8,9,12,18")
    sp.set_defaults(fn=cmd_burnside_mul)

    sp = sub.add_parser("fold", help="apply the folding map to a class")
    sp.add_argument("nu", type=int)
    sp.add_argument("name")
    sp.add_argument("--group", default="S4*Z2")
    sp.add_argument("--heads", default="1,2,3,4,6,8,9,12,18")
    sp.set_defaults(fn=cmd_fold)

    sp = sub.add_parser("bessel-zeros", help="zeros of J_m up to a bound")
    sp.add_argument("m", type=int)
    sp.add_argument("upper", type=float)
    sp.set_defaults(fn=cmd_bessel_zeros)

    sp = sub.add_parser("solve", help="full existence report for a problem file")
    sp.add_argument("problem")
    sp.add_argument("--max-mode", type=int, default=None,
                    help="assert the mode truncation does not exceed this")
    sp.set_defaults(fn=cmd_solve)

    sp = sub.add_parser("golden-check",
                        help="compare two JSON reports' expansions as multisets")
    sp.add_argument("report")
    sp.add_argument("expected")
    sp.set_defaults(fn=cmd_golden_check)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except Refusal as e:
        print(f"refused: {e}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
