"""fusionkit command line: build and verify fusion/linking systems, idempotents and invariants.

Every subcommand writes one canonical JSON report.  Exit status: 0 success,
1 a verification failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import perm as P
from .burnside import to_json as element_json
from .cohomology import MAX_DEGREE, group_cohomology
from .fusion import (centric_subgroups, enumerate_saturated_fusion_systems, fusion_of_group,
                     is_fusion_system, is_saturated, isomorphism_classes)
from .groups import DEFAULT_ORDER_BOUND, Group, NotASubgroup, OrderBoundExceeded, is_prime, sylow
from .idempotent import (characteristic_idempotent, is_F_stable, is_idempotent,
                         verify_classical_frobenius, verify_diag_commute,
                         verify_frobenius_reciprocity)
from .burnside import augmentation
from .invariants import (DEFAULT_MAX_DEGREE, invariant_basis, matrix_group, molien_series,
                         reynolds_image, verify_coh_properties)
from .io import SCHEMA, dumps, parse_group_file, parse_matrix_file, parse_module_file
from .linking import linking_of_group, verify_axiom_A, verify_axiom_B, verify_axiom_C, verify_plfg
from .perm import ParseError
from .steenrod import Algebra

COMMANDS = ("fusion", "saturate", "centrics", "linking", "verify-plfg", "classify-abelian",
            "cohomology", "idempotent", "frobenius-check", "invariants", "coh-check")

CONFIG_KEYS = {"group", "prime", "precision", "max_degree", "subgroup", "W", "out",
               "order_bound", "rank", "module"}

DEFAULTS = {"precision": 16, "order_bound": DEFAULT_ORDER_BOUND}


class InputError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fusionkit", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--group", help="group file")
    ap.add_argument("--prime", type=int)
    ap.add_argument("--precision", type=int, help="p-adic precision m for idempotents")
    ap.add_argument("--max-degree", dest="max_degree", type=int)
    ap.add_argument("--subgroup", help="name from the group file, 'sylow', an index, "
                                       "or generators in cycle notation")
    ap.add_argument("--W", dest="W", help="matrix file for W <= GL(n, p)")
    ap.add_argument("--rank", type=int, help="rank n (when the matrix file does not say)")
    ap.add_argument("--module", help="module file for the cohomology command")
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--order-bound", dest="order_bound", type=int)
    ap.add_argument("--config", help="key=value file; command-line flags take precedence")
    return ap


def read_config(path: str) -> dict[str, str]:
    out = {}
    for n, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{n}: expected key=value")
        k, v = (s.strip() for s in line.split("=", 1))
        k = k.replace("-", "_")
        if k not in CONFIG_KEYS:
            raise InputError(f"{path}:{n}: unknown key {k!r}")
        out[k] = v
    return out


def resolve(args: argparse.Namespace) -> argparse.Namespace:
    conf = read_config(args.config) if args.config else {}
    for k in CONFIG_KEYS:
        if getattr(args, k, None) is None and k in conf:
            v = conf[k]
            if k in ("prime", "precision", "max_degree", "order_bound", "rank"):
                try:
                    v = int(v)
                except ValueError:
                    raise InputError(f"config value for {k} must be an integer") from None
            setattr(args, k, v)
    for k, v in DEFAULTS.items():
        if getattr(args, k) is None:
            setattr(args, k, v)
    if args.prime is not None and not is_prime(args.prime):
        raise InputError(f"{args.prime} is not prime")
    if args.precision < 1:
        raise InputError("precision must be at least 1")
    if args.max_degree is not None and args.max_degree < 0:
        raise InputError("max degree must be non-negative")
    if args.order_bound < 1:
        raise InputError("order bound must be positive")
    return args


# ---------------------------------------------------------------------------
# shared input handling

def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise InputError(f"--{n.replace('_', '-')} is required for {args.command}")


def load_group(args):
    _need(args, "group")
    try:
        text = Path(args.group).read_text()
    except OSError as e:
        raise InputError(f"cannot read group file: {e}") from None
    return parse_group_file(text, order_bound=args.order_bound)


def pick_subgroup(gf, choice: str | None, p: int) -> Group:
    G = gf.group
    if choice is None or choice == "sylow":
        return sylow(G, p)
    if choice in gf.subgroups:
        return gf.subgroups[choice]
    if choice.isdigit():
        subs = G.subgroups()
        k = int(choice)
        if k >= len(subs):
            raise InputError(f"subgroup index {k} out of range (G has {len(subs)} subgroups)")
        return subs[k]
    return G.subgroup(gens=P.parse_generators(choice, G.degree))


def _cycles(xs) -> list[str]:
    return [P.to_cycles(x) for x in xs]


def _sub_json(H: Group) -> dict:
    return {"order": H.order, "generators": _cycles(H.gens)}


def _fusion_setup(args):
    _need(args, "prime")
    gf = load_group(args)
    S = pick_subgroup(gf, args.subgroup, args.prime)
    if not S.is_p_group(args.prime):
        raise InputError(f"the chosen subgroup is not a {args.prime}-group")
    return gf.group, S, fusion_of_group(gf.group, S, args.prime)


def _is_sylow(G: Group, S: Group, p: int) -> bool:
    from .groups import p_part
    return S.order == p_part(G.order, p)


# ---------------------------------------------------------------------------
# commands

def cmd_fusion(args):
    G, S, F = _fusion_setup(args)
    ok, bad = is_fusion_system(F)
    morphisms = {}
    for (i, j), tabs in sorted(F.homs.items()):
        H = F.subs[i]
        pos = [H.index[g] for g in H.gens]
        morphisms[f"{i}->{j}"] = sorted([_cycles(t[k] for k in pos) for t in tabs])
    report = {"group_order": G.order, "sylow": _is_sylow(G, S, args.prime),
              "S": _sub_json(S), "subgroups": [_sub_json(H) for H in F.subs],
              "morphisms": morphisms, "is_fusion_system": ok,
              "violations": [str(v) for v in bad]}
    return report, 0 if ok else 1


def cmd_saturate(args):
    G, S, F = _fusion_setup(args)
    rep = is_saturated(F)
    report = {"S": _sub_json(S), "sylow": _is_sylow(G, S, args.prime),
              "saturated": rep.saturated,
              "axiom_I_failures": [{"subgroup_index": i, "subgroup": _sub_json(F.subs[i]),
                                    **why} for i, why in rep.axiom_I_failures],
              "axiom_II_failures": [{"subgroup_index": i, "phi": _cycles(t), **why}
                                    for (i, t), why in rep.axiom_II_failures]}
    return report, 0 if rep.saturated else 1


def cmd_centrics(args):
    G, S, F = _fusion_setup(args)
    cs = centric_subgroups(F)
    report = {"S": _sub_json(S), "count": len(cs),
              "centric": [{"subgroup_index": F.index_of(H), **_sub_json(H)} for H in cs]}
    return report, 0


def _linking_setup(args):
    _need(args, "prime")
    gf = load_group(args)
    S = pick_subgroup(gf, args.subgroup, args.prime)
    if not _is_sylow(gf.group, S, args.prime) or not S.is_p_group(args.prime):
        raise InputError("linking systems need a Sylow subgroup")
    return gf.group, S, linking_of_group(gf.group, S, args.prime)


def cmd_linking(args):
    G, S, L = _linking_setup(args)
    A, B, C = verify_axiom_A(L), verify_axiom_B(L), verify_axiom_C(L)
    subs = L.F.subs
    mors = {}
    pi = {}
    for (a, b), ms in sorted(L.morphisms.items()):
        H = subs[a]
        mors[f"{a}->{b}"] = [{"rep": P.to_cycles(f[0]), "coset_size": len(f)} for f in sorted(ms)]
        pi[f"{a}->{b}"] = [_cycles(P.conj(f[0], g) for g in H.gens) for f in sorted(ms)]
    delta = {str(a): [{"g": P.to_cycles(g), "rep": P.to_cycles(L.delta(a, g)[0])}
                      for g in subs[a].elements] for a in L.objects}
    ok = bool(A and B and C)
    report = {"S": _sub_json(S), "objects": L.objects,
              "object_subgroups": {str(a): _sub_json(subs[a]) for a in L.objects},
              "morphisms": mors, "delta": delta, "pi": pi,
              "axioms": {"A": A.ok, "B": B.ok, "C": C.ok},
              "counterexamples": {k: str(r.counterexample) for k, r in
                                  (("A", A), ("B", B), ("C", C)) if not r.ok}}
    return report, 0 if ok else 1


def cmd_verify_plfg(args):
    _need(args, "prime")
    gf = load_group(args)
    if gf.group.order % args.prime:
        raise InputError(f"{args.prime} does not divide |G| = {gf.group.order}")
    r = verify_plfg(gf.group, args.prime)
    report = {"prime": args.prime, "sylow_order": r.sylow_order,
              "saturated": r.saturation.saturated, "objects": r.objects,
              "axioms": {"A": r.axiom_A.ok, "B": r.axiom_B.ok, "C": r.axiom_C.ok},
              "p_local_finite_group": r.ok}
    return report, 0 if r.ok else 1


def cmd_classify_abelian(args):
    _need(args, "prime")
    gf = load_group(args)
    S = gf.group if args.subgroup is None else pick_subgroup(gf, args.subgroup, args.prime)
    if not S.is_abelian or not S.is_p_group(args.prime):
        raise InputError(f"classify-abelian needs an abelian {args.prime}-group")
    systems = enumerate_saturated_fusion_systems(S, args.prime)
    classes = isomorphism_classes(systems)
    report = {"S": _sub_json(S), "count": len(systems),
              "isomorphism_classes": len(classes),
              "systems": [{"W_order": F.W.order,
                           "aut_F_S": len(F.aut(F.top)),
                           "morphism_count": sum(len(v) for v in F.homs.values())}
                          for F in systems]}
    return report, 0


def cmd_cohomology(args):
    _need(args, "module")
    try:
        M = parse_module_file(Path(args.module).read_text())
    except OSError as e:
        raise InputError(f"cannot read module file: {e}") from None
    D = MAX_DEGREE if args.max_degree is None else args.max_degree
    if D > MAX_DEGREE:
        raise InputError(f"degrees above {MAX_DEGREE} are not supported")
    groups = {str(k): group_cohomology(M, k) for k in range(D + 1)}
    report = {"W_order": M.group.order, "carrier": M.carrier, "cohomology": groups}
    return report, 0


def cmd_idempotent(args):
    G, S, F = _fusion_setup(args)
    if not _is_sylow(G, S, args.prime):
        raise InputError("the characteristic idempotent needs a Sylow subgroup")
    w = characteristic_idempotent(F, args.precision)
    checks = {"idempotent": is_idempotent(w), "augmentation_one": augmentation(w) == 1,
              "F_stable": is_F_stable(w, F).ok}
    report = {"S": _sub_json(S), "exact": w.is_exact, "precision": args.precision,
              "element": element_json(w), "checks": checks}
    return report, 0 if all(checks.values()) else 1


def cmd_frobenius_check(args):
    from .burnside import injective_homs
    G, S, F = _fusion_setup(args)
    if not _is_sylow(G, S, args.prime):
        raise InputError("frobenius-check needs a Sylow subgroup")
    p = args.prime
    classical = {str(i): verify_classical_frobenius(S, H, p) for i, H in enumerate(F.subs)}
    diag = {}
    for i, H in enumerate(F.subs):
        diag[str(i)] = all(verify_diag_commute(f, p) for f in injective_homs(H, S))
    w = characteristic_idempotent(F, args.precision)
    rec = verify_frobenius_reciprocity(w, F)
    ok = all(classical.values()) and all(diag.values()) and bool(rec)
    report = {"S": _sub_json(S), "classical": classical, "diagonal_commutes": diag,
              "reciprocity": rec.relation, "retractive": rec.retractive,
              "idempotent_exact": w.is_exact}
    return report, 0 if ok else 1


def _matrix_setup(args):
    _need(args, "W")
    try:
        mf = parse_matrix_file(Path(args.W).read_text())
    except OSError as e:
        raise InputError(f"cannot read matrix file: {e}") from None
    p = args.prime if args.prime is not None else mf.prime
    if p is None:
        raise InputError("--prime is required")
    if mf.prime is not None and mf.prime != p:
        raise InputError("prime in the matrix file differs from --prime")
    n = args.rank if args.rank is not None else mf.rank
    if n is None:
        if not mf.matrices:
            raise InputError("--rank is required for the trivial group")
        n = len(mf.matrices[0])
    W = matrix_group(mf.matrices, p, n)
    if W.order % p == 0:
        raise InputError(f"p = {p} divides |W| = {W.order}")
    return W


def cmd_invariants(args):
    W = _matrix_setup(args)
    D = DEFAULT_MAX_DEGREE if args.max_degree is None else args.max_degree
    A = Algebra(W.p, W.n)
    bases = [invariant_basis(W, d, A) for d in range(D + 1)]
    dims = [len(b) for b in bases]
    molien = molien_series(W, D)
    image_dims = [len(reynolds_image(W, d, A)) for d in range(D + 1)]
    ok = dims == molien == image_dims
    report = {"prime": W.p, "rank": W.n, "W_order": W.order, "dimensions": dims,
              "molien": molien, "reynolds_image_dimensions": image_dims, "consistent": ok,
              "bases": {str(d): [e.to_json() for e in b] for d, b in enumerate(bases)}}
    return report, 0 if ok else 1


def cmd_coh_check(args):
    W = _matrix_setup(args)
    D = DEFAULT_MAX_DEGREE if args.max_degree is None else args.max_degree
    rep = verify_coh_properties(W, D)
    report = {"prime": W.p, "rank": W.n, "W_order": W.order, "max_degree": D,
              "properties": {f"Coh{k}": rep.passed(k) for k in ("I", "II", "III", "IV")},
              "violations": {f"Coh{k}": [str(v) for v in vs[:5]]
                             for k, vs in rep.violations.items() if vs}}
    return report, 0 if rep.ok else 1


HANDLERS = {
    "fusion": cmd_fusion, "saturate": cmd_saturate, "centrics": cmd_centrics,
    "linking": cmd_linking, "verify-plfg": cmd_verify_plfg,
    "classify-abelian": cmd_classify_abelian, "cohomology": cmd_cohomology,
    "idempotent": cmd_idempotent, "frobenius-check": cmd_frobenius_check,
    "invariants": cmd_invariants, "coh-check": cmd_coh_check,
}


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        args = resolve(args)
        report, code = HANDLERS[args.command](args)
    except (InputError, ParseError, NotASubgroup, OrderBoundExceeded, ValueError) as e:
        print(f"fusionkit: error: {e}", file=sys.stderr)
        return 2
    report = {"schema": SCHEMA, "command": args.command, **report}
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
