"""Command-line front end.

Exit codes: 0 for a definite answer, 2 for Unknown, 1 for usage or input
errors (with a one-line diagnostic on stderr).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from typing import List, Optional

from . import bundles, families, star
from .distinguish import (Distinct, DistinguishBounds, bounded_iso_search,
                          distinguish_to_json)
from .distinguish import distinguish as distinguish_primes
from .bundles import LineBundleSum
from .formats import InputError, digest, load_json, resolve_ring, ring_to_json
from .ring import CohomologyRing, DimensionError, pairs, verify_graded_iso

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _global_flags() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                   help="print the machine-readable report")
    p.add_argument("--out", metavar="FILE", default=argparse.SUPPRESS,
                   help="also write the JSON report to FILE")
    return p


def build_parser() -> argparse.ArgumentParser:
    g = _global_flags()
    parser = _Parser(prog="biqinv", parents=[g],
                     description="Exact computations with biquotient cohomology rings.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    ring = sub.add_parser("ring", help="inspect a ring").add_subparsers(
        dest="action", parser_class=_Parser)
    show = ring.add_parser("show", parents=[g])
    show.add_argument("ring")

    st = sub.add_parser("star", help="Property (*)").add_subparsers(
        dest="action", parser_class=_Parser)
    check = st.add_parser("check", parents=[g])
    check.add_argument("ring")
    check.add_argument("--height", type=int, default=20)
    check.add_argument("--tuple-len", type=int, default=None)
    check.add_argument("--budget", type=int, default=10_000,
                       help="maximum functional candidates per certificate stage")
    verify = st.add_parser("verify", parents=[g],
                           help="re-check a certificate or witness from a report")
    verify.add_argument("ring")
    verify.add_argument("evidence")

    bd = sub.add_parser("bundle", help="sums of line bundles").add_subparsers(
        dest="action", parser_class=_Parser)
    for name in ("chern", "inverse"):
        b = bd.add_parser(name, parents=[g])
        b.add_argument("ring")
        b.add_argument("bundle")

    free = sub.add_parser("free", parents=[g], help="freeness of a torus action")
    free.add_argument("spec")

    fam = sub.add_parser("family", help="example families").add_subparsers(
        dest="action", parser_class=_Parser)
    ra = fam.add_parser("ra", parents=[g])
    ra.add_argument("matrix")
    rp = fam.add_parser("rp", parents=[g])
    rp.add_argument("-p", type=int, required=True)
    rp.add_argument("-k", type=int, required=True)
    q = fam.add_parser("q", parents=[g])
    q.add_argument("--s", type=int, default=None)
    q.add_argument("--t", type=int, default=None)
    q.add_argument("--table", metavar="LO..HI", default=None)

    iso = sub.add_parser("iso", parents=[g], help="bounded graded isomorphism search")
    iso.add_argument("ring_a")
    iso.add_argument("ring_b")
    iso.add_argument("--bound", type=int, default=1)

    dist = sub.add_parser("distinguish", parents=[g], help="separate H*(R(p)) for two primes")
    dist.add_argument("-p", type=int, required=True)
    dist.add_argument("-q", type=int, required=True)
    dist.add_argument("-k", type=int, required=True)
    dist.add_argument("--pair-height", type=int, default=10)
    dist.add_argument("--iso-bound", type=int, default=3)
    dist.add_argument("--box", type=int, default=30)

    cat = sub.add_parser("catalog", parents=[g], help="low-dimensional biquotients")
    cat.add_argument("--check-conditions", action="store_true")
    return parser


def _class_text(v, ring: CohomologyRing) -> str:
    terms = []
    for c, name in zip(v, ring.names):
        if c:
            terms.append(name if c == 1 else f"-{name}" if c == -1 else f"{c}{name}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def _h4_text(x, ring: CohomologyRing) -> str:
    basis = ring.group.free_basis
    if basis is not None:
        labels = [ring.monomial_label(i, j) for i, j in basis]
    else:
        labels = [f"e{n + 1}" for n in range(ring.group.free_rank)]
    terms = [f"{c}*[{lab}]" for c, lab in zip(x.free, labels) if c]
    terms += [f"{t} mod {d}" for t, d in zip(x.torsion, x.orders) if t]
    return " + ".join(terms) or "0"


def _ring_info(ring: CohomologyRing) -> dict:
    g = ring.group
    info = {
        "ring": ring_to_json(ring),
        "h4": {"free_rank": g.free_rank, "torsion_orders": list(g.torsion_orders),
               "free_basis": ([ring.monomial_label(i, j) for i, j in g.free_basis]
                              if g.free_basis is not None else None)},
        "monomials": {ring.monomial_label(i, j): bundles.degree_four_to_json(g.monomial(i, j))
                      for i, j in pairs(ring.k)},
    }
    return info


def _star_payload(verdict) -> dict:
    return star.verdict_to_json(verdict)


def _cmd_ring_show(args, rep):
    ring = resolve_ring(args.ring)
    rep["inputs"] = {"ring": ring_to_json(ring)}
    rep["result"] = _ring_info(ring)
    lines = [f"ring {ring.name or args.ring}: k = {ring.k}, generators {', '.join(ring.names)}"]
    for rel in ring.relations:
        lines.append(f"  relation: {ring.relation_text(rel)} = 0")
    g = ring.group
    lines.append(f"  H^4: free rank {g.free_rank}"
                 + (f", torsion {list(g.torsion_orders)}" if g.torsion_orders else ""))
    for i, j in pairs(ring.k):
        lines.append(f"  {ring.monomial_label(i, j)} = {_h4_text(g.monomial(i, j), ring)}")
    return EXIT_OK, lines


def _cmd_star_check(args, rep):
    ring = resolve_ring(args.ring)
    try:
        budget = star.SearchBudget(height_bound=args.height, tuple_length_bound=args.tuple_len,
                                   max_functional_candidates=args.budget)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep["inputs"] = {"ring": ring_to_json(ring),
                     "budget": {"height": args.height, "tuple_len": args.tuple_len,
                                "functional_candidates": args.budget}}
    verdict = star.check_star(ring, budget)
    payload = _star_payload(verdict)
    rep["result"] = {"verdict": payload["verdict"]}
    rep["evidence"] = {k: v for k, v in payload.items() if k != "verdict"}
    lines = [f"Property (*) for {ring.name or args.ring}: {verdict.status}"]
    if isinstance(verdict, star.Holds):
        for n, s in enumerate(verdict.certificate.stages, 1):
            lines.append(f"  stage {n}: functional {list(s.functional)}, Gram {[list(r) for r in s.gram]},"
                         f" kernel rank {s.kernel_dimension}")
        lines.append("  certificate verifies: "
                     f"{star.verify_certificate(ring, verdict.certificate)}")
        return EXIT_OK, lines
    if isinstance(verdict, star.Fails):
        lines.append("  witness: " + ", ".join(_class_text(x, ring) for x in verdict.witness.tuple))
        lines.append(f"  witness verifies: {star.verify_witness(ring, verdict.witness)}")
        return EXIT_OK, lines
    lines.append(f"  budget exhausted: {json.dumps(verdict.report, sort_keys=True)}")
    return EXIT_UNKNOWN, lines


def _cmd_star_verify(args, rep):
    ring = resolve_ring(args.ring)
    data = load_json(args.evidence)
    if isinstance(data, dict) and "evidence" in data:
        data = data["evidence"]
    try:
        if "certificate" in data:
            ok = star.verify_certificate(ring, star.certificate_from_json(data["certificate"]))
            kind = "certificate"
        elif "witness" in data:
            ok = star.verify_witness(ring, star.witness_from_json(data["witness"]))
            kind = "witness"
        else:
            raise InputError("evidence must contain a 'certificate' or a 'witness'")
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed evidence: {exc}") from None
    rep["inputs"] = {"ring": ring_to_json(ring), "evidence": data}
    rep["result"] = {"kind": kind, "valid": ok}
    return (EXIT_OK if ok else EXIT_ERROR), [f"{kind} valid: {ok}"]


def _load_bundle(source) -> LineBundleSum:
    data = load_json(source)
    if not isinstance(data, dict):
        raise InputError("bundle must be an object with a 'lines' field")
    try:
        return LineBundleSum.from_json(data)
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed bundle: {exc}") from None


def _cmd_bundle_chern(args, rep):
    ring = resolve_ring(args.ring)
    E = _load_bundle(args.bundle)
    rep["inputs"] = {"ring": ring_to_json(ring), "bundle": E.to_json()}
    p1 = bundles.pontryagin_of_realification(E, ring)
    result = {"rank": E.rank, "p1_of_realification": bundles.degree_four_to_json(p1)}
    lines = [f"bundle of rank {E.rank} over {ring.name or args.ring}"]
    if not E.real:
        cs = bundles.chern_summary(E, ring)
        result.update({"c1": list(cs.c1.coords), "c2": bundles.degree_four_to_json(cs.c2),
                       "stable_obstruction": bundles.degree_four_to_json(cs.stable_obstruction)})
        lines += [f"  c1 = {_class_text(cs.c1, ring)}",
                  f"  c2 = {_h4_text(cs.c2, ring)}",
                  f"  c1^2 - 2c2 = {_h4_text(cs.stable_obstruction, ring)}"]
    lines.append(f"  p1(realification) = {_h4_text(p1, ring)}")
    rep["result"] = result
    return EXIT_OK, lines


def _cmd_bundle_inverse(args, rep):
    ring = resolve_ring(args.ring)
    E = _load_bundle(args.bundle)
    verdict = star.check_star(ring)
    decision = bundles.inverse_decision(ring, verdict, E)
    partner = bundles.kill_c1_partner(E, ring)
    rep["inputs"] = {"ring": ring_to_json(ring), "bundle": E.to_json()}
    rep["result"] = {"decision": decision.value, "star": verdict.status,
                     "c1_killing_partner": list(partner.coords)}
    rep["evidence"] = {k: v for k, v in _star_payload(verdict).items() if k != "verdict"}
    lines = [f"Property (*): {verdict.status}", f"inverse among biquotient bundles: {decision.value}"]
    code = EXIT_UNKNOWN if decision is bundles.InverseDecision.UNKNOWN else EXIT_OK
    return code, lines


def _load_spec(source) -> families.TorusActionSpec:
    data = load_json(source)
    try:
        if isinstance(data, list):
            return families.TorusActionSpec.from_matrix(data)
        return families.TorusActionSpec.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed action spec: {exc}") from None


def _freeness_payload(result) -> dict:
    if isinstance(result, families.Free):
        return {"status": "Free", "determinants": list(result.determinants)}
    return {"status": "NonFree", "selection": list(result.selection),
            "determinant": result.determinant, "isotropy": result.isotropy}


def _cmd_free(args, rep):
    spec = _load_spec(args.spec)
    result = families.freeness_check(spec)
    rep["inputs"] = {"spec": spec.to_json()}
    rep["result"] = _freeness_payload(result)
    if isinstance(result, families.Free):
        return EXIT_OK, [f"action is free ({2 ** spec.k} selection determinants are all ±1)"]
    return EXIT_OK, [f"action is not free: selection {''.join(result.selection)} has "
                     f"determinant {result.determinant}, isotropy {result.isotropy}"]


def _family_report(A, ring, rep, lines):
    result = families.freeness_check(families.TorusActionSpec.from_matrix(A))
    verdict = star.check_star(ring)
    payload = _star_payload(verdict)
    rep["result"] = {"admissible": True, "freeness": _freeness_payload(result),
                     "cohomology": _ring_info(ring), "star": payload["verdict"]}
    rep["evidence"] = {k: v for k, v in payload.items() if k != "verdict"}
    lines += [f"  action: {_freeness_payload(result)['status']}",
              f"  H^4 free rank: {ring.group.free_rank}",
              f"  Property (*): {verdict.status}"]
    for rel in ring.relations:
        lines.append(f"  relation: {ring.relation_text(rel)} = 0")
    return (EXIT_UNKNOWN if isinstance(verdict, star.Unknown) else EXIT_OK), lines


def _cmd_family_ra(args, rep):
    A = load_json(args.matrix)
    try:
        A = [[int(x) for x in row] for row in A]
        admissible = families.is_admissible(A)
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed matrix: {exc}") from None
    rep["inputs"] = {"A": A}
    if not admissible:
        rep["result"] = {"admissible": False}
        return EXIT_OK, ["matrix is not admissible"]
    return _family_report(A, families.ra_cohomology(A), rep, [f"R(A) with k = {len(A)}"])


def _cmd_family_rp(args, rep):
    try:
        A = families.rp_matrix(args.p, args.k)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep["inputs"] = {"p": args.p, "k": args.k}
    ring = families.rp_ring(args.p, args.k)
    code, lines = _family_report(A, ring, rep, [f"R({args.p}) with k = {args.k}",
                                                f"  A = {A}"])
    rep["result"]["A"] = A
    return code, lines


def _parse_range(text):
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m or int(m.group(1)) > int(m.group(2)):
        raise InputError(f"bad range {text!r}; expected LO..HI")
    return int(m.group(1)), int(m.group(2))


def _cmd_family_q(args, rep):
    if args.table is None:
        if args.s is None or args.t is None:
            raise UsageError("family q needs --s and --t, or --table LO..HI")
        value = families.q_first_pontryagin(args.s, args.t)
        rep["inputs"] = {"s": args.s, "t": args.t}
        rep["result"] = {"p1": value, "abs_p1": abs(value)}
        return EXIT_OK, [f"p1(Q({args.s},{args.t})) = ±{abs(value)} u  (signed value {value})"]
    lo, hi = _parse_range(args.table)
    rows = families.q_table(lo, hi)
    distinct = sorted({abs(v) for _, _, v in rows})
    rep["inputs"] = {"table": [lo, hi]}
    rep["result"] = {"table": [{"s": s, "t": t, "p1": v} for s, t, v in rows],
                     "distinct_abs_values": len(distinct)}
    lines = ["   s\\t " + " ".join(f"{t:5d}" for t in range(lo, hi + 1))]
    for s in range(lo, hi + 1):
        lines.append(f"{s:6d} " + " ".join(f"{families.q_first_pontryagin(s, t):5d}"
                                           for t in range(lo, hi + 1)))
    lines.append(f"distinct |p1| values: {len(distinct)}")
    return EXIT_OK, lines


def _cmd_iso(args, rep):
    ring_a, ring_b = resolve_ring(args.ring_a), resolve_ring(args.ring_b)
    if ring_a.k != ring_b.k:
        raise InputError("rings have different numbers of generators")
    rep["inputs"] = {"ring_a": ring_to_json(ring_a), "ring_b": ring_to_json(ring_b),
                     "bound": args.bound}
    M = bounded_iso_search(ring_a, ring_b, args.bound)
    if M is None:
        rep["result"] = {"status": "NoneFound", "bound": args.bound}
        return EXIT_OK, [f"no graded isomorphism with entries in [-{args.bound}, {args.bound}]"]
    rep["result"] = {"status": "FoundIso"}
    rep["evidence"] = {"matrix": M, "verified": verify_graded_iso(M, ring_a, ring_b)}
    lines = ["graded isomorphism found:"]
    lines += [f"  {name} -> {_class_text(row, ring_b)}" for name, row in zip(ring_a.names, M)]
    return EXIT_OK, lines


def _cmd_distinguish(args, rep):
    bounds = DistinguishBounds(args.pair_height, args.iso_bound, args.box)
    rep["inputs"] = {"p": args.p, "q": args.q, "k": args.k,
                     "bounds": {"pair_height": args.pair_height,
                                "iso_entry_bound": args.iso_bound, "obstruction_box": args.box}}
    try:
        verdict = distinguish_primes(args.p, args.q, args.k, bounds)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep["result"] = distinguish_to_json(verdict)
    if isinstance(verdict, Distinct):
        return EXIT_OK, [f"H*(R({args.p})) vs H*(R({args.q})), k = {args.k}: Distinct",
                         f"  {verdict.note}"]
    return EXIT_UNKNOWN, [f"H*(R({args.p})) vs H*(R({args.q})), k = {args.k}: Unknown"]\
        + [f"  {r}" for r in verdict.reasons]


def _cmd_catalog(args, rep):
    entries = []
    lines = []
    for e in families.catalog_low_dim():
        item = {"name": e.name, "dimension": e.dimension, "profile": e.profile.to_json()}
        line = f"{e.name:12s} dim {e.dimension}  betti {e.profile.rational_betti}"
        if args.check_conditions:
            r = bundles.sufficient_conditions(e.profile)
            item["conditions"] = r.to_json()
            line += (f"  real inverse: {r.real_inverse_guaranteed}, complex inverse: "
                     f"{r.complex_inverse_guaranteed} ({r.condition_used.value})")
        entries.append(item)
        lines.append(line)
    rep["inputs"] = {"check_conditions": args.check_conditions}
    rep["result"] = {"catalog": entries}
    return EXIT_OK, lines


COMMANDS = {
    ("ring", "show"): _cmd_ring_show,
    ("star", "check"): _cmd_star_check,
    ("star", "verify"): _cmd_star_verify,
    ("bundle", "chern"): _cmd_bundle_chern,
    ("bundle", "inverse"): _cmd_bundle_inverse,
    ("free", None): _cmd_free,
    ("family", "ra"): _cmd_family_ra,
    ("family", "rp"): _cmd_family_rp,
    ("family", "q"): _cmd_family_q,
    ("iso", None): _cmd_iso,
    ("distinguish", None): _cmd_distinguish,
    ("catalog", None): _cmd_catalog,
}


def _normalise_argv(argv: List[str]) -> List[str]:
    # argparse reads "--table -10..10" as two flags
    out = []
    it = iter(argv)
    for a in it:
        if a == "--table":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--table={nxt}")
        else:
            out.append(a)
    return out


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(_normalise_argv(argv))
        key = (args.command, getattr(args, "action", None))
        if args.command is None or key not in COMMANDS:
            raise UsageError("missing or unknown subcommand; see --help")
        rep: dict = {"command": argv}
        code, lines = COMMANDS[key](args, rep)
    except UsageError as exc:
        print(f"biqinv: usage error: {exc}", file=stderr)
        return EXIT_ERROR
    except (InputError, DimensionError) as exc:
        print(f"biqinv: input error: {exc}", file=stderr)
        return EXIT_ERROR
    rep["inputs_digest"] = digest(rep.get("inputs"))
    rep["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    text = json.dumps(rep, indent=2, sort_keys=True, ensure_ascii=False)
    if getattr(args, "out", None):
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"biqinv: cannot write {args.out}: {exc}", file=stderr)
            return EXIT_ERROR
    if getattr(args, "json", False):
        print(text, file=stdout)
    else:
        print("\n".join(lines), file=stdout)
    return code


def main() -> None:
    sys.exit(run())
