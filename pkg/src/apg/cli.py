"""Command-line front end.

Exit codes: 0 success or verified, 1 refuted (NAP where AP was asked, or a
failed verification), 2 usage error, 3 search budget exceeded.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import APGError, BudgetExceeded, SearchBudgetExceeded
from .graph import build_commuting_graph
from .groups import class_number, element_orders, order_profile
from .io import dumps, group_from_spec, load_json, load_partition
from .nap import embed_in_ap, embed_in_nap, nap_dihedral_product, nap_wreath_check, refute_nap_claim
from .partition import AbelianPartition, Certificate, ThetaResult, check_partition, verify_certificate
from .report import format_csv, format_text, run_report
from .theta import MODES, theta

OK, REFUTED, USAGE, BUDGET = 0, 1, 2, 3
# explicit-partition search on embeddings is skipped above this order
REFUTE_LIMIT = 5000


class UsageError(Exception):
    pass


def _add_group_args(p):
    p.add_argument("group", nargs="?", help="family name such as dihedral:20, or a JSON group file")
    p.add_argument("--family", help="named family, e.g. psl2:7 or 'dihedral:6 x dihedral:6'")
    p.add_argument("--perm", type=Path, help="JSON file with degree and generators")
    p.add_argument("--spec", type=Path, help="JSON group spec file")


def _group_spec(args) -> dict:
    given = [v for v in (getattr(args, "group", None), args.family, args.perm, args.spec) if v is not None]
    if len(given) != 1:
        raise UsageError("give exactly one group (positional, --family, --perm or --spec)")
    if args.family is not None:
        return {"family": args.family}
    if args.perm is not None:
        return load_json(args.perm)
    if args.spec is not None:
        return load_json(args.spec)
    text = args.group
    if Path(text).is_file():
        return load_json(text)
    return {"family": text}


def _resolve(args):
    spec = _group_spec(args)
    G, fid = group_from_spec(spec)
    return spec, G, fid


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj))


def cmd_group(args) -> int:
    spec, G, fid = _resolve(args)
    spec_orders = element_orders(G)
    out = {"tag": G.tag, "order": G.order, "center_order": len(G.center_members),
           "class_number": class_number(G), "abelian": G.is_abelian(),
           "spectrum": sorted(spec_orders.omega), "maximal_orders": sorted(spec_orders.mu),
           "order_profile": order_profile(G)}
    if fid is not None:
        out["family"] = str(fid)
    if args.dimacs is not None:
        args.dimacs.write_text(build_commuting_graph(G).to_dimacs())
    _emit(out)
    return OK


def cmd_theta(args) -> int:
    spec, G, fid = _resolve(args)
    r = theta(G, mode=args.mode, family=fid, budget=args.budget)
    out = r.as_dict()
    out["order"] = G.order
    _emit(out)
    if args.out_partition is not None and r.partition is not None:
        doc = {"group": spec, "blocks": r.partition.to_lists(), "value": r.value, "status": r.status,
               "certificate": out["certificate"]}
        args.out_partition.write_text(dumps(doc))
    if r.status == "unknown":
        return BUDGET
    return REFUTED if r.is_nap else OK


def cmd_verify(args) -> int:
    G, _, blocks, _ = load_partition(args.partition)
    chk = check_partition(G, blocks)
    out = {"valid": chk.ok, "blocks": len(blocks), "order": G.order}
    if not chk.ok:
        out["reason"] = chk.reason
        out["witness"] = list(chk.witness)
    code = OK if chk.ok else REFUTED
    doc = load_json(args.partition)
    if chk.ok and "certificate" in doc:
        c = doc["certificate"]
        r = ThetaResult(doc.get("value", len(blocks)), AbelianPartition(blocks),
                        Certificate(c["kind"], list(c.get("anchors", [])), c.get("detail", {})),
                        status=doc.get("status", "certified"))
        out["certificate_verified"] = verify_certificate(G, r)
        if not out["certificate_verified"]:
            code = REFUTED
    _emit(out)
    return code


def cmd_nap(args) -> int:
    if args.dihedral_product is not None:
        cert = nap_dihedral_product(args.dihedral_product)
        if cert is None:
            raise UsageError("dihedral product needs odd k >= 3 with a failing inequality")
        _emit(cert.as_dict())
        return OK if cert.holds and cert.nap_established is not False else REFUTED
    if args.wreath is not None:
        k, p = args.wreath
        cert = nap_wreath_check(k, p)
        if cert is None:
            raise UsageError("wreath check needs odd k >= 3, prime p >= 3 and a failing inequality")
        _emit(cert.as_dict())
        return OK if cert.holds and cert.nap_established is not False else REFUTED
    spec, G, fid = _resolve(args)
    r = theta(G, family=fid, budget=args.budget)
    out = {"order": G.order, "value": r.value, "status": r.status, "certificate": r.certificate.kind}
    if r.status == "certified":
        out["nap"] = r.is_nap
        _emit(out)
        return OK if r.is_nap else REFUTED
    ref = refute_nap_claim(G)
    out["nap"] = None if not ref["partition_found"] else False
    if ref["partition_found"]:
        out["explicit_partition_blocks"] = ref["blocks"]
    _emit(out)
    return REFUTED if ref["partition_found"] else BUDGET


def cmd_embed(args) -> int:
    spec, H, _ = _resolve(args)
    if args.ap:
        emb = embed_in_ap(H)
        chk = check_partition(emb.group, emb.partition.blocks)
        _emit({"order": emb.group.order, "injection": emb.injection, "partition_blocks": len(emb.partition),
               "partition_valid": chk.ok})
        return OK if chk.ok else REFUTED
    emb = embed_in_nap(H)
    out = {"order": emb.group.order, "injection": emb.injection, "certificate": emb.certificate.as_dict()}
    refuted = False
    if emb.group.order <= REFUTE_LIMIT:
        ref = refute_nap_claim(emb.group)
        refuted = ref["partition_found"] and ref["verified"]
        out["explicit_partition_blocks"] = ref.get("blocks")
    out["nap"] = bool(emb.certificate.nap_established) and not refuted
    _emit(out)
    return OK if out["nap"] else REFUTED


def cmd_report(args) -> int:
    rows = run_report(args.only)
    sys.stdout.write(format_text(rows))
    if args.csv is not None:
        args.csv.write_text(format_csv(rows))
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="accepted for compatibility; search is single-threaded")
    ap = argparse.ArgumentParser(prog="apg", description="Abelian partitions of finite groups.", parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", parents=[common], help="build a group and print basic invariants")
    _add_group_args(p)
    p.add_argument("--dimacs", type=Path, help="write the commuting graph as a DIMACS edge list")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("theta", parents=[common], help="minimal abelian partition size")
    _add_group_args(p)
    p.add_argument("--mode", choices=MODES, default="auto")
    p.add_argument("--budget", type=int, default=5_000_000, help="search node budget")
    p.add_argument("--out-partition", type=Path, help="write the partition and certificate as JSON")
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("verify", parents=[common], help="check a partition file")
    p.add_argument("partition", type=Path)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("nap", parents=[common], help="decide or certify that a group has no abelian partition")
    _add_group_args(p)
    p.add_argument("--dihedral-product", type=int, nargs="+", metavar="K")
    p.add_argument("--wreath", type=int, nargs=2, metavar=("K", "P"))
    p.add_argument("--budget", type=int, default=5_000_000)
    p.set_defaults(func=cmd_nap)

    p = sub.add_parser("embed", parents=[common], help="embed a group in a NAP or an AP group")
    _add_group_args(p)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--nap", action="store_true")
    which.add_argument("--ap", action="store_true")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("report", parents=[common], help="reproduce the table of computed values")
    p.add_argument("--only", choices=("all", "ap", "nap", "property"), default="all")
    p.add_argument("--csv", type=Path)
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SearchBudgetExceeded, BudgetExceeded) as exc:
        print(f"apg: budget exceeded: {exc}", file=sys.stderr)
        return BUDGET
    except (UsageError, APGError, OSError, ValueError, KeyError) as exc:
        print(f"apg: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
