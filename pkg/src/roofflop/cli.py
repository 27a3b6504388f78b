"""Command-line front door.

Exit codes: 0 success / PASS, 1 FAIL (a rejected step or a nonvanishing
lemma item), 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bundle_expr import ExprParseError, parse_bundle_expr
from .mutation import MutationError, relative_stamp, run_script
from .sheafcalc import (
    AmbientContext,
    D4_BLOWUP,
    D4_HYPERPLANE,
    G2_BLOWUP,
    G2_HYPERPLANE,
    PLAIN,
    SheafObject,
    graded_cohomology,
    rhom,
    verify_lemma_van,
    verify_lemma_van2,
)
from .spaces import CatalogError, load_standard_catalog


def _ambient_for(space: str, mode: str) -> AmbientContext:
    if mode == "plain":
        return PLAIN
    table = {
        ("E_D4", "blowup"): D4_BLOWUP,
        ("E_D4", "hyperplane"): D4_HYPERPLANE,
        ("R", "blowup"): G2_BLOWUP,
        ("R", "hyperplane"): G2_HYPERPLANE,
    }
    try:
        return table[(space, mode)]
    except KeyError:
        raise CatalogError(f"no {mode} context registered for {space}") from None


def _parse_expr_or_die(text: str):
    try:
        return parse_bundle_expr(text)
    except ExprParseError as err:
        print(f"error: {err.message} at offset {err.offset}", file=sys.stderr)
        print(f"  {text}", file=sys.stderr)
        print("  " + " " * err.offset + "^", file=sys.stderr)
        raise SystemExit(2)


def _print_graded(h, fmt):
    if fmt == "json":
        print(json.dumps(h.to_json(), sort_keys=True))
    elif h.is_zero:
        print("0 in all degrees")
    elif h.is_exact:
        for d, n in sorted(h.dims.items()):
            print(f"h^{d} = {n}")
    else:
        print(h.pretty())


def cmd_cohomology(args) -> int:
    catalog = load_standard_catalog()
    entry = catalog.space(args.space)
    expr = _parse_expr_or_die(args.expr)
    obj = SheafObject(entry.name, expr)
    _print_graded(graded_cohomology(obj, catalog), args.format)
    return 0


def cmd_rhom(args) -> int:
    catalog = load_standard_catalog()
    entry = catalog.space(args.space)
    a = SheafObject(entry.name, _parse_expr_or_die(args.a))
    b = SheafObject(entry.name, _parse_expr_or_die(args.b))
    ctx = _ambient_for(entry.name, args.ambient)
    _print_graded(rhom(a, b, ctx, catalog), args.format)
    return 0


def cmd_lemmas(args) -> int:
    reports = []
    if args.which in ("van", "all"):
        reports.append(verify_lemma_van())
    if args.which in ("van2", "all"):
        reports.append(verify_lemma_van2())
    ok = all(r["ok"] for r in reports)
    if args.format == "json":
        print(json.dumps(reports, sort_keys=True))
    else:
        for r in reports:
            # one line per lemma item; ranged items collapse to one line
            grouped: dict = {}
            for item in r["items"]:
                tag = item["item"].split()[0]
                grouped.setdefault(tag, []).append(item)
            for tag, items in grouped.items():
                status = "PASS" if all(i["ok"] for i in items) else "FAIL"
                if len(items) == 1:
                    body = f"{items[0]['query']} = {items[0]['computed']}"
                else:
                    values = {i["computed"] for i in items}
                    body = (f"{items[0]['query']} ... {items[-1]['query']} = "
                            f"{' / '.join(sorted(values))}")
                print(f"{r['lemma']} {tag}: {body} [{status}]")
    return 0 if ok else 1


def cmd_verify(args) -> int:
    cert = run_script(args.script)
    cert = relative_stamp(cert)
    out = args.output or (args.script.rsplit(".", 1)[0] + ".cert.json")
    with open(out, "wb") as fh:
        fh.write(cert.to_json_bytes())
    if args.format == "json":
        print(json.dumps({"verdict": cert.verdict, "certificate": out}, sort_keys=True))
    else:
        print(f"{cert.script_name}: {cert.verdict} (certificate written to {out})")
    return 0 if cert.verdict == "PASS" else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    uvicorn.run(create_app(), host="127.0.0.1", port=args.port, log_level="warning")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="roofflop",
        description="cohomology queries, Hom queries, lemma checks and "
                    "certified mutation-script verification",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cohomology", help="H^* of a bundle expression on a space")
    p.add_argument("--space", required=True)
    p.add_argument("expr")
    p.set_defaults(fn=cmd_cohomology)

    p = sub.add_parser("rhom", help="graded Hom between two expressions")
    p.add_argument("--space", required=True)
    p.add_argument("--ambient", choices=("plain", "blowup", "hyperplane"), default="plain")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(fn=cmd_rhom)

    p = sub.add_parser("lemmas", help="run the vanishing-lemma suites")
    p.add_argument("--which", choices=("van", "van2", "all"), default="all")
    p.set_defaults(fn=cmd_lemmas)

    p = sub.add_parser("verify", help="run a mutation script and emit a certificate")
    p.add_argument("script")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("serve", help="serve the workbench API on localhost")
    p.add_argument("--port", type=int, default=8787)
    p.set_defaults(fn=cmd_serve)

    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        # argparse exits 2 on usage errors already; normalise other codes
        return 2 if err.code not in (0,) else 0
    try:
        return args.fn(args)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else 2
    except MutationError as err:
        print(f"FAIL: {err}", file=sys.stderr)
        if err.fact is not None:
            print(f"blocking fact: {json.dumps(err.fact, sort_keys=True)}", file=sys.stderr)
        return 1
    except (CatalogError, ExprParseError, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def console_main():
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
