"""Command line interface: gen, embed, verify, solve, render.

Exit codes: 0 when the requested artifact was produced (and validated,
where that applies), 1 for invalid or unsolved outcomes, 2 for usage or
format errors. Machine-readable results go to stdout, diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import constructions, formats, render, solver
from .graphs import (
    cartesian_product,
    complete,
    complete_bipartite,
    cycle,
    hypercube,
    kpcq,
    path,
)
from .layout import Crossing, validate

EXIT_OK = 0
EXIT_UNSOLVED = 1
EXIT_USAGE = 2


def _err(args, message: str) -> None:
    if not getattr(args, "quiet", False):
        print(message, file=sys.stderr)


def _emit(args, doc: dict, summary: dict | None = None) -> None:
    """Write the artifact to --output when given (summary goes to stdout),
    otherwise print the artifact itself as the stdout result object."""
    text = formats.dumps(doc)
    if args.output:
        Path(args.output).write_text(text)
        out = dict(summary or {})
        out["output"] = str(args.output)
        print(json.dumps(out, indent=2))
    else:
        sys.stdout.write(text)


def _report_to_dict(rep) -> dict:
    items = []
    for v in rep.violations:
        if isinstance(v, Crossing):
            items.append(
                {"kind": "crossing", "page": v.page, "edges": [list(v.edge_a), list(v.edge_b)]}
            )
        else:
            items.append(
                {
                    "kind": "matching",
                    "page": v.page,
                    "vertex": v.vertex,
                    "edges": [list(e) for e in v.edges],
                }
            )
    return {"valid": rep.valid, "page_count": rep.page_count, "violations": items}


def _solve_options(args) -> solver.SolveOptions:
    return solver.SolveOptions(
        max_pages=getattr(args, "max_pages", None),
        timeout_s=getattr(args, "timeout", 600.0),
        jobs=getattr(args, "jobs", 1),
        symmetry=not getattr(args, "no_symmetry", False),
    )


# gen


def _cmd_gen(args) -> int:
    family = args.family
    need = lambda flag, val: val if val is not None else _missing(flag, family)
    if family == "complete":
        g = complete(need("--n", args.n))
    elif family == "cycle":
        g = cycle(need("--n", args.n))
    elif family == "path":
        g = path(need("--n", args.n))
    elif family == "complete-bipartite":
        g = complete_bipartite(need("--a", args.a), need("--b", args.b))
    elif family == "hypercube":
        g = hypercube(need("--d", args.d))
    elif family == "kpcq":
        g = kpcq(need("--p", args.p), need("--q", args.q))
    elif family == "product-of-files":
        left = formats.load_graph(need("--left", args.left))
        right = formats.load_graph(need("--right", args.right))
        g = cartesian_product(left, right)
    else:  # argparse choices guard this
        raise ValueError(f"unknown family {family}")
    _emit(args, formats.graph_to_dict(g), {"name": g.name, "n": g.n, "edges": g.m})
    return EXIT_OK


def _missing(flag: str, family: str):
    raise ValueError(f"{flag} is required for family {family}")


# embed


def _construct_by_scheme(scheme: str, g, opts) -> constructions.ConstructionOutcome:
    fam = g.family or (None,)
    kind = fam[0]
    if scheme == constructions.SCHEME_COMPLETE:
        if kind != "complete":
            raise ValueError("complete-congruence needs a complete-family graph")
        return constructions.ConstructionOutcome(
            constructions.complete_embedding(fam[1]), scheme, False
        )
    if scheme == constructions.SCHEME_EVEN_CYCLE:
        if kind != "cycle" or fam[1] % 2:
            raise ValueError("even-cycle needs an even cycle-family graph")
        return constructions.ConstructionOutcome(
            constructions.even_cycle_embedding(fam[1] // 2).embedding, scheme, False
        )
    if scheme == constructions.SCHEME_PATH:
        if kind != "path" or fam[1] < 2:
            raise ValueError("path scheme needs a path-family graph with n >= 2")
        return constructions.ConstructionOutcome(
            constructions.path_witness(fam[1]).embedding, scheme, False
        )
    if scheme == constructions.SCHEME_KPCQ_ODD:
        if kind != "kpcq" or fam[2] % 2 == 0:
            raise ValueError("kpcq-odd-direct needs a kpcq-family graph with odd q")
        return constructions.kpcq_embedding(fam[1], fam[2])
    if scheme == constructions.SCHEME_KPCQ_EVEN:
        if kind != "kpcq" or fam[2] % 2:
            raise ValueError("kpcq-even-product needs a kpcq-family graph with even q")
        return constructions.kpcq_embedding(fam[1], fam[2])
    if scheme == constructions.SCHEME_PRODUCT:
        if kind != "product":
            raise ValueError("product scheme needs a product-of-files graph")
        left, right = fam[1], fam[2]
        wit = constructions.witness_for(right, opts)
        if wit is None:
            raise constructions.ConstructionUnresolved(
                "right factor admits no dispersable witness"
            )
        g_out = constructions.auto_embedding(left, opts)
        emb = constructions.product_embedding(g_out.embedding, wit)
        return constructions.ConstructionOutcome(emb, scheme, g_out.repaired)
    raise ValueError(f"unknown construction scheme {scheme!r}")


def _cmd_embed(args) -> int:
    g = formats.load_graph(args.graph)
    opts = _solve_options(args)
    method = args.method
    try:
        if method == "auto":
            outcome = constructions.auto_embedding(g, opts)
        elif method == "solver":
            res = solver.exact_mbt(g, opts)
            if res.value is None or res.witness is None:
                _err(args, "solver did not produce an embedding within its budget")
                return EXIT_UNSOLVED
            outcome = constructions.ConstructionOutcome(
                res.witness, constructions.SCHEME_SOLVER, False
            )
        elif method.startswith("construction:"):
            outcome = _construct_by_scheme(method.split(":", 1)[1], g, opts)
        else:
            raise ValueError(f"unknown method {method!r}")
    except constructions.ConstructionUnresolved as exc:
        if args.fallback_solver:
            res = solver.exact_mbt(g, opts)
            if res.value is None or res.witness is None:
                _err(args, f"unresolved by construction and solver fell short: {exc}")
                return EXIT_UNSOLVED
            outcome = constructions.ConstructionOutcome(
                res.witness, constructions.SCHEME_SOLVER, False
            )
        else:
            _err(args, f"unresolved by construction: {exc}")
            print(json.dumps({"unresolved": True, "reason": str(exc)}, indent=2))
            return EXIT_UNSOLVED

    emb = outcome.embedding
    if emb.graph != g:
        _err(args, "embedding targets a structurally different graph")
        return EXIT_UNSOLVED
    rep = validate(emb)
    doc = formats.embedding_to_dict(emb, outcome.scheme, outcome.repaired)
    summary = {
        "valid": rep.valid,
        "page_count": emb.page_count,
        "scheme": outcome.scheme,
        "repaired": outcome.repaired,
    }
    _emit(args, doc, summary)
    if not rep.valid:
        _err(args, f"embedding failed validation with {len(rep.violations)} violations")
        return EXIT_UNSOLVED
    return EXIT_OK


# verify


def _cmd_verify(args) -> int:
    g = formats.load_graph(args.graph)
    doc = formats.load_embedding(args.embedding)
    if doc.embedding.graph != g:
        _err(args, "embedding references a different graph (canonical forms differ)")
        return EXIT_USAGE
    rep = validate(doc.embedding)
    print(json.dumps(_report_to_dict(rep), indent=2))
    return EXIT_OK if rep.valid else EXIT_UNSOLVED


# solve


def _cmd_solve(args) -> int:
    g = formats.load_graph(args.graph)
    res = solver.exact_mbt(g, _solve_options(args))
    bound = res.bound
    out = {
        "value": res.value,
        "exhaustive": res.exhaustive,
        "lower_bound": {
            "value": bound.value,
            "reason": bound.reason,
            "max_degree": bound.max_degree,
            "regular_degree": bound.regular_degree,
            "odd_cycle": list(bound.odd_cycle) if bound.odd_cycle else None,
            "chromatic_index": bound.chromatic_index,
        },
        "stats": {
            "orders_tested": res.stats.orders_tested,
            "nodes": res.stats.nodes,
            "elapsed_s": round(res.stats.elapsed_s, 3),
            "per_level": {str(k): v for k, v in res.stats.per_level.items()},
            "timed_out": res.stats.timed_out,
        },
        "witness": formats.embedding_to_dict(res.witness) if res.witness else None,
    }
    print(json.dumps(out, indent=2))
    if args.output and res.witness is not None:
        formats.save_embedding(res.witness, args.output, scheme=constructions.SCHEME_SOLVER)
    return EXIT_OK if res.value is not None and res.exhaustive else EXIT_UNSOLVED


# render


def _cmd_render(args) -> int:
    doc = formats.load_embedding(args.embedding)
    rep = validate(doc.embedding)
    if not rep.valid and not args.force:
        _err(args, f"embedding is invalid ({len(rep.violations)} violations); use --force to render")
        return EXIT_UNSOLVED
    svg = render.render_svg(doc.embedding, rep, split_pages=args.split_pages)
    if args.output:
        Path(args.output).write_text(svg)
        print(json.dumps({"output": str(args.output), "page_count": doc.embedding.page_count}))
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def _add_io_flags(sp) -> None:
    sp.add_argument("-o", "--output", default=None, help="write the artifact to this path")
    sp.add_argument("--quiet", action="store_true", help="suppress diagnostics on stderr")


def _add_solver_flags(sp) -> None:
    sp.add_argument("--max-pages", type=int, default=None)
    sp.add_argument("--timeout", type=float, default=600.0, help="global budget in seconds")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--no-symmetry", action="store_true", help="enumerate all spine orders")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matchbook",
        description="Construct, verify, solve and render matching book embeddings.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    gen = sub.add_parser("gen", help="generate a graph file")
    gen.add_argument(
        "--family",
        required=True,
        choices=[
            "complete",
            "cycle",
            "path",
            "complete-bipartite",
            "hypercube",
            "kpcq",
            "product-of-files",
        ],
    )
    gen.add_argument("--n", type=int)
    gen.add_argument("--a", type=int)
    gen.add_argument("--b", type=int)
    gen.add_argument("--d", type=int)
    gen.add_argument("--p", type=int)
    gen.add_argument("--q", type=int)
    gen.add_argument("--left", help="left factor graph file (product-of-files)")
    gen.add_argument("--right", help="right factor graph file (product-of-files)")
    _add_io_flags(gen)
    gen.set_defaults(handler=_cmd_gen)

    embed = sub.add_parser("embed", help="embed a graph file")
    embed.add_argument("graph")
    embed.add_argument(
        "--method",
        default="auto",
        help="auto, solver, or construction:<scheme>",
    )
    embed.add_argument(
        "--fallback-solver",
        action="store_true",
        help="run the exact solver when no construction resolves",
    )
    _add_solver_flags(embed)
    _add_io_flags(embed)
    embed.set_defaults(handler=_cmd_embed)

    verify = sub.add_parser("verify", help="validate an embedding against a graph")
    verify.add_argument("graph")
    verify.add_argument("embedding")
    _add_io_flags(verify)
    verify.set_defaults(handler=_cmd_verify)

    solve = sub.add_parser("solve", help="exact matching book thickness")
    solve.add_argument("graph")
    _add_solver_flags(solve)
    _add_io_flags(solve)
    solve.set_defaults(handler=_cmd_solve)

    rend = sub.add_parser("render", help="render an embedding to SVG")
    rend.add_argument("embedding")
    rend.add_argument("--force", action="store_true", help="render even if invalid")
    rend.add_argument("--split-pages", action="store_true", help="one band per page")
    _add_io_flags(rend)
    rend.set_defaults(handler=_cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.handler(args)
    except formats.FormatError as exc:
        _err(args, f"format error: {exc}")
        return EXIT_USAGE
    except constructions.ConstructionUnresolved as exc:
        _err(args, f"unresolved: {exc}")
        return EXIT_UNSOLVED
    except constructions.ConstructionError as exc:
        _err(args, f"construction error: {exc}")
        return EXIT_UNSOLVED
    except ValueError as exc:
        _err(args, f"error: {exc}")
        return EXIT_USAGE
    except OSError as exc:
        _err(args, f"io error: {exc}")
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
