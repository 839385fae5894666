"""Command-line entry point: ``bottsamelson <subcommand> --type A2 --word 1,2,1 ...``.

Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import cohomology, conjo, effcone, momentgraph
from .rootsys import CARTAN_DIR_ENV, RootSystemError, Subword, Word, as_subword, make_word

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    cartan: str
    word: Word
    fmt: str
    out: Optional[Path]
    plot: Optional[Path]


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bottsamelson",
        description="Moment graphs, cohomology and quantum cohomology of Bott-Samelson varieties.",
        epilog=f"Cartan names are presets (A2, B3, G2, ...) or files; ${CARTAN_DIR_ENV} adds a lookup directory.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("json", "text"), plot=False):
        sp.add_argument("--type", default="A2", help="Cartan preset or matrix file (default A2)")
        sp.add_argument("--word", default="1,2,1", help="comma-separated simple-root indices")
        sp.add_argument("--format", choices=formats, default="text")
        sp.add_argument("--out", type=Path, help="write the report here instead of stdout")
        if plot:
            sp.add_argument("--plot", type=Path, help="also render a figure to this file (PNG, PDF or SVG)")
        return sp

    common(sub.add_parser("moment-graph", help="moment graph with edge classes"), ("json", "text", "dot"), plot=True)
    common(sub.add_parser("cohomology", help="c_1, Fano data and divisor products"))
    sp = common(sub.add_parser("eff-cone", help="generators of the effective curve cone"))
    sp.add_argument("--class", dest="beta", help="test a class a,b,c for effectivity")
    sp = common(sub.add_parser("curve-nbhd", help="fixed points of a curve neighborhood"))
    sp.add_argument("--class", dest="beta", required=True, help="curve class a,b,c in the [Z_(i)] basis")
    sp.add_argument("--from", dest="sources", required=True, help="comma-separated subwords, e.g. 100")
    sp = common(sub.add_parser("qh", help="solve for the quantum cohomology ring"))
    sp.add_argument("--solve", action="store_true", help="include the solved invariant table")
    sp.add_argument("--y3", type=int, help="value of the free invariant (default 1)")
    sp.add_argument("--report", choices=("json", "text"), help="alias for --format")
    sp = common(sub.add_parser("conjecture-o", help="certified eigenvalue check for c_1 hat"), plot=True)
    sp.add_argument("--tolerance", type=float, default=conjo.DEFAULT_TOLERANCE)
    return p


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _config(ns: argparse.Namespace) -> RunConfig:
    fmt = getattr(ns, "report", None) or ns.format
    try:
        word = make_word(ns.type, _ints(ns.word))
    except RootSystemError as exc:
        raise UsageError(str(exc)) from None
    return RunConfig(ns.command, ns.type, word, fmt, ns.out, getattr(ns, "plot", None))


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def _moment_graph(cfg: RunConfig, ns) -> str:
    graph = momentgraph.build(cfg.word)
    if cfg.plot:
        from .report import draw_moment_graph

        draw_moment_graph(graph, cfg.plot)
    return momentgraph.export(graph, cfg.fmt)


def _cohomology(cfg: RunConfig, ns) -> str:
    w = cfg.word
    n = len(w)
    basis = sorted(w.subwords(), key=lambda e: (e.length, tuple(-b for b in e.bits)))
    fano = cohomology.is_fano(w)
    products = {}
    for j in range(1, n + 1):
        for eps in basis:
            prod = cohomology.multiply(w, cohomology.generator(w, j), {eps: 1})
            products[f"s{Subword.unit(n, j)}*s{eps}"] = prod
    data = {
        "word": list(w.letters),
        "basis": [str(e) for e in basis],
        "c1": list(cohomology.first_chern_coefficients(w)),
        "ample_decomposition": list(cohomology.ample_decomposition(w)),
        "fano": fano,
        "fano_index": cohomology.fano_index(w) if fano else None,
        "divisor_products": {k: {str(e): c for e, c in v.items()} for k, v in products.items()},
    }
    if cfg.fmt == "json":
        return _dump(data)
    lines = [
        f"word {w}",
        f"c1 = {cohomology.format_class(cohomology.first_chern(w))}",
        f"ample decomposition {tuple(data['ample_decomposition'])}  fano {fano}"
        + (f"  index {data['fano_index']}" if fano else ""),
    ]
    lines += [f"{k} = {cohomology.format_class(v)}" for k, v in products.items()]
    return "\n".join(lines) + "\n"


def _eff_cone(cfg: RunConfig, ns) -> str:
    w = cfg.word
    c = effcone.cone(w)
    gens = [
        {"class": list(g), "degree": cohomology.deg_q(w, g), "indecomposable": effcone.is_indecomposable(c, g)}
        for g in c.generators
    ]
    data = {"word": list(w.letters), "generators": gens}
    if ns.beta:
        beta = _ints(ns.beta)
        if len(beta) != len(w):
            raise UsageError(f"class {beta} must have {len(w)} coordinates")
        ok, witness = effcone.is_effective(c, beta)
        data["query"] = {"class": list(beta), "effective": ok, "witness": list(witness) if ok else None}
    if cfg.fmt == "json":
        return _dump(data)
    lines = [f"effective cone of Z({w}): {len(gens)} generators"]
    for g in gens:
        lines.append(f"  {tuple(g['class'])}  deg {g['degree']}  indecomposable {g['indecomposable']}")
    if "query" in data:
        q = data["query"]
        lines.append(f"class {tuple(q['class'])} effective {q['effective']}"
                     + (f" = {tuple(q['witness'])} . generators" if q["effective"] else ""))
    return "\n".join(lines) + "\n"


def _curve_nbhd(cfg: RunConfig, ns) -> str:
    w = cfg.word
    beta = _ints(ns.beta)
    if len(beta) != len(w):
        raise UsageError(f"class {beta} must have {len(w)} coordinates")
    try:
        sources = [as_subword(s) for s in ns.sources.split(",") if s]
    except RootSystemError as exc:
        raise UsageError(str(exc)) from None
    if any(len(s) != len(w) for s in sources):
        raise UsageError(f"subwords must have length {len(w)}")
    graph = momentgraph.build(w)
    result = effcone.curve_neighborhood(graph, sources, beta)
    data = {"class": list(beta), "from": [str(s) for s in sources], **result.to_dict()}
    if cfg.fmt == "json":
        return _dump(data)
    pts = " ".join(data["fixed_points"]) or "none"
    match = data["matched_subvariety"]
    return f"fixed points {pts}\nsubvariety {'Z_' + match if match else 'none'}\n"


def _run_quantum(w: Word, y3: Optional[int] = None):
    from . import quantum
    from .quantum import data as qdata

    values = None
    if y3 is not None:
        values = {qdata.FREE_PARAMETER: y3}
    return quantum.run(w, values)


def _qh(cfg: RunConfig, ns) -> tuple[str, int]:
    from . import quantum
    from .quantum import data as qdata

    pipe = _run_quantum(cfg.word, ns.y3)
    setup, sol = pipe.setup, pipe.solution
    certified = setup.table.certified
    y3 = qdata.FREE_PARAMETER_VALUE if ns.y3 is None else ns.y3
    mismatches = []
    code = EXIT_OK
    if certified:
        mismatches = quantum.matrix_mismatches(pipe.final, quantum.reference_matrices(pipe.final_ring, y3))
        if mismatches and y3 == qdata.FREE_PARAMETER_VALUE:
            code = EXIT_DOMAIN
    check = quantum.verify_ring(pipe.ring, against_reference=certified and y3 == 1, raise_on_failure=False)
    if check.failures:
        code = EXIT_DOMAIN
    qr = pipe.ring
    pres = {f"s{Subword.unit(len(cfg.word), j)}^2": quantum.format_qpoly(p) for j, p in qr.presentation().items()}
    gia = {f"s{e}": str(g.as_expr()).replace("**", "^") for e, g in qr.giambelli.items() if e.length >= 2}
    basis = [str(e) for e in setup.basis]
    mats = {
        f"s{Subword.unit(len(cfg.word), j + 1)}": [[str(x.as_expr()) for x in row] for row in m]
        for j, m in enumerate(pipe.final)
    }
    data = {
        "word": list(cfg.word.letters),
        "certified": certified,
        "unknowns": len(setup.table.symbols()),
        "commutator_entries": pipe.entries,
        "equations": len(pipe.equations),
        "free": sol.free,
        "parameter_values": {qdata.FREE_PARAMETER: y3} if certified else {},
        "branches": [b.__dict__ for b in sol.branches],
        "basis": basis,
        "matrices": mats,
        "matches_reference": certified and not mismatches,
        "presentation": pres,
        "giambelli": gia,
        "checks": {
            "commutative": check.commutative,
            "associative": check.associative,
            "presentation": check.presentation_matches,
            "giambelli": check.giambelli_matches,
            "failures": check.failures,
        },
    }
    if ns.solve:
        solved = {}
        for key, entry in sorted(setup.table.entries.items(), key=lambda kv: kv[0]):
            if entry.known:
                solved[key.label()] = {"value": entry.value, "provenance": entry.provenance}
            else:
                solved[key.label()] = {
                    "symbol": entry.symbol,
                    "value": str(sol.value(entry.symbol).as_expr()),
                    "provenance": "solved" if entry.symbol in sol.assignment else "free parameter",
                }
        data["invariants"] = solved
    if cfg.fmt == "json":
        return _dump(data), code
    lines = [
        f"quantum cohomology of Z({cfg.word})",
        f"unknowns {data['unknowns']}  commutator entries {data['commutator_entries']}  "
        f"equations {data['equations']}  free {','.join(sol.free) or 'none'}",
        f"branching {'none' if not sol.branches else len(sol.branches)}",
        "relations:",
    ]
    lines += [f"  {k} = {v}" for k, v in pres.items()]
    lines.append("giambelli:")
    lines += [f"  {k} = {v}" for k, v in gia.items()]
    lines.append(f"matrices match reference: {data['matches_reference']}")
    lines.append(f"commutative {check.commutative}  associative {check.associative} "
                 f"({check.pairs} pairs, {check.triples} triples)")
    if ns.solve:
        lines.append("invariants:")
        for k, v in data["invariants"].items():
            sym = f"{v['symbol']} = " if "symbol" in v else ""
            lines.append(f"  {k}  {sym}{v['value']}  [{v['provenance']}]")
    for f in check.failures:
        lines.append(f"FAILED {f}")
    return "\n".join(lines) + "\n", code


def _conjecture_o(cfg: RunConfig, ns) -> tuple[str, int]:
    from .quantum import data as qdata

    w = cfg.word
    r = conjo.fano_index(w)
    pipe = _run_quantum(w)
    mat = conjo.c1_hat(w, pipe.final)
    report = conjo.check_conjecture_o(mat, r, ns.tolerance)
    data = {"word": list(w.letters), "c1_hat": mat, "report": report.to_dict()}
    ref_report = None
    if pipe.setup.table.certified:
        diff = conjo.compare_c1_hat(mat, qdata.REFERENCE_C1_HAT)
        ref_report = conjo.check_conjecture_o(qdata.REFERENCE_C1_HAT, r, ns.tolerance)
        data["reference"] = {
            "matches": not diff,
            "differences": [{"row": a, "col": b, "computed": c, "reference": d} for a, b, c, d in diff],
            "report": ref_report.to_dict(),
        }
    if cfg.plot:
        from .report import draw_spectrum

        draw_spectrum(report, cfg.plot, reference=[e.value for e in ref_report.eigenvalues] if ref_report else None)
    code = EXIT_OK if report.verdict else EXIT_DOMAIN
    if cfg.fmt == "json":
        return _dump(data), code
    lines = [f"c1 hat for Z({w})  (Fano index {r})"]
    lines += ["  " + " ".join(f"{x:3d}" for x in row) for row in mat]
    lines.append("characteristic polynomial " + " ".join(map(str, report.char_poly)))
    lines.append(f"square-free {report.square_free}")
    for e in report.eigenvalues:
        lines.append(f"  {e.text}  radius {e.radius:.1e}  mult {e.multiplicity}")
    lines += [f"{k} {v}" for k, v in report.clauses.items()]
    lines.append(f"verdict {report.verdict}")
    if "reference" in data:
        ref = data["reference"]
        lines.append(f"reference matrix matches: {ref['matches']}")
        for d in ref["differences"]:
            lines.append(f"  entry ({d['row']},{d['col']}): computed {d['computed']}, reference {d['reference']}")
        lines.append(f"reference verdict {ref['report']['verdict']}  dominant {ref['report']['eigenvalues'][0]['value']}")
    return "\n".join(lines) + "\n", code


_COMMANDS = {
    "moment-graph": _moment_graph,
    "cohomology": _cohomology,
    "eff-cone": _eff_cone,
    "curve-nbhd": _curve_nbhd,
    "qh": _qh,
    "conjecture-o": _conjecture_o,
}


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = _config(ns)
        result = _COMMANDS[cfg.command](cfg, ns)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    text, code = result if isinstance(result, tuple) else (result, EXIT_OK)
    if cfg.out:
        cfg.out.write_text(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
