"""Command line interface: ``cma <command> ...`` with JSON on stdout.

Exit codes: 0 success (or Equivalent), 1 NotEquivalent / failing oracle
suites, 2 error with ``{"error": ..., "message": ...}`` on stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .centralizer import decompose
from .errors import CMAError, InvalidCertificate
from .fields import field_for_characteristic, field_from_json
from .homlab import DEFAULT_RESOLUTION_CAP, GeneratorModule, NakayamaData, block_hom_reports, hom_dim_report
from .matrix import ElementaryDivisorMultiset, MatrixF, elementary_divisors
from .oracles import SUITES, run_suites
from .perm import (
    PermClassData,
    Permutation,
    cycle_type,
    exceptional_divisor,
    normalize_certificate,
    perm_elementary_divisors,
    permutation_matrix,
    regular_singular_parts,
)
from .sequiv import j_transform, maximal_reducible, power_index_set, s_equivalent

EXIT_OK, EXIT_NOT_EQUIVALENT, EXIT_ERROR = 0, 1, 2


class InputError(CMAError, ValueError):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc


def load_divisors(obj: dict, seed: int = 0) -> ElementaryDivisorMultiset:
    """Divisors from either a matrix document or an elementary-divisor document."""
    if not isinstance(obj, dict) or "field" not in obj:
        raise InputError('expected {"field": ..., "matrix": ...} or {"field": ..., "elementary_divisors": ...}')
    if "matrix" in obj:
        return elementary_divisors(MatrixF.from_json(obj), seed=seed)
    if "elementary_divisors" in obj:
        return ElementaryDivisorMultiset.from_json(field_from_json(obj["field"]), obj["elementary_divisors"])
    raise InputError("document has neither 'matrix' nor 'elementary_divisors'")


def divisors_json(E: ElementaryDivisorMultiset) -> dict:
    return {"field": E.field.to_json(), "elementary_divisors": E.to_json()}


def divisor_summary(E: ElementaryDivisorMultiset) -> dict:
    """E-set, maximal reducible divisors and their power-index sets."""
    return {
        "E": [d.label() for d in E.distinct()],
        "R": [
            {"divisor": f.label(), "P": sorted(power_index_set(E, f)), "J": sorted(j_transform(power_index_set(E, f)))}
            for f in maximal_reducible(E)
        ],
    }


def _parse_ints(text: str) -> list[int]:
    cleaned = text.replace("{", "").replace("}", "").replace(":", ",").replace(" ", ",")
    try:
        return [int(x) for x in cleaned.split(",") if x]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_eldiv(args) -> int:
    E = load_divisors(_read_json(args.input), args.seed)
    if args.format == "table":
        print(f"field {E.field!r}")
        for irr, es in E.groups:
            print(f"  {irr.display(compact=True):<16} exps {', '.join(map(str, es))}")
        return EXIT_OK
    _emit({**divisors_json(E), **divisor_summary(E)})
    return EXIT_OK


def _sequiv_task(task: tuple) -> dict:
    a, b, strict, seed = task
    try:
        Ea, Eb = load_divisors(a, seed), load_divisors(b, seed)
        return s_equivalent(Ea, Eb, strict=strict).to_json()
    except CMAError as exc:
        return exc.to_json()


def _resolve_pair_item(item, base: Path):
    if isinstance(item, str):
        return json.loads((base / item).read_text())
    return item


def cmd_sequiv(args) -> int:
    if args.pairs:
        data = _read_json(args.pairs)
        base = Path(args.pairs).parent
        if not isinstance(data, list):
            raise InputError("--pairs expects a JSON list of {\"a\": ..., \"b\": ...}")
        tasks = [(_resolve_pair_item(d["a"], base), _resolve_pair_item(d["b"], base), args.strict, args.seed)
                 for d in data]
        if args.jobs == 1 or len(tasks) < 2:
            results = [_sequiv_task(t) for t in tasks]
        else:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_sequiv_task, tasks))  # map keeps input order
        _emit({"results": [{"index": i, **r} for i, r in enumerate(results)]})
        return EXIT_ERROR if any("error" in r for r in results) else EXIT_OK
    if not (args.a and args.b):
        raise InputError("sequiv needs --a and --b, or --pairs")
    Ea = load_divisors(_read_json(args.a), args.seed)
    Eb = load_divisors(_read_json(args.b), args.seed)
    verdict = s_equivalent(Ea, Eb, strict=args.strict)
    if args.format == "table":
        print(f"{'Equivalent' if verdict.equivalent else 'NotEquivalent'}")
        if verdict.equivalent:
            for pr in verdict.certificate.pairs:
                print(f"  {pr.src.label()} -> {pr.dst.label()}  [{pr.mode}]")
        else:
            print(f"  obstruction: {json.dumps(verdict.obstruction)}")
    else:
        _emit(verdict.to_json())
    return EXIT_OK if verdict.equivalent else EXIT_NOT_EQUIVALENT


def cmd_report(args) -> int:
    c = MatrixF.from_json(_read_json(args.input))
    rep = decompose(c, oracle=args.oracle, cap=args.cap)
    if args.format == "table":
        print(rep.to_table())
    else:
        _emit(rep.to_json())
    return EXIT_OK


def _perm_from_doc(doc: dict) -> Permutation:
    if "cycles" in doc:
        return Permutation.from_cycles(doc["cycles"], int(doc["n"]))
    if "cycle_type" in doc:
        parts = [int(x) for x in doc["cycle_type"]]
        n = int(doc.get("n", sum(parts)))
        if sum(parts) > n:
            raise InputError(f"cycle type {parts} does not fit on {n} points")
        return Permutation.from_cycle_type(parts + [1] * (n - sum(parts)))
    raise InputError('expected {"cycles": ..., "n": ...} or {"cycle_type": ..., "n": ...}')


def _perm_arg(text: str | None, path: str | None) -> Permutation:
    if path:
        return _perm_from_doc(_read_json(path))
    if not text:
        raise InputError("missing permutation (cycle type or --in file)")
    return Permutation.from_cycle_type(_parse_ints(text))


def _perm_data(sigma: Permutation, p: int, singular: bool, seed: int) -> tuple[dict, ElementaryDivisorMultiset]:
    F = field_for_characteristic(p)
    target = regular_singular_parts(sigma, p)[1] if singular else sigma
    E = elementary_divisors(permutation_matrix(target, F), seed=seed)
    closed = perm_elementary_divisors(cycle_type(target), p, F)
    out = PermClassData.of(cycle_type(sigma), p).to_json()
    out["matrix_of"] = "singular part" if singular else "permutation"
    out["elementary_divisors"] = E.to_json()
    out["closed_form_agrees"] = closed == E
    out.update(divisor_summary(E))
    return out, E


def cmd_perm(args) -> int:
    p = args.p
    if args.pair:
        sa = _perm_arg(args.a, args.a_in)
        sb = _perm_arg(args.b, args.b_in)
        da, Ea = _perm_data(sa, p, args.singular, args.seed)
        db, Eb = _perm_data(sb, p, args.singular, args.seed)
        verdict = s_equivalent(Ea, Eb, strict=args.strict)
        out = {"a": da, "b": db, "verdict": verdict.to_json()}
        if verdict.equivalent and p > 0:
            try:
                cert = normalize_certificate(
                    verdict.certificate, p, exceptional_divisor(Ea, p), exceptional_divisor(Eb, p), Ea, Eb
                )
                out["normalized_certificate"] = cert.to_json()
            except CMAError as exc:
                if not isinstance(exc, InvalidCertificate):
                    raise
        if not args.singular and verdict.equivalent:
            _, Sa = _perm_data(sa, p, True, args.seed)
            _, Sb = _perm_data(sb, p, True, args.seed)
            out["singular_parts_equivalent"] = s_equivalent(Sa, Sb).equivalent
        _emit(out)
        return EXIT_OK if verdict.equivalent else EXIT_NOT_EQUIVALENT
    sigma = _perm_arg(args.cycle_type, args.input)
    data, _ = _perm_data(sigma, p, args.singular, args.seed)
    _emit(data)
    return EXIT_OK


def cmd_homdim(args) -> int:
    if args.block:
        vals = _parse_ints(args.block)
        if len(vals) < 4:
            raise InputError("--block expects n,u,p,E with E a nonempty list of exponents")
        n, u, p, E = vals[0], vals[1], vals[2], vals[3:]
        rep = hom_dim_report(NakayamaData(n, u, p), GeneratorModule.of(n, E), cap=args.cap, seed=args.seed)
        blocks = [{"block": None, **rep.to_json()}]
    elif args.input:
        c = MatrixF.from_json(_read_json(args.input))
        blocks = [{"block": name, **rep.to_json()} for name, rep in block_hom_reports(c, args.cap, args.seed)]
    else:
        raise InputError("homdim needs --in or --block")
    if args.format == "table":
        for b in blocks:
            label = b["block"] or "block"
            print(f"{label}: n={b['n']} E={b['E']} dim={b['dim_over_K']} "
                  f"gl.dim={_kind(b['gl_dim'])} dom.dim={_kind(b['dom_dim'])}")
    else:
        _emit({"blocks": blocks})
    return EXIT_OK


def _kind(d: dict) -> str:
    extra = d.get("value", d.get("cap"))
    return d["kind"] if extra is None else f"{d['kind']}({extra})"


def cmd_oracle(args) -> int:
    names = args.suite or None
    for name in names or ():
        if name not in SUITES:
            raise InputError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    results = run_suites(args.seed, args.trials, names)
    if args.format == "table":
        for r in results:
            print(r.line())
    else:
        _emit({
            "seed": args.seed,
            "trials": args.trials,
            "suites": [r.to_json() for r in results],
            "passed": sum(r.passed for r in results),
            "failed": sum(r.failed for r in results),
        })
    return EXIT_OK if all(r.ok for r in results) else EXIT_NOT_EQUIVALENT


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _default_seed() -> int:
    try:
        return int(os.environ.get("CMA_SEED", "0"))
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=_default_seed(),
                        help="seed for every randomized step (default: $CMA_SEED or 0)")
    common.add_argument("--format", choices=("json", "table"), default="json")

    parser = argparse.ArgumentParser(prog="cma", description="Centralizer matrix algebra toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eldiv", parents=[common], help="elementary divisors of a matrix")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_eldiv)

    p = sub.add_parser("sequiv", parents=[common], help="decide S-equivalence of two matrices")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--strict", action="store_true", help="only accept equal power-index sets")
    p.add_argument("--pairs", help="JSON list of {\"a\": ..., \"b\": ...} processed concurrently")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_sequiv)

    p = sub.add_parser("report", parents=[common], help="block structure of the centralizer")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--oracle", action="store_true", help="add the brute-force dimension check")
    p.add_argument("--cap", type=int, default=12, help="largest n for the brute-force check")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("perm", parents=[common], help="permutation matrices in characteristic p")
    p.add_argument("--cycle-type")
    p.add_argument("--in", dest="input")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--singular", action="store_true", help="use the p-singular part s(sigma)")
    p.add_argument("--pair", action="store_true", help="compare --a and --b end to end")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--a-in")
    p.add_argument("--b-in")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_perm)

    p = sub.add_parser("homdim", parents=[common], help="homological dimensions per block")
    p.add_argument("--in", dest="input")
    p.add_argument("--block", help="n,u,p,E1,E2,... (p = 0 for the rationals)")
    p.add_argument("--cap", type=int, default=DEFAULT_RESOLUTION_CAP)
    p.set_defaults(func=cmd_homdim)

    p = sub.add_parser("oracle", parents=[common], help="run the randomized property suites")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--suite", action="append", help=f"one of {', '.join(SUITES)}; repeatable")
    p.set_defaults(func=cmd_oracle)
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CMAError as exc:
        _emit(exc.to_json())
    except (ValueError, KeyError, TypeError) as exc:
        _emit({"error": "InvalidInput", "message": str(exc)})
    return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
