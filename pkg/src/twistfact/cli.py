"""Command-line entry point.

Exit codes: 0 when every checked property holds, 1 when a checked property or
a solver hypothesis fails, 2 on usage, parse or enumeration-cap errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import conditions, serialize, su3, twisted
from .rings import APairError, CapExceeded, RingSpecError, ring_parse

EXIT_OK, EXIT_PROPERTY, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    args: dict = field(default_factory=dict)
    json: bool = False
    seed: int = 0


@dataclass
class Outcome:
    payload: dict
    ok: bool = True
    text: str | None = None  # overrides the rendered payload in non-JSON mode


# --- helpers ------------------------------------------------------------------------


def _ring(spec: str):
    try:
        return ring_parse(spec)
    except RingSpecError as e:
        raise InputError(str(e)) from e


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from e


def _load_matrix(path: str, spec: str):
    R = _ring(spec)
    obj = _load_json(path)
    if "ring" in obj and ring_parse(obj["ring"]) != R:
        raise InputError(f"matrix file is over {obj['ring']}, not {spec}")
    try:
        A = serialize.matrix_from_json(obj, R)
    except (KeyError, ValueError) as e:
        raise InputError(f"bad matrix file: {e}") from e
    if A.n != 3:
        raise InputError("SU(3) commands take 3x3 matrices")
    verdict = su3.su3_check(A)
    if not verdict:
        raise InputError(f"input is not in SU(3): {verdict.tag} gives {verdict.lhs} != {verdict.rhs}")
    return A


def _split_params(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
            continue
        depth += (ch == "(") - (ch == ")")
        cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def family_specs(family: str, params: str) -> list[str]:
    """gf: q -> gf(q^2); zi: n -> zi(n); dual: S -> dual(S); prodc: S*T -> prodc(S,T)."""
    specs = []
    for p in _split_params(params):
        if family == "gf":
            specs.append(f"gf({int(p) ** 2})")
        elif family == "zi":
            specs.append(f"zi({int(p)})")
        elif family == "dual":
            specs.append(f"dual({p})")
        elif family == "prodc":
            parts = [s.strip() for s in p.split("*")]
            if len(parts) != 2:
                raise InputError(f"prodc parameter {p!r} must look like S*T")
            specs.append(f"prodc({parts[0]},{parts[1]})")
        else:
            raise InputError(f"unknown family {family!r}")
    return specs


# --- commands ------------------------------------------------------------------------


def cmd_ring_report(cfg: RunConfig) -> Outcome:
    return Outcome(serialize.ring_report(_ring(cfg.args["spec"])))


def cmd_ring_ideals(cfg: RunConfig) -> Outcome:
    R = _ring(cfg.args["spec"])
    mx = conditions.maximal_ideals(R)
    fmt = lambda s: [R.fmt(x) for x in sorted(s)]
    return Outcome({
        "spec": R.spec,
        "max_ideals": [fmt(m) for m in mx.ideals],
        "jacobson": fmt(mx.jacobson),
        "theta_stable": all(frozenset(R.theta(x) for x in m) == m for m in mx.ideals),
    })


def cmd_cond_clength(cfg: RunConfig) -> Outcome:
    R = _ring(cfg.args["spec"])
    cert = conditions.c_length(R, cfg.args.get("max_k"))
    return Outcome({
        "spec": R.spec,
        "theta_complete": cert.theta_complete,
        "c_length": cert.k if cert.theta_complete else "exhausted",
        "units": len(cert.units),
        "b1_size": len(cert.b1),
        "level_sizes": [len(b) for b in cert.levels],
        "c_even_size": len(cert.c_even),
        "c_odd_size": len(cert.c_odd),
    })


def _emit_form(A, form) -> Outcome:
    payload = serialize.su3_form_to_json(A, form)
    return Outcome(payload, ok=payload["verified"])


def cmd_su3_gauss(cfg: RunConfig) -> Outcome:
    A = _load_matrix(cfg.args["infile"], cfg.args["ring"])
    form = su3.gauss_decompose(A, cfg.args.get("orientation") or "row-")
    form = su3.compact_form(form, keep_head=True)
    return _emit_form(A, form)


def cmd_su3_unitri(cfg: RunConfig) -> Outcome:
    A = _load_matrix(cfg.args["infile"], cfg.args["ring"])
    R = A.ring
    cert = conditions.c_length(R)
    if not cert.theta_complete:
        raise conditions.HypothesisError(f"{R.spec} is not theta-complete")
    form = su3.unitri_decompose(A, conditions.witnesses_for(R, cert), cfg.args.get("lead") or "+")
    return _emit_form(A, form)


def cmd_su3_relations(cfg: RunConfig) -> Outcome:
    R = _ring(cfg.args["ring"])
    rep = su3.relation_suite(R, cfg.args.get("samples"), cfg.seed)
    return Outcome({
        "ring": R.spec,
        "samples": cfg.args.get("samples"),
        "seed": cfg.seed,
        "checked": dict(sorted(rep.checked.items())),
        "failures": dict(sorted(rep.failures.items())),
        "ok": rep.ok,
    }, ok=rep.ok)


def cmd_su3_enumerate(cfg: RunConfig) -> Outcome:
    R = _ring(cfg.args["ring"])
    group = su3.su3_enumerate(R)
    payload = {"ring": R.spec, "order": len(group)}
    ok = True
    check = cfg.args.get("check")
    if check == "gauss":
        covered = su3.product_set(R, "-+-", su3.torus(R)) == set(group)
        payload["check"] = {"kind": "gauss", "word": "T-+-", "coverage": covered}
        ok = covered
    elif check == "unitri":
        length = cfg.args.get("length") or 5
        word = ("+-" * length)[:length]
        covered, _ = su3.coverage_search(R, word, group)
        payload["check"] = {"kind": "unitri", "word": word, "coverage": covered}
        ok = covered
    return Outcome(payload, ok=ok)


def cmd_sun_factor(cfg: RunConfig) -> Outcome:
    obj = _load_json(cfg.args["word"])
    n, spec = cfg.args["n"], cfg.args["ring"]
    obj.setdefault("n", n)
    obj.setdefault("ring", spec)
    if int(obj["n"]) != n or _ring(obj["ring"]) != _ring(spec):
        raise InputError("word file disagrees with --n/--ring")
    try:
        word = serialize.word_from_json(obj)
    except (KeyError, ValueError) as e:
        raise InputError(f"bad word file: {e}") from e
    form = twisted.tavgen_factor(word, cfg.args.get("mode") or "unitri", check=cfg.args.get("check", False))
    payload = serialize.sun_form_to_json(word, form)
    return Outcome(payload, ok=payload["verified"])


def cmd_tables(cfg: RunConfig) -> Outcome:
    specs = family_specs(cfg.args["family"], cfg.args["params"])
    reports = [serialize.ring_report(_ring(s)) for s in specs]
    text = serialize.table_csv(reports)
    out = cfg.args.get("out")
    if out:
        Path(out).write_bytes(text.encode("utf-8"))
    payload = {"family": cfg.args["family"], "rows": reports}
    return Outcome(payload, text=None if out else text.rstrip("\n"))


COMMANDS = {
    "ring report": cmd_ring_report,
    "ring ideals": cmd_ring_ideals,
    "cond clength": cmd_cond_clength,
    "su3 gauss": cmd_su3_gauss,
    "su3 unitri": cmd_su3_unitri,
    "su3 relations": cmd_su3_relations,
    "su3 enumerate": cmd_su3_enumerate,
    "sun factor": cmd_sun_factor,
    "tables": cmd_tables,
}


# --- argument parsing ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="twistfact", description=__doc__.splitlines()[0])
    top = p.add_subparsers(dest="group", required=True)

    ring = top.add_parser("ring").add_subparsers(dest="sub", required=True)
    for name in ("report", "ideals"):
        sp = ring.add_parser(name, parents=[common])
        sp.add_argument("spec")

    cond = top.add_parser("cond").add_subparsers(dest="sub", required=True)
    sp = cond.add_parser("clength", parents=[common])
    sp.add_argument("spec")
    sp.add_argument("--max-k", type=int, dest="max_k")

    s3 = top.add_parser("su3").add_subparsers(dest="sub", required=True)
    sp = s3.add_parser("gauss", parents=[common])
    sp.add_argument("--ring", required=True)
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--orientation", choices=su3.ORIENTATIONS)
    sp = s3.add_parser("unitri", parents=[common])
    sp.add_argument("--ring", required=True)
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--lead", choices=("+", "-"))
    sp = s3.add_parser("relations", parents=[common])
    sp.add_argument("--ring", required=True)
    sp.add_argument("--samples", type=int, help="omit for an exhaustive check")
    sp = s3.add_parser("enumerate", parents=[common])
    sp.add_argument("--ring", required=True)
    sp.add_argument("--check", choices=("gauss", "unitri"))
    sp.add_argument("--length", type=int)

    sun = top.add_parser("sun").add_subparsers(dest="sub", required=True)
    sp = sun.add_parser("factor", parents=[common])
    sp.add_argument("--n", type=int, required=True, choices=twisted.SUPPORTED_N)
    sp.add_argument("--ring", required=True)
    sp.add_argument("--word", required=True)
    sp.add_argument("--mode", choices=("tri", "unitri"), default="unitri")
    sp.add_argument("--check", action="store_true", help="assert sigma-fixedness at every step")

    sp = top.add_parser("tables", parents=[common])
    sp.add_argument("--family", required=True, choices=("gf", "zi", "dual", "prodc"))
    sp.add_argument("--params", required=True, help="comma list; gf takes q for gf(q^2), prodc takes S*T")
    sp.add_argument("--out")
    return p


def _render_text(payload: dict) -> str:
    lines = []
    for k, v in payload.items():
        if isinstance(v, (dict, list)):
            v = json.dumps(v, ensure_ascii=False)
        elif isinstance(v, bool):
            v = "true" if v else "false"
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    command = ns.group if ns.group == "tables" else f"{ns.group} {ns.sub}"
    args = {k: v for k, v in vars(ns).items() if k not in ("group", "sub", "json", "seed")}
    cfg = RunConfig(command, args, ns.json, ns.seed)
    try:
        out = COMMANDS[command](cfg)
    except (InputError, RingSpecError, APairError, su3.NotInSU3, CapExceeded, ValueError) as e:
        if isinstance(e, (conditions.HypothesisError, conditions.SSR1Failure, twisted.BaseSolverError)):
            print(f"error: {e}", file=sys.stderr)
            return EXIT_PROPERTY
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if cfg.json:
        stdout.write(serialize.dumps(out.payload))
    else:
        stdout.write((out.text if out.text is not None else _render_text(out.payload)) + "\n")
    return EXIT_OK if out.ok else EXIT_PROPERTY


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
