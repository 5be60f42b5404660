"""Command-line entry point: ``qheis <command> [flags]``.

Reports are JSON lines on stdout unless ``--format``/``--output`` say otherwise.
Exit status is 0 when every check passes (or the computation converged), 1 on
a failed check and 2 on invalid usage.  A ``--config`` file holds ``key=value``
lines named like the long flags; flags given on the command line win.
"""

from __future__ import annotations

import argparse
import cmath
import json
import os
import sys
from typing import Callable, Sequence

from .report import CheckReport
from .presets import PRESETS

COMMANDS = ("verify-hopf", "verify-qybe", "verify-cybe", "verify-twist", "verify-ribbon",
            "verify-rtt", "rmatrix", "braid-invariant", "turaev-check")


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Accept "0.3", "-1.5e-2", "0.3+0.1i", "2i" (a trailing j also works)."""
    s = str(text).strip().replace(" ", "")
    if not s:
        raise argparse.ArgumentTypeError("empty number")
    s = s[:-1] + "j" if s.endswith("i") else s
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _cutoff(text: str) -> int:
    v = _positive_int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("cutoff must be >= 2")
    return v


def _tolerance(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("tolerance must be > 0")
    return v


def _fraction_or_number(text: str):
    from fractions import Fraction
    try:
        return Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def read_config(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qheis", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key=value file mirroring the long flags")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, preset=True, truncation=True, numeric=False):
        p.add_argument("--config", help=argparse.SUPPRESS)
        p.add_argument("--output", default="-", help="file path, - for stdout")
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--deterministic", action="store_true",
                       help="omit elapsed times so identical runs give identical bytes")
        if preset:
            p.add_argument("--preset", choices=PRESETS + ("all",), default="two-parameter")
        if truncation:
            p.add_argument("--kh", type=_positive_int, default=3)
            p.add_argument("--kw", type=_positive_int, default=3)
        if numeric:
            p.add_argument("--h", type=parse_complex, default=complex(0.3))
            p.add_argument("--w", type=parse_complex, default=complex(0.2))
            p.add_argument("--e", type=parse_complex, default=complex(1))
            p.add_argument("--n", type=parse_complex, default=complex(0))
            p.add_argument("--cutoff", type=_cutoff, default=12)
            p.add_argument("--tol", type=_tolerance, default=1e-10)
        return p

    common(sub.add_parser("verify-hopf", help="Hopf axioms and quasitriangularity"))
    q = common(sub.add_parser("verify-qybe", help="quantum Yang-Baxter equation"))
    q.add_argument("--x-u", type=_fraction_or_number, default=None)
    q.add_argument("--x-v", type=_fraction_or_number, default=None)
    c = common(sub.add_parser("verify-cybe", help="classical Yang-Baxter equation"),
               preset=False, truncation=False)
    c.add_argument("--name", default="all", help="r-matrix name or 'all'")
    c.add_argument("--x-u", type=_fraction_or_number, default=None)
    c.add_argument("--x-v", type=_fraction_or_number, default=None)
    common(sub.add_parser("verify-twist", help="twist, v element and R-matrix forms"), preset=False)
    common(sub.add_parser("verify-ribbon", help="u, theta, Casimir and theta's spectrum"), numeric=True)
    common(sub.add_parser("verify-rtt", help="dual quantum group checks"), preset=False)
    r = common(sub.add_parser("rmatrix", help="emit a represented R-matrix"),
               preset=False, truncation=False, numeric=True)
    r.add_argument("--rep", choices=("pi3", "fock"), default="pi3")
    r.add_argument("--e2", type=parse_complex, default=None)
    r.add_argument("--n2", type=parse_complex, default=None)
    r.add_argument("--inverse", action="store_true")
    b = common(sub.add_parser("braid-invariant", help="Markov-trace invariant of braids"),
               preset=False, truncation=False, numeric=True)
    b.add_argument("--braid", action="append", default=None)
    b.add_argument("--braid-file", default=None)
    b.add_argument("--reduce", action="store_true", help="freely reduce words first")
    t = common(sub.add_parser("turaev-check", help="Turaev partial-trace conditions"),
               preset=False, truncation=False, numeric=True)
    t.add_argument("--interior", type=_positive_int, default=None)
    return parser


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _presets(args) -> tuple[str, ...]:
    return PRESETS if args.preset == "all" else (args.preset,)


def _cmd_verify_hopf(args) -> list[CheckReport]:
    from .verify import check_hopf_axioms, check_quasitriangular
    t = (args.kh, args.kw)
    out = []
    for p in _presets(args):
        out.append(check_hopf_axioms(p, t))
        out.append(check_quasitriangular(p, t))
    return out


def _cmd_verify_qybe(args) -> list[CheckReport]:
    from .verify import check_qybe, check_spectral_qybe
    t = (args.kh, args.kw)
    if args.x_u is not None or args.x_v is not None:
        return [check_spectral_qybe(args.x_u or 1, args.x_v or 1, t)]
    return [check_qybe(p, t) for p in _presets(args)]


def _cmd_verify_cybe(args) -> list[CheckReport]:
    from .classical import NAMED_R, check_cybe, check_spectral_cybe
    if args.x_u is not None or args.x_v is not None:
        return [check_spectral_cybe(args.x_u or 1, args.x_v or 1)]
    names = list(NAMED_R) if args.name == "all" else [args.name]
    for n in names:
        if n not in NAMED_R:
            raise UsageError(f"unknown r-matrix {n!r}; choose from {', '.join(NAMED_R)}")
    return [check_cybe(n) for n in names]


def _cmd_verify_twist(args) -> list[CheckReport]:
    from .verify import check_rmatrix_forms, check_twist_conditions, check_v_element
    t = (args.kh, args.kw)
    return [check_twist_conditions(t), check_v_element(t), check_rmatrix_forms(t)]


def conformal_weight(theta: complex) -> complex:
    """Principal Delta with e^{2 pi i Delta} = theta."""
    return cmath.log(theta) / (2j * cmath.pi)


def _rep_params(args, **override):
    from .fock import RepParams
    vals = dict(h=args.h, w=args.w, e=args.e, n=args.n, D=args.cutoff)
    vals.update(override)
    return RepParams(**vals)


def _cmd_verify_ribbon(args) -> list[CheckReport]:
    from .fock import ribbon_spectrum
    from .verify import check_casimir, check_u_ribbon
    t = (args.kh, args.kw)
    out = []
    for p in _presets(args):
        out.append(check_u_ribbon(p, t))
        out.append(check_casimir(p, t))
    spec = ribbon_spectrum(_rep_params(args), args.tol)
    spec.details["conformal_weight"] = conformal_weight(spec.details["eigenvalue"])
    spec.notes.append("conformal_weight is an interpretation: principal solution of "
                      "e^{(2n-1)he} = e^{2 pi i Delta}")
    out.append(spec)
    return out


def _cmd_verify_rtt(args) -> list[CheckReport]:
    from .rtt import check_confluence, check_group_hopf, check_reductions, check_rtt, mutation_report
    t = (args.kh, args.kw)
    seed = int(os.environ.get("QHEIS_SEED", "0"))
    main = check_rtt(t)
    main.details["mutations"] = mutation_report(t)
    mutation_ok = all(v > 0 for v in main.details["mutations"].values())
    mutation = CheckReport("rtt_mutation", "two-parameter", t, 0 if mutation_ok else 1,
                           details={"nonzero_entries": main.details["mutations"]})
    return [main, mutation, check_confluence(t, seed=seed), check_group_hopf(t), check_reductions(*t)]


def _emit_matrix(args) -> tuple[str, int]:
    from .fock import (FockMatrix, pi3_rmatrix, pi3_rmatrix_json, rmatrix_formula_matrix,
                       rmatrix_inverse_formula_matrix)
    if args.rep == "pi3":
        if args.format == "json":
            return pi3_rmatrix_json() + "\n", 0
        R = pi3_rmatrix()
        if args.format == "csv":
            lines = ["row,col,entry"] + [f"{i},{j},{R[i, j]}" for i in range(9) for j in range(9)
                                         if R[i, j] != 0]
            return "\n".join(lines) + "\n", 0
        return "\n".join(" ".join(str(R[i, j]) for j in range(9)) for i in range(9)) + "\n", 0
    p1 = _rep_params(args)
    p2 = _rep_params(args, e=args.e2 if args.e2 is not None else args.e,
                     n=args.n2 if args.n2 is not None else args.n)
    fm: FockMatrix = (rmatrix_inverse_formula_matrix if args.inverse else rmatrix_formula_matrix)(p1, p2)
    if args.format == "json":
        return fm.to_json() + "\n", 0
    if args.format == "csv":
        return fm.to_csv(), 0
    return "\n".join(" ".join(f"{z.real:.6g}{z.imag:+.6g}i" for z in row) for row in fm.data) + "\n", 0


def _braids(args) -> list[str]:
    texts = list(args.braid or [])
    if args.braid_file:
        with open(args.braid_file, encoding="utf-8") as fh:
            texts += [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    if not texts:
        raise UsageError("give --braid or --braid-file")
    return texts


def _cmd_braid(args) -> tuple[str, int]:
    from .braid import BraidParseError, link_invariant, parse_braid
    lines, code = [], 0
    p = _rep_params(args)
    for text in _braids(args):
        try:
            word = parse_braid(text)
        except BraidParseError as exc:
            raise UsageError(f"{text!r}: {exc}") from None
        if args.reduce:
            word = word.free_reduce()
        res = link_invariant(word, p, tol=max(args.tol, 1e-12))
        code = max(code, 0 if res.converged else 1)
        if args.format == "text":
            lines.append(f"{res.braid}  P={res.value:.12g}  D={res.D}  tail={res.tail_estimate:.3g}  "
                         f"converged={res.converged}")
        else:
            lines.append(json.dumps(res.to_dict()))
    return "\n".join(lines) + "\n", code


def _cmd_turaev(args) -> list[CheckReport]:
    from .braid import check_turaev
    rep = check_turaev(_rep_params(args), tol=args.tol, interior=args.interior)
    rep.notes.append("q = e^h assumed for the link-invariant prefactor")
    return [rep]


_REPORT_COMMANDS: dict[str, Callable] = {
    "verify-hopf": _cmd_verify_hopf,
    "verify-qybe": _cmd_verify_qybe,
    "verify-cybe": _cmd_verify_cybe,
    "verify-twist": _cmd_verify_twist,
    "verify-ribbon": _cmd_verify_ribbon,
    "verify-rtt": _cmd_verify_rtt,
    "turaev-check": _cmd_turaev,
}


def format_reports(reports: list[CheckReport], fmt: str, deterministic: bool) -> str:
    if fmt == "json":
        return "".join(r.to_json(include_time=not deterministic) + "\n" for r in reports)
    if fmt == "csv":
        rows = ["check,preset,K_h,K_w,residual_terms,pass"]
        for r in reports:
            d = r.to_dict(include_time=False)
            rows.append(",".join(str(d[k]) for k in ("check", "preset", "K_h", "K_w",
                                                      "residual_terms", "pass")))
        return "\n".join(rows) + "\n"
    return "".join(r.summary() + "\n" for r in reports)


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        config_path = None
        for i, tok in enumerate(argv):
            if tok == "--config" and i + 1 < len(argv):
                config_path = argv[i + 1]
            elif tok.startswith("--config="):
                config_path = tok.split("=", 1)[1]
        if config_path:
            cfg = read_config(config_path)
            command = cfg.pop("command", None)
            if command and not any(a in COMMANDS for a in argv):
                argv = [command] + argv
            cmd = next((a for a in argv if a in COMMANDS), None)
            if cmd is None:
                raise UsageError("no command given")
            subparser = parser._subparsers._group_actions[0].choices[cmd]  # noqa: SLF001
            known = {a.dest: a for a in subparser._actions}  # noqa: SLF001
            defaults = {}
            for key, raw in cfg.items():
                if key not in known:
                    raise UsageError(f"unknown config key {key!r} for {cmd}")
                action = known[key]
                if isinstance(action, argparse._StoreTrueAction):  # noqa: SLF001
                    defaults[key] = raw.lower() in ("1", "true", "yes", "on")
                elif action.type is not None:
                    defaults[key] = action.type(raw)
                else:
                    defaults[key] = raw
                if action.choices is not None and defaults[key] not in action.choices:
                    raise UsageError(f"config {key}={raw!r} not in {list(action.choices)}")
            subparser.set_defaults(**defaults)
        args = parser.parse_args(argv)
    except (UsageError, argparse.ArgumentTypeError, OSError) as exc:
        parser.print_usage(sys.stderr)
        print(f"qheis: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0

    try:
        if args.command == "rmatrix":
            text, code = _emit_matrix(args)
        elif args.command == "braid-invariant":
            text, code = _cmd_braid(args)
        else:
            reports = _REPORT_COMMANDS[args.command](args)
            text = format_reports(reports, args.format, args.deterministic)
            code = 0 if all(r.passed for r in reports) else 1
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"qheis: error: {exc}", file=sys.stderr)
        return 2

    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
