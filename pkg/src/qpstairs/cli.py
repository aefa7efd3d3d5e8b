"""Command line interface.

Exit status: 0 success, 1 a verification failed, 2 bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import accum, capacity, classes, cremona, staircase, symmetry, verification
from .cfrac import cf_expand
from .errors import DomainError, NoSolution, ParseError
from .exact import QuadExt, render
from .staircase import Family
from .symmetry import parse_group_elem


class UsageError(Exception):
    pass


def parse_range(text: str) -> range:
    """``"3"`` or ``"0..5"`` (inclusive)."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return range(int(a), int(b) + 1)
        k = int(text)
        return range(k, k + 1)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from exc


def parse_pq(text: str) -> tuple[int, int]:
    try:
        f = Fraction(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad rational {text!r}") from exc
    return f.numerator, f.denominator


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad rational {text!r}") from exc


def _labels(direction: str) -> list[str]:
    return ["l", "u"] if direction == "both" else [direction]


def _staircases(args):
    F = Family(parse_group_elem(args.T), args.base)
    for n in args.n:
        for label in _labels(args.dir):
            if F.admissible(n, label):
                yield F.build(n, label, args.steps)


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# subcommands

def cmd_acc(args) -> int:
    print(render(accum.acc(args.b), args.digits))
    return 0


def cmd_accinv(args) -> int:
    p, q = args.pq
    branches = ["U", "L"] if args.branch == "both" else [args.branch]
    for br in branches:
        try:
            print(f"{br}: {render(accum.acc_inv(p, q, br), args.digits)}")
        except DomainError as exc:
            print(f"{br}: undefined ({exc})")
    return 0


def cmd_class(args) -> int:
    c = classes.from_pq(*args.pq)
    if args.format == "json":
        print(json.dumps(c.to_json()))
    else:
        print(c)
        if c.geometric:
            print(f"vector {classes.to_vector(c)}")
            print(f"center {cf_expand(c.p, c.q)}")
    return 0


def cmd_symmetry(args) -> int:
    T = parse_group_elem(args.T)
    print(f"{T} = {T.matrix}")
    print(f"degree matrix on blocking classes {symmetry.deg_matrix_B(T)}")
    if args.pq:
        p, q = args.pq
        P, Q = T.matrix.apply_vec(p, q)
        print(f"{T}({p}/{q}) = {Fraction(P, Q) if Q else 'INF'}")
        try:
            print(f"{T}#{classes.from_pq(p, q)} = {symmetry.sharp(T, classes.from_pq(p, q))}")
        except NoSolution:
            pass
    if args.refl is not None:
        print(f"reflection through v_{args.refl}: {symmetry.refl(args.refl)}")
        for fl in ("B", "P"):
            print(f"  degree action ({fl}) {symmetry.deg_matrix_refl(args.refl, fl)}")
    return 0


def cmd_family(args) -> int:
    scs = list(_staircases(args))
    if args.format == "json":
        out = []
        for sc in scs:
            L = sc.limits()
            out.append({"name": sc.name, "n": sc.n, "dir": sc.label, "nu": sc.nu,
                        "block": sc.block.to_json(),
                        "steps": [c.to_json() for c in sc.steps],
                        "z_inf": str(L.z_inf), "b_inf": str(L.b_inf)})
        _write(json.dumps(out, indent=2) + "\n", args.out)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "n", "dir", "kappa", "d", "m", "p", "q", "t", "eps"])
        for sc in scs:
            for k, c in enumerate(sc.steps):
                w.writerow([str(sc.family), sc.n, sc.label, k, *c.as_tuple()])
        _write(buf.getvalue(), args.out)
    else:
        lines = []
        for sc in scs:
            L = sc.limits()
            lines.append(f"{sc.name} nu={sc.nu} block={sc.block}")
            lines.extend(f"  {k}: {c}" for k, c in enumerate(sc.steps))
            lines.append(f"  z_inf = {render(L.z_inf, args.digits)}")
            lines.append(f"  b_inf = {render(L.b_inf, args.digits)}")
        _write("\n".join(lines) + "\n", args.out)
    return 0


def cmd_verify(args) -> int:
    kind = args.kind
    if kind == "perfect":
        if args.cls:
            c = classes.QuasiPerfect.from_json(args.cls)
        elif args.pq:
            c = classes.from_pq(*args.pq)
        else:
            raise UsageError("verify perfect needs --class or --pq")
        trace = cremona.reduce(c, args.budget)
        print(trace.render())
        return 0 if trace.verdict is cremona.Verdict.EXCEPTIONAL else 1
    if kind == "blocking":
        ok, seen = True, set()
        for sc in _staircases(args):
            for good, line in verification.blocking_lines(sc):
                if line not in seen:
                    seen.add(line)
                    print(line)
                ok &= good
        return 0 if ok else 1
    if kind == "live":
        for sc in _staircases(args):
            _, line = verification.live_line(sc)
            print(line)
        return 0
    checks = verification.run_all(args.i, args.n, args.steps)
    for c in checks:
        print(c.line())
    return 0 if all(c.ok is not False for c in checks) else 1


def cmd_plot(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    if args.kind == "acc":
        return _plot_acc(args)
    if args.pq:
        cls_list = [classes.from_pq(*pq) for pq in args.pq]
        if args.b is None or args.zmin is None or args.zmax is None:
            raise UsageError("class envelopes need --b, --zmin and --zmax")
        env = capacity.envelope(cls_list, args.b, args.zmin, args.zmax)
        stem = "envelope"
    else:
        sc = next(iter(_staircases(args)), None)
        if sc is None:
            raise UsageError("no admissible staircase for the given --T/--base/--n/--dir")
        env = capacity.staircase_profile(sc, args.steps)
        stem = f"profile_{args.base}_{sc.label}{sc.n}"
    formats = ["csv", "json", "svg"] if args.format == "all" else [args.format]
    for fmt in formats:
        path = os.path.join(args.out, f"{stem}.{fmt}")
        with open(path, "w") as fh:
            fh.write(capacity.emit(env, fmt, args.digits))
        print(path)
    if args.png:
        from .plotting import save_envelope

        path = os.path.join(args.out, f"{stem}.png")
        save_envelope(env, path)
        print(path)
    return 0


def _plot_acc(args) -> int:
    from .plotting import acc_figure, save_figure

    rows = []
    for k in range(0, 100):
        b = Fraction(k, 100)
        z = accum.acc(b)
        rows.append((b, z, (1 + z) / (3 - b)))
    path = os.path.join(args.out, "acc.csv")
    with open(path, "w") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["b", "acc_exact", "acc_decimal", "volume_decimal"])
        for b, z, v in rows:
            w.writerow([str(b), str(z), z.to_decimal(args.digits), v.to_decimal(args.digits)])
    print(path)
    svg = os.path.join(args.out, "acc.svg")
    save_figure(acc_figure([(float(b), float(z), float(v)) for b, z, v in rows]), svg)
    print(svg)
    return 0


def cmd_tables(args) -> int:
    name = args.name
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if name == "g":
        w.writerow(["i", "g", "m", "d"])
        for row in staircase.g_table(args.i.stop - 1):
            w.writerow([row["i"], row["g"], row.get("m", ""), row.get("d", "")])
    elif name == "y":
        w.writerow(["k", "y"])
        for k in args.i:
            w.writerow([k, symmetry.y_seq(k)])
    elif name == "vw":
        w.writerow(["k", "v", "w"])
        for k in args.i:
            if k >= 1:
                w.writerow([k, symmetry.v(k), symmetry.w(k)])
    elif name == "onethird":
        w.writerow(["strand", "k", "d", "m", "p", "q", "t", "eps"])
        for s in range(3):
            for k, c in enumerate(staircase.one_third_strand(s, max(args.i.stop - 1, 1)), 1):
                w.writerow([s, k, *c.as_tuple()])
    elif name == "principal":
        w.writerow(["i", "d", "m", "p", "q", "t", "eps"])
        for i in args.i:
            w.writerow([i, *symmetry.principal_class(i).as_tuple()])
    _write(buf.getvalue(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qpstairs", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def fam_opts(p, steps=8):
        p.add_argument("--T", default="id", help="group word, e.g. 'S^2 R' or 'R_{v_3}'")
        p.add_argument("--base", choices=["U", "L"], default="U")
        p.add_argument("--n", type=parse_range, default=range(0, 1))
        p.add_argument("--dir", choices=["l", "u", "both"], default="both")
        p.add_argument("--steps", type=int, default=steps)

    p = sub.add_parser("acc", help="accumulation point of a rational b")
    p.add_argument("--b", type=parse_rational, required=True)
    p.add_argument("--digits", type=int, default=30)
    p.set_defaults(func=cmd_acc)

    p = sub.add_parser("accinv", help="inverse branches at a rational center")
    p.add_argument("--pq", type=parse_pq, required=True)
    p.add_argument("--branch", choices=["U", "L", "both"], default="both")
    p.add_argument("--digits", type=int, default=30)
    p.set_defaults(func=cmd_accinv)

    p = sub.add_parser("class", help="quasi-perfect class with a given center")
    p.add_argument("--pq", type=parse_pq, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("symmetry", help="matrices and degree maps of group words")
    p.add_argument("--T", required=True)
    p.add_argument("--pq", type=parse_pq)
    p.add_argument("--refl", type=int)
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("family", help="list staircases of a family")
    fam_opts(p)
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.add_argument("--out")
    p.add_argument("--digits", type=int, default=20)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("verify", help="certify perfection, blocking or liveness")
    p.add_argument("kind", choices=["perfect", "blocking", "live", "all"])
    fam_opts(p)
    p.add_argument("--class", dest="cls", help="JSON class record")
    p.add_argument("--pq", type=parse_pq)
    p.add_argument("--budget", type=int)
    p.add_argument("--i", type=parse_range, default=range(0, 4))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plot", help="write envelope data and figures")
    fam_opts(p, steps=6)
    p.add_argument("--kind", choices=["envelope", "acc"], default="envelope")
    p.add_argument("--pq", type=parse_pq, action="append")
    p.add_argument("--b", type=parse_rational)
    p.add_argument("--zmin", type=parse_rational)
    p.add_argument("--zmax", type=parse_rational)
    p.add_argument("--format", choices=["csv", "json", "svg", "all"], default="all")
    p.add_argument("--png", action="store_true", help="also write a PNG figure")
    p.add_argument("--out", default=".")
    p.add_argument("--digits", type=int, default=30)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("tables", help="print reference tables as CSV")
    p.add_argument("--name", choices=["g", "y", "vw", "onethird", "principal"], required=True)
    p.add_argument("--i", type=parse_range, default=range(0, 7))
    p.add_argument("--out")
    p.set_defaults(func=cmd_tables)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "dir", None) == "both" and args.command == "plot" and not args.pq:
        args.dir = "l"
    try:
        return args.func(args)
    except NoSolution as exc:
        print(f"{ap.prog}: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ParseError, DomainError) as exc:
        print(f"{ap.prog}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
