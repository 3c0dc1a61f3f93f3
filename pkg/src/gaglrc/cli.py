"""Command-line front end.

Exit status: 0 on success, 1 on invalid input or a failed check (one line
``error: <kind>: <message>`` on stderr), 2 when an exhaustive search would
exceed its budget. Coordinates are 1-indexed in all output.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import bounds, formats
from .field import FieldError, gf, render_element
from .linear import (
    BudgetExceeded,
    CertificationError,
    CodeError,
    DEFAULT_BUDGET,
    RecoveryError,
    distance_bounds,
    encode,
    min_distance_exhaustive,
    parity_check_code,
    rs_code,
)
from .lrc import (
    LocalityError,
    build_concatenated,
    build_optimal_q_family,
    concatenated_params,
    gag_report,
    recovery_sets,
    repair_symbol,
    table1_rows,
)

_INPUT_ERRORS = (
    FieldError,
    CodeError,
    bounds.BoundError,
    formats.DescriptorError,
    CertificationError,
    RecoveryError,
    LocalityError,
    OSError,
)


class UsageError(ValueError):
    pass


def _out(args, text: str, kind: str, **fields) -> None:
    if args.format == "structured":
        print(formats.report(kind, **fields))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _ones(positions) -> list[int]:
    return [int(p) + 1 for p in positions]


# -- subcommands -----------------------------------------------------------------------


def cmd_build(args) -> int:
    code = formats.load_descriptor(args.descriptor)
    text = formats.emit_golden(args.stage, code)
    _out(args, text, "matrix", stage=args.stage, n=code.n, k=code.k, matrix=text)
    return 0


def cmd_mindist(args) -> int:
    code = formats.load_descriptor(args.descriptor)
    if args.claim is not None:
        witness = None
        if args.witness:
            witness = formats.parse_word(code.field, args.witness)
            if any(v is None for v in witness):
                raise UsageError("witness may not contain erasures")
        try:
            lo, hi = distance_bounds(code.base, args.claim, witness)
        except CertificationError as e:
            raise CertificationError(e.claim, tuple(_ones(e.positions))) from None
        _out(args, f"d_lower={lo} d_upper={hi}", "mindist", d_lower=lo, d_upper=hi, method="certified")
        return 0
    d = min_distance_exhaustive(code.base, budget=args.budget)
    _out(args, f"d={d}", "mindist", d=d, method="exhaustive")
    return 0


def cmd_repair(args) -> int:
    code = formats.load_descriptor(args.descriptor)
    F = code.field
    if args.sweep:
        rng = np.random.default_rng(args.seed)
        trials = ok = 0
        biggest = 0
        for _ in range(args.sweep):
            msg = rng.integers(0, F.q, size=code.k)
            word = [int(v) for v in encode(code.base, msg)]
            for i in range(code.n):
                damaged = list(word)
                damaged[i] = None
                sym, used = repair_symbol(code, damaged, i)
                trials += 1
                ok += sym == word[i]
                biggest = max(biggest, len(used))
        _out(args, f"trials={trials} repaired={ok} max_recovery={biggest}", "repair_sweep",
             trials=trials, repaired=ok, max_recovery=biggest, seed=args.seed)
        return 0 if ok == trials else 1
    if args.word is None or args.erase is None:
        raise UsageError("repair needs --word and --erase (or --sweep)")
    word = formats.parse_word(F, args.word)
    if not 1 <= args.erase <= code.n:
        raise UsageError(f"--erase must be in 1..{code.n}")
    sym, used = repair_symbol(code, word, args.erase - 1)
    rendered = render_element(F, sym)
    _out(args, f"symbol={rendered} recovery_set={','.join(map(str, _ones(used)))}", "repair",
         position=args.erase, symbol=rendered, recovery_set=_ones(used))
    return 0


def cmd_locality(args) -> int:
    code = formats.load_descriptor(args.descriptor)
    sets = recovery_sets(code)
    r = max(len(S) for S in sets)
    lines = [f"locality={r}"]
    lines += [f"c{i + 1}: {','.join(map(str, _ones(S)))}" for i, S in enumerate(sets)]
    _out(args, "\n".join(lines), "locality", locality=r, recovery_sets=[_ones(S) for S in sets])
    return 0


def cmd_family(args) -> int:
    code, witness = build_optimal_q_family(args.q)
    rep = gag_report(code, budget=args.budget, witness=witness)
    if args.descriptor_out:
        F = code.field
        spec = {"kind": "rs", "points": [render_element(F, a) for a in range(3)], "k": 2}
        with open(args.descriptor_out, "w") as fh:
            fh.write(formats.dump_json(formats.descriptor_for(code, spec)) + "\n")
    _out(args, rep.line(), "family", q=args.q, **rep.as_dict())
    if rep.d_actual is None:
        print(f"error: budget: distance not determined within budget {args.budget}", file=sys.stderr)
        return 2
    return 0


def _parse_code_arg(text: str, field, default_k: int | None = None):
    parts = text.split(":")
    kind = parts[0]
    try:
        nums = [int(t) for t in parts[1:]]
    except ValueError:
        raise UsageError(f"bad code spec {text!r}") from None
    if kind == "rs":
        if len(nums) == 1 and default_k is not None:
            nums.append(default_k)
        if len(nums) != 2:
            raise UsageError("rs spec is rs:N:K")
        return rs_code(field, field.elements()[: nums[0]], nums[1])
    if kind == "parity":
        r = nums[0] if nums else default_k
        return parity_check_code(field, r)
    raise UsageError(f"unknown code kind {kind!r}")


def cmd_concat(args) -> int:
    Fi = gf(args.q)
    if Fi.m != 1:
        raise FieldError("concatenation is supported over prime base fields only")
    Fo = gf(args.q**args.r)
    outer = _parse_code_arg(args.outer, Fo)
    inner = _parse_code_arg(args.inner, Fi, default_k=args.r)
    code = build_concatenated(outer, inner)
    d_outer = min_distance_exhaustive(outer, budget=args.budget)
    d_inner = min_distance_exhaustive(inner, budget=args.budget)
    d = min_distance_exhaustive(code, budget=args.budget)
    fields = dict(n=code.n, k=code.k, d=d, d_product=d_outer * d_inner, r=args.r)
    if args.inner.startswith("parity"):
        fields["d_design"] = concatenated_params(args.q, args.r, outer.n, 0, outer.k).d_design
    text = " ".join(f"{k}={v}" for k, v in fields.items())
    _out(args, text, "concat", **fields)
    return 0 if d >= d_outer * d_inner else 1


def cmd_table1(args) -> int:
    rows = table1_rows(budget=args.budget)
    text = "\n".join(f"n={n} k={k} d={d} defect={df}" for n, k, d, df in rows)
    _out(args, text, "table1", field="F_3(x)", rows=[dict(n=n, k=k, d=d, defect=df) for n, k, d, df in rows])
    return 0


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--kind {args.kind} needs " + ", ".join("--" + m for m in missing))


def cmd_bounds(args) -> int:
    kind = args.kind
    if kind == "singleton":
        _need(args, "n", "k", "r")
        d_max = bounds.singleton_lrc(args.n, args.k, args.r)
        fields = {"d_max": d_max}
        if args.d is not None:
            fields["defect"] = bounds.defect(args.n, args.k, args.d, args.r)
        fields["rate_cap"] = bounds.rate_cap(args.r)
        text = " ".join(f"{k}={v}" for k, v in fields.items() if k != "rate_cap")
        rep = bounds.BoundReport("singleton_lrc", {"n": args.n, "k": args.k, "r": args.r, "d": args.d},
                                 d_max, tag="singleton-lrc", extra=fields)
    elif kind == "gv":
        _need(args, "q", "r", "delta")
        res = bounds.gv_lrc_rate(args.q, args.r, float(Fraction(args.delta)))
        flags = ["clamped to zero"] if res.clamped else []
        text = f"rate>={res.value:.12g} s_min={res.s_min:.12g}" + (" clamped" if res.clamped else "")
        rep = bounds.BoundReport("gv_lrc_rate", {"q": args.q, "r": args.r, "delta": float(Fraction(args.delta))},
                                 res.value, flags, tag="gv-lrc", extra={"s_min": res.s_min, "raw": res.raw})
    elif kind == "dv":
        _need(args, "q", "r")
        v = bounds.dv_order_r(args.q, args.r)
        text = f"dv={v}"
        rep = bounds.BoundReport("dv_order_r", {"q": args.q, "r": args.r}, v, tag="drinfeld-vladut")
    elif kind == "gs":
        _need(args, "q", "ell")
        t = bounds.gs_tower_params(args.q, args.ell)
        text = f"genus<={t.genus_upper} b1>={t.b1_lower} ratio>={t.ratio_lower}"
        rep = bounds.BoundReport("gs_tower", {"q": args.q, "ell": args.ell}, t.ratio_lower, tag="gs-tower",
                                 extra={"genus_upper": t.genus_upper, "b1_lower": t.b1_lower})
    else:
        _need(args, "q", "r")
        delta = Fraction(args.delta) if args.delta is not None else Fraction(0)
        b_r = Fraction(args.br) if args.br is not None else None
        rep = bounds.asymptotic_rates(args.q, args.r, delta, ell=args.ell, b_r=b_r)
        text = " ".join(f"{k}={'n/a' if v is None else v}" for k, v in rep.value.items())
        text += "".join(f"\nflag: {f}" for f in rep.flags)
    if args.format == "structured":
        print(formats.report("bounds", **rep.as_dict()))
    else:
        print(text)
    return 0


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum codewords enumerated by exhaustive searches")

    parser = argparse.ArgumentParser(prog="gaglrc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="print a generator matrix")
    p.add_argument("--descriptor", required=True)
    p.add_argument("--stage", choices=formats.GOLDEN, default="G",
                   help="G0 residues, G1 flattened, G_RS first inner generator, G full")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("mindist", parents=[common], help="minimum distance")
    p.add_argument("--descriptor", required=True)
    p.add_argument("--claim", type=int, choices=(2, 3))
    p.add_argument("--witness", help="message whose codeword bounds d from above")
    p.set_defaults(func=cmd_mindist)

    p = sub.add_parser("repair", parents=[common], help="repair one erased symbol")
    p.add_argument("--descriptor", required=True)
    p.add_argument("--word", help="codeword symbols; the erased one may be '?'")
    p.add_argument("--erase", type=int, help="1-indexed position to rebuild")
    p.add_argument("--sweep", type=int, default=0, help="repair every position of N random codewords")
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("locality", parents=[common], help="certified locality and recovery sets")
    p.add_argument("--descriptor", required=True)
    p.set_defaults(func=cmd_locality)

    p = sub.add_parser("family", parents=[common], help="the [3/2(q^2-q), q^2-q-1, 3] family")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--descriptor-out", help="also write the code descriptor here")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("concat", parents=[common], help="concatenated code, outer over GF(q^r)")
    p.add_argument("--q", type=int, required=True, help="inner (prime) field order")
    p.add_argument("--r", type=int, required=True, help="extension degree of the outer field")
    p.add_argument("--outer", required=True, help="rs:N:K over GF(q^r)")
    p.add_argument("--inner", default="parity", help="parity or rs:N (dimension r) over GF(q)")
    p.set_defaults(func=cmd_concat)

    p = sub.add_parser("table1", parents=[common],
                       help="n=9 rows over GF(3)(x); curves of positive genus are not covered")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("bounds", parents=[common], help="bound calculators")
    p.add_argument("--kind", required=True, choices=("singleton", "gv", "dv", "gs", "asymptotic"))
    for name in ("n", "k", "r", "d", "q", "ell"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--delta", help="relative distance (decimal or fraction)")
    p.add_argument("--br", help="degree-r place ratio floor b_r")
    p.set_defaults(func=cmd_bounds)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as e:
        print(f"error: budget: {e}", file=sys.stderr)
        return 2
    except UsageError as e:
        print(f"error: usage: {e}", file=sys.stderr)
        return 1
    except _INPUT_ERRORS as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except (ValueError, TypeError, ZeroDivisionError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
