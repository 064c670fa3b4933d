"""Command-line front end.

Data goes to stdout (JSON by default, TSV with --format tsv); advisories
and diagnostics go to stderr.  Exit codes: 0 success, 2 usage or
configuration problems (including --strict advisory promotion and
rejected cache files), 3 singular-weight rejection, 4 internal invariant
violation.  Output is byte-stable for identical inputs and cache state:
keys are emitted in sorted order everywhere.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import characters as ch
from . import extmult as em
from . import roots as _r
from .errors import (
    CacheFormatError,
    ConfigurationError,
    DecompositionError,
    DimensionMismatchError,
    GoodfiltError,
    InternalInvariantError,
    PreconditionError,
    SingularWeightError,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SINGULAR = 3
EXIT_INVARIANT = 4


def weight_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad weight {text!r}: {exc}") from exc


def word_arg(text: str) -> tuple[int, ...]:
    if text.strip() in ("", "e"):
        return ()
    try:
        word = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad word {text!r}: {exc}") from exc
    if any(i < 0 for i in word):
        raise argparse.ArgumentTypeError(f"bad word {text!r}: negative generator index")
    return word


def fmt_weight(w) -> str:
    return ",".join(str(c) for c in w)


def emit(data: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(data, sort_keys=True, separators=(", ", ": ")) + "\n")
    else:
        for key in sorted(data):
            value = data[key]
            if isinstance(value, dict):
                for k2 in sorted(value):
                    out.write(f"{key}.{k2}\t{value[k2]}\n")
            else:
                out.write(f"{key}\t{value}\n")


def emit_table(entries: dict, fmt: str, out) -> None:
    """Multiplicity maps: weight-coordinate string -> integer."""
    keyed = {fmt_weight(w): m for w, m in entries.items()}
    if fmt == "json":
        out.write(json.dumps(keyed, sort_keys=True, separators=(", ", ": ")) + "\n")
    else:
        out.write("omega\tmultiplicity\n")
        for key in sorted(keyed):
            out.write(f"{key}\t{keyed[key]}\n")


def report_advisories(advisories, strict: bool, err) -> int:
    """Print advisories; under --strict, condition warnings become failures.

    Entries prefixed "note:" are standing hypothesis statements and never
    fail a strict run; everything else is a violated checkable condition.
    """
    for note in advisories:
        err.write(f"advisory: {note}\n")
    hard = [a for a in advisories if not a.startswith("note:")]
    if strict and hard:
        err.write("error: advisories present and --strict given\n")
        return EXIT_CONFIG
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="goodfilt",
        description=(
            "Exact affine Kazhdan-Lusztig combinatorics: alcove locations, "
            "KL polynomials, Weyl character tensor decompositions, and "
            "good-filtration multiplicities of Frobenius-kernel Ext groups."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_p=True):
        p.add_argument("--series", required=True, help="root system series A-G")
        p.add_argument("--rank", required=True, type=int)
        if need_p:
            p.add_argument("--p", required=True, type=int, help="prime modulus")
        p.add_argument("--format", choices=("json", "tsv"), default="json")
        p.add_argument("--strict", action="store_true", help="fail on advisories")

    p_rs = sub.add_parser("rootsystem", help="print root-system data and the alcove bound")
    common(p_rs)

    p_loc = sub.add_parser("locate", help="alcove location of a weight")
    common(p_loc)
    p_loc.add_argument("--weight", required=True, type=weight_arg)

    p_kl = sub.add_parser("kl", help="Kazhdan-Lusztig polynomial of two words")
    common(p_kl, need_p=False)
    p_kl.add_argument("--x", required=True, type=word_arg, help="word, e.g. 0,1,2")
    p_kl.add_argument("--y", required=True, type=word_arg)
    p_kl.add_argument("--cache", help="JSON-lines KL table to load and update")

    p_t = sub.add_parser("tensor", help="dual Weyl tensor decomposition")
    common(p_t, need_p=False)
    p_t.add_argument("--weights", required=True, type=weight_arg, nargs="+")

    p_e = sub.add_parser("extmult", help="constituent multiplicities of an Ext group")
    common(p_e)
    p_e.add_argument("--variant", required=True, choices=em.VARIANTS)
    p_e.add_argument("--lam", required=True, type=weight_arg)
    p_e.add_argument("--mu", required=True, type=weight_arg)
    p_e.add_argument("--n", required=True, type=int)
    p_e.add_argument("--omega", type=weight_arg, action="append", default=None)
    p_e.add_argument("--cache", help="JSON-lines KL table to load and update")

    p_c = sub.add_parser(
        "check-identity",
        help="two-path consistency identity over a box of weights",
    )
    common(p_c)
    p_c.add_argument(
        "--max-pairing",
        required=True,
        type=int,
        help="bound on <mu+rho, alpha_0^vee> for the mu box",
    )
    p_c.add_argument("--tau-pad", type=int, default=2, help="tau window in alcove layers")
    p_c.add_argument("--cache", help="JSON-lines KL table to load and update")
    return parser


def _prime_checked(p: int) -> int:
    if not em._is_prime(p):
        raise ConfigurationError(f"--p must be prime, got {p}")
    return p


def _load_cache(ws, path, err):
    if path and os.path.exists(path):
        n = ws.table.load(path)
        err.write(f"cache: loaded {n} entries from {path}\n")


def _save_cache(ws, path, err):
    if path:
        ws.table.save(path)
        err.write(f"cache: saved {len(ws.table.memo)} entries to {path}\n")


def cmd_rootsystem(args, out, err) -> int:
    rs = _r.build_root_system(args.series, args.rank)
    p = _prime_checked(args.p)
    report = _r.validate_p(rs, p)
    data = {
        "series": rs.series,
        "rank": rs.rank,
        "num_positive_roots": len(rs.positive_roots),
        "coxeter_number": rs.coxeter_number,
        "rho": fmt_weight(rs.rho),
        "highest_short_root": fmt_weight(rs.highest_short_root.simple_coords),
        "highest_short_coroot": fmt_weight(rs.highest_short_root.coroot),
        "jantzen_bound": _r.jantzen_bound(rs, p),
        "positive_roots": {
            str(i): fmt_weight(root.simple_coords)
            for i, root in enumerate(rs.positive_roots)
        },
    }
    emit(data, args.format, out)
    return report_advisories(report.warnings, args.strict, err)


def cmd_locate(args, out, err) -> int:
    from .affine import get_group

    group = get_group(args.series, args.rank)
    p = _prime_checked(args.p)
    try:
        loc = group.locate(args.weight, p)
    except SingularWeightError as exc:
        emit(
            {
                "regular": False,
                "weight": fmt_weight(exc.weight),
                "vanishing_pairing": exc.pairing,
                "coroot": fmt_weight(exc.coroot),
            },
            args.format,
            out,
        )
        return EXIT_SINGULAR
    emit(
        {
            "regular": True,
            "length": loc.length,
            "word": list(group.canonical_word(loc.element)),
            "antidominant": fmt_weight(loc.antidominant_rep),
        },
        args.format,
        out,
    )
    return EXIT_OK


def cmd_kl(args, out, err) -> int:
    ws = em.make_workspace(args.series, args.rank)
    for word in (args.x, args.y):
        if any(i > ws.rs.rank for i in word):
            raise ConfigurationError(
                f"word {list(word)} uses generator index beyond rank {ws.rs.rank}"
            )
    _load_cache(ws, args.cache, err)
    x = ws.group.from_word(args.x)
    y = ws.group.from_word(args.y)
    poly = ws.table.kl(x, y)
    emit(
        {
            "x": list(ws.group.canonical_word(x)),
            "y": list(ws.group.canonical_word(y)),
            "p_of_q": list(poly.coeffs),
        },
        args.format,
        out,
    )
    _save_cache(ws, args.cache, err)
    return EXIT_OK


def cmd_tensor(args, out, err) -> int:
    rs = _r.build_root_system(args.series, args.rank)
    weights = args.weights
    if len(weights) == 1:
        entries = {tuple(weights[0]): 1}
    else:
        entries = ch.tensor_nabla_multiplicities(rs, weights[0], weights[1])
        for extra in weights[2:]:
            folded = {}
            for nu, k in entries.items():
                for omega, m in ch.tensor_nabla_multiplicities(rs, nu, extra).items():
                    folded[omega] = folded.get(omega, 0) + k * m
            entries = folded
    emit_table(entries, args.format, out)
    return EXIT_OK


def cmd_extmult(args, out, err) -> int:
    ws = em.make_workspace(args.series, args.rank)
    _load_cache(ws, args.cache, err)
    query = em.MultiplicityQuery(
        args.variant, args.lam, args.mu, args.n, _prime_checked(args.p)
    )
    table = em.multiplicity_table(ws, query, omegas=args.omega)
    emit_table(table.as_dict(), args.format, out)
    _save_cache(ws, args.cache, err)
    return report_advisories(table.advisories, args.strict, err)


def cmd_check_identity(args, out, err) -> int:
    ws = em.make_workspace(args.series, args.rank)
    p = _prime_checked(args.p)
    _load_cache(ws, args.cache, err)
    result = run_identity_box(ws, p, args.max_pairing, args.tau_pad)
    emit(
        {
            "cases": result["cases"],
            "tau_checks": result["tau_checks"],
            "failures": result["failures"],
            "message": (
                f"all {result['cases']} cases pass"
                if not result["failures"]
                else f"{len(result['failures'])} failures"
            ),
        },
        args.format,
        out,
    )
    _save_cache(ws, args.cache, err)
    return EXIT_OK if not result["failures"] else EXIT_INVARIANT


def _box_weights(rs, max_pairing):
    """Dominant weights with <w + rho, alpha_0^vee> < max_pairing."""
    cor = rs.highest_short_root.coroot
    base = sum(cor)  # <rho, alpha_0^vee> = h - 1
    out = []

    def rec(i, prefix, acc):
        if i == rs.rank:
            out.append(tuple(prefix))
            return
        c = 0
        while acc + cor[i] * c + base < max_pairing:
            rec(i + 1, prefix + [c], acc + cor[i] * c)
            c += 1

    rec(0, [], 0)
    return out


def run_identity_box(ws, p, max_pairing, tau_pad=2):
    """Run the two-path identity over every decomposable p-regular mu in a box.

    For each mu the constituents tau range over the dominant weights whose
    p-fold stretch stays within tau_pad extra alcove layers above the box.
    """
    rs = ws.rs
    alpha0 = rs.highest_short_root
    h = rs.coxeter_number
    cases = 0
    tau_checks = 0
    failures = []
    for mu in _box_weights(rs, max_pairing):
        if not ws.group.is_p_regular(mu, p):
            continue
        try:
            em.finite_weyl_shift_decompose(ws, mu, p)
        except DecompositionError:
            continue
        cases += 1
        mu_depth = sum(
            c * (v + r) for c, v, r in zip(alpha0.coroot, mu, rs.rho)
        )
        tau_bound = mu_depth + tau_pad * p * h
        for tau in _box_weights(rs, tau_bound // p + h + 2):
            stretched = tuple(p * t + r for t, r in zip(tau, rs.rho))
            if sum(c * v for c, v in zip(alpha0.coroot, stretched)) > tau_bound:
                continue
            result = em.weight_space_identity_check(ws, mu, tau, p)
            tau_checks += 1
            if not result.ok:
                failures.append(
                    {
                        "mu": fmt_weight(mu),
                        "tau": fmt_weight(tau),
                        "lhs": result.lhs,
                        "rhs": result.rhs,
                    }
                )
    return {"cases": cases, "tau_checks": tau_checks, "failures": failures}


COMMANDS = {
    "rootsystem": cmd_rootsystem,
    "locate": cmd_locate,
    "kl": cmd_kl,
    "tensor": cmd_tensor,
    "extmult": cmd_extmult,
    "check-identity": cmd_check_identity,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out, err)
    except SingularWeightError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_SINGULAR
    except (
        ConfigurationError,
        PreconditionError,
        DimensionMismatchError,
        DecompositionError,
        CacheFormatError,
    ) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except (InternalInvariantError, AssertionError) as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_INVARIANT
    except GoodfiltError as exc:  # pragma: no cover - safety net
        err.write(f"error: {exc}\n")
        return EXIT_CONFIG


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
