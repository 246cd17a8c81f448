"""Command line front end.

Exit codes: 0 success, 2 invalid input, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .coxeter import CartanError, CartanMatrix, InfiniteTypeError, WeylGroup, cartan_matrix
from .kk import (
    KKIndex,
    kk_character_demazure,
    kk_character_paths,
    kk_decompose,
    kk_path_set,
    kk_weyl,
    decompose_character,
)
from .tableaux import (
    Partition,
    Permutation,
    SSYT,
    kk_decompose_tableaux,
    refined_lr_coefficient,
    sn_deodhar_min,
    sn_deodhar_recipe,
    ssyt_key_permutation,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INVARIANT = 3


class InputError(ValueError):
    pass


class InvariantError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Parsing helpers


def parse_int_list(text: str, option: str) -> tuple:
    """Comma separated integers; errors name the offending position."""
    out = []
    pos = 0
    for token in text.split(","):
        stripped = token.strip()
        try:
            out.append(int(stripped))
        except ValueError:
            raise InputError(f"{option}: {text!r}: column {pos + 1}: expected an integer, got {stripped!r}") from None
        pos += len(token) + 1
    return tuple(out)


def parse_weight(text: str, option: str, group: WeylGroup) -> tuple:
    """Fundamental coordinates "2,1", or (type A) a partition "3+1"."""
    if "+" in text or (group.is_type_A() and text.strip().isdigit() and group.rank > 1):
        if not group.is_type_A():
            raise InputError(f"{option}: partitions are only accepted in type A")
        try:
            nu = Partition(int(t) for t in text.split("+"))
        except ValueError as err:
            raise InputError(f"{option}: {text!r}: {err}") from None
        d = group.rank + 1
        if len(nu) >= d:
            raise InputError(f"{option}: {text!r}: a partition for sl_{d} needs fewer than {d} parts")
        return nu.to_weight(d)
    weight = parse_int_list(text, option)
    if len(weight) != group.rank:
        raise InputError(f"{option}: {text!r}: expected {group.rank} coordinates, got {len(weight)}")
    if any(x < 0 for x in weight):
        k = next(j for j, x in enumerate(weight) if x < 0)
        raise InputError(f"{option}: {text!r}: coordinate {k + 1} is negative; a dominant weight is required")
    return weight


def parse_group_element(text: str, option: str, group: WeylGroup):
    try:
        return group.parse(text)
    except ValueError as err:
        raise InputError(f"{option}: {err}") from None


def parse_permutation(text: str, option: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except ValueError as err:
        raise InputError(f"{option}: {err}") from None


def parse_partition(text: str, option: str) -> Partition:
    text = text.strip()
    if text in ("", "0"):
        return Partition()
    try:
        if "+" in text:
            return Partition(int(t) for t in text.split("+"))
        return Partition(parse_int_list(text, option))
    except ValueError as err:
        raise InputError(f"{option}: {text!r}: {err}") from None


def load_group(args) -> WeylGroup:
    try:
        if args.cartan:
            try:
                with open(args.cartan) as fh:
                    data = json.load(fh)
            except OSError as err:
                raise InputError(f"--cartan: cannot read {args.cartan}: {err.strerror}") from None
            except json.JSONDecodeError as err:
                raise InputError(f"--cartan: {args.cartan}: line {err.lineno}, column {err.colno}: {err.msg}") from None
            matrix = data["cartan"] if isinstance(data, dict) else data
            return WeylGroup(CartanMatrix(matrix))
        return WeylGroup(cartan_matrix(args.type))
    except (CartanError, InfiniteTypeError) as err:
        raise InputError(str(err)) from None
    except (KeyError, TypeError, ValueError) as err:
        raise InputError(f"--cartan: malformed matrix: {err}") from None


# ---------------------------------------------------------------------------
# Output


def weight_str(w) -> str:
    return ",".join(map(str, w))


def emit(fmt: str, payload: dict, rows: list, pretty: list) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True)
    if fmt == "tsv":
        return "\n".join("\t".join(str(x) for x in row) for row in rows)
    return "\n".join(pretty)


def decomposition_output(fmt: str, command: str, meta: dict, dec) -> str:
    items = dec.sorted_items()
    payload = dict(meta, command=command, summands=[{"weight": list(w), "mult": m} for w, m in items])
    rows = [[weight_str(w), m] for w, m in items]
    pretty = [f"V({weight_str(w)})" + (f" x{m}" if m > 1 else "") for w, m in items]
    pretty.append(f"# {sum(m for _, m in items)} summands")
    return emit(fmt, payload, rows, pretty)


# ---------------------------------------------------------------------------
# Commands


def _kk_index(args, group) -> KKIndex:
    lam = parse_weight(args.lam, "--lambda", group)
    mu = parse_weight(args.mu, "--mu", group)
    w = parse_group_element(args.w, "--w", group)
    return KKIndex(lam, w, mu)


def cmd_decompose(args) -> str:
    group = load_group(args)
    idx = _kk_index(args, group)
    dec = kk_decompose(idx)
    if args.check:
        other = decompose_character(group, kk_character_demazure(group, idx.lam, idx.w, idx.mu))
        if dict(other) != dict(dec):
            raise InvariantError("path decomposition disagrees with the Demazure character")
    meta = {"lambda": list(idx.lam), "mu": list(idx.mu), "w": list(idx.w.reduced_word())}
    return decomposition_output(args.format, "decompose", meta, dec)


def cmd_character(args) -> str:
    group = load_group(args)
    idx = _kk_index(args, group)
    if args.route == "demazure":
        ch = kk_character_demazure(group, idx.lam, idx.w, idx.mu)
    else:
        ch = kk_character_paths(idx)
    items = sorted(ch.items())
    payload = {
        "command": "character",
        "lambda": list(idx.lam),
        "mu": list(idx.mu),
        "w": list(idx.w.reduced_word()),
        "terms": [{"weight": list(w), "mult": m} for w, m in items],
    }
    rows = [[weight_str(w), m] for w, m in items]
    pretty = [f"{m} e({weight_str(w)})" for w, m in items]
    pretty.append(f"# dimension {sum(m for _, m in items)}")
    return emit(args.format, payload, rows, pretty)


def cmd_kk_set(args) -> str:
    group = load_group(args)
    idx = _kk_index(args, group)
    pairs = kk_path_set(idx)
    entries = []
    for p, q in pairs:
        entries.append({
            "first": p.to_json(),
            "second": q.to_json(),
            "endpoint": [int(a + b) for a, b in zip(p.endpoint, q.endpoint)],
            "w": list(kk_weyl(p, q).reduced_word()),
        })
    entries.sort(key=lambda e: (e["endpoint"], e["first"], e["second"]))
    payload = {"command": "kk-set", "lambda": list(idx.lam), "mu": list(idx.mu),
               "w": list(idx.w.reduced_word()), "paths": entries}

    def verts(v):
        return " ".join("(" + ",".join(x) + ")" for x in v)

    rows = [[weight_str(e["endpoint"]), weight_str(e["w"]) or "e", verts(e["first"]), verts(e["second"])] for e in entries]
    pretty = [f"{verts(e['first'])} * {verts(e['second'])}  end {weight_str(e['endpoint'])}  w {weight_str(e['w']) or 'e'}" for e in entries]
    pretty.append(f"# {len(entries)} concatenations")
    return emit(args.format, payload, rows, pretty)


def cmd_refined_lr(args) -> str:
    lam = parse_partition(args.lam, "--lambda")
    mu = parse_partition(args.mu, "--mu")
    w = parse_permutation(args.w, "--w")
    d = args.d if args.d is not None else len(w)
    if len(w) > d:
        raise InputError(f"--w: {args.w!r} is a permutation of {len(w)} letters, more than d = {d}")
    if args.nu is not None:
        nu = parse_partition(args.nu, "--nu")
        c = refined_lr_coefficient(lam, mu, nu, w, d)
        payload = {"command": "refined-lr", "lambda": list(lam), "mu": list(mu), "nu": list(nu), "w": str(w), "d": d, "coefficient": c}
        return emit(args.format, payload, [[str(nu), c]], [str(c)])
    dec = kk_decompose_tableaux(lam, mu, w, d, gl=True)
    items = dec.sorted_items()
    payload = {"command": "refined-lr", "lambda": list(lam), "mu": list(mu), "w": str(w), "d": d,
               "coefficients": [{"nu": list(nu), "coefficient": c} for nu, c in items]}
    rows = [[str(Partition(nu)), c] for nu, c in items]
    pretty = [f"c^{Partition(nu)} = {c}" for nu, c in items]
    return emit(args.format, payload, rows, pretty)


def cmd_key(args) -> str:
    try:
        S = SSYT.parse(args.ssyt)
    except (ValueError, json.JSONDecodeError) as err:
        raise InputError(f"--ssyt: {err}") from None
    u = ssyt_key_permutation(S)
    if args.d is not None:
        if S.max_entry() > args.d:
            raise InputError(f"--d: entries of the tableau exceed {args.d}")
        u = u.embed(args.d)
    payload = {"command": "key", "ssyt": S.to_json(), "key": str(u)}
    return emit(args.format, payload, [[str(u)]], [str(u)])


def cmd_deodhar_min(args) -> str:
    sigma = parse_permutation(args.sigma, "--sigma")
    w = parse_permutation(args.w, "--w")
    n = args.n if args.n is not None else len(sigma)
    if len(sigma) != n or len(w) != n:
        raise InputError(f"--n: sigma and w must be permutations of {n} letters")
    try:
        tau = sn_deodhar_recipe(sigma, args.r, w)
    except ValueError as err:
        raise InputError(str(err)) from None
    if n <= 7:
        check = sn_deodhar_min(sigma, args.r, w)
        if check != tau:
            raise InvariantError(f"recipe gives {tau}, the group computation gives {check}")
    payload = {"command": "deodhar-min", "n": n, "r": args.r, "sigma": str(sigma), "w": str(w), "result": str(tau)}
    return emit(args.format, payload, [[str(tau)]], [str(tau)])


def cmd_verify(args) -> str:
    from .verify import run_suites

    results = run_suites(args.suite, args.max_rank, args.max_coord, threads=args.threads)
    failed = [r for r in results if r["failures"]]
    payload = {"command": "verify", "suites": results, "ok": not failed}
    rows = [[r["suite"], r["checked"], len(r["failures"])] for r in results]
    pretty = [f"{'PASS' if not r['failures'] else 'FAIL'} {r['suite']}: {r['checked']} checks" for r in results]
    for r in failed:
        pretty.extend(f"  {r['suite']}: {msg}" for msg in r["failures"][:5])
    text = emit(args.format, payload, rows, pretty)
    if failed:
        raise InvariantError(text)
    return text


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kkpaths", description="Kostant-Kumar modules through LS paths.")
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--type", default="A2", help="built-in root system (A1..A5, B2, B3, C3, G2)")
    src.add_argument("--cartan", help="JSON file holding a Cartan matrix")
    common.add_argument("--format", choices=("pretty", "json", "tsv"), default="pretty")
    common.add_argument("--threads", type=int, default=1)
    sub = parser.add_subparsers(dest="command", required=True)

    def kk_args(p):
        p.add_argument("--lambda", dest="lam", required=True, help="dominant weight, e.g. 2,0 or (type A) 2+1")
        p.add_argument("--mu", required=True)
        p.add_argument("--w", required=True, help="reduced word 1,2,1, 'e', or one-line permutation in type A")

    p = sub.add_parser("decompose", parents=[common], help="irreducible summands of K(lambda, w, mu)")
    kk_args(p)
    p.add_argument("--check", action="store_true", help="cross-check against the Demazure character")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("character", parents=[common], help="character of K(lambda, w, mu)")
    kk_args(p)
    p.add_argument("--route", choices=("paths", "demazure"), default="paths")
    p.set_defaults(func=cmd_character)

    p = sub.add_parser("kk-set", parents=[common], help="concatenations pi * pi' with w(pi * pi') <= w")
    kk_args(p)
    p.set_defaults(func=cmd_kk_set)

    p = sub.add_parser("refined-lr", parents=[common], help="refined Littlewood-Richardson coefficients")
    p.add_argument("--lambda", dest="lam", required=True, help="partition, e.g. 2+1")
    p.add_argument("--mu", required=True)
    p.add_argument("--nu")
    p.add_argument("--w", required=True, help="permutation in one-line notation")
    p.add_argument("--d", type=int)
    p.set_defaults(func=cmd_refined_lr)

    p = sub.add_parser("key", parents=[common], help="key permutation of a semistandard tableau")
    p.add_argument("--ssyt", required=True, help='rows as JSON, e.g. "[[1,3,6,8],[2,4],[7]]"')
    p.add_argument("--d", type=int, help="embed the result into S_d")
    p.set_defaults(func=cmd_key)

    p = sub.add_parser("deodhar-min", parents=[common], help="min{v in sigma W_r : v >= w} in S_n")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--sigma", required=True)
    p.add_argument("--w", required=True)
    p.set_defaults(func=cmd_deodhar_min)

    p = sub.add_parser("verify", parents=[common], help="run the built-in invariant suites")
    p.add_argument("--suite", default="all")
    p.add_argument("--max-rank", type=int, default=3)
    p.add_argument("--max-coord", type=int, default=2)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        text = args.func(args)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as err:
        print(f"invariant violation: {err}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    if text:
        print(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
