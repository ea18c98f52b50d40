"""Command-line front end.

Exit codes: 0 pass, 1 mathematical failure or counterexample, 2 usage or
input error, 3 resource cap.  Reports go to stdout (and ``--out``) as one
canonical JSON document; sweep progress goes to stderr as JSON lines.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import COMMANDS, ConfigError, RunConfig
from .errors import BatchPairError, CheckFailed
from .field import FieldCtx
from .reports import dumps


def _ctx(cfg: RunConfig) -> FieldCtx:
    return FieldCtx(cfg.s, cfg.modulus)


def _load(cfg: RunConfig) -> dict:
    try:
        return json.loads(Path(cfg.input).read_text())
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read {cfg.input}: {exc}") from exc


def cmd_solve(cfg: RunConfig) -> tuple[dict, int]:
    from .instance import Requests
    from .pairing import solve, verify_solution

    try:
        v = Requests.from_json(_load(cfg))
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed instance: {exc}") from exc
    sol = solve(v)
    out = {"config": cfg.to_json(), "instance": v.to_json()}
    if sol is None or not verify_solution(v, sol):
        out["result"] = "unsolvable"
        return out, 1
    out["pairs"] = sol.to_json()["pairs"]
    return out, 0


def cmd_sweep(cfg: RunConfig) -> tuple[dict, int]:
    from .pairing import SweepOptions, sweep

    def progress(done, solved):
        print(json.dumps({"done": done, "solved": solved}), file=sys.stderr, flush=True)

    opts = SweepOptions(canonical=cfg.canonical, count=False, keep_going=cfg.keep_going,
                        sample=cfg.sample, seed=cfg.seed, workers=cfg.workers)
    r = sweep(_ctx(cfg), opts, progress)
    return {"config": cfg.to_json(), "report": r.to_json()}, 0 if r.verified else 1


def _symbolic(cfg: RunConfig):
    from .fv import build_fv_symbolic, coeff_table

    ctx = _ctx(cfg)
    return ctx, coeff_table(build_fv_symbolic(ctx, prefix_all=cfg.prefix == "all"))


def cmd_coeff(cfg: RunConfig) -> tuple[dict, int]:
    from .fv import claim9_check, degree_lemma_check, dyson_parity_check

    ctx, table = _symbolic(cfg)
    out = {"config": cfg.to_json(), "coeff_table": table.to_json(),
           "support_size": len(table)}
    if cfg.prefix == "all":
        out["degree_lemma"] = degree_lemma_check(table, ctx.q)
        out["claim9"] = claim9_check(ctx)
    out["dyson_parity"] = dyson_parity_check(ctx)
    return out, 0


def cmd_decompose(cfg: RunConfig) -> tuple[dict, int]:
    from .nullsatz import corollary10_classify, lemma12_decompose

    ctx, table = _symbolic(cfg)
    k = ctx.q // 2
    omitted = table.vvars[1:] if cfg.prefix == "v1" else ()
    if cfg.target is not None:
        target = tuple(cfg.target) + (0,) * (k - len(cfg.target))
        if len(target) != k:
            raise ConfigError(f"--target has more than k={k} exponents")
        targets = [target]
    else:
        targets = table.support
    results = [lemma12_decompose(table[j], ctx, omitted_prefix=omitted) for j in targets]
    out = {
        "config": cfg.to_json(),
        "decompositions": [{"x_monomial": list(j), "h1": str(r.h1),
                            "deg_h1": r.h1.degree(), "certificate": r}
                           for j, r in zip(targets, results)],
        "corollary10": corollary10_classify(results, ctx),
    }
    return out, 0


def cmd_verify_code(cfg: RunConfig) -> tuple[dict, int]:
    from .batchcode import ServerSet, verify_code

    d = _load(cfg)
    try:
        servers = ServerSet.from_json(d)
        k = int(d.get("k", servers.ctx.q // 2))
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed server file: {exc}") from exc
    r = verify_code(servers, k, workers=cfg.workers)
    return {"config": cfg.to_json(), "report": r}, 0 if r.ok else 1


def cmd_verify_certificate(cfg: RunConfig) -> tuple[dict, int]:
    from .nullsatz import Certificate, Lemma12Result, vanishes_on_grid
    from .polyring import Poly

    d = _load(cfg)
    d = d.get("certificate", d)
    try:
        if "h1" in d:
            res = Lemma12Result(
                Poly.from_json(d["source_gj"]), Poly.from_json(d["h1"]),
                [Poly.from_json(h) for h in d["side_quotients"]], int(d["q"]),
                Poly.from_json(d["residual"]) if "residual" in d else None,
                Poly.from_json(d["compensator"]) if "compensator" in d else None,
            )
            ok = res.recompose() == res.source_gj
            if ok and res.residual is not None:
                ok = vanishes_on_grid(res.compensator * res.residual, res.source_gj.ctx)
            kind = "lemma12"
        else:
            ok = Certificate.from_json(d).verify()
            kind = "division"
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed certificate: {exc}") from exc
    return {"config": cfg.to_json(), "kind": kind, "recomposes": ok}, 0 if ok else 1


def cmd_paper_suite(cfg: RunConfig) -> tuple[dict, int]:
    from .suite import run_suite

    return run_suite(cfg)


DISPATCH = {
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "coeff": cmd_coeff,
    "decompose": cmd_decompose,
    "verify-code": cmd_verify_code,
    "paper-suite": cmd_paper_suite,
    "verify-certificate": cmd_verify_certificate,
}


def _exponents(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad exponent list {text!r}") from exc


def _int(text: str) -> int:
    return int(text, 0)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--s", type=int)
    common.add_argument("--modulus", type=_int, help="irreducible modulus, e.g. 0b10011")
    common.add_argument("--in", dest="input")
    common.add_argument("--out", dest="output")
    common.add_argument("--canonical", choices=("sorted", "linear"), default="sorted")
    common.add_argument("--term-cap", type=int)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--sample", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--keep-going", action="store_true")
    common.add_argument("--target", type=_exponents, help="x exponents, e.g. 6,6,4")
    common.add_argument("--prefix", choices=("all", "v1"), default="all",
                        help="scalar prefix of symbolic f_v: v_1...v_k or v_1 alone")
    parser = argparse.ArgumentParser(prog="batchpair", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def config_from_args(argv=None) -> RunConfig:
    a = build_parser().parse_args(argv)
    return RunConfig(a.command, a.s, a.modulus, a.input, a.output, a.canonical, a.term_cap,
                     a.workers, a.sample, a.seed, a.keep_going, a.target, a.prefix).validate()


def run(cfg: RunConfig) -> tuple[dict, int]:
    from .polyring import term_cap

    if cfg.term_cap is not None and cfg.command != "paper-suite":
        with term_cap(cfg.term_cap):
            return DISPATCH[cfg.command](cfg)
    return DISPATCH[cfg.command](cfg)


def main(argv=None) -> int:
    cfg = None
    try:
        cfg = config_from_args(argv)
        out, code = run(cfg)
    except CheckFailed as exc:
        out = {"error": type(exc).__name__, "message": str(exc), "witness": exc.witness}
        code = exc.exit_code
    except BatchPairError as exc:
        print(dumps({"error": type(exc).__name__, "message": str(exc)}), end="", file=sys.stderr)
        return exc.exit_code
    text = dumps(out)
    sys.stdout.write(text)
    if cfg is not None and cfg.output:
        Path(cfg.output).write_text(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
