"""
Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 I/O failure.

Settings are resolved as command-line flags, then ``ALCOVE_*`` environment
variables, then ``key = value`` lines in the config file
(``$XDG_CONFIG_HOME/alcove/config``, or ``--config``).
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import affine, dims, figures, kl, rootsys, verify
from .errors import BoundExceeded, InexactDivision, InvalidInput, VerificationFailure

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3


@dataclass
class RunConfig:
    output_format: str = "json"
    cache_dir: Path = Path.home() / ".cache" / "alcove"
    maxlen: int = 8
    seed: int = 0
    fig_width: int = 400
    fig_height: int = 400


_KEYS = {
    "format": ("output_format", str),
    "cache_dir": ("cache_dir", Path),
    "maxlen": ("maxlen", int),
    "seed": ("seed", int),
    "width": ("fig_width", int),
    "height": ("fig_height", int),
}


def default_config_path() -> Path:
    base = os.environ.get("XDG_CONFIG_HOME") or Path.home() / ".config"
    return Path(base) / "alcove" / "config"


def _read_config_file(path: Path) -> dict[str, str]:
    values = {}
    if not path.is_file():
        return values
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidInput(f"{path}:{lineno}: expected key = value")
        key, value = (x.strip() for x in line.split("=", 1))
        values[key.lower()] = value
    return values


def load_config(args: argparse.Namespace, environ=None) -> RunConfig:
    environ = os.environ if environ is None else environ
    config = getattr(args, "config", None)
    raw = _read_config_file(Path(config) if config else default_config_path())
    for key in _KEYS:
        env = environ.get(f"ALCOVE_{key.upper()}")
        if env is not None:
            raw[key] = env
        flag = getattr(args, key, None)
        if flag is not None:
            raw[key] = flag
    cfg = RunConfig()
    for key, value in raw.items():
        if key not in _KEYS:
            raise InvalidInput(f"unknown setting {key!r}")
        attr, conv = _KEYS[key]
        try:
            setattr(cfg, attr, conv(value))
        except ValueError as exc:
            raise InvalidInput(f"bad value for {key}: {value!r}") from exc
    if cfg.output_format not in ("json", "plain"):
        raise InvalidInput(f"format must be json or plain, got {cfg.output_format!r}")
    if cfg.maxlen < 0 or cfg.maxlen > kl.DEFAULT_AFFINE_BOUND:
        raise InvalidInput(f"maxlen must lie in [0, {kl.DEFAULT_AFFINE_BOUND}]")
    return cfg


def parse_weight(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InvalidInput(f"cannot parse weight {text!r}; expected comma-separated integers") from None


def parse_primes(text: str) -> list[int]:
    primes = list(parse_weight(text))
    for p in primes:
        if not affine.is_odd_prime(p) or p < 5:
            raise InvalidInput(f"p={p} must be an odd prime >= 5")
    return primes


def _shift(w, unshifted: bool):
    return tuple(x + 1 for x in w) if unshifted else w


def emit(cfg: RunConfig, obj, plain: str | None = None) -> None:
    if cfg.output_format == "plain" and plain is not None:
        print(plain)
    else:
        print(json.dumps(obj, indent=2))


# -- commands -----------------------------------------------------------------


def cmd_rootsys_info(args, cfg):
    rs = rootsys.build_root_system(*rootsys.parse_type(args.type))
    obj = {
        "type": rs.name,
        "N": rs.N,
        "h": rs.h,
        "positive_roots": [list(r) for r in rs.positive_roots],
        "cartan": [list(r) for r in rs.cartan],
    }
    emit(cfg, obj, f"{rs.name}: N={rs.N} h={rs.h}")


def cmd_weyl_dim(args, cfg):
    rs = rootsys.build_root_system(*rootsys.parse_type(args.type))
    w = _shift(parse_weight(args.weight), args.unshifted)
    value = rootsys.weyl_dim(w, rs)
    emit(cfg, value, str(value))


def cmd_b2_block(args, cfg):
    base = _shift(parse_weight(args.base), args.unshifted)
    block = dims.jantzen_b2_block(base, args.p)
    pattern = dims.solve_pattern(block)
    obj = {
        "dims": [block.dims[k] for k in dims.LABELS],
        "linked": {k: list(v) for k, v in block.linked.items()},
        "deltas": [block.deltas[k] for k in dims.LABELS],
        "pattern": [list(r) for r in pattern.matrix],
        "premet": dims.premet_check(block.dims.values(), args.p, 2),
    }
    emit(cfg, obj, " ".join(f"{k}={block.dims[k]}" for k in dims.LABELS))


def cmd_b2_min(args, cfg):
    value, where = dims.minimize_formula(dims.JANTZEN_B2["A"], args.p)
    emit(cfg, {"min": value, "weights": [list(w) for w in where]}, f"{value} at {where}")


def cmd_b2_delta(args, cfg):
    w = _shift(parse_weight(args.weight), args.unshifted)
    if len(w) != 2:
        raise InvalidInput("delta takes a B2 weight r,s")
    value = dims.delta_b2_cell(w, args.p) if args.cell else dims.delta_b2(w, args.p)
    emit(cfg, value, str(value))


def cmd_configs(args, cfg):
    rs = rootsys.build_root_system(*rootsys.parse_type(args.type))
    found = rootsys.subsystem_configurations(rs, args.target, args.max_parts, args.disjoint)
    emit(cfg, [c.labels for c in found], "\n".join(" + ".join(c.labels) for c in found))


def cmd_formula(args, cfg):
    try:
        obj = json.loads(args.json)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"formula is not valid JSON: {exc}") from exc
    f = dims.DimensionFormula.from_json(obj)
    value = dims.evaluate_formula(f, parse_weight(args.weight), args.p)
    emit(cfg, {"formula": f.to_json(), "value": value}, str(value))


def cmd_registry(args, cfg):
    recs = dims.case_registry()
    obj = [
        {
            "type": r.name, "orbit": r.orbit, "N": r.N, "d": r.d, "levi": r.levi,
            "component_group_caveat": r.component_group_caveat,
            "configurations": [list(c) for c in r.configurations],
            "notes": r.notes, "speculative": r.speculative,
        }
        for r in recs
    ]
    emit(cfg, obj, "\n".join(f"{r.name} {r.orbit}: N={r.N} d={r.d}" for r in recs))


def _group(name: str, cfg: RunConfig) -> kl.CoxeterGroup:
    group = kl.presentation(name)
    path = cfg.cache_dir / f"{group.name}.klcache"
    if path.is_file():
        kl.load_cache(group, path)
    return group


def cmd_kl(args, cfg):
    group = _group(args.presentation, cfg)
    y = group.element(kl.parse_word(args.y))
    w = group.element(kl.parse_word(args.w))
    P = kl.kl_polynomial(y, w)
    emit(cfg, {"y": str(y), "w": str(w), "P": list(P), "mu": kl.mu(y, w)}, str(P))


def cmd_kl_table(args, cfg):
    group = _group(args.presentation, cfg)
    elems = group.elements_up_to(cfg.maxlen)
    for w in elems:
        for y in elems:
            kl.kl_polynomial(y, w)
    cfg.cache_dir.mkdir(parents=True, exist_ok=True)
    path = cfg.cache_dir / f"{group.name}.klcache"
    count = kl.save_cache(group, path)
    emit(cfg, {"cache": str(path), "records": count, "maxlen": cfg.maxlen}, f"{count} records -> {path}")


def cmd_cells(args, cfg):
    group = _group(args.presentation, cfg)
    graph = kl.left_cell_graph(group, cfg.maxlen)
    emit(cfg, graph.to_json(), "\n".join(
        f"{'stable  ' if st else 'unstable'} {' '.join(str(x) for x in c)}"
        for c, st in zip(graph.components, graph.stable)
    ))


def cmd_plot(args, cfg):
    text = figures.render(args.mode, args.p, cfg.fig_width, cfg.fig_height)
    with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    emit(cfg, {"figure": args.mode, "p": args.p, "path": args.output}, args.output)


def cmd_verify(args, cfg):
    primes = parse_primes(args.p) if args.p else None
    results = verify.run_suites(args.suite, primes, cfg.maxlen, cfg.seed)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"FAILED: {failed[0].suite}: {failed[0].name}: {failed[0].detail}")
        return EXIT_VERIFY
    print(f"all {len(results)} checks passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand from resetting options given before it
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--format", choices=["json", "plain"])
    common.add_argument("--cache-dir", dest="cache_dir")
    common.add_argument("--maxlen", type=int, help="length bound for Coxeter computations")
    common.add_argument("--seed", type=int)
    common.add_argument("--width", type=int)
    common.add_argument("--height", type=int)
    common.add_argument("--config", help="key = value settings file")

    parser = argparse.ArgumentParser(prog="alcove", parents=[common], description=__doc__.split("\n")[1])
    sub = parser.add_subparsers(dest="command", required=True)

    rs_p = sub.add_parser("rootsys", parents=[common], help="root system data")
    rs_sub = rs_p.add_subparsers(dest="action", required=True)
    info = rs_sub.add_parser("info", parents=[common])
    info.add_argument("type", help="e.g. B2, E8")
    info.set_defaults(func=cmd_rootsys_info)

    wd = sub.add_parser("weyl-dim", parents=[common], help="Weyl module dimension")
    wd.add_argument("type")
    wd.add_argument("weight", help="shifted coordinates, e.g. 2,1")
    wd.add_argument("--unshifted", action="store_true", help="weight is lambda, add rho")
    wd.set_defaults(func=cmd_weyl_dim)

    b2 = sub.add_parser("b2", parents=[common], help="B2 minimal-orbit dimensions")
    b2_sub = b2.add_subparsers(dest="action", required=True)
    blk = b2_sub.add_parser("block", parents=[common])
    blk.add_argument("--p", type=int, required=True)
    blk.add_argument("--base", required=True, help="lowest-alcove shifted weight r,s")
    blk.add_argument("--unshifted", action="store_true")
    blk.set_defaults(func=cmd_b2_block)
    mn = b2_sub.add_parser("min", parents=[common])
    mn.add_argument("--p", type=int, required=True)
    mn.set_defaults(func=cmd_b2_min)
    de = b2_sub.add_parser("delta", parents=[common])
    de.add_argument("--p", type=int, required=True)
    de.add_argument("--weight", required=True)
    de.add_argument("--cell", action="store_true", help="use the translated delta")
    de.add_argument("--unshifted", action="store_true")
    de.set_defaults(func=cmd_b2_delta)

    cf = sub.add_parser("configs", parents=[common], help="extended-Dynkin subsystem configurations")
    cf.add_argument("type")
    cf.add_argument("--target", type=int, required=True)
    cf.add_argument("--max-parts", dest="max_parts", type=int, default=2)
    cf.add_argument("--disjoint", action="store_true", help="parts must be mutually orthogonal")
    cf.set_defaults(func=cmd_configs)

    fo = sub.add_parser("formula", parents=[common], help="evaluate a JSON dimension formula")
    fo.add_argument("json")
    fo.add_argument("--weight", required=True)
    fo.add_argument("--p", type=int, required=True)
    fo.set_defaults(func=cmd_formula)

    rg = sub.add_parser("registry", parents=[common], help="list orbit case records")
    rg.set_defaults(func=cmd_registry)

    k = sub.add_parser("kl", parents=[common], help="Kazhdan-Lusztig polynomial P_{y,w}")
    k.add_argument("presentation", help="finB2, affB2, ...")
    k.add_argument("--y", required=True, help="word like 1-2-1 or e")
    k.add_argument("--w", required=True)
    k.set_defaults(func=cmd_kl)

    kt = sub.add_parser("kl-table", parents=[common], help="fill and save the KL cache up to --maxlen")
    kt.add_argument("presentation")
    kt.set_defaults(func=cmd_kl_table)

    ce = sub.add_parser("cells", parents=[common], help="length-truncated left cells")
    ce.add_argument("presentation")
    ce.set_defaults(func=cmd_cells)

    pl = sub.add_parser("plot", parents=[common], help="SVG alcove figures for B2")
    pl.add_argument("mode", choices=["fig1", "fig2"])
    pl.add_argument("--p", type=int, required=True)
    pl.add_argument("-o", "--output", required=True)
    pl.set_defaults(func=cmd_plot)

    ve = sub.add_parser("verify", parents=[common], help="run self-check suites")
    ve.add_argument("suite", nargs="+", help=f"one or more of {', '.join(verify.SUITES)}, or all")
    ve.add_argument("--p", default=None, help="comma-separated primes")
    ve.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = load_config(args)
        rc = args.func(args, cfg)
        return rc or EXIT_OK
    except (InvalidInput, BoundExceeded, InexactDivision) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
