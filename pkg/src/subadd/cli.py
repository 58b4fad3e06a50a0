"""Command line: verify suites, reconstruct P^(r-1), dump canonical JSON."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .geometry import reconstruct_proj
from .modrep import free_module, omega, trivial_module
from .pipoints import PiPoint, PiPointError, count_projective_points
from .serialize import canonical_dumps, digest
from .suites import RUNNERS, SUITES, ConfigError, ExperimentConfig

CONFIG_ENV = "SUBADD_CONFIG"

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _parse_value(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text.strip()


def load_config_file(path):
    """JSON object, or one `key = value` per line (values parsed as JSON when possible)."""
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = {}
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"bad config line: {line!r}")
            key, value = line.split("=", 1)
            data[key.strip().replace("-", "_")] = _parse_value(value)
    if not isinstance(data, dict):
        raise ConfigError("config file must hold an object")
    return data


def _int_list(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _window(text):
    lo, hi = (int(x) for x in text.split(","))
    return [lo, hi]


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help=f"config file (default: ${CONFIG_ENV})")
    common.add_argument("--p", type=int)
    common.add_argument("--r", type=int)
    common.add_argument("--base-degree", type=int, dest="base_degree")
    common.add_argument("--ext", type=_int_list, help="extension degrees, e.g. 1,2")
    common.add_argument("--seed", type=int)
    common.add_argument("--corpus-size", type=int, dest="corpus_size")
    common.add_argument("--max-dim", type=int, dest="max_dim")
    common.add_argument("--window", type=_window, help="Tate window lo,hi")
    common.add_argument("--tate-window", type=_window, dest="tate_window")
    common.add_argument("--rgap", type=int)
    common.add_argument("--sumcap", type=int)
    common.add_argument("--bcr-pairs", type=int, dest="bcr_pairs")
    common.add_argument("--out")
    common.add_argument("--format", choices=["json", "tsv"])

    parser = argparse.ArgumentParser(prog="subadd", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("suite", choices=SUITES)
    sub.add_parser("reconstruct", parents=[common])
    d = sub.add_parser("dump", parents=[common])
    d.add_argument("object", choices=["corpus", "module", "pipoint"])
    d.add_argument("--name", default="k", help="module: k, kE or omega:N")
    d.add_argument("--lambda", dest="lam", default="1,0", help="pi-point coordinates as field codes")
    return parser


_FLAG_KEYS = ("p", "r", "base_degree", "ext", "seed", "corpus_size", "max_dim", "window",
              "tate_window", "rgap", "sumcap", "bcr_pairs", "out", "format")


def resolve_config(args) -> ExperimentConfig:
    path = args.config or os.environ.get(CONFIG_ENV)
    data = load_config_file(path) if path else {}
    for key in _FLAG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    return ExperimentConfig.from_dict(data)


def _report(command, cfg, corpus_fp, assertions, started, **extra):
    assertions = sorted(assertions, key=lambda a: a["name"])
    rep = {
        "tool": "subadd",
        "version": __version__,
        "command": command,
        "config": cfg.to_json(),
        "corpus_fingerprint": corpus_fp,
        "assertions": assertions,
        "pass": all(a["pass"] for a in assertions),
    }
    rep.update(extra)
    rep["digest"] = digest(rep)
    rep["timing"] = {"seconds": round(time.perf_counter() - started, 3)}
    return rep


def _tsv(rep):
    lines = ["name\tpass\tdetail"]
    for a in rep["assertions"]:
        detail = {k: v for k, v in a.items() if k not in ("name", "pass")}
        lines.append(f"{a['name']}\t{int(a['pass'])}\t{canonical_dumps(detail)}")
    return "\n".join(lines) + "\n"


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_report(rep, cfg):
    text = _tsv(rep) if cfg.format == "tsv" else canonical_dumps(rep) + "\n"
    _emit(text, cfg.out)


def cmd_verify(cfg, suite):
    started = time.perf_counter()
    corpus = cfg.corpus()
    assertions = RUNNERS[suite](cfg, corpus)
    return _report(f"verify {suite}", cfg, corpus.fingerprint, assertions, started)


def cmd_reconstruct(cfg):
    """One reconstruction per extension degree; the base field is K unless base_degree is set."""
    started = time.perf_counter()
    runs, assertions, fps = [], [], []
    for K in cfg.extensions:
        base = cfg.base if cfg.base_degree else K
        rep = reconstruct_proj(cfg.group, base, K, cfg.seed, cfg.corpus_size, cfg.sumcap)
        expected = rep["expected_classes"]
        if base == K:
            expected = count_projective_points(cfg.r, K.q)
        runs.append({"K": K.to_json(), "classes": rep["join_irreducible_classes"], "expected": expected,
                     "poset": rep["poset"], "corpus_fingerprint": rep["corpus_fingerprint"]})
        fps.append(rep["corpus_fingerprint"])
        for a in rep["assertions"]:
            a = dict(a)
            a["name"] = f"{a['name']}[GF({K.q})]"
            assertions.append(a)
        assertions.append({"name": f"class_count[GF({K.q})]",
                           "pass": rep["join_irreducible_classes"] == expected,
                           "classes": rep["join_irreducible_classes"], "expected": expected})
    return _report("reconstruct", cfg, digest(fps), assertions, started, runs=runs)


def cmd_dump(cfg, obj, name="k", lam="1,0"):
    group, base = cfg.group, cfg.base
    if obj == "corpus":
        return cfg.corpus().to_json()
    if obj == "module":
        if name == "k":
            M = trivial_module(group, base)
        elif name == "kE":
            M = free_module(group, base)
        elif name.startswith("omega:"):
            M = omega(trivial_module(group, base), int(name.split(":", 1)[1]))
        else:
            raise ConfigError(f"unknown module name {name!r}")
        return M.to_json()
    K = cfg.extensions[0]
    alpha = PiPoint(group, K, _int_list(lam), base=base)
    d = alpha.to_json()
    d["point"] = alpha.point.to_json()
    return d


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command == "dump":
            _emit(canonical_dumps(cmd_dump(cfg, args.object, args.name, args.lam)) + "\n", cfg.out)
            return EXIT_OK
    except (ConfigError, PiPointError, OSError) as exc:
        print(f"subadd: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    rep = cmd_verify(cfg, args.suite) if args.command == "verify" else cmd_reconstruct(cfg)
    try:
        _write_report(rep, cfg)
    except OSError as exc:
        print(f"subadd: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK if rep["pass"] else EXIT_FAIL

if __name__ == "__main__":
    sys.exit(main())
