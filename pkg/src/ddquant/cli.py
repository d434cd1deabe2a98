"""Command-line interface.

Exit codes follow one contract across commands:

    0  success; for validators, the instance is valid
    1  a definite negative: invalid instance, not divisible, certificate found
    2  inconclusive, or any input/parse error

Outputs are deterministic: staircases print in canonical form, reports are
JSON with sorted keys, CSV rows are emitted in a fixed order.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .axis import format_scalar
from .diagonals import is_divisible_by
from .enclosure import certify_not_divisible
from .errors import DdqError
from .expressions import LinearNode, evaluate, parse_expression
from .finiteq import (
    check_downset_equality,
    load_quantale,
    validate_quantale,
    verify_quantaloid_laws,
)
from .metrics import (
    ParMetInstance,
    load_instance,
    validate_met,
    validate_parmet,
    validate_probmet,
    validate_probparmet,
)
from .quantale import residual
from .staircase import Staircase
from .tnorms import parse_tnorm


@dataclass(frozen=True)
class RunConfig:
    command: str
    tnorm: str = "min"
    inputs: tuple[str, ...] = ()
    resolution: int = 16
    output: str | None = None
    seed: int = 0
    kind: str | None = None
    xi: str | None = None
    phi: str | None = None

    def __post_init__(self):
        if self.resolution < 1:
            raise ValueError("resolution must be at least 1")


def _out_stream(cfg: RunConfig):
    if cfg.output is None:
        return sys.stdout, False
    return open(cfg.output, "w"), True


def _eval_staircase(text: str, tnorm) -> Staircase:
    return evaluate(parse_expression(text), tnorm)


def cmd_eval(cfg: RunConfig) -> int:
    t = parse_tnorm(cfg.tnorm)
    result = _eval_staircase(cfg.inputs[0], t)
    print(result)
    return 0


def cmd_diag(cfg: RunConfig) -> int:
    t = parse_tnorm(cfg.tnorm)
    xi = _eval_staircase(cfg.xi, t)
    phi = _eval_staircase(cfg.phi, t)
    fixed = residual(t, xi, phi)
    verdict = is_divisible_by(t, xi, phi)
    print("divisible" if verdict else "not divisible")
    print(f"residual {fixed}")
    return 0 if verdict else 1


_VALIDATORS = {
    "met": validate_met,
    "parmet": validate_parmet,
    "probmet": validate_probmet,
    "probparmet": validate_probparmet,
}


def cmd_validate(cfg: RunConfig) -> int:
    m = load_instance(cfg.inputs[0])
    kind = cfg.kind
    if kind is None:
        kind = "parmet" if isinstance(m, ParMetInstance) else "probparmet"
    validator = _VALIDATORS[kind]
    if (kind in ("met", "parmet")) != isinstance(m, ParMetInstance):
        raise ValueError(
            f"{kind} validation needs a "
            f"{'numeric' if kind in ('met', 'parmet') else 'staircase'} instance"
        )
    report = validator(m)
    print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    return 0 if report.ok else 1


def cmd_certify(cfg: RunConfig) -> int:
    t = parse_tnorm(cfg.tnorm)
    phi_node = parse_expression(cfg.phi)
    if not isinstance(phi_node, LinearNode):
        raise ValueError("certify expects --phi to be a linear[...] map")
    xi = _eval_staircase(cfg.xi, t)
    cert = certify_not_divisible(t, phi_node.value, xi, cfg.resolution)
    if cert is None:
        print("inconclusive")
        return 2
    print("not divisible")
    print(f"witness {format_scalar(cert.witness)}")
    print(f"gap {format_scalar(cert.gap)}")
    return 1


def cmd_quantale_check(cfg: RunConfig) -> int:
    q = load_quantale(cfg.inputs[0])
    base = validate_quantale(q)
    if not base.ok:
        print(json.dumps({"valid": False, "problems": list(base.problems)},
                         indent=2, sort_keys=True))
        return 1
    laws = verify_quantaloid_laws(q)
    down = check_downset_equality(q)
    payload = {
        "valid": True,
        "quantaloid_ok": laws.ok,
        "quantaloid_violations": list(laws.violations),
        "hom_join_gaps": list(laws.join_gaps),
        "divisible": down.divisible,
        "downsets_equal": down.equal_everywhere,
        "mismatched_pairs": [list(p) for p in down.mismatched_pairs],
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0 if laws.ok else 1


def cmd_export_samples(cfg: RunConfig) -> int:
    t = parse_tnorm(cfg.tnorm)
    sc = _eval_staircase(cfg.inputs[0], t)
    jumps = list(sc.jumps)
    hi = jumps[-1] if jumps else Fraction(1)
    if hi == 0:
        hi = Fraction(1)
    grid = {Fraction(k) * hi / cfg.resolution for k in range(cfg.resolution + 1)}
    grid.update(jumps)
    # midpoints expose the open cell between consecutive jumps
    grid.update(
        (a + b) / 2 for a, b in zip(jumps, jumps[1:])
    )
    if jumps:
        grid.add(jumps[-1] + 1)
    stream, owned = _out_stream(cfg)
    try:
        stream.write("t,value\n")
        for t_ in sorted(grid):
            stream.write(f"{format_scalar(t_)},{format_scalar(sc(t_))}\n")
        stream.write(f"inf,{format_scalar(sc.last_level)}\n")
    finally:
        if owned:
            stream.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddquant",
        description="exact computation with staircase distance distributions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, tnorm=True):
        if tnorm:
            p.add_argument("--tnorm", default="min",
                           help="min, prod, luk, or ordinal[(lo,hi,kind),...]")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized sub-runs (reserved)")

    p = sub.add_parser("eval", help="print the canonical form of an expression")
    add_common(p)
    p.add_argument("expr")

    p = sub.add_parser("diag", help="decide whether xi is divisible by phi")
    add_common(p)
    p.add_argument("--xi", required=True, help="expression for the candidate diagonal")
    p.add_argument("--phi", required=True, help="expression for the divisor")

    p = sub.add_parser("validate", help="validate an instance file")
    add_common(p, tnorm=False)
    p.add_argument("--kind", choices=sorted(_VALIDATORS),
                   help="force a validator; default picks parmet or probparmet "
                        "from the file contents")
    p.add_argument("path")

    p = sub.add_parser("certify",
                       help="certify non-divisibility through an enclosure")
    add_common(p)
    p.add_argument("--xi", required=True)
    p.add_argument("--phi", required=True, help="linear[...] map to bracket")
    p.add_argument("--resolution", type=int, default=128,
                   help="cells per bracketing segment")

    p = sub.add_parser("quantale-check",
                       help="exhaustively check a finite quantale table")
    add_common(p, tnorm=False)
    p.add_argument("path")

    p = sub.add_parser("export-samples", help="sample an expression to CSV")
    add_common(p)
    p.add_argument("--grid", type=int, default=16, dest="resolution",
                   help="uniform grid resolution on top of the breakpoints")
    p.add_argument("-o", "--output", help="write CSV here instead of stdout")
    p.add_argument("expr")

    return parser


_DISPATCH = {
    "eval": cmd_eval,
    "diag": cmd_diag,
    "validate": cmd_validate,
    "certify": cmd_certify,
    "quantale-check": cmd_quantale_check,
    "export-samples": cmd_export_samples,
}


def _to_config(ns: argparse.Namespace) -> RunConfig:
    inputs = []
    for attr in ("expr", "path"):
        value = getattr(ns, attr, None)
        if value is not None:
            inputs.append(value)
    return RunConfig(
        command=ns.command,
        tnorm=getattr(ns, "tnorm", "min"),
        inputs=tuple(inputs),
        resolution=getattr(ns, "resolution", 16),
        output=getattr(ns, "output", None),
        seed=getattr(ns, "seed", 0),
        kind=getattr(ns, "kind", None),
        xi=getattr(ns, "xi", None),
        phi=getattr(ns, "phi", None),
    )


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = _to_config(ns)
        return _DISPATCH[ns.command](cfg)
    except (DdqError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
