"""Command-line front end: ``regkit {regulator,polylog,family,check,filfmic-demo}``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .cache import Cache
from .padic import (
    ConfigurationError,
    EisNum,
    PadicDomainError,
    PrecisionError,
    is_prime,
    valuation,
)
from .serialize import dumps

EXIT_OK, EXIT_CONFIG, EXIT_UNSUPPORTED, EXIT_PRECISION, EXIT_AUDIT = 0, 2, 3, 4, 5


@dataclass
class RunConfig:
    command: str
    p: int = 7
    N: int = 10
    M: int = 40
    c: Fraction = Fraction(1)
    a: Fraction | None = None
    s: int | None = None
    cache_dir: str | None = None
    out: str | None = None
    pretty: bool = True
    use_cache: bool = True
    sign: str = "intro"
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if not is_prime(self.p) or self.p < 5:
            raise ConfigurationError(f"--p must be a prime >= 5 (got {self.p})")
        if self.M < 4:
            raise ConfigurationError("--trunc must be at least 4")
        if self.N < 2:
            raise ConfigurationError("--prec must be at least 2")
        if self.c == 0 or valuation(self.c - 1, self.p) < 1:
            raise ConfigurationError(f"--c must be a unit congruent to 1 mod {self.p} (got {self.c})")
        if self.s is not None and self.s < 2:
            raise ConfigurationError("--s must be at least 2")

    def as_dict(self) -> dict:
        d = {"command": self.command, "p": self.p, "prec": self.N, "trunc": self.M,
             "c": str(self.c), "s": self.s if self.s is not None else self.N + 2}
        if self.a is not None:
            d["a"] = str(self.a)
        if self.command == "regulator":
            d["sign_convention"] = self.sign
        d.update(self.extra)
        return d


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


Z_ALIASES = {"nu": (0, 1), "-nu": (0, -1), "nu2": (-1, -1), "-nu2": (1, 1)}


def parse_z(text: str, p: int):
    """'2', '1/3', 'nu', '-nu', 'nu2', '-nu2', or 'a,b' for a + b nu."""
    if text in Z_ALIASES:
        return EisNum(p, *Z_ALIASES[text])
    if "," in text:
        a, b = (Fraction(v) for v in text.split(","))
        return EisNum(p, a, b)
    return Fraction(text)


def _doc(cfg: RunConfig, audits, data) -> dict:
    return {
        "config": cfg.as_dict(),
        "audits": [{"name": a.name, "pass": a.passed, "detail": a.detail} for a in audits],
        "data": data,
    }


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_regulator(cfg: RunConfig) -> int:
    from .regulator import UnsupportedEvaluation, c_from_unit, regulator_output

    if cfg.a is not None:
        c = c_from_unit(cfg.a, cfg.p)
        refusal = str(UnsupportedEvaluation(
            "evaluation at a unit point is unsupported: it requires Dwork-congruence "
            "continuation of the series beyond the open unit disk"))
        cfg.c = c
        _emit(cfg, dumps(_doc(cfg, [], {"a": str(cfg.a), "c": str(c), "refusal": refusal}), cfg.pretty))
        sys.stderr.write(f"regkit: {refusal}\n")
        return EXIT_UNSUPPORTED
    cfg.validate()
    cache = Cache(cfg.cache_dir)
    key = cfg.as_dict() | {"pretty": cfg.pretty}
    text = cache.get("regulator", key) if cfg.use_cache else None
    if text is None:
        res = regulator_output(cfg.p, cfg.c, cfg.M, cfg.N, cfg.s, sign_convention=cfg.sign)
        e0 = res.E2_0
        data = {
            "sign_convention": res.sign_convention,
            "sign_conventions": {"intro": "+eps", "corollary": "-eps"},
            "E2_0": {"polylog_argument": "-nu", "s": e0.s, "delta": e0.delta,
                     "precision": e0.precision, "method": e0.method,
                     "ln2": e0.value, "value": e0.value * (-9)},
            "E1": res.E1, "E2": res.E2, "eps1": res.eps1, "eps2": res.eps2,
        }
        text = dumps(_doc(cfg, res.audits, data), cfg.pretty)
        if cfg.use_cache:
            cache.put("regulator", key, text)
    _emit(cfg, text)
    passed = all(a["pass"] for a in json.loads(text)["audits"])
    return EXIT_OK if passed else EXIT_AUDIT


def cmd_polylog(cfg: RunConfig) -> int:
    from .regulator import Audit
    from .special import polylog_closed_form_r0, polylog_eval

    cfg.validate()
    r = cfg.extra["r"]
    z = parse_z(cfg.extra["z"], cfg.p)
    s = cfg.s if cfg.s is not None else cfg.N + 2
    try:
        v = polylog_eval(r, z, cfg.p, s=s, budget=cfg.extra.get("budget"))
    except PadicDomainError as exc:
        _emit(cfg, dumps(_doc(cfg, [], {"refusal": str(exc)}), cfg.pretty))
        sys.stderr.write(f"regkit: {exc}\n")
        return EXIT_UNSUPPORTED
    audits = [Audit("stabilization margin delta <= 2", v.delta <= 2, f"delta={v.delta}")]
    data = {"r": r, "z": cfg.extra["z"], "s": v.s, "delta": v.delta, "precision": v.precision,
            "method": v.method, "value": v.value}
    if r == 0 and isinstance(z, Fraction):
        closed = polylog_closed_form_r0(z, cfg.p)
        data["closed_form"] = closed
        audits.append(Audit("matches 1/(1-z) - 1/(1-z^p)",
                            (v.value - closed).is_zero(), str(closed)))
    _emit(cfg, dumps(_doc(cfg, audits, data), cfg.pretty))
    return EXIT_OK if all(a.passed for a in audits) else EXIT_AUDIT


def cmd_family(cfg: RunConfig) -> int:
    from .checks import family_audits
    from .family import FamilyData

    cfg.validate()
    fam = FamilyData(cfg.p, cfg.c, cfg.M, cfg.N)
    audits = family_audits(cfg.p, cfg.c, cfg.M, cfg.N)
    cap = lambda s: s.truncate(cfg.M).reduce(cfg.N)  # noqa: E731
    data = {
        "F": cap(fam.F), "q": fam.tate.q.truncate(cfg.M), "tau": cap(fam.tau),
        "frobenius_hat": [[cap(e) for e in row] for row in fam.frobenius_hat],
        "frobenius_algebraic": [[cap(e) for e in row] for row in fam.frobenius_algebraic],
        "printed_q_comparison": fam.tate.printed_comparison,
    }
    _emit(cfg, dumps(_doc(cfg, audits, data), cfg.pretty))
    return EXIT_OK if all(a.passed for a in audits) else EXIT_AUDIT


def cmd_check(cfg: RunConfig) -> int:
    from . import checks

    cfg.validate()
    corrupt = cfg.extra.get("corrupt", False)
    suites = {"family": checks.family_audits(cfg.p, cfg.c, cfg.M, cfg.N, corrupt_phi=corrupt)}
    if not cfg.extra.get("family_only"):
        from .regulator import regulator_output

        suites["tate_period"] = checks.tate_audits()
        suites["filfmic"] = checks.filfmic_audits(cfg.p, cfg.M, cfg.N)
        suites["polylog"] = checks.polylog_audits(cfg.p)
        suites["curve"] = checks.curve_audits()
        suites["regulator"] = regulator_output(cfg.p, cfg.c, cfg.M, cfg.N, cfg.s).audits
    audits = []
    for suite, items in suites.items():
        for a in items:
            a.name = f"{suite}: {a.name}"
            audits.append(a)
    failing = [a.name for a in audits if not a.passed]
    _emit(cfg, dumps(_doc(cfg, audits, {"failing": failing}), cfg.pretty))
    return EXIT_OK if not failing else EXIT_AUDIT


def cmd_filfmic_demo(cfg: RunConfig) -> int:
    from .filfmic import (check_horizontality, check_transversality, make_log, make_log_matrix,
                          make_polylog, make_tate, matrix_vanishes)
    from .regulator import Audit
    from .series import FrobeniusSpec, TSeries
    from .special import tate_period

    cfg.validate()
    sigma = FrobeniusSpec(cfg.p, cfg.c)
    M, N = cfg.M, cfg.N
    objs = [make_tate(1, sigma, M), make_log(TSeries([1, -1], M), sigma, N + 2),
            make_log_matrix([[tate_period(M + 1).q]], sigma, N + 2)]
    if cfg.c == 1:
        objs.append(make_polylog(2, sigma, M, N + 2))
    audits, data = [], []
    for obj in objs:
        R = check_horizontality(obj)
        audits.append(Audit(f"{obj.name} horizontal", matrix_vanishes(R, N, obj.M - 2)))
        audits.append(Audit(f"{obj.name} transversal", check_transversality(obj)))
        data.append({"name": obj.name, "labels": obj.labels, "jumps": obj.jumps,
                     "A": [[e.truncate(M) for e in row] for row in obj.A],
                     "Phi": [[e.truncate(M).reduce(N) for e in row] for row in obj.Phi]})
    _emit(cfg, dumps(_doc(cfg, audits, data), cfg.pretty))
    return EXIT_OK if all(a.passed for a in audits) else EXIT_AUDIT


COMMANDS = {"regulator": cmd_regulator, "polylog": cmd_polylog, "family": cmd_family,
            "check": cmd_check, "filfmic-demo": cmd_filfmic_demo}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=7, help="prime p >= 5")
    common.add_argument("--prec", type=int, default=10, help="p-adic precision N")
    common.add_argument("--trunc", type=int, default=40, help="t-adic truncation M")
    common.add_argument("--c", type=_fraction, default=Fraction(1), help="Frobenius constant NUM/DEN, = 1 mod p")
    common.add_argument("--s", type=int, default=None, help="polylog limit depth (default prec + 2)")
    common.add_argument("--cache-dir", default=None, help="cache directory (overrides REGKIT_CACHE_DIR)")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    common.add_argument("--json", action="store_true", help="compact single-line JSON")
    common.add_argument("--out", default=None, help="write the JSON document here")

    parser = argparse.ArgumentParser(prog="regkit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    reg = sub.add_parser("regulator", parents=[common], help="solve for E1, E2 and the epsilons")
    reg.add_argument("--a", type=_fraction, default=None, help="unit point a: records c = a^(1-p), refuses evaluation")
    reg.add_argument("--sign", choices=["intro", "corollary"], default="intro")
    pl = sub.add_parser("polylog", parents=[common], help="evaluate ln_r^(p)(z)")
    pl.add_argument("--r", type=int, default=2)
    pl.add_argument("--z", default="-nu", help="rational, 'a,b' for a + b nu, or nu/-nu/nu2/-nu2")
    pl.add_argument("--budget", type=int, default=2_000_000, help="max terms for direct summation")
    sub.add_parser("family", parents=[common], help="family identities and Frobenius matrices")
    chk = sub.add_parser("check", parents=[common], help="run every audit suite")
    chk.add_argument("--corrupt", action="store_true", help="perturb one Frobenius entry")
    chk.add_argument("--family-only", action="store_true")
    sub.add_parser("filfmic-demo", parents=[common], help="dump the shipped Fil-F-MIC objects")
    return parser


def config_from_args(args) -> RunConfig:
    extra = {}
    if args.command == "polylog":
        extra = {"r": args.r, "z": args.z, "budget": args.budget}
    elif args.command == "check":
        extra = {"corrupt": args.corrupt, "family_only": args.family_only}
    return RunConfig(
        command=args.command, p=args.p, N=args.prec, M=args.trunc, c=args.c,
        a=getattr(args, "a", None), s=args.s, cache_dir=args.cache_dir, out=args.out,
        pretty=not args.json, use_cache=not args.no_cache, sign=getattr(args, "sign", "intro"),
        extra=extra,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    try:
        return COMMANDS[cfg.command](cfg)
    except ConfigurationError as exc:
        sys.stderr.write(f"regkit: configuration error: {exc}\n")
        return EXIT_CONFIG
    except PrecisionError as exc:
        sys.stderr.write(f"regkit: precision exhausted: {exc}\n")
        return EXIT_PRECISION
    except PadicDomainError as exc:
        sys.stderr.write(f"regkit: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
