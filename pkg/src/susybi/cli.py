"""Command-line front end: ``susybi {build,verify,example,partition}``.

Exit codes: 0 all checks pass, 1 a verification failed (report still
written), 2 usage or configuration error.
"""

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import examples as ex
from .builder import (
    BiorthogonalSystem,
    DualPolynomial,
    Eigenfunction,
    Inhomogeneity,
    SectorPair,
    Superpotential,
    build_dual_polynomials,
    build_eigenfunction,
    build_inhomogeneity,
    build_system,
    potential_series,
)
from .errors import DegenerateParameterError, RingMismatchError, UndeterminedCoefficientError
from .partition import discontinuity_report, partition_z, z_zero
from .series import (
    EXACT,
    FLOAT,
    MINUS,
    PLUS,
    RATIONAL,
    RINGS,
    boundary_values,
    format_coefficient,
    parse_coefficient,
    set_float_precision,
    to_float_ring,
)
from .verify import run_all

MODELS = ("morse", "singular", "bessel")
TRUNC_GUARD = 2


_NEGATIVE_VALUE = re.compile(r"^-\d")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    model: str = None
    upsilon: tuple = None
    nu: Fraction = Fraction(0)
    N: int = 4
    J: int = 8
    K: int = None
    ring: str = RATIONAL
    fmt: str = "json"
    output: str = None
    window: int = None


def parse_rational(text, what="value"):
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError, AttributeError):
        raise ConfigError(f"malformed rational for {what}: {text!r} (expected p/q)") from None
    return value


def parse_rational_list(text):
    items = [t for t in text.split(",") if t.strip()]
    if not items:
        raise ConfigError("--upsilon needs at least one coefficient")
    return tuple(parse_rational(t, "upsilon") for t in items)


def resolve_superpotential(config):
    """Superpotential for a named model or inline coefficients, in the requested ring."""
    if config.upsilon is not None:
        if config.K is not None:
            raise ConfigError("--K applies to the truncated models (singular, bessel) only")
        U = Superpotential(config.upsilon)
    elif config.model == "morse" or config.model is None:
        if config.K is not None:
            raise ConfigError("--K applies to the truncated models (singular, bessel) only")
        U = Superpotential.morse()
    else:
        K = config.K if config.K is not None else config.N + config.J + TRUNC_GUARD
        if K < 1:
            raise ConfigError("--K must be positive")
        if config.model == "singular":
            U = Superpotential.singular(K)
        elif config.model == "bessel":
            U = ex.bessel_superpotential(max(K, 2))[0]
        else:
            raise ConfigError(f"unknown model {config.model!r}; choose from {', '.join(MODELS)}")
    if config.ring == FLOAT:
        U = Superpotential(tuple(to_float_ring(v) for v in U.upsilon), U.exact, FLOAT)
    return U


def resolve_nu(config):
    return to_float_ring(config.nu) if config.ring == FLOAT else config.nu


# -- serialization -----------------------------------------------------------


def _fmt(values):
    return [format_coefficient(v) for v in values]


def system_to_dict(system):
    levels = []
    for n in range(system.N + 1):
        lam = system.lam[n]
        levels.append({
            "n": n,
            "chi": {"plus": _fmt(system.chi[n].plus.c), "minus": _fmt(system.chi[n].minus.c)},
            "lambda": {
                "plus": _fmt(lam.plus.lam),
                "minus": _fmt(lam.minus.lam),
                "trunc_order": "exact" if lam.plus.trunc_order == EXACT else lam.plus.trunc_order,
            },
            "psi": {"plus": _fmt(system.psi[n].plus.a), "minus": _fmt(system.psi[n].minus.a),
                    "depth": system.J},
        })
    return {
        "nu": format_coefficient(system.nu),
        "upsilon": _fmt(system.U.upsilon),
        "levels": levels,
        "meta": {
            "K": system.U.K,
            "U_exact": system.U.exact,
            "N": system.N,
            "J": system.J,
            "ring": system.ring,
            "trunc_policy": "pessimistic",
        },
    }


def system_from_dict(doc):
    """Inverse of :func:`system_to_dict`."""
    meta = doc["meta"]
    ring = meta.get("ring", RATIONAL)

    def parse(values):
        return tuple(parse_coefficient(v, ring) for v in values)

    U = Superpotential(parse(doc["upsilon"]), meta.get("U_exact", True), ring)
    chi, lam, psi = [], [], []
    for level in doc["levels"]:
        n = level["n"]
        chi.append(SectorPair(DualPolynomial(n, PLUS, parse(level["chi"]["plus"])),
                              DualPolynomial(n, MINUS, parse(level["chi"]["minus"]))))
        trunc = level["lambda"]["trunc_order"]
        trunc = EXACT if trunc == "exact" else int(trunc)
        lam.append(SectorPair(Inhomogeneity(n, PLUS, parse(level["lambda"]["plus"]), trunc),
                              Inhomogeneity(n, MINUS, parse(level["lambda"]["minus"]), trunc)))
        psi.append(SectorPair(Eigenfunction(n, PLUS, parse(level["psi"]["plus"])),
                              Eigenfunction(n, MINUS, parse(level["psi"]["minus"]))))
    return BiorthogonalSystem(parse_coefficient(doc["nu"], ring), U, meta["N"], meta["J"],
                              tuple(chi), tuple(lam), tuple(psi))


def system_to_rows(system):
    """Flat ``(n, sector, kind, exponent, value)`` rows."""
    rows = []
    for n in range(system.N + 1):
        for sector in (PLUS, MINUS):
            for j, c in enumerate(system.chi[n][sector].c):
                rows.append((n, sector.label, "chi", j - n, format_coefficient(c)))
            for k, v in enumerate(system.lam[n][sector].lam, start=1):
                rows.append((n, sector.label, "lambda", k, format_coefficient(v)))
            for j, a in enumerate(system.psi[n][sector].a):
                rows.append((n, sector.label, "psi", n + j, format_coefficient(a)))
    return rows


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(doc):
    return json.dumps(doc, indent=2) + "\n"


def serialize_system(system, fmt="json"):
    if fmt == "json":
        return _json_text(system_to_dict(system))
    if fmt == "csv":
        return _csv_text(("n", "sector", "kind", "exponent", "value"), system_to_rows(system))
    raise ConfigError(f"unknown format {fmt!r}")


def parse_system(text):
    return system_from_dict(json.loads(text))


# -- commands -------------------------------------------------------------


def cmd_build(config):
    system = build_system(resolve_superpotential(config), resolve_nu(config), config.N, config.J)
    return serialize_system(system, config.fmt), 0


def cmd_verify(config):
    system = build_system(resolve_superpotential(config), resolve_nu(config), config.N, config.J)
    window = config.window if config.window is not None else min(config.N, config.J)
    reports = run_all(system, window)
    ok = all(r.passed for r in reports)
    if config.fmt == "csv":
        rows = [(r.check_name, r.status, format_coefficient(r.worst_defect), len(r.failures))
                for r in reports]
        text = _csv_text(("check", "status", "worst_defect", "failures"), rows)
    else:
        text = _json_text({"status": "pass" if ok else "fail",
                           "checks": [r.to_dict() for r in reports]})
    return text, 0 if ok else 1


def _example_morse(config, n):
    U = Superpotential.morse()
    J = config.J
    closed_psi = ex.morse_psi_closed(n, J)
    closed_chi, lam = ex.morse_chi_closed(n)
    chi = build_dual_polynomials(n, U, 0)
    inh = build_inhomogeneity(n, chi, U)
    checks = {
        "psi_closed_equals_recursion": closed_psi == build_eigenfunction(n, U, 0, J),
        "chi_closed_equals_recursion": closed_chi == chi,
        "lambda_equals_pm_c_nn": lam.plus == chi.plus.c[n] and lam.minus == -chi.minus.c[n],
        "Lambda_equals_lambda_z": inh.plus.lam == (lam.plus,) and inh.minus.lam == (lam.minus,),
    }
    return {
        "model": "morse", "n": n, "depth": J,
        "chi": {"plus": _fmt(closed_chi.plus.c), "minus": _fmt(closed_chi.minus.c)},
        "lambda": {"plus": format_coefficient(lam.plus), "minus": format_coefficient(lam.minus)},
        "psi": {"plus": _fmt(closed_psi.plus.a), "minus": _fmt(closed_psi.minus.a)},
        "checks": checks,
    }


def _example_singular(config, n):
    J = config.J
    K = config.K if config.K is not None else n + J + TRUNC_GUARD
    plus, minus, at_one = ex.singular_chi_closed(n)
    at_one_float = ex.singular_chi_plus_at_one_float(n)
    m_at_one, m_slope = boundary_values(minus.series)
    U = Superpotential.singular(K)
    report = ex.singular_inhomogeneity_identities(n, K)
    chi = build_dual_polynomials(n, U, 0)
    psi_rec = build_eigenfunction(n, U, config.nu, J)
    checks = {
        "chi_closed_equals_recursion": plus.c == chi.plus.c and minus.c == chi.minus.c,
        "psi_hypergeometric_equals_recursion": all(
            ex.singular_psi_closed(n, config.nu, s, J).a == psi_rec[s].a for s in (PLUS, MINUS)),
        "chi_minus_at_one_zero": m_at_one == 0 or n == 0,
        "scalar_identity": 2 * m_slope == -n * at_one,
        "chi_plus_at_one_float_agrees": abs(at_one_float - to_float_ring(at_one)) <= 1e-12 * abs(at_one_float),
        "inhomogeneity_identities": report.passed,
    }
    return {
        "model": "singular", "n": n, "nu": format_coefficient(config.nu), "depth": J, "K": K,
        "chi": {"plus": _fmt(plus.c), "minus": _fmt(minus.c)},
        "chi_plus_at_one": format_coefficient(at_one),
        "chi_plus_at_one_float": format_coefficient(at_one_float),
        "chi_minus_at_one": format_coefficient(m_at_one),
        "two_chi_minus_slope_at_one": format_coefficient(2 * m_slope),
        "minus_n_chi_plus_at_one": format_coefficient(-n * at_one),
        "psi": {s.label: _fmt(ex.singular_psi_closed(n, config.nu, s, J).a) for s in (PLUS, MINUS)},
        "checks": checks,
    }


def _example_bessel(config, n):
    J = config.K if config.K is not None else max(config.J, 8)
    U, v_minus = ex.bessel_superpotential(J)
    v_plus = potential_series(U, PLUS)
    checks = {
        "v_plus_is_z_squared": v_plus.items() == [(2, 1)] and v_plus.trunc_order >= J,
        "v_minus_matches_partner": v_minus == potential_series(U, MINUS).truncate(J),
    }
    return {
        "model": "bessel", "order": J,
        "upsilon": _fmt(U.upsilon),
        "v_minus": {str(e): format_coefficient(c) for e, c in v_minus.items()},
        "checks": checks,
    }


def cmd_example(config, name, n):
    if n < 0:
        raise ConfigError("--n must be non-negative")
    handler = {"morse": _example_morse, "singular": _example_singular, "bessel": _example_bessel}
    doc = handler[name](config, n)
    ok = all(doc["checks"].values())
    if config.fmt == "csv":
        rows = [(k, v if isinstance(v, (str, int)) else json.dumps(v))
                for k, v in doc.items() if k != "checks"]
        rows += [(f"check:{k}", "pass" if v else "fail") for k, v in doc["checks"].items()]
        return _csv_text(("key", "value"), rows), 0 if ok else 1
    doc["status"] = "pass" if ok else "fail"
    return _json_text(doc), 0 if ok else 1


def cmd_partition(args):
    tol = args.tol
    if args.nu_ladder:
        try:
            ladder = [float(t) for t in args.nu_ladder.split(",") if t.strip()]
        except ValueError:
            raise ConfigError(f"malformed --nu-ladder {args.nu_ladder!r}") from None
        report = discontinuity_report(ladder, tol)
        if args.format == "json":
            return _json_text({
                "z0": report.z0, "limit": report.limit, "jump": report.jump,
                "rows": [{"eps": e, "Z": z, "deviation": d} for e, z, d in report.rows],
            }), 0
        rows = [(repr(e), repr(z), repr(d), repr(report.jump)) for e, z, d in report.rows]
        return _csv_text(("eps", "Z", "Z_minus_limit", "jump"), rows), 0
    nu = float(parse_rational(args.nu, "nu")) if args.nu is not None else 0.0
    result = partition_z(nu, tol)
    doc = {"nu": result.nu, "Z": result.z_value, "theta_plus": result.theta_plus,
           "theta_minus": result.theta_minus, "Z_direct": result.z_direct,
           "terms_used": result.terms_used, "tail_bound": result.tail_bound,
           "Z0": z_zero(tol)}
    if args.format == "csv":
        return _csv_text(tuple(doc), [tuple(repr(v) for v in doc.values())]), 0
    return _json_text(doc), 0


# -- argument handling -----------------------------------------------------


def _add_system_options(p):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--model", help="named superpotential: morse, singular or bessel")
    src.add_argument("--upsilon", help="inline coefficients upsilon_1,...,upsilon_K as p/q")
    p.add_argument("--nu", default="0", help="magnetic shift as p/q (default 0)")
    p.add_argument("--levels", "-N", type=int, default=4, help="highest level N")
    p.add_argument("--depth", "-J", type=int, default=None, help="psi depth J (default max(N, 8))")
    p.add_argument("--K", type=int, default=None, help="truncation order of U for singular/bessel")
    p.add_argument("--ring", choices=RINGS, default=RATIONAL)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o", help="write here instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(prog="susybi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    _add_system_options(sub.add_parser("build", help="build and serialize a biorthogonal system"))
    p = sub.add_parser("verify", help="run the five identity checks")
    _add_system_options(p)
    p.add_argument("--window", type=int, default=None, help="completeness window P")

    p = sub.add_parser("example", help="closed-form model checks")
    p.add_argument("name", help="morse, singular or bessel")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--nu", default="0")
    p.add_argument("--depth", "-J", type=int, default=12)
    p.add_argument("--K", type=int, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o")

    p = sub.add_parser("partition", help="theta partition sums and the nu -> 0 jump")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--nu", default=None)
    grp.add_argument("--nu-ladder", default=None, help="comma-separated eps values in (0, 1/4]")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--output", "-o")
    return parser


def config_from_args(args):
    if args.command == "example":
        return RunConfig(command="example", model=args.name, nu=parse_rational(args.nu, "nu"),
                         J=args.depth, K=args.K, fmt=args.format, output=args.output)
    model = args.model
    if model is not None and model not in MODELS:
        raise ConfigError(f"unknown model {model!r}; choose from {', '.join(MODELS)}")
    upsilon = parse_rational_list(args.upsilon) if args.upsilon is not None else None
    N = args.levels
    J = args.depth if args.depth is not None else max(N, 8)
    if N < 0 or J < 0:
        raise ConfigError("--levels and --depth must be non-negative")
    return RunConfig(command=args.command, model=model, upsilon=upsilon,
                     nu=parse_rational(args.nu, "nu"), N=N, J=J, K=args.K, ring=args.ring,
                     fmt=args.format, output=args.output, window=getattr(args, "window", None))


def _emit(text, output):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _attach_negative_values(argv):
    # argparse reads "-1/5" as an option; glue it to the preceding flag
    out = []
    for token in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEGATIVE_VALUE.match(token):
            out[-1] = f"{out[-1]}={token}"
        else:
            out.append(token)
    return out


def run(argv=None):
    """Entry point; returns the process exit code."""
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_attach_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        set_float_precision()
        if args.command == "partition":
            if args.format is None:
                args.format = "csv" if args.nu_ladder else "json"
            text, code = cmd_partition(args)
        else:
            config = config_from_args(args)
            if config.command == "build":
                text, code = cmd_build(config)
            elif config.command == "verify":
                text, code = cmd_verify(config)
            else:
                if config.model not in MODELS:
                    raise ConfigError(f"unknown model {config.model!r}; choose from {', '.join(MODELS)}")
                text, code = cmd_example(config, config.model, args.n)
        _emit(text, args.output)
        return code
    except (ConfigError, DegenerateParameterError, UndeterminedCoefficientError,
            RingMismatchError, ValueError, OSError) as exc:
        print(f"susybi: error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())
