"""Command-line front end.

One binary, four subcommands:

* ``orbifold``   -- order and lead coefficient from a signature/multiplier
                    config document;
* ``fried``      -- torsion-versus-zeta verification (kitano | yamaguchi);
* ``congruence`` -- the explicit level-N Dirichlet-character tables;
* ``identities`` -- the built-in identity suites.

Output formats: human table, machine JSON (symbolic factorisation plus
numeric value for every magnitude), or TeX table rows.  Exit codes:
0 success/pass, 1 input error, 2 computation error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from .characters import DirichletCharacter, characters, l_value_resolver, trivial_character
from .congruence import (level_invariants, prime_square_lead, prime_factors,
                         ruelle_lead)
from .core import (AdmissibilityError, DimensionMismatchError, MultiplierSystem,
                   NonHyperbolicError, OrbifoldSignature, residue_profile)
from .functional_eq import (PoleAtError, ScatteringData, reduced_fe_factor,
                            ruelle_fe_factor)
from .identities import run_all_suites
from .leadterm import lead_coefficient, lead_coefficient_weight_zero
from .specialfn import BarnesGZeroError, PoleError
from .torsion import (FriedReport, KitanoRep, YamaguchiRep,
                      random_kitano_instance, random_yamaguchi_instance,
                      verify_fried_kitano, verify_fried_yamaguchi)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_COMPUTATION = 2
EXIT_VERIFICATION = 3

SCHEMA_VERSION = 1


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    fmt: str = "table"
    out: Optional[str] = None
    tolerance: float = 1e-9
    seed: int = 0

    def __post_init__(self):
        if not 1e-14 <= self.tolerance <= 1e-6:
            raise InputError(f"tolerance {self.tolerance} outside [1e-14, 1e-6]")


def _emit(config: RunConfig, text: str):
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _magnitude_json(mag, numeric):
    return {"factored": mag.as_json(), "text": mag.describe(), "numeric": numeric}


# ---------------------------------------------------------------------------
# config-document parsing (orbifold command)
# ---------------------------------------------------------------------------

def _require_keys(obj: dict, allowed: set, where: str):
    unknown = set(obj) - allowed
    if unknown:
        raise InputError(f"unknown field(s) {sorted(unknown)} in {where}")


def _parse_angle(x):
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        if x != 0:
            raise InputError(f"integer angle {x} is not in [0, 1)")
        return Fraction(0)
    return float(x)


def load_orbifold_document(path: str):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc
    _require_keys(doc, {"schema_version", "signature", "multiplier", "scattering"}, "document")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise InputError(f"unsupported schema_version {doc.get('schema_version')!r}")
    try:
        sig_doc = doc["signature"]
        ms_doc = doc["multiplier"]
    except KeyError as exc:
        raise InputError(f"missing section {exc}") from exc
    _require_keys(sig_doc, {"genus", "cusps", "elliptic_orders"}, "signature")
    _require_keys(ms_doc, {"dimension", "weight_numerator", "weight_denominator",
                           "elliptic_residues", "parabolic_angles"}, "multiplier")
    try:
        sig = OrbifoldSignature(genus=int(sig_doc["genus"]),
                                cusp_count=int(sig_doc["cusps"]),
                                elliptic_orders=tuple(sig_doc.get("elliptic_orders", ())))
        ms = MultiplierSystem(
            dimension=int(ms_doc["dimension"]),
            weight=Fraction(int(ms_doc["weight_numerator"]),
                            int(ms_doc["weight_denominator"])),
            elliptic_residues=tuple(tuple(r) for r in ms_doc.get("elliptic_residues", ())),
            parabolic_angles=tuple(tuple(_parse_angle(b) for b in cusp)
                                   for cusp in ms_doc.get("parabolic_angles", ())),
        )
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad signature/multiplier field: {exc}") from exc
    except (NonHyperbolicError, DimensionMismatchError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    sc_doc = doc.get("scattering", {})
    _require_keys(sc_doc, {"n0", "a_n0", "d1", "c1", "half_trace_exponent"}, "scattering")
    try:
        data = ScatteringData(
            n0=int(sc_doc.get("n0", 0)),
            a_n0=float(sc_doc.get("a_n0", 1.0)),
            d1=float(sc_doc.get("d1", 1.0)),
            c1=float(sc_doc.get("c1", 0.0)),
            half_trace_exponent=(None if sc_doc.get("half_trace_exponent", 0) is None
                                 else int(sc_doc.get("half_trace_exponent", 0))),
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return sig, ms, data


def cmd_orbifold(args) -> int:
    config = RunConfig(command="orbifold", fmt=args.format, out=args.out,
                       tolerance=args.tolerance)
    sig, ms, data = load_orbifold_document(args.config)
    try:
        profile = residue_profile(sig, ms)
    except (AdmissibilityError, DimensionMismatchError) as exc:
        raise InputError(str(exc)) from exc
    if ms.weight == 0:
        lead = lead_coefficient_weight_zero(sig, ms, profile, data)
    else:
        lead = lead_coefficient(sig, ms, profile, data)
    numeric = lead.numeric(l_value_resolver)
    samples = []
    for spec in args.sample_h or []:
        try:
            re_s, im_s = (float(x) for x in spec.split(","))
        except ValueError as exc:
            raise InputError(f"bad --sample-h value {spec!r}; expected RE,IM") from exc
        s = complex(re_s, im_s)
        samples.append((s, ruelle_fe_factor(s, sig, ms, profile),
                        reduced_fe_factor(s, sig, ms, profile)))
    if config.fmt == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": "orbifold",
            "order": lead.order,
            "magnitude": _magnitude_json(lead.magnitude, numeric),
            "sign_known": lead.sign_known,
            "sign": lead.sign,
            "samples": [{"s": [s.real, s.imag],
                         "fe_factor": [h.real, h.imag],
                         "reduced_fe_factor": [h1.real, h1.imag]}
                        for s, h, h1 in samples],
        }
        _emit(config, json.dumps(payload, sort_keys=True, indent=2))
    else:
        lines = [
            f"order at s=0      : {lead.order}",
            f"|lead coefficient|: {numeric:.15g}",
            f"factored          : {lead.magnitude.describe()}",
        ]
        if lead.sign_known:
            lines.append(f"sign              : {'+' if lead.sign > 0 else '-'}")
        for s, h, h1 in samples:
            lines.append(f"H({s}) = {h}")
            lines.append(f"H1({s}) = {h1}")
        _emit(config, "\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------
# fried command
# ---------------------------------------------------------------------------

def _parse_fibers(text: str):
    try:
        fibers = []
        for part in text.split(","):
            nu, beta = part.split(":")
            fibers.append((int(nu), int(beta)))
        return tuple(fibers)
    except ValueError as exc:
        raise InputError(f"bad --fibers value {text!r}; expected NU:BETA,...") from exc


def _fried_report_lines(report: FriedReport, label: str) -> List[str]:
    return [
        f"{label}: torsion side = {report.torsion_numeric:.15g} "
        f"[{report.torsion_magnitude.describe()}]",
        f"{label}: zeta side    = {report.zeta_numeric:.15g} "
        f"[{report.zeta_magnitude.describe()}]",
        f"{label}: ord_R(0) = {report.order} (expected 0), "
        f"relative deviation = {report.relative_deviation:.3e}",
        f"{label}: {'PASS' if report.passed else 'FAIL'}",
    ]


def cmd_fried(args) -> int:
    config = RunConfig(command="fried", fmt=args.format, out=args.out,
                       tolerance=args.tolerance, seed=args.seed)
    lines: List[str] = []
    payload = {"schema_version": SCHEMA_VERSION, "command": f"fried {args.flavor}",
               "seed": config.seed, "results": []}
    ok = True
    if args.fuzz:
        rng = np.random.default_rng(config.seed)
        worst = 0.0
        for i in range(args.fuzz):
            if args.flavor == "kitano":
                g, fibers, rep = random_kitano_instance(rng)
                report = verify_fried_kitano(g, fibers, rep, tolerance=config.tolerance)
            else:
                g, fibers, rep = random_yamaguchi_instance(rng)
                report = verify_fried_yamaguchi(g, fibers, rep, tolerance=config.tolerance)
            worst = max(worst, report.relative_deviation)
            ok = ok and report.passed
        lines.append(f"fuzz {args.flavor}: {args.fuzz} draws, worst deviation {worst:.3e}, "
                     f"{'PASS' if ok else 'FAIL'} at tolerance {config.tolerance:g}")
        payload["results"].append({"draws": args.fuzz, "worst_deviation": worst,
                                   "passed": ok})
    else:
        fibers = _parse_fibers(args.fibers)
        if args.flavor == "kitano":
            if args.dimension is None or args.unit_exponent is None or args.residues is None:
                raise InputError("kitano needs --dimension, --unit-exponent, --residues")
            try:
                residues = tuple(tuple(int(x) for x in klass.split(","))
                                 for klass in args.residues.split(";"))
                rep = KitanoRep(dimension=args.dimension, unit_exponent=args.unit_exponent,
                                residues=residues)
            except ValueError as exc:
                raise InputError(str(exc)) from exc
            report = verify_fried_kitano(args.genus, fibers, rep, tolerance=config.tolerance)
        else:
            if args.half_dimension is None or args.eta is None:
                raise InputError("yamaguchi needs --half-dimension and --eta")
            try:
                rep = YamaguchiRep(half_dimension=args.half_dimension,
                                   eta=tuple(int(x) for x in args.eta.split(",")))
            except ValueError as exc:
                raise InputError(str(exc)) from exc
            report = verify_fried_yamaguchi(args.genus, fibers, rep, tolerance=config.tolerance)
        ok = report.passed
        lines.extend(_fried_report_lines(report, args.flavor))
        payload["results"].append({
            "torsion": _magnitude_json(report.torsion_magnitude, report.torsion_numeric),
            "zeta": _magnitude_json(report.zeta_magnitude, report.zeta_numeric),
            "order": report.order,
            "relative_deviation": report.relative_deviation,
            "passed": report.passed,
        })
    if config.fmt == "json":
        _emit(config, json.dumps(payload, sort_keys=True, indent=2))
    else:
        _emit(config, "\n".join(lines))
    return EXIT_OK if ok else EXIT_VERIFICATION


# ---------------------------------------------------------------------------
# congruence command
# ---------------------------------------------------------------------------

def _is_prime_square(N: int) -> Optional[int]:
    r = math.isqrt(N)
    if r * r == N and r >= 5 and prime_factors(r) == [r]:
        return r
    return None


def _congruence_row(N: int, chi: DirichletCharacter, tolerance: float) -> dict:
    report = ruelle_lead(N, chi)
    numeric = report.numeric()
    row = {
        "level": N,
        "character": list(chi.exponents),
        "conductor": chi.conductor,
        "rho": report.invariants.rho,
        "tau": report.invariants.tau,
        "genus": report.invariants.genus,
        "tau0": report.tau0,
        "tilde_tau0": report.tilde_tau0,
        "f_count": report.f_count,
        "f0_count": report.f0_count,
        "n0": report.n0,
        "order": report.order,
        "magnitude": _magnitude_json(report.lead.magnitude, numeric),
        "a_n0_d1": _magnitude_json(report.scattering.magnitude,
                                   report.scattering.numeric()),
    }
    ell = _is_prime_square(N)
    if ell is not None:
        b = 0 if chi.conductor == 1 else (1 if chi.conductor == ell else 2)
        dual = prime_square_lead(ell, b, chi)
        ratio = dual.magnitude / report.lead.magnitude
        deviation = (abs(ratio.numeric(l_value_resolver) - 1.0)
                     if not ratio.has_l_values() else float("nan"))
        row["dual_order"] = dual.order
        row["dual_deviation"] = deviation
        row["dual_ok"] = bool(dual.order == report.order and deviation <= tolerance)
    return row


_TABLE_COLS = ["level", "character", "rho", "tau", "genus", "tau0", "tilde_tau0",
               "f_count", "f0_count", "n0", "order"]


def _format_rows_table(rows: List[dict]) -> str:
    headers = _TABLE_COLS + ["|lead|", "dual"]
    widths = {h: len(h) for h in headers}
    printable = []
    for row in rows:
        p = {c: str(row[c]) for c in _TABLE_COLS}
        p["|lead|"] = f"{row['magnitude']['numeric']:.9g}"
        p["dual"] = (f"dev={row['dual_deviation']:.2e}" if "dual_deviation" in row else "-")
        for h in headers:
            widths[h] = max(widths[h], len(p[h]))
        printable.append(p)
    lines = ["  ".join(h.ljust(widths[h]) for h in headers)]
    for p in printable:
        lines.append("  ".join(p[h].ljust(widths[h]) for h in headers))
    return "\n".join(lines)


def _format_rows_tex(rows: List[dict]) -> str:
    lines = [r"% N & chi & rho & tau & g & tau0 & tilde tau0 & #F & #F0 & n0 & ord & |lead| \\"]
    for row in rows:
        chi = "trivial" if not any(row["character"]) else str(row["character"])
        lines.append(
            f"{row['level']} & {chi} & {row['rho']} & {row['tau']} & {row['genus']} & "
            f"{row['tau0']} & {row['tilde_tau0']} & {row['f_count']} & {row['f0_count']} & "
            f"{row['n0']} & {row['order']} & {row['magnitude']['numeric']:.9g} \\\\")
    return "\n".join(lines)


def cmd_congruence(args) -> int:
    config = RunConfig(command="congruence", fmt=args.format, out=args.out,
                       tolerance=args.tolerance)
    N = args.level
    if N < 1:
        raise InputError("--level must be >= 1")
    if args.sweep:
        chis = [chi for chi in characters(N) if chi.is_even]
    elif args.character is not None:
        try:
            exps = tuple(int(x) for x in args.character.split(",")) if args.character else ()
            chi = DirichletCharacter(N, exps)
        except ValueError as exc:
            raise InputError(f"bad --character {args.character!r}: {exc}") from exc
        if not chi.is_even:
            raise InputError("odd characters do not give weight-zero multiplier systems")
        chis = [chi]
    else:
        chis = [trivial_character(N)]
    rows = [_congruence_row(N, chi, config.tolerance) for chi in chis]
    if config.fmt == "json":
        payload = {"schema_version": SCHEMA_VERSION, "command": "congruence",
                   "level": N, "rows": rows}
        _emit(config, json.dumps(payload, sort_keys=True, indent=2))
    elif config.fmt == "tex":
        _emit(config, _format_rows_tex(rows))
    else:
        _emit(config, _format_rows_table(rows))
    bad_dual = any(("dual_ok" in r and not r["dual_ok"]) for r in rows)
    return EXIT_VERIFICATION if bad_dual else EXIT_OK


# ---------------------------------------------------------------------------
# identities command
# ---------------------------------------------------------------------------

def cmd_identities(args) -> int:
    config = RunConfig(command="identities", fmt=args.format, out=args.out,
                       tolerance=args.tolerance, seed=args.seed)
    reports = run_all_suites(seed=config.seed, samples_scale=args.samples / 200.0,
                             tolerance=config.tolerance)
    if args.family != "all":
        reports = [r for r in reports if r.family == args.family]
        if not reports:
            raise InputError(f"unknown identity family {args.family!r}")
    ok = all(r.passed for r in reports)
    if config.fmt == "json":
        payload = {"schema_version": SCHEMA_VERSION, "command": "identities",
                   "seed": config.seed,
                   "results": [{"family": r.family, "samples": r.samples,
                                "worst_deviation": r.worst_deviation,
                                "tolerance": r.tolerance, "passed": r.passed}
                               for r in reports]}
        _emit(config, json.dumps(payload, sort_keys=True, indent=2))
    else:
        lines = [f"{r.family:<22} samples={r.samples:<6} worst={r.worst_deviation:.3e}  "
                 f"{'PASS' if r.passed else 'FAIL'}" for r in reports]
        _emit(config, "\n".join(lines))
    return EXIT_OK if ok else EXIT_VERIFICATION


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ruellezeta",
        description="Special values of twisted Ruelle zeta functions at s = 0.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["table", "json", "tex"], default="table")
        p.add_argument("--out", default=None, help="write output to PATH")
        p.add_argument("--tolerance", type=float, default=1e-9)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("orbifold", help="order/lead coefficient from a config document")
    p.add_argument("--config", required=True, help="JSON document path")
    p.add_argument("--sample-h", action="append", metavar="RE,IM",
                   help="also evaluate the functional-equation factors at s = RE + i IM")
    common(p)
    p.set_defaults(func=cmd_orbifold)

    p = sub.add_parser("fried", help="torsion vs zeta special value")
    p.add_argument("flavor", choices=["kitano", "yamaguchi"])
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--fibers", default="2:1", metavar="NU:BETA,...")
    p.add_argument("--dimension", type=int, default=None)
    p.add_argument("--unit-exponent", type=int, default=None)
    p.add_argument("--residues", default=None, metavar="A1,..,AM;B1,..,BM")
    p.add_argument("--half-dimension", type=int, default=None)
    p.add_argument("--eta", default=None, metavar="E1,E2,...")
    p.add_argument("--fuzz", type=int, default=0, metavar="COUNT")
    common(p)
    p.set_defaults(func=cmd_fried)

    p = sub.add_parser("congruence", help="explicit level-N tables")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--character", default=None,
                   help="exponent vector on the canonical generators, e.g. '2,0'")
    p.add_argument("--trivial", action="store_true", help="use the trivial character (default)")
    p.add_argument("--sweep", action="store_true", help="all even characters mod N")
    common(p)
    p.set_defaults(func=cmd_congruence)

    p = sub.add_parser("identities", help="run the built-in identity suites")
    p.add_argument("--family", default="all",
                   choices=["all", "sine-products", "factor-duality",
                            "h-symmetry", "partition-identities"])
    p.add_argument("--samples", type=int, default=200)
    common(p)
    p.set_defaults(func=cmd_identities)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NonHyperbolicError, DimensionMismatchError, AdmissibilityError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PoleAtError, PoleError, BarnesGZeroError, ArithmeticError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION


if __name__ == "__main__":
    sys.exit(main())
