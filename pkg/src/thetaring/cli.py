"""Command-line front end with deterministic JSON output.

Subcommands: theta, kummer-quartic, verify-kummer, sklyanin-relations,
verify-sklyanin, ring-product.  Complex values on the command line are
written as two decimal fields joined by the sign of the imaginary part
(``0+1.1``, ``1.2-0.5``); floats in JSON output are always rendered with
17 significant digits in lowercase e-notation so identical configurations
produce byte-identical reports.

Exit codes: 0 success, 2 invalid period or unusable input, 3 degeneracy or
genericity failure, 4 residual above tolerance.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from . import kummer, linalg, sklyanin
from .errors import (
    DegeneracyError,
    DomainError,
    ModelError,
    PrecisionError,
    SingularMatrixError,
    UsageError,
)
from .rings import RingElement, RingFamily, RingKind, product_kummer, product_torus
from .theta import PeriodMatrix, ThetaArgs, Tolerance, theta_general

_COMPLEX_RE = re.compile(
    r"^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)$"
)


def parse_complex(token: str) -> complex:
    """Parse the RE+IM wire format, e.g. '0+1.1' or '1.2-0.5'."""
    match = _COMPLEX_RE.match(token.strip())
    if not match:
        raise argparse.ArgumentTypeError(
            f"expected complex as RE+IM with explicit imaginary sign, got {token!r}"
        )
    return complex(float(match.group(1)), float(match.group(2)))


def _fmt_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError(f"non-finite float in report: {x}")
    return format(float(x), ".16e")


def render_json(obj, indent: int = 0) -> str:
    """Deterministic JSON: insertion-ordered keys, fixed float format."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = [
            f"{inner}{json.dumps(str(key))}: {render_json(val, indent + 1)}"
            for key, val in obj.items()
        ]
        return "{\n" + ",\n".join(rows) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        items = [render_json(v, indent + 1) for v in obj]
        flat = "[" + ", ".join(items) + "]"
        if len(flat) <= 100 and "\n" not in flat:
            return flat
        return "[\n" + ",\n".join(inner + s for s in items) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot render {type(obj).__name__} deterministically")


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _matrix_pairs(m) -> list:
    return [[_pair(v) for v in row] for row in np.asarray(m)]


_CONFIG_KEYS = {
    "tau1": parse_complex,
    "tau2": parse_complex,
    "tau3": parse_complex,
    "b1": float,
    "b2": float,
    "eps": float,
    "a1": int,
    "a2": int,
    "l": int,
    "s": int,
    "format": str,
    "output": str,
    "lhs": str,
    "rhs": str,
}

_DEFAULTS = {"b1": 0.0, "b2": 0.0, "eps": 1e-14, "l": 1, "s": 2, "format": "json"}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thetaring",
        description="Theta lattice sums, Kummer quartic data and "
        "quadratic relation sets from symplectic parameters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, need_ab=False, need_files=False):
        p.add_argument("--tau1", type=parse_complex, help="complex, RE+IM form")
        p.add_argument("--tau2", type=parse_complex, help="complex, RE+IM form")
        p.add_argument("--tau3", type=parse_complex, help="complex, RE+IM form")
        p.add_argument("--b1", type=float, help="translation component (default 0)")
        p.add_argument("--b2", type=float, help="translation component (default 0)")
        p.add_argument("--eps", type=float, help="absolute tolerance (default 1e-14)")
        p.add_argument("--format", choices=("json", "text"), help="output format")
        p.add_argument("--output", help="output path (default stdout)")
        p.add_argument("--config", help="JSON file of defaults; flags override")
        if need_ab:
            p.add_argument("--a1", type=int, help="first characteristic")
            p.add_argument("--a2", type=int, help="second characteristic")
            p.add_argument("--l", type=int, help="degree (default 1)")
            p.add_argument("--s", type=int, help="shear (default 2)")
        if need_files:
            p.add_argument("--lhs", help="path to left element JSON")
            p.add_argument("--rhs", help="path to right element JSON")

    add_common(sub.add_parser("theta", help="evaluate one lattice sum"), need_ab=True)
    add_common(sub.add_parser("kummer-quartic", help="quartic data and polynomial"))
    add_common(sub.add_parser("verify-kummer", help="degree-4 relation residual"))
    add_common(sub.add_parser("sklyanin-relations", help="full 36-relation export"))
    add_common(sub.add_parser("verify-sklyanin", help="36 relation residuals"))
    add_common(
        sub.add_parser("ring-product", help="multiply two serialized elements"),
        need_files=True,
    )
    return parser


def _merge_config(args: argparse.Namespace) -> dict:
    merged = dict(_DEFAULTS)
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        for key, value in raw.items():
            if key not in _CONFIG_KEYS:
                raise UsageError(f"unknown config key {key!r}")
            conv = _CONFIG_KEYS[key]
            if conv is parse_complex and not isinstance(value, str):
                raise UsageError(f"config key {key!r} must use the RE+IM string form")
            merged[key] = conv(value)
    for key in _CONFIG_KEYS:
        value = getattr(args, key.replace("-", "_"), None)
        if value is not None:
            merged[key] = value
    return merged


def _period(cfg: dict) -> PeriodMatrix:
    missing = [k for k in ("tau1", "tau2", "tau3") if k not in cfg]
    if missing:
        raise UsageError(f"missing required period flags: {', '.join(missing)}")
    return PeriodMatrix(cfg["tau1"], cfg["tau2"], cfg["tau3"])


def _tau_report(period: PeriodMatrix) -> list:
    return [_pair(period.tau1), _pair(period.tau2), _pair(period.tau3)]


def _cmd_theta(cfg):
    period = _period(cfg)
    if "a1" not in cfg or "a2" not in cfg:
        raise UsageError("theta requires --a1 and --a2")
    args = ThetaArgs(cfg["a1"], cfg["a2"], cfg["b1"], cfg["b2"], cfg["l"], cfg["s"])
    value = theta_general(period, args, Tolerance(cfg["eps"]))
    report = {
        "tau": _tau_report(period),
        "a1": args.a1,
        "a2": args.a2,
        "b1": args.b1,
        "b2": args.b2,
        "l": args.l,
        "s": args.s,
        "eps": cfg["eps"],
        "value": _pair(value),
    }
    text = f"theta = {value.real:.16e} {value.imag:+.16e}i"
    return 0, report, text


def _quartic_report(period, data, poly, eps):
    return {
        "tau": _tau_report(period),
        "eps": eps,
        "g": _pair(data.g),
        "h": _pair(data.h),
        "j": _pair(data.j),
        "k": _pair(data.k),
        "A": _pair(data.A),
        "B": _pair(data.B),
        "C": _pair(data.C),
        "D": _pair(data.D),
        "genericity": dict(data.genericity),
        "kernel_residual": data.kernel_residual,
        "quartic": [
            [list(mono), _pair(coeff)]
            for mono, coeff in zip(kummer.QUARTIC_MONOMIALS, poly.coefficient_vector())
        ],
    }


def _cmd_kummer_quartic(cfg):
    period = _period(cfg)
    data = kummer.quartic_coefficients(period, cfg["eps"])
    poly = kummer.emit_quartic(data)
    report = _quartic_report(period, data, poly, cfg["eps"])
    lines = ["quartic: " + str(poly), ""]
    for name, val in (("g", data.g), ("h", data.h), ("j", data.j), ("k", data.k),
                      ("A", data.A), ("B", data.B), ("C", data.C), ("D", data.D)):
        lines.append(f"{name} = {val.real:.16e} {val.imag:+.16e}i")
    lines.append(f"kernel_residual = {data.kernel_residual:.3e}")
    lines.append(
        "genericity: "
        + ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in data.genericity.items())
    )
    return 0, report, "\n".join(lines)


def _cmd_verify_kummer(cfg):
    period = _period(cfg)
    residual, data = kummer.central_relation_residual(period, cfg["eps"])
    ok = residual <= kummer.KERNEL_RTOL
    report = {
        "tau": _tau_report(period),
        "eps": cfg["eps"],
        "relation_residual": float(residual),
        "tolerance": kummer.KERNEL_RTOL,
        "kernel_residual": data.kernel_residual,
        "pass": ok,
    }
    text = (
        f"degree-4 relation residual = {residual:.3e} "
        f"(tolerance {kummer.KERNEL_RTOL:.1e}): {'PASS' if ok else 'FAIL'}"
    )
    return (0 if ok else 4), report, text


def _relation_records(relset):
    records = []
    for (i, j, row, expr) in relset.relations:
        terms = [
            [a1, a2, c1, c2, coeff.real, coeff.imag]
            for ((a1, a2), (c1, c2)), coeff in expr.items()
        ]
        records.append({"i": i, "j": j, "row": row, "terms": terms})
    return records


def _relation_text(relset):
    lines = []
    for (i, j, row, _), res in zip(relset.relations, relset.residuals):
        com = sklyanin.commutator_vector(i, j)[row]
        lhs = " ".join(
            f"{'+' if c.real >= 0 else '-'} Z{a1}{a2}*Z{c1}{c2}"
            for ((a1, a2), (c1, c2)), c in com.items()
        ).lstrip("+ ")
        weights = relset.deformation.matrix[row]
        anti = sklyanin.anticommutator_vector(i, j)
        rhs_parts = []
        for c, w in enumerate(weights):
            if w == 0.0:
                continue
            pairs = "+".join(
                f"Z{a1}{a2}*Z{c1}{c2}" for ((a1, a2), (c1, c2)), _ in anti[c].items()
            )
            rhs_parts.append(f"({w.real:.6g}{w.imag:+.6g}i)*[{pairs}]")
        rhs = " + ".join(rhs_parts) if rhs_parts else "0"
        lines.append(f"({i},{j}) row {row}:  {lhs} = {rhs}   [residual {res:.3e}]")
    return "\n".join(lines)


def _cmd_sklyanin_relations(cfg):
    period = _period(cfg)
    relset = sklyanin.generate_and_verify(
        period, cfg["b1"], cfg["b2"], cfg["eps"], strict=False
    )
    ok = relset.passes()
    report = {
        "tau": _tau_report(period),
        "b": [relset.b1, relset.b2],
        "eps": cfg["eps"],
        "theta_constants": _matrix_pairs(
            sklyanin.theta_constants(period, cfg["b1"], cfg["b2"], cfg["eps"]).table
        ),
        "deformation_matrix": _matrix_pairs(relset.deformation.matrix),
        "row_signs": [float(s) for s in relset.deformation.construction_log["row_signs"]],
        "relations": _relation_records(relset),
        "residuals": [float(r) for r in relset.residuals],
        "max_residual": relset.max_residual,
        "tolerance": sklyanin.RELATION_RTOL,
        "pass": ok,
    }
    return (0 if ok else 4), report, _relation_text(relset)


def _cmd_verify_sklyanin(cfg):
    period = _period(cfg)
    relset = sklyanin.generate_and_verify(
        period, cfg["b1"], cfg["b2"], cfg["eps"], strict=False
    )
    m_norm = linalg.norm_inf(relset.deformation.matrix)
    ok = relset.passes()
    integral_b = float(cfg["b1"]).is_integer() and float(cfg["b2"]).is_integer()
    if integral_b:
        ok = ok and m_norm <= sklyanin.COMMUTATIVE_LIMIT_MATRIX_NORM
    report = {
        "tau": _tau_report(period),
        "b": [relset.b1, relset.b2],
        "eps": cfg["eps"],
        "matrix_inf_norm": float(m_norm),
        "residuals": [float(r) for r in relset.residuals],
        "max_residual": relset.max_residual,
        "tolerance": sklyanin.RELATION_RTOL,
        "commutative_limit_checked": integral_b,
        "pass": ok,
    }
    text = (
        f"36 relations, max residual = {relset.max_residual:.3e} "
        f"(tolerance {sklyanin.RELATION_RTOL:.1e}), ||M||_inf = {m_norm:.3e}: "
        f"{'PASS' if ok else 'FAIL'}"
    )
    return (0 if ok else 4), report, text


def _cmd_ring_product(cfg):
    if "lhs" not in cfg or "rhs" not in cfg:
        raise UsageError("ring-product requires --lhs and --rhs element files")
    period = _period(cfg)
    with open(cfg["lhs"], "r", encoding="utf-8") as fh:
        left_rec = json.load(fh)
    with open(cfg["rhs"], "r", encoding="utf-8") as fh:
        right_rec = json.load(fh)
    kind = left_rec.get("family")
    if right_rec.get("family") != kind:
        raise UsageError("element files belong to different families")
    family = RingFamily(RingKind(kind), period, cfg["b1"], cfg["b2"], cfg["eps"])
    left = RingElement.from_record(family, left_rec)
    right = RingElement.from_record(family, right_rec)
    product = (
        product_kummer(left, right)
        if family.kind is RingKind.KUMMER
        else product_torus(left, right)
    )
    record = product.to_record()
    text = "\n".join(
        f"Y[{a1},{a2}] = {c.real:.16e} {c.imag:+.16e}i" for (a1, a2), c in product.items()
    )
    return 0, record, text


_COMMANDS = {
    "theta": _cmd_theta,
    "kummer-quartic": _cmd_kummer_quartic,
    "verify-kummer": _cmd_verify_kummer,
    "sklyanin-relations": _cmd_sklyanin_relations,
    "verify-sklyanin": _cmd_verify_sklyanin,
    "ring-product": _cmd_ring_product,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge_config(args)
        code, report, text = _COMMANDS[args.command](cfg)
        payload = render_json(report) + "\n" if cfg["format"] == "json" else text + "\n"
        out_path = cfg.get("output")
        if out_path:
            with open(out_path, "w", encoding="utf-8") as fh:
                fh.write(payload)
        else:
            sys.stdout.write(payload)
        return code
    except (DomainError, UsageError, PrecisionError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DegeneracyError, SingularMatrixError) as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return 3
    except ModelError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
