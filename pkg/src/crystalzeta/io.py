"""Text documents: measures, combinations, zero lists, reports, ordinate lists.

Floats are written with 17 significant digits, so parsing a document
reproduces every double bit for bit.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np

from .crystal import CrystallineMeasure
from .errors import DocumentError, OrderingError
from .sequence import RiemannSequenceCandidate, zeta_sequence
from .zerofind import ZeroRecord


def fmt(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return f"{x:.17g}"


def _num(v) -> float:
    if isinstance(v, str):
        return float(v)
    return float(v)


def dumps(obj, indent: int | None = None, _level: int = 0) -> str:
    """JSON text with 17-digit floats; key order preserved."""
    pad = "" if indent is None else "\n" + " " * (indent * (_level + 1))
    end = "" if indent is None else "\n" + " " * (indent * _level)
    sep = ", " if indent is None else ","
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    if isinstance(obj, (str, Fraction)):
        return json.dumps(str(obj))
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{" + sep.join(items) + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        # numeric arrays stay on one line
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [f"{pad}{dumps(v, indent, _level + 1)}" for v in obj]
        return "[" + sep.join(items) + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed document: {exc.msg}", exc.lineno) from exc


def _require(doc: dict, kind: str, keys) -> None:
    if not isinstance(doc, dict) or doc.get("type") != kind:
        raise DocumentError(f"expected a {kind} document", 1)
    for k in keys:
        if k not in doc:
            raise DocumentError(f"{kind} document lacks field {k!r}", 1)


# --------------------------------------------------------------------------
# measures


def measure_to_text(m: CrystallineMeasure) -> str:
    return dumps({"type": "measure", "n": m.n, "coefficients": list(m.coefficients)}, indent=1) + "\n"


def measure_from_text(text: str) -> CrystallineMeasure:
    doc = _loads(text)
    _require(doc, "measure", ("n", "coefficients"))
    try:
        return CrystallineMeasure(int(doc["n"]), np.array([_num(c) for c in doc["coefficients"]]))
    except ValueError as exc:
        raise DocumentError(str(exc), 1) from exc


# --------------------------------------------------------------------------
# Hurwitz combinations and Dirichlet heads


def combination_to_text(f) -> str:
    terms = []
    for t in f.combination.terms:
        entry = {"weight": t.weight, "base": str(t.base), "shift": str(t.shift)}
        if t.exact is not None:
            entry["exact"] = str(t.exact)
        terms.append(entry)
    doc = {"type": "combination", "label": f.label, "residue": f.residue, "self_dual": f.self_dual, "terms": terms}
    return dumps(doc, indent=1) + "\n"


def combination_from_text(text: str):
    from .zetabuild import HurwitzCombination, HurwitzTerm, Surd, ZetaLike

    doc = _loads(text)
    _require(doc, "combination", ("terms",))
    try:
        terms = tuple(
            HurwitzTerm(_num(t["weight"]), Fraction(t["base"]), Fraction(t["shift"]),
                        Surd.parse(t["exact"]) if "exact" in t else None)
            for t in doc["terms"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"bad combination term: {exc}", 1) from exc
    combo = HurwitzCombination(terms, bool(doc.get("self_dual", False)))
    return ZetaLike("combination", combo, label=doc.get("label", "combination"))


def head_to_text(head) -> str:
    rows = []
    for lam, c, exact in head.entries:
        row = {"frequency": str(lam), "coefficient": c}
        if exact is not None:
            row["exact"] = str(exact)
        rows.append(row)
    return dumps({"type": "dirichlet_head", "entries": rows}, indent=1) + "\n"


# --------------------------------------------------------------------------
# zero lists: one record per line


def zeros_to_text(zeros, poles=()) -> str:
    lines = []
    for z in zeros:
        lines.append(dumps({
            "kind": "zero", "re": z.location.real, "im": z.location.imag,
            "multiplicity": z.multiplicity, "residual": z.residual,
            "isolation_radius": z.isolation_radius,
        }))
    for p in poles:
        lines.append(dumps({"kind": "pole", "re": complex(p).real, "im": complex(p).imag, "order": 1}))
    return "".join(line + "\n" for line in lines)


def zeros_from_text(text: str) -> tuple[list[ZeroRecord], list[complex]]:
    zeros, poles = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"malformed zero record: {exc.msg}", lineno) from exc
        try:
            kind = rec.get("kind", "zero")
            loc = complex(_num(rec["re"]), _num(rec["im"]))
            if kind == "pole":
                poles.append(loc)
            else:
                zeros.append(ZeroRecord(loc, int(rec["multiplicity"]), _num(rec["residual"]),
                                        _num(rec.get("isolation_radius", 0.0))))
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"bad zero record: {exc}", lineno) from exc
    return zeros, poles


# --------------------------------------------------------------------------
# certification reports


def report_to_text(report, label: str = "") -> str:
    doc = {
        "type": "certification",
        "label": label,
        "kind": report.kind,
        "verdicts": {k: bool(v) for k, v in report.verdicts.items()},
        "passed": report.passed,
        "witnesses": {
            "min_re": report.min_re,
            "monotone": report.monotone,
            "max_abs_im": report.max_abs_im,
            "max_im_over_re": report.max_ratio,
            "C": report.C,
            "unmatched": [[a.real, a.imag] for a in report.unmatched],
        },
    }
    if report.e_table:
        doc["condition_e"] = [{"x": x, "order": n, "residual": r} for x, n, r in report.e_table]
    return dumps(doc, indent=1) + "\n"


# --------------------------------------------------------------------------
# ordinate lists


def parse_ordinates(text: str) -> list[float]:
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            v = float(s)
        except ValueError:
            raise DocumentError(f"not a number: {s!r}", lineno) from None
        if not math.isfinite(v) or v <= 0:
            raise DocumentError(f"ordinate must be a positive real: {s!r}", lineno)
        if values and v < values[-1]:
            raise OrderingError(f"ordinate {s} is below its predecessor {values[-1]!r}", lineno)
        values.append(v)
    if not values:
        raise DocumentError("ordinate list is empty")
    return values


def load_ordinates(path, tail: bool = True) -> RiemannSequenceCandidate:
    """Real terms from a one-per-line ordinate file, with the zeta tail model attached."""
    return zeta_sequence(parse_ordinates(Path(path).read_text()), label=str(path), tail=tail)


def ordinates_to_text(values) -> str:
    return "".join(f"{float(v):.17g}\n" for v in values)


def bundled_ordinates_path() -> Path:
    return Path(__file__).with_name("data") / "zeta_ordinates.txt"


def load_bundled_ordinates(count: int | None = None) -> RiemannSequenceCandidate:
    values = parse_ordinates(bundled_ordinates_path().read_text())
    if count is not None:
        values = values[:count]
    return zeta_sequence(values, label="zeta")
