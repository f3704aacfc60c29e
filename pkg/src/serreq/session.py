"""Session input handling, payload codecs, witnesses, and report documents.

The JSON input schema is

    { "engine": {"kind": "finite_abelian"|"a2_rep"|"fixture", ...},
      "objects": {name: payload, ...},
      "morphisms": {name: {"src": name, "dst": name, ...payload}, ...} }

where integer-engine object payloads are {"relations": [[...]], "gens": g}
and quiver payloads are {"dims": [d1, d2], "alpha": [[...]]} with rational
entries written "a/b".  Witnesses serialize enough data to replay one
failed check in isolation; report documents round-trip through JSON and
are byte-identical for identical inputs once timing fields are removed.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import __version__, serre
from .category import ShortExactSequence
from .errors import InputValidationError
from .linalg import Mat, PrimeField, QQ
from .quiver import SinkSupportTheory
from .zmodules import FixtureTheory, PPrimaryTheory


# ---------------------------------------------------------------------------
# engines and theories


def field_from_name(name):
    if isinstance(name, int):
        return PrimeField(name)
    low = str(name).lower()
    if low in ("q", "qq", "rational", "rationals"):
        return QQ
    if low.startswith("f"):
        low = low[1:]
    try:
        return PrimeField(int(low))
    except ValueError as exc:
        raise InputValidationError(f"unknown field name: {name}") from exc


def theory_from_descriptor(desc: dict):
    if not isinstance(desc, dict) or "kind" not in desc:
        raise InputValidationError("engine descriptor must be an object with a 'kind'")
    kind = desc["kind"]
    if kind == "finite_abelian":
        p = desc.get("p")
        if not isinstance(p, int):
            raise InputValidationError("finite_abelian engine needs an integer 'p'")
        return PPrimaryTheory(p)
    if kind == "fixture":
        p = desc.get("p")
        if not isinstance(p, int):
            raise InputValidationError("fixture engine needs an integer 'p' (0 = torsion)")
        return FixtureTheory(p)
    if kind == "a2_rep":
        return SinkSupportTheory(field_from_name(desc.get("field", "f101")))
    raise InputValidationError(f"unknown engine kind: {kind}")


# ---------------------------------------------------------------------------
# value codecs


def _entry_to_json(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return int(x)


def _entry_from_json(x):
    if isinstance(x, str):
        num, _, den = x.partition("/")
        return Fraction(int(num), int(den or "1"))
    if isinstance(x, (int, bool)) and not isinstance(x, bool):
        return int(x)
    raise InputValidationError(f"matrix entries must be integers or 'a/b', got {x!r}")


def mat_to_json(m: Mat):
    return [[_entry_to_json(x) for x in row] for row in m.data]


def mat_from_json(rows, expected_cols=None):
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise InputValidationError("matrix payload must be a list of rows")
    data = [[_entry_from_json(x) for x in r] for r in rows]
    if not data:
        if expected_cols is None:
            raise InputValidationError("empty matrix needs an explicit column count")
        return Mat.zeros(0, expected_cols)
    cols = len(data[0])
    if any(len(r) != cols for r in data):
        raise InputValidationError("ragged matrix payload")
    if expected_cols is not None and cols != expected_cols:
        raise InputValidationError(f"expected {expected_cols} columns, got {cols}")
    return Mat.from_rows(data, cols)


def obj_to_payload(theory, m):
    if theory.kind in ("finite_abelian", "fixture"):
        return {"relations": mat_to_json(m.relations), "gens": m.gens}
    return {"dims": [m.d1, m.d2], "alpha": mat_to_json(m.alpha)}


def obj_from_payload(theory, payload, where="object"):
    if not isinstance(payload, dict):
        raise InputValidationError(f"{where}: payload must be an object")
    if theory.kind in ("finite_abelian", "fixture"):
        if "relations" not in payload:
            raise InputValidationError(f"{where}: integer objects need 'relations'")
        gens = payload.get("gens")
        rel = mat_from_json(payload["relations"], expected_cols=gens)
        obj = theory.engine.obj(rel)
        if theory.kind == "finite_abelian" and theory.engine.order(obj) is None:
            raise InputValidationError(f"{where}: object is not finite")
        return obj
    dims = payload.get("dims")
    if (not isinstance(dims, list) or len(dims) != 2
            or any(not isinstance(d, int) or d < 0 for d in dims)):
        raise InputValidationError(f"{where}: quiver objects need 'dims': [d1, d2]")
    mat = mat_from_json(payload.get("alpha", []), expected_cols=dims[1])
    if mat.rows != dims[0]:
        raise InputValidationError(f"{where}: alpha must have {dims[0]} rows")
    return theory.engine.obj(dims[0], dims[1], mat)


def mor_to_payload(theory, f):
    d = {"src": obj_to_payload(theory, f.src), "dst": obj_to_payload(theory, f.dst)}
    if theory.kind in ("finite_abelian", "fixture"):
        d["matrix"] = mat_to_json(f.matrix)
    else:
        d["f1"] = mat_to_json(f.f1)
        d["f2"] = mat_to_json(f.f2)
    return d


def mor_from_payload(theory, payload, where="morphism"):
    src = obj_from_payload(theory, payload["src"], where + ".src")
    dst = obj_from_payload(theory, payload["dst"], where + ".dst")
    return _mor_between(theory, src, dst, payload, where)


def _mor_between(theory, src, dst, payload, where):
    e = theory.engine
    if theory.kind in ("finite_abelian", "fixture"):
        if "matrix" not in payload:
            raise InputValidationError(f"{where}: integer morphisms need 'matrix'")
        mat = mat_from_json(payload["matrix"], expected_cols=dst.gens)
        if mat.rows != src.gens:
            raise InputValidationError(f"{where}: matrix must have {src.gens} rows")
        f = e.mor(src, dst, mat)
    else:
        if "f1" not in payload or "f2" not in payload:
            raise InputValidationError(f"{where}: quiver morphisms need 'f1' and 'f2'")
        f1 = mat_from_json(payload["f1"], expected_cols=dst.d1)
        f2 = mat_from_json(payload["f2"], expected_cols=dst.d2)
        if f1.rows != src.d1 or f2.rows != src.d2:
            raise InputValidationError(f"{where}: component row counts do not match")
        f = e.mor(src, dst, f1, f2)
    if not e.is_well_defined(f):
        raise InputValidationError(f"{where}: payload does not define a morphism")
    return f


def ses_to_payload(theory, ses):
    return {"iota": mor_to_payload(theory, ses.iota), "pi": mor_to_payload(theory, ses.pi)}


def ses_from_payload(theory, payload, where="ses"):
    return ShortExactSequence(mor_from_payload(theory, payload["iota"], where + ".iota"),
                              mor_from_payload(theory, payload["pi"], where + ".pi"))


# ---------------------------------------------------------------------------
# witnesses


def witness_to_jsonable(witness: dict) -> dict:
    theory = theory_from_descriptor(witness["engine"])
    data = {}
    for key, value in witness["data"].items():
        if key == "object":
            data[key] = obj_to_payload(theory, value)
        elif key in ("morphism", "morphism2"):
            data[key] = mor_to_payload(theory, value)
        elif key == "ses":
            data[key] = ses_to_payload(theory, value)
        else:
            data[key] = value
    out = {k: v for k, v in witness.items() if k != "data"}
    out["data"] = data
    out["version"] = __version__
    return out


def witness_from_jsonable(doc: dict):
    """Decode a witness document; returns (theory, candidate_tag, check, data,
    version_mismatch)."""
    for key in ("engine", "check", "data"):
        if key not in doc:
            raise InputValidationError(f"witness document lacks '{key}'")
    theory = theory_from_descriptor(doc["engine"])
    raw = doc["data"]
    if not isinstance(raw, dict):
        raise InputValidationError("witness 'data' must be an object")
    data = {}
    for key, value in raw.items():
        if key == "object":
            data[key] = obj_from_payload(theory, value, "witness.object")
        elif key in ("morphism", "morphism2"):
            data[key] = mor_from_payload(theory, value, f"witness.{key}")
        elif key == "ses":
            data[key] = ses_from_payload(theory, value, "witness.ses")
        else:
            data[key] = value
    mismatch = doc.get("version") != __version__
    return theory, doc.get("candidate"), doc["check"], data, mismatch


def replay_witness(doc: dict) -> dict:
    theory, tag, check, data, mismatch = witness_from_jsonable(doc)
    passed, detail = serre.replay_check(theory, tag, check, data)
    return {
        "check": check,
        "engine": theory.describe(),
        "candidate": tag,
        "pass": passed,
        "reproduced": not passed,
        "detail": detail,
        "version_mismatch": mismatch,
    }


# ---------------------------------------------------------------------------
# session input documents


class SessionInput:
    """Validated engine + named objects + named morphisms."""

    def __init__(self, theory, objects, morphisms):
        self.theory = theory
        self.objects = objects
        self.morphisms = morphisms


def load_session_input(doc: dict, theory=None) -> SessionInput:
    if not isinstance(doc, dict):
        raise InputValidationError("input document must be a JSON object")
    if "engine" in doc:
        file_theory = theory_from_descriptor(doc["engine"])
        if theory is not None and file_theory.describe() != theory.describe():
            raise InputValidationError(
                f"engine flags {theory.describe()} conflict with input file "
                f"engine {file_theory.describe()}")
        theory = file_theory
    if theory is None:
        raise InputValidationError("no engine given (flags or input file)")
    objects = {}
    for name, payload in (doc.get("objects") or {}).items():
        objects[name] = obj_from_payload(theory, payload, f"objects.{name}")
    morphisms = {}
    for name, payload in (doc.get("morphisms") or {}).items():
        if not isinstance(payload, dict):
            raise InputValidationError(f"morphisms.{name}: payload must be an object")
        src_name, dst_name = payload.get("src"), payload.get("dst")
        for ref in (src_name, dst_name):
            if not isinstance(ref, str) or ref not in objects:
                raise InputValidationError(
                    f"morphisms.{name}: src/dst must name declared objects")
        morphisms[name] = _mor_between(theory, objects[src_name], objects[dst_name],
                                       payload, f"morphisms.{name}")
    return SessionInput(theory, objects, morphisms)


def load_json_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputValidationError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputValidationError(f"{path} is not valid JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# report documents


def build_document(command: dict, seed, results, check_reports, exit_code, timings):
    return {
        "command": command,
        "seed": seed,
        "versions": {"serreq": __version__},
        "results": results,
        "checks": [r.to_dict(witness_codec=witness_to_jsonable) for r in check_reports],
        "exit": exit_code,
        "timings": timings,
    }


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def strip_timings(doc):
    """A copy of the document with every timing field removed."""
    if isinstance(doc, dict):
        return {k: strip_timings(v) for k, v in doc.items()
                if k not in ("timings", "wall_ms", "elapsed_ms")}
    if isinstance(doc, list):
        return [strip_timings(v) for v in doc]
    return doc
