"""JSON schemas for algebras, functionals and reports.

Complex scalars are serialized as two-element [re, im] arrays everywhere;
python's shortest-roundtrip float repr keeps the doubles lossless.  An
algebra file is either the full structure-constant schema
``{"label", "dim", "structure", "involution", "unit"?}`` or a constructor
shorthand like ``{"kind": "matrix", "n": 2}``.  A functional file is
``{"algebra": <label or inline algebra object>, "values": [[re, im], ...]}``.
"""
from __future__ import annotations

import json

import numpy as np

from .algebra import StarAlgebra, construct_algebra, validate_structure
from .errors import ConstructionError
from .functional import Functional


def complex_to_pairs(arr: np.ndarray):
    arr = np.asarray(arr, dtype=complex)
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def pairs_to_complex(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim < 1 or arr.shape[-1] != 2:
        raise ConstructionError("complex data must be nested [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def algebra_to_json(algebra: StarAlgebra) -> dict:
    out = {
        "label": algebra.label,
        "dim": algebra.dim,
        "structure": complex_to_pairs(algebra.structure),
        "involution": complex_to_pairs(algebra.involution),
    }
    if algebra.unit is not None:
        out["unit"] = complex_to_pairs(algebra.unit)
    return out


def algebra_from_json(obj: dict, validate: bool = True) -> StarAlgebra:
    if not isinstance(obj, dict):
        raise ConstructionError("algebra JSON must be an object")
    if "kind" in obj:
        params = {k: v for k, v in obj.items() if k != "kind"}
        if obj["kind"] == "direct_sum":
            params["a"] = algebra_from_json(params["a"], validate=validate)
            params["b"] = algebra_from_json(params["b"], validate=validate)
        return construct_algebra(obj["kind"], **params)
    try:
        algebra = StarAlgebra(
            dim=int(obj["dim"]),
            structure=pairs_to_complex(obj["structure"]),
            involution=pairs_to_complex(obj["involution"]),
            unit=pairs_to_complex(obj["unit"]) if obj.get("unit") is not None else None,
            label=str(obj.get("label", "")),
        )
    except KeyError as exc:
        raise ConstructionError(f"algebra JSON is missing field {exc}") from None
    if validate:
        report = validate_structure(algebra)
        if not report.valid:
            worst = report.violations[0]
            raise ConstructionError(
                f"algebra violates {worst.kind} at {worst.indices} "
                f"(residual {worst.residual:.3e})")
    return algebra


def functional_to_json(f: Functional) -> dict:
    return {
        "algebra": f.algebra.label,
        "values": complex_to_pairs(f.values),
    }


def functional_from_json(obj: dict, registry: dict | None = None,
                         algebra: StarAlgebra | None = None) -> Functional:
    """Load a functional; the algebra may be inline, by label, or supplied.

    ``registry`` maps labels to already-loaded algebras; ``algebra`` wins
    when given (all functionals of one computation must share an instance).
    """
    if not isinstance(obj, dict) or "values" not in obj:
        raise ConstructionError("functional JSON needs a 'values' field")
    if algebra is None:
        ref = obj.get("algebra")
        if isinstance(ref, dict):
            algebra = algebra_from_json(ref)
        elif isinstance(ref, str) and registry and ref in registry:
            algebra = registry[ref]
        else:
            raise ConstructionError(
                f"cannot resolve algebra reference {ref!r}; pass --algebra "
                "or inline the algebra object")
    return Functional(algebra, pairs_to_complex(obj["values"]))


def load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def dump_json(obj, path: str | None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    return text
