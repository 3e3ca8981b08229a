"""JSON interchange for vectors, complex matrices, and verdict reports.

Complex entries are stored as [re, im] pairs.  Reports serialize with
sorted keys so identical inputs produce byte-identical output.
"""

import json
import math

import numpy as np

from . import linalg


class InputError(ValueError):
    """Malformed or inconsistent input document."""


def _entry_to_complex(e):
    if isinstance(e, (int, float)):
        return complex(e)
    if isinstance(e, (list, tuple)) and len(e) == 2:
        return complex(float(e[0]), float(e[1]))
    raise InputError(f"matrix entry must be a number or [re, im] pair, got {e!r}")


def vector_from_doc(doc) -> np.ndarray:
    if isinstance(doc, dict):
        doc = doc.get("vector")
    if not isinstance(doc, list):
        raise InputError("vector document must be a JSON array or {'vector': [...]}")
    try:
        return np.array([float(v) for v in doc], dtype=float)
    except (TypeError, ValueError) as e:
        raise InputError(f"bad vector entry: {e}") from None


def matrix_from_doc(doc) -> np.ndarray:
    if isinstance(doc, dict):
        body = doc.get("matrix")
    else:
        body = doc
    if not isinstance(body, list) or not body:
        raise InputError("matrix document must contain a nonempty 'matrix' array")
    M = np.array([[_entry_to_complex(e) for e in row] for row in body])
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InputError(f"matrix must be square, got shape {M.shape}")
    if isinstance(doc, dict) and "n" in doc and doc["n"] != M.shape[0]:
        raise InputError(f"declared n = {doc['n']} but matrix is {M.shape[0]}x{M.shape[0]}")
    return M


def hermitian_from_doc(doc, what: str = "matrix") -> np.ndarray:
    M = matrix_from_doc(doc)
    try:
        return linalg.as_hermitian(M)
    except ValueError:
        raise InputError(f"{what} must be hermitian") from None


def matrix_to_doc(M, label: str | None = None) -> dict:
    M = np.asarray(M, dtype=complex)
    doc = {
        "n": M.shape[0],
        "matrix": [[[float(e.real), float(e.imag)] for e in row] for row in M],
    }
    if label is not None:
        doc["label"] = label
    return doc


def vector_to_doc(v, label: str | None = None) -> dict:
    doc = {"vector": [float(x) for x in np.asarray(v, dtype=float)]}
    if label is not None:
        doc["label"] = label
    return doc


def load_json(path):
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from None


def load_vector(path) -> np.ndarray:
    return vector_from_doc(load_json(path))


def load_matrix(path) -> np.ndarray:
    return matrix_from_doc(load_json(path))


def load_hermitian(path, what: str = "matrix") -> np.ndarray:
    return hermitian_from_doc(load_json(path), what=what)


def _canonical(obj):
    if isinstance(obj, dict):
        return {k: _canonical(obj[k]) for k in obj}
    if isinstance(obj, (list, tuple)):
        return [_canonical(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        if math.isfinite(x):
            # Round-trip through 17 significant digits: value-preserving and
            # gives a canonical decimal form.
            return float(f"{x:.17g}")
        return x
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return _canonical(obj.tolist())
    return obj


def dump_report(report: dict) -> str:
    """Deterministic JSON: sorted keys, canonical floats, trailing newline."""
    return json.dumps(_canonical(report), sort_keys=True, indent=2) + "\n"
