"""JSON wire formats. Complex scalars are [re, im] pairs."""
from __future__ import annotations

import json
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from .algebra import DEFAULT_TOL, Tolerance
from .controlled import ControlledSystem, validate_control_pair
from .gframe import GFrameFamily
from .hmodule import CoefficientSequence, ModuleVector
from .operators import AdjointableOperator


class ParseError(ValueError):
    pass


def _pairs(arr: np.ndarray):
    """Nested lists with the trailing complex axis split into [re, im]."""
    arr = np.asarray(arr, dtype=complex)
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def _complex(data, ndim: int) -> np.ndarray:
    try:
        a = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed complex array: {exc}") from None
    if a.ndim != ndim + 1 or a.shape[-1] != 2:
        raise ParseError(f"expected a {ndim}-d array of [re, im] pairs, got shape {a.shape}")
    return a[..., 0] + 1j * a[..., 1]


def element_to_json(a: np.ndarray):
    return _pairs(a)


def element_from_json(data) -> np.ndarray:
    a = _complex(data, 2)
    if a.shape[0] != a.shape[1]:
        raise ParseError(f"algebra element must be square, got {a.shape}")
    return a


def vector_to_json(f: ModuleVector):
    return _pairs(f.components)


def vector_from_json(data) -> ModuleVector:
    return ModuleVector(_complex(data, 3))


def sequence_to_json(g: CoefficientSequence) -> dict:
    return {"dims": g.dims, "blocks": [vector_to_json(b) for b in g.blocks]}


def sequence_from_json(data) -> CoefficientSequence:
    seq = CoefficientSequence(tuple(vector_from_json(b) for b in data["blocks"]))
    if seq.dims != list(data["dims"]):
        raise ParseError(f"declared dims {data['dims']} do not match blocks {seq.dims}")
    return seq


def coeffs_to_json(T: AdjointableOperator):
    return _pairs(T.coeffs)


def coeffs_from_json(data, k: int, n_out: int, n_in: int) -> AdjointableOperator:
    c = _complex(data, 4)
    if c.shape != (n_out, n_in, k, k):
        raise ParseError(f"coefficient array has shape {c.shape}, expected {(n_out, n_in, k, k)}")
    return AdjointableOperator(c)


def operator_to_json(T: AdjointableOperator) -> dict:
    return {"k": T.k, "n_in": T.n_in, "n_out": T.n_out, "coeffs": coeffs_to_json(T)}


def operator_from_json(data) -> AdjointableOperator:
    return coeffs_from_json(data["coeffs"], data["k"], data["n_out"], data["n_in"])


def family_to_json(F: GFrameFamily) -> dict:
    return {"k": F.k, "n": F.n, "dims": F.dims, "lambdas": [coeffs_to_json(L) for L in F.members]}


@dataclass(frozen=True, eq=False)
class Instance:
    family: GFrameFamily
    C: AdjointableOperator
    Cp: AdjointableOperator
    tol: Tolerance = DEFAULT_TOL
    commutation: str = "member"

    def system(self) -> ControlledSystem:
        return validate_control_pair(self.C, self.Cp, self.family, self.tol, self.commutation)


def instance_to_json(inst: Instance) -> dict:
    out = family_to_json(inst.family)
    out["C"] = coeffs_to_json(inst.C)
    out["Cprime"] = coeffs_to_json(inst.Cp)
    if inst.tol != DEFAULT_TOL:
        out["tolerance"] = {f.name: getattr(inst.tol, f.name) for f in fields(Tolerance)}
    if inst.commutation != "member":
        out["commutation"] = inst.commutation
    return out


def _control(data, key, k, n) -> AdjointableOperator:
    if key not in data:
        return AdjointableOperator.identity(k, n)
    value = data[key]
    if isinstance(value, dict):  # full operator object
        op = operator_from_json(value)
        if op.coeffs.shape != (n, n, k, k):
            raise ParseError(f"{key} has shape {op.coeffs.shape}, expected {(n, n, k, k)}")
        return op
    return coeffs_from_json(value, k, n, n)


def instance_from_json(data) -> Instance:
    try:
        k, n, dims = int(data["k"]), int(data["n"]), [int(d) for d in data["dims"]]
        lambdas = data["lambdas"]
        if k < 1 or n < 1 or not dims or len(dims) != len(lambdas):
            raise ParseError("need k, n >= 1 and one lambda per entry of dims")
        members = tuple(coeffs_from_json(c, k, d, n) for c, d in zip(lambdas, dims))
        tol = Tolerance(**data["tolerance"]) if "tolerance" in data else DEFAULT_TOL
        commutation = data.get("commutation", "member")
        return Instance(GFrameFamily(members), _control(data, "C", k, n), _control(data, "Cprime", k, n), tol, commutation)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"invalid instance: {exc!r}") from None


def dumps(obj) -> str:
    """Canonical form: compact separators, insertion-ordered keys, trailing newline."""
    return json.dumps(obj, separators=(",", ":"), allow_nan=False) + "\n"


def load_instance(path) -> Instance:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from None
    return instance_from_json(data)


def save_instance(inst: Instance, path: Optional[str]) -> str:
    text = dumps(instance_to_json(inst))
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text
