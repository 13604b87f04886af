"""LawReport plus the canonical input encoding used for digests and replay."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .._backend import kernels
from ..linalg import matrix_from_obj, matrix_to_obj

IDENTITY_TOL = 1e-8
ORDER_TOL = 1e-9
SCALAR_TOL = 1e-12


def fnv1a64(data: bytes) -> int:
    """64-bit FNV-1a (offset 0xcbf29ce484222325, prime 0x100000001b3)."""
    return int(kernels.fnv1a64(np.frombuffer(data, dtype=np.uint8)))


def encode_value(v):
    if isinstance(v, np.ndarray):
        if v.ndim == 2:
            return matrix_to_obj(v)
        return [float(t) for t in v]
    if isinstance(v, (bool, str)) or v is None:
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    if isinstance(v, dict):
        return {k: encode_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [encode_value(x) for x in v]
    if hasattr(v, "to_dict"):
        return encode_value(v.to_dict())
    raise TypeError(f"cannot encode {type(v).__name__}")


def decode_value(v):
    if isinstance(v, dict):
        if "dim" in v and "entries" in v:
            return matrix_from_obj(v)
        return {k: decode_value(x) for k, x in v.items()}
    if isinstance(v, list):
        return [decode_value(x) for x in v]
    return v


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def digest(inputs: dict) -> str:
    return f"{fnv1a64(canonical_json(encode_value(inputs)).encode()):016x}"


@dataclass
class LawReport:
    """One law on one instance.

    ``residuals`` maps each diagnostic to a relative value: identity
    residuals are relative Frobenius distances (pass when ``<= tol``), order
    margins are min-eigenvalue margins divided by the chain's scale (pass
    when ``>= -tol``).
    """

    law_id: str
    instance_digest: str
    residuals: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    kinds: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)

    def identity(self, name, residual, tol=IDENTITY_TOL):
        self.residuals[name] = float(residual)
        self.tolerances[name] = float(tol)
        self.kinds[name] = "identity"
        return self

    def order(self, name, min_eig_diff, scale, tol=ORDER_TOL):
        scale = float(scale) if scale > 0 else 1.0
        self.residuals[name] = float(min_eig_diff) / scale
        self.tolerances[name] = float(tol)
        self.kinds[name] = "order"
        return self

    def slack(self, name, value, scale, tol=SCALAR_TOL):
        return self.order(name, value, scale, tol)

    def headroom(self, name):
        v = self.residuals[name]
        return -v if self.kinds[name] == "identity" else v

    @property
    def margin(self):
        """Smallest signed headroom over all diagnostics (nan-safe)."""
        vals = [self.headroom(k) for k in self.residuals]
        if not vals:
            return 0.0
        if any(np.isnan(v) for v in vals):
            return float("-inf")
        return float(min(vals))

    @property
    def passed(self):
        for name, v in self.residuals.items():
            if np.isnan(v):
                return False
            if self.kinds[name] == "identity":
                if not v <= self.tolerances[name]:
                    return False
            elif not v >= -self.tolerances[name]:
                return False
        return True

    def to_dict(self):
        return {
            "law_id": self.law_id,
            "pass": self.passed,
            "residuals": dict(self.residuals),
            "instance_digest": self.instance_digest,
        }
