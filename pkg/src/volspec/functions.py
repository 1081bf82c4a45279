"""Symbolic descriptions of the ODE coefficient functions f(t).

A :class:`FunctionSpec` is what the rest of the package consumes: it can
evaluate f on arrays, knows its exact antiderivative when one exists
(used for closed-form reference solutions), and reports its polynomial
degree when it has one (used to size quadrature rules and to predict
matrix bandwidths).

The JSON forms accepted by :func:`from_json`:

    {"kind": "constant", "value": 1}
    {"kind": "monomial", "degree": 3}
    {"kind": "polynomial", "coeffs": [0, 0, 0, 1]}   # ascending powers
    {"kind": "cos"}
    {"kind": "log1p"}
    {"kind": "sampled", "nodes": [...], "values": [...]}
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError

__all__ = [
    "FunctionSpec",
    "constant",
    "monomial",
    "polynomial",
    "cosine",
    "log1p",
    "sampled",
    "catalog",
    "from_json",
    "resolve",
]

_KINDS = ("constant", "monomial", "polynomial", "cos", "log1p", "sampled")


@dataclass(frozen=True, eq=False)
class FunctionSpec:
    kind: str
    value: float = 0.0
    degree: int = 0
    coeffs: tuple[float, ...] = ()
    nodes: np.ndarray | None = field(default=None, repr=False)
    values: np.ndarray | None = field(default=None, repr=False)
    label: str = ""

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ConfigurationError(f"unknown function kind {self.kind!r}")
        if self.kind == "polynomial":
            if len(self.coeffs) == 0:
                raise ConfigurationError("polynomial needs a non-empty coefficient list")
            if not all(np.isfinite(c) for c in self.coeffs):
                raise ConfigurationError("polynomial coefficients must be finite")
        if self.kind == "sampled":
            if self.nodes is None or self.values is None:
                raise ConfigurationError("sampled function needs both nodes and values")
            if self.nodes.shape != self.values.shape or self.nodes.ndim != 1:
                raise ConfigurationError("sampled nodes and values must be 1-d and equal length")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "constant":
            return np.full(t.shape, self.value)
        if self.kind == "monomial":
            return t**self.degree
        if self.kind == "polynomial":
            return np.polynomial.polynomial.polyval(t, np.asarray(self.coeffs))
        if self.kind == "cos":
            return np.cos(t)
        if self.kind == "log1p":
            return np.log1p(t)
        # sampled: only evaluable at its own nodes
        if t.shape == self.nodes.shape and np.allclose(t, self.nodes, rtol=0, atol=1e-12):
            return self.values.copy()
        raise ConfigurationError("sampled function queried away from its sample nodes")

    @property
    def antiderivative_known(self) -> bool:
        return self.kind != "sampled"

    def antiderivative(self, t):
        """A(t) = int_0^t f, in closed form."""
        t = np.asarray(t, dtype=float)
        if self.kind == "constant":
            return self.value * t
        if self.kind == "monomial":
            return t ** (self.degree + 1) / (self.degree + 1)
        if self.kind == "polynomial":
            c = np.asarray(self.coeffs)
            anti = np.concatenate(([0.0], c / (np.arange(c.size) + 1.0)))
            return np.polynomial.polynomial.polyval(t, anti)
        if self.kind == "cos":
            return np.sin(t)
        if self.kind == "log1p":
            return (t + 1.0) * np.log1p(t) - t
        raise ConfigurationError("sampled function has no closed-form antiderivative")

    @property
    def polynomial_degree(self) -> int | None:
        """Exact polynomial degree, or None for non-polynomial kinds."""
        if self.kind == "constant":
            return 0
        if self.kind == "monomial":
            return self.degree
        if self.kind == "polynomial":
            return len(self.coeffs) - 1
        return None


def constant(value: float) -> FunctionSpec:
    return FunctionSpec(kind="constant", value=float(value), label=f"{value:g}")


def monomial(degree: int) -> FunctionSpec:
    if degree < 0:
        raise ConfigurationError("monomial degree must be non-negative")
    label = "t" if degree == 1 else f"t^{degree}"
    return FunctionSpec(kind="monomial", degree=int(degree), label=label)


def polynomial(coeffs) -> FunctionSpec:
    return FunctionSpec(
        kind="polynomial",
        coeffs=tuple(float(c) for c in coeffs),
        label="poly[" + ",".join(f"{c:g}" for c in coeffs) + "]",
    )


def cosine() -> FunctionSpec:
    return FunctionSpec(kind="cos", label="cos")


def log1p() -> FunctionSpec:
    return FunctionSpec(kind="log1p", label="log1p")


def sampled(nodes, values) -> FunctionSpec:
    return FunctionSpec(
        kind="sampled",
        nodes=np.asarray(nodes, dtype=float),
        values=np.asarray(values, dtype=float),
        label="sampled",
    )


def catalog() -> dict[str, FunctionSpec]:
    """The five stock coefficient functions, in display order."""
    return {
        "1": constant(1.0),
        "t": monomial(1),
        "t^3": monomial(3),
        "cos": cosine(),
        "log1p": log1p(),
    }


_ALIASES = {
    "1": "1",
    "one": "1",
    "t": "t",
    "t^3": "t^3",
    "t3": "t^3",
    "cos": "cos",
    "log1p": "log1p",
    "log(t+1)": "log1p",
}


def from_json(obj) -> FunctionSpec:
    """Build a FunctionSpec from a JSON string or an already-parsed dict."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ConfigurationError("function JSON must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "constant":
        if "value" not in obj:
            raise ConfigurationError("constant function needs a 'value'")
        return constant(obj["value"])
    if kind == "monomial":
        return monomial(obj.get("degree", 1))
    if kind == "polynomial":
        return polynomial(obj.get("coeffs", ()))
    if kind == "cos":
        return cosine()
    if kind == "log1p":
        return log1p()
    if kind == "sampled":
        return sampled(obj.get("nodes", ()), obj.get("values", ()))
    raise ConfigurationError(f"unknown function kind {kind!r}")


def resolve(token) -> FunctionSpec:
    """Turn a CLI token into a FunctionSpec.

    Accepts catalog names ('1', 't', 't^3', 'cos', 'log1p' and common
    aliases) or an inline JSON object.
    """
    if isinstance(token, FunctionSpec):
        return token
    if isinstance(token, dict):
        return from_json(token)
    token = token.strip()
    if token.startswith("{"):
        try:
            return from_json(token)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"invalid function JSON: {exc}") from exc
    name = _ALIASES.get(token.lower(), _ALIASES.get(token))
    if name is None:
        raise ConfigurationError(
            f"unknown function {token!r}; expected one of {sorted(set(_ALIASES))} or JSON"
        )
    return catalog()[name]
