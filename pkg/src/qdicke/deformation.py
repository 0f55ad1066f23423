"""Field-mode nonlinearity f(n) for q-oscillators and generic f-oscillators.

The deformed annihilation operator is ``a_q = a f(a^dagger a)``. For the
q-oscillator

    f(n) = sqrt( sinh(n ln q) / (n sinh(ln q)) )

which is evaluated here in the log domain so that large ``n ln q`` does not
overflow. Any other nonlinearity can be supplied as a custom rule, provided
it keeps the normalization f(1) = 1.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Union

__all__ = [
    "DeformationError",
    "DeformationKind",
    "DeformationSpec",
    "DeformationFunction",
    "Q_LIMIT_THRESHOLD",
    "PROBE_RANGE",
    "q_factor",
    "log_q_factor",
    "make_deformation",
    "register_deformation",
    "get_registered",
    "registered_names",
]

#: below this value of ``|ln q|`` the q -> 1 limit f(n) = 1 is returned
Q_LIMIT_THRESHOLD = 1e-8

#: custom rules are probed on n = 0..64 at construction
PROBE_RANGE = range(0, 65)

_F1_TOL = 1e-12
_LN2 = math.log(2.0)


class DeformationError(ValueError):
    """Invalid deformation parameter or custom rule."""


class DeformationKind(str, enum.Enum):
    IDENTITY = "identity"
    QDEFORMED = "q"
    CUSTOM = "custom"


def _log_sinh(x: float) -> float:
    # ln sinh x for x > 0, stable for both tiny and huge x
    return x - _LN2 + math.log(-math.expm1(-2.0 * x))


def _check_q(q: float) -> float:
    try:
        q = float(q)
    except (TypeError, ValueError) as exc:
        raise DeformationError(f"q must be a real number, got {q!r}") from exc
    if math.isnan(q) or q <= 0.0 or math.isinf(q):
        raise DeformationError(f"q must satisfy q > 0 (finite), got q={q!r}")
    return q


def _check_n(n: int) -> int:
    if isinstance(n, float):
        if math.isnan(n) or not n.is_integer():
            raise DeformationError(f"n must be a non-negative integer, got {n!r}")
        n = int(n)
    n = int(n)
    if n < 0:
        raise DeformationError(f"n must be a non-negative integer, got {n}")
    return n


def log_q_factor(n: int, q: float) -> float:
    """Natural log of the q-oscillator factor f(n).

    Never overflows: for large ``n |ln q|`` the result grows like
    ``(n - 1) |ln q| / 2 - ln(n) / 2``.
    """
    n = _check_n(n)
    x = abs(math.log(_check_q(q)))
    if x < Q_LIMIT_THRESHOLD:
        return 0.0
    if n == 0:
        # continuous extension of the n -> 0 limit
        return 0.5 * (math.log(x) - _log_sinh(x))
    return 0.5 * (_log_sinh(n * x) - math.log(n) - _log_sinh(x))


def q_factor(n: int, q: float) -> float:
    """q-oscillator nonlinearity f(n).

    Parameters
    ----------
    n : int
        Photon number, ``n >= 0``. ``f(0)`` is the continuous extension
        ``sqrt(ln q / sinh ln q)``; the dynamics never uses it.
    q : float
        Deformation parameter, ``q > 0``. The value is invariant under
        ``q -> 1/q`` and equals 1 for ``|ln q| < Q_LIMIT_THRESHOLD``.

    Returns
    -------
    float
        ``f(n) > 0``. Raises ``OverflowError`` if the value itself is not
        representable as a double; use :func:`log_q_factor` in that regime.
    """
    return math.exp(log_q_factor(n, q))


Rule = Union[Callable[[int], float], Mapping[int, float], Sequence[float]]


def _rule_to_callable(rule: Rule) -> Callable[[int], float]:
    if callable(rule):
        return rule
    if isinstance(rule, Mapping):
        table = {int(k): float(v) for k, v in rule.items()}

        def lookup(n: int) -> float:
            try:
                return table[n]
            except KeyError:
                raise DeformationError(f"custom table has no entry for n={n}") from None

        return lookup
    if isinstance(rule, Sequence) and not isinstance(rule, (str, bytes)):
        values = [float(v) for v in rule]

        def index(n: int) -> float:
            if not 0 <= n < len(values):
                raise DeformationError(f"custom table has no entry for n={n}")
            return values[n]

        return index
    raise DeformationError(f"custom rule must be callable, a mapping or a sequence, got {type(rule)!r}")


def _validate_rule(fn: Callable[[int], float], name: str) -> None:
    for n in PROBE_RANGE:
        try:
            value = float(fn(n))
        except DeformationError:
            # finite tables are allowed to stop early, but must cover n = 1
            if n <= 1:
                raise
            break
        if not math.isfinite(value) or value <= 0.0:
            raise DeformationError(f"custom rule {name!r} gives non-positive or non-finite f({n}) = {value!r}")
        if n == 1 and abs(value - 1.0) > _F1_TOL:
            raise DeformationError(f"custom rule {name!r} violates f(1) = 1 (got f(1) = {value!r})")


@dataclass(frozen=True)
class DeformationSpec:
    """Declaration of the nonlinearity: identity, q-deformed or custom.

    Use the constructors :meth:`identity`, :meth:`qdeformed` and
    :meth:`custom` rather than the raw fields.
    """

    kind: DeformationKind = DeformationKind.IDENTITY
    q: float | None = None
    rule: Rule | None = field(default=None, compare=False)
    name: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", DeformationKind(self.kind))
        if self.kind is DeformationKind.QDEFORMED:
            if self.q is None:
                raise DeformationError("q-deformation requires a value of q")
            object.__setattr__(self, "q", _check_q(self.q))
        elif self.kind is DeformationKind.CUSTOM:
            if self.rule is None:
                raise DeformationError("custom deformation requires a rule")
            if self.name is None:
                object.__setattr__(self, "name", getattr(self.rule, "__name__", "custom"))
            _validate_rule(_rule_to_callable(self.rule), self.name)

    @classmethod
    def identity(cls) -> DeformationSpec:
        return cls(DeformationKind.IDENTITY)

    @classmethod
    def qdeformed(cls, q: float) -> DeformationSpec:
        return cls(DeformationKind.QDEFORMED, q=q)

    @classmethod
    def custom(cls, rule: Rule, name: str | None = None) -> DeformationSpec:
        return cls(DeformationKind.CUSTOM, rule=rule, name=name)

    @property
    def label(self) -> str:
        if self.kind is DeformationKind.QDEFORMED:
            return f"q={self.q:g}"
        if self.kind is DeformationKind.CUSTOM:
            return f"custom:{self.name}"
        return "identity"


@dataclass(frozen=True)
class DeformationFunction:
    """Immutable callable ``n -> f(n)`` built by :func:`make_deformation`."""

    spec: DeformationSpec
    _fn: Callable[[int], float] = field(repr=False, compare=False)

    def __call__(self, n: int) -> float:
        return float(self._fn(_check_n(n)))


def _one(n: int) -> float:
    return 1.0


def make_deformation(spec: DeformationSpec) -> DeformationFunction:
    """Return the evaluable nonlinearity closed over ``spec``."""
    if spec.kind is DeformationKind.IDENTITY:
        return DeformationFunction(spec, _one)
    if spec.kind is DeformationKind.QDEFORMED:
        q = spec.q

        def fq(n: int) -> float:
            return q_factor(n, q)

        return DeformationFunction(spec, fq)
    fn = _rule_to_callable(spec.rule)
    _validate_rule(fn, spec.name)
    return DeformationFunction(spec, fn)


# -- named custom rules, addressable from the CLI as ``custom:NAME`` ----------

_REGISTRY: dict[str, Callable[[int], float]] = {}


def register_deformation(name: str, rule: Callable[[int], float]) -> None:
    """Register a custom rule under ``name`` after validating it."""
    _validate_rule(rule, name)
    _REGISTRY[name] = rule


def get_registered(name: str) -> DeformationSpec:
    try:
        rule = _REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(_REGISTRY)) or "none"
        raise DeformationError(f"unknown custom deformation {name!r} (registered: {known})") from None
    return DeformationSpec.custom(rule, name=name)


def registered_names() -> list[str]:
    return sorted(_REGISTRY)


def _sqrt_n(n: int) -> float:
    return math.sqrt(n) if n >= 1 else 1.0


def _inv_sqrt_n(n: int) -> float:
    return 1.0 / math.sqrt(n) if n >= 1 else 1.0


register_deformation("sqrt", _sqrt_n)
register_deformation("inv_sqrt", _inv_sqrt_n)
