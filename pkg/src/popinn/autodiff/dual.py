"""Forward-mode scalars carrying two input tangents.

A ``Dual2`` holds a value together with its derivatives with respect to the
two normalized network inputs (age and time).  Arithmetic follows the usual
truncated-Taylor rules, so running a computation on seeded inputs yields the
exact first derivatives of the output with respect to both inputs.
"""
from __future__ import annotations

import math

from ..errors import NumericError

__all__ = ["Dual2", "seed_inputs", "dual_apply", "tanh", "sigmoid", "exp"]


class Dual2:
    __slots__ = ("v", "da", "dt")

    def __init__(self, v: float, da: float = 0.0, dt: float = 0.0):
        self.v = float(v)
        self.da = float(da)
        self.dt = float(dt)

    @staticmethod
    def _lift(x) -> "Dual2":
        return x if isinstance(x, Dual2) else Dual2(x)

    def __repr__(self):
        return f"Dual2({self.v!r}, {self.da!r}, {self.dt!r})"

    def __add__(self, other):
        o = Dual2._lift(other)
        return Dual2(self.v + o.v, self.da + o.da, self.dt + o.dt)

    __radd__ = __add__

    def __sub__(self, other):
        o = Dual2._lift(other)
        return Dual2(self.v - o.v, self.da - o.da, self.dt - o.dt)

    def __rsub__(self, other):
        o = Dual2._lift(other)
        return Dual2(o.v - self.v, o.da - self.da, o.dt - self.dt)

    def __mul__(self, other):
        o = Dual2._lift(other)
        return Dual2(
            self.v * o.v,
            self.da * o.v + self.v * o.da,
            self.dt * o.v + self.v * o.dt,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Dual2._lift(other)
        if o.v == 0.0:
            raise NumericError("division by a zero-valued Dual2")
        inv = 1.0 / o.v
        return Dual2(
            self.v * inv,
            (self.da - self.v * inv * o.da) * inv,
            (self.dt - self.v * inv * o.dt) * inv,
        )

    def __rtruediv__(self, other):
        return Dual2._lift(other).__truediv__(self)

    def __neg__(self):
        return Dual2(-self.v, -self.da, -self.dt)


def tanh(x):
    """tanh for floats and Dual2."""
    if isinstance(x, Dual2):
        t = math.tanh(x.v)
        s = 1.0 - t * t
        return Dual2(t, s * x.da, s * x.dt)
    return math.tanh(x)


def sigmoid(x):
    """Logistic function for floats and Dual2."""
    if isinstance(x, Dual2):
        s = _sigmoid_val(x.v)
        d = s * (1.0 - s)
        return Dual2(s, d * x.da, d * x.dt)
    return _sigmoid_val(x)


def exp(x):
    if isinstance(x, Dual2):
        e = math.exp(x.v)
        return Dual2(e, e * x.da, e * x.dt)
    return math.exp(x)


def _sigmoid_val(v: float) -> float:
    # split to avoid overflow in exp for large |v|
    if v >= 0.0:
        z = math.exp(-v)
        return 1.0 / (1.0 + z)
    z = math.exp(v)
    return z / (1.0 + z)


def seed_inputs(a_norm: float, t_norm: float) -> tuple[Dual2, Dual2]:
    """Lift the two normalized coordinates into seeded Dual2 values."""
    if not (math.isfinite(a_norm) and math.isfinite(t_norm)):
        raise NumericError("non-finite input coordinates")
    return Dual2(a_norm, 1.0, 0.0), Dual2(t_norm, 0.0, 1.0)


def dual_apply(op: str, *args) -> Dual2:
    """Apply a named primitive to Dual2 arguments.

    ``scale`` expects (Dual2, constant).  All other binary ops take two
    Dual2 (or plain number) arguments; unary ops take one.
    """
    if op == "add":
        return Dual2._lift(args[0]) + args[1]
    if op == "sub":
        return Dual2._lift(args[0]) - args[1]
    if op == "mul":
        return Dual2._lift(args[0]) * args[1]
    if op == "div":
        return Dual2._lift(args[0]) / Dual2._lift(args[1])
    if op == "tanh":
        return tanh(Dual2._lift(args[0]))
    if op == "sigmoid":
        return sigmoid(Dual2._lift(args[0]))
    if op == "exp":
        return exp(Dual2._lift(args[0]))
    if op == "scale":
        x = Dual2._lift(args[0])
        c = float(args[1])
        return Dual2(x.v * c, x.da * c, x.dt * c)
    raise ValueError(f"unknown primitive {op!r}")
