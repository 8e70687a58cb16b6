"""Reverse-mode recording over Dual2-valued arithmetic.

The tape stores one node per primitive application.  Node values and local
partials are Dual2, so a single backward sweep seeded with {1,0,0} at the
root P returns, for every parameter leaf, the triple

    (dP/dtheta, d(dP/da)/dtheta, d(dP/dt)/dtheta)

i.e. the parameter gradient together with the mixed second derivatives
needed by the PDE-residual loss gradient.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dual import Dual2, exp, sigmoid, tanh

__all__ = ["Tape", "Adjoints", "tape_backward"]

_ONE = Dual2(1.0)
_MINUS_ONE = Dual2(-1.0)


@dataclass
class _Node:
    kind: str
    parents: tuple
    partials: tuple  # one Dual2 per parent


@dataclass
class Adjoints:
    """Per-parameter adjoint triples, ordered like the parameter leaves."""

    d_value: np.ndarray  # dP/dtheta
    d_da: np.ndarray     # d2P/(da dtheta)
    d_dt: np.ndarray     # d2P/(dt dtheta)

    def __len__(self):
        return self.d_value.size


class Tape:
    """Append-only record of a Dual2-valued computation."""

    def __init__(self):
        self.nodes: list[_Node] = []
        self.values: list[Dual2] = []
        self.param_ids: list[int] = []

    def __len__(self):
        return len(self.nodes)

    def _push(self, kind, parents, partials, value) -> int:
        self.nodes.append(_Node(kind, parents, partials))
        self.values.append(value)
        return len(self.nodes) - 1

    # ----- leaves -----
    def param(self, value: float) -> int:
        """Parameter leaf: a plain real constant whose adjoint is reported."""
        idx = self._push("param", (), (), Dual2(value))
        self.param_ids.append(idx)
        return idx

    def input(self, seeded: Dual2) -> int:
        """Seeded input leaf (carries unit tangent for age or time)."""
        return self._push("input", (), (), seeded)

    def const(self, value) -> int:
        """Non-differentiated constant (e.g. a coefficient of the sample point)."""
        d = value if isinstance(value, Dual2) else Dual2(value)
        return self._push("const", (), (), d)

    # ----- primitives -----
    def add(self, i: int, j: int) -> int:
        return self._push("add", (i, j), (_ONE, _ONE), self.values[i] + self.values[j])

    def sub(self, i: int, j: int) -> int:
        return self._push("sub", (i, j), (_ONE, _MINUS_ONE), self.values[i] - self.values[j])

    def mul(self, i: int, j: int) -> int:
        x, y = self.values[i], self.values[j]
        return self._push("mul", (i, j), (y, x), x * y)

    def div(self, i: int, j: int) -> int:
        x, y = self.values[i], self.values[j]
        out = x / y
        inv = _ONE / y
        return self._push("div", (i, j), (inv, -x * inv * inv), out)

    def tanh(self, i: int) -> int:
        t = tanh(self.values[i])
        return self._push("tanh", (i,), (_ONE - t * t,), t)

    def sigmoid(self, i: int) -> int:
        s = sigmoid(self.values[i])
        return self._push("sigmoid", (i,), (s * (_ONE - s),), s)

    def exp(self, i: int) -> int:
        e = exp(self.values[i])
        return self._push("exp", (i,), (e,), e)

    def scale(self, i: int, c: float) -> int:
        x = self.values[i]
        return self._push("scale", (i,), (Dual2(c),), Dual2(x.v * c, x.da * c, x.dt * c))


def tape_backward(tape: Tape, root: int) -> Adjoints:
    """Reverse sweep from ``root`` with seed {1,0,0}.

    Returns the adjoint triples of all parameter leaves in creation order.
    """
    n = len(tape.nodes)
    if n == 0:
        raise ValueError("empty tape")
    if not (0 <= root < n):
        raise ValueError(f"root index {root} out of range for tape of size {n}")

    adj: list[Dual2 | None] = [None] * (root + 1)
    adj[root] = Dual2(1.0)
    for idx in range(root, -1, -1):
        a = adj[idx]
        if a is None:
            continue
        node = tape.nodes[idx]
        for parent, partial in zip(node.parents, node.partials):
            contrib = a * partial
            if adj[parent] is None:
                adj[parent] = contrib
            else:
                adj[parent] = adj[parent] + contrib

    k = len(tape.param_ids)
    d_value = np.zeros(k)
    d_da = np.zeros(k)
    d_dt = np.zeros(k)
    for out_i, pid in enumerate(tape.param_ids):
        if pid <= root and adj[pid] is not None:
            a = adj[pid]
            d_value[out_i] = a.v
            d_da[out_i] = a.da
            d_dt[out_i] = a.dt
    return Adjoints(d_value, d_da, d_dt)
