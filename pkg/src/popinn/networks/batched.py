"""Vectorized forward and backward passes used by the training loop.

The strategy is reverse-over-forward: the forward pass runs in batched
dual arithmetic (value plus tangents w.r.t. normalized age and time), and
the backward sweep propagates adjoint triples.  Seeding the output adjoint
with (c0, ca, ct) per sample accumulates the parameter gradient of

    sum_b c0*P + ca*dP/da + ct*dP/dt

which covers all three loss terms.  Value-only variants skip the tangent
arrays for the initial- and boundary-condition losses.

Elementwise dual primitives come from ``popinn.kernels`` (compiled core or
numpy fallback); matrix products stay in numpy/BLAS in both cases.
"""
from __future__ import annotations

import numpy as np

from .. import kernels as K
from .lstm import GATE_NAMES, LstmParams
from .mlp import MlpParams

__all__ = [
    "mlp_batch_value",
    "mlp_batch_value_vjp",
    "mlp_batch_dual",
    "mlp_batch_dual_vjp",
    "lstm_batch_value",
    "lstm_batch_value_vjp",
    "lstm_batch_dual",
    "lstm_batch_dual_vjp",
]


# ---------------------------------------------------------------- MLP

def _stack_inputs(A, T):
    A = np.asarray(A, dtype=float).ravel()
    T = np.asarray(T, dtype=float).ravel()
    return np.vstack([A, T])


def mlp_batch_value(params: MlpParams, A, T):
    """Values P at a batch of points.  Returns (P, cache)."""
    x = _stack_inputs(A, T)
    last = len(params.weights) - 1
    cache = []
    for l, (W, b) in enumerate(zip(params.weights, params.biases)):
        z = W @ x + b[:, None]
        cache.append(x)
        x = K.tanh_val(z) if l < last else z
    return x.ravel(), cache


def mlp_batch_value_vjp(params: MlpParams, cache, cot):
    """Parameter gradient (flatten order) for output cotangents ``cot``."""
    gz = np.asarray(cot, dtype=float).reshape(1, -1)
    grads = [None] * len(params.weights)
    for l in range(len(params.weights) - 1, -1, -1):
        x = cache[l]
        grads[l] = (gz @ x.T, gz.sum(axis=1))
        if l > 0:
            gx = params.weights[l].T @ gz
            gz = K.tanh_val_bwd(x, gx)  # x is the tanh output of layer l-1
    return _assemble(grads)


def mlp_batch_dual(params: MlpParams, A, T):
    """Dual forward: returns (P, dP/da, dP/dt, cache)."""
    xv = _stack_inputs(A, T)
    B = xv.shape[1]
    xa = np.zeros((2, B))
    xa[0] = 1.0
    xt = np.zeros((2, B))
    xt[1] = 1.0
    last = len(params.weights) - 1
    cache = []
    for l, (W, b) in enumerate(zip(params.weights, params.biases)):
        zv = W @ xv + b[:, None]
        za = W @ xa
        zt = W @ xt
        if l < last:
            yv, ya, yt = K.dual_tanh(zv, za, zt)
            cache.append((xv, xa, xt, za, zt))
            xv, xa, xt = yv, ya, yt
        else:
            cache.append((xv, xa, xt, None, None))
            xv, xa, xt = zv, za, zt
    return xv.ravel(), xa.ravel(), xt.ravel(), cache


def mlp_batch_dual_vjp(params: MlpParams, cache, c0, ca, ct):
    """Gradient of sum(c0*P + ca*Pa + ct*Pt) w.r.t. the flat parameters."""
    gzv = np.asarray(c0, dtype=float).reshape(1, -1)
    gza = np.asarray(ca, dtype=float).reshape(1, -1)
    gzt = np.asarray(ct, dtype=float).reshape(1, -1)
    grads = [None] * len(params.weights)
    for l in range(len(params.weights) - 1, -1, -1):
        xv, xa, xt, _, _ = cache[l]
        grads[l] = (gzv @ xv.T + gza @ xa.T + gzt @ xt.T, gzv.sum(axis=1))
        if l > 0:
            W = params.weights[l]
            gxv = W.T @ gzv
            gxa = W.T @ gza
            gxt = W.T @ gzt
            _, _, _, za_prev, zt_prev = cache[l - 1]
            gzv, gza, gzt = K.dual_tanh_bwd(xv, za_prev, zt_prev, gxv, gxa, gxt)
    return _assemble(grads)


def _assemble(grads):
    parts = []
    for gw, gb in grads:
        parts.append(gw.ravel())
        parts.append(gb)
    return np.concatenate(parts)


# ---------------------------------------------------------------- LSTM
#
# Sequence length is 1 with zero initial states, so the forget gate acts
# on a zero cell state and the recurrent weights see a zero hidden state:
# both get exactly zero gradient and are skipped in the forward pass.

def lstm_batch_value(params: LstmParams, A, T, masks=None, keep=1.0):
    """Values P for a batch.  ``masks`` are per-junction dropout masks
    (num_layers-1 arrays of shape (hidden, B)), already 0/1 valued."""
    x = _stack_inputs(A, T)
    cache = []
    for l, layer in enumerate(params.layers):
        zi = layer.w["i"] @ x + layer.b["i"][:, None]
        zg = layer.w["g"] @ x + layer.b["g"][:, None]
        zo = layer.w["o"] @ x + layer.b["o"][:, None]
        i = K.sigmoid_val(zi)
        g = K.tanh_val(zg)
        o = K.sigmoid_val(zo)
        c = i * g
        tc = K.tanh_val(c)
        h = o * tc
        mask = masks[l] if masks is not None and l < params.num_layers - 1 else None
        if mask is not None:
            h = h * (mask / keep)
        cache.append((x, i, g, o, tc, mask))
        x = h
    P = params.head_w @ x + params.head_b
    cache.append(x)
    return P.ravel(), cache


def lstm_batch_value_vjp(params: LstmParams, cache, cot, keep=1.0):
    cot = np.asarray(cot, dtype=float).ravel()
    h_final = cache[-1]
    g_head_w = h_final @ cot
    g_head_b = cot.sum()
    gh = params.head_w[:, None] * cot[None, :]
    layer_grads = [None] * params.num_layers
    for l in range(params.num_layers - 1, -1, -1):
        x, i, g, o, tc, mask = cache[l]
        if mask is not None:
            gh = gh * (mask / keep)
        go = gh * tc
        gtc = gh * o
        gc = K.tanh_val_bwd(tc, gtc)
        gi = gc * g
        gg = gc * i
        gzi = K.sigmoid_val_bwd(i, gi)
        gzg = K.tanh_val_bwd(g, gg)
        gzo = K.sigmoid_val_bwd(o, go)
        layer_grads[l] = {
            "i": (gzi @ x.T, gzi.sum(axis=1)),
            "g": (gzg @ x.T, gzg.sum(axis=1)),
            "o": (gzo @ x.T, gzo.sum(axis=1)),
        }
        if l > 0:
            layer = params.layers[l]
            gh = layer.w["i"].T @ gzi + layer.w["g"].T @ gzg + layer.w["o"].T @ gzo
    return _assemble_lstm(params, layer_grads, g_head_w, g_head_b)


def lstm_batch_dual(params: LstmParams, A, T, masks=None, keep=1.0):
    """Dual forward: returns (P, Pa, Pt, cache)."""
    xv = _stack_inputs(A, T)
    B = xv.shape[1]
    xa = np.zeros((2, B))
    xa[0] = 1.0
    xt = np.zeros((2, B))
    xt[1] = 1.0
    cache = []
    for l, layer in enumerate(params.layers):
        pre = {}
        act = {}
        for gate, fwd in (("i", K.dual_sigmoid), ("g", K.dual_tanh), ("o", K.dual_sigmoid)):
            W, b = layer.w[gate], layer.b[gate]
            z = (W @ xv + b[:, None], W @ xa, W @ xt)
            pre[gate] = z
            act[gate] = fwd(*z)
        c = K.dual_mul(*act["i"], *act["g"])
        tc = K.dual_tanh(*c)
        h = K.dual_mul(*act["o"], *tc)
        mask = masks[l] if masks is not None and l < params.num_layers - 1 else None
        if mask is not None:
            scale = mask / keep
            h = (h[0] * scale, h[1] * scale, h[2] * scale)
        cache.append(((xv, xa, xt), pre, act, c, tc, mask))
        xv, xa, xt = h
    Pv = params.head_w @ xv + params.head_b
    Pa = params.head_w @ xa
    Pt = params.head_w @ xt
    cache.append((xv, xa, xt))
    return Pv.ravel(), Pa.ravel(), Pt.ravel(), cache


def lstm_batch_dual_vjp(params: LstmParams, cache, c0, ca, ct, keep=1.0):
    c0 = np.asarray(c0, dtype=float).ravel()
    ca = np.asarray(ca, dtype=float).ravel()
    ct = np.asarray(ct, dtype=float).ravel()
    hv, ha, ht = cache[-1]
    g_head_w = hv @ c0 + ha @ ca + ht @ ct
    g_head_b = c0.sum()
    w = params.head_w[:, None]
    gh = (w * c0[None, :], w * ca[None, :], w * ct[None, :])
    layer_grads = [None] * params.num_layers
    for l in range(params.num_layers - 1, -1, -1):
        (xv, xa, xt), pre, act, c, tc, mask = cache[l]
        if mask is not None:
            scale = mask / keep
            gh = (gh[0] * scale, gh[1] * scale, gh[2] * scale)
        go_v, go_a, go_t, gtc_v, gtc_a, gtc_t = K.dual_mul_bwd(*act["o"], *tc, *gh)
        gc = K.dual_tanh_bwd(tc[0], c[1], c[2], gtc_v, gtc_a, gtc_t)
        gi_v, gi_a, gi_t, gg_v, gg_a, gg_t = K.dual_mul_bwd(*act["i"], *act["g"], *gc)
        gz = {
            "i": K.dual_sigmoid_bwd(act["i"][0], pre["i"][1], pre["i"][2], gi_v, gi_a, gi_t),
            "g": K.dual_tanh_bwd(act["g"][0], pre["g"][1], pre["g"][2], gg_v, gg_a, gg_t),
            "o": K.dual_sigmoid_bwd(act["o"][0], pre["o"][1], pre["o"][2], go_v, go_a, go_t),
        }
        layer_grads[l] = {
            gate: (gz[gate][0] @ xv.T + gz[gate][1] @ xa.T + gz[gate][2] @ xt.T,
                   gz[gate][0].sum(axis=1))
            for gate in ("i", "g", "o")
        }
        if l > 0:
            layer = params.layers[l]
            gh = tuple(
                layer.w["i"].T @ gz["i"][k]
                + layer.w["g"].T @ gz["g"][k]
                + layer.w["o"].T @ gz["o"][k]
                for k in range(3)
            )
    return _assemble_lstm(params, layer_grads, g_head_w, g_head_b)


def _assemble_lstm(params: LstmParams, layer_grads, g_head_w, g_head_b):
    parts = []
    for l, layer in enumerate(params.layers):
        for gate in GATE_NAMES:
            if gate == "f":
                parts.append(np.zeros(layer.w[gate].size))
            else:
                parts.append(layer_grads[l][gate][0].ravel())
            parts.append(np.zeros(layer.u[gate].size))
            if gate == "f":
                parts.append(np.zeros(layer.b[gate].size))
            else:
                parts.append(layer_grads[l][gate][1])
    parts.append(np.asarray(g_head_w, dtype=float).ravel())
    parts.append(np.array([g_head_b], dtype=float))
    return np.concatenate(parts)
