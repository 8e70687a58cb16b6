"""Pure-numpy implementations of the fused dual-arithmetic kernels.

Each function is elementwise over float64 arrays.  A "triple" (v, da, dt)
is a value array plus its two input-tangent arrays; backward functions map
adjoint triples of an output back to adjoint triples of the inputs.
"""
import numpy as np


def tanh_val(v):
    return np.tanh(v)


def tanh_val_bwd(y, gy):
    return gy * (1.0 - y * y)


def sigmoid_val(v):
    out = np.empty_like(v)
    pos = v >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-v[pos]))
    ez = np.exp(v[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def sigmoid_val_bwd(y, gy):
    return gy * y * (1.0 - y)


def dual_tanh(v, da, dt):
    y = np.tanh(v)
    s = 1.0 - y * y
    return y, s * da, s * dt


def dual_tanh_bwd(y, da, dt, gy, ga, gt):
    s = 1.0 - y * y
    gv = gy * s + (ga * da + gt * dt) * (-2.0 * y * s)
    return gv, ga * s, gt * s


def dual_sigmoid(v, da, dt):
    y = sigmoid_val(v)
    d = y * (1.0 - y)
    return y, d * da, d * dt


def dual_sigmoid_bwd(y, da, dt, gy, ga, gt):
    d = y * (1.0 - y)
    gv = gy * d + (ga * da + gt * dt) * d * (1.0 - 2.0 * y)
    return gv, ga * d, gt * d


def dual_mul(av, aa, at, bv, ba, bt):
    return av * bv, aa * bv + av * ba, at * bv + av * bt


def dual_mul_bwd(av, aa, at, bv, ba, bt, gv, ga, gt):
    gav = gv * bv + ga * ba + gt * bt
    gbv = gv * av + ga * aa + gt * at
    return gav, ga * bv, gt * bv, gbv, ga * av, gt * av
