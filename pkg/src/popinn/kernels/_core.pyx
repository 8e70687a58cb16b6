# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled fused kernels for dual-arithmetic elementwise operations.

Single-pass loops over contiguous float64 buffers; avoids the temporary
arrays the numpy fallback allocates for each sub-expression.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport exp as c_exp, tanh as c_tanh

cnp.import_array()


cdef inline double _sigmoid(double v) nogil:
    cdef double z
    if v >= 0.0:
        z = c_exp(-v)
        return 1.0 / (1.0 + z)
    z = c_exp(v)
    return z / (1.0 + z)


cdef cnp.ndarray _flat(object x):
    return np.ascontiguousarray(x, dtype=np.float64).ravel()


def tanh_val(v):
    a = _flat(v)
    out = np.empty_like(a)
    cdef double[::1] vi = a, vo = out
    cdef Py_ssize_t i, n = vi.shape[0]
    with nogil:
        for i in range(n):
            vo[i] = c_tanh(vi[i])
    return out.reshape(np.shape(v))


def tanh_val_bwd(y, gy):
    ya = _flat(y); ga = _flat(gy)
    out = np.empty_like(ya)
    cdef double[::1] yv = ya, gv = ga, ov = out
    cdef Py_ssize_t i, n = yv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = gv[i] * (1.0 - yv[i] * yv[i])
    return out.reshape(np.shape(y))


def sigmoid_val(v):
    a = _flat(v)
    out = np.empty_like(a)
    cdef double[::1] vi = a, vo = out
    cdef Py_ssize_t i, n = vi.shape[0]
    with nogil:
        for i in range(n):
            vo[i] = _sigmoid(vi[i])
    return out.reshape(np.shape(v))


def sigmoid_val_bwd(y, gy):
    ya = _flat(y); ga = _flat(gy)
    out = np.empty_like(ya)
    cdef double[::1] yv = ya, gv = ga, ov = out
    cdef Py_ssize_t i, n = yv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = gv[i] * yv[i] * (1.0 - yv[i])
    return out.reshape(np.shape(y))


def dual_tanh(v, da, dt):
    shape = np.shape(v)
    va = _flat(v); aa = _flat(da); ta = _flat(dt)
    y = np.empty_like(va); ya = np.empty_like(va); yt = np.empty_like(va)
    cdef double[::1] vi = va, ai = aa, ti = ta, yo = y, ao = ya, to = yt
    cdef Py_ssize_t i, n = vi.shape[0]
    cdef double t, s
    with nogil:
        for i in range(n):
            t = c_tanh(vi[i])
            s = 1.0 - t * t
            yo[i] = t
            ao[i] = s * ai[i]
            to[i] = s * ti[i]
    return y.reshape(shape), ya.reshape(shape), yt.reshape(shape)


def dual_tanh_bwd(y, da, dt, gy, ga, gt):
    shape = np.shape(y)
    ya = _flat(y); aa = _flat(da); ta = _flat(dt)
    gya = _flat(gy); gaa = _flat(ga); gta = _flat(gt)
    gv = np.empty_like(ya); gda = np.empty_like(ya); gdt = np.empty_like(ya)
    cdef double[::1] yi = ya, ai = aa, ti = ta, gyi = gya, gai = gaa, gti = gta
    cdef double[::1] ov = gv, oa = gda, ot = gdt
    cdef Py_ssize_t i, n = yi.shape[0]
    cdef double s
    with nogil:
        for i in range(n):
            s = 1.0 - yi[i] * yi[i]
            ov[i] = gyi[i] * s - (gai[i] * ai[i] + gti[i] * ti[i]) * 2.0 * yi[i] * s
            oa[i] = gai[i] * s
            ot[i] = gti[i] * s
    return gv.reshape(shape), gda.reshape(shape), gdt.reshape(shape)


def dual_sigmoid(v, da, dt):
    shape = np.shape(v)
    va = _flat(v); aa = _flat(da); ta = _flat(dt)
    y = np.empty_like(va); ya = np.empty_like(va); yt = np.empty_like(va)
    cdef double[::1] vi = va, ai = aa, ti = ta, yo = y, ao = ya, to = yt
    cdef Py_ssize_t i, n = vi.shape[0]
    cdef double s, d
    with nogil:
        for i in range(n):
            s = _sigmoid(vi[i])
            d = s * (1.0 - s)
            yo[i] = s
            ao[i] = d * ai[i]
            to[i] = d * ti[i]
    return y.reshape(shape), ya.reshape(shape), yt.reshape(shape)


def dual_sigmoid_bwd(y, da, dt, gy, ga, gt):
    shape = np.shape(y)
    ya = _flat(y); aa = _flat(da); ta = _flat(dt)
    gya = _flat(gy); gaa = _flat(ga); gta = _flat(gt)
    gv = np.empty_like(ya); gda = np.empty_like(ya); gdt = np.empty_like(ya)
    cdef double[::1] yi = ya, ai = aa, ti = ta, gyi = gya, gai = gaa, gti = gta
    cdef double[::1] ov = gv, oa = gda, ot = gdt
    cdef Py_ssize_t i, n = yi.shape[0]
    cdef double d
    with nogil:
        for i in range(n):
            d = yi[i] * (1.0 - yi[i])
            ov[i] = gyi[i] * d + (gai[i] * ai[i] + gti[i] * ti[i]) * d * (1.0 - 2.0 * yi[i])
            oa[i] = gai[i] * d
            ot[i] = gti[i] * d
    return gv.reshape(shape), gda.reshape(shape), gdt.reshape(shape)


def dual_mul(av, aa, at, bv, ba, bt):
    shape = np.shape(av)
    av1 = _flat(av); aa1 = _flat(aa); at1 = _flat(at)
    bv1 = _flat(bv); ba1 = _flat(ba); bt1 = _flat(bt)
    cv = np.empty_like(av1); ca = np.empty_like(av1); ct = np.empty_like(av1)
    cdef double[::1] x = av1, xa = aa1, xt = at1, y = bv1, yb = ba1, yt = bt1
    cdef double[::1] ov = cv, oa = ca, ot = ct
    cdef Py_ssize_t i, n = x.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = x[i] * y[i]
            oa[i] = xa[i] * y[i] + x[i] * yb[i]
            ot[i] = xt[i] * y[i] + x[i] * yt[i]
    return cv.reshape(shape), ca.reshape(shape), ct.reshape(shape)


def dual_mul_bwd(av, aa, at, bv, ba, bt, gv, ga, gt):
    shape = np.shape(av)
    av1 = _flat(av); aa1 = _flat(aa); at1 = _flat(at)
    bv1 = _flat(bv); ba1 = _flat(ba); bt1 = _flat(bt)
    gv1 = _flat(gv); ga1 = _flat(ga); gt1 = _flat(gt)
    gav = np.empty_like(av1); gaa = np.empty_like(av1); gat = np.empty_like(av1)
    gbv = np.empty_like(av1); gba = np.empty_like(av1); gbt = np.empty_like(av1)
    cdef double[::1] x = av1, xa = aa1, xt = at1, y = bv1, yb = ba1, yt = bt1
    cdef double[::1] cv = gv1, ca = ga1, ct = gt1
    cdef double[::1] oav = gav, oaa = gaa, oat = gat, obv = gbv, oba = gba, obt = gbt
    cdef Py_ssize_t i, n = x.shape[0]
    with nogil:
        for i in range(n):
            oav[i] = cv[i] * y[i] + ca[i] * yb[i] + ct[i] * yt[i]
            oaa[i] = ca[i] * y[i]
            oat[i] = ct[i] * y[i]
            obv[i] = cv[i] * x[i] + ca[i] * xa[i] + ct[i] * xt[i]
            oba[i] = ca[i] * x[i]
            obt[i] = ct[i] * x[i]
    return (
        gav.reshape(shape), gaa.reshape(shape), gat.reshape(shape),
        gbv.reshape(shape), gba.reshape(shape), gbt.reshape(shape),
    )
