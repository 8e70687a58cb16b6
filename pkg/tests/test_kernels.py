"""Backend parity: compiled extension vs numpy fallback."""
import numpy as np
import pytest

from popinn import kernels
from popinn.kernels import numpy_backend, compiled_backend


def rand(shape, seed):
    return np.random.default_rng(seed).standard_normal(shape)


def test_a_backend_is_selected():
    assert kernels.get_backend() in ("compiled", "numpy")


def test_numpy_tanh_and_sigmoid_values():
    v = rand((4, 7), 0)
    assert np.allclose(numpy_backend.tanh_val(v), np.tanh(v))
    assert np.allclose(numpy_backend.sigmoid_val(v), 1.0 / (1.0 + np.exp(-v)))


def test_sigmoid_extreme_arguments_stay_finite():
    v = np.array([-800.0, -50.0, 0.0, 50.0, 800.0])
    out = kernels.sigmoid_val(v)
    assert np.all(np.isfinite(out))
    assert out[0] == pytest.approx(0.0, abs=1e-300)
    assert out[-1] == pytest.approx(1.0)


def test_dual_tanh_derivatives():
    v, da, dt = rand(11, 1), rand(11, 2), rand(11, 3)
    y, ya, yt = kernels.dual_tanh(v, da, dt)
    s = 1.0 - np.tanh(v) ** 2
    assert np.allclose(y, np.tanh(v))
    assert np.allclose(ya, s * da)
    assert np.allclose(yt, s * dt)


def test_dual_mul_product_rule():
    args = [rand(9, k) for k in range(6)]
    v, va, vt = kernels.dual_mul(*args)
    av, aa, at, bv, ba, bt = args
    assert np.allclose(v, av * bv)
    assert np.allclose(va, aa * bv + av * ba)
    assert np.allclose(vt, at * bv + av * bt)


@pytest.mark.skipif(compiled_backend is None, reason="compiled extension not built")
class TestCompiledMatchesNumpy:
    def test_value_kernels(self):
        v = rand((6, 13), 5)
        g = rand((6, 13), 6)
        for name in ("tanh_val", "sigmoid_val"):
            a = getattr(compiled_backend, name)(v)
            b = getattr(numpy_backend, name)(v)
            assert np.allclose(a, b, rtol=1e-15, atol=1e-15)
            ba_ = getattr(compiled_backend, name + "_bwd")(a, g)
            bb = getattr(numpy_backend, name + "_bwd")(b, g)
            assert np.allclose(ba_, bb, rtol=1e-15, atol=1e-15)

    def test_dual_kernels(self):
        v, da, dt = (rand((5, 8), k) for k in (0, 1, 2))
        gy, ga, gt = (rand((5, 8), k) for k in (3, 4, 5))
        for name in ("dual_tanh", "dual_sigmoid"):
            outs_c = getattr(compiled_backend, name)(v, da, dt)
            outs_n = getattr(numpy_backend, name)(v, da, dt)
            for a, b in zip(outs_c, outs_n):
                assert np.allclose(a, b, rtol=1e-15, atol=1e-15)
            bwd_c = getattr(compiled_backend, name + "_bwd")(*outs_c, gy, ga, gt)
            bwd_n = getattr(numpy_backend, name + "_bwd")(*outs_n, gy, ga, gt)
            for a, b in zip(bwd_c, bwd_n):
                assert np.allclose(a, b, rtol=1e-14, atol=1e-14)

    def test_dual_mul_and_bwd(self):
        args = [rand((4, 6), k) for k in range(6)]
        gs = [rand((4, 6), k) for k in (6, 7, 8)]
        for a, b in zip(compiled_backend.dual_mul(*args), numpy_backend.dual_mul(*args)):
            assert np.allclose(a, b, rtol=1e-15, atol=1e-15)
        bwd_c = compiled_backend.dual_mul_bwd(*args, *gs)
        bwd_n = numpy_backend.dual_mul_bwd(*args, *gs)
        for a, b in zip(bwd_c, bwd_n):
            assert np.allclose(a, b, rtol=1e-14, atol=1e-14)
