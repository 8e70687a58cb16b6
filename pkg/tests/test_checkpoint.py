"""Checkpoint serialization."""
import numpy as np
import pytest

from popinn.demography import Domain
from popinn.errors import CheckpointError
from popinn.training import (
    Checkpoint,
    load_checkpoint,
    save_checkpoint,
    surrogate_from_checkpoint,
)
from popinn.training.models import build_surrogate


def make_checkpoint(kind="mlp"):
    if kind == "mlp":
        s = build_surrogate("mlp", widths=(2, 5, 1), seed=4)
        arch = {"widths": [2, 5, 1]}
    else:
        s = build_surrogate("lstm", num_layers=2, hidden=4, dropout=0.1, seed=4)
        arch = {"num_layers": 2, "hidden": 4, "dropout": 0.1}
    return s, Checkpoint(kind, arch, s.get_flat(), Domain(), "three-child", seed=4, epoch=17)


class TestRoundTrip:
    @pytest.mark.parametrize("kind", ["mlp", "lstm"])
    def test_bitwise_evaluation_after_reload(self, tmp_path, kind):
        original, cp = make_checkpoint(kind)
        path = tmp_path / "model.pfck"
        save_checkpoint(path, cp)
        reloaded = surrogate_from_checkpoint(load_checkpoint(path))
        rng = np.random.default_rng(0)
        A, T = rng.random(100), rng.random(100)
        P1, _ = original.value_batch(A, T)
        P2, _ = reloaded.value_batch(A, T)
        assert np.array_equal(P1, P2)

    def test_metadata_roundtrip(self, tmp_path):
        _, cp = make_checkpoint()
        path = tmp_path / "model.pfck"
        save_checkpoint(path, cp)
        out = load_checkpoint(path)
        assert out.kind == "mlp"
        assert out.arch == {"widths": [2, 5, 1]}
        assert out.scenario == "three-child"
        assert (out.seed, out.epoch) == (4, 17)
        assert out.domain == Domain()
        assert np.array_equal(out.params, cp.params)

    def test_save_is_deterministic(self, tmp_path):
        _, cp = make_checkpoint()
        p1, p2 = tmp_path / "a.pfck", tmp_path / "b.pfck"
        save_checkpoint(p1, cp)
        save_checkpoint(p2, cp)
        assert p1.read_bytes() == p2.read_bytes()


class TestRejection:
    def test_corrupted_magic(self, tmp_path):
        _, cp = make_checkpoint()
        path = tmp_path / "model.pfck"
        save_checkpoint(path, cp)
        raw = bytearray(path.read_bytes())
        raw[:4] = b"XXXX"
        path.write_bytes(bytes(raw))
        with pytest.raises(CheckpointError):
            load_checkpoint(path)

    def test_truncated_file(self, tmp_path):
        _, cp = make_checkpoint()
        path = tmp_path / "model.pfck"
        save_checkpoint(path, cp)
        path.write_bytes(path.read_bytes()[:-16])
        with pytest.raises(CheckpointError):
            load_checkpoint(path)

    def test_kind_mismatch_on_request(self, tmp_path):
        _, cp = make_checkpoint("mlp")
        path = tmp_path / "model.pfck"
        save_checkpoint(path, cp)
        with pytest.raises(CheckpointError):
            surrogate_from_checkpoint(load_checkpoint(path), expect_kind="lstm")

    def test_parameter_count_mismatch(self, tmp_path):
        _, cp = make_checkpoint("mlp")
        cp.arch = {"widths": [2, 9, 1]}  # wrong shape for the stored vector
        path = tmp_path / "model.pfck"
        save_checkpoint(path, cp)
        with pytest.raises(CheckpointError):
            surrogate_from_checkpoint(load_checkpoint(path))

    def test_unknown_kind(self, tmp_path):
        _, cp = make_checkpoint("mlp")
        cp.kind = "tree"
        path = tmp_path / "model.pfck"
        save_checkpoint(path, cp)
        with pytest.raises(CheckpointError):
            surrogate_from_checkpoint(load_checkpoint(path))
