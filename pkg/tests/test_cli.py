"""Command-line interface contracts and exit codes."""
import numpy as np
import pytest
from click.testing import CliRunner

from popinn.cli import main
from popinn.reference import Field, GridSpec, load_field, save_field, solve_upwind
from popinn.demography import scenario_by_name

FAST_TRAIN = [
    "--widths", "2,6,1",
    "--n-interior", "40",
    "--m-initial", "20",
    "--k-boundary", "10",
    "--quad-nodes", "11",
]


@pytest.fixture()
def runner():
    return CliRunner()


def run(runner, args):
    return runner.invoke(main, args, catch_exceptions=False)


class TestTrainCommand:
    def test_loss_row_count(self, runner, tmp_path):
        out = tmp_path / "runs" / "a"
        res = run(runner, ["train", "--model", "pinn", "--scenario", "three-child",
                           "--epochs", "100", "--seed", "7", "--out", str(out)] + FAST_TRAIN)
        assert res.exit_code == 0
        lines = (out / "loss.csv").read_text().strip().splitlines()
        assert lines[0] == "epoch,total,pde,ic,bc"
        assert len(lines) == 101
        assert (out / "checkpoint.pfck").exists()
        assert (out / "manifest.txt").exists()

    def test_missing_scenario_is_usage_error(self, runner, tmp_path):
        res = runner.invoke(main, ["train", "--out", str(tmp_path / "x")])
        assert res.exit_code == 2

    def test_unknown_scenario_is_usage_error(self, runner, tmp_path):
        res = runner.invoke(main, ["train", "--scenario", "five-child", "--out", str(tmp_path / "x")])
        assert res.exit_code == 2

    def test_zero_epochs_checkpoints_initialization(self, runner, tmp_path):
        out = tmp_path / "zero"
        res = run(runner, ["train", "--scenario", "three-child", "--epochs", "0",
                           "--seed", "3", "--out", str(out)] + FAST_TRAIN)
        assert res.exit_code == 0
        lines = (out / "loss.csv").read_text().strip().splitlines()
        assert lines == ["epoch,total,pde,ic,bc"]
        from popinn.training import load_checkpoint
        from popinn.networks import mlp_flatten, mlp_init
        cp = load_checkpoint(out / "checkpoint.pfck")
        assert cp.epoch == 0
        assert np.array_equal(cp.params, mlp_flatten(mlp_init((2, 6, 1), seed=3)))

    def test_manifest_reproduces_loss_csv_bitwise(self, runner, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run(runner, ["train", "--scenario", "three-child", "--epochs", "8",
                     "--seed", "5", "--out", str(a)] + FAST_TRAIN)
        res = run(runner, ["train", "--config", str(a / "manifest.txt"), "--out", str(b)])
        assert res.exit_code == 0
        assert (a / "loss.csv").read_bytes() == (b / "loss.csv").read_bytes()
        assert (a / "manifest.txt").read_bytes() == (b / "manifest.txt").read_bytes()

    def test_flag_overrides_config_file(self, runner, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("scenario=three-child\nepochs=5\nwidths=2,6,1\n"
                       "n_interior=40\nm_initial=20\nk_boundary=10\nquad_nodes=11\n")
        out = tmp_path / "o"
        res = run(runner, ["train", "--config", str(cfg), "--epochs", "3", "--out", str(out)])
        assert res.exit_code == 0
        lines = (out / "loss.csv").read_text().strip().splitlines()
        assert len(lines) == 4

    def test_bad_widths_is_usage_error(self, runner, tmp_path):
        res = runner.invoke(main, ["train", "--scenario", "three-child", "--widths", "2,x,1",
                                   "--out", str(tmp_path / "x")])
        assert res.exit_code == 2


class TestReferenceCommand:
    def test_default_lattice_shape(self, runner, tmp_path):
        out = tmp_path / "ref"
        res = run(runner, ["reference", "--scenario", "three-child", "--out", str(out)])
        assert res.exit_code == 0
        lines = (out / "field.csv").read_text().strip().splitlines()
        assert len(lines) == 201 * 601 + 1

    def test_cfl_pass_at_101_by_301(self, runner, tmp_path):
        res = run(runner, ["reference", "--scenario", "three-child",
                           "--na", "101", "--nt", "301", "--out", str(tmp_path / "ok")])
        assert res.exit_code == 0

    def test_cfl_violation_exits_3(self, runner, tmp_path):
        res = runner.invoke(main, ["reference", "--scenario", "three-child",
                                   "--nt", "5", "--out", str(tmp_path / "bad")])
        assert res.exit_code == 3


class TestPredictCommand:
    @pytest.fixture()
    def checkpoint(self, runner, tmp_path):
        out = tmp_path / "train"
        run(runner, ["train", "--scenario", "three-child", "--epochs", "2",
                     "--seed", "1", "--out", str(out)] + FAST_TRAIN)
        return out / "checkpoint.pfck"

    def test_lattice_row_count_and_idempotence(self, runner, tmp_path, checkpoint):
        o1, o2 = tmp_path / "p1", tmp_path / "p2"
        res = run(runner, ["predict", "--checkpoint", str(checkpoint), "--out", str(o1)])
        assert res.exit_code == 0
        lines = (o1 / "field.csv").read_text().strip().splitlines()
        assert len(lines) == 101 * 31 + 1
        run(runner, ["predict", "--checkpoint", str(checkpoint), "--out", str(o2)])
        assert (o1 / "field.csv").read_bytes() == (o2 / "field.csv").read_bytes()

    def test_corrupt_checkpoint_exits_4(self, runner, tmp_path):
        bad = tmp_path / "bad.pfck"
        bad.write_bytes(b"not a checkpoint")
        res = runner.invoke(main, ["predict", "--checkpoint", str(bad), "--out", str(tmp_path / "o")])
        assert res.exit_code == 4

    def test_missing_checkpoint_exits_4(self, runner, tmp_path):
        res = runner.invoke(main, ["predict", "--checkpoint", str(tmp_path / "nope.pfck"),
                                   "--out", str(tmp_path / "o")])
        assert res.exit_code == 4


class TestCompareCommand:
    def write_fields(self, tmp_path):
        g = GridSpec(11, 7)
        f = solve_upwind(scenario_by_name("three-child"), grid=g)
        pa, pb = tmp_path / "a.csv", tmp_path / "b.csv"
        save_field(pb, f)
        scaled = Field(1.1 * f.values, g)
        save_field(pa, scaled)
        return pa, pb

    def test_self_comparison_is_zero(self, runner, tmp_path):
        _, pb = self.write_fields(tmp_path)
        res = run(runner, ["compare", str(pb), str(pb)])
        assert res.exit_code == 0
        assert "rel_l2=0 " in res.output

    def test_scaled_field_gives_point_one(self, runner, tmp_path):
        pa, pb = self.write_fields(tmp_path)
        res = run(runner, ["compare", str(pa), str(pb)])
        assert res.exit_code == 0
        rel = float(res.output.split("rel_l2=")[1].split()[0])
        assert rel == pytest.approx(0.1, abs=1e-12)

    def test_grid_mismatch_exits_2(self, runner, tmp_path):
        _, pb = self.write_fields(tmp_path)
        other = tmp_path / "other.csv"
        save_field(other, solve_upwind(scenario_by_name("three-child"), grid=GridSpec(5, 4)))
        res = runner.invoke(main, ["compare", str(pb), str(other)])
        assert res.exit_code == 2


class TestPlotCommand:
    def test_loss_plot_has_four_series(self, runner, tmp_path):
        out = tmp_path / "t"
        run(runner, ["train", "--scenario", "three-child", "--epochs", "5",
                     "--seed", "1", "--out", str(out)] + FAST_TRAIN)
        svg_path = tmp_path / "loss.svg"
        res = run(runner, ["plot", str(out / "loss.csv"), "--out", str(svg_path)])
        assert res.exit_code == 0
        assert svg_path.read_text().count("<polyline") == 4

    def test_field_plot(self, runner, tmp_path):
        g = GridSpec(6, 5)
        path = tmp_path / "field.csv"
        save_field(path, solve_upwind(scenario_by_name("three-child"), grid=g))
        svg_path = tmp_path / "field.svg"
        res = run(runner, ["plot", str(path), "--out", str(svg_path)])
        assert res.exit_code == 0
        assert svg_path.read_text().count("<rect") == 6 * 5 + 2

    def test_plot_idempotent(self, runner, tmp_path):
        out = tmp_path / "t"
        run(runner, ["train", "--scenario", "three-child", "--epochs", "5",
                     "--seed", "1", "--out", str(out)] + FAST_TRAIN)
        s1, s2 = tmp_path / "a.svg", tmp_path / "b.svg"
        run(runner, ["plot", str(out / "loss.csv"), "--out", str(s1)])
        run(runner, ["plot", str(out / "loss.csv"), "--out", str(s2)])
        assert s1.read_bytes() == s2.read_bytes()

    def test_empty_csv_rejected(self, runner, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        res = runner.invoke(main, ["plot", str(empty), "--out", str(tmp_path / "x.svg")])
        assert res.exit_code != 0

    def test_unrecognized_header_rejected(self, runner, tmp_path):
        odd = tmp_path / "odd.csv"
        odd.write_text("foo,bar\n1,2\n")
        res = runner.invoke(main, ["plot", str(odd), "--out", str(tmp_path / "x.svg")])
        assert res.exit_code == 2
