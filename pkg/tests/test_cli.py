import math

from clifford_kernels import __version__
from clifford_kernels.cli import EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, build_parser
from clifford_kernels.constants import SCHEMA_VERSION
from clifford_kernels.models import LedgerReport, MultivectorReport, ShellReport
from clifford_kernels.verdicts import DECIDED_VERDICTS

from .constants import LEDGER_TRACKED, SHELLS_L2


def test_parser_lists_every_command():
    text = build_parser().format_help()
    for command in ("quadratic", "clifford", "legendre", "tensor", "kernel", "fock", "ledger"):
        assert command in text


def test_version(capsys, cli):
    code, _ = cli("--version")
    assert code == EXIT_OK
    assert __version__ in capsys.readouterr().out


def test_quadratic(cli_json):
    code, data = cli_json("quadratic", "eval", "--diag", "1,-1", "--x", "3,4")
    assert code == EXIT_OK
    assert data["schema"] == SCHEMA_VERSION
    assert data["value"] == -7.0

    code, data = cli_json("quadratic", "polarize", "--coeffs", "[[0,1],[1,0]]", "--x", "1,0", "--y", "0,1")
    assert code == EXIT_OK
    assert data["value"] == 1.0

    code, data = cli_json("quadratic", "signature", "--diag", "1,-1")
    assert (data["n_plus"], data["n_minus"], data["n_zero"]) == (1, 1, 0)

    code, data = cli_json("quadratic", "diagonalize", "--diag", "2,-3")
    assert code == EXIT_OK
    assert sorted(data["eigenvalues"]) == [-3.0, 2.0]


def test_clifford_mul(cli_json):
    code, data = cli_json("clifford", "mul", "--n", "2", "--diag", "1,1", "--a", "e1", "--b", "e1")
    assert code == EXIT_OK
    assert data["terms"] == [{"blades": [], "c": 1.0}]

    code, data = cli_json("clifford", "mul", "--diag", "1,1", "--a", "e1e2", "--b", "e1e2")
    assert data["terms"] == [{"blades": [], "c": -1.0}]


def test_clifford_report_round_trips(cli):
    code, text = cli("clifford", "wedge", "--n", "3", "--a", "e1 + e2", "--b", "e3")
    assert code == EXIT_OK
    report = MultivectorReport.model_validate_json(text)
    assert report.n == 3
    assert sorted(tuple(t.blades) for t in report.terms) == [(1, 3), (2, 3)]


def test_clifford_norm(cli_json):
    code, data = cli_json("clifford", "norm", "--n", "2", "--a", "e1e2", "--gamma", "projective")
    assert code == EXIT_OK
    assert math.isclose(data["value"], 1.0)


def test_clifford_hessian(cli_json):
    code, data = cli_json("clifford", "hessian", "--f", "minkowski", "--p", "1", "--n", "2", "--at", "0.2,0.7")
    assert code == EXIT_OK
    assert data["diag"] == [2.0, -2.0]
    assert data["signature"] == {"n_plus": 1, "n_minus": 1, "n_zero": 0}


def test_degenerate_hessian_is_a_numerical_error(cli_json):
    code, data = cli_json("clifford", "hessian", "--f", "double_well", "--at", str(1 / math.sqrt(3)))
    assert code == EXIT_NUMERICAL
    assert data["schema"] == SCHEMA_VERSION
    assert data["error"]["kind"] == "degenerate_form"
    assert data["error"]["traceback"] is None


def test_generator_out_of_range(cli_json):
    code, data = cli_json("clifford", "mul", "--n", "2", "--a", "e3", "--b", "e1")
    assert code == EXIT_NUMERICAL
    assert data["error"]["kind"] == "dimension_mismatch"


def test_usage_errors(cli):
    assert cli()[0] == EXIT_USAGE
    assert cli("quadratic", "eval", "--x", "1")[0] == EXIT_USAGE
    assert cli("quadratic", "eval", "--diag", "1,a", "--x", "1")[0] == EXIT_USAGE
    assert cli("clifford", "mul", "--a", "e1", "--b", "e1")[0] == EXIT_USAGE
    assert cli("clifford", "mul", "--n", "3", "--diag", "1,1", "--a", "e1", "--b", "e1")[0] == EXIT_USAGE
    assert cli("kernel", "eval", "--name", "sobolev", "--s", "0.3")[0] == EXIT_USAGE
    assert cli("legendre", "point", "--f", "minkowski", "--p", "1.5", "--n", "2", "--y", "1,1")[0] == EXIT_USAGE
    assert cli("legendre", "point", "--f", "power", "--y", "1")[0] == EXIT_USAGE


def test_legendre(cli_json):
    code, data = cli_json("legendre", "point", "--f", "power", "--p", "3", "--y", "2")
    assert code == EXIT_OK
    assert data["x_star"] == [4.0]
    assert math.isclose(data["z_star"], -16 / 3)

    code, data = cli_json("legendre", "invert", "--f", "power", "--p", "2", "--x-star", "5", "--start", "1")
    assert code == EXIT_OK
    assert math.isclose(data["values"][0], 5.0)

    code, data = cli_json("legendre", "hessian-pair", "--f", "power", "--p", "2", "--y", "1.5")
    assert code == EXIT_OK
    assert math.isclose(data["fstar_hess"][0][0], -1.0, rel_tol=1e-4)
    assert data["residual"] < 1e-4


def test_legendre_grid_csv(cli):
    code, text = cli("--output", "csv", "legendre", "grid", "--f", "power", "--p", "2", "--ys", "1;2")
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[0] == "y1,x_star1,z_star"
    assert len(lines) == 3
    assert lines[1].split(",")[:2] == ["1", "1"]

    _, text = cli("--output", "csv", "legendre", "grid", "--f", "power", "--p", "2", "--ys", "0.1")
    y, x_star, _ = text.splitlines()[1].split(",")
    assert y == x_star == "0.10000000000000001"
    assert float(y) == 0.1


def test_tensor(cli_json):
    code, data = cli_json("tensor", "norms", "--shape", "2,2", "--entries", "1,0,0,1")
    assert code == EXIT_OK
    assert math.isclose(data["injective"], 1.0)
    assert math.isclose(data["projective"], 2.0)

    code, data = cli_json("tensor", "truncate", "--coeffs", "3,4,12", "--n", "1")
    assert data["head"] == [3.0]
    assert math.isclose(data["tail_norm"], 4 * math.sqrt(10))

    code, data = cli_json("tensor", "fock-dim", "--n", "3", "--p-max", "3", "--symmetry", "wedge")
    assert data["value"] == 8.0

    code, data = cli_json("tensor", "bound", "--ratio-x", "0.5", "--ratio-y", "0.7", "--n-max", "4")
    assert code == EXIT_OK
    assert all(r <= b + 1e-15 for r, b in zip(data["remainder"], data["bound"]))


def test_tensor_shells(cli, cli_json):
    code, data = cli_json("tensor", "shells", "--l-max", "2")
    assert code == EXIT_OK
    assert [tuple(p) for p in data["pairs"]] == SHELLS_L2

    code, text = cli("--output", "csv", "tensor", "shells", "--l-max", "2")
    assert text.splitlines() == ["i,j", "1,1", "1,2", "2,2", "2,1"]

    _, text = cli("tensor", "shells", "--l-max", "3")
    assert len(ShellReport.model_validate_json(text).pairs) == 9


def test_kernel_eval(cli, cli_json):
    code, data = cli_json("kernel", "eval", "--name", "sobolev", "--a", "0", "--b", "1", "--s", "0.3", "--t", "0.7")
    assert code == EXIT_OK
    assert data["value"] == 0.3

    code, text = cli("--output", "csv", "kernel", "eval", "--name", "sobolev", "--a", "0", "--b", "1", "--grid", "3")
    assert code == EXIT_OK
    lines = text.splitlines()
    assert len(lines) == 4
    assert lines[1] == "0.25,0.25,0.25,0.25"

    code, data = cli_json("kernel", "eval", "--name", "bergman", "--s", "0.5", "--t", "0.5j")
    assert code == EXIT_OK
    assert set(data["value"]) == {"re", "im"}


def test_kernel_point_outside_domain(cli_json):
    code, data = cli_json("kernel", "eval", "--name", "sobolev", "--a", "0", "--b", "1", "--s", "1.5", "--t", "0.2")
    assert code == EXIT_NUMERICAL
    assert data["error"]["kind"] == "domain"


def test_kernel_verify(cli_json):
    code, data = cli_json("kernel", "verify", "--name", "sobolev", "--a", "0", "--b", "1",
                          "--function", "linear", "--t", "0.4")
    assert code == EXIT_OK
    assert data["residual"] < 1e-10


def test_fock(cli_json):
    code, data = cli_json("fock", "--pairing", "sobolev", "--a", "0", "--b", "1", "--points", "0.3,0.3",
                          "--symmetry", "wedge")
    assert code == EXIT_OK
    assert abs(data["value"]) < 1e-15
    assert data["gram"] == [[0.3, 0.3], [0.3, 0.3]]

    code, data = cli_json("fock", "--pairing", "sobolev", "--a", "0", "--b", "1", "--points", "0.2,0.5,0.8",
                          "--order", "1")
    assert code == EXIT_OK
    assert data["value"] == 0.2

    code, data = cli_json("fock", "--pairing", "sobolev", "--a", "0", "--b", "1", "--points", "0.4",
                          "gamma", "--mmax", "1")
    assert code == EXIT_OK
    assert data["blocks"] == [1.0, 0.4]
    assert data["cross_order_max"] == 0.0


def test_fock_gamma_keeps_options_given_before_the_action(cli, cli_json):
    code, data = cli_json("fock", "--pairing", "sobolev", "--a", "0", "--b", "2", "--points", "0.5,1.5",
                          "--symmetry", "wedge", "gamma", "--mmax", "2")
    assert code == EXIT_OK
    assert data["pairing"] == "sobolev"
    assert data["symmetry"] == "wedge"
    assert data["m_max"] == 2
    assert data["blocks"] == [1.0, 0.5, 0.25]

    assert cli("fock", "gamma", "--pairing", "sobolev", "--points", "0.4", "--mmax", "1")[0] == EXIT_USAGE


def test_ledger(cli, cli_json):
    code, data = cli_json("--seed", "5", "ledger")
    assert code == EXIT_OK
    report = LedgerReport.model_validate(data)
    assert report.seed == 5
    verdicts = {e.key: e.verdict for e in report.entries}
    assert all(verdicts[k] in DECIDED_VERDICTS for k in LEDGER_TRACKED)


def test_ledger_output_is_deterministic(cli):
    assert cli("ledger") == cli("ledger")
    assert cli("--output", "csv", "ledger") == cli("--output", "csv", "ledger")


def test_debug_adds_traceback(cli_json, monkeypatch):
    from clifford_kernels.config import Config
    monkeypatch.setattr(Config, "DEBUG", True)
    code, data = cli_json("tensor", "shells", "--l-max", "0")
    assert code == EXIT_NUMERICAL
    assert data["error"]["kind"] == "domain"
    assert "Traceback" in data["error"]["traceback"]
