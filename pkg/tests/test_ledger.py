import numpy as np

from clifford_kernels.constants import PRINTED_J2_LISTING
from clifford_kernels.ledger import LEDGER_CHECKS, build_ledger
from clifford_kernels.models import LedgerReport
from clifford_kernels.verdicts import DECIDED_VERDICTS, VERDICT_CONFIRMED, VERDICT_INCONCLUSIVE, VERDICT_REFUTED

from .constants import LEDGER_TRACKED


def _entries(seed: int = 0) -> dict:
    return {e.key: e for e in build_ledger(seed).entries}


def test_ledger_has_every_check():
    report = build_ledger(0)
    assert isinstance(report, LedgerReport)
    assert report.seed == 0
    assert [e.key for e in report.entries] == [c.__name__ for c in LEDGER_CHECKS]
    assert set(LEDGER_TRACKED) <= {e.key for e in report.entries}


def test_tracked_entries_are_decided():
    for seed in (0, 1, 7):
        entries = _entries(seed)
        for key in LEDGER_TRACKED:
            assert entries[key].verdict in DECIDED_VERDICTS, (seed, key, entries[key].detail)


def test_printed_claims_are_refuted():
    entries = _entries()
    for key in ("fourier_constant", "bergman_exponent", "legendre_reciprocity_sign", "shell_order_j2",
                "double_well_z_star", "minkowski_fstar_scale", "log_kernel_pinning"):
        assert entries[key].verdict == VERDICT_REFUTED, key


def test_wedge_argument_notation():
    entry = _entries()["wedge_argument_notation"]
    assert entry.verdict == VERDICT_REFUTED
    assert np.isclose(entry.oracle_value["wedge_swap_ratio"], -1.0)
    assert np.isclose(entry.oracle_value["vee_swap_ratio"], 1.0)


def test_oracle_values():
    entries = _entries()
    assert entries["fourier_constant"].oracle_value["best_kappa"] == 1 / np.pi
    assert entries["bergman_exponent"].oracle_value["exponent"] == -2
    assert entries["shell_order_j2"].oracle_value == [[1, 2], [2, 2], [2, 1]]
    assert entries["shell_order_j2"].paper_value == [list(p) for p in PRINTED_J2_LISTING]
    assert entries["double_well_z_star"].oracle_value["z_star_at_0"] == 1.0
    assert np.allclose(entries["minkowski_fstar_scale"].oracle_value, [[-0.5, 0.0], [0.0, 0.5]], atol=1e-4)


def test_ledger_is_deterministic():
    assert build_ledger(3).model_dump_json() == build_ledger(3).model_dump_json()


def test_failing_check_is_inconclusive(monkeypatch):
    def broken(rng):
        raise RuntimeError("no oracle")

    monkeypatch.setattr("clifford_kernels.ledger.LEDGER_CHECKS", (broken,))
    report = build_ledger(0)
    assert len(report.entries) == 1
    assert report.entries[0].key == "broken"
    assert report.entries[0].verdict == VERDICT_INCONCLUSIVE
    assert "no oracle" in report.entries[0].detail


def test_verdict_values():
    assert {VERDICT_CONFIRMED, VERDICT_REFUTED} == DECIDED_VERDICTS
