from typing import Literal

__all__ = [
    "VERDICT_CONFIRMED",
    "VERDICT_REFUTED",
    "VERDICT_INCONCLUSIVE",

    "Verdict",

    "DECIDED_VERDICTS",
]

# Verdicts are about the printed claim: "confirmed" means the oracle agrees with it
VERDICT_CONFIRMED: Literal["confirmed"] = "confirmed"
VERDICT_REFUTED: Literal["refuted"] = "refuted"
VERDICT_INCONCLUSIVE: Literal["inconclusive"] = "inconclusive"

Verdict = Literal["confirmed", "refuted", "inconclusive"]

DECIDED_VERDICTS = frozenset({VERDICT_CONFIRMED, VERDICT_REFUTED})
