#!/usr/bin/env python3
"""Monte-Carlo pick campaigns against the field statistics for each actuation
mode, plus the leaf-occlusion variant. Writes JSON + trial CSVs into
results/campaign/.
"""

from pathlib import Path

from tandemgrip.config import shipped_calibration
from tandemgrip.picksim import (
    DEFAULT_FIELD_STATS,
    LEAF_OCCLUSION_FAIL_PROB,
    run_campaign,
    trials_to_csv,
)
from tandemgrip.wrench import ActuationMode

OUT = Path(__file__).resolve().parent.parent / "results" / "campaign"
TRIALS = 1000
SEED = 0


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    model = shipped_calibration()
    for mode in (ActuationMode.SUCTION, ActuationMode.FINGERS, ActuationMode.DUAL):
        result = run_campaign(DEFAULT_FIELD_STATS, model, mode, TRIALS, SEED)
        (OUT / f"campaign_{mode.value}.json").write_text(result.to_json())
        (OUT / f"campaign_{mode.value}_trials.csv").write_text(trials_to_csv(result.log))
        breakdown = {k.value: v for k, v in result.breakdown.items()}
        print(f"{mode.value:8s} success {result.success_rate:6.1%}  {breakdown}")
    occl = run_campaign(DEFAULT_FIELD_STATS, model, ActuationMode.DUAL, TRIALS, SEED,
                        occlusion_fail_prob=LEAF_OCCLUSION_FAIL_PROB)
    (OUT / "campaign_dual_leaf_occlusion.json").write_text(occl.to_json())
    print(f"dual+leaf occlusion: success {occl.success_rate:6.1%}")


if __name__ == "__main__":
    main()
