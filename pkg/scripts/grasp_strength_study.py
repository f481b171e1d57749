#!/usr/bin/env python3
"""Calibrate the grasp model to the reference measurements and sweep the
strength predictions over offsets, pull angles, and actuation modes.

Writes CSV + SVG + the fitted parameters into results/grasp/.
"""

from pathlib import Path

from tandemgrip import svgplot
from tandemgrip.config import data_text
from tandemgrip.wrench import (
    ActuationMode,
    GraspScenario,
    PullType,
    calibrate,
    calibration_to_json,
    predict_strength,
    reference_from_csv,
)

OUT = Path(__file__).resolve().parent.parent / "results" / "grasp"
MODES = (ActuationMode.SUCTION, ActuationMode.FINGERS, ActuationMode.DUAL)


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    reference = reference_from_csv(data_text("grasp_reference.csv"))
    result = calibrate(reference)
    (OUT / "calibrated_params.json").write_text(calibration_to_json(result))
    p = result.params
    print(f"fitted: pad {p.pad_force:.2f} N, mu {p.mu_pad:.3f}, "
          f"cup {p.suction_axial:.2f} N, shear fraction {p.shear_fraction:.3f}")
    print(f"mean |relative error| over the dataset: {result.mean_abs_rel_error:.1%}")

    offsets = [0.0, 5.0, 10.0, 15.0, 20.0]
    series_off = {
        mode.value: [
            predict_strength(GraspScenario(37.5, fruit_offset=o, mode=mode), p)
            for o in offsets
        ]
        for mode in MODES
    }
    lines = ["offset_mm," + ",".join(m.value for m in MODES)]
    for i, o in enumerate(offsets):
        lines.append(f"{o:.9g}," +
                     ",".join(f"{series_off[m.value][i]:.9g}" for m in MODES))
    (OUT / "strength_vs_offset.csv").write_text("\n".join(lines) + "\n")
    (OUT / "strength_vs_offset.svg").write_text(
        svgplot.line_chart(offsets, series_off, "fruit offset [mm]", "strength [N]",
                           "grasp strength vs offset")
    )

    angles = [0.0, 15.0, 30.0, 45.0]
    series_ang = {
        mode.value: [
            predict_strength(GraspScenario(37.5, pull_angle=a, mode=mode), p)
            for a in angles
        ]
        for mode in MODES
    }
    (OUT / "strength_vs_angle.svg").write_text(
        svgplot.line_chart(angles, series_ang, "pull angle [deg]", "strength [N]",
                           "grasp strength vs pull angle")
    )
    for mode in MODES:
        rot = predict_strength(
            GraspScenario(37.5, pull_angle=90.0, pull_type=PullType.ROTATIONAL,
                          mode=mode), p)
        print(f"rotational {mode.value}: {rot:.2f} N")


if __name__ == "__main__":
    main()
