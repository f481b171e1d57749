"""Gripper configuration file: one JSON document, one section per module.

Units are encoded in the field names (_mm, _N, _deg); angles arrive in
degrees and are converted on load.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .campath import CamTrackSpec
from .errors import ParseError
from .leadscrew import ScrewParams
from .linkage import LinkageParams, TravelRange
from .wrench import GraspModelParams


@dataclass(frozen=True)
class GripperConfig:
    linkage: LinkageParams
    screw: ScrewParams
    travel: TravelRange
    grasp_model: GraspModelParams
    cam: CamTrackSpec | None    # None means "default" (synthesized on demand)
    bruise_threshold: float     # N

    @classmethod
    def from_json(cls, text: str, base_dir: Path | None = None) -> "GripperConfig":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"config is not valid JSON: {exc}") from exc
        try:
            lk = d["linkage"]
            linkage = LinkageParams(
                p_x=float(lk["p_x_mm"]), l_b=float(lk["l_b_mm"]),
                l_k=float(lk["l_k_mm"]), l_f=float(lk["l_f_mm"]),
                p_y=float(lk["p_y_mm"]), l_n=float(lk["l_n_mm"]),
            )
            sc = d["screw"]
            screw = ScrewParams(
                pitch=float(sc["pitch_mm"]), n_starts=int(sc["n_starts"]),
                thread_angle=math.radians(float(sc["thread_angle_deg"])),
                d_outer=float(sc["d_outer_mm"]), mu=float(sc["mu"]),
            )
            tr = d["travel"]
            travel = TravelRange(x_min=float(tr["x_min_mm"]), x_max=float(tr["x_max_mm"]))
            gm = d["grasp_model"]
            grasp_model = GraspModelParams(
                pad_force=float(gm["pad_force_N"]), mu_pad=float(gm["mu_pad"]),
                suction_axial=float(gm["suction_axial_N"]),
                shear_fraction=float(gm["shear_fraction"]),
            )
            cam_ref = d.get("cam", "default")
            if cam_ref == "default":
                cam = None
            else:
                cam_path = Path(cam_ref)
                if base_dir is not None and not cam_path.is_absolute():
                    cam_path = base_dir / cam_path
                if not cam_path.exists():
                    raise ParseError(f"cam track file not found: {cam_path}")
                cam = CamTrackSpec.from_json(cam_path.read_text())
            bruise = float(d.get("bruise_threshold_N", 30.0))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad config field: {exc}") from exc
        return cls(linkage=linkage, screw=screw, travel=travel,
                   grasp_model=grasp_model, cam=cam, bruise_threshold=bruise)

    @classmethod
    def load(cls, path: str | Path) -> "GripperConfig":
        p = Path(path)
        return cls.from_json(p.read_text(), base_dir=p.parent)


def data_text(name: str) -> str:
    """Read a bundled data file."""
    return resources.files("tandemgrip").joinpath("data", name).read_text()


def default_config() -> GripperConfig:
    return GripperConfig.from_json(data_text("default_config.json"))


def shipped_calibration() -> GraspModelParams:
    """Grasp-model parameters from the bundled calibration run."""
    doc = json.loads(data_text("calibrated_params.json"))
    return GraspModelParams.from_dict(doc["params"])
