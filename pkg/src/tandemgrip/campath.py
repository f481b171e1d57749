"""Two-region cam tracks and the finger rigid-body pose along them.

Each finger carries two pivot pins riding two planar tracks (axial plane of
the gripper: x = radial distance from the gripper axis, z = axial, palm
plane at z = 0, fruit sphere resting on the palm). The track pair encodes
two behaviors:

  sweeping   both pins slide; the finger rises from behind the palm and
             swings around the fruit with clearance;
  clamping   the inner pin rests on a hard stop at the end of the inner
             path; the outer pin continues along a circular arc about the
             stop, rotating the finger so the pad tip lands on the fruit.

Tracks are piecewise cubic Bezier curves (two outer segments, one inner).
The clamp segment approximates the pin circle around the hard stop; the
pose solver snaps the outer pin onto the exact circle (sub-micrometre
correction, i.e. the slot play), which keeps the rigid pin separation
satisfied to machine precision at every sample.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import PoseUnsolvable, SynthesisFailed

Point = tuple[float, float]

SNAP_TOL_MM = 0.05        # outer-pin slot play absorbed in the clamp region
HARD_STOP_TOL_MM = 1e-3   # inner pin within this of the stop counts as clamping
EPS = 1e-9
MAX_REACH_MM = 120.0      # radial envelope of the palm/track housing
ARC_SAMPLES = 2048        # arc-length table resolution
SCAN_SAMPLES = 129        # coarse scan of the inner parameter


@dataclass(frozen=True)
class CubicBezier:
    """Cubic Bezier segment, control points in mm."""

    p0: Point
    p1: Point
    p2: Point
    p3: Point

    def eval(self, t: float) -> np.ndarray:
        mt = 1.0 - t
        w = (mt**3, 3.0 * mt**2 * t, 3.0 * mt * t**2, t**3)
        pts = (self.p0, self.p1, self.p2, self.p3)
        return np.array([
            sum(w[i] * pts[i][0] for i in range(4)),
            sum(w[i] * pts[i][1] for i in range(4)),
        ])

    def as_list(self) -> list[list[float]]:
        return [list(self.p0), list(self.p1), list(self.p2), list(self.p3)]


class Region(enum.Enum):
    SWEEPING = "sweeping"
    CLAMPING = "clamping"


@dataclass(frozen=True)
class CamTrackSpec:
    """Parameterized cam-track pair plus the finger and fruit geometry."""

    outer_path: tuple[CubicBezier, ...]
    inner_path: CubicBezier
    pin_separation: float          # mm, rigid distance between the pins
    inner_hard_stop: float         # inner-path parameter where the path ends
    fruit_radius: float            # mm
    fruit_center: Point            # mm, axial plane
    palm_plane_z: float            # mm
    tip_extension: float           # mm, inner pin to pad tip lever
    pad_halfwidth: float = 5.0     # mm, finger body widening for clearance tests
    contact_latitude_max_deg: float = 6.0   # final pad contact at or above this

    def __post_init__(self):
        if self.pin_separation <= 0.0:
            raise ValueError("pin_separation must be > 0")
        if not 0.0 < self.inner_hard_stop <= 1.0:
            raise ValueError("inner_hard_stop must be in (0, 1]")
        if self.fruit_radius <= 0.0 or self.tip_extension <= 0.0:
            raise ValueError("fruit_radius and tip_extension must be > 0")

    def hard_stop_point(self) -> np.ndarray:
        return self.inner_path.eval(self.inner_hard_stop)

    def to_json(self) -> str:
        return json.dumps({
            "outer_path": [seg.as_list() for seg in self.outer_path],
            "inner_path": self.inner_path.as_list(),
            "pin_separation_mm": self.pin_separation,
            "inner_hard_stop": self.inner_hard_stop,
            "fruit_radius_mm": self.fruit_radius,
            "fruit_center_mm": list(self.fruit_center),
            "palm_plane_z_mm": self.palm_plane_z,
            "tip_extension_mm": self.tip_extension,
            "pad_halfwidth_mm": self.pad_halfwidth,
            "contact_latitude_max_deg": self.contact_latitude_max_deg,
        }, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "CamTrackSpec":
        d = json.loads(text)
        def seg(lst): return CubicBezier(*(tuple(p) for p in lst))
        return cls(
            outer_path=tuple(seg(s) for s in d["outer_path"]),
            inner_path=seg(d["inner_path"]),
            pin_separation=d["pin_separation_mm"],
            inner_hard_stop=d["inner_hard_stop"],
            fruit_radius=d["fruit_radius_mm"],
            fruit_center=tuple(d["fruit_center_mm"]),
            palm_plane_z=d["palm_plane_z_mm"],
            tip_extension=d["tip_extension_mm"],
            pad_halfwidth=d["pad_halfwidth_mm"],
            contact_latitude_max_deg=d.get("contact_latitude_max_deg", 6.0),
        )


@dataclass(frozen=True)
class FingerPose:
    inner_pin: np.ndarray
    outer_pin: np.ndarray
    pad_tip: np.ndarray
    region: Region
    rotation: float     # rad, tip direction tilt from the gripper axis (+z)


@dataclass(frozen=True)
class PathReport:
    min_clearance: float            # mm, sweeping region only, signed
    max_sweep_radius: float         # mm
    clamp_contact_latitude: float   # rad, positive below the fruit equator
    interference: bool


# ---------------------------------------------------------------------------
# synthesis
# ---------------------------------------------------------------------------

def _hermite(p0: np.ndarray, m0: np.ndarray, p3: np.ndarray, m3: np.ndarray) -> CubicBezier:
    c1 = p0 + m0 / 3.0
    c2 = p3 - m3 / 3.0
    return CubicBezier(tuple(p0), tuple(c1), tuple(c2), tuple(p3))


def _arc(center: np.ndarray, radius: float, a0: float, a1: float) -> CubicBezier:
    k = (4.0 / 3.0) * math.tan((a1 - a0) / 4.0)
    p0 = center + radius * np.array([math.cos(a0), math.sin(a0)])
    p3 = center + radius * np.array([math.cos(a1), math.sin(a1)])
    t0 = np.array([-math.sin(a0), math.cos(a0)])
    t1 = np.array([-math.sin(a1), math.cos(a1)])
    return CubicBezier(tuple(p0), tuple(p0 + k * radius * t0),
                       tuple(p3 - k * radius * t1), tuple(p3))


def _build_candidate(fruit_radius: float, deepen: float) -> CamTrackSpec:
    r = fruit_radius
    s = 0.48 * r                      # pin separation
    lever = r                         # tip lever: final pose puts the tip on the equator
    hard = np.array([r, 0.0])         # hard stop at palm level beside the fruit
    psi0 = math.radians(95.0)         # start tilt (tip below horizontal, outboard)
    psi_star = math.radians(20.0)     # tilt at the sweep/clamp transition
    i0 = np.array([0.45 * r, -0.18 * r - deepen])

    def outer_of(inner: np.ndarray, psi: float) -> np.ndarray:
        return inner - s * np.array([math.sin(psi), math.cos(psi)])

    rail = hard - i0
    e = rail / np.linalg.norm(rail)
    inner = CubicBezier(tuple(i0), tuple(i0 + rail / 3.0),
                        tuple(i0 + 2.0 * rail / 3.0), tuple(hard))

    o0 = outer_of(i0, psi0)
    o_star = outer_of(hard, psi_star)
    v0 = o_star - hard
    a0 = math.atan2(v0[1], v0[0])
    o1 = outer_of(hard, 0.0)
    a1 = math.atan2(*(o1 - hard)[::-1])
    clamp = _arc(hard, s, a0, a1)
    arc_t0 = np.array([-math.sin(a0), math.cos(a0)])
    if a1 < a0:
        arc_t0 = -arc_t0
    chord = float(np.linalg.norm(o_star - o0))
    sweep = _hermite(o0, e * chord, o_star, arc_t0 * chord * 0.9)

    return CamTrackSpec(
        outer_path=(sweep, clamp), inner_path=inner, pin_separation=s,
        inner_hard_stop=1.0, fruit_radius=r, fruit_center=(0.0, r),
        palm_plane_z=0.0, tip_extension=lever,
    )


def build_default_tracks(
    fruit_radius: float,
    clearance: float,
    samples: int = 500,
) -> CamTrackSpec:
    """Synthesize the default track pair for a fruit sphere.

    The sweeping region keeps the (pad-widened) finger at least ``clearance``
    from the fruit; the clamping region ends with the pad tip on the fruit
    at the equator. The rail start is deepened adaptively when the requested
    clearance is not met on the first try.
    """
    if fruit_radius <= 0.0:
        raise ValueError("fruit_radius must be > 0")
    if clearance < 0.0:
        raise ValueError("clearance must be >= 0")
    candidate = _build_candidate(fruit_radius, 0.0)
    reach = fruit_radius + clearance + candidate.pad_halfwidth
    if reach > MAX_REACH_MM:
        raise SynthesisFailed(
            "palm envelope",
            f"required sweep radius {reach:.1f} mm exceeds {MAX_REACH_MM} mm",
        )

    deepen = 0.0
    last_reason = ""
    for _ in range(4):
        spec = _build_candidate(fruit_radius, deepen)
        try:
            report = validate_path(spec, samples)
        except PoseUnsolvable as exc:
            raise SynthesisFailed("pose solvability", str(exc)) from exc
        pose0 = solve_finger_pose(spec, 0.0)
        if pose0.pad_tip[1] >= spec.palm_plane_z:
            raise SynthesisFailed("retracted start", "tip not behind the palm plane")
        lat_max = math.radians(spec.contact_latitude_max_deg)
        if report.clamp_contact_latitude > lat_max:
            raise SynthesisFailed(
                "contact latitude",
                f"{math.degrees(report.clamp_contact_latitude):.2f} deg below equator",
            )
        if report.min_clearance >= clearance:
            return spec
        last_reason = (
            f"min clearance {report.min_clearance:.2f} mm < {clearance:.2f} mm"
        )
        deepen += (clearance - report.min_clearance) + 0.5
    raise SynthesisFailed("sweep clearance", last_reason)


# ---------------------------------------------------------------------------
# pose solving
# ---------------------------------------------------------------------------

@lru_cache(maxsize=32)
def _outer_table(spec: CamTrackSpec) -> tuple[np.ndarray, np.ndarray]:
    """Dense polyline + cumulative arc length of the full outer path."""
    ts = np.linspace(0.0, 1.0, ARC_SAMPLES)
    chunks = []
    for k, seg in enumerate(spec.outer_path):
        pts = np.array([seg.eval(t) for t in ts])
        chunks.append(pts if k == 0 else pts[1:])
    pts = np.vstack(chunks)
    d = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    return pts, np.concatenate([[0.0], np.cumsum(d)])


def _outer_point(spec: CamTrackSpec, u: float) -> np.ndarray:
    pts, cum = _outer_table(spec)
    target = u * cum[-1]
    i = int(np.clip(np.searchsorted(cum, target), 1, len(cum) - 1))
    seg_len = cum[i] - cum[i - 1]
    f = (target - cum[i - 1]) / seg_len if seg_len > 0.0 else 0.0
    return pts[i - 1] + f * (pts[i] - pts[i - 1])


@lru_cache(maxsize=32)
def _inner_scan_grid(spec: CamTrackSpec) -> tuple[np.ndarray, np.ndarray]:
    ts = np.linspace(0.0, spec.inner_hard_stop, SCAN_SAMPLES)
    pts = np.array([spec.inner_path.eval(float(t)) for t in ts])
    return ts, pts


def solve_finger_pose(spec: CamTrackSpec, u: float) -> FingerPose:
    """Finger pose at outer-pin arc-length fraction ``u`` in [0, 1].

    The outer pin is placed on the outer path; the inner pin is found by
    1D root finding on the inner-path parameter so the pin separation holds
    exactly. Past the hard stop the inner pin is pinned there and the outer
    pin is snapped onto the exact pin circle (clamping rotation).
    """
    if not 0.0 <= u <= 1.0:
        raise ValueError("u must be in [0, 1]")
    outer = _outer_point(spec, u)
    s = spec.pin_separation
    hard = spec.hard_stop_point()

    def f(t: float) -> float:
        return float(np.linalg.norm(spec.inner_path.eval(t) - outer)) - s

    ts, grid = _inner_scan_grid(spec)
    fs = np.linalg.norm(grid - outer, axis=1) - s
    f_end = fs[-1]
    region: Region
    inner: np.ndarray

    if fs.min() > EPS or f_end < -EPS:
        # no rail point at pin distance, or the outer pin is inside the
        # hard-stop circle: either the clamp arc (snap) or an inconsistency
        if abs(f_end) <= SNAP_TOL_MM:
            region = Region.CLAMPING
            inner = hard
        else:
            detail = (
                f"min |inner - outer| - s = {fs.min():.4f} mm, "
                f"at the hard stop {f_end:.4f} mm"
            )
            raise PoseUnsolvable(u, detail)
    else:
        # rightmost crossing: the inner pin is maximally advanced toward the stop
        k = int(np.max(np.nonzero(fs <= EPS)))
        if k == len(ts) - 1:
            region = Region.CLAMPING
            inner = hard
        else:
            lo, hi = float(ts[k]), float(ts[k + 1])
            for _ in range(64):
                mid = 0.5 * (lo + hi)
                if f(mid) <= 0.0:
                    lo = mid
                else:
                    hi = mid
            t_root = 0.5 * (lo + hi)
            inner = spec.inner_path.eval(t_root)
            if np.linalg.norm(inner - hard) <= HARD_STOP_TOL_MM:
                region = Region.CLAMPING
                inner = hard
            else:
                region = Region.SWEEPING

    if region is Region.CLAMPING:
        # outer pin onto the exact circle about the stop (slot play)
        outer = hard + s * (outer - hard) / np.linalg.norm(outer - hard)

    u_io = (outer - inner) / np.linalg.norm(outer - inner)
    tip = inner - spec.tip_extension * u_io
    tip_dir = (tip - inner) / spec.tip_extension
    rotation = math.atan2(tip_dir[0], tip_dir[1])
    return FingerPose(inner_pin=inner, outer_pin=outer, pad_tip=tip,
                      region=region, rotation=rotation)


def _segment_clearance(a: np.ndarray, b: np.ndarray, center: np.ndarray,
                       radius: float, halfwidth: float) -> float:
    """Signed distance of the widened finger segment to the fruit sphere."""
    ab = b - a
    t = float(np.clip(np.dot(center - a, ab) / np.dot(ab, ab), 0.0, 1.0))
    closest = a + t * ab
    return float(np.linalg.norm(closest - center)) - radius - halfwidth


def validate_path(spec: CamTrackSpec, samples: int) -> PathReport:
    """Sample poses uniformly in u and report clearance and contact geometry."""
    if samples < 2:
        raise ValueError("samples must be >= 2")
    center = np.array(spec.fruit_center)
    min_clear = math.inf
    max_radius = 0.0
    poses = []
    for u in np.linspace(0.0, 1.0, samples):
        pose = solve_finger_pose(spec, float(u))
        poses.append((float(u), pose))
        if pose.region is Region.SWEEPING:
            clear = _segment_clearance(pose.inner_pin, pose.pad_tip, center,
                                       spec.fruit_radius, spec.pad_halfwidth)
            min_clear = min(min_clear, clear)
            max_radius = max(max_radius, abs(float(pose.pad_tip[0])))
    final_tip = poses[-1][1].pad_tip
    sin_lat = float(np.clip((center[1] - final_tip[1]) / spec.fruit_radius, -1.0, 1.0))
    latitude = math.asin(sin_lat)
    if min_clear is math.inf:
        min_clear = 0.0
    return PathReport(
        min_clearance=min_clear,
        max_sweep_radius=max_radius,
        clamp_contact_latitude=latitude,
        interference=min_clear < 0.0,
    )


POSES_CSV_HEADER = "u,inner_x,inner_z,outer_x,outer_z,tip_x,tip_z,region"


def poses_to_csv(spec: CamTrackSpec, samples: int) -> str:
    """Sampled pose table as CSV (9 significant digits)."""
    def fmt(v: float) -> str:
        return f"{v:.9g}"

    lines = [POSES_CSV_HEADER]
    for u in np.linspace(0.0, 1.0, samples):
        p = solve_finger_pose(spec, float(u))
        lines.append(",".join([
            fmt(float(u)), fmt(p.inner_pin[0]), fmt(p.inner_pin[1]),
            fmt(p.outer_pin[0]), fmt(p.outer_pin[1]),
            fmt(p.pad_tip[0]), fmt(p.pad_tip[1]), p.region.value,
        ]))
    return "\n".join(lines) + "\n"


def report_to_json(report: PathReport) -> str:
    return json.dumps({
        "min_clearance_mm": report.min_clearance,
        "max_sweep_radius_mm": report.max_sweep_radius,
        "clamp_contact_latitude_deg": math.degrees(report.clamp_contact_latitude),
        "interference": report.interference,
    }, indent=2)
