"""Morse-movie schedules for the norm-realizing spanning surfaces.

The spanning surface of the unknotted component is the visible disc,
punctured once by every strand of the knotted component passing
through it.  The knotted component's surface is built as a movie:
equal winding powers act on the three initial bridge arcs, then three
kinds of saddle moves resolve the frame into circles that are capped
off.  Euler characteristic bookkeeping: initial bridge arcs and final
arc closures are free, every saddle costs one, every cap pays one, and
every puncture removes a disc; chi = deaths - saddles - punctures.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

from .closedform import PretzelParams, surface_complexities


@dataclass(frozen=True)
class MoveSchedule:
    """Handle counts of one movie; chi = deaths - (s1+s2+s3) - punctures."""

    surface: str          # "F_U" or "F_K"
    braid_power: int      # central winding applied before puncturing (even)
    s1: int               # saddles joining the two central spirals
    s2: int               # saddles joining lateral arcs to the center
    s3: int               # saddles consuming leftover lateral spiraling
    deaths: int           # caps, including the spanning disc for F_U
    punctures: int
    chi: int

    def __post_init__(self):
        if self.chi != self.deaths - (self.s1 + self.s2 + self.s3) - self.punctures:
            raise ValueError("inconsistent Euler characteristic bookkeeping")
        if self.braid_power % 2 != 0:
            raise ValueError("winding power must be even")

    @property
    def saddles(self) -> int:
        return self.s1 + self.s2 + self.s3

    @property
    def frame_count(self) -> int:
        """Initial frame, one frame per move, one closing frame."""
        return self.saddles + self.deaths + 2

    def to_json_dict(self) -> dict:
        return asdict(self)


def schedule_FU(p: PretzelParams) -> MoveSchedule:
    """The trivial schedule for the visible spanning disc of U.

    No saddles; the single cap closes the disc, and each strand of K
    passing through it punctures the surface once per full twist pair:
    q1 + q2 punctures, chi = 1 - q1 - q2.
    """
    punctures = p.q1 + p.q2
    return MoveSchedule(
        surface="F_U", braid_power=0, s1=0, s2=0, s3=0,
        deaths=1, punctures=punctures, chi=1 - punctures,
    )


def schedule_FK(p: PretzelParams) -> MoveSchedule:
    """Movie schedule for the knotted component's spanning surface.

    The winding power is 2*qS when 2*rS >= qS - 1 and 4*rS + 2
    otherwise; twists beyond the power puncture the surface.  With
    winding w the frame resolves through w central saddles, 2(w-1)
    lateral joins, one extra lateral saddle per leftover half twist on
    each side, and w + 1 caps.  The resulting chi equals the
    closed-form surface complexity; only the totals are pinned by the
    construction, the split is bookkeeping.
    """
    w = p.qS if 2 * p.rS >= p.qS - 1 else 2 * p.rS + 1
    s1 = w
    s2 = 2 * (w - 1)
    s3 = max(0, 2 * p.r1 - (w - 1)) + max(0, 2 * p.r2 - (w - 1))
    deaths = w + 1
    punctures = p.q1 + p.q2 - 2 * w
    chi = deaths - (s1 + s2 + s3) - punctures
    schedule = MoveSchedule(
        surface="F_K", braid_power=2 * w, s1=s1, s2=s2, s3=s3,
        deaths=deaths, punctures=punctures, chi=chi,
    )
    if schedule.chi != surface_complexities(p).chi_FK:
        raise AssertionError("movie bookkeeping disagrees with the closed form")
    return schedule


def render_schedule(s: MoveSchedule) -> str:
    """Schematic SVG frame strip of the movie (presentational only)."""
    frame_w, frame_h, pad = 72, 54, 8
    frames: list[tuple[str, str]] = [("start", "3 arcs" if s.surface == "F_K" else "disc")]
    for kind, count in (("S1", s.s1), ("S2", s.s2), ("S3", s.s3)):
        frames.extend((kind, "saddle") for _ in range(count))
    frames.extend(("cap", "death") for _ in range(s.deaths))
    frames.append(("end", f"chi={s.chi}"))
    width = pad + len(frames) * (frame_w + pad)
    height = frame_h + 2 * pad + 14
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<text x="{pad}" y="{pad + 4}" font-size="9" font-family="monospace">'
        f'{s.surface}: {s.s1}+{s.s2}+{s.s3} saddles, {s.deaths} deaths, '
        f'{s.punctures} punctures, winding {s.braid_power}</text>',
    ]
    for i, (kind, note) in enumerate(frames):
        x = pad + i * (frame_w + pad)
        y = pad + 10
        parts.append(f'<rect x="{x}" y="{y}" width="{frame_w}" height="{frame_h}" '
                     f'fill="none" stroke="black"/>')
        cx = x + frame_w // 2
        cy = y + frame_h // 2
        if kind == "start":
            for k in (-12, 0, 12):
                parts.append(f'<path d="M {x + 8} {cy + k} q {frame_w // 2 - 8} -10 '
                             f'{frame_w - 16} 0" fill="none" stroke="black"/>')
        elif kind == "cap":
            parts.append(f'<circle cx="{cx}" cy="{cy}" r="10" fill="none" stroke="black"/>')
            parts.append(f'<line x1="{cx - 4}" y1="{cy}" x2="{cx + 4}" y2="{cy}" '
                         f'stroke="black"/>')
        elif kind == "end":
            parts.append(f'<line x1="{x + 8}" y1="{cy}" x2="{x + frame_w - 8}" y2="{cy}" '
                         f'stroke="black" stroke-dasharray="2,2"/>')
        else:
            parts.append(f'<path d="M {cx - 10} {cy - 12} q 10 12 0 24" '
                         f'fill="none" stroke="black"/>')
            parts.append(f'<path d="M {cx + 10} {cy - 12} q -10 12 0 24" '
                         f'fill="none" stroke="black"/>')
        parts.append(f'<text x="{x + 2}" y="{y + frame_h + 10}" font-size="8" '
                     f'font-family="monospace">{kind}:{note}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
