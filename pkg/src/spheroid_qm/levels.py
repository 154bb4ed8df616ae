"""Level tables: rows of unperturbed energy, first-order shift and total, plus CSV/SVG output."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from pathlib import Path

__all__ = ["LevelRow", "LevelTable", "fmt", "emit_level_svg", "level_svg"]

CSV_HEADER = ("n", "l", "E0", "dE1", "E", "dE1_err_est")


def fmt(v: float) -> str:
    """Locale-independent, 12 significant digits; -0 prints as 0."""
    if v == 0:
        v = 0.0
    return f"{v:.12g}"


@dataclass(frozen=True)
class LevelRow:
    n: int
    l: int | None
    E0: float
    dE1: float
    dE1_err_est: float = 0.0
    # free-particle rows also keep the quadrature value of the shift
    dE1_quad: float | None = None

    @property
    def E(self) -> float:
        return self.E0 + self.dE1

    @property
    def discrepancy(self) -> float | None:
        if self.dE1_quad is None:
            return None
        return abs(self.dE1 - self.dE1_quad)


@dataclass
class LevelTable:
    kind: str
    lam: float
    eps: float
    omega: float | None = None
    coupling: str = "squared"
    rows: list[LevelRow] = field(default_factory=list)

    def levels(self) -> list[int]:
        return sorted({r.n for r in self.rows})

    def rows_for(self, n: int) -> list[LevelRow]:
        return [r for r in self.rows if r.n == n]

    def splitting_width(self, n: int) -> float:
        """max_l dE1 - min_l dE1 within level n."""
        shifts = [r.dE1 for r in self.rows_for(n)]
        return max(shifts) - min(shifts) if shifts else 0.0

    def splitting_widths(self) -> dict[int, float]:
        return {n: self.splitting_width(n) for n in self.levels()}

    def distinct_shifts(self, n: int, rel_tol: float = 1e-9) -> list[float]:
        """Shifted energies of level n with near-equal values merged."""
        out: list[float] = []
        for v in sorted(r.dE1 for r in self.rows_for(n)):
            if not out or abs(v - out[-1]) > rel_tol * max(1.0, abs(v)):
                out.append(v)
        return out

    def mean_splitting_width(self, n_max: int | None = None) -> float:
        widths = [w for n, w in self.splitting_widths().items() if n_max is None or n <= n_max]
        return sum(widths) / len(widths) if widths else 0.0

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(CSV_HEADER) + "\n")
        for r in self.rows:
            l = "" if r.l is None else str(r.l)
            buf.write(f"{r.n},{l},{fmt(r.E0)},{fmt(r.dE1)},{fmt(r.E)},{fmt(r.dE1_err_est)}\n")
        return buf.getvalue()

    def write_csv(self, path) -> None:
        Path(path).write_text(self.to_csv(), encoding="utf-8", newline="\n")


def _same_params(a: LevelTable, b: LevelTable) -> bool:
    if not math.isclose(a.lam, b.lam, rel_tol=1e-12):
        return False
    if a.omega is None or b.omega is None:
        return a.omega == b.omega
    return math.isclose(a.omega, b.omega, rel_tol=1e-12)


def level_svg(sphere: LevelTable, spheroid: LevelTable, width: int = 480, height: int = 640) -> str:
    """SVG level diagram: unperturbed levels on the left, shifted sublevels on the right.

    Each (n, l) row gets a connector from its left line to its right line.
    """
    if sphere.rows and spheroid.rows and not _same_params(sphere, spheroid):
        raise ValueError("level diagrams need tables sharing (lambda, omega)")
    margin_top, margin_bottom = 40, 40
    left_x0, left_x1 = 90, 200
    right_x0, right_x1 = 290, 400
    energies = [r.E0 for r in sphere.rows] + [r.E for r in spheroid.rows]

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{(left_x0 + left_x1) // 2}" y="24" text-anchor="middle" font-size="14">'
        f"eps = {fmt(sphere.eps)}</text>",
        f'<text x="{(right_x0 + right_x1) // 2}" y="24" text-anchor="middle" font-size="14">'
        f"eps = {fmt(spheroid.eps)}</text>",
    ]
    if energies:
        e_lo, e_hi = min(energies), max(energies)
        span = e_hi - e_lo or 1.0

        def y_of(e: float) -> str:
            frac = (e - e_lo) / span
            return fmt(height - margin_bottom - frac * (height - margin_top - margin_bottom))

        for r in sphere.rows:
            y = y_of(r.E0)
            out.append(f'<line x1="{left_x0}" y1="{y}" x2="{left_x1}" y2="{y}" stroke="black" stroke-width="2"/>')
        for n in sphere.levels():
            r = sphere.rows_for(n)[0]
            out.append(f'<text x="{left_x0 - 8}" y="{y_of(r.E0)}" text-anchor="end" font-size="12">n={n}</text>')
        right = {(r.n, r.l): r for r in spheroid.rows}
        for r in sphere.rows:
            other = right.get((r.n, r.l))
            if other is None:
                continue
            out.append(
                f'<line x1="{left_x1}" y1="{y_of(r.E0)}" x2="{right_x0}" y2="{y_of(other.E)}" '
                f'stroke="gray" stroke-dasharray="4,3"/>'
            )
        for r in spheroid.rows:
            y = y_of(r.E)
            out.append(f'<line x1="{right_x0}" y1="{y}" x2="{right_x1}" y2="{y}" stroke="black" stroke-width="2"/>')
            label = f"n={r.n}" if r.l is None else f"n={r.n}, l={r.l}"
            out.append(f'<text x="{right_x1 + 8}" y="{y}" font-size="11">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_level_svg(tables: tuple[LevelTable, LevelTable], path) -> None:
    """Write :func:`level_svg` for an (unperturbed, perturbed) pair of tables."""
    sphere, spheroid = tables
    Path(path).write_text(level_svg(sphere, spheroid), encoding="utf-8", newline="\n")
