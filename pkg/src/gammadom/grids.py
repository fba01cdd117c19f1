"""Population-proportion grids for curve evaluation and dominance scans."""

from dataclasses import dataclass, field

import numpy as np

FULL_GRID_SIZE = 999


@dataclass(frozen=True)
class DominanceGrid:
    """Ordered u values in (0, 1), optionally restricted to [u_lo, u_hi]."""

    points: np.ndarray
    restriction: tuple | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        object.__setattr__(self, "points", pts)
        if pts.ndim != 1 or pts.size == 0:
            raise ValueError("grid must be a nonempty 1-d array")
        if np.any(pts <= 0.0) or np.any(pts >= 1.0):
            raise ValueError("grid points must lie strictly inside (0, 1)")
        if np.any(np.diff(pts) <= 0.0):
            raise ValueError("grid points must be strictly increasing")
        if self.restriction is not None:
            lo, hi = self.restriction
            if not (0.0 < lo <= hi < 1.0):
                raise ValueError("restriction must satisfy 0 < u_lo <= u_hi < 1")
            if self.active.size == 0:
                raise ValueError("restriction selects no grid points")

    @classmethod
    def default(cls):
        """The u_i = i/1000, i = 1..999 grid."""
        return cls(np.arange(1, 1000) / 1000.0)

    def restricted(self, u_lo, u_hi):
        return DominanceGrid(self.points, restriction=(float(u_lo), float(u_hi)))

    @property
    def active(self):
        """Grid points inside the restriction (all points when unrestricted)."""
        if self.restriction is None:
            return self.points
        lo, hi = self.restriction
        return self.points[(self.points >= lo) & (self.points <= hi)]

    @property
    def is_full(self):
        return self.restriction is None and self.points.size == FULL_GRID_SIZE
