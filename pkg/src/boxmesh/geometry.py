"""Axis-aligned boxes, partitions, lattice generation, admissibility metrics.

All geometry lives on closed axis-aligned boxes in ``[0,1]^d`` scale.  A
partition stores its boxes as two ``(N, d)`` coordinate arrays so that large
meshes stay cheap; ``AxisBox`` objects are materialised on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

# absolute per-coordinate tolerance at unit-cube scale
GEOM_TOL = 1e-12


@dataclass(frozen=True)
class AxisBox:
    """Axis-aligned box with nonempty interior."""

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self):
        lower = tuple(float(c) for c in self.lower)
        upper = tuple(float(c) for c in self.upper)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if len(lower) != len(upper) or not lower:
            raise ConfigurationError("lower and upper must have equal positive length")
        for lo, up in zip(lower, upper):
            if not (math.isfinite(lo) and math.isfinite(up)):
                raise ConfigurationError("box coordinates must be finite")
            if not lo < up:
                raise ConfigurationError(f"empty box side [{lo}, {up}]")

    @property
    def dim(self) -> int:
        return len(self.lower)

    @property
    def sides(self) -> np.ndarray:
        return np.asarray(self.upper) - np.asarray(self.lower)

    @property
    def center(self) -> np.ndarray:
        return 0.5 * (np.asarray(self.lower) + np.asarray(self.upper))

    def corner(self, mask: int) -> np.ndarray:
        """Corner for a bitmask; bit i set selects ``upper[i]``."""
        return np.where(
            [(mask >> i) & 1 for i in range(self.dim)],
            np.asarray(self.upper),
            np.asarray(self.lower),
        )

    def corners(self) -> np.ndarray:
        """All ``2^d`` corners, row index equal to the corner bitmask."""
        return box_corners(np.asarray(self.lower)[None, :], np.asarray(self.upper)[None, :])[0]

    def contains(self, x, tol: float = GEOM_TOL) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(
            np.all(x >= np.asarray(self.lower) - tol) and np.all(x <= np.asarray(self.upper) + tol)
        )


@dataclass(frozen=True)
class Signature:
    """Hessian sign pattern: k positive pure second derivatives out of d."""

    k: int
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ConfigurationError(f"dimension must be >= 1, got {self.d}")
        if not 0 <= self.k <= self.d:
            raise ConfigurationError(f"need 0 <= k <= d, got k={self.k}, d={self.d}")

    @property
    def definite(self) -> bool:
        return self.k in (0, self.d)


@dataclass(frozen=True)
class LatticeInfo:
    """Uniform-lattice structure of a partition, for O(1) point location."""

    anchor: tuple[float, ...]
    steps: tuple[float, ...]
    counts: tuple[int, ...]


class BoxPartition:
    """Covering of a domain box by interior-disjoint axis-aligned boxes.

    ``lowers`` and ``uppers`` are ``(N, d)`` float arrays; box ``i`` is
    ``[lowers[i], uppers[i]]``.
    """

    def __init__(self, domain: AxisBox, lowers, uppers, lattice: LatticeInfo | None = None):
        self.domain = domain
        self.lowers = np.ascontiguousarray(lowers, dtype=float)
        self.uppers = np.ascontiguousarray(uppers, dtype=float)
        if self.lowers.shape != self.uppers.shape or self.lowers.ndim != 2:
            raise ConfigurationError("lowers/uppers must be matching (N, d) arrays")
        if self.lowers.shape[1] != domain.dim:
            raise ConfigurationError("box dimension does not match domain dimension")
        if self.lowers.shape[0] == 0:
            raise ConfigurationError("partition must contain at least one box")
        if not np.all(self.uppers - self.lowers > 0):
            raise ConfigurationError("all boxes need nonempty interior")
        self.lattice = lattice

    @property
    def dim(self) -> int:
        return self.domain.dim

    @property
    def box_count(self) -> int:
        return self.lowers.shape[0]

    def box(self, i: int) -> AxisBox:
        return AxisBox(tuple(self.lowers[i]), tuple(self.uppers[i]))

    @property
    def boxes(self) -> list[AxisBox]:
        return [self.box(i) for i in range(self.box_count)]

    def volumes(self) -> np.ndarray:
        return np.prod(self.uppers - self.lowers, axis=1)

    def to_json_dict(self, metadata: dict | None = None) -> dict:
        return {
            "domain": {"lower": list(self.domain.lower), "upper": list(self.domain.upper)},
            "boxes": [
                {"lower": list(map(float, lo)), "upper": list(map(float, up))}
                for lo, up in zip(self.lowers, self.uppers)
            ],
            "metadata": dict(metadata or {}),
        }


def box_corners(lowers: np.ndarray, uppers: np.ndarray) -> np.ndarray:
    """Corners of a batch of boxes: ``(B, 2^d, d)``, bitmask corner order."""
    b, d = lowers.shape
    out = np.empty((b, 1 << d, d), dtype=float)
    for mask in range(1 << d):
        for i in range(d):
            out[:, mask, i] = uppers[:, i] if (mask >> i) & 1 else lowers[:, i]
    return out


def box_volume(b: AxisBox) -> float:
    """Product of side lengths."""
    return float(np.prod(b.sides))


def box_diameter(b: AxisBox) -> float:
    """Diameter under the max-coordinate metric, i.e. the longest side."""
    return float(np.max(b.sides))


def lattice_partition(region: AxisBox, steps) -> BoxPartition:
    """Partition ``region`` by a uniform lattice anchored at ``region.lower``.

    Cells overhanging the far faces are clipped to the region and kept as
    partition members.  A step larger than the region side yields a single
    clipped cell on that axis.
    """
    steps = np.asarray(steps, dtype=float)
    if steps.shape != (region.dim,):
        raise ConfigurationError("steps must supply one positive step per axis")
    if not np.all(steps > 0):
        raise ConfigurationError("steps must be positive")
    sides = region.sides
    counts = np.maximum(1, np.ceil(sides / steps - 1e-12).astype(int))

    edges = []
    for a in range(region.dim):
        e = region.lower[a] + steps[a] * np.arange(counts[a] + 1)
        e[-1] = region.upper[a]
        e = np.minimum(e, region.upper[a])
        edges.append(e)

    grids_lo = np.meshgrid(*[e[:-1] for e in edges], indexing="ij")
    grids_up = np.meshgrid(*[e[1:] for e in edges], indexing="ij")
    lowers = np.stack([g.ravel() for g in grids_lo], axis=1)
    uppers = np.stack([g.ravel() for g in grids_up], axis=1)
    info = LatticeInfo(anchor=region.lower, steps=tuple(steps), counts=tuple(int(c) for c in counts))
    return BoxPartition(region, lowers, uppers, lattice=info)


def admissibility_metric(p: BoxPartition) -> float:
    """``N^(1/d)`` times the largest box diameter of the partition."""
    max_diam = float(np.max(p.uppers - p.lowers))
    return p.box_count ** (1.0 / p.dim) * max_diam


def partition_defects(p: BoxPartition, rel_tol: float = 1e-9, overlap_tol: float = 1e-12) -> list[str]:
    """Check the partition invariants; returns human-readable defects.

    Volume conservation is checked at ``rel_tol`` relative, containment at
    ``GEOM_TOL`` per coordinate, pairwise interior overlap at ``overlap_tol``
    relative to the domain volume (candidate pairs found via a uniform grid).
    """
    defects: list[str] = []
    dom_lo = np.asarray(p.domain.lower)
    dom_up = np.asarray(p.domain.upper)
    dom_vol = box_volume(p.domain)

    total = float(np.sum(p.volumes()))
    if abs(total - dom_vol) > rel_tol * dom_vol:
        defects.append(f"volume mismatch: boxes total {total!r}, domain {dom_vol!r}")

    if np.any(p.lowers < dom_lo - GEOM_TOL) or np.any(p.uppers > dom_up + GEOM_TOL):
        defects.append("some box exceeds the domain")

    # spatial-grid candidate generation, then exact pairwise overlap volumes
    n, d = p.lowers.shape
    g = max(1, int(round(n ** (1.0 / d))))
    cell = (dom_up - dom_lo) / g
    cell[cell == 0] = 1.0
    buckets: dict[tuple, list[int]] = {}
    ilo = np.clip(np.floor((p.lowers - dom_lo) / cell - 1e-12).astype(int), 0, g - 1)
    iup = np.clip(np.ceil((p.uppers - dom_lo) / cell + 1e-12).astype(int) - 1, 0, g - 1)
    for i in range(n):
        for idx in np.ndindex(*(iup[i] - ilo[i] + 1)):
            buckets.setdefault(tuple(ilo[i] + np.asarray(idx)), []).append(i)
    checked: set[tuple[int, int]] = set()
    limit = overlap_tol * dom_vol
    for members in buckets.values():
        for ai in range(len(members)):
            for bi in range(ai + 1, len(members)):
                i, j = members[ai], members[bi]
                key = (min(i, j), max(i, j))
                if key in checked:
                    continue
                checked.add(key)
                lo = np.maximum(p.lowers[i], p.lowers[j])
                up = np.minimum(p.uppers[i], p.uppers[j])
                ext = np.clip(up - lo, 0.0, None)
                if np.all(ext > 0) and float(np.prod(ext)) > limit:
                    defects.append(f"boxes {i} and {j} overlap with volume {float(np.prod(ext))!r}")
    return defects
