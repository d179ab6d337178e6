"""Positions, rectangular regions, and grid-accelerated fixed-radius neighbor queries."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Cap on grid resolution so tiny query radii do not explode the bucket count.
_MAX_CELLS_PER_DIAGONAL = 64


@dataclass(frozen=True)
class Region:
    """Axis-aligned rectangular region with one positive length per axis."""

    dims: tuple[float, ...]

    def __post_init__(self):
        if len(self.dims) == 0:
            raise ValueError("region needs at least one axis")
        if any(d <= 0 for d in self.dims):
            raise ValueError(f"all region dims must be positive, got {self.dims}")
        object.__setattr__(self, "dims", tuple(float(d) for d in self.dims))

    @property
    def ndim(self) -> int:
        return len(self.dims)

    def area(self) -> float:
        return float(np.prod(self.dims))

    def diagonal(self) -> float:
        return math.sqrt(sum(d * d for d in self.dims))

    def contains(self, positions: np.ndarray) -> bool:
        """True if every row lies in the half-open box [0, dims)."""
        pos = np.atleast_2d(positions)
        dims = np.asarray(self.dims)
        return bool(np.all(pos >= 0.0) and np.all(pos < dims))


def sample_positions(n: int, region: Region, rng: np.random.Generator) -> np.ndarray:
    """Draw n positions uniformly over the region (half-open on every axis).

    Returns an (n, ndim) float array; deterministic for a seeded generator.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return rng.random((n, region.ndim)) * np.asarray(region.dims)


def distance(a: np.ndarray, b: np.ndarray) -> float:
    """Euclidean distance between two positions."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def grid_cell_size(r: float, region: Region) -> float:
    """Cell edge for the spatial grid: at least r, at least diagonal/64."""
    return max(r, region.diagonal() / _MAX_CELLS_PER_DIAGONAL)


@dataclass
class GridIndex:
    """Uniform-grid spatial hash over a fixed position set.

    cell_size >= any query radius, so a query only has to inspect the
    3^ndim cell neighborhood around the query point's cell.
    """

    cell_size: float
    buckets: dict[tuple[int, ...], list[int]] = field(default_factory=dict)

    @classmethod
    def build(cls, positions: np.ndarray, cell_size: float) -> "GridIndex":
        if cell_size <= 0:
            raise ValueError(f"cell_size must be positive, got {cell_size}")
        index = cls(cell_size=cell_size)
        if len(positions) == 0:
            return index
        cells = np.floor(np.asarray(positions) / cell_size).astype(np.int64)
        for i, cell in enumerate(cells):
            index.buckets.setdefault(tuple(cell), []).append(i)
        return index

    def cell_of(self, position: np.ndarray) -> tuple[int, ...]:
        return tuple(np.floor(np.asarray(position) / self.cell_size).astype(np.int64))

    def candidates_near(self, position: np.ndarray) -> list[int]:
        """Node ids in the 3^ndim cells surrounding the position's cell."""
        center = self.cell_of(position)
        ndim = len(center)
        out: list[int] = []
        offsets = np.stack(
            np.meshgrid(*([np.arange(-1, 2)] * ndim), indexing="ij"), axis=-1
        ).reshape(-1, ndim)
        for off in offsets:
            bucket = self.buckets.get(tuple(c + o for c, o in zip(center, off)))
            if bucket:
                out.extend(bucket)
        return out


def radius_query(
    index: GridIndex, positions: np.ndarray, i: int, r: float
) -> set[int]:
    """Ids of nodes strictly closer than r to node i (excluding i itself)."""
    n = len(positions)
    if not 0 <= i < n:
        raise IndexError(f"node id {i} out of range for {n} positions")
    if r > index.cell_size:
        raise ValueError(f"query radius {r} exceeds grid cell size {index.cell_size}")
    cand = index.candidates_near(positions[i])
    if not cand:
        return set()
    cand_arr = np.asarray(cand)
    d = np.linalg.norm(positions[cand_arr] - positions[i], axis=1)
    hits = cand_arr[(d < r) & (cand_arr != i)]
    return set(int(j) for j in hits)
