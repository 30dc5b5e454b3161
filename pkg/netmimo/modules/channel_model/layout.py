from typing import Dict, List, Tuple
from dataclasses import dataclass

import numpy as np

from netmimo.modules.log import getLogger

log = getLogger(__name__)

from .errors import LayoutError

SQRT3 = np.sqrt(3.0)

# axial hex offsets of the six neighbours (flat-top orientation)
HEX_DIRECTIONS = [(1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1)]

# cluster shape (axial offsets of member cells) and the two generators of the
# lattice of cluster translations; the lattice index equals the cluster size
CLUSTER_SHAPES: Dict[int, Tuple[List[Tuple[int, int]], Tuple[int, int], Tuple[int, int]]] = {
    1: ([(0, 0)], (1, 0), (0, 1)),
    3: ([(0, 0), (1, 0), (0, 1)], (1, 1), (2, -1)),
    7: ([(0, 0)] + HEX_DIRECTIONS, (2, 1), (-1, 3)),
}

# hex-distance tiers of interfering cells around the analyzed cluster
INTERFERER_TIERS = {1: 2, 3: 2}


@dataclass
class CellLayout:
    """
    Clustered hexagonal cell layout.
    Cells 0..B-1 are the analyzed cluster, the rest are interferers.
    Positions are in km, flat-top hexagons with circumradius `cell_radius`,
    base station at the hexagon center.
    """

    cluster_size: int
    cell_radius: float
    cell_centers: np.ndarray  # (n_cells, 2)
    cluster_of_cell: np.ndarray  # (n_cells,) int, 0 = analyzed cluster
    axial: List[Tuple[int, int]]

    @property
    def analyzed_cells(self) -> np.ndarray:
        return np.arange(self.cluster_size)

    @property
    def interferer_cells(self) -> np.ndarray:
        return np.arange(self.cluster_size, len(self.cell_centers))

    @property
    def num_cells(self) -> int:
        return len(self.cell_centers)

    def contains(self, cell: int, points: np.ndarray) -> np.ndarray:
        """Boolean mask: which of `points` (n, 2) lie inside hexagon of `cell`"""
        return in_hexagon(points - self.cell_centers[cell], self.cell_radius)


def hex_distance(a: Tuple[int, int], b: Tuple[int, int]) -> int:
    dq = a[0] - b[0]
    dr = a[1] - b[1]
    return (abs(dq) + abs(dr) + abs(dq + dr)) // 2


def axial_to_xy(q: int, r: int, radius: float) -> Tuple[float, float]:
    return (1.5 * radius * q, SQRT3 * radius * (r + q / 2.0))


def in_hexagon(points: np.ndarray, radius: float) -> np.ndarray:
    """Flat-top hexagon centered at origin; boundary counts as inside"""
    x = np.abs(points[..., 0])
    y = np.abs(points[..., 1])
    return (y <= SQRT3 / 2.0 * radius) & (SQRT3 * x + y <= SQRT3 * radius)


def cluster_key(cell: Tuple[int, int], cluster_size: int) -> Tuple[int, int]:
    """
    Lattice coordinates of the cluster `cell` belongs to.
    Each cell is a member offset plus an integer combination of the two generators.
    """
    shape, (aq, ar), (bq, br) = CLUSTER_SHAPES[cluster_size]
    det = aq * br - ar * bq
    for oq, orr in shape:
        dq = cell[0] - oq
        dr = cell[1] - orr
        x_num = dq * br - dr * bq
        y_num = aq * dr - ar * dq
        if x_num % det == 0 and y_num % det == 0:
            return (x_num // det, y_num // det)
    raise LayoutError(f"cell {cell} has no cluster (B={cluster_size})")


def build_layout(cluster_size: int, cell_radius: float = 1.0) -> CellLayout:
    """
    Build analyzed cluster of `cluster_size` cells plus its interferers:
        B=1, B=3: every cell within two hex tiers of the cluster;
        B=7: the six surrounding 7-cell clusters (one wrap-around tier).
    The centroid of the analyzed cluster is the origin.
    """
    if cluster_size not in CLUSTER_SHAPES:
        supported = ", ".join(str(b) for b in sorted(CLUSTER_SHAPES))
        raise LayoutError(
            f"unsupported cluster size {cluster_size}. Supported sizes: {supported}"
        )
    if cell_radius <= 0:
        raise LayoutError(f"cell radius must be positive, got {cell_radius}")

    shape = CLUSTER_SHAPES[cluster_size][0]
    analyzed = list(shape)

    candidates = [
        (q, r) for q in range(-8, 9) for r in range(-8, 9) if (q, r) not in analyzed
    ]

    if cluster_size in INTERFERER_TIERS:
        tiers = INTERFERER_TIERS[cluster_size]
        interferers = [
            c for c in candidates if min(hex_distance(c, a) for a in analyzed) <= tiers
        ]
    else:
        home = cluster_key(analyzed[0], cluster_size)
        neighbor_keys = {
            cluster_key(n, cluster_size)
            for a in analyzed
            for n in ((a[0] + dq, a[1] + dr) for dq, dr in HEX_DIRECTIONS)
        } - {home}
        interferers = [c for c in candidates if cluster_key(c, cluster_size) in neighbor_keys]

    interferers.sort(key=lambda c: (min(hex_distance(c, a) for a in analyzed), c))
    axial = analyzed + interferers

    keys: Dict[Tuple[int, int], int] = {}
    cluster_of_cell = []
    for c in axial:
        key = cluster_key(c, cluster_size)
        cluster_of_cell.append(keys.setdefault(key, len(keys)))

    centers = np.array([axial_to_xy(q, r, cell_radius) for q, r in axial])
    centers -= centers[:cluster_size].mean(axis=0)

    log.verbose3(
        "Built layout B=%d: %d interfering cells in %d clusters",
        cluster_size,
        len(interferers),
        len(keys) - 1,
    )
    return CellLayout(
        cluster_size=cluster_size,
        cell_radius=cell_radius,
        cell_centers=centers,
        cluster_of_cell=np.array(cluster_of_cell, dtype=int),
        axial=axial,
    )
