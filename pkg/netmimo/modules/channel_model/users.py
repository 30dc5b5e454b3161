from typing import Optional
from dataclasses import dataclass

import numpy as np

from netmimo.modules.log import getLogger

log = getLogger(__name__)

from .errors import ChannelModelError
from .layout import CellLayout, in_hexagon, SQRT3


@dataclass
class UserDrop:
    """User positions (km) in the analyzed cluster, grouped cell by cell"""

    positions: np.ndarray  # (K_total, 2)
    home_cell: np.ndarray  # (K_total,) int
    seed: Optional[int]

    @property
    def num_users(self) -> int:
        return len(self.positions)


def sample_in_hexagon(
    rng: np.random.Generator, count: int, radius: float
) -> np.ndarray:
    """Uniform points in a flat-top hexagon centered at origin (rejection sampling)"""
    half_height = SQRT3 / 2.0 * radius
    points = np.empty((0, 2))
    while len(points) < count:
        batch = max(2 * (count - len(points)), 8)
        candidates = np.column_stack(
            (
                rng.uniform(-radius, radius, batch),
                rng.uniform(-half_height, half_height, batch),
            )
        )
        points = np.vstack((points, candidates[in_hexagon(candidates, radius)]))
    return points[:count]


def drop_users(
    layout: CellLayout,
    users_per_cell: int,
    seed=None,
    rng: Optional[np.random.Generator] = None,
) -> UserDrop:
    """
    Drop `users_per_cell` users uniformly and independently in every analyzed cell.
    Either `seed` or an explicit `rng` is used; the same seed yields the same drop.
    """
    if users_per_cell < 1:
        raise ChannelModelError(f"users_per_cell must be >= 1, got {users_per_cell}")

    rng = rng if rng is not None else np.random.default_rng(seed)

    positions = []
    home_cell = []
    for cell in layout.analyzed_cells:
        local = sample_in_hexagon(rng, users_per_cell, layout.cell_radius)
        positions.append(local + layout.cell_centers[cell])
        home_cell.extend([cell] * users_per_cell)

    drop = UserDrop(
        positions=np.vstack(positions),
        home_cell=np.array(home_cell, dtype=int),
        seed=seed if isinstance(seed, int) else None,
    )
    log.trace("dropped %d users in %d cells", drop.num_users, layout.cluster_size)
    return drop
