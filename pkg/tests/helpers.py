from collections import deque
from typing import List, Set, Tuple
import numpy as np


def vertical_step(height: int = 5, width: int = 5, at: int = 2) -> np.ndarray:
    """Columns left of ``at`` are 0, the rest 255."""
    r = np.zeros((height, width), dtype=np.uint8)
    r[:, at:] = 255
    return r


def label_components(edges: np.ndarray) -> List[Set[Tuple[int, int]]]:
    """8-connected components of a boolean map, by breadth-first flood fill."""
    seen = np.zeros(edges.shape, dtype=bool)
    components = []
    height, width = edges.shape
    for y, x in zip(*np.nonzero(edges)):
        if seen[y, x]:
            continue
        seen[y, x] = True
        queue, members = deque([(int(y), int(x))]), set()
        while queue:
            cy, cx = queue.popleft()
            members.add((cy, cx))
            for dy in (-1, 0, 1):
                for dx in (-1, 0, 1):
                    ny, nx = cy + dy, cx + dx
                    if 0 <= ny < height and 0 <= nx < width and edges[ny, nx] and not seen[ny, nx]:
                        seen[ny, nx] = True
                        queue.append((ny, nx))
        components.append(members)
    return components


def dilate(m: np.ndarray) -> np.ndarray:
    """3x3 binary dilation."""
    padded = np.pad(m, 1)
    out = np.zeros_like(m)
    height, width = m.shape
    for dy in range(3):
        for dx in range(3):
            out |= padded[dy:dy + height, dx:dx + width]
    return out
