r"""
Preimage meshes: how fine the inverse images of the tiling get.

The plane carries a cell decomposition left invariant by the point group:
unit squares for the square-lattice groups, and for the triangle-lattice
groups each unit square split along its main diagonal (the rotation of
order 3 permutes the vertical, horizontal and diagonal line families, so
the squares alone would not be invariant).  The mesh at depth n is the
decomposition of the fundamental domain [0,1]^2 into inverse images of
those cells under the n-th iterate of the affine map, clipped exactly.

Cell arithmetic is exact throughout: vertices are rational, clipping is
rational, and a cell is kept only if it has positive area.  Diameters are
the one lossy quantity, reported as floats in the geometric embedding of
the lattice, both in the Chebyshev metric (``max_diams``, the headline
statistic) and the Euclidean one (``max_diams_euclid``).  The Chebyshev
diameter is exact on the axis-aligned cells the square-group data
produce, which keeps the decay ratios exactly 1/det-per-axis there.

The diameters decay to zero iff the linear part is expanding; a unit
eigenvalue leaves cells long in the invariant direction, which is the
diagnostic this module exists to expose.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, hypot

from .crystal import embed_point
from .lattice import RationalVector2

__all__ = ["MAX_DEPTH", "MeshResult", "preimage_mesh"]

MAX_DEPTH = 12

_SQUARE = (
    RationalVector2(0, 0),
    RationalVector2(1, 0),
    RationalVector2(1, 1),
    RationalVector2(0, 1),
)
# Main-diagonal split, oriented counterclockwise like the square.
_LOWER_TRIANGLE = (RationalVector2(0, 0), RationalVector2(1, 0), RationalVector2(1, 1))
_UPPER_TRIANGLE = (RationalVector2(0, 0), RationalVector2(1, 1), RationalVector2(0, 1))


def _base_shapes(geometry: str) -> tuple:
    if geometry == "hex":
        return (_LOWER_TRIANGLE, _UPPER_TRIANGLE)
    return (_SQUARE,)


def _shoelace_twice(points) -> Fraction:
    total = Fraction(0)
    m = len(points)
    for i in range(m):
        p, q = points[i], points[(i + 1) % m]
        total += p.x * q.y - q.x * p.y
    return total


def _clip_unit_square(points):
    """Intersect a convex polygon with [0,1]^2, exactly.

    Returns the clipped vertex tuple, or None when the intersection has
    empty interior.
    """

    def against(pts, coord, bound, keep_ge):
        out = []
        m = len(pts)
        for i in range(m):
            cur, nxt = pts[i], pts[(i + 1) % m]
            c0, c1 = coord(cur), coord(nxt)
            cur_in = c0 >= bound if keep_ge else c0 <= bound
            nxt_in = c1 >= bound if keep_ge else c1 <= bound
            if cur_in:
                out.append(cur)
            if cur_in != nxt_in:
                t = Fraction(bound - c0, c1 - c0)
                out.append(cur + t * (nxt - cur))
        return out

    pts = list(points)
    for coord, bound, keep_ge in (
        (lambda v: v.x, 0, True),
        (lambda v: v.x, 1, False),
        (lambda v: v.y, 0, True),
        (lambda v: v.y, 1, False),
    ):
        pts = against(pts, coord, bound, keep_ge)
        if not pts:
            return None
    cleaned = []
    for v in pts:
        if not cleaned or v != cleaned[-1]:
            cleaned.append(v)
    if len(cleaned) > 1 and cleaned[0] == cleaned[-1]:
        cleaned.pop()
    if len(cleaned) < 3 or _shoelace_twice(cleaned) == 0:
        return None
    return tuple(cleaned)


def _diameters(points, geometry: str) -> tuple[float, float]:
    """(Chebyshev, Euclidean) diameter of a polygon in geometric coordinates."""
    embedded = [embed_point(v.x, v.y, geometry) for v in points]
    cheb = 0.0
    euclid = 0.0
    for i in range(len(embedded)):
        xi, yi = embedded[i]
        for j in range(i + 1, len(embedded)):
            dx = abs(embedded[j][0] - xi)
            dy = abs(embedded[j][1] - yi)
            if dx > cheb:
                cheb = dx
            if dy > cheb:
                cheb = dy
            d2 = hypot(dx, dy)
            if d2 > euclid:
                euclid = d2
    return cheb, euclid


@dataclass(frozen=True)
class MeshResult:
    """Cells at the final depth plus per-depth diameter statistics.

    ``cells`` hold exact lattice-coordinate vertices; the per-depth tuples
    are indexed by depth 0..depth.
    """

    depth: int
    geometry: str
    cells: tuple
    cell_counts: tuple
    max_diams: tuple
    max_diams_euclid: tuple

    @property
    def max_diam(self) -> float:
        return self.max_diams[self.depth]

    @property
    def max_diam_euclid(self) -> float:
        return self.max_diams_euclid[self.depth]

    @property
    def cell_count(self) -> int:
        return self.cell_counts[self.depth]

    def stats_json(self) -> dict:
        return {"depth": self.depth, "max_diam": self.max_diam}


def _cells_at_depth(datum, n: int):
    """All positive-area intersections of depth-n preimage cells with [0,1]^2."""
    geometry = datum.group.geometry
    forward = datum.map.iterate(n)
    inverse_linear = forward.linear_part.to_rational().inverse()
    # Inverse image of each base shape anchored at the origin cell; copies
    # over gamma are translates by inverse_linear * gamma.
    anchors = [
        tuple(forward.inverse_apply(v) for v in shape)
        for shape in _base_shapes(geometry)
    ]
    anchor_diams = [_diameters(a, geometry) for a in anchors]
    # A shifted copy meets the domain only if its base cell meets the
    # forward image of the domain; pad the bounding box by one to be safe.
    image_corners = [forward.apply(v) for v in _SQUARE]
    lo_x = floor(min(v.x for v in image_corners)) - 1
    hi_x = floor(max(v.x for v in image_corners)) + 1
    lo_y = floor(min(v.y for v in image_corners)) - 1
    hi_y = floor(max(v.y for v in image_corners)) + 1
    cells = []
    diams = []
    for gx in range(lo_x, hi_x + 1):
        for gy in range(lo_y, hi_y + 1):
            shift = inverse_linear * RationalVector2(gx, gy)
            for anchor, anchor_diam in zip(anchors, anchor_diams):
                poly = tuple(v + shift for v in anchor)
                xs = [v.x for v in poly]
                ys = [v.y for v in poly]
                if max(xs) <= 0 or min(xs) >= 1 or max(ys) <= 0 or min(ys) >= 1:
                    continue
                if min(xs) >= 0 and max(xs) <= 1 and min(ys) >= 0 and max(ys) <= 1:
                    cells.append(poly)
                    diams.append(anchor_diam)
                    continue
                clipped = _clip_unit_square(poly)
                if clipped is None:
                    continue
                cells.append(clipped)
                diams.append(_diameters(clipped, geometry))
    return cells, diams


def preimage_mesh(datum, depth: int) -> MeshResult:
    """Mesh of the fundamental domain under iterated inverse images.

    Computes the cell decomposition at every depth up to `depth` and
    records the maximum cell diameters per depth.  The full cell list is
    kept only for the final depth.
    """
    if not isinstance(depth, int) or depth < 0:
        raise ValueError("depth must be a nonnegative integer")
    if depth > MAX_DEPTH:
        raise ValueError(f"depth {depth} exceeds the supported maximum {MAX_DEPTH}")
    cell_counts = []
    max_diams = []
    max_diams_euclid = []
    final_cells = ()
    for n in range(depth + 1):
        cells, diams = _cells_at_depth(datum, n)
        if not cells:
            raise RuntimeError(f"empty mesh at depth {n}")
        cell_counts.append(len(cells))
        max_diams.append(max(d[0] for d in diams))
        max_diams_euclid.append(max(d[1] for d in diams))
        if n == depth:
            final_cells = tuple(cells)
    return MeshResult(
        depth=depth,
        geometry=datum.group.geometry,
        cells=final_cells,
        cell_counts=tuple(cell_counts),
        max_diams=tuple(max_diams),
        max_diams_euclid=tuple(max_diams_euclid),
    )
