"""Knot classification: projection, crossing diagrams, Reidemeister
simplification, and the Alexander determinant at -1.

A diagram is stored as the cyclic sequence of crossing passages met
while traversing the knot once, each tagged over/under, plus a sign
per crossing.  Edge (arc) labels 1..2c in traversal order, the PD
tuples, and the planar face structure are all derived from that data:

* edge e starts at passage index e-1 and ends at passage index e mod 2c;
* the PD tuple of a crossing lists its four edges counterclockwise
  starting from the incoming under-strand edge, so for a positive
  crossing the over strand runs slot d -> slot b, for a negative one
  slot b -> slot d.

Reidemeister moves become sequence surgery: R1 removes two adjacent
passages of one crossing, R2 removes the four passages of a bigon pair,
and R3 swaps the two endpoints of each of a triangle face's three sides.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateProjectionError,
    InconsistentDiagramError,
    InvalidParameterError,
    NoGenericProjectionError,
)
from .geometry import PolygonalKnot, nonadjacent_segment_pairs
from .seeding import rng_from

DEFAULT_PROJECTION_TOL = 1e-9
DEFAULT_ATTEMPTS = 32
R3_BUDGET_FACTOR = 8


class CrossingDiagram:
    """Planar knot diagram with over/under and sign data per crossing.

    Immutable once built; simplification returns new diagrams.
    """

    def __init__(self, passages, signs):
        passages = tuple((int(c), bool(o)) for c, o in passages)
        signs = {int(c): int(s) for c, s in dict(signs).items()}
        seen: dict[int, list[bool]] = {}
        for cid, over in passages:
            seen.setdefault(cid, []).append(over)
        for cid, overs in seen.items():
            if sorted(overs) != [False, True]:
                raise InconsistentDiagramError(
                    f"crossing {cid} must have exactly one over and one under passage"
                )
            if signs.get(cid) not in (-1, 1):
                raise InconsistentDiagramError(f"crossing {cid} lacks a sign in {{-1, +1}}")
        if len(passages) != 2 * len(seen):
            raise InconsistentDiagramError("passage count must be twice the crossing count")
        self._passages = passages
        self._signs = {cid: signs[cid] for cid in sorted(seen)}

    # -- basic structure ------------------------------------------------

    @property
    def passages(self) -> tuple:
        return self._passages

    @property
    def crossing_count(self) -> int:
        return len(self._passages) // 2

    @property
    def arc_count(self) -> int:
        return len(self._passages)

    def sign_of(self, cid: int) -> int:
        return self._signs[cid]

    def _crossing_order(self) -> list[int]:
        """Crossing ids ordered by first passage position."""
        order = []
        for cid, _ in self._passages:
            if cid not in order:
                order.append(cid)
        return order

    def _positions(self) -> dict[int, dict[bool, int]]:
        pos: dict[int, dict[bool, int]] = {}
        for idx, (cid, over) in enumerate(self._passages):
            pos.setdefault(cid, {})[over] = idx
        return pos

    @property
    def pd_code(self) -> list[tuple[int, int, int, int]]:
        """PD tuples (CCW from the incoming under edge), one per crossing."""
        n = len(self._passages)
        pos = self._positions()

        def incoming(p):
            return p if p >= 1 else n

        tuples = []
        for cid in self._crossing_order():
            pu, po = pos[cid][False], pos[cid][True]
            a, c = incoming(pu), pu + 1
            over_in, over_out = incoming(po), po + 1
            if self._signs[cid] > 0:
                tuples.append((a, over_out, c, over_in))
            else:
                tuples.append((a, over_in, c, over_out))
        return tuples

    @property
    def crossing_signs(self) -> list[int]:
        """Signs aligned with :attr:`pd_code` rows."""
        return [self._signs[cid] for cid in self._crossing_order()]

    def canonical_key(self) -> tuple:
        """Hashable key identifying the diagram up to crossing relabeling."""
        relabel = {cid: k for k, cid in enumerate(self._crossing_order())}
        return (
            tuple((relabel[c], o) for c, o in self._passages),
            tuple(self._signs[c] for c in self._crossing_order()),
        )

    # -- planar structure ------------------------------------------------

    def _slots(self) -> dict[int, list[tuple[int, str]]]:
        """Per crossing: the four (edge, 'in'|'out') slots in CCW order."""
        n = len(self._passages)
        pos = self._positions()

        def incoming(p):
            return p if p >= 1 else n

        slots = {}
        for cid in self._crossing_order():
            pu, po = pos[cid][False], pos[cid][True]
            a, c = incoming(pu), pu + 1
            o_in, o_out = incoming(po), po + 1
            if self._signs[cid] > 0:
                slots[cid] = [(a, "in"), (o_out, "out"), (c, "out"), (o_in, "in")]
            else:
                slots[cid] = [(a, "in"), (o_in, "in"), (c, "out"), (o_out, "out")]
        return slots

    def faces(self) -> list[list[tuple[int, bool]]]:
        """Faces of the embedding as dart lists; a dart is (edge, forward)."""
        if self.crossing_count == 0:
            return []
        slots = self._slots()
        head: dict[int, tuple[int, int]] = {}
        tail: dict[int, tuple[int, int]] = {}
        for cid, sl in slots.items():
            for s, (edge, inc) in enumerate(sl):
                if inc == "in":
                    head[edge] = (cid, s)
                else:
                    tail[edge] = (cid, s)
        darts = [(e, True) for e in head] + [(e, False) for e in head]
        visited = set()
        faces = []
        for start in darts:
            if start in visited:
                continue
            face = []
            dart = start
            while dart not in visited:
                visited.add(dart)
                face.append(dart)
                edge, forward = dart
                cid, s = head[edge] if forward else tail[edge]
                leave = (s + 3) % 4
                e2, inc = slots[cid][leave]
                dart = (e2, inc == "out")
            faces.append(face)
        return faces

    def validate(self) -> None:
        """Check arc pairing and sphericity; raise InconsistentDiagramError."""
        c = self.crossing_count
        if c == 0:
            return
        counts: dict[int, int] = {}
        for a, b, cc, d in self.pd_code:
            for label in (a, b, cc, d):
                counts[label] = counts.get(label, 0) + 1
        if sorted(counts) != list(range(1, 2 * c + 1)) or set(counts.values()) != {2}:
            raise InconsistentDiagramError("each arc label must appear exactly twice")
        if len(self.faces()) != c + 2:
            raise InconsistentDiagramError("face count violates Euler formula for the sphere")

    # -- constructors ----------------------------------------------------

    @classmethod
    def unknot(cls) -> "CrossingDiagram":
        return cls((), {})

    @classmethod
    def from_pd(cls, tuples, strict: bool = True) -> "CrossingDiagram":
        """Build a diagram from PD tuples with traversal-ordered labels."""
        tuples = [tuple(int(x) for x in row) for row in tuples]
        if not tuples:
            return cls.unknot()
        n = 2 * len(tuples)

        def succ(x):
            return x % n + 1

        seq: list = [None] * n
        signs = {}
        for cid, (a, b, c, d) in enumerate(tuples):
            if strict and c != succ(a):
                raise InconsistentDiagramError(
                    f"crossing {cid}: outgoing under edge {c} != successor of {a}"
                )
            if succ(d) == b:
                over_in, sign = d, +1
            elif succ(b) == d:
                over_in, sign = b, -1
            else:
                raise InconsistentDiagramError(
                    f"crossing {cid}: over edges {b},{d} are not traversal-consecutive"
                )
            for edge, over in ((a, False), (over_in, True)):
                idx = edge % n
                if seq[idx] is not None:
                    raise InconsistentDiagramError(f"duplicate incoming edge label {edge}")
                seq[idx] = (cid, over)
            signs[cid] = sign
        if any(p is None for p in seq):
            raise InconsistentDiagramError("PD labels do not cover 1..2c")
        return cls(seq, signs)


@dataclass(frozen=True)
class KnotLabel:
    """Coarse classification of a polygonal knot.

    The determinant is a projection-independent invariant; ``kind`` is
    a determinant-based bucket, with ``unknot`` reserved for diagrams
    that fully simplified (determinant collisions cannot fake it).
    """

    kind: str
    determinant: int
    crossings_after_simplification: int


@dataclass(frozen=True)
class DiagramLayout:
    """Projected polyline with the data needed to draw under-strand gaps.

    ``cuts`` are arclength positions (along the closed projected
    polyline) of the under passages, in traversal order.
    """

    points: np.ndarray
    cuts: tuple
    total_length: float


# -- projection ----------------------------------------------------------


def _projection_frame(direction: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    d = np.asarray(direction, dtype=float)
    norm = np.linalg.norm(d)
    if not np.isfinite(norm) or norm < 1e-12:
        raise InvalidParameterError("projection direction must be a nonzero finite vector")
    d = d / norm
    helper = np.zeros(3)
    helper[int(np.argmin(np.abs(d)))] = 1.0
    e1 = np.cross(d, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(d, e1)
    return e1, e2, d


def _cross2(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def project_with_layout(
    k: PolygonalKnot, direction, tol: float = DEFAULT_PROJECTION_TOL
) -> tuple[CrossingDiagram, DiagramLayout]:
    """Project along ``direction``; return the diagram and its drawable layout.

    Raises DegenerateProjectionError when any genericity test fails
    within tol (relative to the projected diagram diameter): tangency,
    near-parallel overlap, vertex-on-segment, triple points, a segment
    parallel to the direction, or unresolvable over/under depth.
    """
    e1, e2, d = _projection_frame(direction)
    verts = k.vertices
    v = len(verts)
    pts2 = np.column_stack([verts @ e1, verts @ e2])
    depth = verts @ d
    span = pts2.max(axis=0) - pts2.min(axis=0)
    scale = float(np.linalg.norm(span))
    if scale <= 0:
        raise DegenerateProjectionError("projected knot collapses to a point")
    eps = tol * scale
    depth_span = float(depth.max() - depth.min())
    eps_depth = tol * max(scale, depth_span, 1.0)

    seg = np.roll(pts2, -1, axis=0) - pts2
    seg_len = np.linalg.norm(seg, axis=1)
    if np.any(seg_len <= max(eps, 1e-12)):
        raise DegenerateProjectionError("a segment projects to (near) zero length")
    dz = np.roll(depth, -1) - depth

    i, j = nonadjacent_segment_pairs(v)
    qp = pts2[j] - pts2[i]
    denom = _cross2(seg[i], seg[j])
    tnum = _cross2(qp, seg[j])
    unum = _cross2(qp, seg[i])
    par = np.abs(denom) <= 1e-12 * seg_len[i] * seg_len[j]
    safe = np.where(par, 1.0, denom)
    t = tnum / safe
    u = unum / safe
    mt = eps / seg_len[i]
    mu = eps / seg_len[j]
    interior = (~par) & (t >= mt) & (t <= 1 - mt) & (u >= mu) & (u <= 1 - mu)
    nearby = (~par) & (t > -mt) & (t < 1 + mt) & (u > -mu) & (u < 1 + mu) & ~interior
    if np.any(nearby):
        raise DegenerateProjectionError("crossing too close to a vertex (within tol)")
    if np.any(par):
        # Parallel projected segments are only degenerate if they nearly touch.
        from .geometry import _segment_pair_distances

        pi, pj = i[par], j[par]
        z = np.zeros((len(pi), 1))
        dmin = _segment_pair_distances(
            np.hstack([pts2[pi], z]),
            np.hstack([pts2[pi] + seg[pi], z]),
            np.hstack([pts2[pj], z]),
            np.hstack([pts2[pj] + seg[pj], z]),
        )
        if np.any(dmin < eps):
            raise DegenerateProjectionError("near-parallel segments overlap (tangency)")

    ci = i[interior]
    cj = j[interior]
    ct = t[interior]
    cu = u[interior]
    zi = depth[ci] + ct * dz[ci]
    zj = depth[cj] + cu * dz[cj]
    if np.any(np.abs(zi - zj) <= eps_depth):
        raise DegenerateProjectionError("over/under depth separation below tol")

    # Events along the traversal: (segment, parameter) per passage.
    events = []
    for idx in range(len(ci)):
        over_first = zi[idx] > zj[idx]
        events.append((int(ci[idx]), float(ct[idx]), idx, over_first))
        events.append((int(cj[idx]), float(cu[idx]), idx, not over_first))
    events.sort(key=lambda e: (e[0], e[1]))
    for (s1, p1, *_), (s2, p2, *_) in zip(events, events[1:]):
        if s1 == s2 and (p2 - p1) * seg_len[s1] < eps:
            raise DegenerateProjectionError("two crossings nearly coincide on one segment")

    passages = [(cid, over) for _, _, cid, over in events]
    signs = {}
    for idx in range(len(ci)):
        t_under = seg[ci[idx]] if zi[idx] < zj[idx] else seg[cj[idx]]
        t_over = seg[cj[idx]] if zi[idx] < zj[idx] else seg[ci[idx]]
        signs[idx] = 1 if _cross2(t_over, t_under) > 0 else -1

    diagram = CrossingDiagram(passages, signs)
    cum = np.concatenate([[0.0], np.cumsum(seg_len)])
    cuts = tuple(
        float(cum[s] + p * seg_len[s]) for s, p, cid, over in events if not over
    )
    layout = DiagramLayout(points=pts2, cuts=cuts, total_length=float(cum[-1]))
    return diagram, layout


def project(k: PolygonalKnot, direction, tol: float = DEFAULT_PROJECTION_TOL) -> CrossingDiagram:
    """Orthogonal projection of a polygonal knot to a crossing diagram."""
    diagram, _ = project_with_layout(k, direction, tol)
    return diagram


# -- Reidemeister moves ---------------------------------------------------


def _find_r1(d: CrossingDiagram):
    seq = d.passages
    n = len(seq)
    for idx in range(n):
        if seq[idx][0] == seq[(idx + 1) % n][0]:
            return seq[idx][0]
    return None


def _apply_r1(d: CrossingDiagram, cid: int) -> CrossingDiagram:
    passages = [(c, o) for c, o in d.passages if c != cid]
    signs = {c: d.sign_of(c) for c, _ in passages}
    return CrossingDiagram(passages, signs)


def _find_r2(d: CrossingDiagram):
    seq = d.passages
    n = len(seq)
    over_pairs = set()
    under_pairs = []
    for idx in range(n):
        (x, sx), (y, sy) = seq[idx], seq[(idx + 1) % n]
        if x == y:
            continue
        pair = frozenset((x, y))
        if sx and sy:
            over_pairs.add(pair)
        elif not sx and not sy:
            under_pairs.append(pair)
    for pair in under_pairs:
        if pair in over_pairs:
            return tuple(sorted(pair))
    return None


def _apply_r2(d: CrossingDiagram, pair) -> CrossingDiagram:
    remove = set(pair)
    passages = [(c, o) for c, o in d.passages if c not in remove]
    signs = {c: d.sign_of(c) for c, _ in passages}
    return CrossingDiagram(passages, signs)


def _r3_sites(d: CrossingDiagram):
    """Triangular faces admitting an R3 move, as sorted edge triples."""
    n = len(d.passages)
    pos = d._positions()
    over_slot = {}
    for cid in d._crossing_order():
        pu, po = pos[cid][False], pos[cid][True]
        over_slot[(cid, True)] = po
        over_slot[(cid, False)] = pu
    sites = []
    for face in d.faces():
        if len(face) != 3:
            continue
        edges = [e for e, _ in face]
        if len(set(edges)) != 3:
            continue
        # Endpoint passages of edge e are sequence indices e-1 and e % n.
        ends = [((e - 1) % n, e % n) for e in edges]
        corners = set()
        for a, b in ends:
            corners.add(d.passages[a][0])
            corners.add(d.passages[b][0])
        if len(corners) != 3:
            continue
        uniform = False
        for a, b in ends:
            if d.passages[a][1] == d.passages[b][1]:
                uniform = True
                break
        if uniform:
            sites.append(tuple(sorted(edges)))
    return sites


def _apply_r3(d: CrossingDiagram, edges) -> CrossingDiagram:
    n = len(d.passages)
    seq = list(d.passages)
    for e in edges:
        a, b = (e - 1) % n, e % n
        seq[a], seq[b] = seq[b], seq[a]
    signs = {cid: d.sign_of(cid) for cid in d._crossing_order()}
    return CrossingDiagram(seq, signs)


def _reduce_r1_r2(d: CrossingDiagram) -> CrossingDiagram:
    while True:
        cid = _find_r1(d)
        if cid is not None:
            d = _apply_r1(d, cid)
            continue
        pair = _find_r2(d)
        if pair is not None:
            d = _apply_r2(d, pair)
            continue
        return d


def _r3_search(d: CrossingDiagram, budget: int):
    """Breadth-first walk over R3 moves until a state admits R1 or R2."""
    seen = {d.canonical_key()}
    queue = deque([d])
    spent = 0
    while queue and spent < budget:
        state = queue.popleft()
        for site in _r3_sites(state):
            if spent >= budget:
                return None
            nxt = _apply_r3(state, site)
            spent += 1
            key = nxt.canonical_key()
            if key in seen:
                continue
            seen.add(key)
            if _find_r1(nxt) is not None or _find_r2(nxt) is not None:
                return nxt
            queue.append(nxt)
    return None


def simplify(d: CrossingDiagram) -> CrossingDiagram:
    """Greedy crossing reduction by R1/R2 with bounded R3 detours.

    The output never has more crossings than the input, and its
    Alexander determinant equals the input's.
    """
    current = _reduce_r1_r2(d)
    while current.crossing_count > 0:
        better = _r3_search(current, R3_BUDGET_FACTOR * current.crossing_count)
        if better is None:
            break
        current = _reduce_r1_r2(better)
    return current


# -- Alexander determinant -------------------------------------------------


def _int_det(matrix: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    a = [row[:] for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                a[r][c] = (a[r][c] * a[k][k] - a[r][k] * a[k][c]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def alexander_determinant(d: CrossingDiagram) -> int:
    """|Alexander polynomial at -1|: 1 for the unknot diagram, odd always.

    At t = -1 every crossing contributes the same row regardless of
    sign: +2 on the over strand's Wirtinger arc, -1 on each under arc
    (entries accumulate when arcs coincide).  One row and one column of
    the c x c matrix are dropped before taking the exact determinant.
    """
    c = d.crossing_count
    if c == 0:
        return 1
    seq = d.passages
    n = len(seq)
    under_pos = [idx for idx, (_, over) in enumerate(seq) if not over]
    arc_index_of_under = {p: k for k, p in enumerate(under_pos)}

    def arc_containing(pos: int) -> int:
        # Arc k ends at under_pos[k]; position p belongs to the arc whose
        # terminal under passage is the first one at or after p.
        lo = int(np.searchsorted(under_pos, pos))
        return lo % c

    order = d._crossing_order()
    row_of = {cid: r for r, cid in enumerate(order)}
    matrix = [[0] * c for _ in range(c)]
    pos = d._positions()
    for cid in order:
        pu, po = pos[cid][False], pos[cid][True]
        k_in = arc_index_of_under[pu]
        k_out = (k_in + 1) % c
        k_over = arc_containing(po)
        row = matrix[row_of[cid]]
        row[k_over] += 2
        row[k_in] -= 1
        row[k_out] -= 1
    minor = [row[: c - 1] for row in matrix[: c - 1]]
    det = abs(_int_det(minor))
    if det % 2 == 0:
        raise InconsistentDiagramError(
            f"even determinant {det}: diagram is not a valid knot diagram"
        )
    return det


# -- classification --------------------------------------------------------

DETERMINANT_KINDS = {1: "unknot", 3: "trefoil-class", 5: "figure8-class"}


def classify(
    k: PolygonalKnot,
    attempts: int = DEFAULT_ATTEMPTS,
    seed: int = 0,
    tol: float = DEFAULT_PROJECTION_TOL,
) -> KnotLabel:
    """Label a knot from up to ``attempts`` random projection directions.

    The determinant must agree across (up to) three generic directions.
    ``unknot`` demands zero crossings after simplification in the best
    projection; a determinant of 1 without full reduction stays
    'other' so determinant collisions cannot fake unknottedness.
    """
    if attempts < 1:
        raise InvalidParameterError(f"attempts must be >= 1, got {attempts}")
    rng = rng_from(seed, 0)
    diagrams = []
    for _ in range(attempts):
        direction = rng.standard_normal(3)
        if np.linalg.norm(direction) < 1e-12:
            continue
        try:
            diagrams.append(project(k, direction, tol))
        except DegenerateProjectionError:
            continue
        if len(diagrams) == 3:
            break
    if not diagrams:
        raise NoGenericProjectionError(
            f"no generic projection found in {attempts} attempts"
        )
    simplified = [simplify(d) for d in diagrams]
    dets = {alexander_determinant(s) for s in simplified}
    if len(dets) != 1:
        raise InconsistentDiagramError(
            f"determinant disagrees across projections: {sorted(dets)}"
        )
    det = dets.pop()
    crossings = min(s.crossing_count for s in simplified)
    if crossings == 0:
        kind = "unknot"
    else:
        kind = DETERMINANT_KINDS.get(det, "other")
        if kind == "unknot":
            kind = "other"  # det 1 but not fully reduced
    return KnotLabel(kind=kind, determinant=det, crossings_after_simplification=crossings)


# -- fixtures ---------------------------------------------------------------


def _uniform_params(n: int) -> np.ndarray:
    # Half-step offset keeps the axis-aligned projections of the highly
    # symmetric fixtures generic (no crossing lands exactly on a vertex).
    return 2.0 * np.pi * (np.arange(n) + 0.5) / n


def circle_polygon(n: int = 64) -> PolygonalKnot:
    """Planar unit circle as a closed polygon in R^3."""
    t = _uniform_params(n)
    return PolygonalKnot(np.column_stack([np.cos(t), np.sin(t), np.zeros(n)]))


def trefoil_polygon(n: int = 64) -> PolygonalKnot:
    """Standard trefoil ((2+cos 3t)cos 2t, (2+cos 3t)sin 2t, sin 3t)."""
    t = _uniform_params(n)
    r = 2.0 + np.cos(3 * t)
    return PolygonalKnot(np.column_stack([r * np.cos(2 * t), r * np.sin(2 * t), np.sin(3 * t)]))


def figure_eight_polygon(n: int = 96) -> PolygonalKnot:
    """Figure-eight knot ((2+cos 2t)cos 3t, (2+cos 2t)sin 3t, sin 4t)."""
    t = _uniform_params(n)
    r = 2.0 + np.cos(2 * t)
    return PolygonalKnot(np.column_stack([r * np.cos(3 * t), r * np.sin(3 * t), np.sin(4 * t)]))


BUILTIN_KNOTS = {
    "unknot": circle_polygon,
    "trefoil": trefoil_polygon,
    "figure-eight": figure_eight_polygon,
}


# -- PD text format ----------------------------------------------------------


def write_pd(path, d: CrossingDiagram, layout: DiagramLayout | None = None,
             comment: str | None = None) -> None:
    """Write 'X a,b,c,d' lines; layout rides along in '#!' comment records."""
    lines = []
    if comment:
        lines.append(f"# {comment}")
    if layout is not None:
        lines.append(f"#! L {layout.total_length!r}")
        for x, y in np.asarray(layout.points, dtype=float):
            lines.append(f"#! P {x!r} {y!r}")
        for cut in layout.cuts:
            lines.append(f"#! C {cut!r}")
    for a, b, c, dd in d.pd_code:
        lines.append(f"X {a},{b},{c},{dd}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_pd(path) -> tuple[CrossingDiagram, DiagramLayout | None]:
    """Read a PD file; returns (diagram, layout or None)."""
    tuples = []
    points = []
    cuts = []
    total = None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#!"):
                parts = line[2:].split()
                if parts and parts[0] == "P":
                    points.append([float(parts[1]), float(parts[2])])
                elif parts and parts[0] == "C":
                    cuts.append(float(parts[1]))
                elif parts and parts[0] == "L":
                    total = float(parts[1])
                continue
            if line.startswith("#"):
                continue
            if not line.startswith("X"):
                raise InconsistentDiagramError(f"unrecognized PD line: {line!r}")
            tuples.append([int(x) for x in line[1:].strip().split(",")])
    diagram = CrossingDiagram.from_pd(tuples)
    layout = None
    if points and total is not None:
        layout = DiagramLayout(
            points=np.asarray(points, dtype=float), cuts=tuple(cuts), total_length=total
        )
    return diagram, layout
