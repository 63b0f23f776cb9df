"""Flat geometry of the octahedral cone surface and of flat tori.

The octahedron with unit edges, seen as a flat surface, has six cone
points of angle 4*pi/3.  Saddle connections from a cone point are found
by unrolling corridors of faces into the triangular lattice: every
unfolded face is a unit lattice triangle, so lengths are square roots of
integers a^2 + ab + b^2 and every direction comparison is exact integer
arithmetic.

Only one base vertex is ever developed; the isometry group is transitive
on vertices, so the based spectrum already contains every length.  A
relabelling symmetry is applied when a different base is requested.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

Vec = tuple[int, int]


def lattice_norm_sq(v: Vec) -> int:
    """Squared length of a*u + b*w for the 60-degree basis u, w."""
    a, b = v
    return a * a + a * b + b * b


def _cross(a: Vec, b: Vec) -> int:
    # same sign as the planar cross product since (u, w) is positively
    # oriented
    return a[0] * b[1] - a[1] * b[0]


def _dot2(a: Vec, b: Vec) -> int:
    # twice the inner product, which keeps everything in integers
    return 2 * a[0] * b[0] + a[0] * b[1] + a[1] * b[0] + 2 * a[1] * b[1]


def _segment_dist_sq(p: Vec, q: Vec) -> Fraction:
    """Exact squared distance from the origin to the segment [p, q]."""
    pp = Fraction(_dot2(p, p), 2)
    qq = Fraction(_dot2(q, q), 2)
    pq = Fraction(_dot2(p, q), 2)
    dd = pp - 2 * pq + qq
    if dd == 0:
        return pp
    t = (pp - pq) / dd
    if t < 0:
        t = Fraction(0)
    elif t > 1:
        t = Fraction(1)
    return pp + 2 * t * (pq - pp) + t * t * dd


class OctahedronComplex:
    """The boundary complex of the regular octahedron.

    Vertices 0..5 are +x, -x, +y, -y, +z, -z; a face is a sign triple
    (sx, sy, sz) picking one vertex per axis.  Opposite vertices differ
    by the lowest bit, and two vertices are adjacent exactly when they
    lie on different axes.
    """

    VERTEX_LABELS = ("+x", "-x", "+y", "-y", "+z", "-z")

    def __init__(self) -> None:
        self.faces = tuple(
            (sx, sy, sz) for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)
        )

    @staticmethod
    def vertex(axis: int, sign: int) -> int:
        return 2 * axis + (0 if sign > 0 else 1)

    @staticmethod
    def opposite(v: int) -> int:
        return v ^ 1

    @staticmethod
    def are_adjacent(u: int, v: int) -> bool:
        return u != v and u // 2 != v // 2

    def face_vertices(self, face: tuple[int, int, int]) -> tuple[int, int, int]:
        """Vertices of a face, ordered counterclockwise from outside."""
        sx, sy, sz = face
        vx = self.vertex(0, sx)
        vy = self.vertex(1, sy)
        vz = self.vertex(2, sz)
        if sx * sy * sz > 0:
            return (vx, vy, vz)
        return (vx, vz, vy)

    def neighbor(self, face: tuple[int, int, int], axis: int) -> tuple[int, int, int]:
        """The face across the edge not containing the axis vertex."""
        out = list(face)
        out[axis] = -out[axis]
        return tuple(out)

    def edges(self) -> frozenset[frozenset[int]]:
        out = set()
        for f in self.faces:
            a, b, c = self.face_vertices(f)
            out.update({frozenset((a, b)), frozenset((b, c)), frozenset((c, a))})
        return frozenset(out)

    def vertex_faces(self, v: int) -> tuple[tuple[int, int, int], ...]:
        return tuple(f for f in self.faces if v in self.face_vertices(f))

    def euler_characteristic(self) -> int:
        return 6 - len(self.edges()) + len(self.faces)


OCTAHEDRON = OctahedronComplex()


@dataclass(frozen=True)
class SaddleConnection:
    """A developed straight segment from the base cone point.

    ``vec`` is the endpoint in lattice coordinates; ``through_points``
    lists the intermediate cone points the segment passes over (empty for
    a genuine saddle connection; nonempty segments are concatenations of
    shorter connections recorded in order of increasing distance).
    """

    vec: Vec
    norm_sq: int
    base_vertex: int
    end_vertex: int
    through_points: tuple[Vec, ...] = ()
    through_vertices: tuple[int, ...] = ()

    @property
    def is_genuine(self) -> bool:
        return not self.through_points

    @property
    def length(self) -> float:
        return math.sqrt(self.norm_sq)


@dataclass
class _Corridor:
    # window: the far edge of the last placed triangle, through which
    # every ray of the wedge (lo, hi) exits; prev is the triangle corner
    # behind the window.  hits_* record cone points met on the boundary
    # rays so far, in increasing distance.
    window: tuple[Vec, Vec]
    wverts: tuple[int, int]
    prev: Vec
    vprev: int
    lo: Vec
    hi: Vec
    hits_lo: list[tuple[Vec, int]] = field(default_factory=list)
    hits_hi: list[tuple[Vec, int]] = field(default_factory=list)


# the four faces around the base vertex unfold to these seed triangles,
# spanning the full cone angle 4*pi/3; the rays at 0 and 240 degrees
# develop the same surface edge, so the latter is never reported
_SEED_POINTS: tuple[Vec, ...] = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1))
_SEED_VERTICES: tuple[int, ...] = (2, 4, 3, 5, 2)


def _relabel(base_vertex: int):
    """A symmetry of the octahedron sending vertex 0 to base_vertex."""
    axis, parity = base_vertex // 2, base_vertex % 2

    def perm(v: int) -> int:
        va, vp = v // 2, v % 2
        if va == 0:
            va = axis
            vp ^= parity
        elif va == axis:
            va = 0
            vp ^= parity
        return 2 * va + vp

    return perm


def saddle_connections(max_norm_sq: int = 16,
                       base_vertex: int = 0) -> tuple[SaddleConnection, ...]:
    """All developed segments from one cone point up to a squared length.

    Returns genuine saddle connections together with straight segments
    that pass over intermediate cone points, sorted by squared length.
    """
    if max_norm_sq < 1:
        return ()
    if not 0 <= base_vertex <= 5:
        raise ValueError("base vertex must be 0..5")

    found: list[SaddleConnection] = []

    def report(vec: Vec, nsq: int, end: int,
               through: list[tuple[Vec, int]]) -> None:
        found.append(SaddleConnection(
            vec=vec,
            norm_sq=nsq,
            base_vertex=0,
            end_vertex=end,
            through_points=tuple(p for p, _ in through),
            through_vertices=tuple(v for _, v in through),
        ))

    stack: list[_Corridor] = []
    for i in range(4):
        pl, ph = _SEED_POINTS[i], _SEED_POINTS[i + 1]
        vl, vh = _SEED_VERTICES[i], _SEED_VERTICES[i + 1]
        if lattice_norm_sq(pl) <= max_norm_sq:
            report(pl, lattice_norm_sq(pl), vl, [])
        stack.append(_Corridor(
            window=(pl, ph), wverts=(vl, vh), prev=(0, 0), vprev=0,
            lo=pl, hi=ph, hits_lo=[(pl, vl)], hits_hi=[(ph, vh)],
        ))

    steps = 0
    while stack:
        steps += 1
        if steps > 200000:  # pragma: no cover - safety only
            raise RuntimeError("corridor search did not terminate")
        c = stack.pop()
        if _segment_dist_sq(*c.window) > max_norm_sq:
            continue
        (pl, ph), (vl, vh) = c.window, c.wverts
        # unfolding a unit lattice triangle is a point reflection of the
        # apex into the fourth corner of the rhombus
        v = (pl[0] + ph[0] - c.prev[0], pl[1] + ph[1] - c.prev[1])
        vv = c.vprev ^ 1
        nsq = lattice_norm_sq(v)
        cl = _cross(c.lo, v)
        ch = _cross(v, c.hi)
        if cl > 0 and ch > 0:
            # a cone point strictly inside the wedge: a genuine
            # connection; the corridor splits at its direction
            if nsq <= max_norm_sq:
                report(v, nsq, vv, [])
            stack.append(_Corridor(
                window=(pl, v), wverts=(vl, vv), prev=ph, vprev=vh,
                lo=c.lo, hi=v,
                hits_lo=list(c.hits_lo), hits_hi=[(v, vv)],
            ))
            stack.append(_Corridor(
                window=(v, ph), wverts=(vv, vh), prev=pl, vprev=vl,
                lo=v, hi=c.hi,
                hits_lo=[(v, vv)], hits_hi=list(c.hits_hi),
            ))
        elif cl == 0:
            # on the low boundary ray: the segment to v runs over every
            # earlier hit on the ray; report from this side only
            assert _dot2(c.lo, v) > 0
            assert all(lattice_norm_sq(p) < nsq for p, _ in c.hits_lo)
            if nsq <= max_norm_sq:
                report(v, nsq, vv, c.hits_lo)
            stack.append(_Corridor(
                window=(v, ph), wverts=(vv, vh), prev=pl, vprev=vl,
                lo=c.lo, hi=c.hi,
                hits_lo=c.hits_lo + [(v, vv)], hits_hi=c.hits_hi,
            ))
        elif ch == 0:
            # on the high boundary ray: the twin corridor on the other
            # side of the ray reports this point
            assert _dot2(c.hi, v) > 0
            stack.append(_Corridor(
                window=(pl, v), wverts=(vl, vv), prev=ph, vprev=vh,
                lo=c.lo, hi=c.hi,
                hits_lo=c.hits_lo, hits_hi=c.hits_hi + [(v, vv)],
            ))
        elif cl < 0:
            # apex falls outside past the low ray; the wedge continues
            # through the other far edge
            stack.append(_Corridor(
                window=(v, ph), wverts=(vv, vh), prev=pl, vprev=vl,
                lo=c.lo, hi=c.hi, hits_lo=c.hits_lo, hits_hi=c.hits_hi,
            ))
        else:
            stack.append(_Corridor(
                window=(pl, v), wverts=(vl, vv), prev=ph, vprev=vh,
                lo=c.lo, hi=c.hi, hits_lo=c.hits_lo, hits_hi=c.hits_hi,
            ))

    if base_vertex != 0:
        perm = _relabel(base_vertex)
        found = [SaddleConnection(
            vec=s.vec, norm_sq=s.norm_sq, base_vertex=perm(0),
            end_vertex=perm(s.end_vertex),
            through_points=s.through_points,
            through_vertices=tuple(perm(t) for t in s.through_vertices),
        ) for s in found]
    found.sort(key=lambda s: (s.norm_sq, s.vec))
    return tuple(found)


# -- closed chains below a length threshold ---------------------------


@dataclass(frozen=True)
class ChainRecord:
    """A closed chain of genuine saddle connections through cone points."""

    total: float
    norms_sq: tuple[int, ...]
    pair_pattern: tuple[str, ...]
    description: str


@dataclass(frozen=True)
class FlatClassification:
    threshold: float
    chains: tuple[ChainRecord, ...]
    assumptions: tuple[str, ...]


_ASSUMPTIONS = (
    "closed flat geodesics shorter than the threshold pass through cone "
    "points, so they decompose into saddle connections; a smooth closed "
    "geodesic sits in a flat cylinder whose boundary chains through cone "
    "points have the same length",
    "chains of four or more connections have total length at least 4, "
    "which exceeds every threshold this classification is used with",
    "the isometry group is vertex-transitive, so lengths between a pair "
    "of cone points depend only on whether the pair is adjacent or "
    "opposite",
)


def flat_length_classification(threshold: float | None = None) -> FlatClassification:
    """Closed chains of up to three genuine saddle connections below a
    length threshold (default: twice sqrt(3)).

    Chains close up through two or three distinct cone points; each step
    uses a genuine connection length available for that pair class.
    """
    if threshold is None:
        threshold = 2.0 * math.sqrt(3.0)
    if threshold > 4.0:
        raise ValueError("chains of more than three connections are not "
                         "enumerated; thresholds above 4 need them")
    cap = max(1, math.ceil((threshold - 1.0) ** 2))
    spectrum = saddle_connections(max_norm_sq=cap)
    class_norms: dict[str, list[int]] = {"adjacent": [], "opposite": []}
    for s in spectrum:
        if not s.is_genuine:
            continue
        cls = ("adjacent" if OCTAHEDRON.are_adjacent(s.base_vertex, s.end_vertex)
               else "opposite")
        if s.norm_sq not in class_norms[cls]:
            class_norms[cls].append(s.norm_sq)

    chains: dict[tuple, ChainRecord] = {}

    def add(norms: tuple[int, ...], pattern: tuple[str, ...]) -> None:
        norms = tuple(sorted(norms))
        pattern = tuple(sorted(pattern))
        total = sum(math.sqrt(n) for n in norms)
        if not total < threshold:
            return
        key = (norms, pattern)
        if key in chains:
            return
        if norms == (1, 1):
            desc = "an edge traversed twice"
        elif norms == (1, 1, 1):
            desc = "the boundary of a face"
        else:
            desc = f"a chain of {len(norms)} saddle connections"
        chains[key] = ChainRecord(total=total, norms_sq=norms,
                                  pair_pattern=pattern, description=desc)

    # two connections between the same pair of cone points
    for cls, norms in class_norms.items():
        for n1, n2 in combinations_with_replacement(norms, 2):
            add((n1, n2), (cls, cls))

    # three connections around a triple of distinct cone points; every
    # pairwise-adjacent triple of the octahedron spans a face
    base = 0
    for v1 in range(6):
        for v2 in range(6):
            if len({base, v1, v2}) != 3:
                continue
            pairs = ((base, v1), (v1, v2), (v2, base))
            pattern = tuple(
                "adjacent" if OCTAHEDRON.are_adjacent(a, b) else "opposite"
                for a, b in pairs
            )
            lists = [class_norms[c] for c in pattern]
            for n1 in lists[0]:
                for n2 in lists[1]:
                    for n3 in lists[2]:
                        add((n1, n2, n3), pattern)

    ordered = tuple(sorted(chains.values(), key=lambda c: (c.total, c.norms_sq)))
    return FlatClassification(threshold=threshold, chains=ordered,
                              assumptions=_ASSUMPTIONS)


# -- flat tori --------------------------------------------------------


def torus_systolic_ratio(tau: complex) -> float:
    """Squared systole over area for the flat torus C / (Z + tau Z).

    The basis is Lagrange-Gauss reduced, after which the first vector is
    a shortest lattice vector.  The hexagonal torus maximises this ratio
    at 2/sqrt(3).
    """
    tau = complex(tau)
    if not tau.imag > 0:
        raise ValueError("the modulus must lie in the upper half-plane")
    b1, b2 = 1 + 0j, tau
    if abs(b2) < abs(b1):
        b1, b2 = b2, b1
    for _ in range(200):
        mu = round((b2 * b1.conjugate()).real / abs(b1) ** 2)
        b2 = b2 - mu * b1
        if abs(b2) < abs(b1):
            b1, b2 = b2, b1
        else:
            break
    else:  # pragma: no cover - reduction always terminates quickly
        raise RuntimeError("lattice reduction did not terminate")
    area = abs((b1.conjugate() * b2).imag)
    return abs(b1) ** 2 / area
