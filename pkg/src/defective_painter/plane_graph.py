"""Plane graphs as rotation systems, with the structural queries used by the
painting strategy.

A plane graph is stored combinatorially: a clockwise cyclic neighbour order
per vertex plus the outer boundary walk.  Faces are traced from the rotation
system, so every geometric question (what is inside a cycle, is a triangle
separating, where may a chord be inserted) reduces to walks over directed
edges and never touches coordinates.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class PlaneGraphError(ValueError):
    """Raised for malformed embeddings or invalid structural queries."""


# ---------------------------------------------------------------------------
# core representation
# ---------------------------------------------------------------------------


def _canonical_face(face: tuple[int, ...]) -> tuple[int, ...]:
    """Rotate a cyclic vertex sequence to a canonical starting point."""
    k = len(face)
    best = min(range(k), key=lambda i: face[i:] + face[:i])
    return face[best:] + face[:best]


@dataclass(frozen=True)
class PlaneGraph:
    """Immutable plane graph with dense vertex ids 0..n-1.

    rotation[v] lists the neighbours of v in clockwise order.  outer is the
    boundary walk of the infinite face; it may repeat vertices when the graph
    has cut vertices.
    """

    n: int
    rotation: tuple[tuple[int, ...], ...]
    outer: tuple[int, ...]
    _faces: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._validate_basic()
        faces = self._trace_faces()
        object.__setattr__(self, "_faces", faces)
        object.__setattr__(
            self, "_adj", tuple(frozenset(nbrs) for nbrs in self.rotation)
        )
        self._validate_euler()
        self._validate_outer()

    # -- validation --------------------------------------------------------

    def _validate_basic(self) -> None:
        if self.n < 1:
            raise PlaneGraphError("graph needs at least one vertex")
        if len(self.rotation) != self.n:
            raise PlaneGraphError("rotation table size does not match n")
        for v, nbrs in enumerate(self.rotation):
            seen = set()
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise PlaneGraphError(f"vertex {v} lists unknown neighbour {u}")
                if u == v:
                    raise PlaneGraphError(f"loop at vertex {v}")
                if u in seen:
                    raise PlaneGraphError(f"duplicate edge {v}-{u} in rotation")
                seen.add(u)
        for v, nbrs in enumerate(self.rotation):
            for u in nbrs:
                if v not in self.rotation[u]:
                    raise PlaneGraphError(f"edge {v}-{u} is not symmetric")
        # connectivity (the games are defined on connected graphs)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in self.rotation[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != self.n:
            raise PlaneGraphError("graph is not connected")

    def _trace_faces(self) -> tuple[tuple[int, ...], ...]:
        """Trace all faces: from directed edge (u,v) continue to (v,w) where
        w follows u in the clockwise rotation at v."""
        pos = [
            {u: i for i, u in enumerate(nbrs)} for nbrs in self.rotation
        ]
        unused: set[tuple[int, int]] = set()
        for v, nbrs in enumerate(self.rotation):
            for u in nbrs:
                unused.add((v, u))
        faces = []
        while unused:
            start = min(unused)
            walk = []
            u, v = start
            while True:
                walk.append(u)
                unused.discard((u, v))
                i = pos[v][u]
                w = self.rotation[v][(i + 1) % len(self.rotation[v])]
                u, v = v, w
                if (u, v) == start:
                    break
            faces.append(tuple(walk))
        if self.n == 1:
            faces = [(0,)]
        return tuple(faces)

    def _validate_euler(self) -> None:
        if self.n == 1:
            return
        e = self.edge_count()
        f = len(self._faces)
        if self.n - e + f != 2:
            raise PlaneGraphError(
                f"not a planar embedding: V-E+F = {self.n}-{e}+{f} != 2"
            )

    def _validate_outer(self) -> None:
        if self.n == 1:
            if tuple(self.outer) != (0,):
                raise PlaneGraphError("single vertex graph must have outer (0,)")
            return
        target = _canonical_face(tuple(self.outer))
        for face in self._faces:
            if _canonical_face(face) == target:
                return
        raise PlaneGraphError("outer walk is not a face of the embedding")

    # -- basic queries -----------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbours(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [
            (v, u) for v in self.vertices for u in self.rotation[v] if v < u
        ]

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.rotation) // 2

    def faces(self) -> tuple[tuple[int, ...], ...]:
        return self._faces

    def inner_faces(self) -> list[tuple[int, ...]]:
        target = _canonical_face(tuple(self.outer))
        return [f for f in self._faces if _canonical_face(f) != target]

    def boundary_vertices(self) -> frozenset[int]:
        return frozenset(self.outer)

    def interior_vertices(self) -> frozenset[int]:
        return frozenset(self.vertices) - frozenset(self.outer)

    def is_near_triangulated(self) -> bool:
        return all(len(f) == 3 for f in self.inner_faces())

    def mirror(self) -> "PlaneGraph":
        """Reflected embedding: rotations and outer walk reversed."""
        rot = tuple(tuple(reversed(nbrs)) for nbrs in self.rotation)
        outer = tuple(reversed(self.outer))
        return PlaneGraph(self.n, rot, outer)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> str:
        payload = {
            "vertices": list(self.vertices),
            "rotation": {str(v): list(self.rotation[v]) for v in self.vertices},
            "outer": list(self.outer),
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    @staticmethod
    def from_json(text: str) -> "PlaneGraph":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PlaneGraphError(f"invalid graph JSON: {exc}") from exc
        return plane_graph_from_payload(payload)

    def graph_hash(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()


def plane_graph_from_payload(payload: dict) -> PlaneGraph:
    if not isinstance(payload, dict):
        raise PlaneGraphError("graph payload must be an object")
    try:
        vertices = payload["vertices"]
        rotation = payload["rotation"]
        outer = payload["outer"]
    except (KeyError, TypeError) as exc:
        raise PlaneGraphError(f"graph payload missing field: {exc}") from exc
    n = len(vertices)
    if sorted(vertices) != list(range(n)):
        raise PlaneGraphError("vertex ids must be dense 0..n-1")
    rot = []
    for v in range(n):
        key = str(v)
        if key not in rotation:
            raise PlaneGraphError(f"rotation missing vertex {v}")
        rot.append(tuple(int(u) for u in rotation[key]))
    return PlaneGraph(n, tuple(rot), tuple(int(v) for v in outer))


def build_plane_graph(
    rotation: Sequence[Sequence[int]], outer: Sequence[int]
) -> PlaneGraph:
    return PlaneGraph(len(rotation), tuple(tuple(r) for r in rotation), tuple(outer))


# ---------------------------------------------------------------------------
# boundary structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryCycle:
    """The outer walk rotated to start at c1, with the three special
    positions.  Position based: vertices may repeat on the walk when cut
    vertices are present, so queries work with indices into `walk`."""

    walk: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.walk)

    @property
    def c1(self) -> int:
        return self.walk[0]

    @property
    def c2(self) -> int:
        return self.walk[1 % len(self.walk)]

    @property
    def cn(self) -> int:
        return self.walk[-1]

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.walk)

    def at(self, i: int) -> int:
        return self.walk[i % len(self.walk)]

    def segment(self, i: int, j: int) -> tuple[int, ...]:
        """Walk positions from i to j inclusive, moving clockwise."""
        k = len(self.walk)
        i %= k
        j %= k
        if i <= j:
            return self.walk[i : j + 1]
        return self.walk[i:] + self.walk[: j + 1]

    def positions_of(self, v: int) -> list[int]:
        return [i for i, u in enumerate(self.walk) if u == v]

    def consecutive(self, u: int, v: int) -> bool:
        """True if u,v appear in adjacent walk positions (either order)."""
        k = len(self.walk)
        for i in range(k):
            a, b = self.walk[i], self.walk[(i + 1) % k]
            if (a, b) in ((u, v), (v, u)):
                return True
        return False


def boundary_cycle(graph: PlaneGraph, c1: int) -> BoundaryCycle:
    walk = tuple(graph.outer)
    if c1 not in walk:
        raise PlaneGraphError(f"vertex {c1} is not on the boundary")
    i = walk.index(c1)
    return BoundaryCycle(walk[i:] + walk[:i])


def boundary_chords(graph: PlaneGraph, cycle: BoundaryCycle) -> list[tuple[int, int]]:
    """Edges joining boundary vertices that are nowhere walk-consecutive."""
    on_walk = cycle.vertex_set()
    chords = []
    for u, v in graph.edges():
        if u in on_walk and v in on_walk and not cycle.consecutive(u, v):
            chords.append((u, v))
    chords.sort()
    return chords


# ---------------------------------------------------------------------------
# cut vertices
# ---------------------------------------------------------------------------


def articulation_points(graph: PlaneGraph) -> list[int]:
    """Cut vertices via iterative lowpoint DFS."""
    n = graph.n
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    points: set[int] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        stack = [(root, iter(graph.rotation[root]))]
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        while stack:
            v, it = stack[-1]
            advanced = False
            for u in it:
                if disc[u] == -1:
                    parent[u] = v
                    if v == root:
                        root_children += 1
                    disc[u] = low[u] = timer
                    timer += 1
                    stack.append((u, iter(graph.rotation[u])))
                    advanced = True
                    break
                elif u != parent[v]:
                    low[v] = min(low[v], disc[u])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if p != root and low[v] >= disc[p]:
                        points.add(p)
        if root_children >= 2:
            points.add(root)
    return sorted(points)


def split_at_cut_vertex(
    graph: PlaneGraph, w: int
) -> list[frozenset[int]]:
    """Components of G - w, each returned together with w."""
    seen: set[int] = set()
    parts = []
    for start in graph.vertices:
        if start == w or start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            for u in graph.rotation[v]:
                if u != w and u not in seen:
                    seen.add(u)
                    comp.add(u)
                    stack.append(u)
        parts.append(frozenset(comp | {w}))
    return parts


def find_cut_vertex(
    graph: PlaneGraph, specials: Optional[tuple[int, int, int]] = None
) -> Optional[tuple[int, frozenset[int], frozenset[int]]]:
    """Pick a cut vertex w and a split (G1, G2) with V(G1) | V(G2) = V and
    intersection {w}.

    When all three specials fit on one side, w is chosen so that the
    special-free side G2 hangs off w and w keeps at least two neighbours in
    it; ties break on smallest w then smallest G2.  Returns None when the
    graph is 2-connected (or too small to have a cut vertex).
    """
    points = articulation_points(graph)
    if not points:
        return None
    special_set = set(specials) if specials else set()
    best = None
    for w in points:
        parts = split_at_cut_vertex(graph, w)
        for part in parts:
            if special_set and not special_set.issubset(
                (frozenset(graph.vertices) - part) | {w}
            ):
                continue
            rest = frozenset(
                v for v in graph.vertices if v not in part or v == w
            )
            if len(part) < 2 or len(rest) < 2:
                continue
            nbrs_in_part = sum(1 for u in graph.rotation[w] if u in part)
            if nbrs_in_part < 2:
                continue
            key = (w, len(part), sorted(part))
            if best is None or key < best[0]:
                best = (key, w, rest, part)
    if best is None:
        # no special-free side with the degree property; fall back to the
        # smallest cut vertex with an arbitrary deterministic split
        w = points[0]
        parts = split_at_cut_vertex(graph, w)
        parts.sort(key=lambda p: (len(p), sorted(p)))
        g2 = parts[0]
        g1 = frozenset(v for v in graph.vertices if v not in g2 or v == w)
        return w, g1, g2
    return best[1], best[2], best[3]


# ---------------------------------------------------------------------------
# induced subgraphs and cycle interiors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubgraphView:
    """An induced plane subgraph plus the id maps back to the host graph."""

    graph: PlaneGraph
    to_host: tuple[int, ...]
    from_host: dict[int, int]

    def host_vertices(self) -> frozenset[int]:
        return frozenset(self.to_host)


def induced_subgraph(
    graph: PlaneGraph, vertices: Iterable[int], outer_walk_host: Sequence[int]
) -> SubgraphView:
    """Induced subgraph with inherited rotations and the given outer walk
    (in host ids).  The walk must be a face of the induced embedding."""
    keep = sorted(set(vertices))
    from_host = {v: i for i, v in enumerate(keep)}
    rot = tuple(
        tuple(from_host[u] for u in graph.rotation[v] if u in from_host)
        for v in keep
    )
    outer = tuple(from_host[v] for v in outer_walk_host)
    sub = PlaneGraph(len(keep), rot, outer)
    return SubgraphView(sub, tuple(keep), from_host)


def _face_trace_from(graph: PlaneGraph, u: int, v: int) -> tuple[int, ...]:
    """The face containing directed edge (u, v)."""
    pos = {x: i for i, x in enumerate(graph.rotation[v])}
    walk = [u]
    a, b = u, v
    while True:
        walk.append(b)
        i = graph.rotation[b].index(a)
        c = graph.rotation[b][(i + 1) % len(graph.rotation[b])]
        a, b = b, c
        if (a, b) == (u, v):
            break
    return tuple(walk[:-1]) if walk[-1] == u else tuple(walk)


def cycle_sides(
    graph: PlaneGraph, cycle_vertices: Sequence[int]
) -> tuple[frozenset[int], frozenset[int]]:
    """Split V - cycle into (inside, outside) for a chordable cycle given as
    a cyclic vertex sequence whose consecutive pairs are edges.

    Faces are flooded on each side of the cycle; the side containing the
    outer face is the outside.
    """
    k = len(cycle_vertices)
    cyc_edges = set()
    for i in range(k):
        u, v = cycle_vertices[i], cycle_vertices[(i + 1) % k]
        if not graph.adjacent(u, v):
            raise PlaneGraphError(f"cycle edge {u}-{v} missing")
        cyc_edges.add((u, v))
        cyc_edges.add((v, u))

    faces = graph.faces()
    # map each directed edge to its face index
    edge_face: dict[tuple[int, int], int] = {}
    for fi, face in enumerate(faces):
        m = len(face)
        for i in range(m):
            edge_face[(face[i], face[(i + 1) % m])] = fi
    outer_idx = None
    target = _canonical_face(tuple(graph.outer))
    for fi, face in enumerate(faces):
        if _canonical_face(face) == target:
            outer_idx = fi
            break

    def flood(fi0: int) -> set[int]:
        seen = {fi0}
        stack = [fi0]
        while stack:
            fi = stack.pop()
            face = faces[fi]
            m = len(face)
            for i in range(m):
                u, v = face[i], face[(i + 1) % m]
                if (u, v) in cyc_edges:
                    continue
                nxt = edge_face[(v, u)]
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return seen

    u0, v0 = cycle_vertices[0], cycle_vertices[1 % k]
    side_a = flood(edge_face[(u0, v0)])
    side_b = flood(edge_face[(v0, u0)])
    cyc_set = set(cycle_vertices)

    def verts(face_ids: set[int]) -> frozenset[int]:
        out: set[int] = set()
        for fi in face_ids:
            out.update(faces[fi])
        return frozenset(out - cyc_set)

    if outer_idx in side_a and outer_idx in side_b:
        raise PlaneGraphError("cycle does not separate the plane")
    if outer_idx in side_a:
        return verts(side_b), verts(side_a)
    return verts(side_a), verts(side_b)


def interior_subgraph(
    graph: PlaneGraph, cycle_vertices: Sequence[int], closed: bool = True
) -> SubgraphView:
    """int[C'] (closed=True) or int(C') of a cycle, as a plane subgraph.

    The subgraph's outer walk is the cycle itself, oriented so that the
    interior stays inside.
    """
    inside, _ = cycle_sides(graph, cycle_vertices)
    if closed:
        keep = set(cycle_vertices) | set(inside)
        # orient the outer walk opposite to the interior-side trace
        k = len(cycle_vertices)
        seq = tuple(cycle_vertices)
        # determine orientation: the face-flood on the (u0,v0) side is the
        # interior iff inside vertices sit there; outer walk is the reverse
        trace = _face_trace_from(graph, seq[0], seq[1 % k])
        inner_side_hits = set(trace) - set(seq)
        if inside and inner_side_hits <= inside and inner_side_hits:
            outer_walk = (seq[0],) + tuple(reversed(seq[1:]))
        elif not inside:
            # empty interior: pick the orientation that is a face
            cands = [seq, (seq[0],) + tuple(reversed(seq[1:]))]
            outer_walk = None
            for cand in cands:
                if _canonical_face(cand) in {
                    _canonical_face(f) for f in graph.faces()
                }:
                    outer_walk = cand
                    break
            if outer_walk is None:
                outer_walk = seq
        else:
            outer_walk = seq
        view = induced_subgraph(graph, keep, outer_walk)
        return view
    if not inside:
        raise PlaneGraphError("open interior is empty")
    sub_vertices = set(inside)
    # outer walk of the open interior must be recomputed; only used for
    # diagnostics, so trace it from any boundary-most vertex
    raise PlaneGraphError("open interiors are handled via closed views")


# ---------------------------------------------------------------------------
# separating triangles
# ---------------------------------------------------------------------------


def triangles(graph: PlaneGraph) -> list[tuple[int, int, int]]:
    out = []
    for u in graph.vertices:
        for v in graph.rotation[u]:
            if v <= u:
                continue
            for w in graph.rotation[u]:
                if w <= v:
                    continue
                if graph.adjacent(v, w):
                    out.append((u, v, w))
    return sorted(out)


def find_separating_triangle(
    graph: PlaneGraph,
) -> Optional[tuple[int, int, int]]:
    """Smallest-lex triangle with vertices strictly inside and outside."""
    for tri in triangles(graph):
        inside, outside = cycle_sides(graph, tri)
        if inside and outside:
            return tri
    return None


# ---------------------------------------------------------------------------
# chord insertion / near-triangulation
# ---------------------------------------------------------------------------


def add_chord(graph: PlaneGraph, face: Sequence[int], u: int, w: int) -> PlaneGraph:
    """Insert edge u-w inside the given face (a traced face of graph)."""
    if graph.adjacent(u, w):
        raise PlaneGraphError(f"edge {u}-{w} already present")
    face = tuple(face)
    m = len(face)
    pos_u = [i for i in range(m) if face[i] == u]
    pos_w = [i for i in range(m) if face[i] == w]
    if not pos_u or not pos_w:
        raise PlaneGraphError("chord endpoints must lie on the face")

    def insert(rotation: list[list[int]], a: int, b: int, before: int) -> None:
        # the face contains directed (prev, a); the new edge a-b goes right
        # after prev in clockwise order at a
        i = rotation[a].index(before)
        rotation[a].insert(i + 1, b)

    rot = [list(r) for r in graph.rotation]
    iu = pos_u[0]
    prev_u = face[(iu - 1) % m]
    # choose the occurrence of w not adjacent to this occurrence of u on the
    # face walk
    iw = None
    for j in pos_w:
        if (j - iu) % m not in (0, 1, m - 1):
            iw = j
            break
    if iw is None:
        raise PlaneGraphError("chord endpoints are face-consecutive")
    prev_w = face[(iw - 1) % m]
    insert(rot, u, w, prev_u)
    insert(rot, w, u, prev_w)
    return PlaneGraph(graph.n, tuple(tuple(r) for r in rot), graph.outer)


def _creates_forbidden_common_neighbour(
    graph: PlaneGraph, cycle: BoundaryCycle, u: int, w: int
) -> bool:
    """Would edge u-w give c1 and cn a common neighbour on C - {c2}?"""
    c1, c2, cn = cycle.c1, cycle.c2, cycle.cn
    on_walk = cycle.vertex_set()

    def common_after(x: int, y: int) -> bool:
        # adding x-y, does y become a common neighbour of c1 and cn?
        if y not in on_walk or y == c2:
            return False
        adj_c1 = graph.adjacent(y, c1) or (x == c1)
        adj_cn = graph.adjacent(y, cn) or (x == cn)
        return adj_c1 and adj_cn and y not in (c1, cn)

    if u in (c1, cn) and common_after(u, w):
        return True
    if w in (c1, cn) and common_after(w, u):
        return True
    return False


def find_admissible_chord(
    graph: PlaneGraph, cycle: BoundaryCycle
) -> Optional[tuple[tuple[int, ...], int, int]]:
    """First admissible chord of the first non-triangular inner face.

    Admissible: not an existing edge, not {cn, c2}, and it must not create a
    common neighbour of c1 and cn on C other than c2.  Returns (face, u, w)
    or None when already near-triangulated.
    """
    faces = sorted(
        (f for f in graph.inner_faces() if len(f) > 3),
        key=lambda f: (len(f), _canonical_face(f)),
    )
    if not faces:
        return None
    forbidden_pair = {cycle.cn, cycle.c2}
    for face in faces:
        m = len(face)
        pairs = []
        for i in range(m):
            for j in range(i + 2, m):
                if i == 0 and j == m - 1:
                    continue
                pairs.append((face[i], face[j]))
        for u, w in sorted(set(tuple(sorted(p)) for p in pairs)):
            if u == w or graph.adjacent(u, w):
                continue
            if {u, w} == forbidden_pair:
                continue
            if _creates_forbidden_common_neighbour(graph, cycle, u, w):
                continue
            return face, u, w
        raise PlaneGraphError(
            f"face {face} admits no chord under the (F2)-protytecting rules"
        )
    return None


def near_triangulate(graph: PlaneGraph, cycle: BoundaryCycle) -> PlaneGraph:
    """Insert admissible chords until every inner face is a triangle."""
    g = graph
    while True:
        found = find_admissible_chord(g, cycle)
        if found is None:
            return g
        face, u, w = found
        g = add_chord(g, face, u, w)


# ---------------------------------------------------------------------------
# trestles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Trestle:
    """A maximal trestle of a chordless near-triangulated boundary.

    p_marks = (p1..p_{m+1}) are boundary vertices, q_marks = (q0..qm) lie on
    the boundary of G-P, and consecutive marks span fans:
    (Q[q_{i-1},q_i]; p_i) and (P[p_i,p_{i+1}]; q_i).
    """

    p_path: tuple[int, ...]
    p_marks: tuple[int, ...]
    q_path: tuple[int, ...]
    q_marks: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.q_marks) - 1

    def p_segment(self, i: int) -> tuple[int, ...]:
        """P[p_i, p_{i+1}] as vertices (1-based i)."""
        a = self.p_path.index(self.p_marks[i - 1])
        b = self.p_path.index(self.p_marks[i])
        return self.p_path[a : b + 1]

    def q_segment(self, i: int) -> tuple[int, ...]:
        """Q[q_{i-1}, q_i] as vertices (1-based i)."""
        a = self.q_path.index(self.q_marks[i - 1])
        b = self.q_path.index(self.q_marks[i])
        return self.q_path[a : b + 1]

    def interior_of_p_segment(self, i: int) -> tuple[int, ...]:
        seg = self.p_segment(i)
        return seg[1:-1]


class TrestleError(PlaneGraphError):
    pass


def build_trestle(graph: PlaneGraph, cycle: BoundaryCycle) -> Trestle:
    """Greedy maximal trestle of a 2-connected near-triangulated plane graph
    whose boundary cycle is chordless and longer than a triangle.

    Fans alternate: the Q-fan under apex p_i collects the interior
    neighbours of p_i clockwise between the previous q tip and the next
    boundary vertex, then the P-fan under the new q tip absorbs boundary
    vertices while they stay adjacent to it.  A Q tip may only become an
    interior vertex of Q if all its boundary neighbours are already in P
    (or are c2), which keeps interior Q vertices clear of C - P.
    """
    walk = cycle.walk
    n = len(walk)
    if n < 4:
        raise TrestleError("trestle needs a boundary longer than a triangle")
    if len(set(walk)) != n:
        raise TrestleError("trestle needs a simple boundary cycle")
    if not graph.is_near_triangulated():
        raise TrestleError("trestle needs a near-triangulated graph")
    if boundary_chords(graph, cycle):
        raise TrestleError("trestle needs a chordless boundary")

    c1, c2 = cycle.c1, cycle.c2
    walk_index = {v: i for i, v in enumerate(walk)}
    boundary = set(walk)

    def succ_on_c(v: int) -> Optional[int]:
        i = walk_index[v]
        return walk[(i + 1) % n] if v != walk[-1] else None

    def interior_arc(p: int, frm: int) -> list[int]:
        """Neighbours of boundary vertex p strictly between frm and p's
        boundary successor, walking counterclockwise from frm."""
        s = succ_on_c(p)
        rot = graph.rotation[p]
        i = rot.index(frm)
        arc = []
        k = len(rot)
        j = (i - 1) % k
        while True:
            u = rot[j]
            if u == s or u == frm:
                break
            arc.append(u)
            j = (j - 1) % k
        return arc

    p_path = [walk[2]]
    p_marks = [walk[2]]
    q_path = [c2]
    q_marks = [c2]

    def may_interiorize(u: int) -> bool:
        if u == c2:
            return False
        cnbrs = graph.neighbours(u) & boundary
        return cnbrs <= (set(p_path) | {c2})

    while True:
        # Q-fan under apex p_i = p_marks[-1]
        apex = p_marks[-1]
        tip = q_marks[-1]
        arc = interior_arc(apex, tip)
        extended = False
        for u in arc:
            if u in q_path:
                break
            # extending past the current tip turns it interior
            if q_path[-1] != q_marks[-1] or len(q_path) == 1 or True:
                pass
            if q_path[-1] != c2 and not may_interiorize(q_path[-1]) and q_path[-1] != tip:
                break
            if q_path[-1] != c2 and q_path[-1] == tip:
                # tip becomes interior once u is appended
                if not may_interiorize(tip) and len(q_path) > 1:
                    break
            if len(q_path) >= 1 and q_path[-1] == tip and tip != c2:
                if not may_interiorize(tip):
                    break
            q_path.append(u)
            extended = True
        if extended:
            q_marks.append(q_path[-1])
        else:
            break
        # P-fan under the new q tip
        qa = q_marks[-1]
        moved = False
        while True:
            s = succ_on_c(p_path[-1])
            if s is None or s in (c1, c2):
                break
            if not graph.adjacent(s, qa):
                break
            p_path.append(s)
            moved = True
        if moved:
            p_marks.append(p_path[-1])
        else:
            # last fan is the single edge (P[p,p]; q): duplicate mark
            p_marks.append(p_path[-1])
            break
        if p_path[-1] == cycle.cn:
            break

    if len(q_marks) < 2:
        raise TrestleError("could not start a trestle fan")
    trestle = Trestle(
        tuple(p_path), tuple(p_marks), tuple(q_path), tuple(q_marks)
    )
    validate_trestle(graph, cycle, trestle)
    return trestle


def validate_trestle(
    graph: PlaneGraph, cycle: BoundaryCycle, t: Trestle
) -> None:
    walk = cycle.walk
    if t.p_marks[0] != walk[2]:
        raise TrestleError("p1 must be c3")
    if t.q_marks[0] != cycle.c2:
        raise TrestleError("q0 must be c2")
    boundary = set(walk)
    for v in t.p_path:
        if v not in boundary or v in (cycle.c1, cycle.c2):
            raise TrestleError("P must lie on C - {c1, c2}")
    m = t.m
    if len(t.p_marks) != m + 1:
        raise TrestleError("mark counts disagree")
    # fans: Q[q_{i-1}, q_i] joined to p_i, P[p_i, p_{i+1}] joined to q_i
    for i in range(1, m + 1):
        for v in t.q_segment(i):
            if not graph.adjacent(v, t.p_marks[i - 1]):
                raise TrestleError(f"fan {i}: {v} not adjacent to p_{i}")
        if i < m + 1:
            seg = t.p_segment(i) if i < len(t.p_marks) else ()
            for v in seg:
                if not graph.adjacent(v, t.q_marks[i]):
                    raise TrestleError(f"fan {i}: {v} not adjacent to q_{i}")
    # interior Q vertices keep clear of C - P
    p_set = set(t.p_path)
    for v in t.q_path[1:-1]:
        bad = (graph.neighbours(v) & boundary) - p_set - {cycle.c2}
        if bad:
            raise TrestleError(
                f"interior Q vertex {v} touches C - P at {sorted(bad)}"
            )
