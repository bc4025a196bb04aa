"""Simplicial complexes and the constructions built on them.

Vertices carry an explicit total order (the listing order); simplices are
stored as sorted index tuples and every boundary matrix orients simplices by
that global order.  All constructions (joins, cones, products, subdivisions,
deleted products) produce deterministic vertex orders, so downstream exact
computations are reproducible.
"""

from __future__ import annotations

from .chain import ChainComplex
from .linalg import RationalMatrix


class SimplicialComplex:

    def __init__(self, vertices, simplices, check=True):
        """vertices: ordered labels; simplices: iterable of index tuples.

        The simplex set must be closed under taking faces (checked).
        """
        self.vertices = list(vertices)
        self.vertex_index = {v: k for k, v in enumerate(self.vertices)}
        if len(self.vertex_index) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        by_dim = {}
        for s in simplices:
            t = tuple(sorted(s))
            if len(set(t)) != len(t):
                raise ValueError("repeated vertex in simplex %r" % (s,))
            by_dim.setdefault(len(t) - 1, set()).add(t)
        self.simplices = {d: sorted(group) for d, group in sorted(by_dim.items())}
        self._sets = {d: set(group) for d, group in self.simplices.items()}
        if check:
            self._check_closure()

    @classmethod
    def from_simplices(cls, simplices, vertices=None):
        """Build from label simplices, closing under faces."""
        simplices = [tuple(s) for s in simplices]
        if vertices is None:
            seen = {v for s in simplices for v in s}
            try:
                vertices = sorted(seen)
            except TypeError:
                vertices = []
                marked = set()
                for s in simplices:
                    for v in s:
                        if v not in marked:
                            marked.add(v)
                            vertices.append(v)
        index = {v: k for k, v in enumerate(vertices)}
        closed = set()
        for s in simplices:
            idx = tuple(sorted(index[v] for v in s))
            for mask in range(1, 1 << len(idx)):
                face = tuple(idx[k] for k in range(len(idx)) if mask >> k & 1)
                closed.add(face)
        return cls(vertices, closed, check=False)

    def _check_closure(self):
        for d, group in self.simplices.items():
            if d == 0:
                for (v,) in group:
                    if not 0 <= v < len(self.vertices):
                        raise ValueError("vertex index out of range")
                continue
            lower = self._sets.get(d - 1, set())
            for s in group:
                for k in range(len(s)):
                    if s[:k] + s[k + 1:] not in lower:
                        raise ValueError("complex not closed under faces at %r" % (s,))

    # -- basic queries -------------------------------------------------------

    def dim(self):
        return max(self.simplices) if self.simplices else -1

    def f_vector(self):
        return tuple(len(self.simplices.get(d, ())) for d in range(self.dim() + 1))

    def label(self, simplex):
        return tuple(self.vertices[k] for k in simplex)

    def simplex_labels(self, d):
        return [self.label(s) for s in self.simplices.get(d, ())]

    def has(self, label_simplex):
        idx = tuple(sorted(self.vertex_index[v] for v in label_simplex))
        return idx in self._sets.get(len(idx) - 1, set())

    def facets(self):
        """Maximal simplices (as index tuples)."""
        covered = set()
        for d, group in self.simplices.items():
            if d == 0:
                continue
            for s in group:
                for k in range(len(s)):
                    covered.add(s[:k] + s[k + 1:])
        return [s for d, group in self.simplices.items() for s in group
                if s not in covered]

    def is_pure(self):
        top = self.dim()
        return all(len(s) - 1 == top for s in self.facets())

    # -- chain complexes -------------------------------------------------------

    def to_chain_complex(self, reduced=False):
        cells = {}
        boundary = {}
        index = {}
        for d, group in self.simplices.items():
            cells[d] = [self.label(s) for s in group]
            index[d] = {s: k for k, s in enumerate(group)}
        for d, group in self.simplices.items():
            if d == 0:
                continue
            entries = {}
            low = index[d - 1]
            for j, s in enumerate(group):
                for k in range(len(s)):
                    face = s[:k] + s[k + 1:]
                    entries[(low[face], j)] = -1 if k % 2 else 1
            boundary[d] = RationalMatrix(len(index[d - 1]), len(group), entries)
        if reduced and 0 in cells:
            cells[-1] = [()]
            boundary[0] = RationalMatrix(1, len(cells[0]),
                                         {(0, j): 1 for j in range(len(cells[0]))})
        return ChainComplex(cells, boundary, check=False)

    def betti(self):
        return self.to_chain_complex().betti()

    def reduced_betti(self):
        table = self.to_chain_complex(reduced=True).betti()
        return {d: v for d, v in table.items() if d >= 0}

    def euler_characteristic(self):
        return self.to_chain_complex().euler_characteristic()

    def __repr__(self):
        return "SimplicialComplex(f=%r)" % (self.f_vector(),)


# ---------------------------------------------------------------------------
# standard models

def polygon(n):
    """Cycle with n vertices: the basic circle model (n >= 3)."""
    if n < 3:
        raise ValueError("polygon needs at least 3 vertices")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return SimplicialComplex.from_simplices(edges, vertices=list(range(n)))


def path_complex(n):
    """A path with n edges."""
    return SimplicialComplex.from_simplices([(i, i + 1) for i in range(n)],
                                            vertices=list(range(n + 1)))


def full_simplex(k):
    """The full k-simplex on vertices 0..k."""
    return SimplicialComplex.from_simplices([tuple(range(k + 1))])


def simplex_boundary(k):
    """Boundary of the k-simplex: a (k-1)-sphere."""
    verts = tuple(range(k + 1))
    faces = [verts[:i] + verts[i + 1:] for i in range(k + 1)]
    return SimplicialComplex.from_simplices(faces, vertices=list(verts))


def sphere_points():
    """Two points: the 0-sphere."""
    return SimplicialComplex.from_simplices([(0,), (1,)], vertices=[0, 1])


def octahedron():
    faces = []
    for x in (1, 2):
        for y in (3, 4):
            for z in (5, 6):
                faces.append((x, y, z))
    return SimplicialComplex.from_simplices(faces, vertices=[1, 2, 3, 4, 5, 6])


def projective_plane():
    """The 6-vertex triangulation of the real projective plane."""
    faces = [(1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 6), (1, 4, 5),
             (2, 3, 4), (2, 3, 5), (2, 4, 6), (3, 5, 6), (4, 5, 6)]
    return SimplicialComplex.from_simplices(faces, vertices=[1, 2, 3, 4, 5, 6])


def torus():
    """The 7-vertex torus."""
    faces = []
    for i in range(7):
        faces.append((i, (i + 1) % 7, (i + 3) % 7))
        faces.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex.from_simplices(faces, vertices=list(range(7)))


def klein_bottle():
    """A 9-vertex Klein bottle from a 3x3 grid with a glide identification."""
    def v(i, j):
        i %= 3
        if j % 3 == 0 and j != 0:
            return ((3 - i) % 3, 0)
        return (i, j % 3)

    faces = []
    for i in range(3):
        for j in range(3):
            c00, c10 = v(i, j), v(i + 1, j)
            c01, c11 = v(i, j + 1), v(i + 1, j + 1)
            faces.append((c00, c10, c11))
            faces.append((c00, c01, c11))
    return SimplicialComplex.from_simplices(faces)


# ---------------------------------------------------------------------------
# cones, suspensions, joins

def cone(K, apex="apex"):
    """Cone over K; the apex label must be fresh."""
    if apex in K.vertex_index:
        apex = (apex, len(K.vertices))
    vertices = list(K.vertices) + [apex]
    simplices = [(apex,)]
    for d, group in K.simplices.items():
        for s in group:
            labeled = K.label(s)
            simplices.append(labeled)
            simplices.append(labeled + (apex,))
    return SimplicialComplex.from_simplices(simplices, vertices=vertices)


def suspension(K):
    vertices = list(K.vertices) + [("pole", 0), ("pole", 1)]
    simplices = [(("pole", 0),), (("pole", 1),)]
    for d, group in K.simplices.items():
        for s in group:
            labeled = K.label(s)
            simplices.append(labeled)
            simplices.append(labeled + (("pole", 0),))
            simplices.append(labeled + (("pole", 1),))
    return SimplicialComplex.from_simplices(simplices, vertices=vertices)


def join(K, L):
    """Join of two complexes; vertices are relabeled on any collision."""
    if set(K.vertices) & set(L.vertices):
        return join_many([K, L])
    vertices = list(K.vertices) + list(L.vertices)
    simplices = []
    k_faces = [K.label(s) for group in K.simplices.values() for s in group]
    l_faces = [L.label(s) for group in L.simplices.values() for s in group]
    simplices.extend(k_faces)
    simplices.extend(l_faces)
    for a in k_faces:
        for b in l_faces:
            simplices.append(a + b)
    return SimplicialComplex.from_simplices(simplices, vertices=vertices)


def join_many(factors):
    """Iterated join; factor k's vertex v becomes (k, v)."""
    vertices = [(k, v) for k, f in enumerate(factors) for v in f.vertices]
    tagged = []
    for k, f in enumerate(factors):
        faces = [tuple((k, x) for x in f.label(s))
                 for group in f.simplices.values() for s in group]
        tagged.append(faces)
    simplices = [()]
    for faces in tagged:
        simplices = [s + t for s in simplices for t in [()] + faces]
    simplices = [s for s in simplices if s]
    return SimplicialComplex.from_simplices(simplices, vertices=vertices)


# ---------------------------------------------------------------------------
# barycentric subdivision

def barycentric_subdivision(K):
    """Order complex of the face poset: vertex labels are simplex labels."""
    vertices = [K.label(s) for d in sorted(K.simplices) for s in K.simplices[d]]
    chains = []

    faces_of = {}
    for d, group in K.simplices.items():
        for s in group:
            faces_of[s] = [s[:k] + s[k + 1:] for k in range(len(s))] if d else []

    def extend(chain, bottom):
        chains.append(chain)
        for f in faces_of[bottom]:
            extend((K.label(f),) + chain, f)

    for d, group in K.simplices.items():
        for s in group:
            extend((K.label(s),), s)
    return SimplicialComplex.from_simplices(chains, vertices=vertices)


def face_poset(K):
    """The face poset of K, ranked by dimension + 1 (for the poset module)."""
    from .poset import FinitePoset
    elements = [K.label(s) for d in sorted(K.simplices) for s in K.simplices[d]]
    covers = []
    for d, group in K.simplices.items():
        if d == 0:
            continue
        for s in group:
            for k in range(len(s)):
                covers.append((K.label(s[:k] + s[k + 1:]), K.label(s)))
    ranks = {K.label(s): d + 1 for d, group in K.simplices.items() for s in group}
    return FinitePoset(elements, covers, ranks)


# ---------------------------------------------------------------------------
# products and deleted products

def _grid_paths(p, q):
    """Monotone lattice paths (0,0) -> (p,q), steps (1,0)/(0,1)/(1,1).

    These index the simplices of the product triangulation whose support is
    the full pair of faces.
    """
    out = []

    def rec(i, j, path):
        if i == p and j == q:
            out.append(tuple(path))
            return
        if i < p:
            path.append((i + 1, j))
            rec(i + 1, j, path)
            path.pop()
        if j < q:
            path.append((i, j + 1))
            rec(i, j + 1, path)
            path.pop()
        if i < p and j < q:
            path.append((i + 1, j + 1))
            rec(i + 1, j + 1, path)
            path.pop()

    rec(0, 0, [(0, 0)])
    return out


_GRID_CACHE = {}


def grid_paths(p, q):
    key = (p, q)
    if key not in _GRID_CACHE:
        _GRID_CACHE[key] = _grid_paths(p, q)
    return _GRID_CACHE[key]


def _pair_simplices(K, L, keep):
    """Simplices of the staircase triangulation over all face pairs passing
    ``keep(sigma_labels, tau_labels)``; vertex labels are (a, b) pairs."""
    simplices = []
    k_faces = [K.label(s) for d in sorted(K.simplices) for s in K.simplices[d]]
    l_faces = [L.label(s) for d in sorted(L.simplices) for s in L.simplices[d]]
    for a in k_faces:
        for b in l_faces:
            if not keep(a, b):
                continue
            for path in grid_paths(len(a) - 1, len(b) - 1):
                simplices.append(tuple((a[i], b[j]) for i, j in path))
    return simplices


def product_triangulation(K, L):
    """Staircase triangulation of |K| x |L| on the lexicographic vertex order."""
    vertices = [(a, b) for a in K.vertices for b in L.vertices]
    index = {v: k for k, v in enumerate(vertices)}
    simplices = _pair_simplices(K, L, lambda a, b: True)
    return SimplicialComplex(vertices,
                             [tuple(sorted(index[v] for v in s)) for s in simplices],
                             check=False)


class DeletedProduct:
    """Two-point configuration model: ordered pairs with disjoint carriers.

    complex      -- the triangulated deleted product
    swap         -- the factor-exchange action (a GroupAction)
    diagonal     -- the diagonal copy of the base inside the full product
    base         -- the input complex
    coordinates  -- vertex label -> (a, b) in the base
    """

    def __init__(self, complex_, swap, diagonal, base):
        self.complex = complex_
        self.swap = swap
        self.diagonal = diagonal
        self.base = base
        self.coordinates = {v: v for v in complex_.vertices}

    def betti(self):
        return self.complex.betti()


def deleted_product(K):
    from .action import GroupAction
    vertices = [(a, b) for a in K.vertices for b in K.vertices if a != b]

    disjoint = lambda a, b: not (set(a) & set(b))
    simplices = _pair_simplices(K, K, disjoint)
    vset = set(vertices)
    index = {v: k for k, v in enumerate(vertices)}
    dp = SimplicialComplex(vertices,
                           [tuple(sorted(index[v] for v in s)) for s in simplices],
                           check=False)

    swap_map = {(a, b): (b, a) for (a, b) in vertices}
    swap = GroupAction(dp, [swap_map])

    diag_vertices = [(a, a) for a in K.vertices]
    diag_simplices = []
    for d in sorted(K.simplices):
        for s in K.simplices[d]:
            labeled = K.label(s)
            diag_simplices.append(tuple((v, v) for v in labeled))
    diag_index = {v: k for k, v in enumerate(diag_vertices)}
    diagonal = SimplicialComplex(diag_vertices,
                                 [tuple(sorted(diag_index[v] for v in s))
                                  for s in diag_simplices],
                                 check=False)
    return DeletedProduct(dp, swap, diagonal, K)
