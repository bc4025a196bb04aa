"""Finite group actions on complexes and transfer-based quotient homology.

Quotient homology over Q is computed by isotypic projectors at chain level:
for a character chi of the acting group, the projected subcomplex
span{ sum_g chi(g) g . sigma } has the chi-isotypic homology of the total
complex.  No quotient cell structures are ever formed.
"""

from __future__ import annotations

from .chain import ChainComplex
from .linalg import RationalMatrix


class CharacterNotHomomorphism(ValueError):
    """The proposed group character is not multiplicative."""


def _perm_sign(seq):
    """Sign of the permutation sorting ``seq`` (entries distinct)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class GroupAction:
    """A finite group acting simplicially, given by generator vertex maps."""

    def __init__(self, complex_, generators):
        self.complex = complex_
        n = len(complex_.vertices)
        index = complex_.vertex_index
        gens = []
        for g in generators:
            perm = [None] * n
            for src, dst in g.items():
                perm[index[src]] = index[dst]
            if None in perm or len(set(perm)) != n:
                raise ValueError("generator is not a vertex permutation")
            gens.append(tuple(perm))
        self.generators = gens
        self.elements = self._close(gens)
        self._check_preserves()
        self._cell_maps = {}

    @staticmethod
    def _close(gens, cap=20000):
        identity = tuple(range(len(gens[0]))) if gens else ()
        elements = {identity}
        frontier = [identity]
        while frontier:
            new = []
            for a in frontier:
                for g in gens:
                    c = tuple(g[x] for x in a)
                    if c not in elements:
                        elements.add(c)
                        new.append(c)
                        if len(elements) > cap:
                            raise ValueError("group closure exceeded cap")
            frontier = new
        return sorted(elements)

    def _check_preserves(self):
        sets = self.complex._sets
        for g in self.generators:
            for d, group in self.complex.simplices.items():
                for s in group:
                    if tuple(sorted(g[v] for v in s)) not in sets[d]:
                        raise ValueError("generator does not preserve the simplex set")

    def order(self):
        return len(self.elements)

    def identity(self):
        return tuple(range(len(self.complex.vertices)))

    def cell_map(self, g, d):
        """For each d-cell index: (image cell index, orientation sign)."""
        key = (g, d)
        if key not in self._cell_maps:
            group = self.complex.simplices.get(d, ())
            pos = {s: k for k, s in enumerate(group)}
            table = []
            for s in group:
                img = tuple(g[v] for v in s)
                table.append((pos[tuple(sorted(img))], _perm_sign(img)))
            self._cell_maps[key] = table
        return self._cell_maps[key]

    def characters(self):
        """All homomorphisms G -> {+1, -1}, as dicts keyed by element."""
        out = []
        seen = set()
        gens = self.generators
        for bits in range(1 << len(gens)):
            values = [(-1) ** (bits >> k & 1) for k in range(len(gens))]
            chi = {self.identity(): 1}
            frontier = [self.identity()]
            ok = True
            while frontier and ok:
                new = []
                for a in frontier:
                    for g, val in zip(gens, values):
                        c = tuple(g[x] for x in a)
                        want = chi[a] * val
                        if c in chi:
                            if chi[c] != want:
                                ok = False
                                break
                        else:
                            chi[c] = want
                            new.append(c)
                    if not ok:
                        break
                frontier = new
            if ok:
                frozen = tuple(chi[e] for e in self.elements)
                if frozen not in seen:
                    seen.add(frozen)
                    out.append(dict(zip(self.elements, frozen)))
        return out

    def trivial_character(self):
        return {e: 1 for e in self.elements}

    def check_character(self, chi):
        values = {}
        for e in self.elements:
            try:
                v = chi(e) if callable(chi) else chi[e]
            except KeyError:
                raise CharacterNotHomomorphism("character undefined on a group element")
            if v not in (1, -1):
                raise CharacterNotHomomorphism("character values must be +1/-1")
            values[e] = v
        for a in self.elements:
            for g in self.generators:
                c = tuple(g[x] for x in a)
                if values[c] != values[a] * values[g]:
                    raise CharacterNotHomomorphism("character is not multiplicative")
        return values


def transfer_chain_complex(chain, elements, signed_act, chi):
    """Isotypic subcomplex of ``chain`` for the character ``chi``.

    signed_act(g, d, j) -> (j', sign) must be a chain-level action commuting
    with the boundary of ``chain``.  Returns a ChainComplex whose homology is
    the chi-isotypic part of H(chain).
    """
    reps = {}       # d -> list of surviving representative indices
    project = {}    # d -> {j: dict index -> coeff} for representatives
    factor = {}     # d -> {j: (rep, lam)} with P(e_j) = lam * P(e_rep)

    for d in chain.degrees:
        n = chain.size(d)
        seen = [False] * n
        rep_list = []
        proj = {}
        fac = {}
        for j in range(n):
            if seen[j]:
                continue
            vec = {}
            orbit = {}
            for g in elements:
                j2, sign = signed_act(g, d, j)
                c = chi[g] * sign
                vec[j2] = vec.get(j2, 0) + c
                if j2 not in orbit:
                    orbit[j2] = c
            for j2 in orbit:
                seen[j2] = True
            vec = {k: v for k, v in vec.items() if v}
            if vec:
                rep_list.append(j)
                proj[j] = vec
                # P(e_{j2}) = chi(g)*sign(g) * P(e_j) for any g carrying j to j2;
                # dropped orbits (P = 0) contribute nothing and are omitted.
                for j2, c in orbit.items():
                    fac[j2] = (j, c)
        reps[d] = rep_list
        project[d] = proj
        factor[d] = fac

    cells = {}
    boundary = {}
    for d in chain.degrees:
        cells[d] = [chain.cells[d][j] for j in reps[d]]
    for d in chain.degrees:
        if d - 1 not in chain.cells:
            boundary[d] = RationalMatrix.zero(0, len(cells[d]))
            continue
        rows = {r: k for k, r in enumerate(reps.get(d - 1, ()))}
        cols = chain.boundary[d].column_dicts()
        entries = {}
        fac = factor.get(d - 1, {})
        for cj, j in enumerate(reps[d]):
            acc = {}
            for i, v in cols.get(j, {}).items():
                hit = fac.get(i)
                if hit is None:
                    continue
                r, lam = hit
                acc[r] = acc.get(r, 0) + v * lam
            for r, v in acc.items():
                if v:
                    entries[(rows[r], cj)] = v
        boundary[d] = RationalMatrix(len(cells.get(d - 1, ())), len(cells[d]), entries)
    return ChainComplex(cells, boundary, check=True)


def isotypic_complex(action, character):
    values = action.check_character(character)
    chain = action.complex.to_chain_complex()

    def act(g, d, j):
        return action.cell_map(g, d)[j]

    return transfer_chain_complex(chain, action.elements, act, values)


def isotypic_betti(action, character, d):
    """Multiplicity of ``character`` in H_d of the acted-on complex."""
    return isotypic_complex(action, character).betti().get(d, 0)


def isotypic_betti_table(action, character):
    return isotypic_complex(action, character).betti()


def simplicial_chain_map(source, target, vertex_map):
    """ChainMap induced by a simplicial vertex map (degenerate images die)."""
    from .chain import ChainMap
    components = {}
    t_index = {d: {s: k for k, s in enumerate(group)}
               for d, group in target.simplices.items()}
    for d, group in source.simplices.items():
        entries = {}
        m = len(target.simplices.get(d, ()))
        for j, s in enumerate(group):
            img = tuple(target.vertex_index[vertex_map[source.vertices[v]]] for v in s)
            if len(set(img)) != len(img):
                continue
            key = tuple(sorted(img))
            if key not in t_index.get(d, {}):
                raise ValueError("vertex map is not simplicial at %r" % (s,))
            entries[(t_index[d][key], j)] = _perm_sign(img)
        components[d] = RationalMatrix(m, len(group), entries)
    return ChainMap(source.to_chain_complex(), target.to_chain_complex(), components)
