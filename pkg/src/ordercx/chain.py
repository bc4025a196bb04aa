"""Chain complexes over the rationals: homology, pairs, induced maps.

A complex carries an explicit finite degree range (degree -1 is allowed, for
augmented complexes), ordered cell labels per degree, and sparse boundary
matrices.  d(d(x)) = 0 is verified at construction time, always.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .linalg import (RationalMatrix, kernel_basis, rank, solve,
                     _echelon_with_memory, in_span)


class NotASubcomplex(ValueError):
    """The claimed subcomplex is not closed under the boundary."""


class NotChainMap(ValueError):
    """The map components do not commute with the boundaries."""


class ChainComplex:

    def __init__(self, cells, boundary, check=True):
        """cells: {degree: [labels]}, boundary: {degree: RationalMatrix}.

        boundary[d] maps degree-d chains to degree-(d-1) chains; it may be
        omitted when either side is empty.
        """
        self.cells = {d: list(v) for d, v in cells.items() if v}
        self.degrees = sorted(self.cells)
        self.boundary = {}
        for d in self.degrees:
            n = len(self.cells[d])
            m = len(self.cells.get(d - 1, ()))
            mat = boundary.get(d)
            if mat is None:
                mat = RationalMatrix.zero(m, n)
            if (mat.rows, mat.cols) != (m, n):
                raise ValueError("boundary[%d] has shape %s, expected (%d, %d)"
                                 % (d, (mat.rows, mat.cols), m, n))
            self.boundary[d] = mat
        self.index = {d: {label: k for k, label in enumerate(v)}
                      for d, v in self.cells.items()}
        for d, idx in self.index.items():
            if len(idx) != len(self.cells[d]):
                raise ValueError("duplicate cell labels in degree %d" % d)
        if check:
            self._check_dd()

    def _check_dd(self):
        for d in self.degrees:
            lower = self.boundary.get(d - 1)
            if lower is None or lower.rows == 0:
                continue
            comp = lower.compose(self.boundary[d])
            if not comp.is_zero():
                raise ValueError("boundary squared is nonzero at degree %d" % d)

    def size(self, d):
        return len(self.cells.get(d, ()))

    def total_cells(self):
        return sum(len(v) for v in self.cells.values())

    def betti(self):
        """dim H_d for every degree in the complex, as {degree: dim}."""
        ranks = {d: rank(self.boundary[d]) for d in self.degrees}
        out = {}
        for d in self.degrees:
            out[d] = self.size(d) - ranks[d] - ranks.get(d + 1, 0)
        return out

    def euler_characteristic(self):
        return sum((-1) ** d * len(v) for d, v in self.cells.items())

    def boundary_of(self, d, vector):
        mat = self.boundary.get(d)
        if mat is None:
            return ()
        return mat.apply(vector)

    # -- pairs -------------------------------------------------------------

    def check_subcomplex(self, sub):
        """sub: {degree: iterable of labels}; raises NotASubcomplex if bad."""
        sub = {d: set(v) for d, v in sub.items() if v}
        for d, labels in sub.items():
            idx = self.index.get(d, {})
            for label in labels:
                if label not in idx:
                    raise NotASubcomplex("cell %r not in degree %d" % (label, d))
        for d, labels in sub.items():
            mat = self.boundary[d]
            cols = mat.column_dicts()
            lower = sub.get(d - 1, set())
            lower_ok = {self.index[d - 1][l] for l in lower} if d - 1 in self.index else set()
            for label in labels:
                j = self.index[d][label]
                for i in cols.get(j, {}):
                    if i not in lower_ok:
                        raise NotASubcomplex(
                            "boundary of %r leaves the subcomplex in degree %d" % (label, d - 1))
        return sub

    def quotient_by(self, sub):
        """The quotient complex C/A, realized by deleting A's cells."""
        sub = self.check_subcomplex(sub)
        cells = {}
        boundary = {}
        keep = {}
        for d in self.degrees:
            dropped = sub.get(d, set())
            kept = [l for l in self.cells[d] if l not in dropped]
            keep[d] = {self.index[d][l]: k for k, l in enumerate(kept)}
            cells[d] = kept
        for d in self.degrees:
            entries = {}
            for (i, j), v in self.boundary[d].items():
                if j in keep[d] and i in keep.get(d - 1, {}):
                    entries[(keep[d - 1][i], keep[d][j])] = v
            boundary[d] = RationalMatrix(len(cells.get(d - 1, ())), len(cells[d]), entries)
        return ChainComplex(cells, boundary, check=False)

    # -- serialization -----------------------------------------------------

    def to_json(self):
        def frac(v):
            return str(v)

        return {
            "cells": {str(d): [str(l) for l in v] for d, v in self.cells.items()},
            "boundary": {str(d): [[i, j, frac(v)] for (i, j), v in sorted(mat.items())]
                         for d, mat in self.boundary.items() if mat.nnz()},
        }

    @classmethod
    def from_json(cls, data):
        cells = {int(d): list(v) for d, v in data["cells"].items()}
        boundary = {}
        for d, triples in data.get("boundary", {}).items():
            d = int(d)
            m = len(cells.get(d - 1, ()))
            n = len(cells.get(d, ()))
            entries = {}
            for i, j, v in triples:
                entries[(int(i), int(j))] = Fraction(v)
            boundary[d] = RationalMatrix(m, n, entries)
        return cls(cells, boundary)

    def dumps(self):
        return json.dumps(self.to_json(), indent=1, sort_keys=True)

    @classmethod
    def loads(cls, text):
        return cls.from_json(json.loads(text))

    def __repr__(self):
        sizes = ", ".join("%d:%d" % (d, len(self.cells[d])) for d in self.degrees)
        return "ChainComplex({%s})" % sizes


def betti(complex_):
    return complex_.betti()


def euler_characteristic(complex_):
    return complex_.euler_characteristic()


def relative_betti(complex_, sub):
    """Homology of the pair (C, A), computed on the quotient complex C/A."""
    return complex_.quotient_by(sub).betti()


def betti_vector(table, low=0, high=None):
    """Flatten a {degree: dim} table to a tuple over [low, high]."""
    if high is None:
        high = max((d for d, v in table.items() if v), default=low)
    return tuple(table.get(d, 0) for d in range(low, high + 1))


# ---------------------------------------------------------------------------
# chain maps and induced maps on homology

class ChainMap:

    def __init__(self, source, target, components, check=True):
        self.source = source
        self.target = target
        self.components = {}
        for d in source.degrees:
            n = source.size(d)
            m = target.size(d)
            mat = components.get(d)
            if mat is None:
                mat = RationalMatrix.zero(m, n)
            if (mat.rows, mat.cols) != (m, n):
                raise NotChainMap("component %d has wrong shape" % d)
            self.components[d] = mat
        if check:
            self._check_commutes()

    def _check_commutes(self):
        def target_boundary(d):
            mat = self.target.boundary.get(d)
            if mat is None:
                mat = RationalMatrix.zero(self.target.size(d - 1), self.target.size(d))
            return mat

        for d in self.source.degrees:
            f_d = self.components[d]
            f_low = self.components.get(d - 1)
            if f_low is None:
                f_low = RationalMatrix.zero(self.target.size(d - 1), self.source.size(d - 1))
            left = target_boundary(d).compose(f_d)
            right = f_low.compose(self.source.boundary[d])
            if left != right:
                raise NotChainMap("does not commute with boundary at degree %d" % d)


def homology_basis(complex_, d):
    """Deterministic homology data at degree d.

    Returns (image_vectors, class_vectors): a basis of im d_{d+1} followed by
    cycle representatives completing it to a basis of ker d_d.  Chosen by
    image-complement extension over canonical kernel bases, so repeated runs
    agree.
    """
    n = complex_.size(d)
    cycles = kernel_basis(complex_.boundary[d]) if d in complex_.boundary else []
    image = []
    up = complex_.boundary.get(d + 1)
    if up is not None and up.cols:
        cols = up.column_dicts()
        candidates = []
        for j in range(up.cols):
            col = cols.get(j, {})
            candidates.append(tuple(col.get(i, 0) for i in range(n)))
        _, kept = _echelon_with_memory(candidates)
        image = [candidates[k] for k in kept]
    echelon, _ = _echelon_with_memory(image)
    reps = []
    basis_so_far = list(image)
    for vec in cycles:
        if not in_span(echelon, vec):
            reps.append(vec)
            basis_so_far.append(vec)
            echelon, _ = _echelon_with_memory(basis_so_far)
    return image, reps


def induced_map(chain_map, d):
    """Matrix of the map induced on H_d, over the canonical homology bases."""
    if not isinstance(chain_map, ChainMap):
        raise NotChainMap("expected a ChainMap")
    src_image, src_reps = homology_basis(chain_map.source, d)
    tgt_image, tgt_reps = homology_basis(chain_map.target, d)
    f = chain_map.components[d]
    entries = {}
    columns = list(tgt_image) + list(tgt_reps)
    for j, rep in enumerate(src_reps):
        image_vec = f.apply(rep)
        coeffs = solve(columns, image_vec) if columns else None
        if coeffs is None:
            if any(image_vec):
                raise NotChainMap("image of a cycle is not a cycle in degree %d" % d)
            coeffs = ()
        for i in range(len(tgt_reps)):
            c = coeffs[len(tgt_image) + i] if coeffs else 0
            if c:
                entries[(i, j)] = c
    return RationalMatrix(len(tgt_reps), len(src_reps), entries)
