"""Homology of pair-graded complexes and the path-algebra actions on it.

Homology classes are stored concretely: a basis of cycle representatives
together with the boundary subspace, so class comparison is a membership
test and induced maps are computed by expressing images of representatives
in the target's (cycles mod boundaries) coordinates.

The bimodule structure is realized by edge actions: prepending an edge to
every chain of a graded component (left action) or appending one (right
action).  Both are chain maps on the nose, which is asserted when a table
is built; well-definedness on homology follows.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactla import Matrix, Subspace, kernel_basis, image_basis, solve_in_image
from .cubechain import (
    CubeChain, GradedComplex, PairGradedComplex, ChainError, build_complex,
)
from .precubical import PcMorphism, PrecubicalSet, realization


class ActionError(AssertionError):
    """An edge action failed to be a chain map: a boundary-convention bug."""


@dataclass
class PairHomology:
    """Homology of one (degree, pair) component, with explicit data."""

    degree: int
    pair: object
    dim: int
    reps: list[tuple]          # cycle representatives, chain coordinates
    cycles: Subspace
    boundaries: Subspace

    def class_vector(self, v) -> tuple:
        """Coordinates of the class of a cycle v in the representative basis."""
        field = self.cycles.field
        cols = [list(r) for r in self.reps] + [list(b) for b in self.boundaries.basis]
        m = Matrix.from_columns(field, cols, length=self.cycles.ambient_dim)
        sol = solve_in_image(m, v)
        if sol is None:
            raise ChainError("vector is not a cycle of this component")
        return tuple(sol[: self.dim])

    def is_boundary(self, v) -> bool:
        return self.boundaries.contains(v)


def homology_of(cx: GradedComplex, i: int, pair) -> PairHomology:
    """ker d_i / im d_{i+1} for one pair component."""
    ker = kernel_basis(cx.diff(i, pair))
    img = image_basis(cx.diff(i + 1, pair))
    reps: list[tuple] = []
    seen = [list(b) for b in img.basis]
    field = cx.field
    span = Subspace.span(field, ker.ambient_dim, seen)
    for v in ker.basis:
        if not span.contains(v):
            reps.append(v)
            seen.append(list(v))
            span = Subspace.span(field, ker.ambient_dim, seen)
    hom = PairHomology(i, pair, len(reps), reps, ker, img)
    assert hom.dim == ker.dim - img.dim
    return hom


def homology(cx: PairGradedComplex, i: int, src: str, dst: str) -> tuple[int, list[tuple]]:
    """Dimension and cycle representatives of H_i at a vertex pair."""
    if (src, dst) not in set(cx.pairs()):
        raise ChainError(f"unknown vertex pair ({src!r}, {dst!r})")
    h = homology_of(cx, i, (src, dst))
    return h.dim, h.reps


class HomologyTable:
    """Per-(degree, pair) homology of a cube-chain complex plus edge actions.

    ``left_action(a, i, s, e)`` is the matrix H_i(s, e) -> H_i(s', e) where
    the edge a runs s' -> s (prepend a); ``right_action(a, i, s, e)`` is
    H_i(s, e) -> H_i(s, e') where a runs e -> e' (append a).  The action of a
    trivial path is the identity by construction, and actions of longer paths
    are composites of edge actions.
    """

    def __init__(self, cx: PairGradedComplex, x: PrecubicalSet):
        if cx.x is not x:
            raise ChainError("table must be built from the complex of the same set")
        self.cx = cx
        self.x = x
        self.field = cx.field
        self.entries: dict[tuple[int, str, str], PairHomology] = {}
        for (i, s, e) in sorted(cx.bases):
            self.entries[(i, s, e)] = homology_of(cx, i, (s, e))
        for i in range(cx.top_degree + 1):
            for s, e in cx.pairs():
                self.entries.setdefault((i, s, e), homology_of(cx, i, (s, e)))
        self._chain_left: dict[tuple[str, int, str, str], Matrix] = {}
        self._chain_right: dict[tuple[str, int, str, str], Matrix] = {}
        self._verify_actions_are_chain_maps()

    # -- chain-level actions ----------------------------------------------

    def _prepend_matrix(self, a: str, i: int, s: str, e: str) -> Matrix:
        key = (a, i, s, e)
        hit = self._chain_left.get(key)
        if hit is not None:
            return hit
        x, cx = self.x, self.cx
        s2 = x.edge_source(a)
        source = cx.basis(i, s, e)
        target_index = cx.index.get((i, s2, e), {})
        cols = []
        for chain in source:
            new = CubeChain(s2, e, (a,) + chain.cubes, (1,) + chain.dims)
            j = target_index.get(new)
            if j is None:
                raise ChainError(f"prepended chain {new!r} missing from basis")
            col = [self.field.zero] * len(target_index)
            col[j] = self.field.one
            cols.append(col)
        m = Matrix.from_columns(self.field, cols, length=len(target_index))
        self._chain_left[key] = m
        return m

    def _append_matrix(self, a: str, i: int, s: str, e: str) -> Matrix:
        key = (a, i, s, e)
        hit = self._chain_right.get(key)
        if hit is not None:
            return hit
        x, cx = self.x, self.cx
        e2 = x.edge_target(a)
        source = cx.basis(i, s, e)
        target_index = cx.index.get((i, s, e2), {})
        cols = []
        for chain in source:
            new = CubeChain(s, e2, chain.cubes + (a,), chain.dims + (1,))
            j = target_index.get(new)
            if j is None:
                raise ChainError(f"appended chain {new!r} missing from basis")
            col = [self.field.zero] * len(target_index)
            col[j] = self.field.one
            cols.append(col)
        m = Matrix.from_columns(self.field, cols, length=len(target_index))
        self._chain_right[key] = m
        return m

    def _verify_actions_are_chain_maps(self) -> None:
        cx = self.cx
        for a in self.x.edges:
            s1 = self.x.edge_target(a)   # prepend acts on chains starting here
            s0 = self.x.edge_source(a)
            for (i, s, e) in sorted(cx.bases):
                if s == s1 and i >= 1 and cx.dim(i, (s, e)):
                    left_i = self._prepend_matrix(a, i, s, e)
                    left_im1 = self._prepend_matrix(a, i - 1, s, e)
                    if cx.diff(i, (s0, e)) @ left_i != left_im1 @ cx.diff(i, (s, e)):
                        raise ActionError(f"prepend by {a!r} is not a chain map")
                if e == s0 and i >= 1 and cx.dim(i, (s, e)):
                    right_i = self._append_matrix(a, i, s, e)
                    right_im1 = self._append_matrix(a, i - 1, s, e)
                    if cx.diff(i, (s, s1)) @ right_i != right_im1 @ cx.diff(i, (s, e)):
                        raise ActionError(f"append by {a!r} is not a chain map")

    # -- homology-level interface -------------------------------------------

    def entry(self, i: int, s: str, e: str) -> PairHomology:
        hit = self.entries.get((i, s, e))
        if hit is None:
            hit = homology_of(self.cx, i, (s, e))
            self.entries[(i, s, e)] = hit
        return hit

    def dim(self, i: int, s: str, e: str) -> int:
        return self.entry(i, s, e).dim

    def left_action(self, a: str, i: int, s: str, e: str) -> Matrix:
        """H_i(s, e) -> H_i(s', e) for the edge a : s' -> s."""
        if self.x.edge_target(a) != s:
            raise ChainError(f"edge {a!r} does not end at {s!r}")
        s2 = self.x.edge_source(a)
        src, dst = self.entry(i, s, e), self.entry(i, s2, e)
        chain = self._prepend_matrix(a, i, s, e)
        cols = [dst.class_vector(chain.matvec(rep)) for rep in src.reps]
        return Matrix.from_columns(self.field, cols, length=dst.dim)

    def right_action(self, a: str, i: int, s: str, e: str) -> Matrix:
        """H_i(s, e) -> H_i(s, e') for the edge a : e -> e'."""
        if self.x.edge_source(a) != e:
            raise ChainError(f"edge {a!r} does not start at {e!r}")
        e2 = self.x.edge_target(a)
        src, dst = self.entry(i, s, e), self.entry(i, s, e2)
        chain = self._append_matrix(a, i, s, e)
        cols = [dst.class_vector(chain.matvec(rep)) for rep in src.reps]
        return Matrix.from_columns(self.field, cols, length=dst.dim)

    def left_path_action(self, path: tuple[str, ...], i: int, s: str, e: str) -> Matrix:
        """Composite left action of an edge path ending at s."""
        m = Matrix.identity(self.field, self.dim(i, s, e))
        here = s
        for a in reversed(path):
            m = self.left_action(a, i, here, e) @ m
            here = self.x.edge_source(a)
        return m

    def right_path_action(self, path: tuple[str, ...], i: int, s: str, e: str) -> Matrix:
        m = Matrix.identity(self.field, self.dim(i, s, e))
        here = e
        for a in path:
            m = self.right_action(a, i, s, here) @ m
            here = self.x.edge_target(a)
        return m

    def nonzero_keys(self) -> list[tuple[int, str, str]]:
        return sorted(k for k, h in self.entries.items() if h.dim)


def homology_table(cx: PairGradedComplex, x: PrecubicalSet) -> HomologyTable:
    return HomologyTable(cx, x)


# -- induced maps --------------------------------------------------------------


def chain_map_of_morphism(f: PcMorphism, cxa: PairGradedComplex,
                          cxb: PairGradedComplex) -> dict[tuple[int, str, str], Matrix]:
    """Cube-wise chain map C_i(X)(s,e) -> C_i(Y)(f s, f e); asserted chain map."""
    out: dict[tuple[int, str, str], Matrix] = {}
    field = cxa.field
    for (i, s, e), chains in sorted(cxa.bases.items()):
        fs, fe = f(s), f(e)
        tindex = cxb.index.get((i, fs, fe), {})
        cols = []
        for chain in chains:
            img = CubeChain(fs, fe, tuple(f(c) for c in chain.cubes), chain.dims)
            j = tindex.get(img)
            if j is None:
                raise ChainError(f"image chain {img!r} missing from target basis")
            col = [field.zero] * len(tindex)
            col[j] = field.one
            cols.append(col)
        out[(i, s, e)] = Matrix.from_columns(field, cols, length=len(tindex))
    for (i, s, e), m in out.items():
        if i == 0:
            continue
        prev = out.get((i - 1, s, e))
        if prev is None:
            continue
        if cxb.diff(i, (f(s), f(e))) @ m != prev @ cxa.diff(i, (s, e)):
            raise ActionError("morphism-induced map is not a chain map")
    return out


def induced_map(f: PcMorphism, hx: HomologyTable, hy: HomologyTable
                ) -> dict[tuple[int, str, str], Matrix]:
    """Matrices H_i(X)(s,e) -> H_i(Y)(f s, f e) induced by a Cub morphism."""
    chain_maps = chain_map_of_morphism(f, hx.cx, hy.cx)
    out: dict[tuple[int, str, str], Matrix] = {}
    for (i, s, e), m in sorted(chain_maps.items()):
        src = hx.entry(i, s, e)
        dst = hy.entry(i, f(s), f(e))
        cols = [dst.class_vector(m.matvec(rep)) for rep in src.reps]
        out[(i, s, e)] = Matrix.from_columns(hx.field, cols, length=dst.dim)
    return out


# -- cochains --------------------------------------------------------------------


class CochainComplexTable:
    """Duals of the chain components: coboundary = transpose of the boundary."""

    def __init__(self, cx: PairGradedComplex):
        self.cx = cx
        self.field = cx.field
        self.top_degree = cx.top_degree
        self.coboundaries: dict[tuple[int, object], Matrix] = {}
        for pair in cx.pairs():
            for i in range(cx.top_degree + 1):
                # delta^i : C^i -> C^{i+1} is the transpose of d_{i+1}
                self.coboundaries[(i, pair)] = cx.diff(i + 1, pair).transpose()
        for pair in cx.pairs():
            for i in range(1, cx.top_degree + 1):
                prod = self.coboundaries[(i, pair)] @ self.coboundaries[(i - 1, pair)]
                if not prod.is_zero():
                    raise ActionError("coboundary square is nonzero")

    def dim(self, i: int, pair) -> int:
        return self.cx.dim(i, pair)

    def coboundary(self, i: int, pair) -> Matrix:
        m = self.coboundaries.get((i, pair))
        if m is None:
            return Matrix.zeros(self.field, self.cx.dim(i + 1, pair), self.cx.dim(i, pair))
        return m

    def cohomology_dim(self, i: int, src: str, dst: str) -> int:
        pair = (src, dst)
        ker = kernel_basis(self.coboundary(i, pair)).dim
        if i == 0:
            return ker
        from .exactla import rank
        return ker - rank(self.coboundary(i - 1, pair))


def cochain_dual(cx: PairGradedComplex) -> CochainComplexTable:
    return CochainComplexTable(cx)


# -- acyclicity ---------------------------------------------------------------------


@dataclass
class AcyclicityVerdict:
    sequence: tuple[int, ...]
    start: str
    end: str
    h0_dim: int
    higher_dims: dict[int, int]
    acyclic: bool

    def __str__(self) -> str:
        word = "acyclic" if self.acyclic else "NOT acyclic"
        dims = ", ".join(f"H{i}={d}" for i, d in sorted(self.higher_dims.items()))
        return (f"realization {self.sequence}: {word}; H0({self.start},{self.end})"
                f"={self.h0_dim}" + (f"; {dims}" if dims else ""))


def acyclicity_check(seq, field=None) -> AcyclicityVerdict:
    """Homology of a realization concentrated in degree 0 between endpoints."""
    from .exactla import QQ
    field = field or QQ
    r = realization(seq)
    cx = build_complex(r, None, field)
    top = sum(n - 1 for n in r.sequence)
    h0 = homology_of(cx, 0, (r.start, r.end)).dim
    higher = {i: homology_of(cx, i, (r.start, r.end)).dim for i in range(1, top + 1)}
    ok = h0 == 1 and all(d == 0 for d in higher.values())
    return AcyclicityVerdict(r.sequence, r.start, r.end, h0, higher, ok)
