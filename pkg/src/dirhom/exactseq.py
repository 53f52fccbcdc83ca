"""Relative pairs, long exact sequences, good covers and Mayer-Vietoris.

A face-closed inclusion Y -> X is accepted as a relative pair when

1. along every maximal directed path of X, the cells lying in Y (vertices
   and edges interleaved) form one contiguous block: the path enters Y at
   most once and exits at most once; and
2. the extension of scalars of every chain component of Y, computed from a
   presentation, has the same per-pair dimension as the span of decomposable
   chains inside C(X) (the canonical comparison map is injective).

For accepted pairs, 0 -> ext C(Y) -> C(X) -> C(X)/ext C(Y) -> 0 is a short
exact sequence of per-pair complexes and its homology long exact sequence is
assembled and machine-verified node by node (image = kernel, ranks over the
active field).  Good covers get the excision comparison map of the quotient
complexes, and Mayer-Vietoris sequences are assembled from the two relative
sequences with the standard zig-zag connecting maps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactla import (
    Matrix, QQ, Subspace, induced_on_quotient, kernel_basis, quotient_map,
    rank, solve_in_image,
)
from .precubical import PrecubicalSet, SubsetSpec, sub
from .cubechain import GradedComplex, PairGradedComplex, build_complex
from .homology import PairHomology, homology_of
from .scalars import (
    PathAlgebraIndex, SubcomplexExtension, extend_presented, extend_subcomplex,
    path_algebra, present_chain_module, present_homology,
)


class SequenceError(ValueError):
    """Structural misuse while assembling sequences."""


class ExactnessError(AssertionError):
    """A theorem-guaranteed sequence failed verification: a bug, not data."""


# -- relative pair checking -----------------------------------------------------


@dataclass
class RelativePairReport:
    x_name: str
    y_cells: frozenset[str]
    enter_exit_once: bool
    offending_path: tuple[str, ...] | None
    monic: bool
    monic_failures: list[tuple[int, str, str, int, int]]  # (degree, s, e, presented, span)
    degrees_checked: tuple[int, ...]

    @property
    def accepted(self) -> bool:
        return self.enter_exit_once and self.monic

    def __str__(self) -> str:
        lines = [f"relative pair on {self.x_name}:"]
        lines.append(f"  enter/exit once: {'ok' if self.enter_exit_once else 'FAIL'}")
        if self.offending_path:
            lines.append(f"    offending path: {' '.join(self.offending_path)}")
        lines.append(f"  monic extension: {'ok' if self.monic else 'FAIL'}")
        for (i, s, e, a, b) in self.monic_failures:
            lines.append(f"    degree {i} at ({s},{e}): presented {a} != span {b}")
        lines.append(f"  overall: {'accepted' if self.accepted else 'rejected'}")
        return "\n".join(lines)


def maximal_paths(x: PrecubicalSet) -> list[list[str]]:
    """All maximal directed paths as alternating cell sequences v0,e1,v1,..

    Paths start at sources (no incoming edge) and end at sinks; an isolated
    vertex yields the one-cell path [v].
    """
    out = x.out_edges()
    paths: list[list[str]] = []

    def walk(v: str, acc: list[str]):
        if not out[v]:
            paths.append(list(acc))
            return
        for e in out[v]:
            acc.extend([e, x.edge_target(e)])
            walk(x.edge_target(e), acc)
            acc.pop()
            acc.pop()

    for v in x.source_vertices():
        walk(v, [v])
    return paths


def _one_block(flags: list[bool]) -> bool:
    inside = False
    left = False
    for f in flags:
        if f and left:
            return False
        if f:
            inside = True
        elif inside:
            inside = False
            left = True
    return True


def check_relative_pair(x: PrecubicalSet, spec: SubsetSpec, field=QQ,
                        cx: PairGradedComplex | None = None,
                        alg: PathAlgebraIndex | None = None) -> RelativePairReport:
    """Path criterion plus per-degree monicity of the extension."""
    if spec.parent is not x:
        raise SequenceError("subset spec does not belong to this set")
    missing = spec.missing_faces()
    if missing:
        raise SequenceError(f"selection not face-closed, e.g. {missing[0]}")
    enter_exit = True
    offending = None
    for p in maximal_paths(x):
        flags = [c in spec.selected for c in p]
        if not _one_block(flags):
            enter_exit = False
            offending = tuple(p)
            break
    y, inc = sub(x, spec)
    cx = cx or build_complex(x, None, field)
    alg = alg or path_algebra(x)
    span = extend_subcomplex(cx, spec.selected)
    failures: list[tuple[int, str, str, int, int]] = []
    from .cubechain import max_chain_degree
    top_y = max_chain_degree(y)
    degrees = tuple(range(top_y + 1))
    for i in degrees:
        pb = present_chain_module(y, i, field)
        res = extend_presented(pb, inc, alg).resolve()
        for s, e in cx.pairs():
            a = res.dim(s, e)
            b = span.dim(i, (s, e))
            if a != b:
                failures.append((i, s, e, a, b))
    for i in range(top_y + 1, cx.top_degree + 1):
        for s, e in cx.pairs():
            b = span.dim(i, (s, e))
            if b != 0:
                failures.append((i, s, e, 0, b))
    return RelativePairReport(x.name, spec.selected, enter_exit, offending,
                              not failures, failures, degrees)


# -- quotient complexes -----------------------------------------------------------


class QuotientComplex(GradedComplex):
    """C(X) / (extension span of Y), with the projection matrices kept."""

    def __init__(self, cx: PairGradedComplex, span: SubcomplexExtension):
        self.cx = cx
        self.span = span
        field = cx.field
        dims = {}
        diffs = {}
        self.projections: dict[tuple[int, object], Matrix] = {}
        subs: dict[tuple[int, object], Subspace] = {}
        for pair in cx.pairs():
            for i in range(cx.top_degree + 1):
                subs[(i, pair)] = span.span(i, pair)
        for pair in cx.pairs():
            for i in range(cx.top_degree + 1):
                n = cx.dim(i, pair)
                q = quotient_map(n, subs[(i, pair)])
                self.projections[(i, pair)] = q
                dims[(i, pair)] = q.rows
                if i >= 1:
                    diffs[(i, pair)] = induced_on_quotient(
                        cx.diff(i, pair), subs[(i, pair)], subs[(i - 1, pair)])
        super().__init__(field, cx.top_degree, dims, diffs)
        self.check_boundary_square()

    def projection(self, i: int, pair) -> Matrix:
        return self.projections[(i, pair)]


def relative_complex(x: PrecubicalSet, spec: SubsetSpec, field=QQ,
                     cx: PairGradedComplex | None = None) -> QuotientComplex:
    """The per-pair cokernel of the extension span inside C(X)."""
    cx = cx or build_complex(x, None, field)
    span = extend_subcomplex(cx, spec.selected)
    return QuotientComplex(cx, span)


# -- exact sequence verification ----------------------------------------------------


@dataclass
class SequenceNode:
    label: str
    dim: int
    incoming_rank: int
    outgoing_kernel: int
    exact: bool


@dataclass
class PairSequenceReport:
    pair: tuple
    nodes: list[SequenceNode]
    composition_zero: bool

    @property
    def exact(self) -> bool:
        return self.composition_zero and all(n.exact for n in self.nodes)


@dataclass
class ExactSequenceReport:
    title: str
    per_pair: dict[tuple, PairSequenceReport]

    @property
    def all_exact(self) -> bool:
        return all(r.exact for r in self.per_pair.values())

    def __str__(self) -> str:
        lines = [f"{self.title}: {'exact' if self.all_exact else 'INEXACT'}"]
        for pair, rep in sorted(self.per_pair.items()):
            status = "exact" if rep.exact else "INEXACT"
            dims = " -> ".join(f"{n.label}[{n.dim}]" for n in rep.nodes)
            lines.append(f"  {pair}: {status}: {dims}")
            for n in rep.nodes:
                if not n.exact:
                    lines.append(f"    at {n.label}: im rank {n.incoming_rank} "
                                 f"!= ker dim {n.outgoing_kernel}")
        return "\n".join(lines)


def verify_exact(pair, maps: list[Matrix], labels: list[str] | None = None,
                 title: str = "sequence") -> PairSequenceReport:
    """Node-by-node exactness of V0 -> V1 -> .. -> Vn given consecutive maps.

    Node k (0 < k < n) is exact when rank(M_k) = dim ker(M_{k+1}); the end
    nodes are judged against implicit zero maps, so frame the sequence with
    zero-dimensional spaces to assert injectivity or surjectivity.
    """
    for m1, m2 in zip(maps, maps[1:]):
        if m2.cols != m1.rows:
            raise SequenceError("consecutive maps are not composable")
    comp_zero = all((m2 @ m1).is_zero() for m1, m2 in zip(maps, maps[1:]))
    nodes = []
    nspaces = len(maps) + 1
    labels = labels or [f"V{k}" for k in range(nspaces)]
    for k in range(nspaces):
        dim_k = maps[k].cols if k < len(maps) else maps[-1].rows
        incoming = rank(maps[k - 1]) if k >= 1 else 0
        outgoing_ker = kernel_basis(maps[k]).dim if k < len(maps) else dim_k
        nodes.append(SequenceNode(labels[k], dim_k, incoming, outgoing_ker,
                                  incoming == outgoing_ker))
    return PairSequenceReport(pair, nodes, comp_zero)


# -- the snake: connecting maps -------------------------------------------------------


@dataclass
class ShortExactData:
    """Per-pair complexes A -> B -> C with chain maps include/project."""

    a: GradedComplex
    b: GradedComplex
    c: GradedComplex
    include: dict[tuple[int, object], Matrix]
    project: dict[tuple[int, object], Matrix]

    def verify(self, pairs, top: int) -> None:
        for pair in pairs:
            for i in range(top + 1):
                inc = self.include[(i, pair)]
                prj = self.project[(i, pair)]
                if rank(inc) != self.a.dim(i, pair):
                    raise SequenceError("inclusion is not injective")
                if rank(prj) != self.c.dim(i, pair):
                    raise SequenceError("projection is not surjective")
                if not (prj @ inc).is_zero():
                    raise SequenceError("composite of the two maps is nonzero")
                if kernel_basis(prj).dim != rank(inc):
                    raise SequenceError("short sequence is not exact in the middle")


def connecting_map(ses: ShortExactData, i: int, pair,
                   ha: PairHomology, hc: PairHomology,
                   column_order=None) -> Matrix:
    """The zig-zag H_i(C) -> H_{i-1}(A): lift, take the boundary, pull back."""
    inc = ses.include[(i - 1, pair)]
    prj = ses.project[(i, pair)]
    cols = []
    for rep in hc.reps:
        lift = solve_in_image(prj, rep, column_order=column_order)
        if lift is None:
            raise SequenceError("cycle has no lift along the projection")
        db = ses.b.diff(i, pair).matvec(lift)
        back = solve_in_image(inc, db)
        if back is None:
            raise SequenceError("boundary of the lift is not in the subcomplex")
        cols.append(ha.class_vector(back))
    return Matrix.from_columns(ses.a.field, cols, length=ha.dim)


# -- long exact sequence of a relative pair ---------------------------------------------


@dataclass
class RelativeHomologyResult:
    pair_report: RelativePairReport
    x_table: dict[tuple[int, tuple], int]
    ext_table: dict[tuple[int, tuple], int]
    rel_table: dict[tuple[int, tuple], int]
    sequence: ExactSequenceReport | None
    extension_commutes: bool | None


def _ses_of_pair(cx: PairGradedComplex, span: SubcomplexExtension,
                 quo: QuotientComplex) -> ShortExactData:
    include = {}
    project = {}
    for pair in cx.pairs():
        for i in range(cx.top_degree + 1):
            include[(i, pair)] = span.inclusion_matrix(i, pair)
            project[(i, pair)] = quo.projection(i, pair)
    return ShortExactData(span, cx, quo, include, project)


def les_relative(x: PrecubicalSet, spec: SubsetSpec, field=QQ,
                 max_degree: int | None = None,
                 force: bool = False,
                 verify_extension: bool = True) -> RelativeHomologyResult:
    """Relative homology and its machine-verified long exact sequence.

    Complexes are always built in full, so every truncation of the sequence
    genuinely ends in zeros.  `max_degree` only caps the degrees reported.
    With `force`, a rejected pair still gets its quotient homology but the
    sequence (whose exactness is only guaranteed for relative pairs) is
    skipped.
    """
    cx = build_complex(x, None, field)
    report = check_relative_pair(x, spec, field, cx=cx)
    span = extend_subcomplex(cx, spec.selected)
    quo = QuotientComplex(cx, span)
    top = cx.top_degree if max_degree is None else min(max_degree, cx.top_degree)
    hx: dict[tuple[int, tuple], PairHomology] = {}
    ha: dict[tuple[int, tuple], PairHomology] = {}
    hc: dict[tuple[int, tuple], PairHomology] = {}
    for pair in cx.pairs():
        for i in range(cx.top_degree + 1):
            hx[(i, pair)] = homology_of(cx, i, pair)
            ha[(i, pair)] = homology_of(span, i, pair)
            hc[(i, pair)] = homology_of(quo, i, pair)
    result = RelativeHomologyResult(
        report,
        {k: h.dim for k, h in hx.items() if k[0] <= top},
        {k: h.dim for k, h in ha.items() if k[0] <= top},
        {k: h.dim for k, h in hc.items() if k[0] <= top},
        None, None)
    if not report.accepted:
        # with force the quotient homology above is still reported; the
        # sequence is only guaranteed (and only assembled) for accepted pairs
        return result

    ses = _ses_of_pair(cx, span, quo)
    ses.verify(cx.pairs(), cx.top_degree)

    per_pair = {}
    for pair in cx.pairs():
        maps: list[Matrix] = []
        labels: list[str] = []
        # zero space on top, then degrees from the top of the complex down:
        # H_i(ext Y) -> H_i(X) -> H_i(X, Y) -> H_{i-1}(ext Y) -> ..
        maps.append(Matrix.zeros(field, ha[(cx.top_degree, pair)].dim, 0))
        labels.append("0")
        for i in range(cx.top_degree, -1, -1):
            labels += [f"extH{i}", f"H{i}", f"relH{i}"]
            a_i, x_i, c_i = ha[(i, pair)], hx[(i, pair)], hc[(i, pair)]
            inc_h = _induced(ses.include[(i, pair)], a_i, x_i, field)
            prj_h = _induced(ses.project[(i, pair)], x_i, c_i, field)
            maps.append(inc_h)
            maps.append(prj_h)
            if i >= 1:
                delta = connecting_map(ses, i, pair, ha[(i - 1, pair)], c_i)
                delta2 = connecting_map(ses, i, pair, ha[(i - 1, pair)], c_i,
                                        column_order=_reversed_order(ses, i, pair))
                if delta != delta2:
                    raise ExactnessError("connecting map depends on the lift choice")
                maps.append(delta)
            else:
                maps.append(Matrix.zeros(field, 0, c_i.dim))
        labels.append("0")
        per_pair[pair] = verify_exact(pair, maps, labels)
    seq_report = ExactSequenceReport(f"relative sequence of ({x.name}, sub)", per_pair)
    result.sequence = seq_report
    if not seq_report.all_exact:
        raise ExactnessError("relative long exact sequence failed verification")

    if verify_extension:
        result.extension_commutes = _extension_commutes_with_homology(
            x, spec, cx, span, field)
    return result


def _reversed_order(ses: ShortExactData, i: int, pair):
    n = ses.project[(i, pair)].cols
    return list(range(n - 1, -1, -1))


def _induced(chain_map: Matrix, src: PairHomology, dst: PairHomology, field) -> Matrix:
    cols = [dst.class_vector(chain_map.matvec(rep)) for rep in src.reps]
    return Matrix.from_columns(field, cols, length=dst.dim)


def _extension_commutes_with_homology(x, spec, cx, span: SubcomplexExtension,
                                      field) -> bool:
    """Compare H(extension complex) with the extension of a presentation of H(Y)."""
    from .homology import HomologyTable
    y, inc = sub(x, spec)
    cy = build_complex(y, None, field)
    ty = HomologyTable(cy, y)
    alg = path_algebra(x)
    for i in range(cy.top_degree + 1):
        pb = present_homology(ty, i)
        res = extend_presented(pb, inc, alg).resolve()
        for pair in cx.pairs():
            if homology_of(span, i, pair).dim != res.dim(*pair):
                return False
    for i in range(cy.top_degree + 1, cx.top_degree + 1):
        for pair in cx.pairs():
            if homology_of(span, i, pair).dim != 0:
                return False
    return True


# -- good covers and Mayer-Vietoris ------------------------------------------------------


@dataclass
class GoodCoverReport:
    covers: bool
    pair_reports: dict[str, RelativePairReport]
    excision_iso: bool
    excision_failures: list[tuple[int, tuple, int, int]]

    @property
    def good(self) -> bool:
        return (self.covers and self.excision_iso
                and all(r.accepted for r in self.pair_reports.values()))

    def __str__(self) -> str:
        lines = [f"cover exhausts X: {'yes' if self.covers else 'NO'}"]
        for name, rep in sorted(self.pair_reports.items()):
            lines.append(f"pair ({name}): "
                         f"{'accepted' if rep.accepted else 'rejected'}")
        lines.append(f"excision isomorphism: {'yes' if self.excision_iso else 'NO'}")
        for (i, pair, a, b) in self.excision_failures:
            lines.append(f"  degree {i} at {pair}: dims {a} vs {b}")
        lines.append(f"good cover: {'yes' if self.good else 'NO'}")
        return "\n".join(lines)


def _intersection_spec(x, s1: SubsetSpec, s2: SubsetSpec) -> SubsetSpec:
    return SubsetSpec(x, s1.selected & s2.selected)


def good_cover_check(x: PrecubicalSet, s1: SubsetSpec, s2: SubsetSpec,
                     field=QQ) -> GoodCoverReport:
    """Relative-pair square plus the excision comparison in homology."""
    covers = (s1.selected | s2.selected) == frozenset(x.all_cells())
    s12 = _intersection_spec(x, s1, s2)
    x1, inc1 = sub(x, s1)
    x2, _ = sub(x, s2)
    cx = build_complex(x, None, field)
    reports = {
        "X,X1": check_relative_pair(x, s1, field, cx=cx),
        "X,X2": check_relative_pair(x, s2, field, cx=cx),
        "X1,X1^X2": check_relative_pair(
            x1, SubsetSpec(x1, s12.selected), field),
        "X2,X1^X2": check_relative_pair(
            x2, SubsetSpec(x2, s12.selected), field),
    }
    span1 = extend_subcomplex(cx, s1.selected)
    span12 = extend_subcomplex(cx, s12.selected)
    span2 = extend_subcomplex(cx, s2.selected)
    failures: list[tuple[int, tuple, int, int]] = []
    iso = True
    for pair in cx.pairs():
        for i in range(cx.top_degree + 1):
            # left side: ext C(X1) / ext C(X1^X2); right side: C(X) / ext C(X2)
            hq_left = _quotient_homology_left(span1, span12, i, pair, field)
            hq_right = homology_of(QuotientComplexCache.get(cx, span2, field), i, pair)
            m = _excision_map(cx, span1, span12, span2, i, pair, field,
                              hq_left, hq_right)
            ok = (hq_left.dim == hq_right.dim and rank(m) == hq_left.dim)
            if not ok:
                iso = False
                failures.append((i, pair, hq_left.dim, hq_right.dim))
    return GoodCoverReport(covers, reports, iso, failures)


class QuotientComplexCache:
    _cache: dict[tuple[int, int], QuotientComplex] = {}

    @classmethod
    def get(cls, cx, span, field) -> QuotientComplex:
        key = (id(cx), id(span))
        hit = cls._cache.get(key)
        if hit is None:
            hit = QuotientComplex(cx, span)
            cls._cache[key] = hit
        return hit


def _coordinates_inside(inner: SubcomplexExtension, outer: SubcomplexExtension,
                        i: int, pair, field) -> Subspace:
    """The inner span rewritten in the coordinates of the outer one."""
    inner_idx = inner.kept.get((i, pair), [])
    outer_idx = outer.kept.get((i, pair), [])
    pos = {j: k for k, j in enumerate(outer_idx)}
    basis = []
    for j in inner_idx:
        if j not in pos:
            raise SequenceError("inner extension span is not inside the outer one")
        v = [field.zero] * len(outer_idx)
        v[pos[j]] = field.one
        basis.append(v)
    return Subspace(field, len(outer_idx), basis)


class _LeftQuotient(GradedComplex):
    """ext C(X1) / ext C(X1 ^ X2), in the coordinates of the X1-span."""

    def __init__(self, span1: SubcomplexExtension, span12: SubcomplexExtension, field):
        # keep the spans alive: the module-level cache is keyed by their ids
        self.span1 = span1
        self.span12 = span12
        cx = span1.cx
        dims = {}
        diffs = {}
        self.projections = {}
        subs = {}
        for pair in cx.pairs():
            for i in range(cx.top_degree + 1):
                subs[(i, pair)] = _coordinates_inside(span12, span1, i, pair, field)
        for pair in cx.pairs():
            for i in range(cx.top_degree + 1):
                q = quotient_map(span1.dim(i, pair), subs[(i, pair)])
                self.projections[(i, pair)] = q
                dims[(i, pair)] = q.rows
                if i >= 1:
                    diffs[(i, pair)] = induced_on_quotient(
                        span1.diff(i, pair), subs[(i, pair)], subs[(i - 1, pair)])
        super().__init__(field, cx.top_degree, dims, diffs)
        self.check_boundary_square()


class _LeftQuotientCache:
    _cache: dict[tuple[int, int], _LeftQuotient] = {}

    @classmethod
    def get(cls, span1, span12, field) -> _LeftQuotient:
        key = (id(span1), id(span12))
        hit = cls._cache.get(key)
        if hit is None:
            hit = _LeftQuotient(span1, span12, field)
            cls._cache[key] = hit
        return hit


def _quotient_homology_left(span1, span12, i, pair, field) -> PairHomology:
    return homology_of(_LeftQuotientCache.get(span1, span12, field), i, pair)


def _excision_map(cx, span1, span12, span2, i, pair, field,
                  h_left: PairHomology, h_right: PairHomology) -> Matrix:
    """Homology of the canonical map ext C(X1)/ext C(X1^X2) -> C(X)/ext C(X2)."""
    left = _LeftQuotientCache.get(span1, span12, field)
    quo2 = QuotientComplexCache.get(cx, span2, field)
    incl1 = span1.inclusion_matrix(i, pair)
    q_left = left.projections[(i, pair)]
    q_right = quo2.projection(i, pair)
    cols = []
    for rep in h_left.reps:
        lift = solve_in_image(q_left, rep)
        if lift is None:
            raise SequenceError("no lift for an excision representative")
        img = q_right.matvec(incl1.matvec(lift))
        cols.append(h_right.class_vector(img))
    return Matrix.from_columns(field, cols, length=h_right.dim)


@dataclass
class MayerVietorisResult:
    cover: GoodCoverReport
    sequence: ExactSequenceReport | None
    tables: dict[str, dict[tuple[int, tuple], int]]


def mayer_vietoris(x: PrecubicalSet, s1: SubsetSpec, s2: SubsetSpec,
                   field=QQ, max_degree: int | None = None) -> MayerVietorisResult:
    """The Mayer-Vietoris sequence of a good cover, verified at every node.

    Nodes per degree: H_i(ext X1^X2) -> H_i(ext X1) (+) H_i(ext X2) ->
    H_i(X), with the connecting map Delta = zig-zag . excision^{-1} .
    projection.
    """
    cover = good_cover_check(x, s1, s2, field)
    if not cover.covers:
        raise SequenceError("the two parts do not cover X")
    if not cover.good:
        return MayerVietorisResult(cover, None, {})
    cx = build_complex(x, None, field)
    span1 = extend_subcomplex(cx, s1.selected)
    span2 = extend_subcomplex(cx, s2.selected)
    span12 = extend_subcomplex(cx, (s1.selected & s2.selected))
    left = _LeftQuotientCache.get(span1, span12, field)
    quo2 = QuotientComplexCache.get(cx, span2, field)
    top = cx.top_degree

    h12 = {(i, p): homology_of(span12, i, p) for p in cx.pairs() for i in range(top + 1)}
    h1 = {(i, p): homology_of(span1, i, p) for p in cx.pairs() for i in range(top + 1)}
    h2 = {(i, p): homology_of(span2, i, p) for p in cx.pairs() for i in range(top + 1)}
    hx = {(i, p): homology_of(cx, i, p) for p in cx.pairs() for i in range(top + 1)}
    hcl = {(i, p): homology_of(left, i, p) for p in cx.pairs() for i in range(top + 1)}
    hcr = {(i, p): homology_of(quo2, i, p) for p in cx.pairs() for i in range(top + 1)}

    # chain-level maps
    def indicator(span_small, span_big, i, pair):
        small = span_small.kept.get((i, pair), [])
        big = span_big.kept.get((i, pair), [])
        pos = {j: k for k, j in enumerate(big)}
        cols = []
        for j in small:
            v = [field.zero] * len(big)
            v[pos[j]] = field.one
            cols.append(v)
        return Matrix.from_columns(field, cols, length=len(big))

    per_pair = {}
    for pair in cx.pairs():
        maps: list[Matrix] = []
        labels: list[str] = []
        maps.append(Matrix.zeros(field, h12[(top, pair)].dim, 0))
        labels.append("0")
        for i in range(top, -1, -1):
            a = h12[(i, pair)]
            b1, b2 = h1[(i, pair)], h2[(i, pair)]
            bx = hx[(i, pair)]
            labels += [f"(^)H{i}", f"H{i}(1)+H{i}(2)", f"H{i}(X)"]
            # A -> B1 (+) B2 : classes included into both parts
            m_in1 = _induced(indicator(span12, span1, i, pair), a, b1, field)
            m_in2 = _induced(indicator(span12, span2, i, pair), a, b2, field)
            maps.append(m_in1.stack(m_in2))
            # B1 (+) B2 -> X : difference of the inclusions
            m1x = _induced(span1.inclusion_matrix(i, pair), b1, bx, field)
            m2x = _induced(span2.inclusion_matrix(i, pair), b2, bx, field)
            maps.append(m1x.augment(-m2x))
            if i >= 1:
                delta = _mv_connecting(cx, span1, span12, span2, left, quo2,
                                       i, pair, field,
                                       hcl, hcr, hx, h12)
                maps.append(delta)
            else:
                maps.append(Matrix.zeros(field, 0, bx.dim))
        labels.append("0")
        per_pair[pair] = verify_exact(pair, maps, labels)
    seq = ExactSequenceReport(f"Mayer-Vietoris of {x.name}", per_pair)
    if not seq.all_exact:
        raise ExactnessError("Mayer-Vietoris sequence failed verification")
    if max_degree is not None:
        cap = max_degree
    else:
        cap = top
    tables = {
        "intersection": {k: h.dim for k, h in h12.items() if k[0] <= cap},
        "part1": {k: h.dim for k, h in h1.items() if k[0] <= cap},
        "part2": {k: h.dim for k, h in h2.items() if k[0] <= cap},
        "whole": {k: h.dim for k, h in hx.items() if k[0] <= cap},
    }
    return MayerVietorisResult(cover, seq, tables)


def _mv_connecting(cx, span1, span12, span2, left, quo2, i, pair, field,
                   hcl, hcr, hx, h12) -> Matrix:
    """Delta: H_i(X) -> H_{i-1}(ext X1^X2) through the excision inverse.

    j' projects to H_i(C(X)/ext X2); the excision isomorphism is inverted on
    classes; the zig-zag of the left column lands in H_{i-1}(ext X1^X2).
    """
    bx = hx[(i, pair)]
    c_right = hcr[(i, pair)]
    c_left = hcl[(i, pair)]
    a_prev = h12[(i - 1, pair)]
    q_right = quo2.projection(i, pair)
    gamma = _excision_map(cx, span1, span12, span2, i, pair, field, c_left, c_right)
    # left-column snake data: 0 -> ext(X1^X2) -> ext(X1) -> left-quotient -> 0
    include = {}
    project = {}
    for d in (i, i - 1):
        small = span12.kept.get((d, pair), [])
        big = span1.kept.get((d, pair), [])
        pos = {j: k for k, j in enumerate(big)}
        cols = []
        for j in small:
            v = [field.zero] * len(big)
            v[pos[j]] = field.one
            cols.append(v)
        include[(d, pair)] = Matrix.from_columns(field, cols, length=len(big))
        project[(d, pair)] = left.projections[(d, pair)]
    ses = ShortExactData(span12, span1, left, include, project)
    snake = connecting_map(ses, i, pair, a_prev, c_left)
    cols = []
    for rep in bx.reps:
        v = c_right.class_vector(q_right.matvec(rep))
        w = solve_in_image(gamma, v)
        if w is None:
            raise SequenceError("excision map not surjective on a class")
        cols.append(snake.matvec(w))
    return Matrix.from_columns(field, cols, length=a_prev.dim)
