"""Real Lie algebras with almost complex structure and compatible metric.

The input is a real Lie algebra of even dimension 2m given by structure
constants, an endomorphism J with J^2 = -1, and an optional inner product
(default: identity Gram matrix).  Validation is exact: the Jacobi identity,
J^2 = -1, and metric symmetry/positivity/J-invariance are all checked over
the rationals, and any failure is reported with the offending data.

From a validated algebra we build an adapted complex frame Z_j = X_j - i J X_j
spanning the +i eigenspace of J, and expand all Lie brackets of frame vectors
exactly in the frame basis.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .kernel import Scalar, from_rational
from .linalg import Matrix, Subspace


class LieAlgebraError(ValueError):
    """Invalid Lie algebra input (validation failure)."""


@dataclass(frozen=True)
class LieAlgebraSpec:
    """Structure constants plus J and metric, all exact rationals.

    brackets[i][j][k] is the coefficient of e_k in [e_i, e_j]; J and metric
    are given as matrices acting on coordinate columns.
    """

    dim: int
    basis_names: tuple
    brackets: tuple
    J: tuple
    metric: tuple
    frame_seeds: tuple | None = None
    name: str = ""

    @property
    def m(self):
        return self.dim // 2

    def with_metric(self, metric):
        return replace(self, metric=_freeze_mat(metric))


def make_spec(dim, basis_names=None, brackets=None, J=None, metric=None,
              frame_seeds=None, name=""):
    """Assemble a LieAlgebraSpec from loosely typed data (not yet validated).

    ``brackets`` is a mapping {(i, j): {k: coeff}} on 0-based indices with
    i < j; antisymmetric completion is automatic.  ``metric`` defaults to the
    identity Gram matrix.
    """
    if basis_names is None:
        basis_names = tuple("e%d" % (i + 1) for i in range(dim))
    table = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j), coeffs in (brackets or {}).items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise LieAlgebraError("bracket index out of range: (%d, %d)" % (i, j))
        for k, c in coeffs.items():
            c = Fraction(c)
            table[i][j][k] += c
            table[j][i][k] -= c
    if J is None:
        raise LieAlgebraError("an almost complex structure J is required")
    if metric is None:
        metric = [[Fraction(1 if i == j else 0) for j in range(dim)]
                  for i in range(dim)]
    return LieAlgebraSpec(
        dim=dim,
        basis_names=tuple(basis_names),
        brackets=_freeze3(table),
        J=_freeze_mat(J),
        metric=_freeze_mat(metric),
        frame_seeds=tuple(frame_seeds) if frame_seeds is not None else None,
        name=name,
    )


def _freeze_mat(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def _freeze3(table):
    return tuple(tuple(tuple(row) for row in plane) for plane in table)


def averaged_metric(spec):
    """Replace the metric by its J-average (g + J^t g J)/2."""
    n = spec.dim
    g = spec.metric
    J = spec.J
    gJ = [[sum(g[i][k] * J[k][j] for k in range(n)) for j in range(n)]
          for i in range(n)]
    JtgJ = [[sum(J[k][i] * gJ[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]
    avg = [[(g[i][j] + JtgJ[i][j]) / 2 for j in range(n)] for i in range(n)]
    return spec.with_metric(avg)


def validate_spec(spec):
    """Check every structural invariant exactly; returns the spec unchanged.

    Raises LieAlgebraError naming the first failure: odd dimension, a broken
    antisymmetry or Jacobi triple, J^2 != -1, or a bad metric.
    """
    n = spec.dim
    if n < 2 or n % 2 != 0:
        raise LieAlgebraError("dimension must be even and at least 2, got %d" % n)
    if len(spec.basis_names) != n:
        raise LieAlgebraError("expected %d basis names" % n)
    c = spec.brackets
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if c[i][j][k] != -c[j][i][k]:
                    raise LieAlgebraError(
                        "structure constants not antisymmetric at (%d, %d, %d)"
                        % (i + 1, j + 1, k + 1))
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for mdx in range(n):
                    acc = Fraction(0)
                    for l in range(n):
                        acc += (c[i][j][l] * c[l][k][mdx]
                                + c[j][k][l] * c[l][i][mdx]
                                + c[k][i][l] * c[l][j][mdx])
                    if acc != 0:
                        raise LieAlgebraError(
                            "Jacobi identity fails on triple (%s, %s, %s)"
                            % (spec.basis_names[i], spec.basis_names[j],
                               spec.basis_names[k]))
    J = spec.J
    if len(J) != n or any(len(row) != n for row in J):
        raise LieAlgebraError("J must be a %d x %d matrix" % (n, n))
    for i in range(n):
        for j in range(n):
            jj = sum(J[i][k] * J[k][j] for k in range(n))
            if jj != (-1 if i == j else 0):
                raise LieAlgebraError("J^2 != -Identity at entry (%d, %d)"
                                      % (i + 1, j + 1))
    g = spec.metric
    if len(g) != n or any(len(row) != n for row in g):
        raise LieAlgebraError("metric must be a %d x %d matrix" % (n, n))
    for i in range(n):
        for j in range(n):
            if g[i][j] != g[j][i]:
                raise LieAlgebraError("metric is not symmetric at (%d, %d)"
                                      % (i + 1, j + 1))
    for k in range(1, n + 1):
        minor = [row[:k] for row in g[:k]]
        if _det(minor) <= 0:
            raise LieAlgebraError(
                "metric is not positive definite (leading minor %d)" % k)
    for i in range(n):
        for j in range(n):
            lhs = sum(J[k][i] * g[k][l] * J[l][j] for k in range(n)
                      for l in range(n))
            if lhs != g[i][j]:
                raise LieAlgebraError(
                    "metric is not J-compatible; rerun with the averaged "
                    "metric (g + J^t g J)/2 if that is acceptable")
    if spec.frame_seeds is not None:
        if len(spec.frame_seeds) != spec.m:
            raise LieAlgebraError("expected %d frame seeds" % spec.m)
        if any(not (0 <= s < n) for s in spec.frame_seeds):
            raise LieAlgebraError("frame seed index out of range")
    return spec


def _det(rows):
    """Exact determinant by fraction-free elimination on a copy."""
    a = [list(r) for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[p], a[c] = a[c], a[p]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] * inv
            if f:
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return det


@dataclass(frozen=True)
class ComplexFrame:
    """Adapted frame: Z_j = X_j - i J X_j spanning the +i eigenspace of J.

    ``vectors`` holds the Z_j as Scalar coordinate vectors in the real basis,
    ``seeds`` the real vectors X_j, and ``norm_sq`` the exact g-lengths
    squared of the seeds.
    """

    m: int
    vectors: tuple
    seeds: tuple
    norm_sq: tuple


def adapted_frame(spec):
    """Greedy orthogonal frame construction (deterministic in basis order).

    Picks the first basis vector outside the span of the pairs chosen so
    far, g-orthogonalises it against that span without normalising, and
    pairs it with its J-image.  Explicit ``frame_seeds`` are used verbatim
    after validation.
    """
    n = spec.dim
    m = spec.m
    g = spec.metric
    J = spec.J

    def j_apply(v):
        return tuple(sum(J[i][k] * v[k] for k in range(n)) for i in range(n))

    def pairing(u, v):
        return sum(g[i][k] * u[i] * v[k] for i in range(n) for k in range(n))

    seeds = []
    ortho = []  # running g-orthogonal basis {X_1, JX_1, X_2, JX_2, ...}
    if spec.frame_seeds is not None:
        for idx in spec.frame_seeds:
            x = tuple(Fraction(1 if i == idx else 0) for i in range(n))
            seeds.append(x)
        for a, x in enumerate(seeds):
            jx = j_apply(x)
            for b, y in enumerate(seeds):
                if b > a and pairing(x, y) != 0:
                    raise LieAlgebraError("frame seeds are not g-orthogonal")
                if pairing(jx, y) != 0 and b != a:
                    raise LieAlgebraError("frame seeds are not orthogonal to J-images")
            ortho.extend([x, jx])
        span = Subspace.from_columns(n, [_lift_vec(v) for v in ortho])
        if span.dim != n:
            raise LieAlgebraError("frame seeds do not span (J-independence fails)")
    else:
        for idx in range(n):
            if len(seeds) == m:
                break
            cand = tuple(Fraction(1 if i == idx else 0) for i in range(n))
            if ortho:
                span = Subspace.from_columns(n, [_lift_vec(v) for v in ortho])
                if span.contains_vector(_lift_vec(cand)):
                    continue
                for u in ortho:
                    coeff = pairing(cand, u) / pairing(u, u)
                    if coeff:
                        cand = tuple(cv - coeff * uv for cv, uv in zip(cand, u))
            seeds.append(cand)
            ortho.extend([cand, j_apply(cand)])
        if len(seeds) != m:
            raise LieAlgebraError("frame construction failed to span")

    vectors = []
    norm_sq = []
    for x in seeds:
        jx = j_apply(x)
        z = tuple(from_rational(xc, -jc) for xc, jc in zip(x, jx))
        vectors.append(z)
        norm_sq.append(pairing(x, x))
    return ComplexFrame(m=m, vectors=tuple(vectors), seeds=tuple(seeds),
                        norm_sq=tuple(norm_sq))


def _lift_vec(fracs):
    return tuple(from_rational(f) for f in fracs)


@dataclass(frozen=True)
class ComplexStructureConstants:
    """Brackets of the frame vectors W = (Z_1..Z_m, conj Z_1..conj Z_m).

    table[u][v][w] is the coefficient of W_w in [W_u, W_v]; conjugating all
    three indices (u <-> u+m mod 2m) conjugates the coefficient.
    """

    m: int
    table: tuple


def complexify(spec, frame):
    """Expand complexified brackets exactly in the adapted frame basis."""
    n = spec.dim
    m = frame.m
    w_vecs = list(frame.vectors) + [tuple(e.conj() for e in z)
                                    for z in frame.vectors]
    P = Matrix.from_columns(w_vecs, ambient_rows=n)
    Pinv = P.inverse()
    c = spec.brackets
    lifted = [[from_rational(c[i][j][k]) for k in range(n)]
              for i in range(n) for j in range(n)]

    def bracket(u, v):
        out = [None] * n
        for k in range(n):
            acc = from_rational(0)
            for i in range(n):
                ui = u[i]
                if not ui:
                    continue
                for j in range(n):
                    vj = v[j]
                    if not vj:
                        continue
                    cij = lifted[i * n + j][k]
                    if cij:
                        acc = acc + ui * vj * cij
            out[k] = acc
        return tuple(out)

    table = [[None] * (2 * m) for _ in range(2 * m)]
    for u in range(2 * m):
        for v in range(2 * m):
            table[u][v] = Pinv.apply(bracket(w_vecs[u], w_vecs[v]))
    # conjugation symmetry is forced by realness of the input constants
    for u in range(2 * m):
        for v in range(2 * m):
            cu, cv = (u + m) % (2 * m), (v + m) % (2 * m)
            for w in range(2 * m):
                cw = (w + m) % (2 * m)
                if table[cu][cv][cw] != table[u][v][w].conj():
                    raise LieAlgebraError(
                        "internal error: conjugation symmetry broken in "
                        "complexified brackets")
    return ComplexStructureConstants(
        m=m, table=tuple(tuple(row) for row in table))
