"""Metric-dependent harmonic theory on the bigraded complex.

The compatible inner product on the Lie algebra induces a Hermitian inner
product on forms under which the monomial basis is orthogonal: the dual
generator t^j carries weight |t^j|^2 = 1/(2 |X_j|^2), and a monomial's
weight is the product over its bitmasks.  The Hodge star is determined
slotwise by

    w ∧ ⋆(conj e) = <w, e> Ω,

with the volume form Ω the unit-norm top monomial in the orientation induced
by J; the normalisation scalar is pinned by ⋆1 = Ω together with
⋆⋆ = (-1)^degree, both of which are asserted after construction.

Adjoints are computed as  δ* = -⋆ δ̄ ⋆  (δ̄ the conjugate component) and, for
mubar, cross-checked against the plain Gram adjoint.  On top of the mubar
Hodge decomposition  A^{p,q} = Im(mubar) ⊕ H_mubar ⊕ Im(mubar*)  lives the
operator  delbar_mub = (harmonic projection) ∘ delbar, which squares to
zero and whose cohomology has the Dolbeault dimensions; when the top
Chevalley-Eilenberg cohomology is a line (compact or nilpotent case) its
harmonic spaces realise Dolbeault cohomology directly and are
metric-independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import forms
from .cohomology import Check, ConsistencyError
from .forms import BIDEGREE, CONJUGATE_TAG, DELBAR, MU, MUBAR, PARTIAL
from .kernel import I, ONE, ZERO, from_rational
from .linalg import Matrix, Subspace, preimage


def top_cohomology_is_line(cm):
    """Whether H^{2m} of the total complex is one-dimensional."""
    return cm.total_matrix(2 * cm.m - 1).rank() == 0


class HermitianStructure:
    """Slotwise Gram data, Hodge star, adjoints and Laplacians (all cached)."""

    def __init__(self, cm, frame):
        self.cm = cm
        self.basis = cm.basis
        self.m = cm.m
        self.frame = frame
        # dual generator weights: |t^j|^2 = 1/(2 |X_j|^2)
        self.weights = tuple(Fraction(1, 2) / n for n in frame.norm_sq)
        self._gram = {}
        self._star = {}
        self._star_total = {}
        self._adjoint = {}
        self._gram_adjoint = {}
        self._laplacian = {}
        self._harmonic = {}
        self._d_harmonic = None
        full = (1 << self.m) - 1
        self.top_monomial = (full, full)
        eps = -1 if (self.m * (self.m - 1) // 2) % 2 else 1
        coeff = from_rational(eps)
        two_i = I + I
        prod = Fraction(1)
        for n in frame.norm_sq:
            prod *= n
        for _ in range(self.m):
            coeff = coeff * two_i
        self.volume_coeff = coeff * from_rational(prod)
        self._verify_star()

    # -- Gram ----------------------------------------------------------------

    def gram_diag(self, p, q):
        key = (p, q)
        got = self._gram.get(key)
        if got is not None:
            return got
        diag = []
        for s_mask, t_mask in self.basis.monomials(p, q):
            w = Fraction(1)
            for j in range(self.m):
                if (s_mask >> j) & 1:
                    w *= self.weights[j]
                if (t_mask >> j) & 1:
                    w *= self.weights[j]
            diag.append(w)
        self._gram[key] = diag
        return diag

    def inner(self, p, q, u, v):
        """Hermitian product <u, v> of slot coordinate vectors (anti in v)."""
        diag = self.gram_diag(p, q)
        acc = ZERO
        for w, a, b in zip(diag, u, v):
            if a and b:
                acc = acc + from_rational(w) * a * b.conj()
        return acc

    def gram_matrix(self, p, q):
        diag = self.gram_diag(p, q)
        n = len(diag)
        return Matrix(n, n, [[from_rational(diag[i]) if i == j else ZERO
                              for j in range(n)] for i in range(n)])

    # -- Hodge star ----------------------------------------------------------

    def star(self, p, q):
        """Matrix of ⋆ : (p, q) -> (m-q, m-p)."""
        key = (p, q)
        got = self._star.get(key)
        if got is not None:
            return got
        basis = self.basis
        m = self.m
        full = (1 << m) - 1
        tgt_idx = basis.index[(m - q, m - p)]
        diag = self.gram_diag(p, q)
        cols = []
        rows = basis.dim(m - q, m - p)
        for k, (s_mask, t_mask) in enumerate(basis.monomials(p, q)):
            flip = (t_mask, s_mask)
            comp = (full ^ t_mask, full ^ s_mask)
            res = forms.wedge_monomials(flip, comp)
            if res is None or res[1] != self.top_monomial:
                raise ConsistencyError("complementary monomial bookkeeping failed")
            sigma = res[0]
            x = from_rational(diag[k]) * self.volume_coeff
            if (p * q) & 1:
                x = -x
            if sigma < 0:
                x = -x
            col = [ZERO] * rows
            col[tgt_idx[comp]] = x
            cols.append(col)
        mat = Matrix.from_columns(cols, ambient_rows=rows) if cols \
            else Matrix.zero(rows, 0)
        self._star[key] = mat
        return mat

    def star_total(self, n):
        """Block-diagonal ⋆ on the whole degree-n space, landing in 2m-n."""
        if n in self._star_total:
            return self._star_total[n]
        basis = self.basis
        m = self.m
        rows = basis.total_dim(2 * m - n)
        cols = basis.total_dim(n)
        tgt_off = {(p, q): off for p, q, off in basis.slot_offsets(2 * m - n)}
        data = [[ZERO] * cols for _ in range(rows)]
        for p, q, off in basis.slot_offsets(n):
            blk = self.star(p, q)
            toff = tgt_off[(m - q, m - p)]
            for i in range(blk.rows):
                for j in range(blk.cols):
                    if blk.entries[i][j]:
                        data[toff + i][off + j] = blk.entries[i][j]
        out = Matrix(rows, cols, data)
        self._star_total[n] = out
        return out

    def _verify_star(self):
        basis = self.basis
        m = self.m
        vol_idx = basis.index[(m, m)][self.top_monomial]
        one = self.star(0, 0).col(0)
        if one[vol_idx] != self.volume_coeff or any(
                v for i, v in enumerate(one) if i != vol_idx):
            raise ConsistencyError("⋆1 is not the volume form")
        if self.inner(m, m, self._volume_vec(), self._volume_vec()) != ONE:
            raise ConsistencyError("volume form is not unit length")
        for (p, q) in basis.slots:
            once = self.star(p, q)
            twice = self.star(m - q, m - p) @ once
            sign = -ONE if (p + q) & 1 else ONE
            expect = Matrix.identity(basis.dim(p, q)).scale(sign)
            if twice != expect:
                raise ConsistencyError("⋆⋆ != (-1)^degree on slot (%d, %d)"
                                       % (p, q))

    def _volume_vec(self):
        vec = [ZERO] * self.basis.dim(self.m, self.m)
        vec[self.basis.index[(self.m, self.m)][self.top_monomial]] = \
            self.volume_coeff
        return tuple(vec)

    def check_star_defining(self, p, q):
        """Exhaustively verify w ∧ ⋆(conj e) = <w, e> Ω on basis pairs."""
        basis = self.basis
        dim = basis.dim(p, q)
        vol = self._volume_vec()
        star_conj = self.star(q, p)
        for a in range(dim):
            u = tuple(ONE if i == a else ZERO for i in range(dim))
            for b in range(dim):
                v = tuple(ONE if i == b else ZERO for i in range(dim))
                cv = forms.conjugate_vector(basis, p, q, v)
                sc = star_conj.apply(cv)
                lhs = forms.wedge(basis, (p, q), u, (self.m - p, self.m - q), sc)
                ip = self.inner(p, q, u, v)
                rhs = tuple(ip * x for x in vol)
                if tuple(lhs) != rhs:
                    return False
        return True

    def check_star_isometry(self, p, q):
        """<⋆a, ⋆b> = <b, a> on all basis pairs of the slot."""
        basis = self.basis
        dim = basis.dim(p, q)
        st = self.star(p, q)
        for a in range(dim):
            u = tuple(ONE if i == a else ZERO for i in range(dim))
            su = st.apply(u)
            for b in range(dim):
                v = tuple(ONE if i == b else ZERO for i in range(dim))
                sv = st.apply(v)
                lhs = self.inner(self.m - q, self.m - p, su, sv)
                rhs = self.inner(p, q, v, u)
                if lhs != rhs:
                    return False
        return True

    def bar_star(self, p, q, vec):
        """⋆ followed by conjugation: (p, q) -> (m-p, m-q)."""
        sv = self.star(p, q).apply(vec)
        return forms.conjugate_vector(self.basis, self.m - q, self.m - p, sv)

    def bar_star_image(self, p, q, sub):
        """Image of a slot subspace under bar-star (an antilinear bijection)."""
        cols = [self.bar_star(p, q, sub.basis.col(j)) for j in range(sub.dim)]
        return Subspace.from_columns(self.basis.dim(self.m - p, self.m - q),
                                     cols)

    # -- adjoints and Laplacians ----------------------------------------------

    def adjoint(self, tag):
        """delta* = -⋆ (conj delta) ⋆ per slot: (p, q) -> (p-dp, q-dq)."""
        got = self._adjoint.get(tag)
        if got is not None:
            return got
        basis = self.basis
        m = self.m
        conj_tag = CONJUGATE_TAG[tag]
        out = {}
        for (p, q) in basis.slots:
            first = self.star(p, q)
            mid = self.cm.block(conj_tag, m - q, m - p)
            tp, tq = self.cm.target(conj_tag, m - q, m - p)
            if not (0 <= tp <= m and 0 <= tq <= m):
                dp, dq = BIDEGREE[tag]
                out[(p, q)] = Matrix.zero(basis.dim(p - dp, q - dq),
                                          basis.dim(p, q))
                continue
            second = self.star(tp, tq)
            out[(p, q)] = -(second @ (mid @ first))
        self._adjoint[tag] = out
        return out

    def gram_adjoint(self, tag):
        """Plain metric adjoint G_src^{-1} A^H G_tgt of each block."""
        got = self._gram_adjoint.get(tag)
        if got is not None:
            return got
        basis = self.basis
        dp, dq = BIDEGREE[tag]
        out = {}
        for (p, q) in basis.slots:
            sp, sq = p - dp, q - dq
            if not (0 <= sp <= basis.m and 0 <= sq <= basis.m):
                out[(p, q)] = Matrix.zero(0, basis.dim(p, q))
                continue
            block = self.cm.block(tag, sp, sq)
            src_diag = self.gram_diag(sp, sq)
            tgt_diag = self.gram_diag(p, q)
            ah = block.conj_transpose()
            data = [[ah.entries[i][j] * from_rational(tgt_diag[j] / src_diag[i])
                     for j in range(ah.cols)] for i in range(ah.rows)]
            out[(p, q)] = Matrix(ah.rows, ah.cols, data)
        self._gram_adjoint[tag] = out
        return out

    def d_adjoint(self, n):
        """d* = -⋆ d ⋆ on the total degree-n space."""
        m = self.m
        first = self.star_total(n)
        mid = self.cm.total_matrix(2 * m - n)
        second = self.star_total(2 * m - n + 1)
        return -(second @ (mid @ first))

    def laplacian(self, tag):
        """Slotwise Laplacian  delta delta* + delta* delta."""
        got = self._laplacian.get(tag)
        if got is not None:
            return got
        basis = self.basis
        dp, dq = BIDEGREE[tag]
        adj = self.adjoint(tag)
        out = {}
        for (p, q) in basis.slots:
            fwd = self.cm.block(tag, p, q)
            back = adj.get((p + dp, q + dq))
            if back is None:
                back = Matrix.zero(basis.dim(p, q), fwd.rows)
            term1 = back @ fwd
            fwd2 = self.cm.block(tag, p - dp, q - dq)
            back2 = adj[(p, q)]
            term2 = fwd2 @ back2
            out[(p, q)] = term1 + term2
        self._laplacian[tag] = out
        return out

    def laplacian_d_total(self, n):
        """Laplacian of the full differential on the degree-n space."""
        dn = self.cm.total_matrix(n)
        dprev = self.cm.total_matrix(n - 1) if n > 0 else \
            Matrix.zero(self.basis.total_dim(0), 0)
        adj_n = self.d_adjoint(n + 1) if n < 2 * self.m else \
            Matrix.zero(self.basis.total_dim(n), 0)
        term1 = (adj_n @ dn) if dn.rows else Matrix.zero(dn.cols, dn.cols)
        adj_prev = self.d_adjoint(n)
        term2 = dprev @ adj_prev
        return term1 + term2

    def harmonic(self, tag):
        """Ker of the slot Laplacian; verified equal to Ker δ ∩ Ker δ*."""
        got = self._harmonic.get(tag)
        if got is not None:
            return got
        adj = self.adjoint(tag)
        lap = self.laplacian(tag)
        out = {}
        for (p, q) in self.basis.slots:
            ker_lap = Subspace.from_matrix_columns(lap[(p, q)].nullspace_matrix())
            ker_d = Subspace.from_matrix_columns(
                self.cm.block(tag, p, q).nullspace_matrix())
            ker_a = Subspace.from_matrix_columns(adj[(p, q)].nullspace_matrix())
            if ker_lap != ker_d.intersect(ker_a):
                raise ConsistencyError(
                    "Ker Laplacian != Ker delta ∩ Ker delta* on (%d, %d)"
                    % (p, q))
            out[(p, q)] = ker_lap
        self._harmonic[tag] = out
        return out

    def d_harmonic(self):
        """Slotwise d-harmonic spaces  Ker(Delta_d) ∩ A^{p,q}."""
        if self._d_harmonic is not None:
            return self._d_harmonic
        basis = self.basis
        out = {}
        for n in range(2 * self.m + 1):
            lap = self.laplacian_d_total(n)
            ker = Subspace.from_matrix_columns(lap.nullspace_matrix())
            for p, q, off in basis.slot_offsets(n):
                dim = basis.dim(p, q)
                embed = Matrix.from_columns(
                    [[ONE if i == off + j else ZERO
                      for i in range(basis.total_dim(n))]
                     for j in range(dim)],
                    ambient_rows=basis.total_dim(n))
                out[(p, q)] = preimage(embed, ker)
        self._d_harmonic = out
        return out


def build_hermitian(cm, frame):
    return HermitianStructure(cm, frame)


def harmonic_dims(spaces, m):
    return {k: v.dim for k, v in spaces.items() if v.dim}


def dims_grid(dims, m):
    return tuple(tuple(dims.get((p, q), 0) for p in range(m + 1))
                 for q in range(m + 1))


# -- mubar Hodge decomposition ------------------------------------------------


@dataclass
class MubDecomposition:
    """Per slot: Im(mubar) ⊕ H_mubar ⊕ Im(mubar*) with harmonic projectors."""

    parts: dict        # (p, q) -> (Subspace, Subspace, Subspace)
    projector: dict    # (p, q) -> Matrix projecting onto the harmonic part
    checks: list


def mub_decomposition(hs):
    cm = hs.cm
    basis = hs.basis
    adj = hs.adjoint(MUBAR)
    harm = hs.harmonic(MUBAR)
    parts = {}
    projector = {}
    checks = []
    for (p, q) in sorted(basis.slots):
        dim = basis.dim(p, q)
        im_mub = Subspace.from_matrix_columns(cm.block(MUBAR, p + 1, q - 2))
        im_adj = Subspace.from_matrix_columns(adj.get((p - 1, q + 2),
                                                      Matrix.zero(dim, 0)))
        h = harm[(p, q)]
        parts[(p, q)] = (im_mub, h, im_adj)
        ok_dim = im_mub.dim + h.dim + im_adj.dim == dim
        ortho = _pairwise_orthogonal(hs, p, q, (im_mub, h, im_adj))
        full = im_mub + h + im_adj
        ok_span = full.dim == dim
        checks.append(Check(
            "mubar_decomposition_%d_%d" % (p, q), ok_dim and ortho and ok_span,
            "dims %d + %d + %d vs slot %d" % (im_mub.dim, h.dim, im_adj.dim, dim)))
        cols = (im_mub.basis.columns() + h.basis.columns()
                + im_adj.basis.columns())
        if dim:
            B = Matrix.from_columns(cols, ambient_rows=dim)
            Binv = B.inverse()
            sel = [[ONE if (i == j and im_mub.dim <= i < im_mub.dim + h.dim)
                    else ZERO for j in range(dim)] for i in range(dim)]
            projector[(p, q)] = B @ (Matrix(dim, dim, sel) @ Binv)
        else:
            projector[(p, q)] = Matrix.zero(0, 0)
    return MubDecomposition(parts, projector, checks)


def _pairwise_orthogonal(hs, p, q, subs):
    for a in range(len(subs)):
        for b in range(a + 1, len(subs)):
            for i in range(subs[a].dim):
                u = subs[a].basis.col(i)
                for j in range(subs[b].dim):
                    v = subs[b].basis.col(j)
                    if hs.inner(p, q, u, v):
                        return False
    return True


# -- the delbar_mub operator ---------------------------------------------------


@dataclass
class DelbMub:
    """delbar_mub and its adjoint in the harmonic bases of H_mubar.

    ``space[(p, q)]`` is the mubar-harmonic subspace (slot coordinates);
    ``op``/``op_adj`` act on coordinates in those bases.  ``unimodular``
    records whether the top cohomology is a line, which is the hypothesis
    for adjointness and the Hodge decomposition of the operator.
    """

    hs: HermitianStructure
    space: dict
    op: dict
    op_adj: dict
    unimodular: bool

    def harmonic_space(self, p, q):
        """Ker(delbar_mub) ∩ Ker(delbar_mub*) as a subspace of the slot."""
        onward = self.op[(p, q)]
        back = self.op_adj[(p, q)]
        ker = Subspace.from_matrix_columns(onward.nullspace_matrix()).intersect(
            Subspace.from_matrix_columns(back.nullspace_matrix()))
        cols = [self.space[(p, q)].basis.apply(ker.basis.col(j))
                for j in range(ker.dim)]
        return Subspace.from_columns(self.space[(p, q)].ambient_dim, cols)

    def harmonic_dims(self):
        out = {}
        for (p, q) in self.space:
            d = self.harmonic_space(p, q).dim
            if d:
                out[(p, q)] = d
        return out

    def cohomology_dims(self):
        out = {}
        for (p, q), mat in self.op.items():
            ker = mat.cols - mat.rank()
            prev = self.op.get((p, q - 1))
            img = prev.rank() if prev is not None else 0
            if ker - img:
                out[(p, q)] = ker - img
        return out


def delb_mub(hs, decomposition=None):
    """Build delbar_mub = H_mubar ∘ delbar restricted to mubar-harmonics.

    Asserts delbar_mub^2 = 0.  The adjoint-side operator is the harmonic
    projection of delbar*; when the top cohomology is a line it is the true
    adjoint with respect to the restricted Gram pairing.
    """
    cm = hs.cm
    basis = hs.basis
    if decomposition is None:
        decomposition = mub_decomposition(hs)
    proj = decomposition.projector
    harm = hs.harmonic(MUBAR)
    adj_delbar = hs.adjoint(DELBAR)
    op = {}
    op_adj = {}
    for (p, q) in sorted(basis.slots):
        src = harm[(p, q)]
        op[(p, q)] = _projected_operator(
            cm.block(DELBAR, p, q), src, harm.get((p, q + 1)),
            proj.get((p, q + 1)))
        op_adj[(p, q)] = _projected_operator(
            adj_delbar[(p, q)], src, harm.get((p, q - 1)),
            proj.get((p, q - 1)))
    for (p, q), mat in op.items():
        nxt = op.get((p, q + 1))
        if nxt is not None and mat.cols and nxt.rows:
            if not (nxt @ mat).is_zero():
                raise ConsistencyError("delbar_mub does not square to zero")
    return DelbMub(hs, dict(harm), op, op_adj,
                   top_cohomology_is_line(cm))


def _projected_operator(block, src, tgt, projector):
    if tgt is None or projector is None:
        return Matrix.zero(0, src.dim)
    cols = []
    for j in range(src.dim):
        v = block.apply(src.basis.col(j))
        w = projector.apply(v)
        x = tgt.basis.solve(w)
        if x is None:
            raise ConsistencyError("harmonic projection left the harmonic space")
        cols.append(tuple(x))
    return Matrix.from_columns(cols, ambient_rows=tgt.dim) if cols \
        else Matrix.zero(tgt.dim, 0)


def delb_mub_checks(dmb, h_dol_dims):
    """Hodge decomposition of H_mubar under delbar_mub plus the Dolbeault match.

    The decomposition and the harmonic-space identification require the
    top-cohomology hypothesis; without it those checks are skipped.
    """
    hs = dmb.hs
    m = hs.m
    checks = []
    coh = dmb.cohomology_dims()
    ok = all(coh.get((p, q), 0) == h_dol_dims.get((p, q), 0)
             for p in range(m + 1) for q in range(m + 1))
    checks.append(Check("delbar_mub_cohomology_equals_dolbeault", ok))
    if not dmb.unimodular:
        checks.append(Check("delbar_mub_hodge_decomposition", True,
                            "skipped: top cohomology is not a line",
                            skipped=True))
        checks.append(Check("delbar_mub_harmonic_equals_dolbeault", True,
                            "skipped: top cohomology is not a line",
                            skipped=True))
        return checks
    ok_h = all(dmb.harmonic_dims().get((p, q), 0) == h_dol_dims.get((p, q), 0)
               for p in range(m + 1) for q in range(m + 1))
    checks.append(Check("delbar_mub_harmonic_equals_dolbeault", ok_h))
    ok_dec = True
    for (p, q), space in dmb.space.items():
        img = Subspace.from_matrix_columns(dmb.op.get((p, q - 1),
                                                      Matrix.zero(space.dim, 0)))
        img_adj = Subspace.from_matrix_columns(
            dmb.op_adj.get((p, q + 1), Matrix.zero(space.dim, 0)))
        harm_coords = _coords_subspace(dmb, p, q)
        total = img + harm_coords + img_adj
        if (img.dim + harm_coords.dim + img_adj.dim != space.dim
                or total.dim != space.dim):
            ok_dec = False
        if not _restricted_orthogonal(dmb, p, q, (img, harm_coords, img_adj)):
            ok_dec = False
    checks.append(Check("delbar_mub_hodge_decomposition", ok_dec))
    return checks


def _coords_subspace(dmb, p, q):
    onward = dmb.op[(p, q)]
    back = dmb.op_adj[(p, q)]
    return Subspace.from_matrix_columns(onward.nullspace_matrix()).intersect(
        Subspace.from_matrix_columns(back.nullspace_matrix()))


def _restricted_orthogonal(dmb, p, q, subs):
    hs = dmb.hs
    space = dmb.space[(p, q)]
    lifted = []
    for sub in subs:
        lifted.append([space.basis.apply(sub.basis.col(j))
                       for j in range(sub.dim)])
    for a in range(len(lifted)):
        for b in range(a + 1, len(lifted)):
            for u in lifted[a]:
                for v in lifted[b]:
                    if hs.inner(p, q, u, v):
                        return False
    return True


# -- Serre duality by bar-star --------------------------------------------------


def serre_star_check(hs, dmb=None):
    """bar-star maps H_mubar^{p,q} onto H_mubar^{m-p,m-q}, ditto delbar_mub."""
    m = hs.m
    harm = hs.harmonic(MUBAR)
    checks = []
    ok = True
    for (p, q), sub in harm.items():
        image = hs.bar_star_image(p, q, sub)
        if image != harm[(m - p, m - q)]:
            ok = False
    checks.append(Check("serre_bar_star_mubar_harmonics", ok))
    if dmb is not None:
        ok2 = True
        for (p, q) in dmb.space:
            image = hs.bar_star_image(p, q, dmb.harmonic_space(p, q))
            if image != dmb.harmonic_space(m - p, m - q):
                ok2 = False
        checks.append(Check("serre_bar_star_delbar_mub_harmonics", ok2))
    return checks


# -- metric independence ---------------------------------------------------------


def metric_independence_probe(spec, metrics):
    """Recompute the delbar_mub harmonic dimensions under each metric.

    Returns (list of dims dicts, Check).  All dims agree on unimodular
    algebras; the probe validates each metric first.
    """
    from . import liealg
    from .forms import build_basis, build_differential

    runs = []
    for g in metrics:
        variant = liealg.validate_spec(spec.with_metric(g))
        frame = liealg.adapted_frame(variant)
        csc = liealg.complexify(variant, frame)
        cm = build_differential(csc, build_basis(variant.m))
        hs = build_hermitian(cm, frame)
        runs.append(delb_mub(hs).harmonic_dims())
    agree = all(r == runs[0] for r in runs[1:])
    return runs, Check("metric_independent_harmonic_dims", agree,
                       "%d metrics probed" % len(metrics))


# -- fundamental form and nearly Kahler identities -------------------------------


def fundamental_form(hs, scale="metric"):
    """The (1,1)-form w(x, y) = <Jx, y> as a slot coordinate vector.

    ``scale="metric"`` uses the input Gram data (coefficient 2i |X_a|^2 on
    t^a tbar^a); ``scale="unit_seeds"`` normalises every seed length to 1.
    """
    basis = hs.basis
    vec = [ZERO] * basis.dim(1, 1)
    idx = basis.index[(1, 1)]
    for a in range(hs.m):
        coeff = (I + I) if scale == "unit_seeds" else \
            (I + I) * from_rational(hs.frame.norm_sq[a])
        vec[idx[(1 << a, 1 << a)]] = coeff
    return tuple(vec)


def lefschetz_matrices(hs, scale="metric"):
    """Wedge-with-fundamental-form matrices L : (p, q) -> (p+1, q+1)."""
    basis = hs.basis
    omega = fundamental_form(hs, scale)
    out = {}
    for (p, q) in basis.slots:
        if p + 1 > hs.m or q + 1 > hs.m:
            out[(p, q)] = Matrix.zero(0, basis.dim(p, q))
            continue
        cols = []
        dim = basis.dim(p, q)
        for j in range(dim):
            v = tuple(ONE if i == j else ZERO for i in range(dim))
            cols.append(forms.wedge(basis, (1, 1), omega, (p, q), v))
        out[(p, q)] = Matrix.from_columns(cols,
                                          ambient_rows=basis.dim(p + 1, q + 1))
    return out


def _anticommutator(a_blocks, b_blocks, cm, a_bideg, b_bideg, p, q):
    """[A, B] = AB + BA on slot (p, q) for odd operators A, B."""
    bp, bq = b_bideg
    ap, aq = a_bideg
    first = a_blocks.get((p + bp, q + bq))
    b_here = b_blocks.get((p, q))
    term1 = None
    if first is not None and b_here is not None:
        term1 = first @ b_here
    second = b_blocks.get((p + ap, q + aq))
    a_here = a_blocks.get((p, q))
    term2 = None
    if second is not None and a_here is not None:
        term2 = second @ a_here
    if term1 is None and term2 is None:
        return None
    if term1 is None:
        return term2
    if term2 is None:
        return term1
    return term1 + term2


def nearly_kahler_checks(hs):
    """Exact operator identities characteristic of nearly Kahler structures.

    Only meaningful for m = 3.  Evaluates the graded commutator relations
    among the components and their adjoints, the Laplacian identity
    Delta_delbar + 2 Delta_mu = Delta_partial + 2 Delta_mubar, the
    restricted equalities Delta_mubar = Delta_mu and Delta_delbar =
    Delta_partial on p = q and p + q = 3, the three-space equality
    H_d = H_delbar ∩ H_mubar = H_delbar_mub on its bidegree range, and fits
    the proportionality constant in
    (partial delbar + delbar partial) = -i c (p - q) L, reporting whether a
    single constant works on every applicable slot.  These identities fail
    on structures with no nearly Kahler metric (by design: they are the
    detection tool).
    """
    if hs.m != 3:
        raise ValueError("nearly Kahler identities are specific to m = 3")
    cm = hs.cm
    basis = hs.basis
    checks = []

    blocks = {tag: {pq: cm.block(tag, *pq) for pq in basis.slots}
              for tag in BIDEGREE}
    adj = {tag: hs.adjoint(tag) for tag in BIDEGREE}
    bideg = dict(BIDEGREE)
    adj_bideg = {tag: (-dp, -dq) for tag, (dp, dq) in BIDEGREE.items()}

    def anti(a_map, a_bd, b_map, b_bd, p, q):
        return _anticommutator(a_map, b_map, cm, a_bd, b_bd, p, q)

    zero_pairs = [
        ("[mu*, delbar]", adj[MU], adj_bideg[MU], blocks[DELBAR], bideg[DELBAR]),
        ("[mubar*, partial]", adj[MUBAR], adj_bideg[MUBAR],
         blocks[PARTIAL], bideg[PARTIAL]),
        ("[mu, delbar*]", blocks[MU], bideg[MU], adj[DELBAR], adj_bideg[DELBAR]),
        ("[mubar, partial*]", blocks[MUBAR], bideg[MUBAR],
         adj[PARTIAL], adj_bideg[PARTIAL]),
        ("[mu, mubar*]", blocks[MU], bideg[MU], adj[MUBAR], adj_bideg[MUBAR]),
        ("[mubar, mu*]", blocks[MUBAR], bideg[MUBAR], adj[MU], adj_bideg[MU]),
    ]
    for name, amap, abd, bmap, bbd in zero_pairs:
        ok = True
        for (p, q) in basis.slots:
            got = anti(amap, abd, bmap, bbd, p, q)
            if got is not None and not got.is_zero():
                ok = False
        checks.append(Check("nk_commutator %s = 0" % name, ok,
                            informational=True))

    equal_triples = [
        ("[delbar*, partial] = -[mu, partial*]",
         (adj[DELBAR], adj_bideg[DELBAR], blocks[PARTIAL], bideg[PARTIAL]),
         (blocks[MU], bideg[MU], adj[PARTIAL], adj_bideg[PARTIAL]), -1),
        ("[delbar*, partial] = -[mubar*, delbar]",
         (adj[DELBAR], adj_bideg[DELBAR], blocks[PARTIAL], bideg[PARTIAL]),
         (adj[MUBAR], adj_bideg[MUBAR], blocks[DELBAR], bideg[DELBAR]), -1),
        ("[partial*, delbar] = -[mubar, delbar*]",
         (adj[PARTIAL], adj_bideg[PARTIAL], blocks[DELBAR], bideg[DELBAR]),
         (blocks[MUBAR], bideg[MUBAR], adj[DELBAR], adj_bideg[DELBAR]), -1),
        ("[partial*, delbar] = -[mu*, partial]",
         (adj[PARTIAL], adj_bideg[PARTIAL], blocks[DELBAR], bideg[DELBAR]),
         (adj[MU], adj_bideg[MU], blocks[PARTIAL], bideg[PARTIAL]), -1),
    ]
    for name, (am, abd, bm, bbd), (cm_, cbd, dm, dbd), sign in equal_triples:
        ok = True
        for (p, q) in basis.slots:
            lhs = anti(am, abd, bm, bbd, p, q)
            rhs = anti(cm_, cbd, dm, dbd, p, q)
            if lhs is None and rhs is None:
                continue
            if lhs is None or rhs is None:
                zero_side = rhs if lhs is None else lhs
                if not zero_side.is_zero():
                    ok = False
                continue
            if lhs != rhs.scale(from_rational(sign)):
                ok = False
        checks.append(Check("nk_commutator %s" % name, ok, informational=True))

    lap = {tag: hs.laplacian(tag) for tag in BIDEGREE}
    ok_main = True
    for (p, q) in basis.slots:
        lhs = lap[DELBAR][(p, q)] + lap[MU][(p, q)].scale(from_rational(2))
        rhs = lap[PARTIAL][(p, q)] + lap[MUBAR][(p, q)].scale(from_rational(2))
        if lhs != rhs:
            ok_main = False
    checks.append(Check(
        "nk_laplacian delbar + 2 mu = partial + 2 mubar", ok_main,
        informational=True))

    ok_restricted = True
    for (p, q) in basis.slots:
        if p == q or p + q == 3:
            if lap[MUBAR][(p, q)] != lap[MU][(p, q)]:
                ok_restricted = False
            if lap[DELBAR][(p, q)] != lap[PARTIAL][(p, q)]:
                ok_restricted = False
    checks.append(Check(
        "nk_laplacian equalities on p = q and p + q = 3", ok_restricted,
        informational=True))

    grey = {(p, 0) for p in range(4)} | {(p, 3) for p in range(4)} \
        | {(0, 2), (1, 2), (2, 1), (3, 1)}
    dmb = delb_mub(hs)
    h_delbar = hs.harmonic(DELBAR)
    h_mubar = hs.harmonic(MUBAR)
    h_d = hs.d_harmonic()
    ok_three = True
    for (p, q) in grey:
        inter = h_delbar[(p, q)].intersect(h_mubar[(p, q)])
        if h_d[(p, q)] != inter or inter != dmb.harmonic_space(p, q):
            ok_three = False
    checks.append(Check(
        "nk_three_space_equality on the stated bidegree range", ok_three,
        informational=True))

    lef = lefschetz_matrices(hs)
    fitted = []
    ok_fit = True
    for (p, q) in sorted(basis.slots):
        if p == q:
            continue
        mixed = _anticommutator(blocks[PARTIAL], blocks[DELBAR], cm,
                                bideg[PARTIAL], bideg[DELBAR], p, q)
        lmat = lef[(p, q)]
        if mixed is None or lmat.rows == 0:
            continue
        if lmat.is_zero():
            if not mixed.is_zero():
                ok_fit = False
            continue
        scale = None
        for i in range(lmat.rows):
            for j in range(lmat.cols):
                if lmat.entries[i][j]:
                    scale = mixed.entries[i][j] / lmat.entries[i][j]
                    break
            if scale is not None:
                break
        if lmat.scale(scale) != mixed:
            ok_fit = False
            continue
        # mixed = -i c (p - q) L  =>  c = scale * i / (p - q)
        c = scale * I / from_rational(p - q)
        fitted.append(((p, q), c))
    same = all(c == fitted[0][1] for _, c in fitted) if fitted else True
    value = str(fitted[0][1]) if fitted and same and ok_fit else None
    checks.append(Check(
        "nk_mixed_laplacian_scalar single constant", ok_fit and same,
        "fitted constant %s" % value, informational=True))
    return checks, value
