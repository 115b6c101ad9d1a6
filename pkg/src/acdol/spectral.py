"""Spectral sequences of the filtered Chevalley-Eilenberg complex.

Two decreasing filtrations are supported:

* the Hodge filtration  F^p A^n = (Ker mubar ∩ A^{p,n-p}) ⊕ ⊕_{i>p} A^{i,n-i},
  whose first page is Dolbeault cohomology and which converges to complex
  de Rham cohomology;
* the shifted filtration  Ft^p A^n = ⊕_{i >= p-n} A^{i,n-i}; its pages agree
  with the Hodge pages after the index shift
  E_r^{p,n-p}(F) ≅ E_{r+1}^{p+n,-p}(Ft) for r >= 1, and F = Dec Ft.

Pages are computed by the standard filtered-complex recipe on the
total-degree spaces,

    Z_r^{p,q} = F^p A^n ∩ d^{-1}(F^{p+r} A^{n+1}),          n = p + q,
    E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2}),

entirely in exact arithmetic.  An independent computation of the same
dimensions from explicit witness-chain systems (one linear system per page,
no filtration machinery) is provided by ``explicit_page`` and serves as an
oracle for the generic route.  Both filtrations are bounded, so every page
with r >= 2m+2 equals the limit page.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import forms
from .cohomology import Check, ConsistencyError
from .forms import DELBAR, MU, MUBAR, PARTIAL
from .linalg import Matrix, Subspace, complement_in, preimage

HODGE = "hodge"
SHIFTED = "shifted"


class Filtration:
    """A bounded decreasing filtration of the total complex by subspaces."""

    def __init__(self, cm, kind):
        if kind not in (HODGE, SHIFTED):
            raise ValueError("unknown filtration kind %r" % kind)
        self.cm = cm
        self.kind = kind
        self.basis = cm.basis
        self.m = cm.m
        self._levels = {}
        self._z = {}
        self._dz = {}
        self._dimg = {}

    def level(self, p, n):
        """F^p A^n as a subspace of the total-degree-n space."""
        two_m = 2 * self.m
        if n < 0 or n > two_m:
            return Subspace.zero(0)
        total = self.basis.total_dim(n)
        if p <= (0 if self.kind == HODGE else n):
            return Subspace.full(total)
        hi = n + 1 if self.kind == HODGE else 2 * n + 1
        if p >= hi:
            return Subspace.zero(total)
        key = (p, n)
        got = self._levels.get(key)
        if got is not None:
            return got
        cols = []
        for sp, sq, off in self.basis.slot_offsets(n):
            if self.kind == HODGE:
                if sp > p:
                    for j in range(self.basis.dim(sp, sq)):
                        vec = [forms.ZERO] * total
                        vec[off + j] = forms.ONE
                        cols.append(tuple(vec))
                elif sp == p:
                    ker = self.cm.block(MUBAR, sp, sq).nullspace_matrix()
                    for j in range(ker.cols):
                        vec = [forms.ZERO] * total
                        for i in range(ker.rows):
                            vec[off + i] = ker.entries[i][j]
                        cols.append(tuple(vec))
            else:
                if sp >= p - n:
                    for j in range(self.basis.dim(sp, sq)):
                        vec = [forms.ZERO] * total
                        vec[off + j] = forms.ONE
                        cols.append(tuple(vec))
        sub = Subspace.from_columns(total, cols)
        self._levels[key] = sub
        return sub

    def check_structure(self):
        """Assert boundedness and d-compatibility; raises on failure."""
        two_m = 2 * self.m
        for n in range(two_m + 1):
            lo = 0 if self.kind == HODGE else n
            hi = n + 1 if self.kind == HODGE else 2 * n + 1
            if self.level(lo, n).dim != self.basis.total_dim(n):
                raise ConsistencyError("filtration does not start full")
            if self.level(hi, n).dim != 0:
                raise ConsistencyError("filtration does not end at zero")
            d = self.cm.total_matrix(n)
            for p in range(lo, hi + 1):
                Fp = self.level(p, n)
                if not (self.level(p + 1, n).dim <= Fp.dim
                        and Fp.contains(self.level(p + 1, n))):
                    raise ConsistencyError("filtration is not decreasing")
                if n < two_m:
                    img = Fp.image_under(d)
                    if not self.level(p, n + 1).contains(img):
                        raise ConsistencyError(
                            "filtration is not d-compatible at (p=%d, n=%d)"
                            % (p, n))

    def cycles(self, r, p, n):
        """Z_r^{p, n-p} = F^p A^n ∩ d^{-1}(F^{p+r} A^{n+1}); r >= -1.

        Computed in F^p coordinates: x with d(B x) in F^{p+r} come from the
        kernel of [d B | -B'], which keeps the eliminations small.  The
        target level p + r is clamped to the filtration window of degree
        n + 1, so all sufficiently deep pages share cached results.
        """
        two_m = 2 * self.m
        if n < 0 or n > two_m:
            return Subspace.zero(0)
        lo_next = 0 if self.kind == HODGE else n + 1
        hi_next = (n + 2) if self.kind == HODGE else (2 * n + 3)
        t = max(lo_next, min(p + r, hi_next))
        key = (t, p, n)
        got = self._z.get(key)
        if got is not None:
            return got
        Fp = self.level(p, n)
        if n == two_m or Fp.dim == 0 or t == lo_next:
            out = Fp  # the target level is everything (or there is no d)
        else:
            target = self.level(t, n + 1)
            restricted = self._restricted(p, n)
            if target.dim == 0:
                coeffs = restricted.nullspace_matrix()
            else:
                ker = restricted.hstack(-target.basis).nullspace_matrix()
                coeffs = Matrix(Fp.dim, ker.cols,
                                [ker.entries[i] for i in range(Fp.dim)])
            out = Subspace.from_matrix_columns(Fp.basis @ coeffs)
        self._z[key] = out
        return out

    def _restricted(self, p, n):
        """The differential applied to the level basis, cached."""
        key = (p, n)
        got = self._dz.get(key)
        if got is None:
            got = self.cm.total_matrix(n) @ self.level(p, n).basis
            self._dz[key] = got
        return got

    def boundary_image(self, r, p, n):
        """d(Z_r^{p, n-p}) as a subspace of the degree-(n+1) space, cached."""
        two_m = 2 * self.m
        if n < 0 or n > two_m:
            return Subspace.zero(self.basis.total_dim(n + 1))
        lo_next = 0 if self.kind == HODGE else n + 1
        hi_next = (n + 2) if self.kind == HODGE else (2 * n + 3)
        t = max(lo_next, min(p + r, hi_next))
        key = (t, p, n)
        got = self._dimg.get(key)
        if got is None:
            z = self.cycles(r, p, n)
            got = z.image_under(self.cm.total_matrix(n))
            self._dimg[key] = got
        return got


@dataclass
class PageSlot:
    dim: int
    numerator: Subspace
    denominator: Subspace
    reps: Subspace


def build_filtration(cm, kind):
    filt = Filtration(cm, kind)
    filt.check_structure()
    return filt


def er_page(filt, r):
    """All slots of the r-th page: {(p, q): PageSlot}.

    Representatives live in total-degree coordinates.  Keys cover the
    bigraded range of the filtration kind.
    """
    if r < 0:
        raise ValueError("page index must be >= 0")
    cm = filt.cm
    m = filt.m
    out = {}
    for n in range(2 * m + 1):
        lo = 0 if filt.kind == HODGE else n
        hi = n if filt.kind == HODGE else 2 * n
        for p in range(lo, hi + 1):
            q = n - p
            num = filt.cycles(r, p, n)
            den_a = filt.cycles(r - 1, p + 1, n)
            if n >= 1:
                den_b = filt.boundary_image(r - 1, p - r + 1, n - 1)
            else:
                den_b = Subspace.zero(num.ambient_dim)
            den = den_a + den_b
            if not num.contains(den):
                raise ConsistencyError(
                    "page denominator escapes the cycles at r=%d (p=%d,q=%d)"
                    % (r, p, q))
            reps = complement_in(den, num)
            out[(p, q)] = PageSlot(num.dim - den.dim, num, den, reps)
    return out


def page_dims(page, m, kind=HODGE):
    """Dims as a dict over the standard (p, q) grid (zero entries kept)."""
    dims = {}
    for (p, q), slot in page.items():
        if slot.dim:
            dims[(p, q)] = slot.dim
    return dims


def dims_grid(dims, m):
    return tuple(tuple(dims.get((p, q), 0) for p in range(m + 1))
                 for q in range(m + 1))


def er_differential(filt, r, page, page_next=None):
    """Matrices of the induced differential d_r on page representatives.

    d_r goes (p, q) -> (p+r, q-r+1); entry matrices are written in the
    representative bases of ``page``.  Verifies d_r^2 = 0 and, when the next
    page is supplied, that the cohomology of d_r has its dimensions.
    """
    cm = filt.cm
    mats = {}
    for (p, q), slot in page.items():
        tgt = page.get((p + r, q - r + 1))
        n = p + q
        if tgt is None or slot.dim == 0:
            mats[(p, q)] = Matrix.zero(tgt.dim if tgt else 0, slot.dim)
            continue
        d = cm.total_matrix(n)
        solver = tgt.reps.basis.hstack(tgt.denominator.basis)
        cols = []
        for j in range(slot.dim):
            w = d.apply(slot.reps.basis.col(j))
            x = solver.solve(w)
            if x is None:
                raise ConsistencyError(
                    "d of a page representative is not a page cycle at "
                    "r=%d (p=%d,q=%d)" % (r, p, q))
            cols.append(tuple(x[:tgt.reps.dim]))
        mats[(p, q)] = Matrix.from_columns(cols, ambient_rows=tgt.reps.dim)
    # d_r composed with itself must vanish
    for (p, q), mat in mats.items():
        nxt = mats.get((p + r, q - r + 1))
        if nxt is not None and mat.cols and nxt.rows:
            if not (nxt @ mat).is_zero():
                raise ConsistencyError("page differential does not square to zero")
    if page_next is not None:
        for (p, q), slot in page.items():
            out = mats[(p, q)]
            inc = mats.get((p - r, q + r - 1))
            ker = out.cols - out.rank()
            img = inc.rank() if inc is not None else 0
            nxt_dim = page_next[(p, q)].dim if (p, q) in page_next else 0
            if ker - img != nxt_dim:
                raise ConsistencyError(
                    "page cohomology does not match the next page at "
                    "(p=%d,q=%d)" % (p, q))
    return mats


@dataclass
class PageTable:
    """Every page of the Hodge-filtration spectral sequence.

    ``pages[r]`` maps (p, q) to dimensions; ``slots[r]`` retains the full
    PageSlot data.  ``degeneration_page`` is the least r with E_r = E_inf.
    """

    m: int
    pages: dict
    slots: dict
    degeneration_page: int
    limit_page: int

    def dims(self, r):
        return self.pages[min(r, self.limit_page)]

    def infinity(self):
        return self.pages[self.limit_page]

    def grid(self, r):
        return dims_grid(self.dims(r), self.m)


def frolicher_all(cm, max_page=None):
    """Iterate the Hodge-filtration pages to the guaranteed-stable bound.

    Pages are computed for r = 0 .. 2m+2 (or ``max_page`` if smaller); the
    bound 2m+2 exceeds the filtration length, so that page equals E_inf.
    """
    m = cm.m
    limit = 2 * m + 2
    if max_page is not None:
        limit = min(limit, max(max_page, 1))
    filt = build_filtration(cm, HODGE)
    pages = {}
    slots = {}
    for r in range(limit + 1):
        page = er_page(filt, r)
        slots[r] = page
        pages[r] = page_dims(page, m)
    degen = limit
    for r in range(1, limit + 1):
        if pages[r] == pages[limit]:
            degen = r
            break
    return PageTable(m, pages, slots, degen, limit)


def infinity_vs_betti(table, betti):
    """Check sum_p dim E_inf^{p, n-p} = b^n for all n."""
    checks = []
    dims = table.infinity()
    for n in range(2 * table.m + 1):
        total = sum(dims.get((p, n - p), 0) for p in range(n + 1))
        checks.append(Check(
            "einf_equals_betti_degree_%d" % n, total == betti[n],
            "E_inf row sum %d vs b^%d = %d" % (total, n, betti[n])))
    return checks


# -- explicit witness-chain systems (independent page oracle) --------------


def _slot_dims_chain(basis, bidegrees):
    return [basis.dim(p, q) if 0 <= p <= basis.m and 0 <= q <= basis.m else 0
            for (p, q) in bidegrees]


def _block_system(cm, equations, variables):
    """Assemble the block matrix of a linear system over slot variables.

    ``variables``: list of bidegrees (one unknown form per entry).
    ``equations``: list of rows; each row is a list of (var_index, tag_or_None,
    sign) triples meaning  sum sign * tag(x_var) = 0, with tag None for the
    identity map.  Out-of-range slots contribute zero-dimensional blocks.
    Row bidegrees are inferred from the first well-defined term.
    """
    basis = cm.basis
    var_dims = _slot_dims_chain(basis, variables)
    offsets = []
    total = 0
    for d in var_dims:
        offsets.append(total)
        total += d
    rows_data = []
    for row in equations:
        row_dim = None
        mats = {}
        for var, tag, sign in row:
            vp, vq = variables[var]
            if var_dims[var] == 0:
                continue
            if tag is None:
                mat = Matrix.identity(var_dims[var])
                tp, tq = vp, vq
            else:
                mat = cm.block(tag, vp, vq)
                tp, tq = cm.target(tag, vp, vq)
            if sign < 0:
                mat = -mat
            if row_dim is None:
                row_dim = mat.rows
            mats[var] = mat
        if row_dim is None or row_dim == 0:
            continue
        block_rows = [[forms.ZERO] * total for _ in range(row_dim)]
        for var, mat in mats.items():
            off = offsets[var]
            for i in range(mat.rows):
                for j in range(mat.cols):
                    if mat.entries[i][j]:
                        block_rows[i][off + j] = mat.entries[i][j]
        rows_data.extend(block_rows)
    if not rows_data:
        return Matrix.zero(0, total), offsets, var_dims
    return Matrix.from_rows(rows_data), offsets, var_dims


def _project_solutions(system, offsets, var_dims, var):
    """Project the solution space of ``system`` to one variable block."""
    ker = system.nullspace_matrix()
    off = offsets[var]
    dim = var_dims[var]
    cols = [tuple(ker.entries[off + i][j] for i in range(dim))
            for j in range(ker.cols)]
    return Subspace.from_columns(dim, cols)


def explicit_cycles(cm, r, p, q):
    """Z_r^{p,q} from the witness chain (w, w_1 .. w_r), w_i in A^{p+i,q-i}.

    Chain equations:  mubar w = 0;  delbar w = mubar w_1;
    partial w = mubar w_2 + delbar w_1;  mu w = mubar w_3 + delbar w_2 +
    partial w_1;  and homogeneous continuations for i = 4 .. r.
    """
    variables = [(p, q)] + [(p + i, q - i) for i in range(1, r + 1)]
    equations = [[(0, MUBAR, 1)]]
    if r >= 1:
        equations.append([(0, DELBAR, 1), (1, MUBAR, -1)])
    if r >= 2:
        equations.append([(0, PARTIAL, 1), (2, MUBAR, -1), (1, DELBAR, -1)])
    if r >= 3:
        equations.append([(0, MU, 1), (3, MUBAR, -1), (2, DELBAR, -1),
                          (1, PARTIAL, -1)])
    for i in range(4, r + 1):
        equations.append([(i, MUBAR, 1), (i - 1, DELBAR, 1),
                          (i - 2, PARTIAL, 1), (i - 3, MU, 1)])
    system, offsets, var_dims = _block_system(cm, equations, variables)
    return _project_solutions(system, offsets, var_dims, 0)


def explicit_boundaries(cm, r, p, q):
    """B_r^{p,q} from the witness chain (e_1 .. e_{r+1}), e_i in A^{p+2-i,q-3+i}.

    The boundary form is  mubar e_1 + delbar e_2 + partial e_3 + mu e_4,
    taken over chains satisfying the homogeneous closing equations.
    """
    variables = [(p + 2 - i, q - 3 + i) for i in range(1, r + 2)]
    equations = []
    if r == 1:
        equations.append([(1, MUBAR, 1)])
    elif r == 2:
        equations.append([(1, MUBAR, 1), (2, DELBAR, 1)])
        equations.append([(2, MUBAR, 1)])
    else:
        for i in range(2, r - 1):
            equations.append([(i - 1, MUBAR, 1), (i, DELBAR, 1),
                              (i + 1, PARTIAL, 1), (i + 2, MU, 1)])
        equations.append([(r - 2, MUBAR, 1), (r - 1, DELBAR, 1),
                          (r, PARTIAL, 1)])
        equations.append([(r - 1, MUBAR, 1), (r, DELBAR, 1)])
        equations.append([(r, MUBAR, 1)])
    basis = cm.basis
    var_dims = _slot_dims_chain(basis, variables)
    system, offsets, _ = _block_system(cm, equations, variables)
    if system.rows == 0:
        ker = Matrix.identity(sum(var_dims))
    else:
        ker = system.nullspace_matrix()
    out_dim = basis.dim(p, q)
    first_tags = [MUBAR, DELBAR, PARTIAL, MU]
    cols = []
    for j in range(ker.cols):
        acc = [forms.ZERO] * out_dim
        for var in range(min(4, len(variables))):
            vp, vq = variables[var]
            if var_dims[var] == 0:
                continue
            mat = cm.block(first_tags[var], vp, vq)
            off = offsets[var]
            comp = mat.apply([ker.entries[off + i][j]
                              for i in range(var_dims[var])])
            acc = [a + b for a, b in zip(acc, comp)]
        cols.append(tuple(acc))
    return Subspace.from_columns(out_dim, cols)


def explicit_page(cm, r):
    """Page dimensions from the explicit witness systems: {(p, q): dim}.

    Independent of the filtration route; asserts B_r is contained in Z_r.
    """
    if r < 1 or r > 2 * cm.m + 2:
        raise ValueError("explicit page index must lie in 1 .. 2m+2")
    basis = cm.basis
    dims = {}
    for (p, q) in sorted(basis.slots):
        z = explicit_cycles(cm, r, p, q)
        b = explicit_boundaries(cm, r, p, q)
        if not z.contains(b):
            raise ConsistencyError(
                "explicit boundaries escape the cycles at r=%d (p=%d,q=%d)"
                % (r, p, q))
        if z.dim - b.dim:
            dims[(p, q)] = z.dim - b.dim
    return dims


def dolbeault_delta1(cm, dol):
    """delta_1 on Dolbeault representatives via the witness formula.

    For a class [w] with mubar w = 0 and delbar w = mubar eta, the image is
    [partial w - delbar eta] in H_Dol^{p+1, q}.  The class does not depend
    on the witness eta, which ``witness_independent`` re-verifies by
    shifting eta through Ker(mubar).
    """
    basis = cm.basis
    mats = {}
    for (p, q) in basis.slots:
        src = dol.representatives[(p, q)]
        tgt_reps = dol.representatives.get((p + 1, q))
        if tgt_reps is None:
            mats[(p, q)] = Matrix.zero(0, src.dim)
            continue
        tgt_den = dol.denominators[(p + 1, q)]
        solver = tgt_reps.basis.hstack(tgt_den.basis)
        cols = []
        for j in range(src.dim):
            w = src.basis.col(j)
            out = _delta1_image(cm, p, q, w)
            x = solver.solve(out)
            if x is None:
                raise ConsistencyError(
                    "delta_1 image is not a Dolbeault cocycle at (%d, %d)"
                    % (p, q))
            cols.append(tuple(x[:tgt_reps.dim]))
        mats[(p, q)] = Matrix.from_columns(cols, ambient_rows=tgt_reps.dim) \
            if cols else Matrix.zero(tgt_reps.dim, 0)
    return mats


def _delta1_image(cm, p, q, w, kernel_shift=None):
    mub_wit = cm.block(MUBAR, p + 1, q - 1)
    rhs = cm.block(DELBAR, p, q).apply(w)
    eta = mub_wit.solve(rhs)
    if eta is None:
        raise ConsistencyError("no mubar-witness: form is not a page-1 cycle")
    if kernel_shift is not None:
        eta = tuple(a + b for a, b in zip(eta, kernel_shift))
    part = cm.block(PARTIAL, p, q).apply(w)
    corr = cm.block(DELBAR, p + 1, q - 1).apply(eta)
    return tuple(a - b for a, b in zip(part, corr))


def witness_independent(cm, dol, p, q):
    """Check the delta_1 class is unchanged by any witness shift."""
    src = dol.representatives[(p, q)]
    tgt_num = dol.numerators.get((p + 1, q))
    tgt_den = dol.denominators.get((p + 1, q))
    if src.dim == 0 or tgt_num is None:
        return True
    kernel = cm.block(MUBAR, p + 1, q - 1).nullspace_matrix()
    for j in range(src.dim):
        w = src.basis.col(j)
        base = _delta1_image(cm, p, q, w)
        for k in range(kernel.cols):
            shift = kernel.col(k)
            other = _delta1_image(cm, p, q, w, kernel_shift=shift)
            diff = tuple(a - b for a, b in zip(base, other))
            if not tgt_den.contains_vector(diff):
                return False
    return True


def decalage_check(cm):
    """Compare shifted-filtration pages with Hodge pages under the reindexing.

    Checks  dim E_r^{p,n-p}(F) = dim E_{r+1}^{p+n,-p}(Ft)  for r >= 1 up to
    the stable bound, and the subspace identity F^p A^n = Dec Ft^p A^n.
    """
    m = cm.m
    hodge = build_filtration(cm, HODGE)
    shifted = build_filtration(cm, SHIFTED)
    checks = []
    limit = 2 * m + 2
    for r in range(1, limit + 1):
        ph = page_dims(er_page(hodge, r), m)
        ps = er_page(shifted, r + 1)
        ok = True
        detail = ""
        for n in range(2 * m + 1):
            for p in range(n + 1):
                lhs = ph.get((p, n - p), 0)
                slot = ps.get((p + n, -p))
                rhs = slot.dim if slot else 0
                if lhs != rhs:
                    ok = False
                    detail = ("r=%d (p=%d,q=%d): %d vs shifted %d"
                              % (r, p, n - p, lhs, rhs))
        checks.append(Check("decalage_shift_page_%d" % r, ok, detail))
    dec_ok = True
    for n in range(2 * m + 1):
        for p in range(0, n + 2):
            lhs = hodge.level(p, n)
            # Dec of the shifted filtration is its r = 1 cycle space
            rhs = shifted.cycles(1, p + n, n)
            if lhs != rhs:
                dec_ok = False
    checks.append(Check("decalage_subspace_identity", dec_ok))
    return checks
