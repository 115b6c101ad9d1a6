"""The bigraded Chevalley-Eilenberg algebra of an almost complex Lie algebra.

Monomials of type (p, q) are pairs of bitmasks (S, T): S picks p holomorphic
generators and T picks q antiholomorphic ones, with the global generator
order  t^1 < ... < t^m < tbar^1 < ... < tbar^m  fixing all wedge signs via
transposition counts.

The differential on degree-one generators is minus the dual of the Lie
bracket; it extends to the whole exterior algebra as a graded derivation and
splits into four components by target bidegree:

    mubar : (p, q) -> (p-1, q+2)      delbar : (p, q) -> (p, q+1)
    partial : (p, q) -> (p+1, q)      mu     : (p, q) -> (p+2, q-1)

d^2 = 0 is equivalent to seven bigraded identities among these blocks, which
``verify_relations`` evaluates as exact matrix equations.  The degree-one
restriction of mu + mubar is (up to the factor -1/4) the dual Nijenhuis
tensor, which drives the integrability classification.
"""

from __future__ import annotations

from itertools import combinations

from .kernel import ONE, ZERO, Scalar
from .linalg import Matrix

MAX_M = 12

MUBAR = "mubar"
DELBAR = "delbar"
PARTIAL = "partial"
MU = "mu"

BIDEGREE = {
    MUBAR: (-1, 2),
    DELBAR: (0, 1),
    PARTIAL: (1, 0),
    MU: (2, -1),
}

CONJUGATE_TAG = {MUBAR: MU, MU: MUBAR, DELBAR: PARTIAL, PARTIAL: DELBAR}

INTEGRABLE = "integrable"
MAXIMALLY_NON_INTEGRABLE = "maximally_non_integrable"
INTERMEDIATE = "intermediate"
NON_INTEGRABLE = "non_integrable"


class BigradedBasis:
    """Ordered monomial bases of every (p, q) slot, 0 <= p, q <= m."""

    def __init__(self, m):
        if not (1 <= m <= MAX_M):
            raise ValueError("m must lie in 1..%d, got %d" % (MAX_M, m))
        self.m = m
        self.slots = {}
        self.index = {}
        for p in range(m + 1):
            s_masks = [_mask(c) for c in combinations(range(m), p)]
            for q in range(m + 1):
                t_masks = [_mask(c) for c in combinations(range(m), q)]
                monos = [(s, t) for s in s_masks for t in t_masks]
                self.slots[(p, q)] = monos
                self.index[(p, q)] = {mono: i for i, mono in enumerate(monos)}

    def dim(self, p, q):
        if 0 <= p <= self.m and 0 <= q <= self.m:
            return len(self.slots[(p, q)])
        return 0

    def monomials(self, p, q):
        return self.slots.get((p, q), [])

    def total_dim(self, n):
        return sum(self.dim(p, n - p) for p in range(self.m + 1))

    def slot_offsets(self, n):
        """[(p, q, offset)] for the slots of total degree n, p increasing."""
        out = []
        off = 0
        for p in range(self.m + 1):
            q = n - p
            if 0 <= q <= self.m:
                out.append((p, q, off))
                off += self.dim(p, q)
        return out


def build_basis(m):
    return BigradedBasis(m)


def _mask(indices):
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def _bits(mask):
    out = []
    i = 0
    while mask >> i:
        if (mask >> i) & 1:
            out.append(i)
        i += 1
    return out


def _inversions(a_mask, b_mask):
    """Number of pairs (a, b) with a in A, b in B and a > b."""
    count = 0
    for b in _bits(b_mask):
        count += bin(a_mask >> (b + 1)).count("1")
    return count


def wedge_monomials(m1, m2):
    """Wedge of two monomials: (sign, monomial) or None when it vanishes."""
    s1, t1 = m1
    s2, t2 = m2
    if s1 & s2 or t1 & t2:
        return None
    p2 = bin(s2).count("1")
    q1 = bin(t1).count("1")
    exp = p2 * q1 + _inversions(s1, s2) + _inversions(t1, t2)
    sign = -1 if exp & 1 else 1
    return sign, (s1 | s2, t1 | t2)


def wedge_forms(f1, f2):
    """Wedge of sparse forms {monomial: Scalar}; bilinear over slots."""
    out = {}
    for m1, c1 in f1.items():
        if not c1:
            continue
        for m2, c2 in f2.items():
            if not c2:
                continue
            res = wedge_monomials(m1, m2)
            if res is None:
                continue
            sign, mono = res
            term = c1 * c2
            if sign < 0:
                term = -term
            prev = out.get(mono)
            out[mono] = term if prev is None else prev + term
    return {mono: c for mono, c in out.items() if c}


def wedge(basis, bidegree1, v1, bidegree2, v2):
    """Wedge of two slot coordinate vectors; returns the target vector.

    The target slot is (p1+p2, q1+q2); if that is out of range the result is
    an empty tuple (the zero vector of an empty slot).
    """
    p1, q1 = bidegree1
    p2, q2 = bidegree2
    pt, qt = p1 + p2, q1 + q2
    if pt > basis.m or qt > basis.m:
        return tuple()
    f1 = {mono: c for mono, c in zip(basis.monomials(p1, q1), v1) if c}
    f2 = {mono: c for mono, c in zip(basis.monomials(p2, q2), v2) if c}
    prod = wedge_forms(f1, f2)
    idx = basis.index[(pt, qt)]
    out = [ZERO] * basis.dim(pt, qt)
    for mono, c in prod.items():
        out[idx[mono]] = c
    return tuple(out)


class ComponentMatrices:
    """The four bidegree blocks of d on every slot, as exact matrices."""

    def __init__(self, basis, blocks):
        self.basis = basis
        self.m = basis.m
        self._blocks = blocks  # {(tag, p, q): Matrix}
        self._totals = {}

    def block(self, tag, p, q):
        """Matrix of the component ``tag`` on slot (p, q).

        Slots or targets outside the (p, q) grid give matrices with zero
        rows/columns so compositions stay well defined.
        """
        key = (tag, p, q)
        got = self._blocks.get(key)
        if got is not None:
            return got
        dp, dq = BIDEGREE[tag]
        rows = self.basis.dim(p + dp, q + dq)
        cols = self.basis.dim(p, q)
        return Matrix.zero(rows, cols)

    def target(self, tag, p, q):
        dp, dq = BIDEGREE[tag]
        return (p + dp, q + dq)

    def total_matrix(self, n):
        """The full differential A^n -> A^{n+1} in slot-block coordinates."""
        if n in self._totals:
            return self._totals[n]
        basis = self.basis
        src = basis.slot_offsets(n)
        tgt = basis.slot_offsets(n + 1)
        tgt_off = {(p, q): off for p, q, off in tgt}
        rows = basis.total_dim(n + 1)
        cols = basis.total_dim(n)
        data = [[ZERO] * cols for _ in range(rows)]
        for p, q, off in src:
            for tag in BIDEGREE:
                tp, tq = self.target(tag, p, q)
                if (tp, tq) not in tgt_off:
                    continue
                blk = self.block(tag, p, q)
                toff = tgt_off[(tp, tq)]
                for i in range(blk.rows):
                    brow = blk.entries[i]
                    drow = data[toff + i]
                    for j in range(blk.cols):
                        if brow[j]:
                            drow[off + j] = brow[j]
        out = Matrix(rows, cols, data)
        self._totals[n] = out
        return out

    def embed_slot(self, p, q, vec):
        """Slot coordinates -> total-degree coordinates."""
        n = p + q
        out = [ZERO] * self.basis.total_dim(n)
        for sp, sq, off in self.basis.slot_offsets(n):
            if (sp, sq) == (p, q):
                for i, v in enumerate(vec):
                    out[off + i] = v
                return tuple(out)
        if vec:
            raise ValueError("slot (%d, %d) not present in degree %d" % (p, q, n))
        return tuple(out)

    def project_slot(self, p, q, vec):
        """Total-degree coordinates -> slot coordinates."""
        n = p + q
        for sp, sq, off in self.basis.slot_offsets(n):
            if (sp, sq) == (p, q):
                return tuple(vec[off:off + self.basis.dim(p, q)])
        return tuple()


def build_differential(csc, basis):
    """Differential from complex structure constants, split into components.

    On the dual generator W^u:  d W^u = - sum_{v<w} c^u_{vw} W^v W^w, and the
    extension to monomials is the graded Leibniz rule.
    """
    m = basis.m
    two_m = 2 * m
    table = csc.table

    # d of each degree-one generator as a sparse 2-form
    d_gen = []
    for u in range(two_m):
        form = {}
        for v in range(two_m):
            for w in range(v + 1, two_m):
                coeff = table[v][w][u]
                if not coeff:
                    continue
                mono, sign = _pair_monomial(m, v, w)
                term = -coeff if sign > 0 else coeff
                prev = form.get(mono)
                form[mono] = term if prev is None else prev + term
        d_gen.append({mo: c for mo, c in form.items() if c})

    blocks = {}
    for (p, q), monos in basis.slots.items():
        cols = {tag: [] for tag in BIDEGREE}
        targets = {tag: basis.index.get((p + dp, q + dq))
                   for tag, (dp, dq) in BIDEGREE.items()}
        for s_mask, t_mask in monos:
            word = [("h", i) for i in _bits(s_mask)] + [("a", i) for i in _bits(t_mask)]
            dmono = {}
            for pos, (kind, i) in enumerate(word):
                gen = i if kind == "h" else m + i
                dg = d_gen[gen]
                if not dg:
                    continue
                left = word[:pos]
                right = word[pos + 1:]
                left_mono = _word_monomial(left)
                right_mono = _word_monomial(right)
                sign = -1 if pos & 1 else 1
                for mono2, c2 in dg.items():
                    r1 = wedge_monomials(left_mono, mono2)
                    if r1 is None:
                        continue
                    sgn1, mono3 = r1
                    r2 = wedge_monomials(mono3, right_mono)
                    if r2 is None:
                        continue
                    sgn2, mono4 = r2
                    term = c2 if sign * sgn1 * sgn2 > 0 else -c2
                    prev = dmono.get(mono4)
                    dmono[mono4] = term if prev is None else prev + term
            for tag in BIDEGREE:
                idx = targets[tag]
                if idx is None:
                    cols[tag].append(tuple())
                    continue
                col = [ZERO] * len(idx)
                for mono4, c in dmono.items():
                    slot_pos = idx.get(mono4)
                    if slot_pos is not None and c:
                        col[slot_pos] = c
                cols[tag].append(tuple(col))
        for tag in BIDEGREE:
            dp, dq = BIDEGREE[tag]
            rows = basis.dim(p + dp, q + dq)
            if rows == 0:
                continue
            blocks[(tag, p, q)] = Matrix.from_columns(
                [list(c) for c in cols[tag]], ambient_rows=rows)
    return ComponentMatrices(basis, blocks)


def _pair_monomial(m, v, w):
    """Monomial for W^v wedge W^w (v < w) and its sign vs canonical order."""
    if w < m:
        return ((1 << v) | (1 << w), 0), 1
    if v < m:
        return ((1 << v), (1 << (w - m))), 1
    return (0, (1 << (v - m)) | (1 << (w - m))), 1


def _word_monomial(word):
    s = 0
    t = 0
    for kind, i in word:
        if kind == "h":
            s |= 1 << i
        else:
            t |= 1 << i
    return (s, t)


RELATIONS = (
    ("mu^2", ((MU, MU),)),
    ("mu.partial + partial.mu", ((MU, PARTIAL), (PARTIAL, MU))),
    ("mu.delbar + delbar.mu + partial^2",
     ((MU, DELBAR), (DELBAR, MU), (PARTIAL, PARTIAL))),
    ("mu.mubar + partial.delbar + delbar.partial + mubar.mu",
     ((MU, MUBAR), (PARTIAL, DELBAR), (DELBAR, PARTIAL), (MUBAR, MU))),
    ("mubar.partial + partial.mubar + delbar^2",
     ((MUBAR, PARTIAL), (PARTIAL, MUBAR), (DELBAR, DELBAR))),
    ("mubar.delbar + delbar.mubar", ((MUBAR, DELBAR), (DELBAR, MUBAR))),
    ("mubar^2", ((MUBAR, MUBAR),)),
)


def verify_relations(cm):
    """Evaluate the seven d^2 = 0 identities blockwise.

    Returns a list of (identity name, (p, q), passed); any failure signals a
    bug upstream since the Jacobi identity forces d^2 = 0.
    """
    basis = cm.basis
    report = []
    for name, terms in RELATIONS:
        for (p, q) in sorted(basis.slots):
            if basis.dim(p, q) == 0:
                continue
            total = None
            for outer, inner in terms:
                first = cm.block(inner, p, q)
                ip, iq = cm.target(inner, p, q)
                second = cm.block(outer, ip, iq)
                prod = second @ first
                total = prod if total is None else total + prod
            report.append((name, (p, q), total.is_zero()))
    return report


def relations_ok(cm):
    return all(ok for _, _, ok in verify_relations(cm))


def nijenhuis_operator(cm):
    """Degree-one restriction of mu + mubar as one block matrix.

    Its rank equals the rank of the Nijenhuis tensor: the two blocks are
    mubar on (1,0) -> (0,2) and mu on (0,1) -> (2,0).
    """
    a = cm.block(MUBAR, 1, 0)
    b = cm.block(MU, 0, 1)
    rows = a.rows + b.rows
    cols = a.cols + b.cols
    data = [[ZERO] * cols for _ in range(rows)]
    for i in range(a.rows):
        for j in range(a.cols):
            data[i][j] = a.entries[i][j]
    for i in range(b.rows):
        for j in range(b.cols):
            data[a.rows + i][a.cols + j] = b.entries[i][j]
    return Matrix(rows, cols, data)


def is_integrable(cm):
    basis = cm.basis
    return all(cm.block(MUBAR, p, q).is_zero() for (p, q) in basis.slots)


def classify(cm):
    """Integrability class of the structure.

    For m in {2, 3} the maximally non-integrable condition is decided by the
    rank conditions on mubar in degree one (and two for m = 2); for other m
    only integrable / non_integrable is reported.
    """
    m = cm.m
    if is_integrable(cm):
        return INTEGRABLE
    if m == 2:
        surj = cm.block(MUBAR, 1, 0).rank() == cm.basis.dim(0, 2)
        inj = cm.block(MUBAR, 2, 0).rank() == cm.basis.dim(2, 0)
        return MAXIMALLY_NON_INTEGRABLE if (surj and inj) else INTERMEDIATE
    if m == 3:
        iso = cm.block(MUBAR, 1, 0).rank() == 3
        return MAXIMALLY_NON_INTEGRABLE if iso else INTERMEDIATE
    return NON_INTEGRABLE


def conjugation_matrix(basis, p, q):
    """Signed permutation (p, q) -> (q, p) induced by conjugating monomials.

    conj(t^S tbar^T) = (-1)^{pq} t^T tbar^S on monomials; applying it to a
    coordinate vector additionally conjugates the coefficients (see
    ``conjugate_vector``).
    """
    src = basis.monomials(p, q)
    idx = basis.index[(q, p)]
    sign = -ONE if (p * q) & 1 else ONE
    cols = []
    for s_mask, t_mask in src:
        col = [ZERO] * basis.dim(q, p)
        col[idx[(t_mask, s_mask)]] = sign
        cols.append(col)
    return Matrix.from_columns(cols, ambient_rows=basis.dim(q, p)) if cols \
        else Matrix.zero(basis.dim(q, p), 0)


def conjugate_vector(basis, p, q, vec):
    """Coordinates of the conjugate form, in slot (q, p)."""
    mat = conjugation_matrix(basis, p, q)
    return mat.apply([v.conj() for v in vec])
