# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arithmetic kernel: Gaussian rationals and dense elimination.

Same API and semantics as ``_kernel_py`` (the scalars still hold arbitrary
precision Python integers); the win is removing interpreter overhead from
the elimination and product inner loops.
"""

from fractions import Fraction
from math import gcd as _gcd

BACKEND_NAME = "cython"


cdef class Scalar:
    """An element of Q(i), stored in lowest terms with positive denominator."""

    cdef readonly object xn
    cdef readonly object yn
    cdef readonly object dn

    def __init__(self, xn=0, yn=0, dn=1):
        if dn == 0:
            raise ZeroDivisionError("scalar denominator is zero")
        if dn < 0:
            xn, yn, dn = -xn, -yn, -dn
        g = _gcd(_gcd(xn, yn), dn)
        if g > 1:
            xn //= g
            yn //= g
            dn //= g
        self.xn = xn
        self.yn = yn
        self.dn = dn

    @classmethod
    def from_rational(cls, re, im=0):
        """Build a scalar from two Fractions (or ints)."""
        re = Fraction(re)
        im = Fraction(im)
        dn = re.denominator * im.denominator // _gcd(re.denominator, im.denominator)
        return _make(re.numerator * (dn // re.denominator),
                     im.numerator * (dn // im.denominator), dn)

    @property
    def re(self):
        return Fraction(self.xn, self.dn)

    @property
    def im(self):
        return Fraction(self.yn, self.dn)

    def is_zero(self):
        return self.xn == 0 and self.yn == 0

    def __bool__(self):
        return self.xn != 0 or self.yn != 0

    def conj(self):
        return _make_raw(self.xn, -self.yn, self.dn)

    def abs_sq(self):
        """|s|^2 as a Fraction (always >= 0, zero iff s == 0)."""
        return Fraction(self.xn * self.xn + self.yn * self.yn, self.dn * self.dn)

    def __add__(self, other):
        cdef Scalar a = _lift(self)
        cdef Scalar b = _lift(other)
        if a is None or b is None:
            return NotImplemented
        return _add(a, b)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        cdef Scalar a = _lift(self)
        cdef Scalar b = _lift(other)
        if a is None or b is None:
            return NotImplemented
        return _sub(a, b)

    def __rsub__(self, other):
        cdef Scalar a = _lift(other)
        if a is None:
            return NotImplemented
        return _sub(a, self)

    def __mul__(self, other):
        cdef Scalar a = _lift(self)
        cdef Scalar b = _lift(other)
        if a is None or b is None:
            return NotImplemented
        return _mul(a, b)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        cdef Scalar a = _lift(self)
        cdef Scalar b = _lift(other)
        if a is None or b is None:
            return NotImplemented
        return _mul(a, _inv(b))

    def __rtruediv__(self, other):
        cdef Scalar a = _lift(other)
        if a is None:
            return NotImplemented
        return _mul(a, _inv(self))

    def __neg__(self):
        return _make_raw(-self.xn, -self.yn, self.dn)

    def __eq__(self, other):
        cdef Scalar b = _lift(other)
        if b is None:
            return NotImplemented
        return self.xn == b.xn and self.yn == b.yn and self.dn == b.dn

    def __hash__(self):
        if self.yn == 0:
            return hash(Fraction(self.xn, self.dn))
        return hash((self.xn, self.yn, self.dn))

    def __repr__(self):
        return "Scalar(%r)" % (str(self),)

    def __str__(self):
        return _scalar_str(self.xn, self.yn, self.dn)


cdef inline Scalar _make_raw(object xn, object yn, object dn):
    # caller guarantees dn > 0 and gcd-normalised inputs
    cdef Scalar s = Scalar.__new__(Scalar)
    s.xn = xn
    s.yn = yn
    s.dn = dn
    return s


cdef inline Scalar _make(object xn, object yn, object dn):
    if dn < 0:
        xn = -xn
        yn = -yn
        dn = -dn
    g = _gcd(_gcd(xn, yn), dn)
    if g > 1:
        xn //= g
        yn //= g
        dn //= g
    cdef Scalar s = Scalar.__new__(Scalar)
    s.xn = xn
    s.yn = yn
    s.dn = dn
    return s


cdef inline Scalar _lift(object value):
    if type(value) is Scalar:
        return <Scalar>value
    if isinstance(value, int):
        return _make_raw(value, 0, 1)
    if isinstance(value, Scalar):
        return <Scalar>value
    return None


cdef inline Scalar _add(Scalar a, Scalar b):
    return _make(a.xn * b.dn + b.xn * a.dn, a.yn * b.dn + b.yn * a.dn, a.dn * b.dn)


cdef inline Scalar _sub(Scalar a, Scalar b):
    return _make(a.xn * b.dn - b.xn * a.dn, a.yn * b.dn - b.yn * a.dn, a.dn * b.dn)


cdef inline Scalar _mul(Scalar a, Scalar b):
    return _make(a.xn * b.xn - a.yn * b.yn, a.xn * b.yn + a.yn * b.xn, a.dn * b.dn)


cdef inline Scalar _inv(Scalar a):
    n = a.xn * a.xn + a.yn * a.yn
    if n == 0:
        raise ZeroDivisionError("inverse of zero scalar")
    return _make(a.dn * a.xn, -a.dn * a.yn, n)


cdef inline bint _nonzero(Scalar a):
    return a.xn != 0 or a.yn != 0


def _scalar_str(xn, yn, dn):
    from acdol._kernel_py import _scalar_str as impl
    return impl(xn, yn, dn)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def rref(rows, Py_ssize_t ncols):
    """Reduced row echelon form by exact fraction-free elimination.

    Same contract and algorithm as the pure-Python kernel: denominators are
    cleared per row, the forward pass is one-step fraction-free (every
    update divides exactly by the previous pivot), and the echelon rows are
    back-reduced rationally.  Returns the unique reduced row echelon form
    with leading ones as ``(new_rows, pivot_columns)``.
    """
    cdef list mx = []   # real parts per row (Gaussian integers)
    cdef list my = []   # imaginary parts per row
    cdef list rowx, rowy, tgx, tgy
    cdef Scalar e, piv, inv, f
    cdef Py_ssize_t nrows, r, c, i, j, pr, k, pc
    cdef long best, size
    for row_obj in rows:
        den = 1
        for e_obj in row_obj:
            e = <Scalar>e_obj
            den = den * e.dn // _gcd(den, e.dn)
        rowx = []
        rowy = []
        for e_obj in row_obj:
            e = <Scalar>e_obj
            scale = den // e.dn
            rowx.append(e.xn * scale)
            rowy.append(e.yn * scale)
        mx.append(rowx)
        my.append(rowy)
    nrows = len(mx)
    cdef list pivots = []
    r = 0
    prev_x = 1
    prev_y = 0
    prev_n = 1
    for c in range(ncols):
        pr = -1
        best = -1
        for i in range(r, nrows):
            x = (<list>mx[i])[c]
            y = (<list>my[i])[c]
            if x or y:
                size = <long>((abs(x) + abs(y)).bit_length())
                if pr < 0 or size < best:
                    pr = i
                    best = size
        if pr < 0:
            continue
        if pr != r:
            mx[pr], mx[r] = mx[r], mx[pr]
            my[pr], my[r] = my[r], my[pr]
        rowx = <list>mx[r]
        rowy = <list>my[r]
        px = rowx[c]
        py = rowy[c]
        trivial_prev = (prev_x == 1 and prev_y == 0)
        for i in range(r + 1, nrows):
            tgx = <list>mx[i]
            tgy = <list>my[i]
            fx = tgx[c]
            fy = tgy[c]
            for j in range(c + 1, ncols):
                ax = tgx[j]
                ay = tgy[j]
                bx = rowx[j]
                by = rowy[j]
                nx = px * ax - py * ay - (fx * bx - fy * by)
                ny = px * ay + py * ax - (fx * by + fy * bx)
                if not trivial_prev:
                    tx = nx * prev_x + ny * prev_y
                    ty = ny * prev_x - nx * prev_y
                    nx, rem1 = divmod(tx, prev_n)
                    ny, rem2 = divmod(ty, prev_n)
                    if rem1 or rem2:
                        raise ArithmeticError("fraction-free division failed")
                tgx[j] = nx
                tgy[j] = ny
            tgx[c] = 0
            tgy[c] = 0
        prev_x = px
        prev_y = py
        prev_n = px * px + py * py
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    # rational back-reduction of the echelon rows
    cdef list out = []
    for i in range(nrows):
        rowx = <list>mx[i]
        rowy = <list>my[i]
        out.append([_make(rowx[j], rowy[j], 1) for j in range(ncols)])
    cdef list orow, otgt
    for k in range(len(pivots) - 1, -1, -1):
        orow = <list>out[k]
        pc = <Py_ssize_t>pivots[k]
        inv = _inv(<Scalar>orow[pc])
        for j in range(pc, ncols):
            e = <Scalar>orow[j]
            if _nonzero(e):
                orow[j] = _mul(e, inv)
        for i in range(k):
            otgt = <list>out[i]
            f = <Scalar>otgt[pc]
            if not _nonzero(f):
                continue
            for j in range(pc, ncols):
                e = <Scalar>orow[j]
                if _nonzero(e):
                    otgt[j] = _sub(<Scalar>otgt[j], _mul(f, e))
    return out, pivots


def matmul(a_rows, b_rows, Py_ssize_t bcols):
    """Product of dense Scalar matrices given as lists of row lists."""
    cdef list out = []
    cdef list acc, arow, brow
    cdef Py_ssize_t k, j, ncols_a
    cdef Scalar aik, bkj
    for arow_obj in a_rows:
        arow = <list>arow_obj if type(arow_obj) is list else list(arow_obj)
        acc = [ZERO] * bcols
        ncols_a = len(arow)
        for k in range(ncols_a):
            aik = <Scalar>arow[k]
            if not _nonzero(aik):
                continue
            brow_obj = b_rows[k]
            brow = <list>brow_obj if type(brow_obj) is list else list(brow_obj)
            for j in range(bcols):
                bkj = <Scalar>brow[j]
                if _nonzero(bkj):
                    acc[j] = _add(<Scalar>acc[j], _mul(aik, bkj))
        out.append(acc)
    return out
