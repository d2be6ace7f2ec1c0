# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: tridiagonal LU with a constant off-diagonal and the
two-sided geometric sweep used by the resolvent quadrature."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef double complex cplx

cdef extern from "complex.h" nogil:
    double cabs(double complex)


cdef class TridiagonalFactor:
    """LU factors of a complex symmetric tridiagonal matrix, no pivoting.

    The matrix has diagonal ``diag`` and every off-diagonal entry equal to
    ``off``.  Solves with the matrix and with its adjoint reuse the factors.
    """
    cdef cplx[::1] inv_pivot
    cdef cplx[::1] mult
    cdef cplx off
    cdef readonly Py_ssize_t n

    def __init__(self, diag, cplx off):
        cdef cplx[::1] d = np.ascontiguousarray(diag, dtype=np.complex128)
        cdef Py_ssize_t n = d.shape[0], i
        cdef cplx p
        self.n = n
        self.off = off
        self.inv_pivot = np.empty(n, dtype=np.complex128)
        self.mult = np.zeros(n, dtype=np.complex128)
        p = d[0]
        for i in range(n):
            if i > 0:
                self.mult[i] = off / p
                p = d[i] - self.mult[i] * off
            if cabs(p) == 0.0:
                raise ZeroDivisionError("zero pivot in tridiagonal factorization")
            self.inv_pivot[i] = 1.0 / p

    cdef void _solve(self, cplx[::1] xv, bint adjoint) nogil:
        # real arithmetic on raw pointers keeps the recurrences free of the
        # NaN-recovery calls C99 complex multiplication would insert
        cdef Py_ssize_t i, n = self.n
        if n == 0:
            return
        cdef double* x = <double*> &xv[0]
        cdef const double* m = <const double*> &self.mult[0]
        cdef const double* p = <const double*> &self.inv_pivot[0]
        cdef double s = -1.0 if adjoint else 1.0
        cdef double o_re = self.off.real, o_im = s * self.off.imag
        cdef double a, b, c, d, xr, xi
        for i in range(1, n):
            c = m[2 * i]
            d = s * m[2 * i + 1]
            a = x[2 * i - 2]
            b = x[2 * i - 1]
            x[2 * i] -= c * a - d * b
            x[2 * i + 1] -= c * b + d * a
        for i in range(n - 1, -1, -1):
            xr = x[2 * i]
            xi = x[2 * i + 1]
            if i < n - 1:
                a = x[2 * i + 2]
                b = x[2 * i + 3]
                xr -= o_re * a - o_im * b
                xi -= o_re * b + o_im * a
            c = p[2 * i]
            d = s * p[2 * i + 1]
            x[2 * i] = c * xr - d * xi
            x[2 * i + 1] = c * xi + d * xr

    def solve(self, rhs):
        cdef cplx[::1] x = np.array(rhs, dtype=np.complex128, copy=True)
        with nogil:
            self._solve(x, False)
        return np.asarray(x)

    def solve_adjoint(self, rhs):
        cdef cplx[::1] x = np.array(rhs, dtype=np.complex128, copy=True)
        with nogil:
            self._solve(x, True)
        return np.asarray(x)

    def apply_gram_inverse(self, rhs):
        """Return ``(B^H B)^{-1} rhs``."""
        cdef cplx[::1] x = np.array(rhs, dtype=np.complex128, copy=True)
        with nogil:
            self._solve(x, True)
            self._solve(x, False)
        return np.asarray(x)


def decay_sweep(cplx ratio, g):
    """Return ``c[i] = sum_j ratio**|i - j| * g[j]`` in two linear passes."""
    cdef cplx[::1] gv = np.ascontiguousarray(g, dtype=np.complex128)
    cdef Py_ssize_t n = gv.shape[0], i
    out_arr = np.empty(n, dtype=np.complex128)
    cdef cplx[::1] out = out_arr
    if n == 0:
        return out_arr
    cdef double* o = <double*> &out[0]
    cdef const double* gp = <const double*> &gv[0]
    cdef double rr = ratio.real, ri = ratio.imag, ar = 0, ai = 0, t
    with nogil:
        for i in range(n):
            t = rr * ar - ri * ai + gp[2 * i]
            ai = rr * ai + ri * ar + gp[2 * i + 1]
            ar = t
            o[2 * i] = ar
            o[2 * i + 1] = ai
        ar = 0
        ai = 0
        for i in range(n - 1, -1, -1):
            t = rr * ar - ri * ai + gp[2 * i]
            ai = rr * ai + ri * ar + gp[2 * i + 1]
            ar = t
            o[2 * i] += ar - gp[2 * i]
            o[2 * i + 1] += ai - gp[2 * i + 1]
    return out_arr
