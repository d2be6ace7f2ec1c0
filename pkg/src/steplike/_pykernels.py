"""Pure numpy/scipy versions of the compiled kernels (same interface)."""
import numpy as np
from scipy.linalg import lapack, lu_factor, lu_solve
from scipy.signal import lfilter


class TridiagonalFactor:
    """LU factors (LAPACK gttrf, partial pivoting) of a symmetric tridiagonal matrix."""

    def __init__(self, diag, off):
        d = np.ascontiguousarray(diag, dtype=np.complex128)
        self.n = d.shape[0]
        sub = np.full(self.n - 1, off, dtype=np.complex128)
        if self.n < 3:
            # the gttrf wrapper rejects n < 3; a dense LU is exact here
            a = np.diag(d) + np.diag(sub, 1) + np.diag(sub, -1)
            if self.n == 0 or abs(np.linalg.det(a)) == 0:
                raise ZeroDivisionError("singular tridiagonal matrix")
            self._dense = lu_factor(a)
            return
        self._dense = None
        dl, dd, du, du2, ipiv, info = lapack.zgttrf(sub, d.copy(), sub.copy())
        if info != 0:
            raise ZeroDivisionError("zero pivot in tridiagonal factorization")
        self._lu = (dl, dd, du, du2, ipiv)

    def _solve(self, rhs, trans):
        b = np.array(rhs, dtype=np.complex128, copy=True)
        if self._dense is not None:
            return lu_solve(self._dense, b, trans=0 if trans == "N" else 2)
        x, info = lapack.zgttrs(*self._lu, b, trans=trans)
        return x

    def solve(self, rhs):
        return self._solve(rhs, "N")

    def solve_adjoint(self, rhs):
        return self._solve(rhs, "C")

    def apply_gram_inverse(self, rhs):
        return self.solve(self.solve_adjoint(rhs))


def decay_sweep(ratio, g):
    """Return ``c[i] = sum_j ratio**|i - j| * g[j]`` via two IIR filter passes."""
    g = np.ascontiguousarray(g, dtype=np.complex128)
    if g.size == 0:
        return g.copy()
    ratio = complex(ratio)
    forward = lfilter([1.0], [1.0, -ratio], g)
    backward = lfilter([1.0], [1.0, -ratio], g[::-1])[::-1]
    return forward + backward - g
