"""
Exact integer and rational linear algebra.

Integer matrices are numpy arrays of dtype=object holding Python ints, so
entries never overflow. Rational work uses fractions.Fraction; ranks over the
rationals go through sympy's DomainMatrix. Nothing in this module uses
floating point.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from toric.errors import DimensionMismatchError

IntMatrix = np.ndarray
RationalVector = Tuple[Fraction, ...]
Constraint = Tuple[Sequence, object]


def int_matrix(rows: Iterable[Iterable[int]], cols: Optional[int] = None) -> IntMatrix:
    """
    Build an exact integer matrix.

    Args:
        rows: Row-major entries
        cols: Column count, required only when rows is empty

    Returns:
        Read-only object-dtype array of Python ints
    """
    data = [[int(x) for x in row] for row in rows]
    if not data:
        M = np.zeros((0, cols or 0), dtype=object)
    else:
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise DimensionMismatchError("Ragged rows in integer matrix")
        M = np.empty((len(data), width), dtype=object)
        for i, row in enumerate(data):
            for j, x in enumerate(row):
                M[i, j] = x
    M.flags.writeable = False
    return M


def identity(n: int) -> IntMatrix:
    """The n x n identity matrix."""
    return int_matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)


def to_rows(M: IntMatrix) -> List[Tuple[int, ...]]:
    """Row tuples of a matrix, as plain Python ints."""
    return [tuple(int(x) for x in row) for row in M]


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    """Exact matrix product."""
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatchError(f"Cannot multiply {A.shape} by {B.shape}")
    return int_matrix(
        [[sum(A[i, k] * B[k, j] for k in range(A.shape[1])) for j in range(B.shape[1])]
         for i in range(A.shape[0])],
        cols=B.shape[1],
    )


def dot(u: Sequence, v: Sequence):
    """Exact inner product of two equal-length sequences."""
    if len(u) != len(v):
        raise DimensionMismatchError(f"Vectors of length {len(u)} and {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def determinant(A: IntMatrix) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    n = A.shape[0]
    if A.shape[1] != n:
        raise DimensionMismatchError(f"Determinant of non-square {A.shape} matrix")
    if n == 0:
        return 1
    M = [[int(x) for x in row] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SNFDecomposition:
    """
    Smith normal form A = U @ S @ V.

    U and V are unimodular; their inverses are carried along because they are
    needed for cokernel coordinates (U_inv) and kernel bases (V_inv).
    """
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        k = min(self.S.shape)
        return tuple(int(self.S[i, i]) for i in range(k))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d != 0)


def smith_normal_form(A: IntMatrix) -> SNFDecomposition:
    """
    Smith normal form with tracked unimodular transforms.

    Pivots are chosen as the smallest nonzero absolute value in the remaining
    submatrix, ties broken by row-major position, so the output is
    deterministic.

    Args:
        A: Integer matrix

    Returns:
        SNFDecomposition with U @ S @ V == A and S[i, i] | S[i+1, i+1]
    """
    rows, cols = A.shape
    S = np.array(A, dtype=object)
    U = np.array(identity(rows), dtype=object)
    U_inv = np.array(identity(rows), dtype=object)
    V = np.array(identity(cols), dtype=object)
    V_inv = np.array(identity(cols), dtype=object)

    # Row operations act on S and U_inv from the left, and on U from the
    # right by the inverse; column operations mirror this with V_inv and V.
    def swap_rows(i, j):
        S[[i, j]] = S[[j, i]]
        U_inv[[i, j]] = U_inv[[j, i]]
        U[:, [i, j]] = U[:, [j, i]]

    def add_row(i, j, k):
        S[i] += k * S[j]
        U_inv[i] += k * U_inv[j]
        U[:, j] -= k * U[:, i]

    def negate_row(i):
        S[i] = -S[i]
        U_inv[i] = -U_inv[i]
        U[:, i] = -U[:, i]

    def swap_cols(i, j):
        S[:, [i, j]] = S[:, [j, i]]
        V_inv[:, [i, j]] = V_inv[:, [j, i]]
        V[[i, j]] = V[[j, i]]

    def add_col(i, j, k):
        S[:, i] += k * S[:, j]
        V_inv[:, i] += k * V_inv[:, j]
        V[j] -= k * V[i]

    def find_pivot(t):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = S[i, j]
                if v != 0 and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        return best

    t = 0
    while t < min(rows, cols):
        pivot = find_pivot(t)
        if pivot is None:
            break
        while True:
            _, pi, pj = pivot
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)

            for i in range(t + 1, rows):
                q = S[i, t] // S[t, t]
                if q:
                    add_row(i, t, -q)
            for j in range(t + 1, cols):
                q = S[t, j] // S[t, t]
                if q:
                    add_col(j, t, -q)

            leftover = any(S[i, t] != 0 for i in range(t + 1, rows)) or \
                any(S[t, j] != 0 for j in range(t + 1, cols))
            if not leftover:
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if S[i, j] % S[t, t] != 0), None)
                if bad is None:
                    break
                # Pull a non-divisible entry into the pivot row.
                add_row(t, bad[0], 1)
            pivot = find_pivot(t)

        if S[t, t] < 0:
            negate_row(t)
        t += 1

    for M in (S, U, U_inv, V, V_inv):
        M.flags.writeable = False
    return SNFDecomposition(U=U, S=S, V=V, U_inv=U_inv, V_inv=V_inv)


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """
    Basis of the saturated integer kernel {x : A x = 0}.

    Args:
        A: Integer matrix with c columns

    Returns:
        c x k matrix whose columns form a Z-basis of the kernel
    """
    rows, cols = A.shape
    if cols == 0:
        return int_matrix([], cols=0)
    if rows == 0:
        return identity(cols)
    snf = smith_normal_form(A)
    k = snf.rank
    return int_matrix([[snf.V_inv[i, j] for j in range(k, cols)] for i in range(cols)], cols=cols - k)


def rational_rank(rows: Sequence[Sequence[int]], cols: int) -> int:
    """Rank over the rationals of an integer matrix given as rows."""
    if not rows or cols == 0:
        return 0
    dm = DomainMatrix([[QQ(int(x)) for x in row] for row in rows], (len(rows), cols), QQ)
    return dm.rank()


def solve_rational(B: Sequence[Sequence], rhs: Sequence) -> Optional[RationalVector]:
    """
    Solve the square system B x = rhs exactly.

    Returns:
        The unique solution, or None if B is singular
    """
    n = len(B)
    if len(rhs) != n:
        raise DimensionMismatchError("Right-hand side length differs from system size")
    M = [[Fraction(x) for x in row] + [Fraction(r)] for row, r in zip(B, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if M[i][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
    return tuple(M[i][n] for i in range(n))


def rational_inverse(B: Sequence[Sequence]) -> Optional[List[List[Fraction]]]:
    """Exact inverse of a square matrix, or None if singular."""
    n = len(B)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(B)]
    for col in range(n):
        piv = next((i for i in range(col, n) if M[i][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
    return [row[n:] for row in M]


# =============================================================================
# FOURIER-MOTZKIN FEASIBILITY
# =============================================================================

def _normalize(coeffs: Tuple[Fraction, ...], bound: Fraction, strict: bool):
    """Scale so the first nonzero coefficient has absolute value 1."""
    lead = next((c for c in coeffs if c != 0), None)
    if lead is None:
        return coeffs, bound, strict
    scale = abs(lead)
    return tuple(c / scale for c in coeffs), bound / scale, strict


def _reduce_system(system):
    """
    Drop constant constraints and keep the tightest bound per normal.

    Returns:
        Reduced list of constraints, or None if a constant constraint fails
    """
    tightest = {}
    for coeffs, bound, strict in system:
        if all(c == 0 for c in coeffs):
            if (strict and not 0 > bound) or (not strict and not 0 >= bound):
                return None
            continue
        coeffs, bound, strict = _normalize(coeffs, bound, strict)
        seen = tightest.get(coeffs)
        if seen is None or bound > seen[0] or (bound == seen[0] and strict and not seen[1]):
            tightest[coeffs] = (bound, strict)
    return [(coeffs, bound, strict) for coeffs, (bound, strict) in sorted(tightest.items())]


def _eliminate(system, k: int):
    """Eliminate variable k from a system of (coeffs, bound, strict)."""
    lower = [c for c in system if c[0][k] > 0]
    upper = [c for c in system if c[0][k] < 0]
    result = [c for c in system if c[0][k] == 0]
    for lc, lb, ls in lower:
        for uc, ub, us in upper:
            a, b = -uc[k], lc[k]
            coeffs = tuple(a * x + b * y for x, y in zip(lc, uc))
            result.append((coeffs, a * lb + b * ub, ls or us))
    return _reduce_system(result)


def _pick_value(lo, lo_strict, hi, hi_strict) -> Fraction:
    """A deterministic value inside an interval with optional open ends."""
    zero = Fraction(0)
    ok_lo = lo is None or (zero > lo if lo_strict else zero >= lo)
    ok_hi = hi is None or (zero < hi if hi_strict else zero <= hi)
    if ok_lo and ok_hi:
        return zero
    if lo is not None and hi is not None:
        if not lo_strict:
            return lo
        if not hi_strict:
            return hi
        return (lo + hi) / 2
    if lo is not None:
        return lo if not lo_strict else lo + 1
    return hi if not hi_strict else hi - 1


def rational_feasible(weak: Sequence[Constraint], strict: Sequence[Constraint],
                      dim: Optional[int] = None) -> Optional[RationalVector]:
    """
    Find a rational point satisfying linear constraints, or report infeasible.

    Each constraint is (normal, bound): weak ones mean <x, normal> >= bound,
    strict ones mean <x, normal> > bound. Variables are eliminated in
    ascending index order and the point is recovered by back-substitution.

    Args:
        weak: Non-strict constraints
        strict: Strict constraints
        dim: Dimension, needed only when there are no constraints

    Returns:
        A feasible point, or None if the system is infeasible
    """
    normals = [n for n, _ in weak] + [n for n, _ in strict]
    if normals:
        dim = len(normals[0]) if dim is None else dim
        if any(len(n) != dim for n in normals):
            raise DimensionMismatchError("Constraints of differing dimension")
    elif dim is None:
        dim = 0

    system = [(tuple(Fraction(x) for x in n), Fraction(b), False) for n, b in weak]
    system += [(tuple(Fraction(x) for x in n), Fraction(b), True) for n, b in strict]
    system = _reduce_system(system)
    if system is None:
        return None

    stages = []
    for k in range(dim):
        stages.append(system)
        system = _eliminate(system, k)
        if system is None:
            return None

    point = [Fraction(0)] * dim
    for k in reversed(range(dim)):
        lo = hi = None
        lo_strict = hi_strict = False
        for coeffs, bound, is_strict in stages[k]:
            a = coeffs[k]
            if a == 0:
                continue
            rest = sum(c * x for c, x in zip(coeffs[k + 1:], point[k + 1:]))
            value = (bound - rest) / a
            if a > 0:
                if lo is None or value > lo or (value == lo and is_strict):
                    lo, lo_strict = value, is_strict
            else:
                if hi is None or value < hi or (value == hi and is_strict):
                    hi, hi_strict = value, is_strict
        point[k] = _pick_value(lo, lo_strict, hi, hi_strict)
    return tuple(point)
