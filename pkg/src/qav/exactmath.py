"""Exact arithmetic: rationals, a simple number field, integer lattices.

Rationals are :class:`fractions.Fraction`.  Matrices are plain lists of
rows.  Nothing in here ever touches a float.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

from gmpy2 import mpq

__all__ = [
    "NumberField",
    "FieldElement",
    "QQ",
    "field_arith",
    "rank_nullspace",
    "matrix_rank",
    "rref",
    "SmithForm",
    "smith_normal_form",
    "gcd_maximal_minors",
    "hermite_normal_form",
    "saturate_row_lattice",
    "AffineLatticePointSet",
    "enumerate_affine_lattice_points",
    "interior_feasible",
    "solve_affine",
    "ExactMathError",
]


class ExactMathError(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


# --------------------------------------------------------------------------
# number field


def _has_rational_root(c: Sequence[int]) -> bool:
    # c ascending, monic; rational roots of a monic integer poly are integers
    if c[0] == 0:
        return True
    a0 = abs(c[0])
    for d in range(1, a0 + 1):
        if a0 % d:
            continue
        for r in (d, -d):
            if sum(ci * r**i for i, ci in enumerate(c)) == 0:
                return True
    return False


def _splits_into_quadratics(c: Sequence[int]) -> bool:
    # x^4 + c3 x^3 + c2 x^2 + c1 x + c0 = (x^2 + a x + b)(x^2 + e x + d)
    c0, c1, c2, c3 = c[0], c[1], c[2], c[3]
    a0 = abs(c0)
    divisors = [d for d in range(1, a0 + 1) if a0 % d == 0]
    for b in divisors + [-d for d in divisors]:
        d = c0 // b
        if b != d:
            num = c1 - b * c3
            if num % (d - b):
                continue
            a = num // (d - b)
            e = c3 - a
            if b + d + a * e == c2:
                return True
        else:
            if c1 != b * c3:
                continue
            # a + e = c3, a e = c2 - 2b
            p = c2 - 2 * b
            disc = c3 * c3 - 4 * p
            if disc < 0:
                continue
            s = int(disc**0.5)
            while s * s > disc:
                s -= 1
            while (s + 1) * (s + 1) <= disc:
                s += 1
            if s * s == disc and (c3 + s) % 2 == 0:
                return True
    return False


@dataclass(frozen=True)
class NumberField:
    """Q(alpha) for a monic integer minimal polynomial.

    ``minpoly`` lists coefficients from the constant term upward, so
    ``(1, 1, 1)`` is alpha^2 + alpha + 1.  Irreducibility is verified for
    degree at most 4; higher degrees are taken on trust.
    """

    name: str = "a"
    minpoly: tuple[int, ...] = (0, 1)

    def __post_init__(self):
        mp = tuple(int(c) for c in self.minpoly)
        object.__setattr__(self, "minpoly", mp)
        if len(mp) < 2 or mp[-1] != 1:
            raise ExactMathError("minimal polynomial must be monic of degree >= 1")
        k = len(mp) - 1
        if k >= 2 and k <= 4:
            if _has_rational_root(mp) or (k == 4 and _splits_into_quadratics(mp)):
                raise ExactMathError(f"minimal polynomial {mp} is reducible over Q")

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    def __call__(self, coeffs) -> "FieldElement":
        return FieldElement.make(self, coeffs)

    def zero(self) -> "FieldElement":
        return FieldElement(self, (Fraction(0),) * self.degree)

    def one(self) -> "FieldElement":
        return self.from_rational(1)

    def gen(self) -> "FieldElement":
        return self([0, 1])

    def from_rational(self, q) -> "FieldElement":
        return FieldElement(self, (_frac(q),) + (Fraction(0),) * (self.degree - 1))

    def to_json(self) -> dict:
        return {"name": self.name, "minpoly": list(self.minpoly)}


QQ = NumberField("q", (0, 1))


def _reduce_poly(c: list[Fraction], mp: tuple[int, ...]) -> tuple[Fraction, ...]:
    k = len(mp) - 1
    c = list(c)
    for top in range(len(c) - 1, k - 1, -1):
        lead = c[top]
        if lead:
            for i in range(k):
                c[top - k + i] -= lead * mp[i]
        c[top] = Fraction(0)
    c += [Fraction(0)] * (k - len(c))
    return tuple(c[:k])


@dataclass(frozen=True)
class FieldElement:
    field: NumberField
    coeffs: tuple[Fraction, ...]

    @staticmethod
    def make(F: NumberField, coeffs) -> "FieldElement":
        if isinstance(coeffs, (int, Fraction, str)):
            coeffs = [coeffs]
        return FieldElement(F, _reduce_poly([_frac(c) for c in coeffs], F.minpoly))

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ExactMathError("elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        k = self.field.degree
        if k == 1:
            return FieldElement(self.field, (self.coeffs[0] * o.coeffs[0],))
        prod = [Fraction(0)] * (2 * k - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return FieldElement(self.field, _reduce_poly(prod, self.field.minpoly))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self.inverse() ** (-e)
        out, base = self.field.one(), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in number field")
        k = self.field.degree
        if k == 1:
            return FieldElement(self.field, (1 / self.coeffs[0],))
        # columns: self * alpha^j
        cols = []
        power = self.field.one()
        for _ in range(k):
            cols.append((self * power).coeffs)
            power = power * self.field.gen()
        M = [[cols[j][i] for j in range(k)] for i in range(k)]
        rhs = [Fraction(1)] + [Fraction(0)] * (k - 1)
        sol = solve_affine(M, rhs)
        assert sol is not None
        return FieldElement(self.field, tuple(sol[0]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field, self.coeffs))

    def sort_key(self) -> tuple[Fraction, ...]:
        return self.coeffs

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else (self.field.name if i == 1 else f"{self.field.name}^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def field_arith(op: str, a: FieldElement, b: FieldElement | None = None):
    """Dispatch ``op`` in {add, sub, mul, inv, eq} on field elements."""
    if op == "inv":
        return a.inverse()
    if b is None:
        raise ExactMathError(f"operation {op!r} needs two operands")
    if isinstance(b, FieldElement) and b.field != a.field:
        raise ExactMathError("elements of different number fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "eq":
        return a == b
    raise ExactMathError(f"unknown field operation {op!r}")


# --------------------------------------------------------------------------
# linear algebra over a field (Fraction or FieldElement entries)


def _rref(M: list[list]) -> tuple[list[list], list[int]]:
    A = [list(r) for r in M]
    if not A:
        return A, []
    n = len(A[0])
    pivots: list[int] = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, len(A)) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = 1 / A[row][col]
        A[row] = [x * inv for x in A[row]]
        for i in range(len(A)):
            if i != row and A[i][col] != 0:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[row])]
        pivots.append(col)
        row += 1
        if row == len(A):
            break
    return A[:row], pivots


_SCALARS = (Fraction, FieldElement, type(mpq(0)))


def rref(M: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form (zero rows dropped) and the pivot columns."""
    return _rref(_as_field_matrix(M))


def _scalar(x):
    return x if isinstance(x, _SCALARS) else _frac(x)


def _as_field_matrix(M) -> list[list]:
    return [[_scalar(x) for x in r] for r in M]


def rank_nullspace(M: Sequence[Sequence], ncols: int | None = None) -> tuple[int, list[list]]:
    """Rank and a canonical nullspace basis.

    The basis has one vector per free column ``f``: a 1 in position ``f``,
    zeros in the other free positions.  ``ncols`` is needed only when ``M``
    has no rows.
    """
    M = _as_field_matrix(M)
    n = len(M[0]) if M else (ncols or 0)
    R, pivots = _rref(M)
    zero = _zero_like(M)
    one = zero + 1
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for r, p in enumerate(pivots):
            v[p] = -R[r][f]
        basis.append(v)
    return len(pivots), basis


def _multiplication_block(x, k: int) -> list[list]:
    """Matrix of multiplication by ``x`` on the power basis, as mpq entries."""
    if not isinstance(x, FieldElement):
        q = mpq(_frac(x))
        return [[q if i == j else mpq(0) for j in range(k)] for i in range(k)]
    F = x.field
    cols = []
    power = F.one()
    for _ in range(F.degree):
        cols.append((x * power).coeffs)
        power = power * F.gen()
    return [[mpq(cols[j][i]) for j in range(F.degree)] for i in range(F.degree)]


def matrix_rank(M: Sequence[Sequence]) -> int:
    """Exact rank over Q or Q(alpha).

    Field entries are replaced by their k x k multiplication blocks, which
    multiplies the rank by k, and the elimination runs over mpq.
    """
    if not M or not M[0]:
        return 0
    k = next((x.field.degree for r in M for x in r if isinstance(x, FieldElement)), 1)
    rows: list[list] = []
    for r in M:
        blocks = [_multiplication_block(x, k) for x in r]
        for i in range(k):
            rows.append([b[i][j] for b in blocks for j in range(k)])
    rank = 0
    ncols = len(rows[0])
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        inv = 1 / p[col]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col]
            if f != 0:
                f *= inv
                rows[i] = [a - f * b for a, b in zip(rows[i], p)]
        rank += 1
        if rank == len(rows):
            break
    return rank // k


def _zero_like(M):
    for r in M:
        for x in r:
            if isinstance(x, FieldElement):
                return x.field.zero()
            if not isinstance(x, Fraction):
                return x * 0
    return Fraction(0)


def solve_affine(A: Sequence[Sequence], b: Sequence) -> tuple[list, list[list]] | None:
    """Solve ``A x = b``; returns (particular solution, nullspace basis) or None."""
    A = _as_field_matrix(A)
    n = len(A[0]) if A else 0
    aug = [list(r) + [_scalar(b[i])] for i, r in enumerate(A)]
    R, pivots = _rref(aug)
    if pivots and pivots[-1] == n:
        return None
    x = [_zero_like(aug)] * n
    for r, p in enumerate(pivots):
        x[p] = R[r][n]
    _, basis = rank_nullspace(A, n)
    return x, basis


# --------------------------------------------------------------------------
# integer matrices


@dataclass(frozen=True)
class SmithForm:
    """``U * M * V == D`` with ``U``, ``V`` unimodular."""

    divisors: tuple[int, ...]
    gcd_maximal_minors: int
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]
    D: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.divisors)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: Sequence[Sequence[int]]) -> SmithForm:
    """Smith normal form with transforms.

    ``gcd_maximal_minors`` is the product of the nonzero divisors, which is
    the gcd of the nonzero minors of order rank(M); it is 0 for the zero
    matrix.
    """
    A = [[int(x) for x in r] for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in A:
            R[i], R[j] = R[j], R[i]
        for R in V:
            R[i], R[j] = R[j], R[i]

    def add_row(dst, src, f):  # row dst += f * row src
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for R in A:
            R[dst] += f * R[src]
        for R in V:
            R[dst] += f * R[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility of the remaining block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    divisors = tuple(A[i][i] for i in range(min(m, n)) if A[i][i])
    g = reduce(lambda x, y: x * y, divisors, 1) if divisors else 0
    tup = lambda X: tuple(tuple(r) for r in X)
    return SmithForm(divisors, g, tup(U), tup(V), tup(A))


def gcd_maximal_minors(M: Sequence[Sequence[int]]) -> int:
    return smith_normal_form(M).gcd_maximal_minors


def hermite_normal_form(M: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form with zero rows removed.

    Pivots are positive and entries above each pivot are reduced into
    ``[0, pivot)``.  Two integer matrices have the same row lattice iff
    their Hermite forms agree.
    """
    A = [[int(x) for x in r] for r in M if any(r)]
    if not A:
        return []
    n = len(A[0])
    row = 0
    for col in range(n):
        if row == len(A):
            break
        while True:
            nz = [i for i in range(row, len(A)) if A[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][col]))
            A[row], A[p] = A[p], A[row]
            if A[row][col] < 0:
                A[row] = [-x for x in A[row]]
            clean = True
            for i in range(row + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // A[row][col]
                    A[i] = [a - q * b for a, b in zip(A[i], A[row])]
                    if A[i][col]:
                        clean = False
            if clean:
                break
        if row < len(A) and A[row][col]:
            for i in range(row):
                q = A[i][col] // A[row][col]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[row])]
            row += 1
    return [r for r in A[:row] if any(r)]


def saturate_row_lattice(A: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of (rational row span of A) meet Z^r, in Hermite form."""
    sf = smith_normal_form(A)
    k = sf.rank
    if k == 0:
        raise ExactMathError("cannot saturate a rank-zero lattice")
    # A = U^-1 D V^-1, so the row span is spanned by the first k rows of V^-1
    Vinv = _unimodular_inverse([list(r) for r in sf.V])
    return hermite_normal_form(Vinv[:k])


def _unimodular_inverse(V: list[list[int]]) -> list[list[int]]:
    n = len(V)
    F = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(V)]
    R, _ = _rref(F)
    out = []
    for r in R:
        row = r[n:]
        assert all(x.denominator == 1 for x in row)
        out.append([int(x) for x in row])
    return out


def _integer_rows(A: Sequence[Sequence], b: Sequence) -> tuple[list[list[int]], list[int]]:
    """Scale each row of the augmented system ``[A | b]`` to primitive integers."""
    rows, rhs = [], []
    for r, c in zip(A, b):
        vals = [_frac(x) for x in r] + [_frac(c)]
        den = lcm(*(v.denominator for v in vals))
        ints = [int(v * den) for v in vals]
        g = reduce(gcd, ints, 0) or 1
        rows.append([x // g for x in ints[:-1]])
        rhs.append(ints[-1] // g)
    return rows, rhs


# --------------------------------------------------------------------------
# lattice points


@dataclass(frozen=True)
class AffineLatticePointSet:
    """Points x with ``A x = b``, ``x_j`` in ``(1/m_j) Z`` and ``lower < x < upper``.

    Each coordinate bound is strict when ``open_box[j]`` holds, otherwise
    closed.  The default box is the open unit cube.
    """

    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    denominators: tuple[int, ...]
    lower: tuple[Fraction, ...] = ()
    upper: tuple[Fraction, ...] = ()
    open_box: tuple[bool, ...] = ()

    def __post_init__(self):
        n = len(self.denominators)
        object.__setattr__(self, "A", tuple(tuple(_frac(x) for x in r) for r in self.A))
        object.__setattr__(self, "b", tuple(_frac(x) for x in self.b))
        object.__setattr__(self, "denominators", tuple(int(m) for m in self.denominators))
        if not self.lower:
            object.__setattr__(self, "lower", (Fraction(0),) * n)
        if not self.upper:
            object.__setattr__(self, "upper", (Fraction(1),) * n)
        if not self.open_box:
            object.__setattr__(self, "open_box", (True,) * n)
        object.__setattr__(self, "lower", tuple(_frac(x) for x in self.lower))
        object.__setattr__(self, "upper", tuple(_frac(x) for x in self.upper))
        if any(len(r) != n for r in self.A) or len(self.b) != len(self.A):
            raise ExactMathError("system shape does not match the denominator profile")
        if any(m <= 0 for m in self.denominators):
            raise ExactMathError("denominators must be positive")

    def contains(self, x: Sequence[Fraction]) -> bool:
        for j, v in enumerate(x):
            if (v * self.denominators[j]).denominator != 1:
                return False
            lo, hi = self.lower[j], self.upper[j]
            if self.open_box[j]:
                if not lo < v < hi:
                    return False
            elif not lo <= v <= hi:
                return False
        return all(sum(a * v for a, v in zip(r, x)) == c for r, c in zip(self.A, self.b))


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def enumerate_affine_lattice_points(pset: AffineLatticePointSet) -> list[tuple[Fraction, ...]]:
    """All lattice points of ``pset`` in lexicographic order.

    Writes ``x_j = y_j / m_j`` with integer ``y``, parametrizes the integer
    solutions as ``y0 + w H`` where the kernel basis ``H`` is in Hermite form,
    and walks the coordinates of ``w`` one pivot at a time with bounds.
    """
    m = pset.denominators
    n = len(m)
    # integer bounds on y
    ylo, yhi = [], []
    for j in range(n):
        lo, hi = pset.lower[j] * m[j], pset.upper[j] * m[j]
        if pset.open_box[j]:
            a = lo.numerator // lo.denominator + 1
            c = _ceil_div(hi.numerator, hi.denominator) - 1
        else:
            a = _ceil_div(lo.numerator, lo.denominator)
            c = hi.numerator // hi.denominator
        ylo.append(a)
        yhi.append(c)
    if any(a > c for a, c in zip(ylo, yhi)):
        return []
    scaled = [[x / m[j] for j, x in enumerate(r)] for r in pset.A]
    if scaled:
        rows, rhs = _integer_rows(scaled, pset.b)
    else:
        rows, rhs = [], []
    y0, H = _integer_solution(rows, rhs, n)
    if y0 is None:
        return []
    pivots = [next(j for j in range(n) if h[j]) for h in H]
    out: list[tuple[Fraction, ...]] = []

    def ok_coord(y: list[int], j: int) -> bool:
        return ylo[j] <= y[j] <= yhi[j]

    def walk(level: int, y: list[int]):
        if level == len(H):
            if all(ok_coord(y, j) for j in range(n)):
                out.append(tuple(Fraction(y[j], m[j]) for j in range(n)))
            return
        h, p = H[level], pivots[level]
        # coordinates before the next pivot are fixed once this level is chosen
        nxt = pivots[level + 1] if level + 1 < len(H) else n
        piv = h[p]  # positive by Hermite form
        wlo = _ceil_div(ylo[p] - y[p], piv)
        whi = (yhi[p] - y[p]) // piv
        for w in range(wlo, whi + 1):
            y2 = [a + w * c for a, c in zip(y, h)]
            if all(ok_coord(y2, j) for j in range(p, nxt)):
                walk(level + 1, y2)

    if not H:
        if all(ok_coord(y0, j) for j in range(n)):
            out.append(tuple(Fraction(y0[j], m[j]) for j in range(n)))
        return out
    if not all(ok_coord(y0, j) for j in range(pivots[0])):
        return []
    walk(0, list(y0))
    out.sort()
    return out


def _integer_solution(rows: list[list[int]], rhs: list[int], n: int):
    """Integer solutions of ``rows * y = rhs`` as ``(y0, H)`` with H in Hermite form."""
    if not rows:
        return [0] * n, _identity(n)
    sf = smith_normal_form(rows)
    U, V = sf.U, sf.V
    c = [sum(U[i][k] * rhs[k] for k in range(len(rhs))) for i in range(len(rhs))]
    k = sf.rank
    z = [0] * n
    for i in range(k):
        d = sf.D[i][i]
        if c[i] % d:
            return None, []
        z[i] = c[i] // d
    if any(c[i] for i in range(k, len(c))):
        return None, []
    y0 = [sum(V[j][i] * z[i] for i in range(n)) for j in range(n)]
    kernel = [[V[j][i] for j in range(n)] for i in range(k, n)]
    H = hermite_normal_form(kernel)
    # reduce y0 against H so the search starts near the origin
    for h in H:
        p = next(j for j in range(n) if h[j])
        q = y0[p] // h[p]
        if q:
            y0 = [a - q * b for a, b in zip(y0, h)]
    return y0, H


# --------------------------------------------------------------------------
# exact simplex


class _Tableau:
    """Dictionary form: x_B[i] = rhs[i] - sum_j T[i][j] x_N[j]; z = z0 + sum_j c[j] x_N[j]."""

    def __init__(self, A: list[list[Fraction]], b: list[Fraction]):
        self.T = [list(r) for r in A]
        self.rhs = list(b)
        self.N = list(range(len(A[0]) if A else 0))
        self.B = [len(self.N) + i for i in range(len(A))]
        self.c: list[Fraction] = [mpq(0)] * len(self.N)
        self.z0 = mpq(0)

    def pivot(self, r: int, s: int) -> None:
        T, rhs = self.T, self.rhs
        p = T[r][s]
        row = [x / p for x in T[r]]
        row[s] = 1 / p
        rr = rhs[r] / p
        T[r], rhs[r] = row, rr
        for i in range(len(T)):
            f = T[i][s]
            if i != r and f:
                Ti = T[i]
                for j in range(len(row)):
                    Ti[j] -= f * row[j]
                Ti[s] = -f * row[s]
                rhs[i] -= f * rr
        f = self.c[s]
        if f:
            for j in range(len(row)):
                self.c[j] -= f * row[j]
            self.c[s] = -f * row[s]
            self.z0 += f * rr
        self.B[r], self.N[s] = self.N[s], self.B[r]

    def optimize(self) -> None:
        while True:
            cand = [j for j in range(len(self.N)) if self.c[j] > 0]
            if not cand:
                return
            s = min(cand, key=lambda j: self.N[j])
            best = None
            for i in range(len(self.T)):
                if self.T[i][s] > 0:
                    key = (self.rhs[i] / self.T[i][s], self.B[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise ExactMathError("linear program is unbounded")
            self.pivot(best[1], s)

    def set_objective(self, coeffs: dict[int, Fraction]) -> None:
        self.c = [mpq(0)] * len(self.N)
        self.z0 = mpq(0)
        pos = {v: j for j, v in enumerate(self.N)}
        for v, cv in coeffs.items():
            if v in pos:
                self.c[pos[v]] += cv
            else:
                i = self.B.index(v)
                self.z0 += cv * self.rhs[i]
                for j in range(len(self.N)):
                    self.c[j] -= cv * self.T[i][j]


def _simplex_max(A: list[list[Fraction]], b: list[Fraction], c: list[Fraction]):
    """Maximize ``c.x`` subject to ``A x <= b``, ``x >= 0`` (exact, Bland's rule).

    Returns ``(value, x)`` or None when infeasible.
    """
    n = len(c)
    tab = _Tableau([list(r) + [mpq(-1)] for r in A], b)
    aux = n  # column of the phase-one variable
    if b and min(b) < 0:
        tab.set_objective({aux: mpq(-1)})
        tab.pivot(min(range(len(b)), key=lambda i: (b[i], i)), tab.N.index(aux))
        tab.optimize()
        if tab.z0 < 0:
            return None
        if aux in tab.B:
            r = tab.B.index(aux)
            s = next(j for j in range(len(tab.N)) if tab.T[r][j])
            tab.pivot(r, s)
    s = tab.N.index(aux)
    for row in tab.T:
        del row[s]
    del tab.N[s]
    tab.set_objective({v: cv for v, cv in enumerate(c) if cv})
    tab.optimize()
    x = [mpq(0)] * n
    for i, v in enumerate(tab.B):
        if v < n:
            x[v] = tab.rhs[i]
    return tab.z0, x


def interior_feasible(
    A: Sequence[Sequence],
    b: Sequence,
    lower: Sequence | None = None,
    upper: Sequence | None = None,
) -> tuple[bool, tuple[Fraction, ...] | None]:
    """Does ``A x = b`` meet the open box (default the open unit cube)?

    Maximizes the smallest slack ``t`` in ``lower + t <= x <= upper - t``.
    The witness is the optimal point; every slack is at least the optimum.
    """
    A = [[mpq(_scalar(x)) for x in r] for r in A]
    b = [mpq(_scalar(x)) for x in b]
    n = len(A[0]) if A else len(lower or upper or [])
    lo = [mpq(_scalar(x)) for x in lower] if lower is not None else [mpq(0)] * n
    hi = [mpq(_scalar(x)) for x in upper] if upper is not None else [mpq(1)] * n
    sol = solve_affine(A, b) if A else ([mpq(0)] * n, [[mpq(int(i == j)) for j in range(n)] for i in range(n)])
    if sol is None:
        return False, None
    x0, K = sol
    f = len(K)
    # variables: z+ (f), z- (f), t
    rows, rhs = [], []
    for i in range(n):
        coef = [K[k][i] for k in range(f)]
        rows.append([-a for a in coef] + coef + [mpq(1)])
        rhs.append(x0[i] - lo[i])
        rows.append(coef + [-a for a in coef] + [mpq(1)])
        rhs.append(hi[i] - x0[i])
    width = max((h - l for l, h in zip(lo, hi)), default=mpq(1))
    rows.append([mpq(0)] * (2 * f) + [mpq(1)])
    rhs.append(width)
    res = _simplex_max(rows, rhs, [mpq(0)] * (2 * f) + [mpq(1)])
    if res is None or res[0] <= 0:
        return False, None
    z = [res[1][k] - res[1][f + k] for k in range(f)]
    x = tuple(_to_fraction(x0[i] + sum((z[k] * K[k][i] for k in range(f)), mpq(0))) for i in range(n))
    return True, x


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))
