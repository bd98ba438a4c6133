"""Exact linear algebra over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction` (ints are accepted
on input).  Nothing here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = list[list[Fraction]]


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(x)


def as_matrix(rows) -> Matrix:
    return [[frac(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int | None = None) -> Matrix:
    return [[Fraction(0)] * (r if c is None else c) for _ in range(r)]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def schur(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return [[x * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale_diag(a: Sequence[Sequence], d: Sequence, side: str = "right") -> Matrix:
    if side == "right":
        return [[x * d[j] for j, x in enumerate(row)] for row in a]
    return [[d[i] * x for x in row] for i, row in enumerate(a)]


def quadratic_form(m: Sequence[Sequence], w: Sequence) -> Fraction:
    return sum(
        (w[i] * m[i][j] * w[j] for i in range(len(w)) if w[i] for j in range(len(w)) if w[j]),
        Fraction(0),
    )


def flatten(a: Sequence[Sequence]) -> list[Fraction]:
    return [x for row in a for x in row]


def _integer_rows(m: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in m:
        row = [frac(x) for x in row]
        d = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * d) for x in row])
    return out


def rank(m: Sequence[Sequence]) -> int:
    """Rank by fraction-free (Bareiss) elimination on integer-scaled rows."""
    a = _integer_rows(m)
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, rows):
            ai = a[i]
            f = ai[c]
            if f == 0:
                a[i] = [(p * x) // prev for x in ai] if prev != 1 else [p * x for x in ai]
                continue
            ar = a[r]
            a[i] = [(p * ai[j] - f * ar[j]) // prev for j in range(cols)]
        prev = p
        r += 1
        if r == rows:
            break
    return r


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    a = as_matrix(m)
    if not a:
        return a, []
    rows, cols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def nullspace(m: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of {w : m w = 0}, one vector per free column (that entry set to 1)."""
    if not m:
        return []
    cols = len(m[0])
    a, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fcol in free:
        w = [Fraction(0)] * cols
        w[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            w[pc] = -a[i][fcol]
        basis.append(w)
    return basis


def solve_combination(vectors: Sequence[Sequence], target: Sequence) -> list[Fraction] | None:
    """Coefficients c with sum c_i vectors[i] == target, or None.

    When the vectors are dependent the free coefficients are set to zero.
    """
    n = len(vectors)
    dim = len(target)
    aug = [[frac(vectors[j][i]) for j in range(n)] + [frac(target[i])] for i in range(dim)]
    a, pivots = rref(aug)
    if n in pivots:
        return None
    coef = [Fraction(0)] * n
    for i, pc in enumerate(pivots):
        coef[pc] = a[i][n]
    return coef


# ---------------------------------------------------------------- polynomials


def poly_eval_matrix(coeffs: Sequence, a: Sequence[Sequence]) -> Matrix:
    """Evaluate sum coeffs[i] * a**i (coefficients lowest degree first)."""
    n = len(a)
    out = zeros(n)
    power = identity(n)
    for i, c in enumerate(coeffs):
        if i:
            power = matmul(power, a)
        if c:
            out = [[x + c * y for x, y in zip(ro, rp)] for ro, rp in zip(out, power)]
    return out


def minimal_polynomial(a: Sequence[Sequence]) -> list[Fraction]:
    """Monic minimal polynomial of a square matrix, lowest degree first.

    The first linear dependence among I, A, A^2, ... (as flattened vectors)
    gives the least-degree monic annihilator.
    """
    a = as_matrix(a)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("minimal_polynomial needs a square matrix")
    if n == 0:
        return [Fraction(1)]
    powers = [flatten(identity(n))]
    current = identity(n)
    for d in range(1, n + 1):
        current = matmul(current, a)
        target = flatten(current)
        coef = solve_combination(powers, target)
        if coef is not None:
            return [-c for c in coef] + [Fraction(1)]
        powers.append(target)
    raise AssertionError("Cayley-Hamilton violated")


def poly_divmod(num: Sequence, den: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    num = [frac(x) for x in num]
    den = [frac(x) for x in den]
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    r = num[:]
    while len(r) >= len(den) and any(r):
        shift = len(r) - len(den)
        c = r[-1] / den[-1]
        q[shift] = c
        for i, d in enumerate(den):
            r[shift + i] -= c * d
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return q, r


# ---------------------------------------------------------------- PSD


@dataclass(frozen=True)
class LDL:
    """P M P^T = L diag(d) L^T with ``perm[i]`` the row of M placed at i."""

    perm: list[int]
    lower: Matrix
    diag: list[Fraction]

    def reconstruct(self) -> Matrix:
        n = len(self.perm)
        ld = scale_diag(self.lower, self.diag)
        pmp = matmul(ld, transpose(self.lower))
        out = zeros(n)
        for i in range(n):
            for j in range(n):
                out[self.perm[i]][self.perm[j]] = pmp[i][j]
        return out


def symmetric_ldl(m: Sequence[Sequence]) -> tuple[LDL | None, list[Fraction] | None]:
    """Pivoted symmetric elimination.

    Returns ``(factorization, None)`` when the matrix is positive semidefinite
    and ``(None, w)`` with ``w^T m w < 0`` otherwise.
    """
    a = as_matrix(m)
    n = len(a)
    for i in range(n):
        if len(a[i]) != n:
            raise ValueError("matrix is not square")
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i}, {j})")
    perm = list(range(n))
    s = [row[:] for row in a]  # trailing block is the running Schur complement
    lower = identity(n)
    diag = [Fraction(0)] * n
    for r in range(n):
        worst = min(range(r, n), key=lambda i: (s[i][i], i))
        if s[worst][worst] < 0:
            return None, _lift(lower, perm, r, {worst: Fraction(1)}, n)
        best = max(range(r, n), key=lambda i: (s[i][i], -i))
        if s[best][best] == 0:
            for i in range(r, n):
                for j in range(r, n):
                    if i != j and s[i][j] != 0:
                        c = Fraction(-1) if s[i][j] > 0 else Fraction(1)
                        return None, _lift(lower, perm, r, {i: Fraction(1), j: c}, n)
            return LDL(perm, lower, diag), None
        _swap(s, lower, perm, r, best)
        p = s[r][r]
        diag[r] = p
        for i in range(r + 1, n):
            lower[i][r] = s[i][r] / p
        for i in range(r + 1, n):
            li = lower[i][r]
            if li == 0:
                continue
            for j in range(r + 1, n):
                s[i][j] -= li * s[r][j]
        for i in range(r + 1, n):
            s[i][r] = s[r][i] = Fraction(0)
    return LDL(perm, lower, diag), None


def _swap(s, lower, perm, r, b):
    if b == r:
        return
    s[r], s[b] = s[b], s[r]
    for row in s:
        row[r], row[b] = row[b], row[r]
    perm[r], perm[b] = perm[b], perm[r]
    for j in range(r):
        lower[r][j], lower[b][j] = lower[b][j], lower[r][j]


def _lift(lower, perm, r, entries: dict[int, Fraction], n) -> list[Fraction]:
    # y has zeros on the first r (eliminated) coordinates; solve L^T w' = y
    y = [Fraction(0)] * n
    for i, c in entries.items():
        y[i] = c
    w = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = y[i]
        for j in range(i + 1, n):
            if lower[j][i]:
                acc -= lower[j][i] * w[j]
        w[i] = acc
    out = [Fraction(0)] * n
    for i in range(n):
        out[perm[i]] = w[i]
    return out
