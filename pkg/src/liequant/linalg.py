"""Sparse exact linear algebra over any exact field.

Rows are dicts mapping column keys (any hashable, mutually comparable) to
field elements.  Field elements only need +, -, *, /, and == 0 to work, so
Fraction and QScalar both qualify.

The solver keeps a reduced row echelon form incrementally; pivot choice is
deterministic (smallest column in `pivot_key` order inside each new row), so
repeated runs give identical particular solutions (free variables are 0).
"""

from __future__ import annotations

from fractions import Fraction


class Inconsistent(Exception):
    """Raised when an inhomogeneous system has no solution."""

    def __init__(self, detail=None):
        super().__init__("linear system is inconsistent")
        self.detail = detail


class EchelonSolver:
    def __init__(self, pivot_key=None):
        # pivot_key orders columns; default natural ordering of the keys
        self.pivot_key = pivot_key if pivot_key is not None else (lambda c: c)
        self.pivots = {}  # col -> (rowdict, rhs); rows are fully reduced
        self.inconsistent_rows = []

    def _reduce(self, row, rhs):
        # single pass suffices because pivot rows never contain other pivot cols
        for col in sorted(row, key=self.pivot_key):
            if col in self.pivots and row.get(col, 0) != 0:
                c = row[col]
                prow, prhs = self.pivots[col]
                for pc, pv in prow.items():
                    nv = row.get(pc, 0) - c * pv
                    if nv == 0:
                        row.pop(pc, None)
                    else:
                        row[pc] = nv
                row.pop(col, None)
                rhs = rhs - c * prhs
        return row, rhs

    def add_row(self, coeffs, rhs=0):
        """Feed one equation sum(coeffs[c] * x_c) = rhs."""
        row = {c: v for c, v in coeffs.items() if not v == 0}
        row, rhs = self._reduce(row, rhs)
        if not row:
            if not rhs == 0:
                self.inconsistent_rows.append(rhs)
            return
        pcol = min(row, key=self.pivot_key)
        pval = row.pop(pcol)
        row = {c: v / pval for c, v in row.items()}
        rhs = rhs / pval
        # restore RREF: clear the new pivot column from all existing rows
        for col, (prow, prhs) in list(self.pivots.items()):
            c = prow.get(pcol)
            if c is not None and not c == 0:
                for rc, rv in row.items():
                    nv = prow.get(rc, 0) - c * rv
                    if nv == 0:
                        prow.pop(rc, None)
                    else:
                        prow[rc] = nv
                prow.pop(pcol, None)
                self.pivots[col] = (prow, prhs - c * rhs)
        self.pivots[pcol] = (row, rhs)

    @property
    def consistent(self):
        return not self.inconsistent_rows

    def solution(self):
        """Particular solution with all free variables set to zero."""
        if not self.consistent:
            raise Inconsistent(self.inconsistent_rows[0])
        # free vars are zero, so each pivot var is just its reduced rhs
        return {col: rhs for col, (row, rhs) in self.pivots.items() if not rhs == 0}

    def full_solution(self):
        """Like solution() but including explicit zeros for all pivots."""
        if not self.consistent:
            raise Inconsistent(self.inconsistent_rows[0])
        return {col: rhs for col, (row, rhs) in self.pivots.items()}

    def nullspace(self, columns, one):
        """Basis of the homogeneous solution space over the given columns.

        `one` is the field's multiplicative unit (needed to synthesize basis
        vectors).  Returns a list of dicts, one per free column, in pivot_key
        order of the free column.
        """
        free = [c for c in columns if c not in self.pivots]
        free.sort(key=self.pivot_key)
        basis = []
        for f in free:
            vec = {f: one}
            for col, (row, _rhs) in self.pivots.items():
                c = row.get(f)
                if c is not None and not c == 0:
                    vec[col] = -c
            basis.append(vec)
        return basis


def solve_sparse(equations, pivot_key=None):
    """One-shot solve.  equations: iterable of (coeff-dict, rhs).

    Returns the particular solution dict (missing keys are zero) or raises
    Inconsistent.
    """
    solver = EchelonSolver(pivot_key=pivot_key)
    for coeffs, rhs in equations:
        solver.add_row(coeffs, rhs)
    return solver.solution()


def nullspace_sparse(rows, columns, one, pivot_key=None):
    """Nullspace basis of the homogeneous system given by `rows`."""
    solver = EchelonSolver(pivot_key=pivot_key)
    for coeffs in rows:
        solver.add_row(coeffs, 0)
    return solver.nullspace(columns, one)


# ---------------------------------------------------------------------------
# small dense matrices over Fraction: minimal polynomial and spectral data


def mat_identity(n):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, m, p = len(A), len(B[0]) if B else 0, len(B)
    return [
        [sum((A[i][k] * B[k][j] for k in range(p)), Fraction(0)) for j in range(m)]
        for i in range(n)
    ]


def mat_scale(A, c):
    return [[c * x for x in row] for row in A]


def mat_add(A, B):
    return [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(A, B)]


def minimal_polynomial(M):
    """Monic minimal polynomial of a square Fraction matrix, little-endian
    coefficient list (constant term first)."""
    n = len(M)
    if n == 0:
        return [Fraction(0), Fraction(1)]  # x
    powers = [mat_identity(n)]
    while True:
        k = len(powers)
        # try to write powers[k-1+1] ... i.e. M^k as a combination of lower powers
        target = mat_mul(M, powers[-1])
        solver = EchelonSolver()
        # unknowns c_0..c_{k-1}; equations over all matrix entries
        for i in range(n):
            for j in range(n):
                row = {}
                for t in range(k):
                    v = powers[t][i][j]
                    if v != 0:
                        row[t] = v
                solver.add_row(row, target[i][j])
        if solver.consistent:
            sol = solver.full_solution()
            coeffs = [-sol.get(t, Fraction(0)) for t in range(k)] + [Fraction(1)]
            return coeffs
        powers.append(target)
        if k > n:
            raise RuntimeError("minimal polynomial search runaway")


def rational_roots_monic(poly):
    """All roots of a monic Fraction polynomial if they are all rational:
    returns {root: multiplicity}, or None if a non-rational factor remains."""
    p = list(poly)
    roots = {}
    while len(p) > 1:
        # strip zero roots quickly
        if p[0] == 0:
            roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
            p = p[1:]
            continue
        from math import gcd

        denlcm = 1
        for c in p:
            denlcm = denlcm * c.denominator // gcd(denlcm, c.denominator)
        ip = [int(c * denlcm) for c in p]
        a0, an = abs(ip[0]), abs(ip[-1])

        def divisors(v):
            out = set()
            d = 1
            while d * d <= v:
                if v % d == 0:
                    out.add(d)
                    out.add(v // d)
                d += 1
            return out

        found = None
        for num in divisors(a0):
            for den in divisors(an):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    acc = Fraction(0)
                    for c in reversed(p):
                        acc = acc * cand + c
                    if acc == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            return None
        # deflate by (x - found), synthetic division
        q = [Fraction(0)] * (len(p) - 1)
        q[-1] = p[-1]
        for i in range(len(p) - 2, 0, -1):
            q[i - 1] = p[i] + q[i] * found
        p = q
        roots[found] = roots.get(found, 0) + 1
    return roots


def spectral_projectors(M):
    """(kind, data) for a square Fraction matrix.

    kind = "nilpotent": data is the nilpotency index.
    kind = "diagonalizable": data is a list of (eigenvalue, projector matrix).
    Raises ValueError when neither exact route applies.
    """
    n = len(M)
    if n == 0:
        return "nilpotent", 1
    mp = minimal_polynomial(M)
    roots = rational_roots_monic(mp)
    if roots is None:
        raise ValueError("matrix has non-rational eigenvalues; exact exponential unavailable")
    if set(roots) == {Fraction(0)}:
        return "nilpotent", roots[Fraction(0)]
    if any(m > 1 for m in roots.values()):
        raise ValueError("matrix is not diagonalizable; exact exponential unavailable")
    projs = []
    for r in roots:
        P = mat_identity(n)
        for s in roots:
            if s == r:
                continue
            shifted = [[M[i][j] - (s if i == j else 0) for j in range(n)] for i in range(n)]
            P = mat_mul(P, mat_scale(shifted, Fraction(1) / (r - s)))
        projs.append((r, P))
    return "diagonalizable", projs
