"""Finite-dimensional Z/2-graded Lie bialgebras over exact rationals.

Structure constants are stored densely in both slot orders with Koszul signs
folded in:

    [x_i, x_j] = sum_k mu[i,j][k] x_k          mu[j,i] = -(-1)^{p_i p_j} mu[i,j]
    delta(x_i) = sum_{j,k} delta[i][j,k] x_j (x) x_k   (antisymmetric likewise)

The dual basis pairing is <x^i, x_j> = delta_ij, and tensors pair with the
Koszul rule <xi (x) eta, y (x) z> = (-1)^{|eta||y|} xi(y) eta(z).  These two
conventions fix every sign below; the double formulas are

    [xi, eta]_{a*}  = sum_i (-1)^{p_a p_b} delta^{ab}_i x^i
    [x_i, x^a]      = -(-1)^{p_i p_a} sum_j mu^a_{ij} x^j
                      +(-1)^{p_i p_a} sum_b delta^{ab}_i x_b
    delta_D(x^a)    = -sum_{kl} (-1)^{p_k p_l} mu^a_{kl} x^k (x) x^l
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .scalar import _rat


def _clean(d):
    return {k: v for k, v in d.items() if v != 0}


class LieBialgebra:
    def __init__(self, basis, parity, mu=None, delta=None, grading=None):
        self.basis = list(basis)
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("basis names must be unique")
        self.parity = [int(p) & 1 for p in parity]
        if len(self.parity) != len(self.basis):
            raise ValueError("parity length mismatch")
        self.grading = list(grading) if grading is not None else None
        if self.grading is not None and len(self.grading) != len(self.basis):
            raise ValueError("grading length mismatch")
        self.mu = {}     # (i,j) -> {k: Fraction}
        self.delta = {}  # i -> {(j,k): Fraction}
        if mu:
            for (i, j), comps in mu.items():
                self._set_bracket(i, j, comps)
        if delta:
            for i, comps in delta.items():
                self._set_cobracket(i, comps)

    @property
    def dim(self):
        return len(self.basis)

    def _sign(self, i, j):
        return -1 if (self.parity[i] and self.parity[j]) else 1

    def _set_bracket(self, i, j, comps):
        comps = _clean({k: _rat(c) for k, c in comps.items()})
        mirror = _clean({k: -self._sign(i, j) * c for k, c in comps.items()})
        for key, val in ((i, j), comps), ((j, i), mirror):
            old = self.mu.get(key)
            if old is not None and old != val:
                raise ValueError(f"inconsistent bracket data at {key}")
            if val:
                self.mu[key] = val
            else:
                self.mu.pop(key, None)

    def _set_cobracket(self, i, comps):
        full = {}
        for (j, k), c in comps.items():
            c = _rat(c)
            if c == 0:
                continue
            full[(j, k)] = full.get((j, k), Fraction(0)) + c
        # complete to antisymmetric storage where only one order was given
        out = dict(full)
        for (j, k), c in full.items():
            if (k, j) not in full:
                out[(k, j)] = -self._sign(j, k) * c
        out = _clean(out)
        if out:
            self.delta[i] = out
        else:
            self.delta.pop(i, None)

    # -- accessors

    def bracket(self, i, j):
        return self.mu.get((i, j), {})

    def cobracket(self, i):
        return self.delta.get(i, {})

    def index(self, name):
        return self.basis.index(name)

    # -- serialization

    def to_dict(self):
        mu_entries = []
        for (i, j), comps in sorted(self.mu.items()):
            if i > j:
                continue
            if i == j and self.parity[i] == 0:
                continue
            for k, c in sorted(comps.items()):
                mu_entries.append([i, j, k, str(c)])
        delta_entries = []
        for i, comps in sorted(self.delta.items()):
            for (j, k), c in sorted(comps.items()):
                if j > k:
                    continue
                delta_entries.append([i, j, k, str(c)])
        d = {
            "basis": self.basis,
            "parity": self.parity,
            "mu": mu_entries,
            "delta": delta_entries,
        }
        if self.grading is not None:
            d["grading"] = self.grading
        return d

    @staticmethod
    def from_dict(d):
        a = LieBialgebra(d["basis"], d["parity"], grading=d.get("grading"))
        for i, j, k, c in d.get("mu", []):
            cur = dict(a.mu.get((i, j), {}))
            cur[k] = cur.get(k, Fraction(0)) + _rat(c)
            a._set_bracket(i, j, cur)
        for i, j, k, c in d.get("delta", []):
            cur = dict(a.delta.get(i, {}))
            c = _rat(c)
            cur[(j, k)] = cur.get((j, k), Fraction(0)) + c
            if j != k:
                cur[(k, j)] = cur.get((k, j), Fraction(0)) - a._sign(j, k) * c
            a._set_cobracket(i, {p: v for p, v in cur.items()})
        return a

    def __repr__(self):
        return f"LieBialgebra(basis={self.basis}, parity={self.parity})"


# ---------------------------------------------------------------------------
# validation


@dataclass
class Report:
    residuals: dict = field(default_factory=dict)

    def add(self, identity, location, value):
        self.residuals.setdefault(identity, []).append((location, value))

    @property
    def ok(self):
        return not self.residuals

    def summary(self):
        if self.ok:
            return "valid"
        bits = [f"{k}: {len(v)} nonzero" for k, v in self.residuals.items()]
        return "; ".join(bits)

    def to_dict(self):
        return {
            "ok": self.ok,
            "residuals": {
                k: [{"at": list(loc), "value": str(val)} for loc, val in v]
                for k, v in self.residuals.items()
            },
        }


def _dual_bracket_constants(a: LieBialgebra):
    """Bracket on a* induced by delta (with Koszul sign from the pairing)."""
    mu = {}
    for i, comps in a.delta.items():
        for (j, k), c in comps.items():
            s = -1 if (a.parity[j] and a.parity[k]) else 1
            mu.setdefault((j, k), {})[i] = mu.setdefault((j, k), {}).get(i, Fraction(0)) + s * c
    return {key: _clean(c) for key, c in mu.items() if _clean(c)}


def _jacobi_residuals(dim, parity, mu, report, identity, names):
    def brk(i, j):
        return mu.get((i, j), {})

    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                # [x_i,[x_j,x_k]] - [[x_i,x_j],x_k] - (-1)^{p_i p_j}[x_j,[x_i,x_k]]
                acc = {}
                for m, c in brk(j, k).items():
                    for l, c2 in brk(i, m).items():
                        acc[l] = acc.get(l, Fraction(0)) + c * c2
                for m, c in brk(i, j).items():
                    for l, c2 in brk(m, k).items():
                        acc[l] = acc.get(l, Fraction(0)) - c * c2
                s = -1 if (parity[i] and parity[j]) else 1
                for m, c in brk(i, k).items():
                    for l, c2 in brk(j, m).items():
                        acc[l] = acc.get(l, Fraction(0)) - s * c * c2
                for l, v in _clean(acc).items():
                    report.add(identity, (names[i], names[j], names[k], names[l]), v)


def validate(a: LieBialgebra) -> Report:
    """Residual report for parity, (co)antisymmetry, (co)Jacobi, cocycle."""
    rep = Report()
    n = a.dim
    names = a.basis

    # parity homogeneity and grading compatibility
    for (i, j), comps in a.mu.items():
        for k, c in comps.items():
            if (a.parity[i] + a.parity[j]) % 2 != a.parity[k]:
                rep.add("parity", (names[i], names[j], names[k]), c)
            if a.grading is not None and a.grading[i] + a.grading[j] != a.grading[k]:
                rep.add("grading", (names[i], names[j], names[k]), c)
    for i, comps in a.delta.items():
        for (j, k), c in comps.items():
            if (a.parity[j] + a.parity[k]) % 2 != a.parity[i]:
                rep.add("parity", (names[i], names[j], names[k]), c)
            if a.grading is not None and a.grading[j] + a.grading[k] != a.grading[i]:
                rep.add("grading", (names[i], names[j], names[k]), c)

    # super antisymmetry of mu (storage is completed; re-check anyway)
    for (i, j), comps in a.mu.items():
        mirror = a.mu.get((j, i), {})
        s = a._sign(i, j)
        for k in set(comps) | set(mirror):
            v = comps.get(k, Fraction(0)) + s * mirror.get(k, Fraction(0))
            if v != 0:
                rep.add("antisymmetry", (names[i], names[j], names[k]), v)
    for i, comps in a.delta.items():
        for (j, k), c in comps.items():
            v = c + a._sign(j, k) * comps.get((k, j), Fraction(0))
            if v != 0:
                rep.add("co-antisymmetry", (names[i], names[j], names[k]), v)

    _jacobi_residuals(n, a.parity, a.mu, rep, "jacobi", names)

    # co-Jacobi == Jacobi of the induced bracket on a*
    dual_mu = _dual_bracket_constants(a)
    _jacobi_residuals(n, a.parity, dual_mu, rep, "co-jacobi", [f"{x}*" for x in names])

    # cocycle: delta([x_i,x_j]) = x_i . delta(x_j) - (-1)^{p_i p_j} x_j . delta(x_i)
    def act(i, tensor):
        out = {}
        for (j, k), c in tensor.items():
            for l, c2 in a.bracket(i, j).items():
                out[(l, k)] = out.get((l, k), Fraction(0)) + c * c2
            s = -1 if (a.parity[i] and a.parity[j]) else 1
            for l, c2 in a.bracket(i, k).items():
                out[(j, l)] = out.get((j, l), Fraction(0)) + s * c * c2
        return out

    for i in range(n):
        for j in range(n):
            lhs = {}
            for k, c in a.bracket(i, j).items():
                for pair, c2 in a.cobracket(k).items():
                    lhs[pair] = lhs.get(pair, Fraction(0)) + c * c2
            rhs = act(i, a.cobracket(j))
            s = a._sign(i, j)
            for pair, c in act(j, a.cobracket(i)).items():
                rhs[pair] = rhs.get(pair, Fraction(0)) - s * c
            diff = lhs
            for pair, c in rhs.items():
                diff[pair] = diff.get(pair, Fraction(0)) - c
            for (p, q), v in _clean(diff).items():
                rep.add("cocycle", (names[i], names[j], names[p], names[q]), v)
    return rep


# ---------------------------------------------------------------------------
# D4 action


def _dual_name(n):
    return n[:-1] if n.endswith("*") else n + "*"


def d4_act(word, a: LieBialgebra) -> LieBialgebra:
    """Apply a word in {op, cop, star} (comma- or space-separated if a string),
    leftmost letter acting last."""
    if isinstance(word, str):
        word = [w for w in word.replace(",", " ").split() if w]
    out = a
    for theta in reversed(list(word)):
        if theta == "op":
            out = LieBialgebra(
                out.basis,
                out.parity,
                {key: {k: -c for k, c in comps.items()} for key, comps in out.mu.items()},
                dict(out.delta),
                out.grading,
            )
        elif theta == "cop":
            out = LieBialgebra(
                out.basis,
                out.parity,
                dict(out.mu),
                {i: {p: -c for p, c in comps.items()} for i, comps in out.delta.items()},
                out.grading,
            )
        elif theta == "star":
            out = _star(out)
        else:
            raise ValueError(f"unknown D4 letter {theta!r}")
    return out


def _star(a: LieBialgebra) -> LieBialgebra:
    """(mu, delta) -> (delta*, mu*) on the dual basis."""
    basis = [_dual_name(n) for n in a.basis]
    grading = [-g for g in a.grading] if a.grading is not None else None
    mu = _dual_bracket_constants(a)
    delta = {}
    for (i, j), comps in a.mu.items():
        s = -1 if (a.parity[i] and a.parity[j]) else 1
        for k, c in comps.items():
            delta.setdefault(k, {})[(i, j)] = delta.setdefault(k, {}).get((i, j), Fraction(0)) + s * c
    delta = {k: _clean(v) for k, v in delta.items() if _clean(v)}
    return LieBialgebra(basis, a.parity, mu, delta, grading)


def dual_cop(a: LieBialgebra) -> LieBialgebra:
    """a^{*cop}: the dual with opposite cobracket."""
    return d4_act(["cop", "star"], a)


# ---------------------------------------------------------------------------
# bilinear forms and Manin triples


class BilForm:
    def __init__(self, basis, parity, entries):
        self.basis = list(basis)
        self.parity = list(parity)
        self.entries = _clean({k: _rat(v) for k, v in entries.items()})

    def value(self, i, j):
        return self.entries.get((i, j), Fraction(0))

    def supersymmetry_residuals(self):
        out = []
        n = len(self.basis)
        for i in range(n):
            for j in range(n):
                s = -1 if (self.parity[i] and self.parity[j]) else 1
                v = self.value(i, j) - s * self.value(j, i)
                if v != 0:
                    out.append(((self.basis[i], self.basis[j]), v))
        return out

    def invariance_residuals(self, mu):
        """B([u,v],w) - B(u,[v,w]) over all basis triples."""
        out = []
        n = len(self.basis)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs = sum(
                        (c * self.value(l, k) for l, c in mu.get((i, j), {}).items()),
                        Fraction(0),
                    )
                    rhs = sum(
                        (c * self.value(i, l) for l, c in mu.get((j, k), {}).items()),
                        Fraction(0),
                    )
                    if lhs != rhs:
                        out.append(((self.basis[i], self.basis[j], self.basis[k]), lhs - rhs))
        return out

    def is_nondegenerate(self):
        from .linalg import EchelonSolver

        n = len(self.basis)
        solver = EchelonSolver()
        for i in range(n):
            row = {j: self.value(i, j) for j in range(n) if self.value(i, j) != 0}
            solver.add_row(row, 0)
        return len(solver.pivots) == n


@dataclass
class ManinTriple:
    algebra: LieBialgebra  # only mu is used
    form: BilForm
    plus: list  # basis indices spanning the first isotropic half
    minus: list


def is_manin_triple(t: ManinTriple):
    """(bool, report).  Checks subalgebra closure, isotropy, complementarity,
    and that the form is supersymmetric, invariant, nondegenerate."""
    rep = Report()
    a, form = t.algebra, t.form
    if sorted(list(t.plus) + list(t.minus)) != list(range(a.dim)):
        rep.add("complementary", tuple(t.plus) + tuple(t.minus), Fraction(1))
    for label, part in (("plus", t.plus), ("minus", t.minus)):
        pset = set(part)
        for i in part:
            for j in part:
                for k, c in a.bracket(i, j).items():
                    if k not in pset:
                        rep.add(f"subalgebra-{label}", (a.basis[i], a.basis[j], a.basis[k]), c)
                v = form.value(i, j)
                if v != 0:
                    rep.add(f"isotropy-{label}", (a.basis[i], a.basis[j]), v)
    for loc, v in form.supersymmetry_residuals():
        rep.add("form-supersymmetry", loc, v)
    for loc, v in form.invariance_residuals(a.mu):
        rep.add("form-invariance", loc, v)
    if not form.is_nondegenerate():
        rep.add("form-nondegenerate", (), Fraction(1))
    return rep.ok, rep


# ---------------------------------------------------------------------------
# the Drinfeld double


def double(a: LieBialgebra):
    """Drinfeld double on a + a*, with the canonical invariant pairing."""
    n = a.dim
    basis = a.basis + [_dual_name(x) for x in a.basis]
    parity = a.parity + a.parity
    grading = None
    if a.grading is not None:
        grading = a.grading + [-g for g in a.grading]

    D = LieBialgebra(basis, parity, grading=grading)

    def sgn(i, j):
        return -1 if (a.parity[i] and a.parity[j]) else 1

    # a-a brackets and cobracket
    for (i, j), comps in a.mu.items():
        D._set_bracket(i, j, dict(comps))
    for i, comps in a.delta.items():
        D._set_cobracket(i, dict(comps))

    # a*-a* brackets: [x^a, x^b] = (-1)^{p_a p_b} delta^{ab}_i x^i
    star_mu = {}
    for i, comps in a.delta.items():
        for (p, q), c in comps.items():
            cur = star_mu.setdefault((p, q), {})
            cur[n + i] = cur.get(n + i, Fraction(0)) + sgn(p, q) * c
    for (p, q), cur in star_mu.items():
        if p <= q:
            D._set_bracket(n + p, n + q, cur)

    # a*-a* cobracket: delta_D(x^a) = -sum (-1)^{p_k p_l} mu^a_{kl} x^k (x) x^l
    for a_idx in range(n):
        comps = {}
        for (k, l), mu_comps in a.mu.items():
            c = mu_comps.get(a_idx)
            if c:
                comps[(n + k, n + l)] = comps.get((n + k, n + l), Fraction(0)) - sgn(k, l) * c
        if comps:
            D._set_cobracket(n + a_idx, comps)

    # mixed brackets
    for i in range(n):
        for a_idx in range(n):
            comps = {}
            s = sgn(i, a_idx)
            for j in range(n):
                c = a.bracket(i, j).get(a_idx)
                if c:
                    comps[n + j] = comps.get(n + j, Fraction(0)) - s * c
            for (p, q), c in a.cobracket(i).items():
                if p == a_idx:
                    comps[q] = comps.get(q, Fraction(0)) + s * c
            comps = _clean(comps)
            if comps:
                D._set_bracket(i, n + a_idx, comps)

    form = BilForm(
        basis,
        parity,
        {
            **{(n + i, i): Fraction(1) for i in range(n)},
            **{(i, n + i): Fraction(1 if a.parity[i] == 0 else -1) for i in range(n)},
        },
    )
    return D, form


# ---------------------------------------------------------------------------
# lambda-deformed double


class BracketTable:
    """Plain bracket table over a named basis with parities.

    Entries are Fraction or ExpScalar; only ring operations are used, so the
    Jacobi residual stays exact either way.
    """

    def __init__(self, basis, parity, table):
        self.basis = list(basis)
        self.parity = list(parity)
        self.table = {key: {k: c for k, c in comps.items() if c != 0}
                      for key, comps in table.items()}
        self.table = {key: comps for key, comps in self.table.items() if comps}

    def bracket(self, i, j):
        return self.table.get((i, j), {})

    def jacobi_residuals(self):
        """Nonzero components of [x,[y,z]] - [[x,y],z] - (-1)^{|x||y|}[y,[x,z]]."""
        n = len(self.basis)
        out = []
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    acc = {}
                    for m, c in self.bracket(j, k).items():
                        for l, c2 in self.bracket(i, m).items():
                            acc[l] = acc.get(l, 0) + c * c2
                    for m, c in self.bracket(i, j).items():
                        for l, c2 in self.bracket(m, k).items():
                            acc[l] = acc.get(l, 0) - c * c2
                    s = -1 if (self.parity[i] and self.parity[j]) else 1
                    for m, c in self.bracket(i, k).items():
                        for l, c2 in self.bracket(j, m).items():
                            acc[l] = acc.get(l, 0) - s * c * c2
                    for l, v in acc.items():
                        if v != 0:
                            out.append(((self.basis[i], self.basis[j],
                                         self.basis[k], self.basis[l]), v))
        return out


def dd_matrix(a: LieBialgebra):
    """mu o delta as a dense Fraction matrix (column i = image of x_i)."""
    n = a.dim
    M = [[Fraction(0)] * n for _ in range(n)]
    for i, comps in a.delta.items():
        for (j, k), c in comps.items():
            for l, c2 in a.bracket(j, k).items():
                M[l][i] += c * c2
    return M


def _exp_matrix(M, scale):
    """exp(scale*M) exactly: (is_symbolic, dense matrix).

    Nilpotent M gives Fraction entries; rationally diagonalizable M gives
    ExpScalar entries; anything else raises ValueError.
    """
    from .linalg import spectral_projectors
    from .scalar import ExpScalar

    n = len(M)
    kind, data = spectral_projectors(M)
    if kind == "nilpotent":
        out = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        term = [row[:] for row in out]
        fact = 1
        for k in range(1, data):
            nxt = [[sum((M[i][m] * term[m][j] for m in range(n)), Fraction(0))
                    for j in range(n)] for i in range(n)]
            term = nxt
            fact *= k
            for i in range(n):
                for j in range(n):
                    out[i][j] += scale**k * term[i][j] / fact
        return False, out
    out = [[ExpScalar() for _ in range(n)] for _ in range(n)]
    for r, P in data:
        w = ExpScalar.exp(scale * r)
        for i in range(n):
            for j in range(n):
                if P[i][j] != 0:
                    out[i][j] = out[i][j] + w * P[i][j]
    return True, out


def lambda_double(a: LieBialgebra, lam, lam2) -> BracketTable:
    """The (lambda, lambda')-deformed double bracket table on a + a*.

    Only the mixed bracket is deformed:

        [x, xi] = ad*_{exp(-lam D)(x)} xi - adbar*_{exp(lam' D)(xi)} x

    with D = mu o delta on a and -t(mu o delta) on a*.  When D is nilpotent
    the table is rational; when D is diagonalizable over the rationals the
    entries are exact exponential polynomials; otherwise this raises.
    """
    lam, lam2 = _rat(lam), _rat(lam2)
    n = a.dim
    M = dd_matrix(a)
    sym1, Em = _exp_matrix(M, -lam)
    Mt_neg = [[-M[j][i] for j in range(n)] for i in range(n)]
    sym2, Ed = _exp_matrix(Mt_neg, lam2)
    symbolic = sym1 or sym2

    def conv(c):
        if symbolic:
            from .scalar import ExpScalar

            return ExpScalar.coerce(c)
        return c

    table = {}

    def put(i, j, comps):
        comps = {k: conv(c) for k, c in comps.items() if c != 0}
        if comps:
            table[(i, j)] = comps

    parity2 = a.parity + a.parity

    def sgn(i, j):
        return -1 if (a.parity[i % n] and a.parity[j % n]) else 1

    for (i, j), comps in a.mu.items():
        put(i, j, dict(comps))
    for (p, q), comps in _dual_bracket_constants(a).items():
        put(n + p, n + q, {n + k: c for k, c in comps.items()})
    for i in range(n):
        for a_idx in range(n):
            comps = {}
            for m in range(n):
                cm = Em[m][i]
                if cm == 0:
                    continue
                s = sgn(m, a_idx)
                for j in range(n):
                    c = a.bracket(m, j).get(a_idx)
                    if c:
                        comps[n + j] = comps.get(n + j, 0) + (-s) * cm * c
            for b_idx in range(n):
                cb = Ed[b_idx][a_idx]
                if cb == 0:
                    continue
                s = sgn(i, b_idx)
                for (p, q), c in a.cobracket(i).items():
                    if p == b_idx:
                        comps[q] = comps.get(q, 0) + s * cb * c
            comps = {k: c for k, c in comps.items() if c != 0}
            if comps:
                put(i, n + a_idx, comps)
                s = sgn(i, a_idx)
                put(n + a_idx, i, {k: (-s) * c for k, c in comps.items()})
    return BracketTable(a.basis + [_dual_name(x) for x in a.basis], parity2, table)


# ---------------------------------------------------------------------------
# example library


def abelian(n=2):
    return LieBialgebra([f"x{i}" for i in range(n)], [0] * n)


def sl2_borel():
    a = LieBialgebra(["h", "e"], [0, 0], grading=[0, 1])
    a._set_bracket(0, 1, {1: Fraction(2)})
    a._set_cobracket(1, {(1, 0): Fraction(1, 2), (0, 1): Fraction(-1, 2)})
    return a


def sl2():
    a = LieBialgebra(["h", "e", "f"], [0, 0, 0])
    a._set_bracket(0, 1, {1: Fraction(2)})
    a._set_bracket(0, 2, {2: Fraction(-2)})
    a._set_bracket(1, 2, {0: Fraction(1)})
    # delta from r = e (x) f + (1/4) h (x) h
    a._set_cobracket(1, {(1, 0): Fraction(1, 2), (0, 1): Fraction(-1, 2)})
    a._set_cobracket(2, {(2, 0): Fraction(1, 2), (0, 2): Fraction(-1, 2)})
    return a


def super_rank1():
    """Rank-1 super Borel with isotropic odd simple root (a11 = 0)."""
    a = LieBialgebra(["h", "e"], [0, 1], grading=[0, 1])
    # [h,e] = a11 e = 0; [e,e] = 0
    a._set_cobracket(1, {(1, 0): Fraction(1, 2), (0, 1): Fraction(-1, 2)})
    return a


def a2_borel():
    """A2 Borel truncated above weight height 2: h1,h2,e1,e2,e12."""
    a = LieBialgebra(["h1", "h2", "e1", "e2", "e12"], [0] * 5,
                     grading=[0, 0, 1, 1, 2])
    A = [[2, -1], [-1, 2]]
    for i in (0, 1):
        a._set_bracket(i, 2, {2: Fraction(A[i][0])})
        a._set_bracket(i, 3, {3: Fraction(A[i][1])})
        a._set_bracket(i, 4, {4: Fraction(A[i][0] + A[i][1])})
    a._set_bracket(2, 3, {4: Fraction(1)})
    # delta(e_i) = (d_i/2) (e_i (x) h_i - h_i (x) e_i), d = (1,1)
    a._set_cobracket(2, {(2, 0): Fraction(1, 2), (0, 2): Fraction(-1, 2)})
    a._set_cobracket(3, {(3, 1): Fraction(1, 2), (1, 3): Fraction(-1, 2)})
    # delta(e12) from the cocycle rule applied to [e1, e2]
    d = _cocycle_extend(a, 2, 3)
    a._set_cobracket(4, d)
    return a


def _cocycle_extend(a, i, j):
    """delta([x_i,x_j]) via the cocycle identity (used to build examples)."""
    def act(idx, tensor):
        out = {}
        for (p, q), c in tensor.items():
            for l, c2 in a.bracket(idx, p).items():
                out[(l, q)] = out.get((l, q), Fraction(0)) + c * c2
            s = -1 if (a.parity[idx] and a.parity[p]) else 1
            for l, c2 in a.bracket(idx, q).items():
                out[(p, l)] = out.get((p, l), Fraction(0)) + s * c * c2
        return out

    rhs = act(i, a.cobracket(j))
    s = -1 if (a.parity[i] and a.parity[j]) else 1
    for pair, c in act(j, a.cobracket(i)).items():
        rhs[pair] = rhs.get(pair, Fraction(0)) - s * c
    # [x_i, x_j] must be a single basis vector with coefficient 1 here
    br = a.bracket(i, j)
    assert len(br) == 1 and list(br.values())[0] == 1
    return _clean(rhs)


EXAMPLES = {
    "abelian2": lambda: abelian(2),
    "sl2-borel": sl2_borel,
    "sl2": sl2,
    "super-rank1": super_rank1,
    "a2-borel": a2_borel,
}
