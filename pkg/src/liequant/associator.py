"""Rational even Drinfeld associator, solved degree by degree.

Phi lives in the completed free algebra on two letters A, B with constant
term 1 and log Phi a Lie series.  The defining equations:

  pentagon (in U(t4)):
    Phi(t12, t23+t24) Phi(t13+t23, t34)
      = Phi(t23, t34) Phi(t12+t13, t24+t34) Phi(t12, t23)

  hexagons (in U(t3), with R0 = exp(t/2)):
    exp((t13+t23)/2) = Phi(t13,t12) e^{t13/2} Phi(t13,t23)^{-1}
                       e^{t23/2} Phi(t12,t23)
    exp((t12+t13)/2) = Phi(t23,t13)^{-1} e^{t13/2} Phi(t12,t13)
                       e^{t12/2} Phi(t12,t23)^{-1}

Evenness (Phi(-A,-B) = Phi(A,B)) is imposed: odd-degree components of
log Phi vanish, and the odd-degree equations are verified to be consistent
with that.  At each even degree the unknown component of log Phi is solved
for in the Lyndon basis by deterministic echelon elimination with free
variables set to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .freealg import (
    CapError,
    NCPoly,
    TnAlgebra,
    lyndon_bracketing,
    lyndon_words,
    nc_exp,
    nc_log,
    tn_substitute,
)
from .linalg import EchelonSolver, Inconsistent


@dataclass
class Associator:
    degree: int
    body: NCPoly  # constant term 1, capped at degree

    def log(self):
        return nc_log(self.body, self.degree)

    def to_dict(self):
        return {
            "degree": self.degree,
            "coefficients": {w or "1": str(c) for w, c in sorted(self.body.terms.items())},
        }

    @staticmethod
    def from_dict(d):
        terms = {}
        for w, c in d["coefficients"].items():
            terms["" if w == "1" else w] = Fraction(c)
        return Associator(int(d["degree"]), NCPoly(terms, cap=int(d["degree"])))


def evaluate_associator(phi: Associator, x, y, one=None):
    """Evaluate Phi's body at two elements of any truncated carrier.

    The carrier only needs *, +, and scalar multiplication by Fraction;
    `one` defaults to x.alg.one() (t_n elements) or x.one().
    """
    if one is None:
        one = x.alg.one() if hasattr(x, "alg") else x.one()
    env = {"A": x, "B": y}
    out = None
    for w, c in phi.body.terms.items():
        acc = one
        for ch in w:
            acc = acc * env[ch]
        acc = acc * c
        out = acc if out is None else out + acc
    if out is None:
        out = one * Fraction(0)
    return out


def _pentagon_residual(body: NCPoly, degree: int):
    T4 = TnAlgebra(4, degree)
    phi = Associator(degree, body.truncate(degree))
    t = T4.t
    lhs = evaluate_associator(phi, t(1, 2), t(2, 3) + t(2, 4)) * evaluate_associator(
        phi, t(1, 3) + t(2, 3), t(3, 4)
    )
    rhs = (
        evaluate_associator(phi, t(2, 3), t(3, 4))
        * evaluate_associator(phi, t(1, 2) + t(1, 3), t(2, 4) + t(3, 4))
        * evaluate_associator(phi, t(1, 2), t(2, 3))
    )
    return lhs - rhs


def _hexagon_residuals(body: NCPoly, degree: int):
    T3 = TnAlgebra(3, degree)
    phi = Associator(degree, body.truncate(degree))
    t12, t13, t23 = T3.t(1, 2), T3.t(1, 3), T3.t(2, 3)
    half = Fraction(1, 2)
    e13 = (t13 * half).exp()
    e23 = (t23 * half).exp()
    e12 = (t12 * half).exp()

    lhs1 = ((t13 + t23) * half).exp()
    rhs1 = (
        evaluate_associator(phi, t13, t12)
        * e13
        * evaluate_associator(phi, t13, t23).inverse()
        * e23
        * evaluate_associator(phi, t12, t23)
    )
    lhs2 = ((t12 + t13) * half).exp()
    rhs2 = (
        evaluate_associator(phi, t23, t13).inverse()
        * e13
        * evaluate_associator(phi, t12, t13)
        * e12
        * evaluate_associator(phi, t12, t23).inverse()
    )
    return lhs1 - rhs1, lhs2 - rhs2


def check_pentagon(phi: Associator, degree=None):
    """Pentagon residual through the given degree (default: Phi's cap)."""
    if degree is None:
        degree = phi.degree
    if degree > phi.degree:
        raise CapError(f"phi only known through degree {phi.degree}")
    return _pentagon_residual(phi.body, degree)


def check_hexagons(phi: Associator, degree=None):
    if degree is None:
        degree = phi.degree
    if degree > phi.degree:
        raise CapError(f"phi only known through degree {phi.degree}")
    return _hexagon_residuals(phi.body, degree)


def _degree_n_rows(body: NCPoly, n: int):
    """Residual components at degree n, flattened to {(eqn, key): coeff}."""
    rows = {}
    p = _pentagon_residual(body, n).component(n)
    h1, h2 = _hexagon_residuals(body, n)
    for tag, elem in (("P", p), ("H1", h1.component(n)), ("H2", h2.component(n))):
        for key, c in elem.terms.items():
            rows[(tag, key)] = c
    return rows


def solve_associator(degree: int) -> Associator:
    """Solve pentagon + hexagons for an even rational associator mod deg+1."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    psi = NCPoly.zero()  # log Phi so far
    for n in range(2, degree + 1):
        base = _degree_n_rows(nc_exp(psi.truncate(n), n), n)
        if n % 2 == 1:
            if base:
                raise RuntimeError(
                    f"odd degree {n} inconsistent with an even associator"
                )
            continue
        words = lyndon_words("AB", n)
        columns = {}
        for w in words:
            bw = lyndon_bracketing(w)
            pert = _degree_n_rows(nc_exp((psi + bw).truncate(n), n), n)
            col = {}
            for key in set(base) | set(pert):
                d = pert.get(key, Fraction(0)) - base.get(key, Fraction(0))
                if d != 0:
                    col[key] = d
            columns[w] = col
        solver = EchelonSolver()  # pivot key: lex order on Lyndon words
        eqn_keys = set(base)
        for col in columns.values():
            eqn_keys |= set(col)
        for key in sorted(eqn_keys):
            coeffs = {w: columns[w][key] for w in words if key in columns[w]}
            solver.add_row(coeffs, -base.get(key, Fraction(0)))
        try:
            sol = solver.solution()
        except Inconsistent as exc:
            raise RuntimeError(f"associator equations inconsistent at degree {n}") from exc
        for w, c in sol.items():
            psi = psi + lyndon_bracketing(w) * c
    body = nc_exp(psi.truncate(degree), degree)
    return Associator(degree, body)
