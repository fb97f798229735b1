"""Twist quantization of Drinfeld doubles.

Starting from the canonical classical r-matrix of D(a) and an even rational
associator Phi, solve the twist equation

    J^{1,2} * J^{12,3} = J^{2,3} * J^{1,23} * Phi(h t^{1,2}, h t^{2,3})

order by order in hbar, then build the quasitriangular structure

    Delta_J = J Delta_0(.) J^{-1},    R = J^{21} * exp(h t / 2) * J^{-1}.

The solver is deterministic: J_1 = -r/2 is the pinned gauge seed, and the
higher orders are found by a staged hbar-adic Newton iteration over exact
echelon solves with free variables set to zero.  Candidates are weight-zero
monomial pairs (straightening in the double can trade a dual letter for a
primal one, so bidegree is not an honest invariant but total weight is).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .scalar import HSeries
from .linalg import EchelonSolver, Inconsistent
from .bialg import Report, dual_cop
from .associator import Associator, evaluate_associator
from .uenv import (TensorUElem, UAlgebra, MPiIso, m_pi_iso, delta0,
                   antipode0, insertion, sym)


# ---------------------------------------------------------------------------
# classical structure on the double carrier


def canonical_r(iso: MPiIso) -> TensorUElem:
    """r = sum_i x_i (x) x^i over the double carrier of `iso`."""
    alg = iso.alg
    out = alg.zero(2)
    for i in range(iso.n):
        out = out + alg.gen(i).tensor(alg.gen(iso.n + i))
    return out


def t_element(iso: MPiIso) -> TensorUElem:
    r = canonical_r(iso)
    return r + r.flip()


def cybe_residual(iso: MPiIso) -> TensorUElem:
    """[r12, r13] + [r12, r23] + [r13, r23] in U(D(a))^(x)3."""
    r = canonical_r(iso)
    r12 = insertion(r, {1: 1, 2: 2}, 3)
    r13 = insertion(r, {1: 1, 3: 2}, 3)
    r23 = insertion(r, {2: 1, 3: 2}, 3)

    def comm(x, y):
        return x * y - y * x

    return comm(r12, r13) + comm(r12, r23) + comm(r13, r23)


def t_invariance_residuals(iso: MPiIso) -> dict:
    """[Delta_0(z), t] for each generator z of the double; all should vanish."""
    alg = iso.alg
    t = t_element(iso)
    out = {}
    for i in range(alg.dim):
        d = delta0(alg.gen(i))
        out[alg.lie.basis[i]] = d * t - t * d
    return out


def phi_element(iso: MPiIso, phi: Associator) -> TensorUElem:
    """Phi(h t^{12}, h t^{23}) in U(D(a))^(x)3, truncated at the hbar order."""
    alg = iso.alg
    t = t_element(iso)
    h = HSeries.hbar(alg.order)
    t12 = insertion(t, {1: 1, 2: 2}, 3).scale(h)
    t23 = insertion(t, {2: 1, 3: 2}, 3).scale(h)
    return evaluate_associator(phi, t12, t23, one=alg.one(3))


# ---------------------------------------------------------------------------
# the twist


@dataclass
class TwistJ:
    iso: MPiIso
    order: int
    body: TensorUElem

    def residual(self, phi: Associator) -> TensorUElem:
        """Twist-equation residual (lhs - rhs); zero mod hbar^{order+1}."""
        J = self.body
        lhs = insertion(J, {1: 1, 2: 2}, 3) * insertion(J, {1: 1, 2: 1, 3: 2}, 3)
        rhs = (insertion(J, {2: 1, 3: 2}, 3) * insertion(J, {1: 1, 2: 2, 3: 2}, 3)
               * phi_element(self.iso, phi))
        return lhs - rhs

    def order1(self) -> TensorUElem:
        alg = self.iso.alg
        return TensorUElem(alg, 2, {k: HSeries.const(c, alg.order)
                                    for k, c in self.body.hbar_coefficient(1).items()})

    def truncate(self, n: int) -> "TwistJ":
        """Forget everything above hbar^n (fresh carrier at series order n)."""
        iso = m_pi_iso(self.iso.a, n, self.iso.cap)
        terms = {}
        for key, c in self.body.terms.items():
            tc = HSeries(tuple(c[i] for i in range(n + 1)))
            if not tc.is_zero():
                terms[key] = tc
        return TwistJ(iso, n, TensorUElem(iso.alg, 2, terms))

    def to_dict(self):
        terms = []
        for (m1, m2), c in sorted(self.body.terms.items()):
            terms.append([list(m1), list(m2), [str(x) for x in c.coeffs]])
        return {"order": self.order, "basis": list(self.iso.alg.lie.basis),
                "terms": terms}


def _weight(alg, mono, n, grading):
    if grading is None:
        return 0
    w = 0
    for i, k in enumerate(mono):
        g = grading[i] if i < n else -grading[i - n]
        w += k * g
    return w


def _pair_candidates(iso, k, leg_cap):
    """PBW monomial pairs with counit-free legs of degree <= leg_cap, total
    degree <= 2k, and total weight zero when the base algebra is graded.
    (Straightening in the double can trade a dual letter for a primal one, so
    only the weight and the total filtration degree are honest invariants.)"""
    alg = iso.alg
    n = iso.n
    grading = iso.a.grading
    monos = [m for m in alg.monomials(leg_cap) if 1 <= sum(m)]
    out = []
    for m1 in monos:
        d1 = sum(m1)
        w1 = _weight(alg, m1, n, grading)
        for m2 in monos:
            if (d1 + sum(m2) <= 2 * k
                    and w1 + _weight(alg, m2, n, grading) == 0):
                out.append((m1, m2))
    return out


def _linearized_rows(iso, candidates):
    """Columns of L(X) = X^{12} + (D0 x id)X - 1 x X - (id x D0)X."""
    alg = iso.alg
    one = HSeries.one(alg.order)
    rows = {}
    for p in candidates:
        x = TensorUElem(alg, 2, {p: one})
        img = (insertion(x, {1: 1, 2: 2}, 3)
               + insertion(x, {1: 1, 2: 1, 3: 2}, 3)
               - insertion(x, {2: 1, 3: 2}, 3)
               - insertion(x, {1: 1, 2: 2, 3: 2}, 3))
        for key, c in img.terms.items():
            v = c[0]
            if v != 0:
                rows.setdefault(key, {})[p] = v
    return rows


def _twist_residual_parts(iso, J, phi_el):
    """lhs - rhs of the twist equation for the current iterate."""
    lhs = insertion(J, {1: 1, 2: 2}, 3) * insertion(J, {1: 1, 2: 1, 3: 2}, 3)
    rhs = (insertion(J, {2: 1, 3: 2}, 3)
           * insertion(J, {1: 1, 2: 2, 3: 2}, 3) * phi_el)
    return lhs - rhs


def solve_twist(a, phi: Associator, order: int, pivot="lex") -> TwistJ:
    """Solve the twist equation over D(a) through hbar^order.

    J_1 = -r/2 is imposed (the equation itself only constrains it up to a
    cocycle).  The obstruction at each order depends on which ker-L
    representative was frozen below, so the solver works stage by stage and
    keeps every level >= 2 open: at stage k it enforces the equation mod
    hbar^{k+1} by an hbar-adic Newton iteration whose unknowns are candidate
    coefficients at all levels 2..k.  Direction columns are exact Frechet
    derivatives of the equation at the current iterate, so cross-level kernel
    interactions (which enter nonlinearly from order 4 on) are picked up by
    the iteration.  Free variables are zero under the chosen pivot order,
    which makes the output deterministic.
    """
    iso = m_pi_iso(a, order, cap=2 * order)
    alg = iso.alg
    J = alg.one(2)
    if order >= 1:
        r = canonical_r(iso)
        J = J + r.scale(Fraction(-1, 2)).scale(HSeries.hbar(order))
    phi_el = phi_element(iso, phi)
    grading = iso.a.grading
    # products of lower-order parts never push a leg past degree k at hbar^k,
    # so the ansatz can cap each leg at k instead of the filtration bound 2k
    cands = {k: _pair_candidates(iso, k, k) for k in range(2, order + 1)}
    # the stage's own level ranks first so lower levels are only re-opened
    # when the obstruction genuinely needs them (free variables stay zero)
    ranked = {}
    for k in sorted(cands, reverse=True):
        for p in sorted(cands[k]):
            ranked[(k, p)] = len(ranked)
    ncols = len(ranked)
    if pivot == "lex":
        key_fn = lambda c: ranked[c]
    elif pivot == "revlex":
        key_fn = lambda c: (order - c[0]) * ncols - ranked[c]
    else:
        raise ValueError(f"unknown pivot rule {pivot!r}")
    # pure insertions of each candidate pair, shared by every stage
    ins_cache = {}

    def pair_insertions(p):
        if p not in ins_cache:
            x = TensorUElem(alg, 2, {p: HSeries.one(alg.order)})
            ins_cache[p] = (insertion(x, {1: 1, 2: 2}, 3),
                            insertion(x, {1: 1, 2: 1, 3: 2}, 3),
                            insertion(x, {2: 1, 3: 2}, 3),
                            insertion(x, {1: 1, 2: 2, 3: 2}, 3))
        return ins_cache[p]

    for stage in range(2, order + 1):
        for _ in range(8):
            resid = _twist_residual_parts(iso, J, phi_el)
            gap = {}
            for key, c in resid.terms.items():
                for prow in range(2, stage + 1):
                    if c[prow] != 0:
                        gap[(prow, key)] = c[prow]
            if not gap:
                break
            if grading is not None:
                for (_, key) in gap:
                    w = sum(_weight(alg, m, iso.n, grading) for m in key)
                    if w != 0:
                        raise ValueError("internal consistency error: residual "
                                         f"off weight zero at {key}")
            eqs = {}
            for lvl in range(2, stage + 1):
                # a level-lvl direction only meets partners up to depth
                # stage - lvl, so truncate the iterate before inserting
                depth = stage - lvl
                Jt = J.truncate_hbar(depth)
                pt = phi_el.truncate_hbar(depth)
                jt12 = insertion(Jt, {1: 1, 2: 2}, 3)
                jt123 = insertion(Jt, {1: 1, 2: 1, 3: 2}, 3)
                jt1_23p = insertion(Jt, {1: 1, 2: 2, 3: 2}, 3) * pt
                jt23p = insertion(Jt, {2: 1, 3: 2}, 3) * pt
                for p in cands[lvl]:
                    v12, v123, v23, v1_23 = pair_insertions(p)
                    img = v12 * jt123 + jt12 * v123 - v23 * jt1_23p - jt23p * v1_23
                    for key, c in img.terms.items():
                        for s in range(depth + 1):
                            val = c[s]
                            if val != 0:
                                eqs.setdefault((lvl + s, key), {})[(lvl, p)] = val
            solver = EchelonSolver(pivot_key=key_fn)
            for rk in sorted(set(eqs) | set(gap)):
                solver.add_row(eqs.get(rk, {}), -gap.get(rk, Fraction(0)))
            try:
                sol = solver.solution()
            except Inconsistent:
                raise ValueError(f"internal consistency error at order {stage}")
            bump = {}
            for (lvl, p), c in sol.items():
                h = HSeries.hbar(alg.order, lvl) * c
                bump[p] = bump.get(p, HSeries.zero(alg.order)) + h
            J = J + TensorUElem(alg, 2, bump)
        else:
            raise ValueError(f"internal consistency error at order {stage}: "
                             "no convergence")
    return TwistJ(iso, order, J)


# ---------------------------------------------------------------------------
# quasitriangular structure


class QTStructure:
    def __init__(self, twist: TwistJ, R: TensorUElem = None):
        self.twist = twist
        self.iso = twist.iso
        self.alg = twist.iso.alg
        self.J = twist.body
        self.Jinv = self.J.inverse()
        if R is None:
            alg = self.alg
            t = t_element(self.iso)
            ht2 = t.scale(HSeries.hbar(alg.order)).scale(Fraction(1, 2))
            ex = alg.one(2)
            term = alg.one(2)
            fact = 1
            for m in range(1, alg.order + 1):
                term = term * ht2
                fact *= m
                if term.is_zero():
                    break
                ex = ex + term.scale(Fraction(1, fact))
            R = self.J.flip() * ex * self.Jinv
        self.R = R
        self._dj = {}

    def delta_J(self, x: TensorUElem) -> TensorUElem:
        """J * Delta_0(x) * J^{-1} for an arity-1 element."""
        alg = self.alg
        out = alg.zero(2)
        for (mono,), c in x.terms.items():
            hit = self._dj.get(mono)
            if hit is None:
                g = TensorUElem(alg, 1, {(mono,): HSeries.one(alg.order)})
                hit = self.J * delta0(g) * self.Jinv
                self._dj[mono] = hit
            out = out + hit.scale(c)
        return out

    def delta_J_op(self, x: TensorUElem) -> TensorUElem:
        return self.delta_J(x).flip()

    def coproduct_table(self):
        """Delta_J on the degree-1 PBW generators, keyed by basis name."""
        alg = self.alg
        return {alg.lie.basis[i]: self.delta_J(alg.gen(i))
                for i in range(alg.dim)}


def twisted_structure(J: TwistJ) -> QTStructure:
    return QTStructure(J)


def _first_nonzero(elem: TensorUElem):
    for key in sorted(elem.terms):
        c = elem.terms[key]
        v = c.valuation()
        if v is not None:
            return c[v]
    return Fraction(0)


def _record(rep: Report, identity, location, value):
    if value != 0:
        rep.add(identity, location, value)


def qt_check(S: QTStructure) -> Report:
    """Coassociativity, intertwining, both coproduct identities for R, the
    quantum Yang-Baxter equation, and counit normalizations."""
    rep = Report()
    alg = S.alg
    R = S.R
    names = alg.lie.basis
    for i in range(alg.dim):
        x = alg.gen(i)
        d = S.delta_J(x)
        co = d.apply_on_leg(0, S.delta_J, 2) - d.apply_on_leg(1, S.delta_J, 2)
        _record(rep, "coassociativity", names[i], _first_nonzero(co))
        tw = R * d - S.delta_J_op(x) * R
        _record(rep, "intertwining", names[i], _first_nonzero(tw))
        eps_l = alg.zero(1)
        for (m1, m2), c in d.terms.items():
            if m1 == alg.unit_mono():
                eps_l = eps_l + TensorUElem(alg, 1, {(m2,): c})
        _record(rep, "counit", names[i], _first_nonzero(eps_l - x))
    R13 = insertion(R, {1: 1, 3: 2}, 3)
    R23 = insertion(R, {2: 1, 3: 2}, 3)
    R12 = insertion(R, {1: 1, 2: 2}, 3)
    hex1 = R.apply_on_leg(0, S.delta_J, 2) - R13 * R23
    _record(rep, "hexagon1", "R", _first_nonzero(hex1))
    hex2 = R.apply_on_leg(1, S.delta_J, 2) - R13 * R12
    _record(rep, "hexagon2", "R", _first_nonzero(hex2))
    qybe = R12 * R13 * R23 - R23 * R13 * R12
    _record(rep, "qybe", "R", _first_nonzero(qybe))
    eps_R_l = alg.zero(1)
    eps_R_r = alg.zero(1)
    for (m1, m2), c in R.terms.items():
        if m1 == alg.unit_mono():
            eps_R_l = eps_R_l + TensorUElem(alg, 1, {(m2,): c})
        if m2 == alg.unit_mono():
            eps_R_r = eps_R_r + TensorUElem(alg, 1, {(m1,): c})
    _record(rep, "counit", "R-left", _first_nonzero(eps_R_l - alg.one(1)))
    _record(rep, "counit", "R-right", _first_nonzero(eps_R_r - alg.one(1)))
    return rep


def semiclassical(S: QTStructure) -> dict:
    """hbar-linear part of Delta_J - Delta_J^op on the generators, as a
    cobracket table {generator index: {(j, k): Fraction}}."""
    alg = S.alg
    idx = {}
    out = {}
    for i in range(alg.dim):
        diff = S.delta_J(alg.gen(i)) - S.delta_J_op(alg.gen(i))
        table = {}
        for (m1, m2), c in diff.terms.items():
            v = c[1]
            if v == 0:
                continue
            if sum(m1) != 1 or sum(m2) != 1:
                raise ValueError("semiclassical term off degree (1,1)")
            j = m1.index(1)
            k = m2.index(1)
            table[(j, k)] = table.get((j, k), Fraction(0)) + v
        out[i] = {p: v for p, v in table.items() if v != 0}
    return out


# ---------------------------------------------------------------------------
# duality


def _iota_map(a):
    """Index map for the Lie isomorphism D(a) -> D(a^{*cop}):
    x_i -> -(-1)^{p_i} (dual-side copy), x^i -> (primal-side copy)."""
    n = a.dim
    out = {}
    for i in range(n):
        out[i] = (n + i, Fraction(-1 if a.parity[i] == 0 else 1))
        out[n + i] = (i, Fraction(1))
    return out


def u_transport(target_alg: UAlgebra, x: TensorUElem, iota: dict) -> TensorUElem:
    """Algebra morphism U(D(a)) -> U(D(b)) induced by the letterwise map."""
    src = x.alg
    out = {}
    for key, c in x.terms.items():
        legs = []
        coeff = Fraction(1)
        for mono in key:
            word = src.mono_word(mono)
            letters = []
            for i in word:
                j, s = iota[i]
                coeff *= s
                letters.append(j)
            legs.append(target_alg.straighten(tuple(letters)))
        for combo in itertools.product(*[list(d.items()) for d in legs]):
            nk = tuple(m for m, _ in combo)
            f = coeff
            for _, v in combo:
                f *= v
            cc = c * f
            out[nk] = out[nk] + cc if nk in out else cc
    return TensorUElem(target_alg, x.arity, out)


def theta_bar(iso_b: MPiIso, x: TensorUElem, iota: dict) -> TensorUElem:
    """antipode0 after transport along iota; an anti-morphism U(D(a)) -> U(D(b))."""
    return antipode0(u_transport(iso_b.alg, x, iota))


def omega(iso_b: MPiIso, u: TensorUElem) -> TensorUElem:
    """Sign involution: (-1)^{dual degree} in symmetrized coordinates."""
    coeffs = iso_b.backward(u)
    dressed = {}
    for mono, c in coeffs.items():
        s = -1 if iso_b.dual_degree(mono) % 2 else 1
        dressed[mono] = c * s
    return iso_b.forward(dressed)


def duality_candidate(a, J: TwistJ) -> TwistJ:
    """Transport a twist over D(a) to a twist over D(a^{*cop}).

    The letterwise Lie morphism iota: D(a) -> D(a^{*cop}) induces an
    algebra-and-coproduct morphism of enveloping algebras, so it carries
    twist solutions to twist solutions.  It sends t to -t, which an even
    associator does not see, and the leading term lands on +r'^{21}/2.
    """
    b = dual_cop(a)
    iso_b = m_pi_iso(b, J.iso.alg.order, J.iso.cap)
    iota = _iota_map(a)
    body = u_transport(iso_b.alg, J.body, iota)
    return TwistJ(iso_b, J.order, body)


@dataclass
class DualityResult:
    candidate: TwistJ
    residual_ok: bool
    order1_ok: bool
    gauge: "GaugeResult"

    @property
    def ok(self):
        return self.residual_ok and self.order1_ok and self.gauge.ok

    def summary(self):
        g = "ok" if self.gauge.ok else f"obstructed at {self.gauge.obstructed_order}"
        return (f"residual_zero={self.residual_ok} "
                f"order1=+r'21/2:{self.order1_ok} gauge={g}")


def duality_check(a, phi: Associator, order: int) -> DualityResult:
    """Full transported-twist check through hbar^order.

    Solves both sides one order deeper than requested and compares the
    truncations: the top coefficient of a solve is only pinned up to kernel
    freedom, and the representative that extends one more order is the one
    the uniqueness argument for gauge equivalence needs.  `phi` must carry
    degree >= order + 1.
    """
    deep = order + 1
    J = solve_twist(a, phi, deep)
    cand = duality_candidate(a, J)
    b = dual_cop(a)
    Jb = solve_twist(b, phi, deep)
    target = swap_twist(Jb)
    cand_t = cand.truncate(order)
    target_t = target.truncate(order)
    residual_ok = cand_t.residual(phi).is_zero()
    rb = canonical_r(cand_t.iso)
    order1_ok = cand_t.order1() == rb.flip().scale(Fraction(1, 2))
    gauge = gauge_equivalent(cand_t, target_t)
    return DualityResult(cand_t, residual_ok, order1_ok, gauge)


def antipode_legwise(alg: UAlgebra, x: TensorUElem) -> TensorUElem:
    """Componentwise classical antipode S (x) S on a 2-leg tensor, with the
    Koszul sign (-1)^{|m1||m2|} that makes it the antipode of the tensor
    square."""
    out = {}
    for (m1, m2), c in x.terms.items():
        e1 = antipode0(TensorUElem(alg, 1, {(m1,): HSeries.one(alg.order)}))
        e2 = antipode0(TensorUElem(alg, 1, {(m2,): HSeries.one(alg.order)}))
        s = -1 if (alg.mono_parity(m1) and alg.mono_parity(m2)) else 1
        for k1, c1 in e1.terms.items():
            for k2, c2 in e2.terms.items():
                key = (k1[0], k2[0])
                cc = c * c1 * c2 * s
                out[key] = out.get(key, HSeries.zero(alg.order)) + cc
    return TensorUElem(alg, 2, {k: v for k, v in out.items()
                                if not v.is_zero()})


def swap_twist(J: TwistJ) -> TwistJ:
    """The swapped twist [(S (x) S)(J^{21})]^{-1}.

    The plain leg flip J^{21} solves the twist equation (cocommutativity of
    Delta_0 plus Phi(B,A) = Phi(A,B)^{-1} absorb the reversal), but its
    leading term sits in the mirror gauge class; the antipode dressing plus
    inversion lands back in the class of +r^{21}/2 while staying an exact
    solution.  Verified residual-zero on all the bundled examples."""
    body = antipode_legwise(J.iso.alg, J.body.flip()).inverse()
    return TwistJ(J.iso, J.order, body)


# ---------------------------------------------------------------------------
# gauge equivalence


@dataclass
class GaugeResult:
    u: TensorUElem
    obstructed_order: int

    @property
    def ok(self):
        return self.obstructed_order is None


def _gauge_transform(J: TensorUElem, u: TensorUElem) -> TensorUElem:
    # (u x u) J Delta0(u)^{-1}: the side that maps solutions of
    # J^{1,2} J^{12,3} = J^{2,3} J^{1,23} Phi to solutions again (the
    # Delta0(u)^{-1} factor slides past Phi because t is invariant).
    uu = insertion(u, {1: 1}, 2) * insertion(u, {2: 1}, 2)
    return uu * J * insertion(u, {1: 1, 2: 1}, 2).inverse()


def gauge_equivalent(J1: TwistJ, J2: TwistJ) -> GaugeResult:
    """Find u = 1 + O(hbar), eps(u) = 1, with J2 = (u x u) J1 Delta0(u)^{-1},
    or report the first obstructed order.

    Works stage by stage in hbar with a Newton iteration whose unknowns are
    monomial coefficients of u at every level up to the stage, so kernel
    freedom frozen at lower orders is re-opened when a higher order needs it.
    """
    if J1.iso.alg.lie.basis != J2.iso.alg.lie.basis:
        raise ValueError("twists live on different carriers")
    alg = J1.iso.alg
    if J2.iso.alg is not alg:
        J2 = TwistJ(J1.iso, J2.order, TensorUElem(alg, 2, J2.body.terms))
    order = min(J1.order, J2.order)
    dirs = []
    for k in range(1, order + 1):
        for m in alg.monomials(2 * k):
            if sum(m) >= 1:
                dirs.append((k, m))
    u = alg.one(1)
    for stage in range(1, order + 1):
        for _ in range(8):
            W = insertion(u, {1: 1}, 2) * insertion(u, {2: 1}, 2)
            Duinv = insertion(u, {1: 1, 2: 1}, 2).inverse()
            G = J2.body - W * J1.body * Duinv
            gap = {}
            for key, c in G.terms.items():
                for p in range(1, stage + 1):
                    if c[p] != 0:
                        gap[(p, key)] = c[p]
            if not gap:
                break
            mid = J1.body * Duinv
            rows = {}
            trunc = {}
            for (k, m) in dirs:
                if k > stage:
                    continue
                # partners only matter up to depth stage - k
                if k not in trunc:
                    d = stage - k
                    trunc[k] = (mid.truncate_hbar(d), W.truncate_hbar(d),
                                Duinv.truncate_hbar(d), u.truncate_hbar(d))
                midt, Wt, Duinvt, ut = trunc[k]
                v = TensorUElem(alg, 1, {(m,): HSeries.hbar(alg.order, k)})
                vu = insertion(v, {1: 1}, 2) * insertion(ut, {2: 1}, 2) \
                     + insertion(ut, {1: 1}, 2) * insertion(v, {2: 1}, 2)
                col = vu * midt \
                    - Wt * midt * insertion(v, {1: 1, 2: 1}, 2) * Duinvt
                for key, c in col.terms.items():
                    for p in range(1, stage + 1):
                        if c[p] != 0:
                            rows.setdefault((p, key), {})[(k, m)] = c[p]
            solver = EchelonSolver(pivot_key=lambda c: (order - c[0], c[1]))
            for rk in sorted(set(rows) | set(gap)):
                solver.add_row(rows.get(rk, {}), gap.get(rk, Fraction(0)))
            try:
                sol = solver.solution()
            except Inconsistent:
                return GaugeResult(None, stage)
            bump = {}
            for (k, m), c in sol.items():
                h = HSeries.hbar(alg.order, k) * c
                bump[(m,)] = bump.get((m,), HSeries.zero(alg.order)) + h
            u = u + TensorUElem(alg, 1, bump)
        else:
            return GaugeResult(None, stage)
    resid = J2.body - _gauge_transform(J1.body, u)
    if not resid.is_zero():
        return GaugeResult(None, order + 1)
    return GaugeResult(u, None)


# ---------------------------------------------------------------------------
# the duality square on classical data


def duality_square_check(a, cap=3) -> Report:
    """Mechanical duality checks below the quantization:

    * the transported symmetrization map sends each product coordinate
      x (x) xi to a signed swap xi (x) x (the sign-dressed factor exchange),
    * the classical coproduct is self-dual under the transport
      (Delta_0 after theta_bar equals flipped theta_bar x theta_bar Delta_0),
    * products transport contravariantly with the Koszul sign.
    """
    rep = Report()
    b = dual_cop(a)
    iso_a = m_pi_iso(a, 1, cap)
    iso_b = m_pi_iso(b, 1, cap)
    iota = _iota_map(a)
    n = a.dim
    alg_a, alg_b = iso_a.alg, iso_b.alg

    def K(coeffs):
        out = {}
        for mono, c in coeffs.items():
            img = iso_b.backward(theta_bar(iso_b, iso_a.forward_mono(mono), iota))
            for m2, c2 in img.items():
                cc = c2 * c
                out[m2] = out.get(m2, HSeries.zero(alg_b.order)) + cc
        return {m: c for m, c in out.items() if not c.is_zero()}

    def predicted(mono):
        x, xi = mono[:n], mono[n:]
        degx, degxi = sum(x), sum(xi)
        ox = sum(k for k, p in zip(x, a.parity) if p)
        oxi = sum(k for k, p in zip(xi, a.parity) if p)
        s = (-1) ** (ox * oxi) * (-1) ** degx * (-1) ** ox
        s *= (-1) ** (degx + (ox * (ox - 1) // 2)) * (-1) ** (degxi + (oxi * (oxi - 1) // 2))
        return tuple(xi) + tuple(x), Fraction(s)

    for mono in alg_a.monomials(cap):
        img = K({mono: Fraction(1)})
        target, s = predicted(mono)
        want = {target: HSeries.const(s, alg_b.order)}
        ok = (set(img) == set(want)
              and all((img[m] - want[m]).is_zero() for m in img))
        _record(rep, "factor-exchange", str(mono),
                Fraction(0) if ok else Fraction(1))

    # coproduct self-duality: Delta0(theta(u)) = (theta x theta) flip Delta0(u)
    for mono in alg_a.monomials(cap):
        u = TensorUElem(alg_a, 1, {(mono,): HSeries.one(alg_a.order)})
        lhs = delta0(theta_bar(iso_b, u, iota))
        d = delta0(u).flip()
        rhs = alg_b.zero(2)
        for (m1, m2), c in d.terms.items():
            t1 = theta_bar(iso_b, TensorUElem(alg_a, 1, {(m1,): HSeries.one(alg_a.order)}), iota)
            t2 = theta_bar(iso_b, TensorUElem(alg_a, 1, {(m2,): HSeries.one(alg_a.order)}), iota)
            rhs = rhs + t1.tensor(t2).scale(c)
        _record(rep, "coproduct-self-duality", str(mono),
                _first_nonzero(lhs - rhs))

    # contravariant products: theta(uv) = +- theta(v) theta(u)
    monos = [m for m in alg_a.monomials(cap) if sum(m)]
    for m1 in monos:
        for m2 in monos:
            if sum(m1) + sum(m2) > cap:
                continue
            u = TensorUElem(alg_a, 1, {(m1,): HSeries.one(alg_a.order)})
            v = TensorUElem(alg_a, 1, {(m2,): HSeries.one(alg_a.order)})
            sign = -1 if (alg_a.mono_parity(m1) and alg_a.mono_parity(m2)) else 1
            lhs = theta_bar(iso_b, u * v, iota)
            rhs = (theta_bar(iso_b, v, iota) * theta_bar(iso_b, u, iota)).scale(sign)
            _record(rep, "anti-morphism", f"{m1}*{m2}",
                    _first_nonzero(lhs - rhs))
    return rep
