"""Truncated hbar-adic enveloping algebras of finite-dimensional super Lie
algebras.

Elements live in U(g)^{(x)n} with PBW-ordered monomials (exponent tuples over
the ordered basis, odd exponents capped at 1) and HSeries coefficients.
Products straighten words step by step,

    x_i x_j = (-1)^{p_i p_j} x_j x_i + [x_i, x_j],    theta^2 = (1/2)[theta,theta],

with every bracket taken from the carrier's structure constants.  No PBW
degree is ever dropped during a product: a single product of elements of
degree p and q only produces degrees <= p+q, and the hbar truncation bounds
everything the quantization pipeline builds, so truncating by PBW degree is
neither needed nor safe (it would break associativity through bracket terms).
The pbw_cap on a carrier is only an enumeration bound for basis listings.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .scalar import HSeries, _rat


class UAlgebra:
    """Carrier: a Lie (bi)algebra, an hbar order, and straightening caches."""

    def __init__(self, lie, order, pbw_cap=None):
        self.lie = lie
        self.order = order
        self.pbw_cap = pbw_cap
        self.dim = lie.dim
        self._straight = {}
        self._sym = {}
        self._words = {}
        self._pars = {}
        self._idelta = {}
        self._ins = {}
        self.all_even = not any(lie.parity)

    def __getattr__(self, name):
        # carriers unpickled from older runs lack the newer cache slots
        if name in ("_straight", "_sym", "_words", "_pars", "_idelta", "_ins"):
            val = {}
            setattr(self, name, val)
            return val
        if name == "all_even":
            val = not any(self.lie.parity)
            self.all_even = val
            return val
        raise AttributeError(name)

    # -- monomials: exponent tuples over the basis ---------------------------

    def unit_mono(self):
        return (0,) * self.dim

    def mono_word(self, mono):
        hit = self._words.get(mono)
        if hit is not None:
            return hit
        out = []
        for i, k in enumerate(mono):
            out.extend([i] * k)
        res = tuple(out)
        self._words[mono] = res
        return res

    def word_mono(self, word):
        m = [0] * self.dim
        for i in word:
            m[i] += 1
        return tuple(m)

    def mono_degree(self, mono):
        return sum(mono)

    def mono_parity(self, mono):
        hit = self._pars.get(mono)
        if hit is None:
            hit = sum(k * p for k, p in zip(mono, self.lie.parity)) % 2
            self._pars[mono] = hit
        return hit

    def monomials(self, max_degree):
        """All PBW monomials of degree <= max_degree (odd exponents <= 1)."""
        out = []

        def rec(i, left, acc):
            if i == self.dim:
                out.append(tuple(acc))
                return
            top = left if self.lie.parity[i] == 0 else min(left, 1)
            for k in range(top + 1):
                rec(i + 1, left - k, acc + [k])

        rec(0, max_degree, [])
        return out

    # -- straightening -------------------------------------------------------

    def straighten(self, word):
        """word (tuple of basis indices) -> {monomial: Fraction}."""
        word = tuple(word)
        hit = self._straight.get(word)
        if hit is not None:
            return hit
        par = self.lie.parity
        pos = None
        for p in range(len(word) - 1):
            i, j = word[p], word[p + 1]
            if i > j or (i == j and par[i]):
                pos = p
                break
        if pos is None:
            res = {self.word_mono(word): Fraction(1)}
            self._straight[word] = res
            return res
        i, j = word[pos], word[pos + 1]
        pre, suf = word[:pos], word[pos + 2:]
        acc = {}

        def add(d, c):
            for m, v in d.items():
                acc[m] = acc.get(m, Fraction(0)) + c * v

        if i == j:
            for k, c in self.lie.bracket(i, i).items():
                add(self.straighten(pre + (k,) + suf), c / 2)
        else:
            sign = -1 if (par[i] and par[j]) else 1
            add(self.straighten(pre + (j, i) + suf), Fraction(sign))
            for k, c in self.lie.bracket(i, j).items():
                add(self.straighten(pre + (k,) + suf), c)
        acc = {m: v for m, v in acc.items() if v != 0}
        self._straight[word] = acc
        return acc

    # -- element constructors ------------------------------------------------

    def zero(self, arity=1):
        return TensorUElem(self, arity, {})

    def one(self, arity=1):
        key = (self.unit_mono(),) * arity
        return TensorUElem(self, arity, {key: HSeries.one(self.order)})

    def gen(self, i):
        m = [0] * self.dim
        m[i] = 1
        return TensorUElem(self, 1, {(tuple(m),): HSeries.one(self.order)})

    def element(self, terms, arity=1):
        return TensorUElem(self, arity, terms)


def _coerce_coeff(c, order):
    if isinstance(c, HSeries):
        return c.truncate(order) if c.order > order else c
    return HSeries.const(_rat(c), order)


class TensorUElem:
    """Sparse element of U(g)^{(x)arity}; keys are tuples of monomials."""

    __slots__ = ("alg", "arity", "terms", "_vit")

    def __init__(self, alg, arity, terms):
        self.alg = alg
        self.arity = arity
        clean = {}
        for key, c in terms.items():
            c = _coerce_coeff(c, alg.order)
            if not c.is_zero():
                if key in clean:
                    c = clean[key] + c
                clean[key] = c
        self.terms = {k: v for k, v in clean.items() if not v.is_zero()}
        self._vit = None

    def _vitems(self):
        """Terms with valuations, sorted by valuation (cached)."""
        try:
            vit = self._vit
        except AttributeError:
            vit = None
        if vit is None:
            vit = sorted(((c.valuation(), k, c)
                          for k, c in self.terms.items()),
                         key=lambda t: t[0])
            self._vit = vit
        return vit

    # -- ring structure ------------------------------------------------------

    def _check(self, other):
        if self.alg is not other.alg or self.arity != other.arity:
            raise ValueError("carrier or arity mismatch")

    def __add__(self, other):
        if not isinstance(other, TensorUElem):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorUElem(self.alg, self.arity, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorUElem(self.alg, self.arity,
                           {k: -c for k, c in self.terms.items()})

    def scale(self, c):
        c = _coerce_coeff(c, self.alg.order)
        return TensorUElem(self.alg, self.arity,
                           {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, HSeries)):
            return self.scale(other)
        self._check(other)
        alg = self.alg
        order = alg.order
        even = alg.all_even
        arity = self.arity
        straighten = alg.straighten
        mono_word = alg.mono_word
        one = Fraction(1)
        out = {}
        o_items = other._vitems()
        for v1, k1, c1 in self._vitems():
            if o_items and v1 + o_items[0][0] > order:
                break
            pars1 = None if even else [alg.mono_parity(m) for m in k1]
            w1 = [mono_word(m) for m in k1]
            for v2, k2, c2 in o_items:
                if v1 + v2 > order:
                    break
                coeff = c1 * c2
                if even:
                    sign = 1
                else:
                    # Koszul sign: move each right-factor leg past the later
                    # left-factor legs
                    s = 0
                    for leg in range(arity):
                        if alg.mono_parity(k2[leg]):
                            s += sum(pars1[leg + 1:])
                    sign = -1 if s % 2 else 1
                legs = [straighten(w1[leg] + mono_word(k2[leg]))
                        for leg in range(arity)]
                # distribute; merge duplicate keys with plain Fractions before
                # touching the series coefficients
                local = {}
                for combo in itertools.product(*[d.items() for d in legs]):
                    f = one
                    for _, v in combo:
                        f = f * v
                    key = tuple(m for m, _ in combo)
                    local[key] = local[key] + f if key in local else f
                for key, f in local.items():
                    if not f:
                        continue
                    if sign < 0:
                        f = -f
                    c = coeff if f == 1 else coeff * f
                    out[key] = out[key] + c if key in out else c
        return TensorUElem(self.alg, self.arity, out)

    __rmul__ = scale

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorUElem):
            return NotImplemented
        return (self.alg is other.alg and self.arity == other.arity
                and (self - other).is_zero())

    # -- structure helpers ---------------------------------------------------

    def counit(self):
        key = (self.alg.unit_mono(),) * self.arity
        return self.terms.get(key, HSeries.zero(self.alg.order))

    def hbar_coefficient(self, k):
        out = {}
        for key, c in self.terms.items():
            v = c[k]
            if v != 0:
                out[key] = v
        return out

    def truncate_hbar(self, k):
        out = {}
        for key, c in self.terms.items():
            kept = [c[i] if i <= k else Fraction(0) for i in range(c.order + 1)]
            if any(kept):
                out[key] = HSeries(kept, c.order)
        return TensorUElem(self.alg, self.arity, out)

    def leg_degrees(self, key):
        return tuple(self.alg.mono_degree(m) for m in key)

    def flip(self):
        """Super flip of an arity-2 element."""
        if self.arity != 2:
            raise ValueError("flip needs arity 2")
        alg = self.alg
        out = {}
        for (m1, m2), c in self.terms.items():
            s = -1 if (alg.mono_parity(m1) and alg.mono_parity(m2)) else 1
            key = (m2, m1)
            cc = c * s
            out[key] = out[key] + cc if key in out else cc
        return TensorUElem(alg, 2, out)

    def tensor(self, other):
        """Plain juxtaposition self (x) other (no Koszul sign: pure placement)."""
        if self.alg is not other.alg:
            raise ValueError("carrier mismatch")
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out[k1 + k2] = c1 * c2
        return TensorUElem(self.alg, self.arity + other.arity, out)

    def apply_on_leg(self, leg, fn, out_arity):
        """Replace leg (0-based) by fn(single-leg element) of arity out_arity."""
        alg = self.alg
        total = alg.zero(self.arity - 1 + out_arity)
        for key, c in self.terms.items():
            piece = fn(TensorUElem(alg, 1, {(key[leg],): HSeries.one(alg.order)}))
            for pkey, pc in piece.terms.items():
                nk = key[:leg] + pkey + key[leg + 1:]
                cc = c * pc
                if nk in total.terms:
                    total.terms[nk] = total.terms[nk] + cc
                else:
                    total.terms[nk] = cc
        return TensorUElem(alg, self.arity - 1 + out_arity, total.terms)

    def inverse(self):
        """Inverse when the identity-coefficient is an invertible series and
        the rest is hbar-positive (enough for every 1 + O(hbar) element)."""
        alg = self.alg
        key1 = (alg.unit_mono(),) * self.arity
        c0 = self.terms.get(key1)
        if c0 is None or c0[0] == 0:
            raise ZeroDivisionError("constant term not invertible")
        c0inv = c0.inverse()
        one = alg.one(self.arity)
        n = one - self.scale(c0inv)
        if not all(c.valuation() and c.valuation() >= 1 for c in n.terms.values()):
            raise ZeroDivisionError("inverse needs 1 + O(hbar) shape")
        out = one
        term = one
        for _ in range(alg.order):
            term = term * n
            if term.is_zero():
                break
            out = out + term
        return out.scale(c0inv)

    def __repr__(self):
        bits = []
        for key in sorted(self.terms)[:6]:
            bits.append(f"{key}: {self.terms[key]}")
        more = "..." if len(self.terms) > 6 else ""
        return f"TensorUElem(arity={self.arity}, {{{', '.join(bits)}{more}}})"


UElem = TensorUElem  # arity-1 elements are the same container


# ---------------------------------------------------------------------------
# spec'd operation names


def u_mul(x: TensorUElem, y: TensorUElem) -> TensorUElem:
    return x * y


def sym(alg: UAlgebra, poly) -> TensorUElem:
    """Symmetrization S(g) -> U(g): average of all orderings, Koszul-signed.

    `poly` is a dict {monomial: coefficient} or an arity-1 element whose keys
    are read as symmetric-algebra monomials.
    """
    if isinstance(poly, TensorUElem):
        items = [(key[0], c) for key, c in poly.terms.items()]
    else:
        items = list(poly.items())
    out = alg.zero(1)
    for mono, coeff in items:
        d = _sym_mono(alg, mono)
        out = out + TensorUElem(alg, 1, {(k,): _coerce_coeff(coeff, alg.order) * v
                                         for k, v in d.items()})
    return out


def _sym_mono(alg, mono):
    hit = alg._sym.get(mono)
    if hit is not None:
        return hit
    word = alg.mono_word(mono)
    n = len(word)
    par = alg.lie.parity
    acc = {}
    count = 0
    for perm in itertools.permutations(range(n)):
        count += 1
        # Koszul sign: inversions among odd letters
        s = 0
        for a in range(n):
            for b in range(a + 1, n):
                if perm[a] > perm[b] and par[word[perm[a]]] and par[word[perm[b]]]:
                    s += 1
        sign = -1 if s % 2 else 1
        for m, v in alg.straighten(tuple(word[p] for p in perm)).items():
            acc[m] = acc.get(m, Fraction(0)) + sign * v
    res = {m: v / count for m, v in acc.items() if v != 0}
    alg._sym[mono] = res
    return res


def delta0(x: TensorUElem) -> TensorUElem:
    """Standard coproduct (generators primitive) of an arity-1 element."""
    return iterated_delta0(x, 2)


def _mono_delta(alg, mono, n):
    """Iterated coproduct of one PBW monomial as {key: Fraction}, memoized."""
    hit = alg._idelta.get((mono, n))
    if hit is not None:
        return hit
    acc = alg.one(n)
    for i in alg.mono_word(mono):
        g = alg.gen(i)
        spread = alg.zero(n)
        for leg in range(n):
            ones_l = alg.one(leg) if leg else TensorUElem(alg, 0, {(): HSeries.one(alg.order)})
            ones_r = alg.one(n - leg - 1) if n - leg - 1 else TensorUElem(alg, 0, {(): HSeries.one(alg.order)})
            spread = spread + ones_l.tensor(g).tensor(ones_r)
        acc = acc * spread
    res = {key: c[0] for key, c in acc.terms.items()}
    alg._idelta[(mono, n)] = res
    return res


def iterated_delta0(x: TensorUElem, n: int) -> TensorUElem:
    if x.arity != 1:
        raise ValueError("delta0 takes arity-1 elements")
    alg = x.alg
    if n == 0:
        return TensorUElem(alg, 0, {(): x.counit()})
    out = {}
    for (mono,), c in x.terms.items():
        for key, f in _mono_delta(alg, mono, n).items():
            cc = c if f == 1 else c * f
            out[key] = out[key] + cc if key in out else cc
    return TensorUElem(alg, n, out)


def antipode0(x: TensorUElem) -> TensorUElem:
    """Classical antipode: anti-automorphism with S(x) = -x on generators."""
    if x.arity != 1:
        raise ValueError("antipode0 takes arity-1 elements")
    alg = x.alg
    par = alg.lie.parity
    out = {}
    for (mono,), c in x.terms.items():
        word = alg.mono_word(mono)
        k = len(word)
        odd = sum(1 for i in word if par[i])
        # (-1)^k from negating generators, Koszul sign from full reversal
        s = (-1) ** k * (-1 if (odd * (odd - 1) // 2) % 2 else 1)
        for m, v in alg.straighten(tuple(reversed(word))).items():
            key = (m,)
            cc = c * (s * v)
            out[key] = out[key] + cc if key in out else cc
    return TensorUElem(alg, 1, out)


def counit0(x: TensorUElem) -> HSeries:
    return x.counit()


def _insert_key(alg, key, phi, n, m):
    """Insertion table of one source key as {target key: Fraction}."""
    preim = {k: sorted(t for t in phi if phi[t] == k) for k in range(1, n + 1)}
    acc = alg.one(m)
    for k in range(1, n + 1):
        legs = preim[k]
        mono = key[k - 1]
        if not legs:
            if sum(mono):
                return {}  # counit kills anything but the unit
            continue
        placed = {}
        for skey, f in _mono_delta(alg, mono, len(legs)).items():
            full = [alg.unit_mono()] * m
            for pos, mo in zip(legs, skey):
                full[pos - 1] = mo
            placed[tuple(full)] = HSeries.const(f, alg.order)
        acc = acc * TensorUElem(alg, m, placed)
    return {fkey: c[0] for fkey, c in acc.terms.items()}


def insertion(x: TensorUElem, phi: dict, m: int) -> TensorUElem:
    """Insertion-coproduct x -> x^phi.

    `phi` maps target legs (1-based, subset of 1..m) to source legs (1..n).
    Source legs with several preimages get the iterated coproduct spread over
    those target legs; target legs outside the domain receive the unit.
    """
    alg = x.alg
    n = x.arity
    sig = tuple(sorted(phi.items()))
    out = {}
    for key, c in x.terms.items():
        ck = (key, sig, m)
        tab = alg._ins.get(ck)
        if tab is None:
            tab = _insert_key(alg, key, phi, n, m)
            alg._ins[ck] = tab
        for fkey, f in tab.items():
            cc = c if f == 1 else c * f
            out[fkey] = out[fkey] + cc if fkey in out else cc
    return TensorUElem(alg, m, out)


# ---------------------------------------------------------------------------
# the symmetrization isomorphism S(a) (x) S(a*) ~ U(D(a))


class MPiIso:
    """x (x) xi  ->  sym_a(x) * sym_{a*}(xi), unitriangular by PBW degree."""

    def __init__(self, a, order, cap):
        from .bialg import double

        self.a = a
        self.n = a.dim
        self.double, self.form = double(a)
        self.alg = UAlgebra(self.double, order, pbw_cap=cap)
        self.cap = cap
        self._fwd = {}

    def split(self, mono):
        return mono[: self.n], mono[self.n:]

    def dual_degree(self, mono):
        return sum(mono[self.n:])

    def forward_mono(self, mono) -> TensorUElem:
        hit = self._fwd.get(mono)
        if hit is not None:
            return hit
        x, xi = self.split(mono)
        sx = sym(self.alg, {x + (0,) * self.n: Fraction(1)})
        sxi = sym(self.alg, {(0,) * self.n + xi: Fraction(1)})
        res = sx * sxi
        self._fwd[mono] = res
        return res

    def forward(self, coeffs) -> TensorUElem:
        out = self.alg.zero(1)
        for mono, c in coeffs.items():
            out = out + self.forward_mono(mono).scale(c)
        return out

    def backward(self, u: TensorUElem):
        """U(D(a)) element -> {pair monomial: HSeries}, exact unitriangular
        back-substitution (highest PBW degree first)."""
        rem = {key[0]: c for key, c in u.terms.items()}
        out = {}
        while rem:
            mono = max(rem, key=lambda m: (sum(m), m))
            c = rem.pop(mono)
            if c.is_zero():
                continue
            out[mono] = out.get(mono, HSeries.zero(self.alg.order)) + c
            img = self.forward_mono(mono)
            for key, v in img.terms.items():
                mm = key[0]
                if mm == mono:
                    corr = c * v - c  # v is 1 on the leading monomial
                    if not corr.is_zero():
                        rem[mm] = rem.get(mm, HSeries.zero(self.alg.order)) - corr
                else:
                    cc = c * v
                    rem[mm] = rem.get(mm, HSeries.zero(self.alg.order)) - cc
            rem = {m: v for m, v in rem.items() if not v.is_zero()}
        return {m: c for m, c in out.items() if not c.is_zero()}


def m_pi_iso(a, order=2, cap=4) -> MPiIso:
    return MPiIso(a, order, cap)
