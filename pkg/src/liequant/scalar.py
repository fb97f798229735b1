"""Exact scalar towers used everywhere else.

Three coefficient domains:

* Rat -- plain rationals, alias for fractions.Fraction.
* HSeries -- truncated formal power series in hbar: a0 + a1*h + ... + aN*h^N,
  everything mod h^(N+1).  The truncation order N is carried by each element;
  binary operations truncate to the smaller order.
* QScalar -- rational functions in a formal variable v = q^(1/D).  The root
  denominator D is not stored on the element; it only matters when converting
  to an HSeries (see q_to_hseries).

Numeric evaluation (complex floats) is only used by the monodromy code.
"""

from __future__ import annotations

from fractions import Fraction

Rat = Fraction

CplxF = complex


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to a rational")


# ---------------------------------------------------------------------------
# truncated hbar-series


class HSeries:
    """Truncated power series in hbar with Fraction coefficients.

    HSeries([a0, a1, a2], 4) means a0 + a1*h + a2*h^2 + 0*h^3 + 0*h^4,
    known modulo h^5.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order=None):
        if isinstance(coeffs, (int, Fraction, str)):
            coeffs = [coeffs]
        coeffs = [_rat(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        coeffs = coeffs[: order + 1]
        coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
        self.coeffs = tuple(coeffs)
        self.order = order

    # -- constructors

    @staticmethod
    def zero(order):
        return HSeries([0], order)

    @staticmethod
    def one(order):
        return HSeries([1], order)

    @staticmethod
    def hbar(order, power=1):
        c = [Fraction(0)] * (power + 1)
        if power <= order:
            c[power] = Fraction(1)
        return HSeries(c, order)

    @staticmethod
    def const(x, order):
        return HSeries([_rat(x)], order)

    @staticmethod
    def _make(coeffs, order):
        # trusted internal path: coeffs is already a Fraction tuple of
        # length order + 1
        s = object.__new__(HSeries)
        s.coeffs = coeffs
        s.order = order
        return s

    # -- queries

    def __getitem__(self, k):
        if k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def is_zero(self):
        for c in self.coeffs:
            if c._numerator:
                return False
        return True

    def valuation(self):
        """Index of first nonzero coefficient, or None for the zero series."""
        for i, c in enumerate(self.coeffs):
            if c._numerator:
                return i
        return None

    def truncate(self, order):
        if order >= self.order:
            return HSeries._make(
                self.coeffs + (Fraction(0),) * (order - self.order), order)
        return HSeries._make(self.coeffs[: order + 1], order)

    # -- arithmetic

    def _joint(self, other):
        if not isinstance(other, HSeries):
            other = HSeries.const(other, self.order)
        n = min(self.order, other.order)
        return other, n

    def __add__(self, other):
        if not isinstance(other, HSeries):
            other = HSeries.const(other, self.order)
        a, b = self.coeffs, other.coeffs
        if self.order == other.order:
            return HSeries._make(tuple(map(Fraction.__add__, a, b)), self.order)
        n = min(self.order, other.order)
        return HSeries._make(tuple(a[i] + b[i] for i in range(n + 1)), n)

    __radd__ = __add__

    def __neg__(self):
        return HSeries._make(tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        if not isinstance(other, HSeries):
            other = HSeries.const(other, self.order)
        a, b = self.coeffs, other.coeffs
        if self.order == other.order:
            return HSeries._make(tuple(map(Fraction.__sub__, a, b)), self.order)
        n = min(self.order, other.order)
        return HSeries._make(tuple(a[i] - b[i] for i in range(n + 1)), n)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, str)):
            c = _rat(other)
            return HSeries._make(tuple(c * a for a in self.coeffs), self.order)
        other, n = self._joint(other)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a._numerator:
                for j, b in enumerate(other.coeffs[: n + 1 - i]):
                    if b._numerator:
                        out[i + j] += a * b
        return HSeries._make(tuple(out), n)

    __rmul__ = __mul__

    def inverse(self):
        a0 = self.coeffs[0]
        if a0 == 0:
            raise ZeroDivisionError("HSeries with zero constant term is not invertible")
        n = self.order
        inv = [Fraction(0)] * (n + 1)
        inv[0] = 1 / a0
        for k in range(1, n + 1):
            s = Fraction(0)
            for i in range(1, k + 1):
                s += self.coeffs[i] * inv[k - i]
            inv[k] = -s / a0
        return HSeries(inv, n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, str)):
            c = _rat(other)
            return HSeries([a / c for a in self.coeffs], self.order)
        other, _ = self._joint(other)
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, str)):
            other = HSeries.const(other, self.order)
        if not isinstance(other, HSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def eval(self, h):
        """Numeric evaluation at a (complex or float) value of hbar."""
        acc = 0j if isinstance(h, complex) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * h + float(c.numerator) / float(c.denominator)
        return acc

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*h")
            else:
                terms.append(f"{c}*h^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"HSeries({body}; N={self.order})"


def hseries_mul(a: HSeries, b: HSeries) -> HSeries:
    return a * b


def hseries_exp(a: HSeries) -> HSeries:
    """exp of a series with zero constant term."""
    if a.coeffs[0] != 0:
        raise ValueError("hseries_exp needs zero constant term")
    n = a.order
    out = HSeries.one(n)
    term = HSeries.one(n)
    for k in range(1, n + 1):
        term = term * a / k
        out = out + term
    return out


def hseries_log(a: HSeries) -> HSeries:
    """log of a series with constant term 1."""
    if a.coeffs[0] != 1:
        raise ValueError("hseries_log needs constant term 1")
    n = a.order
    u = a - HSeries.one(n)
    out = HSeries.zero(n)
    term = HSeries.one(n)
    for k in range(1, n + 1):
        term = term * u
        out = out + term * Fraction((-1) ** (k + 1), k)
    return out


# ---------------------------------------------------------------------------
# dense univariate polynomials over Fraction (little-endian tuples)


def _poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _poly_add(p, q):
    n = max(len(p), len(q))
    return _poly_trim(
        [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]
    )


def _poly_neg(p):
    return tuple(-c for c in p)


def _poly_mul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            if b != 0:
                out[i + j] += a * b
    return _poly_trim(out)

def _poly_scale(p, c):
    if c == 0:
        return ()
    return tuple(a * c for a in p)


def _poly_divmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    while len(p) >= len(q):
        while p and p[-1] == 0:
            p.pop()
        if len(p) < len(q):
            break
        c = p[-1] / lead
        d = len(p) - len(q)
        quo[d] = c
        for i, b in enumerate(q):
            p[d + i] -= c * b
        p.pop()
    return _poly_trim(quo), _poly_trim(p)


def _poly_gcd(p, q):
    while q:
        _, p = _poly_divmod(p, q)
        p, q = q, p
    if p:
        p = tuple(c / p[-1] for c in p)  # monic
    return p


# ---------------------------------------------------------------------------
# rational functions in v = q^(1/D)


class QScalar:
    """Rational function num(v)/den(v) over Q, v a formal root of q.

    Always kept reduced with monic denominator, so equality is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(Fraction(1),)):
        if isinstance(num, (int, Fraction, str)):
            num = (_rat(num),)
        num = _poly_trim([_rat(c) for c in num])
        den = _poly_trim([_rat(c) for c in den])
        if not den:
            raise ZeroDivisionError("QScalar with zero denominator")
        g = _poly_gcd(num, den)
        if g and len(g) > 1:
            num, _ = _poly_divmod(num, g)
            den, _ = _poly_divmod(den, g)
        if den:
            lead = den[-1]
            if lead != 1:
                num = tuple(c / lead for c in num)
                den = tuple(c / lead for c in den)
        self.num = num
        self.den = den

    # -- constructors

    @staticmethod
    def zero():
        return QScalar(0)

    @staticmethod
    def one():
        return QScalar(1)

    @staticmethod
    def v_power(k: int):
        """v^k for integer k (negative powers allowed)."""
        if k >= 0:
            return QScalar((Fraction(0),) * k + (Fraction(1),))
        return QScalar((Fraction(1),), (Fraction(0),) * (-k) + (Fraction(1),))

    @staticmethod
    def const(x):
        return QScalar(_rat(x))

    # -- arithmetic

    def _coerce(self, other):
        if isinstance(other, QScalar):
            return other
        if isinstance(other, (int, Fraction, str)):
            return QScalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        num = _poly_add(_poly_mul(self.num, o.den), _poly_mul(o.num, self.den))
        return QScalar(num, _poly_mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return QScalar(_poly_neg(self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QScalar(_poly_mul(self.num, o.num), _poly_mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero QScalar")
        return QScalar(_poly_mul(self.num, o.den), _poly_mul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("zero QScalar has no inverse")
        return QScalar(self.den, self.num)

    def is_zero(self):
        return not self.num

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def eval(self, v):
        """Numeric evaluation at v (float or complex)."""

        def horner(p):
            acc = 0j if isinstance(v, complex) else 0.0
            for c in reversed(p):
                acc = acc * v + float(c)
            return acc

        nv = horner(self.num)
        dv = horner(self.den) if self.den else 1.0
        return nv / dv

    def as_rational(self):
        """Return the underlying Fraction if constant, else None."""
        if len(self.den) == 1 and self.den[0] == 1 and len(self.num) <= 1:
            return self.num[0] if self.num else Fraction(0)
        return None

    def __repr__(self):
        def fmt(p):
            if not p:
                return "0"
            parts = []
            for i, c in enumerate(p):
                if c == 0:
                    continue
                if i == 0:
                    parts.append(str(c))
                elif i == 1:
                    parts.append(f"{c}*v" if c != 1 else "v")
                else:
                    parts.append(f"{c}*v^{i}" if c != 1 else f"v^{i}")
            return " + ".join(parts)

        if self.den == (Fraction(1),):
            return f"QScalar({fmt(self.num)})"
        return f"QScalar(({fmt(self.num)})/({fmt(self.den)}))"


def q_power(exponent, D: int) -> QScalar:
    """q^exponent as a QScalar in v = q^(1/D); D*exponent must be integral."""
    e = _rat(exponent) * D
    if e.denominator != 1:
        raise ValueError(f"exponent {exponent} not representable with root order {D}")
    return QScalar.v_power(int(e))


def q_to_hseries(x: QScalar, order: int, D: int = 1) -> HSeries:
    """Expand a QScalar at v = exp(hbar/(2*D)), truncated at the given order.

    With D = 1 this sends q to exp(hbar/2).
    """
    v = hseries_exp(HSeries.hbar(order) * Fraction(1, 2 * D))

    def horner(p):
        acc = HSeries.zero(order)
        for c in reversed(p):
            acc = acc * v + HSeries.const(c, order)
        return acc

    num = horner(x.num)
    den = horner(x.den) if x.den else HSeries.one(order)
    return num * den.inverse()


# ---------------------------------------------------------------------------
# exponential-polynomial scalars


class ExpScalar:
    """Finite sums  sum_q  c_q * E(q)  with E(q) standing for e^q, q rational.

    Distinct rational exponents give linearly independent values of e^q, so
    an element is zero exactly when all stored coefficients are zero; equality
    testing stays exact.  Only a ring (plus division by nonzero monomials) is
    provided, which is all the deformed-double tables need.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for q, c in (terms or {}).items():
            q, c = _rat(q), _rat(c)
            if c != 0:
                clean[q] = clean.get(q, Fraction(0)) + c
        self.terms = {q: c for q, c in clean.items() if c != 0}

    @staticmethod
    def const(c):
        return ExpScalar({Fraction(0): _rat(c)})

    @staticmethod
    def exp(q):
        """e^q as a formal symbol."""
        return ExpScalar({_rat(q): Fraction(1)})

    @staticmethod
    def coerce(x):
        if isinstance(x, ExpScalar):
            return x
        return ExpScalar.const(_rat(x))

    def __add__(self, other):
        other = ExpScalar.coerce(other)
        out = dict(self.terms)
        for q, c in other.terms.items():
            out[q] = out.get(q, Fraction(0)) + c
        return ExpScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return ExpScalar({q: -c for q, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-ExpScalar.coerce(other))

    def __rsub__(self, other):
        return ExpScalar.coerce(other) + (-self)

    def __mul__(self, other):
        other = ExpScalar.coerce(other)
        out = {}
        for q1, c1 in self.terms.items():
            for q2, c2 in other.terms.items():
                q = q1 + q2
                out[q] = out.get(q, Fraction(0)) + c1 * c2
        return ExpScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = ExpScalar.coerce(other)
        if len(other.terms) != 1:
            raise ZeroDivisionError("ExpScalar division only by nonzero monomials")
        (q, c), = other.terms.items()
        return ExpScalar({p - q: v / c for p, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExpScalar.const(other)
        if not isinstance(other, ExpScalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def eval(self, _math_exp=None):
        """Numeric value (float)."""
        import math

        f = _math_exp or math.exp
        return sum(float(c) * f(float(q)) for q, c in self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "ExpScalar(0)"
        bits = []
        for q in sorted(self.terms):
            c = self.terms[q]
            bits.append(f"{c}" if q == 0 else f"{c}*E({q})")
        return "ExpScalar(" + " + ".join(bits) + ")"
