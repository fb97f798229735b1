"""Free associative / free Lie machinery and the braid algebras t_3, t_4.

Words are plain strings over a single-character alphabet ("AB", "abc", ...).
NCPoly is a sparse word -> Fraction map with an optional degree cap; the
product truncates at the cap (the carrier is the graded quotient by words
longer than the cap, so every retained degree is exact).

t_n (n = 3, 4) is presented through its iterated-extension normal form:

    U(t3) = k[z] (x) k<A,B>            z = t12+t13+t23, A = t12, B = t23
    U(t4) = k[z] (x) k<A,B> |x k<a,b,c> z = sum t_ij, A = t12, B = t23,
                                        a = t14, b = t24, c = t34

with t13 recovered as z - (everything else).  The only straightening needed
is moving {a,b,c} letters past {A,B} letters, governed by the derivation

    [A,a] = ab-ba   [A,b] = -(ab-ba)   [A,c] = 0
    [B,a] = 0       [B,b] = bc-cb      [B,c] = -(bc-cb)

which encodes the defining relations [t_ij, t_ik + t_jk] = 0 and
[t_ij, t_kl] = 0 (disjoint) exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .scalar import Rat, _rat


class CapError(Exception):
    """A computation asked for degrees beyond a carrier's cap."""


# ---------------------------------------------------------------------------
# Lyndon words


def _letters(alphabet):
    if isinstance(alphabet, int):
        if alphabet < 1 or alphabet > 26:
            raise ValueError("alphabet size out of range")
        return "ABCDEFGHIJKLMNOPQRSTUVWXYZ"[:alphabet]
    return "".join(alphabet)


def lyndon_words(alphabet, degree):
    """All Lyndon words of exactly the given degree, lexicographically sorted.

    `alphabet` is either a size (2 -> letters A,B) or an iterable of
    single-character letters.
    """
    letters = _letters(alphabet)
    if degree < 1:
        return []
    k = len(letters)
    # Duval's generation; emits in lex order already
    out = []
    w = [0]
    while w:
        if len(w) == degree:
            out.append("".join(letters[i] for i in w))
        # extend periodically to full length, then increment the tail
        w = [w[i % len(w)] for i in range(degree)]
        while w and w[-1] == k - 1:
            w.pop()
        if w:
            w[-1] += 1
    return out


def lyndon_factor_split(word):
    """Standard factorization w = u v of a Lyndon word (v = longest proper
    Lyndon suffix)."""
    n = len(word)
    for i in range(1, n):
        v = word[i:]
        if _is_lyndon(v):
            return word[:i], v
    raise ValueError(f"{word!r} has no standard factorization")


def _is_lyndon(w):
    return len(w) >= 1 and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_bracketing(word):
    """The standard Lyndon bracketing of a Lyndon word, as an NCPoly."""
    if not _is_lyndon(word):
        raise ValueError(f"{word!r} is not a Lyndon word")
    if len(word) == 1:
        return NCPoly({word: 1})
    u, v = lyndon_factor_split(word)
    return nc_bracket(lyndon_bracketing(u), lyndon_bracketing(v))


# ---------------------------------------------------------------------------
# free associative polynomials


class NCPoly:
    """Sparse noncommutative polynomial: word (str) -> Fraction."""

    __slots__ = ("terms", "cap")

    def __init__(self, terms=None, cap=None):
        self.cap = cap
        d = {}
        if terms:
            for w, c in terms.items():
                c = _rat(c)
                if c == 0:
                    continue
                if cap is not None and len(w) > cap:
                    raise CapError(f"word {w!r} exceeds degree cap {cap}")
                d[w] = c
        self.terms = d

    @staticmethod
    def zero(cap=None):
        return NCPoly({}, cap)

    @staticmethod
    def one(cap=None):
        return NCPoly({"": 1}, cap)

    @staticmethod
    def gen(letter, cap=None):
        return NCPoly({letter: 1}, cap)

    def _cap_of(self, other):
        if self.cap is None:
            return other.cap
        if other.cap is None:
            return self.cap
        if self.cap != other.cap:
            raise CapError(f"mixed degree caps {self.cap} and {other.cap}")
        return self.cap

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPoly({"": other}, self.cap)
        cap = self._cap_of(other)
        d = dict(self.terms)
        for w, c in other.terms.items():
            nc = d.get(w, Fraction(0)) + c
            if nc == 0:
                d.pop(w, None)
            else:
                d[w] = nc
        return NCPoly(d, cap)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.terms.items()}, self.cap)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPoly({"": other}, self.cap)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _rat(other)
            return NCPoly({w: c * v for w, v in self.terms.items()}, self.cap)
        cap = self._cap_of(other)
        d = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                if cap is not None and len(w1) + len(w2) > cap:
                    continue  # graded quotient: higher degrees not carried
                w = w1 + w2
                nc = d.get(w, Fraction(0)) + c1 * c2
                if nc == 0:
                    d.pop(w, None)
                else:
                    d[w] = nc
        return NCPoly(d, cap)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPoly({"": other})
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def constant_term(self):
        return self.terms.get("", Fraction(0))

    def degree(self):
        return max((len(w) for w in self.terms), default=0)

    def component(self, n):
        return NCPoly({w: c for w, c in self.terms.items() if len(w) == n}, self.cap)

    def truncate(self, n):
        return NCPoly({w: c for w, c in self.terms.items() if len(w) <= n}, n)

    def coefficient(self, word):
        return self.terms.get(word, Fraction(0))

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "NCPoly(0)"
        bits = []
        for w in sorted(self.terms, key=lambda u: (len(u), u)):
            c = self.terms[w]
            bits.append(f"{c}*{w or '1'}")
        return "NCPoly(" + " + ".join(bits) + ")"


def nc_mul(p, q):
    return p * q


def nc_bracket(p, q):
    return p * q - q * p


def nc_exp(p, cap):
    """exp of an NCPoly with zero constant term, truncated at degree cap."""
    if p.constant_term() != 0:
        raise ValueError("nc_exp needs zero constant term")
    p = p.truncate(cap)
    out = NCPoly.one(cap)
    term = NCPoly.one(cap)
    for k in range(1, cap + 1):
        term = term * p * Fraction(1, k)
        if term.is_zero():
            break
        out = out + term
    return out


def nc_log(p, cap):
    """log of an NCPoly with constant term 1, truncated at degree cap."""
    if p.constant_term() != 1:
        raise ValueError("nc_log needs constant term 1")
    u = p.truncate(cap) - NCPoly.one(cap)
    out = NCPoly.zero(cap)
    term = NCPoly.one(cap)
    for k in range(1, cap + 1):
        term = term * u
        if term.is_zero():
            break
        out = out + term * Fraction((-1) ** (k + 1), k)
    return out


def lie_project(p):
    """Dynkin projection: left-normed bracketing of each word over its degree.

    Projects onto the free Lie algebra; kills constants, fixes Lie elements.
    """
    out = NCPoly.zero(p.cap)
    for w, c in p.terms.items():
        n = len(w)
        if n == 0:
            continue
        br = NCPoly.gen(w[0], p.cap)
        for letter in w[1:]:
            br = nc_bracket(br, NCPoly.gen(letter, p.cap))
        out = out + br * Fraction(c, n)
    return out


# ---------------------------------------------------------------------------
# t_n carriers

# derivation [X, l] for X in {A,B}, l in {a,b,c}; values are F3 words
_DER = {
    ("A", "a"): {"ab": Fraction(1), "ba": Fraction(-1)},
    ("A", "b"): {"ab": Fraction(-1), "ba": Fraction(1)},
    ("A", "c"): {},
    ("B", "a"): {},
    ("B", "b"): {"bc": Fraction(1), "cb": Fraction(-1)},
    ("B", "c"): {"bc": Fraction(-1), "cb": Fraction(1)},
}


class TnAlgebra:
    """Truncated U(t_n), n = 3 or 4, with normal form z^k * u * w.

    u is a word in {A,B}; w (n=4 only) is a word in {a,b,c}.  Keys are
    (zpow, u) for n=3 and (zpow, u, w) for n=4.
    """

    def __init__(self, n, cap):
        if n not in (3, 4):
            raise ValueError("only t3 and t4 are supported")
        self.n = n
        self.cap = cap
        self._straighten_cache = {}
        self._pair_cache = {}

    # -- element constructors

    def zero(self):
        return TnElem(self, {})

    def one(self):
        key = (0, "") if self.n == 3 else (0, "", "")
        return TnElem(self, {key: Fraction(1)})

    def _mono(self, zpow, u, w=""):
        if self.n == 3:
            return TnElem(self, {(zpow, u): Fraction(1)})
        return TnElem(self, {(zpow, u, w): Fraction(1)})

    def t(self, i, j):
        """Generator t_ij (symmetric in i, j)."""
        i, j = min(i, j), max(i, j)
        if not (1 <= i < j <= self.n):
            raise ValueError(f"t_{i}{j} is not a strand pair of t_{self.n}")
        if self.n == 3:
            table = {(1, 2): "A", (2, 3): "B"}
            if (i, j) in table:
                return self._mono(0, table[(i, j)])
            # t13 = z - A - B
            return TnElem(
                self,
                {(1, ""): Fraction(1), (0, "A"): Fraction(-1), (0, "B"): Fraction(-1)},
            )
        table = {(1, 2): ("A", ""), (2, 3): ("B", ""), (1, 4): ("", "a"),
                 (2, 4): ("", "b"), (3, 4): ("", "c")}
        if (i, j) in table:
            u, w = table[(i, j)]
            return self._mono(0, u, w)
        # t13 = z - A - B - a - b - c
        d = {(1, "", ""): Fraction(1)}
        for u, w in (("A", ""), ("B", ""), ("", "a"), ("", "b"), ("", "c")):
            d[(0, u, w)] = Fraction(-1)
        return TnElem(self, d)

    def z(self):
        return self._mono(1, "")

    # -- straightening (n = 4): normalize a word over {A,B,a,b,c}

    def _straighten(self, mixed):
        """dict (u, w) -> coeff for a mixed word (string over A,B,a,b,c)."""
        cached = self._straighten_cache.get(mixed)
        if cached is not None:
            return cached
        # find first lowercase letter immediately followed by an uppercase one
        pos = -1
        for idx in range(len(mixed) - 1):
            if mixed[idx].islower() and mixed[idx + 1].isupper():
                pos = idx
                break
        if pos < 0:
            u = "".join(ch for ch in mixed if ch.isupper())
            w = "".join(ch for ch in mixed if ch.islower())
            out = {(u, w): Fraction(1)}
        else:
            l, x = mixed[pos], mixed[pos + 1]
            head, tail = mixed[:pos], mixed[pos + 2:]
            out = {}
            # l x = x l - [x, l]
            for word, coeff in self._straighten(head + x + l + tail).items():
                out[word] = out.get(word, Fraction(0)) + coeff
            for repl, dc in _DER[(x, l)].items():
                for word, coeff in self._straighten(head + repl + tail).items():
                    nc = out.get(word, Fraction(0)) - dc * coeff
                    if nc == 0:
                        out.pop(word, None)
                    else:
                        out[word] = nc
            out = {k: v for k, v in out.items() if v != 0}
        self._straighten_cache[mixed] = out
        return out


class TnElem:
    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {k: v for k, v in terms.items() if v != 0}

    def _check(self, other):
        if other.alg is not self.alg:
            if other.alg.n != self.alg.n or other.alg.cap != self.alg.cap:
                raise CapError("mixing incompatible t_n carriers")
        return other

    def degree(self):
        if self.alg.n == 3:
            return max((z + len(u) for z, u in self.terms), default=0)
        return max((z + len(u) + len(w) for z, u, w in self.terms), default=0)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.alg.one() * other
        self._check(other)
        d = dict(self.terms)
        for k, c in other.terms.items():
            nc = d.get(k, Fraction(0)) + c
            if nc == 0:
                d.pop(k, None)
            else:
                d[k] = nc
        return TnElem(self.alg, d)

    __radd__ = __add__

    def __neg__(self):
        return TnElem(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.alg.one() * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _rat(other)
            return TnElem(self.alg, {k: c * v for k, v in self.terms.items()})
        self._check(other)
        alg = self.alg
        cap = alg.cap
        out = {}
        if alg.n == 3:
            for (z1, u1), c1 in self.terms.items():
                for (z2, u2), c2 in other.terms.items():
                    if z1 + z2 + len(u1) + len(u2) > cap:
                        continue
                    k = (z1 + z2, u1 + u2)
                    nc = out.get(k, Fraction(0)) + c1 * c2
                    if nc == 0:
                        out.pop(k, None)
                    else:
                        out[k] = nc
            return TnElem(alg, out)
        for (z1, u1, w1), c1 in self.terms.items():
            for (z2, u2, w2), c2 in other.terms.items():
                if z1 + z2 + len(u1) + len(u2) + len(w1) + len(w2) > cap:
                    continue
                z = z1 + z2
                key_pair = (w1, u2)
                straightened = self.alg._pair_cache.get(key_pair)
                if straightened is None:
                    straightened = alg._straighten(w1 + u2)
                    self.alg._pair_cache[key_pair] = straightened
                base = c1 * c2
                for (um, wm), cm in straightened.items():
                    if z + len(u1) + len(um) + len(wm) + len(w2) > cap:
                        continue
                    k = (z, u1 + um, wm + w2)
                    nc = out.get(k, Fraction(0)) + base * cm
                    if nc == 0:
                        out.pop(k, None)
                    else:
                        out[k] = nc
        return TnElem(alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.alg.one() * other
        if not isinstance(other, TnElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        key = (0, "") if self.alg.n == 3 else (0, "", "")
        return self.terms.get(key, Fraction(0))

    def component(self, n):
        if n > self.alg.cap:
            raise CapError(f"degree {n} beyond carrier cap {self.alg.cap}")
        if self.alg.n == 3:
            d = {k: c for k, c in self.terms.items() if k[0] + len(k[1]) == n}
        else:
            d = {k: c for k, c in self.terms.items()
                 if k[0] + len(k[1]) + len(k[2]) == n}
        return TnElem(self.alg, d)

    def truncate(self, n):
        if n > self.alg.cap:
            raise CapError(f"truncation degree {n} beyond carrier cap {self.alg.cap}")
        if self.alg.n == 3:
            d = {k: c for k, c in self.terms.items() if k[0] + len(k[1]) <= n}
        else:
            d = {k: c for k, c in self.terms.items()
                 if k[0] + len(k[1]) + len(k[2]) <= n}
        return TnElem(self.alg, d)

    def exp(self):
        if self.constant_term() != 0:
            raise ValueError("exp needs zero constant term")
        out = self.alg.one()
        term = self.alg.one()
        for k in range(1, self.alg.cap + 1):
            term = term * self * Fraction(1, k)
            if term.is_zero():
                break
            out = out + term
        return out

    def inverse(self):
        c0 = self.constant_term()
        if c0 == 0:
            raise ValueError("not invertible in the truncated carrier")
        u = self * (1 / c0) - self.alg.one()
        out = self.alg.one()
        term = self.alg.one()
        for _ in range(self.alg.cap):
            term = term * u * Fraction(-1)
            if term.is_zero():
                break
            out = out + term
        return out * (1 / c0)

    def __repr__(self):
        if not self.terms:
            return "TnElem(0)"
        bits = []
        for k in sorted(self.terms):
            c = self.terms[k]
            if self.alg.n == 3:
                z, u = k
                w = ""
            else:
                z, u, w = k
            name = "".join(filter(None, [f"z^{z}" if z else "", u, w])) or "1"
            bits.append(f"{c}*{name}")
        return "TnElem(" + " + ".join(bits) + ")"


def tn_substitute(p: NCPoly, x: TnElem, y: TnElem) -> TnElem:
    """Evaluate a 2-letter NCPoly at t_n elements: first alphabet letter -> x,
    second -> y."""
    letters = sorted({ch for w in p.terms for ch in w})
    if len(letters) > 2:
        raise ValueError("tn_substitute expects a polynomial in at most 2 letters")
    env = {}
    if letters:
        env[letters[0]] = x
    if len(letters) > 1:
        env[letters[1]] = y
    alg = x.alg
    out = alg.zero()
    for w, c in p.terms.items():
        acc = alg.one()
        for ch in w:
            acc = acc * env[ch]
        out = out + acc * c
    return out


def tn_insertion(x: TnElem, phi: dict, target: TnAlgebra) -> TnElem:
    """Strand insertion t_m -> t_n: t_ij goes to the sum of t_i'j' over
    preimage strands.  `phi` maps target strands to source strands (strands
    missing from phi are 'new').
    """
    src = x.alg
    images = {}
    for i in range(1, src.n):
        for j in range(i + 1, src.n + 1):
            acc = target.zero()
            for ip in range(1, target.n):
                for jp in range(ip + 1, target.n + 1):
                    pair = {phi.get(ip), phi.get(jp)}
                    if pair == {i, j}:
                        acc = acc + target.t(ip, jp)
            images[(i, j)] = acc

    if src.n == 3:
        gen_words = {"A": (1, 2), "B": (2, 3)}
    else:
        gen_words = {"A": (1, 2), "B": (2, 3), "a": (1, 4), "b": (2, 4), "c": (3, 4)}
    z_img = target.zero()
    for i in range(1, src.n):
        for j in range(i + 1, src.n + 1):
            z_img = z_img + images[(i, j)]

    out = target.zero()
    for key, coeff in x.terms.items():
        if src.n == 3:
            zpow, u = key
            w = ""
        else:
            zpow, u, w = key
        acc = target.one()
        for _ in range(zpow):
            acc = acc * z_img
        for ch in u + w:
            acc = acc * images[gen_words[ch]]
        out = out + acc * coeff
    return out
