"""Exact arithmetic in the scalar ring Z[v, v^-1].

Everything downstream (structure constants, canonical bases, relation
suites) is linear algebra over this ring, so all operations here are exact:
division exists only as ``exact_div`` and aborts on a nonzero remainder.

Sparse representation: ``{exponent: coefficient}`` with no stored zeros.
"""

from fractions import Fraction

from ._kernel import poly_mul


class InexactDivision(ArithmeticError):
    """Raised when an exact division leaves a remainder (implementation bug)."""


class OddExponent(ValueError):
    """Raised by strict eval_q on a polynomial outside Z[v^2, v^-2]."""


class Laurent:
    """Integer Laurent polynomial in the formal variable v."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        if coeffs:
            self.c = {e: c for e, c in coeffs.items() if c}
        else:
            self.c = {}

    # -- construction helpers -------------------------------------------

    @classmethod
    def _raw(cls, d):
        p = object.__new__(cls)
        p.c = d
        return p

    @classmethod
    def const(cls, k):
        return cls._raw({0: k} if k else {})

    @classmethod
    def monomial(cls, k, coeff=1):
        """coeff * v^k"""
        return cls._raw({k: coeff} if coeff else {})

    # -- ring structure --------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = Laurent.const(other)
        out = dict(self.c)
        for e, c in other.c.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return Laurent._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent._raw({e: -c for e, c in self.c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Laurent.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Laurent._raw({})
            return Laurent._raw({e: c * other for e, c in self.c.items()})
        return Laurent._raw(poly_mul(self.c, other.c))

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power; use exact_div")
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            return self.c == ({0: other} if other else {})
        return isinstance(other, Laurent) and self.c == other.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def __bool__(self):
        return bool(self.c)

    # -- queries ----------------------------------------------------------

    def is_zero(self):
        return not self.c

    def items(self):
        """Sorted (exponent, coefficient) pairs."""
        return sorted(self.c.items())

    def coeff(self, e):
        return self.c.get(e, 0)

    def degree(self):
        if not self.c:
            raise ValueError("zero polynomial has no degree")
        return max(self.c)

    def valuation(self):
        if not self.c:
            raise ValueError("zero polynomial has no valuation")
        return min(self.c)

    def shift(self, k):
        """Multiply by v^k."""
        return Laurent._raw({e + k: c for e, c in self.c.items()})

    # -- involution and specialization -------------------------------------

    def bar(self):
        """The bar involution v -> v^-1."""
        return Laurent._raw({-e: c for e, c in self.c.items()})

    def exact_div(self, other):
        """Exact quotient self / other; raises InexactDivision otherwise."""
        if not other.c:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.c:
            return Laurent._raw({})
        # shift both to honest polynomials and do long division from the top
        num = dict(self.c)
        dv = other.valuation()
        dd = other.degree()
        lead = other.c[dd]
        quot = {}
        while num:
            nd = max(num)
            nv = min(num)
            if nd - dd < nv - dv:
                raise InexactDivision(f"{self!r} not divisible by {other!r}")
            c, r = divmod(num[nd], lead)
            if r:
                raise InexactDivision(f"{self!r} not divisible by {other!r}")
            k = nd - dd
            quot[k] = c
            for e, oc in other.c.items():
                s = num.get(e + k, 0) - c * oc
                if s:
                    num[e + k] = s
                elif e + k in num:
                    del num[e + k]
        return Laurent._raw(quot)

    def eval_q(self, q, strict=True):
        """Value at v = sqrt(q), i.e. v^{2k} -> q^k.

        Strict mode rejects odd exponents (OddExponent).  Lenient mode
        returns a pair (a, b) meaning a + b*sqrt(q), both exact Fractions.
        """
        even = Fraction(0)
        odd = Fraction(0)
        for e, c in self.c.items():
            if e % 2 == 0:
                even += c * Fraction(q) ** (e // 2)
            else:
                if strict:
                    raise OddExponent(f"odd exponent {e} in {self!r}")
                odd += c * Fraction(q) ** ((e - 1) // 2)
        if strict:
            return even
        return even, odd

    def eval_rational(self, x):
        """Value at v = x for an exact rational x."""
        x = Fraction(x)
        total = Fraction(0)
        for e, c in self.c.items():
            total += c * x ** e
        return total

    # -- serialization and display ------------------------------------------

    def to_json(self):
        """[[exponent, coefficient], ...] with strictly increasing exponents."""
        return [[e, c] for e, c in self.items()]

    @classmethod
    def from_json(cls, data):
        out = {}
        for e, c in data:
            if e in out:
                raise ValueError("duplicate exponent in Laurent JSON")
            out[int(e)] = int(c)
        return cls(out)

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for e, c in sorted(self.c.items(), reverse=True):
            if e == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{mag}v^{e}" if e != 1 else f"{mag}v"
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts)


ZERO = Laurent._raw({})
ONE = Laurent._raw({0: 1})
V = Laurent._raw({1: 1})


def v_pow(k, coeff=1):
    return Laurent.monomial(k, coeff)


def qint(r):
    """Balanced quantum integer (v^r - v^-r)/(v - v^-1); odd in r."""
    if r == 0:
        return ZERO
    if r < 0:
        return -qint(-r)
    return Laurent._raw({e: 1 for e in range(-(r - 1), r, 2)})


def qfact(r):
    """Balanced quantum factorial."""
    out = ONE
    for k in range(2, r + 1):
        out = out * qint(k)
    return out


def gauss_bracket(a):
    """[a] = (v^{2a} - 1)/(v^2 - 1), for any integer a."""
    if a == 0:
        return ZERO
    if a > 0:
        return Laurent._raw({2 * k: 1 for k in range(a)})
    # [-m] = -(v^-2 + v^-4 + ... + v^-2m)
    return Laurent._raw({-2 * k: -1 for k in range(1, -a + 1)})


def gauss_binom(a, b):
    """[a; b] = prod_{i=1..b} (v^{2(a-i+1)} - 1)/(v^{2i} - 1).

    Exact in Z[v^2, v^-2]; zero when 0 <= a < b.
    """
    if b < 0:
        raise ValueError("lower index must be nonnegative")
    num = ONE
    den = ONE
    for i in range(1, b + 1):
        num = num * (v_pow(2 * (a - i + 1)) - 1)
        if num.is_zero():
            return ZERO
        den = den * (v_pow(2 * i) - 1)
    return num.exact_div(den)


def bar_gauss_binom(a, b):
    """The overlined Gaussian binomial, bar([a; b])."""
    return gauss_binom(a, b).bar()


def prod(polys):
    out = ONE
    for p in polys:
        out = out * p
        if out.is_zero():
            return ZERO
    return out
