"""
Exact one-variable Laurent polynomials over Z and the cyclotomic rings
Z[t]/Psi_l(t).

Everything is integer arithmetic on Python ints, so nothing overflows.
Laurent division reduces to ordinary polynomial long division after
factoring out the lowest power of t (the units of Z[t, 1/t] are +-t^k).
"""

from functools import lru_cache

from .errors import InvalidInput


class LaurentPoly:
    """Finite sum of c*t^k with k in Z. Immutable; zero coefficients never stored."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif not isinstance(coeffs, dict):
            coeffs = dict(coeffs)
        self._c = {int(k): int(v) for k, v in coeffs.items() if v}

    @classmethod
    def monomial(cls, coeff=1, exp=1):
        return cls({exp: coeff})

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def from_dense(cls, coeffs, shift=0):
        """``coeffs[i]`` is the coefficient of t^(i + shift)."""
        return cls({i + shift: c for i, c in enumerate(coeffs)})

    @property
    def coeffs(self):
        return dict(self._c)

    def terms(self):
        return sorted(self._c.items())

    def __getitem__(self, exp):
        return self._c.get(exp, 0)

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    @property
    def min_exp(self):
        return min(self._c) if self._c else None

    @property
    def max_exp(self):
        return max(self._c) if self._c else None

    def dense(self):
        """Return (coefficient list from min_exp upward, min_exp)."""
        if not self._c:
            return [], 0
        lo, hi = self.min_exp, self.max_exp
        return [self._c.get(k, 0) for k in range(lo, hi + 1)], lo

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for a, x in self._c.items():
            for b, y in other._c.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            raise InvalidInput("only integer powers are supported")
        if n < 0:
            # only the units +-t^k are invertible
            if len(self._c) != 1 or abs(next(iter(self._c.values()))) != 1:
                raise InvalidInput("negative powers exist only for units +-t^k")
            (k, c), = self._c.items()
            return LaurentPoly({k * n: c ** (-n)})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def at_one(self):
        return sum(self._c.values())

    def derivative(self, s=1):
        return derivative(self, s)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k, c in sorted(self._c.items(), reverse=True):
            if k == 0:
                mono = str(abs(c))
            else:
                power = "t" if k == 1 else f"t^{k}"
                mono = power if abs(c) == 1 else f"{abs(c)}*{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out


T = LaurentPoly.monomial(1, 1)


def derivative(f, s=1):
    """Formal s-th derivative; the power rule covers negative exponents too."""
    if s < 0:
        raise InvalidInput("derivative order must be non-negative")
    out = {}
    for k, c in f._c.items():
        falling = 1
        for j in range(s):
            falling *= k - j
        if falling:
            out[k - s] = c * falling
    return LaurentPoly(out)


def _poly_divmod_exact(num, den):
    """Long division of dense ascending integer lists; None unless exact over Z."""
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dn:
        return None if any(num) else []
    quot = [0] * (len(num) - dn)
    sparse = [(j, d) for j, d in enumerate(den) if d]
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q, r = divmod(c, lead)
        if r:
            return None
        quot[i - dn] = q
        for j, d in sparse:
            num[i - dn + j] -= q * d
    if any(num[:dn]):
        return None
    return quot


def exact_div(f, g):
    """Return q with f == q*g in Z[t, 1/t], or None when g does not divide f."""
    if g.is_zero():
        raise InvalidInput("division by the zero polynomial")
    if f.is_zero():
        return LaurentPoly()
    fd, fa = f.dense()
    gd, gb = g.dense()
    q = _poly_divmod_exact(fd, gd)
    if q is None:
        return None
    return LaurentPoly.from_dense(q, fa - gb)


@lru_cache(maxsize=None)
def _cyclotomic_dense(ell):
    # t^ell - 1 divided by every Psi_d with d a proper divisor of ell
    num = [-1] + [0] * (ell - 1) + [1]
    for d in range(1, ell):
        if ell % d == 0:
            num = _poly_divmod_exact(num, _cyclotomic_dense(d))
    return tuple(num)


def cyclotomic(ell):
    """The ell-th cyclotomic polynomial as a LaurentPoly."""
    if not isinstance(ell, int) or ell < 1:
        raise InvalidInput("cyclotomic index must be a positive integer")
    return LaurentPoly.from_dense(_cyclotomic_dense(ell))


class CyclotomicInt:
    """Element of Z[t]/Psi_l(t) in canonical reduced form.

    The residue of t is written zeta; it has multiplicative order exactly l.
    """

    __slots__ = ("ell", "coeffs")

    def __init__(self, ell, coeffs=()):
        self.ell = ell
        self.coeffs = _reduce(ell, coeffs)

    @classmethod
    def zeta_power(cls, ell, k, coeff=1):
        dense = [0] * ell
        dense[k % ell] = coeff
        return cls(ell, dense)

    @classmethod
    def from_int(cls, ell, n):
        return cls(ell, [n])

    @property
    def degree_bound(self):
        return len(_cyclotomic_dense(self.ell)) - 1

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def _coerce(self, other):
        if isinstance(other, CyclotomicInt):
            if other.ell != self.ell:
                raise InvalidInput(f"level mismatch: {self.ell} vs {other.ell}")
            return other
        if isinstance(other, int):
            return CyclotomicInt(self.ell, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(self.ell, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.ell, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = [0] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return CyclotomicInt(self.ell, prod)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise InvalidInput("negative powers of a general element are not supported")
        result = CyclotomicInt.from_int(self.ell, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = CyclotomicInt(self.ell, [other])
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        return self.ell == other.ell and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ell, self.coeffs))

    def to_json(self):
        return {"ell": self.ell, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data):
        return cls(data["ell"], data["coeffs"])

    def __repr__(self):
        return f"CyclotomicInt({self.ell}, {list(self.coeffs)})"

    def __str__(self):
        s = str(LaurentPoly.from_dense(self.coeffs))
        return s.replace("t", "z")


def _reduce(ell, coeffs):
    psi = _cyclotomic_dense(ell)
    deg = len(psi) - 1
    folded = [0] * max(ell, deg)
    for i, c in enumerate(coeffs):
        folded[i % ell] += c
    # psi is monic: cancel top coefficients downward
    for i in range(len(folded) - 1, deg - 1, -1):
        c = folded[i]
        if c:
            for j, p in enumerate(psi):
                folded[i - deg + j] -= c * p
    return tuple(folded[:deg])


def eval_at_zeta(f, ell):
    """Image of f under t -> zeta in Z[t]/Psi_ell(t)."""
    dense = [0] * ell
    for k, c in f._c.items():
        dense[k % ell] += c
    return CyclotomicInt(ell, dense)


def psi_multiplicity(f, ell):
    """Largest m with Psi_ell^m dividing f in Z[t, 1/t]."""
    if f.is_zero():
        raise InvalidInput("multiplicity of a factor in the zero polynomial is undefined")
    psi = _cyclotomic_dense(ell)
    dense, _ = f.dense()
    m = 0
    while True:
        q = _poly_divmod_exact(dense, psi)
        if q is None:
            return m
        dense = q
        m += 1


def root_multiplicity_at_zeta(f, ell):
    """Least s with the s-th derivative of f nonzero at zeta."""
    if f.is_zero():
        raise InvalidInput("multiplicity of a root of the zero polynomial is undefined")
    s = 0
    while eval_at_zeta(derivative(f, s), ell).is_zero():
        s += 1
    return s

