"""
Root systems of the simple types, their finite Weyl groups, and the
normalisation data used throughout: d_alpha, rho, the highest short root
and the Coxeter number.

Conventions
-----------
* Simple roots and simple reflections are numbered 1..n (Bourbaki order).
* A root is a tuple of integer coefficients in the simple-root basis.
* A weight is a tuple of integers in the fundamental-weight basis, so
  ``lam[j-1] == <lam, alpha_j^vee>``.
* The form is normalised so short roots have squared length 2, hence
  ``d_alpha = (alpha, alpha) / 2`` lies in {1, 2, 3}.
* Exact coordinates in E are rationals in the simple-root basis, with the
  Gram matrix of the simple roots as the inner product.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd

from .errors import CapacityExceeded, InvalidInput

# Standard bad-prime table (Springer-Steinberg). A: none; B, C, D: 2;
# E6, E7, F4, G2: 2, 3; E8: 2, 3, 5.
BAD_PRIMES = {
    "A": frozenset(),
    "B": frozenset({2}),
    "C": frozenset({2}),
    "D": frozenset({2}),
    "E6": frozenset({2, 3}),
    "E7": frozenset({2, 3}),
    "E8": frozenset({2, 3, 5}),
    "F4": frozenset({2, 3}),
    "G2": frozenset({2, 3}),
}

MAX_RANK = 8
# Brute force over W is only offered up to this order (F4 has 1152).
MAX_WEYL_ORDER = 60000


def _dynkin(type_label, n):
    """Return (d_i for the simple roots, bonded pairs) for a valid type."""
    chain = [(i, i + 1) for i in range(n - 1)]
    if type_label == "A" and n >= 1:
        return [1] * n, chain
    if type_label == "B" and n >= 2:
        return [2] * (n - 1) + [1], chain
    if type_label == "C" and n >= 2:
        return [1] * (n - 1) + [2], chain
    if type_label == "D" and n >= 4:
        return [1] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if type_label == "E" and n in (6, 7, 8):
        bonds = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
        return [1] * n, bonds
    if type_label == "F" and n == 4:
        return [2, 2, 1, 1], chain
    if type_label == "G" and n == 2:
        return [1, 3], chain
    raise InvalidInput(f"invalid simple type {type_label}{n}")


def _matmul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def _matvec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _is_positive(beta):
    return all(c >= 0 for c in beta) and any(beta)


@dataclass(frozen=True, eq=False)
class WeylElement:
    """An element of the finite Weyl group W.

    ``wt`` is the matrix of the action on fundamental-weight coordinates,
    ``rt`` the matrix on simple-root coordinates. Equality and hashing use
    ``wt`` alone, which determines the element.
    """

    wt: tuple
    rt: tuple
    R: "RootSystem" = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.wt == other.wt

    def __hash__(self):
        return hash(self.wt)

    def __mul__(self, other):
        R = self.R
        key = (self.wt, other.wt)
        hit = R._wprod.get(key)
        if hit is None:
            wt = _matmul(self.wt, other.wt)
            hit = R._welem.get(wt)
            if hit is None:
                hit = R._welem[wt] = WeylElement(wt, _matmul(self.rt, other.rt), R)
            R._wprod[key] = hit
        return hit

    def act_weight(self, lam):
        return _matvec(self.wt, lam)

    def act_root(self, beta):
        return _matvec(self.rt, beta)

    @cached_property
    def length(self):
        return sum(1 for b in self.R.positive_roots if not _is_positive(self.act_root(b)))

    def has_right_descent(self, i):
        return not _is_positive(self.act_root(self.R.simple_roots[i - 1]))

    @cached_property
    def word(self):
        """A reduced word (tuple of 1-based indices), built by greedy right descent."""
        rev = []
        x = self
        while True:
            for i in range(1, self.R.rank + 1):
                if x.has_right_descent(i):
                    rev.append(i)
                    x = x * self.R.simple_reflection(i)
                    break
            else:
                break
        return tuple(reversed(rev))

    @cached_property
    def inverse(self):
        y = self.R.identity
        for i in reversed(self.word):
            y = y * self.R.simple_reflection(i)
        return y

    def is_identity(self):
        return self.wt == self.R.identity.wt


class RootSystem:
    """Immutable Cartan data for one simple type. Use :func:`build`."""

    def __init__(self, type_label, rank):
        if not isinstance(rank, int) or not 1 <= rank <= MAX_RANK:
            raise InvalidInput(f"rank must be an integer in 1..{MAX_RANK}")
        type_label = str(type_label).upper()
        d, bonds = _dynkin(type_label, rank)
        self.type_label = type_label
        self.rank = n = rank
        self.d_simple = tuple(d)
        gram = [[0] * n for _ in range(n)]
        for i in range(n):
            gram[i][i] = 2 * d[i]
        for i, j in bonds:
            gram[i][j] = gram[j][i] = -max(d[i], d[j])
        self.gram = tuple(tuple(r) for r in gram)
        # cartan[i][j] = <alpha_i, alpha_j^vee>
        self.cartan = tuple(tuple(gram[i][j] // d[j] for j in range(n)) for i in range(n))
        self.simple_roots = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        self.positive_roots = self._generate_positive_roots()
        self.roots = self.positive_roots + tuple(tuple(-c for c in b) for b in self.positive_roots)
        self._root_set = frozenset(self.roots)
        self._coroot = {b: self._compute_coroot(b) for b in self.roots}
        self.rho = (1,) * n
        # interned Weyl group elements and their products
        self._welem = {}
        self._wprod = {}

    @property
    def label(self):
        return f"{self.type_label}{self.rank}"

    def __repr__(self):
        return f"RootSystem({self.label})"

    def __reduce__(self):
        return (build, (self.type_label, self.rank))

    def _generate_positive_roots(self):
        found = set(self.simple_roots)
        frontier = list(self.simple_roots)
        while frontier:
            new = []
            for b in frontier:
                for i in range(self.rank):
                    c = self._simple_pairing(b, i)
                    if c < 0:
                        # s_i(b) = b - c*alpha_i is a higher positive root
                        g = tuple(x - c * (j == i) for j, x in enumerate(b))
                        if g not in found:
                            found.add(g)
                            new.append(g)
            frontier = new
        return tuple(sorted(found, key=lambda b: (sum(b), b)))

    def _simple_pairing(self, beta, i):
        """<beta, alpha_i^vee> for beta in root coordinates, 0-based i."""
        return sum(m * self.cartan[j][i] for j, m in enumerate(beta))

    def norm2(self, beta):
        """(beta, beta) for beta in root coordinates."""
        n = self.rank
        return sum(beta[i] * self.gram[i][j] * beta[j] for i in range(n) for j in range(n))

    def d(self, beta):
        return self.norm2(beta) // 2

    def _compute_coroot(self, beta):
        db = self.d(beta)
        return tuple(m * self.d_simple[i] // db for i, m in enumerate(beta))

    def is_root(self, beta):
        return tuple(beta) in self._root_set

    def coroot(self, beta):
        """Coefficients of beta^vee in the simple-coroot basis."""
        try:
            return self._coroot[tuple(beta)]
        except KeyError:
            raise InvalidInput(f"{beta} is not a root of {self.label}") from None

    def pairing(self, lam, beta):
        """<lam, beta^vee> for a weight lam (fundamental-weight coordinates)."""
        return sum(c * x for c, x in zip(self.coroot(beta), lam))

    def root_to_weight(self, beta):
        return tuple(self._simple_pairing(beta, i) for i in range(self.rank))

    def root_lattice_to_weight(self, theta):
        """Any element of Q (root coordinates) to fundamental-weight coordinates."""
        return tuple(self._simple_pairing(theta, i) for i in range(self.rank))

    @cached_property
    def _cartan_inverse_t(self):
        n = self.rank
        a = [[Fraction(self.cartan[j][i]) for j in range(n)] + [Fraction(int(i == k)) for k in range(n)]
             for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if a[r][col] != 0)
            a[col], a[piv] = a[piv], a[col]
            p = a[col][col]
            a[col] = [x / p for x in a[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return tuple(tuple(row[n:]) for row in a)

    def weight_to_root_coords(self, lam):
        """Exact rational coordinates of a weight in the simple-root basis."""
        return _matvec(self._cartan_inverse_t, lam)

    def weight_to_root_lattice(self, lam):
        coords = self.weight_to_root_coords(lam)
        if any(c.denominator != 1 for c in coords):
            raise InvalidInput(f"{tuple(lam)} does not lie in the root lattice")
        return tuple(int(c) for c in coords)

    def inner(self, lam, mu):
        """(lam, mu) for weights, exact."""
        a = self.weight_to_root_coords(lam)
        b = self.weight_to_root_coords(mu)
        n = self.rank
        return sum(a[i] * self.gram[i][j] * b[j] for i in range(n) for j in range(n))

    def height(self, theta):
        """ht(theta) for theta in Q, given in fundamental-weight coordinates."""
        return sum(self.weight_to_root_lattice(theta))

    def weighted_height2(self, lam):
        """2*wht(lam) = 2 * sum over simple alpha of r_alpha d_alpha, as an int."""
        r = self.weight_to_root_coords(lam)
        val = 2 * sum(c * d for c, d in zip(r, self.d_simple))
        if val.denominator != 1:
            raise InvalidInput("weighted height is not a half-integer; not a weight")
        return int(val)

    @cached_property
    def highest_root(self):
        return self.positive_roots[-1]

    @cached_property
    def highest_short_root(self):
        short = [b for b in self.positive_roots if self.d(b) == 1]
        return max(short, key=sum)

    @property
    def alpha0(self):
        return self.highest_short_root

    @cached_property
    def coxeter_number(self):
        return self.pairing(self.rho, self.highest_short_root) + 1

    @property
    def bad_primes(self):
        key = self.type_label if self.type_label in "ABCD" else self.label
        return BAD_PRIMES[key]

    def is_dominant(self, lam):
        return all(c >= 0 for c in lam)

    def is_positive(self, beta):
        return _is_positive(beta)

    def check_weight(self, lam):
        lam = tuple(lam)
        if len(lam) != self.rank or not all(isinstance(c, int) for c in lam):
            raise InvalidInput(f"weight must be {self.rank} integers, got {lam}")
        return lam

    # finite Weyl group

    @cached_property
    def identity(self):
        n = self.rank
        return WeylElement(_identity(n), _identity(n), self)

    @lru_cache(maxsize=None)
    def simple_reflection(self, i):
        """s_i for 1-based i."""
        n = self.rank
        k = i - 1
        # weights: lam -> lam - lam_k * alpha_k, alpha_k has weight coords cartan[k]
        wt = tuple(tuple(int(r == c) - (c == k) * self.cartan[k][r] for c in range(n)) for r in range(n))
        # roots: beta -> beta - <beta, alpha_k^vee> alpha_k
        rt = tuple(tuple(int(r == c) - (r == k) * self.cartan[c][k] for c in range(n)) for r in range(n))
        return WeylElement(wt, rt, self)

    def reflection(self, beta):
        """The orthogonal reflection s_beta."""
        beta = tuple(beta)
        cor = self.coroot(beta)
        bw = self.root_to_weight(beta)
        n = self.rank
        wt = tuple(tuple(int(r == c) - cor[c] * bw[r] for c in range(n)) for r in range(n))
        # <alpha_c, beta^vee> for the c-th simple root
        pc = [sum(cor[j] * self.cartan[c][j] for j in range(n)) for c in range(n)]
        rt = tuple(tuple(int(r == c) - pc[c] * beta[r] for c in range(n)) for r in range(n))
        return WeylElement(wt, rt, self)

    def from_word(self, word):
        x = self.identity
        for i in word:
            if not 1 <= i <= self.rank:
                raise InvalidInput(f"simple reflection index {i} out of range 1..{self.rank}")
            x = x * self.simple_reflection(i)
        return x

    @cached_property
    def weyl_order(self):
        # |W| = product of (1 + exponents); exponents from heights of positive roots
        from collections import Counter
        counts = Counter(sum(b) for b in self.positive_roots)
        order, k = 1, 1
        while counts.get(k, 0):
            nxt = counts.get(k + 1, 0)
            order *= (k + 1) ** (counts[k] - nxt)
            k += 1
        return order

    def weyl_elements(self):
        """All of W in breadth-first (length) order. Desk-scale ranks only."""
        if self.weyl_order > MAX_WEYL_ORDER:
            raise CapacityExceeded(
                f"|W({self.label})| = {self.weyl_order} exceeds the enumeration cap {MAX_WEYL_ORDER}")
        return self._weyl_elements

    @cached_property
    def _weyl_elements(self):
        seen = {self.identity}
        out = [self.identity]
        frontier = [self.identity]
        gens = [self.simple_reflection(i) for i in range(1, self.rank + 1)]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = x * s
                    if y not in seen:
                        seen.add(y)
                        out.append(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(out)

    @cached_property
    def longest_element(self):
        x = self.identity
        # w0 sends rho to -rho; walk down with descents from the dominant side
        while True:
            for i in range(1, self.rank + 1):
                if not x.has_right_descent(i):
                    x = x * self.simple_reflection(i)
                    break
            else:
                return x

    def phi_subset(self, J):
        """Phi_J = Z J intersected with Phi, for J a set of 1-based indices."""
        J = set(J)
        return frozenset(b for b in self.roots if all(c == 0 for i, c in enumerate(b) if i + 1 not in J))


@lru_cache(maxsize=None)
def build(type_label, rank):
    """Construct the root system of a simple type, e.g. ``build("B", 2)``."""
    return RootSystem(type_label, rank)


def validate_ell(R, ell, mode="quantum"):
    """Check the standing hypotheses on the level; raise with every violation."""
    if mode not in ("quantum", "modular"):
        raise InvalidInput(f"unknown mode {mode!r}")
    if not isinstance(ell, int) or isinstance(ell, bool) or ell < 1:
        raise InvalidInput("ell must be a positive integer")
    reasons = []
    if ell % 2 == 0:
        reasons.append("ell must be odd")
    h = R.coxeter_number
    if ell <= h:
        reasons.append(f"ell must exceed the Coxeter number h={h}")
    shared = sorted(r for r in R.bad_primes if gcd(ell, r) != 1)
    if shared:
        reasons.append(f"ell shares bad prime(s) {shared} of {R.label}")
    if mode == "modular" and not _is_prime(ell):
        reasons.append("modular mode requires ell = p prime")
    if reasons:
        raise InvalidInput(*reasons)
    return True


def _is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def phi_lambda(R, lam, ell):
    """Roots with <lam+rho, alpha^vee> divisible by ell, and their positive part.

    Returns ``(roots, positive)`` as tuples in the order of ``R.roots``.
    """
    lam = R.check_weight(lam)
    v = tuple(c + 1 for c in lam)
    roots = tuple(b for b in R.roots if R.pairing(v, b) % ell == 0)
    positive = tuple(b for b in roots if _is_positive(b))
    return roots, positive


def is_closed_subsystem(R, subset):
    subset = frozenset(subset)
    for a in subset:
        if tuple(-c for c in a) not in subset:
            return False
        for b in subset:
            s = tuple(x + y for x, y in zip(a, b))
            if R.is_root(s) and s not in subset:
                return False
    return True
