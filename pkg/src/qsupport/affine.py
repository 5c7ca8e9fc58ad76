"""
The affine Weyl group W_l = Q x| W acting on weights by the shifted ("dot")
action at level l, together with alcove reduction, coset representatives
and the Bruhat order.

An element is stored canonically as the pair (theta, x) meaning t_{l theta} x.
Generators are numbered as on the command line: 1..n are the simple
reflections, 0 is s_{alpha_0,-1} = t_{-l alpha_0} s_{alpha_0}.
"""

from dataclasses import dataclass

from .errors import InvalidInput
from .roots import WeylElement, _is_positive


@dataclass(frozen=True)
class AffineWeylElement:
    theta: tuple
    x: WeylElement
    level: int

    @property
    def key(self):
        return (self.theta, self.x.wt)

    def to_json(self):
        return {"theta": list(self.theta), "x_word": list(self.x.word), "level": self.level}


@dataclass(frozen=True)
class AlcoveReduction:
    lam: tuple
    lambda_minus: tuple
    w: AffineWeylElement
    I: tuple
    a_count: int


class AffineWeylGroup:
    """W_l for a root system R. Holds the length and Bruhat memo tables."""

    def __init__(self, R, ell):
        if not isinstance(ell, int) or ell < 1:
            raise InvalidInput("level must be a positive integer")
        self.R = R
        self.ell = ell
        self.rank = R.rank
        self._length = {}
        self._bruhat = {}
        self._lower = {}
        self._prod = {}
        self._parabolic = {}
        self._pos = [(b, R.coroot(b)) for b in R.positive_roots]
        self.identity = AffineWeylElement((0,) * R.rank, R.identity, ell)
        a0 = R.highest_short_root
        s0 = AffineWeylElement(tuple(-c for c in a0), R.reflection(a0), ell)
        self.generators = (s0,) + tuple(
            AffineWeylElement((0,) * R.rank, R.simple_reflection(i), ell) for i in range(1, R.rank + 1))

    def __repr__(self):
        return f"AffineWeylGroup({self.R.label}, ell={self.ell})"

    def _check(self, w):
        if w.level != self.ell:
            raise InvalidInput(f"level mismatch: element at {w.level}, group at {self.ell}")

    # group law

    def mul(self, a, b):
        key = (a, b)
        hit = self._prod.get(key)
        if hit is not None:
            return hit
        theta = tuple(p + q for p, q in zip(a.theta, a.x.act_root(b.theta)))
        out = AffineWeylElement(theta, a.x * b.x, self.ell)
        self._prod[key] = out
        return out

    def mul_gen(self, w, i):
        return self.mul(w, self.generators[i])

    def inverse(self, w):
        xi = w.x.inverse
        return AffineWeylElement(tuple(-c for c in xi.act_root(w.theta)), xi, self.ell)

    def from_word(self, word):
        w = self.identity
        for i in word:
            if not 0 <= i <= self.rank:
                raise InvalidInput(f"generator index {i} out of range 0..{self.rank}")
            w = self.mul_gen(w, i)
        return w

    def element(self, theta, x_word):
        theta = tuple(theta)
        if len(theta) != self.rank:
            raise InvalidInput(f"theta must have {self.rank} root coordinates")
        return AffineWeylElement(theta, self.R.from_word(x_word), self.ell)

    def translation(self, theta):
        return AffineWeylElement(tuple(theta), self.R.identity, self.ell)

    # length and descents

    def length(self, w):
        """Number of dot-action walls separating C^- from w.C^-."""
        hit = self._length.get(w)
        if hit is not None:
            return hit
        theta_wt = self.R.root_lattice_to_weight(w.theta)
        xinv = w.x.inverse
        total = 0
        for alpha, cor in self._pos:
            k = sum(c * t for c, t in zip(cor, theta_wt))
            if _is_positive(xinv.act_root(alpha)):
                total += abs(k)
            else:
                total += abs(k + 1)
        self._length[w] = total
        return total

    def is_right_descent(self, w, i):
        return self.length(self.mul_gen(w, i)) < self.length(w)

    def right_descents(self, w):
        return [i for i in range(self.rank + 1) if self.is_right_descent(w, i)]

    def first_descent(self, w):
        for i in range(self.rank + 1):
            if self.is_right_descent(w, i):
                return i
        return None

    def reduced_word(self, w):
        rev = []
        while True:
            i = self.first_descent(w)
            if i is None:
                return tuple(reversed(rev))
            rev.append(i)
            w = self.mul_gen(w, i)

    def bfs(self, max_length):
        """Elements with Cayley distance <= max_length, as {element: distance}."""
        dist = {self.identity: 0}
        frontier = [self.identity]
        for d in range(1, max_length + 1):
            nxt = []
            for w in frontier:
                for i in range(self.rank + 1):
                    u = self.mul_gen(w, i)
                    if u not in dist:
                        dist[u] = d
                        nxt.append(u)
            frontier = nxt
        return dist

    # dot action and alcoves

    def dot(self, w, lam):
        """w . lam = x(lam + rho) + l theta - rho."""
        self._check(w)
        lam = self.R.check_weight(lam)
        v = w.x.act_weight(tuple(c + 1 for c in lam))
        t = self.R.root_lattice_to_weight(w.theta)
        return tuple(a + self.ell * b - 1 for a, b in zip(v, t))

    def in_closed_antidominant_alcove(self, lam):
        v = tuple(c + 1 for c in lam)
        return all(-self.ell <= self.R.pairing(v, b) <= 0 for b in self.R.positive_roots)

    def stabilizer_generators(self, lam_minus):
        """I = generators in S_l fixing lam_minus under the dot action."""
        v = tuple(c + 1 for c in lam_minus)
        gens = []
        if self.R.pairing(v, self.R.highest_short_root) == -self.ell:
            gens.append(0)
        gens.extend(i for i in range(1, self.rank + 1) if v[i - 1] == 0)
        return tuple(gens)

    def a_count(self, lam_minus):
        v = tuple(c + 1 for c in lam_minus)
        return sum(1 for b in self.R.positive_roots if self.R.pairing(v, b) == -self.ell)

    def reduce_to_fundamental(self, lam):
        """Write a dominant lam as w . lam_minus with w minimal and lam_minus in the
        closed antidominant alcove."""
        R = self.R
        lam = R.check_weight(lam)
        if not R.is_dominant(lam):
            raise InvalidInput(f"weight {lam} is not dominant")
        ell = self.ell
        a0 = R.highest_short_root
        a0_wt = R.root_to_weight(a0)
        v = list(c + 1 for c in lam)
        word = []
        while True:
            # lowest generator index whose wall separates v from C^-
            p0 = R.pairing(v, a0)
            if p0 < -ell:
                shift = p0 + ell
                v = [c - shift * a for c, a in zip(v, a0_wt)]
                word.append(0)
                continue
            for i in range(1, self.rank + 1):
                if v[i - 1] > 0:
                    c = v[i - 1]
                    v = [x - c * a for x, a in zip(v, R.cartan[i - 1])]
                    word.append(i)
                    break
            else:
                break
        lam_minus = tuple(c - 1 for c in v)
        w = self.from_word(word)
        I = self.stabilizer_generators(lam_minus)
        w = self.min_coset_rep(w, I)
        if self.dot(w, lam_minus) != lam:
            raise AssertionError("alcove walk lost track of the weight")
        return AlcoveReduction(lam, lam_minus, w, I, self.a_count(lam_minus))

    # parabolic subgroups

    def parabolic_subgroup(self, I):
        """Elements of W_{l,I} with their lengths; I must be a proper subset of S_l."""
        I = tuple(sorted(set(I)))
        if len(I) > self.rank:
            raise InvalidInput("W_{l,I} is infinite when I is all of S_l")
        if any(not 0 <= i <= self.rank for i in I):
            raise InvalidInput(f"generator indices must lie in 0..{self.rank}")
        hit = self._parabolic.get(I)
        if hit is not None:
            return hit
        dist = {self.identity: 0}
        frontier = [self.identity]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for w in frontier:
                for i in I:
                    u = self.mul_gen(w, i)
                    if u not in dist:
                        dist[u] = d
                        nxt.append(u)
            frontier = nxt
        self._parabolic[I] = dist
        return dist

    def is_min_coset_rep(self, w, I):
        lw = self.length(w)
        return all(self.length(self.mul_gen(w, i)) > lw for i in I)

    def min_coset_rep(self, w, I):
        while True:
            for i in I:
                u = self.mul_gen(w, i)
                if self.length(u) < self.length(w):
                    w = u
                    break
            else:
                return w

    def enumerate_dominant_coset(self, lam_minus, I, max_length, dominant_only=False):
        """All y in W_l^I with l(y) <= max_length, in order of length.

        With ``dominant_only`` keep only y with y . lam_minus dominant.
        """
        if not self.in_closed_antidominant_alcove(lam_minus):
            raise InvalidInput(f"{tuple(lam_minus)} is not in the closed antidominant alcove")
        dist = self.bfs(max_length)
        out = [y for y in dist if self.is_min_coset_rep(y, I)]
        if dominant_only:
            out = [y for y in out if self.R.is_dominant(self.dot(y, lam_minus))]
        out.sort(key=lambda y: (self.length(y), self.reduced_word(y)))
        return out

    # Bruhat order

    def bruhat_leq(self, y, w):
        """Chevalley-Bruhat order via the lifting property, memoised."""
        key = (y, w)
        hit = self._bruhat.get(key)
        if hit is not None:
            return hit
        ly, lw = self.length(y), self.length(w)
        if ly > lw:
            res = False
        elif ly == lw:
            res = y == w
        elif lw == 0:
            res = y == w
        else:
            s = self.first_descent(w)
            ws = self.mul_gen(w, s)
            ys = self.mul_gen(y, s)
            if self.length(ys) < ly:
                res = self.bruhat_leq(ys, ws)
            else:
                res = self.bruhat_leq(y, ws)
        self._bruhat[key] = res
        return res

    def lower_interval(self, w):
        """frozenset of all y <= w; [e,w] = [e,ws] u [e,ws]s for a descent s."""
        hit = self._lower.get(w)
        if hit is not None:
            return hit
        if self.length(w) == 0:
            res = frozenset([w])
        else:
            s = self.first_descent(w)
            below = self.lower_interval(self.mul_gen(w, s))
            res = below | frozenset(self.mul_gen(u, s) for u in below)
        self._lower[w] = res
        return res


def wall_signs_hold(G, red):
    """For alpha in Phi^+_{lam_minus}: x(alpha) < 0 exactly when the pairing is -l."""
    R, ell = G.R, G.ell
    v = tuple(c + 1 for c in red.lambda_minus)
    for b in R.positive_roots:
        c = R.pairing(v, b)
        if c % ell:
            continue
        if _is_positive(red.w.x.act_root(b)) == (c == -ell):
            return False
    return True


def theta_is_dominant(G, w):
    return G.R.is_dominant(G.R.root_lattice_to_weight(w.theta))


def reflection_length_bound_holds(R, beta):
    """l(s_beta) < 2 ht(beta) in the finite Weyl group."""
    return R.reflection(beta).length < 2 * sum(beta)
