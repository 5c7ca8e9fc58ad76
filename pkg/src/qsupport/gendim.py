"""
Generic dimensions and the derivative-at-zeta computations.

D_lam(t) is the product over positive roots alpha of
t^(d_alpha c) - t^(-d_alpha c) with c = <lam + rho, alpha^vee>; the Weyl
generic dimension is D_lam / D_0. Irreducible characters come from the
parabolic KL expansion over the dominant elements of W_l^I.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial

from .errors import InvalidInput, InvariantViolation
from .kl import at_one
from .poly import (CyclotomicInt, LaurentPoly, derivative, eval_at_zeta, exact_div,
                   psi_multiplicity, root_multiplicity_at_zeta)
from .roots import phi_lambda


def _shifted(lam):
    return tuple(c + 1 for c in lam)


def d_poly(R, lam):
    lam = R.check_weight(lam)
    v = _shifted(lam)
    out = LaurentPoly.const(1)
    for b in R.positive_roots:
        e = R.d(b) * R.pairing(v, b)
        if e == 0:
            return LaurentPoly()
        out = out * LaurentPoly({e: 1, -e: -1})
    return out


def weyl_generic_dim(R, lam):
    lam = R.check_weight(lam)
    if not R.is_dominant(lam):
        raise InvalidInput(f"weight {lam} is not dominant")
    return _weyl_generic_dim(R, lam)


@lru_cache(maxsize=8192)
def _weyl_generic_dim(R, lam):
    # divide by the binomial factors of D_0 one at a time; each step is linear
    q = d_poly(R, lam)
    for b in R.positive_roots:
        e = R.d(b) * R.pairing(R.rho, b)
        q = exact_div(q, LaurentPoly({e: 1, -e: -1}))
        if q is None:
            raise InvariantViolation(f"D_0 does not divide D_lam for lam={lam}")
    return q


@dataclass(frozen=True)
class Term:
    sign: int
    multiplicity: int
    weight: tuple
    length: int = 0  # l(y) of the contributing coset representative


@dataclass(frozen=True)
class CharacterCombination:
    """sum of sign * multiplicity * ch Delta(weight)."""

    lam: tuple
    ell: int
    terms: tuple = field(default=())

    def weights(self):
        return [t.weight for t in self.terms]

    def to_json(self):
        return {"lam": list(self.lam), "ell": self.ell,
                "terms": [{"sign": t.sign, "multiplicity": t.multiplicity, "weight": list(t.weight)}
                          for t in self.terms]}


def irreducible_character(kl, lam):
    """Expansion of ch L(lam) in Weyl characters, from parabolic KL values at q=1."""
    G = kl.group
    R = G.R
    red = G.reduce_to_fundamental(lam)
    w, I = red.w, red.I
    lw = G.length(w)
    terms = []
    for y in G.lower_interval(w):
        if not G.is_min_coset_rep(y, I):
            continue
        mu = G.dot(y, red.lambda_minus)
        if not R.is_dominant(mu):
            continue
        m = at_one(kl.parabolic_kl(I, y, w))
        if m:
            ly = G.length(y)
            terms.append(Term((-1) ** (lw - ly), m, mu, ly))
    terms.sort(key=lambda t: (-t.length, t.weight))
    return CharacterCombination(red.lam, G.ell, tuple(terms))


def irreducible_generic_dim(kl, lam):
    R = kl.group.R
    total = LaurentPoly()
    for t in irreducible_character(kl, lam).terms:
        total = total + t.sign * t.multiplicity * weyl_generic_dim(R, t.weight)
    return total


def weyl_dimension(R, lam):
    """Classical product formula, independent of the Laurent route."""
    v = _shifted(lam)
    out = Fraction(1)
    for b in R.positive_roots:
        out *= Fraction(R.pairing(v, b), R.pairing(R.rho, b))
    if out.denominator != 1:
        raise InvariantViolation("Weyl dimension is not an integer")
    return int(out)


def e_factor(G, lam_minus):
    """Product over alpha in Phi^+ minus Phi^+_{lam_minus} of
    zeta^(d c) - zeta^(-d c), c = <lam_minus + rho, alpha^vee>."""
    R, ell = G.R, G.ell
    v = _shifted(lam_minus)
    out = CyclotomicInt.from_int(ell, 1)
    for b in R.positive_roots:
        c = R.pairing(v, b)
        if c % ell == 0:
            continue
        e = R.d(b) * c
        out = out * (CyclotomicInt.zeta_power(ell, e) - CyclotomicInt.zeta_power(ell, -e))
    return out


def derivative_closed_form(G, lam, red=None):
    """Closed form for the s-th derivative of D_lam at zeta, s = |Phi^+_lam|."""
    R, ell = G.R, G.ell
    if red is None:
        red = G.reduce_to_fundamental(lam)
    v = _shifted(red.lam)
    _, pos = phi_lambda(R, red.lam, ell)
    s = len(pos)
    coeff = factorial(s) * (-1) ** (G.length(red.w) - red.a_count)
    for b in pos:
        coeff *= 2 * R.d(b) * R.pairing(v, b)
    out = CyclotomicInt.zeta_power(ell, -s, coeff) * e_factor(G, red.lambda_minus)
    if out.is_zero():
        raise InvariantViolation(f"closed form vanishes at lam={red.lam}, ell={ell}")
    return out


@dataclass
class DerivativeCheck:
    lam: tuple
    ell: int
    s: int
    lhs: CyclotomicInt
    rhs: CyclotomicInt

    @property
    def equal(self):
        return self.lhs == self.rhs

    @property
    def nonzero(self):
        return not self.lhs.is_zero()

    @property
    def passed(self):
        return self.equal and self.nonzero

    def to_json(self):
        return {"lam": list(self.lam), "ell": self.ell, "s": self.s, "lhs": list(self.lhs.coeffs),
                "rhs": list(self.rhs.coeffs), "equal": self.equal, "nonzero": self.nonzero,
                "passed": self.passed}


def verify_derivative_formula(G, lam, red=None):
    R, ell = G.R, G.ell
    lam = R.check_weight(lam)
    if red is None:
        red = G.reduce_to_fundamental(lam)
    _, pos = phi_lambda(R, lam, ell)
    s = len(pos)
    lhs = eval_at_zeta(derivative(d_poly(R, lam), s), ell)
    try:
        rhs = derivative_closed_form(G, lam, red)
    except InvariantViolation:
        rhs = CyclotomicInt.from_int(ell, 0)
    return DerivativeCheck(lam, ell, s, lhs, rhs)


@dataclass
class MultiplicityReport:
    lam: tuple
    ell: int
    lambda_minus: tuple
    s: int
    n: int
    n_by_derivative: int
    f: LaurentPoly
    f_s_at_zeta: CyclotomicInt
    positive_factor: int
    factorised: bool
    borel_bound: int
    support_bound: int

    @property
    def passed(self):
        return (self.n == self.s == self.n_by_derivative and not self.f_s_at_zeta.is_zero()
                and self.positive_factor > 0 and self.factorised)

    def to_json(self):
        return {"lam": list(self.lam), "ell": self.ell, "lambda_minus": list(self.lambda_minus),
                "s": self.s, "n": self.n, "n_by_derivative": self.n_by_derivative,
                "f_s_at_zeta": list(self.f_s_at_zeta.coeffs), "positive_factor": self.positive_factor,
                "factorised": self.factorised, "borel_bound": self.borel_bound,
                "support_bound": self.support_bound, "passed": self.passed}


def multiplicity_and_complexity(kl, lam):
    """Psi_l-multiplicity of f = D_0 * dim_t L(lam) and the resulting dimension bounds."""
    G = kl.group
    R, ell = G.R, G.ell
    red = G.reduce_to_fundamental(lam)
    combo = irreducible_character(kl, lam)
    f = LaurentPoly()
    positive = 0
    for t in combo.terms:
        f = f + t.sign * t.multiplicity * d_poly(R, t.weight)
        v = _shifted(t.weight)
        prod = t.multiplicity
        for b in phi_lambda(R, t.weight, ell)[1]:
            prod *= 2 * R.d(b) * R.pairing(v, b)
        positive += prod
    full, pos = phi_lambda(R, red.lambda_minus, ell)
    s = len(pos)
    n = psi_multiplicity(f, ell)
    n_der = root_multiplicity_at_zeta(f, ell)
    fs = eval_at_zeta(derivative(f, s), ell)
    sign = (-1) ** (G.length(red.w) - red.a_count)
    predicted = CyclotomicInt.zeta_power(ell, -s, sign * factorial(s) * positive) * e_factor(G, red.lambda_minus)
    return MultiplicityReport(
        lam=red.lam, ell=ell, lambda_minus=red.lambda_minus, s=s, n=n, n_by_derivative=n_der, f=f,
        f_s_at_zeta=fs, positive_factor=positive, factorised=(fs == predicted),
        borel_bound=len(R.positive_roots) - s, support_bound=len(R.roots) - len(full))


def s_invariance_check(G, lam_minus, sample):
    """True iff |Phi^+_{y.lam_minus}| equals |Phi^+_{lam_minus}| for every y in sample."""
    R, ell = G.R, G.ell
    s0 = len(phi_lambda(R, lam_minus, ell)[1])
    return all(len(phi_lambda(R, G.dot(y, lam_minus), ell)[1]) == s0 for y in sample)


def sweep_weights(R, bound):
    """Dominant weights with every coordinate <= bound, in lexicographic order."""
    return [tuple(c) for c in product(range(bound + 1), repeat=R.rank)]
