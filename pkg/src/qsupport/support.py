"""
Support varieties of irreducible and Weyl modules as orbit descriptors
G.u_J, where J is a subset of the simple roots with Phi_lam W-conjugate to
Phi_J. Only the combinatorial label and the orbit dimension |Phi| - |Phi_J|
are produced.
"""

from dataclasses import dataclass

from .errors import AssumptionViolation, InvalidInput
from .roots import WeylElement, is_closed_subsystem, phi_lambda, validate_ell


@dataclass(frozen=True)
class SupportVarietyDescriptor:
    type_label: str
    rank: int
    ell: int
    weight: tuple
    J: tuple
    conjugator: WeylElement
    dimension: int
    mode: str = "quantum"
    module_kind: str = "irreducible"
    conditional_on_LCF: bool = False

    def nilradical_roots(self):
        """Roots of u_J: the negatives of Phi^+ outside Phi_J."""
        R = self.conjugator.R
        phi_j = R.phi_subset(self.J)
        return tuple(tuple(-c for c in b) for b in R.positive_roots if b not in phi_j)

    def to_json(self):
        return {"type": self.type_label, "rank": self.rank, "ell": self.ell, "mode": self.mode,
                "module_kind": self.module_kind, "weight": list(self.weight), "J": list(self.J),
                "conjugator_word": list(self.conjugator.word), "dimension": self.dimension,
                "conditional_on_LCF": self.conditional_on_LCF}


def _image(x, roots):
    return frozenset(x.act_root(b) for b in roots)


def simple_system(R, subset):
    """Positive members of a subsystem that are not a sum of two positive members."""
    pos = [b for b in subset if R.is_positive(b)]
    pos_set = set(pos)
    out = []
    for b in pos:
        decomposable = any(tuple(x - y for x, y in zip(b, a)) in pos_set for a in pos if a != b)
        if not decomposable:
            out.append(b)
    return tuple(out)


def find_J(R, subset):
    """Canonical J (1-based simple indices) and w in W with w(Phi_J) = subset.

    J is the lexicographically least standard conjugate; w is the first
    element in breadth-first order of W realising it.
    """
    subset = frozenset(tuple(b) for b in subset)
    if not all(R.is_root(b) for b in subset):
        raise InvalidInput("subset contains non-roots")
    if not is_closed_subsystem(R, subset):
        raise AssumptionViolation("root subset is not a closed subsystem")
    base = simple_system(R, subset)
    simple_index = {b: i + 1 for i, b in enumerate(R.simple_roots)}
    best = None
    for x in R.weyl_elements():
        img = [x.act_root(b) for b in base]
        if all(b in simple_index for b in img):
            K = tuple(sorted(simple_index[b] for b in img))
            if best is None or K < best[0]:
                best = (K, x)
    if best is None or _image(best[1], subset) != R.phi_subset(best[0]):
        raise AssumptionViolation("no W-conjugate of the subset is a standard parabolic subsystem")
    K, x = best
    return K, x.inverse


def are_conjugate(R, A, B):
    A, B = frozenset(A), frozenset(B)
    if len(A) != len(B):
        return False
    return any(_image(x, A) == B for x in R.weyl_elements())


def conjugacy_invariance_check(R, J, K):
    """True iff Phi_J and Phi_K are W-conjugate."""
    return are_conjugate(R, R.phi_subset(J), R.phi_subset(K))


def _descriptor(R, lam, ell, mode, module_kind, used_weight):
    roots, _ = phi_lambda(R, used_weight, ell)
    J, w = find_J(R, roots)
    phi_j = R.phi_subset(J)
    if _image(w, phi_j) != frozenset(roots):
        raise AssumptionViolation("conjugator does not carry Phi_J onto Phi_lam")
    return SupportVarietyDescriptor(
        R.type_label, R.rank, ell, tuple(lam), J, w, len(R.roots) - len(phi_j), mode, module_kind,
        conditional_on_LCF=(mode == "modular"))


def restricted_part(lam, p):
    """lam = lam0 + p*lam1 with lam0 restricted; returns lam0."""
    return tuple(c % p for c in lam)


def irreducible_support(R, lam, ell, mode="quantum"):
    """Descriptor of the support variety of L(lam).

    In modular mode ell is the prime p, the weight is first replaced by its
    restricted part, and the answer is conditional on the Lusztig character
    formula for restricted weights.
    """
    validate_ell(R, ell, mode)
    lam = R.check_weight(lam)
    if not R.is_dominant(lam):
        raise InvalidInput(f"weight {lam} is not dominant")
    used = restricted_part(lam, ell) if mode == "modular" else lam
    return _descriptor(R, lam, ell, mode, "irreducible", used)


def weyl_module_support(R, lam, ell, mode="quantum"):
    validate_ell(R, ell, mode)
    lam = R.check_weight(lam)
    if not R.is_dominant(lam):
        raise InvalidInput(f"weight {lam} is not dominant")
    return _descriptor(R, lam, ell, mode, "weyl", lam)


def dual_weight(R, lam):
    """-w0(lam)."""
    return tuple(-c for c in R.longest_element.act_weight(lam))


def linkage_check(R, ell, combination):
    """All weights of a character combination have W-conjugate Phi-sets and one canonical J."""
    weights = combination.weights()
    if len(weights) <= 1:
        return True
    sets = [frozenset(phi_lambda(R, mu, ell)[0]) for mu in weights]
    first = sets[0]
    if not all(are_conjugate(R, first, other) for other in sets[1:]):
        return False
    return len({find_J(R, s)[0] for s in sets}) == 1
