"""
Kazhdan-Lusztig polynomials P_{y,w} on an affine Weyl group, computed a
column at a time (all y <= w for fixed w) by the usual descent recursion,
plus the alternating-sum parabolic variant P^{I,-1}.

Polynomials in q are tuples of ints, constant term first; () is zero.
"""

import threading

from .errors import CapacityExceeded, InvalidInput, InvariantViolation

DEFAULT_MAX_LENGTH = 14


def padd(a, b, scale=1, shift=0):
    """a + scale * q^shift * b."""
    n = max(len(a), len(b) + shift)
    out = list(a) + [0] * (n - len(a))
    for i, c in enumerate(b):
        out[i + shift] += scale * c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def at_one(p):
    return sum(p)


class KLTable:
    """Memo of KL columns for one affine Weyl group.

    Reads are lock-free; a column is published under a lock once complete.
    """

    def __init__(self, group, max_length=DEFAULT_MAX_LENGTH):
        self.group = group
        self.max_length = max_length
        self._columns = {}
        self._lock = threading.Lock()
        self.computed = 0
        self.loaded = 0

    @property
    def context(self):
        R = self.group.R
        return {"type": R.type_label, "rank": R.rank, "ell": self.group.ell}

    def clear(self):
        with self._lock:
            self._columns.clear()

    def stats(self):
        return {"columns_cached": len(self._columns), "columns_computed": self.computed,
                "columns_loaded": self.loaded}

    def column(self, w):
        """{y: P_{y,w}} for every y <= w."""
        col = self._columns.get(w)
        if col is not None:
            return col
        G = self.group
        lw = G.length(w)
        if lw > self.max_length:
            raise CapacityExceeded(
                f"KL computation needs l(w) = {lw} > configured maximum {self.max_length}")
        if lw == 0:
            col = {w: (1,)}
        else:
            col = self._compute_column(w, lw)
        with self._lock:
            self._columns.setdefault(w, col)
            self.computed += 1
        return col

    def _compute_column(self, w, lw):
        G = self.group
        s = G.first_descent(w)
        v = G.mul_gen(w, s)
        lv = lw - 1
        colv = self.column(v)
        corrections = []
        for z, p in colv.items():
            if z == v:
                continue
            gap = lv - G.length(z)
            if gap % 2 == 1 and G.is_right_descent(z, s):
                k = (gap - 1) // 2
                mu = p[k] if k < len(p) else 0
                if mu:
                    corrections.append((self.column(z), mu, (lw - G.length(z)) // 2))
        col = {}
        for y in G.lower_interval(w):
            ys = G.mul_gen(y, s)
            c = 1 if G.length(ys) < G.length(y) else 0
            p = padd((), colv.get(ys, ()), shift=1 - c)
            p = padd(p, colv.get(y, ()), shift=c)
            for colz, mu, shift in corrections:
                pz = colz.get(y)
                if pz:
                    p = padd(p, pz, scale=-mu, shift=shift)
            col[y] = p
        return col

    def kl_poly(self, y, w):
        if y.level != w.level or w.level != self.group.ell:
            raise InvalidInput("elements must share the table's level")
        G = self.group
        if G.length(y) > G.length(w):
            return ()
        return self.column(w).get(y, ())

    def parabolic_kl(self, I, y, w):
        """P^{I,-1}_{y,w} = sum over x in W_I with yx <= w of (-1)^l(x) P_{yx,w}."""
        G = self.group
        I = tuple(sorted(set(I)))
        for name, u in (("y", y), ("w", w)):
            if not G.is_min_coset_rep(u, I):
                raise InvalidInput(f"{name} is not minimal in its coset modulo W_I, I={list(I)}")
        col = self.column(w)
        total = ()
        for x, lx in G.parabolic_subgroup(I).items():
            p = col.get(G.mul(y, x))
            if p:
                total = padd(total, p, scale=(-1) ** lx)
        if any(c < 0 for c in total):
            raise InvariantViolation(f"negative coefficient in parabolic KL polynomial {total}")
        return total

    # persistence

    def to_json(self):
        G = self.group

        def ser(u):
            return [list(u.theta), list(u.x.word)]

        cols = []
        for w in sorted(self._columns, key=lambda u: (G.length(u), G.reduced_word(u))):
            entries = sorted(([ser(y), list(p)] for y, p in self._columns[w].items()))
            cols.append([ser(w), entries])
        return {"context": self.context, "columns": cols}

    def load_json(self, data):
        if data.get("context") != self.context:
            return False
        G = self.group
        new = {}
        for wser, entries in data["columns"]:
            w = G.element(*wser)
            new[w] = {G.element(*yser): tuple(p) for yser, p in entries}
        with self._lock:
            for w, col in new.items():
                if w not in self._columns:
                    self._columns[w] = col
                    self.loaded += 1
        return True
