"""Sparse exact linear algebra over a Field (raw values).

Vectors are dicts ``col -> raw``; zero entries are never stored.
"""


def axpy(F, y, a, x):
    """y += a*x in place (sparse)."""
    add, mul, z = F.add, F.mul, F.zero
    for k, v in x.items():
        w = y.get(k)
        nv = mul(a, v) if w is None else add(w, mul(a, v))
        if nv == z:
            if w is not None:
                del y[k]
        else:
            y[k] = nv


def scale(F, a, x):
    mul = F.mul
    return {k: mul(a, v) for k, v in x.items()}


def combine(F, terms):
    """Sum of a*x over (a, x) pairs."""
    out = {}
    for a, x in terms:
        axpy(F, out, a, x)
    return out


class Echelon:
    """Incremental semi-echelon form with transformation tracking.

    Every accepted row gets a pivot column and is normalized to 1 there.
    ``combo[k]`` expresses stored row k in terms of the *accepted*
    originals (ids 0, 1, ...), so a dependent vector can be written as a
    combination of accepted vectors.
    """

    def __init__(self, F, track=True):
        self.F = F
        self.track = track
        self.rows = []
        self.pivots = []
        self.pivot_of = {}
        self.combo = []
        self.count = 0

    def reduce(self, v):
        """Reduce a copy of v; return (residual, coefficients over rows)."""
        F = self.F
        v = dict(v)
        coef = []
        neg, z = F.neg, F.zero
        for k, p in enumerate(self.pivots):
            c = v.get(p)
            if c is not None:
                axpy(F, v, neg(c), self.rows[k])
                coef.append((k, c))
        return v, coef

    def insert(self, v):
        """Return ('new', id) or ('dep', coords over accepted ids)."""
        F = self.F
        res, coef = self.reduce(v)
        if not res:
            if not self.track:
                return ("dep", None)
            out = {}
            for k, c in coef:
                axpy(F, out, c, self.combo[k])
            return ("dep", out)
        p = min(res)
        inv = F.inv(res[p])
        row = scale(F, inv, res)
        if self.track:
            comb = {self.count: F.one}
            for k, c in coef:
                axpy(F, comb, F.neg(c), self.combo[k])
            self.combo.append(scale(F, inv, comb))
        self.rows.append(row)
        self.pivots.append(p)
        self.pivot_of[p] = len(self.rows) - 1
        self.count += 1
        return ("new", self.count - 1)

    @property
    def rank(self):
        return len(self.rows)


def rank(F, rows):
    e = Echelon(F, track=False)
    for r in rows:
        if r:
            e.insert(r)
    return e.rank


def express(F, basis, v):
    """Coordinates of v over the independent list ``basis``, or None."""
    e = Echelon(F)
    for b in basis:
        kind, _ = e.insert(b)
        if kind != "new":
            raise ValueError("basis vectors are dependent")
    kind, coords = e.insert(v)
    return coords if kind == "dep" else None
