"""Root vectors, PBW factorizations and product formulas for diagonal braidings.

Root vectors are iterated braided commutators [a, b] = ab - chi(a, b) ba,
chi being the bicharacter q on letter degrees, evaluated inside a built
Nichols algebra.  A set of roots is accepted only if the product of the
q-symbols (N_a)_{t^{|a|}} reproduces the Hilbert series.
"""
import ast
from dataclasses import dataclass, field as dc_field
from itertools import product

from .linalg import Echelon, axpy, scale
from .qfactor import qsymbol
from .scalars import TracePoly
from .traces import apply_operator


class RootError(ValueError):
    pass


def chi(br, u, v):
    """Bicharacter on letter multisets: prod q[x][y] over x in u, y in v."""
    F = br.F
    c = F.one
    for x in u:
        for y in v:
            c = F.mul(c, br.q[x][y])
    return c


def lyndon_words(k, maxlen):
    """Lyndon words over 0..k-1 up to maxlen, in Duval's generation order."""
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < maxlen:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()


def standard_factorization(u):
    """u = vw with w the longest proper Lyndon suffix."""
    for i in range(1, len(u)):
        if _is_lyndon(u[i:]):
            return u[:i], u[i:]
    raise ValueError("word of length 1 has no factorization")


def _is_lyndon(w):
    return all(w < w[i:] for i in range(1, len(w)))


def shirshov_tree(u):
    if len(u) == 1:
        return u[0]
    v, w = standard_factorization(u)
    return [shirshov_tree(v), shirshov_tree(w)]


def tree_letters(tree):
    if isinstance(tree, int):
        return (tree,)
    return tree_letters(tree[0]) + tree_letters(tree[1])


def tree_text(tree, names=None):
    if isinstance(tree, int):
        return names[tree] if names else str(tree + 1)
    return f"[{tree_text(tree[0], names)},{tree_text(tree[1], names)}]"


def parse_tree(text):
    """'[3,[1,2]]' with 1-based letters -> nested lists of 0-based letters."""
    def conv(t):
        if isinstance(t, int):
            return t - 1
        if isinstance(t, (list, tuple)) and len(t) == 2:
            return [conv(t[0]), conv(t[1])]
        raise ValueError(f"bad bracket {text!r}")
    return conv(ast.literal_eval(text.strip()))


def bracket_vector(N, tree):
    """Coordinates of the bracket in layer len(letters)."""
    F, br = N.F, N.braiding
    if isinstance(tree, int):
        return N.reduce((tree,))
    a, b = tree
    la, lb = tree_letters(a), tree_letters(b)
    va, vb = bracket_vector(N, a), bracket_vector(N, b)
    ab = N.multiply(va, len(la), vb, len(lb))
    ba = N.multiply(vb, len(lb), va, len(la))
    out = dict(ab)
    axpy(F, out, F.neg(chi(br, la, lb)), ba)
    return out


@dataclass
class Root:
    tree: object
    letters: tuple
    vec: dict
    height: int           # N_alpha
    label: str = ""

    @property
    def degree(self):
        return len(self.letters)


@dataclass
class RootDatum:
    algebra: object
    roots: list = dc_field(default_factory=list)     # in PBW order
    complete: bool = False

    @property
    def F(self):
        return self.algebra.F

    def hilbert_product(self):
        F = self.F
        out = TracePoly.one(F)
        for r in self.roots:
            out = out * qsymbol(F, r.height, F.one, r.degree)
        return out

    def check_completeness(self):
        self.complete = self.hilbert_product() == self.algebra.hilbert
        return self.complete

    def eigenvalues(self, letter_lams):
        """Eigenvalue on each root of a diagonal letter operator."""
        F = self.F
        out = []
        for r in self.roots:
            c = F.one
            for x in r.letters:
                c = F.mul(c, F.raw(letter_lams[x]))
            out.append(c)
        return out

    def to_text(self):
        br = self.algebra.braiding
        lines = []
        for r in self.roots:
            lines.append(f"root {tree_text(r.tree)} height {r.height} "
                         f"label {r.label or tree_text(r.tree, br.names)}")
        return "\n".join(lines) + "\n"

    def labels(self):
        br = self.algebra.braiding
        return [r.label or tree_text(r.tree, br.names) for r in self.roots]


def self_braiding_order(br, letters):
    F = br.F
    o = F.mult_order(chi(br, letters, letters))
    if o is None:
        raise RootError("self-braiding is not a root of unity")
    return o


def _require_diagonal(N):
    if not N.braiding.is_diagonal:
        raise ValueError("root vectors need a diagonal braiding")
    if not N.complete:
        raise ValueError("algebra is not complete")


def _power(N, vec, n, k):
    out, d = {0: N.F.one}, 0
    for _ in range(k):
        out = N.multiply(out, d, vec, n)
        d += n
    return out


def _pbw_monomials(N, roots, n):
    """Vectors of sorted products x_{r_1}^{e_1} ... of total degree n."""
    out = []
    ranges = [range(r.height) for r in roots]
    for exps in product(*ranges):
        if sum(e * r.degree for e, r in zip(exps, roots)) != n:
            continue
        vec, d = {0: N.F.one}, 0
        for e, r in zip(exps, roots):
            for _ in range(e):
                vec = N.multiply(vec, d, r.vec, r.degree)
                d += r.degree
        if vec:
            out.append(vec)
    return out


def lyndon_roots(N):
    """Standard Lyndon roots: keep [u] when it is new modulo the span of
    sorted products of shorter roots; then check PBW completeness."""
    _require_diagonal(N)
    br = N.braiding
    L = N.top_degree
    by_len = {}
    for u in lyndon_words(br.size, L):
        by_len.setdefault(len(u), []).append(u)
    found = []
    for n in range(1, L + 1):
        words = sorted(by_len.get(n, []))
        if not words:
            continue
        # PBW order is descending in the lexicographic order
        older = sorted(found, key=lambda r: r.letters, reverse=True)
        E = Echelon(N.F, track=False)
        for v in _pbw_monomials(N, older, n):
            E.insert(v)
        for u in words:
            tree = shirshov_tree(u)
            vec = bracket_vector(N, tree)
            if not vec:
                continue
            kind, _ = E.insert(vec)
            if kind == "new":
                found.append(Root(tree, u, vec, self_braiding_order(br, u)))
    found.sort(key=lambda r: r.letters, reverse=True)
    rd = RootDatum(N, found)
    if not rd.check_completeness():
        raise RootError("Lyndon roots do not reproduce the Hilbert series: "
                        f"{rd.hilbert_product().pretty()} != {N.hilbert.pretty()}")
    return rd


def roots_from_brackets(N, specs):
    """Custom root vectors from (bracket text, label) pairs, in PBW order."""
    _require_diagonal(N)
    br = N.braiding
    roots = []
    for text, label in specs:
        tree = parse_tree(text)
        letters = tree_letters(tree)
        vec = bracket_vector(N, tree)
        if not vec:
            raise RootError(f"root vector {text} vanishes")
        roots.append(Root(tree, letters, vec, self_braiding_order(br, letters), label))
    rd = RootDatum(N, roots)
    if not rd.check_completeness():
        raise RootError("given roots do not reproduce the Hilbert series")
    return rd


def stabilizing_trace(rd, eigenvalues):
    """prod (N_a)_{lam_a t^{|a|}}."""
    F = rd.F
    if len(eigenvalues) != len(rd.roots):
        raise ValueError("need one eigenvalue per root")
    out = TracePoly.one(F)
    for r, lam in zip(rd.roots, eigenvalues):
        out = out * qsymbol(F, r.height, lam, r.degree)
    return out


def root_action(rd, Q):
    """(perm, lam) with Q x_a = lam[a] x_{perm[a]}; RootError if Q does not
    permute the root vectors up to scalars."""
    N, F = rd.algebra, rd.F
    perm, lams = [], []
    for r in rd.roots:
        img = apply_operator(N, Q, r.vec, r.degree)
        hit = None
        for j, s in enumerate(rd.roots):
            if s.degree != r.degree:
                continue
            k = min(s.vec)
            if k not in img:
                continue
            c = F.mul(img[k], F.inv(s.vec[k]))
            if scale(F, c, s.vec) == img:
                hit = (j, c)
                break
        if hit is None:
            raise RootError(f"Q does not map root {tree_text(r.tree)} to a multiple of a root")
        perm.append(hit[0])
        lams.append(hit[1])
    if sorted(perm) != list(range(len(perm))):
        raise RootError("Q does not permute the roots")
    return perm, lams


def _orbits(perm):
    seen, out = set(), []
    for a in range(len(perm)):
        if a in seen:
            continue
        orb, b = [], a
        while b not in seen:
            seen.add(b)
            orb.append(b)
            b = perm[b]
        out.append(orb)
    return out


def _swap_factor_bubble(rd, seq, exp):
    """Reorder seq (root indices) increasingly by adjacent swaps, left to right
    passes; each swap of blocks x_a^k x_b^k contributes chi(a, b)^(k*k)."""
    F, br = rd.F, rd.algebra.braiding
    seq = list(seq)
    c = F.one
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            a, b = seq[i], seq[i + 1]
            if a > b:
                c = F.mul(c, F.pow(chi(br, rd.roots[a].letters, rd.roots[b].letters), exp))
                seq[i], seq[i + 1] = b, a
                changed = True
    return c


def _swap_factor_insertion(rd, seq, exp):
    """Same reordering by right-to-left insertion (a second reduced expression)."""
    F, br = rd.F, rd.algebra.braiding
    seq = list(seq)
    c = F.one
    for i in range(len(seq) - 2, -1, -1):
        j = i
        while j + 1 < len(seq) and seq[j] > seq[j + 1]:
            a, b = seq[j], seq[j + 1]
            c = F.mul(c, F.pow(chi(br, rd.roots[a].letters, rd.roots[b].letters), exp))
            seq[j], seq[j + 1] = b, a
            j += 1
    return c


@dataclass
class OrbitFactor:
    orbit: list
    height: int
    degree: int           # |A| = |a| * #A
    lam: object           # product of lam_Q over the orbit
    q_A: object           # braiding factor for exponent 1
    poly: TracePoly
    is_qsymbol: bool


def orbit_trace(rd, perm, lams, check_second=True):
    """Product over Q-orbits of the traces on the spans of balanced monomials
    prod_{a in A} x_a^k; returns (poly, factors)."""
    F = rd.F
    if len(perm) != len(rd.roots) or sorted(perm) != list(range(len(perm))):
        raise ValueError("perm is not a permutation of the roots")
    total = TracePoly.one(F)
    factors = []
    for orb in _orbits(perm):
        r0 = rd.roots[orb[0]]
        for a in orb:
            r = rd.roots[a]
            if r.height != r0.height or r.degree != r0.degree:
                raise RootError("Q does not preserve heights and degrees on an orbit")
        lam = F.one
        for a in orb:
            lam = F.mul(lam, F.raw(lams[a]))
        sorted_orb = sorted(orb)
        image = [perm[a] for a in sorted_orb]
        deg = r0.degree * len(orb)
        coeffs = [F.zero] * ((r0.height - 1) * deg + 1)
        qA = None
        for k in range(r0.height):
            c = _swap_factor_bubble(rd, image, k * k)
            if check_second and c != _swap_factor_insertion(rd, image, k * k):
                raise AssertionError("braiding factor depends on the reduced expression")
            if k == 1:
                qA = c
            coeffs[k * deg] = F.mul(c, F.pow(lam, k))
        poly = TracePoly(F, coeffs)
        qA = qA if qA is not None else F.one
        is_sym = poly == qsymbol(F, r0.height, F.mul(qA, lam), deg)
        factors.append(OrbitFactor(orb, r0.height, deg, lam, qA, poly, is_sym))
        total = total * poly
    return total, factors


# -- symmetrized basis for a rank-2 swap ---------------------------------------

def swap_identities(N):
    """For x+ = x1 + x2, x- = x1 - x2, y = x+^2: the identities
    x+^2 = -x-^2 = x1x2 + x2x1, x+^4 = x-^4 = 2 x1x2x1x2 and x+ x- y = 0."""
    F = N.F
    if N.braiding.size != 2:
        raise ValueError("rank 2 only")
    x1, x2 = N.reduce((0,)), N.reduce((1,))
    xp = dict(x1)
    axpy(F, xp, F.one, x2)
    xm = dict(x1)
    axpy(F, xm, F.neg(F.one), x2)
    xp2, xm2 = _power(N, xp, 1, 2), _power(N, xm, 1, 2)
    y_ref = N.reduce((0, 1))
    axpy(F, y_ref, F.one, N.reduce((1, 0)))
    out = {
        "x+^2 = -x-^2": xp2 == scale(F, F.neg(F.one), xm2),
        "x+^2 = x1x2+x2x1": xp2 == y_ref,
    }
    if N.top_degree >= 4:
        xp4, xm4 = _power(N, xp, 1, 4), _power(N, xm, 1, 4)
        out["x+^4 = x-^4"] = xp4 == xm4
        out["x+^4 = 2x1x2x1x2"] = xp4 == scale(F, F.from_int(2), N.reduce((0, 1, 0, 1)))
        pm = N.multiply(xp, 1, xm, 1)
        out["x+x-y = 0"] = N.multiply(pm, 2, xp2, 2) == {}
    return out
