"""Opposite and right derivations, the modified shift xi_x, Z_k sector sums
and divisibility of graded traces by sub-Nichols-algebra traces."""
from dataclasses import dataclass

from .braidings import CentralizerCharacter, from_orbits, group_action_operator
from .groups import FiniteGroup
from .linalg import Echelon, axpy, scale
from .nichols import build
from .qfactor import qsymbol
from .traces import _columns, graded_trace


# -- derivations ---------------------------------------------------------------

def op_derivation(N, x):
    """d_x = (e_x^* (x) id) Delta as matrices: mats[n][i] = d_x(w_i), layer n -> n-1.

    These are the stored build derivations: d_x(e_y v) = delta_{xy} v
    + q_{y,z} e_y d_z(v) with y |> z = x.
    """
    mats = [None]
    for n in range(1, len(N.layers)):
        mats.append([N.derivation(x, {i: N.F.one}, n) for i in range(N.layers[n].dim)])
    return mats


def op_derivation_closed_form(N, x, y, z):
    """d_x(e_y e_z) = delta_{xy} e_z + q_{y,z} delta_{x, y|>z} e_y, in layer 1."""
    F, br = N.F, N.braiding
    out = {}
    if x == y:
        axpy(F, out, F.one, N.reduce((z,)))
    if x == br.tri[y][z]:
        axpy(F, out, br.q[y][z], N.reduce((y,)))
    return out


class RightMultiplier:
    """v -> v e_x, memoized per basis word."""

    def __init__(self, N):
        self.N = N
        self.memo = {}

    def row(self, n, k, x):
        key = (n, k, x)
        r = self.memo.get(key)
        if r is None:
            r = self.N.reduce(self.N.layers[n].words[k] + (x,))
            self.memo[key] = r
        return r

    def __call__(self, vec, n, x):
        out = {}
        for k, c in vec.items():
            axpy(self.N.F, out, c, self.row(n, k, x))
        return out


def right_derivation(N, y, right=None):
    """partial_y = (id (x) e_y^*) Delta, via partial_y(u e_x) = delta_{xy} u
    + q_{y,x} partial_y(u) e_{y|>x}.  mats[n][i] lies in layer n-1."""
    F, br = N.F, N.braiding
    right = right or RightMultiplier(N)
    mats = [None, [({0: F.one} if w[0] == y else {}) for w in N.layers[1].words]
            if len(N.layers) > 1 else None]
    for n in range(2, len(N.layers)):
        rows = []
        prev = mats[n - 1]
        for w in N.layers[n].words:
            u, x = w[:-1], w[-1]
            cu = N.reduce(u)
            out = {}
            if x == y:
                axpy(F, out, F.one, cu)
            du = {}
            for j, c in cu.items():
                axpy(F, du, c, prev[j])
            if du:
                axpy(F, out, br.q[y][x], right(du, n - 2, br.tri[y][x]))
            rows.append(out)
        mats.append(rows)
    return mats


def joint_kernel_dims(N, letters):
    """dim of K_n = intersection of ker partial_y (y in letters) per layer."""
    F = N.F
    right = RightMultiplier(N)
    mats = {y: right_derivation(N, y, right) for y in letters}
    dims = [1]
    for n in range(1, len(N.layers)):
        D = N.layers[n - 1].dim
        E = Echelon(F, track=False)
        # rank of the stacked map = rank of its transpose rows (one per y, k)
        cols = {}
        for i in range(N.layers[n].dim):
            for t, y in enumerate(letters):
                for k, c in mats[y][n][i].items():
                    cols.setdefault(t * D + k, {})[i] = c
        for col in cols.values():
            E.insert(col)
        dims.append(N.layers[n].dim - E.rank)
    while len(dims) > 1 and dims[-1] == 0:
        dims.pop()
    return dims


# -- the modified shift ------------------------------------------------------------

def order_of_q(br):
    """m minimal with 1 + q + ... + q^{m-1} = 0 for the diagonal q_{x,x}."""
    F = br.F
    diag = {br.q[x][x] for x in range(br.size)}
    if len(diag) != 1:
        raise ValueError("diagonal braiding coefficients differ")
    q = diag.pop()
    s, p = F.zero, F.one
    for m in range(1, 10 ** 4):
        s = F.add(s, p)
        if s == F.zero:
            return m
        p = F.mul(p, q)
    raise ValueError("1 + q + ... never vanishes")


def coefficients_are_mth_roots(br, m):
    F = br.F
    return all(F.pow(v, m) == F.one for r in br.q for v in r)


def xi_shift(N, x, m, vec):
    """xi_x on a global vector {(n, i): c}: (d_x)^{m-1} v + e_x v."""
    F = N.F
    out = {}
    top = N.top_degree
    by_layer = {}
    for (n, i), c in vec.items():
        by_layer.setdefault(n, {})[i] = c
    for n, v in by_layer.items():
        d, k = v, n
        for _ in range(m - 1):
            if k == 0 or not d:
                d = {}
                break
            d = N.derivation(x, d, k)
            k -= 1
        for i, c in d.items():
            _acc(F, out, (k, i), c)
        if n < top:
            for i, c in N.left_mul(x, v, n).items():
                _acc(F, out, (n + 1, i), c)
    return out


def _acc(F, out, key, c):
    w = out.get(key)
    nv = c if w is None else F.add(w, c)
    if nv == F.zero:
        out.pop(key, None)
    else:
        out[key] = nv


def sector_basis(N, k, j):
    return [(n, i) for n in range(len(N.layers)) if n % k == j
            for i in range(N.layers[n].dim)]


def xi_bijectivity(N, x, m):
    """For each j, (dim sector j, dim sector j+1, rank of xi_x on sector j)."""
    F = N.F
    out = []
    for j in range(m):
        src = sector_basis(N, m, j)
        tgt = sector_basis(N, m, (j + 1) % m)
        E = Echelon(F, track=False)
        idx = {b: t for t, b in enumerate(tgt)}
        for b in src:
            img = xi_shift(N, x, m, {b: F.one})
            row = {}
            for key, c in img.items():
                if key not in idx:
                    raise AssertionError("xi_x leaves the next sector")
                row[idx[key]] = c
            if row:
                E.insert(row)
        out.append((len(src), len(tgt), E.rank))
    return out


def xi_is_bijective(N, x, m):
    return all(a == b == r for a, b, r in xi_bijectivity(N, x, m))


def operator_columns(N, Q):
    """cols[n][i] = Q(w_i) in layer n."""
    return [list(cols) for _, cols in _columns(N, Q, N.top_degree)]


def apply_columns(F, cols, vec):
    out = {}
    for (n, i), c in vec.items():
        for k, d in cols[n][i].items():
            _acc(F, out, (n, k), F.mul(c, d))
    return out


def commutation_scalar(N, Q, x, m, cols=None):
    """lam with Q o xi_x = lam * xi_x o Q on every basis vector, or None."""
    F = N.F
    cols = cols or operator_columns(N, Q)
    lam = None
    for n in range(len(N.layers)):
        for i in range(N.layers[n].dim):
            b = {(n, i): F.one}
            lhs = apply_columns(F, cols, xi_shift(N, x, m, b))
            rhs = xi_shift(N, x, m, apply_columns(F, cols, b))
            if not lhs and not rhs:
                continue
            if not rhs:
                return None
            if lam is None:
                key = min(rhs)
                if key not in lhs:
                    return None
                lam = F.mul(lhs[key], F.inv(rhs[key]))
            if lhs != scale(F, lam, rhs):
                return None
    return lam


def check_shift_equivariance(N, G, real, m):
    """g_y o xi_x = q_{y,x} xi_{y|>x} o g_y for all letters x, y."""
    br, F = N.braiding, N.F
    for y in range(br.size):
        Q = group_action_operator(real, br, br.degrees[y])
        cols = operator_columns(N, Q)
        for x in range(br.size):
            yx = br.tri[y][x]
            for n in range(len(N.layers)):
                for i in range(N.layers[n].dim):
                    b = {(n, i): F.one}
                    lhs = apply_columns(F, cols, xi_shift(N, x, m, b))
                    rhs = xi_shift(N, yx, m, apply_columns(F, cols, b))
                    if lhs != scale(F, br.q[y][x], rhs):
                        return False
    return True


def xi_orbit_span(N, m):
    """Dimension of the span of the orbit of 1 under the group generated by
    all xi_x (closure under the xi_x suffices: they are invertible)."""
    F = N.F
    br = N.braiding
    keys = [(n, i) for n in range(len(N.layers)) for i in range(N.layers[n].dim)]
    idx = {k: t for t, k in enumerate(keys)}

    def flat(v):
        return {idx[k]: c for k, c in v.items()}

    E = Echelon(F, track=False)
    basis = []
    frontier = [{(0, 0): F.one}]
    E.insert(flat(frontier[0]))
    while frontier:
        nxt = []
        for v in frontier:
            for x in range(br.size):
                w = xi_shift(N, x, m, v)
                if not w:
                    continue
                kind, _ = E.insert(flat(w))
                if kind == "new":
                    nxt.append(w)
                    basis.append(w)
        frontier = nxt
    return E.rank


# -- sectors ------------------------------------------------------------------------

@dataclass
class SectorDecomposition:
    k: int
    lam: object
    sums: list

    @classmethod
    def of(cls, poly, k, lam):
        F = poly.field
        sums = [F.zero] * k
        for n, c in enumerate(poly.c):
            sums[n % k] = F.add(sums[n % k], c)
        return cls(k, F.raw(lam), sums)

    def balanced(self, F):
        return all(self.sums[(j + 1) % self.k] == F.mul(self.lam, self.sums[j])
                   for j in range(self.k))


def balanced_and_divisible(poly, k, lam):
    """(balanced, divisible by (k)_{lam t})."""
    F = poly.field
    sec = SectorDecomposition.of(poly, k, lam)
    _, ok = poly.exact_div(qsymbol(F, k, lam, 1))
    return sec.balanced(F), ok


# -- divisibility ---------------------------------------------------------------------

@dataclass
class DivisibilityVerdict:
    label: str
    divisor: object
    divides: bool
    quotient: object


def divisibility_report(trace, predicted):
    """predicted: list of (label, TracePoly)."""
    out = []
    for label, d in predicted:
        q, ok = trace.exact_div(d)
        out.append(DivisibilityVerdict(label, d, ok, q if ok else None))
    return out


@dataclass
class SubNichols:
    group: object          # G' as its own FiniteGroup
    to_big: list           # G' element -> G element
    braiding: object
    realization: object
    algebra: object
    letters: list          # letters of B(M) belonging to X'


def sub_nichols(G, real_big, block_rep, chi, sub_gens, F, max_degree=40):
    """B(M') for M' = O_h^{chi'} over G' = <sub_gens> with chi' = chi restricted."""
    Gs = FiniteGroup([G.perms[h] for h in sub_gens], names=[G.label(h) for h in sub_gens])
    to_big = [G.index[p] for p in Gs.perms]
    from_big = {b: i for i, b in enumerate(to_big)}
    if block_rep not in from_big:
        raise ValueError("class representative is not in the subgroup")
    Gs.cycle_labels = G.cycle_labels
    h = from_big[block_rep]
    cent = Gs.centralizer(h)
    chi_sub = CentralizerCharacter(Gs, h, {c: chi(to_big[c]) for c in cent}, F)
    br, real = from_orbits(Gs, [(h, chi_sub)], F)
    N = build(br, max_degree)
    blk = real_big.blocks[0]
    letters = [blk.letters[blk.klass.index(to_big[y])] for y in real.blocks[0].klass]
    return SubNichols(Gs, to_big, br, real, N, letters)


def sub_trace(sub, g_big):
    inv = {b: i for i, b in enumerate(sub.to_big)}
    Q = group_action_operator(sub.realization, sub.braiding, inv[g_big])
    return graded_trace(sub.algebra, Q).poly
