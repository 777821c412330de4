"""Braided vector spaces of group type: rack plus cocycle.

c(e_x (x) e_y) = q[x][y] e_{x|>y} (x) e_x, with all q stored as raw field values.
"""
from dataclasses import dataclass, field as dc_field

from .scalars import Scalar


class GroupTypeBraiding:
    def __init__(self, F, tri, q, names=None, degrees=None, group=None, orbit_of=None):
        self.F = F
        self.size = len(tri)
        self.tri = [list(r) for r in tri]
        self.q = [list(r) for r in q]
        self.names = list(names) if names else [f"x{i + 1}" for i in range(self.size)]
        self.degrees = degrees          # group element per letter, or None
        self.group = group
        # z with x |> z = y
        self.rinv = [[0] * self.size for _ in range(self.size)]
        for x in range(self.size):
            row = self.tri[x]
            if sorted(row) != list(range(self.size)):
                raise ValueError(f"x|>- is not a bijection for letter {x}")
            for z, y in enumerate(row):
                self.rinv[x][y] = z
        if any(v == F.zero for r in self.q for v in r):
            raise ValueError("cocycle has a zero entry")
        self.orbit_of = orbit_of or self._rack_orbits()
        self.check_rack()

    def _rack_orbits(self):
        lab = list(range(self.size))

        def find(a):
            while lab[a] != a:
                lab[a] = lab[lab[a]]
                a = lab[a]
            return a
        for x in range(self.size):
            for y in range(self.size):
                a, b = find(y), find(self.tri[x][y])
                if a != b:
                    lab[max(a, b)] = min(a, b)
        roots = sorted({find(a) for a in range(self.size)})
        return [roots.index(find(a)) for a in range(self.size)]

    @property
    def n_orbits(self):
        return max(self.orbit_of) + 1

    @property
    def is_diagonal(self):
        return all(self.tri[x][y] == y for x in range(self.size) for y in range(self.size))

    def check_rack(self):
        t = self.tri
        B = range(self.size)
        for x in B:
            for y in B:
                for z in B:
                    if t[x][t[y][z]] != t[t[x][y]][t[x][z]]:
                        raise ValueError("rack is not self-distributive")
        return True

    def braid(self, x, y):
        """c(e_x (x) e_y) = (coefficient, (x|>y, x))."""
        return self.q[x][y], (self.tri[x][y], x)

    def check_yang_baxter(self):
        """(c(x)1)(1(x)c)(c(x)1) == (1(x)c)(c(x)1)(1(x)c) on every basis triple."""
        F, B = self.F, range(self.size)

        def c12(coef, w):
            a, (u, v) = self.braid(w[0], w[1])
            return F.mul(coef, a), (u, v, w[2])

        def c23(coef, w):
            a, (u, v) = self.braid(w[1], w[2])
            return F.mul(coef, a), (w[0], u, v)

        for x in B:
            for y in B:
                for z in B:
                    lhs = c12(*c23(*c12(F.one, (x, y, z))))
                    rhs = c23(*c12(*c23(F.one, (x, y, z))))
                    if lhs != rhs:
                        return False
        return True

    def letter_degree_key(self, x):
        return self.degrees[x] if self.degrees is not None else None

    def content_text(self):
        """Canonical text used for cache hashing."""
        F = self.F
        lines = [f"field {F.spec.characteristic} {F.spec.cyclotomic_order}",
                 f"letters {self.size}"]
        for x in range(self.size):
            lines.append("tri " + " ".join(map(str, self.tri[x])))
        for x in range(self.size):
            lines.append("q " + " ".join(F.to_text(v) for v in self.q[x]))
        if self.degrees is not None:
            lines.append("deg " + " ".join(map(str, self.degrees)))
            G = self.group
            lines.append("group " + ";".join(",".join(map(str, p)) for p in G.perms))
        return "\n".join(lines) + "\n"


def diagonal_braiding(F, matrix, names=None):
    """Trivial rack with q[i][j] = matrix[i][j]."""
    n = len(matrix)
    q = [[F.raw(v) for v in row] for row in matrix]
    tri = [list(range(n)) for _ in range(n)]
    return GroupTypeBraiding(F, tri, q, names=names)


class CentralizerCharacter:
    """1-dimensional character of Cent(g), given by raw values on generators."""

    def __init__(self, G, g, values, F):
        self.group, self.rep, self.F = G, g, F
        self.cent = G.centralizer(g)
        cset = set(self.cent)
        vals = {}
        vals[0] = F.one
        frontier = [0]
        gens = list(values)
        for h in gens:
            if h not in cset:
                raise ValueError(f"{G.label(h)} is not in the centralizer of {G.label(g)}")
        while frontier:
            nxt = []
            for a in frontier:
                for h in gens:
                    b = G.mul[a][h]
                    v = F.mul(vals[a], values[h])
                    if b in vals:
                        if vals[b] != v:
                            raise ValueError("character values are not multiplicative")
                    else:
                        vals[b] = v
                        nxt.append(b)
            frontier = nxt
        if len(vals) != len(self.cent):
            raise ValueError("character generators do not generate the centralizer")
        self.values = vals
        self.check()

    def __call__(self, h):
        return self.values[h]

    def check(self):
        G, F = self.group, self.F
        for a in self.cent:
            for b in self.cent:
                if self.values[G.mul[a][b]] != F.mul(self.values[a], self.values[b]):
                    raise ValueError("character is not multiplicative")
            if F.mult_order(self.values[a]) is None:
                raise ValueError("character value is not a root of unity")
        return True


@dataclass
class YDBlock:
    rep: int
    chi: CentralizerCharacter
    klass: list
    cosets: list
    letters: list = dc_field(default_factory=list)


@dataclass
class YDRealization:
    group: object
    blocks: list
    letter_block: list      # letter -> (block index, class position)

    def letter_of(self, b, h):
        blk = self.blocks[b]
        return blk.letters[blk.klass.index(h)]


def from_orbits(G, blocks, F):
    """blocks: list of (class representative, CentralizerCharacter)."""
    yblocks, letter_block, degrees, names = [], [], [], []
    for b, (g, chi) in enumerate(blocks):
        klass = G.conjugacy_class(g)
        cosets = []
        for h in klass:
            s = next(s for s in range(G.order) if G.conj(s, g) == h)
            cosets.append(s)
        blk = YDBlock(g, chi, klass, cosets)
        for i, h in enumerate(klass):
            blk.letters.append(len(letter_block))
            letter_block.append((b, i))
            degrees.append(h)
            names.append(G.label(h) if len(blocks) == 1 else f"{G.label(h)}[{b}]")
        yblocks.append(blk)
    real = YDRealization(G, yblocks, letter_block)
    n = len(letter_block)
    tri = [[0] * n for _ in range(n)]
    q = [[None] * n for _ in range(n)]
    for x in range(n):
        gx = degrees[x]
        for y in range(n):
            sigma, lam = _act(real, gx, y)
            tri[x][y] = sigma
            q[x][y] = lam
    orbit_of = [letter_block[x][0] for x in range(n)]
    br = GroupTypeBraiding(F, tri, q, names=names, degrees=degrees, group=G, orbit_of=orbit_of)
    return br, real


def _act(real, t, y):
    """t.v_y = lam * v_{sigma}: returns (sigma, lam)."""
    G = real.group
    b, i = real.letter_block[y]
    blk = real.blocks[b]
    h = blk.klass[i]
    h2 = G.conj(t, h)
    j = blk.klass.index(h2)
    si, sj = blk.cosets[i], blk.cosets[j]
    c = G.m(G.inv[sj], t, si)
    return blk.letters[j], blk.chi(c)


class LetterOperator:
    """Q e_x = lam[x] e_{sigma[x]}; checked to preserve the braiding."""

    def __init__(self, braiding, sigma, lam, label="", check=True):
        self.braiding = braiding
        self.sigma = list(sigma)
        self.lam = [braiding.F.raw(v) for v in lam]
        self.label = label
        if sorted(self.sigma) != list(range(braiding.size)):
            raise ValueError("sigma is not a permutation of the letters")
        if check and not self.preserves_braiding():
            raise ValueError(f"operator {label!r} does not preserve the braiding")

    def preserves_braiding(self):
        b, F, s, lam = self.braiding, self.braiding.F, self.sigma, self.lam
        for x in range(b.size):
            for y in range(b.size):
                xy = b.tri[x][y]
                if s[xy] != b.tri[s[x]][s[y]]:
                    return False
                # (Q(x)Q) c = c (Q(x)Q)
                if F.mul(lam[y], b.q[s[x]][s[y]]) != F.mul(b.q[x][y], lam[xy]):
                    return False
        return True

    def compose(self, other):
        """self after other."""
        F = self.braiding.F
        sigma = [self.sigma[other.sigma[x]] for x in range(len(self.sigma))]
        lam = [F.mul(other.lam[x], self.lam[other.sigma[x]]) for x in range(len(self.sigma))]
        return LetterOperator(self.braiding, sigma, lam, f"{self.label}*{other.label}", check=False)

    def inverse(self):
        F = self.braiding.F
        n = len(self.sigma)
        sigma = [0] * n
        lam = [None] * n
        for x in range(n):
            y = self.sigma[x]
            sigma[y] = x
            lam[y] = F.inv(self.lam[x])
        return LetterOperator(self.braiding, sigma, lam, f"{self.label}^-1", check=False)

    def __eq__(self, o):
        return self.sigma == o.sigma and self.lam == o.lam

    def lam_scalars(self):
        return [Scalar(self.braiding.F, v) for v in self.lam]

    def __repr__(self):
        F = self.braiding.F
        return (f"LetterOperator({self.label}: sigma={self.sigma}, "
                f"lam=[{', '.join(F.pretty(v) for v in self.lam)}])")


def identity_operator(braiding):
    F = braiding.F
    return LetterOperator(braiding, range(braiding.size), [F.one] * braiding.size, "e")


def group_action_operator(real, braiding, t, label=None):
    n = braiding.size
    sigma, lam = [0] * n, [None] * n
    for y in range(n):
        sigma[y], lam[y] = _act(real, t, y)
    return LetterOperator(braiding, sigma, lam, label or real.group.label(t))


def g_x_operator(braiding, x):
    """Action of g_x: sigma = x|>-, lam(y) = q[x][y]."""
    return LetterOperator(braiding, braiding.tri[x], braiding.q[x], f"g_{braiding.names[x]}")
