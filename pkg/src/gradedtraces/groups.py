"""Finite permutation groups with full multiplication tables, and the catalog.

Convention: permutations are tuples of images on points 0..n-1 and
products compose right to left, ``(p*q)(x) = p(q(x))``.
"""
import re
from collections import deque
from dataclasses import dataclass, field as dc_field

MAX_ORDER = 20000


def compose(p, q):
    return tuple(p[i] for i in q)


def perm_inverse(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def cycles_to_perm(text, degree):
    """'(1 2)(3 4 5)' with 1-based points -> image tuple."""
    img = list(range(degree))
    for cyc in re.findall(r"\(([^()]*)\)", text):
        pts = [int(t) - 1 for t in cyc.replace(",", " ").split()]
        # right-to-left product of cycles: apply later cycles first
        step = list(range(degree))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            step[a] = b
        img = [img[step[i]] for i in range(degree)]
    return tuple(img)


def perm_to_cycles(p):
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = p[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


class FiniteGroup:
    """Group closed from permutation generators; element 0 is the identity."""

    def __init__(self, gens, names=None, cap=MAX_ORDER, name=None):
        gens = [tuple(g) for g in gens]
        if not gens:
            raise ValueError("need at least one generator")
        deg = len(gens[0])
        if any(len(g) != deg for g in gens):
            raise ValueError("generators act on different point sets")
        ident = tuple(range(deg))
        self.name = name
        self.degree = deg
        self.gen_names = list(names) if names else [f"g{i + 1}" for i in range(len(gens))]
        elems, index, words = [ident], {ident: 0}, [()]
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for k, g in enumerate(gens):
                h = compose(elems[i], g)
                if h not in index:
                    if len(elems) >= cap:
                        raise ValueError(f"group order exceeds cap {cap}")
                    index[h] = len(elems)
                    elems.append(h)
                    words.append(words[i] + (k,))
                    queue.append(index[h])
        self.perms = elems
        self.index = index
        self.words = words
        self.order = len(elems)
        self.gens = [index[g] for g in gens]
        self.mul = [[index[compose(a, b)] for b in elems] for a in elems]
        self.inv = [index[perm_inverse(a)] for a in elems]
        self.identity = 0
        self.labels = {}
        self.cycle_labels = False

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def m(self, *xs):
        out = 0
        for x in xs:
            out = self.mul[out][x]
        return out

    def conj(self, t, h):
        """t h t^-1."""
        return self.mul[self.mul[t][h]][self.inv[t]]

    def power(self, g, k):
        if k < 0:
            g, k = self.inv[g], -k
        out = 0
        for _ in range(k):
            out = self.mul[out][g]
        return out

    def element_order(self, g):
        k, h = 1, g
        while h != 0:
            h = self.mul[h][g]
            k += 1
        return k

    def conjugacy_class(self, g):
        return sorted({self.conj(t, g) for t in range(self.order)})

    def centralizer(self, g):
        return [h for h in range(self.order) if self.mul[g][h] == self.mul[h][g]]

    def classes(self):
        seen, out = set(), []
        for g in range(self.order):
            if g not in seen:
                cl = self.conjugacy_class(g)
                seen.update(cl)
                out.append(cl)
        return out

    def closure(self, elems):
        """Subgroup generated by elems, sorted."""
        sub = {0}
        frontier = [0]
        gens = list(elems)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mul[a][g]
                    if b not in sub:
                        sub.add(b)
                        nxt.append(b)
            frontier = nxt
        return sorted(sub)

    def word(self, text):
        return parse_word(self, text)

    def label(self, g):
        if g in self.labels:
            return self.labels[g]
        if self.cycle_labels:
            return perm_to_cycles(self.perms[g]) if g else "e"
        return _word_label(self, self.words[g])

    def check_table(self):
        n = self.order
        for a in range(n):
            assert self.mul[0][a] == a == self.mul[a][0]
            assert self.mul[a][self.inv[a]] == 0
        for a in range(n):
            pa = self.perms[a]
            for b in range(n):
                assert self.perms[self.mul[a][b]] == compose(pa, self.perms[b])
        return True


def _word_label(G, word):
    if not word:
        return "e"
    parts, k = [], 0
    while k < len(word):
        j = k
        while j < len(word) and word[j] == word[k]:
            j += 1
        name = G.gen_names[word[k]]
        parts.append(name if j - k == 1 else f"{name}^{j - k}")
        k = j
    return "*".join(parts)


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(\^-?\d+)|(\*)|([A-Za-z_][A-Za-z_0-9]*)|(\d+))")


def parse_word(G, text):
    """Parse 'a^3*b', '(a*b)^2', cycle notation '(1 2)(3 4)', 'e'."""
    text = text.strip()
    if re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\))+|\(\s*\)", text):
        p = cycles_to_perm(text, G.degree)
        if p not in G.index:
            raise ValueError(f"{text} is not in the group")
        return G.index[p]
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad group word {text!r} at {pos}")
        pos = m.end()
        toks.append(m.groups())
    names = {n: G.gens[i] for i, n in enumerate(G.gen_names)}

    def factor(i):
        lp, rp, ex, star, name, num = toks[i]
        if lp:
            # cycle notation inside a larger word
            j = i + 1
            nums = []
            while j < len(toks) and toks[j][5]:
                nums.append(toks[j][5])
                j += 1
            if nums and j < len(toks) and toks[j][1]:
                val = G.index[cycles_to_perm("(" + " ".join(nums) + ")", G.degree)]
                i = j + 1
            else:
                val, i = seq(i + 1)
                if i >= len(toks) or not toks[i][1]:
                    raise ValueError(f"unbalanced parentheses in {text!r}")
                i += 1
        elif name:
            if name in names:
                val = names[name]
            elif name in ("e", "id", "1"):
                val = 0
            else:
                raise ValueError(f"unknown generator {name!r}")
            i += 1
        elif num == "1":
            val, i = 0, i + 1
        else:
            raise ValueError(f"bad group word {text!r}")
        while i < len(toks) and toks[i][2]:
            val = G.power(val, int(toks[i][2][1:]))
            i += 1
        return val, i

    def seq(i):
        val = 0
        while i < len(toks) and not toks[i][1]:
            if toks[i][3]:
                i += 1
                continue
            f, i = factor(i)
            val = G.mul[val][f]
        return val, i

    val, i = seq(0)
    if i != len(toks):
        raise ValueError(f"unbalanced parentheses in {text!r}")
    return val


def group_from_generators(perms, names=None, cap=MAX_ORDER):
    return FiniteGroup(perms, names=names, cap=cap)


def class_and_centralizer(G, g):
    return G.conjugacy_class(g), G.centralizer(g)


@dataclass
class AbelianDecomposition:
    """pi: G -> Z_{n_1} + ... + Z_{n_k}, with canonical sections f_j."""
    group: FiniteGroup
    orders: tuple
    pi: list            # element -> tuple of coordinates
    generators: tuple = ()   # group elements mapping to the unit vectors
    kernel: list = dc_field(default_factory=list)

    def f(self, a):
        """f(a) = sum of the canonical lifts 0..n_j - 1."""
        return sum(a)

    def degree(self, g):
        return self.f(self.pi[g])

    @property
    def size(self):
        out = 1
        for n in self.orders:
            out *= n
        return out

    def check(self):
        G = self.group
        for a in range(G.order):
            for b in range(G.order):
                pa, pb, pab = self.pi[a], self.pi[b], self.pi[G.mul[a][b]]
                assert pab == tuple((x + y) % n for x, y, n in zip(pa, pb, self.orders))
        assert len(set(self.pi)) == self.size
        return True


def commutator_subgroup(G):
    comms = {G.m(a, b, G.inv[a], G.inv[b]) for a in range(G.order) for b in range(G.order)}
    return G.closure(sorted(comms))


def abelianization(G):
    K = set(commutator_subgroup(G))
    # cosets of K, labelled by their first element
    coset_of = {}
    reps = []
    for g in range(G.order):
        if g in coset_of:
            continue
        r = len(reps)
        reps.append(g)
        for k in K:
            coset_of[G.mul[g][k]] = r
    n = len(reps)

    def qmul(a, b):
        return coset_of[G.mul[reps[a]][reps[b]]]

    def qorder(a):
        k, h = 1, a
        while h != coset_of[0]:
            h = qmul(h, a)
            k += 1
        return k

    def qspan(gens):
        sub = {coset_of[0]}
        changed = True
        while changed:
            changed = False
            for s in list(sub):
                for g in gens:
                    h = qmul(s, g)
                    if h not in sub:
                        sub.add(h)
                        changed = True
        return sub

    def search(chosen, span):
        if len(span) == n:
            return chosen
        cands = []
        for a in range(n):
            cyc = qspan([a])
            if len(cyc & span) == 1:
                cands.append((-len(cyc), a))
        cands.sort()
        best = cands[0][0] if cands else 0
        for negord, a in cands:
            if negord != best:
                break
            new = qspan(chosen + [a])
            if len(new) == len(span) * -negord:
                got = search(chosen + [a], new)
                if got is not None:
                    return got
        return None

    basis = search([], {coset_of[0]}) if n > 1 else []
    orders = tuple(qorder(a) for a in basis)
    # coordinates of every coset
    coords = {coset_of[0]: tuple(0 for _ in basis)}
    frontier = [coset_of[0]]
    while frontier:
        nxt = []
        for c in frontier:
            for j, a in enumerate(basis):
                h = qmul(c, a)
                if h not in coords:
                    v = list(coords[c])
                    v[j] = (v[j] + 1) % orders[j]
                    coords[h] = tuple(v)
                    nxt.append(h)
        frontier = nxt
    pi = [coords[coset_of[g]] for g in range(G.order)]
    return AbelianDecomposition(G, orders, pi, tuple(reps[a] for a in basis), sorted(K))


def decomposition_from_images(G, orders, images):
    """Decomposition given the images of the group generators in Z_{n_1}+..."""
    orders = tuple(orders)
    pi = [None] * G.order
    pi[0] = tuple(0 for _ in orders)
    for g in range(1, G.order):
        v = [0] * len(orders)
        for k in G.words[g]:
            v = [(x + y) % n for x, y, n in zip(v, images[k], orders)]
        pi[g] = tuple(v)
    dec = AbelianDecomposition(G, orders, pi)
    dec.check()
    return dec


# -- catalog -------------------------------------------------------------

@dataclass
class CatalogEntry:
    name: str
    degree: int
    generators: dict          # name -> cycle notation
    relations: list           # "lhs = rhs" words
    class_reps: list          # class representatives, as words
    order: int = 0
    cycle_labels: bool = False


CATALOG = {
    "S3": CatalogEntry("S3", 3, {"s": "(1 2)", "r": "(1 2 3)"},
                       ["s^2 = e", "r^3 = e", "(s*r)^2 = e"],
                       ["e", "(1 2)", "(1 2 3)"], 6, True),
    "S4": CatalogEntry("S4", 4, {"s": "(1 2)", "r": "(1 2 3 4)"},
                       ["s^2 = e", "r^4 = e", "(s*r)^3 = e"],
                       ["e", "(1 2)", "(1 2)(3 4)", "(1 2 3)", "(1 2 3 4)"], 24, True),
    "A4": CatalogEntry("A4", 4, {"u": "(1 2 3)", "v": "(2 3 4)"},
                       ["u^3 = e", "v^3 = e", "(u*v)^2 = e"],
                       ["e", "(1 2 3)", "(1 2)(3 4)", "(1 3 2)"], 12, True),
    "D4": CatalogEntry("D4", 4, {"a": "(1 2 3 4)", "b": "(2 4)"},
                       ["a^4 = e", "b^2 = e", "a*b = b*a^3"],
                       ["e", "a", "a^2", "b", "a*b"], 8),
    "Z3xS3": CatalogEntry("Z3xS3", 6, {"g1": "(1 2)(4 5 6)", "g2": "(2 3)(4 5 6)"},
                          ["g1^6 = e", "g2^6 = e", "(g1*g2)^3 = e", "g1^2*g2^-2 = e"],
                          ["e", "g1", "g1^2", "g1^3", "g1^4", "g1^5",
                           "g1*g2", "g1^3*g2", "g1^5*g2"], 18),
    "A4xZ2": CatalogEntry("A4xZ2", 6, {"g1": "(1 2 3)(5 6)", "g2": "(1 4 2)(5 6)"},
                          ["g1^6 = e", "g2^6 = e", "g1^3*g2*g1^-3*g2^-1 = e",
                           "(g1*g2)^3 = e", "(g1*g2^2)^2 = e"],
                          ["e", "g1", "g1^2", "g1^3", "g1^4", "g1^5",
                           "g1^4*g2^2", "g1^2*g2"], 24),
    "SL(2,3)": CatalogEntry("SL(2,3)", 8, {"a": "(1 4 3 2 8 6)(5 7)",
                                           "b": "(1 7 6 2 5 3)(4 8)"},
                            ["a^3 = b^3", "b^3 = (a*b)^2"],
                            ["e", "a", "a^2", "a^3", "a^4", "a^5", "a*b"], 24),
    "G20": CatalogEntry("G20", 5, {"a": "(2 3 4 5)", "b": "(1 2 4 3)"},
                        ["a^4 = e", "b^4 = e", "a*b^3*a^2*b^2 = e"],
                        ["e", "a", "a^2", "a^3", "a^3*b"], 20),
}


def catalog_group(name):
    entry = CATALOG[name]
    names = list(entry.generators)
    perms = [cycles_to_perm(entry.generators[k], entry.degree) for k in names]
    G = FiniteGroup(perms, names=names, name=name)
    G.cycle_labels = entry.cycle_labels
    for rel in entry.relations:
        lhs, rhs = rel.split("=")
        if parse_word(G, lhs) != parse_word(G, rhs):
            raise AssertionError(f"{name}: relation {rel} fails")
    if entry.order and G.order != entry.order:
        raise AssertionError(f"{name}: order {G.order}, expected {entry.order}")
    for w in entry.class_reps:
        G.labels.setdefault(parse_word(G, w), w)
    return G


def class_representatives(G):
    """Catalog representatives when known, else first element of each class."""
    if G.name in CATALOG:
        reps = [parse_word(G, w) for w in CATALOG[G.name].class_reps]
        return reps
    return [cl[0] for cl in G.classes()]
