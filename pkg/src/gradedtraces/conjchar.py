"""Graded characters of G acting on its group algebra by conjugation.

The grading is f o pi for an epimorphism pi: G -> Z_{n_1} + ... + Z_{n_k}
and f the sum of the canonical lifts 0..n_j - 1.
"""
from dataclasses import dataclass

from .groups import FiniteGroup, decomposition_from_images, abelianization
from .qfactor import qsymbol
from .scalars import TracePoly, field

QQ = field(0, 1)


def conj_graded_character(G, dec, g, F=QQ):
    """sum over the centralizer of g of t^{deg h}."""
    coeffs = {}
    for h in G.centralizer(g):
        d = dec.degree(h)
        coeffs[d] = coeffs.get(d, 0) + 1
    return _poly(F, coeffs)


def _poly(F, counts):
    top = max(counts) if counts else 0
    return TracePoly(F, [F.from_int(counts.get(k, 0)) for k in range(top + 1)])


@dataclass
class ToyPrediction:
    multiplier: int             # #(Z(g) cap ker pi)
    symbols: list               # (n_j / m_j, m_j) per cyclic summand
    m: tuple

    def expand(self, F=QQ):
        out = TracePoly(F, [F.from_int(self.multiplier)])
        for N, k in self.symbols:
            out = out * qsymbol(F, N, F.one, k)
        return out

    def pretty(self):
        parts = [f"({N})_{{t^{k}}}" if k > 1 else f"({N})_{{t}}"
                 for N, k in self.symbols if N > 1]
        head = "" if self.multiplier == 1 else str(self.multiplier)
        return " ".join([head] + parts).strip() or "1"


def toy_prediction(G, dec, g):
    Z = G.centralizer(g)
    zero = tuple(0 for _ in dec.orders)
    mult = sum(1 for h in Z if dec.pi[h] == zero)
    ms, syms = [], []
    for j, n in enumerate(dec.orders):
        image = {dec.pi[h][j] for h in Z}
        # the image is the cyclic subgroup m Z_n with m = n / #image
        m = n // len(image)
        assert image == {m * i for i in range(len(image))}, "image is not a subgroup"
        ms.append(m)
        syms.append((n // m, m))
    return ToyPrediction(mult, syms, tuple(ms))


def fiber_sizes(G, dec, g):
    """#(Z(g) cap pi^-1(a)) for every a in the image."""
    out = {}
    for h in G.centralizer(g):
        a = dec.pi[h]
        out[a] = out.get(a, 0) + 1
    return out


def check_lemma(G, dec, g):
    """Nonempty fibers all have size #Z_e and the image is a subgroup."""
    sizes = fiber_sizes(G, dec, g)
    ze = sizes[tuple(0 for _ in dec.orders)]
    if any(v != ze for v in sizes.values()):
        return False
    img = set(sizes)
    for a in img:
        for b in img:
            if tuple((x + y) % n for x, y, n in zip(a, b, dec.orders)) not in img:
                return False
    return True


@dataclass
class ToyLine:
    label: str
    character: TracePoly
    prediction: ToyPrediction

    @property
    def holds(self):
        return self.prediction.expand(self.character.field) == self.character


def toy_table(G, dec, reps=None):
    if reps is None:
        reps = [cl[0] for cl in G.classes()]
    return [ToyLine(G.label(g), conj_graded_character(G, dec, g), toy_prediction(G, dec, g))
            for g in reps]


def parse_decomposition(G, text):
    """'2,2 | a = 1,0 | b = 0,1': orders, then the image of every generator."""
    parts = [p.strip() for p in text.split("|")]
    orders = tuple(int(v) for v in parts[0].split(","))
    images = {}
    for p in parts[1:]:
        name, vals = (s.strip() for s in p.split("="))
        images[name] = tuple(int(v) % n for v, n in zip(vals.split(","), orders))
    if set(images) != set(G.gen_names):
        raise ValueError("need an image for every generator")
    return decomposition_from_images(G, orders, [images[n] for n in G.gen_names])


def default_decomposition(G):
    return abelianization(G)


def _primary_orders(orders):
    out = []
    for n in orders:
        p = 2
        while n > 1:
            if n % p == 0:
                q = 1
                while n % p == 0:
                    n //= p
                    q *= p
                out.append(q)
            p += 1
    return tuple(sorted(out))


def decomposition_shapes(G):
    """Invariant-factor and primary cyclic shapes of the abelianization."""
    inv = abelianization(G).orders
    shapes = [inv]
    prim = _primary_orders(inv)
    if prim != inv:
        shapes.append(prim)
    return shapes


def all_decompositions(G, orders):
    """Every epimorphism G -> Z_{n_1} + ... + Z_{n_k}, by generator images."""
    from itertools import product
    vectors = list(product(*[range(n) for n in orders]))
    out = []
    for images in product(vectors, repeat=len(G.gens)):
        try:
            out.append(decomposition_from_images(G, orders, list(images)))
        except AssertionError:
            continue
    return out


# -- one refinement step along a normal series -------------------------------

def refined_characters(G, dec1, sub_images, sub_orders):
    """One step of the iterated grading: G2 = ker(pi_1) graded by its own
    epimorphism (images of the kernel generators), cosets by a transversal.

    ``dec1`` must have a single cyclic summand.  Returns (G2, labels, polys)
    with the graded character of every g in G2 on KG.
    """
    if len(dec1.orders) != 1:
        raise ValueError("first step needs a cyclic quotient")
    zero = (0,)
    kernel = [h for h in range(G.order) if dec1.pi[h] == zero]
    gens = [h for h in _small_generating_set(G, kernel)]
    G2 = FiniteGroup([G.perms[h] for h in gens], names=[G.label(h) for h in gens])
    to_big = [G.index[p] for p in G2.perms]
    if len(sub_images) != len(gens):
        raise ValueError(f"need images for the {len(gens)} kernel generators "
                         f"{[G.label(h) for h in gens]}")
    dec2 = decomposition_from_images(G2, sub_orders, sub_images)
    in_k = {b: i for i, b in enumerate(to_big)}
    # transversal: least element of each right coset G2 r
    rep_of = {}
    for x in range(G.order):
        if x in rep_of:
            continue
        for k in kernel:
            rep_of.setdefault(G.mul[k][x], x)

    def degree(x):
        r = rep_of[x]
        k = G.mul[x][G.inv[r]]
        return dec2.degree(in_k[k]) + dec1.degree(r)

    polys = []
    for g2 in range(G2.order):
        g = to_big[g2]
        counts = {}
        for x in G.centralizer(g):
            d = degree(x)
            counts[d] = counts.get(d, 0) + 1
        polys.append(_poly(QQ, counts))
    labels = [G.label(to_big[i]) for i in range(G2.order)]
    return G2, labels, polys


def _small_generating_set(G, sub):
    target = set(sub)
    chosen = []
    span = {0}
    for h in sorted(sub, key=lambda h: (-G.element_order(h), h)):
        if h in span:
            continue
        chosen.append(h)
        span = set(G.closure(chosen))
        if span == target:
            break
    return chosen
