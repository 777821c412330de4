"""Layer-by-layer construction of the Nichols algebra B(M).

An element of degree n >= 1 is zero in B(M) iff all derivations kill it,
so each layer is the image of the candidates e_x * w_j (w_j a basis word
of the previous layer) under the stacked derivation map.  We use the
derivations d_y = (e_y^* (x) id) Delta, which strip letters on the left:

    d_y(e_x v) = delta_{x,y} v + q_{x,z} e_x d_z(v),   x |> z = y.

Layers split into blocks by (letter count per rack orbit, group degree);
the derivations and left multiplications respect this grading, so
elimination runs block by block.
"""
import hashlib
import logging
import os
import tempfile
from collections import OrderedDict

from .groups import compose
from .linalg import Echelon, axpy
from .scalars import TracePoly

log = logging.getLogger(__name__)

CACHE_VERSION = 1
DEFAULT_CAP = 24
SYMMETRIZER_CAP = 20736


class Layer:
    def __init__(self, degree):
        self.degree = degree
        self.dim = 0
        self.words = []
        self.keys = []
        self.origin = []      # basis index -> (x, j)
        self.left = []        # left[x][j] -> {i: coef}, for j in the previous layer
        self.deriv = []       # deriv[i] -> {y * prev_dim + k: coef}

    def __repr__(self):
        return f"Layer(degree={self.degree}, dim={self.dim})"


class NicholsAlgebra:
    def __init__(self, braiding, layers, complete, cap):
        self.braiding = braiding
        self.F = braiding.F
        self.layers = layers
        self.complete = complete
        self.cap = cap

    @property
    def dims(self):
        return [L.dim for L in self.layers]

    @property
    def top_degree(self):
        return len(self.layers) - 1

    @property
    def dimension(self):
        return sum(self.dims)

    @property
    def hilbert(self):
        F = self.F
        return TracePoly(F, [F.from_int(d) for d in self.dims])

    # -- products ----------------------------------------------------------
    def left_mul(self, x, vec, n):
        """e_x * vec, where vec lies in layer n; result in layer n + 1."""
        F = self.F
        if n + 1 >= len(self.layers):
            raise ValueError(f"degree {n + 1} beyond computed layers")
        rows = self.layers[n + 1].left[x]
        out = {}
        for k, c in vec.items():
            axpy(F, out, c, rows[k])
        return out

    def word_times(self, word, vec, n):
        for x in reversed(word):
            vec = self.left_mul(x, vec, n)
            n += 1
            if not vec:
                break
        return vec

    def reduce(self, word):
        """Coordinates of the image of ``word`` in layer len(word)."""
        n = len(word)
        if n >= len(self.layers):
            raise ValueError(f"degree {n} beyond computed layers")
        vec = {0: self.F.one}
        for k, x in enumerate(reversed(word)):
            vec = self.left_mul(x, vec, k)
            if not vec:
                return {}
        return vec

    def multiply(self, u, nu, v, nv):
        """Product of u (layer nu) and v (layer nv)."""
        F = self.F
        if nu + nv >= len(self.layers):
            if self.complete:
                return {}
            raise ValueError("product degree beyond computed layers")
        out = {}
        words = self.layers[nu].words
        for i, c in u.items():
            axpy(F, out, c, self.word_times(words[i], v, nv))
        return out

    def derivation(self, y, vec, n):
        """d_y applied to vec in layer n (n >= 1)."""
        F = self.F
        D = self.layers[n - 1].dim
        lo, hi = y * D, (y + 1) * D
        out = {}
        deriv = self.layers[n].deriv
        for i, c in vec.items():
            for col, d in deriv[i].items():
                if lo <= col < hi:
                    k = col - lo
                    v = F.mul(c, d)
                    w = out.get(k)
                    nv = v if w is None else F.add(w, v)
                    if nv == F.zero:
                        out.pop(k, None)
                    else:
                        out[k] = nv
        return out

    def check_recursion(self, n):
        """Every candidate's derivations equal the combination of its
        coordinates applied to basis derivations (exact)."""
        L, F = self.layers[n], self.F
        P = self.layers[n - 1]
        for x in range(self.braiding.size):
            for j in range(P.dim):
                sig = _signature(self, n, x, j)
                comb = {}
                for i, c in L.left[x][j].items():
                    axpy(F, comb, c, L.deriv[i])
                if comb != sig:
                    return False
        return True


def _key_step(br, x, key):
    counts, deg = key
    counts = list(counts)
    counts[br.orbit_of[x]] += 1
    if br.degrees is not None:
        deg = br.group.mul[br.degrees[x]][deg]
    elif deg is not None:
        deg = compose(tuple(br.tri[x]), deg)
    return (tuple(counts), deg)


def _initial_key(br):
    if br.degrees is not None:
        deg = 0
    elif br.is_diagonal:
        deg = None
    else:
        deg = tuple(range(br.size))
    return (tuple([0] * br.n_orbits), deg)


def _signature(N, n, x, j):
    """Stacked derivations of the candidate e_x * w_j (w_j in layer n-1)."""
    br, F = N.braiding, N.F
    P = N.layers[n - 1]
    D1 = P.dim
    sig = {x * D1 + j: F.one}
    if n >= 2:
        D2 = N.layers[n - 2].dim
        tri_x, q_x = br.tri[x], br.q[x]
        left_x = P.left[x]
        add, mul, zero = F.add, F.mul, F.zero
        for col, c in P.deriv[j].items():
            z, k = divmod(col, D2)
            base = tri_x[z] * D1
            coef = mul(q_x[z], c)
            for i, d in left_x[k].items():
                key = base + i
                v = mul(coef, d)
                w = sig.get(key)
                if w is None:
                    sig[key] = v
                else:
                    nv = add(w, v)
                    if nv == zero:
                        del sig[key]
                    else:
                        sig[key] = nv
    return sig


def _build_layer(N, n):
    br, F = N.braiding, N.F
    P = N.layers[n - 1]
    blocks = OrderedDict()
    for x in range(br.size):
        for j in range(P.dim):
            key = _key_step(br, x, P.keys[j])
            blocks.setdefault(key, []).append((x, j))
    accepted = []                 # (x, j, key, signature)
    deps = []                     # (x, j, key, {local id: coef})
    local_ids = {}
    for key, cands in blocks.items():
        E = Echelon(F)
        ids = []
        for x, j in cands:
            sig = _signature(N, n, x, j)
            kind, res = E.insert(sig)
            if kind == "new":
                ids.append((x, j))
                accepted.append((x, j, key, sig))
            else:
                deps.append((x, j, key, res))
        local_ids[key] = ids
    accepted.sort(key=lambda t: (t[0], t[1]))
    L = Layer(n)
    gindex = {}
    for gi, (x, j, key, sig) in enumerate(accepted):
        gindex[(x, j)] = gi
        L.origin.append((x, j))
        L.words.append((x,) + P.words[j])
        L.keys.append(key)
        L.deriv.append(sig)
    L.dim = len(accepted)
    L.left = [[None] * P.dim for _ in range(br.size)]
    for x, j, key, sig in accepted:
        L.left[x][j] = {gindex[(x, j)]: F.one}
    for x, j, key, res in deps:
        ids = local_ids[key]
        L.left[x][j] = {gindex[ids[k]]: c for k, c in res.items()}
    return L


def _layer0(br):
    L = Layer(0)
    L.dim = 1
    L.words = [()]
    L.keys = [_initial_key(br)]
    L.origin = [None]
    return L


def build(braiding, max_degree=DEFAULT_CAP, cache_dir=None, progress=None):
    """Build B(M) up to degree ``max_degree`` or the first zero layer."""
    if max_degree < 1:
        raise ValueError("cap must be >= 1")
    N = None
    path = cache_path(braiding, cache_dir) if cache_dir else None
    if path and os.path.exists(path):
        try:
            N = load_cache(braiding, path)
        except (CacheError, ValueError, StopIteration) as exc:
            log.warning("ignoring unreadable cache: %s", exc)
            N = None
        if N is not None:
            log.info("loaded %d layers from %s", len(N.layers), path)
            if N.complete or len(N.layers) - 1 >= max_degree:
                if not N.complete and len(N.layers) - 1 > max_degree:
                    N.layers = N.layers[:max_degree + 1]
                N.cap = max_degree
                return N
    if N is None:
        N = NicholsAlgebra(braiding, [_layer0(braiding)], False, max_degree)
    N.cap = max_degree
    while len(N.layers) <= max_degree:
        n = len(N.layers)
        L = _build_layer(N, n)
        if progress:
            progress(n, L.dim)
        log.info("degree %d: dim %d", n, L.dim)
        if L.dim == 0:
            N.complete = True
            break
        N.layers.append(L)
        if path:
            save_cache(N, path)
    if N.complete and path:
        save_cache(N, path)
    if not N.complete:
        log.warning("cap %d reached without a zero layer", max_degree)
    return N


def reduce(N, word):
    return N.reduce(word)


# -- cache ---------------------------------------------------------------

def content_hash(braiding):
    text = f"v{CACHE_VERSION}\n" + braiding.content_text()
    return hashlib.sha256(text.encode()).hexdigest()


def cache_path(braiding, cache_dir):
    return os.path.join(cache_dir, f"nichols-{content_hash(braiding)[:24]}.txt")


def _vec_text(F, vec):
    return " ".join(f"{k}:{F.to_text(v)}" for k, v in sorted(vec.items()))


def _vec_parse(F, text):
    out = {}
    for tok in text.split():
        k, v = tok.split(":", 1)
        out[int(k)] = F.from_text(v)
    return out


def save_cache(N, path):
    F, br = N.F, N.braiding
    d = os.path.dirname(path) or "."
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".txt")
    with os.fdopen(fd, "w") as f:
        f.write(f"gradedtraces-cache {CACHE_VERSION}\n")
        f.write(f"hash {content_hash(br)}\n")
        f.write(f"field {F.spec.characteristic} {F.spec.cyclotomic_order}\n")
        f.write(f"complete {int(N.complete)}\n")
        f.write(f"layers {len(N.layers)}\n")
        for L in N.layers[1:]:
            f.write(f"layer {L.degree} {L.dim}\n")
            for x, j in L.origin:
                f.write(f"o {x} {j}\n")
            for x in range(br.size):
                for j, row in enumerate(L.left[x]):
                    f.write(f"l {_vec_text(F, row)}\n")
            for row in L.deriv:
                f.write(f"d {_vec_text(F, row)}\n")
    os.replace(tmp, path)


class CacheError(Exception):
    pass


def load_cache(braiding, path):
    F, br = braiding.F, braiding
    with open(path) as f:
        lines = f.read().split("\n")
    it = iter(lines)
    head = next(it).split()
    if head[:1] != ["gradedtraces-cache"]:
        raise CacheError(f"{path}: not a cache file")
    if int(head[1]) != CACHE_VERSION:
        raise CacheError(f"{path}: cache version {head[1]}, expected {CACHE_VERSION}")
    h = next(it).split()[1]
    if h != content_hash(braiding):
        raise CacheError(f"{path}: braiding hash mismatch")
    next(it)
    complete = bool(int(next(it).split()[1]))
    nlayers = int(next(it).split()[1])
    layers = [_layer0(br)]
    for n in range(1, nlayers):
        tag, deg, dim = next(it).split()
        L = Layer(int(deg))
        L.dim = int(dim)
        P = layers[-1]
        for _ in range(L.dim):
            _, x, j = next(it).split()
            x, j = int(x), int(j)
            L.origin.append((x, j))
            L.words.append((x,) + P.words[j])
            L.keys.append(_key_step(br, x, P.keys[j]))
        L.left = []
        for x in range(br.size):
            L.left.append([_vec_parse(F, next(it)[2:]) for _ in range(P.dim)])
        L.deriv = [_vec_parse(F, next(it)[2:]) for _ in range(L.dim)]
        layers.append(L)
    return NicholsAlgebra(braiding, layers, complete, None)


# -- independent oracle: quantum symmetrizer --------------------------------

def symmetrizer_rank_oracle(braiding, n):
    """Rank of the quantum symmetrizer on the n-th tensor power.

    Uses S_n = (S_{n-1} (x) 1)(1 + c_{n-1} + c_{n-1}c_{n-2} + ...), block by
    block in the (orbit counts, ordered degree product) grading.
    """
    br, F = braiding, braiding.F
    m = br.size
    if m ** n > SYMMETRIZER_CAP:
        raise ValueError(f"|B|^n = {m ** n} exceeds {SYMMETRIZER_CAP}")
    if n == 0:
        return 1
    memo = {}

    def sym(word):
        if len(word) <= 1:
            return {word: F.one}
        if word in memo:
            return memo[word]
        out = {}
        k = len(word)
        for pos in range(k):
            # move the letter at pos to the end
            a = word[pos]
            coef = F.one
            rest = list(word[:pos])
            for b in word[pos + 1:]:
                coef = F.mul(coef, br.q[a][b])
                rest.append(br.tri[a][b])
            head = sym(tuple(rest))
            for w, c in head.items():
                key = w + (a,)
                v = F.mul(coef, c)
                old = out.get(key)
                nv = v if old is None else F.add(old, v)
                if nv == F.zero:
                    out.pop(key, None)
                else:
                    out[key] = nv
        memo[word] = out
        return out

    blocks = {}
    key0 = _initial_key(br)
    for idx in range(m ** n):
        word = []
        r = idx
        for _ in range(n):
            r, d = divmod(r, m)
            word.append(d)
        word = tuple(reversed(word))
        key = key0
        for x in reversed(word):
            key = _key_step(br, x, key)
        blocks.setdefault(key, []).append(word)
    total = 0
    for key, words in blocks.items():
        col = {w: i for i, w in enumerate(words)}
        E = Echelon(F, track=False)
        for w in words:
            row = {col[u]: c for u, c in sym(w).items()}
            if row:
                E.insert(row)
        total += E.rank
    return total
