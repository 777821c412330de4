"""q-symbols (N)_{lam t^k} and greedy factorization of graded traces."""
from dataclasses import dataclass, field as dc_field

from .scalars import Scalar, TracePoly

DEFAULT_MAX_N = 5


def qsymbol(F, N, lam, k):
    """sum_{j<N} lam^j t^{jk}."""
    if N < 1 or k < 1:
        raise ValueError("need N >= 1 and k >= 1")
    lam = F.raw(lam)
    if lam == F.zero:
        raise ValueError("lam must be nonzero")
    coeffs = [F.zero] * ((N - 1) * k + 1)
    v = F.one
    for j in range(N):
        coeffs[j * k] = v
        v = F.mul(v, lam)
    return TracePoly(F, coeffs)


@dataclass
class QSymbolFactorization:
    field: object
    c: object                     # raw leading scalar
    symbols: list = dc_field(default_factory=list)   # (N, raw lam, k), sorted
    remainder: TracePoly = None

    def expand(self):
        F = self.field
        out = TracePoly(F, [self.c])
        for N, lam, k in self.symbols:
            out = out * qsymbol(F, N, lam, k)
        return out * self.remainder

    @property
    def complete(self):
        return self.remainder == TracePoly.one(self.field)

    def counts(self):
        out = {}
        for s in self.symbols:
            out[s] = out.get(s, 0) + 1
        return out

    def pretty(self):
        F = self.field
        parts = []
        for (N, lam, k), e in sorted(self.counts().items(), key=lambda t: _sort_key(F, t[0])):
            s = f"({N})_{{{_lam_text(F, lam, k)}}}"
            if e > 1:
                s += f"^{e}"
            parts.append(s)
        head = "" if self.c == F.one else F.pretty(self.c)
        if head == "-1":
            head = "-"
        body = " ".join(parts)
        if not self.complete:
            body = (body + " " if body else "") + f"[{self.remainder.pretty()}]"
        if not body:
            return head or "1"
        if head and head != "-":
            return head + " " + body
        return head + body

    def machine(self):
        F = self.field
        syms = " ".join(f"({N},{F.pretty(lam)},{k})" for N, lam, k in self.symbols)
        return f"{F.pretty(self.c)}; {syms}; {self.remainder.pretty()}"


def _lam_text(F, lam, k):
    tk = "t" if k == 1 else f"t^{k}"
    s = F.pretty(lam)
    if s == "1":
        return tk
    if s == "-1":
        return "-" + tk
    if "+" in s[1:] or "-" in s[1:]:
        s = f"({s})"
    return f"{s} {tk}"


def _dlog(F, lam):
    idx = F.root_index(lam)
    if idx is None:
        return (10 ** 6, F.to_text(lam))
    sign, j = idx
    return (2 * j + (0 if sign > 0 else 1), "")


def _sort_key(F, sym):
    N, lam, k = sym
    return (k, N, _dlog(F, lam))


def lam_candidates(F, order_bound=None):
    """+-zeta^j in discrete-log order, optionally only those of order <= bound."""
    out = F.roots_of_unity()
    if order_bound:
        out = [v for v in out if (F.mult_order(v) or 0) <= order_bound]
    return out


def factor(p, max_N=DEFAULT_MAX_N, max_k=None, order_bound=None):
    """Greedy q-symbol extraction.

    k runs from 1 up to max_k, N over the primes from max_N down to 2 and
    lam in discrete-log order; each symbol is divided out while exact.
    Composite N are skipped because (ab)_x = (a)_x (b)_{x^a}, so nothing is
    lost, and taking them would swallow (2)_t(2)_{t^2} into (4)_t.
    """
    F = p.field
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    lams = lam_candidates(F, order_bound)
    rest = p
    symbols = []
    if max_k is None:
        max_k = max(p.degree, 1)
    for k in range(1, max_k + 1):
        for N in _primes_down(max_N):
            for lam in lams:
                sym = None
                while (N - 1) * k <= rest.degree:
                    sym = sym or qsymbol(F, N, lam, k)
                    q, ok = rest.exact_div(sym)
                    if not ok:
                        break
                    rest = q
                    symbols.append((N, lam, k))
    c = rest[0] if rest.degree == 0 else F.one
    if rest.degree == 0:
        rest = TracePoly.one(F)
    elif rest[0] != F.zero:
        # normalise the remainder to constant term 1
        c = rest[0]
        rest = rest * F.inv(c)
    symbols.sort(key=lambda s: _sort_key(F, s))
    fac = QSymbolFactorization(F, c, symbols, rest)
    assert fac.expand() == p, "factorization does not expand back"
    return fac


def _primes_down(n):
    return [p for p in range(n, 1, -1) if all(p % d for d in range(2, p))]


def parse_factorization(F, text):
    """Parse products in the printed notation, such as ``2 (2)_{-t}^2 (3)_{zeta^2 t^3}``."""
    import re
    from .config import parse_scalar
    out = TracePoly.one(F)
    pos = 0
    text = text.strip()
    head = re.match(r"\s*([-+]?\d+)\s*(?=\(|$)", text)
    if head:
        out = out * F.coerce(int(head.group(1)))
        pos = head.end()
    pat = re.compile(r"\s*\((\d+)\)_\{([^}]*)\}(?:\^(\d+))?")
    while pos < len(text):
        m = pat.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse factorization at {text[pos:]!r}")
        N, inner, e = int(m.group(1)), m.group(2).strip(), int(m.group(3) or 1)
        mm = re.fullmatch(r"(.*?)\s*t(?:\^(\d+))?", inner)
        if not mm:
            raise ValueError(f"bad q-symbol argument {inner!r}")
        lam_text, k = mm.group(1).strip(), int(mm.group(2) or 1)
        if lam_text in ("", "+"):
            lam = F.one
        elif lam_text == "-":
            lam = F.neg(F.one)
        else:
            lam = parse_scalar(F, lam_text)
        out = out * (qsymbol(F, N, lam, k) ** e)
        pos = m.end()
    return out


def scalar_of(F, raw):
    return Scalar(F, raw)
