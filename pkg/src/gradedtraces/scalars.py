"""Exact scalars: cyclotomic fields Q(zeta_n) and finite fields F_p(zeta_n).

Hot loops work on *raw* values and call the bound field operations
(``F.add``, ``F.mul``, ...) directly.  Raw values are

* ``mpq`` when the field is Q (n = 1 or 2),
* a tuple of ``mpq`` of length phi(n) for Q(zeta_n) otherwise,
* an ``int`` code in ``range(p**d)`` in characteristic p.

``Scalar`` and ``TracePoly`` wrap raw values for the public API.
"""
import operator
from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq, mpz


@dataclass(frozen=True)
class FieldSpec:
    characteristic: int
    cyclotomic_order: int = 1

    def __post_init__(self):
        p, n = self.characteristic, self.cyclotomic_order
        if n < 1:
            raise ValueError("cyclotomic order must be >= 1")
        if p < 0 or p == 1 or (p > 1 and not _is_prime(p)):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")
        if p and n % p == 0:
            raise ValueError(f"gcd(p, n) must be 1 (p={p}, n={n})")

    def __str__(self):
        return f"char={self.characteristic} n={self.cyclotomic_order}"


def _is_prime(p):
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def cyclotomic_poly(n):
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _int_poly_divexact(num, cyclotomic_poly(d))
    return num


def _int_poly_divexact(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    assert not any(a), "inexact division"
    return q


def _euler_phi(n):
    return sum(1 for k in range(1, n + 1) if _gcd(k, n) == 1)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


class Field:
    """Arithmetic for one FieldSpec.  Obtain instances through ``field()``."""

    def __init__(self, spec):
        self.spec = spec
        self.p = spec.characteristic
        self.n = spec.cyclotomic_order
        if self.p == 0:
            self._init_char0()
        else:
            self._init_charp()
        self.sub = lambda a, b: self.add(a, self.neg(b))
        if self.p == 0 and self.degree == 1:
            self.sub = operator.sub
        elif self.p == 2:
            self.sub = operator.xor

    # -- characteristic zero -------------------------------------------
    def _init_char0(self):
        n = self.n
        self.degree = 1 if n <= 2 else _euler_phi(n)
        if self.degree == 1:
            self.zero, self.one = mpq(0), mpq(1)
            self.zeta = mpq(1) if n == 1 else mpq(-1)
            self.add, self.neg, self.mul = operator.add, operator.neg, operator.mul
            self.inv = lambda a: 1 / a
            self.from_int = mpq
            return
        d = self.degree
        phi = cyclotomic_poly(n)
        # rows[k] = coefficients of x^k mod Phi_n, for k < 2d - 1
        rows = [tuple(mpq(int(i == k)) for i in range(d)) for k in range(d)]
        top = [mpq(-c) for c in phi[:d]]  # x^d = -(phi_0 + ... )
        for k in range(d, 2 * d - 1):
            prev = rows[-1]
            nxt = [mpq(0)] + list(prev[:-1])
            lead = prev[-1]
            if lead:
                nxt = [nxt[i] + lead * top[i] for i in range(d)]
            rows.append(tuple(nxt))
        self._rows = rows
        zero = tuple(mpq(0) for _ in range(d))
        self.zero = zero
        self.one = (mpq(1),) + zero[1:]
        self.zeta = (mpq(0), mpq(1)) + zero[2:]
        self.from_int = lambda k: (mpq(k),) + zero[1:]
        self.add = lambda a, b: tuple(x + y for x, y in zip(a, b))
        self.neg = lambda a: tuple(-x for x in a)
        if n == 3:
            def mul(a, b):
                a0, a1 = a
                b0, b1 = b
                t = a1 * b1
                return (a0 * b0 - t, a0 * b1 + a1 * b0 - t)
        elif n == 4:
            def mul(a, b):
                a0, a1 = a
                b0, b1 = b
                return (a0 * b0 - a1 * b1, a0 * b1 + a1 * b0)
        elif n == 6:
            def mul(a, b):
                a0, a1 = a
                b0, b1 = b
                t = a1 * b1
                return (a0 * b0 - t, a0 * b1 + a1 * b0 + t)
        else:
            def mul(a, b):
                prod = [mpq(0)] * (2 * d - 1)
                for i, x in enumerate(a):
                    if x:
                        for j, y in enumerate(b):
                            if y:
                                prod[i + j] += x * y
                out = list(prod[:d])
                for k in range(d, 2 * d - 1):
                    c = prod[k]
                    if c:
                        row = rows[k]
                        for i in range(d):
                            out[i] += c * row[i]
                return tuple(out)
        self.mul = mul
        self.inv = self._inv_char0

    def _inv_char0(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        d = self.degree
        # columns of the multiplication-by-a matrix are a*x^j
        cols = []
        xj = self.one
        for _ in range(d):
            cols.append(self.mul(a, xj))
            xj = self.mul(xj, self.zeta)
        m = [[cols[j][i] for j in range(d)] + [mpq(int(i == 0))] for i in range(d)]
        for c in range(d):
            piv = next(r for r in range(c, d) if m[r][c])
            m[c], m[piv] = m[piv], m[c]
            inv = 1 / m[c][c]
            m[c] = [v * inv for v in m[c]]
            for r in range(d):
                if r != c and m[r][c]:
                    f = m[r][c]
                    m[r] = [v - f * w for v, w in zip(m[r], m[c])]
        return tuple(m[i][d] for i in range(d))

    # -- characteristic p ----------------------------------------------
    def _init_charp(self):
        p, n = self.p, self.n
        d = 1
        while pow(p, d, n) != 1 % n:
            d += 1
        self.degree = d
        q = p ** d
        self.order = q
        self.modulus = _first_factor(p, n, d)
        self.zero, self.one = 0, 1
        self.from_int = lambda k: k % p
        if d == 1:
            self.add = lambda a, b: (a + b) % p
            self.neg = lambda a: (-a) % p
            if p == 2:
                self.add, self.neg = operator.xor, (lambda a: a)
        elif p == 2:
            self.add, self.neg = operator.xor, (lambda a: a)
        else:
            pw = [p ** i for i in range(d)]

            def add(a, b):
                out = 0
                for w in pw:
                    out += ((a // w % p + b // w % p) % p) * w
                return out

            def neg(a):
                return sum(((-(a // w % p)) % p) * w for w in pw)
            self.add, self.neg = add, neg
        # zeta = class of x
        zeta = p if d > 1 else _root_mod_p(p, n)
        self.zeta = zeta
        # log/exp tables
        gen = self._find_generator()
        exp = [0] * (q - 1)
        log = [0] * q
        v = 1
        for k in range(q - 1):
            exp[k] = v
            log[v] = k
            v = self._slow_mul(v, gen)
        self._exp, self._log, self._qm1 = exp, log, q - 1
        if p == 2 and d == 1:
            self.mul = operator.and_
            self.inv = self._inv_f2
            return

        def mul(a, b):
            if a == 0 or b == 0:
                return 0
            return exp[(log[a] + log[b]) % (q - 1)]
        self.mul = mul
        self.inv = self._inv_charp

    def _inv_f2(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1

    def _inv_charp(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % self._qm1]

    def _digits(self, a):
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _code(self, digits):
        v = 0
        for c in reversed(digits):
            v = v * self.p + c % self.p
        return v

    def _slow_mul(self, a, b):
        p, d, f = self.p, self.degree, self.modulus
        if d == 1:
            return a * b % p
        x, y = self._digits(a), self._digits(b)
        prod = [0] * (2 * d - 1)
        for i, u in enumerate(x):
            for j, w in enumerate(y):
                prod[i + j] = (prod[i + j] + u * w) % p
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                for i in range(d + 1):
                    prod[k - d + i] = (prod[k - d + i] - c * f[i]) % p
        return self._code(prod[:d])

    def _find_generator(self):
        q = self.p ** self.degree
        m = q - 1
        primes = [r for r in range(2, m + 1) if m % r == 0 and _is_prime(r)]
        for g in range(2 if q > 2 else 1, q):
            if all(self._slow_pow(g, m // r) != 1 for r in primes):
                return g
        return 1

    def _slow_pow(self, a, e):
        out = 1
        while e:
            if e & 1:
                out = self._slow_mul(out, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return out

    # -- shared helpers ------------------------------------------------
    def iszero(self, a):
        return a == self.zero

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        out = self.one
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def zeta_pow(self, k):
        return self.pow(self.zeta, k % self.n)

    def roots_of_unity(self):
        """The values +-zeta^j in discrete-log order (j ascending, + before -)."""
        out = []
        for j in range(self.n):
            z = self.zeta_pow(j)
            for s in (z, self.neg(z)):
                if s not in out:
                    out.append(s)
        return out

    def root_index(self, a):
        """(sign, j) with a = sign*zeta^j, or None."""
        for j in range(self.n):
            z = self.zeta_pow(j)
            if z == a:
                return (1, j)
            if self.neg(z) == a:
                return (-1, j)
        return None

    def mult_order(self, a, bound=None):
        bound = bound or 4 * self.n * max(self.p, 2)
        v = a
        for k in range(1, bound + 1):
            if v == self.one:
                return k
            v = self.mul(v, a)
        return None

    def coerce(self, v):
        """Raw value from int, Fraction, mpq, Scalar or raw."""
        if isinstance(v, Scalar):
            if v.field is not self:
                raise ValueError("scalar from a different field")
            return v.raw
        if self.p:
            if isinstance(v, int):
                return v % self.p
            if isinstance(v, (type(mpq(1)),)) or hasattr(v, "denominator"):
                num, den = int(v.numerator), int(v.denominator)
                if den % self.p == 0:
                    raise ZeroDivisionError("denominator divisible by p")
                return self.mul(num % self.p, self.inv(den % self.p))
            raise TypeError(f"cannot coerce {v!r}")
        if isinstance(v, tuple):
            return v
        if isinstance(v, (int, type(mpz(1)))) or hasattr(v, "denominator"):
            if self.degree == 1:
                return mpq(v)
            return (mpq(v),) + self.zero[1:]
        raise TypeError(f"cannot coerce {v!r}")

    def raw(self, v):
        """Unwrap Scalars; other values are already raw, except that plain
        numbers are converted in characteristic 0 (in characteristic p an
        int is a raw code)."""
        if isinstance(v, Scalar):
            return self.coerce(v)
        if self.p == 0 and not isinstance(v, tuple):
            return self.coerce(v)
        return v

    def __call__(self, v):
        return Scalar(self, self.coerce(v))

    def __repr__(self):
        return f"Field({self.spec})"

    # -- text --------------------------------------------------------------
    def to_text(self, a):
        if self.p:
            return ",".join(str(c) for c in self._digits(a)) if self.degree > 1 else str(a)
        if self.degree == 1:
            return str(a)
        return ",".join(str(c) for c in a)

    def from_text(self, s):
        parts = s.split(",")
        if self.p:
            if self.degree == 1:
                return int(s) % self.p
            return self._code([int(c) for c in parts])
        if self.degree == 1:
            return mpq(s)
        return tuple(mpq(c) for c in parts)

    def pretty(self, a):
        """Human form: integers, zeta powers or coefficient sums."""
        idx = self.root_index(a)
        if idx is not None:
            sign, j = idx
            if j == 0:
                return "1" if sign > 0 else "-1"
            z = "zeta" if j == 1 else f"zeta^{j}"
            return z if sign > 0 else "-" + z
        if self.p:
            if self.degree == 1:
                return str(a)
            digits = self._digits(a)
        elif self.degree == 1:
            return str(a)
        else:
            digits = list(a)
        terms = []
        for j, c in enumerate(digits):
            if not c:
                continue
            z = "" if j == 0 else ("zeta" if j == 1 else f"zeta^{j}")
            if j == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(z)
            elif c == -1:
                terms.append("-" + z)
            else:
                terms.append(f"{c}*{z}")
        return "+".join(terms).replace("+-", "-") or "0"


def _first_factor(p, n, d):
    """Lexicographically first monic degree-d divisor of Phi_n mod p.

    Every irreducible factor of Phi_n over F_p has degree d, so the first
    monic divisor of that degree is automatically irreducible.
    Returned as coefficient list, lowest degree first, leading 1 included.
    """
    phi = [c % p for c in cyclotomic_poly(n)]
    if d == 1:
        r = _root_mod_p(p, n)
        return [(-r) % p, 1]
    for code in range(p ** d):
        low = []
        c = code
        for _ in range(d):
            c, r = divmod(c, p)
            low.append(r)
        # code order is lexicographic in (c_{d-1}, ..., c_0)
        cand = low + [1]
        if _divides_mod_p(cand, phi, p):
            return cand
    raise ArithmeticError("no factor found")


def _divides_mod_p(f, g, p):
    g = list(g)
    df = len(f) - 1
    for k in range(len(g) - 1, df - 1, -1):
        c = g[k] % p
        if c:
            for i in range(df + 1):
                g[k - df + i] = (g[k - df + i] - c * f[i]) % p
    return not any(c % p for c in g[:df])


def _root_mod_p(p, n):
    """Smallest element of multiplicative order n in F_p."""
    for a in range(1, p):
        if pow(a, n, p) == 1 and all(pow(a, n // r, p) != 1
                                      for r in range(2, n + 1) if n % r == 0 and _is_prime(r)):
            return a
    raise ArithmeticError(f"F_{p} has no primitive {n}-th root")


@lru_cache(maxsize=None)
def _field_cached(spec):
    return Field(spec)


def field(characteristic=0, cyclotomic_order=1):
    if isinstance(characteristic, FieldSpec):
        return _field_cached(characteristic)
    return _field_cached(FieldSpec(characteristic, cyclotomic_order))


class Scalar:
    """Immutable field element."""
    __slots__ = ("field", "raw")

    def __init__(self, F, raw):
        object.__setattr__(self, "field", F)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, k, v):
        raise AttributeError("Scalar is immutable")

    def _other(self, o):
        if isinstance(o, Scalar):
            if o.field is not self.field:
                raise ValueError("mixed fields")
            return o.raw
        return self.field.coerce(o)

    def __add__(self, o):
        return Scalar(self.field, self.field.add(self.raw, self._other(o)))
    __radd__ = __add__

    def __sub__(self, o):
        return Scalar(self.field, self.field.sub(self.raw, self._other(o)))

    def __rsub__(self, o):
        return Scalar(self.field, self.field.sub(self._other(o), self.raw))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.raw))

    def __mul__(self, o):
        return Scalar(self.field, self.field.mul(self.raw, self._other(o)))
    __rmul__ = __mul__

    def inv(self):
        return Scalar(self.field, self.field.inv(self.raw))

    def __truediv__(self, o):
        return self * Scalar(self.field, self._other(o)).inv()

    def __rtruediv__(self, o):
        return Scalar(self.field, self._other(o)) * self.inv()

    def __pow__(self, e):
        return Scalar(self.field, self.field.pow(self.raw, e))

    def __eq__(self, o):
        try:
            return self.raw == self._other(o)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field.spec, self.raw))

    def __bool__(self):
        return self.raw != self.field.zero

    def __repr__(self):
        return f"Scalar({self.field.pretty(self.raw)})"

    def __str__(self):
        return self.field.pretty(self.raw)


def scalar_arith(a, b, op):
    """Dispatcher: op in {'add', 'mul', 'inv', 'pow'}; b is the exponent for pow."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a ** b
    raise ValueError(op)


class TracePoly:
    """Polynomial in t over a Field, coefficients stored raw and trimmed."""
    __slots__ = ("field", "c")

    def __init__(self, F, coeffs=()):
        c = list(coeffs)
        z = F.zero
        while c and c[-1] == z:
            c.pop()
        object.__setattr__(self, "field", F)
        object.__setattr__(self, "c", tuple(c))

    def __setattr__(self, k, v):
        raise AttributeError("TracePoly is immutable")

    @classmethod
    def from_values(cls, F, values):
        """Coerce ints, fractions or Scalars (raw codes are not accepted here)."""
        return cls(F, [F.coerce(v) for v in values])

    @classmethod
    def one(cls, F):
        return cls(F, [F.one])

    @classmethod
    def monomial(cls, F, coeff, k):
        return cls(F, [F.zero] * k + [coeff])

    @property
    def degree(self):
        return len(self.c) - 1

    @property
    def coeffs(self):
        return [Scalar(self.field, x) for x in self.c]

    def __getitem__(self, k):
        return self.c[k] if 0 <= k < len(self.c) else self.field.zero

    def is_zero(self):
        return not self.c

    def __eq__(self, o):
        if isinstance(o, TracePoly):
            return self.field is o.field and self.c == o.c
        return NotImplemented

    def __hash__(self):
        return hash((self.field.spec, self.c))

    def __add__(self, o):
        F = self.field
        n = max(len(self.c), len(o.c))
        return TracePoly(F, [F.add(self[i], o[i]) for i in range(n)])

    def __sub__(self, o):
        F = self.field
        n = max(len(self.c), len(o.c))
        return TracePoly(F, [F.sub(self[i], o[i]) for i in range(n)])

    def __neg__(self):
        return TracePoly(self.field, [self.field.neg(x) for x in self.c])

    def __mul__(self, o):
        F = self.field
        if not isinstance(o, TracePoly):
            s = F.raw(o)
            return TracePoly(F, [F.mul(s, x) for x in self.c])
        if not self.c or not o.c:
            return TracePoly(F)
        out = [F.zero] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a == F.zero:
                continue
            for j, b in enumerate(o.c):
                if b != F.zero:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return TracePoly(F, out)
    __rmul__ = __mul__

    def __pow__(self, e):
        out = TracePoly.one(self.field)
        for _ in range(e):
            out = out * self
        return out

    def divmod(self, o):
        F = self.field
        if o.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.c)
        dq = len(rem) - len(o.c) + 1
        if dq <= 0:
            return TracePoly(F), self
        inv_lead = F.inv(o.c[-1])
        quo = [F.zero] * dq
        for i in range(dq - 1, -1, -1):
            f = F.mul(rem[i + len(o.c) - 1], inv_lead)
            quo[i] = f
            if f != F.zero:
                for j, b in enumerate(o.c):
                    rem[i + j] = F.sub(rem[i + j], F.mul(f, b))
        return TracePoly(F, quo), TracePoly(F, rem)

    def exact_div(self, o):
        """(quotient, divisible flag)."""
        q, r = self.divmod(o)
        return q, r.is_zero()

    def substitute(self, lam, k=1):
        """p(lam * t^k)."""
        F = self.field
        lam = F.raw(lam)
        out = [F.zero] * (k * max(len(self.c) - 1, 0) + 1)
        pw = F.one
        for i, a in enumerate(self.c):
            out[i * k] = F.mul(a, pw)
            pw = F.mul(pw, lam)
        return TracePoly(F, out)

    def reverse(self, L):
        """t^L * p(1/t); requires deg p <= L."""
        if self.degree > L:
            raise ValueError("degree exceeds L")
        return TracePoly(self.field, [self[L - i] for i in range(L + 1)])

    def eval(self, a):
        F = self.field
        a = F.raw(a)
        v = F.zero
        for x in reversed(self.c):
            v = F.add(F.mul(v, a), x)
        return Scalar(F, v)

    def scale(self, s):
        return self * s

    def map_field(self, G, fn):
        return TracePoly(G, [fn(x) for x in self.c])

    def reduce_mod(self, G):
        """Image in a characteristic-p field G.  Only for rational coefficients."""
        F = self.field
        if F.p or F.degree != 1:
            raise ValueError("reduction only implemented for rational coefficients")
        return self.map_field(G, G.coerce)

    def __repr__(self):
        return f"TracePoly({self.pretty()})"

    def pretty(self):
        F = self.field
        if not self.c:
            return "0"
        terms = []
        for i, a in enumerate(self.c):
            if a == F.zero:
                continue
            s = F.pretty(a)
            if "+" in s[1:] or "-" in s[1:]:
                s = f"({s})"
            tp = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not tp:
                terms.append(s)
            elif s == "1":
                terms.append(tp)
            elif s == "-1":
                terms.append("-" + tp)
            else:
                terms.append(f"{s}*{tp}")
        return " + ".join(terms).replace("+ -", "- ")

    def coeff_text(self):
        F = self.field
        return " ".join(F.to_text(x) if ("," not in F.to_text(x)) else "[" + F.to_text(x) + "]"
                        for x in self.c) or "0"


def poly_ops(p, q, op, *args):
    """Dispatcher mirroring the operation list of TracePoly."""
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "exact_div":
        return p.exact_div(q)
    if op == "substitute":
        return p.substitute(*args)
    if op == "reverse":
        return p.reverse(*args)
    if op == "eval":
        return p.eval(*args)
    raise ValueError(op)
