"""Graded traces of letter operators on a built Nichols algebra."""
from dataclasses import dataclass

from .linalg import axpy
from .scalars import Scalar, TracePoly


@dataclass
class GradedTraceReport:
    label: str
    poly: TracePoly
    at_one: Scalar
    lam: Scalar = None          # action on the integral, when complete
    partial: bool = False       # upper half filled in by duality


def _columns(N, Q, upto):
    """Yield (n, columns) with columns[i] = Q(w_i) in layer n."""
    F = N.F
    sigma, lam = Q.sigma, Q.lam
    cols = [{0: F.one}]
    yield 0, cols
    for n in range(1, upto + 1):
        L = N.layers[n]
        rows = L.left
        new = []
        mul, add, zero = F.mul, F.add, F.zero
        for x, j in L.origin:
            sx, lx = sigma[x], lam[x]
            target = rows[sx]
            out = {}
            for k, c in cols[j].items():
                c = mul(lx, c)
                for i, d in target[k].items():
                    v = mul(c, d)
                    w = out.get(i)
                    if w is None:
                        out[i] = v
                    else:
                        nv = add(w, v)
                        if nv == zero:
                            del out[i]
                        else:
                            out[i] = nv
            new.append(out)
        cols = new
        yield n, cols


def trace_coefficients(N, Q, upto=None):
    F = N.F
    top = N.top_degree if upto is None else upto
    if top > N.top_degree:
        raise ValueError(f"layers are only computed up to degree {N.top_degree}")
    coeffs = []
    for n, cols in _columns(N, Q, top):
        s = F.zero
        for i, col in enumerate(cols):
            v = col.get(i)
            if v is not None:
                s = F.add(s, v)
        coeffs.append(s)
    return coeffs


def integral_scalar(N, Q):
    """lambda_Q: Q acts on the 1-dimensional top layer by this scalar."""
    if not N.complete:
        raise ValueError("algebra not complete")
    top = N.layers[-1]
    if top.dim != 1:
        raise ValueError("top layer is not 1-dimensional")
    F = N.F
    w = top.words[0]
    c = F.one
    for x in w:
        c = F.mul(c, Q.lam[x])
    vec = N.reduce(tuple(Q.sigma[x] for x in w))
    return F.mul(c, vec.get(0, F.zero))


def graded_trace(N, Q, label=None):
    F = N.F
    poly = TracePoly(F, trace_coefficients(N, Q))
    lam = None
    if N.complete and N.layers[-1].dim == 1:
        lam = Scalar(F, integral_scalar(N, Q))
    return GradedTraceReport(label or Q.label, poly, poly.eval(F.one), lam)


def poincare_check(N, Q, tr=None, tr_inv=None):
    """(lambda_Q, holds) for tr_Q(t) = lambda_Q t^L tr_{Q^-1}(1/t)."""
    if not N.complete or N.layers[-1].dim != 1:
        return None, False
    F = N.F
    lam = integral_scalar(N, Q)
    tr = tr or graded_trace(N, Q).poly
    tr_inv = tr_inv or graded_trace(N, Q.inverse()).poly
    L = N.top_degree
    rhs = tr_inv.reverse(L) * lam
    return Scalar(F, lam), rhs == tr


class DualityMismatch(AssertionError):
    pass


def duality_completion(F, L, lower, lower_inv, lam):
    """Full coefficient list from the lower halves of tr_Q and tr_{Q^-1}.

    ``lower`` and ``lower_inv`` hold coefficients 0..h with h >= ceil(L/2);
    every overlapping coefficient is checked against lam * lower_inv[L-l].
    """
    lam = F.raw(lam)
    h = len(lower) - 1
    if L == 0:
        return TracePoly(F, lower[:1])
    if 2 * h < L or len(lower_inv) < len(lower):
        raise ValueError("need coefficients up to ceil(L/2) for Q and Q^-1")
    for l in range(L - h, h + 1):
        if lower[l] != F.mul(lam, lower_inv[L - l]):
            raise DualityMismatch(f"middle coefficient {l} disagrees")
    full = list(lower) + [F.mul(lam, lower_inv[L - l]) for l in range(h + 1, L + 1)]
    return TracePoly(F, full)


def graded_trace_by_duality(N, Q, label=None):
    """Compute only the lower half of the traces of Q and Q^-1."""
    F = N.F
    if not N.complete or N.layers[-1].dim != 1:
        raise ValueError("duality needs a complete algebra with 1-dimensional top")
    L = N.top_degree
    h = (L + 1) // 2
    lower = trace_coefficients(N, Q, h)
    Qi = Q.inverse()
    lower_inv = trace_coefficients(N, Qi, h)
    lam = integral_scalar(N, Q)
    poly = duality_completion(F, L, lower, lower_inv, lam)
    return GradedTraceReport(label or Q.label, poly, poly.eval(F.one), Scalar(F, lam), partial=True)


def ungraded_trace(N, Q, n):
    """Plain trace of Q on layer n by acting on every basis word (slow path)."""
    F = N.F
    L = N.layers[n]
    s = F.zero
    for i, w in enumerate(L.words):
        c = F.one
        for x in w:
            c = F.mul(c, Q.lam[x])
        v = N.reduce(tuple(Q.sigma[x] for x in w)).get(i)
        if v is not None:
            s = F.add(s, F.mul(c, v))
    return s


def apply_operator(N, Q, vec, n):
    """Q applied to a vector of layer n (Q acts letterwise on basis words)."""
    F = N.F
    words = N.layers[n].words
    out = {}
    for i, c in vec.items():
        w = words[i]
        for x in w:
            c = F.mul(c, Q.lam[x])
        axpy(F, out, c, N.reduce(tuple(Q.sigma[x] for x in w)))
    return out
