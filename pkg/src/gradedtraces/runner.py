"""Run orchestration: config -> algebra -> traces -> checks."""
import logging
import multiprocessing
import os
import re
import time
from dataclasses import dataclass, field as dc_field
from importlib import resources

from . import conjchar, diagonal, divisibility
from .braidings import (CentralizerCharacter, LetterOperator, diagonal_braiding,
                        from_orbits, group_action_operator, identity_operator)
from .config import (ConfigError, config_field, parse_assignments, parse_bool,
                     parse_bounds, parse_file, parse_scalar, split_list)
from .groups import (catalog_group, class_representatives, cycles_to_perm,
                     FiniteGroup, CATALOG)
from .nichols import build, symmetrizer_rank_oracle, SYMMETRIZER_CAP
from .qfactor import factor, parse_factorization, qsymbol
from .scalars import Scalar, TracePoly
from .traces import (DualityMismatch, graded_trace, graded_trace_by_duality,
                     poincare_check)

log = logging.getLogger(__name__)


# -- shipped data --------------------------------------------------------------------

def shipped_configs():
    root = resources.files(__package__) / "configs"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".cfg"))


def resolve_config(name):
    """A path, or the stem of a shipped config."""
    if os.path.exists(name):
        return name
    p = resources.files(__package__) / "configs" / f"{name}.cfg"
    if p.is_file():
        return str(p)
    raise ConfigError(f"no config file or shipped config named {name!r}")


def load_golden(F, name):
    """label -> list of (text, TracePoly); 'A / B' lines are exact quotients."""
    p = resources.files(__package__) / "golden" / f"{name}.txt"
    if not p.is_file():
        raise ConfigError(f"no golden table {name!r}")
    out = {}
    for line in p.read_text().splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        label, text = (s.strip() for s in line.split("|", 1))
        if " / " in text:
            num, den = text.split(" / ")
            q, ok = parse_factorization(F, num).exact_div(parse_factorization(F, den))
            if not ok:
                raise ConfigError(f"golden {name}: {text} is not a polynomial")
            poly = q
        else:
            poly = parse_factorization(F, text)
        out.setdefault(label, []).append((text, poly))
    return out


def field_name(F):
    p, n = F.p, F.n
    if p == 0:
        return "Q" if n <= 2 else f"Q(zeta_{n})"
    d = 1
    while pow(p, d, n) != 1 % n:
        d += 1
    return f"F_{p}" if d == 1 else f"F_{p}^{d}"


# -- setup ----------------------------------------------------------------------------------

@dataclass
class Setup:
    cfg: object
    F: object
    group: object = None
    braiding: object = None
    realization: object = None
    blocks: list = dc_field(default_factory=list)     # (rep, CentralizerCharacter)
    operators: list = dc_field(default_factory=list)  # (label, LetterOperator, group element)
    title: str = ""


def load_group(cfg):
    cat = cfg.get("group", "catalog")
    if cat:
        if cat not in CATALOG:
            raise cfg.error(cfg.entry("group", "catalog"), f"unknown catalog group {cat!r}")
        return catalog_group(cat)
    gens = cfg.get("group", "generators")
    if not gens:
        return None
    texts = split_list(gens)
    degree = max(int(n) for t in texts for n in re.findall(r"\d+", t))
    names = split_list(cfg.get("group", "names", "")) or None
    return FiniteGroup([cycles_to_perm(t, degree) for t in texts], names=names, name="G")


def load_setup(cfg):
    F = config_field(cfg)
    s = Setup(cfg, F, title=cfg.get("run", "title", os.path.basename(cfg.path)))
    s.group = load_group(cfg)
    if cfg.has("orbits"):
        if s.group is None:
            raise cfg.error(None, "[orbits] needs a [group]")
        G = s.group
        for e in cfg.all("orbits", "block"):
            try:
                rep_text, vals = (p.strip() for p in e.value.split("|", 1))
                rep = G.word(rep_text)
                chi = CentralizerCharacter(G, rep, parse_assignments(F, G, vals), F)
            except (ValueError, KeyError) as exc:
                raise cfg.error(e, str(exc))
            s.blocks.append((rep, chi))
        s.braiding, s.realization = from_orbits(G, s.blocks, F)
    elif cfg.has("braiding"):
        rows = cfg.all("braiding", "row")
        try:
            matrix = [[parse_scalar(F, v) for v in split_list(e.value)] for e in rows]
        except ValueError as exc:
            raise cfg.error(rows[0], str(exc))
        names = split_list(cfg.get("braiding", "names", "")) or None
        s.braiding = diagonal_braiding(F, matrix, names)
    s.operators = _load_operators(s)
    return s


def _load_operators(s):
    cfg, br = s.cfg, s.braiding
    if br is None:
        return []
    named = {}
    for e in cfg.all("operators"):
        m = re.fullmatch(r"sigma\s+([\d\s]+)\|\s*lam\s+(.+)", e.value.strip())
        if not m:
            raise cfg.error(e, "expected 'sigma i j ... | lam a b ...'")
        sigma = [int(v) - 1 for v in m.group(1).split()]
        try:
            lam = [parse_scalar(s.F, v) for v in m.group(2).split()]
            named[e.key] = LetterOperator(br, sigma, lam, e.key)
        except ValueError as exc:
            raise cfg.error(e, str(exc))
    spec = cfg.get("run", "traces", "classes")
    out = []
    for item in split_list(spec):
        if item == "classes":
            if s.realization is None:
                raise cfg.error(cfg.entry("run", "traces"), "'classes' needs a group")
            for g in class_representatives(s.group):
                out.append((s.group.label(g), group_action_operator(s.realization, br, g), g))
        elif item in named:
            out.append((item, named[item], None))
        elif item == "e" and s.realization is None:
            out.append(("e", identity_operator(br), None))
        elif s.realization is not None:
            try:
                g = s.group.word(item)
            except (ValueError, KeyError) as exc:
                raise cfg.error(cfg.entry("run", "traces"), str(exc))
            out.append((item, group_action_operator(s.realization, br, g), g))
        else:
            raise cfg.error(cfg.entry("run", "traces"), f"unknown operator {item!r}")
    return out


# -- results -------------------------------------------------------------------------------

@dataclass
class TraceLine:
    label: str
    poly: TracePoly
    factorization: object
    at_one: Scalar
    lam: object = None
    golden: object = None        # None: no golden line; else bool
    golden_text: str = ""
    extra: str = ""


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class RunResult:
    title: str
    config: str
    field: object
    summary: list = dc_field(default_factory=list)
    lines: list = dc_field(default_factory=list)
    checks: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)
    algebra: object = None
    setup: object = None
    timings: dict = dc_field(default_factory=dict)

    @property
    def ok(self):
        return all(c.ok for c in self.checks) and all(l.golden is not False for l in self.lines)

    def check(self, name, ok, detail=""):
        self.checks.append(Check(name, bool(ok), detail))
        return ok

    def line(self, label):
        for l in self.lines:
            if l.label == label:
                return l
        raise KeyError(label)


# -- traces, optionally in worker processes ------------------------------------------------

_STATE = {}


def _trace_one(idx):
    N, ops, dual = _STATE["N"], _STATE["ops"], _STATE["dual"]
    label, Q, _ = ops[idx]
    rep = graded_trace_by_duality(N, Q, label) if dual else graded_trace(N, Q, label)
    return rep.poly.c, (rep.lam.raw if rep.lam is not None else None)


def compute_traces(N, ops, dual=False, threads=1):
    F = N.F
    _STATE.update(N=N, ops=ops, dual=dual)
    try:
        if threads > 1 and len(ops) > 1 and "fork" in multiprocessing.get_all_start_methods():
            with multiprocessing.get_context("fork").Pool(min(threads, len(ops))) as pool:
                raw = pool.map(_trace_one, range(len(ops)))
        else:
            raw = [_trace_one(i) for i in range(len(ops))]
    finally:
        _STATE.clear()
    return [(TracePoly(F, c), lam) for c, lam in raw]


# -- the main run ---------------------------------------------------------------------------

def run_config(path, verify_level="fast", threads=1, cache_dir=None, progress=None):
    cfg = parse_file(resolve_config(path))
    if cfg.has("toy"):
        return run_toy(cfg)
    s = load_setup(cfg)
    if s.braiding is None:
        raise ConfigError(f"{cfg.path}: need [orbits] or [braiding]")
    F, br = s.F, s.braiding
    res = RunResult(s.title, cfg.path, F, setup=s)
    try:
        cap = int(cfg.get("run", "max_degree", "24"))
        bounds = parse_bounds(cfg.get("run", "factor_bounds", "N=5 k=auto"))
        dual = parse_bool(cfg.get("run", "duality_shortcut", "no"))
    except ValueError as exc:
        raise ConfigError(f"{cfg.path}: {exc}")

    t0 = time.time()
    N = build(br, cap, cache_dir=cache_dir, progress=progress)
    res.timings["build"] = time.time() - t0
    res.algebra = N
    res.summary.append(f"field: {field_name(F)}")
    if s.group is not None:
        res.summary.append(f"group: {s.group.name or 'G'} of order {s.group.order}")
    res.summary.append(f"letters: {br.size} ({', '.join(br.names)})")
    res.summary.append(f"layer dimensions: {' '.join(map(str, N.dims))}")
    res.summary.append(f"dimension: {N.dimension}, top degree {N.top_degree}"
                       + ("" if N.complete else f", INCOMPLETE at cap {cap}"))
    res.check("build reaches a zero layer within the cap", N.complete,
              f"cap {cap}, computed up to degree {N.top_degree}")
    want = cfg.get("run", "expect_dimension")
    if want:
        res.check("dimension", N.dimension == int(want), f"{N.dimension} (expected {want})")
    if not N.complete:
        return res

    golden = load_golden(F, cfg.get("run", "golden")) if cfg.get("run", "golden") else {}
    t0 = time.time()
    try:
        traces = compute_traces(N, s.operators, dual, threads)
    except DualityMismatch as exc:
        res.check("duality completion: middle coefficients agree", False, str(exc))
        return res
    res.timings["traces"] = time.time() - t0
    if dual:
        res.check("duality completion: middle coefficients agree", True,
                  f"lower halves up to degree {(N.top_degree + 1) // 2}")
    for (label, Q, g), (poly, lam) in zip(s.operators, traces):
        fac = factor(poly, **bounds)
        line = TraceLine(label, poly, fac, poly.eval(F.one),
                         Scalar(F, lam) if lam is not None else None)
        if label in golden:
            oks = [poly == gp for _, gp in golden[label]]
            line.golden = all(oks)
            line.golden_text = golden[label][0][0]
        res.lines.append(line)
    res.check("factorizations expand back to the traces",
              all(l.factorization.expand() == l.poly for l in res.lines))
    missing = [k for k in golden if k not in {l.label for l in res.lines}]
    if missing:
        res.check("every golden line computed", False, ", ".join(missing))
    if golden:
        bad = [l.label for l in res.lines if l.golden is False]
        res.check("golden table", not bad,
                  "all lines match" if not bad else "mismatch: " + ", ".join(bad))

    if not dual:
        _check_duality(res, N, s)
    _check_nonvanishing(res, cfg)
    if cfg.has("diagonal"):
        _check_diagonal(res, N, s)
    if cfg.has("subnichols"):
        _check_subnichols(res, N, s)
    if verify_level == "full":
        _check_full(res, N, s, dual)
    return res


def _check_duality(res, N, s):
    F = N.F
    if N.layers[-1].dim != 1:
        res.check("Poincare duality", False, "top layer is not 1-dimensional")
        return
    bad = []
    for (label, Q, _), line in zip(s.operators, res.lines):
        lam, ok = poincare_check(N, Q, tr=line.poly)
        line.lam = lam
        if not ok:
            bad.append(label)
    res.check("Poincare duality tr_Q(t) = lambda_Q t^L tr_Q^-1(1/t)", not bad, ", ".join(bad))


def _check_nonvanishing(res, cfg):
    want = cfg.get("run", "nonvanishing")
    if want is None:
        return
    F = res.field
    expect = set(split_list(want))
    got = {l.label for l in res.lines if l.label != "e" and l.at_one.raw != F.zero}
    res.check("classes g != e with nonzero trace at t = 1", got == expect,
              ", ".join(f"{l.label}: {l.at_one}" for l in res.lines
                        if l.label in got) or "none")


def _check_diagonal(res, N, s):
    cfg, F = s.cfg, N.F
    kind = cfg.get("diagonal", "roots", "lyndon")
    try:
        if kind == "custom":
            specs = []
            for e in cfg.all("diagonal", "root"):
                label, text = (p.strip() for p in e.value.split("|"))
                specs.append((text, label))
            rd = diagonal.roots_from_brackets(N, specs)
        else:
            rd = diagonal.lyndon_roots(N)
    except diagonal.RootError as exc:
        res.check("root vectors reproduce the Hilbert series", False, str(exc))
        return
    res.check("root vectors reproduce the Hilbert series", rd.complete,
              "roots " + ", ".join(f"{l} (N={r.height})" for l, r in zip(rd.labels(), rd.roots)))
    for (label, Q, _), line in zip(s.operators, res.lines):
        try:
            perm, lams = diagonal.root_action(rd, Q)
        except diagonal.RootError:
            line.extra = "does not permute the root vectors"
            continue
        poly, facs = diagonal.orbit_trace(rd, perm, lams)
        ok = poly == line.poly
        names = rd.labels()
        if perm == list(range(len(perm))):
            ok = ok and diagonal.stabilizing_trace(rd, lams) == line.poly
        form = " ".join(
            f"({f.height})_{{{_lam_t(F, F.mul(f.q_A, f.lam), f.degree)}}}" if f.is_qsymbol
            else f"[{f.poly.pretty()}]" for f in facs)
        line.extra = "orbit formula: " + form
        res.check(f"orbit product formula equals the direct trace of {label}", ok,
                  "orbits " + "; ".join("{" + ", ".join(names[a] for a in f.orbit) + "}"
                                         for f in facs))
    if parse_bool(cfg.get("diagonal", "swap_identities", "no")):
        ids = diagonal.swap_identities(N)
        res.check("symmetrized basis identities", all(ids.values()),
                  ", ".join(f"{k}: {'yes' if v else 'NO'}" for k, v in ids.items()))


def _lam_t(F, lam, k):
    from .qfactor import _lam_text
    return _lam_text(F, lam, k)


def _check_subnichols(res, N, s):
    cfg, F, G = s.cfg, N.F, s.group
    if len(s.blocks) != 1:
        res.check("sub-Nichols data", False, "only one orbit is supported")
        return
    gens = [G.word(w) for w in split_list(cfg.get("subnichols", "generators"))]
    rep, chi = s.blocks[0]
    sub = divisibility.sub_nichols(G, s.realization, rep, chi, gens, F)
    res.notes.append(f"sub-Nichols algebra over <{', '.join(G.label(h) for h in gens)}>:"
                     f" dimension {sub.algebra.dimension}, layers {' '.join(map(str, sub.algebra.dims))}")
    kd = divisibility.joint_kernel_dims(N, sub.letters)
    K = TracePoly(F, [F.from_int(d) for d in kd])
    res.check("joint kernel K of the sub-class derivations has series H/H'",
              K * sub.algebra.hilbert == N.hilbert, f"K layers {' '.join(map(str, kd))}")
    m = divisibility.order_of_q(s.braiding)
    br = s.braiding
    in_sub = set(sub.to_big)
    for (label, Q, g), line in zip(s.operators, res.lines):
        if g is None or g not in in_sub:
            continue
        st = divisibility.sub_trace(sub, g)
        _, ok1 = line.poly.exact_div(st)
        detail = f"tr' = {factor(st).pretty()}"
        res.check(f"tr_{label} divisible by the sub-Nichols trace", ok1, detail)
        # part 2: a letter x outside the subclass commuting with g
        for x in range(br.size):
            if x in sub.letters or G.mul[g][br.degrees[x]] != G.mul[br.degrees[x]][g]:
                continue
            lam = divisibility.commutation_scalar(N, Q, x, m)
            if lam is None:
                continue
            d = qsymbol(F, m, lam, 1) * st
            _, ok2 = line.poly.exact_div(d)
            res.check(f"tr_{label} divisible by ({m})_{{lam t}} tr' with x = {br.names[x]}", ok2,
                      f"lam = {F.pretty(lam)}, divisor {factor(d).pretty()}")
            break


def _check_full(res, N, s, dual):
    F, br = N.F, s.braiding
    # build vs symmetrizer ranks
    bad = []
    for n in range(1, min(3, N.top_degree) + 1):
        if br.size ** n > SYMMETRIZER_CAP:
            break
        r = symmetrizer_rank_oracle(br, n)
        if r != N.dims[n]:
            bad.append(f"degree {n}: {N.dims[n]} vs {r}")
    res.check("layer dimensions agree with quantum symmetrizer ranks (degree <= 3)", not bad,
              "; ".join(bad))
    res.check("derivation recursion consistent on every layer",
              all(N.check_recursion(n) for n in range(1, len(N.layers))))
    d = N.dims
    res.check("Hilbert series is palindromic", d == d[::-1])
    # balancedness vs divisibility, both directions
    roots = F.roots_of_unity()
    bad = []
    count = 0
    for line in res.lines:
        for k in range(2, 7):
            for lam in roots:
                if F.pow(lam, k) != F.one:
                    continue
                count += 1
                bal, div = divisibility.balanced_and_divisible(line.poly, k, lam)
                if bal != div:
                    bad.append(f"{line.label} k={k} lam={F.pretty(lam)}")
    res.check("sector balancedness <=> divisibility by (k)_{lam t}", not bad,
              f"{count} cases" if not bad else "; ".join(bad))
    if dual:
        return
    # second route: lower halves plus duality
    if N.layers[-1].dim == 1:
        bad = []
        for (label, Q, _), line in zip(s.operators, res.lines):
            try:
                if graded_trace_by_duality(N, Q).poly != line.poly:
                    bad.append(label)
            except DualityMismatch:
                bad.append(label)
        res.check("duality completion reproduces the full traces", not bad, ", ".join(bad))
    # modified shift, rank one only
    if s.realization is not None and len(s.blocks) == 1 and N.dimension <= 1000:
        m = divisibility.order_of_q(br)
        hyp = divisibility.coefficients_are_mth_roots(br, m)
        res.check(f"all braiding coefficients are roots of unity of order dividing m = {m}", hyp)
        if hyp:
            bij = all(divisibility.xi_is_bijective(N, x, m) for x in range(br.size))
            res.check(f"xi_x is a bijection between consecutive Z_{m} sectors", bij)
            res.check("g_y xi_x = q_yx xi_(y|>x) g_y",
                      divisibility.check_shift_equivariance(N, s.group, s.realization, m))
            if N.dimension <= 36:
                span = divisibility.xi_orbit_span(N, m)
                res.check("orbit of 1 under the xi_x spans the algebra", span == N.dimension,
                          f"span {span} of {N.dimension}")


# -- toy model ----------------------------------------------------------------------------

def run_toy(cfg):
    G = load_group(cfg)
    if G is None:
        raise ConfigError(f"{cfg.path}: [toy] needs a [group]")
    res = RunResult(cfg.get("run", "title", "toy"), cfg.path, conjchar.QQ)
    F = res.field
    res.summary.append(f"group: {G.name or 'G'} of order {G.order}")
    decs = []
    for key in ("decomposition", "alternative"):
        e = cfg.entry("toy", key)
        if e is None:
            continue
        try:
            decs.append((key, e.value, conjchar.parse_decomposition(G, e.value)))
        except (ValueError, KeyError) as exc:
            raise cfg.error(e, str(exc))
    if not decs:
        decs.append(("decomposition", "abelianization", conjchar.default_decomposition(G)))
    golden = load_golden(F, cfg.get("run", "golden")) if cfg.get("run", "golden") else {}
    reps = class_representatives(G)
    for key, text, dec in decs:
        res.notes.append(f"{key}: {text}")
        failures = []
        for tl in conjchar.toy_table(G, dec, reps):
            pred = tl.prediction
            fac = factor(tl.character)
            line = TraceLine(f"{tl.label}" if key == "decomposition" else f"{tl.label} [{key}]",
                             tl.character, fac, tl.character.eval(F.one))
            line.extra = (f"prediction {pred.pretty()} (m = {', '.join(map(str, pred.m))})"
                          + ("" if tl.holds else "  DIFFERS"))
            if key == "decomposition" and tl.label in golden:
                line.golden = all(tl.character == gp for _, gp in golden[tl.label])
                line.golden_text = golden[tl.label][0][0]
            res.lines.append(line)
            if not tl.holds:
                failures.append(f"{tl.label}: {tl.character.pretty()} vs {pred.expand().pretty()}")
        res.check(f"fiber lemma ({key})",
                  all(conjchar.check_lemma(G, dec, g) for g in range(G.order)))
        res.check(f"character equals the predicted q-symbol product ({key})", not failures,
                  "; ".join(failures))
    return res
