"""Sectioned key-value run configs.

    [field]       characteristic, cyclotomic_order
    [group]       catalog = NAME  |  generators = (1 2), (1 2 3)  [names = s, r]
    [orbits]      block = REP | gen = value, gen = value      (repeatable)
    [braiding]    row = v, v, ...                             (diagonal input)
    [operators]   NAME = sigma 2 1 | lam 1 -1                  (letter operators)
    [run]         max_degree, traces, factor_bounds, duality_shortcut,
                  verify_level, golden
    [subnichols]  generators = w, w   (subgroup for divisibility checks)
    [toy]         decomposition = 2,2 | a = 1,0 | b = 0,1

Lines starting with '#' are comments.  Values are scalars such as
``-1``, ``zeta^2``, ``-zeta``, ``1/2`` or sums like ``1+zeta``.
"""
import re
from dataclasses import dataclass, field as dc_field

from .scalars import field


class ConfigError(ValueError):
    pass


@dataclass
class Entry:
    key: str
    value: str
    line: int


@dataclass
class Config:
    path: str
    sections: dict = dc_field(default_factory=dict)     # name -> list of Entry

    def get(self, section, key, default=None):
        for e in self.sections.get(section, []):
            if e.key == key:
                return e.value
        return default

    def entry(self, section, key):
        for e in self.sections.get(section, []):
            if e.key == key:
                return e
        return None

    def all(self, section, key=None):
        return [e for e in self.sections.get(section, []) if key is None or e.key == key]

    def has(self, section):
        return section in self.sections

    def error(self, entry, msg):
        where = f"{self.path}:{entry.line}" if entry else self.path
        return ConfigError(f"{where}: {msg}")


KNOWN = {
    "field": {"characteristic", "cyclotomic_order"},
    "group": {"catalog", "generators", "names"},
    "orbits": {"block"},
    "braiding": {"row", "names"},
    "operators": None,
    "run": {"max_degree", "traces", "factor_bounds", "duality_shortcut",
            "verify_level", "golden", "title", "expect_dimension", "expect_hilbert",
            "nonvanishing", "stretch"},
    "subnichols": {"generators", "chi"},
    "toy": {"decomposition", "alternative"},
    "diagonal": None,
}


def parse_text(text, path="<config>"):
    cfg = Config(path)
    section = None
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip() if not raw.lstrip().startswith("#") else ""
        if not line:
            continue
        m = re.fullmatch(r"\[([A-Za-z_]+)\]", line)
        if m:
            section = m.group(1)
            if section not in KNOWN:
                raise ConfigError(f"{path}:{no}: unknown section [{section}]")
            cfg.sections.setdefault(section, [])
            continue
        if section is None:
            raise ConfigError(f"{path}:{no}: key outside of any section")
        if "=" not in line:
            raise ConfigError(f"{path}:{no}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        allowed = KNOWN[section]
        if allowed is not None and key not in allowed:
            raise ConfigError(f"{path}:{no}: unknown key {key!r} in [{section}]")
        cfg.sections[section].append(Entry(key, value, no))
    if "field" not in cfg.sections:
        raise ConfigError(f"{path}: missing [field] section")
    return cfg


def parse_file(path):
    with open(path) as f:
        return parse_text(f.read(), path)


def config_field(cfg):
    e = cfg.entry("field", "characteristic")
    try:
        p = int(cfg.get("field", "characteristic", "0"))
        n = int(cfg.get("field", "cyclotomic_order", "1"))
        return field(p, n)
    except ValueError as exc:
        raise cfg.error(e, str(exc))


_TERM = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(zeta|i)?(?:\^(-?\d+))?\s*")


def parse_scalar(F, text):
    """Raw value of sums of terms c*zeta^k (``i`` means zeta when n = 4)."""
    text = text.strip()
    if not text:
        raise ValueError("empty scalar")
    total = F.zero
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"bad scalar {text!r}")
        sign, coef, z, ex = m.groups()
        if z == "i" and F.n != 4:
            raise ValueError("'i' needs cyclotomic_order = 4")
        v = F.one
        if coef:
            if "/" in coef:
                a, b = coef.split("/")
                v = F.mul(F.from_int(int(a)), F.inv(F.from_int(int(b))))
            else:
                v = F.from_int(int(coef))
        if z:
            v = F.mul(v, F.zeta_pow(int(ex) if ex else 1))
        elif ex:
            v = F.pow(v, int(ex))
        if sign == "-":
            v = F.neg(v)
        total = F.add(total, v)
        pos = m.end()
    return total


def parse_assignments(F, G, text):
    """'a = -zeta, b^2 = 1' -> {group element: raw}."""
    out = {}
    for part in _split_top(text):
        if not part.strip():
            continue
        if "=" not in part:
            raise ValueError(f"expected 'word = value' in {part!r}")
        w, v = part.rsplit("=", 1)
        out[G.word(w.strip())] = parse_scalar(F, v)
    return out


def _split_top(text, sep=","):
    """Split at separators not inside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def split_list(text):
    return [s.strip() for s in _split_top(text) if s.strip()]


def parse_bool(text):
    t = text.strip().lower()
    if t in ("yes", "true", "on", "1"):
        return True
    if t in ("no", "false", "off", "0"):
        return False
    raise ValueError(f"expected yes/no, got {text!r}")


def parse_bounds(text):
    """'N=5 k=auto order=12' -> dict."""
    out = {"max_N": 5, "max_k": None, "order_bound": None}
    for tok in text.replace(",", " ").split():
        k, v = tok.split("=")
        k = {"N": "max_N", "k": "max_k", "order": "order_bound"}.get(k, k)
        out[k] = None if v == "auto" else int(v)
    return out
