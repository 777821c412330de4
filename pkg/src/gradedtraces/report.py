"""Human-readable and machine-readable run reports."""
import os


def _col(rows):
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]


def human_report(res):
    F = res.field
    out = [res.title, "=" * len(res.title)]
    out += res.summary
    out += res.notes
    if res.lines:
        out += ["", "graded traces"]
        rows = [("class", "factorization", "t=1", "lambda", "golden")]
        for l in res.lines:
            g = "" if l.golden is None else ("match" if l.golden else "MISMATCH")
            rows.append((l.label, l.factorization.pretty(), str(l.at_one),
                         str(l.lam) if l.lam is not None else "", g))
        out += ["  " + r for r in _col(rows)]
        extras = [(l.label, l.extra) for l in res.lines if l.extra]
        if extras:
            out.append("")
            out += [f"  {a}: {b}" for a, b in extras]
        bad = [l for l in res.lines if l.golden is False]
        for l in bad:
            out.append(f"  {l.label}: expected {l.golden_text}, got {l.poly.pretty()}")
    if res.checks:
        out += ["", "checks"]
        for c in res.checks:
            out.append(f"  {'PASS' if c.ok else 'FAIL'}  {c.name}" + (f": {c.detail}" if c.detail else ""))
    out += ["", "result: " + ("OK" if res.ok else "FAILED")]
    return "\n".join(out) + "\n"


def machine_lines(res):
    """class_rep | coefficients | factorization | value at t=1 | lambda."""
    out = []
    for l in res.lines:
        coeffs = l.poly.coeff_text()
        lam = str(l.lam) if l.lam is not None else "-"
        out.append(f"{l.label} | {coeffs} | {l.factorization.pretty()} | {l.at_one} | {lam}")
    return "\n".join(out) + "\n"


def write_reports(res, out_dir, stem):
    os.makedirs(out_dir, exist_ok=True)
    paths = {}
    for kind, text in (("report", human_report(res)), ("traces", machine_lines(res))):
        p = os.path.join(out_dir, f"{stem}.{kind}.txt")
        with open(p, "w") as f:
            f.write(text)
        paths[kind] = p
    return paths
