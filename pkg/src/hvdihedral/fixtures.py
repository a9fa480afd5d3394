"""Text fixtures for q-series with coefficients in Z[zeta_n].

One-variable series: a header line, then ``index<TAB>c0,c1,...`` per coefficient.
Two-variable series: the same header, then ``m,n<TAB>c0,c1,...`` per nonzero
coefficient. Coordinates are in the power basis of Z[zeta_n]; zero
coefficients are written out for one-variable series so truncation is explicit.

    # n=3 truncation=50 disc=-23 label=D-23-n3-012
"""
from .exactmath.cyclotomic import Cyc
from .quadratic.optimal import QSeries2


def _coords(v, n):
    if not isinstance(v, Cyc):
        v = Cyc(n, [v])
    if not v.is_integral():
        raise ValueError(f"coefficient {v} is not integral")
    return ",".join(str(c) for c in v.coeffs)


def _parse_coords(s, n):
    return Cyc(n, [int(x) for x in s.split(",")])


def _header(fields):
    return "# " + " ".join(f"{k}={v}" for k, v in fields.items())


def _parse_header(line):
    if not line.startswith("#"):
        raise ValueError("missing fixture header")
    out = {}
    for tok in line[1:].split():
        k, _, v = tok.partition("=")
        out[k] = v
    return out


def dump_series(coeffs, n, disc, label="", extra=None):
    fields = {"n": n, "truncation": len(coeffs) - 1, "disc": disc, "label": label or "-"}
    fields.update(extra or {})
    lines = [_header(fields)]
    lines += [f"{k}\t{_coords(v, n)}" for k, v in enumerate(coeffs)]
    return "\n".join(lines) + "\n"


def load_series(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = _parse_header(lines[0])
    n = int(head["n"])
    out = []
    for ln in lines[1:]:
        idx, coords = ln.split("\t")
        if int(idx) != len(out):
            raise ValueError(f"coefficient index {idx} out of order")
        out.append(_parse_coords(coords, n))
    if len(out) != int(head["truncation"]) + 1:
        raise ValueError("truncation does not match the number of coefficients")
    return head, out


def dump_series2(F, disc):
    fields = {"n": F.n, "truncation": f"{F.bound_m},{F.bound_n}", "disc": disc,
              "label": F.label or "-", "scale": F.scale, "u": f"{F.u[0]},{F.u[1]}"}
    lines = [_header(fields)]
    for (m, k) in sorted(F.a):
        lines.append(f"{m},{k}\t{_coords(F.a[(m, k)], F.n)}")
    return "\n".join(lines) + "\n"


def load_series2(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = _parse_header(lines[0])
    n = int(head["n"])
    bm, bn = (int(x) for x in head["truncation"].split(","))
    u = tuple(int(x) for x in head.get("u", "1,1").split(","))
    label = "" if head.get("label") == "-" else head.get("label", "")
    F = QSeries2(n=n, scale=int(head.get("scale", 1)), bound_m=bm, bound_n=bn, u=u, label=label)
    for ln in lines[1:]:
        key, coords = ln.split("\t")
        m, k = (int(x) for x in key.split(","))
        F[(m, k)] = _parse_coords(coords, n)
    return head, F
