"""JSON dump of an elliptic unit packet: decimal-string complex values and rounded polynomials."""
import json

import mpmath

from ..quadratic.forms import QuadOrder
from .elliptic import EllipticUnitPacket


def _cstr(z, digits):
    return [mpmath.nstr(mpmath.re(z), digits), mpmath.nstr(mpmath.im(z), digits)]


def packet_to_json(pkt, digits=None):
    digits = digits or max(15, int(pkt.prec * 0.30103) - 5)
    with mpmath.workprec(pkt.prec):
        doc = {
            "disc_K": pkt.order.disc_K,
            "c": pkt.order.c,
            "lambda": pkt.lam,
            "frakl": list(pkt.frakl),
            "frakl_label": f"({pkt.frakl[0]}, {pkt.frakl[1]}, {pkt.frakl[2]})",
            "prec": pkt.prec,
            "conj_values": [_cstr(v, digits) for v in pkt.conj_values],
            "minpoly_K": [list(c) for c in pkt.minpoly_K],
            "minpoly_Q": pkt.minpoly_Q,
            "defect": mpmath.nstr(pkt.defect, 6),
        }
    return json.dumps(doc, indent=1)


def packet_from_json(text):
    doc = json.loads(text)
    prec = doc["prec"]
    with mpmath.workprec(prec):
        vals = [mpmath.mpc(mpmath.mpf(re), mpmath.mpf(im)) for re, im in doc["conj_values"]]
        defect = mpmath.mpf(doc["defect"])
    return EllipticUnitPacket(QuadOrder(doc["disc_K"], doc["c"]), doc["lambda"], tuple(doc["frakl"]),
                              vals, prec, [tuple(c) for c in doc["minpoly_K"]], doc["minpoly_Q"], defect)
