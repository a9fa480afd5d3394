"""Command line entry point: hvdihedral verify|properties|dump ..."""
import argparse
import sys
from pathlib import Path

from ..exactmath.modular import ConfigurationError
from ..quadratic.characters import TrivialCharacterError
from .config import load_config, set_disc

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _primes(s):
    return [int(x) for x in s.replace(",", " ").split()]


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH")
    common.add_argument("--disc", type=int, help="fundamental discriminant, or the order discriminant without --cond")
    common.add_argument("--cond", type=int)
    common.add_argument("--xi-order", type=int, dest="xi_order")
    common.add_argument("--xi-index", type=int, dest="xi_index")
    common.add_argument("--p", type=_primes, help="prime list (opt-unique) or the prime p (main-identity, dump)")
    common.add_argument("--ell", type=int)
    common.add_argument("--t", type=int)
    common.add_argument("--bound", type=int)
    common.add_argument("--prec", type=int)
    common.add_argument("--lambdas", type=_primes)
    common.add_argument("--log-convention", dest="log_convention", choices=["norm", "compatible"])
    common.add_argument("--json", metavar="OUT", help="write the JSON report (and PNG figures next to it)")

    ap = argparse.ArgumentParser(prog="hvdihedral", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)
    v = sub.add_parser("verify", parents=[common], help="verify a main identity")
    v.add_argument("what", choices=["opt-unique", "main-identity"])
    sub.add_parser("properties", parents=[common], help="run the invariant suites")
    d = sub.add_parser("dump", parents=[common], help="export Brandt matrices or unit packets")
    d.add_argument("what", choices=["brandt", "units"])
    return ap


def _config(args):
    over = {k: getattr(args, k, None) for k in ("xi_order", "xi_index", "ell", "t", "bound", "prec",
                                              "lambdas", "log_convention")}
    cfg = load_config(args.config, over)
    if args.disc is not None:
        set_disc(cfg, args.disc, args.cond)
    elif args.cond is not None:
        cfg.c = args.cond
    if args.p:
        cfg.primes = args.p
        cfg.p = args.p[0]
    return cfg


def _finish(rep, args):
    print(rep.summary())
    if args.json:
        figs = rep.write(args.json)
        for f in figs:
            print(f"figure: {f}")
    return EXIT_PASS if rep.verdict == "pass" else EXIT_FAIL


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _config(args)
        return _dispatch(args, cfg)
    except (ConfigurationError, TrivialCharacterError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG


def _dispatch(args, cfg):
    from . import pipelines

    if args.cmd == "verify":
        fn = pipelines.verify_opt_unique if args.what == "opt-unique" else pipelines.verify_main_identity
        return _finish(fn(cfg), args)
    if args.cmd == "properties":
        return _finish(pipelines.run_property_suite(cfg), args)
    if args.what == "brandt":
        return _dump_brandt(cfg, args)
    return _dump_units(cfg, args)


def _dump_brandt(cfg, args):
    import json

    from ..quaternion import brandt, brandt_csv
    from .pipelines import classes_for
    from .report import matrix_plot, render_png

    C = classes_for(cfg.p)
    n = args.bound or 2
    text = brandt_csv(C, n)
    if args.json:
        out = Path(args.json)
        out.parent.mkdir(parents=True, exist_ok=True)
        doc = {"p": C.p, "n": n, "H": C.H, "weights": C.weights, "matrix": brandt(C, n)}
        out.write_text(json.dumps(doc, indent=1))
        out.with_suffix(".csv").write_text(text)
        print(render_png(matrix_plot(brandt(C, n), f"B({n}), p = {C.p}"), out.with_name(f"{out.stem}_brandt.png")))
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def _dump_units(cfg, args):
    from ..quadratic import QuadOrder
    from ..units import elliptic_unit_conjugates, packet_to_json
    from .pipelines import admissible_lambdas, character_for

    order, _, xi = character_for(cfg)
    lams = cfg.lambdas or admissible_lambdas(order, xi, {cfg.p}, count=1)
    if not lams:
        raise ConfigurationError("no admissible lambda")
    pkt = elliptic_unit_conjugates(QuadOrder(cfg.disc_K, cfg.c), lams[0], prec=cfg.prec or None)
    text = packet_to_json(pkt)
    if args.json:
        Path(args.json).write_text(text)
    else:
        print(text)
    return EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
