"""Command-line front door: loads model specs, runs analyses, emits documents.

Exit codes: 0 success, 1 refused certificate (or a failed verification),
2 invalid input.  All output documents are JSON with stable field order;
files are written atomically.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction
from typing import Optional

from .acylindricity import acyl_profile, constant_P
from .certifier import (
    Certificate,
    CertificateRefused,
    analyze_pair,
    build_witness_chain,
    chain_base_points,
    nielsen_certify,
    prop6_certify,
    prop7_certify,
    prop8_certify,
    theorem9_certify,
    tree_constants,
    validate_certificate,
)
from .hyperbolicity import compute_delta
from .isometry import classify, overlap_diameter, quasi_axis
from .models import ActionModel, ModelError, Word, build_model, parse_letters
from .oracle import exceptional_sweep, freeness_to_depth


def _write_doc(doc: dict, out: Optional[str]) -> None:
    text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".freecert-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_model(path: str) -> ActionModel:
    with open(path) as fh:
        spec = json.load(fh)
    return build_model(spec)


def _element(model: ActionModel, text: str) -> Word:
    return model.canon(parse_letters(text, model.generator_names))


def _resolve_delta(model: ActionModel, args) -> tuple[int, str]:
    if getattr(args, "delta", None) is not None:
        return args.delta, "config-override"
    if model.known_delta is not None:
        return model.known_delta, "tree-case"
    report = compute_delta(model, radius=getattr(args, "radius", 4), seed=getattr(args, "seed", 0))
    return report.delta, "brute-forced"


def _resolve_constants(model: ActionModel, args) -> dict:
    delta, prov = _resolve_delta(model, args)
    if delta == 0:
        consts = tree_constants()
        consts["delta"] = (0, prov)
        return consts
    profile = acyl_profile(model, [20 * delta, 200 * delta])
    e20, e200 = profile.entries[20 * delta], profile.entries[200 * delta]
    P = constant_P(delta, e200.K_hat)
    tag = "brute-forced" if not profile.exhaustive else "paper-formula"
    return {
        "delta": (delta, prov),
        "P": (P.P, P.provenance if P.provenance != "formula" else tag),
        "K20": (e20.K_hat, tag),
        "L20": (e20.L_hat, tag),
        "K200": (e200.K_hat, tag),
        "L200": (e200.L_hat, tag),
    }


def _parse_range(text: str) -> tuple[range, range]:
    parts = text.split(",")
    if len(parts) == 1:
        parts = [parts[0], parts[0]]
    ranges = []
    for part in parts:
        lo, _, hi = part.partition(":")
        lo_i, hi_i = int(lo), int(hi or lo)
        if hi_i < lo_i:
            raise ModelError(f"empty exponent range {part!r}")
        ranges.append(range(lo_i, hi_i + 1))
    return ranges[0], ranges[1]


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_delta(args) -> int:
    model = _load_model(args.model)
    report = compute_delta(
        model,
        radius=args.radius,
        triple_budget=args.budget,
        seed=args.seed,
    )
    _write_doc({"command": "delta", **report.to_doc()}, args.out)
    return 0


def _cmd_profile(args) -> int:
    model = _load_model(args.model)
    delta, _ = _resolve_delta(model, args)
    g = _element(model, args.a)
    profile = classify(model, g, delta)
    doc = {"command": "profile", "delta": delta, **profile.to_doc()}
    if profile.hyperbolic == "yes":
        axis = quasi_axis(model, g, window=args.window, delta=delta)
        doc["axis"] = {
            "mode": axis.mode,
            "invariance_defect": axis.invariance_defect,
            "length": len(axis.path),
        }
    _write_doc(doc, args.out)
    return 0


def _cmd_overlap(args) -> int:
    model = _load_model(args.model)
    delta, _ = _resolve_delta(model, args)
    a, b = _element(model, args.a), _element(model, args.b)
    axis_a = quasi_axis(model, a, window=args.window, delta=delta)
    axis_b = quasi_axis(model, b, window=args.window, delta=delta)
    c = args.c if args.c is not None else 10 * delta
    report = overlap_diameter(model, axis_a, axis_b, c)
    _write_doc({"command": "overlap", "delta": delta, **report.to_doc()}, args.out)
    return 0


def _cmd_acyl(args) -> int:
    model = _load_model(args.model)
    radii = [int(r) for r in args.radii.split(",")]
    profile = acyl_profile(
        model, radii, region_radius=args.region_radius, group_ball_radius=args.ball_radius
    )
    _write_doc({"command": "acyl", **profile.to_doc()}, args.out)
    return 0


CRITERIA = {
    "nielsen": None,
    "prop6": prop6_certify,
    "prop7": prop7_certify,
    "prop8": prop8_certify,
    "theorem9": theorem9_certify,
    "theorem14": None,
}


def _cmd_certify(args) -> int:
    model = _load_model(args.model)
    constants = _resolve_constants(model, args)
    a, b = _element(model, args.a), _element(model, args.b)
    kwargs = {"window": args.window}
    if args.criterion == "nielsen":
        exps = None
        if args.exponents:
            n, m = args.exponents.split(",")
            exps = (int(n), int(m))
        cert = nielsen_certify(
            model,
            a,
            b,
            constants,
            epsilon_mode=args.epsilon_mode,
            epsilon=Fraction(args.epsilon) if args.epsilon else None,
            exponents=exps,
            oracle_depth=args.depth,
            **kwargs,
        )
    elif args.criterion == "prop6":
        cert = prop6_certify(model, a, b, constants, q=Fraction(args.q), **kwargs)
    elif args.criterion == "theorem9":
        cert = theorem9_certify(model, a, b, constants, **kwargs)
    elif args.criterion == "theorem14":
        cert = theorem9_certify(model, a, b, constants, quasi_mode=True, **kwargs)
    else:
        cert = CRITERIA[args.criterion](model, a, b, constants, **kwargs)

    doc = cert.to_doc()
    code = 0
    if not args.no_verify:
        n = cert.exponents.get("n_min", 1)
        m = cert.exponents.get("m_min", 1)
        report = freeness_to_depth(model, model.power(cert.a, n), model.power(cert.b, m), args.depth)
        doc["verification"] = report.to_doc()
        if report.verdict != "free-to-depth":
            code = 1
    validate_certificate(doc)
    _write_doc(doc, args.out)
    return code


def _cmd_verify(args) -> int:
    with open(args.certificate) as fh:
        doc = json.load(fh)
    validate_certificate(doc)
    model = build_model(doc["model"])
    a = model.canon(doc["elements"]["a"])
    b = model.canon(doc["elements"]["b"])
    n = doc["exponents"].get("n_min", 1)
    m = doc["exponents"].get("m_min", 1)
    report = freeness_to_depth(model, model.power(a, n), model.power(b, m), args.depth)
    _write_doc({"command": "verify", "exponents": {"n": n, "m": m}, **report.to_doc()}, args.out)
    return 0 if report.verdict == "free-to-depth" else 1


def _cmd_sweep(args) -> int:
    model = _load_model(args.model)
    a, b = _element(model, args.a), _element(model, args.b)
    n_range, m_range = _parse_range(args.range)
    table = exceptional_sweep(model, a, b, n_range, m_range, args.depth)
    _write_doc({"command": "sweep", **table.to_doc()}, args.out)
    return 0


def _cmd_chain(args) -> int:
    model = _load_model(args.model)
    constants = _resolve_constants(model, args)
    delta = constants["delta"][0]
    a, b = _element(model, args.a), _element(model, args.b)
    analysis = analyze_pair(model, a, b, delta, window=args.window)
    x, y = chain_base_points(model, analysis.axis_a, analysis.axis_b, analysis.overlap)
    word = parse_letters(args.word, ("a", "b"))
    chain = build_witness_chain(
        model, word, a, b, x, y, Fraction(args.E), args.Q, delta
    )
    _write_doc({"command": "chain", **chain.to_doc()}, args.out)
    return 0 if not chain.failures else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="freecert", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, elements=False):
        p.add_argument("--model", required=True, help="path to a model spec JSON file")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--seed", type=int, default=0)
        if elements:
            p.add_argument("--a", required=True, help="first element word, e.g. \"ab'a\"")
            p.add_argument("--b", required=True, help="second element word")
        p.add_argument("--delta", type=int, default=None, help="override the thinness constant")
        p.add_argument("--window", type=int, default=8)
        p.add_argument("--radius", type=int, default=4)

    p = sub.add_parser("delta", help="compute the thin-triangle constant on a region")
    common(p)
    p.add_argument("--budget", type=int, default=200_000)
    p.set_defaults(func=_cmd_delta)

    p = sub.add_parser("profile", help="translation length and hyperbolicity of one element")
    common(p)
    p.add_argument("--a", required=True)
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("overlap", help="overlap diameter of two axes")
    common(p, elements=True)
    p.add_argument("--c", type=int, default=None, help="overlap radius (default 10*delta)")
    p.set_defaults(func=_cmd_overlap)

    p = sub.add_parser("acyl", help="brute-force acylindricity constants")
    common(p)
    p.add_argument("--radii", default="0", help="comma-separated displacement radii")
    p.add_argument("--region-radius", type=int, default=3)
    p.add_argument("--ball-radius", type=int, default=6)
    p.set_defaults(func=_cmd_acyl)

    p = sub.add_parser("certify", help="emit a freeness certificate")
    common(p, elements=True)
    p.add_argument("--criterion", required=True, choices=sorted(CRITERIA))
    p.add_argument("--epsilon-mode", default="paper-literal", choices=["paper-literal", "sharp-experimental"])
    p.add_argument("--epsilon", default=None, help="sharp-mode epsilon (fraction)")
    p.add_argument("--exponents", default=None, help="sharp-mode explicit exponents, e.g. 1,1")
    p.add_argument("--q", default="2", help="translation length ratio bound (prop6)")
    p.add_argument("--depth", type=int, default=4, help="oracle verification depth")
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("verify", help="re-check a certificate with the word oracle")
    p.add_argument("--certificate", required=True)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sweep", help="exponent grid sweep for relations")
    common(p, elements=True)
    p.add_argument("--range", required=True, help="exponent range, e.g. 1:3 or 1:3,1:5")
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("chain", help="build and check a witness chain")
    common(p, elements=True)
    p.add_argument("--word", required=True, help="word over the letters a, b")
    p.add_argument("--E", required=True, help="three-points constant (fraction)")
    p.add_argument("--Q", required=True, type=int, help="b-block size")
    p.set_defaults(func=_cmd_chain)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except CertificateRefused as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1
    except (ModelError, OSError, json.JSONDecodeError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
