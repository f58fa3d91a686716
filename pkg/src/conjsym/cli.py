"""Command-line interface: ``conjsym {analyze,sample,verify,lattice,shift-demo}``.

All numeric output is JSON (stdout or ``--out``); a short human summary goes
to stderr.  Exit codes: 0 success/member, 1 negative verdict, 2 parse error,
3 not unitary, 4 residual failure, 5 too many clusters, 6 bad parameters.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .antilinear import (
    Conjugation,
    antilinear_to_dict,
    compose,
    conjugation_from_dict,
    csymmetric_residual,
    involution_defect,
    is_conjugation,
    isometry_defect,
)
from .conjfamily import (
    blocks_to_json,
    canonical_member,
    commutant_conditions,
    extract_blocks,
    factor_unitary,
    parametrize,
    sample_member,
)
from .errors import (
    ClusteringUnstable,
    NotMember,
    NotSymmetricUnitary,
    NotUnitary,
    ParseError,
    TooManyClusters,
)
from .hyperinv import MAX_AUDIT_CLUSTERS, equivalence_audit
from .linalg import UNITARY_GATE, check_unitary, fro, load_matrix, matrix_to_dict
from .shiftmodels import (
    PowerShiftModel,
    conjugation_from_phi,
    constant_phase_symbol,
    flip_example,
    intertwine_check,
    lambda_drift_symbol,
    phi_residuals,
    sincos_symbol,
    unimodular_symbol,
    wold_check,
    z2_identity_residuals,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_NOT_UNITARY = 3
EXIT_RESIDUAL = 4
EXIT_SIZE = 5
EXIT_PARAMS = 6

SEED_ENV = "CONJSYM_SEED"


@dataclass
class Config:
    cluster_tol: float = 1e-8
    residual_tol: float = 1e-9
    seed: int = 0
    output: str | None = None

    def __post_init__(self):
        if not (self.cluster_tol > 0 and self.residual_tol > 0):
            raise ValueError("tolerances must be positive")


class CliExit(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CliExit(EXIT_PARAMS, f"{SEED_ENV}={raw!r} is not an integer")


def _config(args) -> Config:
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        return Config(args.cluster_tol, args.tol, seed, args.out)
    except ValueError as exc:
        raise CliExit(EXIT_PARAMS, str(exc))


def _info(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit(report: dict, cfg: Config, path: str | None = None) -> None:
    text = json.dumps(report, indent=2) + "\n"
    target = path if path is not None else cfg.output
    if target is None:
        sys.stdout.write(text)
    else:
        Path(target).write_text(text)


def _load_unitary(path: str) -> np.ndarray:
    u = load_matrix(path)
    if u.shape[0] != u.shape[1]:
        raise CliExit(EXIT_PARSE, f"{path}: matrix is {u.shape[0]}x{u.shape[1]}, expected square")
    rep = check_unitary(u, UNITARY_GATE)
    if not rep.is_unitary:
        raise NotUnitary(rep.residual)
    return u


def _parametrize(u, cfg: Config):
    try:
        return parametrize(u, cfg.cluster_tol)
    except ClusteringUnstable as exc:
        raise CliExit(EXIT_PARAMS, f"{exc}; retry with a different --cluster-tol")


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    cfg = _config(args)
    u = _load_unitary(args.input)
    p = _parametrize(u, cfg)
    j1 = canonical_member(p)
    j1f, j2 = factor_unitary(u, cfg.cluster_tol)
    product = compose(j1f, j2)
    residuals = {
        "canonical_csymmetric": csymmetric_residual(u, j1),
        "factor_product": fro(product - u),
        "j1_csymmetric": csymmetric_residual(u, j1f),
        "j2_csymmetric": csymmetric_residual(u, j2),
        "j2_involution": involution_defect(j2),
    }
    report = {
        "config": asdict(cfg),
        "input": str(args.input),
        "spectrum": p.to_dict(),
        "block_families": [
            {"cluster": j, "dim": k, "family": "symmetric unitary", "real_parameters": k * (k + 1) // 2}
            for j, k in enumerate(p.block_dims)
        ],
        "canonical_member": antilinear_to_dict(j1),
        "factorization": {"j1": antilinear_to_dict(j1f), "j2": antilinear_to_dict(j2)},
        "residuals": residuals,
    }
    _emit(report, cfg)
    _info(f"n={p.n} d={p.dec.d} multiplicities={list(p.block_dims)}")
    if max(residuals.values()) > cfg.residual_tol:
        _info("residual check failed")
        return EXIT_RESIDUAL
    return EXIT_OK


def cmd_sample(args) -> int:
    cfg = _config(args)
    if args.count < 0:
        raise CliExit(EXIT_PARAMS, "--count must be non-negative")
    u = _load_unitary(args.input)
    p = _parametrize(u, cfg)
    rng = np.random.default_rng(cfg.seed)
    out_dir = Path(args.out) if args.out else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    members = []
    for k in range(args.count):
        c = sample_member(p, rng)
        row = {
            "index": k,
            "csymmetric": csymmetric_residual(u, c),
            "involution": involution_defect(c),
            "isometry": isometry_defect(c),
        }
        rows.append(row)
        if out_dir is not None:
            name = f"member_{k:04d}.json"
            (out_dir / name).write_text(json.dumps(antilinear_to_dict(c)) + "\n")
            row["file"] = name
        else:
            members.append(antilinear_to_dict(c))
    worst = max((max(r["csymmetric"], r["involution"]) for r in rows), default=0.0)
    report = {"config": asdict(cfg), "input": str(args.input), "count": args.count, "residuals": rows,
              "max_residual": worst, "pass": worst <= cfg.residual_tol}
    if out_dir is None:
        report["members"] = members
        _emit(report, cfg, path=None)
    else:
        (out_dir / "residuals.json").write_text(json.dumps(report, indent=2) + "\n")
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    _info(f"sampled {args.count} members, max residual {worst:.3e}")
    return EXIT_OK if worst <= cfg.residual_tol else EXIT_RESIDUAL


def cmd_verify(args) -> int:
    cfg = _config(args)
    u = _load_unitary(args.unitary)
    try:
        obj = json.loads(Path(args.conjugation).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(str(exc))
    if obj.get("kind") != "antilinear":
        raise ParseError('conjugation file needs "kind": "antilinear"')
    raw = conjugation_from_dict(obj, tol=math.inf)
    if raw.n != u.shape[0]:
        raise CliExit(EXIT_PARSE, f"conjugation of size {raw.n} vs unitary of size {u.shape[0]}")
    conj = is_conjugation(raw, cfg.residual_tol)
    report = {
        "config": asdict(cfg),
        "is_conjugation": conj.is_conjugation,
        "conjugation_residuals": {
            "unitary": conj.unitary_residual,
            "symmetry": conj.symmetry_residual,
            "involution": conj.involution_residual,
        },
        "csymmetric_residual": csymmetric_residual(u, raw),
    }
    member = False
    if conj.is_conjugation:
        c = Conjugation(raw.a, tol=cfg.residual_tol)
        p = _parametrize(u, cfg)
        cc = commutant_conditions(u, c, tol=cfg.residual_tol)
        report["commutant_conditions"] = asdict(cc)
        try:
            blocks = extract_blocks(p, c, cfg.residual_tol)
            report["blocks"] = blocks_to_json(blocks)
            report["block_dims"] = list(p.block_dims)
            member = True
        except NotMember as exc:
            report["not_member"] = {
                "off_block_mass": exc.off_block_mass,
                "off_block_frobenius": exc.off_block_frobenius,
            }
    report["member"] = member
    _emit(report, cfg)
    if member:
        _info("member")
    elif not conj.is_conjugation:
        _info("not a conjugation")
    else:
        _info(f"non-member: off-block mass {report['not_member']['off_block_mass']:.3e}")
    return EXIT_OK if member else EXIT_NEGATIVE


def cmd_lattice(args) -> int:
    cfg = _config(args)
    u = _load_unitary(args.input)
    p = _parametrize(u, cfg)
    if p.dec.d > MAX_AUDIT_CLUSTERS:
        raise TooManyClusters(p.dec.d, MAX_AUDIT_CLUSTERS)
    audit = equivalence_audit(p, samples=args.samples, seed=cfg.seed, member_samples=args.member_samples)
    report = {"config": asdict(cfg), "input": str(args.input), **audit.to_dict()}
    _emit(report, cfg)
    s = report["summary"]
    _info(
        f"lattice of {report['lattice_size']} subspaces pass={s['lattice_pass']}; "
        f"{s['witnesses_found']} witnesses, {s['inconclusive']} inconclusive"
    )
    return EXIT_OK if audit.passed else EXIT_NEGATIVE


SHIFT_FAMILIES = ("constant-phase", "unimodular", "sincos", "lambda-drift")


def _family_symbol(name: str, model: PowerShiftModel, args, rng):
    if name == "constant-phase":
        return constant_phase_symbol(model, args.theta)
    if name == "unimodular":
        return unimodular_symbol(model, rng.uniform(-math.pi, math.pi, model.n))
    if name == "sincos":
        return sincos_symbol(model)
    return lambda_drift_symbol(model, args.s, args.lam)


def cmd_shift_demo(args) -> int:
    cfg = _config(args)
    if args.n < 2 or args.N < 1:
        raise CliExit(EXIT_PARAMS, "need n >= 2 and N >= 1")
    families = SHIFT_FAMILIES if args.family == "all" else (args.family,)
    for name in families:
        if name in ("sincos", "lambda-drift") and args.N != 2:
            if args.family == "all":
                continue
            raise CliExit(EXIT_PARAMS, f"family {name!r} needs N = 2")
        if name == "unimodular" and args.N != 1:
            if args.family == "all":
                continue
            raise CliExit(EXIT_PARAMS, "family 'unimodular' needs N = 1")
        if name == "lambda-drift" and not 0 <= args.s <= 1:
            raise CliExit(EXIT_PARAMS, "--s must lie in [0, 1]")
    model = PowerShiftModel(args.n, args.N)
    rng = np.random.default_rng(cfg.seed)
    f = rng.standard_normal(model.size) + 1j * rng.standard_normal(model.size)
    wold = wold_check(model, f)
    p = parametrize(model.u, cfg.cluster_tol)
    report = {
        "config": asdict(cfg),
        "grid": {"n": model.n, "N": model.N, "size": model.size},
        "wold": {"round_trip": wold.round_trip, "parseval": wold.parseval},
        "intertwine_residual": intertwine_check(model),
        "family_real_dimension": {
            "per_grid_point": model.N * (model.N + 1) // 2,
            "total": model.n * model.N * (model.N + 1) // 2,
        },
        "families": {},
    }
    worst = max(wold.round_trip, wold.parseval, report["intertwine_residual"])
    for name in families:
        if name in ("sincos", "lambda-drift") and args.N != 2:
            continue
        if name == "unimodular" and args.N != 1:
            continue
        phi = _family_symbol(name, model, args, rng)
        res = phi_residuals(model, phi, cfg.seed).as_dict()
        c = conjugation_from_phi(model, phi)
        blocks = extract_blocks(p, c, cfg.residual_tol)
        entry = {"residuals": res, "extracted_blocks": len(blocks), "block_dim": model.N}
        if model.N == 2:
            entry["z2_identities"] = z2_identity_residuals(phi)
        report["families"][name] = entry
        worst = max(worst, res["max"])
    half = list(range(max(1, args.n // 2)))
    flip = flip_example(args.n, half)
    report["flip"] = flip.as_dict()
    worst = max(worst, flip.csymmetric_residual)
    report["max_residual"] = worst
    _emit(report, cfg)
    _info(f"grid {model.size} (n={model.n}, N={model.N}); max residual {worst:.3e}")
    return EXIT_OK if worst <= cfg.residual_tol else EXIT_RESIDUAL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="residual tolerance (default 1e-9)")
    common.add_argument("--cluster-tol", type=float, default=1e-8, help="eigenvalue clustering tolerance (default 1e-8)")
    common.add_argument(
        "--seed", type=int, default=None, help=f"RNG seed (default 0, or ${SEED_ENV} when set)"
    )
    common.add_argument("--out", default=None, help="output path (sample: directory); default stdout")

    parser = argparse.ArgumentParser(
        prog="conjsym",
        description="Conjugations C with C U C = U* for unitary matrices, and the hyperinvariant lattice.",
        epilog="Exit codes: 0 ok/member, 1 negative verdict, 2 parse, 3 not unitary, "
        "4 residual failure, 5 too many clusters, 6 bad parameters.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="spectrum, family parametrization, U = J1 J2")
    p.add_argument("input", help="unitary matrix JSON file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sample", parents=[common], help="sample members of the family")
    p.add_argument("input", help="unitary matrix JSON file")
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", parents=[common], help="check whether a conjugation is a member")
    p.add_argument("unitary", help="unitary matrix JSON file")
    p.add_argument("conjugation", help='conjugation JSON file ("kind": "antilinear")')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lattice", parents=[common], help="hyperinvariant lattice equivalence audit")
    p.add_argument("input", help="unitary matrix JSON file")
    p.add_argument("--samples", type=int, default=20, help="random non-lattice subspaces to test")
    p.add_argument("--member-samples", type=int, default=50, help="random members per invariance test")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("shift-demo", parents=[common], help="discrete bilateral shift M_{z^N} report")
    p.add_argument("--n", type=int, default=16, help="base grid size")
    p.add_argument("--N", type=int, default=2, help="symbol power")
    p.add_argument("--family", choices=SHIFT_FAMILIES + ("all",), default="all")
    p.add_argument("--theta", type=float, default=0.0, help="constant-phase angle")
    p.add_argument("--s", type=float, default=0.6, help="lambda-drift modulus s")
    p.add_argument("--lam", type=float, default=1.5, help="lambda-drift rate")
    p.set_defaults(func=cmd_shift_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliExit as exc:
        _info(f"error: {exc}")
        return exc.code
    except ParseError as exc:
        _info(f"parse error: {exc}")
        return EXIT_PARSE
    except NotUnitary as exc:
        _info(f"not unitary: residual {exc.residual:.3e}")
        return EXIT_NOT_UNITARY
    except NotSymmetricUnitary as exc:
        _info(f"not a conjugation: {exc}")
        return EXIT_NEGATIVE
    except TooManyClusters as exc:
        _info(f"too many clusters: {exc}")
        return EXIT_SIZE


if __name__ == "__main__":
    sys.exit(main())
