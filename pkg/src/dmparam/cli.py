"""Command-line interface.

Subcommands::

    dmparam generate  params.json -o rho.json [--format json|matrix_text]
    dmparam analyze   rho.json --n 2 --m 2
    dmparam reproduce {pure_P,isotropic_threshold,circulant_pi12,bell_boundary,
                       toeplitz_demo,hankel_demo,class3_projector,all}
    dmparam sweep     --family isotropic_alpha --grid p=0:1:50
                      --grid alpha=0:1.5707963267948966:50 -o sweep.csv
    dmparam validate  --seed 42 --trials 100

Exit codes: 0 ok, 2 input error, 3 numerical failure, 4 not a state,
5 check mismatch.  All floating-point output uses 17 significant digits and
is a deterministic function of the inputs (and ``--seed`` where relevant).
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

import numpy as np

from . import _random as rnd
from .blocks import BlockParams, assemble_rho_block
from .entanglement import (
    BOUNDARY_BAND,
    PptReport,
    circulant_ppt_margins,
    detect_structure,
    ppt_check,
)
from .errors import (
    ConvergenceFailureError,
    DmParamError,
    NotPsdError,
    SingularAngleError,
)
from .families import (
    FamilySpec,
    bell_diagonal,
    build_family,
    circulant_rho,
    class3_state,
    hankel_state,
    isotropic,
    nonabelian_sphere_check,
    pure_P,
    toeplitz_state,
)
from .io import ParamFileError, fmt_float, load_param_file, read_matrix, write_matrix
from .linalg import DEFAULT_TOL, Tolerances, polar
from .single import SingleParams, assemble_rho_single
from .states import DensityMatrix
from .validate import run_validation, serialize_counterexample

__all__ = ["main", "StateReport"]

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_NOT_A_STATE = 4
EXIT_MISMATCH = 5

_TRACE_TOL = 1e-10


@dataclass(frozen=True)
class StateReport:
    """Analysis summary printed by ``dmparam analyze``."""

    dims: tuple
    eigenvalues: np.ndarray
    purity: float
    rank: int
    ppt: PptReport
    structure: str | None

    def lines(self):
        n, m = self.dims
        out = [
            f"dims          ({n}, {m})",
            "eigenvalues   " + " ".join(fmt_float(w) for w in self.eigenvalues),
            f"purity        {fmt_float(self.purity)}",
            f"rank          {self.rank}",
            f"ppt           {'true' if self.ppt.is_ppt else 'false'}",
            f"min_pt_eig    {fmt_float(self.ppt.min_pt_eig)}",
            f"pt_subsystem  {self.ppt.subsystem}",
        ]
        if self.structure is not None:
            out.append(f"structure     {self.structure}")
        return out


def _tolerances(args) -> Tolerances:
    return Tolerances(tol_herm=args.tol_herm, tol_psd=args.tol_psd)


def cmd_generate(args, tol) -> int:
    if args.output is None:
        print("generate: --output is required", file=sys.stderr)
        return EXIT_INPUT
    params = load_param_file(args.input)
    if isinstance(params, SingleParams):
        rho = assemble_rho_single(params, tol)
    elif isinstance(params, BlockParams):
        rho = assemble_rho_block(params, tol)
    elif isinstance(params, FamilySpec):
        rho = build_family(params, tol)
    else:  # pragma: no cover
        raise ParamFileError(f"unsupported parameter object {type(params)!r}")
    write_matrix(args.output, rho.mat, args.format, rho.n, rho.m)
    print(f"wrote {rho.n * rho.m}x{rho.n * rho.m} state (n={rho.n}, m={rho.m}) to {args.output}")
    return EXIT_OK


def cmd_analyze(args, tol) -> int:
    mat, file_n, file_m = read_matrix(args.input)
    n = args.n if args.n is not None else file_n
    m = args.m if args.m is not None else file_m
    if n is None or m is None:
        print("analyze: dims unknown; pass --n and --m", file=sys.stderr)
        return EXIT_INPUT
    n, m = int(n), int(m)
    if mat.shape != (n * m, n * m):
        print(
            f"analyze: matrix shape {mat.shape} does not match n*m = {n * m}",
            file=sys.stderr,
        )
        return EXIT_INPUT

    herm_dev = float(np.linalg.norm(mat - mat.conj().T))
    scale = max(float(np.linalg.norm(mat)), 1.0)
    trace_dev = abs(complex(np.trace(mat)) - 1.0)
    sym = (mat + mat.conj().T) / 2.0
    eigs = np.linalg.eigvalsh(sym)
    problems = []
    if herm_dev > tol.tol_herm * scale:
        problems.append(f"hermiticity deviation {herm_dev:.3e}")
    if trace_dev > _TRACE_TOL:
        problems.append(f"trace deviates from 1 by {trace_dev:.3e}")
    if eigs[0] < -tol.tol_psd:
        problems.append(f"negative eigenvalue {eigs[0]:.3e}")

    ppt = ppt_check(sym, tol, dims=(n, m))
    structure = None
    purity = float(np.sum(eigs**2))
    rank = int(np.count_nonzero(eigs > tol.tol_psd))
    if not problems and n == 2:
        structure = detect_structure(DensityMatrix(n, m, sym, tol))
    report = StateReport(
        dims=(n, m), eigenvalues=eigs, purity=purity, rank=rank, ppt=ppt,
        structure=structure,
    )
    print("state report")
    for line in report.lines():
        print("  " + line)
    if problems:
        print("not a state:")
        for issue in problems:
            print("  - " + issue)
        return EXIT_NOT_A_STATE
    return EXIT_OK


class _Reproducer:
    """Worked-example checks: prints expected vs computed, collects failures."""

    def __init__(self, tol, seed):
        self.tol = tol
        self.seed = seed
        self.failed = []

    def check(self, name, expected, computed, tolerance):
        ok = abs(expected - computed) <= tolerance
        status = "ok" if ok else "MISMATCH"
        print(
            f"  {name}: expected {fmt_float(expected)}  computed {fmt_float(computed)}"
            f"  [{status}]"
        )
        if not ok:
            self.failed.append(name)

    def check_flag(self, name, expected, computed):
        ok = bool(expected) == bool(computed)
        status = "ok" if ok else "MISMATCH"
        print(f"  {name}: expected {expected}  computed {computed}  [{status}]")
        if not ok:
            self.failed.append(name)

    # -- individual examples -------------------------------------------------

    def pure_P(self):
        print("pure_P: rank-1 projector family")
        rho = pure_P(np.pi / 4, self.tol)
        expected = np.zeros((4, 4))
        expected[0, 0] = expected[3, 3] = expected[0, 3] = expected[3, 0] = 0.5
        self.check(
            "matrix at alpha=pi/4", 0.0,
            float(np.max(np.abs(rho.mat - expected))), 1e-12,
        )
        self.check(
            "idempotence", 0.0,
            float(np.linalg.norm(rho.mat @ rho.mat - rho.mat)), 1e-12,
        )
        self.check(
            "min PT eigenvalue", -0.5,
            ppt_check(rho, self.tol).min_pt_eig, 1e-10,
        )

    def isotropic_threshold(self):
        print("isotropic_threshold: PPT boundary at p = 1/3")
        for p in (0.0, 0.2, 1.0 / 3.0, 0.7, 1.0):
            got = ppt_check(isotropic(p, self.tol), self.tol).min_pt_eig
            self.check(f"min PT eig at p={p:g}", (1.0 - 3.0 * p) / 4.0, got, 1e-12)
        below = ppt_check(isotropic(1.0 / 3.0 - 1e-10, self.tol), self.tol).min_pt_eig
        above = ppt_check(isotropic(1.0 / 3.0 + 1e-10, self.tol), self.tol).min_pt_eig
        self.check_flag("sign(min PT) at p = 1/3 - 1e-10 is +", True, below > 0)
        self.check_flag("sign(min PT) at p = 1/3 + 1e-10 is -", True, above < 0)

    def circulant_pi12(self):
        print("circulant_pi12: separable window in alpha at the worked point")
        p = (0.125, 0.125, 0.125, 0.625)
        beta = np.pi / 3
        lo = ppt_check(circulant_rho(p, np.pi / 12 - 1e-6, beta, self.tol), self.tol)
        hi = ppt_check(circulant_rho(p, np.pi / 12 + 1e-3, beta, self.tol), self.tol)
        self.check_flag("PPT at alpha = pi/12 - 1e-6", True, lo.is_ppt)
        self.check_flag("PPT at alpha = pi/12 + 1e-3", False, hi.is_ppt)
        for beta in np.linspace(0.0, np.pi / 2, 7):
            rep = ppt_check(circulant_rho(p, np.pi / 12, beta, self.tol), self.tol)
            self.check_flag(f"PPT at alpha = pi/12, beta = {beta:.3f}", True, rep.is_ppt)

    def bell_boundary(self):
        print("bell_boundary: PPT iff max_k p_k <= 1/2")
        rho = bell_diagonal((0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6), self.tol)
        self.check("min PT eig at max p = 1/2", 0.0, ppt_check(rho, self.tol).min_pt_eig, 1e-12)
        rho = bell_diagonal((0.55, 0.15, 0.15, 0.15), self.tol)
        self.check("min PT eig at max p = 0.55", -0.05, ppt_check(rho, self.tol).min_pt_eig, 1e-12)
        rng = np.random.default_rng(self.seed)
        mismatch = 0
        for _ in range(50):
            p = rnd.rand_simplex(rng, 4)
            law = max(p) <= 0.5
            if law != ppt_check(bell_diagonal(p, self.tol), self.tol).is_ppt:
                mismatch += 1
        self.check("law mismatches over 50 draws", 0.0, float(mismatch), 0.0)

    def toeplitz_demo(self):
        print("toeplitz_demo: commuting-family block Toeplitz state")
        rng = np.random.default_rng(self.seed)
        L = rnd.rand_psd(rng, 3)
        L /= 2.0 * np.trace(L).real
        U = np.exp(1j * rng.uniform(0, 2 * np.pi)) * np.eye(3)
        rho = toeplitz_state(L, U, rnd.rand_psd(rng, 3), self.tol)
        self.check_flag("classified block_toeplitz", True,
                        detect_structure(rho) == "block_toeplitz")
        rep = ppt_check(rho, self.tol)
        self.check_flag(f"PPT (min PT eig {fmt_float(rep.min_pt_eig)})", True, rep.is_ppt)

    def hankel_demo(self):
        print("hankel_demo: commuting-family block Hankel state")
        rng = np.random.default_rng(self.seed)
        W = rnd.rand_unitary(rng, 3)
        d1 = rng.uniform(0.1, 1.0, 3)
        d2 = rng.uniform(0.1, 1.0, 3)
        total = d1.sum() + d2.sum()
        L1 = (W * (d1 / total)) @ W.conj().T
        L2 = (W * (d2 / total)) @ W.conj().T
        Xi = (W * rng.uniform(0.2, 1.2, 3)) @ W.conj().T
        U = (W * np.array([1.0, -1.0, 1.0])) @ W.conj().T
        rho = hankel_state(U, L1, L2, Xi, self.tol)
        self.check_flag("classified block_hankel", True,
                        detect_structure(rho) == "block_hankel")
        rep = ppt_check(rho, self.tol)
        self.check_flag(f"PPT (min PT eig {fmt_float(rep.min_pt_eig)})", True, rep.is_ppt)

    def class3_projector(self):
        print("class3_projector: conjugated rank-m core is a projector")
        rng = np.random.default_rng(self.seed)
        n, m = 3, 2
        Zs = rnd.rand_commuting_normal_blocks(rng, n - 1, m)
        rho = class3_state(n, m, Zs, self.tol)
        mr = m * rho.mat
        self.check("idempotence residual", 0.0, float(np.linalg.norm(mr @ mr - mr)), 1e-10)
        self.check("rank", float(m), float(rho.rank(self.tol)), 0.0)
        from .blocks import normalize_blocks

        Ps = [polar(Zt, self.tol)[0] for Zt in normalize_blocks(Zs, self.tol)]
        self.check_flag("nonabelian sphere", True, nonabelian_sphere_check(Ps, self.tol))


_EXAMPLES = (
    "pure_P",
    "isotropic_threshold",
    "circulant_pi12",
    "bell_boundary",
    "toeplitz_demo",
    "hankel_demo",
    "class3_projector",
)


def cmd_reproduce(args, tol) -> int:
    names = _EXAMPLES if args.example == "all" else (args.example,)
    rep = _Reproducer(tol, args.seed)
    for name in names:
        getattr(rep, name)()
    if rep.failed:
        print(f"FAILED checks: {', '.join(rep.failed)}")
        return EXIT_MISMATCH
    print("all reproduction checks passed")
    return EXIT_OK


# -- sweep ------------------------------------------------------------------

_SWEEP_AXES = {
    "pure_P": ("alpha",),
    "isotropic": ("p",),
    "isotropic_alpha": ("p", "alpha"),
    "circulant": ("alpha", "beta"),
    "bell_diagonal": ("p1", "p2", "p3"),
}


def _parse_grid(spec):
    try:
        name, rest = spec.split("=", 1)
        lo, hi, count = rest.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError as exc:
        raise ParamFileError(f"bad grid spec {spec!r}: expected name=lo:hi:count") from exc
    if count < 1:
        raise ParamFileError(f"bad grid spec {spec!r}: count must be >= 1")
    return name, np.linspace(lo, hi, count)


def _parse_fixed(items):
    fixed = {}
    for item in items:
        try:
            key, value = item.split("=", 1)
        except ValueError as exc:
            raise ParamFileError(f"bad --set {item!r}: expected key=value") from exc
        parts = value.split(",")
        fixed[key] = float(parts[0]) if len(parts) == 1 else [float(v) for v in parts]
    return fixed


def _sweep_state(family, point, tol):
    if family == "pure_P":
        return pure_P(point["alpha"], tol)
    if family == "isotropic":
        return isotropic(point["p"], tol)
    if family == "isotropic_alpha":
        return build_family(
            FamilySpec("isotropic_alpha", {"p": point["p"], "alpha": point["alpha"]}), tol
        )
    if family == "circulant":
        return circulant_rho(point["p"], point["alpha"], point["beta"], tol)
    if family == "bell_diagonal":
        return bell_diagonal(point["p"], tol)
    raise ParamFileError(f"sweep does not support family {family!r}")


def _sweep_margin(family, point):
    """Analytic PPT margin (sign = verdict) or None when unavailable."""
    if family == "pure_P":
        s, c = np.sin(point["alpha"]), np.cos(point["alpha"])
        return -abs(s * c)
    if family == "isotropic":
        p = point["p"]
        return min((1.0 - 3.0 * p) / 4.0, (1.0 + p) / 4.0)
    if family == "isotropic_alpha":
        p, alpha = point["p"], point["alpha"]
        s, c = np.sin(alpha), np.cos(alpha)
        base = (1.0 - p) / 4.0
        return min(base + p * s * s, base + p * c * c, base + p * s * c, base - p * s * c)
    if family == "circulant":
        return min(*circulant_ppt_margins(point["p"], point["alpha"], point["beta"]))
    if family == "bell_diagonal":
        return 0.5 - max(point["p"])
    return None


def cmd_sweep(args, tol) -> int:
    if args.output is None:
        print("sweep: --output is required", file=sys.stderr)
        return EXIT_INPUT
    family = args.family
    if family not in _SWEEP_AXES:
        print(
            f"sweep: unknown family {family!r}; supported: {sorted(_SWEEP_AXES)}",
            file=sys.stderr,
        )
        return EXIT_INPUT
    axes = [_parse_grid(spec) for spec in args.grid]
    fixed = _parse_fixed(args.set or [])
    for name, _ in axes:
        if name not in _SWEEP_AXES[family]:
            raise ParamFileError(
                f"axis {name!r} is not a parameter of {family!r}; "
                f"expected one of {_SWEEP_AXES[family]}"
            )

    header = [name for name, _ in axes] + [
        "min_pt_eig", "analytic_margin", "analytic_ppt", "numeric_ppt", "agreement",
    ]
    rows = []
    grids = np.meshgrid(*[vals for _, vals in axes], indexing="ij")
    coords = np.stack([g.reshape(-1) for g in grids], axis=-1) if axes else np.zeros((1, 0))
    for coord in coords:
        point = dict(fixed)
        point.update({name: float(v) for (name, _), v in zip(axes, coord)})
        if family == "bell_diagonal":
            p123 = [point.get(k, 0.0) for k in ("p1", "p2", "p3")]
            point["p"] = p123 + [1.0 - sum(p123)]
        rho = _sweep_state(family, point, tol)
        numeric = ppt_check(rho, tol)
        margin = _sweep_margin(family, point)
        row = [fmt_float(v) for v in coord] + [fmt_float(numeric.min_pt_eig)]
        if margin is None:
            row += ["", "", str(numeric.is_ppt).lower(), ""]
        else:
            analytic_ppt = margin >= 0.0
            if abs(margin) < BOUNDARY_BAND:
                agreement = "boundary"
            else:
                agreement = "true" if analytic_ppt == numeric.is_ppt else "false"
            row += [
                fmt_float(margin),
                str(analytic_ppt).lower(),
                str(numeric.is_ppt).lower(),
                agreement,
            ]
        rows.append(row)

    with open(args.output, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.output}")
    return EXIT_OK


def cmd_validate(args, tol) -> int:
    if args.trials < 1:
        print(f"validate: trials must be >= 1, got {args.trials}", file=sys.stderr)
        return EXIT_INPUT
    results = run_validation(args.seed, args.trials, tol)
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.ok]
    if failed:
        print("first counterexample:")
        print(serialize_counterexample(failed[0]))
        return EXIT_MISMATCH
    print(f"all {len(results)} invariant families passed ({args.trials} trials each)")
    return EXIT_OK


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-psd", type=float, default=DEFAULT_TOL.tol_psd,
                        help="most negative admissible eigenvalue")
    common.add_argument("--tol-herm", type=float, default=DEFAULT_TOL.tol_herm,
                        help="relative Hermiticity tolerance")
    common.add_argument("--seed", type=int, default=1234, help="RNG seed")
    common.add_argument("--output", "-o", default=None, help="output path")
    common.add_argument("--format", choices=("json", "matrix_text"), default="json",
                        help="matrix output format")

    parser = argparse.ArgumentParser(
        prog="dmparam",
        description="Construct and analyze factorized density matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common],
                       help="assemble a state from a parameter file")
    g.add_argument("input", help="parameter file (JSON)")
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("analyze", parents=[common],
                       help="diagnostics for a state stored in a file")
    a.add_argument("input", help="matrix file (JSON or matrix_text)")
    a.add_argument("--n", type=int, default=None, help="first factor dimension")
    a.add_argument("--m", type=int, default=None, help="second factor dimension")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("reproduce", parents=[common],
                       help="re-derive the worked closed-form examples")
    r.add_argument("example", choices=_EXAMPLES + ("all",))
    r.set_defaults(func=cmd_reproduce)

    s = sub.add_parser("sweep", parents=[common],
                       help="grid scan of a family with PPT verdicts to CSV")
    s.add_argument("--family", required=True)
    s.add_argument("--grid", action="append", required=True,
                   help="axis spec name=lo:hi:count (repeatable, row-major order)")
    s.add_argument("--set", action="append", default=[],
                   help="fixed parameter key=value (value may be comma-separated)")
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("validate", parents=[common],
                       help="run the randomized invariant suite")
    v.add_argument("--trials", type=int, default=100)
    v.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        tol = _tolerances(args)
        return args.func(args, tol)
    except (NotPsdError, SingularAngleError, ConvergenceFailureError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ParamFileError, DmParamError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
