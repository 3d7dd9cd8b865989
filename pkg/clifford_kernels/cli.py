import argparse
import csv
import inspect
import json
import numpy as np
import sys
import traceback

from collections.abc import Callable, Sequence
from pydantic import ValidationError
from typing import Any, TextIO

from . import __version__
from .calculus import (
    clifford_at,
    clifford_at_legendre,
    legendre_grid,
    legendre_hessian_pair,
    legendre_invert,
    legendre_point,
    make_functional,
    BUILTINS,
)
from .clifford import CliffordSpace, geometric_product, grade_project, norm_gamma, parse_multivector, wedge
from .config import Config
from .exceptions import NumericalError
from .fock_kernels import FOCK_SYMMETRIES, antisym_fock_kernel, gamma_block, kernel_gram, point_pairing, \
    sym_fock_kernel
from .kernels import (
    KERNELS,
    PROBE_FUNCTIONS,
    default_space,
    gram_matrix,
    make_kernel,
    reproducing_inner_product,
)
from .ledger import build_ledger
from .logger import logger
from .models import (
    BoundReport,
    CliffordAtReport,
    EigenReport,
    ErrorDetail,
    ErrorReport,
    FockReport,
    GammaReport,
    GridReport,
    HessianPairReport,
    LegendreGridReport,
    LegendrePointReport,
    MultivectorReport,
    NormReport,
    QuadraticFormModel,
    Report,
    ResidualReport,
    ShellReport,
    SignatureReport,
    TensorModel,
    TruncationReport,
    ValueReport,
    VectorReport,
    to_scalar,
)
from .quadratic import QuadraticForm, eval_q, polarize, signature
from .tensor import (
    CoeffSequence,
    Tensor2,
    enumerate_shells,
    fock_dimension,
    hs_norm,
    injective_norm,
    projective_norm,
    schauder_truncate,
    sigma_norm,
    tensor2,
    tensor_basis_truncation_error,
    truncation_remainder,
)
from .utils import format_float, parse_float_list

__all__ = [
    "build_parser",
    "main",
    "run",
]

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_USAGE = 2

Handler = Callable[[argparse.Namespace], Report]


# Argument types -------------------------------------------------------------------------------------------------------

def _float_list(text: str) -> list[float]:
    try:
        return parse_float_list(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _complex_list(text: str) -> list[complex]:
    try:
        return [complex(a.strip().replace(" ", "")) for a in text.split(",") if a.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated (complex) numbers, got {text!r}")


def _complex(text: str) -> complex:
    try:
        return complex(text.strip().replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a (complex) number, got {text!r}")


def _point_list(text: str) -> list[list[float]]:
    # Points separated by ';', coordinates by ','
    return [_float_list(p) for p in text.split(";") if p.strip()]


def _matrix(text: str) -> list[list[float]]:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as e:
        raise argparse.ArgumentTypeError(f"expected a JSON array of rows: {e}")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise argparse.ArgumentTypeError("expected a JSON array of rows")
    return rows


def _scalar(v: complex | float):
    v = complex(v)
    return v.real if v.imag == 0 else v


def _point(v: complex, kernel):
    if kernel.field == "complex":
        return _scalar(v)
    if complex(v).imag != 0:
        raise argparse.ArgumentTypeError(f"kernel {kernel.name!r} takes real points, got {v}")
    return float(complex(v).real)


# Output ---------------------------------------------------------------------------------------------------------------

def _csv_cell(v: Any) -> str:
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, float):
        return format_float(v)
    if isinstance(v, (int, str)):
        return str(v)
    return json.dumps(v, separators=(",", ":"))


def _csv_rows(report: Report) -> list[list[Any]]:
    data = report.model_dump(mode="json", by_alias=True)

    # Tables and lists of records get one row per item; anything else is a single header/value row pair
    if isinstance(report, GridReport):
        return [["s\\t", *data["points"]], *([p, *row] for p, row in zip(data["points"], data["values"]))]
    if isinstance(report, LegendreGridReport):
        dim = len(report.points[0].y) if report.points else 0
        header = [f"y{i + 1}" for i in range(dim)] + [f"x_star{i + 1}" for i in range(dim)] + ["z_star"]
        return [header, *([*p.y, *p.x_star, p.z_star] for p in report.points)]
    if isinstance(report, ShellReport):
        return [["i", "j"], *data["pairs"]]
    if isinstance(report, BoundReport):
        return [["n", "remainder", "bound"], *zip(report.n, report.remainder, report.bound)]
    if "entries" in data and isinstance(data["entries"], list) and data["entries"] \
            and isinstance(data["entries"][0], dict):
        header = list(data["entries"][0])
        return [header, *([e[k] for k in header] for e in data["entries"])]
    return [list(data), list(data.values())]


def _emit(report: Report, fmt: str, out: TextIO) -> None:
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        for row in _csv_rows(report):
            writer.writerow([_csv_cell(v) for v in row])
        return
    out.write(report.model_dump_json(by_alias=True))
    out.write("\n")


# quadratic ------------------------------------------------------------------------------------------------------------

def _form(args: argparse.Namespace) -> QuadraticForm:
    if args.coeffs is not None:
        return QuadraticForm.from_model(QuadraticFormModel(dim=len(args.coeffs), coeffs=args.coeffs))
    if args.diag is not None:
        return QuadraticForm.diagonal(args.diag)
    raise argparse.ArgumentTypeError("one of --coeffs or --diag is required")


def _quadratic_eval(args) -> Report:
    return ValueReport(value=eval_q(_form(args), args.x))


def _quadratic_polarize(args) -> Report:
    return ValueReport(value=polarize(_form(args), args.x, args.y))


def _quadratic_diagonalize(args) -> Report:
    return EigenReport(**_form(args).eigen_model().model_dump())


def _quadratic_signature(args) -> Report:
    return SignatureReport(**signature(_form(args), args.zero_tol).to_model().model_dump())


# clifford -------------------------------------------------------------------------------------------------------------

def _space(args) -> CliffordSpace:
    if args.diag is not None:
        if args.n is not None and args.n != len(args.diag):
            raise argparse.ArgumentTypeError(f"--diag has {len(args.diag)} entries but --n is {args.n}")
        return CliffordSpace.of(args.diag)
    if args.n is None:
        raise argparse.ArgumentTypeError("one of --n or --diag is required")
    return CliffordSpace.euclidean(args.n)


def _mv_report(mv) -> Report:
    return MultivectorReport(**mv.to_model().model_dump())


def _clifford_mul(args) -> Report:
    space = _space(args)
    return _mv_report(geometric_product(parse_multivector(space, args.a), parse_multivector(space, args.b)))


def _clifford_wedge(args) -> Report:
    space = _space(args)
    return _mv_report(wedge(parse_multivector(space, args.a), parse_multivector(space, args.b)))


def _clifford_grade(args) -> Report:
    return _mv_report(grade_project(parse_multivector(_space(args), args.a), args.k))


def _clifford_norm(args) -> Report:
    a = parse_multivector(_space(args), args.a)
    return ValueReport(value=norm_gamma(a, args.nu, args.gamma), params={"nu": args.nu, "gamma": args.gamma})


def _functional(args):
    accepted = inspect.signature(BUILTINS[args.f]).parameters
    params = {k: getattr(args, k) for k in accepted if getattr(args, k, None) is not None}
    missing = [k for k, p in accepted.items() if p.default is inspect.Parameter.empty and k not in params]
    if missing:
        raise argparse.ArgumentTypeError(f"--f {args.f} needs " + ", ".join(f"--{k}" for k in missing))
    return make_functional(args.f, **params)


def _clifford_hessian(args) -> Report:
    f = _functional(args)
    space, frame = (clifford_at_legendre if args.legendre else clifford_at)(f, args.at)
    return CliffordAtReport(diag=list(space.diag), frame=frame.T.tolist(),
                            signature=space.signature().to_model())


# legendre -------------------------------------------------------------------------------------------------------------

def _legendre_point(args) -> Report:
    return LegendrePointReport(**legendre_point(_functional(args), args.y).to_model().model_dump())


def _legendre_grid(args) -> Report:
    if args.ys is not None:
        ys = args.ys
    else:
        ys = [[float(v)] for v in np.linspace(args.start, args.stop, args.count)]
    return LegendreGridReport(points=[p.to_model() for p in legendre_grid(_functional(args), ys)])


def _legendre_invert(args) -> Report:
    return VectorReport(values=legendre_invert(_functional(args), args.x_star, args.start).tolist())


def _legendre_hessian_pair(args) -> Report:
    f = _functional(args)
    fstar, inverse = legendre_hessian_pair(f, args.y)
    point = legendre_point(f, args.y)
    residual = float(np.linalg.norm(fstar.coeffs + inverse.coeffs)) / float(np.linalg.norm(inverse.coeffs))
    return HessianPairReport(y=point.y.tolist(), x_star=point.x_star.tolist(), fstar_hess=fstar.coeffs.tolist(),
                             inverse_hess=inverse.coeffs.tolist(), residual=residual)


# tensor ---------------------------------------------------------------------------------------------------------------

def _tensor2(args) -> Tensor2:
    if args.x is not None and args.y is not None:
        return tensor2(args.x, args.y)
    if args.shape is None or args.entries is None:
        raise argparse.ArgumentTypeError("give either --x and --y, or --shape and --entries")
    return Tensor2.from_model(TensorModel(shape=[int(d) for d in args.shape], entries=args.entries))


def _tensor_norms(args) -> Report:
    t = _tensor2(args)
    return NormReport(injective=injective_norm(t), hs=hs_norm(t), projective=projective_norm(t),
                      sigma=sigma_norm(t), singular_values=t.singular_values.tolist())


def _tensor_shells(args) -> Report:
    return ShellReport(pairs=enumerate_shells(args.l_max))


def _tensor_truncate(args) -> Report:
    head, tail_norm = schauder_truncate(CoeffSequence.of(args.coeffs, args.norm), args.n)
    return TruncationReport(head=list(head.coeffs), tail_norm=tail_norm, norm=args.norm)


def _tensor_bound(args) -> Report:
    x = CoeffSequence.geometric(args.ratio_x, args.length)
    y = CoeffSequence.geometric(args.ratio_y, args.length)
    ns = list(range(args.n_max + 1))
    return BoundReport(n=ns,
                       remainder=[hs_norm(truncation_remainder(x, y, n)) for n in ns],
                       bound=[tensor_basis_truncation_error(x, y, n) for n in ns])


def _tensor_fock_dim(args) -> Report:
    value = fock_dimension(args.n, args.p_max, args.symmetry)
    return ValueReport(value=value, params={"n": args.n, "p_max": args.p_max, "symmetry": args.symmetry})


# kernel ---------------------------------------------------------------------------------------------------------------

KERNEL_PARAMS = ("a", "b", "c", "n", "kappa", "terms", "rho", "zeta", "form", "a0", "a1", "a2", "m", "bc")


def _kernel(args, name: str):
    accepted = inspect.signature(KERNELS[name]).parameters
    params = {k: getattr(args, k) for k in KERNEL_PARAMS if k in accepted and getattr(args, k) is not None}
    return make_kernel(name, **params)


def _kernel_eval(args) -> Report:
    kernel = _kernel(args, args.name)
    if args.grid is not None:
        points = kernel.domain.interior(args.grid)
        g = gram_matrix(kernel, points)
        return GridReport(points=[to_scalar(_scalar(p)) for p in points],
                          values=[[to_scalar(v) for v in row] for row in g.tolist()])
    if args.s is None or args.t is None:
        raise argparse.ArgumentTypeError("give --s and --t, or --grid")
    value = kernel(_point(args.s, kernel), _point(args.t, kernel))
    return ValueReport(value=to_scalar(complex(value) if kernel.field == "complex" else value),
                       params=json.loads(json.dumps(kernel.params, default=str)))


def _kernel_verify(args) -> Report:
    kernel = _kernel(args, args.name)
    x = PROBE_FUNCTIONS[args.function]
    quad_n = Config.QUAD_N if args.quad_n is None else args.quad_n
    ip = reproducing_inner_product(kernel, default_space(kernel), x, args.t, quad_n)
    expected = float(x(args.t))
    return ResidualReport(kernel=args.name, function=args.function, t=args.t, quad_n=quad_n, inner_product=ip,
                          expected=expected, residual=abs(ip - expected))


# fock -----------------------------------------------------------------------------------------------------------------

def _fock_points(args, kernel) -> list:
    if not args.points:
        raise argparse.ArgumentTypeError("--points is required")
    return [_point(p, kernel) for p in args.points]


def _fock_kernel(args):
    if args.pairing is None:
        raise argparse.ArgumentTypeError("--pairing is required")
    return _kernel(args, args.pairing)


def _fock(args) -> Report:
    kernel = _fock_kernel(args)
    points = _fock_points(args, kernel)
    order = len(points) if args.order is None else args.order
    if not 1 <= order <= len(points):
        raise argparse.ArgumentTypeError(f"--order must be between 1 and the number of points ({len(points)})")
    points = points[:order]
    g = kernel_gram(point_pairing(kernel), points, points)
    if args.symmetry == "vee":
        value = sym_fock_kernel(g)
    elif args.symmetry == "wedge":
        value = antisym_fock_kernel(g)
    else:
        value = gamma_block(point_pairing(kernel), order, "tensor").evaluate(points, points)
    return FockReport(pairing=args.pairing, symmetry=args.symmetry, points=[to_scalar(p) for p in points],
                      gram=[[to_scalar(v) for v in row] for row in g.entries.tolist()], value=to_scalar(value))


def _fock_gamma(args) -> Report:
    kernel = _fock_kernel(args)
    points = _fock_points(args, kernel)
    block = gamma_block(point_pairing(kernel), args.mmax, args.symmetry)
    return GammaReport(pairing=args.pairing, symmetry=args.symmetry, m_max=args.mmax,
                       blocks=[to_scalar(v) for v in block.diagonal(points)],
                       cross_order_max=block.cross_order_max(points))


# ledger ---------------------------------------------------------------------------------------------------------------

def _ledger(args) -> Report:
    return build_ledger(args.seed)


# Parser ---------------------------------------------------------------------------------------------------------------

def _add_form_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--coeffs", type=_matrix, help="Symmetric coefficient array as JSON rows, e.g. [[1,0],[0,-1]]")
    g.add_argument("--diag", type=_float_list, help="Diagonal coefficients, e.g. 1,1,-1")


def _add_space_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="Number of generators (Euclidean unless --diag is given)")
    p.add_argument("--diag", type=_float_list, help="Squares of the generators, e.g. 1,1,-1")


def _add_functional_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--f", required=True, choices=sorted(BUILTINS), help="Built-in functional")
    p.add_argument("--p", type=float, help="Exponent (power) or number of positive squares (minkowski)")
    p.add_argument("--n", type=int, help="Dimension of the Minkowski form")
    p.add_argument("--dim", type=int, help="Dimension of the power functional")


def _add_kernel_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", type=float, help="Left end of the interval")
    p.add_argument("--b", type=float, help="Right end of the interval")
    p.add_argument("--c", type=float, help="Expansion point (poly)")
    p.add_argument("--n", type=int, help="Polynomial degree (poly)")
    p.add_argument("--kappa", type=float, help="Normalization constant (fourier)")
    p.add_argument("--terms", type=int, help="Series terms (fourier, bergman)")
    p.add_argument("--rho", type=float, help="Disc radius (bergman, log)")
    p.add_argument("--zeta", type=_complex, help="Pinned point (log)")
    p.add_argument("--form", help="Variant: series|closed|paper (bergman), paper|pinned (log)")
    p.add_argument("--a0", type=float, help="Zero-order weight (green1d, green_exact)")
    p.add_argument("--a1", type=float, help="First-order weight (green1d, green_exact)")
    p.add_argument("--a2", type=float, help="Second-order weight (green1d)")
    p.add_argument("--m", type=int, help="Grid nodes (green1d)")
    p.add_argument("--bc", choices=("dirichlet", "neumann"), help="Boundary condition (green1d)")


def _fixup_functional_params(args: argparse.Namespace) -> None:
    # Minkowski takes an integer count of positive squares
    if getattr(args, "f", None) == "minkowski" and args.p is not None:
        if not float(args.p).is_integer():
            raise argparse.ArgumentTypeError("--p must be an integer for the minkowski form")
        args.p = int(args.p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clifford-kernels",
        description="Clifford algebras of quadratic forms and Hessians, tensor norms, and reproducing kernels.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--output", choices=("json", "csv"), default="json", help="Output format (default: json)")
    parser.add_argument("--seed", type=int, default=Config.DEFAULT_SEED, help="Seed for randomized commands")
    commands = parser.add_subparsers(dest="command", required=True)

    def sub(group, name: str, handler: Handler, help_: str) -> argparse.ArgumentParser:
        p = group.add_parser(name, help=help_)
        p.set_defaults(handler=handler)
        return p

    # quadratic
    quadratic = commands.add_parser("quadratic", help="Quadratic forms").add_subparsers(dest="action", required=True)
    p = sub(quadratic, "eval", _quadratic_eval, "q(x)")
    _add_form_args(p)
    p.add_argument("--x", type=_float_list, required=True)
    p = sub(quadratic, "polarize", _quadratic_polarize, "b(x, y)")
    _add_form_args(p)
    p.add_argument("--x", type=_float_list, required=True)
    p.add_argument("--y", type=_float_list, required=True)
    p = sub(quadratic, "diagonalize", _quadratic_diagonalize, "Eigenvalues and orthonormal eigenvectors")
    _add_form_args(p)
    p = sub(quadratic, "signature", _quadratic_signature, "(n+, n-, n0)")
    _add_form_args(p)
    p.add_argument("--zero-tol", type=float)

    # clifford
    clifford = commands.add_parser("clifford", help="Clifford algebras").add_subparsers(dest="action", required=True)
    for name, handler, help_ in (("mul", _clifford_mul, "Geometric product"), ("wedge", _clifford_wedge, "Wedge")):
        p = sub(clifford, name, handler, help_)
        _add_space_args(p)
        p.add_argument("--a", required=True, help='Multivector, e.g. "1 + 2*e1 - e1e2"')
        p.add_argument("--b", required=True)
    p = sub(clifford, "grade", _clifford_grade, "Grade projection")
    _add_space_args(p)
    p.add_argument("--a", required=True)
    p.add_argument("--k", type=int, required=True)
    p = sub(clifford, "norm", _clifford_norm, "Grade-wise tensor norm")
    _add_space_args(p)
    p.add_argument("--a", required=True)
    p.add_argument("--nu", choices=("euclidean", "metric"), default="euclidean")
    p.add_argument("--gamma", choices=("hs", "injective", "projective"), default="hs")
    p = sub(clifford, "hessian", _clifford_hessian, "Clifford algebra of a Hessian form")
    _add_functional_args(p)
    p.add_argument("--at", type=_float_list, required=True)
    p.add_argument("--legendre", action="store_true", help="Use the second derivative of the Legendre value")

    # legendre
    legendre = commands.add_parser("legendre", help="Legendre transform").add_subparsers(dest="action", required=True)
    p = sub(legendre, "point", _legendre_point, "(x*, z*) at y")
    _add_functional_args(p)
    p.add_argument("--y", type=_float_list, required=True)
    p = sub(legendre, "grid", _legendre_grid, "Parametric set over a grid")
    _add_functional_args(p)
    p.add_argument("--ys", type=_point_list, help='Points separated by ";", e.g. "1,2;3,4"')
    p.add_argument("--start", type=float, default=-2.0)
    p.add_argument("--stop", type=float, default=2.0)
    p.add_argument("--count", type=int, default=50)
    p = sub(legendre, "invert", _legendre_invert, "Solve f'(y) = x* by damped Newton")
    _add_functional_args(p)
    p.add_argument("--x-star", type=_float_list, required=True)
    p.add_argument("--start", type=_float_list, required=True, help="Newton seed")
    p = sub(legendre, "hessian-pair", _legendre_hessian_pair, "(f*)'' against (f'')^-1")
    _add_functional_args(p)
    p.add_argument("--y", type=_float_list, required=True)

    # tensor
    tensor = commands.add_parser("tensor", help="Tensor norms and truncations").add_subparsers(dest="action",
                                                                                               required=True)
    p = sub(tensor, "norms", _tensor_norms, "injective, hs, projective and sigma norms")
    p.add_argument("--shape", type=_float_list)
    p.add_argument("--entries", type=_float_list, help="Row-major entries")
    p.add_argument("--x", type=_float_list, help="Elementary tensor x⊗y")
    p.add_argument("--y", type=_float_list)
    p = sub(tensor, "shells", _tensor_shells, "Shell enumeration of index pairs")
    p.add_argument("--l-max", type=int, required=True)
    p = sub(tensor, "truncate", _tensor_truncate, "Schauder truncation")
    p.add_argument("--coeffs", type=_float_list, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--norm", choices=("l1", "l2"), default="l2")
    p = sub(tensor, "bound", _tensor_bound, "Remainder against the three-term bound for geometric sequences")
    p.add_argument("--ratio-x", type=float, required=True)
    p.add_argument("--ratio-y", type=float, required=True)
    p.add_argument("--length", type=int, default=40)
    p.add_argument("--n-max", type=int, default=10)
    p = sub(tensor, "fock-dim", _tensor_fock_dim, "Dimension of a truncated Fock space")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p-max", type=int, required=True)
    p.add_argument("--symmetry", choices=FOCK_SYMMETRIES, default="tensor")

    # kernel
    kernel = commands.add_parser("kernel", help="Reproducing kernels").add_subparsers(dest="action", required=True)
    p = sub(kernel, "eval", _kernel_eval, "Evaluate a kernel at (s, t) or on a grid")
    p.add_argument("--name", required=True, choices=sorted(KERNELS))
    _add_kernel_args(p)
    p.add_argument("--s", type=_complex)
    p.add_argument("--t", type=_complex)
    p.add_argument("--grid", type=int, help="Emit an m×m table on interior points")
    p = sub(kernel, "verify", _kernel_verify, "Reproducing-property residual")
    p.add_argument("--name", required=True, choices=sorted(KERNELS))
    _add_kernel_args(p)
    p.add_argument("--function", required=True, choices=sorted(PROBE_FUNCTIONS))
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--quad-n", type=int)

    # fock: pairing options go before the gamma action (fock --pairing ... gamma --mmax k)
    fock = commands.add_parser("fock", help="Fock-space kernels")
    fock.add_argument("--pairing", choices=sorted(KERNELS))
    fock.add_argument("--points", type=_complex_list, help="Point-evaluation functionals, e.g. 0.2,0.5,0.8")
    fock.add_argument("--symmetry", choices=FOCK_SYMMETRIES, default="vee")
    fock.add_argument("--order", type=int)
    _add_kernel_args(fock)
    fock.set_defaults(handler=_fock)
    gamma = fock.add_subparsers(dest="action").add_parser("gamma", help="Block-diagonal kernel per order")
    gamma.add_argument("--mmax", type=int, required=True)
    gamma.set_defaults(handler=_fock_gamma)

    # ledger
    p = commands.add_parser("ledger", help="Discrepancy ledger")
    p.set_defaults(handler=_ledger)

    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (None, 0) else EXIT_USAGE

    logger.info(f"running {args.command} {getattr(args, 'action', '') or ''}".rstrip())
    try:
        _fixup_functional_params(args)
        report = args.handler(args)
    except NumericalError as e:
        logger.error(f"{type(e).__name__} {e}")
        detail = ErrorDetail(kind=e.kind, message=str(e), details=json.loads(json.dumps(e.details, default=str)),
                             traceback=traceback.format_exc() if Config.DEBUG else None)
        _emit(ErrorReport(error=detail), "json", out)
        return EXIT_NUMERICAL
    except (argparse.ArgumentTypeError, ValidationError) as e:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    _emit(report, args.output, out)
    return EXIT_OK


def run(argv: Sequence[str], out: TextIO | None = None) -> int:
    """Runs one command line without touching sys.argv; returns the exit code."""
    return main(list(argv), out)


if __name__ == "__main__":
    sys.exit(main())
