"""Command line front end: one library operation per invocation, records on stdout.

    bisemi hecke eig --q 2 --b 1 --N 1
    bisemi curve count --a 1 --b 1 --p 5
    bisemi zeta zero --k 1

Records are JSON objects (one per line) or CSV with a header row.  Exit status
is 0 on success, 1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Any, Callable, Iterable

from . import curves, ellipmod, exactalg, hecke, lfunc, placelat
from .errors import DomainError
from .exactalg import Mat2Q, QuadNum

Record = dict[str, Any]

DEFAULT_PRECISION = 12


class UsageError(Exception):
    pass


# -- value formatting ---------------------------------------------------------


class _Fmt:
    def __init__(self, precision: int) -> None:
        self.precision = precision

    def real(self, x: float) -> float:
        return float(format(float(x), f".{self.precision}g"))

    def rational(self, x: Fraction | int):
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else str(x)

    def quad(self, rec: Record, name: str, x: QuadNum | Fraction | int) -> None:
        """Symbolic form plus float(s); imaginary values get ``_re``/``_im``."""
        q = QuadNum.coerce(x)
        rec[name] = str(q) if not q.is_rational else self.rational(q.a)
        if q.is_imaginary:
            z = complex(q)
            rec[name + "_re"] = self.real(z.real)
            rec[name + "_im"] = self.real(z.imag)
        else:
            rec[name + "_float"] = self.real(float(q))

    def matrix(self, rec: Record, name: str, m: Mat2Q) -> None:
        for key in ("e11", "e12", "e21", "e22"):
            v = getattr(m, key)
            rec[f"{name}_{key}"] = str(v) if isinstance(v, QuadNum) else self.rational(v)

    def value(self, rec: Record, operation: str, inputs: dict, value: complex, err: float) -> Record:
        rec.update(
            operation=operation,
            inputs=";".join(f"{k}={v}" for k, v in inputs.items()),
            value_re=self.real(complex(value).real),
            value_im=self.real(complex(value).imag),
            error_estimate=self.real(err),
        )
        return rec


# -- argument helpers ---------------------------------------------------------


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _matrix(text: str) -> Mat2Q:
    try:
        rows = [[_frac(e) for e in row.split(",")] for row in text.split(";")]
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise argparse.ArgumentTypeError(f"expected 'a,b;c,d', got {text!r}") from exc
    return Mat2Q.from_rows(rows)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _pairs(text: str) -> tuple[tuple[int, int], ...]:
    try:
        return tuple(tuple(int(v) for v in item.split(":")) for item in text.split(","))  # type: ignore[misc]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected 'n:m,n:m', got {text!r}") from exc


def _energy(text: str) -> Fraction | float:
    try:
        return Fraction(text)
    except ValueError:
        return float(text)


def _required(args: argparse.Namespace, *names: str) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _place_spec(args: argparse.Namespace, kind: str | None = None, prefix: str = "") -> placelat.PlaceSpec:
    s = getattr(args, prefix + "s")
    mult = getattr(args, prefix + "mult") or ()
    if s is None:
        s = len(mult) or None
    if s is None:
        raise UsageError(f"missing required option: --{prefix.replace('_', '-')}s")
    try:
        return placelat.PlaceSpec(kind or args.kind, s, getattr(args, prefix + "N"), mult)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# -- handlers -----------------------------------------------------------------


def _eigen_record(f: _Fmt, rec: Record, e: hecke.EigenPair) -> Record:
    rec["trace"] = f.rational(e.trace)
    rec["det"] = f.rational(e.det)
    f.quad(rec, "lambda_plus", e.plus)
    f.quad(rec, "lambda_minus", e.minus)
    return rec


def h_hecke_eig(args, f: _Fmt) -> list[Record]:
    _required(args, "q")
    if args.op == "frobenius":
        e = hecke.frobenius_eigenvalues(args.q, args.b)
        return [_eigen_record(f, {"q": args.q, "b": args.b, "N": 1}, e)]
    p = hecke.HeckeParams(args.q, args.b, args.N)
    e = hecke.eigenvalues(p)
    rec: Record = {"q": p.q, "b": p.b, "N": p.N, "q_N": p.q_N, "b_N": p.b_N}
    _eigen_record(f, rec, e)
    if args.op == "translate":
        r, cent = hecke.translate_to_origin(e)
        f.quad(rec, "r", r)
        f.quad(rec, "cent", cent)
    return [rec]


def h_hecke_coset(args, f: _Fmt) -> list[Record]:
    _required(args, "q")
    p = hecke.HeckeParams(args.q, args.b, args.N)
    m = hecke.coset_matrix(p)
    rec: Record = {"q_N": p.q_N, "b_N": p.b_N}
    f.matrix(rec, "g2", m)
    rec["trace"] = f.rational(m.trace())
    rec["det"] = f.rational(m.det())
    return [rec]


def h_hecke_decomp(args, f: _Fmt) -> list[Record]:
    _required(args, "bN")
    m = hecke.decomposition_element(args.bN)
    rec: Record = {"b_N": args.bN}
    f.matrix(rec, "D", m)
    rec["det"] = f.rational(m.det())
    return [rec]


def h_alg_gauss(args, f: _Fmt) -> list[Record]:
    rec: Record = {"op": args.op}
    if args.op == "bilinear":
        _required(args, "right", "left")
        u_r, u_l, d_r, d_l = exactalg.bilinear_gauss(args.right, args.left)
        for name, m in (("u_R", u_r), ("u_L", u_l), ("d_R", d_r), ("d_L", d_l)):
            f.matrix(rec, name, m)
        return [rec]
    if args.op == "exchange":
        _required(args, "right", "left")
        first, second = exactalg.exchange_involution((args.right, args.left))
        f.matrix(rec, "first", first)
        f.matrix(rec, "second", second)
        return [rec]
    _required(args, "matrix")
    m = args.matrix
    if args.op == "decompose":
        u, d = exactalg.gauss_decompose_triangular(m, args.side)
        rec["side"] = args.side
        f.matrix(rec, "unipotent", u)
        f.matrix(rec, "diagonal", d)
    elif args.op == "charpoly":
        t, det = exactalg.charpoly(m)
        rec["trace"] = f.rational(t) if not isinstance(t, QuadNum) else str(t)
        rec["det"] = f.rational(det) if not isinstance(det, QuadNum) else str(det)
    elif args.op == "eigen":
        plus, minus = exactalg.eigen_quad(m)
        f.quad(rec, "lambda_plus", plus)
        f.quad(rec, "lambda_minus", minus)
    else:
        f.matrix(rec, "transpose", exactalg.involution_first_kind(m))
    return [rec]


def h_place_degree(args, f: _Fmt) -> list[Record]:
    _required(args, "n")
    spec = _place_spec(args)
    return [{"kind": spec.kind, "N": spec.N, "n": args.n, "degree": placelat.extension_degree(spec, args.n)}]


def h_place_bilattice(args, f: _Fmt) -> list[Record]:
    spec_r = _place_spec(args, "real")
    for key in ("s", "N", "mult"):
        if getattr(args, "left_" + key) is None:
            setattr(args, "left_" + key, getattr(args, key))
    spec_l = _place_spec(args, "real", "left_")
    return [
        {"n": n, "m": m, "rank_R": rr, "rank_L": rl}
        for n, m, rr, rl in placelat.decompose_bilattice(spec_r, spec_l)
    ]


def h_place_borel_serre(args, f: _Fmt) -> list[Record]:
    cspec = _place_spec(args, "complex")
    rspec = _place_spec(args, "real", "real_")
    rep = placelat.check_borel_serre(cspec, rspec)
    return [
        {
            "equal_place_count": rep.equal_place_count,
            "unit_complex_multiplicity": rep.unit_complex_multiplicity,
            "ranks_covered": rep.ranks_covered,
            "rank_table": ";".join(f"{n}:{a}:{b}" for n, a, b in rep.rank_table),
        }
    ]


def _series(args) -> ellipmod.FourierSemimodule:
    if args.series:
        with open(args.series, encoding="utf-8") as fh:
            return ellipmod.loads(fh.read())
    spec = _place_spec(args, "real")
    return ellipmod.build_phi(spec, args.rule, args.branch, args.side)


def _term_records(f: _Fmt, phi: ellipmod.FourierSemimodule) -> list[Record]:
    out = []
    for n, m, c in phi.terms:
        rec: Record = {"side": phi.side, "N": phi.N, "n": n, "m": m}
        f.quad(rec, "coeff", c)
        out.append(rec)
    return out


def h_semimodule_build(args, f: _Fmt) -> list[Record]:
    if args.op == "multiplicity":
        _required(args, "classes", "n", "m")
        rep = ellipmod.apply_nilpotent_multiplicity(ellipmod.SupercuspidalRep(args.classes), args.n, args.m)
        return [{"n": n, "multiplicity": m} for n, m in rep.classes]
    return _term_records(f, _series(args))


def h_semimodule_eval(args, f: _Fmt) -> list[Record]:
    _required(args, "x")
    phi = _series(args)
    z = ellipmod.evaluate(phi, args.x)
    return [f.value({}, "semimodule_eval", {"side": phi.side, "terms": len(phi), "x": args.x}, z, 0.0)]


def h_semimodule_kernel(args, f: _Fmt) -> list[Record]:
    spec = _place_spec(args, "real")
    phi_r = ellipmod.build_phi(spec, args.rule, args.branch, "right")
    phi_l = ellipmod.build_phi(spec, args.rule, args.branch, "left")
    prod = ellipmod.diagonal_tensor(phi_r, phi_l)
    if args.op == "tensor":
        out = []
        for n, m, cr, cl in prod.terms:
            rec: Record = {"n": n, "m": m}
            f.quad(rec, "coeff_R", cr)
            f.quad(rec, "coeff_L", cl)
            out.append(rec)
        return out
    return [{"n": n, "value": v} for n, v in ellipmod.kernel_bipoints(prod)]


def h_eis_coeff(args, f: _Fmt) -> list[Record]:
    if args.op == "split":
        _required(args, "lam")
        r1, r2 = ellipmod.semitorus_split(args.lam)
        rec: Record = {"lambda": f.rational(args.lam)}
        for name, r in (("r1", r1), ("r2", r2)):
            rec[name] = f.rational(r) if isinstance(r, Fraction) else f.real(r)
        return [rec]
    _required(args, "n")
    restricted, classical = ellipmod.eis_coefficient(args.n, args.N)
    return [{"n": args.n, "N": args.N, "restricted": restricted, "classical": classical}]


def _series_spec(args, classes=None) -> lfunc.SeriesSpec:
    return lfunc.SeriesSpec(branch=args.branch, N=args.N, m=args.m, n_max=args.n_max, classes=classes)


def _series_inputs(args, **extra) -> dict:
    base = {"branch": args.branch, "N": args.N, "m": args.m, "n_max": args.n_max}
    base.update(extra)
    return base


def _last_term(spec: lfunc.SeriesSpec, s: complex) -> float:
    n = spec.class_array()
    if n.size == 0:
        return 0.0
    last = lfunc.partial_sum(lfunc.SeriesSpec(spec.branch, spec.N, spec.m, spec.n_max, frozenset([int(n[-1])])), s)
    return abs(last)


def h_lseries_sum(args, f: _Fmt) -> list[Record]:
    spec = _series_spec(args, args.classes and frozenset(args.classes))
    v = lfunc.partial_sum(spec, args.s)
    return [f.value({}, "partial_sum", _series_inputs(args, s=args.s), v, _last_term(spec, args.s))]


def h_lseries_degenerate(args, f: _Fmt) -> list[Record]:
    spec = _series_spec(args, args.classes and frozenset(args.classes))
    v = lfunc.degenerate_product(spec, spec, args.x)
    err = _last_term(spec, args.x) ** 2
    return [f.value({}, "degenerate_product", _series_inputs(args, x=args.x), v, err)]


def h_lseries_euler(args, f: _Fmt) -> list[Record]:
    spec = _series_spec(args)
    res = lfunc.euler_product(spec, args.s, args.p_max, weight=args.weight)
    err = abs(res.value) * res.last_term
    rec = f.value({}, "euler_product", _series_inputs(args, s=args.s, p_max=args.p_max, weight=args.weight), res.value, err)
    rec["n_factors"] = res.n_factors
    rec["diverging"] = res.diverging
    return [rec]


def h_lseries_partition(args, f: _Fmt) -> list[Record]:
    _required(args, "kept")
    spec = _series_spec(args)
    part = lfunc.partition_series(spec, args.kept)
    whole = lfunc.partial_sum(spec, args.s)
    kept = lfunc.partial_sum(part.kept, args.s)
    rest = lfunc.partial_sum(part.complement, args.s)
    err = abs(kept + rest - whole)
    inputs = _series_inputs(args, s=args.s, kept=",".join(map(str, sorted(args.kept))))
    return [
        f.value({"part": "kept"}, "partition_series", inputs, kept, err),
        f.value({"part": "complement"}, "partition_series", inputs, rest, err),
        f.value({"part": "whole"}, "partition_series", inputs, whole, err),
    ]


def h_zeta_value(args, f: _Fmt) -> list[Record]:
    _required(args, "s")
    v = lfunc.zeta_numeric(args.s)
    return [f.value({}, "zeta", {"s": args.s}, v, 1e-10 * max(1.0, abs(v)))]


def h_zeta_zero(args, f: _Fmt) -> list[Record]:
    _required(args, "k")
    tau = lfunc.locate_zeta_zero(args.k, args.variant, args.t_max, args.step)
    sigma = 0.5 if args.variant == "riemann" else 1.0
    residual = abs(lfunc.zeta_numeric(complex(0.5, tau)))
    return [f.value({"sigma": sigma}, "zeta_zero", {"k": args.k, "variant": args.variant}, tau, residual)]


def _candidate_record(f: _Fmt, c: lfunc.ZeroCandidate) -> Record:
    rec: Record = {"n": c.n, "E": f.rational(c.E) if isinstance(c.E, (int, Fraction)) else f.real(c.E), "variant": c.variant}
    if c.exact_plus is not None:
        f.quad(rec, "lambda_plus", c.exact_plus)
        f.quad(rec, "lambda_minus", c.exact_minus)
        rec["product"] = f.rational(c.exact_product)
    else:
        rec.update(
            lambda_plus_re=f.real(c.plus.real),
            lambda_plus_im=f.real(c.plus.imag),
            lambda_minus_re=f.real(c.minus.real),
            lambda_minus_im=f.real(c.minus.imag),
            product=f.real(c.product),
        )
    return rec


def h_zeromap_candidate(args, f: _Fmt) -> list[Record]:
    _required(args, "n", "E")
    return [_candidate_record(f, lfunc.nontrivial_candidate(args.n, args.E, args.variant))]


def h_zeromap_check(args, f: _Fmt) -> list[Record]:
    _required(args, "n", "E")
    rep = lfunc.zero_map_check(args.n, args.E, args.variant)

    def num(v):
        return f.rational(v) if isinstance(v, (int, Fraction)) else f.real(v)

    return [
        {
            "n": rep.n,
            "E": num(rep.E),
            "variant": rep.variant,
            "trivial": rep.trivial,
            "matrix_det": num(rep.matrix_det),
            "product": num(rep.product),
            "det_equals_product": rep.det_equals_product,
            "equals_trivial": rep.equals_trivial,
        }
    ]


def h_energy_solve(args, f: _Fmt) -> list[Record]:
    _required(args, "n", "tau")
    e = lfunc.energy_from_tau(args.n, args.tau, args.variant)
    return [f.value({}, "energy_from_tau", {"n": args.n, "tau": args.tau, "variant": args.variant}, e, 0.0)]


def _curve(args) -> curves.WeierstrassCurve:
    _required(args, "a", "b")
    return curves.WeierstrassCurve(args.a, args.b)


def h_curve_count(args, f: _Fmt) -> list[Record]:
    if args.op == "mp":
        _required(args, "p", "m")
        rep = curves.mp_formula_check(args.p, args.N, args.m)
        return [
            {"p": rep.p, "N": rep.N, "m": rep.m, "det": rep.det, "trace": rep.trace,
             "value": rep.value, "root": rep.root, "holds": rep.holds}
        ]
    _required(args, "p")
    rep = curves.count_points_bruteforce(_curve(args), args.p)
    return [{"p": rep.p, "good": rep.good, "count": rep.count, "a_p": rep.a_p}]


def h_curve_reduce(args, f: _Fmt) -> list[Record]:
    if args.battery:
        with open(args.battery, encoding="utf-8") as fh:
            battery = curves.read_battery(fh.read())
        _required(args, "p_max")
        return [
            {"a": c.a, "b": c.b, "p": r.p, "good": r.good, "count": r.count, "a_p": r.a_p}
            for c in battery
            for r in curves.reduction_table(c, args.p_max)
        ]
    c = _curve(args)
    if args.p is not None:
        good = curves.good_reduction(c, args.p)
        return [{"p": args.p, "good": good}]
    _required(args, "p_max")
    return [{"p": r.p, "good": r.good, "count": r.count, "a_p": r.a_p} for r in curves.reduction_table(c, args.p_max)]


def h_curve_semimodule(args, f: _Fmt) -> list[Record]:
    _required(args, "p_max")
    phi = curves.curve_to_semimodule(_curve(args), args.p_max, args.N, args.branch, args.side)
    return _term_records(f, phi)


def h_curve_rank_count(args, f: _Fmt) -> list[Record]:
    _required(args, "p_max")
    n_g, places = curves.restricted_rank_count(_curve(args), args.p_max)
    return [{"p_max": args.p_max, "N_g": n_g, "places": ",".join(map(str, places))}]


# -- registry -----------------------------------------------------------------


def _opts_place(p: argparse.ArgumentParser, with_kind: bool = False) -> None:
    if with_kind:
        p.add_argument("--kind", choices=placelat.KINDS, default="real")
    p.add_argument("--s", type=int)
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--mult", type=_int_list, help="multiplicities m(n), comma separated")


def _opts_semimodule(p: argparse.ArgumentParser) -> None:
    _opts_place(p)
    p.add_argument("--rule", choices=ellipmod.RULES, default="simple")
    p.add_argument("--branch", choices=hecke.BRANCHES, default="plus")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("--series", help="series file in line form")


def _opts_series(p: argparse.ArgumentParser) -> None:
    p.add_argument("--branch", choices=hecke.BRANCHES, default="minus")
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--n-max", type=int, default=1000)


def _build(p, name):
    if name == "hecke eig":
        p.add_argument("--q", type=int)
        p.add_argument("--b", type=int, default=0)
        p.add_argument("--N", type=int, default=1)
        p.add_argument("--op", choices=("eigenvalues", "frobenius", "translate"), default="eigenvalues")
    elif name == "hecke coset":
        p.add_argument("--q", type=int)
        p.add_argument("--b", type=int, default=0)
        p.add_argument("--N", type=int, default=1)
    elif name == "hecke decomp":
        p.add_argument("--bN", type=int)
    elif name == "alg gauss":
        p.add_argument("--op", choices=("decompose", "bilinear", "charpoly", "eigen", "involution", "exchange"), default="decompose")
        p.add_argument("--matrix", type=_matrix, help="'a,b;c,d'")
        p.add_argument("--side", choices=("upper", "lower"), default="upper")
        p.add_argument("--right", type=_matrix, help="lower triangular right factor")
        p.add_argument("--left", type=_matrix, help="upper triangular left factor")
    elif name == "place degree":
        _opts_place(p, with_kind=True)
        p.add_argument("--n", type=int)
    elif name == "place bilattice":
        _opts_place(p)
        p.add_argument("--left-s", type=int)
        p.add_argument("--left-N", type=int)
        p.add_argument("--left-mult", type=_int_list)
    elif name == "place borel-serre":
        _opts_place(p)
        p.add_argument("--real-s", type=int)
        p.add_argument("--real-N", type=int, default=1)
        p.add_argument("--real-mult", type=_int_list)
    elif name == "semimodule build":
        _opts_semimodule(p)
        p.add_argument("--op", choices=("build", "multiplicity"), default="build")
        p.add_argument("--classes", type=_pairs, help="supercuspidal classes 'n:m,n:m'")
        p.add_argument("--n", type=int)
        p.add_argument("--m", type=int)
    elif name == "semimodule eval":
        _opts_semimodule(p)
        p.add_argument("--x", type=float)
    elif name == "semimodule kernel":
        _opts_semimodule(p)
        p.add_argument("--op", choices=("kernel", "tensor"), default="kernel")
    elif name == "eis coeff":
        p.add_argument("--op", choices=("coeff", "split"), default="coeff")
        p.add_argument("--n", type=int)
        p.add_argument("--N", type=int, default=1)
        p.add_argument("--lam", type=_frac)
    elif name == "lseries sum":
        _opts_series(p)
        p.add_argument("--s", type=complex, default=2)
        p.add_argument("--classes", type=_int_list)
    elif name == "lseries degenerate":
        _opts_series(p)
        p.add_argument("--x", type=float, default=1.0)
        p.add_argument("--classes", type=_int_list)
    elif name == "lseries euler":
        _opts_series(p)
        p.add_argument("--s", type=complex, default=2)
        p.add_argument("--p-max", type=int, default=100)
        p.add_argument("--weight", type=int, default=1)
    elif name == "lseries partition":
        _opts_series(p)
        p.add_argument("--s", type=complex, default=2)
        p.add_argument("--kept", type=_int_list)
    elif name == "zeta value":
        p.add_argument("--s", type=complex)
    elif name == "zeta zero":
        p.add_argument("--k", type=int)
        p.add_argument("--variant", choices=lfunc.VARIANTS, default="riemann")
        p.add_argument("--t-max", type=float, default=60.0)
        p.add_argument("--step", type=float, default=0.05)
    elif name in ("zeromap candidate", "zeromap check"):
        p.add_argument("--n", type=int)
        p.add_argument("--E", type=_energy)
        p.add_argument("--variant", choices=lfunc.VARIANTS, default="riemann")
    elif name == "energy solve":
        p.add_argument("--n", type=int)
        p.add_argument("--tau", type=float)
        p.add_argument("--variant", choices=lfunc.VARIANTS, default="riemann")
    elif name.startswith("curve"):
        p.add_argument("--a", type=int)
        p.add_argument("--b", type=int)
        if name == "curve count":
            p.add_argument("--op", choices=("count", "mp"), default="count")
            p.add_argument("--p", type=int)
            p.add_argument("--N", type=int, default=1)
            p.add_argument("--m", type=int)
        elif name == "curve reduce":
            p.add_argument("--p", type=int)
            p.add_argument("--p-max", type=int)
            p.add_argument("--battery", help="file of 'a b' lines")
        elif name == "curve semimodule":
            p.add_argument("--p-max", type=int)
            p.add_argument("--N", type=int, default=1)
            p.add_argument("--branch", choices=hecke.BRANCHES, default="minus")
            p.add_argument("--side", choices=("left", "right"), default="left")
        else:
            p.add_argument("--p-max", type=int)


Handler = Callable[[argparse.Namespace, _Fmt], list[Record]]

VERBS: dict[str, Handler] = {
    "hecke eig": h_hecke_eig,
    "hecke coset": h_hecke_coset,
    "hecke decomp": h_hecke_decomp,
    "alg gauss": h_alg_gauss,
    "place degree": h_place_degree,
    "place bilattice": h_place_bilattice,
    "place borel-serre": h_place_borel_serre,
    "semimodule build": h_semimodule_build,
    "semimodule eval": h_semimodule_eval,
    "semimodule kernel": h_semimodule_kernel,
    "eis coeff": h_eis_coeff,
    "lseries sum": h_lseries_sum,
    "lseries degenerate": h_lseries_degenerate,
    "lseries euler": h_lseries_euler,
    "lseries partition": h_lseries_partition,
    "zeta value": h_zeta_value,
    "zeta zero": h_zeta_zero,
    "zeromap candidate": h_zeromap_candidate,
    "zeromap check": h_zeromap_check,
    "energy solve": h_energy_solve,
    "curve count": h_curve_count,
    "curve reduce": h_curve_reduce,
    "curve semimodule": h_curve_semimodule,
    "curve rank-count": h_curve_rank_count,
}

CSV_DEFAULT = {"curve count", "curve reduce"}

# library operation -> (verb, selector); each operation has exactly one entry point
OPERATIONS: dict[str, tuple[str, str | None]] = {
    "exactalg.charpoly": ("alg gauss", "--op charpoly"),
    "exactalg.eigen_quad": ("alg gauss", "--op eigen"),
    "exactalg.gauss_decompose_triangular": ("alg gauss", "--op decompose"),
    "exactalg.bilinear_gauss": ("alg gauss", "--op bilinear"),
    "exactalg.involution_first_kind": ("alg gauss", "--op involution"),
    "exactalg.exchange_involution": ("alg gauss", "--op exchange"),
    "placelat.extension_degree": ("place degree", None),
    "placelat.decompose_bilattice": ("place bilattice", None),
    "placelat.check_borel_serre": ("place borel-serre", None),
    "hecke.coset_matrix": ("hecke coset", None),
    "hecke.eigenvalues": ("hecke eig", "--op eigenvalues"),
    "hecke.frobenius_eigenvalues": ("hecke eig", "--op frobenius"),
    "hecke.decomposition_element": ("hecke decomp", None),
    "hecke.translate_to_origin": ("hecke eig", "--op translate"),
    "ellipmod.build_phi": ("semimodule build", "--op build"),
    "ellipmod.evaluate": ("semimodule eval", None),
    "ellipmod.eis_coefficient": ("eis coeff", "--op coeff"),
    "ellipmod.semitorus_split": ("eis coeff", "--op split"),
    "ellipmod.diagonal_tensor": ("semimodule kernel", "--op tensor"),
    "ellipmod.kernel_bipoints": ("semimodule kernel", "--op kernel"),
    "ellipmod.apply_nilpotent_multiplicity": ("semimodule build", "--op multiplicity"),
    "lfunc.partial_sum": ("lseries sum", None),
    "lfunc.degenerate_product": ("lseries degenerate", None),
    "lfunc.euler_product": ("lseries euler", None),
    "lfunc.partition_series": ("lseries partition", None),
    "lfunc.zeta_numeric": ("zeta value", None),
    "lfunc.locate_zeta_zero": ("zeta zero", None),
    "lfunc.nontrivial_candidate": ("zeromap candidate", None),
    "lfunc.zero_map_check": ("zeromap check", None),
    "lfunc.energy_from_tau": ("energy solve", None),
    "curves.count_points_bruteforce": ("curve count", "--op count"),
    "curves.mp_formula_check": ("curve count", "--op mp"),
    "curves.good_reduction": ("curve reduce", None),
    "curves.curve_to_semimodule": ("curve semimodule", None),
    "curves.restricted_rank_count": ("curve rank-count", None),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: D401
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bisemi", description="Exact Hecke/zeta/elliptic-curve toolkit")
    parser.add_argument("--format", choices=("json", "csv"), default=None)
    parser.add_argument("--precision", type=int, default=None, help="significant digits for floats (6..17)")
    parser.add_argument("--config", help="flat 'key = value' file mirroring the flags")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)
    subs: dict[str, argparse._SubParsersAction] = {}
    for verb in VERBS:
        group, action = verb.split(" ", 1)
        if group not in subs:
            gp = groups.add_parser(group)
            subs[group] = gp.add_subparsers(dest="action", required=True, parser_class=_Parser)
        _build(subs[group].add_parser(action), verb)
    return parser


def _config_tokens(path: str) -> list[str]:
    tokens = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise UsageError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
            tokens += ["--" + key.strip().replace("_", "-"), value.strip()]
    return tokens


def _split_config(argv: list[str]) -> tuple[list[str], str | None]:
    out, config = [], None
    it = iter(argv)
    for tok in it:
        if tok == "--config":
            config = next(it, None)
            if config is None:
                raise UsageError("--config needs a file name")
        elif tok.startswith("--config="):
            config = tok.split("=", 1)[1]
        else:
            out.append(tok)
    return out, config


def _verb_position(argv: list[str]) -> int:
    """Index just past the two verb words (global options may precede them)."""
    words = 0
    i = 0
    while i < len(argv) and words < 2:
        tok = argv[i]
        if tok in ("--format", "--precision"):
            i += 2
            continue
        if not tok.startswith("-"):
            words += 1
        i += 1
    return i


def _resolve_precision(args: argparse.Namespace) -> int:
    precision = args.precision
    if precision is None:
        env = os.environ.get("BISEMI_PRECISION")
        if env is not None:
            try:
                precision = int(env)
            except ValueError as exc:
                raise UsageError(f"BISEMI_PRECISION must be an integer, got {env!r}") from exc
    if precision is None:
        precision = DEFAULT_PRECISION
    if not 6 <= precision <= 17:
        raise UsageError(f"precision must be in [6, 17], got {precision}")
    return precision


def render(records: Iterable[Record], fmt: str) -> str:
    records = list(records)
    if fmt == "json":
        return "".join(json.dumps(r) + "\n" for r in records)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if records:
        writer.writerow(records[0].keys())
    for r in records:
        writer.writerow(_csv_cell(v) for v in r.values())
    return buf.getvalue()


def _csv_cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv, config = _split_config(argv)
        if config:
            pos = _verb_position(argv)
            argv = argv[:pos] + _config_tokens(config) + argv[pos:]
        args = build_parser().parse_args(argv)
        verb = f"{args.group} {args.action}"
        f = _Fmt(_resolve_precision(args))
        fmt = args.format or ("csv" if verb in CSV_DEFAULT else "json")
        records = VERBS[verb](args, f)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except OSError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    stdout.write(render(records, fmt))
    return 0


def main() -> None:
    sys.exit(run())
