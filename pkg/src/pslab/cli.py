"""Command-line front end.

Exit codes: 0 success, 1 validation or usage error, 2 numerical guard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

import jsonschema

from .admissibility import SmoothingKernel, admissibility_report, divergence_probe, gaussian_smooth
from .claims import CLAIM_IDS, run_claim
from .entropy import (
    HusimiParameter,
    husimi_from_field,
    purity_integral,
    s2_operator,
    s2_wigner,
    von_neumann_entropy,
    wehrl_entropy,
)
from .grid import NumericalGuardError, PhaseSpaceField, PhaseSpaceGrid, build_grid, default_grid, mix
from .io import Scenario, atomic_write, export_field, field_to_csv, load_scenario
from .statelib import StateSpec
from .weyl import wigner_from_density, wigner_from_pure


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _add_grid(p):
    base = default_grid()
    p.add_argument("--hbar", type=float, default=base.hbar)
    p.add_argument("--L", type=float, default=base.L)
    p.add_argument("--Nx", type=int, default=base.Nx)


def _add_state(p, multiple=False):
    if multiple:
        p.add_argument("--state", action="append", required=True,
                       help="state spec such as fock:0 or cat:d=6,parity=-1; repeat for an equal mixture")
        p.add_argument("--weights", help="comma-separated mixture weights")
    else:
        p.add_argument("--state", required=True, help="state or field spec, e.g. box:omega=4,shape=disk")


def _add_out(p):
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.add_argument("--format", choices=("csv", "json"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pslab", description="Phase-space entropy and admissibility laboratory")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("wigner", help="Wigner function of a state or mixture")
    _add_state(p, multiple=True); _add_grid(p); _add_out(p)

    p = sub.add_parser("husimi", help="Husimi function (Gaussian-smoothed Wigner function)")
    _add_state(p, multiple=True); _add_grid(p); _add_out(p)
    p.add_argument("--kappa", type=float, default=1.0)

    p = sub.add_parser("entropy", help="purity, S2 (both pictures), von Neumann and Wehrl entropies")
    _add_state(p, multiple=True); _add_grid(p); _add_out(p)
    p.add_argument("--kappa", type=float, default=1.0)

    p = sub.add_parser("admissibility", help="inverse-Weyl positivity report for a field")
    _add_state(p); _add_grid(p); _add_out(p)
    p.add_argument("--sigma", type=float, help="smooth with this symmetric width first")

    p = sub.add_parser("smooth", help="Gaussian smoothing of a field")
    _add_state(p); _add_grid(p); _add_out(p)
    p.add_argument("--sigma", type=float)
    p.add_argument("--sigma-x", type=float)
    p.add_argument("--sigma-p", type=float)

    p = sub.add_parser("probe", help="truncated smoothing integrals of exp(a (x^2+p^2))")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--cutoffs", default="2,3,4,5,6,7,8")
    _add_out(p)

    p = sub.add_parser("claims", help="run numbered claim checks")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--id", action="append", choices=CLAIM_IDS)
    g.add_argument("--all", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    _add_grid(p); _add_out(p)

    p = sub.add_parser("run", help="execute a scenario JSON file")
    p.add_argument("scenario")
    return parser


def _grid(args) -> PhaseSpaceGrid:
    return build_grid(args.hbar, args.L, args.Nx)


def _wigner_of(specs: list[StateSpec], weights, grid: PhaseSpaceGrid):
    """(Wigner field, density kernel or None) for one state, field or mixture."""
    if len(specs) == 1 and not specs[0].is_wavefunction:
        raise ValueError(f"{specs[0].kind} is a phase-space field, not a state")
    if any(not s.is_wavefunction for s in specs):
        raise ValueError("mixtures can only contain fock, coherent or cat states")
    psis = [s.build(grid) for s in specs]
    if len(psis) == 1 and weights is None:
        from .grid import density_from_pure
        return wigner_from_pure(psis[0]), density_from_pure(psis[0])
    rho = mix(psis, weights)
    return wigner_from_density(rho), rho


def _field_of(spec: StateSpec, grid: PhaseSpaceGrid) -> PhaseSpaceField:
    obj = spec.build(grid)
    return obj if isinstance(obj, PhaseSpaceField) else wigner_from_pure(obj)


def _kernel(params: dict, hbar: float) -> SmoothingKernel:
    sx = params.get("sigma_x") or params.get("sigma")
    sp = params.get("sigma_p") or params.get("sigma")
    if sx is None and sp is None:
        return SmoothingKernel.minimal_uncertainty(hbar)
    if sx is None or sp is None:
        raise ValueError("give --sigma, or both --sigma-x and --sigma-p")
    return SmoothingKernel(sx, sp)


def execute(op: str, grid: PhaseSpaceGrid, specs: list[StateSpec], params: dict, weights=None):
    """Run one operation; returns a PhaseSpaceField or a JSON-able object."""
    if op == "wigner":
        return _wigner_of(specs, weights, grid)[0]
    if op == "husimi":
        W, _ = _wigner_of(specs, weights, grid)
        return husimi_from_field(W, HusimiParameter(params.get("kappa", 1.0)))
    if op == "entropy":
        W, rho = _wigner_of(specs, weights, grid)
        Q = husimi_from_field(W, HusimiParameter(params.get("kappa", 1.0)))
        return {
            "states": [s.to_dict() for s in specs],
            "purity_integral": purity_integral(W),
            "s2_wigner": s2_wigner(W),
            "s2_operator": s2_operator(rho),
            "von_neumann": von_neumann_entropy(rho),
            "wehrl": wehrl_entropy(Q),
            "grid": grid.to_dict(),
        }
    if op == "admissibility":
        f = _field_of(specs[0], grid)
        if params.get("sigma") or params.get("sigma_x"):
            f = gaussian_smooth(f, _kernel(params, grid.hbar))
        return {"state": specs[0].to_dict(), "grid": grid.to_dict(), **admissibility_report(f).to_dict()}
    if op == "smooth":
        return gaussian_smooth(_field_of(specs[0], grid), _kernel(params, grid.hbar))
    if op == "probe":
        s = params.get("sigma", 1.0)
        return divergence_probe(params["a"], SmoothingKernel(s, s),
                                params.get("cutoffs", [2, 3, 4, 5, 6, 7, 8])).to_dict()
    if op == "claims":
        ids = params.get("ids") or [params["claim_id"]]
        jobs = max(1, params.get("jobs", 1))
        with ThreadPoolExecutor(jobs) as pool:
            reports = [r.to_dict() for r in pool.map(lambda c: run_claim(c, grid), ids)]
        return reports[0] if len(reports) == 1 and not params.get("all") else reports
    raise ValueError(f"unknown operation {op!r}")


def _emit(result, out: str | None, fmt: str | None) -> None:
    if fmt is None:
        fmt = "csv" if (out and out.endswith(".csv")) else "json"
    if isinstance(result, PhaseSpaceField):
        if out:
            export_field(result, fmt, out)
            return
        from .io import field_to_dict
        text = field_to_csv(result) if fmt == "csv" else json.dumps(field_to_dict(result))
    else:
        if fmt == "csv":
            raise ValueError("CSV output is only available for fields")
        text = json.dumps(result, indent=1) + "\n"
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _from_args(args):
    if args.command == "run":
        sc: Scenario = load_scenario(args.scenario)
        params = dict(sc.params)
        if sc.operation == "claims" and "claim_id" not in params:
            params.update(ids=list(CLAIM_IDS), all=True)
        return execute(sc.operation, sc.grid, [sc.state], params), sc.output_path, sc.output_format
    if args.command == "probe":
        cutoffs = [float(c) for c in args.cutoffs.split(",") if c.strip()]
        return execute("probe", None, [], {"a": args.a, "sigma": args.sigma, "cutoffs": cutoffs}), args.out, args.format
    grid = _grid(args)
    if args.command == "claims":
        ids = list(CLAIM_IDS) if args.all else args.id
        return execute("claims", grid, [], {"ids": ids, "all": args.all, "jobs": args.jobs}), args.out, args.format
    states = args.state if isinstance(args.state, list) else [args.state]
    specs = [StateSpec.parse(s) for s in states]
    params = {k: getattr(args, k) for k in ("kappa", "sigma", "sigma_x", "sigma_p") if getattr(args, k, None) is not None}
    weights = None
    if getattr(args, "weights", None):
        weights = [float(w) for w in args.weights.split(",")]
        if len(weights) != len(specs):
            raise ValueError("number of weights must match number of states")
    return execute(args.command, grid, specs, params, weights), args.out, args.format


def run_cli(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        result, out, fmt = _from_args(args)
        _emit(result, out, fmt)
    except UsageError as err:
        print(err, file=sys.stderr)
        return 1
    except NumericalGuardError as err:
        print(f"pslab: {type(err).__name__}: {err}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError, jsonschema.ValidationError) as err:
        print(f"pslab: error: {err}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
