"""Command-line front end: exactquant <command> [flags].

Exit codes: 0 all checks pass, 1 some check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from .checks import Check
from .parser import ParseError, Potential, parse_potential
from .report import Report

COMMANDS = ["crit-verify", "quantise-verify", "strict-derivation", "twisted-derham", "schouten-props",
            "mc-check", "rees-check", "tdo-check", "quad-regression", "suite"]


@dataclass
class Config:
    command: str
    dim: int = 1
    f: Optional[str] = None
    vars: Optional[List[str]] = None
    cutoff: int = 6
    hbar_order: int = 6
    seed: int = 0
    samples: int = 200
    out: Optional[str] = None
    format: str = "json"
    timing: bool = True

    def potential(self) -> Potential:
        text = self.f
        if text is None:
            names = self.vars or [f"y{i}" for i in range(1, self.dim + 1)]
            text = " + ".join(f"{v}^2/2" for v in names)
        return parse_potential(text, self.vars, self.dim)


def _model(cfg: Config):
    from .dcrit import build_crit

    p = cfg.potential()
    return p, build_crit(cfg.dim, p.as_dict(), p.vars)


def _inputs(cfg: Config, p: Optional[Potential] = None, **extra) -> Dict:
    out: Dict = {"dim": cfg.dim}
    if p is not None:
        out["f"] = p.canonical()
        out["vars"] = list(p.vars)
    out.update(extra)
    return out


# --------------------------------------------------------------------------
# commands; each fills a Report


def cmd_crit_verify(cfg: Config, rep: Report):
    from .dcrit import canonical_exact_structure, model_checks, strict_poisson_with_derivation, twisted_dmodule_action

    p, model = _model(cfg)
    rep.inputs = _inputs(cfg, p)
    rep.extend(model_checks(model))
    ex = canonical_exact_structure(model)
    rep.extend(ex.checks)
    triple = strict_poisson_with_derivation(model)
    rep.extend(triple.checks)
    dm = twisted_dmodule_action(cfg.dim, p.as_dict(), p.vars)
    rep.extend(dm.checks)
    rep.results.update({"lambda": ex.lam, "omega": ex.omega, "pi": triple.pi, "D0": triple.d0,
                        "D1": triple.d1, "D0 constant": triple.d0_constant, "D1 constant": triple.d1_constant,
                        "twist terms": dm.twist_terms})


def cmd_quantise_verify(cfg: Config, rep: Report):
    from .dcrit import canonical_quantisation

    p, model = _model(cfg)
    rep.inputs = _inputs(cfg, p)
    q = canonical_quantisation(model)
    rep.extend(q.checks)
    rep.results.update({"delta": q.delta, "d": q.d, "Delta": q.Delta, "D": q.D, "deg_Omega": q.deg_omega})


def cmd_strict_derivation(cfg: Config, rep: Report):
    from .dcrit import shifted_cotangent_triple, strict_poisson_with_derivation
    from .dgla import CoconeElement, cocone_defect
    from .rees import expand_formal_derivation, strict_triple_check

    p, model = _model(cfg)
    rep.inputs = _inputs(cfg, p, hbar_order=cfg.hbar_order)
    triple = strict_poisson_with_derivation(model)
    rep.extend(triple.checks, "Crit: ")
    pol = triple.pol
    first, second = cocone_defect(pol, CoconeElement(triple.pi, triple.D))
    rep.extend([Check("Crit: MC(pi) = 0", first), Check("Crit: delta D + [pi, D] + sigma(pi) = 0", second)])
    exp = expand_formal_derivation(pol, triple.pi, triple.D, cfg.hbar_order)
    rep.extend([
        Check("Crit: hbar-expanded derivation equation", exp.equation),
        Check("Crit: hbar-expanded equation = scaled cocone equation", exp.equation - exp.equation_via_scaling),
        Check("Crit: D_hbar kills R[[hbar]]", exp.kills_constants),
        Check("Crit: pi_hbar and D_hbar are star-fixed", exp.star_fixed),
    ])
    # perturbations must be rejected
    zero = pol.alg.zero()
    d = strict_triple_check(pol, triple.pi, triple.d0, zero)
    rep.extend([Check("Crit: D1 = 0 gives third defect pi", d[2] - triple.pi),
                Check("Crit: doubled D1 is rejected", any(strict_triple_check(pol, triple.pi, triple.d0, triple.d1 * 2)))])
    shifted = {}
    for n in (0, 1, 2):
        spol, pi, D0, D1, c, defects = shifted_cotangent_triple(cfg.dim, n)
        names = ("delta D0", "delta D1 + [pi, D0]", "[pi, D1] + pi")
        rep.extend([Check(f"T*[{n}]A^{cfg.dim}: {nm} = 0", x) for nm, x in zip(names, defects)])
        bad = strict_triple_check(spol, pi, D0, D1 * 2)
        rep.checks.append(Check(f"T*[{n}]A^{cfg.dim}: doubled D1 is rejected", bool(bad[2])))
        shifted[f"n={n}"] = {"D1": D1, "constant": c}
    rep.results.update({"pi": triple.pi, "D0": triple.d0, "D1": triple.d1, "D0 constant": triple.d0_constant,
                        "D1 constant": triple.d1_constant, "pi_hbar": exp.pi_h, "D_hbar": exp.D_h,
                        "arity hbar ranges": {str(k): list(v) for k, v in sorted(exp.arities.items())},
                        "shifted cotangent": shifted})


def cmd_twisted_derham(cfg: Config, rep: Report):
    from .dcrit import koszul_cohomology, twisted_derham_cohomology

    p = cfg.potential()
    rep.inputs = _inputs(cfg, p, cutoff=cfg.cutoff)
    tw = twisted_derham_cohomology(cfg.dim, p.as_dict(), cfg.cutoff, p.vars)
    rep.checks.append(Check(f"twisted de Rham dims stable between cutoffs {cfg.cutoff} and {cfg.cutoff + 1}",
                            None if tw.stabilized else f"{tw.dims} vs {tw.dims_next}"))
    kz = koszul_cohomology(cfg.dim, p.as_dict(), cfg.cutoff, p.vars)
    rep.results.update({"dims": tw.dims, "dims next cutoff": tw.dims_next,
                        "koszul dims": kz.dims, "koszul dims next cutoff": kz.dims_next,
                        "koszul stabilized": kz.stabilized})


def _pol(cfg: Config):
    from .polyvectors import PolyvectorDGLA

    p, model = _model(cfg)
    return p, model, PolyvectorDGLA(model.cdga, -1)


def cmd_schouten_props(cfg: Config, rep: Report):
    from .laws import operator_laws, schouten_laws

    p, model, pol = _pol(cfg)
    rep.inputs = _inputs(cfg, p, samples=cfg.samples)
    rng = random.Random(cfg.seed)
    rep.extend(schouten_laws(pol, rng, cfg.samples))
    rep.extend(operator_laws(model.alg, rng, cfg.samples))


def cmd_mc_check(cfg: Config, rep: Report):
    from .dcrit import standard_bivector, strict_poisson_with_derivation
    from .dgla import CoconeElement, SimplicialForms, TensorForms, cocone_defect, constant_extension, mc_defect, \
        simplicial_mc_check
    from .laws import cocone_laws, toy_path

    p, model, pol = _pol(cfg)
    rep.inputs = _inputs(cfg, p, samples=cfg.samples)
    L, T, X = toy_path()
    ok, defect = simplicial_mc_check(L, 1, X)
    rep.checks.append(Check("toy path a + 3t b - 3x dt is MC on Delta^1", None if ok else T.render(defect)))
    L, T, Y = toy_path(xi_scale=Fraction(2))
    ok, defect = simplicial_mc_check(L, 1, Y)
    rep.checks.append(Check("perturbed toy path is rejected", None if not ok else "accepted"))
    T2 = TensorForms(L, SimplicialForms(2))
    ok, defect = simplicial_mc_check(L, 2, constant_extension(T2, L.vec(a=1, b=2)))
    rep.checks.append(Check("constant extension to Delta^2 is MC", None if ok else T2.render(defect)))
    pi = standard_bivector(model, pol)
    rep.checks.append(Check("MC(pi) = 0 for the standard bivector", mc_defect(pol, pi)))
    triple = strict_poisson_with_derivation(model)
    first, second = cocone_defect(pol, CoconeElement(pi, triple.D))
    rep.extend([Check("cocone: MC part", first), Check("cocone: derivation part", second)])
    _, bad = cocone_defect(pol, CoconeElement(pi, triple.d0 + triple.d1 * 2))
    rep.checks.append(Check("cocone: doubled D1 is rejected", bool(bad)))
    rng = random.Random(cfg.seed)
    rep.extend(cocone_laws(pol, rng, cfg.samples))
    rep.results.update({"pi": pi, "D": triple.D, "perturbed defect": bad})


def cmd_rees_check(cfg: Config, rep: Report):
    from .dcrit import strict_poisson_with_derivation
    from .laws import rees_laws
    from .rees import expand_formal_derivation

    p, model, pol = _pol(cfg)
    rep.inputs = _inputs(cfg, p, samples=cfg.samples, hbar_order=cfg.hbar_order)
    rng = random.Random(cfg.seed)
    rep.extend(rees_laws(pol, rng, cfg.samples))
    triple = strict_poisson_with_derivation(model)
    exp = expand_formal_derivation(pol, triple.pi, triple.D, cfg.hbar_order)
    rep.checks.append(Check("strict triple expands to a formal derivation over hbar", exp.passed))
    nil = expand_formal_derivation(pol, pol.alg.zero(), pol.alg.zero(), cfg.hbar_order)
    rep.checks.append(Check("D = 0, pi = 0 expands to hbar d/dhbar alone", nil.passed and not nil.D_h.terms))
    rep.results.update({"pi_hbar": exp.pi_h, "D_hbar": exp.D_h,
                        "arity hbar ranges": {str(k): list(v) for k, v in sorted(exp.arities.items())}})


def cmd_tdo_check(cfg: Config, rep: Report):
    from .laws import tdo_laws
    from .tdo import TdoAlgebra, tdo_anti_involution, v_filtration_level

    rep.inputs = {"samples": cfg.samples}
    rng = random.Random(cfg.seed)
    rep.extend(tdo_laws(rng, cfg.samples))
    T = TdoAlgebra(1, ["x"])
    A = T.A
    x, one = A.gen("x"), A.one()
    dx = T.frame(0)
    g, u = T.star_product(x, (A.zero(), {0: one}))
    half = Fraction(1, 2)
    rep.extend([
        Check("x * (0, d) = (-1/2, x d)",
              None if g == one * (-half) and list(u) == [0] and u[0] == x else f"got ({g}, {u})"),
        Check("d . x = x d + 1", T.normalize([(A.zero(), {0: one}), (x, {})]) - (T.function(x) * dx + T.function(one))),
        Check("(x d + 1/2)^t = -(x d + 1/2)",
              tdo_anti_involution(T.v0(A.zero(), {0: x})) + T.v0(A.zero(), {0: x})),
        Check("(d^2)^t = d^2", tdo_anti_involution(T.frame(0, 2)) - T.frame(0, 2)),
        Check("V-levels of f, d, d^2 are -1, 0, 1",
              None if [v_filtration_level(T.function(x)), v_filtration_level(dx), v_filtration_level(T.frame(0, 2))]
              == [-1, 0, 1] else "wrong levels"),
    ])
    rep.results["v0(0, x d)"] = T.v0(A.zero(), {0: x})


def cmd_quad_regression(cfg: Config, rep: Report):
    from .dcrit import quad_regression

    rep.inputs = {}
    q = quad_regression()
    rep.extend(q.checks)
    rep.results.update(q.values)


HANDLERS: Dict[str, Callable[[Config, Report], None]] = {
    "crit-verify": cmd_crit_verify,
    "quantise-verify": cmd_quantise_verify,
    "strict-derivation": cmd_strict_derivation,
    "twisted-derham": cmd_twisted_derham,
    "schouten-props": cmd_schouten_props,
    "mc-check": cmd_mc_check,
    "rees-check": cmd_rees_check,
    "tdo-check": cmd_tdo_check,
    "quad-regression": cmd_quad_regression,
}

RANDOMIZED = {"schouten-props", "mc-check", "rees-check", "tdo-check"}


def _run_handler(name: str, cfg: Config, rep: Report, prefix: str = ""):
    sub = Report(name, {})
    try:
        HANDLERS[name](cfg, sub)
    except ParseError:
        raise
    except Exception as e:  # module errors become failed checks
        sub.checks.append(Check(f"{name} completed", f"{type(e).__name__}: {e}"))
    rep.extend(sub.checks, prefix)
    if prefix:
        rep.results[name] = sub.results
    else:
        rep.inputs = sub.inputs
        rep.results = sub.results


def run(cfg: Config) -> Report:
    rep = Report(cfg.command, {}, seed=cfg.seed if cfg.command in RANDOMIZED | {"suite"} else None)
    start = time.perf_counter()
    if cfg.command == "suite":
        p = cfg.potential()
        rep.inputs = _inputs(cfg, p, cutoff=cfg.cutoff, hbar_order=cfg.hbar_order, samples=cfg.samples)
        for name in HANDLERS:
            _run_handler(name, cfg, rep, prefix=name + ": ")
    else:
        _run_handler(cfg.command, cfg, rep)
    if cfg.timing:
        rep.elapsed_ms = int(round((time.perf_counter() - start) * 1000))
    return rep


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="exactquant", description="Exact checks for shifted quantisation identities.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--dim", type=int, default=1, help="number of base variables m (default 1)")
    ap.add_argument("--f", default=None, help="potential, e.g. 't^2/2' (default: sum of y_i^2/2)")
    ap.add_argument("--vars", default=None, help="comma-separated variable names (default y1..ym)")
    ap.add_argument("--cutoff", type=int, default=6, help="polynomial degree cutoff for cohomology")
    ap.add_argument("--hbar-order", type=int, default=6, help="hbar truncation order")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--out", default=None, help="write the report here instead of stdout")
    ap.add_argument("--format", choices=["json"], default="json")
    ap.add_argument("--no-timing", action="store_true", help="report elapsed_ms as null")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0) and 2
    if ns.dim < 1:
        print("error: --dim must be at least 1", file=sys.stderr)
        return 2
    if ns.samples < 1:
        print("error: --samples must be positive", file=sys.stderr)
        return 2
    names = [v.strip() for v in ns.vars.split(",")] if ns.vars else None
    cfg = Config(ns.command, ns.dim, ns.f, names, ns.cutoff, ns.hbar_order, ns.seed, ns.samples, ns.out,
                 ns.format, not ns.no_timing)
    try:
        cfg.potential()
        rep = run(cfg)
    except (ParseError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = rep.to_json()
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
