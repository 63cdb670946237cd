"""Batch command-line interface.

Reads a run configuration, dispatches to the computation modules and prints
a deterministic report (sorted keys, 15 significant digits).  Exit codes:
0 success, 1 computation error, 2 config error, 3 self-test failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import config as cfg
from .serialize import canonical_dumps, euler_to_json, format_float


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="doublecheck",
                                 description="doubling-method L-function toolkit")
    ap.add_argument("--config", help="JSON (or TOML) run configuration")
    ap.add_argument("--command", help="override / supply the command name")
    ap.add_argument("--format", choices=("json", "text"), default=None)
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--max-enum", type=int, default=None, dest="max_enum")
    ap.add_argument("--tolerance", type=float, default=None)
    args = ap.parse_args(argv)

    try:
        conf = cfg.load_config(args.config) if args.config else {}
        for key in ("command", "format", "workers", "max_enum", "tolerance"):
            v = getattr(args, key)
            if v is not None:
                conf[key] = v
        conf.setdefault("format", "json")
        conf = cfg.validate(conf)
    except (cfg.ConfigError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    try:
        report = _dispatch(conf)
    except Exception as exc:  # computation failure, reported with context
        print(f"computation error [{conf['command']}]: {exc}", file=sys.stderr)
        return 1

    if conf["format"] == "json":
        sys.stdout.write(canonical_dumps(report))
    else:
        _print_text(report)
    if conf["command"] == "selftest" and not report.get("all_passed", True):
        return 3
    return 0


def _print_text(report, indent=0):
    pad = "  " * indent
    if isinstance(report, dict):
        for k in sorted(report):
            v = report[k]
            if isinstance(v, (dict, list)):
                print(f"{pad}{k}:")
                _print_text(v, indent + 1)
            else:
                print(f"{pad}{k}: {v}")
    elif isinstance(report, list):
        for v in report:
            _print_text(v, indent)
    else:
        print(f"{pad}{report}")


def _dispatch(conf: dict) -> dict:
    return {
        "lfactor": _cmd_lfactor,
        "modfactor": _cmd_modfactor,
        "coset": _cmd_coset,
        "gauss": _cmd_gauss,
        "fourier": _cmd_fourier,
        "arch": _cmd_arch,
        "interp": _cmd_interp,
        "selftest": _cmd_selftest,
    }[conf["command"]](conf)


def _cmd_lfactor(conf):
    from .localfactors import normalizing_b, ramified_inv, split_case_inv, unramified_inv
    case = conf["case"]
    m, r = conf["m"], conf.get("r", 0)
    klass = conf.get("class", "unramified")
    if klass == "unramified":
        ep = unramified_inv(case, m, r)
    elif klass == "split":
        ep = split_case_inv(case, m, r)
    elif klass == "normalizing":
        ep = normalizing_b(case, conf.get("n", 2 * m + r))
    else:
        ep = ramified_inv(case, m, r, conf.get("conductor_exp", 0))
    out = {"case": case, "m": m, "r": r, "class": klass,
           "inverse_factor": euler_to_json(ep)}
    if conf.get("satake") is not None and conf.get("q") is not None and conf.get("s") is not None:
        from .localfactors import standard_values
        sat = [Fraction(x) if isinstance(x, str) else x for x in conf["satake"]]
        vals = standard_values(conf["q"], cfg.as_fraction(conf["s"]), satake=sat,
                               chi_value=conf.get("chi", 1), betas=sat)
        out["numeric_inverse"] = format_float(ep.evaluate(vals))
    return out


def _cmd_modfactor(conf):
    from .localfactors import ml_shift_identity, modification_M
    case, m, r = conf["case"], conf["m"], conf.get("r", 0)
    ep = modification_M(case, m, r)
    ok, witness = ml_shift_identity(case, m, r)
    return {"case": case, "m": m, "r": r,
            "modification_factor": euler_to_json(ep),
            "shift_identity_holds": ok,
            "witness": repr(witness) if witness else None}


def _cmd_coset(conf):
    from .cosets import lemma32_reps, verify_decomposition
    from .groups import GroupShape
    case, m, p = conf["case"], conf["m"], conf["p"]
    c = conf.get("c", 1)
    u_exps = conf.get("u_exponents", [1] * m)
    shape = GroupShape(case, m, 0)
    reps = lemma32_reps(shape, p, c, u_exps,
                        size_cap=conf.get("max_enum", 200000))
    out = {"case": case, "m": m, "p": p, "c": c, "u_exponents": u_exps,
           "count": len(reps)}
    if conf.get("verify", True):
        rep = verify_decomposition(shape, p, c, u_exps, reps, N=conf.get("N"))
        out["disjoint"] = rep.disjoint
        out["covers"] = rep.covers
        out["failures"] = rep.failures
    return out


def _cmd_gauss(conf):
    from .gauss import (FiniteCharacter, gauss_sum, matrix_gauss_bruteforce,
                        matrix_gauss_closed)
    from .residue import ZModRing
    from .serialize import cyclotomic_to_json
    p, c, order = conf["p"], conf["c"], conf["order"]
    chi = FiniteCharacter(ZModRing(p, c), order)
    g = gauss_sum(chi)
    out = {"p": p, "c": c, "order": order,
           "conductor_exp": chi.conductor_exp,
           "gauss_sum": cyclotomic_to_json(g),
           "abs_squared": format_float(abs(g.eval_complex()) ** 2)}
    if conf.get("beta") is not None:
        m = conf.get("m", len(conf["beta"]))
        brute = matrix_gauss_bruteforce(chi, conf["beta"], m)
        closed = matrix_gauss_closed(chi, conf["beta"], m)
        out["matrix_bruteforce"] = cyclotomic_to_json(brute)
        out["matrix_closed"] = cyclotomic_to_json(closed)
        out["match"] = brute == closed
    return out


def _cmd_fourier(conf):
    from .algebras import Mat
    from .fourier import global_fc
    from .gauss import FiniteCharacter
    from .groups import GroupShape
    from .residue import ZModRing
    shape = GroupShape(conf["case"], conf["m"], conf.get("r", 0))
    beta = Mat(shape.alg, [[Fraction(x) if isinstance(x, str) else x for x in row]
                           for row in conf["beta"]])
    cexp = conf.get("chi_conductor_exp", 1)
    chi = FiniteCharacter(ZModRing(conf["p"], cexp), conf.get("chi_order", 2)) \
        if cexp > 0 else None
    rep = global_fc(shape, conf["l"], beta, conf["p"], conf.get("n_level", 1), chi)
    out = {"nonzero": rep.nonzero, "gates": rep.gates}
    if rep.nonzero:
        out["d_pi"] = str(rep.d_pi)
        out["numeric"] = format_float(rep.numeric)
    return out


def _cmd_arch(conf):
    from .arch import ArchParams, c_l, gamma_factor, xi_closed_form, xi_quadrature, zero_criterion
    op = conf.get("operation", "xi")
    case, l = conf["case"], conf["l"]
    if op == "c_l":
        expr = c_l(case, conf.get("m", 1), conf.get("r", 0), l,
                   cfg.as_fraction(conf.get("s", 0)))
        return {"pi_exponent": str(expr.pi_exponent),
                "gamma_numerator": [str(a) for a in expr.num],
                "gamma_denominator": [str(a) for a in expr.den],
                "value": format_float(expr.value())}
    if op == "zero":
        params = ArchParams(case, conf.get("m", 1) * 2 + conf.get("r", 0), l,
                            Fraction(l), Fraction(0), conf.get("t", 0),
                            conf.get("t_plus", 0), conf.get("t_minus", 0))
        return zero_criterion(params)
    beta = float(cfg.as_fraction(conf.get("beta", 1)))
    y = float(cfg.as_fraction(conf.get("y", 1)))
    s1 = float(cfg.as_fraction(conf.get("s1", l)))
    s2 = float(cfg.as_fraction(conf.get("s2", 0)))
    val, err = xi_quadrature(y, beta, s1, s2)
    out = {"quadrature": format_float(val), "error_estimate": format_float(err)}
    if s2 == 0 and s1 == l and case == "II":
        closed = xi_closed_form(case, y, beta, l)
        out["closed_form"] = format_float(closed)
        denom = max(abs(closed), 1e-30)
        out["relative_difference"] = format_float(abs(val - closed) / denom)
    return out


def _cmd_interp(conf):
    from .cyclotomic import Cyclotomic
    from .gauss import FiniteCharacter
    from .groups import GroupShape
    from .interp import (InterpolationInput, algebraicity_ratio, interp_symplectic,
                         interp_unitary, special_point)
    from .localfactors import EigenformData, LocalPlaceData
    from .residue import ZModRing
    case, m, r, l, p = conf["case"], conf["m"], conf.get("r", 0), conf["l"], conf["p"]
    op = conf.get("operation", "value")
    if op == "special-point":
        sp = special_point(case, m, r, l)
        return {k: str(v) for k, v in sp.items()}
    c = conf.get("conductor_exp", 0)
    chi_p = FiniteCharacter(ZModRing(p, c), conf.get("chi_order", 2)) if c > 0 else None
    q_aux = conf.get("q_aux", 7)
    sat = [Fraction(x) if isinstance(x, str) else Fraction(x)
           for x in conf.get("satake", [2])]
    chi_val = chi_p.value(q_aux % (p ** c)) if chi_p else Cyclotomic.rational(1)
    shape = GroupShape(case, m, r)
    places = {
        "aux": LocalPlaceData(q=q_aux, ram_class="unramified", m_local=m, r_local=r,
                              satake=sat * m if len(sat) == 1 else sat,
                              chi_value=chi_val),
        "p": LocalPlaceData(q=p, ram_class="p-stabilized", m_local=m, r_local=r,
                            satake=[Fraction(1)] * m, chi_value=1, conductor_exp=c),
    }
    ef = EigenformData(weight=l, degree=1, places=places, p=[("p", 1)],
                       alpha_p=cfg.as_fraction(conf.get("alpha", 1)))
    inp = InterpolationInput(shape=shape, eigenform=ef, l=l, chi_p=chi_p,
                             place_set=["aux"])
    if op == "ratio":
        rep = algebraicity_ratio(inp)
        return {"pi_exponent": str(rep["ratio"].pi_exp),
                "exponent_match": rep["exponent_match"],
                "audit": {k: str(v) for k, v in rep["audit"].items()}}
    rec = (interp_symplectic if shape.family in ("II", "III") else interp_unitary)(inp)
    return {
        "case": case, "s0": str(rec["s0"]), "conductor_exp": rec["conductor_exp"],
        "dual_path_equal": rec["dual_path_equal"],
        "factors": {name: format_float(f.to_complex()) for name, f in rec["factors"].items()},
        "total": format_float(rec["total"].to_complex()),
    }


def _cmd_selftest(conf):
    suite = conf["suite"]
    workers = conf.get("workers", 1)
    suites = {
        "gauss": _selftest_gauss,
        "identities": _selftest_identities,
        "cosets": _selftest_cosets,
        "arch": _selftest_arch,
    }
    if suite == "all":
        items = [(name, fn) for name, fn in suites.items()]
    elif suite in suites:
        items = [(suite, suites[suite])]
    else:
        raise ValueError(f"unknown suite {suite!r} (have {sorted(suites)} and 'all')")
    results = {}
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {name: pool.submit(fn, conf) for name, fn in items}
            for name in sorted(futures):
                results[name] = futures[name].result()
    else:
        for name, fn in items:
            results[name] = fn(conf)
    all_passed = all(r["passed"] for r in results.values())
    return {"suites": results, "all_passed": all_passed}


def _selftest_gauss(conf):
    from .gauss import FiniteCharacter, gauss_sum, matrix_gauss_bruteforce, matrix_gauss_closed
    from .residue import ZModRing
    matrix = {}
    ok = True
    for p in (3, 5, 7):
        for c in (1, 2):
            ring = ZModRing(p, c)
            chi = FiniteCharacter(ring, 2)
            g = gauss_sum(chi)
            exact = (g * g.conj()) == ring.modulus if chi.is_primitive() else True
            betas = [[[1]], [[0]], [[1, 0], [0, 1]], [[1, 1], [1, 1]]]
            match = all(matrix_gauss_bruteforce(chi, b, len(b))
                        == matrix_gauss_closed(chi, b, len(b)) for b in betas)
            matrix[f"p={p},c={c}"] = bool(exact and match)
            ok = ok and exact and match
    return {"passed": ok, "matrix": matrix}


def _selftest_identities(conf):
    from .localfactors import caseIV_identity_check, ml_shift_identity
    ok = True
    detail = {}
    for mm in (1, 2, 3):
        for rr in (0, 1):
            good, _ = caseIV_identity_check(mm, rr)
            detail[f"caseIV m={mm} r={rr}"] = good
            ok = ok and good
    for case in ("I", "II", "III", "IV", "V-inert", "V-ramified"):
        good, _ = ml_shift_identity(case, 2, 0 if case == "II" else 1)
        detail[f"shift {case}"] = good
        ok = ok and good
    return {"passed": ok, "matrix": detail}


def _selftest_cosets(conf):
    from .cosets import lemma32_reps, verify_decomposition
    from .groups import GroupShape
    detail = {}
    ok = True
    for case, m in (("II", 1), ("I", 1)):
        shape = GroupShape(case, m, 0)
        reps = lemma32_reps(shape, 3, 1, [1] * m)
        rep = verify_decomposition(shape, 3, 1, [1] * m, reps)
        detail[f"{case} m={m}"] = rep.verified
        ok = ok and rep.verified
    return {"passed": ok, "matrix": detail}


def _selftest_arch(conf):
    from .arch import xi_closed_form, xi_quadrature
    detail = {}
    ok = True
    for l in (2, 3):
        v, _ = xi_quadrature(1.0, 1.0, float(l), 0.0)
        cf = xi_closed_form("II", 1.0, 1.0, l)
        good = abs(v - cf) <= 1e-6 * abs(cf)
        detail[f"l={l}"] = good
        ok = ok and good
    return {"passed": ok, "matrix": detail}


if __name__ == "__main__":
    sys.exit(main())
