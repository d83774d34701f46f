"""Acceptance suite: one PASS/FAIL line per criterion, tolerances exact unless stated.

Runtime limits are measured in a fresh interpreter so that caches filled by earlier
tests do not flatter the timings.
"""

import json
import subprocess
import sys
import time

import pytest

from uqtorus import mcg, suites
from uqtorus.hopf import uq
from uqtorus.repns import hom_space, simple_module, tensor_module

PS = (2, 3, 4, 5)

_COLD = """
import json, sys
from uqtorus import mcg, suites
from uqtorus.quasi import build_ribbon
from uqtorus.hopf import uq
p = int(sys.argv[1])
checks = []
{body}
print(json.dumps({{c.check_id: bool(c.ok) for c in checks}}))
"""


def cold(p, body):
    """Run body in a fresh interpreter; return (seconds, {check_id: ok})."""
    t0 = time.perf_counter()
    out = subprocess.run([sys.executable, "-c", _COLD.format(body=body), str(p)],
                         capture_output=True, text=True, check=True)
    return time.perf_counter() - t0, json.loads(out.stdout.strip().splitlines()[-1])


def report(n, title, ok, detail=""):
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {title}" + (f" [{detail}]" if detail else ""))
    return ok


def failing(results):
    return sorted(k for k, ok in results.items() if not ok)


def test_criterion_1_dimensions():
    body = """
checks += [c for c in suites.hopf_suite(p) if c.check_id == "dim"]
checks += [c for c in suites.slf_suite(p) if c.check_id in ("dim SLF", "dim Z")]
rank = build_ribbon(uq(p)).drinfeld_rank()
checks.append(mcg.Check("Drinfeld map rank", rank == 2 * p ** 3))
"""
    bad, t3 = {}, None
    for p in PS:
        t, res = cold(p, body)
        assert len(res) == 4
        if p == 3:
            t3 = t
        if failing(res):
            bad[p] = failing(res)
    ok = not bad and t3 < 10
    assert report(1, "dim U = 2p^3, dim SLF = dim Z = 3p-1, Drinfeld rank 2p^3", ok, f"p=3 in {t3:.1f}s {bad}")


def test_criterion_2_convention_gate():
    bad, worst = {}, 0.0
    for p in PS:
        t, res = cold(p, "checks += suites.convention_gate(p)")
        worst = max(worst, t)
        assert len(res) == 2
        if failing(res):
            bad[p] = failing(res)
    ok = not bad and worst < 5
    assert report(2, "Psi01 displayed matrix and presentation relations", ok, f"max {worst:.1f}s {bad}")


def test_criterion_3_ribbon():
    bad, t5 = {}, None
    for p in PS:
        t, res = cold(p, "checks += [c for c in suites.ribbon_suite(p) if c.check_id not in "
                         "('Psi01(M) on X+(2) = displayed matrix', 'L01 presentation relations')]")
        if p == 5:
            t5 = t
        if failing(res):
            bad[p] = failing(res)
    ok = not bad and t5 < 60
    assert report(3, "ribbon structure (YBE, hexagons, u, v, g, eigenvalues)", ok, f"p=5 in {t5:.1f}s {bad}")


def test_criterion_4_integrals():
    bad = {}
    for p in PS:
        res = {c.check_id: c.ok for c in suites.integrals_suite(p)}
        wanted = ("left integral unique", "mu_l left integral", "two-sided cointegral", "unibalanced",
                  "mu_l(xy) = mu_l(y S^2(x))")
        assert set(wanted) <= set(res)
        if failing(res):
            bad[p] = failing(res)
    assert report(4, "integral unique, unimodular, unibalanced, S^2-twisted symmetry", not bad, str(bad))


def test_criterion_5_mcg_core():
    body = """
data = mcg.build_slf(p)
rep = mcg.build_rep(data)
checks += mcg.verify_relations(rep, data, operator_level=False)
checks.append(mcg.Check("scalar_braid = 1", rep.scalar_braid == data.alg.ctx.one))
checks.append(mcg.Check("scalar_cube = ratio", rep.scalar_cube == data.integrals.ratio))
"""
    bad, t5 = {}, None
    for p in PS:
        t, res = cold(p, body)
        for cid in ("braid", "cube", "omega^2 = ratio S", "S = id on SLF", "scalar_braid = 1"):
            assert cid in res
        if p == 5:
            t5 = t
        if failing(res):
            bad[p] = failing(res)
    ok = not bad and t5 < 120
    assert report(5, "braid scalar 1, (rho_a rho_b)^3 = ratio Id, omega^2 = ratio Id", ok, f"p=5 in {t5:.1f}s {bad}")


def _closed_form_checks(p):
    data = mcg.build_slf(p)
    return {c.check_id: c for c in mcg.verify_closed_forms(mcg.build_rep(data), data, bits=60)}


def test_criterion_6_closed_form_columns():
    bad = {}
    for p in PS:
        checks = _closed_form_checks(p)
        cols = {cid: c for cid, c in checks.items() if cid.startswith("rho_")}
        assert len(cols) == 2 * (3 * p - 1)
        pin = cols.pop("rho_b[chi+_1]")
        assert pin.values["note"].startswith("pinning case")
        fails = [cid for cid, c in cols.items() if not c.ok]
        if fails:
            bad[p] = fails
        # exact xi identity and the corrected closed form to 60 bits
        if not (checks["xi^-2 corrected exact"].ok and checks["xi corrected closed form"].ok):
            bad.setdefault(p, []).append("xi corrected")
    assert report(6, "rho(tau_a), rho(tau_b) closed-form columns (pinning column flagged)", not bad, str(bad))


@pytest.mark.xfail(strict=True, reason="the printed closed form of xi is off by a p-dependent factor; "
                                       "see the README and decisions ledger")
def test_criterion_6_xi_printed_closed_form():
    res = {p: _closed_form_checks(p)["xi printed closed form"] for p in PS}
    ok = all(c.ok for c in res.values())
    ratios = {p: c.values["xi/xi_printed"] for p, c in res.items()}
    report(6, "xi matches its printed closed form to 60 bits", ok, f"xi/printed = {ratios}")
    assert ok


def test_criterion_7_decomposition():
    bad = {}
    for p in PS:
        data = mcg.build_slf(p)
        dec, checks = mcg.decompose(mcg.build_rep(data), data)
        res = {c.check_id: c.ok for c in checks}
        assert len(dec.V_basis) == p + 1
        ctx = data.alg.ctx
        res["w_s formulas"] = all([dec.W_b[j][s - 1] for j in range(p - 1)] == mcg.w_tau_b(ctx, s, data.space.xi)
                                  for s in range(1, p))
        if failing(res):
            bad[p] = failing(res)
    assert report(7, "SLF = V + C^2 (x) W with explicit intertwiner", not bad, str(bad))


def test_criterion_8_lyubashenko_majid():
    # S is linear in the scale of mu_l; S^2 = id holds for the integral with
    # mu_l(v) mu_l(v^-1) = 1, which reads S^2 = mu_l(v) mu_l(v^-1) Id for the pinned one.
    bad, norms = {}, {}
    for p in PS:
        data = mcg.build_slf(p)
        checks = mcg.verify_equivalence(mcg.lm_operators(data), mcg.build_rep(data), data)
        res = {c.check_id: c.ok for c in checks}
        norms[p] = str(next(c for c in checks if c.check_id == "S^2 = id on center").values["mu_l(v) mu_l(v^-1)"])
        if failing(res):
            bad[p] = failing(res)
    assert norms[2] == "1"
    assert report(8, "f S = mu_l(v^-1) S' f, f T = T' f, S^2 = id (normalised integral)", not bad,
                  f"mu_l(v) mu_l(v^-1) = {norms} {bad}")


def test_criterion_9_invariance():
    bad = {}
    for p in (2, 3):
        res = {c.check_id: c.ok for c in mcg.invariance_checks(mcg.build_slf(p))}
        assert "non-invariant E_A fails to commute with C^(+-)" in res
        if failing(res):
            bad[p] = failing(res)
    assert report(9, "C^(+-) commutation, C^(+-) psi = psi Id, boundary C = id", not bad, str(bad))


def test_criterion_10_structure_and_probe():
    bad = {}
    for p in (2, 3):
        res = {c.check_id: c.ok for c in mcg.structure_checks(mcg.build_slf(p))}
        if failing(res):
            bad[p] = failing(res)
    probe = mcg.conjecture_probe(mcg.build_slf(2))
    stable = [c for c in probe if c.check_id.startswith("probe V-stable")]
    X2 = simple_module(uq(2), "+", 2)
    assert len(stable) == 16 + len(hom_space(tensor_module(X2, X2), tensor_module(X2, X2)))
    assert all(suites.status_of("conjecture", c) == "probe" for c in probe)
    summary = f"probe: {sum(c.ok for c in stable)}/{len(stable)} V-stable"
    assert report(10, "SLF generated by chi+_1; conjecture probe recorded (non-gating)", not bad, f"{summary} {bad}")
