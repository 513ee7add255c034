"""Verification campaigns behind the command-line subcommands.

Each campaign takes a validated :class:`~infravac.config.CampaignConfig` and a
seeded generator and returns a :class:`~infravac.report.Section`.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from . import dressing as dr
from . import harmonics as hm
from . import kpr as kp
from . import sectors as sc
from .fieldspace import ShellGrid
from .groups import (all_subgroups, catalogue, check_orbit_forms, check_merging_theorem,
                     check_prop_equivalences, find_equivalence_counterexample, find_merging_counterexample, random_action,
                     relative_normalizer, stabilizer)
from .groups.io import parse_group, read_group_violations
from .report import Section


def _grid(cfg) -> ShellGrid:
    return ShellGrid(float(cfg.model["kappa"]), int(cfg.model["n_shells"]))


def _kpr(cfg, lmax: int | None = None) -> kp.KPRMap:
    return kp.KPRMap(_grid(cfg), int(cfg.model["lmax"]) if lmax is None else lmax)


# ----------------------------------------------------------------------------
# groups

def _normalizer(G, R) -> frozenset:
    return frozenset(g for g in range(G.order) if R.conjugate(g) == R)


def run_groups(cfg, rng) -> Section:
    sec = Section("groups")
    gcfg = cfg["groups"]
    groups = list(catalogue(int(gcfg["max_order"]), bool(gcfg["extras"])))
    if gcfg.get("table"):
        text = Path(gcfg["table"]).read_text()
        bad = read_group_violations(text)
        sec.add("table-axioms", not bad, len(bad), None, table=str(gcfg["table"]), violations=bad[:20])
        if bad:
            return sec
        groups.append(parse_group(text, name=Path(gcfg["table"]).stem))

    subs = {id(G): all_subgroups(G) for G in groups}
    rows, nonempty, mism, pairs = [], [], [], 0
    for G in groups:
        S_all = subs[id(G)]
        proper = 0
        for S in S_all:
            for R in S_all:
                if not R <= S:
                    continue
                N = relative_normalizer(G, R, S)
                pairs += 1
                if R == S:
                    if N != _normalizer(G, R):
                        mism.append(f"{G.name}: N(R,R) differs from the normalizer for R={sorted(R.elements)}")
                else:
                    proper += 1
                    if N:
                        nonempty.append(f"{G.name}: R={sorted(R.elements)} S={sorted(S.elements)}")
        rows.append({"group": G.name, "order": G.order, "subgroups": len(S_all), "proper_pairs": proper})
    sec.tables["groups_catalogue"] = rows
    sec.add("relative-normalizer-empty", not nonempty, len(nonempty), None,
            groups=len(groups), pairs=pairs, examples=nonempty[:5])
    sec.add("relative-normalizer-diagonal", not mism, len(mism), None, examples=mism[:5])

    # orbit formulas on random actions
    n_act = int(gcfg["random_actions"])
    forms_bad, prop_bad, merge_bad = [], [], []
    prop_n = merge_n = 0
    act_rows = []
    for t in range(n_act):
        G = groups[int(rng.integers(len(groups)))]
        A = random_action(G, rng)
        x0 = int(rng.integers(A.n_points))
        a = int(rng.integers(G.order))
        r = check_orbit_forms(A, x0, a)
        forms_bad += [f"action #{t} ({G.name}): {v}" for v in r.violations]
        G0 = stabilizer(x0, A)
        # equivalences need a^-1 G_x0 a inside G_x0
        for b in sorted(_normalizer(G, G0))[:3]:
            prop_n += 1
            pr = check_prop_equivalences(A, x0, b)
            prop_bad += [f"action #{t} ({G.name}), a={b}: {v}" for v in pr.violations]
        # merging needs R <= G_x0 and a in N(R, S); only R = S survives in finite groups
        for R in [H for H in subs[id(G)] if H <= G0][:4]:
            for b in sorted(relative_normalizer(G, R, R))[:2]:
                merge_n += 1
                mr = check_merging_theorem(A, x0, b, R, R)
                merge_bad += [f"action #{t} ({G.name}): {v}" for v in mr.violations]
        act_rows.append({"action": t, "group": G.name, "points": A.n_points, "x0": x0, "a": a,
                         "orbit_form_violations": len(r.violations)})
    sec.tables["groups_actions"] = act_rows
    sec.add("orbit-forms-match-enumeration", not forms_bad, len(forms_bad), None,
            actions=n_act, examples=forms_bad[:5])
    sec.add("fixed-point-equivalences", not prop_bad, len(prop_bad), None, instances=prop_n, examples=prop_bad[:5])
    sec.add("merging-theorem", not merge_bad, len(merge_bad), None, instances=merge_n, examples=merge_bad[:5])

    ne = find_equivalence_counterexample(groups)
    if ne is None:
        sec.add("equivalences-negative-control", False, None, None, reason="no instance violating the hypothesis fails")
    else:
        sec.add("equivalences-negative-control", True, len(ne["report"].violations), None,
                group=ne["group"].name, a=ne["a"], stabilizer=sorted(ne["K"].elements))

    ce = find_merging_counterexample(groups)
    if ce is None:
        sec.add("merging-negative-control", False, None, None, reason="no instance outside N(R,S) fails")
    else:
        sec.add("merging-negative-control", True, ce["report"].details["conclusion_failures"], None,
                group=ce["group"].name, x0=ce["x0"], a=ce["a"], R=sorted(ce["R"].elements),
                S=sorted(ce["S"].elements), action_points=ce["action"].n_points)
    return sec


# ----------------------------------------------------------------------------
# harmonics

def run_harmonics(cfg, rng) -> Section:
    sec = Section("harmonics")
    lmax = int(cfg["harmonics"]["lmax"])
    quad = hm.SphericalQuadrature.gauss_product(2 * lmax + 2)
    G = hm.gram_matrix(lmax, quad)
    dev = float(np.abs(G - np.eye(G.shape[0])).max())
    sec.add("gram-orthonormal", dev <= cfg.tol("gram"), dev, cfg.tol("gram"), lmax=lmax, order=quad.order)
    tr = hm.transversality_defect(lmax, quad)
    sec.add("transversality", tr <= cfg.tol("transversality"), tr, cfg.tol("transversality"))
    gn = hm.gradient_norms(lmax, quad)
    L = np.arange(lmax + 1)[:, None] * (np.arange(lmax + 1)[:, None] + 1.0)
    gdev = float(np.nanmax(np.abs(gn - L)))
    sec.add("gradient-norms", gdev <= cfg.tol("gradient_norm"), gdev, cfg.tol("gradient_norm"))
    rows, worst = [], []
    big = hm.SphericalQuadrature.gauss_product(96)
    for f in hm.bundled_fields():
        res = []
        for l in (2, 4, 8, 16):
            e = hm.expand_tangent_field(f, l, big)
            res.append(max(e.residual2, 0.0) / e.norm2)
            rows.append({"field": f.name, "lmax": l, "relative_residual": res[-1]})
        if not all(b <= a * (1 + 1e-9) + 1e-15 for a, b in zip(res, res[1:])):
            worst.append(f.name)
    sec.tables["harmonics_residuals"] = rows
    sec.add("residuals-decrease", not worst, len(worst), None, fields=worst)
    return sec


# ----------------------------------------------------------------------------
# infravacuum map

def run_kpr(cfg, rng) -> Section:
    sec = Section("kpr")
    T = _kpr(cfg)
    tol = cfg.tol("kpr_identity")
    cert = kp.certify_lemma_T_prop(T, int(cfg["kpr"]["samples"]), rng, tol, raise_on_failure=False)
    worst = max(cert["max_deviation"].values())
    sec.add("identities", cert["ok"], worst, tol, samples=cert["samples"], per_identity=cert["max_deviation"])
    n1 = kp.norm_bound_T1(T, 100, rng)
    exact1 = float(np.abs(T.m1).max())
    sec.add("t1-contraction", max(n1, exact1) <= 1 + cfg.tol("t1_norm"), max(n1, exact1), 1 + cfg.tol("t1_norm"),
            sampled=n1, largest_multiplier=exact1)
    rows, bad = [], []
    for n in cfg["kpr"]["truncations"]:
        n = int(n)
        if n > T.grid.n_shells:
            continue
        est, it = kp.T2_truncated_norm(T, n, rng)
        rows.append({"n": n, "norm_estimate": est, "iterations": it, "abs_error": abs(est - n)})
        if abs(est - n) > cfg.tol("t2_norm"):
            bad.append(n)
    sec.tables["kpr_t2_norms"] = rows
    sec.add("t2-truncated-norm", not bad, max(r["abs_error"] for r in rows), cfg.tol("t2_norm"), failing=bad)
    sec.tables["kpr_multipliers"] = [{"shell": i, "l": l, "multiplier": m} for i, l, m in T.multiplier_rows()]
    return sec


# ----------------------------------------------------------------------------
# dressing convergence

def _dressing_spec(cfg, w=None) -> dr.DressingSpec:
    m = cfg.model
    d = cfg["dressing"]
    return dr.DressingSpec(tuple(d["w"]) if w is None else tuple(w), float(m["alpha"]), float(m["kappa"]),
                           float(m["v_max"]), float(d["delta"]))


def run_dressing(cfg, rng) -> Section:
    sec = Section("dressing")
    spec = _dressing_spec(cfg)
    lmax = int(cfg.model["lmax"])
    if cfg["dressing"]["lmax_auto"]:
        lmax = dr.select_lmax(spec, cfg.tol("angular_tail"))
    bound = dr.analytic_tail_bound(spec, lmax)
    sec.info["lmax"] = lmax
    sec.info["analytic_tail_bound"] = bound
    sec.info["measured_tail"] = dr.measured_tail(spec, lmax)
    sec.info["lmax_flag"] = bool(bound > cfg.tol("angular_tail"))
    T = _kpr(cfg, lmax)
    N = T.grid.n_shells
    r = dr.convergence_diagnostics(spec, T, N)
    A = r.info["phi_tr_norm2"]
    sec.tables["dressing_shells"] = r.rows_per_shell()
    sec.tables["dressing_sequence"] = r.rows_per_n()

    _, _, r2 = dr.linear_fit_r2(r.n, r.norm2_v)
    exact = float(np.abs(r.norm2_v - (r.n - 1) * dr.LN2 * dr.angular_expansion(spec.w, spec.alpha, lmax).captured).max())
    sec.add("v-norm-linear", r2 > 0.999 and exact <= 1e-12 * max(1.0, r.norm2_v[-1]), r2, 0.999,
            max_deviation_from_parseval=exact)
    sec.add("psi-orthogonal", r.psi_gram_offdiag <= 1e-14, r.psi_gram_offdiag, 1e-14)
    fdev = float(np.abs(r.psi_norm2 - r.psi_norm2_formula).max()) if r.psi_norm2.size else 0.0
    sec.add("psi-norm-formula", fdev <= 1e-12, fdev, 1e-12)
    r_big = dr.convergence_diagnostics(spec, _kpr(cfg, 2 * lmax), N)
    kstab = abs(r_big.K_shell - r.K_shell) / r.K_shell if r.K_shell else 0.0
    sec.add("shell-constant-stable", kstab <= cfg.tol("k_stability"), kstab, cfg.tol("k_stability"),
            K_shell=r.K_shell, K_shell_doubled_lmax=r_big.K_shell)
    kb = 2 * dr.LN2 * r.K_shell
    sec.add("cauchy-tail-shape", r.K_tail_fit <= kb * (1 + 1e-12), r.K_tail_fit, kb,
            note="fitted max n*sum_{i>=n} ||psi_i||^2 against 2 ln2 K_shell")
    inc = float(r.norm2_Tv[-1] - r.norm2_Tv[-2])
    inc_bound = dr.LN2 * r.K_shell / (N - 1) ** 2
    sec.add("tv-increment-rate", 0 <= inc <= inc_bound * (1 + 1e-12), inc, inc_bound,
            limit_estimate=r.limit_estimate, phi_tr_norm2=A)
    expo = dr.growth_exponent(r.n[1:], r.norm2_Tiv[1:])
    sec.add("tiv-superlinear", expo > 1.5, expo, 1.5)
    sig = float(np.abs(r.sigma_Tv_Tiv - r.norm2_v).max())
    sec.add("symplectic-witness", sig <= 1e-10 * max(1.0, r.norm2_v[-1]), sig, 1e-10)

    # pointwise bound on the profile
    quad = hm.SphericalQuadrature.gauss_product(64)
    vmax = float(cfg.model["v_max"])
    mx = float(np.abs(np.linalg.norm(dr.phi_w(spec.w, spec.alpha, quad.points), axis=-1)).max())
    pb = float(np.sqrt(spec.alpha) * vmax / (1 - vmax))
    sec.add("profile-bound", mx <= pb, mx, pb)

    w = np.array(spec.w)
    if spec.speed > 0 and np.allclose(w[:2], 0):
        e = dr.angular_expansion(spec.w, spec.alpha, lmax)
        _, M, S = hm.mode_arrays(lmax)
        off = float(np.abs(e.coeffs[(M != 0) | (S < 0)]).max())
        sec.add("axial-symmetry", off <= 1e-14, off, 1e-14)

    rows, bad, vals = [], [], []
    for s in cfg["dressing"]["speeds"]:
        ww = (0.0, 0.0, float(s))
        ms = dr.orbital_L2_mode_sum(ww, spec.alpha)
        cf = dr.orbital_L2_closed_form(ww, spec.alpha)
        rel = abs(ms - cf) / abs(cf) if cf else abs(ms)
        rows.append({"speed": float(s), "mode_sum": ms, "closed_form": cf, "rel_diff": rel})
        vals.append(cf)
        if rel > cfg.tol("l2_closed_form"):
            bad.append(float(s))
    sec.tables["dressing_l2"] = rows
    sec.add("l2-closed-form", not bad, max(r_["rel_diff"] for r_ in rows) if rows else 0.0,
            cfg.tol("l2_closed_form"), failing=bad)
    order = np.argsort([float(s) for s in cfg["dressing"]["speeds"]])
    sv = np.array(vals)[order]
    sec.add("l2-increasing", bool(np.all(np.diff(sv) > 0)), None, None)
    return sec


# ----------------------------------------------------------------------------
# witness, geometry and central sequence

def _witness_spec(cfg, d: dict) -> dr.WitnessSpec:
    base = {"w": d["w"], "w_prime": d["w_prime"]}
    for k in ("sigma", "C", "exclusion_deg", "ramp_deg"):
        if k in d:
            base[k] = float(d[k])
    return dr.WitnessSpec(alpha=float(cfg.model["alpha"]), kappa=float(cfg.model["kappa"]), **base)


def random_off_span(rng, v_max: float, margin: float = 1e-3):
    """Distinct velocities inside the ``v_max`` ball and a unit vector off their span."""
    while True:
        w1, w2 = (rng.standard_normal(3) * v_max / 3 for _ in range(2))
        if max(np.linalg.norm(w1), np.linalg.norm(w2)) > v_max or np.allclose(w1, w2):
            continue
        k = rng.standard_normal(3)
        k /= np.linalg.norm(k)
        n = np.cross(w1, w2)
        if np.linalg.norm(n) < 1e-9:
            continue
        if abs(k @ n) / np.linalg.norm(n) > margin:
            return w1, w2, k


def run_witness(cfg, rng) -> Section:
    sec = Section("witness")
    rows, bad = [], []
    for i, d in enumerate(cfg["witnesses"]):
        ws = _witness_spec(cfg, d)
        out = dr.superselection_witness(ws)
        out["index"] = i
        rows.append({k: out[k] for k in ("index", "lhs", "rhs", "rel_diff", "radial_factor", "chi_integral",
                                         "min_F2_on_support")})
        rf = dr.witness_radial_factor(ws.sigma, ws.kappa)
        if not (out["rel_diff"] <= cfg.tol("witness") and out["lhs"] != 0 and out["rhs"] != 0):
            bad.append(i)
        if abs(rf - (2 / 3) * (ws.kappa ** 1.5 - ws.sigma ** 1.5)) > 1e-15:
            bad.append(i)
    sec.tables["witness"] = rows
    sec.add("bracket-closed-form", not bad, max(r["rel_diff"] for r in rows) if rows else None,
            cfg.tol("witness"), failing=bad)

    trials = int(cfg["geometry"]["trials"])
    dmin = np.inf
    for _ in range(trials):
        w1, w2, k = random_off_span(rng, float(cfg.model["v_max"]))
        dmin = min(dmin, float(dr.check_geometry(w1, w2, k)))
    sec.add("geometry-distance-positive", dmin > 0, dmin, 0.0, trials=trials)

    spec = _dressing_spec(cfg)
    probe = dr.CentralProbe()
    f = dr.self_similar_test_vector(_grid(cfg), probe.lmax, probe.coeff_vector())
    kmax = int(cfg["central"]["k_max"])
    cs = dr.central_sequence_check(f, spec, probe, range(0, kmax + 1))
    crow = cs["rows"]
    sec.tables["central_sequence"] = crow
    norms = np.array([r["commutator_norm"] for r in crow])
    bounded = all(r["commutator_norm"] <= r["bound"] + 1e-15 for r in crow)
    # decrease is checked once the scaled support lies below kappa
    first = next((j for j, r in enumerate(crow) if probe.support[1] / r["s"] <= 1.0), len(crow))
    mono = bool(np.all(np.diff(norms[first:]) < 0))
    sec.add("central-commutator-vanishes", bounded and mono and norms[-1] < cfg.tol("commutator"),
            float(norms[-1]), cfg.tol("commutator"), bounded_by_pairing=bounded, decreasing=mono)
    pk = int(cfg["central"]["pairing_k"])
    gap = next((r["pairing_gap"] for r in crow if r["k"] == pk), None)
    if gap is None:
        gap = abs(dr.pairing_v_probe(spec.w, spec.alpha, spec.kappa, probe, 2.0 ** pk) - cs["v_g_inf"])
    sec.add("central-pairing-limit", gap <= cfg.tol("pairing"), gap, cfg.tol("pairing"), s=2.0 ** pk)
    return sec


# ----------------------------------------------------------------------------
# sector model

def run_sectors(cfg, rng) -> Section:
    sec = Section("sectors")
    T = _kpr(cfg)
    B = sc.DressingBasis(T, cfg.velocities(), float(cfg.model["alpha"]), float(cfg.model["v_max"]))
    B.certify()
    out = sc.verify_sector_theorems(B, int(cfg["sectors"]["samples"]), int(rng.integers(2 ** 31)))
    for c in out["claims"]:
        sec.add(c["claim"], c["ok"], len(c["violations"]), None, checked=c["checked"],
                violations=c["violations"], evidence={k: v for k, v in c["details"].items() if k != "pairwise"})
    sec.info["model_axiom"] = out["model_axiom"]
    sec.info["fingerprints"] = out["fingerprints"]
    sec.tables["sectors_fingerprints"] = [{"index": r["index"], "w": " ".join(map(repr, r["w"])),
                                           "norm2_Tv_truncated": r["norm2_Tv_truncated"],
                                           "norm2_Tv_limit_estimate": r["norm2_Tv_limit_estimate"]}
                                          for r in out["fingerprints"]]
    return sec


CAMPAIGNS = {
    "groups": run_groups,
    "harmonics-check": run_harmonics,
    "kpr-verify": run_kpr,
    "dressing-converge": run_dressing,
    "witness": run_witness,
    "sectors-verify": run_sectors,
}
