"""Acceptance suite: one test per criterion, each printing a PASS line.

Every expected value below is either a closed form evaluated in the test
itself (independent of the library code paths) or a frozen constant that
was derived by hand; tolerances are fixed here and nowhere else.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
lines.
"""

import json
import time

import numpy as np

from dmparam import (
    SIGMA_X,
    BlockParams,
    SingleParams,
    assemble_rho_block,
    assemble_rho_single,
    bell_diagonal,
    build_Vjnm,
    build_Xj_block,
    circulant_ppt_margins,
    circulant_rho,
    class3_state,
    detect_structure,
    expm_skew,
    hankel_state,
    isotropic,
    isotropic_alpha,
    nonabelian_sphere_check,
    normalize_blocks,
    param_count,
    partial_transpose,
    polar,
    ppt_check,
    pure_P,
    sep_threshold,
    toeplitz_state,
)
from dmparam._random import (
    rand_commuting_normal_blocks,
    rand_complex,
    rand_psd,
    rand_simplex,
    rand_single_params,
    rand_unitary,
)
from dmparam.cli import main

EYE2 = np.eye(2, dtype=complex)


def _pass(number, name):
    print(f"ACCEPTANCE {number:02d} {name}: PASS")


def _chain22(lambdas, Z2):
    p = BlockParams(2, 2, np.asarray(lambdas, float), (EYE2, EYE2), ((Z2,),))
    return assemble_rho_block(p).mat


# -- printed closed forms, evaluated independently of the library ------------

def form_pure(alpha):
    s, c = np.sin(alpha), np.cos(alpha)
    M = np.zeros((4, 4), dtype=complex)
    M[0, 0], M[3, 3] = s * s, c * c
    M[0, 3] = M[3, 0] = s * c
    return M


def form_isotropic(p):
    M = np.diag([1 + p, 1 - p, 1 - p, 1 + p]).astype(complex) / 4.0
    M[0, 3] = M[3, 0] = 2 * p / 4.0
    return M


def form_isotropic_alpha(p, alpha):
    return (1 - p) / 4.0 * np.eye(4) + p * form_pure(alpha)


def form_bell(p):
    p1, p2, p3, p4 = p
    M = np.zeros((4, 4), dtype=complex)
    M[0, 0] = M[3, 3] = (p1 + p2) / 2.0
    M[1, 1] = M[2, 2] = (p3 + p4) / 2.0
    M[0, 3] = M[3, 0] = (p1 - p2) / 2.0
    M[1, 2] = M[2, 1] = (p3 - p4) / 2.0
    return M


def form_circulant(p, alpha, beta):
    # Sector-consistent closed form: each 2x2 cyclic sector is rotated by
    # its own angle, so the corner of a sector carries the same angle as
    # its diagonal.  Assigning the corners to the opposite angles would
    # break positivity (see README, "Conventions").
    p1, p2, p3, p4 = p
    sa, ca = np.sin(alpha), np.cos(alpha)
    sb, cb = np.sin(beta), np.cos(beta)
    M = np.zeros((4, 4), dtype=complex)
    M[0, 0] = p1 * sb**2 + p2 * cb**2
    M[1, 1] = p3 * sa**2 + p4 * ca**2
    M[2, 2] = p3 * ca**2 + p4 * sa**2
    M[3, 3] = p1 * cb**2 + p2 * sb**2
    M[0, 3] = M[3, 0] = (p1 - p2) * sb * cb
    M[1, 2] = M[2, 1] = (p3 - p4) * sa * ca
    return M


def form_qubit(theta, phi, lam1, lam2):
    c, s = np.cos(theta), np.sin(theta)
    off = s * c * np.exp(1j * phi) * (lam1 - lam2)
    return np.array(
        [
            [c**2 * lam1 + s**2 * lam2, off],
            [np.conj(off), c**2 * lam2 + s**2 * lam1],
        ]
    )


def test_criterion_01_closed_form_vs_exponential():
    """V_j equals the top-left block of exp(X_j): 500 draws per (n, m)."""
    start = time.monotonic()
    rng = np.random.default_rng(101)
    worst = 0.0
    for n, m in ((2, 2), (2, 3), (3, 2), (3, 3)):
        for _ in range(500):
            for j in range(2, n + 1):
                Zs = [
                    rng.uniform(0.2, 2.0) * rand_complex(rng, (m, m))
                    for _ in range(j - 1)
                ]
                V = build_Vjnm(Zs, j, m)
                E = expm_skew(build_Xj_block(Zs, n, j, m))
                worst = max(worst, float(np.max(np.abs(V - E[: j * m, : j * m]))))
    elapsed = time.monotonic() - start
    assert worst <= 1e-9, f"closed/exp gap {worst}"
    assert elapsed < 30.0, f"runtime {elapsed:.1f}s"
    _pass(1, f"closed form vs exponential (worst {worst:.2e}, {elapsed:.1f}s)")


def test_criterion_02_printed_matrix_reproduction():
    """Each family reproduces its closed form entrywise, 100 draws each."""
    rng = np.random.default_rng(102)
    worst = 0.0

    def track(gap):
        nonlocal worst
        worst = max(worst, float(gap))

    for _ in range(100):
        alpha = rng.uniform(0.0, np.pi / 2)
        track(np.max(np.abs(pure_P(alpha).mat - form_pure(alpha))))
        track(np.max(np.abs(_chain22([0, 0, 0, 1.0], alpha * SIGMA_X) - form_pure(alpha))))

        p = rng.uniform(-1 / 3, 1.0)
        lamiso = np.array([1 - p, 1 - p, 1 - p, 1 + 3 * p]) / 4.0
        track(np.max(np.abs(isotropic(p).mat - form_isotropic(p))))
        track(np.max(np.abs(_chain22(lamiso, (np.pi / 4) * SIGMA_X) - form_isotropic(p))))

        track(np.max(np.abs(isotropic_alpha(p, alpha).mat - form_isotropic_alpha(p, alpha))))
        track(np.max(np.abs(_chain22(lamiso, alpha * SIGMA_X) - form_isotropic_alpha(p, alpha))))

        q = rand_simplex(rng, 4)
        beta = rng.uniform(0.0, np.pi / 2)
        q1, q2, q3, q4 = q
        Z2 = SIGMA_X @ np.diag([alpha, beta]).astype(complex)
        track(np.max(np.abs(circulant_rho(q, alpha, beta).mat - form_circulant(q, alpha, beta))))
        track(np.max(np.abs(_chain22([q2, q4, q3, q1], Z2) - form_circulant(q, alpha, beta))))

        track(np.max(np.abs(bell_diagonal(q).mat - form_bell(q))))
        track(np.max(np.abs(circulant_rho(q, np.pi / 4, np.pi / 4).mat - form_bell(q))))

        # qubit: the generator convention puts e^{i phi}(lam2 - lam1) on the
        # off-diagonal, so the displayed form with (lam1 - lam2) corresponds
        # to z = -theta e^{i phi} (phase shifted by pi); see README.
        theta = rng.uniform(0.0, np.pi)
        phi = rng.uniform(0.0, 2 * np.pi)
        lam1 = rng.uniform(0.5, 1.0)
        z = -theta * np.exp(1j * phi)
        rho = assemble_rho_single(
            SingleParams(2, [lam1, 1.0 - lam1], (np.array([z]),))
        )
        track(np.max(np.abs(rho.mat - form_qubit(theta, phi, lam1, 1.0 - lam1))))

    assert worst <= 1e-12, f"printed-form gap {worst}"
    _pass(2, f"printed matrix reproduction (worst {worst:.2e})")


def test_criterion_03_isotropic_threshold():
    """PT spectrum of the isotropic family across p in [-1/3, 1]."""
    worst = 0.0
    for p in np.linspace(-1 / 3, 1.0, 241):
        pt = partial_transpose(isotropic(p))
        got = np.sort(np.linalg.eigvalsh((pt + pt.conj().T) / 2.0))
        expected = np.sort([(1 + p) / 4] * 3 + [(1 - 3 * p) / 4])
        worst = max(worst, float(np.max(np.abs(got - expected))))
        if p >= 0.0:
            # (1-3p)/4 is the smallest branch exactly on p >= 0; below zero
            # the smallest PT eigenvalue is (1+p)/4 instead
            worst = max(worst, abs(got[0] - (1 - 3 * p) / 4))
    assert worst <= 1e-12, f"PT spectrum gap {worst}"
    below = ppt_check(isotropic(1 / 3 - 1e-10)).min_pt_eig
    above = ppt_check(isotropic(1 / 3 + 1e-10)).min_pt_eig
    assert below > 0.0 > above, f"bracketing failed: {below}, {above}"
    _pass(3, f"isotropic threshold (worst {worst:.2e}, bracket {below:.1e}/{above:.1e})")


def test_criterion_04_isotropic_alpha_threshold():
    """Bisection of the PPT boundary matches 1/(1 + 2 sin 2a) at 50 angles."""

    def min_pt(p, alpha):
        return ppt_check(isotropic_alpha(p, alpha)).min_pt_eig

    worst = 0.0
    for alpha in np.linspace(0.0, np.pi / 2, 50):
        if min_pt(1.0, alpha) >= 0.0:
            detected = 1.0
        else:
            lo, hi = 0.0, 1.0
            for _ in range(60):
                mid = (lo + hi) / 2.0
                if min_pt(mid, alpha) >= 0.0:
                    lo = mid
                else:
                    hi = mid
            detected = (lo + hi) / 2.0
        worst = max(worst, abs(detected - sep_threshold(alpha)))
    assert worst <= 1e-8, f"threshold gap {worst}"
    _pass(4, f"isotropic_alpha threshold (worst {worst:.2e})")


def test_criterion_05_circulant_grid_agreement():
    """Analytic conditions vs numeric PT sign on a 20^3 grid."""
    rng = np.random.default_rng(105)
    ps = [rand_simplex(rng, 4) for _ in range(19)]
    ps.append(np.array([0.125, 0.125, 0.125, 0.625]))  # the worked point
    angles = np.linspace(0.0, np.pi / 2, 20)
    checked = excluded = 0
    for p in ps:
        for alpha in angles:
            for beta in angles:
                m1, m2 = circulant_ppt_margins(p, alpha, beta)
                if abs(min(m1, m2)) < 1e-9:
                    excluded += 1
                    continue
                analytic = m1 >= 0.0 and m2 >= 0.0
                numeric = ppt_check(circulant_rho(p, alpha, beta)).is_ppt
                assert analytic == numeric, (
                    f"disagreement at p={p}, alpha={alpha}, beta={beta}: "
                    f"margins=({m1:.3e}, {m2:.3e})"
                )
                checked += 1
    assert checked + excluded == 8000
    worked = np.array([0.125, 0.125, 0.125, 0.625])
    for beta in angles:
        assert ppt_check(circulant_rho(worked, np.pi / 12, beta)).is_ppt
    _pass(5, f"circulant grid agreement ({checked} checked, {excluded} boundary)")


def test_criterion_06_bell_diagonal_law():
    """PPT iff max_k p_k <= 1/2 on 1000 simplex draws."""
    rng = np.random.default_rng(106)
    for _ in range(1000):
        p = rand_simplex(rng, 4)
        verdict = ppt_check(bell_diagonal(p)).is_ppt
        assert verdict == (max(p) <= 0.5), f"law failed at p={p}"
    _pass(6, "bell-diagonal half law (1000 draws)")


def test_criterion_07_m1_reduction():
    """Block assembly with m = 1 equals the single-system assembly."""
    rng = np.random.default_rng(107)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 6))
        ps = rand_single_params(rng, n, scale=rng.uniform(0.3, 2.0))
        phases = tuple(
            np.array([[np.exp(1j * rng.uniform(0, 2 * np.pi))]]) for _ in range(n)
        )
        blockvecs = tuple(
            tuple(np.array([[w]]) for w in ps.zvecs[j - 2]) for j in range(2, n + 1)
        )
        pb = BlockParams(n, 1, ps.lambdas, phases, blockvecs)
        gap = np.max(np.abs(assemble_rho_block(pb).mat - assemble_rho_single(ps).mat))
        worst = max(worst, float(gap))
    assert worst <= 1e-12, f"m=1 reduction gap {worst}"
    _pass(7, f"m=1 reduction (worst {worst:.2e})")


def test_criterion_08_state_validity_and_spectrum():
    """Assembled states: Hermitian, PSD, trace one, spectrum = lambdas."""
    rng = np.random.default_rng(108)
    states = []
    for _ in range(40):
        n = int(rng.integers(2, 7))
        p = rand_single_params(rng, n)
        states.append((assemble_rho_single(p), p.lambdas))
    for n in (2, 3):
        for m in (2, 3):
            for _ in range(15):
                from dmparam._random import rand_block_params

                p = rand_block_params(rng, n, m)
                states.append((assemble_rho_block(p), p.lambdas))
    for rho, lambdas in states:
        assert np.linalg.norm(rho.mat - rho.mat.conj().T) <= 1e-12
        assert rho.eigenvalues[0] >= -1e-10
        assert abs(np.trace(rho.mat) - 1.0) <= 1e-10
        assert np.max(np.abs(np.sort(rho.eigenvalues) - np.sort(lambdas))) <= 1e-10
    _pass(8, f"state validity and spectrum ({len(states)} states)")


def test_criterion_09_class3_projectors():
    """Normal-block instances: m*rho idempotent, rank m, sphere identity."""
    rng = np.random.default_rng(109)
    combos = ((2, 2), (2, 3), (3, 2), (3, 3))
    for k in range(100):
        n, m = combos[k % 4]
        Zs = rand_commuting_normal_blocks(rng, n - 1, m, scale=rng.uniform(0.3, 2.0))
        rho = class3_state(n, m, Zs)
        mr = m * rho.mat
        assert np.linalg.norm(mr @ mr - mr) <= 1e-10
        assert rho.rank() == m
        Ps = [polar(Zt)[0] for Zt in normalize_blocks(Zs)]
        total = sum(P @ P for P in Ps)
        assert np.linalg.norm(total - np.eye(m)) <= 1e-10
        assert nonabelian_sphere_check(Ps)
    _pass(9, "class-3 projectors and nonabelian sphere (100 instances)")


def test_criterion_10_toeplitz_hankel():
    """Separable constructors: PSD, correctly classified, PPT; 200 draws."""
    rng = np.random.default_rng(110)
    for k in range(100):
        m = 2 + (k % 2)
        L = rand_psd(rng, m)
        L /= 2.0 * np.trace(L).real
        U = np.exp(1j * rng.uniform(0, 2 * np.pi)) * np.eye(m)
        rho = toeplitz_state(L, U, rand_psd(rng, m))
        assert rho.eigenvalues[0] >= -1e-10
        assert detect_structure(rho) == "block_toeplitz"
        assert ppt_check(rho).is_ppt
    for k in range(100):
        m = 2 + (k % 2)
        W = rand_unitary(rng, m)
        d1 = rng.uniform(0.1, 1.0, m)
        d2 = rng.uniform(0.1, 1.0, m)
        total = d1.sum() + d2.sum()
        L1 = (W * (d1 / total)) @ W.conj().T
        L2 = (W * (d2 / total)) @ W.conj().T
        Xi = (W * rng.uniform(0.2, 1.2, m)) @ W.conj().T
        signs = np.where(rng.uniform(size=m) < 0.5, -1.0, 1.0)
        if np.all(signs == signs[0]):
            signs[0] = -signs[0]  # keep the unitary nonscalar
        U = (W * signs) @ W.conj().T
        rho = hankel_state(U, L1, L2, Xi)
        assert rho.eigenvalues[0] >= -1e-10
        assert detect_structure(rho) == "block_hankel"
        assert ppt_check(rho).is_ppt
    _pass(10, "toeplitz/hankel constructors (200 draws)")


def test_criterion_11_param_count():
    for n in range(1, 11):
        assert param_count(n) == n * n - 1
    _pass(11, "parameter count n^2 - 1 (n = 1..10)")


def test_criterion_12_cli_round_trip(tmp_path, capsys):
    """generate -> analyze recovers lambdas; identical seeds, identical reports."""
    rng = np.random.default_rng(112)
    lam = rng.dirichlet(np.ones(4))

    def mat(M):
        return [[[float(z.real), float(z.imag)] for z in row] for row in M]

    Z = rand_complex(rng, (2, 2))
    doc = {
        "schema_version": "1",
        "kind": "block",
        "payload": {
            "n": 2, "m": 2,
            "lambdas": [float(v) for v in lam],
            "local_unitaries": [mat(np.eye(2, dtype=complex))] * 2,
            "blockvecs": [[mat(Z)]],
        },
    }
    src = tmp_path / "params.json"
    src.write_text(json.dumps(doc))
    out = str(tmp_path / "rho.json")
    assert main(["generate", str(src), "-o", out]) == 0
    assert main(["analyze", out]) == 0
    text = capsys.readouterr().out
    line = next(l for l in text.splitlines() if "eigenvalues" in l)
    recovered = np.sort([float(v) for v in line.split()[1:]])
    assert np.max(np.abs(recovered - np.sort(lam))) <= 1e-9

    assert main(["validate", "--seed", "42", "--trials", "25"]) == 0
    first = capsys.readouterr().out
    assert main(["validate", "--seed", "42", "--trials", "25"]) == 0
    second = capsys.readouterr().out
    assert first == second, "reports not bitwise identical for the same seed"
    _pass(12, "CLI round trip and determinism")
