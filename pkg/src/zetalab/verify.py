"""Property suites behind ``zetalab verify``.

Each suite returns a list of :class:`Check` rows; a suite passes when every row
does.  Sizes are kept modest so ``verify all`` finishes in well under a minute.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import graphzeta as gz
from . import groups as grp
from .regprod import FiniteSequence, ShiftedLinear, regularized_det, zeta_at_zero
from .selberg import (
    EvalConfig,
    convergence_abscissa,
    exterior_det_residual,
    log_selberg,
    log_selberg_series,
    ruelle_decomposition_residual,
)
from .spectra import LengthSpectrum, synth_spectrum
from .special import hurwitz_zeta, log_gamma
from .tfverify import batch_residuals, random_test_functions

__all__ = ["Check", "SUITES", "run_suites", "graph_corpus", "decomposition_table"]


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    detail: str


def _row(suite, name, passed, detail) -> Check:
    return Check(suite, name, bool(passed), detail)


def graph_corpus() -> dict[str, gz.Graph]:
    return {
        "C3": gz.cycle_graph(3),
        "C5": gz.cycle_graph(5),
        "K4": gz.complete_graph(4),
        "K3,3": gz.complete_bipartite_graph(3, 3),
        "Petersen": gz.petersen_graph(),
    }


def regprod_suite(seed: int = 0, tol: float = 1e-8) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    worst = 0.0
    for kappa in (0.5, 1.0, 1.5, 2.0, 3.0):
        ref = math.exp(0.5 * math.log(2 * math.pi) - log_gamma(kappa))
        worst = max(worst, abs(regularized_det(ShiftedLinear(kappa)).value - ref))
    out.append(_row("regprod", "lerch", worst <= tol, f"max abs err {worst:.2e}"))

    worst = 0.0
    for kappa in (0.5, 1.5, 2.5):
        z0, _ = zeta_at_zero(ShiftedLinear(kappa))
        worst = max(worst, abs(z0 - hurwitz_zeta(0, kappa).real))
    out.append(_row("regprod", "zeta(0) vs hurwitz", worst <= 1e-10, f"max abs err {worst:.2e}"))

    worst = 0.0
    for _ in range(20):
        vals = rng.uniform(0.1, 10, size=rng.integers(1, 13))
        lam = rng.uniform(-vals.min() + 0.05, 5)
        det = regularized_det(FiniteSequence(tuple(vals)), lam).value
        plain = float(np.prod(vals + lam))
        worst = max(worst, abs(det - plain) / abs(plain))
    out.append(_row("regprod", "finite reduction", worst <= 1e-12, f"max rel err {worst:.2e}"))

    ok = True
    for _ in range(10):
        base = rng.uniform(0.5, 5, size=3)
        mult = rng.integers(1, 4, size=3)
        seq = FiniteSequence(tuple(np.repeat(base, mult)))
        for a, k in zip(base, mult):
            ok &= regularized_det(seq, -a).flag == "zero"
            ok &= _zero_order(seq, -a) == k
    out.append(_row("regprod", "zero locus multiplicity", ok, "sampled around each -a_j"))

    worst = 0.0
    for kappa, lam in ((0.5, 0.3), (1.0, 1.7), (1.5, 0.25)):
        a = regularized_det(ShiftedLinear(kappa), lam).value
        b = regularized_det(ShiftedLinear(kappa + lam)).value
        worst = max(worst, abs(a - b))
    out.append(_row("regprod", "shift consistency", worst <= 1e-10, f"max abs diff {worst:.2e}"))
    return out


def _zero_order(seq: FiniteSequence, lam0: float, h: float = 1e-5) -> int:
    """Vanishing order at ``lam0`` from the scaling ``|det(lam0 + 2h)| / |det(lam0 + h)| ~ 2^k``."""
    d1 = abs(regularized_det(seq, lam0 + h).value)
    d2 = abs(regularized_det(seq, lam0 + 2 * h).value)
    return round(math.log2(d2 / d1))


def _random_spectrum(rng: np.random.Generator, **kw) -> LengthSpectrum:
    return synth_spectrum(
        "random",
        n_classes=int(rng.integers(1, kw.pop("max_classes", 10) + 1)),
        d1=int(rng.integers(0, 3)),
        d2=int(rng.integers(0, 2)),
        omega_dim=int(rng.integers(1, 3)),
        l0=float(rng.uniform(0.5, 1.5)),
        seed=int(rng.integers(2**31)),
        **kw,
    )


def decomposition_table(spec: LengthSpectrum, samples: int, seed: int = 0,
                        tol: float = 1e-12) -> list[dict]:
    """Residual rows at ``samples`` points right of ``abscissa + 1``."""
    rng = np.random.default_rng(seed)
    sigma0 = convergence_abscissa(spec)
    cfg = EvalConfig(tol=tol)
    rows = []
    for _ in range(samples):
        s = complex(sigma0 + 1 + rng.uniform(0, 3), rng.uniform(-10, 10))
        res = ruelle_decomposition_residual(spec, s, cfg)
        limit = 3 * (spec.d1 + 1) * (spec.d2 + 1) * tol
        rows.append({"s_re": s.real, "s_im": s.imag, "residual": res, "status": "PASS" if res <= limit else "FAIL"})
    return rows


def selberg_suite(seed: int = 0, tol: float = 1e-12) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    worst = 0.0
    for _ in range(5):
        spec = _random_spectrum(rng)
        worst = max(worst, max(r["residual"] for r in decomposition_table(spec, 4, int(rng.integers(2**31)), tol)))
    out.append(_row("selberg", "ruelle decomposition", worst <= 1e-9, f"max residual {worst:.2e}"))

    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(0, 9))
        z = np.sqrt(rng.uniform(0, 1, n)) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
        worst = max(worst, exterior_det_residual(z))
    out.append(_row("selberg", "exterior power identity", worst <= 1e-12, f"max residual {worst:.2e}"))

    failures = 0
    for _ in range(30):
        spec, s, q, p = _tail_trial(rng)
        M, N = int(rng.integers(2, 8)), int(rng.integers(1, 6))
        a = log_selberg_series(spec, q, p, s, M, N)
        b = log_selberg_series(spec, q, p, s, 2 * M, 2 * N)
        failures += abs(b.value - a.value) >= a.tail_bound
    out.append(_row("selberg", "tail bound soundness", failures == 0, f"{failures} of 30 trials violated"))

    worst = 0.0
    cfg = EvalConfig(tol=tol)
    for _ in range(5):
        spec = _random_spectrum(rng, closed_omega=True)
        s = complex(convergence_abscissa(spec) + 1 + rng.uniform(0, 2), rng.uniform(-5, 5))
        q, p = int(rng.integers(0, spec.d1 + 1)), int(rng.integers(0, spec.d2 + 1))
        a = log_selberg(spec, q, p, s.conjugate(), cfg).value
        b = log_selberg(spec, q, p, s, cfg).value.conjugate()
        worst = max(worst, abs(a - b))
    out.append(_row("selberg", "conjugate symmetry", worst <= 2 * tol, f"max diff {worst:.2e}"))
    return out


def _tail_trial(rng):
    spec = _random_spectrum(rng, max_classes=4)
    s = complex(convergence_abscissa(spec) + rng.uniform(0.2, 3), rng.uniform(-5, 5))
    q, p = int(rng.integers(0, spec.d1 + 1)), int(rng.integers(0, spec.d2 + 1))
    return spec, s, q, p


def graph_suite(seed: int = 0, tol: float = 1e-8) -> list[Check]:
    out = []
    corpus = graph_corpus()
    for name, g in corpus.items():
        cycles = gz.enumerate_primitive_cycles(g, 16)
        rep = gz.rationality_report(g, 16, cycles)
        counts = all(lhs == rhs for lhs, rhs in (gz.cycle_count_identity(g, m, cycles) for m in range(1, 13)))
        logd = gz.log_derivative_check(g, 13, cycles)
        out.append(_row("graph", f"{name} rationality", rep.passed, f"exact to degree {rep.order}"))
        out.append(_row("graph", f"{name} cycle counts", counts, "m <= 12"))
        out.append(_row("graph", f"{name} log derivative", logd.passed, f"degree <= {logd.order}"))
        roots = gz.divisor(g, tol)
        Z = gz.zeta_polynomial(g).to_float()
        worst = max(abs(np.polyval(Z[::-1], r.value)) / (1 + abs(r.value)) ** (2 * g.n_edges) for r in roots)
        mult = sum(r.multiplicity for r in roots)
        out.append(_row("graph", f"{name} divisor", mult == 2 * g.n_edges and worst <= tol,
                        f"multiplicity {mult}/{2 * g.n_edges}, scaled residual {worst:.1e}"))
    agree = 0
    for k in range(20):
        g = gz.random_graph(4 + k % 5, seed=seed * 1000 + k)
        agree += gz.zeta_polynomial(g) == gz.bass_polynomial(g)
    out.append(_row("graph", "hashimoto == bass (random)", agree == 20, f"{agree}/20 graphs"))
    return out


def tf_suite(seed: int = 0, trials: int = 50, tol: float = 1e-10) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for G in grp.corpus():
        worst, n_omega = 0.0, 0
        for H in grp.all_subgroups(G):
            reps = [grp.trivial_rep(H), grp.sign_rep(H), grp.induced_two_dim_rep(H)]
            for omega in filter(None, reps):
                F = random_test_functions(G.order, trials, rng)
                worst = max(worst, float(batch_residuals(G, H, omega, F).max()))
                n_omega += 1
        out.append(_row("tf", G.name, worst <= tol, f"{n_omega} (subgroup, omega) pairs, max residual {worst:.1e}"))
    return out


SUITES: dict[str, Callable[..., list[Check]]] = {
    "regprod": regprod_suite,
    "selberg": selberg_suite,
    "graph": graph_suite,
    "tf": tf_suite,
}


def run_suites(names=None, seed: int = 0) -> list[Check]:
    rows = []
    for name in names or SUITES:
        rows.extend(SUITES[name](seed=seed))
    return rows
