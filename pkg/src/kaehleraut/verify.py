"""Randomized self-check of the representation and the differential operator."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

from .ga import PolyEndo, is_block_triangular
from .kaehler import DifferentialContext, higher_differential, taylor_oracle
from .poly import Polynomial, random_polynomial
from .rep import AlphaImage, alpha, recover_series
from .series import TruncatedSeriesMap, compose, invert, random_automorphism

DEFAULT_GRID: Tuple[Tuple[int, int], ...] = ((1, 4), (2, 3), (3, 2))


@dataclass
class SuiteResult:
    name: str
    m: int
    N: int
    passed: int = 0
    failed: int = 0
    counterexample: Optional[str] = None

    def record(self, ok: bool, detail: Callable[[], str]):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.counterexample is None:
                self.counterexample = detail()

    @property
    def ok(self) -> bool:
        return self.failed == 0


@dataclass
class VerificationReport:
    results: List[SuiteResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def lines(self) -> List[str]:
        out = []
        for r in self.results:
            status = "PASS" if r.ok else "FAIL"
            out.append(f"{status} {r.name:<18} m={r.m} N={r.N} passed={r.passed} failed={r.failed}")
            if r.counterexample:
                out.append(f"     first counterexample: {r.counterexample}")
        return out

    def to_record(self) -> dict:
        return {
            "ok": self.ok,
            "suites": [
                {"name": r.name, "m": r.m, "N": r.N, "passed": r.passed, "failed": r.failed,
                 "counterexample": r.counterexample}
                for r in self.results
            ],
        }


def _show(phi: TruncatedSeriesMap) -> str:
    return "(" + ", ".join(phi.render()) + ")"


def run_verification(trials: int = 100, seed: int = 42, grid: Sequence[Tuple[int, int]] = DEFAULT_GRID,
                     alpha_fn: Callable[[TruncatedSeriesMap], AlphaImage] = alpha,
                     coeff_bound: int = 3) -> VerificationReport:
    """Run every suite on ``trials`` random instances per grid point.

    ``alpha_fn`` is replaceable so the harness itself can be tested against
    a deliberately broken implementation.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    report = VerificationReport()
    for m, N in grid:
        rng = random.Random(f"{seed}:{m}:{N}")
        suites = {name: SuiteResult(name, m, N) for name in (
            "identity", "homomorphism", "inverse", "round_trip", "block_triangular", "oracle", "leibniz")}
        ident = TruncatedSeriesMap.identity(m, N)
        suites["identity"].record(alpha_fn(ident).base == PolyEndo.identity(m * N), lambda: "alpha(id) != id")
        ctx = DifferentialContext(m, N)
        for _ in range(trials):
            phi = random_automorphism(m, N, rng, coeff_bound)
            psi = random_automorphism(m, N, rng, coeff_bound)
            a_phi, a_psi = alpha_fn(phi), alpha_fn(psi)
            suites["homomorphism"].record(
                alpha_fn(compose(phi, psi)) == a_phi @ a_psi,
                lambda: f"phi={_show(phi)} psi={_show(psi)}")
            try:
                inv_ok = alpha_fn(invert(phi)).base == a_phi.automorphism().inverse
            except ValueError:
                inv_ok = False
            suites["inverse"].record(inv_ok, lambda: f"phi={_show(phi)}")
            try:
                rt_ok = recover_series(a_phi) == phi
            except ValueError:
                rt_ok = False
            suites["round_trip"].record(rt_ok, lambda: f"phi={_show(phi)}")
            suites["block_triangular"].record(is_block_triangular(a_phi.base, m), lambda: f"phi={_show(phi)}")

            f = random_polynomial(m, min(N, 4), rng, coeff_bound=9)
            g = random_polynomial(m, 2, rng, coeff_bound=9)
            n = rng.randint(1, N)
            suites["oracle"].record(
                higher_differential(f, n, ctx) == taylor_oracle(f, n, ctx),
                lambda: f"f={f.render()} n={n}")
            suites["leibniz"].record(leibniz_holds(f, g, n, ctx), lambda: f"f={f.render()} g={g.render()} n={n}")
        report.results.extend(suites.values())
    return report


def leibniz_holds(f: Polynomial, g: Polynomial, n: int, ctx: DifferentialContext) -> bool:
    """d^n(fg) == sum_{i+j=n} d^i f * d^j g, with d^0 the inclusion."""

    def d(p: Polynomial, k: int) -> Polynomial:
        return ctx.lift(p) if k == 0 else higher_differential(p, k, ctx)

    rhs = Polynomial.zero(ctx.nvars)
    for i in range(n + 1):
        rhs = rhs + d(f, i) * d(g, n - i)
    return higher_differential(f * g, n, ctx) == rhs
