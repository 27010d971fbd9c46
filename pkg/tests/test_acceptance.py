"""Acceptance suite: every primary criterion at its stated tolerance.

Each test prints one pass/fail line.  Full run stays within a few minutes;
the spreading criterion dominates (two potentials, n up to 128).
"""

import numpy as np
import pytest

from powermin import (
    Configuration,
    Potential,
    canonicalize,
    eval_energy,
)
from powermin.verify import (
    VerifyReport,
    run_suite,
)


def report_line(name: str, ok: bool) -> None:
    print(f"[acceptance] {name}: {'PASS' if ok else 'FAIL'}", flush=True)


def assert_suite(name: str, label: str) -> VerifyReport:
    report = run_suite(name)
    report_line(label, report.overall_pass)
    if not report.overall_pass:
        failures = [c for c in report.checks if not c.passed]
        detail = "; ".join(
            f"{c.name}: expected {c.expected}, observed {c.observed}" for c in failures
        )
        pytest.fail(f"{label}: {detail}")
    return report


def test_quadratic_newtonian_closed_form():
    # n in {2,...,64}: neighbor spacing 2/n within 1e-7, W1 to uniform[-1,1]
    # equal to 1/(2n) within 1e-8.
    assert_suite("quadratic-newtonian", "quadratic-newtonian closed form")


def test_uniqueness_and_symmetry():
    # 20 seeded restarts of (gamma=3, alpha=0.5, n=20, d=1): canonical forms
    # pairwise within 1e-6 and mirror-symmetric within 1e-6.
    uniq = run_suite("uniqueness")
    sym = run_suite("symmetry")
    ok = uniq.overall_pass and sym.overall_pass
    report_line("uniqueness and symmetry of the 1D minimizer", ok)
    assert uniq.overall_pass, [c.to_dict() for c in uniq.checks if not c.passed]
    assert sym.overall_pass, [c.to_dict() for c in sym.checks if not c.passed]


def test_confinement():
    # (gamma=3, alpha=1.5), d in {1,2}, n in {16,...,128}: diameter change
    # between n=64 and n=128 below 5%, all diameters within a factor 1.5.
    assert_suite("confinement", "confinement: diameter bounded independently of n")


def test_spreading():
    # (gamma=-0.5, alpha=-2.5): diameter strictly increasing, >= (n-1) a_n,
    # fitted log-log exponent >= 1 + 2/alpha = 0.2; alpha=-1.5: strictly
    # increasing.
    assert_suite("spreading", "spreading: diameter grows with n")


def test_case1_bounds():
    # (gamma=2, alpha=1), n in {3,5,9}: energy in [n^2(1/2-1), 0) and
    # diameter within the case-1 bound.
    assert_suite("case1-bounds", "case-1 energy and diameter bounds")


def test_gradient_correctness():
    # Four exponent pairs, 10 seeded configurations each over d in {1,2,3}:
    # analytic gradient matches central differences; rows sum to zero.
    assert_suite("gradient-fd", "gradient vs central finite differences")


class TestInvarianceSuite:
    potentials = [Potential(2, 1), Potential(3, 1.5), Potential(1, 0), Potential(-0.5, -2.5)]

    def separated(self, rng, n, dim):
        while True:
            coords = rng.uniform(-3, 3, size=(n, dim))
            i, j = np.triu_indices(n, k=1)
            if np.sqrt(((coords[i] - coords[j]) ** 2).sum(axis=1)).min() > 0.3:
                return coords

    def test_invariance_suite(self):
        rng = np.random.default_rng(20240810)
        ok = True
        for p in self.potentials:
            for dim in (1, 2, 3):
                coords = self.separated(rng, 9, dim)
                base = eval_energy(p, Configuration(coords)).total

                perm = rng.permutation(coords.shape[0])
                permuted = eval_energy(p, Configuration(coords[perm])).total
                ok &= abs(permuted - base) <= 1e-12 * abs(base)

                shift = rng.uniform(-4, 4, size=dim)
                moved = eval_energy(p, Configuration(coords + shift)).total
                ok &= abs(moved - base) <= 1e-10 * abs(base)

                if dim >= 2:
                    q, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
                    rotated = eval_energy(p, Configuration(coords @ q.T)).total
                    ok &= abs(rotated - base) <= 1e-10 * abs(base)

                once = canonicalize(Configuration(coords))
                twice = canonicalize(once)
                ok &= np.array_equal(once.coords, twice.coords)
        report_line("energy invariances and canonicalize idempotence", ok)
        assert ok
