"""The acceptance suite as plain functions, shared by the test gate and ``verify``.

Every check returns a :class:`CriterionResult`; nothing here asserts.
Seeds are fixed up front in :data:`ACCEPTANCE_SEED` and never tuned.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from scipy.stats import chisquare

from . import oracle as O
from .greenpoly import green, green_eval
from .matfq import CanonicalFlag, MatrixOverFq, fixes_flag
from .partitions import (
    Partition,
    b_stat,
    dominance_leq,
    hook_count,
    orbit_dim,
    partitions_of,
    syt_enumerate,
)
from .perm import Permutation, all_permutations
from .rsk import p_class, rsk, rsk_inverse
from .sampler import ChainConfig, one_step_counts, run_chain, sample_springer_fiber

ACCEPTANCE_SEED = 0
SIGNIFICANCE = 1e-3
HANDFUL = 10


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    budget: float = math.inf

    @property
    def within_budget(self) -> bool:
        return self.seconds <= self.budget

    @property
    def ok(self) -> bool:
        return self.passed and self.within_budget

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        timing = f"{self.seconds:.1f}s/{self.budget:.0f}s"
        return f"[{status}] criterion {self.number:>2} {self.name} ({timing}): {self.detail}"


def _timed(number: int, name: str, budget: float):
    def wrap(fn):
        def run(*args, **kwargs) -> CriterionResult:
            t0 = time.perf_counter()
            passed, detail = fn(*args, **kwargs)
            return CriterionResult(number, name, bool(passed), detail, time.perf_counter() - t0, budget)

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        run.number = number
        return run

    return wrap


def _perm(text: str) -> Permutation:
    return Permutation.parse(text)


@_timed(1, "GL3 golden matrix", 5)
def criterion_gl3_matrix():
    bad = []
    for q in (2, 3, 5):
        r = O.check_gl3(q, flag_level=True)
        if not r["passed"]:
            bad.append((q, r["mismatches"][:3]))
    P = O.check_gl3(2)["matrix"]
    spots = {
        "(e,e)": (P.entry(_perm("123"), _perm("123")), Fraction(8, 21)),
        "(s1,s1)": (P.entry(_perm("213"), _perm("213")), Fraction(34, 105)),
        "(w0,s1)": (P.entry(_perm("321"), _perm("213")), Fraction(2, 21)),
    }
    spot_ok = all(a == b for a, b in spots.values())
    detail = "36 entries exact at q=2,3,5; " + ", ".join(f"{k}={a}" for k, (a, _) in spots.items())
    if bad:
        detail = f"mismatches {bad}"
    return not bad and spot_ok, detail


@_timed(2, "GL3 spectrum", 5)
def criterion_spectrum():
    failed = {}
    for q in (2, 3, 5, 7):
        P = O.lumped_transition(3, q)
        rep = O.spectrum_checks(P, q)
        if not rep.passed:
            failed[q] = [k for k, v in rep.checks.items() if not v]
    rep2 = O.spectrum_checks(O.lumped_transition(3, 2), 2)
    detail = (
        "eigenpair (2q-2)/(2q+1) exact for q=2,3,5,7; q=2 charpoly has cubic factor and roots 0, 1, 2/5"
        if not failed
        else f"failed checks {failed}"
    )
    return not failed and rep2.passed, detail


@_timed(3, "Green polynomial oracle equivalence", 30)
def criterion_green():
    problems = []
    for n in range(1, 5):
        for q in (2, 3):
            for lam in partitions_of(n):
                a = MatrixOverFq.jordan(lam, q)
                brute = O.fixed_count(a, n, q)
                if brute != green_eval(lam, q):
                    problems.append(f"fix {lam} q={q}: {brute} vs {green_eval(lam, q)}")
    for n in range(1, 9):
        for lam in partitions_of(n):
            g = green(lam)
            if g.degree != b_stat(lam) or g.leading_coefficient != hook_count(lam):
                problems.append(f"shape {lam}: deg {g.degree} lead {g.leading_coefficient}")
    for n in range(1, 7):
        poincare = [0] * (n * (n - 1) // 2 + 1)
        for w in all_permutations(n):
            poincare[w.length()] += 1
        if list(green(Partition((1,) * n)).coefficients) != poincare:
            problems.append(f"green(1^{n}) != sum q^l(w)")
    return not problems, "; ".join(problems) or "fixed counts n<=4, degree/leading n<=8, Poincare n<=6"


@_timed(4, "one-step sampler law", 120)
def criterion_one_step(draws: int = 10**6):
    P = O.lumped_transition(3, 2)
    worst = 0.0
    for i, w in enumerate(P.labels):
        flag = CanonicalFlag.base_point(w, 2)
        counts = one_step_counts(flag, draws, seed=ACCEPTANCE_SEED + i)
        tv = 0.5 * sum(abs(counts.get(z, 0) / draws - float(P.entries[i][j])) for j, z in enumerate(P.labels))
        worst = max(worst, tv)
    return worst <= 0.01, f"max TV over 6 rows = {worst:.5f} ({draws} draws each)"


@_timed(5, "Springer fiber uniformity", 120)
def criterion_springer(draws: int = 10**5):
    worst_p = 1.0
    report = []
    rng = random.Random(ACCEPTANCE_SEED)
    for q in (2, 3):
        flags = O.enumerate_flags(3, q)
        for lam in partitions_of(3):
            a = MatrixOverFq.jordan(lam, q)
            fixed = [f for f in flags if fixes_flag(a, f)]
            index = {f: k for k, f in enumerate(fixed)}
            counts = [0] * len(fixed)
            for _ in range(draws):
                counts[index[sample_springer_fiber(a, rng)]] += 1
            if len(fixed) > 1:
                p = float(chisquare(counts).pvalue)
            else:
                p = 1.0
            worst_p = min(worst_p, p)
            report.append(f"q={q} {lam}: |X|={len(fixed)} p={p:.3g}")
    return worst_p >= SIGNIFICANCE, f"min p = {worst_p:.3g}; " + "; ".join(report)


@_timed(6, "stationarity on S3", 60)
def criterion_stationarity(steps: int = 10**6, burn_in: int = 10**3):
    traj = run_chain(ChainConfig(n=3, q=2, seed=ACCEPTANCE_SEED, steps=steps + burn_in))
    words = traj.words[burn_in + 1 :]
    hist = {}
    for w in words:
        hist[w] = hist.get(w, 0) + 1
    counts = [hist.get(w, 0) for w in all_permutations(3)]
    p = float(chisquare(counts).pvalue)
    return p >= SIGNIFICANCE, f"chi-square p = {p:.3g}; counts {counts}"


@_timed(7, "cell confinement at n=4, q=1997", 60)
def criterion_confinement(seed: int = ACCEPTANCE_SEED):
    start = _perm("3214")
    cls = set(p_class(start))
    traj = run_chain(ChainConfig(n=4, q=1997, seed=seed, steps=1000, start=start))
    hist = traj.histogram()
    total = sum(hist.values())
    outside = {str(w): c for w, c in hist.items() if w not in cls}
    sigma = math.sqrt(total * (1 / 3) * (2 / 3))
    in_counts = {str(w): hist.get(w, 0) for w in sorted(cls)}
    balanced = all(abs(c - total / 3) <= 5 * sigma for c in in_counts.values())
    first_exit = next((t for t, w in enumerate(traj.words) if w not in cls), None)
    passed = len(cls) == 3 and not outside and balanced
    detail = f"seed {seed}: in-class {in_counts}, outside {outside or 'none'}"
    if first_exit is not None:
        detail += f", first exit at step {first_exit}"
    return passed, detail


@_timed(7, "sojourns at n=5, q=20011", 60)
def criterion_sojourns(seed: int = ACCEPTANCE_SEED):
    start = _perm("32145")
    notes = []
    ok = True
    for steps in (1000, 10**4):
        traj = run_chain(ChainConfig(n=5, q=20011, seed=seed, steps=steps, start=start))
        sojourns = _sojourns(traj.words)
        changes = len(sojourns) - 1
        longest = max(sojourns, key=lambda s: len(s[1]))
        covered = set(longest[1]) == set(p_class(longest[0]))
        ok &= changes <= HANDFUL and covered
        notes.append(
            f"t={steps}: {changes} class changes, {len(sojourns)} cells, longest sojourn "
            f"{len(longest[1])} steps covers its {len(p_class(longest[0]))}-element class: {covered}"
        )
    return ok, "; ".join(notes)


def _sojourns(words):
    """Maximal runs of consecutive states sharing a P-symbol: [(representative, states)]."""
    out = []
    current = None
    for w in words:
        P = rsk(w)[0]
        if current is None or P != current:
            out.append((w, []))
            current = P
        out[-1][1].append(w)
    return out


@_timed(8, "Mallows row from w0", 300)
def criterion_mallows():
    bad = []
    for n, q in ((3, 2), (3, 3), (4, 2)):
        P = O.lump(O.exact_transition(n, q), n, q)
        if P.entries[P.index(Permutation.longest(n))] != O.mallows_row(n, q):
            bad.append((n, q))
    return not bad, "exact at (3,2), (3,3), (4,2)" if not bad else f"mismatch at {bad}"


@_timed(9, "GL3 TV bounds", 10)
def criterion_tv_bounds():
    failures = []
    half_ok = True
    for q in (2, 3, 5):
        P = O.lumped_transition(3, q)
        beta = Fraction(2 * q - 2, 2 * q + 1)
        for s in ("213", "132", "231", "312"):
            r = O.gl3_tv_bounds_hold(q, _perm(s), 50, P)
            for side in ("lower", "upper"):
                if not r[side]:
                    l = r[f"first_{side}_failure"]
                    tv = float(r["curve"][l - 1])
                    bound = 0.5 * float(beta) ** l if side == "lower" else math.sqrt(1.5) * float(beta) ** l
                    failures.append(f"{side} q={q} start={s} l={l}: TV={tv:.4f} vs {bound:.4f}")
            half = O.tv_curve(P, _perm(s), 50, half=True)
            half_ok &= all(t * t <= Fraction(3, 2) * beta ** (2 * l) for l, t in enumerate(half, 1))
    note = f"; with TV = half the sum both bounds hold: {half_ok}"
    if failures:
        return False, "displayed-sum TV violates " + "; ".join(failures) + note
    return True, "both bounds hold for l<=50, q=2,3,5, all four starts" + note


@_timed(10, "limit theorem trend", 10)
def criterion_limit():
    qs = [2, 3, 5, 7, 11]
    rep = O.limit_matrix_check(qs)
    scaled = [float(m) * q for m, q in zip(rep.max_off_class, qs)]
    detail = f"q*max off-class = {[round(x, 3) for x in scaled]}, c = {rep.fitted_c:.3f}, spread {rep.ratio_spread:.2f}"
    return rep.within_factor_two, detail


@_timed(11, "combinatorial property suites", 30)
def criterion_properties():
    problems = []
    for n in range(1, 7):
        seen = set()
        for w in all_permutations(n):
            P, Q = rsk(w)
            if rsk_inverse(P, Q) != w:
                problems.append(f"inverse fails at {w}")
            if rsk(w.inverse())[0] != Q:
                problems.append(f"P(w^-1) != Q(w) at {w}")
            seen.add((P, Q))
        if len(seen) != math.factorial(n):
            problems.append(f"RSK not injective at n={n}")
    for n in range(1, 9):
        if sum(hook_count(lam) ** 2 for lam in partitions_of(n)) != math.factorial(n):
            problems.append(f"sum (f^lam)^2 != {n}!")
        for lam in partitions_of(n):
            if hook_count(lam) != len(syt_enumerate(lam)):
                problems.append(f"hook count disagrees with enumeration at {lam}")
    for n in range(1, 11):
        parts = partitions_of(n)
        for lam in parts:
            if 2 * b_stat(lam) + orbit_dim(lam) != n * n - n:
                problems.append(f"2b + dim != n^2 - n at {lam}")
            for mu in parts:
                if mu != lam and dominance_leq(mu, lam) and not b_stat(mu) > b_stat(lam):
                    problems.append(f"b not strictly reversing dominance at {mu} < {lam}")
    return not problems, "; ".join(problems[:5]) or "RSK n<=6, hook sums n<=8, b/orbit identities n<=10"


CRITERIA = [
    criterion_gl3_matrix,
    criterion_spectrum,
    criterion_green,
    criterion_one_step,
    criterion_springer,
    criterion_stationarity,
    criterion_confinement,
    criterion_sojourns,
    criterion_mallows,
    criterion_tv_bounds,
    criterion_limit,
    criterion_properties,
]


def run_all(only=None, log=print) -> list:
    results = []
    for fn in CRITERIA:
        if only and fn.number not in only:
            continue
        r = fn()
        if log:
            log(r.line())
        results.append(r)
    return results
