"""End-to-end exit criteria.

Each test prints one PASS/FAIL line; the lines are repeated in the pytest
terminal summary.  Run alone with ``pytest tests/test_acceptance.py -s``.
"""

import functools
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from conftest import ACCEPTANCE_LINES
from mtorus import folding, oracle, words
from mtorus.cli import parse_spec, run
from mtorus.endo import Endomorphism
from mtorus.hnn import MixedWord, is_trivial, present_mapping_torus, verify_isomorphism
from mtorus.torus import injectivize, kernel_witnesses, quotient_image

pytestmark = pytest.mark.acceptance

FIXTURES = Path(__file__).parent / "fixtures"
SEED = 20181028


def record(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


# -- 1 ---------------------------------------------------------------------

GOLDEN = [
    (
        "rank = 3\nmap a -> b\nmap b -> c\nmap c -> c\n",
        dict(rank_sequence=[3, 2, 1, 1], k=2, f1_rank=1, psi={"x1": "x1"}),
    ),
    (
        "rank = 2\nmap a -> aa\nmap b -> a\n",
        dict(
            k=1,
            f1_rank=1,
            psi={"x1": "x1 x1"},
            mapping_torus_psi="< x1, t | T x1 t = x1 x1 >",
        ),
    ),
    ("rank = 2\nmap a -> a\nmap b -> 1\n", dict(k=1, f1_rank=1, psi={"x1": "x1"})),
    (
        "rank = 2\nmap a -> a\nmap b -> b\n",
        dict(k=0, f1_rank=2, psi={"x1": "x1", "x2": "x2"}),
    ),
    ("rank = 1\nmap a -> 1\n", dict(k=1, f1_rank=0, mapping_torus_psi="< t | >")),
]


def test_criterion_1_worked_pipeline_table():
    start = time.perf_counter()
    mismatches = []
    for text, expected in GOLDEN:
        report = run(parse_spec(text))
        for key, value in expected.items():
            if getattr(report, key) != value:
                mismatches.append((text.splitlines()[1:], key, getattr(report, key)))
        if not report.passed:
            mismatches.append((text, "passed", False))
    elapsed = time.perf_counter() - start
    record(
        1,
        "worked pipeline table",
        not mismatches and elapsed < 1.0,
        f"{len(GOLDEN)} specs, {elapsed:.3f}s, mismatches={mismatches}",
    )


# -- 2 ---------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def random_suite(n=500):
    rng = random.Random(SEED)
    cases = []
    for _ in range(n):
        r = rng.randint(1, 5)
        phi = Endomorphism(r, tuple(words.random_word(rng, r, 6) for _ in range(r)))
        probes = tuple(words.random_word(rng, r, 8) for _ in range(10))
        cases.append((phi, probes))
    return cases


def test_criterion_2_random_endomorphisms():
    start = time.perf_counter()
    failures = []
    cases = random_suite()
    for phi, probes in cases:
        r = injectivize(phi)
        ranks = r.trace
        Phi = lambda f: quotient_image(r, f)  # noqa: E731
        pres = present_mapping_torus(r.psi, words.basis_names(r.m))
        checks = {
            "a": all(x >= y for x, y in zip(ranks, ranks[1:])),
            "b": r.k <= phi.rank,
            "c": folding.rank(r.psi_image_graph) == r.m and pres.injective,
            "d": all(
                is_trivial(
                    pres,
                    MixedWord.of(-1, Phi((i,)), 1, words.invert(Phi(phi.images[i - 1]))),
                )
                for i in range(1, phi.rank + 1)
            ),
            "e": all(not Phi(w) for w in kernel_witnesses(phi, r.k, 6, 20)),
            "f": all(Phi(phi(f)) == r.psi(Phi(f)) for f in probes),
        }
        bad = [key for key, ok in checks.items() if not ok]
        if bad:
            failures.append((str(phi), bad))
    elapsed = time.perf_counter() - start
    record(
        2,
        "random endomorphism suite",
        len(cases) >= 500 and not failures and elapsed < 60,
        f"{len(cases)} cases, {len(failures)} failures, {elapsed:.1f}s",
    )


def test_criterion_2_matches_verification_report():
    # the same checks through the library entry point, on a slice of the suite
    bad = []
    for phi, _ in random_suite()[:100]:
        report = verify_isomorphism(phi, injectivize(phi), surjectivity=True)
        if not report.passed or None in report.surjectivity_witnesses:
            bad.append(str(phi))
    assert not bad, bad


# -- 3 ---------------------------------------------------------------------


def test_criterion_3_rank_oracle_equivalence():
    rng = random.Random(SEED + 3)
    failures = []
    n = 300
    for _ in range(n):
        r = rng.randint(1, 4)
        gens = [words.random_word(rng, r, 6) for _ in range(rng.randint(1, 4))]
        if folding.rank(folding.build(gens, r)) != oracle.nielsen_rank(gens)[0]:
            failures.append(gens)
    record(3, "folding rank equals Nielsen rank", not failures, f"{n} sets, {len(failures)} failures")


# -- 4 ---------------------------------------------------------------------


def test_criterion_4_membership_and_round_trip():
    rng = random.Random(SEED + 4)
    n_subgroups, rank = 60, 2
    all_words = list(words.iter_words(rank, 6))
    problems = []
    yes_count = member_count = 0
    for _ in range(n_subgroups):
        gens = [words.random_word(rng, rank, 4, 1) for _ in range(rng.randint(1, 3))]
        graph = folding.build(gens, rank)
        basis = folding.extract_basis(graph)
        ball = oracle.product_ball(gens, 6)
        for elem, factors in ball.items():
            yes_count += 1
            if not folding.contains(graph, elem) or oracle.evaluate(factors, gens) != elem:
                problems.append(("oracle YES not contained", gens, elem))
        for w in all_words:
            if folding.contains(graph, w):
                member_count += 1
                if words.substitute(folding.rewrite_in_basis(basis, w), basis.basis) != w:
                    problems.append(("round trip", gens, w))
            elif w in ball:
                problems.append(("folding-false word is oracle YES", gens, w))
    record(
        4,
        "membership and round trip",
        not problems,
        f"{n_subgroups} subgroups, {yes_count} oracle YES, {member_count} members, "
        f"{len(problems)} problems",
    )


# -- 5 ---------------------------------------------------------------------


def random_mixed(rng, length):
    parts = []
    for _ in range(length):
        if rng.random() < 0.4:
            parts.append(rng.choice([-1, 1]))
        else:
            parts.append((rng.choice([1, -1]),))
    return MixedWord.of(*parts)


def test_criterion_5_britton_solver():
    start = time.perf_counter()
    p = present_mapping_torus(Endomorphism.from_strings(["aa"]))
    fixed = {
        "TatAA": True,
        "ATAtaTat": True,
        "taT": False,
        "taaTA": True,
    }
    problems = [w for w, expected in fixed.items() if is_trivial(p, MixedWord.parse(w)) != expected]

    rng = random.Random(SEED + 5)
    nonzero = 0
    while nonzero < 1000:
        w = random_mixed(rng, rng.randint(1, 16))
        if w.t_exponent() == 0:
            continue
        nonzero += 1
        if is_trivial(p, w):
            problems.append(w.format())
    for _ in range(1000):
        w = random_mixed(rng, rng.randint(0, 16))
        if not is_trivial(p, w * w.inverse()):
            problems.append(w.format())
    elapsed = time.perf_counter() - start
    record(
        5,
        "Britton solver on < a, t | T a t = a a >",
        not problems and elapsed < 10,
        f"{len(problems)} problems, {elapsed:.2f}s",
    )


# -- 6 ---------------------------------------------------------------------


def test_criterion_6_idempotence():
    failures = []
    for phi, _ in random_suite():
        r = injectivize(phi)
        again = injectivize(r.psi)
        if again.k != 0 or again.m != r.m:
            failures.append(str(phi))
    record(6, "idempotence on the random suite", not failures, f"{len(failures)} failures")


# -- 7 ---------------------------------------------------------------------


def test_criterion_7_determinism():
    fixtures = sorted(FIXTURES.glob("*.txt"))
    differing = []
    for path in fixtures:
        outputs = [
            subprocess.run(
                [sys.executable, "-m", "mtorus", "--json", "--dump-graphs", str(path)],
                capture_output=True,
                check=True,
            ).stdout
            for _ in range(2)
        ]
        if outputs[0] != outputs[1]:
            differing.append(path.name)
    record(
        7,
        "byte-identical JSON across runs",
        fixtures and not differing,
        f"{len(fixtures)} fixtures",
    )
