"""Acceptance gates. Each test prints one PASS/FAIL line, visible even under capture."""

import contextlib
import random
import time
from fractions import Fraction

import pytest

from sparsesep import zoo
from sparsesep.bsm import has_constant_column
from sparsesep.coeff import (
    CoefficientMatrix,
    columns_proportional,
    is_rank_one,
    rows_proportional,
    solve_rank_one,
)
from sparsesep.oracle import dense_vector, schmidt_rank
from sparsesep.separability import Family, classify, m4_verdict, split_at
from sparsesep.state import PureState, QubitSubset, parse_state, permute_qubits
from sparsesep.verify import concordance

from conftest import EX1_TEXT

HALF = Fraction(1, 2)


@contextlib.contextmanager
def criterion(capsys, number, title):
    detail = []
    try:
        yield detail
    except BaseException:
        with capsys.disabled():
            print(f"\n[FAIL] criterion {number}: {title} {'; '.join(detail)}")
        raise
    with capsys.disabled():
        print(f"\n[PASS] criterion {number}: {title} {'; '.join(detail)}")


def timed(fn, *args, repeat=5, **kwargs):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args, **kwargs)
        best = min(best, time.perf_counter() - t)
    return out, best


def test_criterion_1_worked_example(capsys):
    with criterion(capsys, 1, "worked example") as detail:
        s = parse_state(EX1_TEXT)
        r, secs = timed(classify, s)
        detail.append(f"family={int(r.family)} subset={r.witness.subset} {secs * 1e3:.2f} ms")
        assert r.family is Family.FAMILY2
        assert r.witness.subset.qubits == (2,)
        assert r.witness.product() == s
        assert secs < 0.010


def test_criterion_2_cluster_pair(capsys):
    with criterion(capsys, 2, "cluster pair") as detail:
        c4 = zoo.c4()
        r, t1 = timed(classify, c4)
        flipped = PureState(4, [(b, HALF) for b in c4.labels])
        r2, t2 = timed(classify, flipped)
        detail.append(
            f"C4 family={int(r.family)} forms={r.search.canonical_forms} hits={r.search.rank1_hits} "
            f"{t1 * 1e3:.2f} ms; flipped family={int(r2.family)} {t2 * 1e3:.2f} ms"
        )
        assert r.family is Family.FAMILY4
        assert r.search.canonical_forms >= 1 and r.search.rank1_hits == 0
        assert r2.family is Family.FAMILY2 and r2.witness.product() == flipped
        assert t1 < 0.010 and t2 < 0.010


def test_criterion_3_named_families(capsys):
    with criterion(capsys, 3, "named families") as detail:
        cases = [(f"GHZ_{n}", zoo.ghz(n)) for n in range(2, 13)]
        cases += [(f"W_{n}", zoo.w(n)) for n in range(2, 13)]
        cases += [(f"Dicke({n},2)", zoo.dicke(n, 2)) for n in range(4, 11)]
        cases += [("Bell", zoo.bell())]
        wrong = [name for name, s in cases if classify(s).family is not Family.FAMILY3]
        c2 = classify(zoo.c2()).family
        fast, t_fast = timed(classify, zoo.ghz(20), repeat=1)
        slow, t_slow = timed(classify, zoo.ghz(20), shortcuts=False, repeat=1)
        detail.append(
            f"{len(cases)} Family3 cases, wrong={wrong}; C2 family={int(c2)}; "
            f"GHZ_20 {t_fast * 1e3:.2f} ms, no shortcuts {t_slow:.2f} s"
        )
        assert not wrong
        assert c2 is Family.FAMILY4
        assert fast.family is slow.family is Family.FAMILY3
        assert t_fast < 5 and t_slow < 60


def _concordance_specs():
    specs = []
    rng = random.Random(2024)
    for seed in range(250):
        k = rng.choice((2, 3))
        n = rng.randint(2 * k if k == 3 else 2, 10)
        cuts = sorted(rng.sample(range(1, n), k - 1))
        blocks = [b - a for a, b in zip([0] + cuts, cuts + [n])]
        specs.append(("random_product", blocks, seed))
    for seed in range(250):
        m = (4, 6, 8, 9, 12)[seed % 5]
        n = rng.randint(max(3, (m - 1).bit_length()), 10)
        specs.append(("random_sparse", (n, m), seed))
    return specs


@pytest.mark.slow
def test_criterion_4_oracle_concordance(capsys):
    with criterion(capsys, 4, "oracle concordance") as detail:
        start = time.perf_counter()
        specs = _concordance_specs()
        family_bad, cut_bad, cuts = [], [], 0
        for kind, params, seed in specs:
            s = zoo.random_product(params, seed) if kind == "random_product" else zoo.random_sparse(*params, seed)
            c = concordance(s)
            assert c.cuts_checked == (1 << (s.n - 1)) - 1
            cuts += c.cuts_checked
            if c.family != c.oracle_family:
                family_bad.append((kind, params, seed))
            if c.cut_disagreements:
                cut_bad.append((kind, params, seed))
        secs = time.perf_counter() - start
        detail.append(
            f"{len(specs)} states, {cuts} cuts, family mismatches={len(family_bad)}, "
            f"cut mismatches={len(cut_bad)}, {secs:.1f} s"
        )
        assert len(specs) >= 500
        assert not family_bad and not cut_bad
        assert secs < 600


def _complementary_pair_state(rng, n, ratio):
    full = (1 << n) - 1
    while True:
        a, b = rng.sample(range(1 << n), 2)
        if b not in (a, a ^ full):
            break
    labels = sorted([a, b, a ^ full, b ^ full])
    d = [zoo.random_coefficient(rng) for _ in range(4)]
    if ratio:
        d[3] = d[1] * d[2] / d[0]
    return PureState(n, zip(labels, d))


def _m4_states():
    rng = random.Random(55)
    states = []
    seed = 0
    while len(states) < 80:
        s = zoo.random_sparse(rng.randint(2, 16), 4, seed)
        seed += 1
        if not has_constant_column(s):
            states.append(s)
    seed = 0
    while len(states) < 140:
        w1 = rng.randint(1, 8)
        s = zoo.random_product([w1, rng.randint(1, 16 - w1)], seed, max_terms=2)
        seed += 1
        if s.m == 4 and not has_constant_column(s):
            states.append(s)
    for i in range(120):
        states.append(_complementary_pair_state(rng, rng.randint(2, 16), ratio=i % 2 == 0))
    return states


def test_criterion_5_fast_path_equivalence(capsys):
    with criterion(capsys, 5, "m=4 fast path") as detail:
        states = _m4_states()
        assert all(s.m == 4 and s.n <= 16 and not has_constant_column(s) for s in states)
        mismatches, separable = 0, 0
        for s in states:
            v = m4_verdict(s)
            scan = classify(s, shortcuts=False)
            separable += v.separable
            if v.separable != scan.separable:
                mismatches += 1
            elif v.separable:
                assert v.witness.product() == s
        detail.append(f"{len(states)} states ({separable} separable), mismatches={mismatches}")
        assert len(states) >= 200
        assert mismatches == 0


def test_criterion_6_prime_support(capsys):
    with criterion(capsys, 6, "prime-size support") as detail:
        states, seed = [], 0
        rng = random.Random(6)
        while len(states) < 150:
            m = (2, 3, 5, 7, 11)[len(states) % 5]
            s = zoo.random_sparse(rng.randint(max(2, (m - 1).bit_length()), 12), m, seed)
            seed += 1
            if not has_constant_column(s):
                states.append(s)
        forms = sum(classify(s, shortcuts=False).search.canonical_forms for s in states)
        families = {int(classify(s).family) for s in states}
        detail.append(f"{len(states)} states, canonical forms={forms}, families={sorted(families)}")
        assert forms == 0
        assert families == {3}


def _random_vector(rng, k):
    return [zoo.random_coefficient(rng) for _ in range(k)]


def test_criterion_7_rank_one_suite(capsys):
    with criterion(capsys, 7, "rank-1 test suite") as detail:
        rng = random.Random(7)
        failures = 0
        for _ in range(1000):
            x, y = _random_vector(rng, rng.randint(2, 6)), _random_vector(rng, rng.randint(2, 6))
            rows = [[xi * yj for yj in y] for xi in x]
            a = CoefficientMatrix.from_rows(rows)
            if not (is_rank_one(a) and solve_rank_one(a).outer() == a.entries):
                failures += 1
                continue
            s, t = rng.randrange(len(x)), rng.randrange(len(y))
            while True:
                delta = zoo.random_coefficient(rng)
                if rows[s][t] + delta:
                    break
            rows[s][t] = rows[s][t] + delta
            if is_rank_one(CoefficientMatrix.from_rows(rows)):
                failures += 1
        disagreements, rank1 = 0, 0
        for i in range(1000):
            g, h = rng.randint(2, 5), rng.randint(2, 5)
            if i % 2:
                x, y = _random_vector(rng, g), _random_vector(rng, h)
                a = CoefficientMatrix.from_rows([[xi * yj for yj in y] for xi in x])
            else:
                a = CoefficientMatrix.from_rows([_random_vector(rng, h) for _ in range(g)])
            r, c = rows_proportional(a), columns_proportional(a)
            rank1 += r
            disagreements += r != c
        detail.append(
            f"outer/perturb failures={failures}; rows-vs-columns disagreements={disagreements} "
            f"over 1000 ({rank1} rank 1)"
        )
        assert failures == 0 and disagreements == 0


def _fuzz_state(seed):
    rng = random.Random(seed)
    pick = seed % 4
    if pick == 0:
        m = rng.choice((4, 6, 8, 9, 12))
        return zoo.random_sparse(rng.randint((m - 1).bit_length(), 9), m, seed)
    if pick == 1:
        return zoo.random_product([rng.randint(1, 3) for _ in range(rng.randint(2, 3))], seed)
    if pick == 2:
        return zoo.random_sparse(rng.randint(3, 9), rng.choice((3, 5, 7)), seed)
    named = [zoo.c4(), zoo.c2(), zoo.ghz(5), zoo.w(4), zoo.dicke(5, 2), zoo.linear_cluster(4)]
    return named[seed % len(named)]


def test_criterion_8_invariance(capsys):
    with criterion(capsys, 8, "invariance fuzz") as detail:
        changed = []
        seen = set()
        for seed in range(200):
            s = _fuzz_state(seed)
            rng = random.Random(10_000 + seed)
            perm = list(range(1, s.n + 1))
            rng.shuffle(perm)
            c = zoo.random_coefficient(rng)
            fam = classify(s).family
            seen.add(int(fam))
            if classify(permute_qubits(s, perm)).family is not fam or classify(s.scale(c)).family is not fam:
                changed.append(seed)
        detail.append(f"200 states, families seen={sorted(seen)}, changed={changed}")
        assert not changed


def test_criterion_9_full_support_ratio(capsys):
    with criterion(capsys, 9, "full-support ratio states") as detail:
        rng = random.Random(9)
        checked = 0
        for n in range(3, 9):
            half = 1 << (n - 1)
            first = QubitSubset.from_qubits([1], n)
            for _ in range(3):
                low = _random_vector(rng, half)
                kappa = zoo.random_coefficient(rng)
                terms = list(enumerate(low)) + [(half + i, kappa * c) for i, c in enumerate(low)]
                s = PureState(n, terms)
                w = split_at(s, first)
                assert w is not None and w.product() == s
                j = rng.randrange(half)
                bump = zoo.random_coefficient(rng)
                while bump == 1:
                    bump = zoo.random_coefficient(rng)
                broken = PureState(n, [(b, c * bump if b == half + j else c) for b, c in terms])
                assert split_at(broken, first) is None
                assert schmidt_rank(dense_vector(broken), first) > 1
                checked += 1
        detail.append(f"{checked} states over n=3..8, split and break both confirmed")
