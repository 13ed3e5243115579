"""The seven acceptance criteria, each with its runtime budget.

Every criterion prints one PASS/FAIL line (collected in the terminal summary
and also written to stdout, visible with ``-s``).
"""

import random
import time

from conftest import ACCEPTANCE_LINES
from syncfn.arith import (
    COLLATZ, FabdParams, default_pad_limit, division_sync, division_transitions, iterate,
    oracle_f, oracle_f_accel, prefix_accel, prefix_fabd, suffix_fabd,
)
from syncfn.automata import compose_relations, enumerate_relation
from syncfn.closure import ClosureMachine
from syncfn.numerals import decode_lsd, decode_msd, encode_lsd, encode_msd
from syncfn.powers import check_power_equivalence, explicit_power, explicit_power_accel
from syncfn.synchronized import (
    apply_suffix, prefix_compose, prefix_difference, prefix_intersect, suffix_compose,
    suffix_difference, suffix_intersect,
)
from syncfn.testing import random_prefix, random_suffix
from syncfn.verify import (
    check_division_product, check_path_division, check_path_multiplication,
    check_power_decomposition,
)


def w(text):
    return tuple(int(c) for c in text)


def report(number, title, budget, check):
    start = time.perf_counter()
    failures = check()
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < budget
    status = "PASS" if ok else "FAIL"
    detail = "" if not failures else f"; first failures: {failures[:3]}"
    line = f"criterion {number} {status}: {title} ({elapsed:.2f}s, budget {budget}s){detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert not failures, line
    assert elapsed < budget, line


# -- 1 ------------------------------------------------------------------------


def criterion_1():
    bad = []
    m = explicit_power_accel(5, 1, 3)
    if m.apply(w("423")) != w("02404"):
        bad.append(("423", m.apply(w("423"))))
    if decode_msd(w("02404"), 5) != 354 or iterate(FabdParams.accelerated(5, 1), 113, 3) != 354:
        bad.append("113 -> 354")
    if m.terminal[w("100")] != w("04"):
        bad.append(("terminal of 100", m.terminal[w("100")]))
    return bad


def test_criterion_1_power_example():
    report(1, "explicit accelerated cube accepts 423 with output 02404", 1.0, criterion_1)


# -- 2 ------------------------------------------------------------------------


def criterion_2():
    bad = []
    div = division_sync(5, 8)
    if len(div.states) != 8 or len(div.transitions) != 40:
        bad.append(("size", len(div.states), len(div.transitions)))
    if div.transitions[0] != (0, 0, (0,), 0):
        bad.append(("first", div.transitions[0]))
    if div.transitions[-1] != (7, 4, (4,), 7):
        bad.append(("last", div.transitions[-1]))
    for a in range(2, 7):
        for d in range(1, 10):
            if division_transitions(a, d, "incremental") != division_transitions(a, d, "equation"):
                bad.append(("builders", a, d))
    return bad


def test_criterion_2_division_structure():
    report(2, "division by 8 in base 5: 8 states, 40 transitions, builders agree", 1.0, criterion_2)


# -- 3 ------------------------------------------------------------------------


def criterion_3():
    bad = []
    g = prefix_fabd(COLLATZ)
    for n in range(100_000):
        if decode_msd(g.apply(encode_msd(n, 6)), 6) != oracle_f(COLLATZ, n):
            bad.append(("prefix", n))
    s = suffix_fabd(COLLATZ)
    pad = default_pad_limit(COLLATZ)
    for n in range(10_000):
        out = apply_suffix(s, encode_lsd(n, 2), pad)
        if out is None or decode_lsd(out, 2) != oracle_f(COLLATZ, n):
            bad.append(("suffix", n))
    for a, b in [(3, 1), (6, 2)]:
        ga = prefix_accel(a, b)
        for n in range(10_000):
            if decode_msd(ga.apply(encode_msd(n, a)), a) != oracle_f_accel(a, b, n):
                bad.append(("accel", a, b, n))
    return bad


def test_criterion_3_collatz_sweeps():
    report(3, "Collatz sweeps: prefix < 1e5, suffix < 1e4, accelerated (3,1) and (6,2) < 1e4",
           5.0, criterion_3)


# -- 4 ------------------------------------------------------------------------


def criterion_4():
    bad = []
    for d, a in [(2, 3), (2, 4), (3, 2), (5, 3)]:
        if check_path_multiplication(d, a, carries=7, max_len=4):
            bad.append(("multiplication paths", d, a))
    for a, d in [(2, 3), (3, 2), (5, 8), (6, 2)]:
        if check_path_division(a, d, max_len=4):
            bad.append(("division paths", a, d))
    for a, d, d2 in [(2, 2, 3), (3, 2, 2), (5, 2, 4)]:
        if not check_division_product(a, d, d2):
            bad.append(("division product", a, d, d2))
    for a, b in [(3, 1), (5, 1)]:
        for n in range(6):
            if check_power_decomposition(FabdParams.accelerated(a, b), n, 8):
                bad.append(("accelerated decomposition", a, b, n))
    for params in [COLLATZ, FabdParams(2, 1, 3)]:
        for n in range(5):
            if check_power_decomposition(params, n, 6):
                bad.append(("decomposition", params, n))
    return bad


def test_criterion_4_identity_suites():
    report(4, "path identities, division products and power decompositions", 10.0, criterion_4)


# -- 5 ------------------------------------------------------------------------


def criterion_5():
    bad = []
    all_params = [COLLATZ, FabdParams(5, 1, 2), FabdParams(2, 1, 3)]
    for params in all_params:
        for n in range(6):
            rep = check_power_equivalence(params, n, 10_000)
            if not rep.ok:
                bad.append(("power", params, n, rep.structural_ok, rep.mismatches[:2]))
    for params in all_params:
        m = ClosureMachine(params)
        for n in range(5):
            sec, e = m.section_export(n).machine, explicit_power(params, n)
            if (sec.states != e.states or set(sec.transitions) != set(e.transitions)
                    or dict(sec.terminal) != dict(e.terminal)):
                bad.append(("section", params, n))
        for k in range(10_000):
            x = k
            for n in range(9):
                if m.eval_integer(k, n) != x:
                    bad.append(("closure", params, k, n))
                x = oracle_f(params, x)
    return bad


def test_criterion_5_power_coherence():
    report(5, "explicit power = composed power = oracle; sections = explicit powers; "
              "closure = iterated oracle", 30.0, criterion_5)


# -- 6 ------------------------------------------------------------------------


def _rel(m, n, out):
    return enumerate_relation(m.to_transducer(), n, out)


def criterion_6():
    rng = random.Random(20240611)
    bad = []
    pairs = 0
    for trial in range(200):
        b1, b2, b3 = (rng.randint(1, 3) for _ in range(3))
        p = random_prefix(rng, input_base=b1, output_base=b2)
        q = random_prefix(rng, input_base=b1, output_base=b2)
        p2 = random_prefix(rng, input_base=b2, output_base=b3)
        r, rq = _rel(p, 5, 7), _rel(q, 5, 7)
        c = prefix_compose(p, p2)
        if _rel(c, 5, 9) != compose_relations(r, _rel(p2, 7, 9)):
            bad.append(("prefix compose", trial))
        if _rel(prefix_intersect(p, q), 5, 7) != r & rq:
            bad.append(("prefix intersect", trial))
        diff = prefix_difference(p, q)
        if _rel(diff, 5, 7) != r - rq:
            bad.append(("prefix difference", trial))
        if len(c.states) > len(p.states) * len(p2.states) or \
                len(diff.states) > len(p.states) * len(q.states) + len(p.states):
            bad.append(("prefix size", trial))

        s = random_suffix(rng, input_base=b1, output_base=b2)
        t = random_suffix(rng, input_base=b1, output_base=b2)
        s2 = random_suffix(rng, input_base=b2, output_base=b3)
        rs, rt = _rel(s, 5, 5), _rel(t, 5, 5)
        sc = suffix_compose(s, s2)
        if _rel(sc, 5, 5) != compose_relations(rs, _rel(s2, 5, 5)):
            bad.append(("suffix compose", trial))
        if _rel(suffix_intersect(s, t), 5, 5) != rs & rt:
            bad.append(("suffix intersect", trial))
        sdiff = suffix_difference(s, t)
        if _rel(sdiff, 5, 5) != rs - rt:
            bad.append(("suffix difference", trial))
        if len(sc.states) > len(s.states) * len(s2.states) or \
                len(sdiff.states) > len(s.states) * len(t.states) + len(s.states):
            bad.append(("suffix size", trial))
        pairs += 2
    if pairs < 200:
        bad.append(("too few pairs", pairs))
    return bad


def test_criterion_6_random_constructions():
    report(6, "random prefix/suffix machines: compose, intersect, difference match the relations",
           10.0, criterion_6)


# -- 7 ------------------------------------------------------------------------


def criterion_7():
    bad = []
    for params, n, expected in [(COLLATZ, 3, [0, 1, 2, 4]), (FabdParams.accelerated(3, 1), 2, [0, 1, 2])]:
        hits = ClosureMachine(params).find_cycles(n, 100)
        if [h.k for h in hits] != expected:
            bad.append(("fixed points", params, [h.k for h in hits]))
        for h in hits:
            x = h.witness
            if x is None or x.u + x.v != encode_msd(h.k, params.base) \
                    or x.output != (0,) * len(x.v) + x.u:
                bad.append(("witness", params, h.k))
    return bad


def test_criterion_7_cycle_probe():
    report(7, "cycle probe finds {0,1,2,4} for the cube and {0,1,2} for the accelerated square",
           1.0, criterion_7)
