import itertools
import random

import pytest

from posbp import bp as B
from posbp import terms as T
from posbp.tables import (is_monotone, monotone_closure, popcount_table,
                          table_of_function, truth_table)
from conftest import read_fixture


def bp_table(g, vars):
    return table_of_function(vars, lambda a: B.eval_nbp(g, a))


def test_single_sink_program():
    g = B.Nbp({0: B.SINK1}, 0, frozenset(), frozenset()).validate()
    assert B.eval_nbp(g, {}) == 1
    assert B.is_positive_nbp(g)
    assert B.is_read_once(g)


def test_exact_obdd_matches_popcount():
    for n in range(0, 6):
        for k in range(-1, n + 2):
            g = B.build_exact_obdd(n, k)
            assert bp_table(g, range(n)).bits == \
                popcount_table(range(n), k, False).bits


def test_exact_obdd_shape():
    g = B.build_exact_obdd(4, 2)
    assert B.is_read_once(g)
    assert not B.is_positive_nbp(g)
    assert B.eval_nbp(g, {0: 1, 1: 1}) == 1
    assert B.eval_nbp(g, {}) == 0
    assert B.build_exact_obdd(3, 5).e0  # exists but rejects everything
    assert bp_table(B.build_exact_obdd(3, 5), range(3)).bits == 0
    assert B.eval_nbp(B.build_exact_obdd(0, 0), {}) == 1


def test_positive_closure_idempotent():
    g = B.build_exact_obdd(3, 1)
    pg = B.positive_closure(g)
    assert B.is_positive_nbp(pg)
    assert B.positive_closure(pg).e1 == pg.e1


def test_closure_law_on_exact():
    for n in range(0, 6):
        for k in range(0, n + 1):
            g = B.build_exact_obdd(n, k)
            t = bp_table(g, range(n))
            tc = bp_table(B.positive_closure(g), range(n))
            assert tc.bits == monotone_closure(t).bits
            assert tc.bits == popcount_table(range(n), k, True).bits


def random_read_once(rng, nvars):
    """Layered random NBP; variable indices strictly increase along edges."""
    layers = [[0]]
    nid = 1
    labels = {0: 0}
    for v in range(1, nvars):
        width = rng.randrange(1, 3)
        layers.append(list(range(nid, nid + width)))
        for u in layers[-1]:
            labels[u] = v
        nid += width
    s0, s1 = nid, nid + 1
    labels[s0] = B.SINK0
    labels[s1] = B.SINK1
    e0, e1 = set(), set()
    for li, layer in enumerate(layers):
        if li:  # every interior node is fed from the previous layer
            for u in layer:
                (e0 if rng.random() < 0.5 else e1).add(
                    (rng.choice(layers[li - 1]), u))
        for u in layer:
            targets = (layers[li + 1] if li + 1 < len(layers) else []) + [s0, s1]
            for es in (e0, e1):
                for v in rng.sample(targets,
                                    rng.randrange(1, min(3, len(targets)) + 1)):
                    es.add((u, v))
    g = B.Nbp(labels, 0, frozenset(e0), frozenset(e1))
    g.validate()
    return g


def test_closure_law_on_random_read_once():
    rng = random.Random(11)
    for _ in range(60):
        g = random_read_once(rng, rng.randrange(1, 6))
        assert B.is_read_once(g)
        vars = sorted(set(g.variables()))
        t = bp_table(g, vars)
        tc = bp_table(B.positive_closure(g), vars)
        assert tc.bits == monotone_closure(t).bits


def test_closure_law_counterexample_fixture():
    g = B.parse_nbp(read_fixture("nonreadonce.bp"))
    assert not B.is_read_once(g)
    t = bp_table(g, [0])
    tc = bp_table(B.positive_closure(g), [0])
    assert tc.bits != monotone_closure(t).bits


def test_positive_nbps_compute_monotone_functions():
    rng = random.Random(23)
    for _ in range(40):
        g = B.positive_closure(random_read_once(rng, rng.randrange(1, 6)))
        vars = sorted(set(g.variables()))
        assert is_monotone(bp_table(g, vars))


def test_read_once_detection():
    labels = {0: 0, 1: 0, 2: B.SINK1, 3: B.SINK0}
    chain = B.Nbp(labels, 0, frozenset({(0, 1), (1, 3)}),
                  frozenset({(0, 1), (1, 2)}))
    chain.validate()
    assert not B.is_read_once(chain)


def test_nbp_to_endt_semantics():
    rng = random.Random(5)
    cases = [B.build_exact_obdd(4, 2),
             B.positive_closure(B.build_exact_obdd(4, 2))]
    cases += [random_read_once(rng, rng.randrange(1, 5)) for _ in range(20)]
    for g in cases:
        f, ax = B.nbp_to_endt(g)
        assert ax.check() is None
        vars = sorted(set(g.variables()))
        assert truth_table(f, ax, vars=vars).bits == bp_table(g, vars).bits
        if B.is_positive_nbp(g):
            assert all(T.is_positive(body) for _, body in ax)


def test_nbp_to_endt_exact_example():
    f, ax = B.nbp_to_endt(B.build_exact_obdd(4, 2))
    assert len(ax) == 10  # one extension variable per internal node
    assert all(body.kind == T.DEC for _, body in ax)


def test_positive_encoding_matches_thr_bodies():
    g = B.positive_closure(B.build_exact_obdd(3, 1))
    f, ax = B.nbp_to_endt(g)
    ax2 = T.ExtAxiomSet()
    thr = ax2.thr((0, 1, 2), 1)
    assert truth_table(f, ax, vars=(0, 1, 2)).bits == \
        truth_table(thr, ax2, vars=(0, 1, 2)).bits
    # same decision skeleton node for node, up to extension-variable names
    assert all(body.kind == T.PDEC or body in (T.Zero, T.One)
               for _, body in ax)


def test_sink1_program_encodes_to_constant():
    g = B.Nbp({0: B.SINK1}, 0, frozenset(), frozenset())
    f, ax = B.nbp_to_endt(g)
    assert f is T.One and len(ax) == 0


def test_text_roundtrip_and_dot():
    g = B.positive_closure(B.build_exact_obdd(3, 2))
    g2 = B.parse_nbp(B.nbp_text(g))
    assert (g2.root, g2.labels, g2.e0, g2.e1) == (g.root, g.labels, g.e0, g.e1)
    dot = B.nbp_dot(g)
    assert "style=dotted" in dot and "digraph" in dot


def test_validate_rejects_cycles_and_bad_roots():
    with pytest.raises(B.BpError):
        B.Nbp({0: 0, 1: 1, 2: B.SINK1, 3: B.SINK0}, 0,
              frozenset({(0, 1), (1, 0)}), frozenset({(0, 2), (1, 2)})).validate()
    with pytest.raises(B.BpError):
        B.Nbp({0: 0, 1: B.SINK1}, 0, frozenset({(1, 0)}), frozenset()).validate()
