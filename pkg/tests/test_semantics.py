import random

import pytest

from conftest import naive_frame_validates
from roachkit import formulas as fm
from roachkit import frames as F
from roachkit import semantics as S
from roachkit import _scan_py
from roachkit._program import compile_formula
from roachkit.errors import BudgetExceededError, FrameFormatError
from roachkit.roach import builtin


def test_extension_diamond_is_downclosure_on_f1():
    f1 = builtin("F1")  # r < v < m1, r < m2
    model = S.Model(f1, {"p": {2}})
    assert S.extension(model, fm.parse("<>p")) == {0, 1, 2}
    assert S.extension(model, fm.parse("<>p")) == F.order_query(f1, {2}, "down")


def test_extension_top_is_everything():
    f = builtin("F2")
    assert S.extension(S.Model(f, {}), fm.TOP) == set(f.worlds())


def test_extension_box_on_two_chain():
    chain2 = builtin("chain", 2)
    model = S.Model(chain2, {"p": {1}})
    assert S.extension(model, fm.parse("[]p")) == {1}


def test_extension_missing_variables_read_empty():
    f = builtin("point")
    assert S.extension(S.Model(f, {}), fm.Var("q")) == set()
    assert S.extension(S.Model(f, {}), fm.parse("~q")) == {0}


def test_model_rejects_out_of_range_valuation():
    with pytest.raises(FrameFormatError):
        S.Model(builtin("point"), {"p": {3}})


def test_box_extension_is_upset_diamond_is_downset():
    rng = random.Random(5)
    frames = [f for n in range(2, 5) for f in F.enumerate_frames(n)]
    for _ in range(300):
        f = rng.choice(frames)
        valuation = {"p": set(rng.sample(range(f.size), rng.randint(0, f.size)))}
        model = S.Model(f, valuation)
        box = S.extension(model, fm.parse("[]p"))
        dia = S.extension(model, fm.parse("<>p"))
        assert F.order_query(f, box, "up") == box
        assert F.order_query(f, dia, "down") == dia
        assert dia == set(f.worlds()) - S.extension(model, fm.parse("[]~p"))


def test_monotone_fragment_is_monotone_in_valuation():
    rng = random.Random(6)
    frames = [f for n in range(2, 5) for f in F.enumerate_frames(n)]

    def monotone_formula(depth):
        if depth == 0 or rng.random() < 0.3:
            return fm.Var(rng.choice(["p", "q"]))
        kind = rng.randrange(3)
        if kind == 0:
            return fm.Diamond(monotone_formula(depth - 1))
        left, right = monotone_formula(depth - 1), monotone_formula(depth - 1)
        return (fm.And if kind == 1 else fm.Or)(left, right)

    for _ in range(300):
        f = rng.choice(frames)
        phi = monotone_formula(3)
        small = {name: set(rng.sample(range(f.size), rng.randint(0, f.size - 1)))
                 for name in ("p", "q")}
        big = {name: worlds | {rng.randrange(f.size)} for name, worlds in small.items()}
        assert S.extension(S.Model(f, small), phi) <= S.extension(S.Model(f, big), phi)


def test_s41_frames_validate_mckinsey():
    for n in range(1, 5):
        for f in F.enumerate_frames(n, "s41-rooted"):
            assert S.frame_validates(f, fm.axiom("ma"))


def test_every_frame_validates_t_and_4():
    # reflexivity and transitivity are baked into the Frame invariant, so
    # the corresponding axioms hold on everything the library can build
    for n in range(1, 6):
        for f in F.enumerate_frames(n):
            assert S.frame_validates(f, fm.axiom("s4_T"))
            assert S.frame_validates(f, fm.axiom("s4_4"))


def test_two_fork_refutes_geach():
    fork = builtin("two_fork")
    assert not S.frame_validates(fork, fm.axiom("ga"))
    valuation, world = S.find_refutation(fork, fm.axiom("ga"))
    assert world == 0
    assert len(valuation["p"]) == 1 and valuation["p"] < {1, 2}
    # the refutation really refutes
    assert world not in S.extension(S.Model(fork, valuation), fm.axiom("ga"))


def test_chain_in_t_n_validates_bd_n():
    for n in range(1, 4):
        tn = builtin("T", n)
        chain, _ = F.generated_subframe(tn, 1)  # the w1 < ... < wn chain
        assert F.frame_depth(chain) == n
        assert S.frame_validates(chain, fm.axiom("bd", n))
        if n > 1:
            assert not S.frame_validates(chain, fm.axiom("bd", n - 1))


def test_budget_exceeded():
    with pytest.raises(BudgetExceededError):
        S.find_refutation(builtin("F3"), fm.fine_jankov(builtin("F3")), budget=2 ** 10)


def test_variable_free_formulas():
    f = builtin("F3")
    assert S.frame_validates(f, fm.parse("T -> T"))
    assert not S.frame_validates(f, fm.parse("F"))
    valuation, world = S.find_refutation(f, fm.parse("<>F"))
    assert valuation == {} and world == 0


def test_validity_agrees_with_naive_oracle():
    frames = [f for n in range(1, 4) for f in F.enumerate_frames(n)]
    axioms = [fm.axiom("ma"), fm.axiom("ga"), fm.axiom("bd", 1), fm.axiom("bd", 2),
              fm.axiom("grz"), fm.axiom("s4_T"), fm.axiom("s4_4")]
    for f in frames:
        for phi in axioms:
            assert S.frame_validates(f, phi) == naive_frame_validates(f, phi)


def test_refutation_is_least_index():
    # the scanner reports the least refuting valuation index; decode and
    # compare against a manual scan on a small case
    fork = builtin("two_fork")
    phi = fm.axiom("ga")
    program = compile_formula(phi)
    idx = _scan_py.find_refuting_index(fork.up, fork.size, program)
    for j in range(idx):
        valuation = S._decode_valuation(j, program.variables, fork.size)
        assert S.extension_mask(S.Model(fork, valuation), phi) == (1 << fork.size) - 1
    valuation = S._decode_valuation(idx, program.variables, fork.size)
    assert S.extension_mask(S.Model(fork, valuation), phi) != (1 << fork.size) - 1


def test_backends_agree():
    compiled = pytest.importorskip("roachkit._scan")
    rng = random.Random(8)
    frames = [f for n in range(2, 6) for f in F.enumerate_frames(n, "rooted")]

    def random_formula(depth, names):
        if depth == 0 or rng.random() < 0.25:
            return fm.Var(rng.choice(names))
        kind = rng.randrange(6)
        if kind == 0:
            return fm.Not(random_formula(depth - 1, names))
        if kind == 1:
            return fm.Box(random_formula(depth - 1, names))
        if kind == 2:
            return fm.Diamond(random_formula(depth - 1, names))
        left = random_formula(depth - 1, names)
        right = random_formula(depth - 1, names)
        return [fm.And, fm.Or, fm.Implies][kind - 3](left, right)

    checked = 0
    attempts = 0
    while checked < 150 and attempts < 2000:
        attempts += 1
        f = rng.choice(frames)
        n_vars = rng.randint(2, 4)
        phi = random_formula(rng.randint(2, 4), [f"p{i}" for i in range(n_vars)])
        program = compile_formula(phi)
        if program.n_vars * f.size < 6:
            continue
        pure = _scan_py.find_refuting_index(f.up, f.size, program)
        fast = compiled.find_refuting_index(f.up, f.size, program)
        small_chunks = compiled.find_refuting_index(f.up, f.size, program, 8)
        assert pure == fast == small_chunks
        checked += 1
    assert checked == 150
