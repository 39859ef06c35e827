"""Shared naive oracles: these deliberately reimplement the expensive way
(full relation scans, all-maps enumeration, per-valuation loops) so the
library's answers are checked against independent code paths."""

import itertools

import pytest

from roachkit import formulas as fm
from roachkit import semantics as S
from roachkit.frames import Frame, worlds_of


def naive_preorder_classes(n):
    """Every preorder on n labeled worlds, one representative per class,
    found by scanning all off-diagonal bitmasks and deduping by explicit
    permutation action."""
    seen = set()
    reps = []
    offdiag = [(u, w) for u in range(n) for w in range(n) if u != w]
    for bits in range(1 << len(offdiag)):
        up = [1 << w for w in range(n)]
        for i, (u, w) in enumerate(offdiag):
            if (bits >> i) & 1:
                up[u] |= 1 << w
        transitive = True
        for u in range(n):
            acc = up[u]
            rest = up[u]
            while rest:
                v = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                acc |= up[v]
            if acc != up[u]:
                transitive = False
                break
        if not transitive:
            continue
        key = None
        for perm in itertools.permutations(range(n)):
            enc = 0
            for u in range(n):
                rest = up[u]
                while rest:
                    w = (rest & -rest).bit_length() - 1
                    rest &= rest - 1
                    enc |= 1 << (perm[u] * n + perm[w])
            if key is None or enc < key:
                key = enc
        if key not in seen:
            seen.add(key)
            reps.append(Frame(n, tuple(up)))
    return reps


def naive_onto_p_morphisms(source, target):
    """All onto p-morphisms, by filtering every possible map."""
    found = []
    for mapping in itertools.product(range(target.size), repeat=source.size):
        if set(mapping) != set(range(target.size)):
            continue
        ok = True
        for u in range(source.size):
            for w in range(source.size):
                if source.le(u, w) and not target.le(mapping[u], mapping[w]):
                    ok = False
        for w in range(source.size):
            for v in range(target.size):
                if target.le(mapping[w], v):
                    if not any(source.le(w, u) and mapping[u] == v for u in range(source.size)):
                        ok = False
        if ok:
            found.append(mapping)
    return found


def naive_frame_validates(frame, phi):
    """Validity by looping over every valuation one at a time."""
    names = fm.variables(phi)
    full = (1 << frame.size) - 1
    for assignment in itertools.product(range(1 << frame.size), repeat=len(names)):
        valuation = {name: set(worlds_of(mask)) for name, mask in zip(names, assignment)}
        if S.extension_mask(S.Model(frame, valuation), phi) != full:
            return False
    return True


@pytest.fixture(scope="session")
def small_frames():
    """All rooted frames with up to 4 worlds."""
    from roachkit import frames as F

    return [f for n in range(1, 5) for f in F.enumerate_frames(n, "rooted")]
