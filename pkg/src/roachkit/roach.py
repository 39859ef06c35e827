"""Built-in frames, roach and willow-tree recognizers with certificates, and
the constructive minimal-forbidden-configuration extractor.

An n-roach is a finite rooted frame (every world below some maximal point)
with a splitting point s of depth at most n whose upset is partially ordered
and meets every upset in a principal one.  2-roaches admit the recursive
characterization used by ``is_2_roach``: some s has exactly the maxima above
it and every world outside its downset sees a unique maximal point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .frames import (
    Frame,
    classify_frame,
    cluster_masks,
    depth_vector,
    downset_mask,
    generated_subframe,
    mask_of,
    normalize_frame,
    subframe,
    worlds_of,
)
from .morphisms import (
    Permissibility,
    PMorphism,
    check_p_morphism,
    collapse,
    find_onto_p_morphism,
    is_permissible,
    skeleton_morphism,
)

FORBIDDEN_NAMES = ("F1", "F2", "F3")


def builtin(name: str, n: int | None = None) -> Frame:
    """Construct a named frame.

    F1: r < v < m1, r < m2 (the tall two-fork, same shape as T(2)).
    F2: a two-cluster root {r1, r2} below maxima m1, m2 (also called G).
    F3: r < v1, v2 where each vi sees both maxima m1, m2 (the crisscross).
    T(n): root below a chain w1 < ... < wn and below a lone maximal v.
    two_fork: root below two incomparable maxima.
    chain(k): a k-element chain.  point: one reflexive world.
    """
    if name == "F1":
        return normalize_frame([(0, 1), (1, 2), (0, 3)], 4, labels=("r", "v", "m1", "m2"))
    if name in ("F2", "G"):
        return normalize_frame(
            [(0, 1), (1, 0), (0, 2), (1, 3)], 4, labels=("r1", "r2", "m1", "m2")
        )
    if name == "F3":
        return normalize_frame(
            [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4)],
            5,
            labels=("r", "v1", "v2", "m1", "m2"),
        )
    if name == "T":
        if n is None or n < 1:
            raise PreconditionError("T needs a chain length n >= 1")
        pairs = [(0, 1)] + [(i, i + 1) for i in range(1, n)] + [(0, n + 1)]
        labels = ("r",) + tuple(f"w{i}" for i in range(1, n + 1)) + ("v",)
        return normalize_frame(pairs, n + 2, labels=labels)
    if name == "two_fork":
        return normalize_frame([(0, 1), (0, 2)], 3, labels=("r", "m1", "m2"))
    if name == "chain":
        if n is None or n < 1:
            raise PreconditionError("chain needs a length k >= 1")
        return normalize_frame([(i, i + 1) for i in range(n - 1)], n)
    if name == "point":
        return normalize_frame([], 1)
    raise PreconditionError(f"unknown builtin frame {name!r}")


@dataclass(frozen=True)
class SplittingCertificate:
    """Evidence that a frame is an n-roach: the splitting point ``s``, the
    depth bound, and for each world the point generating its upset's meet
    with the upset of ``s``."""

    s: int
    bound: int
    t: tuple[int, ...]


@dataclass(frozen=True)
class ForbiddenWitness:
    which: str
    generator: int
    embedding: tuple[int, ...]
    morphism: PMorphism


def _require_frame(frame: Frame) -> None:
    flags = classify_frame(frame)
    if not flags.rooted:
        raise PreconditionError("operation needs a rooted frame")
    if not flags.s41:
        raise PreconditionError("operation needs every world below a maximal point")


def _splitting_t_map(frame: Frame, s: int) -> tuple[int, ...] | None:
    """The t-map witnessing s as a splitting point, or None."""
    cmasks = cluster_masks(frame)
    up_s = frame.up[s]
    for w in worlds_of(up_s):
        if cmasks[w] & up_s != 1 << w:
            return None  # upset of s is not partially ordered
    t = []
    for w in frame.worlds():
        meet = frame.up[w] & up_s
        found = None
        rest = meet
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if frame.up[v] == meet:
                found = v
                break
        if found is None:
            return None
        t.append(found)
    return tuple(t)


def splitting_points(frame: Frame, bound: int):
    """All worlds usable as splitting points within the depth bound,
    ascending, each with its t-map."""
    depths = depth_vector(frame)
    for s in frame.worlds():
        if depths[s] > bound:
            continue
        t = _splitting_t_map(frame, s)
        if t is not None:
            yield s, t


def splitting_certificate(frame: Frame, bound: int) -> SplittingCertificate | None:
    """Certificate that the frame is a ``bound``-roach, scanning candidate
    splitting points in index order; None when no point qualifies."""
    if bound < 1:
        raise PreconditionError("roach depth bound must be at least 1")
    _require_frame(frame)
    for s, t in splitting_points(frame, bound):
        return SplittingCertificate(s, bound, t)
    return None


def verify_splitting(frame: Frame, cert: SplittingCertificate) -> bool:
    depths = depth_vector(frame)
    if depths[cert.s] > cert.bound:
        return False
    if _splitting_t_map(frame, cert.s) is None:
        return False
    up_s = frame.up[cert.s]
    for w in frame.worlds():
        t = cert.t[w]
        if not (up_s >> t) & 1 or frame.up[w] & up_s != frame.up[t]:
            return False
    return True


def is_2_roach(frame: Frame) -> SplittingCertificate | None:
    """Decide 2-roachness by the recursive characterization: some s has
    upset {s} + maxima and every world outside its downset sees exactly one
    maximal point."""
    _require_frame(frame)
    flags = classify_frame(frame)
    max_mask = mask_of(flags.max_points)
    down_of = downset_mask
    for s in frame.worlds():
        if frame.up[s] != (1 << s) | max_mask:
            continue
        below_s = down_of(frame, 1 << s)
        ok = True
        for w in frame.worlds():
            if (below_s >> w) & 1:
                continue
            if (frame.up[w] & max_mask).bit_count() != 1:
                ok = False
                break
        if not ok:
            continue
        t = []
        for w in frame.worlds():
            if (below_s >> w) & 1:
                t.append(s)
            else:
                t.append((frame.up[w] & max_mask).bit_length() - 1)
        return SplittingCertificate(s, 2, tuple(t))
    return None


def unique_splitting_point(frame: Frame) -> int:
    """The unique depth-2 splitting point of a 2-roach that is not already
    an S4.1.2 frame."""
    cert = is_2_roach(frame)
    if cert is None:
        raise PreconditionError("frame is not a 2-roach")
    if classify_frame(frame).s412:
        raise PreconditionError("frame has a single maximal point; splitting points are not unique")
    return cert.s


@dataclass(frozen=True)
class WillowEvidence:
    certificate: SplittingCertificate
    body: tuple[int, ...]


def is_willow_tree(frame: Frame) -> WillowEvidence | None:
    """A 2-roach is a willow tree when, for some splitting point, the
    subframe outside its upset is a quasi-tree (or empty)."""
    _require_frame(frame)
    if is_2_roach(frame) is None:
        return None
    for s, t in splitting_points(frame, 2):
        body_mask = ((1 << frame.size) - 1) & ~frame.up[s]
        if body_mask == 0:
            return WillowEvidence(SplittingCertificate(s, 2, t), ())
        body, _ = subframe(frame, worlds_of(body_mask))
        if classify_frame(body).quasi_tree:
            return WillowEvidence(SplittingCertificate(s, 2, t), worlds_of(body_mask))
    return None


# ---------------------------------------------------------------------------
# constructive extraction of a minimal forbidden configuration


def _pullback_witness(frame: Frame, chain: list[PMorphism], final_world_map, which: str,
                      generator_pre: int) -> ForbiddenWitness:
    """Compose collapse morphisms with a final partial map and restrict to
    the generated subframe at the least preimage of ``generator_pre``."""
    def total(w: int) -> int:
        for pm in chain:
            w = pm.mapping[w]
        return w

    candidates = [w for w in frame.worlds() if total(w) == generator_pre]
    g = min(candidates)
    sub, embedding = generated_subframe(frame, g)
    target = builtin(which)
    mapping = tuple(final_world_map[total(embedding[i])] for i in range(sub.size))
    pm = PMorphism(sub, target, mapping)
    violation = check_p_morphism(pm, require_onto=True)
    if violation is not None:  # construction bug, not an input error
        raise AssertionError(f"extracted witness failed verification: {violation}")
    return ForbiddenWitness(which, g, embedding, pm)


def _crisscross_same_cluster(frame: Frame, a: int) -> ForbiddenWitness:
    """a and a cluster-mate both have depth 2 and see two or more maxima;
    the upset of a maps onto F2 directly."""
    cmask = cluster_masks(frame)[a]
    max_mask = mask_of(classify_frame(frame).max_points)
    m_a = frame.up[a] & max_mask
    m = (m_a & -m_a).bit_length() - 1
    sub, embedding = generated_subframe(frame, a)
    target = builtin("F2")
    mapping = []
    for i, old in enumerate(embedding):
        if old == a:
            mapping.append(0)
        elif (cmask >> old) & 1:
            mapping.append(1)
        elif old == m:
            mapping.append(2)
        else:
            mapping.append(3)
    pm = PMorphism(sub, target, tuple(mapping))
    violation = check_p_morphism(pm, require_onto=True)
    if violation is not None:
        raise AssertionError(f"extracted witness failed verification: {violation}")
    return ForbiddenWitness("F2", a, embedding, pm)


def _quasi_maximal_in(frame: Frame, region_mask: int) -> int:
    """Least world of the region whose strict successors leave the region."""
    cmasks = cluster_masks(frame)
    for q in worlds_of(region_mask):
        if frame.up[q] & region_mask & ~cmasks[q] == 0:
            return q
    raise AssertionError("nonempty region of a finite frame has a quasi-maximal point")


def _two_maxima_collapse(frame: Frame, group1: int, group2: int) -> tuple[Frame, PMorphism]:
    """Collapse a two-block partition of the maxima, leaving all else alone."""
    blocks = [worlds_of(group1), worlds_of(group2)]
    return collapse(frame, [b for b in blocks if len(b) > 0])


def _crisscross_distinct_clusters(frame: Frame, a: int, b: int) -> ForbiddenWitness:
    max_mask = mask_of(classify_frame(frame).max_points)
    m_a = frame.up[a] & max_mask
    m_b = frame.up[b] & max_mask
    common = m_a & m_b
    if common == 0:
        n1 = (m_a & -m_a).bit_length() - 1
        nn1 = (m_b & -m_b).bit_length() - 1
        group1 = (1 << n1) | (1 << nn1)
    elif common.bit_count() == 1:
        group1 = common
    else:
        group1 = common & -common
    group2 = max_mask & ~group1
    chain = []
    current = frame
    ca, cb = a, b

    step1, pm1 = _two_maxima_collapse(current, group1, group2)
    chain.append(pm1)
    ca, cb = pm1.mapping[ca], pm1.mapping[cb]
    current = step1

    maxima = mask_of(classify_frame(current).max_points)
    mu1 = maxima & -maxima
    mu2 = maxima & ~mu1
    full = (1 << current.size) - 1
    blocks = [worlds_of(full & ~downset_mask(current, mu1)),
              worlds_of(full & ~downset_mask(current, mu2))]
    step2, pm2 = collapse(current, blocks)
    chain.append(pm2)
    ca, cb = pm2.mapping[ca], pm2.mapping[cb]
    current = step2

    pm3 = skeleton_morphism(current)
    violation = check_p_morphism(pm3, require_onto=True)
    if violation is not None:
        raise AssertionError(f"skeleton map failed verification: {violation}")
    chain.append(pm3)
    ca, cb = pm3.mapping[ca], pm3.mapping[cb]
    current = pm3.target

    depths = depth_vector(current)
    others = [w for w in current.worlds() if depths[w] == 2 and w != ca]
    if len(others) > 1:
        step4, pm4 = collapse(current, [others])
        chain.append(pm4)
        ca, cb = pm4.mapping[ca], pm4.mapping[cb]
        current = step4

    region = downset_mask(current, 1 << ca) & downset_mask(current, 1 << cb)
    q = _quasi_maximal_in(current, region)
    cq = cluster_masks(current)[q]
    maxima = mask_of(classify_frame(current).max_points)
    n1 = maxima & -maxima
    final = {}
    for x in current.worlds():
        if (n1 >> x) & 1:
            final[x] = 3  # m1
        elif (maxima >> x) & 1:
            final[x] = 4  # m2
        elif (cq >> x) & 1:
            final[x] = 0  # r
        elif (downset_mask(current, 1 << ca) >> x) & 1 and (current.up[q] >> x) & 1:
            final[x] = 1  # v1
        else:
            final[x] = 2  # v2
    return _pullback_witness(frame, chain, final, "F3", q)


def _tall_two_fork_map(frame: Frame, q: int) -> dict[int, int]:
    """The four-case map onto F1 from a rooted frame whose root cluster is
    the only place seeing several maxima and whose depth is at least 3."""
    cq = cluster_masks(frame)[q]
    maxima = mask_of(classify_frame(frame).max_points)
    others = ((1 << frame.size) - 1) & ~(cq | maxima)
    y = (others & -others).bit_length() - 1
    n1_mask = frame.up[y] & maxima
    n1 = (n1_mask & -n1_mask).bit_length() - 1
    below_n1 = downset_mask(frame, 1 << n1)
    final = {}
    for x in frame.worlds():
        if x == n1:
            final[x] = 2  # m1
        elif (below_n1 >> x) & 1 and not (cq >> x) & 1:
            final[x] = 1  # v
        elif (cq >> x) & 1:
            final[x] = 0  # r
        else:
            final[x] = 3  # m2
    return final


def _tall_two_fork_direct(frame: Frame, w: int) -> ForbiddenWitness:
    sub, embedding = generated_subframe(frame, w)
    final = _tall_two_fork_map(sub, embedding.index(w))
    target = builtin("F1")
    pm = PMorphism(sub, target, tuple(final[i] for i in range(sub.size)))
    violation = check_p_morphism(pm, require_onto=True)
    if violation is not None:
        raise AssertionError(f"extracted witness failed verification: {violation}")
    return ForbiddenWitness("F1", w, embedding, pm)


def minimal_forbidden_witness(frame: Frame) -> ForbiddenWitness:
    """For a rooted S4.1 frame that is not a 2-roach, produce a verified
    onto p-morphism from a point-generated subframe onto one of F1, F2, F3.

    Mirrors the constructive case split: two depth-2 points seeing several
    maxima dispatch to the crisscross collapses (F2 for a shared cluster, F3
    otherwise); at most one such point dispatches to the tall-two-fork map
    (F1), collapsing the maxima to two groups first when necessary.
    """
    _require_frame(frame)
    if is_2_roach(frame) is not None:
        raise PreconditionError("frame is a 2-roach; no forbidden configuration exists")
    flags = classify_frame(frame)
    max_mask = mask_of(flags.max_points)
    depths = depth_vector(frame)
    fat = [w for w in frame.worlds()
           if depths[w] == 2 and (frame.up[w] & max_mask).bit_count() >= 2]

    if len(fat) >= 2:
        a = fat[0]
        cmask_a = cluster_masks(frame)[a]
        same = [w for w in fat[1:] if (cmask_a >> w) & 1]
        if same:
            return _crisscross_same_cluster(frame, a)
        return _crisscross_distinct_clusters(frame, a, fat[1])

    if len(fat) == 1 and frame.up[fat[0]] & max_mask == max_mask:
        s = fat[0]
        below_s = downset_mask(frame, 1 << s)
        bad = [w for w in frame.worlds()
               if not (below_s >> w) & 1 and (frame.up[w] & max_mask).bit_count() >= 2]
        bad_mask = mask_of(bad)
        w = _quasi_maximal_in(frame, bad_mask)
        return _tall_two_fork_direct(frame, w)

    # remaining frames: collapse the maxima into two groups, find a deep
    # quasi-maximal point below both, and map its upset onto F1
    if len(fat) == 1:
        group1 = frame.up[fat[0]] & max_mask
    else:
        group1 = max_mask & -max_mask
    group2 = max_mask & ~group1
    collapsed, pm1 = _two_maxima_collapse(frame, group1, group2)
    maxima = mask_of(classify_frame(collapsed).max_points)
    mu1 = maxima & -maxima
    mu2 = maxima & ~mu1
    region = downset_mask(collapsed, mu1) & downset_mask(collapsed, mu2)
    q = _quasi_maximal_in(collapsed, region)
    sub_q, emb_q = generated_subframe(collapsed, q)
    final_sub = _tall_two_fork_map(sub_q, emb_q.index(q))
    final = {emb_q[i]: final_sub[i] for i in range(sub_q.size)}
    return _pullback_witness(frame, [pm1], final, "F1", q)


def permissible_forbidden(frame: Frame, which: str, ceiling: int = 10) -> Permissibility | None:
    """Search-based permissibility of a named forbidden configuration."""
    if which not in FORBIDDEN_NAMES:
        raise PreconditionError(f"which must be one of {FORBIDDEN_NAMES}")
    return is_permissible(builtin(which), frame, ceiling=ceiling)
