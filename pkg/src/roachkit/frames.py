"""Finite quasi-ordered frames: construction, order queries, and enumeration.

Worlds are dense integer indices ``0..size-1``; display labels are cosmetic.
The accessibility relation is stored as one upset bitmask per world, which
keeps order queries, canonicalization, and exhaustive enumeration cheap at
the sizes this library targets (single-digit world counts).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

from .errors import CeilingExceededError, FrameFormatError

ENUMERATION_CEILING = 6

FILTER_NAMES = ("all", "rooted", "s41-rooted", "2-roach", "willow")


@dataclass(frozen=True)
class Frame:
    """A finite reflexive-transitive frame.

    ``up[w]`` is the bitmask of worlds reachable from ``w``, including ``w``
    itself.  Instances are validated on construction, so every ``Frame`` in
    circulation is a genuine preorder.
    """

    size: int
    up: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1:
            raise FrameFormatError("a frame needs at least one world")
        if len(self.up) != self.size:
            raise FrameFormatError("up-mask count does not match size")
        full = (1 << self.size) - 1
        for w, mask in enumerate(self.up):
            if mask & ~full:
                raise FrameFormatError(f"world {w} reaches out-of-range worlds")
            if not (mask >> w) & 1:
                raise FrameFormatError(f"relation is not reflexive at world {w}")
        for w, mask in enumerate(self.up):
            closure = mask
            rest = mask
            while rest:
                v = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                closure |= self.up[v]
            if closure != mask:
                raise FrameFormatError(f"relation is not transitive at world {w}")
        if self.labels is not None and len(self.labels) != self.size:
            raise FrameFormatError("label count does not match size")

    def le(self, u: int, w: int) -> bool:
        return bool((self.up[u] >> w) & 1)

    def worlds(self) -> range:
        return range(self.size)

    def label(self, w: int) -> str:
        return self.labels[w] if self.labels else str(w)

    def pairs(self) -> list[tuple[int, int]]:
        """All related pairs (u, w) with u <= w."""
        return [(u, w) for u in self.worlds() for w in self.worlds() if self.le(u, w)]

    def __repr__(self):
        edges = [(u, w) for u, w in self.pairs() if u != w]
        return f"Frame(size={self.size}, edges={edges})"


def _closure(size: int, up: list[int]) -> tuple[int, ...]:
    changed = True
    while changed:
        changed = False
        for w in range(size):
            mask = up[w]
            acc = mask
            rest = mask
            while rest:
                v = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                acc |= up[v]
            if acc != mask:
                up[w] = acc
                changed = True
    return tuple(up)


def normalize_frame(pairs, size, labels=None, strict=False) -> Frame:
    """Build a frame from generator edges, closing under reflexivity and
    transitivity.  With ``strict=True`` the input must already be closed.
    """
    up = [1 << w for w in range(size)]
    for u, w in pairs:
        if not (0 <= u < size and 0 <= w < size):
            raise FrameFormatError(f"edge ({u}, {w}) out of range for size {size}")
        up[u] |= 1 << w
    closed = _closure(size, list(up))
    if strict:
        given = [1 << w for w in range(size)]
        for u, w in pairs:
            given[u] |= 1 << w
        if tuple(given) != closed:
            raise FrameFormatError("relation is not reflexive-transitive closed (strict mode)")
    return Frame(size, closed, tuple(labels) if labels else None)


@lru_cache(maxsize=None)
def down_masks(frame: Frame) -> tuple[int, ...]:
    down = [0] * frame.size
    for u in frame.worlds():
        mask = frame.up[u]
        while mask:
            w = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            down[w] |= 1 << u
    return tuple(down)


def mask_of(worlds) -> int:
    m = 0
    for w in worlds:
        m |= 1 << w
    return m


def worlds_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        w = (mask & -mask).bit_length() - 1
        mask &= mask - 1
        out.append(w)
    return tuple(out)


def upset_mask(frame: Frame, seed_mask: int) -> int:
    acc = 0
    mask = seed_mask
    while mask:
        w = (mask & -mask).bit_length() - 1
        mask &= mask - 1
        acc |= frame.up[w]
    return acc


def downset_mask(frame: Frame, seed_mask: int) -> int:
    down = down_masks(frame)
    acc = 0
    mask = seed_mask
    while mask:
        w = (mask & -mask).bit_length() - 1
        mask &= mask - 1
        acc |= down[w]
    return acc


def order_query(frame: Frame, seed, direction: str) -> set[int]:
    """Upward or downward closure of a set of worlds."""
    seed = set(seed)
    for w in seed:
        if not 0 <= w < frame.size:
            raise FrameFormatError(f"world {w} out of range")
    if direction == "up":
        return set(worlds_of(upset_mask(frame, mask_of(seed))))
    if direction == "down":
        return set(worlds_of(downset_mask(frame, mask_of(seed))))
    raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")


@lru_cache(maxsize=None)
def cluster_masks(frame: Frame) -> tuple[int, ...]:
    """Per-world bitmask of its cluster (mutual-reachability class)."""
    down = down_masks(frame)
    return tuple(frame.up[w] & down[w] for w in frame.worlds())


def clusters_and_skeleton(frame: Frame):
    """Partition into clusters plus the induced partial order on them.

    Returns ``(partition, skeleton, pi)`` where ``partition`` lists clusters
    as sorted world tuples (ordered by least member), ``skeleton`` is the
    quotient frame, and ``pi[w]`` is the cluster index of world ``w``.
    """
    cmasks = cluster_masks(frame)
    seen = {}
    partition = []
    pi = [0] * frame.size
    for w in frame.worlds():
        m = cmasks[w]
        if m not in seen:
            seen[m] = len(partition)
            partition.append(worlds_of(m))
        pi[w] = seen[m]
    k = len(partition)
    up = [0] * k
    for i, members in enumerate(partition):
        rep = members[0]
        for j, others in enumerate(partition):
            if frame.le(rep, others[0]):
                up[i] |= 1 << j
    skeleton = Frame(k, tuple(up))
    return partition, skeleton, tuple(pi)


@lru_cache(maxsize=None)
def depth_vector(frame: Frame) -> tuple[int, ...]:
    """Depth of each world: longest strictly ascending chain of clusters."""
    partition, skeleton, pi = clusters_and_skeleton(frame)
    k = skeleton.size
    memo = [0] * k
    order = sorted(range(k), key=lambda c: skeleton.up[c].bit_count())
    for c in order:
        best = 0
        succ = skeleton.up[c] & ~(1 << c)
        while succ:
            d = (succ & -succ).bit_length() - 1
            succ &= succ - 1
            best = max(best, memo[d])
        memo[c] = best + 1
    return tuple(memo[pi[w]] for w in frame.worlds())


def depth(frame: Frame, w: int) -> int:
    if not 0 <= w < frame.size:
        raise FrameFormatError(f"world {w} out of range")
    return depth_vector(frame)[w]


def frame_depth(frame: Frame) -> int:
    """Depth of the frame: the depth at a root (max depth if non-rooted)."""
    return max(depth_vector(frame))


@dataclass(frozen=True)
class FrameFlags:
    rooted: bool
    roots: tuple[int, ...]
    partial_order: bool
    quasi_tree: bool
    tree: bool
    s41: bool
    s412: bool
    max_points: tuple[int, ...]
    min_points: tuple[int, ...]


@lru_cache(maxsize=None)
def classify_frame(frame: Frame) -> FrameFlags:
    full = (1 << frame.size) - 1
    down = down_masks(frame)
    roots = tuple(w for w in frame.worlds() if frame.up[w] == full)
    max_points = tuple(w for w in frame.worlds() if frame.up[w] == 1 << w)
    min_points = tuple(w for w in frame.worlds() if down[w] == 1 << w)
    max_mask = mask_of(max_points)
    partial_order = all(cluster_masks(frame)[w] == 1 << w for w in frame.worlds())
    s41 = all(frame.up[w] & max_mask for w in frame.worlds())
    s412 = s41 and len(max_points) == 1
    quasi_tree = bool(roots)
    if quasi_tree:
        for w in frame.worlds():
            below = worlds_of(down[w])
            for u, v in itertools.combinations(below, 2):
                if not (frame.le(u, v) or frame.le(v, u)):
                    quasi_tree = False
                    break
            if not quasi_tree:
                break
    return FrameFlags(
        rooted=bool(roots),
        roots=roots,
        partial_order=partial_order,
        quasi_tree=quasi_tree,
        tree=quasi_tree and partial_order,
        s41=s41,
        s412=s412,
        max_points=max_points,
        min_points=min_points,
    )


def subframe(frame: Frame, worlds) -> tuple[Frame, tuple[int, ...]]:
    """Restriction of the order to an arbitrary world set.

    Returns the restricted frame plus the embedding new-index -> old-index.
    """
    embedding = tuple(sorted(set(worlds)))
    if not embedding:
        raise FrameFormatError("cannot take an empty subframe")
    pos = {old: new for new, old in enumerate(embedding)}
    up = []
    for old in embedding:
        mask = 0
        rest = frame.up[old]
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if v in pos:
                mask |= 1 << pos[v]
        up.append(mask)
    labels = tuple(frame.label(old) for old in embedding) if frame.labels else None
    return Frame(len(embedding), tuple(up), labels), embedding


def generated_subframe(frame: Frame, w: int) -> tuple[Frame, tuple[int, ...]]:
    """Point-generated subframe on the upset of ``w``."""
    if not 0 <= w < frame.size:
        raise FrameFormatError(f"world {w} out of range")
    return subframe(frame, worlds_of(frame.up[w]))


def _invariant_keys(frame: Frame) -> list:
    down = down_masks(frame)
    cmasks = cluster_masks(frame)
    depths = depth_vector(frame)
    keys = [
        (depths[w], frame.up[w].bit_count(), down[w].bit_count(), cmasks[w].bit_count())
        for w in frame.worlds()
    ]
    # refine by neighbour key multisets
    for _ in range(2):
        new = []
        for w in frame.worlds():
            above = tuple(sorted(keys[v] for v in worlds_of(frame.up[w])))
            below = tuple(sorted(keys[v] for v in worlds_of(down[w])))
            new.append((keys[w], above, below))
        keys = new
    return keys


def _encode(frame: Frame, perm) -> tuple:
    # perm[old] = new position
    n = frame.size
    rel = 0
    for u in frame.worlds():
        mask = frame.up[u]
        while mask:
            w = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            rel |= 1 << (perm[u] * n + perm[w])
    return rel


@lru_cache(maxsize=None)
def canonical_key(frame: Frame):
    """Isomorphism-invariant key: minimal relation encoding over all
    invariant-respecting relabelings."""
    keys = _invariant_keys(frame)
    groups = {}
    for w in frame.worlds():
        groups.setdefault(keys[w], []).append(w)
    ordered_groups = [groups[k] for k in sorted(groups)]
    offsets = []
    off = 0
    for g in ordered_groups:
        offsets.append(off)
        off += len(g)
    best = None
    for placements in itertools.product(*(itertools.permutations(g) for g in ordered_groups)):
        perm = [0] * frame.size
        for gi, placed in enumerate(placements):
            for slot, old in enumerate(placed):
                perm[old] = offsets[gi] + slot
        enc = _encode(frame, perm)
        if best is None or enc < best:
            best = enc
    return (frame.size, best)


def are_isomorphic(f: Frame, g: Frame) -> bool:
    if f.size != g.size:
        return False
    return canonical_key(f) == canonical_key(g)


def _extend_poset(frame: Frame, downset_mask_: int) -> Frame:
    """Add a fresh maximal element sitting above exactly one downset."""
    n = frame.size
    up = [frame.up[w] | ((1 << n) if (downset_mask_ >> w) & 1 else 0) for w in range(n)]
    up.append(1 << n)
    return Frame(n + 1, tuple(up))


def _downsets(frame: Frame) -> list[int]:
    return [mask for mask in range(1 << frame.size) if downset_mask(frame, mask) == mask]


@lru_cache(maxsize=None)
def _posets(k: int) -> tuple[Frame, ...]:
    """All partial orders on k elements, one per isomorphism class."""
    if k == 1:
        return (Frame(1, (1,)),)
    reps = {}
    for smaller in _posets(k - 1):
        for dmask in _downsets(smaller):
            candidate = _extend_poset(smaller, dmask)
            reps.setdefault(canonical_key(candidate), candidate)
    return tuple(reps[key] for key in sorted(reps))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _expand(poset: Frame, sizes: tuple[int, ...]) -> Frame:
    """Blow each poset element up into a cluster of the given size."""
    starts = []
    total = 0
    for s in sizes:
        starts.append(total)
        total += s
    up = []
    for i in range(poset.size):
        mask = 0
        for j in range(poset.size):
            if poset.le(i, j):
                mask |= ((1 << sizes[j]) - 1) << starts[j]
        up.extend([mask] * sizes[i])
    return Frame(total, tuple(up))


@lru_cache(maxsize=None)
def _preorder_classes(n: int) -> tuple[Frame, ...]:
    reps = {}
    for k in range(1, n + 1):
        for poset in _posets(k):
            for sizes in _compositions(n, k):
                frame = _expand(poset, sizes)
                reps.setdefault(canonical_key(frame), frame)
    return tuple(reps[key] for key in sorted(reps))


def _filter_predicate(name: str):
    if name == "all":
        return lambda f: True
    if name == "rooted":
        return lambda f: classify_frame(f).rooted
    if name == "s41-rooted":
        return lambda f: classify_frame(f).rooted and classify_frame(f).s41
    if name == "2-roach":
        from . import roach

        def is_roach(f):
            flags = classify_frame(f)
            return flags.rooted and flags.s41 and roach.is_2_roach(f) is not None

        return is_roach
    if name == "willow":
        from . import roach

        def is_willow(f):
            flags = classify_frame(f)
            return flags.rooted and flags.s41 and roach.is_willow_tree(f) is not None

        return is_willow
    raise ValueError(f"unknown filter {name!r}; expected one of {FILTER_NAMES}")


@lru_cache(maxsize=None)
def _enumerate_cached(n: int, filter_name: str) -> tuple[Frame, ...]:
    pred = _filter_predicate(filter_name)
    return tuple(f for f in _preorder_classes(n) if pred(f))


def enumerate_frames(n: int, filter_name: str = "all", ceiling: int = ENUMERATION_CEILING):
    """Yield one representative per isomorphism class of preorders on ``n``
    worlds satisfying the named filter, in canonical order."""
    if n < 1:
        raise CeilingExceededError("frame size must be at least 1")
    if n > ceiling:
        raise CeilingExceededError(f"size {n} exceeds the enumeration ceiling {ceiling}")
    yield from _enumerate_cached(n, filter_name)


def frame_to_json(frame: Frame) -> str:
    data = {"size": frame.size, "le": [[u, w] for u, w in frame.pairs()]}
    if frame.labels:
        data["labels"] = list(frame.labels)
    return json.dumps(data)


def frame_from_json(text: str) -> Frame:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FrameFormatError(f"invalid frame JSON: {exc}") from None
    if not isinstance(data, dict) or "size" not in data or "le" not in data:
        raise FrameFormatError('frame JSON needs "size" and "le" fields')
    size = data["size"]
    if not isinstance(size, int) or isinstance(size, bool):
        raise FrameFormatError('"size" must be an integer')
    pairs = []
    for entry in data["le"]:
        if (not isinstance(entry, (list, tuple)) or len(entry) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in entry)):
            raise FrameFormatError(f'"le" entries must be [u, w] pairs, got {entry!r}')
        pairs.append(tuple(entry))
    labels = data.get("labels")
    return normalize_frame(pairs, size, labels=labels, strict=bool(data.get("strict")))
