"""p-morphism verification and search, permissibility testing, and quotient
collapses of upsets and same-successor antichains."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CollapseError, PreconditionError
from .frames import (
    Frame,
    classify_frame,
    cluster_masks,
    generated_subframe,
    mask_of,
    upset_mask,
    worlds_of,
)


@dataclass(frozen=True)
class PMorphism:
    source: Frame
    target: Frame
    mapping: tuple[int, ...]

    def __call__(self, w: int) -> int:
        return self.mapping[w]


@dataclass(frozen=True)
class Violation:
    """A failed p-morphism condition, naming the offending worlds."""

    kind: str  # "total", "range", "forth", "back", "onto"
    witness: tuple

    def __str__(self):
        return f"{self.kind} condition fails at {self.witness}"


def check_p_morphism(pm: PMorphism, require_onto: bool = False) -> Violation | None:
    """None when the map is a p-morphism (and onto, when required);
    otherwise the first violation found."""
    src, tgt, mapping = pm.source, pm.target, pm.mapping
    if len(mapping) != src.size:
        return Violation("total", (len(mapping), src.size))
    for w, v in enumerate(mapping):
        if not 0 <= v < tgt.size:
            return Violation("range", (w, v))
    for u in src.worlds():
        for w in worlds_of(src.up[u]):
            if not tgt.le(mapping[u], mapping[w]):
                return Violation("forth", (u, w))
    for w in src.worlds():
        image_up = mask_of(mapping[u] for u in worlds_of(src.up[w]))
        if tgt.up[mapping[w]] & ~image_up:
            missing = tgt.up[mapping[w]] & ~image_up
            v = (missing & -missing).bit_length() - 1
            return Violation("back", (w, v))
    if require_onto:
        covered = mask_of(mapping)
        if covered != (1 << tgt.size) - 1:
            missing = ((1 << tgt.size) - 1) & ~covered
            return Violation("onto", ((missing & -missing).bit_length() - 1,))
    return None


def compose(first: PMorphism, second: PMorphism) -> PMorphism:
    if first.target.size != second.source.size:
        raise PreconditionError("composition needs matching frames")
    return PMorphism(first.source, second.target, tuple(second.mapping[v] for v in first.mapping))


def identity_morphism(frame: Frame) -> PMorphism:
    return PMorphism(frame, frame, tuple(frame.worlds()))


def find_onto_p_morphism(source: Frame, target: Frame, ceiling: int = 10) -> PMorphism | None:
    """Exhaustive backtracking search for an onto p-morphism.

    Source worlds are assigned in index order with target values tried
    ascending, so the first solution found is the lexicographically least
    map.  Returns None only after the whole space is pruned away.
    """
    if source.size > ceiling or target.size > ceiling:
        raise PreconditionError(f"frames above {ceiling} worlds are not searched")
    n, m = source.size, target.size
    if n < m:
        return None
    up_s, up_t = source.up, target.up
    # worlds are assigned in index order, so the upset of w is fully assigned
    # exactly after its highest member's step; back checks run there
    completed_at = [[] for _ in range(n)]
    for w in range(n):
        completed_at[up_s[w].bit_length() - 1].append(w)
    assignment = [-1] * n

    def back_ok(w: int) -> bool:
        image = 0
        rest = up_s[w]
        while rest:
            u = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            image |= 1 << assignment[u]
        return not (up_t[assignment[w]] & ~image)

    def assign(pos: int, used: int) -> bool:
        if pos == n:
            return used == (1 << m) - 1
        for v in range(m):
            ok = True
            for u in range(pos):
                au = assignment[u]
                if (up_s[u] >> pos) & 1 and not (up_t[au] >> v) & 1:
                    ok = False
                    break
                if (up_s[pos] >> u) & 1 and not (up_t[v] >> au) & 1:
                    ok = False
                    break
            if not ok:
                continue
            assignment[pos] = v
            new_used = used | (1 << v)
            if m - new_used.bit_count() <= n - pos - 1 and all(
                back_ok(w) for w in completed_at[pos]
            ):
                if assign(pos + 1, new_used):
                    return True
            assignment[pos] = -1
        return False

    if assign(0, 0):
        return PMorphism(source, target, tuple(assignment))
    return None


@dataclass(frozen=True)
class Permissibility:
    """Evidence that a configuration is permissible for a host frame: an
    onto p-morphism from the point-generated subframe at ``generator``."""

    generator: int
    embedding: tuple[int, ...]
    morphism: PMorphism


def is_permissible(config: Frame, host: Frame, ceiling: int = 10) -> Permissibility | None:
    """First (smallest-subframe, least-generator) witness that ``config`` is
    an onto p-morphic image of a point-generated subframe of ``host``."""
    if not classify_frame(config).rooted:
        raise PreconditionError("permissibility is defined for rooted configurations")
    order = sorted(host.worlds(), key=lambda g: (host.up[g].bit_count(), g))
    for g in order:
        if host.up[g].bit_count() < config.size:
            continue
        sub, embedding = generated_subframe(host, g)
        pm = find_onto_p_morphism(sub, config, ceiling=ceiling)
        if pm is not None:
            return Permissibility(g, embedding, pm)
    return None


def _block_modes(frame: Frame, block_mask: int) -> bool:
    """Whether a block is collapsible: an upset, or singleton-cluster worlds
    sharing one strict upset."""
    if upset_mask(frame, block_mask) == block_mask:
        return True
    worlds = worlds_of(block_mask)
    cmasks = cluster_masks(frame)
    strict = None
    for w in worlds:
        if cmasks[w] != 1 << w:
            return False
        s = frame.up[w] & ~(1 << w)
        if strict is None:
            strict = s
        elif s != strict:
            return False
    return True


def collapse(frame: Frame, blocks) -> tuple[Frame, PMorphism]:
    """Quotient identifying each block to a point; unlisted worlds stay
    singletons.  Blocks must be pairwise disjoint and each one an upset or a
    same-strict-upset set of singleton-cluster worlds."""
    blocks = [mask_of(b) for b in blocks]
    seen = 0
    for i, mask in enumerate(blocks):
        if mask == 0:
            raise CollapseError(f"block {i} is empty")
        if mask & seen:
            raise CollapseError(f"block {i} overlaps an earlier block")
        if mask & ~((1 << frame.size) - 1):
            raise CollapseError(f"block {i} mentions out-of-range worlds")
        seen |= mask
        if not _block_modes(frame, mask):
            raise CollapseError(
                f"block {i} ({sorted(worlds_of(mask))}) is neither an upset nor a "
                "same-successor antichain of singleton clusters"
            )
    all_blocks = list(blocks)
    for w in frame.worlds():
        if not (seen >> w) & 1:
            all_blocks.append(1 << w)
    all_blocks.sort(key=lambda m: (m & -m).bit_length())
    mapping = [0] * frame.size
    for idx, mask in enumerate(all_blocks):
        for w in worlds_of(mask):
            mapping[w] = idx
    k = len(all_blocks)
    up = [0] * k
    for u in frame.worlds():
        rest = frame.up[u]
        while rest:
            w = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            up[mapping[u]] |= 1 << mapping[w]
    try:
        quotient = Frame(k, tuple(up))
    except Exception as exc:
        raise CollapseError(f"blocks do not induce a preorder quotient: {exc}") from None
    pm = PMorphism(frame, quotient, tuple(mapping))
    violation = check_p_morphism(pm, require_onto=True)
    if violation is not None:
        raise CollapseError(f"blocks do not yield a p-morphic quotient: {violation}")
    return quotient, pm


def skeleton_morphism(frame: Frame) -> PMorphism:
    """The cluster-collapse map onto the skeleton, as a verified morphism."""
    from .frames import clusters_and_skeleton

    _, skel, pi = clusters_and_skeleton(frame)
    return PMorphism(frame, skel, pi)
