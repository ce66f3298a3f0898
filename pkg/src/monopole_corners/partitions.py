"""Set partitions of {1..k}, the refinement lattice, and their symmetry groups.

A set partition is stored canonically (blocks sorted by their minimum
element), so equal partitions always have identical representations and can
be hashed and compared directly.  Relabelling orbits under the symmetric
group, and orbits of refinement chains, are enumerated without ever touching
explicit permutations: a chain of partitions up to relabelling is the same
thing as a nested multiset of block sizes (a "tower"), and towers are
enumerated recursively.

Everything here is immutable after construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Sequence

from .errors import ChainError, RangeLimitError

#: Full enumeration of set partitions is capped here (Bell(12) ~ 4.2e6).
ENUMERATION_LIMIT = 12

#: Chain-orbit enumeration and flag-group brute force are capped here.
CHAIN_LIMIT = 8


class SetPartition:
    """A partition of {1..k} into disjoint nonempty blocks."""

    __slots__ = ("k", "blocks")

    def __init__(self, k: int, blocks: Iterable[Iterable[int]]):
        if k < 1:
            raise ValueError(f"ground-set size must be positive, got {k}")
        raw = [tuple(sorted(b)) for b in blocks]
        if any(not b for b in raw):
            raise ValueError("empty block")
        blks = tuple(sorted(raw, key=lambda b: b[0]))
        seen: set[int] = set()
        for b in blks:
            for i in b:
                if not 1 <= i <= k:
                    raise ValueError(f"element {i} outside 1..{k}")
                if i in seen:
                    raise ValueError(f"element {i} appears in two blocks")
                seen.add(i)
        if len(seen) != k:
            raise ValueError("blocks do not cover {1..%d}" % k)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "blocks", blks)

    def __setattr__(self, name, value):
        raise AttributeError("SetPartition is immutable")

    @property
    def rank(self) -> int:
        """Number of blocks, r(partition)."""
        return len(self.blocks)

    def block_index(self, i: int) -> int:
        for n, b in enumerate(self.blocks):
            if i in b:
                return n
        raise ValueError(f"element {i} outside 1..{self.k}")

    def block_of(self, i: int) -> tuple[int, ...]:
        return self.blocks[self.block_index(i)]

    def is_singletons(self) -> bool:
        return len(self.blocks) == self.k

    def is_one_block(self) -> bool:
        return len(self.blocks) == 1

    def to_rgs(self) -> str:
        """Restricted-growth string, e.g. "0010" for {{1,2,4},{3}}.

        Uses one character per element when all block indices are single
        digits, and a pipe-separated form otherwise.
        """
        idx = [0] * self.k
        for n, b in enumerate(self.blocks):
            for i in b:
                idx[i - 1] = n
        if len(self.blocks) <= 10:
            return "".join(str(n) for n in idx)
        return "|".join(str(n) for n in idx)

    @classmethod
    def from_rgs(cls, s: str) -> "SetPartition":
        tokens = s.split("|") if "|" in s else list(s)
        if not tokens:
            raise ValueError("empty restricted-growth string")
        idx = [int(t) for t in tokens]
        top = -1
        for n in idx:
            if n < 0 or n > top + 1:
                raise ValueError(f"not a restricted-growth string: {s!r}")
            top = max(top, n)
        blocks: dict[int, list[int]] = {}
        for i, n in enumerate(idx, start=1):
            blocks.setdefault(n, []).append(i)
        return cls(len(idx), blocks.values())

    def to_json_dict(self) -> dict:
        return {"k": self.k, "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "SetPartition":
        return cls(int(d["k"]), d["blocks"])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SetPartition)
            and self.k == other.k
            and self.blocks == other.blocks
        )

    def __hash__(self) -> int:
        return hash((self.k, self.blocks))

    def __str__(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"

    def __repr__(self) -> str:
        return f"SetPartition({self.k}, {self})"


class IntegerPartition:
    """A multiset of positive integers, stored sorted ascending."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int]):
        p = tuple(sorted(int(x) for x in parts))
        if not p:
            raise ValueError("integer partition needs at least one part")
        if p[0] < 1:
            raise ValueError("parts must be positive")
        object.__setattr__(self, "parts", p)

    def __setattr__(self, name, value):
        raise AttributeError("IntegerPartition is immutable")

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegerPartition) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def __repr__(self) -> str:
        return f"IntegerPartition{self.parts}"


class ChainFlag:
    """A strictly increasing refinement chain of partitions of {1..k}.

    Entries are ordered finest first and may not include the one-block
    partition.  The empty chain is allowed (it labels the interior).
    """

    __slots__ = ("k", "chain")

    def __init__(self, k: int, chain: Iterable[SetPartition]):
        entries = tuple(chain)
        for p in entries:
            if not isinstance(p, SetPartition) or p.k != k:
                raise ChainError(f"chain entry {p!r} is not a partition of {{1..{k}}}")
            if p.is_one_block() and k > 1:
                raise ChainError("chain entries must be proper partitions")
        for a, b in zip(entries, entries[1:]):
            if a == b or not refines(a, b):
                raise ChainError(f"{a} does not strictly refine {b}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "chain", entries)

    def __setattr__(self, name, value):
        raise AttributeError("ChainFlag is immutable")

    def __len__(self) -> int:
        return len(self.chain)

    def __iter__(self) -> Iterator[SetPartition]:
        return iter(self.chain)

    def __getitem__(self, i):
        return self.chain[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, ChainFlag) and self.k == other.k and self.chain == other.chain

    def __hash__(self) -> int:
        return hash((self.k, self.chain))

    def __repr__(self) -> str:
        return f"ChainFlag({self.k}, [{', '.join(str(p) for p in self.chain)}])"


def singletons(k: int) -> SetPartition:
    return SetPartition(k, ([i] for i in range(1, k + 1)))


def one_block(k: int) -> SetPartition:
    return SetPartition(k, [range(1, k + 1)])


def all_partitions(k: int) -> list[SetPartition]:
    """Every set partition of {1..k}, in lexicographic order of their
    restricted-growth strings."""
    if not 1 <= k <= ENUMERATION_LIMIT:
        raise RangeLimitError(f"k must be in 1..{ENUMERATION_LIMIT}, got {k}")
    return list(iter_partitions(k))


def iter_partitions(k: int) -> Iterator[SetPartition]:
    if not 1 <= k <= ENUMERATION_LIMIT:
        raise RangeLimitError(f"k must be in 1..{ENUMERATION_LIMIT}, got {k}")
    idx = [0] * k

    def rec(i: int, top: int) -> Iterator[SetPartition]:
        if i == k:
            blocks: dict[int, list[int]] = {}
            for j, n in enumerate(idx, start=1):
                blocks.setdefault(n, []).append(j)
            yield SetPartition(k, blocks.values())
            return
        for n in range(top + 2):
            idx[i] = n
            yield from rec(i + 1, max(top, n))

    yield from rec(1, 0)


def refines(lam: SetPartition, mu: SetPartition) -> bool:
    """True iff every block of mu is a union of blocks of lam (lam is finer)."""
    if lam.k != mu.k:
        raise ValueError("partitions have different ground sets")
    owner = [0] * (lam.k + 1)
    for n, b in enumerate(mu.blocks):
        for i in b:
            owner[i] = n
    return all(len({owner[i] for i in b}) == 1 for b in lam.blocks)


def join(lam: SetPartition, mu: SetPartition) -> SetPartition:
    """Finest common coarsening (the lattice join under refinement order)."""
    if lam.k != mu.k:
        raise ValueError("partitions have different ground sets")
    parent = list(range(lam.k + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for b in itertools.chain(lam.blocks, mu.blocks):
        for i in b[1:]:
            parent[find(i)] = find(b[0])
    blocks: dict[int, list[int]] = {}
    for i in range(1, lam.k + 1):
        blocks.setdefault(find(i), []).append(i)
    return SetPartition(lam.k, blocks.values())


def meet(lam: SetPartition, mu: SetPartition) -> SetPartition:
    """Coarsest common refinement (pairwise block intersections)."""
    if lam.k != mu.k:
        raise ValueError("partitions have different ground sets")
    blocks = []
    for a in lam.blocks:
        sa = set(a)
        for b in mu.blocks:
            inter = sa.intersection(b)
            if inter:
                blocks.append(inter)
    return SetPartition(lam.k, blocks)


def type_of(lam: SetPartition) -> IntegerPartition:
    """The integer partition of block sizes, [lam]."""
    return IntegerPartition(len(b) for b in lam.blocks)


def apply_permutation(sigma: Sequence[int], lam: SetPartition) -> SetPartition:
    """Relabel a partition through sigma, given as a 1-based image tuple."""
    if len(sigma) != lam.k:
        raise ValueError("permutation length does not match ground set")
    return SetPartition(lam.k, ([sigma[i - 1] for i in b] for b in lam.blocks))


def orbit_canonical(lam: SetPartition) -> SetPartition:
    """Deterministic representative of the relabelling orbit of lam.

    This is the partition whose restricted-growth string is
    lexicographically least: blocks in decreasing size, filled with
    consecutive integers.
    """
    sizes = sorted((len(b) for b in lam.blocks), reverse=True)
    blocks, start = [], 1
    for s in sizes:
        blocks.append(range(start, start + s))
        start += s
    return SetPartition(lam.k, blocks)


def integer_partitions(k: int) -> list[IntegerPartition]:
    """All integer partitions of k, ascending-lexicographic."""
    if k < 1:
        raise RangeLimitError(f"k must be positive, got {k}")
    out: list[IntegerPartition] = []

    def rec(remaining: int, minimum: int, acc: list[int]) -> None:
        if remaining == 0:
            out.append(IntegerPartition(acc))
            return
        for part in range(minimum, remaining + 1):
            acc.append(part)
            rec(remaining - part, part, acc)
            acc.pop()

    rec(k, 1, [])
    return out


@lru_cache(maxsize=None)
def _refines_integer(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    if sum(a) != sum(b):
        return False
    if len(a) < len(b):
        return False
    if len(b) == 1:
        return True
    target = b[-1]
    rest_b = b[:-1]
    n = len(a)

    def choose(idx: int, remaining: int, chosen: list[int]) -> bool:
        if remaining == 0:
            left = tuple(a[i] for i in range(n) if i not in set(chosen))
            return _refines_integer(left, rest_b)
        prev = None
        for i in range(idx, n):
            if a[i] > remaining or a[i] == prev:
                continue
            prev = a[i]
            chosen.append(i)
            if choose(i + 1, remaining - a[i], chosen):
                chosen.pop()
                return True
            chosen.pop()
        return False

    return choose(0, target, [])


def refines_integer_partition(a: IntegerPartition, b: IntegerPartition) -> bool:
    """True iff b is obtained from a by grouping (bracketing) parts of a.

    Reflexive: every partition refines itself.
    """
    if a.total != b.total:
        raise ValueError("integer partitions of different totals")
    return _refines_integer(a.parts, b.parts)


# ---------------------------------------------------------------------------
# Chain orbits via nested block-size towers.
#
# A chain lam_1 <= ... <= lam_d on {1..k}, taken up to relabelling, carries
# exactly the information of a depth-d tower: lam_d splits the ground set
# into blocks, and each block carries the restricted depth-(d-1) tower.  A
# depth-0 tower is just a block size.  Towers are nested tuples sorted in
# decreasing (size, structure) order, which makes them canonical.
# ---------------------------------------------------------------------------


def _tower_size(t) -> int:
    return t if isinstance(t, int) else sum(_tower_size(c) for c in t)


def _tower_key(t):
    return (_tower_size(t), t)


def _tower_ranks(tower, depth: int) -> list[int]:
    """[r(lam_1), ..., r(lam_depth)] for the chain encoded by the tower."""
    levels = [0] * depth

    def walk(t, height: int) -> None:
        if height == 0:
            return
        levels[height - 1] += len(t)
        for child in t:
            walk(child, height - 1)

    walk(tower, depth)
    return levels


def _rank_vectors(depth: int, caps: Sequence[int], lo: int = 1) -> list[tuple[int, ...]]:
    """Weakly decreasing vectors v with lo <= v[j] <= caps[j]."""
    out: list[tuple[int, ...]] = []

    def rec(j: int, prev: int, acc: list[int]) -> None:
        if j == depth:
            out.append(tuple(acc))
            return
        for v in range(min(prev, caps[j]), lo - 1, -1):
            acc.append(v)
            rec(j + 1, v, acc)
            acc.pop()

    rec(0, max(caps, default=0) if caps else 0, [])
    return out


@lru_cache(maxsize=None)
def _towers_ranked(size: int, depth: int, vec: tuple[int, ...]) -> tuple:
    """Towers of the given size and depth whose rank vector is exactly `vec`.

    vec[j] is the required number of height-j nodes, i.e. the block count
    r(lam_{j+1}) contributed by this tower.  Enumerating by rank profile
    keeps the search output-sensitive; without it, deep weak towers swamp
    the strict chains they contain.
    """
    if depth == 0:
        return (size,) if vec == () else ()
    n_children = vec[depth - 1]
    if not 1 <= n_children <= size:
        return ()
    budget = vec[:-1]
    options: list[tuple[int, tuple, tuple[int, ...]]] = []
    for s in range(size, 0, -1):
        for u in _rank_vectors(depth - 1, [min(s, b) for b in budget]):
            options.extend((s, t, u) for t in _towers_ranked(s, depth - 1, u))
    options.sort(key=lambda e: (e[0], e[1]), reverse=True)
    results: list[tuple] = []

    def feasible(size_rem: int, vec_rem: tuple[int, ...], slots: int) -> bool:
        if slots == 0:
            return size_rem == 0 and not any(vec_rem)
        if not slots <= size_rem:
            return False
        prev = size_rem
        for v in vec_rem:
            if not slots <= v <= min(size_rem, prev):
                return False
            prev = v
        return True

    def rec(size_rem: int, vec_rem: tuple[int, ...], slots: int, start: int, acc: list) -> None:
        if slots == 0:
            results.append(tuple(acc))
            return
        for i in range(start, len(options)):
            s, t, ranks = options[i]
            if s > size_rem:
                continue
            new_vec = tuple(v - r for v, r in zip(vec_rem, ranks))
            if any(v < 0 for v in new_vec):
                continue
            if not feasible(size_rem - s, new_vec, slots - 1):
                continue
            acc.append(t)
            rec(size_rem - s, new_vec, slots - 1, i, acc)
            acc.pop()

    if feasible(size, budget, n_children):
        rec(size, budget, n_children, 0, [])
    return tuple(results)


def _forest_ranked(sizes: tuple[int, ...], depth: int, vec: tuple[int, ...]) -> list[tuple]:
    """Ordered tuples of towers, one per entry of `sizes`, whose rank
    vectors sum to `vec`."""
    results: list[tuple] = []

    def rec(i: int, vec_rem: tuple[int, ...], acc: list) -> None:
        if i == len(sizes):
            if not any(vec_rem):
                results.append(tuple(acc))
            return
        blocks_left = len(sizes) - i - 1
        size_left = sum(sizes[i + 1 :])
        s = sizes[i]
        for u in _rank_vectors(depth, [min(s, b - blocks_left) for b in vec_rem]):
            rest = tuple(v - a for v, a in zip(vec_rem, u))
            if any(not blocks_left <= r <= size_left for r in rest):
                continue
            for t in _towers_ranked(s, depth, u):
                acc.append(t)
                rec(i + 1, rest, acc)
                acc.pop()

    rec(0, vec, [])
    return results


def _chain_orbits_relative(
    k: int, d: int, blocks: tuple[tuple[int, ...], ...], coarse_rank: int
) -> list[ChainFlag]:
    """Orbit representatives of strict chains lam_1 < ... < lam_d finer than
    the partition with the given blocks, under permutations fixing each
    block.  The absolute case is a single block with coarse_rank 1.
    """
    out: list[ChainFlag] = []
    for combo in itertools.combinations(range(coarse_rank + 1, k + 1), d):
        vec = tuple(reversed(combo))
        for forest in _forest_ranked(tuple(len(b) for b in blocks), d, vec):
            level_blocks: list[list[tuple[int, ...]]] = [[] for _ in range(d)]
            for tower, members in zip(forest, blocks):
                per_level = _realize_tower(tower, members, d)
                for j in range(d):
                    level_blocks[j].extend(per_level[j])
            out.append(ChainFlag(k, [SetPartition(k, level_blocks[j]) for j in range(d)]))
    return out


def _realize_tower(tower, elements: Sequence[int], depth: int) -> list[list[tuple[int, ...]]]:
    """Assign `elements` to the tower's leaves; return blocks per chain level.

    Result[j] holds the blocks of lam_{j+1} (element sets of the tower's
    height-j nodes).
    """
    per_level: list[list[tuple[int, ...]]] = [[] for _ in range(depth)]
    pos = 0

    def walk(t, height: int) -> tuple[int, ...]:
        nonlocal pos
        if height == 0:
            got = tuple(elements[pos : pos + t])
            pos += t
            return got
        acc: list[int] = []
        for child in t:
            sub = walk(child, height - 1)
            per_level[height - 1].append(sub)
            acc.extend(sub)
        return tuple(acc)

    walk(tower, depth)
    return per_level


def chain_orbit_invariant(flag: ChainFlag):
    """The tower of a chain: a complete relabelling-orbit invariant."""

    def build(elements: tuple[int, ...], chain: Sequence[SetPartition]):
        if not chain:
            return len(elements)
        top = chain[-1]
        elems = set(elements)
        subs = []
        for block in top.blocks:
            sub_elems = tuple(i for i in block if i in elems)
            if not sub_elems:
                continue
            restricted = [
                SetPartition(len(sub_elems), _restrict_blocks(p, sub_elems))
                for p in chain[:-1]
            ]
            subs.append(build(tuple(range(1, len(sub_elems) + 1)), restricted))
        return tuple(sorted(subs, key=_tower_key, reverse=True))

    return build(tuple(range(1, flag.k + 1)), list(flag.chain))


def _restrict_blocks(p: SetPartition, elements: Sequence[int]) -> list[list[int]]:
    """Blocks of p restricted to `elements`, renumbered 1..len(elements)."""
    index = {e: i for i, e in enumerate(sorted(elements), start=1)}
    out = []
    for b in p.blocks:
        sub = [index[i] for i in b if i in index]
        if sub:
            out.append(sub)
    return out


def chain_orbit_canonical(flag: ChainFlag) -> ChainFlag:
    """Canonical chain representing the relabelling orbit of `flag`."""
    d = len(flag)
    if d == 0:
        return flag
    tower = chain_orbit_invariant(flag)
    per_level = _realize_tower(tower, tuple(range(1, flag.k + 1)), d)
    return ChainFlag(flag.k, [SetPartition(flag.k, per_level[j]) for j in range(d)])


def chains_mod_symmetric_group(k: int, d: int) -> list[ChainFlag]:
    """One representative per relabelling orbit of strict chains
    lam_1 < ... < lam_d of proper partitions of {1..k}."""
    if not 1 <= k <= CHAIN_LIMIT:
        raise RangeLimitError(f"k must be in 1..{CHAIN_LIMIT}, got {k}")
    if not 1 <= d <= k - 1:
        raise RangeLimitError(f"d must be in 1..{k - 1}, got {d}")
    return _chain_orbits_relative(k, d, (tuple(range(1, k + 1)),), 1)


# ---------------------------------------------------------------------------
# Symmetry groups of partitions and flags.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymmetryOrders:
    order_sigma_lambda: int
    order_stab: int
    order_sym_lambda: int


@dataclass(frozen=True)
class FlagSymmetryOrders:
    order_sym0: int
    order_sym: int


def symmetry_orders(lam: SetPartition) -> SymmetryOrders:
    """Orders of the block-preserving groups attached to a partition.

    Stab fixes every block pointwise up to internal shuffles, Sym permutes
    equal-size blocks, and the full symmetry group is their extension.
    """
    stab = 1
    for b in lam.blocks:
        stab *= factorial(len(b))
    counts: dict[int, int] = {}
    for b in lam.blocks:
        counts[len(b)] = counts.get(len(b), 0) + 1
    sym = 1
    for n in counts.values():
        sym *= factorial(n)
    return SymmetryOrders(stab * sym, stab, sym)


def _preserves(sigma: Sequence[int], lam: SetPartition) -> bool:
    block_sets = set(lam.blocks)
    return all(tuple(sorted(sigma[i - 1] for i in b)) in block_sets for b in lam.blocks)


def _fixes_blockwise(sigma: Sequence[int], lam: SetPartition) -> bool:
    idx = [0] * (lam.k + 1)
    for n, b in enumerate(lam.blocks):
        for i in b:
            idx[i] = n
    return all(idx[sigma[i - 1]] == idx[i] for i in range(1, lam.k + 1))


def _flag_orders_formula(lam: SetPartition, nu: SetPartition) -> FlagSymmetryOrders:
    # Within each nu-block: count lam-blocks by size; Sym0 shuffles equal
    # sizes block-internally.  Sym additionally permutes nu-blocks whose
    # internal lam-structure matches.
    sym0 = 1
    signatures: dict[tuple[int, ...], int] = {}
    for c in nu.blocks:
        cset = set(c)
        sizes = sorted(len(b) for b in lam.blocks if b[0] in cset)
        signatures[tuple(sizes)] = signatures.get(tuple(sizes), 0) + 1
        counts: dict[int, int] = {}
        for s in sizes:
            counts[s] = counts.get(s, 0) + 1
        for n in counts.values():
            sym0 *= factorial(n)
    sym = sym0
    for m in signatures.values():
        sym *= factorial(m)
    return FlagSymmetryOrders(sym0, sym)


def flag_symmetry_orders(lam: SetPartition, nu: SetPartition) -> FlagSymmetryOrders:
    """Orders of the symmetry groups of the strict flag lam < nu.

    Sym0 consists of flag symmetries acting trivially on the coarse level;
    Sym is the full flag-symmetry group.  Orders are found by enumerating
    the symmetric group directly and cross-checked against the product
    formula, since the two are easy to get wrong independently.
    """
    if lam.k != nu.k:
        raise ValueError("partitions have different ground sets")
    if lam == nu or not refines(lam, nu):
        raise ValueError("need a strict flag: lam strictly finer than nu")
    if lam.k > CHAIN_LIMIT:
        raise RangeLimitError(f"flag enumeration capped at k <= {CHAIN_LIMIT}")
    n_flag = 0
    n_stab_nu = 0
    for sigma in itertools.permutations(range(1, lam.k + 1)):
        if _preserves(sigma, lam) and _preserves(sigma, nu):
            n_flag += 1
            if _fixes_blockwise(sigma, nu):
                n_stab_nu += 1
    stab_lam = symmetry_orders(lam).order_stab
    got = FlagSymmetryOrders(n_stab_nu // stab_lam, n_flag // stab_lam)
    expected = _flag_orders_formula(lam, nu)
    if got != expected:
        raise AssertionError(
            f"flag symmetry orders disagree: enumerated {got}, formula {expected}"
        )
    return got
