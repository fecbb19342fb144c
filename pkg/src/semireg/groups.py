"""Permutation groups given by generators.

A :class:`PermutationGroup` carries a base and strong generating set built by a
deterministic Schreier-Sims procedure.  Group order, membership, stabilizers
and element enumeration all go through that chain.  Groups small enough to
tabulate additionally get an :class:`ElementTable` (sorted element list plus a
full multiplication table) which backs the element sweeps: spectrum,
semiregular statistics, generation property P and subgroup classes.

Internally permutations are ``numpy`` arrays; the product ``a * b`` (apply
``a`` first) is ``b[a]``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _config
from .errors import TooLargeError
from .perm import Permutation

__all__ = [
    "PermutationGroup",
    "ElementTable",
    "SubgroupClass",
    "SubgroupClassList",
    "from_generators",
    "group_order",
    "orbit",
    "is_transitive",
    "point_stabilizer",
    "setwise_stabilizer",
    "elements",
    "max_semiregular_order",
    "spectrum",
    "satisfies_property_P",
    "subgroups_up_to_conjugacy",
    "symmetric_group",
    "alternating_group",
    "cyclic_group",
    "regular_representation",
]

_DTYPE = np.int32


def _arr(p: Permutation | Sequence[int]) -> np.ndarray:
    if isinstance(p, Permutation):
        return np.asarray(p.images, dtype=_DTYPE)
    return np.asarray(p, dtype=_DTYPE)


def _perm(a: np.ndarray) -> Permutation:
    return Permutation._trusted(tuple(a.tolist()))


def _inverse(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(a.size, dtype=a.dtype)
    return inv


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _prime_factors(k: int) -> list[int]:
    out, d = [], 2
    while d * d <= k:
        if k % d == 0:
            out.append(d)
            while k % d == 0:
                k //= d
        d += 1
    if k > 1:
        out.append(k)
    return out


class _Level:
    """One level of a stabilizer chain: base point, generators, transversal."""

    __slots__ = ("point", "gens", "trans", "orbit", "_inv")

    def __init__(self, point: int, ident: np.ndarray):
        self.point = point
        self.gens: list[np.ndarray] = []
        self.trans: dict[int, np.ndarray] = {point: ident}
        self.orbit: list[int] = [point]
        self._inv: dict[int, np.ndarray] = {point: ident}

    def uinv(self, p: int) -> np.ndarray:
        inv = self._inv.get(p)
        if inv is None:
            inv = _inverse(self.trans[p])
            self._inv[p] = inv
        return inv

    def add_gen(self, g: np.ndarray) -> None:
        # extends the transversal in place; existing coset representatives never change
        self.gens.append(g)
        trans, orbit = self.trans, self.orbit
        known = len(orbit)
        for idx in range(known):
            p = orbit[idx]
            q = int(g[p])
            if q not in trans:
                trans[q] = g[trans[p]]
                orbit.append(q)
        idx = known
        while idx < len(orbit):
            p = orbit[idx]
            up = trans[p]
            for h in self.gens:
                q = int(h[p])
                if q not in trans:
                    trans[q] = h[up]
                    orbit.append(q)
            idx += 1


def _is_identity(a: np.ndarray) -> bool:
    return bool(np.all(a == np.arange(a.size, dtype=a.dtype)))


def _first_moved(a: np.ndarray) -> int:
    return int(np.flatnonzero(a != np.arange(a.size, dtype=a.dtype))[0])


def _sift(levels: list[_Level], h: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
    for j in range(start, len(levels)):
        lv = levels[j]
        p = int(h[lv.point])
        if p == lv.point:
            continue
        if p not in lv.trans:
            return h, j
        h = lv.uinv(p)[h]
    return h, len(levels)


def _chain_order(levels: list[_Level]) -> int:
    out = 1
    for lv in levels:
        out *= len(lv.orbit)
    return out


def _schreier_sims(
    degree: int,
    gens: Iterable[np.ndarray],
    base_prefix: Sequence[int] = (),
    known_order: int | None = None,
) -> list[_Level]:
    ident = np.arange(degree, dtype=_DTYPE)
    uniq: dict[bytes, np.ndarray] = {}
    for g in gens:
        if not _is_identity(g):
            uniq.setdefault(g.tobytes(), g)
    gens = list(uniq.values())

    levels: list[_Level] = []
    for b in base_prefix:
        if any(lv.point == b for lv in levels):
            continue
        levels.append(_Level(int(b), ident))
    for g in gens:
        if all(int(g[lv.point]) == lv.point for lv in levels):
            levels.append(_Level(_first_moved(g), ident))
    for g in gens:
        j = next(i for i, lv in enumerate(levels) if int(g[lv.point]) != lv.point)
        for lv in levels[: j + 1]:
            lv.add_gen(g)

    checked: list[set[tuple[int, int]]] = [set() for _ in levels]
    i = len(levels) - 1
    while i >= 0:
        if known_order is not None and _chain_order(levels) == known_order:
            break
        lv = levels[i]
        found = None
        for p in lv.orbit:
            up = lv.trans[p]
            for si, s in enumerate(lv.gens):
                if (p, si) in checked[i]:
                    continue
                checked[i].add((p, si))
                h = lv.uinv(int(s[p]))[s[up]]
                if _is_identity(h):
                    continue
                res, j = _sift(levels, h, i + 1)
                if not _is_identity(res):
                    found = (res, j)
                    break
            if found is not None:
                break
        if found is None:
            i -= 1
            continue
        res, j = found
        if j == len(levels):
            levels.append(_Level(_first_moved(res), ident))
            checked.append(set())
        for lv2 in levels[i + 1 : j + 1]:
            lv2.add_gen(res)
        i = j
    return levels


class PermutationGroup:
    """A permutation group on ``{0, ..., degree-1}`` given by generators.

    Parameters
    ----------
    degree : int
        Number of points.
    generators : iterable of Permutation or image sequences
        May be empty, giving the trivial group.
    name : str, optional
        Free-form label carried into serializations.
    base, known_order : optional
        Hints for the chain construction.  ``known_order`` must be the true
        order; it lets Schreier-Sims stop once the basic orbits account for it.
    """

    def __init__(
        self,
        degree: int,
        generators: Iterable[Permutation | Sequence[int]] = (),
        name: str | None = None,
        *,
        base: Sequence[int] | None = None,
        known_order: int | None = None,
    ):
        if degree < 1:
            raise ValueError("degree must be >= 1")
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise ValueError(f"generator degree {g.degree} does not match group degree {degree}")
            gens.append(g)
        self._degree = degree
        self._gens = tuple(gens)
        self.name = name
        self._base_hint = tuple(base or ())
        self._known_order = known_order
        self._levels: list[_Level] | None = None
        self._rebased: dict[tuple[int, ...], list[_Level]] = {}

    @classmethod
    def _from_levels(cls, degree: int, levels: list[_Level], name: str | None = None) -> "PermutationGroup":
        gens: dict[bytes, np.ndarray] = {}
        for lv in levels:
            for g in lv.gens:
                gens.setdefault(g.tobytes(), g)
        grp = cls(degree, [_perm(g) for g in gens.values()], name=name)
        grp._levels = levels
        return grp

    # -- basic accessors -------------------------------------------------
    @property
    def degree(self) -> int:
        return self._degree

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return self._gens

    @property
    def _chain(self) -> list[_Level]:
        if self._levels is None:
            self._levels = _schreier_sims(
                self._degree, [_arr(g) for g in self._gens], self._base_hint, self._known_order
            )
        return self._levels

    def _chain_with_base(self, prefix: Sequence[int]) -> list[_Level]:
        prefix = tuple(int(p) for p in prefix)
        levels = self._chain
        if tuple(lv.point for lv in levels[: len(prefix)]) == prefix:
            return levels
        cached = self._rebased.get(prefix)
        if cached is None:
            strong = [g for lv in levels for g in lv.gens]
            cached = _schreier_sims(self._degree, strong, prefix, self.order())
            self._rebased[prefix] = cached
        return cached

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lv.point for lv in self._chain)

    def basic_orbits(self) -> list[list[int]]:
        return [list(lv.orbit) for lv in self._chain]

    def order(self) -> int:
        return _chain_order(self._chain)

    def __len__(self) -> int:
        return self.order()

    def is_trivial(self) -> bool:
        return self.order() == 1

    def identity(self) -> Permutation:
        return Permutation.identity(self._degree)

    def __contains__(self, p: Permutation) -> bool:
        if p.degree != self._degree:
            return False
        res, _ = _sift(self._chain, _arr(p))
        return _is_identity(res)

    def contains(self, p: Permutation) -> bool:
        return p in self

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<PermutationGroup{label} degree={self._degree} gens={len(self._gens)}>"

    # -- orbits -----------------------------------------------------------
    def orbit(self, point: int) -> frozenset[int]:
        if not 0 <= point < self._degree:
            raise ValueError(f"point {point} outside 0..{self._degree - 1}")
        seen = {point}
        queue = [point]
        imgs = [g.images for g in self._gens]
        for p in queue:
            for g in imgs:
                q = g[p]
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return frozenset(seen)

    def orbits(self) -> list[list[int]]:
        """All orbits, each sorted, ordered by their least point."""
        parent = list(range(self._degree))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self._gens:
            for i, v in enumerate(g.images):
                a, b = find(i), find(v)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        blocks: dict[int, list[int]] = {}
        for i in range(self._degree):
            blocks.setdefault(find(i), []).append(i)
        return [blocks[k] for k in sorted(blocks)]

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self._degree

    def is_semiregular_group(self) -> bool:
        """True when only the identity fixes a point."""
        return all(self.stabilizer(o[0]).is_trivial() for o in self.orbits())

    def is_regular(self) -> bool:
        return self.is_transitive() and self.order() == self._degree

    # -- stabilizers ------------------------------------------------------
    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermutationGroup":
        points = [int(p) for p in points]
        for p in points:
            if not 0 <= p < self._degree:
                raise ValueError(f"point {p} outside 0..{self._degree - 1}")
        if not points:
            return self
        prefix = list(dict.fromkeys(points))
        levels = self._chain_with_base(prefix)
        rest = levels[len(prefix) :]
        return PermutationGroup._from_levels(self._degree, rest)

    def stabilizer(self, point: int) -> "PermutationGroup":
        return self.pointwise_stabilizer([point])

    def transversal_element(self, src: Sequence[int], dst: Sequence[int]) -> Permutation | None:
        """An element mapping ``src[i]`` to ``dst[i]`` for every ``i``, or None."""
        src = [int(p) for p in src]
        if len(set(src)) != len(src):
            raise ValueError("source points must be distinct")
        levels = self._chain_with_base(src)
        g = self._map_points(levels, src, [int(d) for d in dst])
        return None if g is None else _perm(g)

    def _map_points(self, levels: list[_Level], src: list[int], dst: list[int]) -> np.ndarray | None:
        # needs levels[i].point == src[i]; the coset is unique so no backtracking.
        # g = u_{k-1} ... u_1 u_0 with u_0 applied last
        result = np.arange(self._degree, dtype=_DTYPE)
        targets = list(dst)
        for i in range(len(src)):
            lv = levels[i]
            u = lv.trans.get(targets[i])
            if u is None:
                return None
            uinv = lv.uinv(targets[i])
            targets = [int(uinv[x]) for x in targets]
            result = result[u]
        return result

    def setwise_stabilizer(self, points: Iterable[int]) -> "PermutationGroup":
        pts = sorted(set(int(p) for p in points))
        if not pts:
            raise ValueError("setwise stabilizer needs a nonempty set")
        for p in pts:
            if not 0 <= p < self._degree:
                raise ValueError(f"point {p} outside 0..{self._degree - 1}")
        if len(pts) > 6:
            raise TooLargeError("setwise stabilizer set", len(pts), 6)
        pointwise = self.pointwise_stabilizer(pts)
        levels = self._chain_with_base(pts)
        extra = []
        count = 0
        for arrangement in itertools.permutations(pts):
            g = self._map_points(levels, pts, list(arrangement))
            if g is not None:
                count += 1
                extra.append(_perm(g))
        gens = list(pointwise.generators) + extra
        return PermutationGroup(self._degree, gens, known_order=pointwise.order() * count)

    # -- elements ---------------------------------------------------------
    def _element_blocks(self, max_rows: int = 1 << 16) -> Iterator[np.ndarray]:
        levels = self._chain
        n = self._degree
        ident = np.arange(n, dtype=_DTYPE)
        low = ident[None, :]
        cut = len(levels)
        while cut > 0 and low.shape[0] * len(levels[cut - 1].orbit) <= max_rows:
            lv = levels[cut - 1]
            low = np.concatenate([lv.trans[p][low] for p in lv.orbit])
            cut -= 1
        if cut == 0:
            yield low
            return
        top = [[levels[j].trans[p] for p in levels[j].orbit] for j in range(cut)]
        for combo in itertools.product(*reversed(top)):
            # combo = (t_{cut-1}, ..., t_0); element = low * t_{cut-1} * ... * t_0
            acc = ident
            for t in combo:
                acc = t[acc]
            yield acc[low]

    def iter_elements(self) -> Iterator[Permutation]:
        for block in self._element_blocks():
            for row in block:
                yield _perm(row)

    def elements(self, limit: int | None = None) -> list[Permutation]:
        """All elements, sorted lexicographically by image list."""
        limit = _config.element_limit() if limit is None else limit
        m = self.order()
        if m > limit:
            raise TooLargeError("group order", m, limit)
        rows = [tuple(r) for block in self._element_blocks() for r in block.tolist()]
        rows.sort()
        return [Permutation._trusted(r) for r in rows]

    def random_element(self, rng: np.random.Generator) -> Permutation:
        acc = np.arange(self._degree, dtype=_DTYPE)
        for lv in reversed(self._chain):
            t = lv.trans[lv.orbit[int(rng.integers(len(lv.orbit)))]]
            acc = t[acc]
        return _perm(acc)

    @cached_property
    def table(self) -> "ElementTable":
        cap = _config.table_cap()
        if self.order() > cap:
            raise TooLargeError("group order for multiplication table", self.order(), cap)
        return ElementTable(self)

    # -- structure --------------------------------------------------------
    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        return self._degree == other.degree and all(g in other for g in self._gens)

    def is_normal_in(self, other: "PermutationGroup") -> bool:
        if not self.is_subgroup_of(other):
            return False
        for x in other.generators:
            xi = x.inverse()
            for g in self._gens:
                if (xi * g * x) not in self:
                    return False
        return True

    def conjugate(self, x: Permutation) -> "PermutationGroup":
        xi = x.inverse()
        return PermutationGroup(self._degree, [xi * g * x for g in self._gens], known_order=self.order())

    def fixed_points(self) -> list[int]:
        """Points fixed by every generator."""
        return [i for i in range(self._degree) if all(g[i] == i for g in self._gens)]

    # -- statistics -------------------------------------------------------
    def max_semiregular_order(self, limit: int | None = None, method: str = "auto") -> int:
        return max_semiregular_order(self, limit=limit, method=method)

    def spectrum(self, limit: int | None = None) -> set[int]:
        return spectrum(self, limit=limit)

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        out: dict = {"degree": self._degree, "generators": [list(g.images) for g in self._gens]}
        if self.name is not None:
            out["name"] = self.name
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "PermutationGroup":
        return cls(int(data["degree"]), data.get("generators", []), name=data.get("name"))

    @classmethod
    def from_json(cls, text: str) -> "PermutationGroup":
        return cls.from_dict(json.loads(text))


class ElementTable:
    """Sorted elements of a small group with a full multiplication table.

    ``mult[a, b]`` is the index of ``elements[a] * elements[b]`` (``a`` applied
    first).  Index ``identity`` is the identity element.
    """

    def __init__(self, group: PermutationGroup):
        perms = group.elements(limit=_config.table_cap())
        self.group = group
        self.elements = perms
        m = len(perms)
        n = group.degree
        E = np.array([p.images for p in perms], dtype=_DTYPE).reshape(m, n)
        self.E = E
        base = list(group.base) or [0]
        B = np.asarray(base, dtype=np.intp)
        imgs = E[:, B]
        rng = np.random.default_rng(0x5E31)
        weights = rng.integers(1, 2**62, size=len(base), dtype=np.int64).astype(np.uint64) | np.uint64(1)
        keys = (imgs.astype(np.uint64) * weights[None, :]).sum(axis=1)
        order = np.argsort(keys, kind="stable")
        sorted_keys = keys[order]
        if np.unique(sorted_keys).size != m:
            raise RuntimeError("element key collision; increase key width")
        mult = np.empty((m, m), dtype=_DTYPE)
        for a in range(m):
            prod = E[:, E[a][B]]
            k = (prod.astype(np.uint64) * weights[None, :]).sum(axis=1)
            pos = np.searchsorted(sorted_keys, k)
            mult[a] = order[pos]
        self.mult = mult
        self.identity = int(np.flatnonzero((E == np.arange(n, dtype=_DTYPE)).all(axis=1))[0])
        self.inv = np.empty(m, dtype=_DTYPE)
        rows, cols = np.nonzero(mult == self.identity)
        self.inv[rows] = cols
        self.index = {p: i for i, p in enumerate(perms)}

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def orders(self) -> np.ndarray:
        m = len(self.elements)
        idx = np.arange(m)
        cur = idx.copy()
        out = np.zeros(m, dtype=np.int64)
        k = 1
        while True:
            hit = (cur == self.identity) & (out == 0)
            out[hit] = k
            if (out > 0).all():
                return out
            cur = self.mult[cur, idx]
            k += 1

    def power(self, x: int, k: int) -> int:
        result, base = self.identity, x
        while k:
            if k & 1:
                result = int(self.mult[result, base])
            base = int(self.mult[base, base])
            k >>= 1
        return result

    @cached_property
    def semiregular(self) -> np.ndarray:
        """Boolean flag per element: all cycles of equal length."""
        n = self.E.shape[1]
        fpf = ~(self.E == np.arange(n, dtype=_DTYPE)).any(axis=1)
        orders = self.orders
        out = np.zeros(len(self.elements), dtype=bool)
        for x in range(len(self.elements)):
            o = int(orders[x])
            out[x] = all(fpf[self.power(x, o // p)] for p in _prime_factors(o))
        return out

    def closure(self, gens: Sequence[int], start: np.ndarray | None = None) -> np.ndarray:
        """Boolean membership mask of the subgroup generated by ``gens``.

        ``start`` is an optional mask already known to lie inside that
        subgroup; it only saves work.  Elements of ``start`` outside the
        subgroup give a wrong answer, since only ``gens`` are multiplied in.
        """
        m = len(self.elements)
        mask = np.zeros(m, dtype=bool) if start is None else start.copy()
        mask[self.identity] = True
        gens = np.asarray(list(gens), dtype=np.intp)
        if gens.size == 0:
            return mask
        frontier = np.flatnonzero(mask)
        while frontier.size:
            new = np.unique(self.mult[frontier[:, None], gens[None, :]].ravel())
            new = new[~mask[new]]
            mask[new] = True
            frontier = new
        return mask

    def conjugacy_classes(self) -> list[np.ndarray]:
        m = len(self.elements)
        assigned = np.full(m, -1)
        classes = []
        allx = np.arange(m)
        for x in range(m):
            if assigned[x] >= 0:
                continue
            cls = np.unique(self.mult[self.mult[self.inv, x], allx])
            assigned[cls] = len(classes)
            classes.append(cls)
        return classes

    def subgroup(self, mask: np.ndarray, gens: Sequence[int]) -> PermutationGroup:
        perms = [self.elements[g] for g in gens]
        return PermutationGroup(self.group.degree, perms, known_order=int(mask.sum()))


@dataclass
class SubgroupClass:
    representative: PermutationGroup
    order: int
    class_size: int
    element_indices: np.ndarray = field(repr=False)


@dataclass
class SubgroupClassList:
    """Subgroups of a parent group up to conjugacy in the parent."""

    classes: list[SubgroupClass]
    parent_order: int
    table: ElementTable = field(repr=False)

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def orders(self) -> list[int]:
        return sorted(c.order for c in self.classes)

    def total_subgroups(self) -> int:
        return sum(c.class_size for c in self.classes)


# ---------------------------------------------------------------------------
# module-level operations


def from_generators(degree: int, gens: Iterable[Permutation | Sequence[int]], name: str | None = None) -> PermutationGroup:
    return PermutationGroup(degree, gens, name=name)


def group_order(G: PermutationGroup) -> int:
    return G.order()


def orbit(G: PermutationGroup, point: int) -> frozenset[int]:
    return G.orbit(point)


def is_transitive(G: PermutationGroup) -> bool:
    return G.is_transitive()


def point_stabilizer(G: PermutationGroup, alpha: int) -> PermutationGroup:
    return G.stabilizer(alpha)


def setwise_stabilizer(G: PermutationGroup, S: Iterable[int]) -> PermutationGroup:
    return G.setwise_stabilizer(S)


def elements(G: PermutationGroup, limit: int | None = None) -> list[Permutation]:
    return G.elements(limit)


def _cycle_stats(row: list[int]) -> tuple[int, bool]:
    """(order, semiregular) of a permutation given as an image list."""
    n = len(row)
    seen = bytearray(n)
    lengths = set()
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        j = s
        while not seen[j]:
            seen[j] = 1
            j = row[j]
            length += 1
        lengths.add(length)
    return reduce(_lcm, lengths, 1), len(lengths) == 1


def _check_limit(G: PermutationGroup, limit: int | None) -> None:
    limit = _config.element_limit() if limit is None else limit
    if G.order() > limit:
        raise TooLargeError("group order", G.order(), limit)


def max_semiregular_order(G: PermutationGroup, limit: int | None = None, method: str = "auto") -> int:
    """Largest order of a semiregular element of ``G`` (1 for the trivial group).

    ``method`` selects an element scan (``"elements"``), a scan over conjugacy
    class representatives (``"classes"``), or the multiplication table when
    one is cheap to build (``"auto"``).  All methods agree.
    """
    _check_limit(G, limit)
    if method == "auto":
        method = "table" if G.order() <= min(_config.table_cap(), 3000) and G.degree <= 4096 else "elements"
    if method == "table":
        t = G.table
        return int(t.orders[t.semiregular].max())
    if method == "classes":
        t = G.table
        best = 1
        for cls in t.conjugacy_classes():
            o, semi = _cycle_stats(list(t.elements[int(cls[0])].images))
            if semi:
                best = max(best, o)
        return best
    if method != "elements":
        raise ValueError(f"unknown method {method!r}")
    best = 1
    for block in G._element_blocks():
        for row in block.tolist():
            o, semi = _cycle_stats(row)
            if semi and o > best:
                best = o
    return best


def semiregular_witness(G: PermutationGroup, min_order: int, limit: int | None = None) -> Permutation | None:
    """Some semiregular element of order at least ``min_order``, or None."""
    _check_limit(G, limit)
    for block in G._element_blocks():
        for row in block.tolist():
            o, semi = _cycle_stats(row)
            if semi and o >= min_order:
                return Permutation._trusted(tuple(row))
    return None


def spectrum(G: PermutationGroup, limit: int | None = None) -> set[int]:
    """The set of element orders."""
    _check_limit(G, limit)
    if G.order() <= min(_config.table_cap(), 3000):
        return {int(o) for o in np.unique(G.table.orders)}
    out = set()
    for block in G._element_blocks():
        for row in block.tolist():
            out.add(_cycle_stats(row)[0])
    return out


def satisfies_property_P(G: PermutationGroup, limit: int | None = None) -> bool:
    """Generated by three involutions, or by an involution and an element of order > 2."""
    _check_limit(G, limit)
    t = G.table
    m = len(t)
    if m == 1:
        return False
    orders = t.orders
    invols = np.flatnonzero(orders == 2)
    if invols.size == 0:
        return False
    big = np.flatnonzero(orders > 2)
    class_of = np.full(m, -1)
    reps = []
    for k, cls in enumerate(t.conjugacy_classes()):
        class_of[cls] = k
        reps.append(int(cls[0]))
    # the first generator can be taken up to conjugacy
    first = [r for r in reps if orders[r] == 2]
    for a in first:
        for x in big:
            if t.closure([a, int(x)]).sum() == m:
                return True
    for a in first:
        for b in invols:
            if b == a:
                continue
            pair = t.closure([a, int(b)])
            if pair.sum() == m:
                # a third involution is always available when two already generate
                return invols.size >= 3
            for c in invols:
                if c <= b or c == a:
                    continue
                if t.closure([a, int(b), int(c)], start=pair).sum() == m:
                    return True
    return False


def subgroups_up_to_conjugacy(G: PermutationGroup, order_cap: int | None = None) -> SubgroupClassList:
    """One representative per conjugacy class of subgroups.

    Subgroups are grown from cyclic subgroups of prime-power order: every
    class representative is extended by every such cyclic subgroup, and each
    new subgroup is registered together with all of its conjugates.
    """
    cap = _config.subgroup_cap() if order_cap is None else order_cap
    if G.order() > cap:
        raise TooLargeError("group order for subgroup enumeration", G.order(), cap)
    t = G.table
    m = len(t)
    orders = t.orders
    allx = np.arange(m)

    def key_of(idx: np.ndarray) -> bytes:
        return np.asarray(idx, dtype=_DTYPE).tobytes()

    cyclic: dict[bytes, int] = {}
    for x in range(m):
        o = int(orders[x])
        if o == 1 or len(_prime_factors(o)) != 1:
            continue
        k = key_of(np.flatnonzero(t.closure([x])))
        cyclic.setdefault(k, x)
    cyclic_gens = list(cyclic.values())

    registry: dict[bytes, int] = {}
    reps: list[tuple[np.ndarray, list[int], int]] = []

    def register(mask: np.ndarray, gens: list[int]) -> None:
        idx = np.flatnonzero(mask)
        k = key_of(idx)
        if k in registry:
            return
        conj = t.mult[t.mult[t.inv[:, None], idx[None, :]], allx[:, None]]
        conj = np.unique(np.sort(conj, axis=1), axis=0)
        cid = len(reps)
        for row in conj:
            registry[key_of(row)] = cid
        reps.append((mask, gens, conj.shape[0]))

    register(t.closure([]), [])
    for x in cyclic_gens:
        register(t.closure([x]), [x])
    head = 0
    while head < len(reps):
        mask, gens, _ = reps[head]
        head += 1
        for z in cyclic_gens:
            if mask[z]:
                continue
            bigger = t.closure(gens + [z], start=mask)
            register(bigger, gens + [z])

    classes = []
    for mask, gens, size in reps:
        classes.append(
            SubgroupClass(
                representative=t.subgroup(mask, gens),
                order=int(mask.sum()),
                class_size=size,
                element_indices=np.flatnonzero(mask),
            )
        )
    classes.sort(key=lambda c: (c.order, -c.class_size))
    return SubgroupClassList(classes=classes, parent_order=m, table=t)


# ---------------------------------------------------------------------------
# small standard groups


def symmetric_group(n: int) -> PermutationGroup:
    if n == 1:
        return PermutationGroup(1, [], name="Sym(1)")
    gens = [Permutation.from_cycles([[0, 1]], n)]
    if n > 2:
        gens.append(Permutation.from_cycles([list(range(n))], n))
    return PermutationGroup(n, gens, name=f"Sym({n})")


def alternating_group(n: int) -> PermutationGroup:
    if n < 3:
        return PermutationGroup(n, [], name=f"Alt({n})")
    gens = [Permutation.from_cycles([[i, i + 1, i + 2]], n) for i in range(n - 2)]
    return PermutationGroup(n, gens, name=f"Alt({n})")


def cyclic_group(n: int) -> PermutationGroup:
    """Cyclic group of order ``n`` acting regularly."""
    if n == 1:
        return PermutationGroup(1, [], name="C1")
    return PermutationGroup(n, [Permutation.from_cycles([list(range(n))], n)], name=f"C{n}")


def regular_representation(G: PermutationGroup, limit: int | None = None) -> tuple[PermutationGroup, list[Permutation]]:
    """Right regular representation of ``G`` on its sorted element list.

    Point ``i`` is ``elements[i]``; generator ``g`` sends ``x`` to ``x * g``.
    """
    elems = G.elements(limit)
    index = {p: i for i, p in enumerate(elems)}
    gens = []
    for g in G.generators:
        gens.append(Permutation._trusted(tuple(index[x * g] for x in elems)))
    return PermutationGroup(len(elems), gens, name=G.name, known_order=len(elems)), elems
