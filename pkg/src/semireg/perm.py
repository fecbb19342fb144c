"""Permutations of {0, ..., n-1}.

Products are read left to right: ``p * q`` first applies ``p`` and then ``q``,
so ``(p * q)(i) == q(p(i))``.  This matches exponent notation, where the image
of a point ``a`` under ``pq`` is ``(a^p)^q``.
"""
from __future__ import annotations

import re
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "Permutation",
    "compose",
    "order",
    "cycle_lengths",
    "is_derangement",
    "is_semiregular",
]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Permutation:
    """An immutable bijection on ``{0, ..., degree-1}``."""

    __slots__ = ("_images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        n = len(images)
        if n < 1:
            raise ValueError("a permutation needs degree >= 1")
        seen = bytearray(n)
        for v in images:
            if v < 0 or v >= n or seen[v]:
                raise ValueError(f"not a permutation of 0..{n - 1}: {images!r}")
            seen[v] = 1
        self._images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> "Permutation":
        # skips validation; callers guarantee a bijection
        p = object.__new__(cls)
        p._images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise ValueError("degree must be >= 1")
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        images = list(range(degree))
        touched: set[int] = set()
        for cyc in cycles:
            cyc = [int(c) for c in cyc]
            for a in cyc:
                if a < 0 or a >= degree:
                    raise ValueError(f"point {a} outside 0..{degree - 1}")
                if a in touched:
                    raise ValueError(f"point {a} appears in more than one cycle")
                touched.add(a)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls._trusted(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> "Permutation":
        """Parse cycle notation ``"(0 1 2)(3 4)"`` or an image list ``"2 0 1 4 3"``."""
        text = text.strip()
        if text.startswith("("):
            cycles = []
            rest = _CYCLE_RE.sub("", text).strip()
            if rest:
                raise ValueError(f"could not parse cycle notation {text!r}")
            for body in _CYCLE_RE.findall(text):
                body = body.replace(",", " ").split()
                if body:
                    cycles.append([int(x) for x in body])
            top = max((max(c) for c in cycles), default=0) + 1
            if degree is None:
                degree = top
            elif degree < top:
                raise ValueError(f"cycle point {top - 1} exceeds degree {degree}")
            return cls.from_cycles(cycles, degree)
        images = [int(x) for x in text.replace(",", " ").split()]
        if degree is not None and len(images) != degree:
            raise ValueError(f"expected {degree} images, got {len(images)}")
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self._images)

    @property
    def images(self) -> tuple[int, ...]:
        return self._images

    def __call__(self, i: int) -> int:
        return self._images[i]

    def __getitem__(self, i: int) -> int:
        return self._images[i]

    def __len__(self) -> int:
        return len(self._images)

    def __iter__(self):
        return iter(self._images)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Permutation):
            return self._images == other._images
        return NotImplemented

    def __lt__(self, other: "Permutation") -> bool:
        return self._images < other._images

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return result

    def inverse(self) -> "Permutation":
        inv = [0] * len(self._images)
        for i, v in enumerate(self._images):
            inv[v] = i
        return Permutation._trusted(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self._images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = bytearray(self.degree)
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = 1
            j = self._images[start]
            while j != start:
                seen[j] = 1
                cyc.append(j)
                j = self._images[j]
            if include_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def image_string(self) -> str:
        return " ".join(map(str, self._images))

    def __str__(self) -> str:
        return self.image_string()

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()}, degree={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return the permutation ``i -> q(p(i))``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {q.degree}")
    qi = q.images
    return Permutation._trusted(tuple([qi[i] for i in p.images]))


def cycle_lengths(p: Permutation) -> list[int]:
    """Orbit sizes of <p>, fixed points included, in decreasing order."""
    return sorted((len(c) for c in p.cycles(include_fixed=True)), reverse=True)


def order(p: Permutation) -> int:
    return reduce(_lcm, cycle_lengths(p), 1)


def is_derangement(p: Permutation) -> bool:
    return all(i != v for i, v in enumerate(p.images))


def is_semiregular(p: Permutation) -> bool:
    """True when every cycle of ``p`` has the same length (the identity included)."""
    return len(set(cycle_lengths(p))) == 1
