"""Matched alphabets, words and exact normal forms for a small zoo of groups.

Words are tuples of nonzero ints: ``+i`` is generator ``i`` (1-based) and
``-i`` its formal inverse.  Group elements are always represented by their
canonical word, which is the shortlex-least geodesic representative under the
letter order ``a < A < b < B < ...``.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Word = tuple


class ForeignLetter(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class OutOfBall(ValueError):
    pass


def letter_key(letter: int) -> int:
    return 2 * (abs(letter) - 1) + (letter < 0)


def shortlex_key(word: Sequence[int]) -> tuple:
    return (len(word), tuple(letter_key(l) for l in word))


def invert_word(word: Sequence[int]) -> Word:
    return tuple(-l for l in reversed(word))


def prefix(word: Sequence[int], n: int) -> Word:
    """First ``min(n, len(word))`` letters; prefixes saturate at the full word."""
    if n < 0:
        raise ValueError("prefix length must be nonnegative")
    return tuple(word[:n])


def free_reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for l in word:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


@dataclass(frozen=True)
class MatchedAlphabet:
    names: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def letters(self) -> tuple[int, ...]:
        """Signed letters in shortlex order: a, A, b, B, ..."""
        return tuple(s * i for i in range(1, self.size + 1) for s in (1, -1))

    def invert(self, letter: int) -> int:
        return -letter

    def contains(self, letter: int) -> bool:
        return isinstance(letter, int) and 1 <= abs(letter) <= self.size

    def format(self, word: Sequence[int]) -> str:
        if not word:
            return "1"
        return "".join(self.names[l - 1] if l > 0 else self.names[-l - 1].upper() for l in word)

    def parse(self, text: str) -> Word:
        """Parse ``"abA"``, ``"a b a^-1"`` or ``"a b a⁻¹"``; ``"1"`` or ``""`` is the identity."""
        s = text.replace("⁻¹", "^-1").replace(" ", "").replace("*", "")
        if s in ("", "1"):
            return ()
        lookup = {n: i + 1 for i, n in enumerate(self.names)}
        out = []
        i = 0
        while i < len(s):
            ch = s[i]
            if ch in lookup:
                l = lookup[ch]
            elif ch.islower() is False and ch.lower() in lookup:
                l = -lookup[ch.lower()]
            else:
                raise ForeignLetter(f"letter {ch!r} not in alphabet {''.join(self.names)}")
            i += 1
            if s.startswith("^-1", i):
                l = -l
                i += 3
            out.append(l)
        return tuple(out)


class GroupModel:
    """Base class: a finitely generated group with an exact normal form."""

    kind = "abstract"

    def __init__(self, names: Sequence[str]):
        self.alphabet = MatchedAlphabet(tuple(names))

    @property
    def rank(self) -> int:
        return self.alphabet.size

    @property
    def letters(self) -> tuple[int, ...]:
        return self.alphabet.letters

    def check_word(self, word: Sequence[int]) -> None:
        for l in word:
            if not self.alphabet.contains(l):
                raise ForeignLetter(f"letter {l!r} outside alphabet of rank {self.rank}")

    def normal_form(self, word: Sequence[int]) -> Word:
        self.check_word(word)
        return self._normal_form(tuple(word))

    def _normal_form(self, word: Word) -> Word:
        raise NotImplementedError

    def multiply(self, u: Sequence[int], v: Sequence[int]) -> Word:
        return self.normal_form(tuple(u) + tuple(v))

    def distance(self, x: Word, y: Word) -> int:
        """Word metric between two canonical words."""
        return len(self._normal_form(invert_word(x) + y))

    def length(self, word: Sequence[int]) -> int:
        return len(self.normal_form(word))

    @property
    def relations(self) -> list[Word]:
        return []

    def is_free(self) -> bool:
        return False

    def format(self, word: Sequence[int]) -> str:
        return self.alphabet.format(word)

    def parse(self, text: str) -> Word:
        return self.alphabet.parse(text)


class FreeGroup(GroupModel):
    kind = "free"

    def __init__(self, rank: int, names: Sequence[str] | None = None):
        if names is None:
            names = "abcdefghijklmnopqrstuvwxyz"[:rank]
        super().__init__(names)

    def _normal_form(self, word):
        return free_reduce(word)

    def distance(self, x, y):
        # canonical words are reduced, so |x^-1 y| = |x| + |y| - 2|x ^ y|
        k = 0
        for p, q in zip(x, y):
            if p != q:
                break
            k += 1
        return len(x) + len(y) - 2 * k

    def is_free(self):
        return True

    def __repr__(self):
        return f"FreeGroup({self.rank})"


class FiniteGroup(GroupModel):
    """Finite group given by a multiplication table and a generating subset.

    ``table[i][j]`` is the product of elements ``i`` and ``j``; ``generators``
    lists the element indices playing the role of the positive letters.
    """

    kind = "finite"

    def __init__(self, table: Sequence[Sequence[int]], generators: Sequence[int],
                 names: Sequence[str] | None = None):
        if names is None:
            names = "abcdefghijklmnopqrstuvwxyz"[: len(generators)]
        super().__init__(names)
        self.table = tuple(tuple(int(c) for c in row) for row in table)
        self.generators = tuple(int(g) for g in generators)
        n = len(self.table)
        if any(len(row) != n for row in self.table):
            raise ValueError("multiplication table must be square")
        ids = [e for e in range(n) if all(self.table[e][j] == j and self.table[j][e] == j for j in range(n))]
        if not ids:
            raise ValueError("multiplication table has no identity")
        self.identity = ids[0]
        self.inverse = []
        for i in range(n):
            inv = [j for j in range(n) if self.table[i][j] == self.identity]
            if not inv:
                raise ValueError(f"element {i} has no inverse")
            self.inverse.append(inv[0])
        self.canonical = self._canonical_words()

    def letter_element(self, letter: int) -> int:
        g = self.generators[abs(letter) - 1]
        return g if letter > 0 else self.inverse[g]

    def _canonical_words(self) -> dict[int, Word]:
        # BFS visiting letters in shortlex order yields shortlex-least geodesics
        canon = {self.identity: ()}
        queue = deque([self.identity])
        while queue:
            e = queue.popleft()
            for l in self.letters:
                f = self.table[e][self.letter_element(l)]
                if f not in canon:
                    canon[f] = canon[e] + (l,)
                    queue.append(f)
        if len(canon) != len(self.table):
            raise ValueError("generators do not generate the table")
        return canon

    def element(self, word: Sequence[int]) -> int:
        e = self.identity
        for l in word:
            e = self.table[e][self.letter_element(l)]
        return e

    def _normal_form(self, word):
        return self.canonical[self.element(word)]

    @property
    def relations(self):
        rels = []
        for e, w in sorted(self.canonical.items(), key=lambda kv: shortlex_key(kv[1])):
            for i in range(1, self.rank + 1):
                target = self.canonical[self.table[e][self.letter_element(i)]]
                rel = free_reduce(w + (i,) + invert_word(target))
                if rel:
                    rels.append(rel)
        return rels

    def associativity_witness(self):
        """First triple (i, j, k) with (ij)k != i(jk), or None."""
        t = self.table
        n = len(t)
        for i, j, k in itertools.product(range(n), repeat=3):
            if t[t[i][j]][k] != t[i][t[j][k]]:
                return (i, j, k)
        return None

    def __repr__(self):
        return f"FiniteGroup(order={len(self.table)})"


def _shift(word: Word, offset: int) -> Word:
    return tuple(l + offset if l > 0 else l - offset for l in word)


class DirectProduct(GroupModel):
    """Direct product of models; generators of different factors commute."""

    kind = "direct"

    def __init__(self, factors: Sequence[GroupModel]):
        self.factors = tuple(factors)
        self.offsets = tuple(itertools.accumulate([0] + [f.rank for f in self.factors[:-1]]))
        names = [n for f in self.factors for n in f.alphabet.names]
        super().__init__(names)

    def _factor_of(self, letter: int) -> int:
        g = abs(letter)
        for i in range(len(self.factors) - 1, -1, -1):
            if g > self.offsets[i]:
                return i
        raise ForeignLetter(letter)

    def _normal_form(self, word):
        parts: list[list[int]] = [[] for _ in self.factors]
        for l in word:
            i = self._factor_of(l)
            parts[i].append(_shift((l,), -self.offsets[i])[0])
        out: tuple = ()
        for i, f in enumerate(self.factors):
            out += _shift(f._normal_form(tuple(parts[i])), self.offsets[i])
        return out

    @property
    def relations(self):
        rels = []
        for i, f in enumerate(self.factors):
            rels.extend(_shift(r, self.offsets[i]) for r in f.relations)
        for i, j in itertools.combinations(range(len(self.factors)), 2):
            for a in range(1, self.factors[i].rank + 1):
                for b in range(1, self.factors[j].rank + 1):
                    a_, b_ = a + self.offsets[i], b + self.offsets[j]
                    rels.append((a_, b_, -a_, -b_))
        return rels

    def __repr__(self):
        return f"DirectProduct({', '.join(map(repr, self.factors))})"


class FreeProduct(GroupModel):
    """Free product of finite groups with alternating-syllable normal form."""

    kind = "free_product"

    def __init__(self, factors: Sequence[FiniteGroup]):
        self.factors = tuple(factors)
        self.offsets = tuple(itertools.accumulate([0] + [f.rank for f in self.factors[:-1]]))
        names = [n for f in self.factors for n in f.alphabet.names]
        super().__init__(names)

    def _factor_of(self, letter: int) -> int:
        g = abs(letter)
        for i in range(len(self.factors) - 1, -1, -1):
            if g > self.offsets[i]:
                return i
        raise ForeignLetter(letter)

    def _normal_form(self, word):
        stack: list[list[int]] = []  # [factor, element]
        for l in word:
            i = self._factor_of(l)
            f = self.factors[i]
            g = f.letter_element(_shift((l,), -self.offsets[i])[0])
            if stack and stack[-1][0] == i:
                e = f.table[stack[-1][1]][g]
                if e == f.identity:
                    stack.pop()
                else:
                    stack[-1][1] = e
            else:
                stack.append([i, g])
        out: tuple = ()
        for i, e in stack:
            out += _shift(self.factors[i].canonical[e], self.offsets[i])
        return out

    @property
    def relations(self):
        return [_shift(r, self.offsets[i]) for i, f in enumerate(self.factors) for r in f.relations]

    def __repr__(self):
        return f"FreeProduct({', '.join(map(repr, self.factors))})"


def cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


@dataclass
class ValidationReport:
    passed: bool = True
    checked_relations: int = 0
    failures: list = field(default_factory=list)

    def fail(self, kind: str, witness) -> None:
        self.passed = False
        self.failures.append({"check": kind, "witness": witness})


def all_words(model: GroupModel, max_length: int):
    """Every word over the signed alphabet of length <= max_length, shortlex order."""
    for n in range(max_length + 1):
        yield from itertools.product(model.letters, repeat=n)


def bfs_lengths(model: GroupModel, radius: int) -> dict:
    """Breadth-first distances from the identity, vertices keyed by normal form."""
    dist = {(): 0}
    frontier = [()]
    for d in range(1, radius + 1):
        nxt = []
        for w in frontier:
            for l in model.letters:
                v = model.normal_form(w + (l,))
                if v not in dist:
                    dist[v] = d
                    nxt.append(v)
        frontier = nxt
    return dist


def validate_relations(model: GroupModel, sample_length: int = 3, geodesy_radius: int = 4) -> ValidationReport:
    """Check relations, normal-form idempotence/compatibility, table associativity
    and that normal-form length agrees with breadth-first distance."""
    report = ValidationReport()
    for rel in model.relations:
        report.checked_relations += 1
        if model.normal_form(rel):
            report.fail("relation", model.format(rel))
    finite = [model] if isinstance(model, FiniteGroup) else [
        f for f in getattr(model, "factors", ()) if isinstance(f, FiniteGroup)]
    for f in finite:
        w = f.associativity_witness()
        if w is not None:
            report.fail("associativity", w)
    words = list(all_words(model, sample_length))
    for w in words:
        nf = model.normal_form(w)
        if model.normal_form(nf) != nf:
            report.fail("idempotence", model.format(w))
    short = [w for w in words if len(w) <= max(1, sample_length // 2 + 1)]
    for u, v in itertools.product(short, repeat=2):
        if model.normal_form(u + v) != model.normal_form(model.normal_form(u) + model.normal_form(v)):
            report.fail("concatenation", (model.format(u), model.format(v)))
            break
    for w, d in bfs_lengths(model, geodesy_radius).items():
        if len(w) != d:
            report.fail("geodesy", model.format(w))
    return report
