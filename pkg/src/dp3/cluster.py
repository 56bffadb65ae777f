"""Seeds of the dP3 quiver: mutation, tau-steps and symmetry actions."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .laurent import (
    IDENTITY,
    LaurentPolynomial,
    compose,
    invert_permutation,
    lp_div_exact,
    lp_permute,
    x,
)

# Arrows i -> j of the dP3 quiver, read off the superpotential terms.
DP3_ARROWS = (
    (3, 1), (1, 4), (4, 2), (2, 0), (0, 5), (5, 3),
    (3, 4), (4, 0), (0, 3),
    (1, 2), (2, 5), (5, 1),
)


def dp3_matrix() -> tuple:
    """Exchange matrix ``b[i][j] = #(i -> j) - #(j -> i)``."""
    b = [[0] * 6 for _ in range(6)]
    for i, j in DP3_ARROWS:
        b[i][j] += 1
        b[j][i] -= 1
    return tuple(tuple(row) for row in b)


def mutate_matrix(b: Sequence[Sequence[int]], k: int) -> tuple:
    n = len(b)
    out = [list(row) for row in b]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -b[i][j]
            elif b[i][k] * b[k][j] > 0:
                sign = 1 if b[i][k] > 0 else -1
                out[i][j] = b[i][j] + sign * b[i][k] * b[k][j]
    return tuple(tuple(row) for row in out)


def permute_matrix(b, perm) -> tuple:
    """Matrix of the quiver after sending vertex ``k`` to ``perm[k]``."""
    inv = invert_permutation(perm)
    n = len(b)
    return tuple(tuple(b[inv[i]][inv[j]] for j in range(n)) for i in range(n))


def transposition(a: int, b: int) -> tuple:
    p = list(IDENTITY)
    p[a], p[b] = b, a
    return tuple(p)


@dataclass(frozen=True)
class Seed:
    """Exchange matrix plus ordered cluster (entry ``k`` lives at vertex ``k``).

    ``counts[k]`` is the number of mutations performed at vertex ``k`` and
    ``labeling[k]`` is the initial-quiver label currently carried by vertex
    ``k``; the matrix always equals the initial one relabeled by it.
    """

    matrix: tuple
    vars: tuple
    counts: tuple = (0,) * 6
    labeling: tuple = IDENTITY

    def to_json(self) -> dict:
        return {
            "labeling": list(self.labeling),
            "matrix": [list(r) for r in self.matrix],
            "vars": [str(v) for v in self.vars],
            "counts": list(self.counts),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def unordered(self) -> frozenset:
        return frozenset(self.vars)

    def same_cluster(self, other: "Seed") -> bool:
        return sorted(self.vars, key=LaurentPolynomial.sort_key) == sorted(
            other.vars, key=LaurentPolynomial.sort_key
        )


def initial_seed() -> Seed:
    return Seed(dp3_matrix(), tuple(x(k) for k in range(6)))


def exchange_polynomials(b, vars_, k: int):
    """The two monomials of the exchange relation at ``k``."""
    incoming = LaurentPolynomial.one()
    outgoing = LaurentPolynomial.one()
    for j in range(len(vars_)):
        if b[j][k] > 0:
            incoming = incoming * vars_[j] ** b[j][k]
        elif b[k][j] > 0:
            outgoing = outgoing * vars_[j] ** b[k][j]
    return incoming, outgoing


def mutate(seed: Seed, k: int) -> Seed:
    """Mutation at vertex ``k``; NotDivisible would mean a broken Laurent step."""
    if not 0 <= k < 6:
        raise ValueError(f"vertex out of range: {k}")
    inc, out = exchange_polynomials(seed.matrix, seed.vars, k)
    new = lp_div_exact(inc + out, seed.vars[k])
    vars_ = seed.vars[:k] + (new,) + seed.vars[k + 1:]
    counts = seed.counts[:k] + (seed.counts[k] + 1,) + seed.counts[k + 1:]
    return Seed(mutate_matrix(seed.matrix, k), vars_, counts, seed.labeling)


def _pair(t: int) -> tuple:
    if t not in (1, 2, 3):
        raise ValueError(f"tau index must be 1, 2 or 3, got {t!r}")
    return 2 * t - 2, 2 * t - 1


def apply_tau(seed: Seed, t: int):
    """``tau_t = mu_{2t-2} mu_{2t-1}``; returns ``(seed, y, y')``.

    ``y`` comes from the first mutation (vertex ``2t-2``), ``y'`` from the
    second.
    """
    a, b = _pair(t)
    s1 = mutate(seed, a)
    s2 = mutate(s1, b)
    swap = transposition(a, b)
    # the quiver comes back with the pair's labels exchanged
    labeling = compose(seed.labeling, swap)
    s2 = Seed(s2.matrix, s2.vars, s2.counts, labeling)
    return s2, s2.vars[a], s2.vars[b]


def apply_tau_prime(seed: Seed, t: int) -> Seed:
    """``tau_t`` followed by swapping the two mutated entries back."""
    a, b = _pair(t)
    s, _, _ = apply_tau(seed, t)
    swap = transposition(a, b)
    vars_ = list(s.vars)
    vars_[a], vars_[b] = vars_[b], vars_[a]
    counts = list(s.counts)
    counts[a], counts[b] = counts[b], counts[a]
    return Seed(permute_matrix(s.matrix, swap), tuple(vars_), tuple(counts), compose(s.labeling, swap))


def act_symmetry(seed: Seed, alpha: Sequence[int]) -> Seed:
    """Entry ``k`` of the result is ``alpha(vars[alpha^-1(k)])``."""
    alpha = tuple(alpha)
    inv = invert_permutation(alpha)
    vars_ = tuple(lp_permute(seed.vars[inv[k]], alpha) for k in range(6))
    counts = tuple(seed.counts[inv[k]] for k in range(6))
    return Seed(permute_matrix(seed.matrix, alpha), vars_, counts, seed.labeling)


def parse_word(word) -> tuple:
    """``"1231"`` or a sequence of ints -> tuple of letters in {1,2,3}."""
    if isinstance(word, str):
        word = word.strip()
        if word and not set(word) <= set("123"):
            raise ValueError(f"tau-word must use only the letters 1, 2, 3: {word!r}")
        return tuple(int(ch) for ch in word)
    letters = tuple(int(t) for t in word)
    if any(t not in (1, 2, 3) for t in letters):
        raise ValueError(f"tau-word must use only the letters 1, 2, 3: {word!r}")
    return letters


@dataclass
class MutationRecord:
    word: tuple
    pairs: list = field(default_factory=list)


def run_word(word, seed: Seed | None = None, prime: bool = False):
    """Apply a tau-word; returns ``(final seed, MutationRecord)``."""
    seed = initial_seed() if seed is None else seed
    letters = parse_word(word)
    record = MutationRecord(letters)
    for t in letters:
        if prime:
            a, b = _pair(t)
            seed = apply_tau_prime(seed, t)
            record.pairs.append((seed.vars[b], seed.vars[a]))
        else:
            seed, y, yp = apply_tau(seed, t)
            record.pairs.append((y, yp))
    return seed, record


class SeedCache:
    """Memoized seeds along tau-words, keyed by word prefix."""

    def __init__(self):
        self._cache = {(): initial_seed()}
        self._last = {}

    def seed(self, word) -> Seed:
        letters = parse_word(word)
        return self._walk(letters)[0]

    def last_pair(self, word):
        """``(y, y')`` produced by the final letter of ``word``."""
        letters = parse_word(word)
        if not letters:
            raise ValueError("empty word produces no cluster variables")
        self._walk(letters)
        return self._last[letters]

    def _walk(self, letters):
        n = len(letters)
        while n and letters[:n] not in self._cache:
            n -= 1
        seed = self._cache[letters[:n]]
        for m in range(n, len(letters)):
            seed, y, yp = apply_tau(seed, letters[m])
            key = letters[: m + 1]
            self._cache[key] = seed
            self._last[key] = (y, yp)
        return seed, letters


def evaluate_word(word, point):
    """Run a tau-word on numbers instead of polynomials.

    Parameters
    ----------
    word : str or sequence of int
    point : sequence of six nonzero numbers (Fractions for exactness)
        Values of the initial variables.

    Returns
    -------
    values : tuple
        The ordered cluster at the end of the word, evaluated at ``point``.
    last : tuple or None
        ``(y, y')`` from the final letter, evaluated.
    """
    b = dp3_matrix()
    vals = list(point)
    last = None
    for t in parse_word(word):
        pair = _pair(t)
        for k in pair:
            inc = outg = 1
            for j in range(6):
                if b[j][k] > 0:
                    inc *= vals[j] ** b[j][k]
                elif b[k][j] > 0:
                    outg *= vals[j] ** b[k][j]
            vals[k] = (inc + outg) / vals[k]
            b = mutate_matrix(b, k)
        last = (vals[pair[0]], vals[pair[1]])
    return tuple(vals), last
