"""Reduced ordered binary decision diagrams.

Nodes live in a :class:`Manager` and are plain integers; ``0`` and ``1``
are the terminals.  Variables are non-negative integers and the variable
order is numeric order, so callers control the order by how they number
variables.  Hash-consing makes every function have exactly one node, which
is what the fixpoint engines rely on to detect stability.

A manager is not thread-safe.  Use one per analysis run.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

FALSE = 0
TRUE = 1
_LEAF = 1 << 30


class Manager:
    def __init__(self) -> None:
        self._var: list[int] = [_LEAF, _LEAF]
        self._lo: list[int] = [FALSE, TRUE]
        self._hi: list[int] = [FALSE, TRUE]
        self._unique: dict[tuple[int, int, int], int] = {}
        self._ite_cache: dict[tuple[int, int, int], int] = {}

    def __len__(self) -> int:
        return len(self._var)

    # -- structure -------------------------------------------------------

    def mk(self, v: int, lo: int, hi: int) -> int:
        if lo == hi:
            return lo
        key = (v, lo, hi)
        node = self._unique.get(key)
        if node is None:
            node = len(self._var)
            self._var.append(v)
            self._lo.append(lo)
            self._hi.append(hi)
            self._unique[key] = node
        return node

    def var(self, v: int) -> int:
        if v < 0 or v >= _LEAF:
            raise ValueError(f"variable index out of range: {v}")
        return self.mk(v, FALSE, TRUE)

    def top_var(self, f: int) -> int:
        return self._var[f]

    def low(self, f: int) -> int:
        return self._lo[f]

    def high(self, f: int) -> int:
        return self._hi[f]

    def is_terminal(self, f: int) -> bool:
        return f <= TRUE

    # -- connectives -----------------------------------------------------

    def ite(self, f: int, g: int, h: int) -> int:
        if f == TRUE:
            return g
        if f == FALSE:
            return h
        if g == h:
            return g
        if g == TRUE and h == FALSE:
            return f
        key = (f, g, h)
        hit = self._ite_cache.get(key)
        if hit is not None:
            return hit
        var = self._var
        top = min(var[f], var[g], var[h])
        f0, f1 = self._cofactors(f, top)
        g0, g1 = self._cofactors(g, top)
        h0, h1 = self._cofactors(h, top)
        r = self.mk(top, self.ite(f0, g0, h0), self.ite(f1, g1, h1))
        self._ite_cache[key] = r
        return r

    def _cofactors(self, f: int, v: int) -> tuple[int, int]:
        if self._var[f] == v:
            return self._lo[f], self._hi[f]
        return f, f

    def conj(self, f: int, g: int) -> int:
        return self.ite(f, g, FALSE)

    def disj(self, f: int, g: int) -> int:
        return self.ite(f, TRUE, g)

    def neg(self, f: int) -> int:
        return self.ite(f, FALSE, TRUE)

    def implies(self, f: int, g: int) -> int:
        return self.ite(f, g, TRUE)

    def iff(self, f: int, g: int) -> int:
        return self.ite(f, g, self.neg(g))

    def conj_all(self, fs: Iterable[int]) -> int:
        r = TRUE
        for f in fs:
            r = self.conj(r, f)
            if r == FALSE:
                break
        return r

    def disj_all(self, fs: Iterable[int]) -> int:
        r = FALSE
        for f in fs:
            r = self.disj(r, f)
            if r == TRUE:
                break
        return r

    # -- cofactors and quantification -----------------------------------

    def restrict(self, f: int, v: int, value: bool) -> int:
        memo: dict[int, int] = {}
        var, lo, hi = self._var, self._lo, self._hi

        def go(n: int) -> int:
            if var[n] > v:
                return n
            r = memo.get(n)
            if r is not None:
                return r
            if var[n] == v:
                r = hi[n] if value else lo[n]
            else:
                r = self.mk(var[n], go(lo[n]), go(hi[n]))
            memo[n] = r
            return r

        return go(f)

    def exists(self, f: int, v: int) -> int:
        return self.disj(self.restrict(f, v, False), self.restrict(f, v, True))

    def forall_classic(self, f: int, v: int) -> int:
        """Classical universal quantification; may leave Pos."""
        return self.conj(self.restrict(f, v, False), self.restrict(f, v, True))

    # -- renaming --------------------------------------------------------

    def rename(self, f: int, mapping: Mapping[int, int]) -> int:
        if not mapping:
            return f
        memo: dict[int, int] = {}
        var, lo, hi = self._var, self._lo, self._hi

        def go(n: int) -> int:
            if n <= TRUE:
                return n
            r = memo.get(n)
            if r is not None:
                return r
            v = var[n]
            r = self.ite(self.var(mapping.get(v, v)), go(hi[n]), go(lo[n]))
            memo[n] = r
            return r

        return go(f)

    # -- inspection ------------------------------------------------------

    def support(self, f: int) -> set[int]:
        seen: set[int] = set()
        out: set[int] = set()
        stack = [f]
        while stack:
            n = stack.pop()
            if n <= TRUE or n in seen:
                continue
            seen.add(n)
            out.add(self._var[n])
            stack.append(self._lo[n])
            stack.append(self._hi[n])
        return out

    def evaluate(self, f: int, assignment: Mapping[int, bool] | Sequence[bool]) -> bool:
        while f > TRUE:
            v = self._var[f]
            try:
                bit = assignment[v]
            except (IndexError, KeyError):
                raise ValueError(f"assignment does not cover variable {v}") from None
            f = self._hi[f] if bit else self._lo[f]
        return f == TRUE

    def holds_at_all_ones(self, f: int) -> bool:
        while f > TRUE:
            f = self._hi[f]
        return f == TRUE

    def node_count(self, f: int) -> int:
        seen: set[int] = set()
        stack = [f]
        while stack:
            n = stack.pop()
            if n in seen:
                continue
            seen.add(n)
            if n > TRUE:
                stack.append(self._lo[n])
                stack.append(self._hi[n])
        return len(seen)

    def primes(self, f: int) -> list[frozenset[tuple[int, bool]]]:
        """All prime implicants of ``f`` as sets of (variable, polarity) literals.

        Recursive cofactor decomposition: a prime of ``f`` either is a prime
        of ``f0 & f1`` or extends a prime of one cofactor with the matching
        literal on the top variable.
        """
        memo: dict[int, frozenset[frozenset[tuple[int, bool]]]] = {}

        def go(n: int) -> frozenset[frozenset[tuple[int, bool]]]:
            if n == FALSE:
                return frozenset()
            if n == TRUE:
                return frozenset([frozenset()])
            r = memo.get(n)
            if r is not None:
                return r
            v = self._var[n]
            f0, f1 = self._lo[n], self._hi[n]
            both = go(self.conj(f0, f1))
            out = set(both)
            out.update(p | {(v, False)} for p in go(f0) if p not in both)
            out.update(p | {(v, True)} for p in go(f1) if p not in both)
            r = frozenset(out)
            memo[n] = r
            return r

        return list(go(f))
