"""Finite orthosets.

An orthoset is a finite set with a symmetric, irreflexive binary relation
(orthogonality).  Everything downstream is built on three operations here:
perp (the common orthocomplement of a subset), double-perp closure, and the
enumeration of the orthoclosed sets, which form a complete ortholattice.

Subsets are plain frozensets of element indices over a fixed parent
orthoset.  The canonical order on subsets, used everywhere a deterministic
enumeration is promised, is (cardinality, lexicographic on sorted indices).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Iterator

from .config import automorphism_bound, clique_budget, family_budget
from .errors import BudgetExceededError, InputError, InvalidSubsetError

Subset = frozenset[int]


def subset_key(s: Subset) -> tuple[int, tuple[int, ...]]:
    """Canonical sort key: cardinality first, then sorted index tuple."""
    return (len(s), tuple(sorted(s)))


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome of a check plus a witness.

    For failed universal claims the witness is a counterexample; for
    positive existential claims it is a certificate.  `note` carries
    convention flags (e.g. trivial cases decided by definition).
    """

    holds: bool
    witness: Any = None
    note: str | None = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass
class PropertyReport:
    """Bundle of per-predicate verdicts for one orthoset."""

    name: str
    n: int
    rank: int
    point_closed: Verdict
    irreducible: Verdict
    dacey: Verdict
    sasaki_naive: Verdict
    sasaki_reduced: Verdict
    transitive: Verdict | None  # None when |X| exceeds the search bound


@dataclass(frozen=True)
class Orthoset:
    """Immutable finite orthoset: labels plus adjacency (orthogonality) sets."""

    labels: tuple[str, ...]
    adj: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        n = len(self.labels)
        if len(self.adj) != n:
            raise InputError("adjacency length does not match element count")
        seen: set[str] = set()
        for lab in self.labels:
            if not isinstance(lab, str) or not lab:
                raise InputError(f"element labels must be nonempty strings, got {lab!r}")
            if lab in seen:
                raise InputError(f"duplicate element label {lab!r}")
            seen.add(lab)
        for i, nb in enumerate(self.adj):
            if i in nb:
                raise InputError(f"orthogonality must be irreflexive, {self.labels[i]!r} is orthogonal to itself")
            for j in nb:
                if not 0 <= j < n:
                    raise InputError("adjacency index out of range")
                if i not in self.adj[j]:
                    raise InputError("orthogonality must be symmetric")

    # ---------------------------------------------------------------- build

    @classmethod
    def build(cls, labels: Iterable[str], pairs: Iterable[tuple[str, str]]) -> "Orthoset":
        """Build from labels and orthogonal label pairs."""
        labs = tuple(labels)
        index = {lab: i for i, lab in enumerate(labs)}
        if len(index) != len(labs):
            raise InputError("duplicate element label")
        nbrs: list[set[int]] = [set() for _ in labs]
        for a, b in pairs:
            if a not in index:
                raise InputError(f"unknown element label {a!r} in orthogonal pair")
            if b not in index:
                raise InputError(f"unknown element label {b!r} in orthogonal pair")
            if a == b:
                raise InputError(f"self-orthogonal pair [{a!r}, {b!r}] rejected")
            nbrs[index[a]].add(index[b])
            nbrs[index[b]].add(index[a])
        return cls(labs, tuple(frozenset(s) for s in nbrs))

    @classmethod
    def from_json(cls, doc: Any) -> "Orthoset":
        """Parse the orthoset document format (fixture wrappers accepted)."""
        if isinstance(doc, dict) and "payload" in doc:
            if doc.get("kind") not in (None, "orthoset"):
                raise InputError(f"fixture kind {doc.get('kind')!r} is not an orthoset")
            doc = doc["payload"]
        if not isinstance(doc, dict):
            raise InputError("orthoset document must be a JSON object")
        elements = doc.get("elements")
        pairs = doc.get("orthogonal")
        if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
            raise InputError("'elements' must be a list of strings")
        if not isinstance(pairs, list):
            raise InputError("'orthogonal' must be a list of pairs")
        checked: list[tuple[str, str]] = []
        for p in pairs:
            if not isinstance(p, list) or len(p) != 2 or not all(isinstance(x, str) for x in p):
                raise InputError(f"orthogonal pair {p!r} must be a two-element list of labels")
            checked.append((p[0], p[1]))
        return cls.build(elements, checked)

    def to_json(self, name: str = "orthoset") -> dict[str, Any]:
        """Document form; pairs sorted lexicographically for determinism."""
        pairs = sorted(
            [sorted((self.labels[i], self.labels[j])) for i in range(self.n) for j in self.adj[i] if i < j]
        )
        return {"name": name, "elements": list(self.labels), "orthogonal": pairs}

    # --------------------------------------------------------------- basics

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def universe(self) -> Subset:
        return frozenset(range(self.n))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown element label {label!r}") from None

    def subset(self, labels: Iterable[str]) -> Subset:
        return frozenset(self.index(lab) for lab in labels)

    def labels_of(self, s: Subset) -> tuple[str, ...]:
        self._check(s)
        return tuple(self.labels[i] for i in sorted(s))

    def _check(self, s: Subset) -> None:
        for i in s:
            if not isinstance(i, int) or not 0 <= i < self.n:
                raise InvalidSubsetError(f"subset index {i!r} out of range for |X| = {self.n}")

    def orthogonal(self, i: int, j: int) -> bool:
        self._check(frozenset((i, j)))
        return j in self.adj[i]

    # ------------------------------------------------------------- perp ops

    def perp(self, s: Subset) -> Subset:
        """Common orthocomplement {x : x is orthogonal to every element of s}.

        perp of the empty set is the whole universe.
        """
        self._check(s)
        out = set(range(self.n))
        for i in s:
            out &= self.adj[i]
            if not out:
                break
        return frozenset(out)

    def closure(self, s: Subset) -> tuple[Subset, bool]:
        """Double perp of s, plus a flag telling whether s was already closed."""
        c = self.perp(self.perp(s))
        return c, c == frozenset(s)

    def is_orthoclosed(self, s: Subset) -> bool:
        return self.closure(s)[1]

    def orthoclosed_family(self, budget: int | None = None) -> list[Subset]:
        """All orthoclosed sets, in canonical order.

        Every orthoclosed set is an intersection of single-element perps
        (the empty intersection being X), so the family is the closure of
        {X} under intersection with the point perps.
        """
        limit = family_budget(budget)
        universe = self.universe
        point_perps = [self.adj[x] for x in range(self.n)]
        family: set[Subset] = {universe}
        frontier: list[Subset] = [universe]
        while frontier:
            fresh: list[Subset] = []
            for member in frontier:
                for p in point_perps:
                    s = member & p
                    if s not in family:
                        family.add(s)
                        if len(family) > limit:
                            raise BudgetExceededError(
                                f"orthoclosed family exceeds budget of {limit} sets"
                            )
                        fresh.append(s)
            frontier = fresh
        return sorted(family, key=subset_key)

    # ---------------------------------------------------------- perp-sets

    def maximal_perp_sets(self, within: Subset | None = None, budget: int | None = None) -> list[Subset]:
        """Maximal sets of pairwise-orthogonal elements inside `within`.

        Bron-Kerbosch with pivoting on the orthogonality graph restricted
        to `within` (default: the whole universe).  Output is in canonical
        order.  The empty orthoset has the empty set as its one maximal
        perp-set.
        """
        if within is None:
            w: set[int] = set(range(self.n))
        else:
            self._check(within)
            w = set(within)
        limit = clique_budget(budget)
        adj = [self.adj[i] & w for i in range(self.n)]
        out: list[Subset] = []

        def expand(r: list[int], p: set[int], x: set[int]) -> None:
            if not p and not x:
                out.append(frozenset(r))
                if len(out) > limit:
                    raise BudgetExceededError(f"perp-set enumeration exceeds budget of {limit}")
                return
            # pivot of highest degree in p, smallest index breaking ties
            pivot = max(sorted(p | x), key=lambda v: len(adj[v] & p))
            for v in sorted(p - adj[pivot]):
                expand(r + [v], p & adj[v], x & adj[v])
                p = p - {v}
                x = x | {v}

        expand([], set(w), set())
        out.sort(key=subset_key)
        return out

    def perp_sets(self, within: Subset | None = None, budget: int | None = None) -> list[Subset]:
        """All perp-sets (the empty one included) inside `within`, canonical order."""
        if within is None:
            w = sorted(range(self.n))
        else:
            self._check(within)
            w = sorted(within)
        limit = clique_budget(budget)
        out: list[Subset] = []

        def extend(clique: list[int], candidates: list[int]) -> None:
            out.append(frozenset(clique))
            if len(out) > limit:
                raise BudgetExceededError(f"perp-set enumeration exceeds budget of {limit}")
            for k, v in enumerate(candidates):
                extend(clique + [v], [u for u in candidates[k + 1:] if u in self.adj[v]])

        extend([], w)
        out.sort(key=subset_key)
        return out

    def rank(self, budget: int | None = None) -> int:
        """Largest size of a perp-set; 0 for the empty orthoset."""
        return max(len(c) for c in self.maximal_perp_sets(budget=budget))

    # ------------------------------------------------------- structural checks

    def is_point_closed(self) -> Verdict:
        """Every singleton equals its double perp."""
        for x in range(self.n):
            c, closed = self.closure(frozenset((x,)))
            if not closed:
                return Verdict(False, witness=(self.labels[x], self.labels_of(c)))
        return Verdict(True)

    def is_irreducible(self) -> Verdict:
        """Connectivity of the non-orthogonality graph.

        Empty and singleton orthosets are irreducible by convention; the
        verdict carries a note in those trivial cases.
        """
        if self.n <= 1:
            return Verdict(True, note="trivial orthoset, irreducible by convention")
        comp = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in range(self.n):
                if v != u and v not in self.adj[u] and v not in comp:
                    comp.add(v)
                    stack.append(v)
        if len(comp) == self.n:
            return Verdict(True)
        return Verdict(False, witness=self.labels_of(frozenset(comp)))

    def is_transitive(self, bound: int | None = None) -> Verdict:
        """For every ordered pair (e, f): an automorphism sending e to f
        while fixing every element orthogonal to both, found by backtracking.

        Raises BudgetExceededError when |X| exceeds the configured bound.
        """
        limit = automorphism_bound(bound)
        if self.n > limit:
            raise BudgetExceededError(
                f"transitivity search limited to {limit} elements, |X| = {self.n}"
            )
        certificates: dict[tuple[str, str], dict[str, str]] = {}
        for e in range(self.n):
            for f in range(self.n):
                if e == f:
                    continue  # identity settles the diagonal
                tau = self._automorphism_fixing(e, f)
                if tau is None:
                    return Verdict(False, witness=(self.labels[e], self.labels[f]))
                certificates[(self.labels[e], self.labels[f])] = {
                    self.labels[i]: self.labels[tau[i]] for i in range(self.n)
                }
        return Verdict(True, witness=certificates or None)

    def _automorphism_fixing(self, e: int, f: int) -> list[int] | None:
        """Adjacency-preserving bijection with tau(e) = f, fixing adj[e] & adj[f]."""
        n = self.n
        deg = [len(a) for a in self.adj]
        img: list[int] = [-1] * n
        used = [False] * n

        def consistent(u: int, v: int) -> bool:
            if deg[u] != deg[v]:
                return False
            for w in range(n):
                if img[w] >= 0 and (w in self.adj[u]) != (img[w] in self.adj[v]):
                    return False
            return True

        def place(u: int, v: int) -> bool:
            if img[u] >= 0:
                return img[u] == v
            if used[v] or not consistent(u, v):
                return False
            img[u] = v
            used[v] = True
            return True

        if not place(e, f):
            return None
        for x in sorted(self.adj[e] & self.adj[f]):
            if not place(x, x):
                return None

        rest = [u for u in range(n) if img[u] < 0]

        def search(k: int) -> bool:
            if k == len(rest):
                return True
            u = rest[k]
            for v in range(n):
                if not used[v] and consistent(u, v):
                    img[u] = v
                    used[v] = True
                    if search(k + 1):
                        return True
                    img[u] = -1
                    used[v] = False
            return False

        return img if search(0) else None

    # ----------------------------------------------------------------- misc

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.n))
