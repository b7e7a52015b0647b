"""
Directed graphs with one circuit and finitely many branches.

The vertex set is ``{x_1, ..., x_kappa}`` (the circuit) together with the
branch vertices ``x^r_{i,j}`` for ``r`` in 1..kappa, ``i`` in 1..eta_r and
``j >= 1``. The parent map sends ``x^r_{i,j+1}`` to ``x^r_{i,j}``, the branch
root ``x^r_{i,1}`` to ``x_r``, and rotates the circuit as
``x_t -> x_{t-1}``, ``x_1 -> x_kappa``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Iterator

from .errors import DomainError, SpecValidationError


def _check_kappa(kappa: int):
    if kappa < 1:
        raise DomainError(f"circuit length must be positive, got {kappa}")


def phi2(p: int, kappa: int) -> int:
    """
    Returns the unique r in 1..kappa with p congruent to r modulo kappa.

    Examples
    --------
    >>> phi2(4, 3), phi2(3, 3), phi2(0, 3)
    (1, 3, 3)

    """
    _check_kappa(kappa)
    return (p - 1) % kappa + 1


def phi1(p: int, kappa: int) -> int:
    """
    Returns the quotient q with p = q * kappa + phi2(p, kappa).

    Examples
    --------
    >>> phi1(4, 3), phi1(3, 3), phi1(0, 3)
    (1, 0, -1)

    """
    return (p - phi2(p, kappa)) // kappa


@total_ordering
class Vertex:
    """
    Base class of graph vertices.

    Vertices are ordered circuit first, then branch vertices
    lexicographically by (r, i, j). Their string form is ``c:r`` for
    circuit vertices and ``b:r:i:j`` for branch vertices.
    """

    __slots__ = ()

    def sort_key(self) -> tuple[int, int, int, int]:
        raise NotImplementedError

    def __lt__(self, other) -> bool:
        if not isinstance(other, Vertex):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    @staticmethod
    def parse(text: str) -> Vertex:
        """
        Parses the string form of a vertex.

        Examples
        --------
        >>> Vertex.parse("c:2")
        Circuit(r=2)
        >>> Vertex.parse("b:1:2:5")
        Branch(r=1, i=2, j=5)

        """
        parts = text.strip().split(":")
        try:
            numbers = [int(part) for part in parts[1:]]
        except ValueError:
            raise DomainError(f"malformed vertex: {text!r}") from None
        if parts[0] == "c" and len(numbers) == 1:
            return Circuit(*numbers)
        if parts[0] == "b" and len(numbers) == 3:
            return Branch(*numbers)
        raise DomainError(f"malformed vertex: {text!r}")


@dataclass(frozen=True)
class Circuit(Vertex):
    """The circuit vertex x_r."""

    r: int

    def sort_key(self) -> tuple[int, int, int, int]:
        return (0, self.r, 0, 0)

    def __str__(self) -> str:
        return f"c:{self.r}"


@dataclass(frozen=True)
class Branch(Vertex):
    """The branch vertex x^r_{i,j}, at distance j from the circuit vertex x_r."""

    r: int
    i: int
    j: int

    def sort_key(self) -> tuple[int, int, int, int]:
        return (1, self.r, self.i, self.j)

    def __str__(self) -> str:
        return f"b:{self.r}:{self.i}:{self.j}"


@dataclass(frozen=True)
class GraphSpec:
    """
    A one-circuit graph: the circuit length kappa and the number of branches
    eta[r - 1] attached at each circuit vertex x_r.

    Examples
    --------
    >>> g = GraphSpec(3, (2, 0, 0))
    >>> g.parent(Circuit(1))
    Circuit(r=3)
    >>> g.iterate(Branch(1, 1, 2), 2)
    Circuit(r=1)
    >>> sorted(g.preimage(Circuit(1), 1))
    [Circuit(r=2), Branch(r=1, i=1, j=1), Branch(r=1, i=2, j=1)]

    """

    kappa: int
    eta: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "eta", tuple(self.eta))
        if isinstance(self.kappa, bool) or not isinstance(self.kappa, int) or self.kappa < 1:
            raise SpecValidationError(f"kappa must be a positive integer, got {self.kappa!r}")
        if len(self.eta) != self.kappa:
            raise SpecValidationError(
                f"eta has {len(self.eta)} entries but kappa is {self.kappa}"
            )
        for r, count in enumerate(self.eta, start=1):
            if isinstance(count, bool) or not isinstance(count, int) or count < 0:
                raise SpecValidationError(
                    f"eta_{r} must be a finite nonnegative integer, got {count!r}"
                )
        if not any(self.eta):
            raise SpecValidationError("at least one circuit vertex must carry a branch")

    def contains(self, v: Vertex) -> bool:
        if isinstance(v, Circuit):
            return 1 <= v.r <= self.kappa
        if isinstance(v, Branch):
            return 1 <= v.r <= self.kappa and 1 <= v.i <= self.eta[v.r - 1] and v.j >= 1
        return False

    def require(self, v: Vertex):
        """Raises DomainError unless v is a vertex of this graph."""
        if not self.contains(v):
            raise DomainError(f"{v} is not a vertex of {self}")

    def circuit_vertices(self) -> list[Circuit]:
        return [Circuit(r) for r in range(1, self.kappa + 1)]

    def branches(self) -> list[tuple[int, int]]:
        """Returns every branch as its (r, i) pair, in canonical order."""
        return [(r, i) for r in range(1, self.kappa + 1) for i in range(1, self.eta[r - 1] + 1)]

    def vertices(self, depth: int) -> list[Vertex]:
        """Returns the circuit and all branch vertices with j <= depth, in order."""
        window: list[Vertex] = self.circuit_vertices()
        for r, i in self.branches():
            window.extend(Branch(r, i, j) for j in range(1, depth + 1))
        return window

    def parent(self, v: Vertex) -> Vertex:
        """Returns phi(v)."""
        self.require(v)
        if isinstance(v, Branch):
            return Branch(v.r, v.i, v.j - 1) if v.j > 1 else Circuit(v.r)
        return Circuit(phi2(v.r - 1, self.kappa))

    def iterate(self, v: Vertex, p: int) -> Vertex:
        """Returns phi^p(v) in closed form."""
        self.require(v)
        if p < 0:
            raise DomainError(f"iteration count must be nonnegative, got {p}")
        if isinstance(v, Branch):
            if v.j > p:
                return Branch(v.r, v.i, v.j - p)
            return Circuit(phi2(v.r + v.j - p, self.kappa))
        return Circuit(phi2(v.r - p, self.kappa))

    def preimage(self, v: Vertex, p: int) -> frozenset[Vertex]:
        """
        Returns the atom phi^{-p}({v}), the set of all y with phi^p(y) = v.

        A branch vertex has the single preimage further out on its branch. A
        circuit vertex x_r has the circuit vertex p steps ahead of it plus
        every branch vertex x^s_{i,j} with j <= p that reaches x_r after
        p steps.
        """
        self.require(v)
        if p < 0:
            raise DomainError(f"preimage order must be nonnegative, got {p}")
        if p == 0:
            return frozenset((v,))
        if isinstance(v, Branch):
            return frozenset((Branch(v.r, v.i, v.j + p),))
        atom: set[Vertex] = {Circuit(phi2(p + v.r, self.kappa))}
        for j in range(1, p + 1):
            s = phi2(p + v.r - j, self.kappa)
            atom.update(Branch(s, i, j) for i in range(1, self.eta[s - 1] + 1))
        return frozenset(atom)

    def __str__(self) -> str:
        return f"GraphSpec(kappa={self.kappa}, eta={list(self.eta)})"


def partition_indices(kappa: int, p: int, k: int) -> list[frozenset[tuple[int, int]]]:
    """
    Splits the index set {1..kappa} x {1..p+k} by the circuit vertex each
    (s, j) lands on.

    Entry r - 1 of the result is the set of pairs (s, j) with
    phi2(p + k + r) = phi2(s + j); the entries are nonempty, pairwise disjoint
    and cover the whole index set.

    Examples
    --------
    >>> sorted(partition_indices(3, 2, 0)[0])
    [(1, 2), (2, 1)]

    """
    _check_kappa(kappa)
    if p < 1 or k < 0:
        raise DomainError(f"need p >= 1 and k >= 0, got p={p}, k={k}")
    return [
        frozenset(
            (s, j)
            for s in range(1, kappa + 1)
            for j in range(1, p + k + 1)
            if phi2(p + k + r, kappa) == phi2(s + j, kappa)
        )
        for r in range(1, kappa + 1)
    ]


def walk(graph: GraphSpec, v: Vertex, p: int) -> Iterator[Vertex]:
    """Yields v, phi(v), ..., phi^{p-1}(v) by single parent steps."""
    for _ in range(p):
        yield v
        v = graph.parent(v)
