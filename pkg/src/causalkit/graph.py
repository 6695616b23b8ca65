"""Causal diagrams: DAGs, path enumeration, d-separation, back-door analysis.

A :class:`Dag` stores named nodes and directed edges, with the causal
reading that an edge ``U -> V`` means U can directly affect V.  On top of
that the module provides the graph-level machinery of causal
identification:

* simple-path enumeration in either edge orientation (:meth:`Dag.all_paths`),
* the d-separation blocking rules (:meth:`Dag.path_blocked`,
  :meth:`Dag.d_separated`): a fork or chain node blocks its path exactly
  when conditioned on, a collider blocks its path unless it or one of its
  descendants is conditioned on,
* back-door paths and the back-door criterion
  (:meth:`Dag.backdoor_paths`, :meth:`Dag.backdoor_satisfies`,
  :meth:`Dag.enumerate_backdoor_sets`).

Everything is immutable after construction and every operation is a pure
function of its inputs, so values can be shared freely across threads.
All orderings are deterministic: nodes iterate in insertion order, node
sets render lexicographically, path lists sort by length then node
sequence.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    CycleError,
    GraphError,
    GraphSyntaxError,
    PathLimitError,
    UnknownNodeError,
)

# all_paths-style enumeration is exponential; this tool targets desk-scale
# diagrams, so refuse anything bigger with a clear error.
MAX_PATH_ENUMERATION_NODES = 25


def _check_name(name: str) -> str:
    if not isinstance(name, str) or not name:
        raise GraphError(f"node name must be a nonempty string, got {name!r}")
    if any(ch.isspace() for ch in name):
        raise GraphError(f"node name must not contain whitespace: {name!r}")
    return name


@dataclass(frozen=True)
class Path:
    """A simple path traversing directed edges in either orientation.

    ``forward[i]`` is True when the step from ``nodes[i]`` to ``nodes[i+1]``
    follows the edge direction (``nodes[i] -> nodes[i+1]``) and False when
    it goes against it.
    """

    nodes: tuple[str, ...]
    forward: tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.nodes) < 2:
            raise GraphError("a path needs at least two nodes")
        if len(set(self.nodes)) != len(self.nodes):
            raise GraphError(f"path repeats a node: {self.nodes}")
        if len(self.forward) != len(self.nodes) - 1:
            raise GraphError("path needs one orientation per step")

    def is_collider(self, v: str) -> bool:
        """True iff both path arrows point into interior node ``v``."""
        if v not in self.nodes[1:-1]:
            raise GraphError(f"{v!r} is not an interior node of {self}")
        i = self.nodes.index(v)
        return self.forward[i - 1] and not self.forward[i]

    def interior(self) -> tuple[str, ...]:
        return self.nodes[1:-1]

    def reversed(self) -> "Path":
        return Path(
            nodes=tuple(reversed(self.nodes)),
            forward=tuple(not f for f in reversed(self.forward)),
        )

    def __str__(self) -> str:
        parts = [self.nodes[0]]
        for step, node in zip(self.forward, self.nodes[1:]):
            parts.append(" -> " if step else " <- ")
            parts.append(node)
        return "".join(parts)


class Dag:
    """Directed acyclic graph with named nodes.

    Edge endpoints not listed in ``nodes`` are declared automatically in
    order of first appearance.  Construction validates node names, rejects
    self-loops and duplicate edges, and proves acyclicity (raising
    :class:`CycleError` with a witness cycle otherwise).
    """

    def __init__(
        self,
        nodes: Iterable[str] = (),
        edges: Iterable[tuple[str, str]] = (),
    ):
        order: dict[str, None] = {}
        for name in nodes:
            order.setdefault(_check_name(name), None)
        edge_list: list[tuple[str, str]] = []
        edge_set: set[tuple[str, str]] = set()
        for tail, head in edges:
            _check_name(tail)
            _check_name(head)
            if tail == head:
                raise GraphError(f"self-loop on {tail!r}")
            if (tail, head) in edge_set:
                raise GraphError(f"duplicate edge {tail} -> {head}")
            order.setdefault(tail, None)
            order.setdefault(head, None)
            edge_list.append((tail, head))
            edge_set.add((tail, head))

        self._nodes: tuple[str, ...] = tuple(order)
        self._edges: tuple[tuple[str, str], ...] = tuple(edge_list)
        parents: dict[str, set[str]] = {n: set() for n in self._nodes}
        children: dict[str, set[str]] = {n: set() for n in self._nodes}
        for tail, head in edge_list:
            parents[head].add(tail)
            children[tail].add(head)
        self._parents = {n: frozenset(parents[n]) for n in self._nodes}
        self._children = {n: frozenset(children[n]) for n in self._nodes}
        self._topo: tuple[str, ...] = self._topological_order()
        self._descendants: dict[str, frozenset[str]] = self._all_descendants()

    # -- construction helpers ----------------------------------------

    def _topological_order(self) -> tuple[str, ...]:
        """Kahn's algorithm, lexicographic tie-break; CycleError on failure."""
        indegree = {n: len(self._parents[n]) for n in self._nodes}
        ready = [n for n in self._nodes if indegree[n] == 0]
        heapq.heapify(ready)
        out: list[str] = []
        while ready:
            n = heapq.heappop(ready)
            out.append(n)
            for child in sorted(self._children[n]):
                indegree[child] -= 1
                if indegree[child] == 0:
                    heapq.heappush(ready, child)
        if len(out) != len(self._nodes):
            leftover = {n for n in self._nodes if n not in set(out)}
            raise CycleError(self._witness_cycle(leftover))
        return tuple(out)

    def _witness_cycle(self, leftover: set[str]) -> tuple[str, ...]:
        # Every leftover node keeps an in-edge from another leftover node,
        # so walking parents must revisit a node; that loop is a cycle.
        walk = [min(leftover)]
        seen = {walk[0]: 0}
        while True:
            pred = min(p for p in self._parents[walk[-1]] if p in leftover)
            if pred in seen:
                loop = walk[seen[pred]:] + [pred]
                loop.reverse()  # walk followed parents; report edge direction
                return tuple(loop)
            seen[pred] = len(walk)
            walk.append(pred)

    def _all_descendants(self) -> dict[str, frozenset[str]]:
        desc: dict[str, set[str]] = {n: set() for n in self._nodes}
        for n in reversed(self._topo):
            for child in self._children[n]:
                desc[n].add(child)
                desc[n] |= desc[child]
        return {n: frozenset(s) for n, s in desc.items()}

    # -- basic queries -----------------------------------------------

    @property
    def nodes(self) -> tuple[str, ...]:
        return self._nodes

    @property
    def edges(self) -> tuple[tuple[str, str], ...]:
        return self._edges

    @property
    def topological_order(self) -> tuple[str, ...]:
        """Topological order with lexicographic tie-break."""
        return self._topo

    def __contains__(self, name: object) -> bool:
        return name in self._parents

    def __len__(self) -> int:
        return len(self._nodes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dag):
            return NotImplemented
        return self._nodes == other._nodes and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._nodes, self._edges))

    def __repr__(self) -> str:
        return f"Dag(nodes={list(self._nodes)!r}, edges={list(self._edges)!r})"

    def has_edge(self, tail: str, head: str) -> bool:
        self._require(tail)
        self._require(head)
        return head in self._children[tail]

    def _require(self, name: str) -> str:
        if name not in self._parents:
            raise UnknownNodeError(name)
        return name

    def parents(self, v: str) -> frozenset[str]:
        """All u with an edge u -> v."""
        return self._parents[self._require(v)]

    def children(self, v: str) -> frozenset[str]:
        """All w with an edge v -> w."""
        return self._children[self._require(v)]

    def descendants(self, v: str) -> frozenset[str]:
        """Nodes reachable from ``v`` by one or more forward edges (v excluded)."""
        return self._descendants[self._require(v)]

    def ancestors(self, v: str) -> frozenset[str]:
        """Nodes from which ``v`` is reachable by forward edges (v excluded)."""
        self._require(v)
        seen: set[str] = set()
        stack = list(self._parents[v])
        while stack:
            u = stack.pop()
            if u not in seen:
                seen.add(u)
                stack.extend(self._parents[u])
        return frozenset(seen)

    # -- path enumeration ----------------------------------------------

    def _guard_enumeration(self) -> None:
        if len(self._nodes) > MAX_PATH_ENUMERATION_NODES:
            raise PathLimitError(
                f"path enumeration is limited to graphs with at most "
                f"{MAX_PATH_ENUMERATION_NODES} nodes (this one has {len(self._nodes)})"
            )

    def all_paths(self, x: str, y: str) -> list[Path]:
        """Every simple path between ``x`` and ``y``, ignoring edge direction.

        Each step retains its orientation relative to the underlying edge.
        Results are sorted by length, then by node sequence.
        """
        self._require(x)
        self._require(y)
        if x == y:
            raise GraphError("path endpoints must differ")
        self._guard_enumeration()

        found: list[Path] = []
        nodes: list[str] = [x]
        steps: list[bool] = []
        on_path = {x}

        def extend(current: str) -> None:
            neighbors = [(w, True) for w in self._children[current]]
            neighbors += [(w, False) for w in self._parents[current]]
            for w, fwd in neighbors:
                if w in on_path:
                    continue
                nodes.append(w)
                steps.append(fwd)
                if w == y:
                    found.append(Path(tuple(nodes), tuple(steps)))
                else:
                    on_path.add(w)
                    extend(w)
                    on_path.discard(w)
                nodes.pop()
                steps.pop()

        extend(x)
        found.sort(key=lambda p: (len(p.nodes), p.nodes))
        return found

    # -- blocking / d-separation --------------------------------------

    def _validate_path(self, p: Path) -> None:
        for u, w, fwd in zip(p.nodes, p.nodes[1:], p.forward):
            tail, head = (u, w) if fwd else (w, u)
            self._require(u)
            self._require(w)
            if head not in self._children[tail]:
                raise GraphError(f"path step {tail} -> {head} is not an edge of this graph")

    def path_blocked(self, p: Path, conditioned: Iterable[str]) -> bool:
        """Apply the d-separation blocking rules to one path.

        The path is blocked iff some interior node v satisfies either:
        (a) v is a non-collider on the path and is conditioned on, or
        (b) v is a collider and neither v nor any descendant of v is
        conditioned on.
        """
        self._validate_path(p)
        given = frozenset(self._require(v) for v in conditioned)
        endpoints = {p.nodes[0], p.nodes[-1]}
        if given & endpoints:
            raise GraphError(
                f"conditioning set contains a path endpoint: {sorted(given & endpoints)}"
            )
        for v in p.interior():
            if p.is_collider(v):
                if not (given & ({v} | self._descendants[v])):
                    return True
            elif v in given:
                return True
        return False

    def d_separated(
        self,
        xs: Iterable[str],
        ys: Iterable[str],
        given: Iterable[str] = (),
    ) -> bool:
        """True iff every path between ``xs`` and ``ys`` is blocked by ``given``.

        Uses the ancestral-moral-graph reduction rather than path
        enumeration, so it has no node-count guard: restrict to ancestors
        of the involved nodes, marry co-parents, drop the conditioning set,
        and test undirected reachability.
        """
        xset = frozenset(self._require(v) for v in xs)
        yset = frozenset(self._require(v) for v in ys)
        cset = frozenset(self._require(v) for v in given)
        if not xset or not yset:
            raise GraphError("d-separation needs nonempty node sets on both sides")
        if xset & yset or xset & cset or yset & cset:
            overlap = sorted((xset & yset) | (xset & cset) | (yset & cset))
            raise GraphError(f"node sets must be disjoint; overlap: {overlap}")

        relevant = set(xset | yset | cset)
        for v in tuple(relevant):
            relevant |= self.ancestors(v)

        adjacency: dict[str, set[str]] = {v: set() for v in relevant}
        for tail, head in self._edges:
            if tail in relevant and head in relevant:
                adjacency[tail].add(head)
                adjacency[head].add(tail)
        for v in relevant:
            for a, b in itertools.combinations(sorted(self._parents[v] & relevant), 2):
                adjacency[a].add(b)
                adjacency[b].add(a)

        stack = [v for v in xset if v not in cset]
        seen = set(stack)
        while stack:
            v = stack.pop()
            if v in yset:
                return False
            for w in adjacency[v]:
                if w not in seen and w not in cset:
                    seen.add(w)
                    stack.append(w)
        return True

    # -- back-door criterion -------------------------------------------

    def backdoor_paths(self, x: str, y: str) -> list[Path]:
        """Paths from ``x`` to ``y`` whose first step enters ``x`` (x <- ...)."""
        return [p for p in self.all_paths(x, y) if not p.forward[0]]

    def backdoor_satisfies(self, x: str, y: str, adjustment: Iterable[str]) -> bool:
        """Back-door criterion: ``adjustment`` contains no descendant of ``x``
        and blocks every back-door path from ``x`` to ``y``."""
        self._require(x)
        self._require(y)
        if x == y:
            raise GraphError("treatment and outcome must differ")
        aset = frozenset(self._require(v) for v in adjustment)
        if x in aset or y in aset:
            raise GraphError(
                f"adjustment set must exclude the endpoints {x!r} and {y!r}"
            )
        if aset & self._descendants[x]:
            return False
        return all(self.path_blocked(p, aset) for p in self.backdoor_paths(x, y))

    def enumerate_backdoor_sets(
        self,
        x: str,
        y: str,
        max_size: int | None = None,
        minimal_only: bool = False,
    ) -> list[tuple[str, ...]]:
        """All admissible adjustment sets, ordered by size then lexicographically.

        Enumerates every subset of ``nodes - {x, y}`` up to ``max_size``
        (unbounded when None) and keeps those satisfying the back-door
        criterion.  With ``minimal_only``, keeps only sets with no
        admissible proper subset.
        """
        self._require(x)
        self._require(y)
        if x == y:
            raise GraphError("treatment and outcome must differ")
        self._guard_enumeration()

        candidates = sorted(n for n in self._nodes if n not in (x, y))
        limit = len(candidates) if max_size is None else min(max_size, len(candidates))
        paths = self.backdoor_paths(x, y)
        forbidden = self._descendants[x]

        admissible: list[tuple[str, ...]] = []
        admissible_sets: list[frozenset[str]] = []
        for size in range(limit + 1):
            for combo in itertools.combinations(candidates, size):
                cset = frozenset(combo)
                if cset & forbidden:
                    continue
                if not all(self.path_blocked(p, cset) for p in paths):
                    continue
                if minimal_only and any(s < cset for s in admissible_sets):
                    admissible_sets.append(cset)
                    continue
                admissible_sets.append(cset)
                admissible.append(combo)
        return admissible

    # -- export ---------------------------------------------------------

    def to_dot(self) -> str:
        """Render as Graphviz DOT, nodes and edges in declaration order."""
        lines = ["digraph {"]
        lines += [f'  "{n}";' for n in self._nodes]
        lines += [f'  "{t}" -> "{h}";' for t, h in self._edges]
        lines.append("}")
        return "\n".join(lines) + "\n"


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def parse_dag(text: str) -> Dag:
    """Parse the edge-list format into a :class:`Dag`.

    One edge per line as ``TAIL -> HEAD``; a bare ``NODE`` line declares an
    isolated node; ``#`` starts a comment; blank lines are ignored.
    Nodes are declared in order of first appearance.

    Raises :class:`GraphSyntaxError` (with line number) for malformed
    lines, :class:`GraphError` for duplicate edges or self-loops, and
    :class:`CycleError` (with a witness) when the edges are cyclic.
    """
    nodes: dict[str, None] = {}
    edges: list[tuple[str, str]] = []
    seen_edges: set[tuple[str, str]] = set()

    def token(raw: str, line_no: int) -> str:
        name = raw.strip()
        if not name:
            raise GraphSyntaxError("empty node name", line_no)
        if any(ch.isspace() for ch in name):
            raise GraphSyntaxError(f"node name contains whitespace: {name!r}", line_no)
        return name

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if "->" in line:
            parts = line.split("->")
            if len(parts) != 2:
                raise GraphSyntaxError(f"expected 'TAIL -> HEAD', got {raw.strip()!r}", line_no)
            tail, head = (token(p, line_no) for p in parts)
            if tail == head:
                raise GraphError(f"self-loop on {tail!r} (line {line_no})")
            if (tail, head) in seen_edges:
                raise GraphError(f"duplicate edge {tail} -> {head} (line {line_no})")
            seen_edges.add((tail, head))
            nodes.setdefault(tail, None)
            nodes.setdefault(head, None)
            edges.append((tail, head))
        else:
            nodes.setdefault(token(line, line_no), None)

    return Dag(nodes=nodes, edges=edges)
