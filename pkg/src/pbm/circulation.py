"""Exact integer circulations on the prefix-sum network of an instance.

The network for an m x n instance has 2mn + 2 nodes: one node per cell in a
horizontal layer and in a vertical layer, plus one hub per layer.  It has
3mn + 1 arcs:

* A1 arcs carry the horizontal prefix sums of each row, bounded by
  [phi1, gamma1]; the arc for (i, n) runs from the horizontal hub;
* A2 arcs carry the vertical prefix sums, bounded by [phi2, gamma2]; the
  arc for (m, j) runs into the vertical hub;
* N arcs connect the two layers cell by cell and carry the matrix entries,
  bounded by [f, g];
* one return arc a0 from the vertical hub to the horizontal hub carries the
  total sum, bounded by [alpha, beta].

Conservation forces every circulation to spell out a matrix together with
all its prefix sums, so instances are feasible exactly when the network
admits an integer circulation.  Infinite bounds are replaced by +-K for a K
chosen so large that no optimal or violating structure can depend on it
(K exceeds twice the sum of all finite bound magnitudes).

Feasibility is decided by one max-flow; an infeasible network yields a node
set whose entering capacity is below its leaving demand, and that node set
translates into a violated inequality on a pair of cell subsets.  Optimum
circulations use successive shortest paths with node potentials, all in
exact integer arithmetic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import ExtInt, IntMatrix, PbmInstance, SubsetMask, fin
from .errors import BoundViolation, DimensionMismatch, InternalError
from . import strongpair

__all__ = [
    "Arc",
    "Network",
    "Circulation",
    "CutWitness",
    "instance_arc_bounds",
    "network_from_bounds",
    "build_network",
    "check_circulation",
    "make_cut_witness",
    "find_feasible_circulation",
    "min_cost_circulation",
    "matrix_from_circulation",
    "circulation_from_matrix",
    "cut_to_certificate",
    "network_to_dot",
]


@dataclass(frozen=True, slots=True)
class Arc:
    """One network arc with integer bounds (infinities already clamped)."""

    id: int
    tail: int
    head: int
    lower: int
    upper: int
    cost: int
    tag: tuple


@dataclass(frozen=True, slots=True)
class Network:
    """The circulation network of an m x n instance (or of raw bounds)."""

    m: int
    n: int
    arcs: tuple[Arc, ...]
    big_k: int
    instance: "PbmInstance | None" = None

    @property
    def node_count(self) -> int:
        return 2 * self.m * self.n + 2

    @property
    def v1_hub(self) -> int:
        return 2 * self.m * self.n

    @property
    def v2_hub(self) -> int:
        return 2 * self.m * self.n + 1

    def v1_node(self, i: int, j: int) -> int:
        return (i - 1) * self.n + (j - 1)

    def v2_node(self, i: int, j: int) -> int:
        return self.m * self.n + (i - 1) * self.n + (j - 1)

    def a1_id(self, i: int, j: int) -> int:
        return (i - 1) * self.n + (j - 1)

    def a2_id(self, i: int, j: int) -> int:
        return self.m * self.n + (i - 1) * self.n + (j - 1)

    def n_arc_id(self, i: int, j: int) -> int:
        return 2 * self.m * self.n + (i - 1) * self.n + (j - 1)

    @property
    def a0_id(self) -> int:
        return 3 * self.m * self.n


@dataclass(frozen=True, slots=True)
class Circulation:
    """Arc flows indexed by arc id."""

    flows: tuple[int, ...]

    def value(self, arc_id: int) -> int:
        return self.flows[arc_id]


@dataclass(frozen=True, slots=True)
class CutWitness:
    """A node set W with entering capacity strictly below leaving demand.

    ``deficit`` is (sum of upper bounds entering W) minus (sum of lower
    bounds leaving W) and is negative by construction.
    """

    nodes: frozenset[int]
    deficit: int


def instance_arc_bounds(inst: PbmInstance) -> tuple[list[ExtInt], list[ExtInt]]:
    """True extended-integer arc bounds in arc-id order."""
    m, n, mn = inst.m, inst.n, inst.m * inst.n
    lower: list[ExtInt] = [fin(0)] * (3 * mn + 1)
    upper: list[ExtInt] = [fin(0)] * (3 * mn + 1)
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            k = (i - 1) * n + (j - 1)
            lower[k] = inst.phi1.at(i, j)
            upper[k] = inst.gamma1.at(i, j)
            lower[mn + k] = inst.phi2.at(i, j)
            upper[mn + k] = inst.gamma2.at(i, j)
            lower[2 * mn + k] = inst.f.at(i, j)
            upper[2 * mn + k] = inst.g.at(i, j)
    lower[3 * mn] = inst.alpha
    upper[3 * mn] = inst.beta
    return lower, upper


def network_from_bounds(
    m: int,
    n: int,
    lower: Sequence[ExtInt],
    upper: Sequence[ExtInt],
    *,
    instance: "PbmInstance | None" = None,
    extra_finite: int = 0,
    k_override: "int | None" = None,
) -> Network:
    """Build the network from explicit per-arc bounds in arc-id order.

    K is 1 + 2 * (sum of |finite bounds| + extra_finite) + mn unless
    overridden; callers that need room for known circulations pass their
    magnitude through ``extra_finite``.
    """
    mn = m * n
    if len(lower) != 3 * mn + 1 or len(upper) != 3 * mn + 1:
        raise InternalError("arc bound vectors have wrong length")
    finite_mass = extra_finite
    for v in list(lower) + list(upper):
        if v.is_finite:
            finite_mass += abs(v.value)
    big_k = k_override if k_override is not None else 1 + 2 * finite_mass + mn
    arcs: list[Arc] = []

    def put(arc_id: int, tail: int, head: int, tag: tuple) -> None:
        lo, hi = lower[arc_id], upper[arc_id]
        if lo > hi:
            raise InternalError(f"empty arc bound interval on arc {tag}: [{lo}, {hi}]")
        arcs.append(Arc(arc_id, tail, head, lo.clamp(big_k), hi.clamp(big_k), 0, tag))

    v1_hub = 2 * mn
    v2_hub = 2 * mn + 1

    def v1(i: int, j: int) -> int:
        return (i - 1) * n + (j - 1)

    def v2(i: int, j: int) -> int:
        return mn + (i - 1) * n + (j - 1)

    for i in range(1, m + 1):
        for j in range(1, n + 1):
            k = (i - 1) * n + (j - 1)
            tail = v1(i, j + 1) if j < n else v1_hub
            put(k, tail, v1(i, j), ("A1", i, j))
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            k = (i - 1) * n + (j - 1)
            head = v2(i + 1, j) if i < m else v2_hub
            put(mn + k, v2(i, j), head, ("A2", i, j))
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            k = (i - 1) * n + (j - 1)
            put(2 * mn + k, v1(i, j), v2(i, j), ("N", i, j))
    put(3 * mn, v2_hub, v1_hub, ("a0",))
    return Network(m=m, n=n, arcs=tuple(arcs), big_k=big_k, instance=instance)


def build_network(inst: PbmInstance, *, k_override: "int | None" = None) -> Network:
    """The circulation network of a validated instance."""
    lower, upper = instance_arc_bounds(inst)
    return network_from_bounds(
        inst.m, inst.n, lower, upper, instance=inst, k_override=k_override
    )


def check_circulation(net: Network, circ: Circulation) -> None:
    """Raise InternalError unless the flows conserve and respect all bounds."""
    if len(circ.flows) != len(net.arcs):
        raise InternalError("flow vector length mismatch")
    balance = [0] * net.node_count
    for arc in net.arcs:
        z = circ.flows[arc.id]
        if not (arc.lower <= z <= arc.upper):
            raise InternalError(f"flow {z} outside [{arc.lower}, {arc.upper}] on arc {arc.tag}")
        balance[arc.tail] -= z
        balance[arc.head] += z
    for v, bal in enumerate(balance):
        if bal != 0:
            raise InternalError(f"conservation fails at node {v}: imbalance {bal}")


def make_cut_witness(net: Network, nodes: frozenset[int]) -> CutWitness:
    """Build a witness, recomputing the deficit; raises unless it is negative."""
    rho_u = 0
    delta_l = 0
    for arc in net.arcs:
        tail_in = arc.tail in nodes
        head_in = arc.head in nodes
        if head_in and not tail_in:
            rho_u += arc.upper
        elif tail_in and not head_in:
            delta_l += arc.lower
    deficit = rho_u - delta_l
    if deficit >= 0:
        raise InternalError(f"cut witness has nonnegative deficit {deficit}")
    return CutWitness(nodes=nodes, deficit=deficit)


_BIG = 1 << 300


class _FlowGraph:
    """Residual graph with paired edges; max-flow and shortest paths."""

    __slots__ = ("adj", "to", "cap", "cost")

    def __init__(self, node_count: int) -> None:
        self.adj: list[list[int]] = [[] for _ in range(node_count)]
        self.to: list[int] = []
        self.cap: list[int] = []
        self.cost: list[int] = []

    def add_edge(self, u: int, v: int, cap: int, cost: int = 0) -> int:
        idx = len(self.to)
        self.to.append(v)
        self.cap.append(cap)
        self.cost.append(cost)
        self.adj[u].append(idx)
        self.to.append(u)
        self.cap.append(0)
        self.cost.append(-cost)
        self.adj[v].append(idx + 1)
        return idx

    def _levels(self, s: int, t: int) -> "list[int] | None":
        level = [-1] * len(self.adj)
        level[s] = 0
        queue = [s]
        for v in queue:
            for idx in self.adj[v]:
                w = self.to[idx]
                if self.cap[idx] > 0 and level[w] < 0:
                    level[w] = level[v] + 1
                    queue.append(w)
        return level if level[t] >= 0 else None

    def _push(self, v: int, t: int, limit: int, level: list[int], it: list[int]) -> int:
        if v == t:
            return limit
        while it[v] < len(self.adj[v]):
            idx = self.adj[v][it[v]]
            w = self.to[idx]
            if self.cap[idx] > 0 and level[w] == level[v] + 1:
                pushed = self._push(w, t, min(limit, self.cap[idx]), level, it)
                if pushed > 0:
                    self.cap[idx] -= pushed
                    self.cap[idx ^ 1] += pushed
                    return pushed
            it[v] += 1
        level[v] = -1
        return 0

    def max_flow(self, s: int, t: int) -> tuple[int, int]:
        """Returns (flow value, number of augmenting paths)."""
        flow = 0
        paths = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return flow, paths
            it = [0] * len(self.adj)
            while True:
                pushed = self._push(s, t, _BIG, level, it)
                if pushed == 0:
                    break
                flow += pushed
                paths += 1

    def residual_reachable(self, s: int) -> set[int]:
        seen = {s}
        queue = [s]
        for v in queue:
            for idx in self.adj[v]:
                w = self.to[idx]
                if self.cap[idx] > 0 and w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen


def _node_excess(net: Network) -> list[int]:
    """Per node: inflow minus outflow of all lower bounds."""
    e = [0] * net.node_count
    for arc in net.arcs:
        e[arc.head] += arc.lower
        e[arc.tail] -= arc.lower
    return e


def find_feasible_circulation(
    net: Network, info: "dict | None" = None
) -> "Circulation | CutWitness":
    """One integer circulation, or a node set proving there is none."""
    excess = _node_excess(net)
    s = net.node_count
    t = net.node_count + 1
    graph = _FlowGraph(net.node_count + 2)
    for arc in net.arcs:
        graph.add_edge(arc.tail, arc.head, arc.upper - arc.lower)
    demand = 0
    for v, e in enumerate(excess):
        if e > 0:
            graph.add_edge(s, v, e)
            demand += e
        elif e < 0:
            graph.add_edge(v, t, -e)
    flow, paths = graph.max_flow(s, t)
    if info is not None:
        info["nodes"] = net.node_count
        info["arcs"] = len(net.arcs)
        info["augmentations"] = info.get("augmentations", 0) + paths
    if flow == demand:
        flows = tuple(arc.lower + graph.cap[2 * arc.id + 1] for arc in net.arcs)
        circ = Circulation(flows)
        check_circulation(net, circ)
        return circ
    reach = graph.residual_reachable(s)
    cut_nodes = frozenset(v for v in range(net.node_count) if v not in reach)
    return make_cut_witness(net, cut_nodes)


def _resolve_costs(net: Network, cost: "Mapping[int, int] | None") -> list[int]:
    out = [arc.cost for arc in net.arcs]
    if cost is not None:
        for arc_id, c in cost.items():
            out[arc_id] = c
    return out


def min_cost_circulation(
    net: Network,
    cost: "Mapping[int, int] | None" = None,
    info: "dict | None" = None,
) -> "Circulation | CutWitness":
    """A minimum-cost integer circulation, or an infeasibility witness.

    Successive shortest paths on reduced costs; arcs with negative cost are
    saturated first and the resulting node imbalances are drained along
    cheapest residual paths.  All arithmetic is exact.
    """
    feasible = find_feasible_circulation(net, info)
    if isinstance(feasible, CutWitness):
        return feasible
    costs = _resolve_costs(net, cost)
    nodes = net.node_count
    graph = _FlowGraph(nodes)
    surplus = _node_excess(net)
    for arc in net.arcs:
        c = arc.upper - arc.lower
        idx = graph.add_edge(arc.tail, arc.head, c, costs[arc.id])
        if costs[arc.id] < 0:
            graph.cap[idx] = 0
            graph.cap[idx + 1] = c
            surplus[arc.head] += c
            surplus[arc.tail] -= c
    pi = [0] * nodes
    augmentations = 0
    while True:
        sources = [v for v in range(nodes) if surplus[v] > 0]
        if not sources:
            break
        dist = [_BIG] * nodes
        parent_edge = [-1] * nodes
        heap: list[tuple[int, int]] = []
        for v in sources:
            dist[v] = 0
            heapq.heappush(heap, (0, v))
        while heap:
            d, v = heapq.heappop(heap)
            if d > dist[v]:
                continue
            for idx in graph.adj[v]:
                if graph.cap[idx] <= 0:
                    continue
                w = graph.to[idx]
                nd = d + graph.cost[idx] + pi[v] - pi[w]
                if nd < dist[w]:
                    dist[w] = nd
                    parent_edge[w] = idx
                    heapq.heappush(heap, (nd, w))
        target = -1
        for v in range(nodes):
            if surplus[v] < 0 and dist[v] < _BIG:
                if target < 0 or dist[v] < dist[target]:
                    target = v
        if target < 0:
            raise InternalError("imbalance cannot be drained in a feasible network")
        path: list[int] = []
        v = target
        while parent_edge[v] >= 0:
            idx = parent_edge[v]
            path.append(idx)
            v = graph.to[idx ^ 1]
        origin = v
        delta = min(surplus[origin], -surplus[target])
        for idx in path:
            delta = min(delta, graph.cap[idx])
        if delta <= 0:
            raise InternalError("degenerate augmentation")
        for idx in path:
            graph.cap[idx] -= delta
            graph.cap[idx ^ 1] += delta
        surplus[origin] -= delta
        surplus[target] += delta
        dt = dist[target]
        for v in range(nodes):
            pi[v] += min(dist[v], dt)
        augmentations += 1
    for idx in range(len(graph.to)):
        if graph.cap[idx] > 0:
            u = graph.to[idx ^ 1]
            w = graph.to[idx]
            if graph.cost[idx] + pi[u] - pi[w] < 0:
                raise InternalError("negative reduced cost left after optimization")
    if info is not None:
        info["augmentations"] = info.get("augmentations", 0) + augmentations
    flows = tuple(arc.lower + graph.cap[2 * arc.id + 1] for arc in net.arcs)
    circ = Circulation(flows)
    check_circulation(net, circ)
    return circ


def matrix_from_circulation(net: Network, circ: Circulation) -> IntMatrix:
    """Read the matrix entries off the N arcs."""
    rows = tuple(
        tuple(circ.flows[net.n_arc_id(i, j)] for j in range(1, net.n + 1))
        for i in range(1, net.m + 1)
    )
    return IntMatrix(net.m, net.n, rows)


def circulation_from_matrix(inst: PbmInstance, mat: IntMatrix) -> Circulation:
    """The circulation spelled out by a matrix; checks every instance bound.

    Raises BoundViolation naming the first broken constraint, scanning
    entries, then horizontal prefixes, then vertical prefixes, then the
    total sum.
    """
    if (mat.m, mat.n) != (inst.m, inst.n):
        raise DimensionMismatch(
            f"matrix is {mat.m}x{mat.n}, instance is {inst.m}x{inst.n}"
        )
    for i, j, v in mat.cells():
        if not (inst.f.at(i, j) <= fin(v) <= inst.g.at(i, j)):
            raise BoundViolation(
                f"entry ({i},{j}) = {v} outside [{inst.f.at(i, j)}, {inst.g.at(i, j)}]"
            )
    for i in range(1, inst.m + 1):
        for j in range(1, inst.n + 1):
            s = mat.h_prefix(i, j)
            if not (inst.phi1.at(i, j) <= fin(s) <= inst.gamma1.at(i, j)):
                raise BoundViolation(
                    f"horizontal prefix ({i},{j}) = {s} outside "
                    f"[{inst.phi1.at(i, j)}, {inst.gamma1.at(i, j)}]"
                )
    for j in range(1, inst.n + 1):
        for i in range(1, inst.m + 1):
            s = mat.v_prefix(i, j)
            if not (inst.phi2.at(i, j) <= fin(s) <= inst.gamma2.at(i, j)):
                raise BoundViolation(
                    f"vertical prefix ({i},{j}) = {s} outside "
                    f"[{inst.phi2.at(i, j)}, {inst.gamma2.at(i, j)}]"
                )
    total = mat.total()
    if not (inst.alpha <= fin(total) <= inst.beta):
        raise BoundViolation(
            f"total sum {total} outside [{inst.alpha}, {inst.beta}]"
        )
    mn = inst.m * inst.n
    flows = [0] * (3 * mn + 1)
    for i in range(1, inst.m + 1):
        for j in range(1, inst.n + 1):
            k = (i - 1) * inst.n + (j - 1)
            flows[k] = mat.h_prefix(i, j)
            flows[mn + k] = mat.v_prefix(i, j)
            flows[2 * mn + k] = mat.at(i, j)
    flows[3 * mn] = total
    return Circulation(tuple(flows))


def cut_to_certificate(
    net: Network, witness: CutWitness
) -> tuple[SubsetMask, SubsetMask, int, str]:
    """Translate a violated node set into a violated inequality.

    The hubs' sides of the cut select one of four cases; each case reads a
    pair of cell subsets (X1, X2) off the cut and names the inequality it
    breaks.  The named inequality is re-evaluated from the instance's true
    bounds and must be strictly violated; anything else is an internal bug.
    """
    inst = net.instance
    if inst is None:
        raise InternalError("network carries no instance; cannot build a certificate")
    w = witness.nodes
    hub1_in = net.v1_hub in w
    hub2_in = net.v2_hub in w
    m, n = net.m, net.n

    def layer_cells(which: int, inside: bool) -> SubsetMask:
        node = net.v1_node if which == 1 else net.v2_node
        cells = [
            (i, j)
            for i in range(1, m + 1)
            for j in range(1, n + 1)
            if (node(i, j) in w) == inside
        ]
        return SubsetMask.from_cells(m, n, cells)

    if hub1_in and hub2_in:
        case, violated = 1, "gen1a"
        x1 = layer_cells(1, inside=False)
        x2 = layer_cells(2, inside=False)
    elif not hub1_in and not hub2_in:
        case, violated = 2, "gen1b"
        x1 = layer_cells(1, inside=True)
        x2 = layer_cells(2, inside=True)
    elif not hub1_in and hub2_in:
        case, violated = 3, "gen1alfa"
        x1 = layer_cells(1, inside=True)
        x2 = layer_cells(2, inside=False)
    else:
        case, violated = 4, "gen1beta"
        x1 = layer_cells(1, inside=False)
        x2 = layer_cells(2, inside=True)
    record = strongpair.condition_values(inst, x1, x2).by_name(violated)
    if record.holds:
        raise InternalError(
            f"cut does not violate {violated}: lhs {record.lhs} <= rhs {record.rhs}"
        )
    return x1, x2, case, violated


def _node_name(net: Network, v: int) -> str:
    mn = net.m * net.n
    if v == net.v1_hub:
        return "v1_hub"
    if v == net.v2_hub:
        return "v2_hub"
    layer = 1 if v < mn else 2
    k = v if v < mn else v - mn
    return f"v{layer}_{k // net.n + 1}_{k % net.n + 1}"


def network_to_dot(net: Network, circ: "Circulation | None" = None) -> str:
    """GraphViz rendering of the network, optionally with flow values."""

    def bound(x: int) -> str:
        if x == net.big_k:
            return "+K"
        if x == -net.big_k:
            return "-K"
        return str(x)

    lines = ["digraph pbm_network {", "  rankdir=LR;"]
    for v in range(net.node_count):
        lines.append(f'  {_node_name(net, v)} [shape=ellipse];')
    for arc in net.arcs:
        tag = arc.tag[0] if len(arc.tag) == 1 else f"{arc.tag[0]}({arc.tag[1]},{arc.tag[2]})"
        label = f"{tag} [{bound(arc.lower)},{bound(arc.upper)}]"
        if circ is not None:
            label += f" z={circ.flows[arc.id]}"
        lines.append(
            f'  {_node_name(net, arc.tail)} -> {_node_name(net, arc.head)} [label="{label}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
