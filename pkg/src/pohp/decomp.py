"""Path and tree decompositions: validation, exact search at small widths,
and normalization into the strict forms the solvers consume.

Exact branch-and-bound search replaces the linear-time decomposition
algorithms from the literature: those are enormous to implement, and the
solvers accept user-supplied decompositions for anything large.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from .errors import BudgetExceededError, SmallInstanceError, WidthTooLargeError
from .graphs import Graph, mask_to_indices, popcount

DEFAULT_BUDGET = 2_000_000


@dataclass
class PathDecomposition:
    bags: List[int]                      # vertex bitmasks, in path order

    def width(self) -> int:
        return max((popcount(b) for b in self.bags), default=0) - 1


@dataclass
class NormalPathDecomposition:
    bags: List[int]                      # every bag has exactly `size` vertices
    intro: List[Optional[int]]           # intro[i]: vertex introduced at bag i (None at 0)
    forget: List[Optional[int]]          # forget[i]: vertex forgotten at bag i (None at 0)
    size: int = 5

    def width(self) -> int:
        return self.size - 1


@dataclass
class TreeNode:
    bag: int
    children: List["TreeNode"] = field(default_factory=list)

    def walk(self):
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(node.children)

    def postorder(self):
        out = []
        stack = [(self, False)]
        while stack:
            node, done = stack.pop()
            if done:
                out.append(node)
            else:
                stack.append((node, True))
                for ch in node.children:
                    stack.append((ch, False))
        return out


@dataclass
class TreeDecomposition:
    root: TreeNode

    def width(self) -> int:
        return max(popcount(n.bag) for n in self.root.walk()) - 1


@dataclass
class NormalTreeDecomposition(TreeDecomposition):
    size: int = 4


@dataclass
class Violation:
    message: str

    def __bool__(self):
        return False


# ---------------------------------------------------------------------------
# validation


def validate_path(decomp: PathDecomposition, graph: Graph):
    """Cover, edge and contiguity axioms; returns width or a Violation."""
    bags = decomp.bags
    union = 0
    for b in bags:
        union |= b
    if union != (1 << graph.n) - 1:
        missing = ((1 << graph.n) - 1) & ~union
        v = (missing & -missing).bit_length() - 1
        return Violation(f"vertex {graph.names[v]} not covered by any bag")
    for (u, v), _ in graph.edges_idx():
        need = (1 << u) | (1 << v)
        if not any(b & need == need for b in bags):
            return Violation(f"edge {graph.names[u]} {graph.names[v]} not inside any bag")
    for v in range(graph.n):
        bit = 1 << v
        hits = [i for i, b in enumerate(bags) if b & bit]
        if hits[-1] - hits[0] + 1 != len(hits):
            return Violation(f"occurrence interval of {graph.names[v]} is broken")
    return decomp.width()


def validate_tree(decomp: TreeDecomposition, graph: Graph):
    nodes = list(decomp.root.walk())
    union = 0
    for node in nodes:
        union |= node.bag
    if union != (1 << graph.n) - 1:
        missing = ((1 << graph.n) - 1) & ~union
        v = (missing & -missing).bit_length() - 1
        return Violation(f"vertex {graph.names[v]} not covered by any bag")
    for (u, v), _ in graph.edges_idx():
        need = (1 << u) | (1 << v)
        if not any(node.bag & need == need for node in nodes):
            return Violation(f"edge {graph.names[u]} {graph.names[v]} not inside any bag")
    # subtree connectivity: each vertex's occurrence nodes form one component
    for v in range(graph.n):
        bit = 1 << v
        count = sum(1 for node in nodes if node.bag & bit)
        if count == 0:
            continue
        # count nodes of the occurrence-induced forest reachable from the
        # topmost occurrence
        reach = 0
        stack = []
        if decomp.root.bag & bit:
            stack = [decomp.root]
        else:
            queue = [decomp.root]
            tops = []
            while queue:
                node = queue.pop()
                for ch in node.children:
                    if ch.bag & bit:
                        tops.append(ch)
                    else:
                        queue.append(ch)
            if len(tops) != 1:
                return Violation(f"occurrence of {graph.names[v]} is not a subtree")
            stack = tops
        while stack:
            node = stack.pop()
            reach += 1
            for ch in node.children:
                if ch.bag & bit:
                    stack.append(ch)
        if reach != count:
            return Violation(f"occurrence of {graph.names[v]} is not a subtree")
    return decomp.width()


def validate_normal_path(decomp: NormalPathDecomposition, graph: Graph):
    base = validate_path(PathDecomposition(decomp.bags), graph)
    if isinstance(base, Violation):
        return base
    size = decomp.size
    for i, b in enumerate(decomp.bags):
        if popcount(b) != size:
            return Violation(f"bag {i} has size {popcount(b)}, expected {size}")
    introduced = set(mask_to_indices(decomp.bags[0]))
    for i in range(1, len(decomp.bags)):
        gone = decomp.bags[i - 1] & ~decomp.bags[i]
        new = decomp.bags[i] & ~decomp.bags[i - 1]
        if popcount(gone) != 1 or popcount(new) != 1:
            return Violation(f"bags {i-1} and {i} do not differ in exactly two vertices")
        w = new.bit_length() - 1
        if w in introduced:
            return Violation(f"vertex {graph.names[w]} introduced twice")
        introduced.add(w)
        if decomp.forget[i] != gone.bit_length() - 1 or decomp.intro[i] != w:
            return Violation(f"intro/forget bookkeeping wrong at bag {i}")
    if len(introduced) != graph.n:
        return Violation("not every vertex introduced exactly once")
    return decomp.width()


def validate_normal_tree(decomp: NormalTreeDecomposition, graph: Graph):
    base = validate_tree(decomp, graph)
    if isinstance(base, Violation):
        return base
    size = decomp.size
    for node in decomp.root.walk():
        if popcount(node.bag) != size:
            return Violation(f"bag of size {popcount(node.bag)}, expected {size}")
        if len(node.children) > 2:
            return Violation("node with more than two children")
        if len(node.children) == 2:
            a, b = node.children
            if a.bag != node.bag or b.bag != node.bag:
                return Violation("join children must carry the join bag")
            if not a.children or not b.children:
                return Violation("leaf as child of a join node")
        if len(node.children) == 1:
            ch = node.children[0]
            if popcount(node.bag & ~ch.bag) != 1 or popcount(ch.bag & ~node.bag) != 1:
                return Violation("exchange node must differ from child in exactly two")
    return decomp.width()


# ---------------------------------------------------------------------------
# exact search


def _boundary(graph: Graph, placed: int) -> int:
    count = 0
    rest = ~placed
    m = placed
    while m:
        low = m & -m
        m ^= low
        if graph.adj[low.bit_length() - 1] & rest:
            count += 1
    return count


def find_path_layout(graph: Graph, k: int, budget: int = DEFAULT_BUDGET):
    """A vertex layout with separation <= k, or None (exact).

    DFS over prefix sets; a set is explored once since its boundary does not
    depend on the order used to reach it.
    """
    n = graph.n
    full = (1 << n) - 1
    seen = {0}
    parent = {0: (None, None)}
    stack = [0]
    nodes = 0
    while stack:
        placed = stack.pop()
        if placed == full:
            layout = []
            cur = full
            while parent[cur][0] is not None:
                prev, v = parent[cur]
                layout.append(v)
                cur = prev
            layout.reverse()
            return layout
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError("path decomposition search budget exhausted")
        for v in range(n):
            bit = 1 << v
            if placed & bit:
                continue
            nxt = placed | bit
            if nxt in seen:
                continue
            if _boundary(graph, nxt) <= k:
                seen.add(nxt)
                parent[nxt] = (placed, v)
                stack.append(nxt)
    return None


def layout_to_path_decomposition(graph: Graph, layout) -> PathDecomposition:
    bags = []
    placed = 0
    for v in layout:
        earlier = placed
        placed |= 1 << v
        # earlier vertices with a neighbour at position >= i join v's bag
        bag = 1 << v
        at_or_after = ~earlier
        m = earlier
        while m:
            low = m & -m
            m ^= low
            if graph.adj[low.bit_length() - 1] & at_or_after:
                bag |= low
        bags.append(bag)
    return PathDecomposition(bags)


def find_path_decomposition(graph: Graph, k: int,
                            budget: int = DEFAULT_BUDGET) -> Optional[PathDecomposition]:
    """Exact: a width-<=k path decomposition, or None iff pathwidth > k."""
    if not 1 <= k <= 4:
        raise WidthTooLargeError(f"target width {k} outside 1..4")
    if graph.n == 0:
        return PathDecomposition([])
    if graph.n <= k + 1:
        return PathDecomposition([(1 << graph.n) - 1])
    layout = find_path_layout(graph, k, budget)
    if layout is None:
        return None
    return layout_to_path_decomposition(graph, layout)


def _elim_neighbors(graph: Graph, v: int, eliminated: int) -> int:
    """Vertices outside `eliminated` reachable from v via eliminated ones."""
    seen = 1 << v
    out = 0
    stack = [v]
    while stack:
        u = stack.pop()
        m = graph.adj[u] & ~seen
        seen |= m
        mm = m
        while mm:
            low = mm & -mm
            mm ^= low
            w = low.bit_length() - 1
            if eliminated >> w & 1:
                stack.append(w)
            else:
                out |= low
    return out & ~(1 << v)


def find_elimination_order(graph: Graph, k: int, budget: int = DEFAULT_BUDGET):
    n = graph.n
    full = (1 << n) - 1
    seen = {0}
    parent = {0: (None, None)}
    stack = [0]
    nodes = 0
    while stack:
        elim = stack.pop()
        if elim == full:
            order = []
            cur = full
            while parent[cur][0] is not None:
                prev, v = parent[cur]
                order.append(v)
                cur = prev
            order.reverse()
            return order
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError("tree decomposition search budget exhausted")
        for v in range(n):
            bit = 1 << v
            if elim & bit:
                continue
            nxt = elim | bit
            if nxt in seen:
                continue
            if popcount(_elim_neighbors(graph, v, elim)) <= k:
                seen.add(nxt)
                parent[nxt] = (elim, v)
                stack.append(nxt)
    return None


def find_tree_decomposition(graph: Graph, k: int,
                            budget: int = DEFAULT_BUDGET) -> Optional[TreeDecomposition]:
    """Exact: a width-<=k tree decomposition, or None iff treewidth > k."""
    if not 1 <= k <= 3:
        raise WidthTooLargeError(f"target width {k} outside 1..3")
    if graph.n == 0:
        return TreeDecomposition(TreeNode(0))
    if graph.n <= k + 1:
        return TreeDecomposition(TreeNode((1 << graph.n) - 1))
    order = find_elimination_order(graph, k, budget)
    if order is None:
        return None
    # standard chordal construction: bag of v = v plus its not-yet-eliminated
    # fill neighbours; parent = the earliest-eliminated of those neighbours
    n = graph.n
    pos = {v: i for i, v in enumerate(order)}
    nodes = {}
    eliminated = 0
    bag_of = {}
    for v in order:
        nbrs = _elim_neighbors(graph, v, eliminated)
        bag_of[v] = (1 << v) | nbrs
        nodes[v] = TreeNode(bag_of[v])
        eliminated |= 1 << v
    root = nodes[order[-1]]
    for v in order[:-1]:
        nbrs = bag_of[v] & ~(1 << v)
        if nbrs:
            parent_v = min(mask_to_indices(nbrs), key=lambda u: pos[u])
            nodes[parent_v].children.append(nodes[v])
        else:
            root.children.append(nodes[v])
    return TreeDecomposition(root)


def pathwidth_exact(graph: Graph, upper: Optional[int] = None) -> int:
    upper = graph.n - 1 if upper is None else upper
    for k in range(0, upper + 1):
        if graph.n <= k + 1 or find_path_layout(graph, k) is not None:
            return k
    return upper


def treewidth_exact(graph: Graph, upper: Optional[int] = None) -> int:
    upper = graph.n - 1 if upper is None else upper
    for k in range(0, upper + 1):
        if graph.n <= k + 1 or find_elimination_order(graph, k) is not None:
            return k
    return upper


# ---------------------------------------------------------------------------
# normalization


def layout_from_path_decomposition(decomp: PathDecomposition):
    """Order vertices by first bag occurrence; separation <= width."""
    seen = 0
    layout = []
    for bag in decomp.bags:
        new = bag & ~seen
        for v in sorted(mask_to_indices(new)):
            layout.append(v)
        seen |= bag
    return layout


def normalize_path(decomp: PathDecomposition, graph: Graph,
                   size: int = 5) -> NormalPathDecomposition:
    """Bags of exactly `size` vertices, one forget + one introduce per step."""
    if graph.n < size + 1:
        raise SmallInstanceError(f"normal form needs at least {size + 1} vertices")
    base = validate_path(decomp, graph)
    if isinstance(base, Violation):
        raise ValueError(f"input decomposition invalid: {base.message}")
    if base > size - 1:
        raise WidthTooLargeError(f"width {base} exceeds {size - 1}")
    layout = layout_from_path_decomposition(decomp)
    n = graph.n
    future = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        future[i] = future[i + 1] | (1 << layout[i])
    bag = 0
    for v in layout[:size]:
        bag |= 1 << v
    bags = [bag]
    intro: List[Optional[int]] = [None]
    forget: List[Optional[int]] = [None]
    for t in range(size, n):
        w = layout[t]
        candidates = [u for u in mask_to_indices(bags[-1])
                      if not graph.adj[u] & future[t]]
        if not candidates:
            raise WidthTooLargeError("layout separation exceeds the bag size")
        u = min(candidates)
        bag = (bags[-1] & ~(1 << u)) | (1 << w)
        bags.append(bag)
        intro.append(w)
        forget.append(u)
    out = NormalPathDecomposition(bags, intro, forget, size)
    check = validate_normal_path(out, graph)
    if isinstance(check, Violation):
        raise AssertionError(f"normalization produced invalid form: {check.message}")
    return out


def _pad_tree_bags(root: TreeNode, size: int):
    """Grow every bag to exactly `size` vertices, pulling from neighbours.

    Pulling a vertex from the parent extends its occurrence downward; from a
    direct child, upward.  Either keeps occurrences connected.
    """
    changed = True
    guard = 0
    while changed:
        changed = False
        guard += 1
        if guard > 10000:
            raise AssertionError("bag padding did not converge")
        stack = [(root, None)]
        while stack:
            node, parent = stack.pop()
            while popcount(node.bag) < size:
                donor = 0
                if parent is not None:
                    donor = parent.bag & ~node.bag
                if not donor:
                    for ch in node.children:
                        donor = ch.bag & ~node.bag
                        if donor:
                            break
                if not donor:
                    break
                node.bag |= donor & -donor
                changed = True
            for ch in node.children:
                stack.append((ch, node))


def _exchange_chain(top_bag: int, bottom: TreeNode) -> TreeNode:
    """Chain of single-swap exchange nodes from top_bag down to bottom.bag."""
    if top_bag == bottom.bag:
        return bottom
    outs = sorted(mask_to_indices(top_bag & ~bottom.bag))
    ins = sorted(mask_to_indices(bottom.bag & ~top_bag))
    assert len(outs) == len(ins)
    node = bottom
    bag = bottom.bag
    # walk upward from the bottom, swapping one vertex per step
    for out_v, in_v in zip(outs, ins):
        bag = (bag & ~(1 << in_v)) | (1 << out_v)
        node = TreeNode(bag, [node])
    assert bag == top_bag
    return node


def _subtree_vertices(node: TreeNode) -> int:
    out = 0
    for nd in node.walk():
        out |= nd.bag
    return out


def _normalize_node(node: TreeNode) -> TreeNode:
    children = [_normalize_node(ch) for ch in node.children]
    # drop children whose entire subtree is inside this bag
    children = [ch for ch in children if _subtree_vertices(ch) & ~node.bag]
    if not children:
        return TreeNode(node.bag)
    # each child branch becomes an equal-bag arm via an exchange chain; an
    # arm is never a leaf (an equal-bag leaf child was dropped above)
    arms = [_exchange_chain(node.bag, ch) for ch in children]
    while len(arms) > 1:
        right = arms.pop()
        left = arms.pop()
        arms.append(TreeNode(node.bag, [left, right]))
    return arms[0]


def normalize_tree(decomp: TreeDecomposition, graph: Graph,
                   size: int = 4) -> NormalTreeDecomposition:
    """Rooted binary form: bags exactly `size`, equal-bag join children,
    single-swap exchange steps, no leaf directly under a join."""
    if graph.n < size + 1:
        raise SmallInstanceError(f"normal form needs at least {size + 1} vertices")
    base = validate_tree(decomp, graph)
    if isinstance(base, Violation):
        raise ValueError(f"input decomposition invalid: {base.message}")
    if base > size - 1:
        raise WidthTooLargeError(f"width {base} exceeds {size - 1}")

    def clone(node: TreeNode) -> TreeNode:
        return TreeNode(node.bag, [clone(ch) for ch in node.children])

    root = clone(decomp.root)
    _pad_tree_bags(root, size)
    root = _normalize_node(root)
    out = NormalTreeDecomposition(root, size=size)
    check = validate_normal_tree(out, graph)
    if isinstance(check, Violation):
        raise AssertionError(f"normalization produced invalid form: {check.message}")
    return out
