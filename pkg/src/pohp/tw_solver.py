"""Dynamic program over normal tree decompositions: minimum-weight
order-extending Hamiltonian cycles at treewidth <= 3, and paths at
treewidth <= 2 via the universal-vertex reduction.

Exchange nodes run the same forget/introduce step as the path-decomposition
solver over 4-vertex bags.  Join nodes glue the children's fragment systems
at the shared bag vertices and re-verify order feasibility of every glued
fragment from scratch (the quadratic-cost step).  Two-path states carry a
side bit naming the child that contributed the canonical first path; the
bit dies at the join's parent.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from . import segments as seg
from .decomp import (
    NormalTreeDecomposition,
    TreeNode,
    Violation,
    find_tree_decomposition,
    normalize_tree,
    validate_normal_tree,
)
from .errors import DecompositionInvalidError, WidthTooLargeError
from .graphs import mask_to_indices, popcount
from .instances import CYCLE, PATH, Instance, Solution, solution_from_indices, validate_solution
from .oracle import oracle_solve
from .orders import is_linear_extension
from .pw_solver import (
    DpChecks,
    Entry,
    UniquenessViolation,
    _placements,
    _with_wraps,
    add_universal_vertex,
    lemma_signature,
    mapping_of,
    nontrivial_count,
    state_key,
    terminals_in_bag,
    trivial_count,
)


class TwEntry(NamedTuple):
    config: seg.SegmentConfiguration
    side: Optional[str]          # 'L'/'R' for two-path entries born at a join


def tw_state_key(entry: TwEntry):
    return (tuple(sorted(f.key() for f in entry.config.fragments)), entry.side)


def tw_form_valid(config, parent_kind: str) -> bool:
    """Allowed shapes per parent context.

    Under an exchange parent the vertex forgotten next is interior, which
    pins one non-trivial path and leaves room for at most one trivial one.
    Under a join parent only the terminal budget of the 4-vertex bag
    constrains the shape: two non-trivial paths (no trivial), or one
    non-trivial path with up to two trivial ones -- one more trivial than
    the literal lemma statement, which undercounts this case; the oracle
    equivalence suite exercises it.
    """
    nt = nontrivial_count(config)
    tv = trivial_count(config)
    if config.close_count() > 1:
        return False
    if parent_kind == "join":
        if nt == 2:
            return tv == 0
        return nt == 1 and tv <= 2
    return nt == 1 and tv <= 1


class TwChecks:
    """Mapping uniqueness per (node, signature, side) and table-size stats."""

    def __init__(self):
        self.mapping_by_sig = {}
        self.distinct_mappings = set()

    def observe(self, node_id, bag_mask, entry: TwEntry):
        sig = (node_id, lemma_signature(entry.config, bag_mask), entry.side)
        mapping = mapping_of(entry.config)
        self.distinct_mappings.add((node_id, mapping))
        prev = self.mapping_by_sig.get(sig)
        if prev is None:
            self.mapping_by_sig[sig] = mapping
        elif prev != mapping:
            raise UniquenessViolation(f"two path mappings for signature {sig}")


def _push(row, entry: TwEntry, checks: TwChecks, node_id, bag_mask):
    key = tw_state_key(entry)
    checks.observe(node_id, bag_mask, entry)
    old = row.get(key)
    if old is None or entry.config.weight < old.config.weight:
        row[key] = entry


def leaf_row(graph, order, bag_mask, parent_kind, node_id, checks):
    vertices = sorted(mask_to_indices(bag_mask))
    row = {}
    best = {}
    stack = [seg.empty_config()]
    while stack:
        config = stack.pop()
        if config.placed == bag_mask:
            if tw_form_valid(config, parent_kind):
                _push(row, TwEntry(config, None), checks, node_id, bag_mask)
            continue
        for w in vertices:
            if config.placed >> w & 1:
                continue
            for cand, changed in _placements(config, graph, order, w):
                for variant in _with_wraps(cand, order, changed):
                    key = tw_state_key(TwEntry(variant, None))
                    old = best.get(key)
                    if old is None or variant.weight < old:
                        best[key] = variant.weight
                        stack.append(variant)
    return row


def exchange_row(row, graph, order, bag_mask, forgotten, introduced,
                 parent_kind, node_id, checks, is_root):
    new_row = {}
    for entry in row.values():
        config = entry.config
        u_interior = False
        for f in config.fragments:
            if f.vset >> forgotten & 1:
                u_interior = len(f.seq) > 2 and forgotten not in (f.seq[0], f.seq[-1])
                break
        if not u_interior:
            continue
        for cand, changed in _placements(config, graph, order, introduced):
            for variant in _with_wraps(cand, order, changed):
                if not is_root:
                    if not tw_form_valid(variant, parent_kind):
                        continue
                    if not terminals_in_bag(variant, bag_mask):
                        continue
                _push(new_row, TwEntry(variant, None), checks, node_id, bag_mask)
    return new_row


# ---------------------------------------------------------------------------
# join gluing


def _directed_edges(config):
    out = {}
    for fi, f in enumerate(config.fragments):
        for a, b in zip(f.seq, f.seq[1:]):
            out[(a, b)] = fi
    return out


def _glue(e1: TwEntry, e2: TwEntry, graph, order, bag_mask, full_mask):
    """Join two children configurations sharing exactly the bag vertices.

    Returns (config, 'paths') for a path system, (lam, weight, 'cycle') when
    the glue closes a single Hamiltonian cycle, or None when incompatible.
    """
    c1, c2 = e1.config, e2.config
    if c1.placed & c2.placed != bag_mask:
        return None
    edges1 = _directed_edges(c1)
    edges2 = _directed_edges(c2)
    alledges = dict(edges1)
    alledges.update(edges2)
    # reversed duplicates mean the children orient a shared edge differently
    for a, b in alledges:
        if (b, a) in alledges:
            return None
    succ = {}
    pred = {}
    for a, b in alledges:
        if a in succ or b in pred:
            return None
        succ[a] = b
        pred[b] = a

    placed = c1.placed | c2.placed
    weight = 0
    for a, b in alledges:
        weight += graph.weight_idx(a, b)

    # wrap data from close constituents
    wrap_edges = set()
    tail_ends = []
    tail_mask = 0
    head_mask = 0
    for c in (c1, c2):
        for f in c.fragments:
            if f.kind != seg.CLOSE:
                continue
            tail_mask |= f.tail
            head_mask |= f.head
            if f.split < len(f.seq):
                wrap_edges.add((f.seq[f.split - 1], f.seq[f.split]))
            else:
                tail_ends.append(f.seq[-1])
    if len(wrap_edges) > 1:
        return None

    # trace components
    seen = 0
    fragments = []
    cycle_seq = None
    starts = [v for v in mask_to_indices(placed) if v not in pred]
    for s in starts:
        path = [s]
        seen |= 1 << s
        v = s
        while v in succ:
            v = succ[v]
            path.append(v)
            seen |= 1 << v
        fragments.append(path)
    if seen != placed:
        # leftover vertices sit on directed cycles
        rest = placed & ~seen
        v = (rest & -rest).bit_length() - 1
        cyc = [v]
        seen |= 1 << v
        u = succ.get(v)
        while u is not None and u != v:
            cyc.append(u)
            seen |= 1 << u
            u = succ.get(u)
        if u != v or seen != placed or fragments:
            return None
        if placed != full_mask:
            return None
        cycle_seq = cyc

    if cycle_seq is not None:
        lam = _cycle_to_extension(cycle_seq, wrap_edges, tail_ends, order)
        if lam is None:
            return None
        return (lam, weight, "cycle")

    # assemble fragments with kinds and splits
    new_frags = []
    close_seen = False
    for path in fragments:
        split = None
        if wrap_edges:
            (wa, wb), = wrap_edges
            for i in range(len(path) - 1):
                if (path[i], path[i + 1]) == (wa, wb):
                    split = i + 1
                    break
        if split is None and tail_ends:
            for te in tail_ends:
                if te in path:
                    if path[-1] != te:
                        return None
                    split = len(path)
        if split is not None:
            if close_seen:
                return None
            close_seen = True
            frag = seg.make_close(path, split, order)
            if order.succ_union(frag.tail) & ~frag.tail:
                return None
            if order.pred_union(frag.head) & ~frag.head:
                return None
        else:
            frag = seg.make_mid(path, order)
        if not seg.fragment_internally_consistent(frag, order):
            return None
        new_frags.append(frag)
    # tails/heads recorded by the children must be honoured by the result
    if tail_mask or head_mask:
        combined_close = [f for f in new_frags if f.kind == seg.CLOSE]
        if not combined_close:
            return None
        cf = combined_close[0]
        if tail_mask & ~cf.tail or head_mask & ~cf.head:
            return None
    if not seg.config_order_ok(tuple(new_frags), order):
        return None
    return (seg.SegmentConfiguration(tuple(new_frags), weight, placed), "paths")


def _cycle_to_extension(cyc, wrap_edges, tail_ends, order):
    """Rotate a traced full cycle into a linear extension, honouring the
    recorded wrap structure when present."""
    n = len(cyc)
    candidates = []
    if wrap_edges:
        (wa, wb), = wrap_edges
        for i in range(n):
            if cyc[i] == wa and cyc[(i + 1) % n] == wb:
                candidates.append((i + 1) % n)
    elif tail_ends:
        te = tail_ends[0]
        for i in range(n):
            if cyc[i] == te:
                candidates.append((i + 1) % n)
    else:
        candidates = list(range(n))
    for s in candidates:
        lam = tuple(cyc[s:] + cyc[:s])
        if is_linear_extension(lam, order):
            return lam
    return None


def join_row(left_row, right_row, graph, order, bag_mask, full_mask,
             parent_kind, node_id, checks, is_root, accepted):
    new_row = {}
    for le in left_row.values():
        for re in right_row.values():
            glued = _glue(le, re, graph, order, bag_mask, full_mask)
            if glued is None:
                continue
            if glued[-1] == "cycle":
                lam, weight, _ = glued
                if is_root:
                    accepted.append((weight, lam))
                continue
            config, _ = glued
            if not is_root:
                if not tw_form_valid(config, parent_kind):
                    continue
                if not terminals_in_bag(config, bag_mask):
                    continue
            side = None
            if nontrivial_count(config) == 2:
                frags = sorted((f for f in config.fragments if len(f.seq) > 1),
                               key=lambda f: min(mask_to_indices(f.vset & bag_mask),
                                                 default=-1))
                first = frags[0]
                left_only = le.config.placed & ~bag_mask
                side = "L" if first.vset & left_only else "R"
            _push(new_row, TwEntry(config, side), checks, node_id, bag_mask)
    return new_row


# ---------------------------------------------------------------------------
# drivers


def _collect_kinds(root: TreeNode):
    """(node, parent_kind, node_kind) in postorder."""
    parent = {id(root): None}
    for node in root.walk():
        for ch in node.children:
            parent[id(ch)] = node
    out = []
    for node in root.postorder():
        par = parent[id(node)]
        if par is None:
            pk = "root"
        elif len(par.children) == 2:
            pk = "join"
        else:
            pk = "exchange"
        if not node.children:
            nk = "leaf"
        elif len(node.children) == 1:
            nk = "exchange"
        else:
            nk = "join"
        out.append((node, pk, nk))
    return out


def solve_cycle_tw3(inst: Instance, decomp: Optional[NormalTreeDecomposition] = None,
                    stats: Optional[dict] = None) -> Optional[Solution]:
    """Minimum-weight order-extending Hamiltonian cycle, treewidth <= 3."""
    if inst.kind != CYCLE:
        raise ValueError("solve_cycle_tw3 expects a cycle instance")
    g, order, n = inst.graph, inst.order, inst.graph.n
    if n < 5:
        res = oracle_solve(inst)
        assert res.status != "unknown"
        return res.solution
    if decomp is None:
        found = find_tree_decomposition(g, 3)
        if found is None:
            raise WidthTooLargeError("treewidth exceeds 3")
        decomp = normalize_tree(found, g)
    check = validate_normal_tree(decomp, g)
    if isinstance(check, Violation):
        raise DecompositionInvalidError(check.message)

    full_mask = (1 << n) - 1
    checks = TwChecks()
    accepted = []
    rows = {}
    subtree = {}
    for node, parent_kind, node_kind in _collect_kinds(decomp.root):
        is_root = parent_kind == "root"
        if node_kind == "leaf":
            rows[id(node)] = leaf_row(g, order, node.bag, parent_kind, id(node), checks)
            subtree[id(node)] = node.bag
        elif node_kind == "exchange":
            ch = node.children[0]
            gone = ch.bag & ~node.bag
            new = node.bag & ~ch.bag
            forgotten = gone.bit_length() - 1
            introduced = new.bit_length() - 1
            rows[id(node)] = exchange_row(
                rows.pop(id(ch)), g, order, node.bag, forgotten, introduced,
                parent_kind, id(node), checks, is_root)
            subtree[id(node)] = subtree.pop(id(ch)) | node.bag
        else:
            a, b = node.children
            assert node.bag == a.bag == b.bag
            va, vb = subtree.pop(id(a)), subtree.pop(id(b))
            assert va & vb == node.bag, "children must overlap exactly in the bag"
            rows[id(node)] = join_row(
                rows.pop(id(a)), rows.pop(id(b)), g, order, node.bag, full_mask,
                parent_kind, id(node), checks, is_root, accepted)
            subtree[id(node)] = va | vb

    if stats is not None:
        stats["distinct_mappings"] = len(checks.distinct_mappings)
        stats["nodes"] = len(subtree) + len(rows)

    best = None
    best_seq = None
    root_row = rows[id(decomp.root)]
    for entry in root_row.values():
        config = entry.config
        if len(config.fragments) != 1 or config.fragments[0].vset != full_mask:
            continue
        frag = config.fragments[0]
        a, b = frag.seq[-1], frag.seq[0]
        if not g.has_edge_idx(a, b):
            continue
        total = config.weight + g.weight_idx(a, b)
        lam = frag.seq[frag.split:] + frag.seq[: frag.split] \
            if frag.kind == seg.CLOSE else frag.seq
        if best is None or total < best:
            best, best_seq = total, lam
    for weight, lam in accepted:
        if best is None or weight < best:
            best, best_seq = weight, lam
    if best_seq is None:
        return None
    sol = solution_from_indices(inst, best_seq, kind=CYCLE)
    report = validate_solution(inst, sol)
    assert report.valid, f"solver produced invalid solution: {report.violation}"
    return sol


def solve_path_tw2(inst: Instance, decomp: Optional[NormalTreeDecomposition] = None,
                   stats: Optional[dict] = None) -> Optional[Solution]:
    """Minimum-weight order-extending Hamiltonian path, treewidth <= 2,
    via the universal-vertex wrap of the cycle solver."""
    if inst.kind != PATH:
        raise ValueError("solve_path_tw2 expects a path instance")
    g = inst.graph
    if g.n < 4:
        res = oracle_solve(inst)
        assert res.status != "unknown"
        return res.solution
    wrapped, hub = add_universal_vertex(inst)
    if decomp is None:
        found = find_tree_decomposition(g, 2)
        if found is None:
            raise WidthTooLargeError("treewidth exceeds 2")
        hub_bit = 1 << hub
        root = found.root

        def widen(node):
            node.bag |= hub_bit
            for ch in node.children:
                widen(ch)

        widen(root)
        from .decomp import TreeDecomposition
        decomp = normalize_tree(TreeDecomposition(root), wrapped.graph)
    sol = solve_cycle_tw3(wrapped, decomp, stats)
    if sol is None:
        return None
    assert sol.order[-1] == wrapped.graph.names[hub]
    path_sol = solution_from_indices(inst, [g.idx(v) for v in sol.order[:-1]], kind=PATH)
    assert path_sol.weight == sol.weight
    report = validate_solution(inst, path_sol)
    assert report.valid, f"solver produced invalid solution: {report.violation}"
    return path_sol
