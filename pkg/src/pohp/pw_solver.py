"""Dynamic program over normal path decompositions: minimum-weight
order-extending Hamiltonian cycles at pathwidth <= 4, and paths at
pathwidth <= 3 via the universal-vertex reduction.

Table rows map a state key to the cheapest configuration reaching it.  A
state is the bag-restricted signature (role/path/kind assignment) together
with the origin bookkeeping (the bag index where a two-path state appeared
and the signature it had there) plus the concrete fragment sets; per
signature the vertex-to-fragment mapping is provably unique, which is
asserted on every hit.
"""

from __future__ import annotations

import itertools
from typing import NamedTuple, Optional

from . import segments as seg
from .decomp import (
    NormalPathDecomposition,
    Violation,
    find_path_decomposition,
    normalize_path,
    validate_normal_path,
)
from .errors import DecompositionInvalidError, WidthTooLargeError
from .graphs import Graph, mask_to_indices
from .instances import CYCLE, PATH, Instance, Solution, solution_from_indices, validate_solution
from .oracle import oracle_solve
from .orders import PartialOrder, close_order


class UniquenessViolation(AssertionError):
    """A (bag, signature) pair was reached with two different path mappings."""


class Entry(NamedTuple):
    config: seg.SegmentConfiguration
    origin_bag: Optional[int]       # bag index where the two-path form began
    origin_sig: Optional[tuple]     # signature there (present iff origin < i)


def nontrivial_count(config) -> int:
    return sum(1 for f in config.fragments if len(f.seq) > 1)


def trivial_count(config) -> int:
    return sum(1 for f in config.fragments if len(f.seq) == 1)


def form_valid(config) -> bool:
    nt = nontrivial_count(config)
    tv = trivial_count(config)
    if nt > 2 or tv > 2:
        return False
    if nt == 2 and tv > 0:
        return False
    if config.close_count() > 1:
        return False
    return True


def terminals_in_bag(config, bag_mask: int) -> bool:
    for f in config.fragments:
        if not bag_mask >> f.seq[0] & 1 or not bag_mask >> f.seq[-1] & 1:
            return False
    return True


def lemma_signature(config, bag_mask: int) -> tuple:
    """Bag-restricted signature: (role, path rank, kind) per bag vertex."""
    frags = config.fragments
    ranked = sorted(range(len(frags)),
                    key=lambda i: min(mask_to_indices(frags[i].vset & bag_mask), default=-1))
    rank_of = {fi: r for r, fi in enumerate(ranked)}
    sig = []
    for v in sorted(mask_to_indices(bag_mask)):
        role = None
        for fi, f in enumerate(frags):
            if f.vset >> v & 1:
                if len(f.seq) == 1:
                    role = ("solo", rank_of[fi], f.kind)
                elif v == f.seq[0]:
                    role = ("start", rank_of[fi], f.kind)
                elif v == f.seq[-1]:
                    role = ("end", rank_of[fi], f.kind)
                else:
                    role = ("int", rank_of[fi], f.kind)
                break
        sig.append((v, role))
    return tuple(sig)


def mapping_of(config) -> frozenset:
    return frozenset(f.vset for f in config.fragments)


def erase_kinds(sig):
    """Signature with mid/close labels removed.

    Two construction routes may reach one state with predecessors that
    differ only in close-designation timing; the uniqueness lemma for
    two-path states is stated modulo exactly this labelling freedom.
    """
    if sig is None:
        return None
    return tuple((v, None if role is None else role[:2]) for v, role in sig)


def state_key(entry: Entry) -> tuple:
    frag_keys = tuple(sorted(f.key() for f in entry.config.fragments))
    return (frag_keys, entry.origin_bag, entry.origin_sig)


class DpChecks:
    """Collects the structural lemma assertions across a run."""

    def __init__(self):
        self.mapping_by_sig = {}
        self.pred_by_sig = {}
        self.distinct_mappings = set()

    def observe(self, bag_index, bag_mask, entry: Entry, pred_sig):
        sig = (bag_index, lemma_signature(entry.config, bag_mask),
               entry.origin_bag, entry.origin_sig)
        mapping = mapping_of(entry.config)
        self.distinct_mappings.add((bag_index, mapping))
        prev = self.mapping_by_sig.get(sig)
        if prev is None:
            self.mapping_by_sig[sig] = mapping
        elif prev != mapping:
            raise UniquenessViolation(f"two path mappings for signature {sig}")
        if entry.origin_bag is not None and entry.origin_bag < bag_index:
            pred = erase_kinds(pred_sig)
            seen = self.pred_by_sig.get(sig)
            if seen is None:
                self.pred_by_sig[sig] = pred
            elif seen != pred and pred is not None:
                raise UniquenessViolation(
                    f"two compatible predecessors for two-path signature {sig}")


def _placements(config, graph, order, w):
    """All feasible ways to place w: solo, attach, merge.

    Yields (configuration, index of the fragment the placement changed).
    """
    nfr = len(config.fragments)
    has_close = config.close_index() is not None
    solo = seg.try_attach(config, graph, order, w, None)
    out = [(solo, nfr)]
    for fi in range(nfr):
        ends = ["front", "back"]
        if config.fragments[fi].kind == seg.MID and not has_close:
            ends.append("wrap_front")
        for end in ends:
            cand = seg.try_attach(config, graph, order, w, (fi, end))
            if cand is not None:
                out.append((cand, fi))
    for li in range(nfr):
        for ri in range(nfr):
            if li == ri:
                continue
            P, Q = config.fragments[li], config.fragments[ri]
            if P.kind == seg.CLOSE and Q.kind == seg.CLOSE:
                continue
            cand = seg.try_merge(config, graph, order, w, li, ri)
            if cand is not None:
                out.append((cand, nfr - 2))  # merged fragment is appended last
            if P.kind == seg.MID and Q.kind == seg.MID and not has_close:
                cand = seg.try_merge(config, graph, order, w, li, ri, wrap=True)
                if cand is not None:
                    out.append((cand, nfr - 2))
    return [(c, idx) for c, idx in out if c is not None]


def _with_wraps(config, order, changed_index):
    """The configuration plus every close designation of the fragment the
    last placement changed.  Wrapping is complete at change points: wrap
    feasibility is static in the fragment's content, so a later designation
    can always be moved back to the fragment's most recent change."""
    yield config
    if config.close_index() is not None:
        return
    frag = config.fragments[changed_index]
    for j in seg.valid_wrap_splits(frag, order):
        wrapped = seg.try_designate_wrap(config, order, changed_index, j)
        if wrapped is not None:
            yield wrapped


def _push(row, entry: Entry, checks, bag_index, bag_mask, pred_sig):
    key = state_key(entry)
    checks.observe(bag_index, bag_mask, entry, pred_sig)
    old = row.get(key)
    if old is None or entry.config.weight < old.config.weight:
        row[key] = entry


def base_row(graph, order, bag_mask, checks):
    """All calculus-reachable configurations over the first bag (min weight
    per state; exhaustive over insertion orders and close designations)."""
    vertices = sorted(mask_to_indices(bag_mask))
    row = {}
    best = {}
    stack = [seg.empty_config()]
    while stack:
        config = stack.pop()
        if config.placed == bag_mask:
            if form_valid(config):
                origin = 1 if nontrivial_count(config) == 2 else None
                _push(row, Entry(config, origin, None), checks, 1, bag_mask, None)
            continue
        for w in vertices:
            if config.placed >> w & 1:
                continue
            for cand, changed in _placements(config, graph, order, w):
                for variant in _with_wraps(cand, order, changed):
                    key = state_key(Entry(variant, None, None))
                    old = best.get(key)
                    if old is None or variant.weight < old:
                        best[key] = variant.weight
                        stack.append(variant)
    return row


def step(row, graph, order, bag_index, bag_mask, forgotten, introduced,
         checks, is_last):
    """One forget+introduce transition of the dynamic program."""
    new_row = {}
    for entry in row.values():
        config = entry.config
        # the forgotten vertex must be interior in every entry still used
        u_interior = False
        for f in config.fragments:
            if f.vset >> forgotten & 1:
                u_interior = len(f.seq) > 2 and forgotten not in (f.seq[0], f.seq[-1])
                break
        if not u_interior:
            continue
        pred_sig = lemma_signature(config, bag_mask & ~(1 << introduced) | (1 << forgotten))
        old_nt = nontrivial_count(config)
        for cand, changed in _placements(config, graph, order, introduced):
            for variant in _with_wraps(cand, order, changed):
                if not is_last:
                    if not form_valid(variant):
                        continue
                    if not terminals_in_bag(variant, bag_mask):
                        continue
                new_nt = nontrivial_count(variant)
                if new_nt == 2:
                    if old_nt == 2:
                        origin = entry.origin_bag
                        if origin == bag_index - 1:
                            origin_sig = pred_sig
                        else:
                            origin_sig = entry.origin_sig
                    else:
                        origin, origin_sig = bag_index, None
                else:
                    origin, origin_sig = None, None
                new_entry = Entry(variant, origin, origin_sig)
                _push(new_row, new_entry, checks, bag_index, bag_mask,
                      pred_sig if not is_last else None)
    return new_row


def _accept_cycle(row, graph, order, n, inst):
    """Cycle-form acceptance: one fragment over V plus the virtual edge
    between its terminals."""
    full = (1 << n) - 1
    best = None
    best_seq = None
    for entry in row.values():
        config = entry.config
        if len(config.fragments) != 1:
            continue
        frag = config.fragments[0]
        if frag.vset != full:
            continue
        a, b = frag.seq[-1], frag.seq[0]
        if not graph.has_edge_idx(a, b):
            continue
        total = config.weight + graph.weight_idx(a, b)
        if frag.kind == seg.CLOSE:
            lam = frag.seq[frag.split:] + frag.seq[: frag.split]
        else:
            lam = frag.seq
        if best is None or total < best:
            best = total
            best_seq = lam
    if best_seq is None:
        return None
    sol = solution_from_indices(inst, best_seq, kind=CYCLE)
    report = validate_solution(inst, sol)
    assert report.valid, f"solver produced invalid solution: {report.violation}"
    return sol


def solve_cycle_pw4(inst: Instance, decomp: Optional[NormalPathDecomposition] = None,
                    stats: Optional[dict] = None) -> Optional[Solution]:
    """Minimum-weight order-extending Hamiltonian cycle, pathwidth <= 4.

    Returns None iff no such cycle exists.  Small instances go to the exact
    oracle; everything returned is re-validated end to end.
    """
    if inst.kind != CYCLE:
        raise ValueError("solve_cycle_pw4 expects a cycle instance")
    g, order, n = inst.graph, inst.order, inst.graph.n
    if n < 6:
        res = oracle_solve(inst)
        assert res.status != "unknown"
        return res.solution
    if decomp is None:
        found = find_path_decomposition(g, 4)
        if found is None:
            raise WidthTooLargeError("pathwidth exceeds 4")
        decomp = normalize_path(found, g)
    check = validate_normal_path(decomp, g)
    if isinstance(check, Violation):
        raise DecompositionInvalidError(check.message)

    checks = DpChecks()
    row = base_row(g, order, decomp.bags[0], checks)
    k = len(decomp.bags)
    later = [0] * (k + 1)
    for j in range(k - 1, 0, -1):
        later[j] = later[j + 1] | 1 << decomp.intro[j]
    for i in range(1, k):
        # the forgotten vertex never has edges to later-introduced vertices
        u = decomp.forget[i]
        assert not g.adj[u] & later[i], "forgotten vertex still has future edges"
        row = step(row, g, order, i + 1, decomp.bags[i], u, decomp.intro[i],
                   checks, is_last=(i == k - 1))
    if stats is not None:
        stats["distinct_mappings"] = len(checks.distinct_mappings)
        stats["bags"] = k
    return _accept_cycle(row, g, order, n, inst)


def add_universal_vertex(inst: Instance, name: str = "__hub__"):
    """G plus a universal vertex with zero-weight edges, made order-maximal."""
    g = inst.graph
    while name in g.index:
        name += "_"
    names = g.names + (name,)
    g2 = Graph(names)
    for (a, b), wt in g.edges_idx():
        g2.add_edge_idx(a, b, wt)
    hub = g.n
    for v in range(g.n):
        g2.add_edge_idx(v, hub, 0)
    pairs = list(inst.order.pairs()) + [(v, hub) for v in range(g.n)]
    order2 = close_order(g.n + 1, pairs)
    return Instance(g2, order2, CYCLE, inst.objective), hub


def solve_path_pw3(inst: Instance, decomp: Optional[NormalPathDecomposition] = None,
                   stats: Optional[dict] = None) -> Optional[Solution]:
    """Minimum-weight order-extending Hamiltonian path, pathwidth <= 3,
    by solving the cycle problem on the graph plus a universal vertex."""
    if inst.kind != PATH:
        raise ValueError("solve_path_pw3 expects a path instance")
    g = inst.graph
    if g.n < 5:
        res = oracle_solve(inst)
        assert res.status != "unknown"
        return res.solution
    wrapped, hub = add_universal_vertex(inst)
    if decomp is None:
        found = find_path_decomposition(g, 3)
        if found is None:
            raise WidthTooLargeError("pathwidth exceeds 3")
        bags = [b | 1 << hub for b in found.bags]
        from .decomp import PathDecomposition
        decomp = normalize_path(PathDecomposition(bags), wrapped.graph)
    sol = solve_cycle_pw4(wrapped, decomp, stats)
    if sol is None:
        return None
    assert sol.order[-1] == wrapped.graph.names[hub]
    path_sol = solution_from_indices(inst, [g.idx(v) for v in sol.order[:-1]], kind=PATH)
    assert path_sol.weight == sol.weight
    report = validate_solution(inst, path_sol)
    assert report.valid, f"solver produced invalid solution: {report.violation}"
    return path_sol


# ---------------------------------------------------------------------------
# signature enumeration (spec surface; the DP itself propagates forward)


def enumerate_signatures(bag, i: int, bag_size: int = 5, last: bool = False):
    """All valid abstract signatures of a bag: path/role/kind assignments
    plus the origin index for two-path states.  Count is O(n) per bag."""
    bag = tuple(sorted(bag))
    assert len(bag) == bag_size
    sigs = []
    for parts in _set_partitions(bag):
        nontrivial = [p for p in parts if len(p) > 1]
        solos = [p for p in parts if len(p) == 1]
        if len(nontrivial) > 2 or len(solos) > 2:
            continue
        if len(nontrivial) == 2 and solos:
            continue
        if len(nontrivial) == 0:
            continue
        term_choices = []
        for p in nontrivial:
            term_choices.append([(s, e) for s in p for e in p if s != e])
        for terms in itertools.product(*term_choices):
            kind_options = []
            slots = len(nontrivial) + len(solos)
            for close_at in range(-1, slots):
                kinds = ["mid"] * slots
                if close_at >= 0:
                    kinds[close_at] = "close"
                kind_options.append(tuple(kinds))
            for kinds in kind_options:
                if len(nontrivial) == 2:
                    for origin in range(1, i + 1):
                        sigs.append((parts, terms, kinds, origin))
                else:
                    sigs.append((parts, terms, kinds, None))
    if last:
        sigs.append((("cycle",), (), ("close",), None))
    return sigs


def _set_partitions(items):
    items = list(items)
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for sub in _set_partitions(rest):
        yield ((first,),) + sub
        for idx, block in enumerate(sub):
            yield sub[:idx] + ((first,) + block,) + sub[idx + 1:]
