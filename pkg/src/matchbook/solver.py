"""Exact matching book thickness.

Feasibility of k pages for a fixed spine is k-colourability of the
conflict graph on edges (two edges conflict when they share an endpoint or
interleave on the spine), so one backtracking colouring kernel serves both
the page search and the exact chromatic-index oracle (which is the same
kernel on the shared-endpoint conflicts alone).

The search for the thickness iterates k upward from a certified lower
bound and enumerates spine orders one per dihedral symmetry class, so the
first feasible level is exact and carries an exhaustiveness certificate.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice, permutations

from .graphs import (
    Graph,
    bipartition,
    is_connected,
    is_regular,
    max_degree,
)
from .layout import BookEmbedding

FOUND = "found"
INFEASIBLE = "infeasible"
UNKNOWN = "unknown"

DEFAULT_ORDER_NODES = 500_000
DEFAULT_CHI_NODES = 2_000_000


@dataclass(frozen=True)
class ColoringOutcome:
    status: str
    colors: tuple[int, ...] | None = None
    nodes: int = 0


def conflict_masks(g: Graph, spine: tuple[int, ...]) -> list[int]:
    """Adjacency bitmasks of the page-conflict graph on g's canonical edges."""
    pos = [0] * g.n
    for i, v in enumerate(spine):
        pos[v] = i
    spans = []
    for u, v in g.edges:
        pu, pv = pos[u], pos[v]
        spans.append((pu, pv) if pu < pv else (pv, pu))
    m = len(spans)
    masks = [0] * m
    es = g.edges
    for i in range(m):
        a, b = spans[i]
        ui, vi = es[i]
        for j in range(i + 1, m):
            c, d = spans[j]
            uj, vj = es[j]
            if (
                (a < c < b < d)
                or (c < a < d < b)
                or ui == uj
                or ui == vj
                or vi == uj
                or vi == vj
            ):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return masks


def endpoint_conflict_masks(g: Graph) -> list[int]:
    """Conflict bitmasks from shared endpoints only (the line graph)."""
    masks = [0] * g.m
    for i in range(g.m):
        u, v = g.edges[i]
        for j in range(i + 1, g.m):
            x, y = g.edges[j]
            if u == x or u == y or v == x or v == y:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return masks


def color_graph(masks: list[int], k: int, node_budget: int = DEFAULT_ORDER_NODES) -> ColoringOutcome:
    """Exact k-colourability by saturation-ordered backtracking.

    Unused colour indices are interchangeable, so at most one fresh colour
    is branched per step, and used colours always form the prefix 0..u-1.
    Returns FOUND with an assignment, INFEASIBLE after a complete search,
    or UNKNOWN once the node budget runs out.
    """
    m = len(masks)
    if m == 0:
        return ColoringOutcome(FOUND, ())
    if k <= 0:
        return ColoringOutcome(INFEASIBLE)
    full = (1 << k) - 1
    degs = [mask.bit_count() for mask in masks]
    colors = [-1] * m
    forb = [0] * m
    counts = [[0] * k for _ in range(m)]
    usage = [0] * k
    state = {"nodes": 0, "used": 0}
    found: list[tuple[int, ...] | None] = [None]

    def pick() -> int:
        best, key = -1, None
        for v in range(m):
            if colors[v] < 0:
                cand = (forb[v].bit_count(), degs[v], -v)
                if key is None or cand > key:
                    best, key = v, cand
        return best

    def assign(v: int, c: int) -> None:
        colors[v] = c
        bit = 1 << c
        rest = masks[v]
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            rest ^= low
            if colors[u] < 0:
                cu = counts[u]
                cu[c] += 1
                if cu[c] == 1:
                    forb[u] |= bit

    def undo(v: int, c: int) -> None:
        colors[v] = -1
        bit = 1 << c
        rest = masks[v]
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            rest ^= low
            if colors[u] < 0:
                cu = counts[u]
                cu[c] -= 1
                if cu[c] == 0:
                    forb[u] &= ~bit

    def search() -> str:
        v = pick()
        if v < 0:
            found[0] = tuple(colors)
            return FOUND
        avail = ~forb[v] & full
        if not avail:
            return INFEASIBLE
        used = state["used"]
        limit = used + 1 if used < k else k
        out = INFEASIBLE
        for c in range(limit):
            if not avail >> c & 1:
                continue
            state["nodes"] += 1
            if state["nodes"] > node_budget:
                return UNKNOWN
            assign(v, c)
            usage[c] += 1
            if usage[c] == 1:
                state["used"] += 1
            r = search()
            usage[c] -= 1
            if usage[c] == 0:
                state["used"] -= 1
            undo(v, c)
            if r == FOUND:
                return FOUND
            if r == UNKNOWN:
                out = UNKNOWN
        return out

    status = search()
    return ColoringOutcome(status, found[0], state["nodes"])


@dataclass(frozen=True)
class PageSearch:
    status: str
    pages: tuple[int, ...] | None
    nodes: int


def _require_spine(g: Graph, spine) -> tuple[int, ...]:
    spine = tuple(spine)
    if sorted(spine) != list(range(g.n)):
        raise ValueError("spine is not a permutation of the graph's vertices")
    return spine


def feasible_pages(
    g: Graph, spine, k: int, node_budget: int = DEFAULT_ORDER_NODES
) -> PageSearch:
    """Search for a k-page assignment under a fixed spine order.

    The status distinguishes a proven infeasibility from a search that ran
    out of budget.
    """
    spine = _require_spine(g, spine)
    out = color_graph(conflict_masks(g, spine), k, node_budget)
    return PageSearch(out.status, out.colors, out.nodes)


def first_fit_pages(g: Graph, spine) -> tuple[int, ...]:
    """Greedy page assignment in canonical edge order; always valid."""
    spine = _require_spine(g, spine)
    masks = conflict_masks(g, spine)
    pages = [0] * g.m
    for i in range(g.m):
        taken = 0
        rest = masks[i] & ((1 << i) - 1)
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            rest ^= low
            taken |= 1 << pages[j]
        c = 0
        while taken >> c & 1:
            c += 1
        pages[i] = c
    return tuple(pages)


@dataclass(frozen=True)
class EdgeColoringResult:
    value: int
    coloring: tuple[int, ...]
    nodes: int


def edge_chromatic_exact(g: Graph, node_budget: int = DEFAULT_CHI_NODES) -> EdgeColoringResult | None:
    """Exact chromatic index, or None when out of budget.

    Colours the shared-endpoint conflict graph, searching k upward from the
    max-degree bound so the first success is exact.
    """
    if g.m > 80:
        return None
    if g.m == 0:
        return EdgeColoringResult(0, (), 0)
    masks = endpoint_conflict_masks(g)
    total = 0
    for k in range(max_degree(g), g.m + 1):
        out = color_graph(masks, k, node_budget)
        total += out.nodes
        if out.status == FOUND:
            return EdgeColoringResult(k, out.colors, total)
        if out.status == UNKNOWN:
            return None
    return None


@dataclass(frozen=True)
class BoundCertificate:
    """Provable page lower bound with re-checkable evidence."""

    value: int
    reason: str  # max-degree | chromatic-index | regular-nonbipartite
    max_degree: int
    regular_degree: int | None = None
    odd_cycle: tuple[int, ...] | None = None
    chromatic_index: int | None = None
    edge_coloring: tuple[int, ...] | None = None


def lower_bound(g: Graph, chi_nodes: int = DEFAULT_CHI_NODES) -> BoundCertificate:
    """Best provable lower bound on the number of pages.

    The max degree always holds, the chromatic index refines it, and a
    regular graph containing an odd cycle cannot meet the max-degree bound
    at all, which pushes the bound to max degree + 1.
    """
    if not is_connected(g):
        raise ValueError("lower_bound requires a connected graph")
    d = max_degree(g)
    reg = is_regular(g)
    part = bipartition(g)
    if reg is not None and not part.is_bipartite:
        return BoundCertificate(
            d + 1, "regular-nonbipartite", d, regular_degree=reg, odd_cycle=part.odd_cycle
        )
    chi = edge_chromatic_exact(g, chi_nodes)
    if chi is not None and chi.value > d:
        return BoundCertificate(
            chi.value, "chromatic-index", d, chromatic_index=chi.value, edge_coloring=chi.coloring
        )
    return BoundCertificate(d, "max-degree", d)


@dataclass
class SolveOptions:
    max_pages: int | None = None
    timeout_s: float | None = 600.0
    jobs: int = 1
    symmetry: bool = True
    order_nodes: int = DEFAULT_ORDER_NODES
    chi_nodes: int = DEFAULT_CHI_NODES
    chunk_size: int = 128


@dataclass
class SolveStats:
    orders_tested: int = 0
    nodes: int = 0
    elapsed_s: float = 0.0
    per_level: dict[int, int] = field(default_factory=dict)
    timed_out: bool = False


@dataclass
class SolveResult:
    value: int | None
    witness: BookEmbedding | None
    exhaustive: bool
    bound: BoundCertificate
    stats: SolveStats


def spine_orders(n: int, symmetry: bool = True):
    """Spine permutations; with symmetry=True, one per dihedral class
    (vertex 0 pinned to position 0, reflections dropped)."""
    if n == 0:
        yield ()
        return
    if not symmetry:
        yield from permutations(range(n))
        return
    if n == 1:
        yield (0,)
        return
    for rest in permutations(range(1, n)):
        if n >= 3 and rest[0] > rest[-1]:
            continue
        yield (0, *rest)


def _scan_chunk(payload, spines, k, node_budget):
    n, edges = payload
    g = Graph(n, edges)
    unknown = False
    nodes = 0
    for i, spine in enumerate(spines):
        out = color_graph(conflict_masks(g, spine), k, node_budget)
        nodes += out.nodes
        if out.status == FOUND:
            return i, out.colors, unknown, nodes
        if out.status == UNKNOWN:
            unknown = True
    return -1, None, unknown, nodes


def _scan_level(g: Graph, k: int, opts: SolveOptions, deadline: float | None, stats: SolveStats):
    """Scan spine orders at page budget k.

    Returns (found, any_unknown, timed_out); found is (spine, pages) for
    the earliest feasible order in enumeration sequence, which keeps the
    result deterministic for any worker count.
    """
    orders = spine_orders(g.n, opts.symmetry)
    unknown = False
    tested = 0
    if opts.jobs <= 1:
        for spine in orders:
            if deadline is not None and time.monotonic() > deadline:
                stats.per_level[k] = tested
                return None, unknown, True
            out = color_graph(conflict_masks(g, spine), k, opts.order_nodes)
            tested += 1
            stats.orders_tested += 1
            stats.nodes += out.nodes
            if out.status == FOUND:
                stats.per_level[k] = tested
                return (spine, out.colors), unknown, False
            if out.status == UNKNOWN:
                unknown = True
        stats.per_level[k] = tested
        return None, unknown, False

    payload = (g.n, g.edges)
    with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
        while True:
            wave = []
            for _ in range(opts.jobs):
                chunk = tuple(islice(orders, opts.chunk_size))
                if not chunk:
                    break
                wave.append(chunk)
            if not wave:
                break
            futures = [
                pool.submit(_scan_chunk, payload, ch, k, opts.order_nodes) for ch in wave
            ]
            results = [f.result() for f in futures]
            for ch, (idx, pages, ch_unknown, ch_nodes) in zip(wave, results):
                stats.nodes += ch_nodes
                unknown = unknown or ch_unknown
                if idx >= 0:
                    tested += idx + 1
                    stats.orders_tested += idx + 1
                    stats.per_level[k] = tested
                    return (ch[idx], pages), unknown, False
                tested += len(ch)
                stats.orders_tested += len(ch)
            if deadline is not None and time.monotonic() > deadline:
                stats.per_level[k] = tested
                return None, unknown, True
    stats.per_level[k] = tested
    return None, unknown, False


def _embedding_from(g: Graph, spine: tuple[int, ...], pages: tuple[int, ...]) -> BookEmbedding:
    count = max(pages) + 1 if pages else 0
    return BookEmbedding(g, spine, pages, count)


def exact_mbt(g: Graph, opts: SolveOptions | None = None) -> SolveResult:
    """Smallest page count over all spine orders.

    k is searched upward from the certified lower bound, so the first
    feasible level is the answer; ``exhaustive`` is set when every level
    below it was either fully refuted or already below the bound.
    """
    opts = opts or SolveOptions()
    if not is_connected(g):
        raise ValueError("exact_mbt requires a connected graph")
    start = time.monotonic()
    deadline = start + opts.timeout_s if opts.timeout_s is not None else None
    cert = lower_bound(g, opts.chi_nodes)
    stats = SolveStats()

    id_spine = tuple(range(g.n))
    greedy = first_fit_pages(g, id_spine)
    upper = max(greedy, default=-1) + 1
    fallback = _embedding_from(g, id_spine, greedy)
    assert upper >= cert.value, "valid embedding beats the lower bound"

    clean_below = True
    hi = upper if opts.max_pages is None else min(upper, opts.max_pages + 1)
    for k in range(cert.value, hi):
        found, level_unknown, timed = _scan_level(g, k, opts, deadline, stats)
        if timed:
            stats.timed_out = True
            stats.elapsed_s = time.monotonic() - start
            return SolveResult(upper, fallback, False, cert, stats)
        if found is not None:
            spine, pages = found
            emb = _embedding_from(g, spine, pages)
            stats.elapsed_s = time.monotonic() - start
            return SolveResult(emb.page_count, emb, clean_below, cert, stats)
        clean_below = clean_below and not level_unknown
    stats.elapsed_s = time.monotonic() - start
    if opts.max_pages is not None and upper > opts.max_pages:
        return SolveResult(None, None, False, cert, stats)
    return SolveResult(upper, fallback, clean_below, cert, stats)
