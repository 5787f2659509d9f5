"""Canonical forms and automorphism groups under Aut(Q_n) = translations x S_n.

The core is a minimal-image search over coordinate permutations.  Candidate
images are compared stage by stage: stage k is the sorted multiset of
(color, first k image bits) over the family.  Comparing stages column-major
keeps sibling pruning sound and lets ties be cut by automorphisms already
discovered (the usual isomorph-rejection argument: every minimal leaf is
either explored or mapped to an explored one by a known automorphism, so
the discovered set generates the full stabilizer).

Translations are handled by anchoring: S is equivalent to S + s for s in S,
and anchors in the same coset of the kernel give literally the same family,
so only one representative per coset is searched.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .cube import CubeAutomorphism, apply_perm
from .gf2 import affine_rank, gf2_span
from .spectral import indicator_values, kernel_of_partition, spectrum_support, wht

__all__ = [
    "canonical_form",
    "canonical_family",
    "canonical_form_partition",
    "automorphism_info",
    "AutInfo",
    "FamilyResult",
    "double_count",
    "graph_canonical_form",
    "graph_automorphism_order",
    "perm_group_order",
    "perm_orbits",
    "invariant_key",
]


# ---------------------------------------------------------------------------
# permutation-group helpers (points 0..n-1, perms as tuples: i -> p[i])


def perm_group_order(gens: Sequence[Tuple[int, ...]], n: int) -> int:
    """Order of the group generated by gens, by Schreier-Sims."""
    gens = [tuple(g) for g in gens if tuple(g) != tuple(range(n))]
    if not gens:
        return 1
    order = 1
    points = list(range(n))
    while gens:
        base = next(
            p for p in points if any(g[p] != p for g in gens)
        )
        # orbit of base with transversal
        transversal: Dict[int, Tuple[int, ...]] = {base: tuple(range(n))}
        frontier = [base]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = g[x]
                if y not in transversal:
                    transversal[y] = tuple(g[t] for t in transversal[x])
                    frontier.append(y)
        order *= len(transversal)
        # Schreier generators for the stabilizer of base
        stab_gens = set()
        for x, t in transversal.items():
            for g in gens:
                u = transversal[g[x]]
                uinv = [0] * n
                for i, j in enumerate(u):
                    uinv[j] = i
                sg = tuple(uinv[g[t[i]]] for i in range(n))
                if sg != tuple(range(n)):
                    stab_gens.add(sg)
        gens = [g for g in stab_gens if g[base] == base]
        points = [p for p in points if p != base]
    return order


def perm_orbits(gens: Sequence[Tuple[int, ...]], n: int) -> List[List[int]]:
    """Orbits of the generated group on points 0..n-1."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i in range(n):
            a, b = find(i), find(g[i])
            if a != b:
                parent[a] = b
    groups: Dict[int, List[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def _invert(p: Sequence[int]) -> Tuple[int, ...]:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _compose(p: Sequence[int], q: Sequence[int]) -> Tuple[int, ...]:
    """Permutation acting as q then p (i -> p[q[i]])."""
    return tuple(p[q[i]] for i in range(len(p)))


# ---------------------------------------------------------------------------
# minimal-image search


def _lex_cmp(a: np.ndarray, b: np.ndarray) -> int:
    if np.array_equal(a, b):
        return 0
    d = int(np.flatnonzero(a != b)[0])
    return -1 if a[d] < b[d] else 1


class _UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


@dataclass
class FamilyResult:
    """Outcome of a minimal-image search."""

    n: int
    canonical: List[Tuple[int, int]]  # sorted (color, word) pairs
    perm_gens: List[Tuple[int, ...]]  # stabilizer generators in S_n
    cube_gens: List[CubeAutomorphism]  # with translations (anchored mode)
    kernel_basis: List[int]  # translation part of the stabilizer

    def stabilizer_order(self) -> int:
        return (1 << len(self.kernel_basis)) * perm_group_order(
            self.perm_gens, self.n
        )


class _MinImage:
    """Shared state of one minimal-image computation."""

    def __init__(self, n: int, colors: np.ndarray):
        self.n = n
        self.colors = colors.astype(np.int64)
        self.best_stages: Optional[List[np.ndarray]] = None
        self.best_perm: Optional[Tuple[int, ...]] = None
        self.best_anchor: Optional[int] = None
        self.found: List[Tuple[int, Tuple[int, ...]]] = []  # (anchor, perm)
        self.gens: List[Tuple[int, Tuple[int, ...], int]] = []
        # gens entries: (anchor-style perm, see _record_tie)

    # -- automorphism bookkeeping -------------------------------------------

    def _record_leaf(
        self, anchor: int, path: Tuple[int, ...], keys: np.ndarray
    ) -> Optional[Tuple[Tuple[int, ...], int, Tuple[int, ...], int]]:
        """Update best / return tie info ((best_perm, best_anchor), ...)."""
        stage = np.sort(keys)
        if self.best_stages is None or _lex_cmp(stage, self.best_stages[-1]) < 0:
            self.best_perm = path
            self.best_anchor = anchor
            self._rebuild_stages(keys)
            return None
        if _lex_cmp(stage, self.best_stages[-1]) == 0:
            assert self.best_perm is not None and self.best_anchor is not None
            return (self.best_perm, self.best_anchor, path, anchor)
        return None

    def _rebuild_stages(self, leaf_keys: np.ndarray) -> None:
        # stage k data is recoverable by shifting the leaf keys: the color
        # index sits above bit n, prefixes below
        n = self.n
        stages = []
        for k in range(n + 1):
            shifted = (leaf_keys >> (n - k)).astype(np.int64)
            stages.append(np.sort(shifted))
        self.best_stages = stages


def _search_family(
    state: _MinImage,
    anchor: int,
    words: np.ndarray,
    root_coords: Optional[Sequence[int]],
    coord_gens_for_anchor,
    on_tie,
) -> None:
    """DFS minimal image for one anchored family."""
    n = state.n
    bit_table = [((words >> (n - 1 - c)) & 1).astype(np.int64) for c in range(n)]
    base_keys = state.colors.copy()

    def descend(keys: np.ndarray, depth: int, avail: List[int], path: List[int]):
        if depth == n:
            tie = state._record_leaf(anchor, tuple(path), keys)
            if tie is not None:
                on_tie(*tie)
            return
        cands = []
        best_sorted: Optional[np.ndarray] = None
        for c in avail:
            child = keys * 2 + bit_table[c]
            sc = np.sort(child)
            if best_sorted is None:
                best_sorted = sc
                cands = [(c, child, sc)]
            else:
                cmp = _lex_cmp(sc, best_sorted)
                if cmp < 0:
                    best_sorted = sc
                    cands = [(c, child, sc)]
                elif cmp == 0:
                    cands.append((c, child, sc))
        assert best_sorted is not None
        if state.best_stages is not None:
            cmp = _lex_cmp(best_sorted, state.best_stages[depth + 1])
            if cmp > 0:
                return
            if cmp < 0:
                state.best_stages = None  # forces replacement at next leaf
        # prune tied siblings that a known automorphism maps to each other
        if len(cands) > 1:
            uf = _UnionFind([c for c, _, _ in cands])
            cand_set = {c for c, _, _ in cands}
            for g in coord_gens_for_anchor(anchor):
                if all(g[p] == p for p in path):
                    for c in cand_set:
                        if g[c] in cand_set:
                            uf.union(c, g[c])
            seen = set()
            kept = []
            for item in cands:
                root = uf.find(item[0])
                if root not in seen:
                    seen.add(root)
                    kept.append(item)
            cands = kept
        for c, child, _ in cands:
            avail2 = [x for x in avail if x != c]
            path.append(c)
            descend(child, depth + 1, avail2, path)
            path.pop()

    descend(base_keys, 0, list(root_coords) if root_coords is not None else list(range(n)), [])


def canonical_family(
    items: Sequence[Tuple[int, int]], n: int
) -> FamilyResult:
    """Minimal image of a multiset of (color, word) pairs under S_n only."""
    if not items:
        return FamilyResult(n, [], [tuple(range(n))], [], [])
    order = sorted(range(len(items)), key=lambda i: items[i][0])
    colors_sorted = [items[i][0] for i in order]
    palette = sorted(set(colors_sorted))
    color_idx = np.array(
        [palette.index(c) << n for c in colors_sorted], dtype=np.int64
    )
    words = np.array([items[i][1] for i in order], dtype=np.int64)

    state = _MinImage(n, color_idx)
    gens: List[Tuple[int, ...]] = []

    def on_tie(best_perm, _ba, path, _a):
        src_best = _perm_from_path(best_perm, n)
        src_new = _perm_from_path(path, n)
        g = _compose(_invert(src_best), src_new)
        if g != tuple(range(n)) and g not in gens:
            gens.append(g)

    def coord_gens(_anchor):
        return gens

    _search_family(state, 0, words, None, coord_gens, on_tie)
    canonical = _decode_keys(state.best_stages[-1], palette, n)
    return FamilyResult(n, canonical, gens or [], [], [])


def _perm_from_path(path: Sequence[int], n: int) -> Tuple[int, ...]:
    """path[k] = source coordinate sent to target k; returns src->target perm."""
    perm = [0] * n
    for target, source in enumerate(path):
        perm[source] = target
    return tuple(perm)


def _decode_keys(
    keys: np.ndarray, palette: Sequence[int], n: int
) -> List[Tuple[int, int]]:
    mask = (1 << n) - 1
    return [(palette[int(k) >> n], int(k) & mask) for k in keys]


# ---------------------------------------------------------------------------
# vertex sets under the full automorphism group


def _anchor_classes(members: Sequence[int], kernel_basis: Sequence[int]):
    """One representative per coset of the kernel inside the set."""
    span = gf2_span(kernel_basis)
    seen = set()
    reps = []
    rep_of = {}
    for v in sorted(members):
        if v in seen:
            continue
        reps.append(v)
        for t in span:
            seen.add(v ^ t)
            rep_of[v ^ t] = v
    return reps, rep_of


def canonical_vertex_family(
    cells: Sequence[Sequence[int]], n: int
) -> FamilyResult:
    """Minimal image of colored vertex cells under translations and S_n.

    cells[0] also supplies the translation anchors; colors are the cell
    indices, which every automorphism must preserve.
    """
    members0 = sorted(cells[0])
    if not members0:
        raise ValueError("anchor cell must be nonempty")
    all_words: List[int] = []
    colors: List[int] = []
    for k, cell in enumerate(cells):
        for v in sorted(cell):
            colors.append(k)
            all_words.append(v)
    union = indicator_values(all_words, n)
    if int(union.max(initial=0)) > 1:
        raise ValueError("cells overlap")

    kernel = _joint_kernel(cells, n)
    reps, rep_of = _anchor_classes(members0, kernel)
    color_idx = np.array([c << n for c in colors], dtype=np.int64)
    base_words = np.array(all_words, dtype=np.int64)

    state = _MinImage(n, color_idx)
    cube_gens: List[CubeAutomorphism] = []
    anchor_uf = _UnionFind(reps)

    def to_cube(anchor: int, path: Tuple[int, ...]) -> CubeAutomorphism:
        perm = _perm_from_path(path, n)
        return CubeAutomorphism(n, perm, apply_perm(perm, anchor, n))

    def on_tie(best_perm, best_anchor, path, anchor):
        phi_best = to_cube(best_anchor, best_perm)
        phi_new = to_cube(anchor, path)
        g = phi_best.inverse().compose(phi_new)
        if g.shift == 0 and g.perm == tuple(range(n)):
            return
        if g not in cube_gens:
            cube_gens.append(g)
            for r in reps:
                img = g.apply(r)
                anchor_uf.union(r, rep_of[img])

    def coord_gens(anchor):
        out = []
        for g in cube_gens:
            if rep_of[g.apply(anchor)] == anchor:
                out.append(g.perm)
        return out

    # stage-1 root filter: keep (anchor, coord) pairs whose first image
    # column is best possible (most zeros, per color group)
    group_slices: List[np.ndarray] = []
    for k in range(len(cells)):
        group_slices.append(np.flatnonzero(np.array(colors) == k))
    cnt = np.stack(
        [
            np.array(
                [int(((base_words[idx] >> (n - 1 - c)) & 1).sum()) for c in range(n)]
            )
            for idx in group_slices
        ]
    )  # shape (groups, n): ones per column per group
    sizes = np.array([len(idx) for idx in group_slices])

    def stage1_vector(anchor: int, c: int) -> Tuple[int, ...]:
        out = []
        for gidx in range(len(group_slices)):
            ones = int(cnt[gidx][c])
            if (anchor >> (n - 1 - c)) & 1:
                out.append(ones)
            else:
                out.append(int(sizes[gidx]) - ones)
        return tuple(out)

    table = {
        (s, c): stage1_vector(s, c) for s in reps for c in range(n)
    }
    best_vec = max(table.values())
    allowed = {
        s: [c for c in range(n) if table[(s, c)] == best_vec] for s in reps
    }

    processed = set()
    for s in sorted(reps, key=lambda r: min(table[(r, c)] for c in range(n))):
        if not allowed[s]:
            continue
        root = anchor_uf.find(s)
        if root in processed:
            continue
        processed.add(root)
        _search_family(
            state, s, base_words ^ s, allowed[s], coord_gens, on_tie
        )
    canonical = _decode_keys(state.best_stages[-1], list(range(len(cells))), n)
    perm_gens = [g.perm for g in cube_gens]
    return FamilyResult(n, canonical, perm_gens, cube_gens, kernel)


def _joint_kernel(cells: Sequence[Sequence[int]], n: int) -> List[int]:
    """Basis of translations fixing every cell."""
    supports: List[int] = []
    for cell in cells[:-1] if len(cells) > 1 else cells:
        supports.extend(spectrum_support(wht(indicator_values(cell, n))))
    from .gf2 import orthogonal_complement

    return orthogonal_complement(supports, n)


# ---------------------------------------------------------------------------
# public surface


_SET_MAGIC = b"EQS1"
_FAM_MAGIC = b"EQF1"
_GRAPH_MAGIC = b"EQG1"


def _pack_words(pairs: Sequence[Tuple[int, int]]) -> bytes:
    out = bytearray()
    for color, word in pairs:
        out += color.to_bytes(2, "big") + word.to_bytes(2, "big")
    return bytes(out)


def canonical_form(vertices: Sequence[int], n: int) -> bytes:
    """Byte certificate, equal for S and S' iff S' = t + pi(S)."""
    members = sorted(set(vertices))
    if not members or len(members) == 1 << n:
        return _SET_MAGIC + bytes([n]) + len(members).to_bytes(4, "big")
    result = canonical_vertex_family([members], n)
    return _SET_MAGIC + bytes([n]) + _pack_words(result.canonical)


def canonical_form_partition(cells: Sequence[Sequence[int]], n: int) -> bytes:
    """Partition certificate: sorted multiset of the cells' certificates."""
    forms = sorted(canonical_form(cell, n) for cell in cells)
    return b"EQP1" + bytes([n]) + b"".join(forms)


@dataclass(frozen=True)
class AutInfo:
    order: int
    generators: Tuple[CubeAutomorphism, ...]
    coordinate_orbits: Tuple[Tuple[int, ...], ...]  # 1-based coordinates
    cell_orbit_sizes: Tuple[Tuple[int, ...], ...]  # on S, then complement
    kernel_basis: Tuple[int, ...]


def automorphism_info(vertices: Sequence[int], n: int) -> AutInfo:
    members = sorted(set(vertices))
    if not members or len(members) == 1 << n:
        gens = _full_group_gens(n)
        sizes = ((len(members),),) if members else ((),)
        comp = (1 << n) - len(members)
        return AutInfo(
            (1 << n) * factorial(n),
            tuple(gens),
            (tuple(range(1, n + 1)),),
            (tuple([len(members)] if members else []), tuple([comp] if comp else [])),
            tuple(1 << k for k in range(n)),
        )
    result = canonical_vertex_family([members], n)
    order = result.stabilizer_order()
    gens = list(result.cube_gens) + [
        CubeAutomorphism(n, tuple(range(n)), t) for t in result.kernel_basis
    ]
    coord = tuple(
        tuple(p + 1 for p in orbit)
        for orbit in perm_orbits([g.perm for g in result.cube_gens], n)
    )
    member_set = set(members)
    complement = [v for v in range(1 << n) if v not in member_set]
    orbit_sizes = _vertex_orbit_sizes(gens, n, [members, complement])
    return AutInfo(
        order, tuple(gens), coord, tuple(orbit_sizes), tuple(result.kernel_basis)
    )


def _full_group_gens(n: int) -> List[CubeAutomorphism]:
    gens = [CubeAutomorphism(n, tuple(range(n)), 1)]
    if n > 1:
        swap = list(range(n))
        swap[0], swap[1] = swap[1], swap[0]
        cycle = [(i + 1) % n for i in range(n)]
        gens.append(CubeAutomorphism(n, tuple(swap), 0))
        gens.append(CubeAutomorphism(n, tuple(cycle), 0))
    return gens


def _vertex_orbit_sizes(
    gens: Sequence[CubeAutomorphism], n: int, cells: Sequence[Sequence[int]]
) -> List[Tuple[int, ...]]:
    parent = list(range(1 << n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        table = g.apply
        for v in range(1 << n):
            a, b = find(v), find(table(v))
            if a != b:
                parent[a] = b
    out = []
    for cell in cells:
        counts: Dict[int, int] = {}
        for v in cell:
            r = find(v)
            counts[r] = counts.get(r, 0) + 1
        out.append(tuple(sorted(counts.values(), reverse=True)))
    return out


def double_count(orders: Sequence[int], n: int, expected_total: int) -> bool:
    """Orbit-stabilizer check: sum of 2^n n!/|Aut_i| equals the labeled count."""
    group = (1 << n) * factorial(n)
    total = 0
    for order in orders:
        if group % order:
            return False
        total += group // order
    return total == expected_total


# ---------------------------------------------------------------------------
# small simple graphs (vertices 0..nv-1)


def _graph_family(nv: int, edges: Sequence[Tuple[int, int]]):
    items = []
    for u, v in edges:
        if u == v or not (0 <= u < nv and 0 <= v < nv):
            raise ValueError("bad edge")
        items.append((0, (1 << (nv - 1 - u)) | (1 << (nv - 1 - v))))
    return items


def graph_canonical_form(nv: int, edges: Sequence[Tuple[int, int]]) -> bytes:
    if nv > 16:
        raise ValueError("graphs limited to 16 vertices")
    result = canonical_family(_graph_family(nv, edges), nv)
    return (
        _GRAPH_MAGIC
        + bytes([nv])
        + b"".join(w.to_bytes(2, "big") for _, w in result.canonical)
    )


def graph_automorphism_order(nv: int, edges: Sequence[Tuple[int, int]]) -> int:
    items = _graph_family(nv, edges)
    if not items:
        return factorial(nv)
    result = canonical_family(items, nv)
    isolated = nv - len(
        {u for e in edges for u in e}
    )
    order = perm_group_order(result.perm_gens, nv)
    # the search fixes nothing, so isolated vertices are already included
    del isolated
    return order


def invariant_key(vertices: Sequence[int], n: int) -> Tuple:
    """Cheap equivalence invariant for bucketing before canonicalization."""
    members = sorted(set(vertices))
    spec = wht(indicator_values(members, n))
    support = spectrum_support(spec)
    support_weights = tuple(
        sorted((y.bit_count() for y in support if y), reverse=False)
    )
    value_multiset = tuple(sorted(abs(int(spec[y])) for y in support if y))
    return (
        len(members),
        affine_rank(members) if members else 0,
        len(kernel_of_partition(members, n)),
        support_weights,
        value_multiset,
    )
