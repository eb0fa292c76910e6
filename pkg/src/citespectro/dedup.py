"""Clustering of variant cited-reference strings.

Variant spellings of the same cited work ("mol cloning" vs "mol cloning
laborato") are merged by single-linkage agglomeration inside blocks keyed
by (year, first letter of the first author). Single linkage is the right
shape here because citation-string variants chain: an abbreviation is a
prefix of a longer abbreviation which is a prefix of the full title.

Weights and the default threshold are calibration choices and stay
configurable; references without a year form singleton clusters because
they have no position on any year axis.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass

from .refs import CitedRef
from ._io import atomic_write_text

AUTHOR_WEIGHT = 0.4
SOURCE_WEIGHT = 0.3
VOLUME_WEIGHT = 0.15
PAGE_WEIGHT = 0.15

DEFAULT_THRESHOLD = 0.75


@dataclass(frozen=True, slots=True)
class RefCluster:
    """A disambiguated group of equivalent cited references."""

    canonical: CitedRef
    members: tuple[CitedRef, ...]

    @property
    def n_cr(self) -> int:
        return len(self.members)

    @property
    def exact_variant_count(self) -> int:
        return len({m.raw for m in self.members})


def levenshtein(a: str, b: str) -> int:
    """Edit distance, two-row dynamic programming."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost))
        previous = current
    return previous[-1]


def _edit_similarity(a: str, b: str) -> float:
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


def _optional_edit(a: str | None, b: str | None) -> float:
    if a is None and b is None:
        return 1.0
    if a is None or b is None:
        return 0.0
    return _edit_similarity(a, b)


def _optional_exact(a: str | None, b: str | None) -> float:
    if a is None and b is None:
        return 1.0
    if a is None or b is None:
        return 0.0
    return 1.0 if a == b else 0.0


def ref_similarity(a: CitedRef, b: CitedRef) -> float:
    """Similarity in [0, 1]; 0 whenever both years are present and differ.

    Otherwise a weighted combination: author edit similarity (0.4), source
    edit similarity (0.3), exact volume (0.15) and exact page (0.15) match.
    Absent-vs-absent fields count as a match; absent-vs-present contributes
    nothing for that weight. Symmetric by construction.
    """
    if a.rpy is not None and b.rpy is not None and a.rpy != b.rpy:
        return 0.0
    return (
        AUTHOR_WEIGHT * _edit_similarity(a.first_author, b.first_author)
        + SOURCE_WEIGHT * _optional_edit(a.source, b.source)
        + VOLUME_WEIGHT * _optional_exact(a.volume, b.volume)
        + PAGE_WEIGHT * _optional_exact(a.page, b.page)
    )


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def _signature(ref: CitedRef) -> tuple:
    # doi excluded: it carries no weight in the similarity
    return (ref.first_author, ref.source, ref.volume, ref.page)


def cluster_references(refs: list[CitedRef], threshold: float = DEFAULT_THRESHOLD) -> list[RefCluster]:
    """Partition references into clusters of likely-identical works.

    Two references land in the same cluster when a chain of pairwise
    similarities >= threshold connects them inside their (year, author
    initial) block. The output is a partition: n_cr values sum to
    len(refs) for every threshold. Identical comparison signatures are
    collapsed before the pairwise pass, which keeps the common case
    (many byte-identical strings) near-linear.
    """
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold must be in (0, 1], got {threshold}")

    blocks: dict[tuple[int, str], list[int]] = {}
    undated: list[int] = []
    for i, ref in enumerate(refs):
        if ref.rpy is None:
            undated.append(i)
        else:
            blocks.setdefault((ref.rpy, ref.first_author[:1]), []).append(i)

    clusters: list[RefCluster] = []
    for key in sorted(blocks):
        indices = blocks[key]
        groups: dict[tuple, list[int]] = {}
        for i in indices:
            groups.setdefault(_signature(refs[i]), []).append(i)
        sigs = list(groups)
        uf = _UnionFind(len(sigs))
        reps = [refs[groups[s][0]] for s in sigs]
        for i in range(len(sigs)):
            for j in range(i + 1, len(sigs)):
                if uf.find(i) != uf.find(j) and ref_similarity(reps[i], reps[j]) >= threshold:
                    uf.union(i, j)
        merged: dict[int, list[int]] = {}
        for si, sig in enumerate(sigs):
            merged.setdefault(uf.find(si), []).extend(groups[sig])
        for member_indices in sorted(merged.values(), key=min):
            clusters.append(_make_cluster([refs[i] for i in sorted(member_indices)]))

    for i in undated:
        clusters.append(_make_cluster([refs[i]]))
    return clusters


def _make_cluster(members: list[CitedRef]) -> RefCluster:
    counts = Counter(m.raw for m in members)
    best_raw = min(counts, key=lambda raw: (-counts[raw], len(raw), raw))
    canonical = next(m for m in members if m.raw == best_raw)
    return RefCluster(canonical=canonical, members=tuple(members))


def _ranking_key(cluster: RefCluster) -> tuple:
    rpy = cluster.canonical.rpy
    return (-cluster.n_cr, rpy if rpy is not None else 10**6, cluster.canonical.raw)


def top_cited(clusters: list[RefCluster], n: int) -> list[tuple[CitedRef, int]]:
    """The n most-cited clusters; ties broken by year, then by raw string."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    ranked = sorted(clusters, key=_ranking_key)
    return [(c.canonical, c.n_cr) for c in ranked[:n]]


def clusters_to_csv(clusters: list[RefCluster], limit: int | None = None) -> str:
    """Cluster table as CSV, most-cited first."""
    ranked = sorted(clusters, key=_ranking_key)
    if limit is not None:
        ranked = ranked[:limit]
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["canonical_raw", "rpy", "n_cr", "member_count_exact_variants"])
    for c in ranked:
        writer.writerow([c.canonical.raw, "" if c.canonical.rpy is None else c.canonical.rpy, c.n_cr, c.exact_variant_count])
    return out.getvalue()


def export_clusters_csv(clusters: list[RefCluster], path, limit: int | None = None) -> None:
    atomic_write_text(path, clusters_to_csv(clusters, limit))
