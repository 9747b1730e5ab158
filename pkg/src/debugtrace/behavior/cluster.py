"""K-medoids clustering of behavior sequences.

Sessions are compared by Levenshtein distance between their label strings
(one symbol per behavior label). Partitioning uses PAM: seeded
deterministic medoid sampling, then best-improvement swaps to
convergence. Assignment ties break toward the medoid with the lower
session id, so output is a pure function of (sequences, k, seed).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..errors import KTooLarge
from ..model import BehaviorSequence


@dataclass(frozen=True)
class SessionCluster:
    cluster_id: int
    medoid_session_id: str
    member_session_ids: tuple[str, ...]
    mean_intra_distance: float


def levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (ca != cb)))
        previous = current
    return previous[-1]


def _assign(ids: list[str], dist: list[list[int]], medoids: list[int]) -> list[int]:
    # A medoid belongs to its own cluster (it must be a member); other
    # points take the nearest medoid, ties to the lower session id.
    assignment = []
    ordered = sorted(medoids, key=lambda m: ids[m])
    medoid_set = set(medoids)
    for p in range(len(ids)):
        if p in medoid_set:
            assignment.append(p)
            continue
        best = min(ordered, key=lambda m: (dist[p][m], ids[m]))
        assignment.append(best)
    return assignment


def _total_cost(dist: list[list[int]], medoids: list[int], n: int) -> int:
    return sum(min(dist[p][m] for m in medoids) for p in range(n))


def cluster_sessions(
    sequences: dict[str, BehaviorSequence], k: int, seed: int
) -> list[SessionCluster]:
    """PAM over pairwise label-string Levenshtein distances."""
    ids = sorted(sequences)
    n = len(ids)
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > n:
        raise KTooLarge(f"k={k} exceeds {n} sessions")
    strings = [sequences[i].label_string() for i in ids]
    dist = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = levenshtein(strings[i], strings[j])
            dist[i][j] = d
            dist[j][i] = d

    rng = random.Random(seed)
    medoids = sorted(rng.sample(range(n), k))

    current_cost = _total_cost(dist, medoids, n)
    while True:
        # Best strictly-improving swap; scan order makes ties deterministic.
        best_swap = None
        best_cost = current_cost
        for m in list(medoids):
            for o in range(n):
                if o in medoids:
                    continue
                candidate = [o if x == m else x for x in medoids]
                cost = _total_cost(dist, candidate, n)
                if cost < best_cost:
                    best_cost = cost
                    best_swap = (m, o)
        if best_swap is None:
            break
        m, o = best_swap
        medoids[medoids.index(m)] = o
        medoids.sort()
        current_cost = best_cost

    assignment = _assign(ids, dist, medoids)
    clusters = []
    for cid, m in enumerate(sorted(medoids, key=lambda x: ids[x])):
        members = [p for p in range(n) if assignment[p] == m]
        mean = sum(dist[p][m] for p in members) / len(members) if members else 0.0
        clusters.append(
            SessionCluster(
                cluster_id=cid,
                medoid_session_id=ids[m],
                member_session_ids=tuple(ids[p] for p in members),
                mean_intra_distance=mean,
            )
        )
    return clusters


def silhouette_score(
    sequences: dict[str, BehaviorSequence], clusters: list[SessionCluster]
) -> float | None:
    """Mean silhouette over all sessions; None when it is undefined (k=1).

    Singleton-cluster points score 0 by convention.
    """
    if len(clusters) < 2:
        return None
    ids = sorted(sequences)
    strings = {i: sequences[i].label_string() for i in ids}
    membership = {}
    for c in clusters:
        for m in c.member_session_ids:
            membership[m] = c.cluster_id
    by_cluster = {c.cluster_id: list(c.member_session_ids) for c in clusters}

    def mean_dist(x: str, group: list[str]) -> float:
        others = [g for g in group if g != x]
        if not others:
            return 0.0
        return sum(levenshtein(strings[x], strings[g]) for g in others) / len(others)

    scores = []
    for x in ids:
        own = by_cluster[membership[x]]
        if len(own) == 1:
            scores.append(0.0)
            continue
        a = mean_dist(x, own)
        b = min(
            sum(levenshtein(strings[x], strings[g]) for g in group) / len(group)
            for cid, group in by_cluster.items()
            if cid != membership[x] and group
        )
        denom = max(a, b)
        scores.append(0.0 if denom == 0 else (b - a) / denom)
    return sum(scores) / len(scores)
