"""Clustering report over a store's ended sessions."""

from __future__ import annotations

from ..behavior import cluster_sessions, silhouette_score
from ..behavior.labels import label_sequence
from ..errors import KTooLarge
from ..model import SessionState
from ..store import Store


def cluster_report(store: Store, k: int, seed: int) -> dict:
    """Cluster every ended session with at least two saves.

    Returns a machine-readable dict; the CLI renders the text view.
    """
    sequences = {}
    for record in store.iter_sessions():
        if record.state is not SessionState.ENDED:
            continue
        if len(record.save_events()) < 2:
            continue
        analysis = store.load_analysis(record.session_id)
        if analysis is None:
            analysis = label_sequence(record, store.get_snapshot)
        sequences[record.session_id] = analysis
    if k > len(sequences):
        raise KTooLarge(f"k={k} exceeds {len(sequences)} eligible sessions")
    clusters = cluster_sessions(sequences, k, seed)
    score = silhouette_score(sequences, clusters)
    return {
        "k": k,
        "seed": seed,
        "sessions": len(sequences),
        "silhouette": score,
        "clusters": [
            {
                "cluster_id": c.cluster_id,
                "medoid_session_id": c.medoid_session_id,
                "medoid_label_string": sequences[c.medoid_session_id].label_string(),
                "member_session_ids": list(c.member_session_ids),
                "mean_intra_distance": c.mean_intra_distance,
            }
            for c in clusters
        ],
    }


def render_cluster_report(report: dict) -> str:
    lines = [
        f"sessions clustered: {report['sessions']}  k={report['k']}  seed={report['seed']}",
        f"silhouette score: {report['silhouette']:.3f}" if report["silhouette"] is not None else "silhouette score: — (k=1)",
        "",
    ]
    for c in report["clusters"]:
        lines.append(
            f"cluster {c['cluster_id']}: medoid {c['medoid_session_id']} "
            f"[{c['medoid_label_string']}] mean intra-distance {c['mean_intra_distance']:.2f}"
        )
        for member in c["member_session_ids"]:
            lines.append(f"  - {member}")
    return "\n".join(lines) + "\n"
