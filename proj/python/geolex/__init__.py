"""Python surface of the geolex C++ core."""

from ._geolex import (  # noqa: F401
    __version__,
    cluster_baseline,
    haversine,
    is_emoji,
    jaccard,
    kmeans_1d,
    moving_average,
    normalize,
    pca_project,
    pearson,
    retention_threshold,
    silhouette,
    similarity_matrix,
    tokenize,
)
