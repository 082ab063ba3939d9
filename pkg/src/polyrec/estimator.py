"""Estimator-style wrapper around :func:`polyrec.reconstruct.reconstruct`."""

from __future__ import annotations

import networkx as nx
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .core import Graph
from .errors import ParseError
from .reconstruct import DEFAULT_MAX_ORIENTATIONS, CoverageVerdict, reconstruct


def check_graph(X) -> Graph:
    """Coerce a Graph, networkx graph, square 0/1 adjacency array or ``(n, edges)`` pair.

    networkx nodes must be the integers ``0..n-1``.
    """
    if isinstance(X, Graph):
        return X
    if isinstance(X, nx.Graph):
        if set(X.nodes) != set(range(X.number_of_nodes())):
            raise ParseError("networkx graph nodes must be 0..n-1")
        return Graph(X.number_of_nodes(), list(X.edges))
    if isinstance(X, tuple) and len(X) == 2 and isinstance(X[0], (int, np.integer)):
        try:
            return Graph(int(X[0]), [tuple(e) for e in X[1]])
        except (ValueError, TypeError) as exc:
            raise ParseError(str(exc)) from exc
    arr = np.asarray(X)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ParseError(f"expected a square adjacency matrix, got shape {arr.shape}")
    if not np.array_equal(arr, arr.T) or np.any(np.diag(arr)):
        raise ParseError("adjacency matrix must be symmetric with a zero diagonal")
    i, j = np.nonzero(np.triu(arr))
    return Graph(arr.shape[0], list(zip(i.tolist(), j.tolist())))


def check_dimension(d, g: Graph) -> int:
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)):
        raise ParseError(f"dimension must be an integer, got {d!r}")
    d = int(d)
    if d < 2 or g.n < d + 1:
        raise ParseError(f"dimension {d} impossible for a graph on {g.n} vertices")
    return d


class GraphReconstructor(TransformerMixin, BaseEstimator):
    """Reconstruct facets from a polytope graph.

    ``fit(X)`` runs the reconstruction and stores ``facets_``, ``method_``
    and ``certificate_``; ``verdict_`` says whether the graph was covered
    (``facets_`` is None when it was not).  ``transform`` returns the
    facet-by-vertex 0/1 incidence matrix of the fitted graph.
    """

    def __init__(self, d=None, max_orientations=DEFAULT_MAX_ORIENTATIONS):
        self.d = d
        self.max_orientations = max_orientations

    def fit(self, X, y=None):
        g = check_graph(X)
        d = check_dimension(self.d, g)
        out = reconstruct(g, d, max_orientations=self.max_orientations)
        self.n_vertices_ = g.n
        if isinstance(out, CoverageVerdict):
            self.verdict_ = out
            self.facets_ = None
            self.method_ = None
            self.certificate_ = None
        else:
            self.verdict_ = CoverageVerdict(True, "")
            self.facets_ = out.facets
            self.method_ = out.method
            self.certificate_ = out.certificate
        return self

    def transform(self, X):
        check_is_fitted(self, "verdict_")
        g = check_graph(X)
        if g.n != self.n_vertices_:
            raise ValueError(f"fitted on {self.n_vertices_} vertices, got {g.n}")
        if self.facets_ is None:
            raise ValueError(f"graph not covered: {self.verdict_.reason}")
        m = np.zeros((len(self.facets_), self.n_vertices_), dtype=np.int8)
        for row, facet in enumerate(self.facets_):
            m[row, list(facet)] = 1
        return m
