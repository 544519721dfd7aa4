"""Graph primitives assembled from the frontier operators."""
from .bfs import BfsResult, bfs
from .sssp import SsspResult, sssp
from .bc import BcResult, bc
from .cc import CcResult, cc
from .pagerank import PageRankResult, pagerank
from .tc import TcResult, tc

__all__ = [
    "bfs", "BfsResult",
    "sssp", "SsspResult",
    "bc", "BcResult",
    "cc", "CcResult",
    "pagerank", "PageRankResult",
    "tc", "TcResult",
]
