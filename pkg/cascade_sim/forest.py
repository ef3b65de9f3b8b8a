"""Index-based disjoint-set forest with size tracking, one per cascade level."""
from typing import List, Tuple


class VertexRangeError(IndexError):
    """Raised when a vertex index falls outside 0..n-1."""
    pass


class DisjointSetForest:
    """
    Union-find over vertices 0..n-1 with union by size and full path compression.

    Components of the forest are the components of the level graph G_k(t);
    ``max_component`` only ever grows and ``num_components`` drops by one per
    accepted union.
    """

    __slots__ = ("n", "parent", "size", "num_components", "max_component")

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"Forest needs at least one vertex, got n={n}")
        self.n = n
        self.parent: List[int] = list(range(n))
        self.size: List[int] = [1] * n
        self.num_components = n
        self.max_component = 1

    def _check(self, v: int):
        if not 0 <= v < self.n:
            raise VertexRangeError(f"Vertex {v} out of range for n={self.n}")

    def find(self, v: int) -> int:
        self._check(v)
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def union(self, u: int, v: int) -> bool:
        """Merge the components of u and v; False (and no change) if already joined."""
        ru = self.find(u)
        rv = self.find(v)
        if ru == rv:
            return False
        size = self.size
        if size[ru] < size[rv]:
            ru, rv = rv, ru
        self.parent[rv] = ru
        size[ru] += size[rv]
        self.num_components -= 1
        if size[ru] > self.max_component:
            self.max_component = size[ru]
        return True


def dsf_find(f: DisjointSetForest, v: int) -> int:
    return f.find(v)


def dsf_union(f: DisjointSetForest, u: int, v: int) -> bool:
    return f.union(u, v)


def compute_susceptibility(f: DisjointSetForest) -> Tuple[float, float]:
    """
    Return (chi, chi_hat): chi = sum of squared component sizes over n,
    chi_hat the same sum without the largest component.

    O(n) scan over the parent array.
    """
    parent = f.parent
    size = f.size
    total = 0
    largest = 0
    for v in range(f.n):
        if parent[v] == v:
            s = size[v]
            total += s * s
            if s > largest:
                largest = s
    chi = total / f.n
    chi_hat = (total - largest * largest) / f.n
    return chi, chi_hat


def pair_connectivity(chi: float, n: int) -> float:
    """Probability that two distinct random vertices share a component, (chi - 1) / (n - 1)."""
    return (chi - 1.0) / (n - 1)
