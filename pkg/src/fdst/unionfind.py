"""Union-find with union by size, used for forest/acyclicity bookkeeping."""


class UnionFind:
    __slots__ = ("parent", "size", "components")

    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n
        self.components = n

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        """Merge the sets of a and b; returns False if already joined (a cycle)."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True

    def copy(self):
        other = UnionFind.__new__(UnionFind)
        other.parent = list(self.parent)
        other.size = list(self.size)
        other.components = self.components
        return other
