from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from lib.Geometry import Geometry
from models.Lattice import Lattice

Edge = tuple[int, int, tuple[float, float, float]]


def _translation_key(translation, lattice: Lattice) -> tuple:
    # in units of L/2 so body-centred translations stay integral
    return tuple(int(v) for v in np.round(np.asarray(translation, dtype=float) * 2.0 / lattice.period))


@dataclass
class PeriodicContactGraph:
    """
    Quotient graph of a periodic structure.

    Nodes are the objects of one periodic unit (helices or crossings). An edge
    (u, v, T) joins node u in the reference cell to the image of node v shifted by
    the lattice vector T. The edge list is kept closed under (u, v, T) <-> (v, u, -T).
    """

    nodes: list[int]
    lattice: Lattice
    edges: list[Edge] = field(default_factory=list)

    def add_edge(self, u: int, v: int, translation) -> bool:
        """
        Add an edge and its reverse unless already present.

        Returns:
            bool: True when the edge was new.
        """
        key = (u, v, _translation_key(translation, self.lattice))
        if key in self._keys():
            return False
        T = tuple(float(x) for x in np.asarray(translation, dtype=float))
        self.edges.append((u, v, T))
        reverse = (v, u, tuple(-x + 0.0 for x in T))
        if (v, u, _translation_key(reverse[2], self.lattice)) != key:
            self.edges.append(reverse)
        return True

    def _keys(self) -> set:
        return {(u, v, _translation_key(T, self.lattice)) for u, v, T in self.edges}

    def is_symmetric(self) -> bool:
        keys = self._keys()
        return all((v, u, tuple(-k for k in T)) in keys for u, v, T in keys)

    def degree(self, node: int) -> int:
        return sum(1 for u, _, _ in self.edges if u == node)

    # --------------------------
    # networkx views
    # --------------------------

    def quotient(self) -> nx.MultiGraph:
        """Undirected multigraph on the unit's nodes, one edge per (u, v, T) pair up to reversal."""
        g = nx.MultiGraph()
        g.add_nodes_from(self.nodes)
        seen = set()
        for u, v, T in self.edges:
            key = (u, v, _translation_key(T, self.lattice))
            rev = (v, u, tuple(-k for k in key[2]))
            if rev in seen:
                continue
            seen.add(key)
            g.add_edge(u, v, translation=T)
        return g

    def components(self) -> list[list[int]]:
        """Connected components of the quotient graph, each sorted, ordered by smallest node."""
        return sorted((sorted(c) for c in nx.connected_components(self.quotient())), key=lambda c: c[0])

    def subgraph(self, nodes) -> "PeriodicContactGraph":
        keep = set(nodes)
        sub = PeriodicContactGraph(nodes=sorted(keep), lattice=self.lattice)
        sub.edges = [(u, v, T) for u, v, T in self.edges if u in keep and v in keep]
        return sub

    def unfold(self, shells: int) -> nx.Graph:
        """
        Finite piece of the infinite periodic graph: node (u, V) for every lattice vector V within `shells`.
        """
        translations = Geometry.image_translations(self.lattice, shells)
        cells = {_translation_key(V, self.lattice) for V in translations}
        g = nx.Graph()
        for V in cells:
            for u in self.nodes:
                g.add_node((u, V))
        for u, v, T in self.edges:
            tk = _translation_key(T, self.lattice)
            for V in cells:
                W = tuple(a + b for a, b in zip(V, tk))
                if W in cells:
                    g.add_edge((u, V), (v, W))
        return g
