from __future__ import annotations

from dataclasses import dataclass, field

from .graphkit import Graph


@dataclass
class CliqueSolution:
    """A vertex set claimed to be a clique, with provenance.

    ``valid`` is only ever set by :meth:`verify` against a concrete graph.
    """

    vertices: tuple
    method: str
    weight: float = 0
    epsilon: float | None = None
    valid: bool = False
    diagnostics: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def verify(self, g: Graph) -> "CliqueSolution":
        self.vertices = tuple(sorted(self.vertices))
        self.valid = g.is_clique(self.vertices)
        self.weight = g.total_weight(self.vertices)
        return self
