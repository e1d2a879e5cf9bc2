"""Base class defining the Abel-Goncharov construction interface."""

from abc import ABC, abstractmethod
from dataclasses import dataclass

from goncharov.nodes import NodeSequence
from polycore import DomainError, Polynomial


@dataclass(frozen=True)
class GoncharovResult:
    """Monic G_n with G_n^(m)(z_m) = 0 for m = 0..n-1."""

    polynomial: Polynomial
    construction: str  # interpolation, recursion or genetic


class GoncharovConstruction(ABC):
    """
    Abstract base class for the independent G_n constructions.

    Implementations provide build(); construct() validates the nodes and tags
    the result.
    """

    name: str = "base"
    description: str = ""

    @abstractmethod
    def build(self, nodes: NodeSequence) -> Polynomial:
        """
        Build the monic Abel-Goncharov polynomial.

        Args:
            nodes: Exact-mode node sequence z_0..z_{n-1}

        Returns:
            Monic polynomial of degree n in z
        """
        pass

    def construct(self, nodes) -> GoncharovResult:
        nodes = NodeSequence.coerce(nodes)
        self.validate_nodes(nodes)
        return GoncharovResult(self.build(nodes), self.name)

    def validate_nodes(self, nodes: NodeSequence) -> None:
        """Constructions are exact; float-mode nodes are rejected."""
        if not nodes.exact:
            raise DomainError(f"{self.name} construction requires exact nodes")

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name='{self.name}')"
