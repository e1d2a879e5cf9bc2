"""Abel-Goncharov node sequences."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Tuple, Union

from polycore import DomainError, GaussianRational, Polynomial, parse_nodes
from polycore.roots import ComplexApprox

Node = Union[GaussianRational, complex]


def _coerce_node(value) -> Node:
    if isinstance(value, (GaussianRational, int, Fraction)):
        return GaussianRational.of(value)
    if isinstance(value, ComplexApprox):
        return complex(value.value)
    if isinstance(value, (float, complex)):
        return complex(value)
    raise DomainError(f"Unsupported node value: {value!r}")


@dataclass(frozen=True)
class NodeSequence:
    """
    Nodes z_0..z_{n-1}; repeats are allowed.

    Exact mode holds GaussianRationals; float mode holds complex values and is
    accepted only by the bound evaluators.
    """

    nodes: Tuple[Node, ...]

    def __post_init__(self):
        nodes = tuple(_coerce_node(z) for z in self.nodes)
        if not nodes:
            raise DomainError("A node sequence needs at least one node")
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def coerce(cls, value) -> "NodeSequence":
        """Accept a NodeSequence, ``nodes:[...]`` text, or an iterable of values."""
        if isinstance(value, NodeSequence):
            return value
        if isinstance(value, str):
            return cls(parse_nodes(value))
        return cls(tuple(value))

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def exact(self) -> bool:
        return all(isinstance(z, GaussianRational) for z in self.nodes)

    def __len__(self):
        return len(self.nodes)

    def __getitem__(self, index):
        return self.nodes[index]

    def __iter__(self):
        return iter(self.nodes)

    def prefix(self, k: int) -> "NodeSequence":
        return NodeSequence(self.nodes[:k])

    def __str__(self):
        return "nodes:[" + ", ".join(str(z) for z in self.nodes) + "]"


def scale_nodes(nodes, alpha) -> NodeSequence:
    """
    Multiply every node by alpha.

    By homogeneity the Goncharov polynomial over the scaled nodes is
    alpha^n G(z / alpha), i.e. ``G.rescale(alpha)``.

    Raises:
        DomainError: if alpha is zero
    """
    nodes = NodeSequence.coerce(nodes)
    if isinstance(alpha, (GaussianRational, int, Fraction)):
        alpha = GaussianRational.of(alpha)
        if alpha.is_zero:
            raise DomainError("Scale factor alpha must be nonzero")
    elif complex(alpha) == 0:
        raise DomainError("Scale factor alpha must be nonzero")
    return NodeSequence(tuple(z * alpha for z in nodes))


def linear_factor(node: GaussianRational) -> Polynomial:
    """z - node."""
    return Polynomial((1, -node))
