"""Input loading and seeded sample corpora."""

from .loaders import load_text, read_inputs
from .samples import (
    random_nodes,
    random_pattern,
    random_rational,
    random_real_rooted,
    random_trivial,
)

__all__ = [
    "load_text",
    "read_inputs",
    "random_nodes",
    "random_pattern",
    "random_rational",
    "random_real_rooted",
    "random_trivial",
]
